use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Number, Value};

/// Outcome of a decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Mixing,
    NotMixing,
    JointlyMixing,
    NotJointlyMixing,
    RelativelyJointlyMixing,
    NotRelativelyJointlyMixing,
    SufficientConditionHolds,
    Unknown,
}

impl Answer {
    pub fn name(&self) -> &'static str {
        match self {
            Answer::Mixing => "Mixing",
            Answer::NotMixing => "NotMixing",
            Answer::JointlyMixing => "JointlyMixing",
            Answer::NotJointlyMixing => "NotJointlyMixing",
            Answer::RelativelyJointlyMixing => "RelativelyJointlyMixing",
            Answer::NotRelativelyJointlyMixing => "NotRelativelyJointlyMixing",
            Answer::SufficientConditionHolds => "SufficientConditionHolds",
            Answer::Unknown => "Unknown",
        }
    }

    /// Negative answers must carry a witness.
    pub fn is_negative(&self) -> bool {
        matches!(
            self,
            Answer::NotMixing | Answer::NotJointlyMixing | Answer::NotRelativelyJointlyMixing
        )
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Machine-readable justification attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    Hyperbolic,
    NonHyperbolicFactor(usize),
    FiniteOrder(u32),
    FixedFrequency,
    EqualUpToSign(usize, usize),
    NonHyperbolicQuotient(usize, usize),
    ThreeSharedModulus([usize; 3]),
    /// matrix at this index was replaced by its negative
    Normalized(usize),
    KernelWitness { dimension: usize },
    TrivialKernel,
    /// witness identity holds for every n ≡ residue (mod modulus), n ≥ 1
    ValidAlong { modulus: u32, residue: u32 },
    /// exponent gap for the pair diverges; index 0 is the zero exponent
    PairDiverges(usize, usize),
    PairBounded(usize, usize),
    SufficientOnly,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Hyperbolic => write!(f, "Hyperbolic"),
            Reason::NonHyperbolicFactor(i) => write!(f, "NonHyperbolicFactor({i})"),
            Reason::FiniteOrder(m) => write!(f, "FiniteOrder({m})"),
            Reason::FixedFrequency => write!(f, "FixedFrequency"),
            Reason::EqualUpToSign(i, j) => write!(f, "EqualUpToSign({i},{j})"),
            Reason::NonHyperbolicQuotient(i, j) => write!(f, "NonHyperbolicQuotient({i},{j})"),
            Reason::ThreeSharedModulus([i, j, k]) => write!(f, "ThreeSharedModulus({i},{j},{k})"),
            Reason::Normalized(i) => write!(f, "Normalized({i})"),
            Reason::KernelWitness { dimension } => write!(f, "KernelWitness(dim={dimension})"),
            Reason::TrivialKernel => write!(f, "TrivialKernel"),
            Reason::ValidAlong { modulus, residue } => {
                write!(f, "ValidAlong(mod={modulus},res={residue})")
            }
            Reason::PairDiverges(i, j) => write!(f, "PairDiverges({i},{j})"),
            Reason::PairBounded(i, j) => write!(f, "PairBounded({i},{j})"),
            Reason::SufficientOnly => write!(f, "SufficientOnly"),
        }
    }
}

/// Decision outcome with an optional witness.
///
/// For frequency witnesses the vectors are `(x_1, …, x_k, y)`: one per
/// transported sequence, then the untransported frequency. Relative
/// verdicts carry `(α, z)` instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<Vec<Vec<BigInt>>>,
    pub reasons: Vec<Reason>,
}

impl Verdict {
    pub fn positive(answer: Answer, reasons: Vec<Reason>) -> Self {
        Verdict {
            answer,
            witness: None,
            reasons,
        }
    }

    pub fn negative(answer: Answer, witness: Vec<Vec<BigInt>>, reasons: Vec<Reason>) -> Self {
        debug_assert!(answer.is_negative());
        Verdict {
            answer,
            witness: Some(witness),
            reasons,
        }
    }

    /// The `(modulus, residue)` progression the witness is valid on; all `n` by default.
    pub fn progression(&self) -> (u32, u32) {
        self.reasons
            .iter()
            .find_map(|r| match r {
                Reason::ValidAlong { modulus, residue } => Some((*modulus, *residue)),
                _ => None,
            })
            .unwrap_or((1, 0))
    }

    pub fn to_json(&self) -> Value {
        let witness = match &self.witness {
            Some(w) => Value::Array(
                w.iter()
                    .map(|v| Value::Array(v.iter().map(big_to_json).collect()))
                    .collect(),
            ),
            None => Value::Null,
        };
        json!({
            "answer": self.answer.name(),
            "witness": witness,
            "reasons": self.reasons.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Integer as an exact JSON number.
pub fn big_to_json(b: &BigInt) -> Value {
    Value::Number(Number::from_str(&b.to_string()).expect("decimal integer is a JSON number"))
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.answer)?;
        if let Some(w) = &self.witness {
            let parts: Vec<String> = w
                .iter()
                .map(|v| {
                    let xs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    format!("({})", xs.join(","))
                })
                .collect();
            write!(f, " witness {}", parts.join(" "))?;
        }
        if !self.reasons.is_empty() {
            let rs: Vec<String> = self.reasons.iter().map(|r| r.to_string()).collect();
            write!(f, " [{}]", rs.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_is_stable() {
        let v = Verdict::negative(
            Answer::NotMixing,
            vec![
                vec![BigInt::from(0), BigInt::from(1)],
                vec![BigInt::from(-1), BigInt::from(-1)],
            ],
            vec![Reason::KernelWitness { dimension: 1 }],
        );
        let text = serde_json::to_string(&v.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"answer":"NotMixing","reasons":["KernelWitness(dim=1)"],"witness":[[0,1],[-1,-1]]}"#
        );
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&reparsed).unwrap(), text);
    }

    #[test]
    fn huge_integers_stay_exact() {
        let big: BigInt = BigInt::from(10).pow(40) + 7;
        let text = serde_json::to_string(&big_to_json(&big)).unwrap();
        assert_eq!(text, big.to_string());
    }
}
