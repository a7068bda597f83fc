use thiserror::Error;

/// Every failure the library reports. Variant names double as the
/// machine-readable error codes printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix {0} does not have determinant 1")]
    NonUnimodular(String),
    #[error("matrix {0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("matrix {0} is not unipotent")]
    NotUnipotent(String),
    #[error("±identity has no distinguished fixed vector")]
    IdentityHasNoDistinguishedVector,
    #[error("factor {0} has exponential entry growth and no polynomial expansion")]
    NotPolynomial(String),
    #[error("family determinant is {0}, not identically 1")]
    DeterminantNotOne(String),
    #[error("only two matrices share the modulus; no cancelling triple exists")]
    SharedModulusPairOnly,
    #[error("matrices do not share |trace|: {0}")]
    TracesDiffer(String),
    #[error("matrices {0} and {1} agree up to sign")]
    NotPairwiseDistinct(usize, usize),
    #[error("matrices {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("resolution {q} does not divide lattice size {lattice}")]
    ResolutionMismatch { q: u32, lattice: u32 },
    #[error("unipotent matrices commute; the two-sided series degenerates")]
    CommutingUnipotents,
    #[error("family sample at n={0} is not hyperbolic")]
    NonHyperbolicSample(String),
    #[error("inputs commute (or g^2 commutes with h)")]
    CommutingInputs,
    #[error("zero frequency present; its self-correlation never vanishes")]
    ZeroFrequencyPresent,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonUnimodular(_) => "NonUnimodular",
            Error::NotHyperbolic(_) => "NotHyperbolic",
            Error::NotUnipotent(_) => "NotUnipotent",
            Error::IdentityHasNoDistinguishedVector => "IdentityHasNoDistinguishedVector",
            Error::NotPolynomial(_) => "NotPolynomial",
            Error::DeterminantNotOne(_) => "DeterminantNotOne",
            Error::SharedModulusPairOnly => "SharedModulusPairOnly",
            Error::TracesDiffer(_) => "TracesDiffer",
            Error::NotPairwiseDistinct(..) => "NotPairwiseDistinct",
            Error::NotCommuting(..) => "NotCommuting",
            Error::ResolutionMismatch { .. } => "ResolutionMismatch",
            Error::CommutingUnipotents => "CommutingUnipotents",
            Error::NonHyperbolicSample(_) => "NonHyperbolicSample",
            Error::CommutingInputs => "CommutingInputs",
            Error::ZeroFrequencyPresent => "ZeroFrequencyPresent",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
