use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

mod check;
mod commands;
mod inputs;
mod report;
mod scenarios;

use report::{render_json, Report};

const AFTER_HELP: &str = "\
Input formats:
  matrix      [[a,b],[c,d]]             determinant 1, decimal integers
  sequence    [[a,b],[c,d]]             the powers M^n
              [[n,n^2-1],[1,n]]         polynomial entries in n
              [[1,1],[0,1]]^(n^2+1)     a matrix raised to a polynomial
  polynomial  3*n^2 - n + 1  or  [1,-1,3]  (coefficients, constant first)
  set         \"rect x0 x1 y0 y1 @ q\"     endpoints on the 1/q grid ('rect' optional)
              path/to/set.json          {\"q\": 4, \"cells\": [[0,0],[1,2]]}
  trig poly   (1,0) + 2*(0,1) - 1/2*(1,-1)

Exit status: 0 success, 1 oracle disagrees with a decider (or a scenario
fails), 2 usage or input error (the error name is printed).";

#[derive(Parser, Debug)]
#[command(name = "toral", version, about = "Mixing deciders and correlation oracles for SL(2,Z) acting on the 2-torus", after_help = AFTER_HELP)]
struct Cli {
    /// Print the report as JSON (sorted keys)
    #[arg(long, global = true)]
    json: bool,
    /// Also write the tabular part of the report to PATH as CSV
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy type of a matrix: hyperbolic, unipotent or finite order
    Classify { matrix: String },
    /// Is a single sequence mixing?
    DecideMixing { sequence: String },
    /// Are the sequences jointly mixing?
    DecideJoint {
        #[arg(required = true, num_args = 1..)]
        sequences: Vec<String>,
        /// Plain matrices that commute pairwise
        #[arg(long)]
        commuting: bool,
    },
    /// Relative joint mixing of unipotent powers U_i^{a_i(n)}
    DecideRelative {
        #[arg(required = true, num_args = 1.., value_name = "U^POLY")]
        powers: Vec<String>,
    },
    /// Norm-ratio sufficient condition for joint mixing of powers
    RokhlinCheck {
        /// Hyperbolic powers T_i^{a_i(n)}
        #[arg(value_name = "T^POLY", conflicts_with = "family")]
        powers: Vec<String>,
        /// Polynomial family T_n, raised to each --exp
        #[arg(long)]
        family: Option<String>,
        #[arg(long = "exp", value_name = "POLY")]
        exps: Vec<String>,
        #[arg(long, default_value = "2..40")]
        n: String,
    },
    /// Frequency triple cancelling for three matrices of equal |trace|
    WitnessTriple {
        #[arg(required = true, num_args = 2..=3)]
        matrices: Vec<String>,
        /// Take two matrices g h and use the conjugates g^-i h g^i, i = 1..3
        #[arg(long)]
        conjugates: bool,
    },
    /// Exact ∫ f_1(M_1^n ξ)⋯f_k(M_k^n ξ) f_{k+1}(ξ) dξ
    Correlate {
        #[arg(long = "f", required = true, value_name = "TRIG", allow_hyphen_values = true)]
        fs: Vec<String>,
        #[arg(long = "m", value_name = "MATRIX")]
        ms: Vec<String>,
        #[arg(long, default_value_t = 1)]
        n: i64,
    },
    /// Lattice estimate of μ(G_0 ∩ M_1^-n G_1 ∩ …) with an error bound
    Estimate {
        #[arg(long = "set", required = true, value_name = "SET")]
        sets: Vec<String>,
        #[arg(long = "m", value_name = "MATRIX")]
        ms: Vec<String>,
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long = "Q", env = "TORAL_DEFAULT_Q", default_value_t = 1024)]
        big_q: u32,
    },
    /// Scan μ(D ∩ T^n D ∩ S^n D) against its predicted limit
    ScanConjecture {
        #[arg(long = "T")]
        t: String,
        #[arg(long = "S")]
        s: String,
        #[arg(long, value_name = "SET")]
        rect: String,
        #[arg(long = "Q", env = "TORAL_DEFAULT_Q", default_value_t = 1024)]
        big_q: u32,
        #[arg(long, default_value = "1..6")]
        n: String,
    },
    /// Cesàro averages of |μ(A ∩ T_n^-1 B) − μ(A)μ(B)|
    CesaroScan {
        sequence: String,
        #[arg(long, value_name = "SET")]
        a: String,
        #[arg(long, value_name = "SET")]
        b: String,
        #[arg(long = "N", default_value_t = 20)]
        n_max: i64,
        #[arg(long = "Q", env = "TORAL_DEFAULT_Q", default_value_t = 1024)]
        big_q: u32,
    },
    /// Modulus M with ∫ f(T^k ξ) f̄(ξ) dξ = 0 for nonzero multiples k of M
    Krengel {
        #[arg(long = "f", value_name = "TRIG", allow_hyphen_values = true)]
        f: String,
        #[arg(long = "T")]
        t: String,
    },
    /// Shortest word in the generators with |trace| = 2
    FindUnipotent {
        #[arg(required = true, num_args = 1..)]
        generators: Vec<String>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Run the bundled examples
    Scenarios {
        /// Only scenarios whose name contains this text
        #[arg(long)]
        filter: Option<String>,
    },
}

fn dispatch(cmd: Command) -> toral::Result<Report> {
    use commands::*;
    match cmd {
        Command::Classify { matrix } => classify_cmd(&matrix),
        Command::DecideMixing { sequence } => decide_mixing(&sequence),
        Command::DecideJoint { sequences, commuting } => decide_joint(&sequences, commuting),
        Command::DecideRelative { powers } => decide_relative(&powers),
        Command::RokhlinCheck { powers, family, exps, n } => match family {
            Some(f) if !exps.is_empty() => rokhlin_family(&f, &exps, &n),
            Some(_) => Err(toral::Error::InvalidArgument("--family needs at least one --exp".into())),
            None if powers.is_empty() => Err(toral::Error::InvalidArgument(
                "give powers T^POLY or --family F --exp POLY".into(),
            )),
            None => rokhlin_powers(&powers),
        },
        Command::WitnessTriple { matrices, conjugates } => witness_triple(&matrices, conjugates),
        Command::Correlate { fs, ms, n } => correlate(&fs, &ms, n),
        Command::Estimate { sets, ms, n, big_q } => estimate(&sets, &ms, n, big_q),
        Command::ScanConjecture { t, s, rect, big_q, n } => scan(&t, &s, &rect, big_q, &n),
        Command::CesaroScan { sequence, a, b, n_max, big_q } => cesaro(&sequence, &a, &b, n_max, big_q),
        Command::Krengel { f, t } => krengel(&f, &t),
        Command::FindUnipotent { generators, max_len } => unipotent(&generators, max_len),
        Command::Scenarios { filter } => {
            let r = scenarios::run(filter.as_deref());
            let mut rep = Report::new(r.json, r.human).with_csv(r.csv);
            if !r.disagreements.is_empty() {
                rep.disagreement = Some(format!("oracle disagreement in {}", r.disagreements.join(", ")));
            } else if !r.failures.is_empty() {
                rep.disagreement = Some(format!("failed scenarios: {}", r.failures.join(", ")));
            }
            Ok(rep)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match dispatch(cli.command) {
        Ok(r) => r,
        Err(e) => {
            if cli.json {
                print!("{}", render_json(&json!({ "error": e.code(), "message": e.to_string() })));
            }
            eprintln!("error[{}]: {e}", e.code());
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.csv {
        let Some(csv) = &report.csv else {
            eprintln!("error[Usage]: --csv is only available for scan-conjecture, cesaro-scan, rokhlin-check --family and scenarios");
            return ExitCode::from(2);
        };
        if let Err(e) = std::fs::write(path, csv) {
            eprintln!("error[Io]: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        print!("{}", render_json(&report.json));
    } else {
        print!("{}", report.human);
    }
    match &report.disagreement {
        Some(msg) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
