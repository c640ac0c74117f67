use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use locaug_cli::{run, run_value, JobDocument, JobError, Outcome};
use serde_json::{Map, Value};

#[derive(Parser)]
#[command(name = "locaug", version, about = "Exact computations in truncated twisted power series rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inverse of a series or of a square matrix.
    Inv(Common),
    /// Product of a list of series.
    Mul(Common),
    /// Logarithm of a series with augmentation 1.
    Log(Common),
    /// LDU factorization of a matrix with identity augmentation.
    Ldu(Common),
    /// Dieudonné determinant.
    Det(Common),
    /// Generator (1 + ab)(1 + ba)^-1 and its cyclic logarithm.
    Cgen(Common),
    /// Vaserstein's rewrite b' = b + c + bac.
    Vaserstein(Common),
    /// Cyclic logarithm of a unit.
    Cyclog(Common),
    /// Compares two units modulo commutators.
    Coset(Common),
    /// Class of an endomorphism, D(1 - αx).
    Endoclass(Common),
    /// Additivity of endomorphism classes along a block-triangular matrix.
    Addcheck(Common),
    /// Novikov inverse, W1 invariant and orbit counts.
    Novikov {
        #[command(flatten)]
        common: Common,
        /// Multiply degree-n orbit counts by n.
        #[arg(long)]
        lefschetz: bool,
    },
    /// Run the property suites.
    Selftest {
        #[command(flatten)]
        common: Common,
        /// One of coeff, ldu, dieudonne, dieudonne-commutative, cgroup, cyclog, novikov; all when omitted.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Run a complete job document.
    Run {
        /// Job file, `-` for stdin.
        job: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Ring description document.
    #[arg(long)]
    ring: Option<PathBuf>,
    /// Truncation order; falls back to an "order" field in the ring or input document.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Operand document, `-` for stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_json(path: &PathBuf) -> Result<Value, JobError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(path)
    }
    .map_err(|e| JobError::Schema(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| JobError::Schema(format!("{}: {e}", path.display())))
}

fn take_order(doc: &mut Value) -> Result<Option<usize>, JobError> {
    match doc.as_object_mut().and_then(|m| m.remove("order")) {
        None => Ok(None),
        Some(v) => v.as_u64().map(|n| Some(n as usize)).ok_or_else(|| JobError::Schema("\"order\" must be an integer".into())),
    }
}

fn build_job(operation: &str, common: &Common, mut extra: Map<String, Value>) -> Result<JobDocument, JobError> {
    let mut ring = common.ring.as_ref().map(read_json).transpose()?;
    let mut operands = common.input.as_ref().map(read_json).transpose()?.unwrap_or(Value::Object(Map::new()));
    let doc_order = match ring.as_mut() {
        Some(r) => take_order(r)?,
        None => None,
    };
    let input_order = take_order(&mut operands)?;
    let order = common
        .order
        .or(input_order)
        .or(doc_order)
        .ok_or_else(|| JobError::Schema("the truncation order is required (--order N)".into()))?;
    let Value::Object(mut operands) = operands else {
        return Err(JobError::Schema("operand document must be a JSON object".into()));
    };
    operands.append(&mut extra);
    Ok(JobDocument { operation: operation.into(), order, ring, operands, seed: common.seed, output: None })
}

fn emit(outcome: &Outcome, out: Option<&PathBuf>) -> ExitCode {
    let text = outcome.render();
    let written = match out {
        Some(path) => fs::write(path, &text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("locaug: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (operation, common, extra) = match &cli.command {
        Command::Run { job, out } => {
            let outcome = match read_json(job) {
                Ok(v) => run_value(&v),
                Err(e) => Outcome { document: e.to_document(), exit_code: e.exit_code() },
            };
            let target = out.clone().or_else(|| outcome_path(&outcome, job));
            return emit(&outcome, target.as_ref());
        }
        Command::Novikov { common, lefschetz } => {
            let mut extra = Map::new();
            if *lefschetz {
                extra.insert("lefschetz".into(), Value::Bool(true));
            }
            ("novikov", common, extra)
        }
        Command::Selftest { common, suite } => {
            let mut extra = Map::new();
            if let Some(s) = suite {
                extra.insert("suite".into(), Value::String(s.clone()));
            }
            ("selftest", common, extra)
        }
        Command::Inv(c) => ("inv", c, Map::new()),
        Command::Mul(c) => ("mul", c, Map::new()),
        Command::Log(c) => ("log", c, Map::new()),
        Command::Ldu(c) => ("ldu", c, Map::new()),
        Command::Det(c) => ("det", c, Map::new()),
        Command::Cgen(c) => ("cgen", c, Map::new()),
        Command::Vaserstein(c) => ("vaserstein", c, Map::new()),
        Command::Cyclog(c) => ("cyclog", c, Map::new()),
        Command::Coset(c) => ("coset", c, Map::new()),
        Command::Endoclass(c) => ("endoclass", c, Map::new()),
        Command::Addcheck(c) => ("addcheck", c, Map::new()),
    };
    let outcome = match build_job(operation, common, extra) {
        Ok(job) => run(&job),
        Err(e) => Outcome { document: e.to_document(), exit_code: e.exit_code() },
    };
    emit(&outcome, common.out.as_ref())
}

/// The `output` field of a job file, if it parsed.
fn outcome_path(_outcome: &Outcome, job: &PathBuf) -> Option<PathBuf> {
    let v = read_json(job).ok()?;
    v.get("output")?.as_str().map(PathBuf::from)
}
