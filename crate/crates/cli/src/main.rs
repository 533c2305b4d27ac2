use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qinv_core::catalog::lookup;
use qinv_core::hilbert::{
    constant_term_series, hilbert_lsut_coeffs, hilbert_lut_coeffs, hilbert_slocc_coeffs, hlsu_spec, hlu_spec,
    ClosedForm, Measure,
};
use qinv_core::measures::{classify3, meyer_wallach, MeasureRoute, CLASSIFY_NAMES};
use qinv_core::poly::State;
use qinv_core::registry::resolve;
use qinv_core::verify::{run_suite, Suite, DEFAULT_SEED};
use qinv_core::Error;

#[derive(Parser, Debug)]
#[command(name = "qinv", version, about = "Invariants and covariants of qubit systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a named invariant on a state.
    Eval {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        invariant: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// SLOCC orbit of a three-qubit state.
    Classify {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Meyer–Wallach measure and its per-qubit terms.
    Measure {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum, default_value_t = RouteArg::Direct)]
        route: RouteArg,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Hilbert-series coefficients.
    Hilbert {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        max_conj_degree: Option<u32>,
        #[arg(long, value_enum, default_value_t = Method::Character)]
        method: Method,
    },
    /// Look up a covariant.
    Covariant {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        name: String,
        /// Include the expanded polynomial.
        #[arg(long)]
        print: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Direct,
    Covariant,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Group {
    Slocc,
    Lut,
    Lsut,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Character,
    Ct,
    ClosedForm,
}

enum Outcome {
    Ok(Value),
    Failed(Value),
}

fn read_state(path: &Path, k: Option<usize>) -> Result<State, Error> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))?;
    let state = State::from_json(&text)?;
    if let Some(k) = k {
        if k != state.k() {
            return Err(Error::Dimension { expected: k, found: state.k() });
        }
    }
    Ok(state)
}

fn hilbert(group: Group, k: usize, n1: u32, n2: Option<u32>, method: Method) -> Result<Value, Error> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let unavailable = || Error::Argument(format!("method {method:?} is not available for {group:?} with k = {k}"));
    let value = match (group, method) {
        (Group::Slocc, Method::Character) => json!(hilbert_slocc_coeffs(k, n1)),
        (Group::Slocc, Method::ClosedForm) if k == 4 => json!(ClosedForm::slocc4().expand_1d(n1)?),
        (Group::Lut, Method::Character) => json!(hilbert_lut_coeffs(k, n1)),
        (Group::Lut, Method::Ct) => {
            let table = constant_term_series(&hlu_spec(k, Measure::Weyl)?, n1, 0)?;
            json!(table.into_iter().map(|r| r[0]).collect::<Vec<_>>())
        }
        (Group::Lut, Method::ClosedForm) => match k {
            3 => json!(ClosedForm::lut3().expand_1d(n1)?),
            4 => json!(ClosedForm::lut4().expand_1d(n1)?),
            _ => return Err(unavailable()),
        },
        (Group::Lsut, m) => {
            let n2 = n2.unwrap_or(n1);
            match m {
                Method::Character => json!(hilbert_lsut_coeffs(k, n1, n2)),
                Method::Ct => json!(constant_term_series(&hlsu_spec(k, Measure::Weyl)?, n1, n2)?),
                Method::ClosedForm => match k {
                    3 => json!(ClosedForm::lsut3().expand(n1, n2)?),
                    4 => json!(ClosedForm::lsut4().expand(n1, n2)?),
                    _ => return Err(unavailable()),
                },
            }
        }
        _ => return Err(unavailable()),
    };
    Ok(value)
}

fn run(command: Command) -> Result<Outcome, Error> {
    let value = match command {
        Command::Eval { state, invariant, k } => {
            let state = read_state(&state, k)?;
            let inv = resolve(state.k(), &invariant)?;
            let v = inv.evaluate(&state)?;
            json!({
                "name": inv.name(),
                "k": state.k(),
                "kind": inv.kind(),
                "bidegree": [inv.bidegree().0, inv.bidegree().1],
                "value": [v.re, v.im],
            })
        }
        Command::Classify { state, tol } => {
            let state = read_state(&state, Some(3))?;
            let c = classify3(&state, tol)?;
            let invariants: serde_json::Map<String, Value> =
                CLASSIFY_NAMES.iter().zip(c.values).map(|(n, v)| (n.to_string(), json!(v))).collect();
            let flags: serde_json::Map<String, Value> =
                CLASSIFY_NAMES.iter().zip(c.flags).map(|(n, f)| (n.to_string(), json!(f))).collect();
            json!({ "label": c.label, "invariants": invariants, "nonzero": flags })
        }
        Command::Measure { state, route, k } => {
            let state = read_state(&state, k)?;
            let route = match route {
                RouteArg::Direct => MeasureRoute::Direct,
                RouteArg::Covariant => MeasureRoute::Covariant,
            };
            serde_json::to_value(meyer_wallach(&state, route)?).expect("report serializes")
        }
        Command::Hilbert { group, k, max_degree, max_conj_degree, method } => {
            hilbert(group, k, max_degree, max_conj_degree, method)?
        }
        Command::Covariant { k, name, print } => {
            let c = lookup(k, &name)?;
            let mut out = json!({
                "name": name,
                "k": k,
                "amp_degree": c.amp_degree(),
                "multidegree": c.multidegree(),
                "terms": c.poly().num_terms(),
            });
            if print {
                out["polynomial"] = json!(c.poly().render());
            }
            out
        }
        Command::Verify { suite, k, trials, seed } => {
            let report = run_suite(suite.parse::<Suite>()?, k, trials, seed)?;
            let value = serde_json::to_value(&report).expect("report serializes");
            return Ok(if report.passed { Outcome::Ok(value) } else { Outcome::Failed(value) });
        }
    };
    Ok(Outcome::Ok(value))
}

fn error_json(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit(&error_json("usage", e.to_string().trim()));
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Ok(v)) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(v)) => {
            emit(&v);
            ExitCode::from(2)
        }
        Err(e) => {
            emit(&error_json(e.kind(), &e.to_string()));
            ExitCode::from(1)
        }
    }
}
