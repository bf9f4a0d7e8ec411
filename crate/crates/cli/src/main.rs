use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hypercone::cone::{cone_member, default_eps, directional_eigenvalues, ones, Mode};
use hypercone::io::{parse_matrix, parse_partition, parse_symmetric, parse_vector};
use hypercone::lpm::{block_pinch, fischer_check, lpm_eval, LpmPolynomial, DEFAULT_FISCHER_EPS};
use hypercone::majorization::{
    birkhoff_decompose, default_tol, doubly_stochastic_witness, majorizes, DoublyStochasticMatrix,
    DEFAULT_BIRKHOFF_TOL,
};
use hypercone::poly::HomogeneousPolynomial;
use hypercone::spectral::eigenvalues_sym;
use hypercone::suite::{run_fischer, run_suite, verify_main, SuiteConfig, VerificationReport, DEFAULT_SEED, SUITES};
use hypercone::Error;

/// Hyperbolic polynomials, hyperbolicity cones and Schur–Horn type checks.
///
/// Every input argument is either inline JSON or a path to a file holding it.
#[derive(Parser)]
#[command(name = "hypercone", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Tolerance of the command (membership eps, majorization tol, ...)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Master seed for randomized checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Trials per report, overriding the suite defaults
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Cone mode: open or closed
    #[arg(long, global = true, default_value = "open")]
    mode: Mode,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Directional eigenvalues of a point, or eigenvalues of a symmetric matrix
    Eig {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, requires = "poly")]
        point: Option<String>,
        /// Hyperbolic direction (defaults to the all-ones vector)
        #[arg(long, requires = "poly")]
        direction: Option<String>,
        #[arg(long, conflicts_with = "poly")]
        matrix: Option<String>,
    },
    /// Hyperbolicity cone membership
    Cone {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        direction: Option<String>,
    },
    /// Whether x is majorized by y
    Major {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// A doubly stochastic D with Dy = x
    Witness {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Birkhoff decomposition of a doubly stochastic matrix
    Birkhoff {
        #[arg(long)]
        matrix: String,
    },
    /// Linear principal minor polynomials
    Lpm {
        #[command(subcommand)]
        command: LpmCommand,
    },
    /// Run a verification suite, or `all`
    Verify {
        suite: String,
        /// With --matrix, check this polynomial on one input (suite `main`)
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, requires = "poly")]
        matrix: Option<String>,
        /// Restrict suite `fischer` to this lpm polynomial
        #[arg(long)]
        lpm: Option<String>,
    },
}

#[derive(Subcommand)]
enum LpmCommand {
    /// Σ c_J det(A_J)
    Eval {
        #[arg(long)]
        lpm: String,
        #[arg(long)]
        matrix: String,
    },
    /// Block-diagonal pinching of a symmetric matrix
    Pinch {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        partition: String,
    },
    /// 𝒫(pinched A) ≥ 𝒫(A) and cone preservation
    Fischer {
        #[arg(long)]
        lpm: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        partition: String,
    },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

type Outcome = Result<bool, Failure>;

/// File contents when `arg` names an existing file, `arg` itself otherwise.
fn load(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn with_context<T>(what: &str, r: hypercone::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{what}: {m}")),
        Failure::Math(m) => Failure::Math(m),
    })
}

fn poly_arg(arg: &str) -> Result<HomogeneousPolynomial, Failure> {
    with_context("--poly", HomogeneousPolynomial::from_json_str(&load(arg)?))
}

fn vector_arg(name: &str, arg: &str) -> Result<Vec<f64>, Failure> {
    with_context(name, parse_vector(&load(arg)?))
}

fn lpm_arg(arg: &str) -> Result<LpmPolynomial, Failure> {
    with_context("--lpm", LpmPolynomial::from_json_str(&load(arg)?))
}

fn emit(json_mode: bool, value: &Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{value}");
    } else {
        println!("{}", text());
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("[{}]", parts.join(", "))
}

fn positive_tol(g: &Global) -> Result<Option<f64>, Failure> {
    match g.tol {
        Some(t) if t.is_nan() || t <= 0.0 => Err(Failure::Usage(format!("--tol must be positive, got {t}"))),
        t => Ok(t),
    }
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    let tol = positive_tol(g)?;
    if g.trials == Some(0) {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    match cli.command {
        Command::Eig { poly, point, direction, matrix } => {
            let (eigenvalues, certified) = match (poly, matrix) {
                (Some(p), None) => {
                    let p = poly_arg(&p)?;
                    let x = vector_arg("--point", point.as_deref().ok_or_else(|| Failure::Usage("--point is required with --poly".into()))?)?;
                    let a = match direction {
                        Some(d) => vector_arg("--direction", &d)?,
                        None => ones(p.dim()),
                    };
                    let s = directional_eigenvalues(&p, &a, &x)?;
                    (s.eigenvalues, s.certified)
                }
                (None, Some(m)) => {
                    let a = with_context("--matrix", parse_symmetric(&load(&m)?))?;
                    (eigenvalues_sym(&a), true)
                }
                _ => return Err(Failure::Usage("give either --poly with --point, or --matrix".into())),
            };
            let value = json!({ "eigenvalues": eigenvalues, "certified": certified });
            emit(g.json, &value, || format!("eigenvalues: {}\ncertified: {certified}", fmt_vec(&eigenvalues)));
            Ok(true)
        }
        Command::Cone { poly, point, direction } => {
            let p = poly_arg(&poly)?;
            let x = vector_arg("--point", &point)?;
            let a = match direction {
                Some(d) => vector_arg("--direction", &d)?,
                None => ones(p.dim()),
            };
            let eps = tol.unwrap_or_else(|| default_eps(&x));
            let m = cone_member(&p, &a, &x, g.mode, eps)?;
            let value = serde_json::to_value(&m).expect("membership serializes");
            emit(g.json, &value, || {
                format!(
                    "member ({:?}): {}\nmin eigenvalue: {}\ncertified: {}",
                    m.mode, m.member, m.min_eigenvalue, m.certified
                )
                .to_lowercase()
            });
            Ok(true)
        }
        Command::Major { x, y } => {
            let x = vector_arg("--x", &x)?;
            let y = vector_arg("--y", &y)?;
            let t = tol.unwrap_or_else(|| default_tol(&y));
            let majorized = majorizes(&x, &y, t)?;
            emit(g.json, &json!({ "majorized": majorized, "tol": t }), || format!("x majorized by y: {majorized}"));
            Ok(true)
        }
        Command::Witness { x, y } => {
            let x = vector_arg("--x", &x)?;
            let y = vector_arg("--y", &y)?;
            let d = doubly_stochastic_witness(&x, &y)?;
            let value = serde_json::to_value(&d).expect("matrix serializes");
            emit(g.json, &value, || d.matrix().to_rows().iter().map(|r| fmt_vec(r)).collect::<Vec<_>>().join("\n"));
            Ok(true)
        }
        Command::Birkhoff { matrix } => {
            let m = with_context("--matrix", parse_matrix(&load(&matrix)?))?;
            let d = DoublyStochasticMatrix::new(m)?;
            let b = birkhoff_decompose(&d, tol.unwrap_or(DEFAULT_BIRKHOFF_TOL))?;
            let value = serde_json::to_value(&b).expect("decomposition serializes");
            emit(g.json, &value, || {
                b.weights
                    .iter()
                    .zip(&b.permutations)
                    .map(|(w, p)| {
                        let one_based: Vec<f64> = p.iter().map(|&j| (j + 1) as f64).collect();
                        format!("{w}  {}", fmt_vec(&one_based))
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(true)
        }
        Command::Lpm { command } => run_lpm(g, tol, command),
        Command::Verify { suite, poly, matrix, lpm } => run_verify(g, &suite, poly, matrix, lpm),
    }
}

fn run_lpm(g: &Global, tol: Option<f64>, command: LpmCommand) -> Outcome {
    match command {
        LpmCommand::Eval { lpm, matrix } => {
            let p = lpm_arg(&lpm)?;
            let a = with_context("--matrix", parse_symmetric(&load(&matrix)?))?;
            let v = lpm_eval(&p, &a)?;
            emit(g.json, &json!({ "value": v }), || format!("{v}"));
            Ok(true)
        }
        LpmCommand::Pinch { matrix, partition } => {
            let a = with_context("--matrix", parse_symmetric(&load(&matrix)?))?;
            let part = with_context("--partition", parse_partition(a.n(), &load(&partition)?))?;
            let pinched = block_pinch(&a, &part)?;
            let value = serde_json::to_value(&pinched).expect("matrix serializes");
            emit(g.json, &value, || pinched.to_rows().iter().map(|r| fmt_vec(r)).collect::<Vec<_>>().join("\n"));
            Ok(true)
        }
        LpmCommand::Fischer { lpm, matrix, partition } => {
            let p = lpm_arg(&lpm)?;
            let a = with_context("--matrix", parse_symmetric(&load(&matrix)?))?;
            let part = with_context("--partition", parse_partition(a.n(), &load(&partition)?))?;
            let r = fischer_check(&p, &a, &part, tol.unwrap_or(DEFAULT_FISCHER_EPS))?;
            let value = serde_json::to_value(&r).expect("report serializes");
            emit(g.json, &value, || {
                format!(
                    "lhs (pinched): {}\nrhs: {}\ninequality holds: {}\ncone preserved: {}",
                    r.lhs, r.rhs, r.inequality_holds, r.cone_preserved
                )
            });
            Ok(r.inequality_holds && r.cone_preserved)
        }
    }
}

fn print_reports(reports: &[VerificationReport]) -> bool {
    for r in reports {
        println!("{}", serde_json::to_string(r).expect("report serializes"));
    }
    reports.iter().all(VerificationReport::passed)
}

fn run_verify(g: &Global, suite: &str, poly: Option<String>, matrix: Option<String>, lpm: Option<String>) -> Outcome {
    let config = SuiteConfig { seed: g.seed, trials: g.trials };
    if let Some(p) = poly {
        if suite != "main" {
            return Err(Failure::Usage("--poly applies to suite main only".into()));
        }
        let p = poly_arg(&p)?;
        let m = matrix.ok_or_else(|| Failure::Usage("--matrix is required with --poly".into()))?;
        let a = with_context("--matrix", parse_symmetric(&load(&m)?))?;
        let item = verify_main(&p, &a)?;
        println!("{}", serde_json::to_string(&item).expect("item serializes"));
        return Ok(item.passed());
    }
    if let Some(l) = lpm {
        if suite != "fischer" {
            return Err(Failure::Usage("--lpm applies to suite fischer only".into()));
        }
        return Ok(print_reports(&run_fischer(&config, Some(&lpm_arg(&l)?))?));
    }
    if suite == "all" {
        let mut ok = true;
        for name in SUITES {
            ok &= print_reports(&run_suite(name, &config)?);
        }
        return Ok(ok);
    }
    Ok(print_reports(&run_suite(suite, &config)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
