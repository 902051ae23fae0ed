use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use matpersp::atoms::{lookup_atom, registry_samples, AtomKind, ScalarAtom};
use matpersp::commuting::DEFAULT_FLOOR;
use matpersp::encoding::{self, MatrixJson};
use matpersp::functionals::{self, DensityMatrix};
use matpersp::perspective;
use matpersp::verify::{self, AtomSpec, Execution, TheoremTag, TrialConfig};
use matpersp::{CMatrix, Error, HermitianMatrix};

#[derive(Parser)]
#[command(
    name = "matpersp",
    version,
    about = "Matrix perspectives and seeded Loewner-order checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification campaigns and emit a JSON report.
    Verify(VerifyArgs),
    /// Evaluate a functional on matrices read from JSON files.
    Eval(EvalArgs),
    /// List the scalar atom registry.
    Atoms {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem tag, or `all` for every positive-control campaign.
    #[arg(long, default_value = "all")]
    theorem: String,
    /// Scalar atom under test.
    #[arg(long)]
    atom: Option<String>,
    /// Atom parameter; defaults to --s for neg_power and --t for power or constant.
    #[arg(long, allow_hyphen_values = true)]
    param: Option<f64>,
    /// Concave weight of the extended perspective.
    #[arg(long)]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    h_param: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long)]
    dim_m: Option<usize>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8, allow_hyphen_values = true)]
    tol: f64,
    #[arg(long, default_value_t = 1e-8, allow_hyphen_values = true)]
    floor: f64,
    /// Upper bound of the contraction factor in hp-contractive.
    #[arg(long, default_value_t = 1.0)]
    shrink: f64,
    /// Succeed only if a violation is found.
    #[arg(long)]
    negative_control: bool,
    /// Run trials on one thread.
    #[arg(long)]
    serial: bool,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report to stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Functional {
    RelEntropy,
    RelEntropyPerspective,
    LiebS,
    LiebPq,
    Perspective,
    Marechal,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    functional: Functional,
    #[arg(long)]
    rho: Option<PathBuf>,
    #[arg(long)]
    sigma: Option<PathBuf>,
    #[arg(long)]
    a: Option<PathBuf>,
    #[arg(long)]
    b: Option<PathBuf>,
    #[arg(long)]
    k: Option<PathBuf>,
    #[arg(long)]
    x: Option<PathBuf>,
    #[arg(long)]
    l: Option<PathBuf>,
    #[arg(long)]
    r: Option<PathBuf>,
    #[arg(long)]
    atom: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    param: Option<f64>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    h_param: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_FLOOR, allow_hyphen_values = true)]
    floor: f64,
    /// Write a matrix-valued result here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(anyhow::Error),
    Check(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::HypothesisViolation { .. } | Error::EigenSolverFailed { .. } => {
                Failure::Check(e.into())
            }
            _ => Failure::Usage(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(&args),
        Command::Eval(args) => cmd_eval(&args).map(|()| true),
        Command::Atoms { json } => {
            cmd_atoms(json);
            Ok(true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn atom_parameter(
    name: &str,
    explicit: Option<f64>,
    s: Option<f64>,
    t: Option<f64>,
) -> Option<f64> {
    explicit.or(match AtomKind::from_name(name) {
        Some(AtomKind::NegPower) => s,
        Some(AtomKind::Power) | Some(AtomKind::Constant) => t,
        _ => None,
    })
}

fn parse_theorems(sel: &str) -> CliResult<Vec<TheoremTag>> {
    if sel == "all" {
        return Ok(TheoremTag::ALL.to_vec());
    }
    sel.split(',')
        .map(|t| t.trim().parse::<TheoremTag>().map_err(Failure::from))
        .collect()
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<bool> {
    let theorems = parse_theorems(&args.theorem)?;
    let defaults = TrialConfig::default();
    let f = args
        .atom
        .as_deref()
        .map(|n| AtomSpec::new(n, atom_parameter(n, args.param, args.s, args.t)));
    let h = args
        .h
        .as_deref()
        .map(|n| AtomSpec::new(n, atom_parameter(n, args.h_param, None, args.t)));
    let config = TrialConfig {
        dim_n: args.dim,
        dim_m: args.dim_m,
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        floor: args.floor,
        f,
        h,
        s: args.s.unwrap_or(defaults.s),
        p: args.p.unwrap_or(defaults.p),
        q: args.q.unwrap_or(defaults.q),
        shrink: args.shrink,
        negative_control: args.negative_control,
        ..defaults
    };
    let execution = if args.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let reports = verify::run_campaign_with(&config, &theorems, execution)?;
    let body = verify::reports_to_json(&reports);
    if let Some(path) = &args.out {
        fs::write(path, format!("{body}\n"))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if args.json {
        println!("{body}");
    } else {
        for r in &reports {
            println!(
                "{} {:<22} trials={} failures={} worst_slack={:.6e} redraws={}",
                if r.passed { "PASS" } else { "FAIL" },
                r.theorem.tag(),
                r.trials,
                r.failures,
                r.worst_slack,
                r.redraws
            );
        }
    }
    Ok(reports.iter().all(|r| r.passed))
}

fn read_file(path: &Path) -> CliResult<String> {
    Ok(fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> CliResult<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Failure::Usage(anyhow!("--{flag} is required for this functional")))
}

fn hermitian_arg(p: &Option<PathBuf>, flag: &str) -> CliResult<HermitianMatrix> {
    let path = required(p, flag)?;
    encoding::read_hermitian(&read_file(path)?)
        .map_err(|e| Failure::Usage(anyhow!(e).context(format!("--{flag} {}", path.display()))))
}

fn matrix_arg(p: &Option<PathBuf>, flag: &str) -> CliResult<CMatrix> {
    let path = required(p, flag)?;
    encoding::read_matrix(&read_file(path)?)
        .map_err(|e| Failure::Usage(anyhow!(e).context(format!("--{flag} {}", path.display()))))
}

fn density_arg(p: &Option<PathBuf>, flag: &str, floor: f64) -> CliResult<DensityMatrix> {
    let m = hermitian_arg(p, flag)?;
    DensityMatrix::with_floor(m, floor)
        .map_err(|e| Failure::Usage(anyhow!(e).context(format!("--{flag}"))))
}

fn required_real(v: Option<f64>, flag: &str) -> CliResult<f64> {
    v.ok_or_else(|| Failure::Usage(anyhow!("--{flag} is required for this functional")))
}

fn atom_arg(
    name: &Option<String>,
    param: Option<f64>,
    s: Option<f64>,
    t: Option<f64>,
    flag: &str,
) -> CliResult<ScalarAtom> {
    let name = name
        .as_deref()
        .ok_or_else(|| Failure::Usage(anyhow!("--{flag} is required for this functional")))?;
    Ok(lookup_atom(name, atom_parameter(name, param, s, t))?)
}

fn cmd_eval(args: &EvalArgs) -> CliResult<()> {
    let mut inputs: serde_json::Map<String, serde_json::Value> = [
        ("rho", &args.rho),
        ("sigma", &args.sigma),
        ("a", &args.a),
        ("b", &args.b),
        ("k", &args.k),
        ("x", &args.x),
        ("l", &args.l),
        ("r", &args.r),
    ]
    .into_iter()
    .filter_map(|(n, p)| {
        p.as_ref()
            .map(|p| (n.to_string(), json!(p.display().to_string())))
    })
    .collect();
    for (n, v) in [
        ("s", args.s),
        ("t", args.t),
        ("p", args.p),
        ("q", args.q),
        ("param", args.param),
    ] {
        if let Some(v) = v {
            inputs.insert(n.to_string(), json!(v));
        }
    }
    for (n, v) in [("atom", &args.atom), ("h", &args.h)] {
        if let Some(v) = v {
            inputs.insert(n.to_string(), json!(v));
        }
    }

    let (name, value) = match args.functional {
        Functional::RelEntropy | Functional::RelEntropyPerspective => {
            let rho = density_arg(&args.rho, "rho", args.floor)?;
            let sigma = density_arg(&args.sigma, "sigma", args.floor)?;
            if matches!(args.functional, Functional::RelEntropy) {
                (
                    "rel-entropy",
                    functionals::quantum_relative_entropy_direct(&rho, &sigma)?,
                )
            } else {
                (
                    "rel-entropy-perspective",
                    functionals::quantum_relative_entropy_perspective(&rho, &sigma)?,
                )
            }
        }
        Functional::LiebS => {
            let a = hermitian_arg(&args.a, "a")?;
            let b = hermitian_arg(&args.b, "b")?;
            let k = matrix_arg(&args.k, "k")?;
            let s = required_real(args.s, "s")?;
            ("lieb-s", functionals::lieb_functional(&a, &b, &k, s)?)
        }
        Functional::LiebPq => {
            let a = hermitian_arg(&args.a, "a")?;
            let b = hermitian_arg(&args.b, "b")?;
            let x = matrix_arg(if args.x.is_some() { &args.x } else { &args.k }, "x")?;
            let p = required_real(args.p, "p")?;
            let q = required_real(args.q, "q")?;
            (
                "lieb-pq",
                functionals::lieb_pq_functional(&a, &b, &x, p, q)?,
            )
        }
        Functional::Perspective | Functional::Marechal => {
            let f = atom_arg(&args.atom, args.param, args.s, args.t, "atom")?;
            let l = hermitian_arg(&args.l, "l")?;
            let r = hermitian_arg(&args.r, "r")?;
            let (name, g) = if matches!(args.functional, Functional::Perspective) {
                (
                    "perspective",
                    perspective::perspective_symmetrized(&f, &l, &r, args.floor)?,
                )
            } else {
                let h = atom_arg(&args.h, args.h_param, None, args.t, "h")?;
                (
                    "marechal",
                    perspective::marechal_symmetrized(&f, &h, &l, &r, args.floor)?,
                )
            };
            let text = encoding::write_matrix(g.matrix());
            if let Some(path) = &args.out {
                fs::write(path, format!("{text}\n"))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if args.json {
                let out = json!({
                    "functional": name,
                    "value": MatrixJson::from_matrix(g.matrix()),
                    "inputs": inputs,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serializable")
                );
            } else if args.out.is_none() {
                println!("{text}");
            }
            return Ok(());
        }
    };
    if args.json {
        let out = json!({
            "functional": name,
            "value": value,
            "inputs": inputs,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!("{value:.16e}");
    }
    Ok(())
}

fn cmd_atoms(json: bool) {
    let atoms = registry_samples();
    if json {
        let rows: Vec<_> = atoms
            .iter()
            .map(|a| {
                json!({
                    "name": a.name(),
                    "formula": a.kind.formula(),
                    "parameter": a.parameter,
                    "domain": a.domain.to_string(),
                    "operator_convex": a.operator_convex,
                    "operator_concave": a.operator_concave,
                    "f0_nonpositive": a.f0_nonpositive,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&rows).expect("serializable")
        );
        return;
    }
    println!(
        "{:<10} {:<22} {:<10} {:<8} {:<8} f(0)<=0",
        "name", "formula", "domain", "convex", "concave"
    );
    for a in atoms {
        println!(
            "{:<10} {:<22} {:<10} {:<8} {:<8} {}",
            a.name(),
            a.kind.formula(),
            a.domain.to_string(),
            a.operator_convex,
            a.operator_concave,
            a.f0_nonpositive
        );
    }
}
