//! Command-line shell around the library: export structure constants, run
//! verification suites, and compute fixed-subalgebra bases.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 model-gate
//! failure.

use clap::{Args, Parser, Subcommand};
use e8alg::freudenthal as fr;
use e8alg::sc::{wedge_sc_file, BasisFile};
use e8alg::scalar::{Field, Qi, Rat, C64, Z24};
use e8alg::verify::{run_suite, SuiteSpec, VerifyError};
use e8alg::wedge;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "e8alg", version, about = "Exact e8 models and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the complete structure-constant table over the frozen basis.
    GenSc(GenScArgs),
    /// Run a verification suite and print its canonical report.
    Verify(VerifyArgs),
    /// Compute a fixed-subalgebra basis file for an order-4 automorphism.
    Fixed(FixedArgs),
}

#[derive(Args)]
struct GenScArgs {
    /// Model: wedge | freudenthal
    #[arg(long, default_value = "wedge", env = "E8ALG_MODEL")]
    model: String,
    /// Scalar backend: qi | zeta24 | f64
    #[arg(long, default_value = "qi", env = "E8ALG_BACKEND")]
    backend: String,
    /// Output path (stdout when omitted)
    #[arg(long, env = "E8ALG_OUT")]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, e.g. jacobi, antisymmetry, fixed-dim, automorphism:w4
    #[arg(long, env = "E8ALG_SUITE")]
    suite: String,
    /// Model: wedge | freudenthal (inferred from --auto when omitted)
    #[arg(long, env = "E8ALG_MODEL")]
    model: Option<String>,
    /// Scalar backend: qi | zeta24 | f64 (inferred when omitted)
    #[arg(long, env = "E8ALG_BACKEND")]
    backend: Option<String>,
    /// Input mode: exhaustive | sample
    #[arg(long, default_value = "sample", env = "E8ALG_MODE")]
    mode: String,
    /// Sample count for sampled sweeps
    #[arg(long, default_value_t = 1000, env = "E8ALG_SAMPLES")]
    samples: usize,
    /// PRNG seed for sampled sweeps
    #[arg(long, default_value_t = 0, env = "E8ALG_SEED")]
    seed: u64,
    /// Parallel workers for the heavy sweeps
    #[arg(long, default_value_t = 1, env = "E8ALG_WORKERS")]
    workers: usize,
    /// Float residual tolerance (f64 backend)
    #[arg(long, default_value_t = 1e-9, env = "E8ALG_TOLERANCE")]
    tolerance: f64,
    /// Automorphism for order / fixed-dim suites: w4 | upsilon4 | upsilon | mu4
    #[arg(long, env = "E8ALG_AUTO")]
    auto: Option<String>,
    /// Report path (canonical text; `.json` extension switches to JSON)
    #[arg(long, env = "E8ALG_OUT")]
    out: Option<String>,
}

#[derive(Args)]
struct FixedArgs {
    /// Automorphism: w4 | upsilon4 | upsilon | mu4
    #[arg(long, env = "E8ALG_AUTO")]
    auto: String,
    /// Model: wedge | freudenthal (inferred from --auto when omitted)
    #[arg(long, env = "E8ALG_MODEL")]
    model: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long, env = "E8ALG_OUT")]
    out: Option<String>,
}

fn infer_model(auto: Option<&str>) -> &'static str {
    match auto {
        Some("upsilon4" | "upsilon" | "mu4" | "phi_upsilon") => "freudenthal",
        _ => "wedge",
    }
}

fn default_backend(suite: &str) -> &'static str {
    match suite {
        "kernel-elements" => "qi", // overridden to zeta24 for the wedge below
        _ => "qi",
    }
}

fn emit(out: &Option<String>, text: &str) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen_sc(args: &GenScArgs) -> Result<ExitCode, String> {
    let text = match (args.model.as_str(), args.backend.as_str()) {
        ("wedge", "qi") => wedge_sc_file::<Qi>().to_text(),
        ("wedge", "zeta24") => wedge_sc_file::<Z24>().to_text(),
        ("wedge", "f64") => wedge_sc_file::<C64>().to_text(),
        ("freudenthal", "qi") => {
            let model = fr::Model::<Qi>::build().map_err(|e| format!("gate: {e}"))?;
            e8alg::sc::freudenthal_sc_file(&model).to_text()
        }
        ("freudenthal", b) => {
            return Err(format!("usage: backend {b} is not supported for this model"))
        }
        (m, _) => return Err(format!("usage: unknown model {m}")),
    };
    emit(&args.out, &text).map_err(|e| format!("usage: {e}"))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let model = args
        .model
        .clone()
        .unwrap_or_else(|| infer_model(args.auto.as_deref()).to_string());
    let backend = args.backend.clone().unwrap_or_else(|| {
        if args.suite == "kernel-elements" && model == "wedge" {
            "zeta24".to_string()
        } else {
            default_backend(&args.suite).to_string()
        }
    });
    let spec = SuiteSpec {
        suite: args.suite.clone(),
        model,
        mode: args.mode.clone(),
        samples: args.samples,
        seed: args.seed,
        backend,
        workers: args.workers,
        tolerance: args.tolerance,
        auto: args.auto.clone(),
    };
    let report = run_suite(&spec).map_err(|e| match e {
        VerifyError::BadSpec(m) => format!("usage: {m}"),
        VerifyError::Gate(m) => format!("gate: {m}"),
    })?;
    let text = if args.out.as_deref().is_some_and(|p| p.ends_with(".json")) {
        report.json()
    } else {
        report.canonical_text()
    };
    emit(&args.out, &text).map_err(|e| format!("usage: {e}"))?;
    if args.out.is_some() {
        // Still echo the canonical report for interactive use.
        print!("{}", report.canonical_text());
    }
    eprintln!("wall-ms: {}", report.wall_ms);
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn rat_of(x: &Qi) -> Rat {
    let (re, im) = x.re_im().expect("rational coordinate");
    assert!(num_traits::Zero::is_zero(&im), "coordinate is not real");
    re
}

fn cmd_fixed(args: &FixedArgs) -> Result<ExitCode, String> {
    let model = args
        .model
        .clone()
        .unwrap_or_else(|| infer_model(Some(args.auto.as_str())).to_string());
    let file: BasisFile<Rat> = match (model.as_str(), args.auto.as_str()) {
        ("wedge", "w4") => {
            let mat = wedge::real_matrix(|el: &wedge::El<Qi>| wedge::w4_apply(el));
            BasisFile {
                model,
                basis_version: wedge::BASIS_VERSION.into(),
                automorphism: "w4".into(),
                ambient: wedge::DIM,
                vectors: wedge::fixed_subalgebra(&mat),
            }
        }
        ("freudenthal", a @ ("upsilon4" | "upsilon" | "mu4")) => {
            let m = e8alg::verify::f_model().map_err(|e| format!("gate: {e}"))?;
            let rf = e8alg::verify::f_real().map_err(|e| format!("gate: {e}"))?;
            let apply = |x: &fr::ElF<Qi>| match a {
                "upsilon4" => m.upsilon4(x),
                "upsilon" => m.upsilon(x),
                _ => m.mu4(x),
            };
            let vectors = rf
                .fixed_subspace(m, apply)
                .iter()
                .map(|v| v.iter().map(rat_of).collect())
                .collect();
            BasisFile {
                model,
                basis_version: fr::BASIS_VERSION.into(),
                automorphism: a.into(),
                ambient: fr::FDIM,
                vectors,
            }
        }
        (m, a) => return Err(format!("usage: automorphism {a} is not defined for model {m}")),
    };
    emit(&args.out, &file.to_text()).map_err(|e| format!("usage: {e}"))?;
    eprintln!("dimension: {}", file.vectors.len());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::GenSc(a) => cmd_gen_sc(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Fixed(a) => cmd_fixed(a),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            if let Some(m) = msg.strip_prefix("gate: ") {
                let _ = m;
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
