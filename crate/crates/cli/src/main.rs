//! `steinitz`: generate instances, select points, verify certificates and
//! run benchmarks.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use steinitz_core::workbench::{
    certify_euclidean, certify_spherical, config_from_env, gen_euclid, gen_full_sphere, gen_sphere, run_bench, verify,
    BenchConfig, CertificateFile, InstanceFile, OracleSettings, WbResult, WorkbenchError,
};
use steinitz_core::Method;

#[derive(Debug, Parser)]
#[command(name = "steinitz", version, about = "Quantitative Steinitz selection with certificates")]
struct Cli {
    /// Print a JSON summary on stdout instead of text on stderr.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Select points and write a verified certificate.
    #[command(subcommand)]
    Select(SelectCommand),
    /// Re-check a certificate against its instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Report empirical minima of the selection ratios.
    Bench {
        /// Comma-separated dimensions.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the JSON report (stdout if omitted).
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Points in R^dim whose hull contains the unit ball.
    Euclid {
        #[arg(long)]
        dim: usize,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Points on S^dim whose hull contains the cap of radius rho about the pole.
    Sphere {
        #[arg(long)]
        dim: usize,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fraction of points placed just below the equator.
        #[arg(long, default_value_t = 0.0)]
        southern_fraction: f64,
        /// Draw uniform points that fit in no open hemisphere instead.
        #[arg(long)]
        full_sphere: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Greedy,
}

#[derive(Debug, Subcommand)]
enum SelectCommand {
    /// At most 2d points still containing a ball about the origin.
    Euclid {
        #[arg(short, long)]
        input: PathBuf,
        /// Selector; chosen by instance size if omitted.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// At most 2d points still containing a cap about the north pole.
    Sphere {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Random directions for the containment-radius oracle.
    #[arg(long, default_value_t = OracleSettings::default().directions)]
    directions: usize,
    /// Random cap points for the cap-membership oracle.
    #[arg(long, default_value_t = OracleSettings::default().samples)]
    samples: usize,
    #[arg(long, default_value_t = OracleSettings::default().seed)]
    oracle_seed: u64,
}

impl OracleArgs {
    fn settings(&self) -> OracleSettings {
        OracleSettings {
            directions: self.directions,
            samples: self.samples,
            seed: self.oracle_seed,
            ..OracleSettings::default()
        }
    }
}

/// What a command reports back: a summary, an optional document for
/// `-o`/stdout, and the exit code.
struct Outcome {
    summary: Value,
    message: String,
    code: u8,
}

fn emit(text: &str, path: Option<&Path>) -> WbResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| WorkbenchError::Io { path: p.into(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> WbResult<(InstanceFile, String)> {
    let text = std::fs::read_to_string(path).map_err(|source| WorkbenchError::Io { path: path.into(), source })?;
    let digest = InstanceFile::digest_of_text(&text)?;
    Ok((InstanceFile::from_json(&text)?, digest))
}

fn run(cli: &Cli) -> WbResult<Outcome> {
    match &cli.command {
        Command::Gen(cmd) => {
            let (inst, output) = match cmd {
                GenCommand::Euclid { dim, n, seed, output } => (gen_euclid(*dim, *n, *seed)?, output),
                GenCommand::Sphere { dim, n, rho, seed, southern_fraction, full_sphere, output } => {
                    let inst = if *full_sphere {
                        gen_full_sphere(*dim, *n, *rho, *seed)?
                    } else {
                        gen_sphere(*dim, *n, *rho, *seed, *southern_fraction)?
                    };
                    (inst, output)
                }
            };
            let text = inst.to_json()?;
            let silent = cli.json && output.is_none();
            if !silent {
                emit(&text, output.as_deref())?;
            }
            let mut summary = json!({
                "command": "gen",
                "status": "ok",
                "kind": inst.kind,
                "dim": inst.dim,
                "points": inst.points.len(),
                "digest": inst.digest()?,
            });
            if silent {
                summary["document"] = serde_json::from_str(&text)?;
            }
            Ok(Outcome {
                message: format!("generated {} points ({:?}, dim {})", inst.points.len(), inst.kind, inst.dim),
                summary,
                code: 0,
            })
        }
        Command::Select(cmd) => {
            let cfg = config_from_env()?;
            let (cert, output) = match cmd {
                SelectCommand::Euclid { input, method, output, oracle } => {
                    let (inst, digest) = load_instance(input)?;
                    let method = method.map(|m| match m {
                        MethodArg::Exact => Method::Exact,
                        MethodArg::Greedy => Method::Greedy,
                    });
                    (certify_euclidean(&inst, &digest, method, &cfg, oracle.settings())?, output)
                }
                SelectCommand::Sphere { input, output, oracle } => {
                    let (inst, digest) = load_instance(input)?;
                    (certify_spherical(&inst, &digest, &cfg, oracle.settings())?, output)
                }
            };
            let text = cert.to_json()?;
            let silent = cli.json && output.is_none();
            if !silent {
                emit(&text, output.as_deref())?;
            }
            let passed = cert.verification.is_passed();
            let mut summary = json!({
                "command": "select",
                "status": if passed { "ok" } else { "verification_failed" },
                "payload": cert.payload,
                "verification": cert.verification,
            });
            if silent {
                summary["document"] = serde_json::from_str(&text)?;
            }
            Ok(Outcome {
                message: if passed {
                    "selection verified".into()
                } else {
                    format!("selection failed verification: {}", cert.verification.detail.clone().unwrap_or_default())
                },
                summary,
                code: if passed { 0 } else { 2 },
            })
        }
        Command::Verify { instance, certificate, oracle } => {
            let (inst, digest) = load_instance(instance)?;
            let cert = CertificateFile::load(certificate)?;
            let result = verify(&inst, &digest, &cert, oracle.settings())?;
            let passed = result.is_passed();
            Ok(Outcome {
                message: if passed {
                    "certificate verified".into()
                } else {
                    format!("certificate rejected: {}", result.detail.clone().unwrap_or_default())
                },
                summary: json!({
                    "command": "verify",
                    "status": if passed { "ok" } else { "verification_failed" },
                    "verification": result,
                }),
                code: if passed { 0 } else { 2 },
            })
        }
        Command::Bench { dims, trials, seed, report } => {
            if dims.is_empty() || *trials == 0 {
                return Err(WorkbenchError::Usage("bench needs at least one dimension and one trial".into()));
            }
            let out = run_bench(&BenchConfig {
                dims: dims.clone(),
                trials: *trials,
                seed: *seed,
                selection: config_from_env()?,
            })?;
            let text = steinitz_core::workbench::json::to_canonical_string(&out)?;
            let silent = cli.json && report.is_none();
            if !silent {
                emit(&text, report.as_deref())?;
            }
            let lines: Vec<String> = out
                .entries
                .iter()
                .map(|e| {
                    format!(
                        "d={}: min radius {:.6} in [{:.6}, {:.6}], min cap/rho {:.6}",
                        e.dim, e.min_achieved_radius, e.bracket_lower, e.bracket_upper, e.min_cap_ratio
                    )
                })
                .collect();
            Ok(Outcome {
                message: lines.join("\n"),
                summary: json!({ "command": "bench", "status": "ok", "report": out }),
                code: 0,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.summary);
            } else {
                eprintln!("{}", outcome.message);
            }
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            let code = err.exit_code() as u8;
            if cli.json {
                println!("{}", json!({ "status": "error", "exit_code": code, "message": err.to_string() }));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(code)
        }
    }
}
