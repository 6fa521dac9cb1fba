//! `pmat`: generate, transform, verify and tabulate P̂-matrices.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pmat_core::invariants::{GroupSpec, RootSubset};
use pmat_core::oracle::{self, Depth, SampleOptions, VerifyOptions};
use pmat_core::pmatrix::{
    self, check_rank_cap, generate_pmatrix, generate_pmatrix_alt, lambda_vector, ActiveName,
    DEFAULT_DET_CAP, DEFAULT_RANK_CAP,
};
use pmat_core::transform::{self, BasisTransform};
use pmat_core::Error;

use render::{Format, Rendered};

#[derive(Parser, Debug)]
#[command(
    name = "pmat",
    version,
    about = "P-matrices of finite reflection groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "PMAT_FORMAT")]
    format: Option<Format>,

    /// Largest rank accepted for any group.
    #[arg(long, global = true, env = "PMAT_RANK_CAP", default_value_t = DEFAULT_RANK_CAP)]
    rank_cap: usize,

    /// Largest rank for which symbolic determinants are expanded.
    #[arg(long, global = true, env = "PMAT_DET_CAP", default_value_t = DEFAULT_DET_CAP)]
    det_cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a generated object in the paper basis.
    Gen {
        group: String,
        #[arg(long, value_enum, env = "PMAT_WHAT", default_value = "pmatrix")]
        what: What,
        /// Active polynomial for `--what lambda`: det, short, long, pn, a+ or a-.
        #[arg(long, env = "PMAT_ACTIVE", default_value = "det")]
        active: String,
        /// Root subset for `--what roots`: all, short or long.
        #[arg(long, env = "PMAT_SUBSET", default_value = "all")]
        subset: String,
    },
    /// Move to a distinguished basis, or apply a stored transformation.
    Transform {
        group: String,
        #[arg(long, value_enum, env = "PMAT_TARGET", conflicts_with = "apply")]
        target: Option<Target>,
        /// JSON file holding a transformation (or a previous `transform` output).
        #[arg(long, env = "PMAT_APPLY")]
        apply: Option<PathBuf>,
    },
    /// Recompute everything from the definitions and compare.
    Verify {
        group: String,
        #[arg(long, env = "PMAT_DEPTH", default_value = "fast")]
        depth: String,
        #[arg(long, env = "PMAT_SAMPLES", default_value_t = oracle::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, env = "PMAT_TOL", default_value_t = oracle::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, env = "PMAT_SEED", default_value_t = oracle::DEFAULT_SEED)]
        seed: u64,
    },
    /// Number of terms of every matrix entry in a basis.
    Termcount {
        group: String,
        /// paper, flat, detbasis, canonical or file:<path>.
        #[arg(long, env = "PMAT_BASIS", default_value = "paper")]
        basis: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Pmatrix,
    PmatrixAlt,
    Lambda,
    Det,
    Hankel,
    Invariants,
    Degrees,
    Roots,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Flat,
    Abasis,
    Canonical,
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_BAD_ARGS: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_SOLVER: u8 = 4;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Solver { .. }
            | Error::Linear(_)
            | Error::NotInvariant(_)
            | Error::NotDivisible { .. } => EXIT_SOLVER,
            _ => EXIT_BAD_ARGS,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn bad_args(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_BAD_ARGS,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_group(s: &str, common: &Common) -> Result<GroupSpec, Failure> {
    let g: GroupSpec = s.parse()?;
    check_rank_cap(&g, common.rank_cap)?;
    for note in g.notes() {
        eprintln!("note: {note}");
    }
    Ok(g)
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let common = &cli.common;
    let format = common.format;
    match &cli.command {
        Command::Gen {
            group,
            what,
            active,
            subset,
        } => {
            let g = parse_group(group, common)?;
            let out = gen(&g, *what, active, subset, common)?;
            Ok((out.render(format.unwrap_or(Format::Text)), 0))
        }
        Command::Transform {
            group,
            target,
            apply,
        } => {
            let g = parse_group(group, common)?;
            let t = match (target, apply) {
                (Some(target), None) => solve(&g, *target)?,
                (None, Some(path)) => read_transform(&g, path)?,
                _ => return Err(bad_args("give exactly one of --target or --apply")),
            };
            let out = render::TransformOutput::new(&t)?;
            Ok((
                Rendered::Transform(out).render(format.unwrap_or(Format::Text)),
                0,
            ))
        }
        Command::Verify {
            group,
            depth,
            samples,
            tol,
            seed,
        } => {
            let g = parse_group(group, common)?;
            let depth: Depth = depth.parse()?;
            if *samples == 0 || !(tol.is_finite() && *tol > 0.0) {
                return Err(bad_args(
                    "--samples must be positive and --tol a positive number",
                ));
            }
            let opts = VerifyOptions {
                depth,
                sampling: SampleOptions {
                    samples: *samples,
                    tol: *tol,
                    seed: *seed,
                },
                det_cap: common.det_cap,
            };
            let report = oracle::verify_group(&g, &opts);
            for c in &report.checks {
                eprintln!("{:<22} {:>10.3} ms", c.name, c.elapsed.as_secs_f64() * 1e3);
            }
            let code = if report.passed() {
                0
            } else {
                EXIT_VERIFY_FAILED
            };
            Ok((
                Rendered::Report(report).render(format.unwrap_or(Format::Json)),
                code,
            ))
        }
        Command::Termcount { group, basis } => {
            let g = parse_group(group, common)?;
            let t = match basis.as_str() {
                "paper" => None,
                "flat" => Some(solve(&g, Target::Flat)?),
                "detbasis" => Some(solve(&g, Target::Abasis)?),
                "canonical" => Some(solve(&g, Target::Canonical)?),
                other => match other.strip_prefix("file:") {
                    Some(path) => Some(read_transform(&g, &PathBuf::from(path))?),
                    None => return Err(bad_args(format!("unknown basis `{other}`"))),
                },
            };
            let p = generate_pmatrix(&g);
            let p = match &t {
                Some(t) => transform::push_pmatrix(&p, t)?,
                None => p,
            };
            let counts = render::Counts {
                group: g,
                basis: p.basis.clone(),
                counts: pmatrix::term_count_matrix(&p),
            };
            Ok((
                Rendered::Counts(counts).render(format.unwrap_or(Format::Text)),
                0,
            ))
        }
    }
}

fn gen(
    g: &GroupSpec,
    what: What,
    active: &str,
    subset: &str,
    common: &Common,
) -> Result<Rendered, Failure> {
    Ok(match what {
        What::Pmatrix => Rendered::PMatrix(generate_pmatrix(g)),
        What::PmatrixAlt => Rendered::PMatrix(generate_pmatrix_alt(g)?),
        What::Lambda => {
            let which: ActiveName = active.parse()?;
            Rendered::Lambda(lambda_vector(g, which)?)
        }
        What::Det => {
            let det = pmatrix::discriminant(&generate_pmatrix(g), common.det_cap)?;
            Rendered::Poly {
                group: *g,
                name: "det",
                poly: det,
            }
        }
        What::Hankel => Rendered::Hankel {
            group: *g,
            terms: pmatrix::hankel_terms(g)?,
        },
        What::Invariants => Rendered::Invariants(*g),
        What::Degrees => Rendered::Degrees(*g),
        What::Roots => {
            let subset: RootSubset = subset.parse()?;
            Rendered::Roots(pmat_core::invariants::positive_roots(g, subset)?, *g)
        }
    })
}

fn solve(g: &GroupSpec, target: Target) -> Result<BasisTransform, Failure> {
    Ok(match target {
        Target::Flat => transform::solve_flat(g)?,
        Target::Abasis => transform::solve_abasis(g, ActiveName::Det)?,
        Target::Canonical => transform::solve_canonical(g)?,
    })
}

/// Reads either a bare transformation or the full output of `transform`.
fn read_transform(g: &GroupSpec, path: &PathBuf) -> Result<BasisTransform, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad_args(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| bad_args(format!("{}: {e}", path.display())))?;
    let inner = match value.get("transform") {
        Some(t) => t.clone(),
        None => value,
    };
    let t: BasisTransform = serde_json::from_value(inner).map_err(|e| {
        bad_args(format!(
            "{}: not a basis transformation: {e}",
            path.display()
        ))
    })?;
    if t.group != *g {
        return Err(Error::GroupMismatch(g.to_string(), t.group.to_string()).into());
    }
    Ok(t)
}
