//! Argument parsing, dispatch, and the exit-code contract.
//!
//! Exit codes: 0 success; 2 domain or validation errors; 3 capacity errors
//! (inputs beyond the configured search caps); 4 exhausted construction;
//! 64 usage errors (unknown flags, missing arguments); selftest exits 1 on
//! any failed criterion.

use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use ghkit::{
    acceptance, build_bijection, check_pair_bounds, dis_map, gh_class, gh_exact, gh_pair,
    measure_surjectivity, pipeline_to_bijection, quasi_inverse, retract_onto,
    retraction_displacement, BuildConfig, ClassTag, Error as GhError, Mapping, MetricSpace,
    SearchConfig, Subset,
};

use crate::formats;

#[derive(Parser)]
#[command(
    name = "ghkit",
    about = "Distortion functionals, exact Gromov-Hausdorff distances, and bijection construction on finite metric spaces",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Flags {
    /// Distance matrix or point cloud file for the first space.
    #[arg(long = "space-x", value_name = "FILE")]
    space_x: Option<PathBuf>,
    /// Distance matrix or point cloud file for the second space.
    #[arg(long = "space-y", value_name = "FILE")]
    space_y: Option<PathBuf>,
    /// Mapping file for f: X -> Y.
    #[arg(long = "map", value_name = "FILE")]
    map: Option<PathBuf>,
    /// Mapping file for g: Y -> X.
    #[arg(long = "map-g", value_name = "FILE")]
    map_g: Option<PathBuf>,
    /// Ball-cover radius; for extract-witness, the isometry budget d.
    #[arg(long, value_name = "R")]
    eps: Option<f64>,
    /// Mapping family for ghclass.
    #[arg(long, value_name = "TAG")]
    class: Option<String>,
    /// Use the modified distance (drop the co-distortion term).
    #[arg(long)]
    modified: bool,
    /// Index file selecting a target subset of Y.
    #[arg(long, value_name = "INDEXFILE")]
    target: Option<PathBuf>,
    /// Enumeration-order seed for the bijection construction.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Search size cap (gh, ghclass) or construction node budget
    /// (build-bijection, pipeline).
    #[arg(long, value_name = "N")]
    cap: Option<usize>,
    /// Absolute tolerance for metric validation (default 1e-9).
    #[arg(long, value_name = "R")]
    tolerance: Option<f64>,
    /// Skip metric validation of input spaces.
    #[arg(long = "no-validate")]
    no_validate: bool,
    /// Write the result to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the metric axioms of a space file and report violations.
    Validate(Flags),
    /// Distortion of a mapping.
    Dis(Flags),
    /// Co-distortion of a mapping pair.
    Codis(Flags),
    /// One-sided distortions of a mapping, or of a pair with --map-g.
    Onesided(Flags),
    /// Exact Gromov-Hausdorff distance with an optimal correspondence.
    Gh(Flags),
    /// Class-restricted distance (--class any|injective|surjective|bijective|inversePair).
    Ghclass(Flags),
    /// Modified Gromov-Hausdorff distance (independent minimization).
    Mdgh(Flags),
    /// Run the cover-guided bijection construction for a mapping pair.
    BuildBijection(Flags),
    /// Quasi-inverse of a mapping (preimages, then nearest image points).
    QuasiInverse(Flags),
    /// Retract a mapping onto a target subset of its codomain.
    Retract(Flags),
    /// Full pipeline: quasi-inverse, ball covers, bijection, bound check.
    Pipeline(Flags),
    /// Extract a d-surjective (2d)-isometry when the distance is below d.
    ExtractWitness(Flags),
    /// Run the acceptance suites; nonzero exit on any violation.
    Selftest(Flags),
}

enum Failure {
    Usage(String),
    Domain(String),
    Capacity(String),
    Exhausted(String),
    Selftest,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Domain(_) => 2,
            Failure::Capacity(_) => 3,
            Failure::Exhausted(_) => 4,
            Failure::Selftest => 1,
        }
    }

    fn message(&self) -> Option<&str> {
        match self {
            Failure::Usage(m)
            | Failure::Domain(m)
            | Failure::Capacity(m)
            | Failure::Exhausted(m) => Some(m),
            Failure::Selftest => None,
        }
    }
}

fn classify(e: GhError) -> Failure {
    match e {
        GhError::CapExceeded { .. } | GhError::PairBudgetExceeded { .. } => {
            Failure::Capacity(e.to_string())
        }
        GhError::Exhausted { .. } => Failure::Exhausted(e.to_string()),
        _ => Failure::Domain(e.to_string()),
    }
}

/// Parses `argv` and runs; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    0
                }
                _ => {
                    let _ = e.print();
                    64
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => 0,
        Err(failure) => {
            if let Some(m) = failure.message() {
                eprintln!("ghkit: {m}");
            }
            failure.code()
        }
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{what} is required for this subcommand")))
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn load_space(path: &PathBuf, flags: &Flags) -> Result<MetricSpace<f64>, Failure> {
    let text = read_file(path)?;
    let space = formats::parse_space_auto(&text)
        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    if !flags.no_validate {
        let report = space.validate(flags.tolerance.unwrap_or(1e-9));
        if let Some(first) = report.violations.first() {
            return Err(Failure::Domain(format!(
                "{}: invalid metric: {first}{}",
                path.display(),
                if report.violations.len() > 1 {
                    format!(" (+{} more)", report.violations.len() - 1)
                } else {
                    String::new()
                }
            )));
        }
    }
    Ok(space)
}

fn load_mapping(path: &PathBuf) -> Result<Mapping, Failure> {
    let text = read_file(path)?;
    formats::parse_mapping(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn load_target(path: &PathBuf, space_size: usize) -> Result<Subset, Failure> {
    let text = read_file(path)?;
    let indices = formats::parse_indices(&text)
        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    Subset::new(space_size, indices).map_err(|e| Failure::Domain(e.to_string()))
}

fn search_config(flags: &Flags) -> SearchConfig {
    let mut config = SearchConfig::default();
    if let Some(cap) = flags.cap {
        config.correspondence_cap = cap;
        config.permutation_cap = cap;
    }
    config
}

fn build_config(flags: &Flags) -> BuildConfig {
    let mut config = BuildConfig {
        seed: flags.seed,
        ..BuildConfig::default()
    };
    if let Some(cap) = flags.cap {
        config.node_budget = cap as u64;
    }
    config
}

fn emit(flags: &Flags, text: &str) -> Result<(), Failure> {
    match &flags.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn class_tag(name: &str) -> Result<ClassTag, Failure> {
    match name {
        "any" => Ok(ClassTag::Any),
        "injective" => Ok(ClassTag::Injective),
        "surjective" => Ok(ClassTag::Surjective),
        "bijective" => Ok(ClassTag::Bijective),
        "inversePair" => Ok(ClassTag::InversePair),
        other => Err(Failure::Usage(format!(
            "unknown class `{other}` (expected any, injective, surjective, bijective, inversePair)"
        ))),
    }
}

fn dispatch(cmd: &Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Validate(flags) => {
            let path = require(flags.space_x.as_ref(), "--space-x")?;
            let text = read_file(path)?;
            let space = formats::parse_space_auto(&text)
                .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            let report = space.validate(flags.tolerance.unwrap_or(1e-9));
            if report.is_valid() {
                emit(flags, "valid\n")
            } else {
                let mut out = String::new();
                for v in &report.violations {
                    out.push_str(&format!("{v}\n"));
                }
                emit(flags, &out)?;
                Err(Failure::Domain(format!(
                    "invalid metric: {} violation(s)",
                    report.violations.len()
                )))
            }
        }
        Cmd::Dis(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let f = load_mapping(require(flags.map.as_ref(), "--map")?)?;
            let v = dis_map(&f, &x, &y).map_err(classify)?;
            emit(flags, &format!("value {}\n", formats::fmt_real(v)))
        }
        Cmd::Codis(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let f = load_mapping(require(flags.map.as_ref(), "--map")?)?;
            let g = load_mapping(require(flags.map_g.as_ref(), "--map-g")?)?;
            let v = ghkit::codis_maps(&f, &g, &x, &y).map_err(classify)?;
            emit(flags, &format!("value {}\n", formats::fmt_real(v)))
        }
        Cmd::Onesided(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let f = load_mapping(require(flags.map.as_ref(), "--map")?)?;
            let os = match &flags.map_g {
                Some(path) => {
                    let g = load_mapping(path)?;
                    ghkit::one_sided_pair(&f, &g, &x, &y).map_err(classify)?
                }
                None => ghkit::one_sided_map(&f, &x, &y).map_err(classify)?,
            };
            emit(
                flags,
                &format!(
                    "minus {}\nplus {}\n",
                    formats::fmt_real(os.minus),
                    formats::fmt_real(os.plus)
                ),
            )
        }
        Cmd::Gh(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let result = gh_exact(&x, &y, &search_config(flags)).map_err(classify)?;
            emit(flags, &formats::write_gh_result(&result))
        }
        Cmd::Ghclass(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let tag = class_tag(require(flags.class.as_ref(), "--class")?)?;
            let result =
                gh_class(&x, &y, tag, flags.modified, &search_config(flags)).map_err(classify)?;
            emit(flags, &formats::write_gh_result(&result))
        }
        Cmd::Mdgh(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let result =
                gh_class(&x, &y, ClassTag::Any, true, &search_config(flags)).map_err(classify)?;
            emit(flags, &formats::write_gh_result(&result))
        }
        Cmd::BuildBijection(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let f = load_mapping(require(flags.map.as_ref(), "--map")?)?;
            let g = load_mapping(require(flags.map_g.as_ref(), "--map-g")?)?;
            let eps = require(flags.eps, "--eps")?;
            let cover_x = x.ball_cover(eps).map_err(classify)?;
            let cover_y = y.ball_cover(eps).map_err(classify)?;
            let cert = build_bijection(&x, &y, &cover_x, &cover_y, &f, &g, &build_config(flags))
                .map_err(classify)?;
            let dis_tilde = dis_map(&cert.f_tilde, &x, &y).map_err(classify)?;
            let score = gh_pair(&f, &g, &x, &y).map_err(classify)?;
            let bound = 2.0 * (score.gh + cert.eps_x.max(cert.eps_y));
            // the certificate is rechecked before it is reported
            let report = check_pair_bounds(&cert, &x, &y, flags.tolerance.unwrap_or(1e-9))
                .map_err(classify)?;
            if !report.is_empty() {
                return Err(Failure::Domain(format!(
                    "certificate failed its own bound check: {:?}",
                    report.violations[0]
                )));
            }
            emit(
                flags,
                &formats::write_certificate(&cert, dis_tilde, bound, None),
            )
        }
        Cmd::QuasiInverse(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let f = load_mapping(require(flags.map.as_ref(), "--map")?)?;
            let g = quasi_inverse(&f, &x, &y).map_err(classify)?;
            let defect = measure_surjectivity(&f, &x, &y, None)
                .map_err(classify)?
                .delta_eff;
            let mut out = formats::serialize_mapping(&g);
            out.push_str(&format!("# deltaEff {}\n", formats::fmt_real(defect)));
            emit(flags, &out)
        }
        Cmd::Retract(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let f = load_mapping(require(flags.map.as_ref(), "--map")?)?;
            let target = load_target(require(flags.target.as_ref(), "--target")?, y.size())?;
            let f_hat = retract_onto(&f, &x, &y, &target).map_err(classify)?;
            let rho = retraction_displacement(&f, &f_hat, &y);
            let defect = measure_surjectivity(&f_hat, &x, &y, Some(&target))
                .map_err(classify)?
                .delta_eff;
            let mut out = formats::serialize_mapping(&f_hat);
            out.push_str(&format!("# rho {}\n", formats::fmt_real(rho)));
            out.push_str(&format!("# deltaEff {}\n", formats::fmt_real(defect)));
            emit(flags, &out)
        }
        Cmd::Pipeline(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let f = load_mapping(require(flags.map.as_ref(), "--map")?)?;
            let eps = require(flags.eps, "--eps")?;
            let target = match &flags.target {
                Some(path) => Some(load_target(path, y.size())?),
                None => None,
            };
            let result =
                pipeline_to_bijection(&f, &x, &y, eps, target.as_ref(), &build_config(flags))
                    .map_err(classify)?;
            if !result.satisfies_guarantee(flags.tolerance.unwrap_or(1e-9)) {
                return Err(Failure::Domain(format!(
                    "pipeline guarantee violated: disTilde {} > bound {}",
                    result.dis_tilde, result.guarantee_bound
                )));
            }
            emit(flags, &formats::write_pipeline(&result))
        }
        Cmd::ExtractWitness(flags) => {
            let x = load_space(require(flags.space_x.as_ref(), "--space-x")?, flags)?;
            let y = load_space(require(flags.space_y.as_ref(), "--space-y")?, flags)?;
            let d = require(flags.eps, "--eps (the isometry budget d)")?;
            let f = ghkit::extract_witness(&x, &y, d, &search_config(flags)).map_err(classify)?;
            let dis_f = dis_map(&f, &x, &y).map_err(classify)?;
            let defect = measure_surjectivity(&f, &x, &y, None)
                .map_err(classify)?
                .delta_eff;
            let mut out = formats::serialize_mapping(&f);
            out.push_str(&format!("# disF {}\n", formats::fmt_real(dis_f)));
            out.push_str(&format!("# deltaEff {}\n", formats::fmt_real(defect)));
            emit(flags, &out)
        }
        Cmd::Selftest(flags) => {
            let outcomes = acceptance::run_all();
            let mut out = String::new();
            for outcome in &outcomes {
                out.push_str(&format!("{outcome}\n"));
            }
            emit(flags, &out)?;
            if outcomes.iter().all(|o| o.passed) {
                Ok(())
            } else {
                Err(Failure::Selftest)
            }
        }
    }
}
