//! Command-line front end for `cstar-frames`: frame files, analysis reports,
//! constructors, perturbation and weaving checks.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cstar_frames::weaving::DEFAULT_MAX_PARTITIONS;
use cstar_frames::Execution;

use crate::commands::*;
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "cstar-frames",
    version,
    about = "Frames in Hilbert C*-modules over matrix algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal bounds, shift decomposition and certificate checks for one file.
    Analyze {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Write a constructed family with its certificate.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Compare a family against a perturbation of it.
    Perturb {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        xi: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Universal bounds over every partition of two to four families.
    Weave {
        #[arg(num_args = 2.., required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_PARTITIONS)]
        max_partitions: u64,
        /// Rebuild the decaying scenario at these vector counts.
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Write the canonical dual family.
    Dual {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long, value_parser = ["constant", "gaussian", "geometric", "power"])]
    pub kind: String,
    #[arg(long)]
    pub xi: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Module rank.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Number of basis vectors used; defaults to `n`.
    #[arg(long)]
    pub truncation: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Profile-scaled orthonormal basis `{√l_k e_k}`.
    #[command(alias = "t4")]
    Profile(ProfileArgs),
    /// Orthonormal basis with repeated vectors.
    Repetition {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// `index:multiplicity`, 1-based; may be repeated.
        #[arg(long)]
        repeat: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Two families that are frames alone but weave badly, plus the partition.
    #[command(alias = "t49")]
    Scenario {
        /// Vectors per family (even).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "gaussian:1")]
        profile1: String,
        #[arg(long, default_value = "gaussian:1")]
        profile2: String,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Output prefix; writes `<prefix>.f.json`, `<prefix>.g.json` and
        /// `<prefix>.partition.json`.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Result of a successful command: text for stdout.
pub type Output = String;

fn render<T>(format: Format, report: &T, text: impl Fn(&T) -> String) -> String
where
    T: serde::Serialize,
{
    match format {
        Format::Json => report::to_json(report),
        Format::Text => text(report),
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let base = prefix.to_string_lossy();
    let base = base.strip_suffix(".json").unwrap_or(&base);
    PathBuf::from(format!("{base}.{suffix}.json"))
}

fn construct(kind: ConstructKind) -> CliResult<Output> {
    let describe = |path: &Path, c: &Constructed| {
        format!(
            "wrote {} ({} vectors); claimed bounds lower={} upper={}\n",
            path.display(),
            c.frame.len(),
            c.claimed.0,
            c.claimed.1
        )
    };
    match kind {
        ConstructKind::Profile(a) => {
            let profile = profile_from_flags(&a.kind, a.xi, a.c, a.r, a.p)?;
            let built = construct_profile(&profile, a.d, a.n, a.truncation)?;
            built.file.save(&a.out)?;
            Ok(describe(&a.out, &built))
        }
        ConstructKind::Repetition { n, d, repeat, out } => {
            let pairs = repeat
                .iter()
                .map(|s| parse_repeat(s))
                .collect::<CliResult<Vec<_>>>()?;
            let built = construct_repetition(d, n, &pairs)?;
            built.file.save(&out)?;
            Ok(describe(&out, &built))
        }
        ConstructKind::Scenario {
            n,
            profile1,
            profile2,
            d,
            out,
        } => {
            let p1 = parse_vanishing_profile(&profile1)?;
            let p2 = parse_vanishing_profile(&profile2)?;
            let (f_path, g_path, part_path) = (
                with_suffix(&out, "f"),
                with_suffix(&out, "g"),
                with_suffix(&out, "partition"),
            );
            let name = |p: &Path| {
                p.file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default()
            };
            let built = construct_scenario(n, &p1, &p2, d, [name(&f_path), name(&g_path)])?;
            built.f.file.save(&f_path)?;
            built.g.file.save(&g_path)?;
            std::fs::write(&part_path, report::to_json(&built.partition)).map_err(|source| {
                CliError::Io {
                    path: part_path.clone(),
                    source,
                }
            })?;
            Ok(format!(
                "{}{}wrote {} (adversarial lambda_min={})\n",
                describe(&f_path, &built.f),
                describe(&g_path, &built.g),
                part_path.display(),
                report::Num(built.partition.adversarial_lambda_min)
            ))
        }
    }
}

fn execute(command: Command) -> CliResult<Output> {
    match command {
        Command::Analyze {
            file,
            xi,
            eta,
            alpha,
            tol,
            format,
        } => {
            let report = analyze(
                &file,
                &AnalyzeOptions {
                    xi,
                    eta,
                    alpha,
                    tol,
                },
            )?;
            Ok(render(format, &report, |r| r.to_text()))
        }
        Command::Construct { kind } => construct(kind),
        Command::Perturb {
            f,
            g,
            xi,
            eta,
            tol,
            format,
        } => {
            let report = perturb(&f, &g, xi, eta, tol)?;
            Ok(render(format, &report, |r| r.to_text()))
        }
        Command::Weave {
            files,
            max_partitions,
            sweep,
            tol,
            format,
        } => {
            let exec = Execution::from_env().map_err(CliError::Flags)?;
            let report = weave(
                &files,
                &WeaveOptions {
                    max_partitions,
                    tol,
                    sweep,
                    exec,
                },
            )?;
            Ok(render(format, &report, |r| r.to_text()))
        }
        Command::Dual {
            file,
            out,
            tol,
            format,
        } => {
            let report = dual(&file, &out, tol)?;
            Ok(render(format, &report, |r| r.to_text()))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CliResult<Output>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Flags(e.to_string()))?;
    execute(cli.command)
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
