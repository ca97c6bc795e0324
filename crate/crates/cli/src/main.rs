use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use fingeom_cli::error::EXIT_USAGE;
use fingeom_cli::job::{default_test_function, parse_coefficients, parse_rational};
use fingeom_cli::{
    export_cayley, render, resolve_group, run, CliError, Command, GroupSource, JobSpec,
};

/// Exact noncommutative Riemannian geometry of a finite group.
#[derive(Debug, Parser)]
#[command(name = "fingeom", version)]
#[command(group(ArgGroup::new("source").required(true).args(["group", "cayley"])))]
struct Args {
    /// Builtin group, e.g. dihedral:6
    #[arg(long)]
    group: Option<String>,

    /// Cayley table JSON file with "names" and "table"
    #[arg(long, value_name = "PATH")]
    cayley: Option<PathBuf>,

    /// Representative of the conjugacy class
    #[arg(long = "class", value_name = "LABEL")]
    class: String,

    /// Metric parameter as p/q
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    mu: String,

    /// calculus, connection, curvature, ricci, dirac, wave, spectral-action or report-all
    #[arg(long, default_value = "report-all")]
    cmd: String,

    /// Test function coefficients for spectral-action, lowest degree first
    #[arg(long, value_name = "C0,C1,...", allow_hyphen_values = true)]
    coeffs: Option<String>,

    /// Cutoff for spectral-action as p/q
    #[arg(long, default_value = "1")]
    cutoff: String,

    /// Write the report here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Also write the group's Cayley table to this path
    #[arg(long, value_name = "PATH")]
    export_cayley: Option<PathBuf>,

    #[arg(long)]
    pretty: bool,
}

fn job_from(args: &Args) -> Result<JobSpec, CliError> {
    let group = match (&args.group, &args.cayley) {
        (Some(g), None) => g.parse()?,
        (None, Some(p)) => GroupSource::Cayley(p.clone()),
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --group and --cayley".into(),
            ))
        }
    };
    let mut job = JobSpec::new(group, args.class.clone(), args.cmd.parse::<Command>()?);
    job.mu = parse_rational(&args.mu)?;
    job.cutoff = parse_rational(&args.cutoff)?;
    job.test_function = match &args.coeffs {
        Some(c) => parse_coefficients(c)?,
        None => default_test_function(),
    };
    Ok(job)
}

fn execute(args: &Args) -> Result<(), CliError> {
    let job = job_from(args)?;
    if let Some(path) = &args.export_cayley {
        let group = resolve_group(&job.group)?;
        fs::write(path, export_cayley(&group))
            .map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
    }
    let text = render(&run(&job)?, args.pretty);
    match &args.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::io(format!("writing {}", path.display()), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fingeom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
