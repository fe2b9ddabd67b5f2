use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use asymptotika_cli::output::{compare_json, compare_text, expand_json, expand_text, fit_json, fit_text, write_csv};
use asymptotika_cli::{CliError, DEFAULT_TERMS, DEFAULT_TOL, FitStatus, Grid, Params, SweepSpec, METHODS};
use clap::{Args, Parser, Subcommand};

/// Asymptotic expansions of integrals, checked against quadrature.
#[derive(Parser)]
#[command(name = "asymptotika", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Method identifier (see `asymptotika methods`)
    #[arg(long)]
    method: String,
    /// Method parameter, repeatable
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Number of terms
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    terms: usize,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Swept {
    #[command(flatten)]
    common: Common,
    /// lin:a:b:n or log:a:b:n
    #[arg(long)]
    grid: String,
    /// Parameter varied along the grid (default: the method's large parameter)
    #[arg(long)]
    axis: Option<String>,
    /// Oracle tolerance
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the term table of an expansion
    Expand {
        #[command(flatten)]
        common: Common,
    },
    /// Compare an expansion with its oracle
    Compare {
        #[command(flatten)]
        common: Common,
        /// Oracle tolerance
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Compare along a grid and write CSV
    Sweep {
        #[command(flatten)]
        swept: Swept,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit the remainder order over a log grid of the large parameter
    Convergence {
        #[command(flatten)]
        swept: Swept,
    },
    /// List the built-in methods and their parameters
    Methods,
}

fn sweep_spec(s: &Swept) -> Result<SweepSpec, CliError> {
    Ok(SweepSpec {
        method: s.common.method.clone(),
        fixed: Params::parse(&s.common.params)?,
        axis: s.axis.clone(),
        grid: s.grid.parse::<Grid>()?,
        n_terms: s.common.terms,
        tol: s.tol,
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Expand { common } => {
            let e = asymptotika_cli::expand(&common.method, &Params::parse(&common.params)?, common.terms)?;
            let text = if common.json { expand_json(&e) } else { expand_text(&e) };
            stdout.write_all(text.as_bytes())?;
        }
        Command::Compare { common, tol } => {
            let c = asymptotika_cli::compare(&common.method, &Params::parse(&common.params)?, common.terms, tol)?;
            let text = if common.json { compare_json(&c) } else { compare_text(&c) };
            stdout.write_all(text.as_bytes())?;
        }
        Command::Sweep { swept, out } => {
            let rows = asymptotika_cli::sweep(&sweep_spec(&swept)?)?;
            match out {
                Some(path) => write_csv(&rows, std::fs::File::create(path)?)?,
                None => write_csv(&rows, &mut stdout)?,
            }
            if rows.iter().any(|r| r.outcome.is_err()) {
                return Ok(3);
            }
        }
        Command::Convergence { swept } => {
            let spec = sweep_spec(&swept)?;
            let f = asymptotika_cli::convergence(&spec)?;
            let text = if swept.common.json {
                fit_json(&spec.method, spec.n_terms, &f)
            } else {
                fit_text(&spec.method, spec.n_terms, &f)
            };
            stdout.write_all(text.as_bytes())?;
            if f.status == FitStatus::Fail {
                return Ok(2);
            }
        }
        Command::Methods => {
            for m in METHODS {
                let params: Vec<String> = m.defaults.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(stdout, "{:<22} large={:<6} {}\n{:<22} {}", m.name, m.large, m.summary, "", params.join(" "))?;
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
