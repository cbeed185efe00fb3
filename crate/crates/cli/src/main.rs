use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pbg_cli::{manifest_text, oracle_preset, preset, run, CliError, RunConfig};

/// Qubit dynamics in a photonic-band-gap reservoir: writes figure data as CSV.
#[derive(Debug, Parser)]
#[command(name = "pbg", version)]
struct Cli {
    /// Config file of `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Start from a named preset (fig2a..fig4c, oracle).
    #[arg(long)]
    preset: Option<String>,
    /// single, two, sweep-alpha, sweep-delta or oracle-check.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta_over_beta: Option<String>,
    /// Anisotropy factor.
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    theta0: Option<String>,
    #[arg(long)]
    phi0: Option<String>,
    /// phi or psi.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    alpha2: Option<String>,
    #[arg(long)]
    gamma_phase: Option<String>,
    #[arg(long)]
    tmax: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    /// Comma-separated α² values for sweep-alpha.
    #[arg(long)]
    alpha2_grid: Option<String>,
    /// Comma-separated δ/β values for sweep-delta and oracle-check.
    #[arg(long, allow_hyphen_values = true)]
    delta_grid: Option<String>,
    /// sweep-delta: emit steady values instead of traces.
    #[arg(long)]
    steady: bool,
    /// Shorthand for the oracle preset (mode oracle-check).
    #[arg(long)]
    oracle: bool,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the resolved configuration and exit.
    #[arg(long)]
    dump_config: bool,
    /// Print every figure preset and exit.
    #[arg(long)]
    manifest: bool,
}

impl Cli {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let text = [
            ("mode", &self.mode),
            ("delta-over-beta", &self.delta_over_beta),
            ("f", &self.f),
            ("theta0", &self.theta0),
            ("phi0", &self.phi0),
            ("family", &self.family),
            ("alpha2", &self.alpha2),
            ("gamma-phase", &self.gamma_phase),
            ("tmax", &self.tmax),
            ("steps", &self.steps),
            ("alpha2-grid", &self.alpha2_grid),
            ("delta-grid", &self.delta_grid),
        ];
        let mut pairs: Vec<_> = text
            .into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k, v)))
            .collect();
        if self.steady {
            pairs.push(("steady", "true".into()));
        }
        if let Some(out) = &self.out {
            pairs.push(("out", out.display().to_string()));
        }
        pairs
    }

    /// Defaults, then preset, then config file, then explicit flags.
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut config = match (&self.preset, self.oracle) {
            (Some(name), _) => {
                preset(name).ok_or_else(|| CliError::Config(format!("unknown preset '{name}'")))?
            }
            (None, true) => oracle_preset(),
            (None, false) => RunConfig::default(),
        };
        if self.oracle {
            config.mode = pbg_cli::Mode::OracleCheck;
        }
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            config.merge_text(&text)?;
        }
        for (key, value) in self.overrides() {
            config.apply(key, &value)?;
        }
        config.validate()?;
        Ok(config)
    }
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        // a closed pipe downstream (e.g. `| head`) is not a failure
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
                path: PathBuf::from("<stdout>"),
                source: e,
            }),
            _ => Ok(()),
        },
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    if cli.manifest {
        print!("{}", manifest_text());
        return Ok(());
    }
    let config = cli.resolve()?;
    if cli.dump_config {
        print!("{}", config.to_text());
        return Ok(());
    }
    let table = run(&config)?;
    emit(&config, &table.to_csv())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pbg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
