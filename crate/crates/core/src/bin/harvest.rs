use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use harvest::cli::{
    exit, results_table, run_difference_map, run_sweep, run_verification, SweepConfig, Table,
    OUT_DIR_ENV,
};

/// Entanglement harvesting sweeps for static detectors in Minkowski space
/// and its flat quotients. Lengths are in units of sigma, gaps as omega*sigma.
#[derive(Parser)]
#[command(name = "harvest", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix elements and entanglement measures over a grid.
    Sweep(Opts),
    /// Minkowski minus quotient correlation over a grid.
    Diffmap(Opts),
    /// Closed forms against the quadrature oracle; exits 2 on failure.
    Verify(Opts),
    /// Prints the resolved configuration.
    ShowConfig(Opts),
}

#[derive(Args)]
struct Opts {
    /// Start from a named grid: fig1, fig2a, fig2b, fig3a, fig3b, fig4.
    #[arg(long)]
    preset: Option<String>,
    /// Flat key = value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// minkowski, cylinder or twisted.
    #[arg(long)]
    topology: Option<String>,
    /// Comma-separated circumferences.
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// start:end:points or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    omega_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    l_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta_range: Option<String>,
    /// Planar position of A as x,y.
    #[arg(long, allow_hyphen_values = true)]
    d_a: Option<String>,
    /// Planar position of B as x,y; replaces the l and theta axes.
    #[arg(long, allow_hyphen_values = true)]
    d_b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta_z: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    eps0: Option<String>,
    #[arg(long)]
    nmax: Option<String>,
    /// Add oracle columns to sweeps.
    #[arg(long)]
    oracle: bool,
    /// csv or jsonl.
    #[arg(long)]
    format: Option<String>,
    /// Output file; relative paths go under $HARVEST_OUT_DIR when set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<String>,
    /// Extra key=value settings, applied last.
    #[arg(long = "set", value_name = "KEY=VALUE", allow_hyphen_values = true)]
    set: Vec<String>,
}

impl Opts {
    fn resolve(&self) -> harvest::Result<SweepConfig> {
        let mut cfg = match &self.preset {
            Some(p) => SweepConfig::preset(p)?,
            None => SweepConfig::default(),
        };
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| {
                harvest::HarvestError::Config(format!("{}: {e}", path.display()))
            })?;
            cfg = SweepConfig::parse_text(&text, cfg)?;
        }
        let flags = [
            ("topology", &self.topology),
            ("ell", &self.ell),
            ("eta", &self.eta),
            ("omega_sigma", &self.omega_range),
            ("l_sigma", &self.l_range),
            ("theta", &self.theta_range),
            ("d_a", &self.d_a),
            ("d_b", &self.d_b),
            ("delta_z", &self.delta_z),
            ("sigma", &self.sigma),
            ("eps0", &self.eps0),
            ("nmax", &self.nmax),
            ("format", &self.format),
            ("jobs", &self.jobs),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                cfg.set(k, v)?;
            }
        }
        if self.oracle {
            cfg.oracle = true;
        }
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| harvest::HarvestError::Config(format!("--set {kv:?}: expected KEY=VALUE")))?;
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn out_path(&self) -> Option<PathBuf> {
        let p = self.out.clone()?;
        match std::env::var_os(OUT_DIR_ENV) {
            Some(dir) if p.is_relative() => Some(PathBuf::from(dir).join(p)),
            _ => Some(p),
        }
    }
}

fn emit(opts: &Opts, text: &str) -> io::Result<()> {
    match opts.out_path() {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, text)
        }
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let (opts, verify) = match &cli.command {
        Command::Verify(o) => (o, true),
        Command::Sweep(o) | Command::Diffmap(o) | Command::ShowConfig(o) => (o, false),
    };
    let mut cfg = opts.resolve().map_err(|e| e.to_string())?;
    if verify {
        cfg.oracle = true;
    }
    let io_err = |e: io::Error| format!("output: {e}");
    let table: Table = match &cli.command {
        Command::ShowConfig(_) => {
            emit(opts, &cfg.to_text()).map_err(io_err)?;
            return Ok(exit::SUCCESS);
        }
        Command::Sweep(_) => results_table(&cfg, &run_sweep(&cfg).map_err(|e| e.to_string())?, false),
        Command::Diffmap(_) => {
            results_table(&cfg, &run_difference_map(&cfg).map_err(|e| e.to_string())?, true)
        }
        Command::Verify(_) => {
            let report = run_verification(&cfg).map_err(|e| e.to_string())?;
            emit(opts, &report.table(&cfg).to_string(cfg.format)).map_err(io_err)?;
            eprintln!("{}", report.summary());
            return Ok(if report.passed() { exit::SUCCESS } else { exit::VERIFICATION });
        }
    };
    emit(opts, &table.to_string(cfg.format)).map_err(io_err)?;
    Ok(exit::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("harvest: {msg}");
            ExitCode::from(exit::VALIDATION as u8)
        }
    }
}
