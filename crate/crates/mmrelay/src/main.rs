//! Command-line interface: figure sweeps, single-point rate evaluation and
//! the verification suites.

use clap::{Args, Parser, Subcommand, ValueEnum};
use mmrelay::channel::Polarization;
use mmrelay::experiments::{
    self, mu_db_grid, theta_grid, xi_db_grid, Csv, ScenarioConfig, VerifySuite,
};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mmrelay",
    version,
    about = "Two-ray mm-wave link sweeps and amplify-and-forward relay rates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolarizationArg {
    Perpendicular,
    Horizontal,
}

impl From<PolarizationArg> for Polarization {
    fn from(p: PolarizationArg) -> Self {
        match p {
            PolarizationArg::Perpendicular => Polarization::Perpendicular,
            PolarizationArg::Horizontal => Polarization::Horizontal,
        }
    }
}

#[derive(Args)]
struct ScenarioArgs {
    /// Carrier wavelength in meters
    #[arg(long)]
    lambda: Option<f64>,
    /// Common node height in meters
    #[arg(long)]
    height: Option<f64>,
    /// Source-destination distance in meters
    #[arg(long)]
    distance: Option<f64>,
    /// Source-relay distance in meters
    #[arg(long)]
    l1: Option<f64>,
    /// Main-lobe beamwidth; plain number or `rad` suffix for radians,
    /// `deg` suffix for degrees (e.g. `30deg`)
    #[arg(long, value_parser = parse_angle)]
    theta_m: Option<f64>,
    /// Relay self-interference coefficient in dB (negative)
    #[arg(long)]
    mu_db: Option<f64>,
    /// Sum-power budget in dB relative to unit noise variance
    #[arg(long)]
    xi_db: Option<f64>,
    /// Ground dielectric constant
    #[arg(long)]
    omega: Option<f64>,
    /// Wave polarization relative to the ground plane
    #[arg(long, value_enum)]
    polarization: Option<PolarizationArg>,
}

fn parse_angle(s: &str) -> Result<f64, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| e.to_string());
    if let Some(v) = s.strip_suffix("deg") {
        Ok(parse(v)? * PI / 180.0)
    } else if let Some(v) = s.strip_suffix("rad") {
        parse(v)
    } else {
        parse(s)
    }
}

impl ScenarioArgs {
    /// Merge flags into a figure-specific default configuration.
    fn build(&self, default_theta_m: f64, default_l1: f64) -> ScenarioConfig {
        let base = ScenarioConfig::default();
        ScenarioConfig {
            lambda: self.lambda.unwrap_or(base.lambda),
            height: self.height.unwrap_or(base.height),
            distance: self.distance.unwrap_or(base.distance),
            l1: self.l1.unwrap_or(default_l1),
            theta_m: self.theta_m.unwrap_or(default_theta_m),
            mu_db: self.mu_db.unwrap_or(base.mu_db),
            xi_db: self.xi_db.unwrap_or(base.xi_db),
            omega: self.omega.unwrap_or(base.omega),
            polarization: self.polarization.map(Into::into).unwrap_or(base.polarization),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Number of grid points (default: figure-specific grid)
    #[arg(long)]
    points: Option<usize>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV (requires --out)
    #[arg(long)]
    plot_script: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rates of all schemes against the sum-power budget
    Fig2 {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rates of all schemes against the beamwidth
    Fig3 {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-ray versus line-of-sight-only rates over the beamwidth
    Fig4 {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full-duplex rate against the self-interference coefficient
    Fig5 {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full-duplex rate against sum power with its zero-interference limit
    Fig6 {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run verification suites and write a machine-readable report
    Verify {
        /// Suite: oracles, scaling, convexity or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Report path
        #[arg(long, default_value = "verify_report.csv")]
        out: PathBuf,
    },
    /// Evaluate every scheme at a single operating point
    Rate {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
}

fn emit(csv: &Csv, figure: &str, output: &OutputArgs) -> std::io::Result<()> {
    let text = csv.to_csv_string();
    match &output.out {
        Some(path) => {
            std::fs::write(path, &text)?;
            if output.plot_script {
                let script_path = path.with_extension("gnuplot");
                let name = path
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "figure.csv".into());
                std::fs::write(&script_path, experiments::plot_script(figure, &name))?;
            }
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn print_solution(name: &str, s: &mmrelay::rates::RateSolution) {
    let amp = s.amp.map(|a| format!("{a:.6e}")).unwrap_or_else(|| "-".into());
    println!(
        "{name:<9} {:>13.6e} {:>13.6e} {:>13.6e} {:>8.4} {:>13.6e} {amp:>13}",
        s.rate, s.xi1, s.xi2, s.beta, s.snr
    );
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    let io_err = |e: std::io::Error| format!("i/o error: {e}");
    match cli.cmd {
        Cmd::Fig2 { scenario, output } => {
            let cfg = scenario.build(PI / 6.0, 80.0);
            let table = experiments::run_fig2(&cfg, &xi_db_grid(output.points)).map_err(|e| e.to_string())?;
            emit(&table, "fig2", &output).map_err(io_err)?;
        }
        Cmd::Fig3 { scenario, output } => {
            let cfg = scenario.build(PI / 6.0, 80.0);
            let table = experiments::run_fig3(&cfg, &theta_grid(output.points)).map_err(|e| e.to_string())?;
            emit(&table, "fig3", &output).map_err(io_err)?;
        }
        Cmd::Fig4 { scenario, output } => {
            let cfg = scenario.build(PI / 6.0, 80.0);
            let table = experiments::run_fig4(&cfg, &theta_grid(output.points), &[60.0, 95.0])
                .map_err(|e| e.to_string())?;
            emit(&table, "fig4", &output).map_err(io_err)?;
        }
        Cmd::Fig5 { scenario, output } => {
            let cfg = scenario.build(PI / 4.0, 100.0);
            let table = experiments::run_fig5(
                &cfg,
                &mu_db_grid(output.points),
                &experiments::default_fig5_xi_db_values(),
            )
            .map_err(|e| e.to_string())?;
            emit(&table, "fig5", &output).map_err(io_err)?;
        }
        Cmd::Fig6 { scenario, output } => {
            let cfg = scenario.build(PI / 4.0, 100.0);
            let table = experiments::run_fig6(
                &cfg,
                &xi_db_grid(output.points),
                &experiments::default_fig6_mu_db_values(),
            )
            .map_err(|e| e.to_string())?;
            emit(&table, "fig6", &output).map_err(io_err)?;
        }
        Cmd::Verify { suite, out } => {
            let suite: VerifySuite = suite.parse().map_err(|e: mmrelay::Error| e.to_string())?;
            let report = experiments::run_verify(suite).map_err(|e| e.to_string())?;
            std::fs::write(&out, report.to_csv_string()).map_err(io_err)?;
            for entry in &report.entries {
                let status = if entry.pass { "PASS" } else { "FAIL" };
                println!("{status} {} (margin {:.3e})", entry.name, entry.margin);
            }
            println!("report written to {}", Path::new(&out).display());
            if !report.all_pass() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Cmd::Rate { scenario } => {
            let cfg = scenario.build(PI / 6.0, 80.0);
            let r = experiments::scheme_rates(&cfg).map_err(|e| e.to_string())?;
            let (g1, g2, gd) = cfg.two_ray_gains().map_err(|e| e.to_string())?;
            println!("channel gains: g1 = {g1:.6e}, g2 = {g2:.6e}, direct = {gd:.6e}");
            println!(
                "{:<9} {:>13} {:>13} {:>13} {:>8} {:>13} {:>13}",
                "scheme", "rate", "xi1", "xi2", "beta", "snr", "amp"
            );
            print_solution("direct", &r.direct);
            print_solution("hd_half", &r.hd_half);
            print_solution("hd_opt", &r.hd_opt);
            print_solution("fd", &r.fd);
            print_solution("fd_limit", &r.fd_limit);
            if let Some(w) = &r.warning {
                println!("warning: {w}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
