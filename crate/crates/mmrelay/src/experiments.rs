//! Scenario configuration, figure sweeps and the verification runner behind
//! the command-line interface.
//!
//! Every sweep is a pure function of its configuration and grid, so emitted
//! tables are deterministic and byte-identical across runs.

use crate::analysis::{self, RelayScenario, SweepReport};
use crate::antenna::AntennaPattern;
use crate::channel::{self, GroundModel, LinkGeometry, Polarization};
use crate::error::{Error, Result};
use crate::numerics;
use crate::rates::{self, cap, MuFeasibility, PowerBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Relative tolerance handed to the half-duplex time-sharing solver.
pub const HD_SOLVER_TOL: f64 = 1e-6;

/// Self-interference levels plotted for the full-duplex curves, dB.
pub const FD_MU_DB_SERIES: [f64; 3] = [-70.0, -90.0, -110.0];

/// Link scenario: a source-relay-destination line deployment over reflective
/// ground, all nodes at a common height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    /// Carrier wavelength, meters.
    pub lambda: f64,
    /// Common node height, meters.
    pub height: f64,
    /// Source-destination distance, meters.
    pub distance: f64,
    /// Source-relay distance, meters; the relay-destination distance is the
    /// remainder.
    pub l1: f64,
    /// Antenna main-lobe beamwidth, radians.
    pub theta_m: f64,
    /// Relay self-interference coefficient, dB (negative).
    pub mu_db: f64,
    /// Sum-power budget, dB relative to unit noise variance.
    pub xi_db: f64,
    /// Ground dielectric constant.
    pub omega: f64,
    pub polarization: Polarization,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            lambda: 5e-3,
            height: 5.0,
            distance: 200.0,
            l1: 80.0,
            theta_m: PI / 6.0,
            mu_db: -90.0,
            xi_db: 100.0,
            omega: 15.0,
            polarization: Polarization::Perpendicular,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda <= 0.0 {
            return Err(Error::param("lambda", format!("wavelength must be positive, got {}", self.lambda)));
        }
        if !self.height.is_finite() || self.height < 0.0 {
            return Err(Error::param("height", format!("height must be >= 0, got {}", self.height)));
        }
        if !self.distance.is_finite() || self.distance <= 0.0 {
            return Err(Error::param("distance", format!("distance must be positive, got {}", self.distance)));
        }
        if !self.l1.is_finite() || self.l1 <= 0.0 || self.l1 >= self.distance {
            return Err(Error::param(
                "l1",
                format!("source-relay distance must satisfy 0 < l1 < distance, got {}", self.l1),
            ));
        }
        if !self.theta_m.is_finite() || self.theta_m <= 0.0 {
            return Err(Error::param("theta_m", format!("beamwidth must be positive, got {}", self.theta_m)));
        }
        if !self.mu_db.is_finite() || self.mu_db >= 0.0 {
            return Err(Error::param(
                "mu_db",
                format!("self-interference must be below 0 dB, got {}", self.mu_db),
            ));
        }
        if !self.xi_db.is_finite() {
            return Err(Error::param("xi_db", "sum power must be finite".to_string()));
        }
        if !self.omega.is_finite() || self.omega < 1.0 {
            return Err(Error::param("omega", format!("dielectric constant must be >= 1, got {}", self.omega)));
        }
        Ok(())
    }

    pub fn pattern(&self) -> Result<AntennaPattern> {
        AntennaPattern::new(self.theta_m)
    }

    pub fn ground(&self) -> Result<GroundModel> {
        GroundModel::new(self.omega, self.polarization)
    }

    pub fn budget(&self) -> Result<PowerBudget> {
        PowerBudget::from_db(self.xi_db, self.mu_db)
    }

    pub fn hop1(&self) -> Result<LinkGeometry> {
        LinkGeometry::new(self.height, self.height, self.l1, self.lambda)
    }

    pub fn hop2(&self) -> Result<LinkGeometry> {
        LinkGeometry::new(self.height, self.height, self.distance - self.l1, self.lambda)
    }

    pub fn direct_link(&self) -> Result<LinkGeometry> {
        LinkGeometry::new(self.height, self.height, self.distance, self.lambda)
    }

    /// Two-ray power gains `(g1, g2, g_direct)`.
    pub fn two_ray_gains(&self) -> Result<(f64, f64, f64)> {
        self.validate()?;
        let pattern = self.pattern()?;
        let ground = self.ground()?;
        let g1 = channel::channel(&self.hop1()?, &pattern, &ground)?.power_gain;
        let g2 = channel::channel(&self.hop2()?, &pattern, &ground)?.power_gain;
        let gd = channel::channel(&self.direct_link()?, &pattern, &ground)?.power_gain;
        Ok((g1, g2, gd))
    }

    /// Line-of-sight-only power gains `(g1, g2, g_direct)`.
    pub fn los_gains(&self) -> Result<(f64, f64, f64)> {
        self.validate()?;
        let pattern = self.pattern()?;
        let g1 = channel::los_only_gain(&self.hop1()?, &pattern);
        let g2 = channel::los_only_gain(&self.hop2()?, &pattern);
        let gd = channel::los_only_gain(&self.direct_link()?, &pattern);
        Ok((g1, g2, gd))
    }

    pub fn relay_scenario(&self) -> Result<RelayScenario> {
        self.validate()?;
        Ok(RelayScenario {
            hop1: self.hop1()?,
            hop2: self.hop2()?,
            ground: self.ground()?,
            budget: self.budget()?,
        })
    }
}

/// One table cell: a number (formatted to 12 significant digits) or text.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn as_num(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }
}

/// In-memory CSV table with a fixed header, rendered with UNIX line endings
/// and 12-significant-digit scientific notation for numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

fn fmt_num(v: f64) -> String {
    format!("{v:.11e}")
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push_nums(&mut self, row: &[f64]) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row.iter().map(|v| Cell::Num(*v)).collect());
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => fmt_num(*v),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Parse a table emitted by [`Csv::to_csv_string`]; unparsable fields
    /// come back as text.
    pub fn parse(text: &str) -> Result<Csv> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::param("csv", "empty input"))?
            .split(',')
            .map(|s| s.to_string())
            .collect();
        let mut rows = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            rows.push(
                line.split(',')
                    .map(|f| match f.parse::<f64>() {
                        Ok(v) => Cell::Num(v),
                        Err(_) => Cell::Text(f.to_string()),
                    })
                    .collect(),
            );
        }
        Ok(Csv { header, rows })
    }

    /// Numeric column by header name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        self.rows.iter().map(|r| r[idx].as_num()).collect()
    }
}

/// Default sum-power grid: 60 to 150 dB in 2 dB steps.
pub fn default_xi_db_grid() -> Vec<f64> {
    (0..=45).map(|k| 60.0 + 2.0 * k as f64).collect()
}

/// Default beamwidth grid: 40 log-spaced points over `[pi/12, pi/3]`.
pub fn default_theta_grid() -> Vec<f64> {
    numerics::logspace(PI / 12.0, PI / 3.0, 40)
}

/// Default self-interference grid: -130 to -60 dB in 2 dB steps.
pub fn default_mu_db_grid() -> Vec<f64> {
    (0..=35).map(|k| -130.0 + 2.0 * k as f64).collect()
}

/// Power levels plotted against self-interference in the rate-vs-mu sweep.
pub fn default_fig5_xi_db_values() -> Vec<f64> {
    vec![90.0, 100.0, 110.0, 120.0]
}

/// Self-interference levels for the rate-vs-power gap sweep, dB.
pub fn default_fig6_mu_db_values() -> Vec<f64> {
    vec![-130.0, -110.0, -90.0, -70.0]
}

/// Evenly spaced override grids for `--points`.
pub fn xi_db_grid(points: Option<usize>) -> Vec<f64> {
    match points {
        Some(n) if n >= 2 => numerics::linspace(60.0, 150.0, n),
        _ => default_xi_db_grid(),
    }
}

pub fn theta_grid(points: Option<usize>) -> Vec<f64> {
    match points {
        Some(n) if n >= 2 => numerics::logspace(PI / 12.0, PI / 3.0, n),
        _ => default_theta_grid(),
    }
}

pub fn mu_db_grid(points: Option<usize>) -> Vec<f64> {
    match points {
        Some(n) if n >= 2 => numerics::linspace(-130.0, -60.0, n),
        _ => default_mu_db_grid(),
    }
}

fn warning_for(pattern: &AntennaPattern) -> Option<String> {
    if pattern.within_empirical_range() {
        None
    } else {
        Some(format!(
            "beamwidth {} rad outside the antenna model's empirical fit range [pi/12, pi/3]",
            pattern.theta_m
        ))
    }
}

/// All per-scheme rates at one operating point. The full-duplex entry uses
/// the scenario's own self-interference level.
pub struct SchemeRates {
    pub direct: rates::RateSolution,
    pub hd_half: rates::RateSolution,
    pub hd_opt: rates::RateSolution,
    pub fd: rates::RateSolution,
    pub fd_limit: rates::RateSolution,
    pub warning: Option<String>,
}

/// Evaluate every scheme at the configured operating point. A beamwidth
/// outside the antenna model's fit range flags every returned solution.
pub fn scheme_rates(cfg: &ScenarioConfig) -> Result<SchemeRates> {
    let (g1, g2, gd) = cfg.two_ray_gains()?;
    let budget = cfg.budget()?;
    let warning = warning_for(&cfg.pattern()?);
    let flag = |mut sol: rates::RateSolution| {
        sol.warning.clone_from(&warning);
        sol
    };
    Ok(SchemeRates {
        direct: flag(rates::direct_rate(gd, &budget)?),
        hd_half: flag(rates::hd_equal_slot_rate(g1, g2, &budget)?),
        hd_opt: flag(rates::hd_optimal_rate(g1, g2, &budget, HD_SOLVER_TOL)?),
        fd: flag(rates::fd_optimal_rate(g1, g2, &budget)?),
        fd_limit: flag(rates::fd_rate_upper_limit(g1, g2, budget.xi)?),
        warning,
    })
}

/// Rates of every scheme against the sum-power budget at fixed geometry and
/// beamwidth. Columns: direct, optimized and equal-slot half-duplex, and
/// full-duplex at -70/-90/-110 dB self-interference.
pub fn run_fig2(cfg: &ScenarioConfig, xi_db_grid: &[f64]) -> Result<Csv> {
    cfg.validate()?;
    let (g1, g2, gd) = cfg.two_ray_gains()?;
    let mut csv = Csv::new(&[
        "x",
        "direct",
        "hd_opt",
        "hd_half",
        "fd_mu_neg70db",
        "fd_mu_neg90db",
        "fd_mu_neg110db",
    ]);
    for &xi_db in xi_db_grid {
        let budget = PowerBudget::from_db(xi_db, cfg.mu_db)?;
        let mut row = vec![
            xi_db,
            rates::direct_rate(gd, &budget)?.rate,
            rates::hd_optimal_rate(g1, g2, &budget, HD_SOLVER_TOL)?.rate,
            rates::hd_equal_slot_rate(g1, g2, &budget)?.rate,
        ];
        for mu_db in FD_MU_DB_SERIES {
            let b = PowerBudget::from_db(xi_db, mu_db)?;
            row.push(rates::fd_optimal_rate(g1, g2, &b)?.rate);
        }
        csv.push_nums(&row);
    }
    Ok(csv)
}

/// Rates of every scheme against the beamwidth at a fixed sum-power budget.
pub fn run_fig3(cfg: &ScenarioConfig, theta_grid: &[f64]) -> Result<Csv> {
    cfg.validate()?;
    let mut csv = Csv::new(&[
        "x",
        "direct",
        "hd_opt",
        "hd_half",
        "fd_mu_neg70db",
        "fd_mu_neg90db",
        "fd_mu_neg110db",
    ]);
    for &theta_m in theta_grid {
        let point = ScenarioConfig { theta_m, ..*cfg };
        let (g1, g2, gd) = point.two_ray_gains()?;
        let budget = point.budget()?;
        let mut row = vec![
            theta_m,
            rates::direct_rate(gd, &budget)?.rate,
            rates::hd_optimal_rate(g1, g2, &budget, HD_SOLVER_TOL)?.rate,
            rates::hd_equal_slot_rate(g1, g2, &budget)?.rate,
        ];
        for mu_db in FD_MU_DB_SERIES {
            let b = PowerBudget::from_db(point.xi_db, mu_db)?;
            row.push(rates::fd_optimal_rate(g1, g2, &b)?.rate);
        }
        csv.push_nums(&row);
    }
    Ok(csv)
}

/// Ground-reflection contribution: two-ray versus line-of-sight-only rates
/// over the beamwidth grid at selected relay placements. Rows are
/// `(theta_m, scheme, l1, rate_2ray, rate_1ray)` in grid order.
pub fn run_fig4(cfg: &ScenarioConfig, theta_grid: &[f64], l1_values: &[f64]) -> Result<Csv> {
    cfg.validate()?;
    let mut csv = Csv::new(&["theta_m", "scheme", "l1", "rate_2ray", "rate_1ray"]);
    for &theta_m in theta_grid {
        for scheme in ["hd_opt", "fd"] {
            for &l1 in l1_values {
                let point = ScenarioConfig { theta_m, l1, ..*cfg };
                let (g1, g2, _) = point.two_ray_gains()?;
                let (g1_los, g2_los, _) = point.los_gains()?;
                let budget = point.budget()?;
                let (two_ray, one_ray) = match scheme {
                    "hd_opt" => (
                        rates::hd_optimal_rate(g1, g2, &budget, HD_SOLVER_TOL)?.rate,
                        rates::hd_optimal_rate(g1_los, g2_los, &budget, HD_SOLVER_TOL)?.rate,
                    ),
                    _ => (
                        rates::fd_optimal_rate(g1, g2, &budget)?.rate,
                        rates::fd_optimal_rate(g1_los, g2_los, &budget)?.rate,
                    ),
                };
                csv.rows.push(vec![
                    Cell::Num(theta_m),
                    Cell::Text(scheme.to_string()),
                    Cell::Num(l1),
                    Cell::Num(two_ray),
                    Cell::Num(one_ray),
                ]);
            }
        }
    }
    Ok(csv)
}

/// Full-duplex rate against the self-interference coefficient at several
/// power budgets. Rows are `(mu_db, xi_db, fd_rate)` in grid order.
pub fn run_fig5(cfg: &ScenarioConfig, mu_db_grid: &[f64], xi_db_values: &[f64]) -> Result<Csv> {
    cfg.validate()?;
    let (g1, g2, _) = cfg.two_ray_gains()?;
    let mut csv = Csv::new(&["mu_db", "xi_db", "fd_rate"]);
    for &mu_db in mu_db_grid {
        for &xi_db in xi_db_values {
            let budget = PowerBudget::from_db(xi_db, mu_db)?;
            csv.push_nums(&[mu_db, xi_db, rates::fd_optimal_rate(g1, g2, &budget)?.rate]);
        }
    }
    Ok(csv)
}

/// Full-duplex rate against the sum power, together with its
/// zero-self-interference upper limit and the gap between them. Rows are
/// `(xi_db, mu_db, fd_rate, fd_upper_limit, gap)` in grid order.
pub fn run_fig6(cfg: &ScenarioConfig, xi_db_grid: &[f64], mu_db_values: &[f64]) -> Result<Csv> {
    cfg.validate()?;
    let (g1, g2, _) = cfg.two_ray_gains()?;
    let mut csv = Csv::new(&["xi_db", "mu_db", "fd_rate", "fd_upper_limit", "gap"]);
    for &xi_db in xi_db_grid {
        for &mu_db in mu_db_values {
            let budget = PowerBudget::from_db(xi_db, mu_db)?;
            let fd = rates::fd_optimal_rate(g1, g2, &budget)?.rate;
            let limit = rates::fd_rate_upper_limit(g1, g2, budget.xi)?.rate;
            csv.push_nums(&[xi_db, mu_db, fd, limit, limit - fd]);
        }
    }
    Ok(csv)
}

/// Verification suites runnable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifySuite {
    /// Closed forms against brute-force constrained searches.
    Oracles,
    /// Beamwidth and self-interference scaling envelopes.
    Scaling,
    /// Monotonicity/convexity derivative checks.
    Convexity,
    All,
}

impl std::str::FromStr for VerifySuite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracles" => Ok(VerifySuite::Oracles),
            "scaling" => Ok(VerifySuite::Scaling),
            "convexity" => Ok(VerifySuite::Convexity),
            "all" => Ok(VerifySuite::All),
            other => Err(Error::param("suite", format!("unknown suite `{other}`; use oracles|scaling|convexity|all"))),
        }
    }
}

/// One verification outcome: check name, verdict and worst margin (positive
/// slack means pass).
#[derive(Debug, Clone)]
pub struct VerifyEntry {
    pub name: &'static str,
    pub pass: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// Line-oriented `name,status,margin` report.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("name,status,margin\n");
        for e in &self.entries {
            let status = if e.pass { "pass" } else { "fail" };
            let _ = writeln!(out, "{},{},{}", e.name, status, fmt_num(e.margin));
        }
        out
    }
}

fn sweep_entry(name: &'static str, report: &SweepReport) -> VerifyEntry {
    VerifyEntry { name, pass: report.all_pass(), margin: report.worst_margin }
}

/// Independent one-dimensional maximization used by the oracle suite: a
/// 10^4-point scan plus golden refinement of the bracketing cells.
fn scan_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    numerics::grid_then_golden_max(f, lo, hi, 10_000, 120).1
}

fn oracle_entries(entries: &mut Vec<VerifyEntry>) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x006d_6d72_656c_6179);
    let mut worst_hd: f64 = 0.0;
    let mut worst_fd: f64 = 0.0;
    for _ in 0..1000 {
        let g1 = 10f64.powf(rng.gen_range(-12.0..-2.0));
        let g2 = 10f64.powf(rng.gen_range(-12.0..-2.0));
        let xi = 10f64.powf(rng.gen_range(2.0..13.0));
        let mu = 10f64.powf(rng.gen_range(-13.0..-1.0));
        let budget = PowerBudget::new(xi, mu).unwrap();

        let closed = rates::hd_equal_slot_rate(g1, g2, &budget).unwrap().rate;
        let brute = 0.5
            * cap(scan_max(
                |x1| {
                    let x2 = 2.0 * xi - x1;
                    g1 * g2 * x1 * x2 / (1.0 + g1 * x1 + g2 * x2)
                },
                0.0,
                2.0 * xi,
            ));
        worst_hd = worst_hd.max((closed - brute).abs() / brute.max(f64::MIN_POSITIVE));

        let closed = rates::fd_optimal_rate(g1, g2, &budget).unwrap().rate;
        let brute = cap(scan_max(
            |x1| {
                let x2 = xi - x1;
                g1 * g2 * x1 * x2 / ((g2 * x2 + 1.0) * (mu * x2 + 1.0) + g1 * x1)
            },
            0.0,
            xi,
        ));
        worst_fd = worst_fd.max((closed - brute).abs() / brute.max(f64::MIN_POSITIVE));
    }
    entries.push(VerifyEntry { name: "hd_equal_slot_vs_grid_oracle", pass: worst_hd <= 1e-6, margin: 1e-6 - worst_hd });
    entries.push(VerifyEntry { name: "fd_optimal_vs_grid_oracle", pass: worst_fd <= 1e-6, margin: 1e-6 - worst_fd });

    // threshold boundary: closed form against bisection on the monotone rate
    let mut worst_mu: f64 = 0.0;
    let mut landed = 0usize;
    while landed < 100 {
        let g1 = 10f64.powf(rng.gen_range(-4.0..-1.0));
        let g2 = 10f64.powf(rng.gen_range(-4.0..-1.0));
        let xi = 10f64.powf(rng.gen_range(2.0..6.0));
        let coeffs = rates::FdCoefficients::new(g1, g2, xi);
        let top = cap(coeffs.sinr_limit());
        let floor = cap(coeffs.sinr(xi, 1.0));
        let chi = floor + rng.gen_range(0.05..0.95) * (top - floor);
        let set = rates::fd_mu_feasible_set(g1, g2, xi, chi).unwrap();
        let mu_low = match set.feasibility {
            MuFeasibility::Interval { mu_low } => mu_low,
            _ => continue,
        };
        landed += 1;
        let (mut lo, mut hi) = (1e-300, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if cap(coeffs.sinr(xi, mid)) > chi {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let bisected = 0.5 * (lo + hi);
        worst_mu = worst_mu.max((mu_low - bisected).abs() / bisected);
    }
    entries.push(VerifyEntry {
        name: "fd_mu_threshold_vs_bisection",
        pass: worst_mu <= 1e-6,
        margin: 1e-6 - worst_mu,
    });
}

fn scaling_entries(entries: &mut Vec<VerifyEntry>) -> Result<()> {
    // elementary chain over random draws
    let mut rng = ChaCha8Rng::seed_from_u64(0x63_6861_696e);
    let mut worst: f64 = f64::INFINITY;
    let mut ok = true;
    for _ in 0..10_000 {
        let x = rng.gen_range(0.0..1e6);
        match analysis::log_inequality_chain(x) {
            Ok((lhs, mid, rhs)) => worst = worst.min(mid - lhs).min(rhs - mid),
            Err(_) => ok = false,
        }
    }
    entries.push(VerifyEntry { name: "log_inequality_chain", pass: ok, margin: worst });

    let cfg = ScenarioConfig::default();
    let scenario = cfg.relay_scenario()?;
    let grid = numerics::logspace(PI / 12.0, PI / 3.0, 50);
    let report = analysis::beamwidth_scaling_check(&scenario, &grid)?;
    entries.push(sweep_entry("beamwidth_scaling_envelope", &report));

    let mu_grid = numerics::logspace(1e-13, 1e-1, 50);
    let report = analysis::mu_scaling_check(1e-8, 1e-8, 1e10, &mu_grid)?;
    entries.push(sweep_entry("self_interference_scaling_envelope", &report));

    // per-hop gain envelope over the beamwidth sweep
    let pattern_grid = numerics::logspace(PI / 12.0, PI, 60);
    let mut worst: f64 = f64::INFINITY;
    let mut ok = true;
    for geom in [scenario.hop1, scenario.hop2] {
        let b = channel::path_constant(&geom);
        let z = channel::compound_reflection(&geom, &scenario.ground)?.norm();
        let tau = crate::antenna::MAIN_LOBE_EXCESS_PER_RADIAN / std::f64::consts::TAU;
        let k = (b * (1.0 + z) / tau) * (b * (1.0 + z) / tau);
        for &theta_m in &pattern_grid {
            let pattern = AntennaPattern::new(theta_m)?;
            let ch = channel::channel(&geom, &pattern, &scenario.ground)?;
            let scaled = ch.power_gain * theta_m * theta_m;
            ok &= scaled <= k * (1.0 + analysis::BOUND_SLACK);
            worst = worst.min(k - scaled);
        }
    }
    entries.push(VerifyEntry { name: "channel_gain_beamwidth_envelope", pass: ok, margin: worst });
    Ok(())
}

fn convexity_entries(entries: &mut Vec<VerifyEntry>) -> Result<()> {
    let reference = analysis::derivative_consistency_check(1.0, 1.0, 2.0, 0.5)?;
    let mut worst = reference.max_rel_err;
    let mut ok = reference.pass();
    let mut rng = ChaCha8Rng::seed_from_u64(0x64_6572_6976);
    for _ in 0..100 {
        let g1 = 10f64.powf(rng.gen_range(-3.0..1.0));
        let g2 = 10f64.powf(rng.gen_range(-3.0..1.0));
        let xi = 10f64.powf(rng.gen_range(-1.0..2.0));
        let mu = 10f64.powf(rng.gen_range(-3.0..-0.05));
        let report = analysis::derivative_consistency_check(g1, g2, xi, mu)?;
        ok &= report.pass();
        worst = worst.max(report.max_rel_err);
    }
    entries.push(VerifyEntry { name: "sinr_rate_derivative_consistency", pass: ok, margin: 1e-5 - worst });

    let grid = numerics::logspace(1.0, 1e6, 50);
    let report = analysis::kappa_monotonicity_check(1.0, 1.0, 0.01, &grid)?;
    entries.push(sweep_entry("kappa_power_monotonicity", &report));
    Ok(())
}

/// Run a verification suite. All checks are deterministic: random draws use
/// fixed seeds.
pub fn run_verify(suite: VerifySuite) -> Result<VerifyReport> {
    let mut entries = Vec::new();
    if matches!(suite, VerifySuite::Oracles | VerifySuite::All) {
        oracle_entries(&mut entries);
    }
    if matches!(suite, VerifySuite::Scaling | VerifySuite::All) {
        scaling_entries(&mut entries)?;
    }
    if matches!(suite, VerifySuite::Convexity | VerifySuite::All) {
        convexity_entries(&mut entries)?;
    }
    Ok(VerifyReport { entries })
}

/// Plain-text gnuplot script that renders a figure CSV.
pub fn plot_script(figure: &str, csv_path: &str) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set grid\n");
    match figure {
        "fig2" => {
            s.push_str("set xlabel 'sum power [dB]'\nset ylabel 'rate [bits/s/Hz]'\n");
            let _ = writeln!(
                s,
                "plot for [col=2:7] '{csv_path}' using 1:col with lines"
            );
        }
        "fig3" => {
            s.push_str("set xlabel 'beamwidth [rad]'\nset ylabel 'rate [bits/s/Hz]'\nset logscale x\n");
            let _ = writeln!(
                s,
                "plot for [col=2:7] '{csv_path}' using 1:col with lines"
            );
        }
        "fig4" => {
            s.push_str("set xlabel 'beamwidth [rad]'\nset ylabel 'rate [bits/s/Hz]'\nset logscale x\n");
            let _ = writeln!(
                s,
                "plot '{csv_path}' using 1:(strcol(2) eq 'hd_opt' && $3 == 60 ? $4 : NaN) with lines title 'hd 2-ray l1=60', \\\n     '{csv_path}' using 1:(strcol(2) eq 'hd_opt' && $3 == 60 ? $5 : NaN) with lines title 'hd 1-ray l1=60', \\\n     '{csv_path}' using 1:(strcol(2) eq 'hd_opt' && $3 == 95 ? $4 : NaN) with lines title 'hd 2-ray l1=95', \\\n     '{csv_path}' using 1:(strcol(2) eq 'hd_opt' && $3 == 95 ? $5 : NaN) with lines title 'hd 1-ray l1=95'"
            );
        }
        "fig5" => {
            s.push_str("set xlabel 'self-interference [dB]'\nset ylabel 'rate [bits/s/Hz]'\n");
            let _ = writeln!(
                s,
                "plot '{csv_path}' using 1:($2 == 90 ? $3 : NaN) with lines title 'xi=90dB', \\\n     '{csv_path}' using 1:($2 == 100 ? $3 : NaN) with lines title 'xi=100dB', \\\n     '{csv_path}' using 1:($2 == 110 ? $3 : NaN) with lines title 'xi=110dB', \\\n     '{csv_path}' using 1:($2 == 120 ? $3 : NaN) with lines title 'xi=120dB'"
            );
        }
        _ => {
            s.push_str("set xlabel 'sum power [dB]'\nset ylabel 'rate [bits/s/Hz]'\n");
            let _ = writeln!(
                s,
                "plot '{csv_path}' using 1:($2 == -70 ? $3 : NaN) with lines title 'fd mu=-70dB', \\\n     '{csv_path}' using 1:($2 == -70 ? $4 : NaN) with lines title 'limit', \\\n     '{csv_path}' using 1:($2 == -130 ? $3 : NaN) with lines title 'fd mu=-130dB'"
            );
        }
    }
    s
}
