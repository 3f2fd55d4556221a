//! Verification harness for the model's inequalities, scaling envelopes and
//! monotonicity/convexity claims.
//!
//! Each check reduces its claim to per-point constraints of the form
//! `value <= bound` and records them in a [`SweepReport`]. Scaling checks use
//! the explicit constants from the bounding derivations rather than fitted
//! constants, so the big-O claims become literally assertable inequalities;
//! they assert boundedness only, never tightness.

use crate::channel::{self, GroundModel, LinkGeometry};
use crate::error::{Error, Result};
use crate::rates::{self, FdCoefficients, PowerBudget};
use num_complex::Complex64;
use std::f64::consts::{LN_2, TAU};

use crate::antenna::{AntennaPattern, MAIN_LOBE_EXCESS_PER_RADIAN};

/// Multiplicative slack applied to every per-point bound; tolerates only
/// floating-point-level violations.
pub const BOUND_SLACK: f64 = 1e-9;

/// Evidence for one swept claim: per grid point a metric, its claimed
/// envelope, and the pass verdict `value <= bound * (1 + 1e-9)`.
#[derive(Debug, Clone)]
pub struct SweepReport {
    /// Name of the swept parameter.
    pub parameter: &'static str,
    /// Ordered sample points.
    pub grid: Vec<f64>,
    /// Metric per point.
    pub values: Vec<f64>,
    /// Claimed envelope per point.
    pub bounds: Vec<f64>,
    /// Per-point verdicts.
    pub pass: Vec<bool>,
    /// Minimum slack `bound - value` over the grid.
    pub worst_margin: f64,
}

impl SweepReport {
    pub fn new(parameter: &'static str, grid: Vec<f64>, values: Vec<f64>, bounds: Vec<f64>) -> Self {
        assert_eq!(grid.len(), values.len());
        assert_eq!(grid.len(), bounds.len());
        let pass: Vec<bool> = values
            .iter()
            .zip(&bounds)
            .map(|(v, b)| *v <= *b * (1.0 + BOUND_SLACK))
            .collect();
        let worst_margin = values
            .iter()
            .zip(&bounds)
            .map(|(v, b)| b - v)
            .fold(f64::INFINITY, f64::min);
        SweepReport { parameter, grid, values, bounds, pass, worst_margin }
    }

    pub fn all_pass(&self) -> bool {
        self.pass.iter().all(|p| *p)
    }
}

/// The elementary logarithm bound chain
/// `ln(1 + x) <= x / sqrt(1 + x) <= min(sqrt(x), x)` for `x >= 0`.
///
/// Returns the three chain members and errors if the ordering is violated
/// beyond floating-point slack (it cannot be, analytically).
pub fn log_inequality_chain(x: f64) -> Result<(f64, f64, f64)> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::param("x", format!("must be finite and >= 0, got {x}")));
    }
    let lhs = x.ln_1p();
    let mid = x / (1.0 + x).sqrt();
    let rhs = x.sqrt().min(x);
    let slack = |v: f64| v.abs() * 1e-12 + 1e-300;
    if lhs > mid + slack(mid) || mid > rhs + slack(rhs) {
        return Err(Error::numerical(
            "log_inequality_chain",
            format!("chain violated at x = {x}: ({lhs}, {mid}, {rhs})"),
        ));
    }
    Ok((lhs, mid, rhs))
}

/// Two-hop relay scenario used by the beamwidth sweep: the per-hop
/// geometries, ground and the shared sum-power budget.
#[derive(Debug, Clone, Copy)]
pub struct RelayScenario {
    pub hop1: LinkGeometry,
    pub hop2: LinkGeometry,
    pub ground: GroundModel,
    pub budget: PowerBudget,
}

fn check_grid(grid: &[f64], positive: bool) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::param("grid", "needs at least two points"));
    }
    for w in grid.windows(2) {
        if w[0] >= w[1] || w[1].is_nan() || w[0].is_nan() {
            return Err(Error::param("grid", "must be strictly increasing"));
        }
    }
    if positive && grid[0] <= 0.0 {
        return Err(Error::param("grid", "must be positive"));
    }
    Ok(())
}

/// Per-hop envelope constant `K = (b * (1 + |z|) / tau)^2` bounding
/// `gain * theta_m^2` for every beamwidth; `b` and `z` are beamwidth-free.
fn hop_envelope_constant(geom: &LinkGeometry, ground: &GroundModel) -> Result<f64> {
    let b = channel::path_constant(geom);
    let z: Complex64 = channel::compound_reflection(geom, ground)?;
    let tau = MAIN_LOBE_EXCESS_PER_RADIAN / TAU;
    let k = b * (1.0 + z.norm()) / tau;
    Ok(k * k)
}

/// Beamwidth scaling sweep: rates of all three relaying schemes decay at
/// least as fast as `min(theta_m^-1, theta_m^-2)` with the explicit envelope
/// constants, and decay monotonically along the grid.
///
/// Per point the report stores the worst normalized constraint ratio
/// (envelope ratios and adjacent-rate ratios) against a bound of 1.
pub fn beamwidth_scaling_check(scenario: &RelayScenario, theta_grid: &[f64]) -> Result<SweepReport> {
    check_grid(theta_grid, true)?;
    let k1 = hop_envelope_constant(&scenario.hop1, &scenario.ground)?;
    let k2 = hop_envelope_constant(&scenario.hop2, &scenario.ground)?;
    let xi = scenario.budget.xi;
    let mu = scenario.budget.mu;

    // per-branch envelope constants: eta * theta <= c1 for theta < 1,
    // eta * theta^2 <= c2 for theta >= 1
    let hd_c = ((k1 * xi).sqrt() / LN_2, k1 * xi / LN_2);
    let fd_den = k1 + k2 + 2.0 * (k1 * k2 * (1.0 + mu * xi)).sqrt();
    let fd_c = ((xi * k1 * k2 / fd_den).sqrt() / LN_2, xi * k1 * k2 / (fd_den * LN_2));

    let mut hd_opt = Vec::with_capacity(theta_grid.len());
    let mut hd_half = Vec::with_capacity(theta_grid.len());
    let mut fd = Vec::with_capacity(theta_grid.len());
    for &theta_m in theta_grid {
        let pattern = AntennaPattern::new(theta_m)?;
        let g1 = channel::channel(&scenario.hop1, &pattern, &scenario.ground)?.power_gain;
        let g2 = channel::channel(&scenario.hop2, &pattern, &scenario.ground)?.power_gain;
        hd_opt.push(rates::hd_optimal_rate(g1, g2, &scenario.budget, 1e-6)?.rate);
        hd_half.push(rates::hd_equal_slot_rate(g1, g2, &scenario.budget)?.rate);
        fd.push(rates::fd_optimal_rate(g1, g2, &scenario.budget)?.rate);
    }

    let n = theta_grid.len();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let theta = theta_grid[i];
        let (scale, hd_bound, fd_bound) = if theta >= 1.0 {
            (theta * theta, hd_c.1, fd_c.1)
        } else {
            (theta, hd_c.0, fd_c.0)
        };
        let mut worst: f64 = (hd_opt[i] * scale / hd_bound)
            .max(hd_half[i] * scale / hd_bound)
            .max(fd[i] * scale / fd_bound);
        if i + 1 < n {
            // strictly decreasing rates along the grid
            worst = worst
                .max(hd_opt[i + 1] / hd_opt[i])
                .max(hd_half[i + 1] / hd_half[i])
                .max(fd[i + 1] / fd[i]);
        }
        values.push(worst);
    }
    Ok(SweepReport::new("theta_m", theta_grid.to_vec(), values, vec![1.0; n]))
}

/// Self-interference scaling sweep: the optimized full-duplex rate satisfies
/// `rate * sqrt(mu) <= sqrt(a0 / (xi + a2*sqrt(xi))) / ln(2)` on the whole
/// grid, decays strictly, and is convex in `mu` (chord test).
pub fn mu_scaling_check(g1: f64, g2: f64, xi: f64, mu_grid: &[f64]) -> Result<SweepReport> {
    check_grid(mu_grid, true)?;
    if *mu_grid.last().unwrap() >= 1.0 {
        return Err(Error::param("grid", "self-interference grid must stay below 1"));
    }
    let coeffs = FdCoefficients::new(g1, g2, xi);
    let envelope = (coeffs.a0 / (xi + coeffs.a2 * xi.sqrt())).sqrt() / LN_2;

    let eta: Vec<f64> = mu_grid.iter().map(|&mu| rates::cap(coeffs.sinr(xi, mu))).collect();
    let n = mu_grid.len();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let mut worst: f64 = eta[i] * mu_grid[i].sqrt() / envelope;
        if i + 1 < n {
            // strictly decreasing in mu
            worst = worst.max(eta[i + 1] / eta[i]);
        }
        if i > 0 && i + 1 < n {
            // convexity: the curve lies below the chord of its neighbors
            let (x0, x1, x2) = (mu_grid[i - 1], mu_grid[i], mu_grid[i + 1]);
            let chord = (eta[i - 1] * (x2 - x1) + eta[i + 1] * (x1 - x0)) / (x2 - x0);
            worst = worst.max(eta[i] / chord);
        }
        values.push(worst);
    }
    Ok(SweepReport::new("mu", mu_grid.to_vec(), values, vec![1.0; n]))
}

/// Outcome of comparing the analytic SINR/rate derivatives against central
/// finite differences.
#[derive(Debug, Clone, Copy)]
pub struct DerivativeReport {
    pub sinr: f64,
    pub sinr_d1: f64,
    pub sinr_d2: f64,
    pub rate: f64,
    pub rate_d1: f64,
    pub rate_d2: f64,
    /// Worst relative disagreement between analytic and finite-difference
    /// values over the four derivatives.
    pub max_rel_err: f64,
    /// First derivatives negative and second derivatives positive.
    pub signs_ok: bool,
    /// Whether the Richardson fallback was needed to reach the target.
    pub used_richardson: bool,
}

impl DerivativeReport {
    pub fn pass(&self) -> bool {
        self.signs_ok && self.max_rel_err <= 1e-5
    }
}

fn central_d1(f: &impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

fn central_d2(f: &impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

fn rel_disagreement(analytic: f64, fd: f64) -> f64 {
    (analytic - fd).abs() / analytic.abs().max(f64::MIN_POSITIVE)
}

/// Check the analytic first and second derivatives of the optimized
/// full-duplex SINR and rate in `mu` against central finite differences with
/// a relative step of `1e-4`, falling back to Richardson extrapolation where
/// the plain stencil misses the `1e-5` agreement target.
///
/// The fallback combines two step sizes to cancel the leading truncation
/// term; when the plain stencil is cancellation-limited instead (the step is
/// far below the curvature scale `1/xi`), the extrapolated pair is taken at
/// enlarged steps.
pub fn derivative_consistency_check(g1: f64, g2: f64, xi: f64, mu: f64) -> Result<DerivativeReport> {
    if mu.is_nan() || mu <= 1e-10 || mu >= 1.0 - 1e-10 {
        return Err(Error::param("mu", format!("must lie in (1e-10, 1 - 1e-10), got {mu}")));
    }
    let h = mu * 1e-4;
    if mu + h == mu {
        return Err(Error::numerical("derivative_consistency_check", "finite-difference step underflow"));
    }
    let gamma_of = |m: f64| FdCoefficients::new(g1, g2, xi).sinr(xi, m);
    let eta_of = |m: f64| rates::cap(gamma_of(m));

    let (gamma, g_d1, g_d2) = rates::fd_sinr_mu_derivatives(g1, g2, xi, mu);
    let (eta, e_d1, e_d2) = rates::fd_rate_mu_derivatives(g1, g2, xi, mu);

    let mut used_richardson = false;
    let mut compare = |analytic: f64, f: &dyn Fn(f64) -> f64, second: bool| -> f64 {
        let stencil = |step: f64| if second { central_d2(&f, mu, step) } else { central_d1(&f, mu, step) };
        let mut best = rel_disagreement(analytic, stencil(h));
        if best <= 1e-5 {
            return best;
        }
        used_richardson = true;
        // (step, 2*step) pairs: shrink for truncation-limited stencils,
        // grow for cancellation-limited ones; steps stay well inside (0, 1)
        for scale in [0.5, 4.0, 32.0, 256.0, 2048.0] {
            let step = h * scale;
            if mu - 2.0 * step <= 0.0 || mu + 2.0 * step >= 1.0 {
                continue;
            }
            let extrapolated = (4.0 * stencil(step) - stencil(2.0 * step)) / 3.0;
            best = best.min(rel_disagreement(analytic, extrapolated));
            if best <= 1e-5 {
                break;
            }
        }
        best
    };

    let e1 = compare(g_d1, &gamma_of, false);
    let e2 = compare(g_d2, &gamma_of, true);
    let e3 = compare(e_d1, &eta_of, false);
    let e4 = compare(e_d2, &eta_of, true);

    Ok(DerivativeReport {
        sinr: gamma,
        sinr_d1: g_d1,
        sinr_d2: g_d2,
        rate: eta,
        rate_d1: e_d1,
        rate_d2: e_d2,
        max_rel_err: e1.max(e2).max(e3).max(e4),
        signs_ok: g_d1 < 0.0 && g_d2 > 0.0 && e_d1 < 0.0 && e_d2 > 0.0,
        used_richardson,
    })
}

/// Sum-power monotonicity of the self-interference penalty ratio: `kappa`
/// and both components of its additive decomposition grow strictly along any
/// increasing power grid, and the decomposition residual stays at
/// floating-point level. At `mu = 0` the ratio is identically 1.
pub fn kappa_monotonicity_check(g1: f64, g2: f64, mu: f64, xi_grid: &[f64]) -> Result<SweepReport> {
    check_grid(xi_grid, true)?;
    if !mu.is_finite() || mu < 0.0 {
        return Err(Error::param("mu", format!("must be finite and >= 0, got {mu}")));
    }
    let n = xi_grid.len();
    let mut kappa = Vec::with_capacity(n);
    let mut part1 = Vec::with_capacity(n);
    let mut part2 = Vec::with_capacity(n);
    let mut resid = Vec::with_capacity(n);
    for &xi in xi_grid {
        let c = FdCoefficients::new(g1, g2, xi);
        let k = c.kappa(xi, mu);
        let (k1, k2) = c.kappa_parts(xi, mu);
        kappa.push(k);
        part1.push(k1);
        part2.push(k2);
        resid.push((k - 1.0 - k1 - k2).abs());
    }
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        // decomposition residual measured against the 1e-12 allowance
        let mut worst: f64 = resid[i] / 1e-12;
        if mu == 0.0 {
            // kappa degenerates to exactly 1
            worst = worst.max((kappa[i] - 1.0).abs() / 1e-12);
        } else if i + 1 < n {
            // strict growth of kappa and both parts
            worst = worst
                .max(kappa[i] / kappa[i + 1])
                .max(part1[i] / part1[i + 1])
                .max(part2[i] / part2[i + 1]);
        }
        values.push(worst);
    }
    Ok(SweepReport::new("xi", xi_grid.to_vec(), values, vec![1.0; n]))
}
