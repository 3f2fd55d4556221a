//! Achievable rates and sum-power allocation for direct, half-duplex and
//! full-duplex amplify-and-forward transmission.
//!
//! All powers are in linear scale normalized to unit noise variance. The
//! half-duplex scheme splits each frame into a source slot of share `beta`
//! and a relay slot of share `1 - beta` under the energy budget
//! `beta*xi1 + (1-beta)*xi2 = xi`; the full-duplex scheme transmits
//! continuously under `xi1 + xi2 = xi` with residual self-interference
//! `mu in (0, 1)` at the relay.

use crate::error::{Error, Result};
use crate::numerics;
use std::f64::consts::LN_2;

/// Smallest time share considered by the half-duplex optimizer; the objective
/// vanishes at both endpoints so the exclusion is immaterial.
pub const MIN_TIME_SHARE: f64 = 1e-6;

fn check_gain(name: &'static str, g: f64) -> Result<()> {
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::param(name, format!("channel gain must be finite and positive, got {g}")));
    }
    Ok(())
}

/// Sum-power budget and relay self-interference coefficient, linear scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    /// Sum power, normalized to unit noise variance; `xi > 0`.
    pub xi: f64,
    /// Residual self-interference coefficient, `0 < mu < 1`.
    pub mu: f64,
}

impl PowerBudget {
    pub fn new(xi: f64, mu: f64) -> Result<Self> {
        if !xi.is_finite() || xi <= 0.0 {
            return Err(Error::param("xi", format!("sum power must be finite and positive, got {xi}")));
        }
        if !mu.is_finite() || mu <= 0.0 || mu >= 1.0 {
            return Err(Error::param(
                "mu",
                format!("self-interference coefficient must lie in (0, 1), got {mu}"),
            ));
        }
        Ok(PowerBudget { xi, mu })
    }

    /// Convert from decibels: `linear = 10^(dB/10)`.
    pub fn from_db(xi_db: f64, mu_db: f64) -> Result<Self> {
        Self::new(linear_from_db(xi_db), linear_from_db(mu_db))
    }
}

/// `10^(dB/10)`.
pub fn linear_from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Achievable rate `C(s) = log2(1 + s)` for a non-negative SNR/SINR.
pub fn capacity(snr: f64) -> Result<f64> {
    if snr.is_nan() || snr < 0.0 {
        return Err(Error::param("snr", format!("SNR must be non-negative, got {snr}")));
    }
    Ok(cap(snr))
}

/// Unchecked `log2(1 + s)`, accurate for subnormal-small arguments.
#[inline]
pub(crate) fn cap(snr: f64) -> f64 {
    snr.ln_1p() / LN_2
}

/// One scheme's operating point: rate, power split, time share and the
/// effective destination SNR/SINR it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSolution {
    /// Achievable rate, bits/s/Hz.
    pub rate: f64,
    /// First-hop (source) transmit power.
    pub xi1: f64,
    /// Second-hop (relay) transmit power; zero for direct transmission.
    pub xi2: f64,
    /// Source-slot time share; 1 for direct and full-duplex operation.
    pub beta: f64,
    /// Effective SNR or SINR at the destination.
    pub snr: f64,
    /// Relay amplification coefficient, absent for direct transmission.
    pub amp: Option<f64>,
    /// Validity note, e.g. a beamwidth outside the antenna model's fit range.
    pub warning: Option<String>,
}

/// Direct source-to-destination transmission at full budget.
pub fn direct_rate(g_sd: f64, budget: &PowerBudget) -> Result<RateSolution> {
    check_gain("g_sd", g_sd)?;
    let snr = g_sd * budget.xi;
    Ok(RateSolution {
        rate: cap(snr),
        xi1: budget.xi,
        xi2: 0.0,
        beta: 1.0,
        snr,
        amp: None,
        warning: None,
    })
}

/// Half-duplex relaying with equal time slots (`beta = 1/2`) and optimal
/// power allocation under `xi1 + xi2 = 2*xi`:
///
/// `snr = 4*g1*g2*xi^2 / (sqrt(1 + 2*g1*xi) + sqrt(1 + 2*g2*xi))^2`.
pub fn hd_equal_slot_rate(g1: f64, g2: f64, budget: &PowerBudget) -> Result<RateSolution> {
    check_gain("g1", g1)?;
    check_gain("g2", g2)?;
    let xi = budget.xi;
    let s1 = (1.0 + 2.0 * g1 * xi).sqrt();
    let s2 = (1.0 + 2.0 * g2 * xi).sqrt();
    let sum = s1 + s2;
    let snr = 4.0 * g1 * g2 * xi * xi / (sum * sum);
    // equal gains get the exactly symmetric split
    let (xi1, xi2) = if (g1 - g2).abs() <= 1e-15 * g1.abs().max(g2.abs()) {
        (xi, xi)
    } else {
        (2.0 * xi * s2 / sum, 2.0 * xi * s1 / sum)
    };
    Ok(RateSolution {
        rate: 0.5 * cap(snr),
        xi1,
        xi2,
        beta: 0.5,
        snr,
        amp: Some((xi2 / (g1 * xi1 + 1.0)).sqrt()),
        warning: None,
    })
}

/// Min-throughput objective of half-duplex relaying at a given time share and
/// source power, with the relay power taken from the energy budget.
fn hd_objective(g1: f64, g2: f64, xi: f64, beta: f64, xi1: f64) -> f64 {
    let xi2 = ((xi - beta * xi1) / (1.0 - beta)).max(0.0);
    let t1 = g1 * xi1;
    let t2 = g2 * xi2;
    let source = beta * cap(t1);
    let relayed = (1.0 - beta) * cap(t1 * t2 / (1.0 + t1 + t2));
    source.min(relayed)
}

/// Best source power for a fixed time share. The objective is the minimum of
/// an increasing and a quasi-concave branch of `xi1`, hence unimodal.
fn hd_inner_max(g1: f64, g2: f64, xi: f64, beta: f64) -> (f64, f64) {
    let hi = xi / beta;
    let (xi1, v) = numerics::grid_then_golden_max(|x| hd_objective(g1, g2, xi, beta, x), 0.0, hi, 400, 160);
    (v, xi1)
}

/// Half-duplex relaying with jointly optimized time share and power
/// allocation under the energy budget `beta*xi1 + (1-beta)*xi2 = xi`.
///
/// No closed form exists; the solver runs a seeded nested golden-section
/// search over `(beta, xi1)` followed by a local dense-grid refinement that
/// certifies the returned objective to the requested relative tolerance.
/// The equal-slot split is always a candidate, so the result never falls
/// below [`hd_equal_slot_rate`].
pub fn hd_optimal_rate(g1: f64, g2: f64, budget: &PowerBudget, tol: f64) -> Result<RateSolution> {
    check_gain("g1", g1)?;
    check_gain("g2", g2)?;
    if !tol.is_finite() || tol <= 0.0 || tol > 1e-3 {
        return Err(Error::param("tol", format!("tolerance must lie in (0, 1e-3], got {tol}")));
    }
    let xi = budget.xi;
    let lo = MIN_TIME_SHARE;
    let hi = 1.0 - MIN_TIME_SHARE;

    // equal-slot candidate (feasible point of the same program)
    let half = hd_equal_slot_rate(g1, g2, budget)?;
    let mut best_v = hd_objective(g1, g2, xi, 0.5, half.xi1);
    let mut best_beta = 0.5;
    let mut best_xi1 = half.xi1;

    // coarse sweep of the time share, then golden polish around the best cell
    const OUTER_GRID: usize = 400;
    let step = (hi - lo) / ((OUTER_GRID - 1) as f64);
    let mut best_i = 0usize;
    for i in 0..OUTER_GRID {
        let beta = if i == OUTER_GRID - 1 { hi } else { lo + step * i as f64 };
        let (v, xi1) = hd_inner_max(g1, g2, xi, beta);
        if v > best_v {
            best_v = v;
            best_beta = beta;
            best_xi1 = xi1;
            best_i = i;
        }
    }
    let bracket_lo = if best_i == 0 { lo } else { lo + step * (best_i - 1) as f64 };
    let bracket_hi = if best_i + 2 >= OUTER_GRID { hi } else { lo + step * (best_i + 1) as f64 };
    let (beta_g, v_g) = numerics::golden_max(|b| hd_inner_max(g1, g2, xi, b).0, bracket_lo, bracket_hi, 80);
    if v_g > best_v {
        best_v = v_g;
        best_beta = beta_g;
        best_xi1 = hd_inner_max(g1, g2, xi, beta_g).1;
    }

    // local dense-grid refinement until no improvement beyond tol remains
    let mut window = step;
    let mut converged = false;
    for _ in 0..24 {
        let wlo = (best_beta - window).max(lo);
        let whi = (best_beta + window).min(hi);
        let mut improved = false;
        let n = 41usize;
        let h = (whi - wlo) / ((n - 1) as f64);
        for i in 0..n {
            let beta = if i == n - 1 { whi } else { wlo + h * i as f64 };
            let (v, xi1) = hd_inner_max(g1, g2, xi, beta);
            if v > best_v {
                improved |= v - best_v > 0.5 * tol * best_v.max(1e-12);
                best_v = v;
                best_beta = beta;
                best_xi1 = xi1;
            }
        }
        if !improved {
            converged = true;
            break;
        }
        window *= 0.5;
    }

    let xi2 = ((xi - best_beta * best_xi1) / (1.0 - best_beta)).max(0.0);
    let t1 = g1 * best_xi1;
    let t2 = g2 * xi2;
    let snr = t1 * t2 / (1.0 + t1 + t2);
    let solution = RateSolution {
        rate: best_v,
        xi1: best_xi1,
        xi2,
        beta: best_beta,
        snr,
        amp: Some((xi2 / (g1 * best_xi1 + 1.0)).sqrt()),
        warning: None,
    };
    if !converged {
        return Err(Error::Numerical {
            context: "hd_optimal_rate",
            reason: "time-share refinement did not converge to the requested tolerance".into(),
            best: Some(Box::new(solution)),
        });
    }
    Ok(solution)
}

/// Destination SINR of full-duplex relaying at given powers,
/// `g1*g2*xi1*xi2 / ((g2*xi2 + 1)*(mu*xi2 + 1) + g1*xi1)`.
pub fn fd_sinr(g1: f64, g2: f64, xi1: f64, xi2: f64, mu: f64) -> f64 {
    let t1 = g1 * xi1;
    let t2 = g2 * xi2;
    t1 * t2 / ((t2 + 1.0) * (mu * xi2 + 1.0) + t1)
}

/// Coefficients of the optimized full-duplex SINR
/// `gamma* = a0 / (a1 + xi*mu + a2*sqrt(1 + xi*mu))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdCoefficients {
    /// `g1*g2*xi^2`
    pub a0: f64,
    /// `2 + (g1 + g2)*xi`
    pub a1: f64,
    /// `2*sqrt((1 + g1*xi)*(1 + g2*xi))`
    pub a2: f64,
}

impl FdCoefficients {
    pub fn new(g1: f64, g2: f64, xi: f64) -> Self {
        FdCoefficients {
            a0: g1 * g2 * xi * xi,
            a1: 2.0 + (g1 + g2) * xi,
            a2: 2.0 * ((1.0 + g1 * xi) * (1.0 + g2 * xi)).sqrt(),
        }
    }

    /// Optimized SINR at self-interference `mu >= 0`.
    pub fn sinr(&self, xi: f64, mu: f64) -> f64 {
        let xm = xi * mu;
        self.a0 / (self.a1 + xm + self.a2 * (1.0 + xm).sqrt())
    }

    /// Zero-self-interference SINR limit `a0 / (a1 + a2)`.
    pub fn sinr_limit(&self) -> f64 {
        self.a0 / (self.a1 + self.a2)
    }

    /// Penalty ratio `kappa = limit / actual`, i.e.
    /// `(a1 + xi*mu + a2*sqrt(1 + xi*mu)) / (a1 + a2)`; 1 exactly at `mu = 0`.
    pub fn kappa(&self, xi: f64, mu: f64) -> f64 {
        let xm = xi * mu;
        (self.a1 + xm + self.a2 * (1.0 + xm).sqrt()) / (self.a1 + self.a2)
    }

    /// Additive decomposition `kappa = 1 + kappa1 + kappa2` with
    /// `kappa1 = xi*mu/(a1 + a2)` and
    /// `kappa2 = a2*(sqrt(1 + xi*mu) - 1)/(a1 + a2)`.
    pub fn kappa_parts(&self, xi: f64, mu: f64) -> (f64, f64) {
        let xm = xi * mu;
        let den = self.a1 + self.a2;
        (xm / den, self.a2 * ((1.0 + xm).sqrt() - 1.0) / den)
    }
}

/// Full-duplex relaying with optimal power allocation under `xi1 + xi2 = xi`:
///
/// `snr = g1*g2*xi^2 / (2 + (g1 + g2 + mu)*xi + 2*sqrt((1 + g1*xi)*(1 + g2*xi)*(1 + mu*xi)))`.
pub fn fd_optimal_rate(g1: f64, g2: f64, budget: &PowerBudget) -> Result<RateSolution> {
    check_gain("g1", g1)?;
    check_gain("g2", g2)?;
    let xi = budget.xi;
    let mu = budget.mu;
    let first = 1.0 + g1 * xi;
    let second = 1.0 + (mu + g2) * xi + mu * g2 * xi * xi;
    let (sa, sb) = (first.sqrt(), second.sqrt());
    let xi1 = xi * sb / (sa + sb);
    let xi2 = xi * sa / (sa + sb);
    let snr = FdCoefficients::new(g1, g2, xi).sinr(xi, mu);
    Ok(RateSolution {
        rate: cap(snr),
        xi1,
        xi2,
        beta: 1.0,
        snr,
        amp: Some((xi2 / (xi1 * g1 + 1.0 + mu * xi2)).sqrt()),
        warning: None,
    })
}

/// Zero-self-interference limit of the full-duplex rate; a strict upper bound
/// on [`fd_optimal_rate`] for every `mu > 0`.
pub fn fd_rate_upper_limit(g1: f64, g2: f64, xi: f64) -> Result<RateSolution> {
    check_gain("g1", g1)?;
    check_gain("g2", g2)?;
    if !xi.is_finite() || xi <= 0.0 {
        return Err(Error::param("xi", format!("sum power must be finite and positive, got {xi}")));
    }
    let coeffs = FdCoefficients::new(g1, g2, xi);
    let snr = coeffs.sinr_limit();
    let (sa, sb) = ((1.0 + g1 * xi).sqrt(), (1.0 + g2 * xi).sqrt());
    let xi1 = xi * sb / (sa + sb);
    let xi2 = xi * sa / (sa + sb);
    Ok(RateSolution {
        rate: cap(snr),
        xi1,
        xi2,
        beta: 1.0,
        snr,
        amp: Some((xi2 / (xi1 * g1 + 1.0)).sqrt()),
        warning: None,
    })
}

/// Self-interference penalty ratio for the optimized full-duplex SINR;
/// at least 1, with equality only in the zero-interference limit.
pub fn kappa(g1: f64, g2: f64, budget: &PowerBudget) -> Result<f64> {
    check_gain("g1", g1)?;
    check_gain("g2", g2)?;
    Ok(FdCoefficients::new(g1, g2, budget.xi).kappa(budget.xi, budget.mu))
}

/// Classification of the self-interference range over which the optimized
/// full-duplex rate stays at or below a threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MuFeasibility {
    /// Every `mu in (0, 1)` keeps the rate at or below the threshold.
    All,
    /// Exactly `mu in [mu_low, 1)` does.
    Interval { mu_low: f64 },
    /// No `mu in (0, 1)` does: the rate exceeds the threshold everywhere.
    Empty,
}

/// Threshold statistic and classification returned by [`fd_mu_feasible_set`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuFeasibleSet {
    /// `psi = xi*sqrt(g1*g2*(1 + 1/(2^chi - 1))) - sqrt((1 + g1*xi)*(1 + g2*xi))`.
    pub psi: f64,
    pub feasibility: MuFeasibility,
}

/// Solve `fd rate <= chi` for the self-interference coefficient.
///
/// Substituting `v = sqrt(1 + xi*mu)` into the optimized SINR turns the
/// threshold condition into `v >= psi`, so the set is empty, an interval
/// `[(psi^2 - 1)/xi, 1)`, or all of `(0, 1)` according to where `psi` falls
/// relative to `1` and `sqrt(1 + xi)`. `psi <= 1` corresponds exactly to the
/// threshold meeting the zero-interference supremum, `psi >= sqrt(1 + xi)` to
/// the threshold undercutting the `mu -> 1` infimum.
pub fn fd_mu_feasible_set(g1: f64, g2: f64, xi: f64, chi: f64) -> Result<MuFeasibleSet> {
    check_gain("g1", g1)?;
    check_gain("g2", g2)?;
    if !xi.is_finite() || xi <= 0.0 {
        return Err(Error::param("xi", format!("sum power must be finite and positive, got {xi}")));
    }
    if !chi.is_finite() || chi < 0.0 {
        return Err(Error::param("chi", format!("rate threshold must be finite and >= 0, got {chi}")));
    }
    // gamma threshold 2^chi - 1, kept accurate for small chi
    let gamma_t = (chi * LN_2).exp_m1();
    let psi = if gamma_t == 0.0 {
        // a positive rate is always achievable, so "rate <= 0" never holds
        f64::INFINITY
    } else {
        let arg = g1 * g2 * (1.0 + 1.0 / gamma_t);
        xi * arg.sqrt() - ((1.0 + g1 * xi) * (1.0 + g2 * xi)).sqrt()
    };
    let feasibility = if psi <= 1.0 {
        MuFeasibility::All
    } else if psi < (1.0 + xi).sqrt() {
        MuFeasibility::Interval { mu_low: (psi * psi - 1.0) / xi }
    } else {
        MuFeasibility::Empty
    };
    Ok(MuFeasibleSet { psi, feasibility })
}

/// Optimized full-duplex SINR and its first two partial derivatives in the
/// self-interference coefficient; the SINR is strictly decreasing and
/// strictly convex in `mu`.
pub fn fd_sinr_mu_derivatives(g1: f64, g2: f64, xi: f64, mu: f64) -> (f64, f64, f64) {
    let c = FdCoefficients::new(g1, g2, xi);
    let xm = xi * mu;
    let v = (1.0 + xm).sqrt();
    let den = c.a1 + xm + c.a2 * v;
    let gamma = c.a0 / den;
    let d1 = -(xi * c.a0 * (1.0 + c.a2 / (2.0 * v))) / (den * den);
    let d2 = xi * xi * c.a0 * (3.0 * c.a2 * c.a2 * v + 8.0 * v.powi(3) + c.a2 * (8.0 + c.a1 + 9.0 * xm))
        / (4.0 * v.powi(3) * den.powi(3));
    (gamma, d1, d2)
}

/// Optimized full-duplex rate and its first two partial derivatives in the
/// self-interference coefficient, obtained from the SINR derivatives by the
/// chain rule; the rate inherits strict decrease and strict convexity.
pub fn fd_rate_mu_derivatives(g1: f64, g2: f64, xi: f64, mu: f64) -> (f64, f64, f64) {
    let (gamma, g_d1, g_d2) = fd_sinr_mu_derivatives(g1, g2, xi, mu);
    let eta = cap(gamma);
    let denom = (1.0 + gamma) * LN_2;
    let e_d1 = g_d1 / denom;
    let e_d2 = g_d2 / denom - g_d1 * g_d1 / ((1.0 + gamma) * (1.0 + gamma) * LN_2);
    (eta, e_d1, e_d2)
}
