//! Two-ray ground-reflection channel.
//!
//! Each hop combines a line-of-sight ray with a single ground-reflected ray:
//!
//! `h = lambda * (G(0) + G(theta) * Gamma(theta) * cos(theta) * e^(-j*dphi)) / (4*pi*d_los)`
//!
//! where `theta` is the grazing reflection angle, `Gamma` the Fresnel-type
//! reflection coefficient of the dielectric ground, and `dphi` the phase lag
//! accumulated over the extra reflected-path length. Both rays share the
//! line-of-sight denominator; the reflection and antenna roll-off losses are
//! carried by the `Gamma * cos(theta)` and `G(theta)` factors.

use crate::antenna::{AntennaPattern, MAIN_LOBE_EXCESS_PER_RADIAN, ROLLOFF_EXPONENT};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Electromagnetic wave polarization relative to the reflecting plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    Perpendicular,
    Horizontal,
}

/// Dielectric ground description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundModel {
    /// Dielectric constant of the ground, `omega >= 1`.
    pub omega: f64,
    pub polarization: Polarization,
}

impl GroundModel {
    pub fn new(omega: f64, polarization: Polarization) -> Result<Self> {
        if !omega.is_finite() || omega < 1.0 {
            return Err(Error::param(
                "omega",
                format!("dielectric constant must be finite and >= 1, got {omega}"),
            ));
        }
        Ok(GroundModel { omega, polarization })
    }
}

/// Single-hop geometry: endpoint heights above ground, horizontal separation
/// and carrier wavelength, all in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub h_tx: f64,
    pub h_rx: f64,
    pub l: f64,
    pub lambda: f64,
}

impl LinkGeometry {
    pub fn new(h_tx: f64, h_rx: f64, l: f64, lambda: f64) -> Result<Self> {
        for (name, v) in [("h_tx", h_tx), ("h_rx", h_rx)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::param(name, format!("height must be finite and >= 0, got {v}")));
            }
        }
        if !l.is_finite() || l <= 0.0 {
            return Err(Error::param("l", format!("separation must be finite and positive, got {l}")));
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::param(
                "lambda",
                format!("wavelength must be finite and positive, got {lambda}"),
            ));
        }
        Ok(LinkGeometry { h_tx, h_rx, l, lambda })
    }

    /// Direct-path length `sqrt((h_tx - h_rx)^2 + l^2)`.
    pub fn los_distance(&self) -> f64 {
        let dh = self.h_tx - self.h_rx;
        (dh * dh + self.l * self.l).sqrt()
    }

    /// Reflected-path length `sqrt((h_tx + h_rx)^2 + l^2)`.
    pub fn reflected_distance(&self) -> f64 {
        let sh = self.h_tx + self.h_rx;
        (sh * sh + self.l * self.l).sqrt()
    }
}

/// Two-ray channel coefficient with its line-of-sight / reflection split and
/// the factored power-gain form used by the beamwidth analysis.
#[derive(Debug, Clone, Copy)]
pub struct TwoRayChannel {
    /// Line-of-sight amplitude (real by construction).
    pub los_amplitude: f64,
    /// Reflected-ray complex amplitude.
    pub reflected_amplitude: Complex64,
    /// Total channel coefficient.
    pub amplitude: Complex64,
    /// Power gain `|h|^2`.
    pub power_gain: f64,
    /// Line-of-sight-only power gain.
    pub los_power_gain: f64,
    /// Power gain re-evaluated in the factored roll-off form
    /// `(b/(1 + tau*theta_m))^2 * |1 + z * eps^min(1,(2 theta/theta_m)^2)|^2`.
    pub power_gain_factored: f64,
    /// Relative reflection contribution `zeta = g_ref / g_los` in `[0, 1)`.
    pub reflection_contribution: f64,
    /// Compound reflection term `z = Gamma * cos(theta) * e^(-j*dphi)`, `|z| < 1`.
    pub compound_reflection: Complex64,
    /// Path constant `b = lambda * 10^2.028 / (4*pi*d_los)`.
    pub path_constant: f64,
    /// Grazing reflection angle, radians.
    pub reflection_angle: f64,
    /// Unwrapped LOS/reflected phase difference, radians.
    pub phase_difference: f64,
}

/// Grazing reflection angle `arctan((h_tx + h_rx) / l)`.
///
/// Zero total height admits no reflected ray distinct from the direct one and
/// is rejected as degenerate.
pub fn reflection_angle(geom: &LinkGeometry) -> Result<f64> {
    let s = geom.h_tx + geom.h_rx;
    if s == 0.0 {
        return Err(Error::InvalidGeometry(
            "both endpoint heights are zero; no distinct reflected path".into(),
        ));
    }
    Ok((s / geom.l).atan())
}

/// Normalized surface impedance of the dielectric ground at grazing angle
/// `theta`: `sqrt(omega - cos^2 theta) / omega` for perpendicular
/// polarization, `sqrt(omega - cos^2 theta)` for horizontal.
pub fn surface_impedance(theta: f64, ground: &GroundModel) -> Result<f64> {
    let c = theta.cos();
    let c2 = c * c;
    if ground.omega <= c2 {
        return Err(Error::param(
            "omega",
            format!("dielectric constant {} does not exceed cos^2(theta) = {c2}", ground.omega),
        ));
    }
    let root = (ground.omega - c2).sqrt();
    Ok(match ground.polarization {
        Polarization::Perpendicular => root / ground.omega,
        Polarization::Horizontal => root,
    })
}

/// Reflection coefficient `(sin theta - Z(theta)) / (sin theta + Z(theta))`,
/// always in `[-1, 1]` and tending to -1 at grazing incidence.
pub fn reflection_coefficient(theta: f64, ground: &GroundModel) -> Result<f64> {
    let z = surface_impedance(theta, ground)?;
    let s = theta.sin();
    Ok((s - z) / (s + z))
}

/// Phase accumulated over the reflected-path excess length,
/// `(2*pi/lambda) * (d_reflected - d_los)`, not reduced modulo `2*pi`.
pub fn phase_difference(geom: &LinkGeometry) -> f64 {
    TAU / geom.lambda * (geom.reflected_distance() - geom.los_distance())
}

/// Build the two-ray channel for one hop.
pub fn channel(geom: &LinkGeometry, pattern: &AntennaPattern, ground: &GroundModel) -> Result<TwoRayChannel> {
    let theta = reflection_angle(geom)?;
    let gamma = reflection_coefficient(theta, ground)?;
    let dphi = phase_difference(geom);
    let d_los = geom.los_distance();
    let denom = 4.0 * PI * d_los;

    let phase = Complex64::new(dphi.cos(), -dphi.sin());
    let g0 = pattern.gain(0.0);
    let g_theta = pattern.gain(theta);

    let los_amplitude = geom.lambda * g0 / denom;
    let reflected_amplitude = phase * (geom.lambda * g_theta * gamma * theta.cos() / denom);
    let amplitude = Complex64::new(los_amplitude, 0.0) + reflected_amplitude;

    let z = phase * (gamma * theta.cos());
    let b = geom.lambda * 10f64.powf(ROLLOFF_EXPONENT) / denom;
    let tau = MAIN_LOBE_EXCESS_PER_RADIAN / TAU;
    let rolloff = pattern.rolloff(theta);
    let base = b / (1.0 + tau * pattern.theta_m);
    let power_gain_factored = base * base * (Complex64::new(1.0, 0.0) + z * rolloff).norm_sqr();

    Ok(TwoRayChannel {
        los_amplitude,
        reflected_amplitude,
        amplitude,
        power_gain: amplitude.norm_sqr(),
        los_power_gain: los_amplitude * los_amplitude,
        power_gain_factored,
        reflection_contribution: rolloff * rolloff * z.norm_sqr(),
        compound_reflection: z,
        path_constant: b,
        reflection_angle: theta,
        phase_difference: dphi,
    })
}

/// Power gain of the line-of-sight ray alone, `(lambda*G(0)/(4*pi*d_los))^2`.
pub fn los_only_gain(geom: &LinkGeometry, pattern: &AntennaPattern) -> f64 {
    let a = geom.lambda * pattern.gain(0.0) / (4.0 * PI * geom.los_distance());
    a * a
}

/// Relative contribution of the reflected ray,
/// `zeta = eps^(2*min(1,(2 theta/theta_m)^2)) * |z|^2`.
///
/// Bounded by `eps^2*|z|^2 <= zeta < |z|^2 < 1` and non-decreasing in the
/// beamwidth: a broader beam illuminates the ground harder.
pub fn relative_contribution(ch: &TwoRayChannel, pattern: &AntennaPattern) -> f64 {
    let r = pattern.rolloff(ch.reflection_angle);
    r * r * ch.compound_reflection.norm_sqr()
}

/// Path constant `b = lambda * 10^2.028 / (4*pi*d_los)` without building the
/// full channel; used by the scaling analysis where it is beamwidth-free.
pub fn path_constant(geom: &LinkGeometry) -> f64 {
    geom.lambda * 10f64.powf(ROLLOFF_EXPONENT) / (4.0 * PI * geom.los_distance())
}

/// Compound reflection term `z = Gamma(theta) * cos(theta) * e^(-j*dphi)`,
/// independent of the antenna pattern.
pub fn compound_reflection(geom: &LinkGeometry, ground: &GroundModel) -> Result<Complex64> {
    let theta = reflection_angle(geom)?;
    let gamma = reflection_coefficient(theta, ground)?;
    let dphi = phase_difference(geom);
    Ok(Complex64::new(dphi.cos(), -dphi.sin()) * (gamma * theta.cos()))
}
