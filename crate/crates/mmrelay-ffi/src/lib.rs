//! C ABI over the mmrelay library.
//!
//! Scenarios are opaque handles created and destroyed by this library; all
//! other calls are pure. Every fallible function returns an [`MmrelayStatus`]
//! and writes its result through out-pointers; the most recent failure
//! message per thread is available via [`mmrelay_last_error_message`].

use mmrelay::experiments::{scheme_rates, ScenarioConfig};
use mmrelay::rates::RateSolution;
use mmrelay::{antenna::AntennaPattern, channel::Polarization};
use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmrelayStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    InvalidGeometry = 3,
    NumericalError = 4,
    InternalError = 5,
}

/// Opaque scenario handle.
pub struct MmrelayScenario {
    cfg: ScenarioConfig,
}

/// One scheme's operating point, C layout.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MmrelayRate {
    /// Achievable rate, bits/s/Hz.
    pub rate: f64,
    /// Source transmit power, linear.
    pub xi1: f64,
    /// Relay transmit power, linear.
    pub xi2: f64,
    /// Source-slot time share.
    pub beta: f64,
    /// Effective SNR/SINR at the destination.
    pub snr: f64,
    /// Relay amplification coefficient; meaningful only when `has_amp` is 1.
    pub amp: f64,
    /// 1 when `amp` is meaningful (relaying schemes), 0 otherwise.
    pub has_amp: u8,
    /// 1 when the beamwidth sits outside the antenna model's fit range.
    pub out_of_range: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_last_error(msg: &str) {
    LAST_ERROR.with(|e| {
        let mut e = e.borrow_mut();
        e.clear();
        e.extend_from_slice(msg.as_bytes());
    });
}

fn status_of(err: &mmrelay::Error) -> MmrelayStatus {
    set_last_error(&err.to_string());
    match err {
        mmrelay::Error::InvalidParameter { .. } => MmrelayStatus::InvalidParameter,
        mmrelay::Error::InvalidGeometry(_) => MmrelayStatus::InvalidGeometry,
        mmrelay::Error::Numerical { .. } => MmrelayStatus::NumericalError,
    }
}

fn guarded(f: impl FnOnce() -> MmrelayStatus) -> MmrelayStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            MmrelayStatus::InternalError
        }
    }
}

fn fill_rate(out: &mut MmrelayRate, sol: &RateSolution, out_of_range: bool) {
    out.rate = sol.rate;
    out.xi1 = sol.xi1;
    out.xi2 = sol.xi2;
    out.beta = sol.beta;
    out.snr = sol.snr;
    out.amp = sol.amp.unwrap_or(0.0);
    out.has_amp = u8::from(sol.amp.is_some());
    out.out_of_range = u8::from(out_of_range);
}

/// Copy the most recent error message of this thread into `buf` (NUL
/// terminated, truncated to `cap` bytes). Returns the full message length in
/// bytes, excluding the terminator; call with `cap == 0` to query the length.
///
/// # Safety
/// `buf` must be NULL or point to at least `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn mmrelay_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Create a scenario from explicit parameters. `perpendicular` selects the
/// wave polarization (1 = perpendicular, 0 = horizontal). On success writes
/// a handle that must be released with [`mmrelay_scenario_free`].
///
/// # Safety
/// `out` must be NULL or a valid pointer to a handle slot.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn mmrelay_scenario_create(
    lambda: f64,
    height: f64,
    distance: f64,
    l1: f64,
    theta_m: f64,
    mu_db: f64,
    xi_db: f64,
    omega: f64,
    perpendicular: u8,
    out: *mut *mut MmrelayScenario,
) -> MmrelayStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return MmrelayStatus::NullPointer;
    }
    guarded(|| {
        let cfg = ScenarioConfig {
            lambda,
            height,
            distance,
            l1,
            theta_m,
            mu_db,
            xi_db,
            omega,
            polarization: if perpendicular != 0 {
                Polarization::Perpendicular
            } else {
                Polarization::Horizontal
            },
        };
        match cfg.validate() {
            Ok(()) => {
                *out = Box::into_raw(Box::new(MmrelayScenario { cfg }));
                MmrelayStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Create the default scenario (5 mm wavelength, 5 m heights, 200 m span,
/// relay at 80 m, pi/6 beamwidth, -90 dB self-interference, 100 dB budget).
///
/// # Safety
/// `out` must be NULL or a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn mmrelay_scenario_default(out: *mut *mut MmrelayScenario) -> MmrelayStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return MmrelayStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(MmrelayScenario { cfg: ScenarioConfig::default() }));
    MmrelayStatus::Ok
}

/// Release a scenario handle. Passing NULL is a no-op.
///
/// # Safety
/// `scenario` must be NULL or a handle obtained from this library that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn mmrelay_scenario_free(scenario: *mut MmrelayScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Two-ray channel power gains of the source-relay, relay-destination and
/// source-destination links.
///
/// # Safety
/// `scenario` must be a live handle from this library; out-pointers must be
/// NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mmrelay_channel_gains(
    scenario: *const MmrelayScenario,
    g1: *mut f64,
    g2: *mut f64,
    g_direct: *mut f64,
) -> MmrelayStatus {
    if scenario.is_null() || g1.is_null() || g2.is_null() || g_direct.is_null() {
        set_last_error("null pointer argument");
        return MmrelayStatus::NullPointer;
    }
    guarded(|| match (*scenario).cfg.two_ray_gains() {
        Ok((a, b, c)) => {
            *g1 = a;
            *g2 = b;
            *g_direct = c;
            MmrelayStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

unsafe fn rate_entry(
    scenario: *const MmrelayScenario,
    out: *mut MmrelayRate,
    pick: impl Fn(&mmrelay::experiments::SchemeRates) -> &RateSolution,
) -> MmrelayStatus {
    if scenario.is_null() || out.is_null() {
        set_last_error("null pointer argument");
        return MmrelayStatus::NullPointer;
    }
    guarded(|| match scheme_rates(&(*scenario).cfg) {
        Ok(all) => {
            fill_rate(&mut *out, pick(&all), all.warning.is_some());
            MmrelayStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Direct source-destination transmission at full budget.
///
/// # Safety
/// `scenario` must be a live handle from this library; `out` must be NULL or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mmrelay_rate_direct(
    scenario: *const MmrelayScenario,
    out: *mut MmrelayRate,
) -> MmrelayStatus {
    rate_entry(scenario, out, |r| &r.direct)
}

/// Half-duplex relaying with equal slots and optimal power split.
///
/// # Safety
/// See [`mmrelay_rate_direct`].
#[no_mangle]
pub unsafe extern "C" fn mmrelay_rate_hd_equal_slot(
    scenario: *const MmrelayScenario,
    out: *mut MmrelayRate,
) -> MmrelayStatus {
    rate_entry(scenario, out, |r| &r.hd_half)
}

/// Half-duplex relaying with jointly optimized time share and power split.
///
/// # Safety
/// See [`mmrelay_rate_direct`].
#[no_mangle]
pub unsafe extern "C" fn mmrelay_rate_hd_optimal(
    scenario: *const MmrelayScenario,
    out: *mut MmrelayRate,
) -> MmrelayStatus {
    rate_entry(scenario, out, |r| &r.hd_opt)
}

/// Full-duplex relaying with optimal power split at the scenario's
/// self-interference level.
///
/// # Safety
/// See [`mmrelay_rate_direct`].
#[no_mangle]
pub unsafe extern "C" fn mmrelay_rate_fd(
    scenario: *const MmrelayScenario,
    out: *mut MmrelayRate,
) -> MmrelayStatus {
    rate_entry(scenario, out, |r| &r.fd)
}

/// Zero-self-interference upper limit of the full-duplex rate.
///
/// # Safety
/// See [`mmrelay_rate_direct`].
#[no_mangle]
pub unsafe extern "C" fn mmrelay_rate_fd_upper_limit(
    scenario: *const MmrelayScenario,
    out: *mut MmrelayRate,
) -> MmrelayStatus {
    rate_entry(scenario, out, |r| &r.fd_limit)
}

/// Self-interference penalty ratio (zero-interference SINR over actual).
///
/// # Safety
/// `scenario` must be a live handle from this library; `out` must be NULL or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mmrelay_kappa(
    scenario: *const MmrelayScenario,
    out: *mut f64,
) -> MmrelayStatus {
    if scenario.is_null() || out.is_null() {
        set_last_error("null pointer argument");
        return MmrelayStatus::NullPointer;
    }
    guarded(|| {
        let cfg = &(*scenario).cfg;
        let result = cfg
            .two_ray_gains()
            .and_then(|(g1, g2, _)| cfg.budget().and_then(|b| mmrelay::rates::kappa(g1, g2, &b)));
        match result {
            Ok(k) => {
                *out = k;
                MmrelayStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Directional antenna gain at orientation `phi` for a pattern of main-lobe
/// beamwidth `theta_m` (both radians).
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mmrelay_antenna_gain(theta_m: f64, phi: f64, out: *mut f64) -> MmrelayStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return MmrelayStatus::NullPointer;
    }
    guarded(|| match AntennaPattern::new(theta_m) {
        Ok(p) => {
            *out = p.gain(phi);
            MmrelayStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}
