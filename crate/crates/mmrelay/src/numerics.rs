//! Small numerical kernels shared across the crate: adaptive quadrature,
//! golden-section search and grid helpers.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of a unimodal function on `[a, b]`.
///
/// Returns `(x_max, f_max)`. The function need not be smooth; a kinked
/// unimodal objective (a min of two crossing branches) converges the same.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if (b - a).abs() <= f64::EPSILON * (a.abs() + b.abs() + 1.0) {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Scan `n` equispaced points on `[a, b]`, then polish with golden section
/// inside the cells bracketing the best sample. Valid for unimodal `f`.
pub(crate) fn grid_then_golden_max<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    n: usize,
    golden_iters: usize,
) -> (f64, f64) {
    debug_assert!(n >= 3 && b >= a);
    let h = (b - a) / ((n - 1) as f64);
    let mut best_i = 0usize;
    let mut best_x = a;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..n {
        let x = if i == n - 1 { b } else { a + h * i as f64 };
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_i = i;
            best_x = x;
        }
    }
    let lo = if best_i == 0 { a } else { a + h * (best_i - 1) as f64 };
    let hi = if best_i + 2 >= n { b } else { a + h * (best_i + 1) as f64 };
    let (x, v) = golden_max(&f, lo, hi, golden_iters);
    if v >= best_v {
        (x, v)
    } else {
        (best_x, best_v)
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    s: f64,
    tol_abs: f64,
    depth: u32,
    context: &'static str,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - s;
    if delta.abs() <= 15.0 * tol_abs {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::numerical(context, "adaptive quadrature did not converge"));
    }
    Ok(simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol_abs, depth - 1, context)?
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol_abs, depth - 1, context)?)
}

/// Adaptive Simpson quadrature with a relative accuracy target.
pub(crate) fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    context: &'static str,
) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::numerical(context, "non-finite integration bounds"));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    let scale = whole.abs().max(1e-12);
    simpson_rec(&f, a, b, fa, fm, fb, whole, rel_tol * scale, 60, context)
}

/// `n` equispaced points covering `[a, b]` inclusive.
///
/// Doubling the density as `2n - 1` reproduces every original point
/// bit-exactly (the step halves exactly in binary floating point).
pub(crate) fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![a];
    }
    let h = (b - a) / ((n - 1) as f64);
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + h * i as f64 })
        .collect()
}

/// `n` logarithmically spaced points covering `[a, b]`, with `a, b > 0`.
pub(crate) fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a.ln(), b.ln(), n).into_iter().map(f64::exp).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 200);
        assert!((x - 0.3).abs() < 1e-10);
        assert!(v.abs() < 1e-18);
    }

    #[test]
    fn golden_handles_kinked_min() {
        // min of two crossing lines peaks at the crossing
        let f = |x: f64| (2.0 * x).min(3.0 - x);
        let (x, _) = grid_then_golden_max(f, 0.0, 3.0, 101, 120);
        assert!((x - 1.0).abs() < 1e-9);
    }

    #[test]
    fn simpson_integrates_polynomial_exactly() {
        let v = integrate(|x| x * x * x, 0.0, 2.0, 1e-12, "test").unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_gaussian_like() {
        let v = integrate(|x| (-x * x).exp(), -6.0, 6.0, 1e-12, "test").unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn linspace_doubling_shares_points() {
        let coarse = linspace(0.3, 7.7, 11);
        let fine = linspace(0.3, 7.7, 21);
        for (i, x) in coarse.iter().enumerate() {
            assert_eq!(*x, fine[2 * i]);
        }
    }
}
