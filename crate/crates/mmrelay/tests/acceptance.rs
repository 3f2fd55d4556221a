//! Acceptance suite: one test per project acceptance criterion, each pinned
//! to its tolerance here and printing a single pass line.
//!
//! Brute-force oracles are implemented inline from the model definitions and
//! stay independent of the library's solution paths.

use mmrelay::analysis;
use mmrelay::antenna::{
    normalization_integral, total_radiated_power, AntennaPattern, BEAMWIDTH_RATIO,
    MAIN_LOBE_EXCESS_PER_RADIAN,
};
use mmrelay::channel::{channel, GroundModel, LinkGeometry, Polarization};
use mmrelay::experiments::{
    self, default_fig6_mu_db_values, default_theta_grid, default_xi_db_grid, Csv, ScenarioConfig,
};
use mmrelay::rates::{self, FdCoefficients, MuFeasibility, PowerBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{LN_2, PI, TAU};
use std::time::Instant;

fn cap(s: f64) -> f64 {
    s.ln_1p() / LN_2
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization used only by the oracles in this file.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
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
    f1.max(f2)
}

/// Grid scan plus golden refinement of the bracketing cells.
fn scan_then_golden(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize, iters: usize) -> f64 {
    let h = (hi - lo) / ((n - 1) as f64);
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        let x = if i == n - 1 { hi } else { lo + h * i as f64 };
        let v = f(x);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let a = if best_i == 0 { lo } else { lo + h * (best_i - 1) as f64 };
    let b = if best_i + 2 >= n { hi } else { lo + h * (best_i + 1) as f64 };
    golden_max(&f, a, b, iters).max(best)
}

/// Criterion 1: the equal-slot half-duplex and full-duplex closed forms match
/// a 10^4-point constrained grid search with golden refinement to 1e-6
/// relative rate error over 1000 randomized draws, in under 30 s.
#[test]
fn acceptance_1_closed_forms_match_grid_oracles() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    let mut worst_hd: f64 = 0.0;
    let mut worst_fd: f64 = 0.0;
    for _ in 0..1000 {
        let g1 = 10f64.powf(rng.gen_range(-12.0..-2.0));
        let g2 = 10f64.powf(rng.gen_range(-12.0..-2.0));
        let xi = 10f64.powf(rng.gen_range(2.0..13.0));
        let mu = 10f64.powf(rng.gen_range(-13.0..-1.0));
        let budget = PowerBudget::new(xi, mu).unwrap();

        // equal-slot half-duplex under xi1 + xi2 = 2 xi
        let closed = rates::hd_equal_slot_rate(g1, g2, &budget).unwrap().rate;
        let brute = 0.5
            * cap(scan_then_golden(
                |x1| {
                    let x2 = 2.0 * xi - x1;
                    g1 * g2 * x1 * x2 / (1.0 + g1 * x1 + g2 * x2)
                },
                0.0,
                2.0 * xi,
                10_000,
                120,
            ));
        worst_hd = worst_hd.max(rel_err(closed, brute));

        // full-duplex under xi1 + xi2 = xi
        let closed = rates::fd_optimal_rate(g1, g2, &budget).unwrap().rate;
        let brute = cap(scan_then_golden(
            |x1| {
                let x2 = xi - x1;
                g1 * g2 * x1 * x2 / ((g2 * x2 + 1.0) * (mu * x2 + 1.0) + g1 * x1)
            },
            0.0,
            xi,
            10_000,
            120,
        ));
        worst_fd = worst_fd.max(rel_err(closed, brute));
    }
    let elapsed = t0.elapsed();
    assert!(worst_hd <= 1e-6, "hd equal-slot vs oracle: {worst_hd:e}");
    assert!(worst_fd <= 1e-6, "fd optimal vs oracle: {worst_fd:e}");
    assert!(elapsed.as_secs_f64() < 30.0, "oracle sweep took {elapsed:?}");
    println!(
        "acceptance 1 closed_forms_vs_grid_oracles: PASS (hd {worst_hd:.2e}, fd {worst_fd:.2e}, {elapsed:?})"
    );
}

fn hd_objective(g1: f64, g2: f64, xi: f64, beta: f64, xi1: f64) -> f64 {
    let xi2 = ((xi - beta * xi1) / (1.0 - beta)).max(0.0);
    let t1 = g1 * xi1;
    let t2 = g2 * xi2;
    (beta * cap(t1)).min((1.0 - beta) * cap(t1 * t2 / (1.0 + t1 + t2)))
}

/// Independent certification: 400x400 grid over (beta, xi1) with golden
/// refinement of the inner search and of the outer bracketing cells.
fn hd_certification_oracle(g1: f64, g2: f64, xi: f64) -> f64 {
    let inner = |beta: f64| {
        scan_then_golden(|x1| hd_objective(g1, g2, xi, beta, x1), 0.0, xi / beta, 400, 120)
    };
    let (lo, hi) = (1e-6, 1.0 - 1e-6);
    let n = 400;
    let h = (hi - lo) / ((n - 1) as f64);
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        let beta = if i == n - 1 { hi } else { lo + h * i as f64 };
        let v = inner(beta);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let a = if best_i == 0 { lo } else { lo + h * (best_i - 1) as f64 };
    let b = if best_i + 2 >= n { hi } else { lo + h * (best_i + 1) as f64 };
    golden_max(inner, a, b, 60).max(best)
}

/// Criterion 2: the time-sharing solver agrees with the 400x400 certification
/// oracle to 1e-4 absolute rate on the reference point and 50 random draws,
/// never falls below the equal-slot closed form, and equalizes the two
/// throughput branches at interior optima.
#[test]
fn acceptance_2_hd_time_sharing_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0002);
    let mut worst_gap: f64 = 0.0;
    let mut worst_branch: f64 = 0.0;
    for k in 0..51 {
        let (g1, g2, xi) = if k == 0 {
            (1.0, 1.0, 2.0)
        } else {
            (
                10f64.powf(rng.gen_range(-6.0..-2.0)),
                10f64.powf(rng.gen_range(-6.0..-2.0)),
                10f64.powf(rng.gen_range(2.0..6.0)),
            )
        };
        let budget = PowerBudget::new(xi, 1e-9).unwrap();
        let sol = rates::hd_optimal_rate(g1, g2, &budget, 1e-6).unwrap();
        let cert = hd_certification_oracle(g1, g2, xi);
        worst_gap = worst_gap.max((sol.rate - cert).abs());

        let half = rates::hd_equal_slot_rate(g1, g2, &budget).unwrap();
        assert!(sol.rate >= half.rate - 1e-9, "fell below equal slot at draw {k}");

        if sol.beta > 2e-6 && sol.beta < 1.0 - 2e-6 {
            let src = sol.beta * cap(g1 * sol.xi1);
            let rel = (1.0 - sol.beta) * cap(sol.snr);
            worst_branch = worst_branch.max((src - rel).abs() / sol.rate.max(1e-12));
        }
    }
    assert!(worst_gap <= 1e-4, "solver vs certification grid: {worst_gap:e}");
    assert!(worst_branch <= 1e-6, "branch equalization at optimum: {worst_branch:e}");
    println!(
        "acceptance 2 hd_time_sharing_certified: PASS (gap {worst_gap:.2e}, branch {worst_branch:.2e})"
    );
}

/// Criterion 3: total radiated power is 2 pi within 0.1% at the four
/// reference beamwidths; the normalization integral reproduces the 42.6443
/// constant within 0.1%; the side-lobe to main-lobe ratio is exactly
/// 10^(-2.028).
#[test]
fn acceptance_3_antenna_normalization() {
    let mut worst_power: f64 = 0.0;
    let mut worst_const: f64 = 0.0;
    for theta_m in [PI / 12.0, PI / 6.0, PI / 4.0, PI / 3.0] {
        let pattern = AntennaPattern::new(theta_m).unwrap();
        let total = total_radiated_power(&pattern).unwrap();
        worst_power = worst_power.max(rel_err(total, TAU));

        let v = normalization_integral(theta_m, theta_m / BEAMWIDTH_RATIO).unwrap();
        worst_const = worst_const.max(rel_err(v / theta_m - 1.0, MAIN_LOBE_EXCESS_PER_RADIAN));

        let ratio = pattern.gain(theta_m / 2.0) / pattern.gain(0.0);
        assert_eq!(ratio, pattern.sidelobe_ratio, "theta_m = {theta_m}");
        assert_eq!(pattern.sidelobe_ratio, 10f64.powf(-2.028));
    }
    // 50-point sweep of the power normalization across the fit range
    for k in 0..50 {
        let theta_m = PI / 12.0 + (PI / 3.0 - PI / 12.0) * k as f64 / 49.0;
        let pattern = AntennaPattern::new(theta_m).unwrap();
        let total = total_radiated_power(&pattern).unwrap();
        worst_power = worst_power.max(rel_err(total, TAU));
    }
    assert!(worst_power <= 1e-3, "total power off by {worst_power:e}");
    assert!(worst_const <= 1e-3, "normalization constant off by {worst_const:e}");
    println!(
        "acceptance 3 antenna_normalization: PASS (power {worst_power:.2e}, constant {worst_const:.2e})"
    );
}

/// Criterion 4: the direct two-ray form and the factored roll-off form of
/// the power gain agree to 1e-12 relative, and the reflection-contribution
/// bounds hold, over 1000 randomized geometry/pattern draws.
#[test]
fn acceptance_4_channel_model_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0004);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let geom = LinkGeometry::new(
            rng.gen_range(0.5..30.0),
            rng.gen_range(0.5..30.0),
            rng.gen_range(20.0..500.0),
            rng.gen_range(1e-3..2e-2),
        )
        .unwrap();
        let pattern = AntennaPattern::new(rng.gen_range(0.15..2.0)).unwrap();
        let pol = if rng.gen_bool(0.5) { Polarization::Perpendicular } else { Polarization::Horizontal };
        let ground = GroundModel::new(rng.gen_range(2.0..40.0), pol).unwrap();
        let ch = channel(&geom, &pattern, &ground).unwrap();
        worst = worst.max(rel_err(ch.power_gain, ch.power_gain_factored));

        let zeta = ch.reflection_contribution;
        let z2 = ch.compound_reflection.norm_sqr();
        let eps = pattern.sidelobe_ratio;
        assert!(eps * eps * z2 <= zeta && zeta < z2 && z2 < 1.0);
    }
    assert!(worst <= 1e-12, "gain form identity off by {worst:e}");
    println!("acceptance 4 channel_model_identity: PASS (worst {worst:.2e})");
}

fn column_at(table: &Csv, x_name: &str, col: &str, x: f64) -> f64 {
    let xs = table.column(x_name).unwrap();
    let ys = table.column(col).unwrap();
    let i = xs
        .iter()
        .position(|v| (*v - x).abs() < 1e-9)
        .unwrap_or_else(|| panic!("grid point {x} not found"));
    ys[i]
}

/// Criterion 5: figure-level orderings, checked from re-parsed CSV output.
#[test]
fn acceptance_5_figure_orderings() {
    let t0 = Instant::now();
    let dir = tempfile::tempdir().unwrap();

    // rates vs sum power at the reference geometry
    let cfg = ScenarioConfig::default();
    let fig2 = experiments::run_fig2(&cfg, &default_xi_db_grid()).unwrap();
    let path = dir.path().join("fig2.csv");
    std::fs::write(&path, fig2.to_csv_string()).unwrap();
    let fig2 = Csv::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let at = |col: &str, x: f64| column_at(&fig2, "x", col, x);
    assert!(at("direct", 130.0) > at("hd_opt", 130.0));
    assert!(at("direct", 130.0) > at("fd_mu_neg90db", 130.0));
    assert!(at("fd_mu_neg90db", 110.0) > at("hd_opt", 110.0));
    assert!(at("hd_opt", 110.0) > at("fd_mu_neg70db", 110.0));
    assert!(at("hd_opt", 80.0) > at("fd_mu_neg110db", 80.0));

    // rates vs beamwidth at 100 dB
    let fig3 = experiments::run_fig3(&cfg, &default_theta_grid()).unwrap();
    let path = dir.path().join("fig3.csv");
    std::fs::write(&path, fig3.to_csv_string()).unwrap();
    let fig3 = Csv::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let theta = fig3.column("x").unwrap();
    for col in ["direct", "hd_opt", "hd_half", "fd_mu_neg70db", "fd_mu_neg90db", "fd_mu_neg110db"] {
        let ys = fig3.column(col).unwrap();
        for i in 0..ys.len() - 1 {
            assert!(ys[i + 1] < ys[i], "{col} not decreasing at index {i}");
        }
    }
    // sharp beams favor direct transmission over optimized half-duplex
    let direct = fig3.column("direct").unwrap();
    let hd_opt = fig3.column("hd_opt").unwrap();
    assert!(direct[0] > hd_opt[0]);
    // full-duplex at -90 dB beats optimized half-duplex up to pi/6
    let fd90 = fig3.column("fd_mu_neg90db").unwrap();
    for i in 0..theta.len() {
        if theta[i] <= PI / 6.0 + 1e-12 {
            assert!(fd90[i] > hd_opt[i], "fd not above hd_opt at theta {}", theta[i]);
        }
    }

    // ground-reflection contribution at the two relay placements
    let fig4 = experiments::run_fig4(&cfg, &default_theta_grid(), &[60.0, 95.0]).unwrap();
    let path = dir.path().join("fig4.csv");
    std::fs::write(&path, fig4.to_csv_string()).unwrap();
    let fig4 = Csv::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let mut first_gap = std::collections::HashMap::new();
    let mut last_gap = std::collections::HashMap::new();
    for row in &fig4.rows {
        let theta = row[0].as_num().unwrap();
        let scheme = match &row[1] {
            experiments::Cell::Text(s) => s.clone(),
            other => panic!("expected scheme name, got {other:?}"),
        };
        let l1 = row[2].as_num().unwrap();
        let two_ray = row[3].as_num().unwrap();
        let one_ray = row[4].as_num().unwrap();
        if (l1 - 60.0).abs() < 1e-9 {
            assert!(two_ray > one_ray, "2-ray not above 1-ray at l1=60, theta={theta}");
        } else {
            assert!(two_ray < one_ray, "2-ray not below 1-ray at l1=95, theta={theta}");
        }
        let key = (scheme, l1 as i64);
        let gap = (two_ray - one_ray).abs();
        first_gap.entry(key.clone()).or_insert((theta, gap));
        last_gap.insert(key, (theta, gap));
    }
    for (key, (theta_first, gap_first)) in &first_gap {
        let (theta_last, gap_last) = &last_gap[key];
        assert!(theta_first < theta_last);
        assert!(
            gap_first < gap_last,
            "two-ray/one-ray gap does not shrink toward sharp beams for {key:?}"
        );
    }

    // full-duplex gap to its zero-interference limit grows with the budget
    let cfg6 = ScenarioConfig { theta_m: PI / 4.0, l1: 100.0, ..cfg };
    let fig6 = experiments::run_fig6(&cfg6, &default_xi_db_grid(), &default_fig6_mu_db_values()).unwrap();
    let path = dir.path().join("fig6.csv");
    std::fs::write(&path, fig6.to_csv_string()).unwrap();
    let fig6 = Csv::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for mu_db in default_fig6_mu_db_values() {
        let mut kappa_last = 0.0;
        for row in &fig6.rows {
            if (row[1].as_num().unwrap() - mu_db).abs() > 1e-9 {
                continue;
            }
            let fd = row[2].as_num().unwrap();
            let limit = row[3].as_num().unwrap();
            let kappa = (limit * LN_2).exp_m1() / (fd * LN_2).exp_m1();
            assert!(kappa > kappa_last, "kappa not growing at mu {mu_db}");
            kappa_last = kappa;
        }
    }
    // stronger self-interference keeps the rate strictly lower at every budget
    let xs = default_xi_db_grid();
    for &x in &xs {
        let rate_of = |mu_db: f64| {
            fig6.rows
                .iter()
                .find(|r| {
                    (r[0].as_num().unwrap() - x).abs() < 1e-9
                        && (r[1].as_num().unwrap() - mu_db).abs() < 1e-9
                })
                .unwrap()[2]
                .as_num()
                .unwrap()
        };
        assert!(rate_of(-130.0) > rate_of(-70.0));
    }
    // larger mu reaches a given gap to the limit at smaller budgets
    let gap_threshold = 0.5;
    let mut crossing = Vec::new();
    for mu_db in default_fig6_mu_db_values() {
        let mut first = f64::INFINITY;
        for row in &fig6.rows {
            if (row[1].as_num().unwrap() - mu_db).abs() > 1e-9 {
                continue;
            }
            if row[4].as_num().unwrap() >= gap_threshold {
                first = first.min(row[0].as_num().unwrap());
            }
        }
        crossing.push(first);
    }
    for w in crossing.windows(2) {
        assert!(w[0] > w[1], "gap threshold crossings not ordered: {crossing:?}");
    }

    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "figure checks took {elapsed:?}");
    println!("acceptance 5 figure_orderings: PASS ({elapsed:?})");
}

/// Criterion 6: the horizontal decibel gap between the optimized-time-share
/// and equal-slot half-duplex curves at matched mid-range rates is 5 +/- 2 dB.
#[test]
fn acceptance_6_time_sharing_gain() {
    let cfg = ScenarioConfig::default();
    let table = experiments::run_fig2(&cfg, &default_xi_db_grid()).unwrap();
    let xs = table.column("x").unwrap();
    let opt = table.column("hd_opt").unwrap();
    let half = table.column("hd_half").unwrap();
    // invert rate -> budget by linear interpolation on the monotone curves
    let budget_at = |ys: &[f64], r: f64| -> Option<f64> {
        (0..ys.len() - 1)
            .find(|&i| ys[i] <= r && r <= ys[i + 1])
            .map(|i| xs[i] + (r - ys[i]) / (ys[i + 1] - ys[i]) * (xs[i + 1] - xs[i]))
    };
    let mut gaps = Vec::new();
    for rate in [4.0, 5.0, 6.0, 7.0, 8.0] {
        let (a, b) = (budget_at(&opt, rate), budget_at(&half, rate));
        if let (Some(a), Some(b)) = (a, b) {
            gaps.push(b - a);
        }
    }
    assert!(gaps.len() >= 3, "not enough matched rate levels");
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    println!("acceptance 6 time_sharing_gain: measured gaps {gaps:?} dB, mean {mean:.3} dB");
    assert!(
        (3.0..=7.0).contains(&mean),
        "time-sharing gain {mean:.3} dB outside 5 +/- 2 dB (per-rate gaps {gaps:?})"
    );
    println!("acceptance 6 time_sharing_gain: PASS (mean {mean:.3} dB)");
}

/// Criterion 7: inequality and derivative suite with explicit constants.
#[test]
fn acceptance_7_inequality_suite() {
    // elementary chain over 10^4 random arguments
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    for _ in 0..10_000 {
        let x = rng.gen_range(0.0..1e6);
        analysis::log_inequality_chain(x).unwrap();
    }

    // per-hop gain envelope and scheme-rate envelopes over the beamwidth
    let cfg = ScenarioConfig::default();
    let scenario = cfg.relay_scenario().unwrap();
    let grid: Vec<f64> = (0..50)
        .map(|k| PI / 12.0 * (4f64).powf(k as f64 / 49.0))
        .collect();
    let report = analysis::beamwidth_scaling_check(&scenario, &grid).unwrap();
    assert!(report.all_pass(), "beamwidth envelope, margin {}", report.worst_margin);

    // per-hop channel-gain envelope constant from the bounding derivation
    let ground = scenario.ground;
    for geom in [scenario.hop1, scenario.hop2] {
        let b = mmrelay::channel::path_constant(&geom);
        let z = mmrelay::channel::compound_reflection(&geom, &ground).unwrap().norm();
        let tau = MAIN_LOBE_EXCESS_PER_RADIAN / TAU;
        let k = (b * (1.0 + z) / tau) * (b * (1.0 + z) / tau);
        for i in 0..100 {
            let theta_m = PI / 12.0 * (12.0f64).powf(i as f64 / 99.0);
            let pattern = AntennaPattern::new(theta_m).unwrap();
            let ch = channel(&geom, &pattern, &ground).unwrap();
            assert!(ch.power_gain * theta_m * theta_m <= k * (1.0 + 1e-9));
        }
    }

    // self-interference envelope, monotone decay, convexity
    let mu_grid: Vec<f64> = (0..50).map(|k| 10f64.powf(-13.0 + 12.0 * k as f64 / 49.0)).collect();
    let report = analysis::mu_scaling_check(1e-8, 1e-8, 1e10, &mu_grid).unwrap();
    assert!(report.all_pass(), "mu envelope, margin {}", report.worst_margin);

    // analytic derivatives against finite differences with correct signs
    let reference = analysis::derivative_consistency_check(1.0, 1.0, 2.0, 0.5).unwrap();
    assert!(reference.pass());
    let mut worst = reference.max_rel_err;
    for _ in 0..100 {
        let g1 = 10f64.powf(rng.gen_range(-3.0..1.0));
        let g2 = 10f64.powf(rng.gen_range(-3.0..1.0));
        let xi = 10f64.powf(rng.gen_range(-1.0..2.0));
        let mu = 10f64.powf(rng.gen_range(-3.0..-0.05));
        let report = analysis::derivative_consistency_check(g1, g2, xi, mu).unwrap();
        assert!(report.pass(), "derivative check failed at ({g1}, {g2}, {xi}, {mu})");
        worst = worst.max(report.max_rel_err);
    }

    // penalty-ratio monotonicity in the budget
    let xi_grid: Vec<f64> = (0..50).map(|k| 10f64.powf(6.0 * k as f64 / 49.0)).collect();
    let report = analysis::kappa_monotonicity_check(1.0, 1.0, 0.01, &xi_grid).unwrap();
    assert!(report.all_pass(), "kappa monotonicity, margin {}", report.worst_margin);

    // threshold boundary: closed form against bisection over 100 draws that
    // land in the interval branch
    let mut landed = 0;
    let mut worst_mu: f64 = 0.0;
    while landed < 100 {
        let g1 = 10f64.powf(rng.gen_range(-4.0..-1.0));
        let g2 = 10f64.powf(rng.gen_range(-4.0..-1.0));
        let xi = 10f64.powf(rng.gen_range(2.0..6.0));
        let coeffs = FdCoefficients::new(g1, g2, xi);
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
        worst_mu = worst_mu.max(rel_err(mu_low, 0.5 * (lo + hi)));
    }
    assert!(worst_mu <= 1e-6, "threshold boundary vs bisection: {worst_mu:e}");

    println!(
        "acceptance 7 inequality_suite: PASS (derivatives {worst:.2e}, threshold {worst_mu:.2e})"
    );
}

/// Criterion 8: repeated CLI sweeps produce byte-identical files.
#[test]
fn acceptance_8_csv_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_mmrelay"))
            .args(["fig2", "--points", "16", "--out"])
            .arg(out)
            .status()
            .expect("failed to run mmrelay");
        assert!(status.success());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b, "CSV output differs between runs");
    println!("acceptance 8 csv_determinism: PASS ({} bytes)", bytes_a.len());
}
