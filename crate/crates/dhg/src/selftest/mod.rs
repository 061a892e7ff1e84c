//! Acceptance suite: every release criterion as an executable check with a
//! pinned tolerance, runnable both from `cargo test` (the `acceptance`
//! integration target) and the CLI `selftest` subcommand.

pub mod oracles;
pub mod sampling;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::Serialize;

use crate::dhgprocess::{
    gaussian_component, levy_density_residue_expansion, levy_density_two_sided,
    log_abs_characteristic_exponent, DhgParameters,
};
use crate::doublebeta::{classify, laplace_exponent, residue_series, Quadruple};
use crate::expfunctional::MellinSpec;
use crate::montecarlo::{
    estimate_map_drift, estimate_survival_rate, estimate_sup_moment, simulate_ricochet_batch,
    simulate_ricochet_batch_sequential, sup_moment_enclosure, SimulationConfig,
};
use crate::ricochet::{
    glued_exponent, psi_star, sigma_b, sup_law_laplace, wiener_hopf_condition, GluedParameters,
    PsiStarForm, RicochetParameters,
};
use crate::rssmp::{
    chi_prime_zero, matrix_exponent, perron_eigenvalue, MatrixForm, RssmpParameters,
};
use crate::specfun::{gamma_real, sin_pi, SeriesControl};
use crate::support::fit::{linear_fit, power_tail_extrapolate};
use sampling::Sampler;

/// Suite size: `Quick` shrinks sample counts for a fast smoke run, `Full`
/// runs the release sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Level {
    Quick,
    Full,
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub runtime: Duration,
}

impl CriterionReport {
    fn new(id: usize, name: &'static str, passed: bool, detail: String, t0: Instant) -> Self {
        CriterionReport { id, name, passed, detail, runtime: t0.elapsed() }
    }
}

/// Renders the deterministic pass/fail block (no timings, byte-stable).
pub fn render(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(
            out,
            "{} criterion {:>2} [{}] {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.detail
        );
    }
    let n_pass = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "{}/{} criteria passed", n_pass, reports.len());
    out
}

const SEED: u64 = 20_260_809;

/// Runs the full acceptance battery in order.
pub fn run(level: Level) -> Vec<CriterionReport> {
    vec![
        criterion_1_three_forms(level),
        criterion_2_laplace_identity(level),
        criterion_3_potential_identity(level),
        criterion_4_residue_equivalence(level),
        criterion_5_pick_gate(level),
        criterion_6_mellin_functional_equation(level),
        criterion_7_map_suite(level),
        criterion_8_wh_condition_gate(level),
        criterion_9_glued_reduction(level),
        criterion_10_monte_carlo(level),
        criterion_11_asymptotic_index(level),
        criterion_12_determinism(level),
    ]
}

fn criterion_1_three_forms(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let n = match level {
        Level::Quick => 40,
        Level::Full => 200,
    };
    let mut sampler = Sampler::new(SEED);
    let mut worst = 0.0f64;
    let thetas: Vec<f64> = (0..41).map(|i| -10.0 + 0.5 * i as f64).collect();
    for _ in 0..n {
        let rp = sampler.ricochet();
        for &theta in &thetas {
            let vals = [
                psi_star(&rp, theta, PsiStarForm::Budd),
                psi_star(&rp, theta, PsiStarForm::GammaProduct),
                psi_star(&rp, theta, PsiStarForm::Construction),
            ];
            let vals: Vec<Complex64> = match vals.into_iter().collect() {
                Ok(v) => v,
                Err(e) => {
                    return CriterionReport::new(
                        1,
                        "three-form exponent agreement",
                        false,
                        format!("evaluation error: {e}"),
                        t0,
                    )
                }
            };
            let scale = vals.iter().map(|v| v.norm()).fold(1e-14, f64::max);
            for i in 0..3 {
                for j in i + 1..3 {
                    worst = worst.max((vals[i] - vals[j]).norm() / scale);
                }
            }
        }
    }
    let within_budget = t0.elapsed() < Duration::from_secs(30);
    CriterionReport::new(
        1,
        "three-form exponent agreement",
        worst < 1e-9 && within_budget,
        format!("max relative discrepancy {worst:.3e} over {n} parameter sets (tol 1e-9)"),
        t0,
    )
}

fn criterion_2_laplace_identity(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let n = match level {
        Level::Quick => 5,
        Level::Full => 20,
    };
    let mut sampler = Sampler::new(SEED + 2);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let q = sampler.interior_quadruple();
        for z in [0.5, 1.0, 2.0, 5.0] {
            match oracles::laplace_identity_residual(&q, z) {
                Ok(r) => worst = worst.max(r),
                Err(e) => {
                    return CriterionReport::new(
                        2,
                        "subordinator Laplace identity",
                        false,
                        format!("oracle error at {q:?}, z = {z}: {e}"),
                        t0,
                    )
                }
            }
        }
    }
    let within_budget = t0.elapsed() < Duration::from_secs(120);
    CriterionReport::new(
        2,
        "subordinator Laplace identity",
        worst < 1e-6 && within_budget,
        format!("max relative residual {worst:.3e} over {n} quadruples (tol 1e-6)"),
        t0,
    )
}

fn criterion_3_potential_identity(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let n = match level {
        Level::Quick => 5,
        Level::Full => 20,
    };
    let mut sampler = Sampler::new(SEED + 2);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let q = sampler.interior_quadruple();
        for z in [0.5, 1.0, 2.0, 5.0] {
            match oracles::potential_identity_residual(&q, z) {
                Ok(r) => worst = worst.max(r),
                Err(e) => {
                    return CriterionReport::new(
                        3,
                        "potential-density identity",
                        false,
                        format!("oracle error at {q:?}, z = {z}: {e}"),
                        t0,
                    )
                }
            }
        }
    }
    CriterionReport::new(
        3,
        "potential-density identity",
        worst < 1e-6,
        format!("max relative residual {worst:.3e} over {n} quadruples (tol 1e-6)"),
        t0,
    )
}

fn criterion_4_residue_equivalence(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let (n_quads, n_pairs) = match level {
        Level::Quick => (5, 2),
        Level::Full => (20, 5),
    };
    let run = || -> crate::error::Result<(f64, f64)> {
        let mut sampler = Sampler::new(SEED + 4);
        let mut worst_phi = 0.0f64;
        for _ in 0..n_quads {
            let q = sampler.interior_quadruple();
            let gap = q.canonical().sum_gap();
            for z in [1.0, 2.0] {
                let exact = laplace_exponent(&q, Complex64::new(z, 0.0))?.re;
                let samples: Vec<(f64, f64)> = [400usize, 800, 1600, 3200, 6400]
                    .iter()
                    .map(|&m| residue_series(&q, m).map(|s| (m as f64, s.laplace_exponent(z))))
                    .collect::<crate::error::Result<_>>()?;
                let est = power_tail_extrapolate(&samples, gap - 1.0);
                worst_phi = worst_phi.max((est - exact).abs() / exact.abs());
            }
        }
        let ctl = SeriesControl::default();
        let mut worst_pi = 0.0f64;
        for _ in 0..n_pairs {
            let p = sampler.interior_pair();
            // The expansion tail decays like e^{-rho_N x}: the smallest
            // abscissa needs a deeper truncation than the nominal 300.
            for &(x, n_poles) in &[(0.1f64, 800usize), (0.5, 300), (1.0, 300), (5.0, 300)] {
                for sign in [1.0, -1.0] {
                    let side = if sign > 0.0 { p } else { p.swapped() };
                    let (poles, coefs) = levy_density_residue_expansion(&side, n_poles)?;
                    let direct = levy_density_two_sided(&p, sign * x, &ctl)?;
                    let series: f64 = poles
                        .iter()
                        .zip(&coefs)
                        .map(|(rho, c)| c * (-rho * x).exp())
                        .sum();
                    worst_pi = worst_pi.max((direct - series).abs() / series.abs());
                }
            }
        }
        Ok((worst_phi, worst_pi))
    };
    match run() {
        Ok((worst_phi, worst_pi)) => CriterionReport::new(
            4,
            "residue-series equivalence",
            worst_phi < 1e-8 && worst_pi < 1e-8,
            format!(
                "exponent reconstruction {worst_phi:.3e}, two-sided density {worst_pi:.3e} (tol 1e-8)"
            ),
            t0,
        ),
        Err(e) => CriterionReport::new(
            4,
            "residue-series equivalence",
            false,
            format!("evaluation error: {e}"),
            t0,
        ),
    }
}

fn criterion_5_pick_gate(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let (n_quads, n_points) = match level {
        Level::Quick => (6, 200),
        Level::Full => (20, 500),
    };
    let mut sampler = Sampler::new(SEED + 5);
    let mut min_im = f64::INFINITY;
    for _ in 0..n_quads {
        let q = sampler.interior_quadruple();
        for _ in 0..n_points {
            let z = sampler.upper_half_plane();
            match laplace_exponent(&q, z) {
                Ok(v) => min_im = min_im.min(v.im),
                Err(e) => {
                    return CriterionReport::new(
                        5,
                        "Pick-property gate",
                        false,
                        format!("evaluation error: {e}"),
                        t0,
                    )
                }
            }
        }
    }
    // Non-interlacing control must leave the upper half-plane somewhere.
    let control = Quadruple::new(0.5, 1.8, 0.2, 0.9).unwrap();
    let mut control_negative = false;
    for _ in 0..n_points {
        let z = sampler.upper_half_plane();
        if let Ok(v) = laplace_exponent(&control, z) {
            if v.im < 0.0 {
                control_negative = true;
                break;
            }
        }
    }
    CriterionReport::new(
        5,
        "Pick-property gate",
        min_im > 0.0 && control_negative,
        format!(
            "min Im Phi = {min_im:.3e} on the interior set; control leaves the half-plane: {control_negative}"
        ),
        t0,
    )
}

fn criterion_6_mellin_functional_equation(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let (n_specs, n_points) = match level {
        Level::Quick => (2, 25),
        Level::Full => (5, 50),
    };
    let cs = [0.6, 0.8, 1.0, 1.4, 2.0];
    let mut sampler = Sampler::new(SEED + 6);
    let mut worst_fe = 0.0f64;
    let mut worst_norm = 0.0f64;
    let mut worst_slope = 0.0f64;
    for i in 0..n_specs {
        let params = sampler.interior_pair();
        let c = cs[i % cs.len()];
        let spec = match MellinSpec::new(params, c) {
            Ok(s) => s,
            Err(e) => {
                return CriterionReport::new(
                    6,
                    "Mellin functional equation",
                    false,
                    format!("spec construction failed: {e}"),
                    t0,
                )
            }
        };
        let mut run = || -> crate::error::Result<()> {
            let one = spec.mellin(Complex64::new(1.0, 0.0))?;
            worst_norm = worst_norm.max((one - 1.0).norm());
            let top = spec.params().minus.gamma * c;
            for k in 1..=n_points {
                let s = top * k as f64 / (n_points as f64 + 1.0);
                let ms = spec.mellin(Complex64::new(s, 0.0))?.re;
                let ms1 = spec.mellin(Complex64::new(s + 1.0, 0.0))?.re;
                let psi = spec.psi_c(-s)?;
                worst_fe = worst_fe.max((ms1 + s * ms / psi).abs() / ms1.abs());
            }
            // Strip-decay slope against the predicted rate.
            let predicted = spec.decay_rate();
            let x = 0.5 * spec.strip_upper();
            let ys: Vec<f64> = (0..7).map(|i| 50.0 + 25.0 * i as f64).collect();
            let lnm: Vec<f64> = ys
                .iter()
                .map(|y| spec.strip_decay(x, *y).map(|v| v.0))
                .collect::<crate::error::Result<_>>()?;
            let (slope, _) = linear_fit(&ys, &lnm);
            worst_slope = worst_slope.max((slope - predicted).abs() / predicted.abs());
            Ok(())
        };
        if let Err(e) = run() {
            return CriterionReport::new(
                6,
                "Mellin functional equation",
                false,
                format!("evaluation error: {e}"),
                t0,
            );
        }
    }
    CriterionReport::new(
        6,
        "Mellin functional equation",
        worst_fe < 1e-8 && worst_norm < 1e-12 && worst_slope < 0.05,
        format!(
            "functional-equation residual {worst_fe:.3e} (tol 1e-8), |M(1)-1| = {worst_norm:.3e}, \
             decay-slope relative error {worst_slope:.4} (tol 0.05)"
        ),
        t0,
    )
}

fn criterion_7_map_suite(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let n = match level {
        Level::Quick => 30,
        Level::Full => 100,
    };
    let mut sampler = Sampler::new(SEED + 7);
    let thetas: Vec<f64> = (0..21).map(|i| -5.0 + 0.5 * i as f64).collect();
    let mut worst_form = 0.0f64;
    let mut worst_chi0 = 0.0f64;
    let mut worst_fd = 0.0f64;
    let mut worst_identity = 0.0f64;
    for i in 0..n {
        let rs = sampler.rssmp();
        let mut run = || -> crate::error::Result<()> {
            for &theta in &thetas {
                let a = matrix_exponent(&rs, theta, MatrixForm::SineForm)?;
                let b = matrix_exponent(&rs, theta, MatrixForm::GammaForm)?;
                let scale = a
                    .entries
                    .iter()
                    .flatten()
                    .map(|e| e.norm())
                    .fold(1e-300, f64::max);
                for r in 0..2 {
                    for c in 0..2 {
                        worst_form = worst_form
                            .max((a.entries[r][c] - b.entries[r][c]).norm() / scale);
                    }
                }
            }
            worst_chi0 = worst_chi0.max(perron_eigenvalue(&rs, 0.0)?.abs());
            if i % 3 == 0 {
                let h = 1e-5;
                let fd = (perron_eigenvalue(&rs, h)? - perron_eigenvalue(&rs, -h)?) / (2.0 * h);
                worst_fd = worst_fd.max((fd - chi_prime_zero(&rs)).abs());
            }
            // p = phat identity.
            let eq = RssmpParameters::new(rs.alpha, rs.rho, rs.p, rs.p)?;
            let lhs = chi_prime_zero(&eq) * (sin_pi(eq.alpha_rho()) + sin_pi(eq.alpha_rho_hat()));
            let rhs = gamma_real(eq.alpha)? * sin_pi(eq.alpha);
            worst_identity = worst_identity.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
            Ok(())
        };
        if let Err(e) = run() {
            return CriterionReport::new(
                7,
                "matrix-exponent suite",
                false,
                format!("evaluation error: {e}"),
                t0,
            );
        }
    }
    CriterionReport::new(
        7,
        "matrix-exponent suite",
        worst_form < 1e-9 && worst_chi0 < 1e-12 && worst_fd < 1e-6 && worst_identity < 1e-10,
        format!(
            "form agreement {worst_form:.3e}, |chi(0)| {worst_chi0:.3e}, \
             chi'(0) fd gap {worst_fd:.3e}, equal-probability identity {worst_identity:.3e}"
        ),
        t0,
    )
}

fn criterion_8_wh_condition_gate(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let n = match level {
        Level::Quick => 2_000,
        Level::Full => 10_000,
    };
    let mut sampler = Sampler::new(SEED + 8);
    let mut disagreements = 0usize;
    let mut gate_mismatches = 0usize;
    for _ in 0..n {
        let rp = sampler.ricochet();
        let cond = wiener_hopf_condition(&rp);
        if cond.forms_disagree {
            disagreements += 1;
        }
        let minus_quad = {
            let SigmaBLocal { sigma, b } = {
                let sb = sigma_b(&rp);
                SigmaBLocal { sigma: sb.sigma, b: sb.b }
            };
            Quadruple {
                alpha: 0.5 * rp.alpha,
                beta: 0.5 * (1.0 + rp.alpha),
                gamma: 0.5 * (b - sigma),
                delta: 0.5 * (2.0 - sigma - b),
            }
        };
        if classify(&minus_quad).is_complete_bernstein() != cond.holds {
            gate_mismatches += 1;
        }
    }
    struct SigmaBLocal {
        sigma: f64,
        b: f64,
    }
    // Boundary exactness.
    let b_p0 = sigma_b(&RicochetParameters::new(1.5, 0.4, 0.0).unwrap()).b;
    let p1 = sigma_b(&RicochetParameters::new(1.5, 0.4, 1.0).unwrap());
    let b_p1_err = (p1.b - p1.sigma.abs()).abs();
    CriterionReport::new(
        8,
        "Wiener-Hopf condition gate",
        disagreements == 0 && gate_mismatches == 0 && b_p0 == 0.5 && b_p1_err < 1e-14,
        format!(
            "{n} samples: {disagreements} form disagreements, {gate_mismatches} classify-gate \
             mismatches; b(p=0) = {b_p0}, |b - |sigma||(p=1) = {b_p1_err:.2e}"
        ),
        t0,
    )
}

fn criterion_9_glued_reduction(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let _ = level;
    let thetas: Vec<f64> = (0..41).map(|i| -10.0 + 0.5 * i as f64).collect();
    let mut worst = 0.0f64;
    let run = || -> crate::error::Result<f64> {
        let mut worst = 0.0f64;
        let gp = GluedParameters::new(1.2, 0.0)?;
        let reference = RicochetParameters::new(1.2, 0.5, 0.0)?;
        for &theta in &thetas {
            let a = glued_exponent(&gp, theta)?;
            let b = psi_star(&reference, theta, PsiStarForm::Construction)?;
            worst = worst.max((a - b).norm() / b.norm().max(1e-14));
        }
        Ok(worst)
    };
    match run() {
        Ok(w) => worst = worst.max(w),
        Err(e) => {
            return CriterionReport::new(
                9,
                "glued-process reduction",
                false,
                format!("evaluation error: {e}"),
                t0,
            )
        }
    }
    let mut factors_ok = true;
    for (alpha, q) in [(0.8, 0.3), (1.2, 0.5), (1.6, 0.9)] {
        let gp = GluedParameters::new(alpha, q).unwrap();
        let (f1, f2) = gp.factors();
        factors_ok &= classify(&f1).is_complete_bernstein()
            && classify(&f2).is_complete_bernstein();
    }
    CriterionReport::new(
        9,
        "glued-process reduction",
        worst < 1e-10 && factors_ok,
        format!("q = 0 reduction discrepancy {worst:.3e} (tol 1e-10); factor gates pass: {factors_ok}"),
        t0,
    )
}

fn criterion_10_monte_carlo(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let (n_paths, t_max, n_drift) = match level {
        Level::Quick => (4_000, 60.0, 300),
        Level::Full => (100_000, 100.0, 1_200),
    };
    let run = || -> crate::error::Result<(String, bool)> {
        let rp = RicochetParameters::new(1.5, 0.4, 0.5)?;
        let cfg = SimulationConfig { seed: SEED, n_paths, dt: 1e-3, t_max, x0: 1.0 };
        let records = simulate_ricochet_batch(&rp, &cfg)?;
        let mut ok = true;
        let mut detail = String::new();
        for z in [0.5, 1.0, 2.0] {
            let est = estimate_sup_moment(&records, cfg.x0, z);
            let (lo, hi) = sup_moment_enclosure(&records, cfg.x0, z);
            let exact = sup_law_laplace(&rp, z)?
                .finite()
                .expect("finite branch for p < 1");
            // The truncated-path enclosure widens the pure 4 SE band.
            let pass = exact >= lo - 4.0 * est.std_error && exact <= hi + 4.0 * est.std_error;
            ok &= pass;
            let _ = write!(
                detail,
                "sup z={z}: dev {:+.2} SE; ",
                (est.mean - exact) / est.std_error
            );
        }
        let surv = estimate_survival_rate(&records);
        let surv_pass = (surv.mean - rp.p).abs() <= 3.0 * surv.std_error;
        ok &= surv_pass;
        let _ = write!(
            detail,
            "survival dev {:+.2} SE; ",
            (surv.mean - rp.p) / surv.std_error
        );
        // Drift sign of the two-sided process.
        let rs = RssmpParameters::new(1.5, 0.4, 0.3, 0.6)?;
        let dcfg = SimulationConfig {
            seed: SEED + 1,
            n_paths: n_drift,
            dt: 1e-3,
            t_max: 40.0,
            x0: 1.0,
        };
        let slope = estimate_map_drift(&rs, &dcfg, 0.05, 20.0)?;
        let chi = chi_prime_zero(&rs);
        let drift_pass = if chi < 0.0 {
            slope.mean + 3.0 * slope.std_error < 0.0
        } else {
            slope.mean - 3.0 * slope.std_error > 0.0
        };
        ok &= drift_pass;
        let _ = write!(
            detail,
            "drift sign resolved: {drift_pass} (slope {:+.3} +- {:.3}, chi'(0) = {chi:+.3})",
            slope.mean, slope.std_error
        );
        Ok((detail, ok))
    };
    match run() {
        Ok((detail, ok)) => {
            let within_budget = t0.elapsed() < Duration::from_secs(300);
            CriterionReport::new(10, "Monte Carlo cross-validation", ok && within_budget, detail, t0)
        }
        Err(e) => CriterionReport::new(
            10,
            "Monte Carlo cross-validation",
            false,
            format!("simulation error: {e}"),
            t0,
        ),
    }
}

fn criterion_11_asymptotic_index(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let _ = level;
    let mut sampler = Sampler::new(SEED + 11);
    let mut pairs: Vec<DhgParameters> = (0..4).map(|_| sampler.interior_pair()).collect();
    // Gaussian boundary pair: both factors tie onto alpha+beta = gamma+delta+1.
    let gauss = DhgParameters::new(
        Quadruple::new(0.5, 1.2, 0.2, 0.5).unwrap(),
        Quadruple::new(0.4, 1.1, 0.1, 0.4).unwrap(),
    )
    .unwrap();
    pairs.push(gauss);
    let thetas: Vec<f64> = (0..21)
        .map(|i| 1.0e3 * (100.0f64).powf(i as f64 / 20.0))
        .collect();
    let xs: Vec<f64> = thetas.iter().map(|t| t.ln()).collect();
    let mut worst = 0.0f64;
    let mut gauss_slope = f64::NAN;
    for (i, p) in pairs.iter().enumerate() {
        let ys: Result<Vec<f64>, _> = thetas
            .iter()
            .map(|t| log_abs_characteristic_exponent(p, *t))
            .collect();
        let ys = match ys {
            Ok(v) => v,
            Err(e) => {
                return CriterionReport::new(
                    11,
                    "asymptotic growth index",
                    false,
                    format!("evaluation error: {e}"),
                    t0,
                )
            }
        };
        let (slope, _) = linear_fit(&xs, &ys);
        worst = worst.max((slope - p.growth_index()).abs());
        if i == pairs.len() - 1 {
            gauss_slope = slope;
            debug_assert_eq!(gaussian_component(p), 2.0);
        }
    }
    CriterionReport::new(
        11,
        "asymptotic growth index",
        worst < 0.02 && (gauss_slope - 2.0).abs() < 0.02,
        format!("max slope error {worst:.4} (tol 0.02); Gaussian-boundary slope {gauss_slope:.4}"),
        t0,
    )
}

fn criterion_12_determinism(level: Level) -> CriterionReport {
    let t0 = Instant::now();
    let n = match level {
        Level::Quick => 128,
        Level::Full => 1024,
    };
    let rp = RicochetParameters::new(1.5, 0.4, 0.5).unwrap();
    let cfg = SimulationConfig { seed: SEED, n_paths: n, dt: 1e-2, t_max: 5.0, x0: 1.0 };
    let run = || -> crate::error::Result<bool> {
        let a = simulate_ricochet_batch(&rp, &cfg)?;
        let b = simulate_ricochet_batch(&rp, &cfg)?;
        let s = simulate_ricochet_batch_sequential(&rp, &cfg)?;
        let mut same = a == b && a == s;
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(2)
                .build()
                .map_err(|e| crate::error::DhgError::Parameter(e.to_string()))?;
            let p2 = pool.install(|| simulate_ricochet_batch(&rp, &cfg))?;
            same &= a == p2;
        }
        // A deterministic analytic sub-report must also render identically.
        let lines = |seed: u64| -> String {
            let mut s = Sampler::new(seed);
            let mut out = String::new();
            for _ in 0..32 {
                let rp = s.ricochet();
                let c = wiener_hopf_condition(&rp);
                let _ = write!(out, "{};{};{};", rp.alpha, c.holds, c.interval_form);
            }
            out
        };
        same &= lines(SEED) == lines(SEED);
        Ok(same)
    };
    match run() {
        Ok(same) => CriterionReport::new(
            12,
            "determinism across backends",
            same,
            format!("{n}-path batches identical across reruns, backends and pool sizes: {same}"),
            t0,
        ),
        Err(e) => CriterionReport::new(
            12,
            "determinism across backends",
            false,
            format!("simulation error: {e}"),
            t0,
        ),
    }
}
