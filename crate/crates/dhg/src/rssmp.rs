//! Real-valued ricocheted stable processes through their modulating 2x2
//! matrix exponent: both printed forms, the Perron-Frobenius eigenvalue,
//! its derivative at zero, and the hit-zero trichotomy.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{DhgError, Result};
use crate::ricochet::{sigma_b, RicochetParameters, SigmaB};
use crate::specfun::{cos_pi, gamma_ratio, gamma_real, sin_pi};

/// Two-sided ricochet data: the stable pair plus one crossing probability
/// per direction (no relation between them is assumed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RssmpParameters {
    pub alpha: f64,
    pub rho: f64,
    pub p: f64,
    pub phat: f64,
}

impl RssmpParameters {
    pub fn new(alpha: f64, rho: f64, p: f64, phat: f64) -> Result<Self> {
        // Stable-pair admissibility is shared with the one-sided case.
        RicochetParameters::new(alpha, rho, 0.0)?;
        for (name, prob) in [("p", p), ("phat", phat)] {
            if !(0.0..1.0).contains(&prob) {
                return Err(DhgError::Parameter(format!(
                    "{name} must lie in [0, 1) so the modulating chain is irreducible, got {prob}"
                )));
            }
        }
        Ok(RssmpParameters { alpha, rho, p, phat })
    }

    pub fn rho_hat(&self) -> f64 {
        1.0 - self.rho
    }

    pub fn alpha_rho(&self) -> f64 {
        self.alpha * self.rho
    }

    pub fn alpha_rho_hat(&self) -> f64 {
        self.alpha * self.rho_hat()
    }

    /// One-sided view from the positive half-line.
    fn positive_side(&self) -> RicochetParameters {
        RicochetParameters {
            alpha: self.alpha,
            rho: self.rho,
            p: self.p,
        }
    }

    /// One-sided view from the negative half-line (rho and rho-hat swap).
    fn negative_side(&self) -> RicochetParameters {
        RicochetParameters {
            alpha: self.alpha,
            rho: self.rho_hat(),
            p: self.phat,
        }
    }
}

/// 2x2 matrix exponent value; row/column index 0 is the positive half-line
/// state, index 1 the negative one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapExponentValue {
    pub entries: [[Complex64; 2]; 2],
}

/// The two printed forms of the matrix exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatrixForm {
    /// Shifted-sine brackets with a common gamma-pair prefactor.
    SineForm,
    /// Half-argument gamma-ratio products driven by (sigma, b) and the
    /// hatted pair.
    GammaForm,
}

fn matrix_exponent_at(
    rs: &RssmpParameters,
    theta: Complex64,
    form: MatrixForm,
) -> Result<MapExponentValue> {
    let alpha = rs.alpha;
    let it = Complex64::i() * theta;
    let (ar, arh) = (rs.alpha_rho(), rs.alpha_rho_hat());
    match form {
        MatrixForm::SineForm => {
            let pref = gamma_ratio(&[alpha - it, 1.0 + it], &[])? / std::f64::consts::PI;
            let pi = std::f64::consts::PI;
            let e00 = rs.p * sin_pi(arh) - (pi * (arh - it)).sin();
            let e01 = Complex64::new((1.0 - rs.p) * sin_pi(arh), 0.0);
            let e10 = Complex64::new((1.0 - rs.phat) * sin_pi(ar), 0.0);
            let e11 = rs.phat * sin_pi(ar) - (pi * (ar - it)).sin();
            Ok(MapExponentValue {
                entries: [[pref * e00, pref * e01], [pref * e10, pref * e11]],
            })
        }
        MatrixForm::GammaForm => {
            let two_alpha = (2.0f64).powf(alpha);
            let SigmaB { sigma, b } = sigma_b(&rs.positive_side());
            let hat = sigma_b(&rs.negative_side());
            let (sh, bh) = (hat.sigma, hat.b);
            // Theta-dependent numerator shared by the off-diagonal entries.
            let theta_num = gamma_ratio(
                &[
                    (1.0 + it) / 2.0,
                    (2.0 + it) / 2.0,
                    (alpha - it) / 2.0,
                    (1.0 + alpha - it) / 2.0,
                ],
                &[],
            )?;
            let denom = |s: f64, bb: f64| -> Result<Complex64> {
                gamma_ratio(
                    &[],
                    &[
                        Complex64::new(0.5 * (s + bb), 0.0),
                        Complex64::new(0.5 * (s - bb + 2.0), 0.0),
                        Complex64::new(0.5 * (bb - s), 0.0),
                        Complex64::new(0.5 * (2.0 - s - bb), 0.0),
                    ],
                )
            };
            let diag = |s: f64, bb: f64| -> Result<Complex64> {
                let a = gamma_ratio(
                    &[(1.0 + it) / 2.0, (2.0 + it) / 2.0],
                    &[(s + bb + it) / 2.0, (s - bb + it + 2.0) / 2.0],
                )?;
                let c = gamma_ratio(
                    &[(alpha - it) / 2.0, (1.0 + alpha - it) / 2.0],
                    &[(bb - s - it) / 2.0, (2.0 - s - bb - it) / 2.0],
                )?;
                Ok(-two_alpha * a * c)
            };
            let e00 = diag(sigma, b)?;
            let e11 = diag(sh, bh)?;
            let e01 = two_alpha * theta_num * denom(sigma, b)?;
            let e10 = two_alpha * theta_num * denom(sh, bh)?;
            Ok(MapExponentValue {
                entries: [[e00, e01], [e10, e11]],
            })
        }
    }
}

/// Matrix exponent at real theta in either printed form.
pub fn matrix_exponent(
    rs: &RssmpParameters,
    theta: f64,
    form: MatrixForm,
) -> Result<MapExponentValue> {
    matrix_exponent_at(rs, Complex64::new(theta, 0.0), form)
}

/// Perron-Frobenius eigenvalue chi(theta) of the real matrix
/// Psi*(-i theta), for real theta in the neighbourhood of zero where the
/// matrix stays real with positive off-diagonal entries.
pub fn perron_eigenvalue(rs: &RssmpParameters, theta: f64) -> Result<f64> {
    let m = matrix_exponent_at(rs, Complex64::new(0.0, -theta), MatrixForm::SineForm)?;
    let mut real = [[0.0f64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let e = m.entries[i][j];
            if e.im.abs() > 1e-10 * (1.0 + e.re.abs()) {
                return Err(DhgError::Domain(format!(
                    "matrix leaves the real Perron regime at theta = {theta}"
                )));
            }
            real[i][j] = e.re;
        }
    }
    if !(real[0][1] > 0.0 && real[1][0] > 0.0) {
        return Err(DhgError::Domain(format!(
            "off-diagonal entries must stay positive in the Perron regime; \
             got {} and {} at theta = {theta}",
            real[0][1], real[1][0]
        )));
    }
    // Larger root of the 2x2 characteristic polynomial, written with the
    // half-difference to avoid cancellation.
    let half_trace = 0.5 * (real[0][0] + real[1][1]);
    let half_diff = 0.5 * (real[0][0] - real[1][1]);
    let disc = (half_diff * half_diff + real[0][1] * real[1][0]).sqrt();
    Ok(half_trace + disc)
}

/// Closed form of chi'(0):
/// Gamma(alpha) [ (1-phat) sin(pi a r) cos(pi a rh)
///              + (1-p) sin(pi a rh) cos(pi a r) ]
///            / [ (1-phat) sin(pi a r) + (1-p) sin(pi a rh) ].
pub fn chi_prime_zero(rs: &RssmpParameters) -> f64 {
    let (ar, arh) = (rs.alpha_rho(), rs.alpha_rho_hat());
    let num = (1.0 - rs.phat) * sin_pi(ar) * cos_pi(arh)
        + (1.0 - rs.p) * sin_pi(arh) * cos_pi(ar);
    let den = (1.0 - rs.phat) * sin_pi(ar) + (1.0 - rs.p) * sin_pi(arh);
    gamma_real(rs.alpha).expect("alpha in (0,2) is off the gamma poles") * num / den
}

/// Whether the real ricocheted process hits zero continuously. Both printed
/// forms of the criterion are evaluated; `forms_disagree` flags rounding
/// ties between them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HitsZero {
    pub hits_zero: bool,
    pub numerator_form: bool,
    pub sine_comparison_form: bool,
    pub forms_disagree: bool,
}

pub fn hits_zero_continuously(rs: &RssmpParameters) -> HitsZero {
    let (ar, arh) = (rs.alpha_rho(), rs.alpha_rho_hat());
    let numerator_form = (1.0 - rs.phat) * sin_pi(ar) * cos_pi(arh)
        + (1.0 - rs.p) * sin_pi(arh) * cos_pi(ar)
        < 0.0;
    let sine_comparison_form = sin_pi(rs.alpha)
        < rs.phat * sin_pi(ar) * cos_pi(arh) + rs.p * sin_pi(arh) * cos_pi(ar);
    HitsZero {
        hits_zero: numerator_form,
        numerator_form,
        sine_comparison_form,
        forms_disagree: numerator_form != sine_comparison_form,
    }
}

/// Long-term phase at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PhaseClass {
    HitsZero,
    Oscillates,
    DriftsToInfinity,
}

/// Tabulates the drift trichotomy over a (p, phat) grid by the sign of
/// chi'(0); |chi'(0)| below 1e-12 counts as oscillation. Rows are evaluated
/// concurrently and the output is ordered [p index][phat index].
pub fn phase_scan(
    alpha: f64,
    rho: f64,
    p_grid: &[f64],
    phat_grid: &[f64],
) -> Result<Vec<Vec<PhaseClass>>> {
    // Validate the whole grid up front so the parallel map cannot fail.
    for &p in p_grid {
        for &ph in phat_grid {
            RssmpParameters::new(alpha, rho, p, ph)?;
        }
    }
    let rows = crate::exec::map_collect(p_grid, |&p| {
        phat_grid
            .iter()
            .map(|&ph| {
                let rs = RssmpParameters { alpha, rho, p, phat: ph };
                let d = chi_prime_zero(&rs);
                if d.abs() < 1e-12 {
                    PhaseClass::Oscillates
                } else if d < 0.0 {
                    PhaseClass::HitsZero
                } else {
                    PhaseClass::DriftsToInfinity
                }
            })
            .collect()
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rs(alpha: f64, rho: f64, p: f64, phat: f64) -> RssmpParameters {
        RssmpParameters::new(alpha, rho, p, phat).unwrap()
    }

    const REF: (f64, f64, f64, f64) = (1.5, 0.4, 0.3, 0.6);

    #[test]
    fn forms_agree_entrywise() {
        let r = rs(REF.0, REF.1, REF.2, REF.3);
        for theta in [-4.8, -1.0, 0.0, 0.3, 2.0, 5.0] {
            let a = matrix_exponent(&r, theta, MatrixForm::SineForm).unwrap();
            let b = matrix_exponent(&r, theta, MatrixForm::GammaForm).unwrap();
            let scale = a
                .entries
                .iter()
                .flatten()
                .map(|e| e.norm())
                .fold(0.0f64, f64::max);
            for i in 0..2 {
                for j in 0..2 {
                    let d = (a.entries[i][j] - b.entries[i][j]).norm();
                    assert!(
                        d < 1e-10 * scale,
                        "entry ({i},{j}) differs by {d:.3e} at theta = {theta}"
                    );
                }
            }
        }
    }

    #[test]
    fn no_ricochet_reduces_to_killed_diagonal_plus_jump_terms() {
        // p = phat = 0: diagonals are the negated exponents of the stable
        // process killed on crossing, with the one-sided jump law off the
        // diagonal.
        let r = rs(1.5, 0.4, 0.0, 0.0);
        let theta = 1.3;
        let m = matrix_exponent(&r, theta, MatrixForm::SineForm).unwrap();
        let dagger = crate::ricochet::psi_star(
            &crate::ricochet::RicochetParameters::new(1.5, 0.4, 0.0).unwrap(),
            theta,
            crate::ricochet::PsiStarForm::Budd,
        )
        .unwrap();
        assert!((m.entries[0][0] + dagger).norm() < 1e-12 * dagger.norm());
        let dagger_hat = crate::ricochet::psi_star(
            &crate::ricochet::RicochetParameters::new(1.5, 0.6, 0.0).unwrap(),
            theta,
            crate::ricochet::PsiStarForm::Budd,
        )
        .unwrap();
        assert!((m.entries[1][1] + dagger_hat).norm() < 1e-12 * dagger_hat.norm());
    }

    #[test]
    fn rows_sum_to_zero_at_origin() {
        let r = rs(REF.0, REF.1, REF.2, REF.3);
        let m = matrix_exponent(&r, 0.0, MatrixForm::SineForm).unwrap();
        for i in 0..2 {
            let s = m.entries[i][0] + m.entries[i][1];
            assert!(s.norm() < 1e-13, "row {i} sums to {s}");
        }
        // Off-diagonal transition terms carry nonnegative real parts.
        assert!(m.entries[0][1].re >= 0.0 && m.entries[1][0].re >= 0.0);
    }

    #[test]
    fn perron_eigenvalue_zero_at_origin() {
        let r = rs(REF.0, REF.1, REF.2, REF.3);
        let chi0 = perron_eigenvalue(&r, 0.0).unwrap();
        assert!(chi0.abs() < 1e-12, "chi(0) = {chi0}");
    }

    #[test]
    fn perron_matches_quadratic_oracle() {
        // Cross-check the closed-form eigenvalue against the characteristic
        // polynomial root at a nonzero theta.
        let r = rs(REF.0, REF.1, REF.2, REF.3);
        let theta = 0.05;
        let m = matrix_exponent_at(&r, Complex64::new(0.0, -theta), MatrixForm::SineForm).unwrap();
        let (a, b, c, d) = (
            m.entries[0][0].re,
            m.entries[0][1].re,
            m.entries[1][0].re,
            m.entries[1][1].re,
        );
        let chi = perron_eigenvalue(&r, theta).unwrap();
        // chi^2 - (a+d) chi + (ad - bc) = 0
        let resid = chi * chi - (a + d) * chi + (a * d - b * c);
        assert!(resid.abs() < 1e-12 * (1.0 + chi * chi));
        // And it is the larger root.
        let other = (a + d) - chi;
        assert!(chi >= other);
    }

    #[test]
    fn chi_prime_matches_finite_difference() {
        let r = rs(REF.0, REF.1, REF.2, REF.3);
        let h = 1e-5;
        let fd =
            (perron_eigenvalue(&r, h).unwrap() - perron_eigenvalue(&r, -h).unwrap()) / (2.0 * h);
        assert_relative_eq!(chi_prime_zero(&r), fd, epsilon = 1e-6);
    }

    #[test]
    fn equal_probability_identity() {
        // p = phat: chi'(0) (sin(pi a r) + sin(pi a rh)) = Gamma(alpha) sin(pi alpha)
        for (alpha, rho, p) in [(1.5, 0.4, 0.3), (0.7, 0.6, 0.8), (1.2, 0.5, 0.0)] {
            let r = rs(alpha, rho, p, p);
            let lhs = chi_prime_zero(&r) * (sin_pi(r.alpha_rho()) + sin_pi(r.alpha_rho_hat()));
            let rhs = gamma_real(alpha).unwrap() * sin_pi(alpha);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-10);
        }
    }

    #[test]
    fn small_products_drift_upward() {
        // alpha rho and alpha rho-hat both below 1/2 force chi'(0) > 0.
        for (alpha, rho) in [(0.4, 0.3), (0.9, 0.5), (0.95, 0.5)] {
            for (p, ph) in [(0.0, 0.0), (0.5, 0.9), (0.99, 0.2)] {
                let r = rs(alpha, rho, p, ph);
                assert!(r.alpha_rho() < 0.5 && r.alpha_rho_hat() < 0.5);
                assert!(chi_prime_zero(&r) > 0.0);
            }
        }
    }

    #[test]
    fn hit_zero_forms_and_necessity() {
        let r = rs(REF.0, REF.1, REF.2, REF.3);
        let h = hits_zero_continuously(&r);
        assert!(!h.forms_disagree);
        // Sign matches -chi'(0) (same numerator, positive denominator).
        assert_eq!(h.hits_zero, chi_prime_zero(&r) < 0.0);
        // Paper's balancing example: alpha rho-hat in (1/2, 1), phat near 0,
        // p near 1 hits zero even though alpha < 1.
        let balance = rs(0.95, 0.1 / 0.95, 0.98, 0.02);
        assert!(balance.alpha < 1.0 && balance.alpha_rho_hat() > 0.5);
        assert!(hits_zero_continuously(&balance).hits_zero);
        // Necessity: hitting zero requires one product above 1/2.
        for alpha_i in 1..14 {
            for rho_i in 1..10 {
                let alpha = 0.14 * alpha_i as f64;
                let rho = 0.1 * rho_i as f64;
                if RssmpParameters::new(alpha, rho, 0.9, 0.9).is_err() || alpha == 1.0 {
                    continue;
                }
                for (p, ph) in [(0.0, 0.9), (0.9, 0.0), (0.5, 0.5), (0.99, 0.99)] {
                    let r = rs(alpha, rho, p, ph);
                    if hits_zero_continuously(&r).hits_zero {
                        assert!(
                            r.alpha_rho() > 0.5 || r.alpha_rho_hat() > 0.5,
                            "necessity violated at {r:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn phase_scan_small_alpha_all_drift() {
        let grid: Vec<f64> = (0..6).map(|i| i as f64 * 0.19).collect();
        let scan = phase_scan(0.4, 0.45, &grid, &grid).unwrap();
        for row in &scan {
            for cell in row {
                assert_eq!(*cell, PhaseClass::DriftsToInfinity);
            }
        }
    }

    #[test]
    fn phase_scan_diagonal_constant_and_consistent() {
        // Along p = phat the classification depends only on sign(sin(pi alpha)).
        let grid: Vec<f64> = (0..5).map(|i| i as f64 * 0.24).collect();
        let scan = phase_scan(1.5, 0.4, &grid, &grid).unwrap();
        let diag: Vec<PhaseClass> = (0..grid.len()).map(|i| scan[i][i]).collect();
        assert!(diag.iter().all(|c| *c == diag[0]));
        // sin(1.5 pi) < 0: the p = phat identity forces a negative drift.
        assert_eq!(diag[0], PhaseClass::HitsZero);
        // Grid cells agree with pointwise hit-zero evaluations.
        for (i, &p) in grid.iter().enumerate() {
            for (j, &ph) in grid.iter().enumerate() {
                let hz = hits_zero_continuously(&rs(1.5, 0.4, p, ph)).hits_zero;
                assert_eq!(scan[i][j] == PhaseClass::HitsZero, hz);
            }
        }
    }

    #[test]
    fn perron_regime_guard() {
        let r = rs(1.5, 0.4, 0.3, 0.6);
        // theta beyond the gamma-pair window (-1, alpha) leaves the regime.
        assert!(perron_eigenvalue(&r, 1.8).is_err());
    }
}
