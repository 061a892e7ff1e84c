//! Independent numeric oracles used by the acceptance suite: adaptive
//! quadrature of the Laplace-transform identities with analytic head
//! corrections, and log-log growth fits.
//!
//! These deliberately do not share evaluation paths with the quantities
//! they check: densities come from the hypergeometric series, exponents
//! from gamma ratios, and the bridge between them is plain quadrature.

use num_complex::Complex64;

use crate::doublebeta::{
    exponent_sum_gap, laplace_exponent, levy_density, potential_density, Quadruple, S_MIN,
};
use crate::error::Result;
use crate::specfun::{gamma_real, SeriesControl};
use crate::support::quadrature::integrate;

/// Relative residual of Phi(0) + int (1 - e^{-z s}) f(s) ds = Phi(z).
pub fn laplace_identity_residual(q: &Quadruple, z: f64) -> Result<f64> {
    let ctl = SeriesControl::default();
    let c = q.canonical();
    let gap = exponent_sum_gap(&c)?;
    let phi = |w: f64| laplace_exponent(&c, Complex64::new(w, 0.0)).map(|v| v.re);
    // Head on [0, s_min]: f(s) ~ (gap / Gamma(1-gap)) s^{-1-gap}.
    let coef = gap / gamma_real(1.0 - gap)?;
    let h = S_MIN;
    let mut head = 0.0;
    let mut zk = z;
    let mut k_fact = 1.0;
    for k in 1..=4u32 {
        let kf = f64::from(k);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        head += sign * zk * h.powf(kf - gap) / (k_fact * (kf - gap));
        zk *= z;
        k_fact *= kf + 1.0;
    }
    head *= coef;
    // Body over [s_min, s_max] in logarithmic coordinates.
    let s_max = 45.0 / c.alpha + 10.0;
    let body = integrate(
        |u| {
            let s = u.exp();
            let f = levy_density(&c, s, &ctl).unwrap_or(f64::NAN);
            (-(-z * s).exp_m1()) * f * s
        },
        h.ln(),
        s_max.ln(),
        1e-9,
        1e-12,
    )?;
    let lhs = phi(0.0)? + head + body;
    let rhs = phi(z)?;
    Ok((lhs - rhs).abs() / rhs.abs())
}

/// Relative residual of int e^{-z x} u(x) dx = 1 / Phi(z).
pub fn potential_identity_residual(q: &Quadruple, z: f64) -> Result<f64> {
    let ctl = SeriesControl::default();
    let c = q.canonical();
    let gap = exponent_sum_gap(&c)?;
    // Head on [0, x_min]: u(x) ~ x^{gap-1} / Gamma(gap).
    let h = S_MIN;
    let mut head = 0.0;
    let mut zk = 1.0;
    let mut k_fact = 1.0;
    for k in 0..=3u32 {
        let kf = f64::from(k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        head += sign * zk * h.powf(gap + kf) / (k_fact * (gap + kf));
        zk *= z;
        k_fact *= kf + 1.0;
    }
    head /= gamma_real(gap)?;
    let x_max = 45.0 / c.gamma.max(0.05) + 10.0;
    let body = integrate(
        |w| {
            let x = w.exp();
            let u = potential_density(&c, x, &ctl).unwrap_or(f64::NAN);
            (-z * x).exp() * u * x
        },
        h.ln(),
        x_max.ln(),
        1e-9,
        1e-12,
    )?;
    let lhs = head + body;
    let rhs = 1.0 / laplace_exponent(&c, Complex64::new(z, 0.0))?.re;
    Ok((lhs - rhs).abs() / rhs.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_on_the_reference_quadruple() {
        let q = Quadruple::new(0.5, 1.1, 0.2, 0.9).unwrap();
        for z in [0.5, 1.0, 2.0, 5.0] {
            let r1 = laplace_identity_residual(&q, z).unwrap();
            assert!(r1 < 1e-6, "Laplace identity residual {r1:.3e} at z = {z}");
            let r2 = potential_identity_residual(&q, z).unwrap();
            assert!(r2 < 1e-6, "potential identity residual {r2:.3e} at z = {z}");
        }
    }

    #[test]
    fn infinite_activity_divergence_rate() {
        // int_{s}^{1} f ~ (C / gap) s^{-gap}: the mass ratio between s and
        // 10 s approaches 10^{gap}.
        let q = Quadruple::new(0.5, 1.1, 0.2, 0.9).unwrap();
        let ctl = SeriesControl::default();
        let mass = |s_lo: f64| {
            integrate(
                |u| {
                    let s = u.exp();
                    levy_density(&q, s, &ctl).unwrap() * s
                },
                s_lo.ln(),
                0.0,
                1e-9,
                1e-12,
            )
            .unwrap()
        };
        let m4 = mass(1e-4);
        let m5 = mass(1e-5);
        let gap = exponent_sum_gap(&q).unwrap();
        let ratio = m5 / m4;
        assert!(
            (ratio - 10f64.powf(gap)).abs() < 0.05 * 10f64.powf(gap),
            "divergence ratio {ratio} vs 10^gap = {}",
            10f64.powf(gap)
        );
    }
}
