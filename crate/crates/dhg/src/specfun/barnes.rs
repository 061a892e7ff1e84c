//! Barnes double gamma function G(z; tau).
//!
//! G is the order-two entire function with zeros exactly on the lattice
//! z = -(m tau + n), m, n >= 0, defined through the Weierstrass-type double
//! product with quadratic convergence factors
//!
//!   G(z;tau) = (z/tau) e^{a z/tau + b z^2/(2 tau)}
//!              prod_{m,n >= 0}' (1 + z/(m tau + n))
//!                               e^{-z/(m tau + n) + z^2/(2 (m tau + n)^2)},
//!
//! normalised so that G(1; tau) = 1 and satisfying the quasi-periodicity
//! relations
//!
//!   G(z+1;  tau) = Gamma(z/tau) G(z; tau),
//!   G(z+tau;tau) = (2 pi)^{(tau-1)/2} tau^{-z+1/2} Gamma(z) G(z; tau).
//!
//! The modular constants a(tau), b(tau) are pinned numerically at
//! construction from the first relation (whose right-hand side minus the
//! product part must be affine in z); the residual of that affine fit is a
//! built-in self-check of the whole evaluation scheme, and the second
//! relation is exercised in the tests.
//!
//! Evaluation collapses the product over n for each row m into gamma,
//! digamma and trigamma values, and closes the row sum over m > M with an
//! exact integral remainder
//!
//!   T_M(z) = -int_0^inf e^{-(M+1) tau t}
//!            (e^{-z t} - 1 + z t - z^2 t^2 / 2)
//!            / (t (1 - e^{-tau t}) (1 - e^{-t})) dt,
//!
//! integrated adaptively.

use num_complex::Complex64;

use crate::error::{DhgError, Result};
use crate::specfun::gamma::{digamma, lgamma_sign, log_gamma, trigamma};
use crate::support::quadrature::integrate_complex;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const ZETA_2: f64 = 1.644_934_066_848_226_4;

/// Barnes double gamma evaluator for one fixed modulus `tau = c > 0`.
#[derive(Debug, Clone)]
pub struct DoubleGamma {
    tau: f64,
    a_const: f64,
    b_const: f64,
    log_norm: f64,
}

impl DoubleGamma {
    pub fn new(tau: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(DhgError::Parameter(format!(
                "double gamma modulus must be positive, got {tau}"
            )));
        }
        let mut dg = DoubleGamma {
            tau,
            a_const: 0.0,
            b_const: 0.0,
            log_norm: 0.0,
        };
        // h(z) = log Gamma(z/tau) + raw(z) - raw(z+1) must be affine in z:
        // h(z) = (a + b/2)/tau + (b/tau) z. Fit and verify.
        let zs = [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0];
        let mut h = Vec::with_capacity(zs.len());
        for &z in &zs {
            let raw_z = dg.raw(Complex64::new(z, 0.0))?;
            let raw_z1 = dg.raw(Complex64::new(z + 1.0, 0.0))?;
            let (lg, _) = lgamma_sign(z / tau)?;
            h.push(lg + raw_z.re - raw_z1.re);
        }
        let n = zs.len() as f64;
        let sx: f64 = zs.iter().sum();
        let sy: f64 = h.iter().sum();
        let sxx: f64 = zs.iter().map(|z| z * z).sum();
        let sxy: f64 = zs.iter().zip(&h).map(|(z, y)| z * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let intercept = (sy - slope * sx) / n;
        let max_resid = zs
            .iter()
            .zip(&h)
            .map(|(z, y)| (y - intercept - slope * z).abs())
            .fold(0.0f64, f64::max);
        if max_resid > 1e-9 {
            return Err(DhgError::Convergence(format!(
                "double gamma modular-constant fit residual {max_resid:.3e} at tau = {tau}"
            )));
        }
        dg.b_const = tau * slope;
        dg.a_const = tau * intercept - dg.b_const / 2.0;
        let lg1 = dg.unnormalised_log_g(Complex64::new(1.0, 0.0))?;
        dg.log_norm = lg1.re;
        Ok(dg)
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// True when z sits (within tolerance) on the zero lattice -(m tau + n).
    fn on_zero_lattice(&self, z: Complex64) -> bool {
        if z.im != 0.0 {
            return false;
        }
        let x = -z.re; // need x = m tau + n, m, n >= 0
        if x < -1e-12 {
            return false;
        }
        let m_max = (x / self.tau).floor() as i64 + 1;
        for m in 0..=m_max {
            let r = x - m as f64 * self.tau;
            if r < -1e-12 {
                break;
            }
            if (r - r.round()).abs() < 1e-12 && r.round() >= -0.5 {
                return true;
            }
        }
        false
    }

    /// Product part of log G (no modular exponent, no normalisation).
    fn raw(&self, z: Complex64) -> Result<Complex64> {
        let tau = self.tau;
        // Row budget: W = (M+1) tau controls both tail decay and the
        // oscillation count of the remainder integral.
        let w_min = 25.0_f64
            .max(1.5 * z.im.abs())
            .max(if z.re < 0.0 { 1.3 * (-z.re) + 10.0 } else { 0.0 });
        let m_rows = (w_min / tau).ceil() as usize;
        let w_tail = (m_rows as f64 + 1.0) * tau;

        // m = 0 row (n >= 1): -log Gamma(1+z) - gamma z + zeta(2) z^2 / 2.
        let mut acc = z.ln() - tau.ln();
        acc += -log_gamma(z + 1.0)? - EULER_GAMMA * z + 0.5 * ZETA_2 * z * z;

        // Rows m = 1..M collapsed into gamma/digamma/trigamma values.
        for m in 1..=m_rows {
            let wm = m as f64 * tau;
            let (lg_w, _) = lgamma_sign(wm)?;
            let lg_wz = log_gamma(wm + z)?;
            acc += lg_w - lg_wz + z * digamma(wm) + 0.5 * z * z * trigamma(wm);
        }

        // Exact integral remainder for the rows m > M.
        let decay = w_tail + z.re.min(0.0);
        let t_cut = 50.0 / decay;
        let zc = z;
        let integrand = move |t: f64| -> Complex64 {
            let e_head = (-w_tail * t).exp();
            let d1 = -(-tau * t).exp_m1(); // 1 - e^{-tau t}
            let d2 = -(-t).exp_m1(); // 1 - e^{-t}
            let x = -zc * t;
            let bracket = if x.norm() < 0.5 {
                // (e^x - 1 - x - x^2/2) = x^3 sum_j x^j/(j+3)!
                let mut s = Complex64::new(0.0, 0.0);
                let mut term = Complex64::new(1.0 / 6.0, 0.0);
                let mut j = 0u32;
                loop {
                    s += term;
                    if term.norm() < 1e-18 || j > 24 {
                        break;
                    }
                    j += 1;
                    term = term * x / f64::from(j + 3);
                }
                x.powu(3) * s
            } else {
                x.exp() - 1.0 - x - 0.5 * x * x
            };
            e_head * bracket / (t * d1 * d2)
        };
        let scale = (z.norm().powi(3) / (6.0 * tau)).max(1.0);
        let tail = integrate_complex(integrand, 1e-300, t_cut, 1e-14, 1e-16 * scale)?;
        Ok(acc - tail)
    }

    fn unnormalised_log_g(&self, z: Complex64) -> Result<Complex64> {
        let raw = self.raw(z)?;
        Ok(raw + self.a_const * z / self.tau + 0.5 * self.b_const * z * z / self.tau)
    }

    /// log G(z; tau). At a lattice zero the real part is -infinity.
    ///
    /// The imaginary part is branch-consistent within the evaluation scheme;
    /// consumers combine these logs additively and exponentiate, for which
    /// any 2 pi i offset is immaterial.
    pub fn log_g(&self, z: Complex64) -> Result<Complex64> {
        if self.on_zero_lattice(z) {
            return Ok(Complex64::new(f64::NEG_INFINITY, 0.0));
        }
        Ok(self.unnormalised_log_g(z)? - self.log_norm)
    }

    /// G(z; tau) itself. Overflow of the final exponentiation is an error;
    /// use [`DoubleGamma::log_g`] for asymptotic-regime work.
    pub fn g(&self, z: Complex64) -> Result<Complex64> {
        let lg = self.log_g(z)?;
        if lg.re == f64::NEG_INFINITY {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if lg.re > 709.0 {
            return Err(DhgError::Overflow(format!(
                "double gamma magnitude exp({:.3e}) exceeds f64",
                lg.re
            )));
        }
        Ok(lg.exp())
    }
}
