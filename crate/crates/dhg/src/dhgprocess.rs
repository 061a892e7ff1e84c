//! Two-sided Lévy processes whose spatial Wiener-Hopf factors are both
//! gamma-ratio (double beta) subordinators: characteristic and Laplace
//! exponents, two-sided Lévy density, Gaussian component and lifetime.

use num_complex::Complex64;
use serde::Serialize;

use crate::doublebeta::{classify, laplace_exponent, Quadruple};
use crate::error::{DhgError, Result};
use crate::specfun::{
    lgamma_sign, log_gamma_ratio, pfq, SeriesControl, INTEGER_TOL,
};

/// Smallest |x| at which the two-sided density series is evaluated; the
/// hypergeometric argument e^{-|x|} approaches 1 at the origin.
pub const X_MIN: f64 = 1e-6;

/// Factor pair of a two-sided process: `plus` is evaluated at -i theta,
/// `minus` at +i theta in the characteristic exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DhgParameters {
    pub plus: Quadruple,
    pub minus: Quadruple,
}

impl DhgParameters {
    /// Both quadruples must belong to the closed class (boundary allowed).
    pub fn new(plus: Quadruple, minus: Quadruple) -> Result<Self> {
        for (name, q) in [("plus", &plus), ("minus", &minus)] {
            let class = classify(q);
            if !class.is_complete_bernstein() {
                return Err(DhgError::Parameter(format!(
                    "{name} factor {q:?} is outside the complete Bernstein class: {class:?}"
                )));
            }
        }
        Ok(DhgParameters { plus, minus })
    }

    /// Canonicalizes both factors.
    pub fn canonical(&self) -> DhgParameters {
        DhgParameters {
            plus: self.plus.canonical(),
            minus: self.minus.canonical(),
        }
    }

    /// Interchanges the factor roles (spatial mirror of the process).
    pub fn swapped(&self) -> DhgParameters {
        DhgParameters {
            plus: self.minus,
            minus: self.plus,
        }
    }

    /// gamma + delta - alpha - beta + hat(alpha) + hat(beta) - hat(gamma)
    /// - hat(delta): drives the exponent's growth order and the Mellin
    /// strip decay rate.
    pub fn sum_balance(&self) -> f64 {
        -self.plus.sum_gap() + self.minus.sum_gap()
    }

    /// Total polynomial growth index of |Psi(theta)| for large |theta|.
    pub fn growth_index(&self) -> f64 {
        self.plus.sum_gap() + self.minus.sum_gap()
    }
}

/// Long-term behaviour of the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LongTermBehavior {
    Killed,
    Oscillates,
    DriftsPlus,
    DriftsMinus,
}

/// Characteristic exponent Psi(theta) = B(plus; -i theta) B(minus; i theta).
pub fn characteristic_exponent(p: &DhgParameters, theta: f64) -> Result<Complex64> {
    let it = Complex64::new(0.0, theta);
    let a = laplace_exponent(&p.plus, -it)?;
    let b = laplace_exponent(&p.minus, it)?;
    Ok(a * b)
}

/// Laplace exponent psi(z) = -Psi(-i z) = -B(plus; -z) B(minus; z); real on
/// real non-pole points.
pub fn laplace_exponent_psi(p: &DhgParameters, z: Complex64) -> Result<Complex64> {
    let a = laplace_exponent(&p.plus, -z)?;
    let b = laplace_exponent(&p.minus, z)?;
    Ok(-a * b)
}

/// log |Psi(theta)| computed fully in log space; usable at |theta| where the
/// exponent magnitude itself would overflow.
pub fn log_abs_characteristic_exponent(p: &DhgParameters, theta: f64) -> Result<f64> {
    let it = Complex64::new(0.0, theta);
    let v = log_gamma_ratio(
        &[
            -it + p.plus.alpha,
            -it + p.plus.beta,
            it + p.minus.alpha,
            it + p.minus.beta,
        ],
        &[
            -it + p.plus.gamma,
            -it + p.plus.delta,
            it + p.minus.gamma,
            it + p.minus.delta,
        ],
    )?;
    Ok(v.re)
}

fn require_interior_pair(p: &DhgParameters) -> Result<DhgParameters> {
    let c = p.canonical();
    for (name, q) in [("plus", &c.plus), ("minus", &c.minus)] {
        if !classify(q).is_interior() {
            return Err(DhgError::Parameter(format!(
                "two-sided density needs interior factors; {name} = {q:?} is not"
            )));
        }
    }
    Ok(c)
}

/// Two-sided Lévy density. For x > 0,
///
///   pi(x) = -A_alpha e^{-alpha x} 4F3(...) - A_beta e^{-beta x} 4F3(...),
///
/// with the hatted and unhatted parameters interchanged (and |x| in place of
/// x) on the negative half-line.
pub fn levy_density_two_sided(p: &DhgParameters, x: f64, ctl: &SeriesControl) -> Result<f64> {
    let c = require_interior_pair(p)?;
    if x.abs() < X_MIN {
        return Err(DhgError::Domain(format!(
            "two-sided density needs |x| >= {X_MIN}, got {x}"
        )));
    }
    let (side, x_abs) = if x > 0.0 { (c, x) } else { (c.swapped(), -x) };
    let (u, h) = (&side.plus, &side.minus);
    let z = Complex64::new((-x_abs).exp(), 0.0);
    let term = |base: f64, other: f64| -> Result<f64> {
        // -Gamma(base+ha)Gamma(base+hb)Gamma(other-base) e^{-base x}
        //  / (Gamma(base+hg)Gamma(base+hd)Gamma(g-base)Gamma(d-base)) * 4F3
        let mut log_mag = -base * x_abs;
        let mut sign = -1.0;
        for (arg, in_num) in [
            (base + h.alpha, true),
            (base + h.beta, true),
            (other - base, true),
            (base + h.gamma, false),
            (base + h.delta, false),
            (u.gamma - base, false),
            (u.delta - base, false),
        ] {
            let (l, s) = lgamma_sign(arg)?;
            if in_num {
                log_mag += l;
            } else {
                log_mag -= l;
            }
            sign *= s;
        }
        let f = pfq(
            &[
                Complex64::new(base + h.alpha, 0.0),
                Complex64::new(base + h.beta, 0.0),
                Complex64::new(1.0 + base - u.gamma, 0.0),
                Complex64::new(1.0 + base - u.delta, 0.0),
            ],
            &[
                Complex64::new(1.0 + base - other, 0.0),
                Complex64::new(base + h.gamma, 0.0),
                Complex64::new(base + h.delta, 0.0),
            ],
            z,
            ctl,
        )?;
        Ok(sign * log_mag.exp() * f.value.re)
    };
    let v = term(u.alpha, u.beta)? + term(u.beta, u.alpha)?;
    if v < 0.0 && v > -1e-10 * (1.0 + v.abs()) {
        return Ok(0.0);
    }
    Ok(v)
}

/// Residue expansion of the two-sided density on the positive half-line:
/// pi(x) = sum_n a_n rho_n e^{-rho_n x} with poles over {alpha, beta} + N_0
/// and a_n rho_n = -B(minus; rho_n) Res(B(plus; .), -rho_n).
pub fn levy_density_residue_expansion(
    p: &DhgParameters,
    n_poles: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let c = require_interior_pair(p)?;
    let series = crate::doublebeta::residue_series(&c.plus, n_poles)?;
    let mut coefs = Vec::with_capacity(n_poles);
    for (rho, w) in series.poles.iter().zip(&series.weights) {
        // -Res(B(plus), -rho) = w, so a_n rho_n = B(minus; rho) * w.
        let b = laplace_exponent(&c.minus, Complex64::new(*rho, 0.0))?;
        coefs.push(b.re * w);
    }
    Ok((series.poles, coefs))
}

fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() < INTEGER_TOL
}

/// Gaussian coefficient sigma^2: 2 when both factor sums sit on the
/// boundary line alpha + beta = gamma + delta + 1, else 0.
pub fn gaussian_component(p: &DhgParameters) -> f64 {
    let plus_on = near_integer(p.plus.sum_gap() - 1.0) && p.plus.sum_gap() > 0.5;
    let minus_on = near_integer(p.minus.sum_gap() - 1.0) && p.minus.sum_gap() > 0.5;
    if plus_on && minus_on {
        2.0
    } else {
        0.0
    }
}

/// Lifetime / long-term trichotomy from the factor killing rates. The
/// proposition's case analysis assumes canonical ordering and
/// delta, hat(delta) > 0; configurations outside it are rejected.
pub fn long_term_behavior(p: &DhgParameters) -> Result<LongTermBehavior> {
    let c = p.canonical();
    let (g, a) = (c.plus.gamma, c.plus.alpha);
    let (gh, ah) = (c.minus.gamma, c.minus.alpha);
    if c.plus.delta <= 0.0 || c.minus.delta <= 0.0 {
        return Err(DhgError::Parameter(
            "lifetime classification requires delta > 0 on both factors".into(),
        ));
    }
    if g > 0.0 && gh > 0.0 {
        return Ok(LongTermBehavior::Killed);
    }
    if g == 0.0 && gh == 0.0 && a > 0.0 && ah > 0.0 {
        return Ok(LongTermBehavior::Oscillates);
    }
    if g == 0.0 && gh * a > 0.0 {
        return Ok(LongTermBehavior::DriftsPlus);
    }
    if gh == 0.0 && g * ah > 0.0 {
        return Ok(LongTermBehavior::DriftsMinus);
    }
    Err(DhgError::Parameter(format!(
        "factor configuration {c:?} falls outside the lifetime case analysis"
    )))
}
