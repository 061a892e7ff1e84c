//! Generalised hypergeometric series pFq and a Gauss 2F1 evaluator with a
//! connection-formula path for arguments close to the unit circle.

use num_complex::Complex64;

use crate::error::{DhgError, Result};
use crate::specfun::gamma::{gamma_ratio, is_gamma_pole, INTEGER_TOL};

/// Truncation and tolerance policy for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: 1_000_000,
            rel_tol: 1e-12,
            abs_floor: 1e-300,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(DhgError::Parameter("max_terms must be >= 1".into()));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(DhgError::Parameter("rel_tol must lie in (0, 1)".into()));
        }
        if self.abs_floor <= 0.0 {
            return Err(DhgError::Parameter("abs_floor must be positive".into()));
        }
        Ok(())
    }
}

/// Value of a truncated series together with a truncation-error estimate.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: Complex64,
    pub error_estimate: f64,
    pub terms_used: usize,
}

/// Partial sum of the generalised hypergeometric series
/// `sum_k prod (a_i)_k / prod (b_j)_k * z^k / k!` for |z| < 1.
///
/// Stops once the running term falls below `rel_tol` times the partial sum
/// for two consecutive terms. An upper parameter at a nonpositive integer
/// terminates the series (polynomial case); a lower parameter hit before
/// truncation is a domain error.
pub fn pfq(
    upper: &[Complex64],
    lower: &[Complex64],
    z: Complex64,
    ctl: &SeriesControl,
) -> Result<SeriesValue> {
    ctl.validate()?;
    if z.norm() >= 1.0 {
        return Err(DhgError::Domain(format!(
            "pfq series argument |z| = {} is outside the unit disc",
            z.norm()
        )));
    }
    if z.norm() == 0.0 {
        return Ok(SeriesValue {
            value: Complex64::new(1.0, 0.0),
            error_estimate: 0.0,
            terms_used: 1,
        });
    }
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small_streak = 0usize;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        for a in upper {
            let f = a + kf;
            if is_gamma_pole(f) && f.re.abs() < INTEGER_TOL {
                // (a)_{k+1} = 0: the series is the exact polynomial summed so far.
                return Ok(SeriesValue {
                    value: sum,
                    error_estimate: 0.0,
                    terms_used: k + 1,
                });
            }
            ratio *= f;
        }
        for b in lower {
            let f = b + kf;
            if is_gamma_pole(f) {
                return Err(DhgError::Domain(format!(
                    "pfq lower parameter {b} reaches a nonpositive integer at term {k}"
                )));
            }
            ratio /= f;
        }
        term *= ratio;
        sum += term;
        if !sum.is_finite() {
            return Err(DhgError::Overflow("pfq partial sum overflowed".into()));
        }
        let t = term.norm();
        if t <= ctl.rel_tol * sum.norm() || t < ctl.abs_floor {
            small_streak += 1;
            if small_streak >= 2 {
                // Geometric bound on the tail from the last term ratio.
                let r = ratio.norm().min(0.999);
                return Ok(SeriesValue {
                    value: sum,
                    error_estimate: t / (1.0 - r),
                    terms_used: k + 1,
                });
            }
        } else {
            small_streak = 0;
        }
    }
    Err(DhgError::Convergence(format!(
        "pfq did not reach rel_tol {} within {} terms (|z| = {})",
        ctl.rel_tol,
        ctl.max_terms,
        z.norm()
    )))
}

/// Gauss 2F1 for real parameters and real z in [0, 1).
///
/// For z beyond the switch point the linear transformation in 1 - z is used;
/// this is what keeps density evaluations near the origin (series argument
/// e^{-s} -> 1) convergent. Requires c - a - b off the integer lattice when
/// the transformation is taken, which holds across the interior parameter
/// class served here.
pub fn hyp2f1(a: f64, b: f64, c_low: f64, z: f64, ctl: &SeriesControl) -> Result<SeriesValue> {
    if !(0.0..1.0).contains(&z) {
        return Err(DhgError::Domain(format!(
            "hyp2f1 argument {z} outside [0, 1)"
        )));
    }
    let as_c = |x: f64| Complex64::new(x, 0.0);
    const SWITCH: f64 = 0.75;
    if z <= SWITCH {
        return pfq(&[as_c(a), as_c(b)], &[as_c(c_low)], as_c(z), ctl);
    }
    let cab = c_low - a - b;
    if (cab - cab.round()).abs() < 1e-8 {
        return Err(DhgError::Domain(format!(
            "hyp2f1 connection formula degenerate: c-a-b = {cab} is near an integer"
        )));
    }
    let w = 1.0 - z;
    // 2F1(a,b;c;z) = A * 2F1(a,b;a+b-c+1;w) + B * w^{c-a-b} * 2F1(c-a,c-b;c-a-b+1;w)
    let coef_a = gamma_ratio(
        &[as_c(c_low), as_c(cab)],
        &[as_c(c_low - a), as_c(c_low - b)],
    )?;
    let coef_b = gamma_ratio(&[as_c(c_low), as_c(-cab)], &[as_c(a), as_c(b)])?;
    let s1 = pfq(&[as_c(a), as_c(b)], &[as_c(a + b - c_low + 1.0)], as_c(w), ctl)?;
    let s2 = pfq(
        &[as_c(c_low - a), as_c(c_low - b)],
        &[as_c(cab + 1.0)],
        as_c(w),
        ctl,
    )?;
    let w_pow = w.powf(cab);
    let value = coef_a * s1.value + coef_b * w_pow * s2.value;
    let err = coef_a.norm() * s1.error_estimate + coef_b.norm() * w_pow * s2.error_estimate;
    Ok(SeriesValue {
        value,
        error_estimate: err,
        terms_used: s1.terms_used + s2.terms_used,
    })
}
