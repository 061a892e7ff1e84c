//! Mellin transform of the exponential functional int_0^zeta e^{-xi_t/c} dt
//! of a two-sided process that is killed or drifts to +infinity, together
//! with its functional-equation validators and numeric density recovery by
//! inverse Mellin integration.

use num_complex::Complex64;

use crate::dhgprocess::{laplace_exponent_psi, long_term_behavior, DhgParameters, LongTermBehavior};
use crate::error::{DhgError, Result};
use crate::specfun::{log_gamma, DoubleGamma};

/// Validated parameter set for one Mellin transform: process, time scaling
/// constant, strip of analyticity, cached double gamma and normalisation.
#[derive(Debug, Clone)]
pub struct MellinSpec {
    params: DhgParameters,
    c: f64,
    strip_upper: f64,
    dg: DoubleGamma,
    log_norm: Complex64,
}

impl MellinSpec {
    pub fn new(params: DhgParameters, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(DhgError::Parameter(format!(
                "time-scaling constant must be positive, got {c}"
            )));
        }
        let p = params.canonical();
        let minus = p.minus;
        if !(minus.gamma > 0.0 && minus.gamma < minus.alpha) {
            return Err(DhgError::Parameter(format!(
                "Mellin transform needs 0 < gamma-hat < alpha-hat on the minus factor, got {minus:?}"
            )));
        }
        match long_term_behavior(&p)? {
            LongTermBehavior::Killed | LongTermBehavior::DriftsPlus => {}
            other => {
                return Err(DhgError::Parameter(format!(
                    "Mellin transform needs a killed or upward-drifting process, got {other:?}"
                )));
            }
        }
        if p.sum_balance() >= 6.0 {
            return Err(DhgError::Parameter(format!(
                "exponent balance {} violates the < 6 growth bound",
                p.sum_balance()
            )));
        }
        let dg = DoubleGamma::new(c)?;
        let mut spec = MellinSpec {
            params: p,
            c,
            strip_upper: 1.0 + minus.gamma * c,
            dg,
            log_norm: Complex64::new(0.0, 0.0),
        };
        let raw_at_one = spec.log_mellin_unnormalised(Complex64::new(1.0, 0.0))?;
        spec.log_norm = -raw_at_one;
        Ok(spec)
    }

    pub fn params(&self) -> &DhgParameters {
        &self.params
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Upper edge of the strip of analyticity (0, 1 + gamma-hat c).
    pub fn strip_upper(&self) -> f64 {
        self.strip_upper
    }

    /// Predicted exponential decay rate of ln |M(x + i y)| in |y|.
    ///
    /// Summing the double-gamma ratio asymptotic
    /// ln |G(p+iy;c)/G(q+iy;c)| = -pi (p-q)/(2c) |y| + o(|y|) over the eight
    /// factors and adding the gamma factor's -(pi/2)|y| gives
    /// -(pi/2)(1 + balance) |y|, with
    /// balance = gamma+delta-alpha-beta+alpha'+beta'-gamma'-delta'.
    /// (A widely-quoted display carries the balance halved; the ratio
    /// asymptotics and direct evaluation both give the full balance.)
    pub fn decay_rate(&self) -> f64 {
        -(std::f64::consts::PI / 2.0) * (1.0 + self.params.sum_balance())
    }

    fn in_strip(&self, s: Complex64) -> bool {
        s.re > 0.0 && s.re < self.strip_upper
    }

    fn log_mellin_unnormalised(&self, s: Complex64) -> Result<Complex64> {
        let c = self.c;
        let (p, m) = (&self.params.plus, &self.params.minus);
        let mut acc = log_gamma(s)?;
        for (arg, in_num) in [
            (c * p.gamma + s, true),
            (c * p.delta + s, true),
            (c * p.alpha + s, false),
            (c * p.beta + s, false),
            (Complex64::new(1.0 + c * m.alpha, 0.0) - s, true),
            (Complex64::new(1.0 + c * m.beta, 0.0) - s, true),
            (Complex64::new(1.0 + c * m.gamma, 0.0) - s, false),
            (Complex64::new(1.0 + c * m.delta, 0.0) - s, false),
        ] {
            let lg = self.dg.log_g(arg)?;
            if in_num {
                acc += lg;
            } else {
                acc -= lg;
            }
        }
        Ok(acc)
    }

    /// log M(s) on the strip, normalised so that M(1) = 1 exactly.
    pub fn log_mellin(&self, s: Complex64) -> Result<Complex64> {
        if !self.in_strip(s) {
            return Err(DhgError::Domain(format!(
                "Mellin argument {s} outside the strip (0, {})",
                self.strip_upper
            )));
        }
        Ok(self.log_mellin_unnormalised(s)? + self.log_norm)
    }

    /// M(s) = E[(int_0^zeta e^{-xi_t/c} dt)^{s-1}].
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        let lg = self.log_mellin(s)?;
        if lg.re > 709.0 {
            return Err(DhgError::Overflow("Mellin value exceeds f64".into()));
        }
        Ok(lg.exp())
    }

    /// Laplace exponent of the c-scaled process, psi_c(z) = psi(z / c).
    pub fn psi_c(&self, z: f64) -> Result<f64> {
        Ok(laplace_exponent_psi(&self.params, Complex64::new(z / self.c, 0.0))?.re)
    }

    /// ln |M(x + i y)| together with the predicted linear decay rate; used
    /// to choose inverse-Mellin truncation. Requires |y| >= 10 so the
    /// asymptotic regime applies.
    pub fn strip_decay(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        if y.abs() < 10.0 {
            return Err(DhgError::Domain(
                "strip decay is an asymptotic statement; need |y| >= 10".into(),
            ));
        }
        let lm = self.log_mellin(Complex64::new(x, y))?;
        Ok((lm.re, self.decay_rate()))
    }

    /// Density of the exponential functional on `t_grid`, by vertical-line
    /// inverse Mellin integration along Re s = (1 + gamma-hat c)/2.
    pub fn density_via_inverse_mellin(&self, t_grid: &[f64]) -> Result<Vec<f64>> {
        if t_grid.iter().any(|t| !(*t > 0.0)) {
            return Err(DhgError::Parameter(
                "density grid points must be positive".into(),
            ));
        }
        let x0 = 0.5 * self.strip_upper;
        let rate = -self.decay_rate();
        if !(rate > 0.0) {
            return Err(DhgError::Convergence(
                "nonpositive strip decay rate; inverse Mellin cannot truncate".into(),
            ));
        }
        let max_abs_ln_t = t_grid
            .iter()
            .map(|t| t.ln().abs())
            .fold(0.0f64, f64::max);
        // Tail below 1e-9 of the integrand scale, with polynomial margin.
        let y_max = (34.0 + x0 * max_abs_ln_t.min(60.0)) / rate;
        let step = (0.25f64).min(std::f64::consts::PI / (4.0 * (max_abs_ln_t + 4.0)));
        let n = (y_max / step).ceil() as usize + 1;
        let ys: Vec<f64> = (0..n).map(|i| i as f64 * step).collect();
        let values = crate::exec::map_collect(&ys, |y| {
            self.log_mellin(Complex64::new(x0, *y))
                .map(|lm| lm.exp())
        });
        let mvals: Result<Vec<Complex64>> = values.into_iter().collect();
        let mvals = mvals?;
        let mut out = Vec::with_capacity(t_grid.len());
        for &t in t_grid {
            let ln_t = t.ln();
            let mut acc = 0.0;
            for (i, (y, m)) in ys.iter().zip(&mvals).enumerate() {
                let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                let phase = Complex64::new(0.0, -y * ln_t).exp();
                acc += w * (m * phase).re;
            }
            let v = acc * step / std::f64::consts::PI * t.powf(-x0);
            out.push(if v < 0.0 && v > -1e-9 { 0.0 } else { v });
        }
        Ok(out)
    }
}
