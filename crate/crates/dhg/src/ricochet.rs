//! Ricocheted and glued stable processes viewed through their Lamperti
//! exponents: the three equivalent forms of the exponent, the Wiener-Hopf
//! condition and factors, extreme-value laws, Esscher shifts and a
//! finite-difference Bernstein probe.

use num_complex::Complex64;
use serde::Serialize;

use crate::doublebeta::{laplace_exponent, Quadruple};
use crate::error::{DhgError, Result};
use crate::specfun::{cos_pi, gamma_ratio, sin_pi};

/// Stable-process data (alpha, rho) plus the ricochet probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RicochetParameters {
    pub alpha: f64,
    pub rho: f64,
    pub p: f64,
}

impl RicochetParameters {
    pub fn new(alpha: f64, rho: f64, p: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(DhgError::Parameter(format!(
                "stability index must lie in (0, 2), got {alpha}"
            )));
        }
        let rp = RicochetParameters { alpha, rho, p };
        let (ar, arh) = (rp.alpha_rho(), rp.alpha_rho_hat());
        if !(ar > 0.0 && ar < 1.0 && arh > 0.0 && arh < 1.0) {
            return Err(DhgError::Parameter(format!(
                "two-sided jumps require alpha rho and alpha rho-hat in (0, 1); \
                 got {ar} and {arh}"
            )));
        }
        if alpha == 1.0 && rho != 0.5 {
            return Err(DhgError::Parameter(
                "alpha = 1 forces rho = 1/2 in this parametrisation".into(),
            ));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(DhgError::Parameter(format!(
                "ricochet probability must lie in [0, 1], got {p}"
            )));
        }
        Ok(rp)
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
}

/// Derived Wiener-Hopf geometry: sigma = 1/2 - alpha rho-hat in (-1/2, 1/2)
/// and b = arccos(p cos(pi sigma)) / pi in [|sigma|, 1/2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaB {
    pub sigma: f64,
    pub b: f64,
}

pub fn sigma_b(rp: &RicochetParameters) -> SigmaB {
    let sigma = 0.5 - rp.alpha_rho_hat();
    let b = (rp.p * cos_pi(sigma)).acos() / std::f64::consts::PI;
    SigmaB { sigma, b }
}

/// The three printed forms of the exponent; they agree identically in theta
/// and are computed along fully independent paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PsiStarForm {
    /// Gamma pair times a shifted-sine bracket.
    Budd,
    /// The 2^alpha product of two half-argument gamma-ratio factors.
    GammaProduct,
    /// Killed hypergeometric part plus the ricochet compound-Poisson part.
    Construction,
}

/// Exponent of the Lamperti-transformed ricocheted process at a complex
/// argument (needed for the Esscher shifts).
pub fn psi_star_complex(
    rp: &RicochetParameters,
    theta: Complex64,
    form: PsiStarForm,
) -> Result<Complex64> {
    let alpha = rp.alpha;
    let arh = rp.alpha_rho_hat();
    let it = Complex64::i() * theta;
    match form {
        PsiStarForm::Budd => {
            let pair = gamma_ratio(&[alpha - it, 1.0 + it], &[])?;
            let bracket = (std::f64::consts::PI * (arh - it)).sin() - rp.p * sin_pi(arh);
            Ok(pair * bracket / std::f64::consts::PI)
        }
        PsiStarForm::GammaProduct => {
            let f = wh_factor_quadruples(rp);
            let a = laplace_exponent(&f.0, it / 2.0)?;
            let b = laplace_exponent(&f.1, -it / 2.0)?;
            Ok((2.0f64).powf(alpha) * a * b)
        }
        PsiStarForm::Construction => {
            // Psi-dagger minus the ricochet moment term.
            let dagger = gamma_ratio(
                &[alpha - it, 1.0 + it],
                &[arh - it, 1.0 - arh + it],
            )?;
            let q_dagger = gamma_ratio(
                &[Complex64::new(alpha, 0.0)],
                &[Complex64::new(arh, 0.0), Complex64::new(1.0 - arh, 0.0)],
            )?;
            let moment = gamma_ratio(&[alpha - it, 1.0 + it], &[Complex64::new(alpha, 0.0)])?;
            Ok(dagger - q_dagger * rp.p * moment)
        }
    }
}

/// Exponent at real theta.
pub fn psi_star(rp: &RicochetParameters, theta: f64, form: PsiStarForm) -> Result<Complex64> {
    psi_star_complex(rp, Complex64::new(theta, 0.0), form)
}

/// Quadruples of the two half-argument factors of the gamma-product form.
/// `.0` (plus) carries the (sigma, b) data and always sits in the closed
/// class; `.1` (minus) carries alpha and is in the class exactly when the
/// Wiener-Hopf condition holds.
fn wh_factor_quadruples(rp: &RicochetParameters) -> (Quadruple, Quadruple) {
    let SigmaB { sigma, b } = sigma_b(rp);
    let plus = Quadruple {
        alpha: 0.5,
        beta: 1.0,
        gamma: 0.5 * (sigma + b),
        delta: 0.5 * (sigma - b) + 1.0,
    };
    let minus = Quadruple {
        alpha: 0.5 * rp.alpha,
        beta: 0.5 * (1.0 + rp.alpha),
        gamma: 0.5 * (b - sigma),
        delta: 0.5 * (2.0 - sigma - b),
    };
    (plus, minus)
}

/// Both printed forms of the factorisation gate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WienerHopfCondition {
    pub holds: bool,
    pub interval_form: bool,
    pub sine_form: bool,
    /// True when the two forms disagree (floating-point boundary ties).
    pub forms_disagree: bool,
}

/// Evaluates alpha in [1 - sigma - b, b - sigma + 1] and, equivalently,
/// p sin(pi alpha rho-hat) <= sin(pi alpha rho).
pub fn wiener_hopf_condition(rp: &RicochetParameters) -> WienerHopfCondition {
    let SigmaB { sigma, b } = sigma_b(rp);
    let interval_form = rp.alpha >= 1.0 - sigma - b && rp.alpha <= b - sigma + 1.0;
    let sine_form = rp.p * sin_pi(rp.alpha_rho_hat()) <= sin_pi(rp.alpha_rho());
    WienerHopfCondition {
        holds: sine_form,
        interval_form,
        sine_form,
        forms_disagree: interval_form != sine_form,
    }
}

/// Wiener-Hopf factor data of the exponent: half-argument quadruples and
/// the 2^alpha prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WhFactors {
    pub plus: Quadruple,
    pub minus: Quadruple,
    /// The factors act at half argument: each factor is B(quad; lambda/2).
    pub half_argument: bool,
    pub prefactor: f64,
}

impl WhFactors {
    /// Reassembles the exponent from the factors,
    /// prefactor * B(plus; i theta / 2) * B(minus; -i theta / 2).
    pub fn reconstruct(&self, theta: f64) -> Result<Complex64> {
        let it = Complex64::new(0.0, theta);
        let a = laplace_exponent(&self.plus, it / 2.0)?;
        let b = laplace_exponent(&self.minus, -it / 2.0)?;
        Ok(self.prefactor * a * b)
    }
}

pub fn wh_factors(rp: &RicochetParameters) -> Result<WhFactors> {
    let cond = wiener_hopf_condition(rp);
    if !cond.holds {
        return Err(DhgError::Parameter(format!(
            "Wiener-Hopf condition fails for {rp:?}: {cond:?}"
        )));
    }
    let (plus, minus) = wh_factor_quadruples(rp);
    Ok(WhFactors {
        plus,
        minus,
        half_argument: true,
        prefactor: (2.0f64).powf(rp.alpha),
    })
}

/// A Laplace-transform value that may degenerate (law concentrated at 0 or
/// infinity).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LaplaceValue {
    Finite(f64),
    Degenerate,
}

impl LaplaceValue {
    pub fn finite(&self) -> Option<f64> {
        match self {
            LaplaceValue::Finite(v) => Some(*v),
            LaplaceValue::Degenerate => None,
        }
    }
}

fn real_gamma_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    let to_c = |xs: &[f64]| xs.iter().map(|x| Complex64::new(*x, 0.0)).collect::<Vec<_>>();
    Ok(gamma_ratio(&to_c(num), &to_c(den))?.re)
}

/// Laplace transform of log(sup / start) of the ricocheted process before
/// absorption. Degenerate when p = 1 and alpha rho-hat <= 1/2 (the supremum
/// is almost surely infinite).
pub fn sup_law_laplace(rp: &RicochetParameters, z: f64) -> Result<LaplaceValue> {
    require_condition(rp)?;
    if z < 0.0 {
        return Err(DhgError::Domain("Laplace argument must be >= 0".into()));
    }
    let SigmaB { sigma, b } = sigma_b(rp);
    if rp.p == 1.0 && rp.alpha_rho_hat() <= 0.5 {
        return Ok(LaplaceValue::Degenerate);
    }
    let alpha = rp.alpha;
    let constant = std::f64::consts::PI.sqrt() * (2.0f64).powf(1.0 - alpha);
    let v = constant
        * real_gamma_ratio(
            &[alpha, 0.5 * (b - sigma + z), 0.5 * (2.0 - sigma - b + z)],
            &[
                0.5 * (b - sigma),
                0.5 * (2.0 - sigma - b),
                0.5 * (alpha + z),
                0.5 * (1.0 + alpha + z),
            ],
        )?;
    Ok(LaplaceValue::Finite(v))
}

/// Laplace transform of log(start / inf). Degenerate when p = 1 and
/// alpha rho-hat >= 1/2 (the infimum is almost surely zero).
pub fn inf_law_laplace(rp: &RicochetParameters, z: f64) -> Result<LaplaceValue> {
    require_condition(rp)?;
    if z < 0.0 {
        return Err(DhgError::Domain("Laplace argument must be >= 0".into()));
    }
    let SigmaB { sigma, b } = sigma_b(rp);
    if rp.p == 1.0 && rp.alpha_rho_hat() >= 0.5 {
        return Ok(LaplaceValue::Degenerate);
    }
    let v = std::f64::consts::PI.sqrt()
        * real_gamma_ratio(
            &[0.5 * (sigma + b + z), 0.5 * (sigma - b + z + 2.0)],
            &[
                0.5 * (sigma + b),
                0.5 * (sigma - b + 2.0),
                0.5 * (1.0 + z),
                0.5 * (2.0 + z),
            ],
        )?;
    Ok(LaplaceValue::Finite(v))
}

fn require_condition(rp: &RicochetParameters) -> Result<()> {
    let cond = wiener_hopf_condition(rp);
    if !cond.holds {
        return Err(DhgError::Parameter(format!(
            "operation needs the Wiener-Hopf condition; it fails for {rp:?}"
        )));
    }
    Ok(())
}

/// Long-term fate of the fully ricocheting process (p = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PssmpFate {
    AbsorbedAtZero,
    Oscillates,
    DriftsToInfinity,
}

pub fn pssmp_classification(rp: &RicochetParameters) -> Result<PssmpFate> {
    if rp.p != 1.0 {
        return Err(DhgError::Parameter(
            "classification applies to the fully ricocheting case p = 1".into(),
        ));
    }
    let sigma = sigma_b(rp).sigma;
    if sigma.abs() < 1e-14 {
        Ok(PssmpFate::Oscillates)
    } else if sigma < 0.0 {
        Ok(PssmpFate::AbsorbedAtZero)
    } else {
        Ok(PssmpFate::DriftsToInfinity)
    }
}

/// Symmetric stable data with partial censoring ("gluing") probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GluedParameters {
    pub alpha: f64,
    pub q: f64,
}

impl GluedParameters {
    pub fn new(alpha: f64, q: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(DhgError::Parameter(format!(
                "stability index must lie in (0, 2), got {alpha}"
            )));
        }
        if !(0.0..1.0).contains(&q) {
            return Err(DhgError::Parameter(format!(
                "gluing probability must lie in [0, 1), got {q}"
            )));
        }
        Ok(GluedParameters { alpha, q })
    }

    /// gamma = arcsin(sqrt(q) sin(pi alpha / 2)) / pi, strictly below both
    /// alpha/2 and 1 - alpha/2.
    pub fn gamma_glue(&self) -> f64 {
        (self.q.sqrt() * sin_pi(0.5 * self.alpha)).asin() / std::f64::consts::PI
    }

    /// Factor quadruples at unit argument scale; the first is evaluated at
    /// -i theta, the second at +i theta.
    pub fn factors(&self) -> (Quadruple, Quadruple) {
        let g = self.gamma_glue();
        let a2 = 0.5 * self.alpha;
        (
            Quadruple { alpha: a2, beta: self.alpha, gamma: a2 - g, delta: a2 + g },
            Quadruple {
                alpha: 1.0 - a2,
                beta: 1.0,
                gamma: 1.0 - g - a2,
                delta: 1.0 + g - a2,
            },
        )
    }
}

/// Exponent of the glued (partially censored) process.
pub fn glued_exponent(gp: &GluedParameters, theta: f64) -> Result<Complex64> {
    let (f1, f2) = gp.factors();
    let it = Complex64::new(0.0, theta);
    Ok(laplace_exponent(&f1, -it)? * laplace_exponent(&f2, it)?)
}

/// Which root of the exponent the Esscher change of measure shifts to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EsscherShift {
    /// theta -> theta + i (b + sigma)
    PlusShift,
    /// theta -> theta - i (b - sigma)
    MinusShift,
}

/// Exponent after the Esscher shift, via analytic continuation of the
/// gamma-product form; vanishes at theta = 0 by the root property.
pub fn esscher_shifted_exponent(
    rp: &RicochetParameters,
    theta: f64,
    which: EsscherShift,
) -> Result<Complex64> {
    require_condition(rp)?;
    let SigmaB { sigma, b } = sigma_b(rp);
    let shift = match which {
        EsscherShift::PlusShift => Complex64::new(0.0, b + sigma),
        EsscherShift::MinusShift => Complex64::new(0.0, -(b - sigma)),
    };
    psi_star_complex(rp, Complex64::new(theta, 0.0) + shift, PsiStarForm::GammaProduct)
}

/// Half-argument factor quadruples of the shifted exponent; both land back
/// in the closed class (one factor loses its killing).
pub fn esscher_shifted_factors(
    rp: &RicochetParameters,
    which: EsscherShift,
) -> Result<(Quadruple, Quadruple)> {
    require_condition(rp)?;
    let SigmaB { sigma, b } = sigma_b(rp);
    let (plus, minus) = wh_factor_quadruples(rp);
    let d = match which {
        EsscherShift::PlusShift => 0.5 * (b + sigma),
        EsscherShift::MinusShift => -0.5 * (b - sigma),
    };
    let shift_q = |q: &Quadruple, s: f64| Quadruple {
        alpha: q.alpha + s,
        beta: q.beta + s,
        gamma: q.gamma + s,
        delta: q.delta + s,
    };
    // The plus factor is evaluated at +i theta/2, so its arguments shift by
    // -d; the minus factor at -i theta/2 shifts by +d. Exact zeros are
    // snapped onto the lattice.
    let snap = |q: Quadruple| {
        let f = |x: f64| if x.abs() < 1e-13 { 0.0 } else { x };
        Quadruple { alpha: f(q.alpha), beta: f(q.beta), gamma: f(q.gamma), delta: f(q.delta) }
    };
    Ok((snap(shift_q(&plus, -d)), snap(shift_q(&minus, d))))
}

/// Sign diagnostics of one finite-difference derivative order over a grid.
#[derive(Debug, Clone, Serialize)]
pub struct DerivativeSigns {
    pub order: usize,
    /// +1 for odd orders, -1 for even orders (Bernstein alternation).
    pub expected_sign: f64,
    /// Fraction of grid points whose estimate carries the expected sign.
    pub ok_fraction: f64,
}

/// Report of the finite-difference complete-monotonicity probe. Advisory:
/// it observes sign patterns, it does not certify class membership.
#[derive(Debug, Clone, Serialize)]
pub struct BernsteinProbe {
    pub orders: Vec<DerivativeSigns>,
}

impl BernsteinProbe {
    /// Largest n such that every order 1..=n alternates on the whole grid.
    pub fn alternation_ok_up_to(&self) -> usize {
        let mut n = 0;
        for d in &self.orders {
            if d.ok_fraction == 1.0 {
                n = d.order;
            } else {
                break;
            }
        }
        n
    }
}

/// Core probe over an arbitrary nonnegative function.
pub fn bernstein_probe_fn<F: Fn(f64) -> Result<f64>>(
    g: F,
    n_derivatives: usize,
    grid: &[f64],
) -> Result<BernsteinProbe> {
    if n_derivatives > 8 {
        return Err(DhgError::Parameter(
            "the finite-difference probe is limited to 8 derivatives".into(),
        ));
    }
    let mut orders = Vec::with_capacity(n_derivatives);
    for n in 1..=n_derivatives {
        let expected = if n % 2 == 1 { 1.0 } else { -1.0 };
        let mut ok = 0usize;
        for &lam in grid {
            // Step capped so the widest stencil stays on the positive axis.
            let h = (0.25 * (1.0 + 0.25 * lam)).min(0.9 * lam / n as f64);
            // Central binomial stencil for the n-th derivative.
            let mut acc = 0.0;
            let mut binom = 1.0f64;
            for k in 0..=n {
                let node = lam + (0.5 * n as f64 - k as f64) * h;
                if node <= 0.0 {
                    return Err(DhgError::Domain(format!(
                        "stencil node {node} left the positive axis at grid point {lam}"
                    )));
                }
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * binom * g(node)?;
                binom = binom * (n as f64 - k as f64) / (k as f64 + 1.0);
            }
            let est = acc / h.powi(n as i32);
            if !est.is_finite() {
                return Err(DhgError::Convergence(format!(
                    "finite-difference step unstable at order {n}, grid point {lam}"
                )));
            }
            if est * expected > 0.0 {
                ok += 1;
            }
        }
        orders.push(DerivativeSigns {
            order: n,
            expected_sign: expected,
            ok_fraction: ok as f64 / grid.len() as f64,
        });
    }
    Ok(BernsteinProbe { orders })
}

/// Probes lambda -> B(factor; lambda / scale), scale 2 for half-argument
/// factors, for the Bernstein sign alternation of its first derivatives.
pub fn bernstein_probe(
    factor: &Quadruple,
    half_argument: bool,
    n_derivatives: usize,
    grid: &[f64],
) -> Result<BernsteinProbe> {
    let scale = if half_argument { 2.0 } else { 1.0 };
    bernstein_probe_fn(
        |lam| Ok(laplace_exponent(factor, Complex64::new(lam / scale, 0.0))?.re),
        n_derivatives,
        grid,
    )
}
