//! Self-contained special-function kernel: complex log-gamma, stable gamma
//! ratios, generalised hypergeometric series and the Barnes double gamma.
//!
//! Everything here is a pure function of its inputs and safe for unrestricted
//! concurrent use.

mod barnes;
mod gamma;
mod pfq;
mod zeta;

pub use barnes::DoubleGamma;
pub use gamma::{
    cos_pi, digamma, gamma_ratio, gamma_real, is_gamma_pole, lgamma_sign, log_gamma,
    log_gamma_ratio, log_sin_pi, sin_pi, trigamma, INTEGER_TOL,
};
pub use pfq::{hyp2f1, pfq, SeriesControl, SeriesValue};
pub use zeta::hurwitz_zeta_int;
