//! Independent stochastic oracle: exact stable increment sampling, Euler
//! paths of the ricocheted processes (positive and real-valued), and
//! deterministic estimators for absorption, extremes and drift.
//!
//! Determinism contract: every path draws from its own counter-based stream
//! keyed by (seed, path index), and all reductions run over index-ordered
//! collected records with pairwise summation, so results are bit-identical
//! across repeat runs, worker counts and the sequential fallback.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{DhgError, Result};
use crate::ricochet::RicochetParameters;
use crate::rssmp::RssmpParameters;
use crate::support::sum::{mean_and_standard_error, pairwise_sum};

/// Common simulation controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationConfig {
    pub seed: u64,
    pub n_paths: usize,
    pub dt: f64,
    pub t_max: f64,
    pub x0: f64,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_paths < 1 {
            return Err(DhgError::Parameter("n_paths must be >= 1".into()));
        }
        if !(self.dt > 0.0 && self.dt <= 1e-2) {
            return Err(DhgError::Parameter(format!(
                "time step must lie in (0, 1e-2], got {}",
                self.dt
            )));
        }
        if !(self.t_max > self.dt) {
            return Err(DhgError::Parameter("t_max must exceed dt".into()));
        }
        if !(self.x0 > 0.0) {
            return Err(DhgError::Parameter("starting point must be positive".into()));
        }
        Ok(())
    }
}

/// Summary of one simulated path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathRecord {
    pub absorbed: bool,
    /// Absorption time; infinity when the path survived to the horizon.
    pub t_absorb: f64,
    /// Supremum of the (absolute) position over the observed lifetime.
    pub sup: f64,
    /// Infimum of the (absolute) position over the observed lifetime.
    pub inf: f64,
    /// Number of surviving reflections at the origin.
    pub ricochet_count: u64,
    /// Total origin crossings seen (each one flips a coin).
    pub crossings: u64,
    /// Sign of the final position (+1/-1); always +1 for the positive
    /// process.
    pub final_sign: i8,
    /// Final position (0 when absorbed).
    pub final_position: f64,
}

/// Monte Carlo point estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
    /// Fraction of paths that reached the horizon unabsorbed.
    pub truncated_fraction: f64,
}

fn stream_rng(seed: u64, path_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path_index.wrapping_add(1));
    rng
}

/// One increment of the strictly stable process over time `dt` in the
/// (alpha, rho) parametrisation, by the exact trigonometric transform:
/// with U uniform on (-pi/2, pi/2), E standard exponential and
/// b = pi (rho - 1/2),
///
///   X = sin(alpha (U + b)) / cos(U)^{1/alpha}
///       * [cos(U - alpha (U + b)) / E]^{(1-alpha)/alpha},
///
/// scaled by dt^{1/alpha}.
pub fn sample_stable_increment<R: Rng>(
    alpha: f64,
    rho: f64,
    dt: f64,
    rng: &mut R,
) -> Result<f64> {
    // Shares the admissibility gate with the analytic modules.
    debug_assert!(RicochetParameters::new(alpha, rho, 0.0).is_ok());
    if !(dt > 0.0) {
        return Err(DhgError::Parameter("dt must be positive".into()));
    }
    let u = std::f64::consts::PI * (rng.gen::<f64>() - 0.5);
    let e: f64 = -(1.0 - rng.gen::<f64>()).ln();
    let scale = dt.powf(1.0 / alpha);
    if alpha == 1.0 {
        // rho = 1/2 here: standard Cauchy.
        return Ok(scale * u.tan());
    }
    let b = std::f64::consts::PI * (rho - 0.5);
    let core = (alpha * (u + b)).sin() / u.cos().powf(1.0 / alpha)
        * ((u - alpha * (u + b)).cos() / e).powf((1.0 - alpha) / alpha);
    Ok(scale * core)
}

/// Characteristic exponent of the sampled stable law,
/// |theta|^alpha exp(i pi alpha (1/2 - rho) sgn theta); used by the
/// empirical characteristic-function checks.
pub fn stable_characteristic_exponent(alpha: f64, rho: f64, theta: f64) -> num_complex::Complex64 {
    let phase = std::f64::consts::PI * alpha * (0.5 - rho) * theta.signum();
    theta.abs().powf(alpha) * num_complex::Complex64::new(phase.cos(), phase.sin())
}

/// Euler path of the positive ricocheted process: from x0 > 0 the position
/// follows stable increments; the first grid point in the negative
/// half-line triggers a coin with probability p of reflecting to |x|,
/// otherwise the path is absorbed at zero.
pub fn simulate_ricochet_path(
    rp: &RicochetParameters,
    cfg: &SimulationConfig,
    path_index: u64,
) -> PathRecord {
    let mut rng = stream_rng(cfg.seed, path_index);
    let scale = cfg.dt.powf(1.0 / rp.alpha);
    let b = std::f64::consts::PI * (rp.rho - 0.5);
    let inv_alpha = 1.0 / rp.alpha;
    let exp_exp = (1.0 - rp.alpha) / rp.alpha;
    let mut pos = cfg.x0;
    let (mut sup, mut inf) = (cfg.x0, cfg.x0);
    let mut t = 0.0;
    let (mut ricochets, mut crossings) = (0u64, 0u64);
    let n_steps = (cfg.t_max / cfg.dt).ceil() as u64;
    for _ in 0..n_steps {
        t += cfg.dt;
        let u = std::f64::consts::PI * (rng.gen::<f64>() - 0.5);
        let e: f64 = -(1.0 - rng.gen::<f64>()).ln();
        let step = if rp.alpha == 1.0 {
            scale * u.tan()
        } else {
            scale
                * ((rp.alpha * (u + b)).sin() / u.cos().powf(inv_alpha)
                    * ((u - rp.alpha * (u + b)).cos() / e).powf(exp_exp))
        };
        pos += step;
        if pos < 0.0 {
            crossings += 1;
            if rng.gen::<f64>() < rp.p {
                ricochets += 1;
                pos = -pos;
            } else {
                return PathRecord {
                    absorbed: true,
                    t_absorb: t,
                    sup,
                    inf,
                    ricochet_count: ricochets,
                    crossings,
                    final_sign: 1,
                    final_position: 0.0,
                };
            }
        }
        sup = sup.max(pos);
        inf = inf.min(pos);
    }
    PathRecord {
        absorbed: false,
        t_absorb: f64::INFINITY,
        sup,
        inf,
        ricochet_count: ricochets,
        crossings,
        final_sign: 1,
        final_position: pos,
    }
}

/// Euler path of the real-valued ricocheted process: each sign change flips
/// the coin of its direction (p downward, phat upward); heads reflects the
/// position across zero, tails lets it continue on the new side.
pub fn simulate_rssmp_path(
    rs: &RssmpParameters,
    cfg: &SimulationConfig,
    path_index: u64,
) -> PathRecord {
    let mut rng = stream_rng(cfg.seed, path_index);
    let scale = cfg.dt.powf(1.0 / rs.alpha);
    let b = std::f64::consts::PI * (rs.rho - 0.5);
    let inv_alpha = 1.0 / rs.alpha;
    let exp_exp = (1.0 - rs.alpha) / rs.alpha;
    let mut pos = cfg.x0;
    let (mut sup, mut inf) = (cfg.x0, cfg.x0);
    let (mut ricochets, mut crossings) = (0u64, 0u64);
    let n_steps = (cfg.t_max / cfg.dt).ceil() as u64;
    for _ in 0..n_steps {
        let u = std::f64::consts::PI * (rng.gen::<f64>() - 0.5);
        let e: f64 = -(1.0 - rng.gen::<f64>()).ln();
        let step = if rs.alpha == 1.0 {
            scale * u.tan()
        } else {
            scale
                * ((rs.alpha * (u + b)).sin() / u.cos().powf(inv_alpha)
                    * ((u - rs.alpha * (u + b)).cos() / e).powf(exp_exp))
        };
        let was_positive = pos > 0.0;
        pos += step;
        if was_positive && pos < 0.0 {
            crossings += 1;
            if rng.gen::<f64>() < rs.p {
                ricochets += 1;
                pos = -pos;
            }
        } else if !was_positive && pos > 0.0 {
            crossings += 1;
            if rng.gen::<f64>() < rs.phat {
                ricochets += 1;
                pos = -pos;
            }
        }
        sup = sup.max(pos.abs());
        inf = inf.min(pos.abs());
    }
    PathRecord {
        absorbed: false,
        t_absorb: f64::INFINITY,
        sup,
        inf,
        ricochet_count: ricochets,
        crossings,
        final_sign: if pos >= 0.0 { 1 } else { -1 },
        final_position: pos,
    }
}

/// Batch of ricochet paths on the configured execution backend.
pub fn simulate_ricochet_batch(rp: &RicochetParameters, cfg: &SimulationConfig) -> Result<Vec<PathRecord>> {
    cfg.validate()?;
    Ok(crate::exec::map_indices(cfg.n_paths, |i| {
        simulate_ricochet_path(rp, cfg, i as u64)
    }))
}

/// Sequential batch, always compiled; the determinism suite compares it
/// bitwise against the parallel path.
pub fn simulate_ricochet_batch_sequential(
    rp: &RicochetParameters,
    cfg: &SimulationConfig,
) -> Result<Vec<PathRecord>> {
    cfg.validate()?;
    Ok(crate::exec::map_indices_sequential(cfg.n_paths, |i| {
        simulate_ricochet_path(rp, cfg, i as u64)
    }))
}

/// Batch of real-valued ricochet paths.
pub fn simulate_rssmp_batch(rs: &RssmpParameters, cfg: &SimulationConfig) -> Result<Vec<PathRecord>> {
    cfg.validate()?;
    Ok(crate::exec::map_indices(cfg.n_paths, |i| {
        simulate_rssmp_path(rs, cfg, i as u64)
    }))
}

/// Sequential variant of [`simulate_rssmp_batch`].
pub fn simulate_rssmp_batch_sequential(
    rs: &RssmpParameters,
    cfg: &SimulationConfig,
) -> Result<Vec<PathRecord>> {
    cfg.validate()?;
    Ok(crate::exec::map_indices_sequential(cfg.n_paths, |i| {
        simulate_rssmp_path(rs, cfg, i as u64)
    }))
}

fn truncated_fraction(records: &[PathRecord]) -> f64 {
    records.iter().filter(|r| !r.absorbed).count() as f64 / records.len() as f64
}

/// Mean of (sup / x0)^{-z} over all paths.
pub fn estimate_sup_moment(records: &[PathRecord], x0: f64, z: f64) -> Estimate {
    let vals: Vec<f64> = records.iter().map(|r| (r.sup / x0).powf(-z)).collect();
    let (mean, se) = mean_and_standard_error(&vals);
    Estimate {
        mean,
        std_error: se,
        n: vals.len(),
        truncated_fraction: truncated_fraction(records),
    }
}

/// Mean of (x0 / inf)^{-z} over all paths.
pub fn estimate_inf_moment(records: &[PathRecord], x0: f64, z: f64) -> Estimate {
    let vals: Vec<f64> = records.iter().map(|r| (x0 / r.inf).powf(-z)).collect();
    let (mean, se) = mean_and_standard_error(&vals);
    Estimate {
        mean,
        std_error: se,
        n: vals.len(),
        truncated_fraction: truncated_fraction(records),
    }
}

/// Lower/upper enclosure of the sup moment acknowledging censored paths:
/// a path cut at the horizon has already seen `sup`, so its true
/// contribution lies in (0, (sup/x0)^{-z}]. The returned pair brackets the
/// uncensored mean.
pub fn sup_moment_enclosure(records: &[PathRecord], x0: f64, z: f64) -> (f64, f64) {
    let upper: Vec<f64> = records.iter().map(|r| (r.sup / x0).powf(-z)).collect();
    let lower: Vec<f64> = records
        .iter()
        .map(|r| if r.absorbed { (r.sup / x0).powf(-z) } else { 0.0 })
        .collect();
    (
        pairwise_sum(&lower) / records.len() as f64,
        pairwise_sum(&upper) / records.len() as f64,
    )
}

/// Per-crossing survival frequency with its binomial standard error; the
/// estimates pool every coin flip across the batch.
pub fn estimate_survival_rate(records: &[PathRecord]) -> Estimate {
    let crossings: u64 = records.iter().map(|r| r.crossings).sum();
    let survivals: u64 = records.iter().map(|r| r.ricochet_count).sum();
    let n = crossings.max(1);
    let p_hat = survivals as f64 / n as f64;
    Estimate {
        mean: p_hat,
        std_error: (p_hat * (1.0 - p_hat) / n as f64).sqrt(),
        n: n as usize,
        truncated_fraction: truncated_fraction(records),
    }
}

/// Mean of t_absorb^{s-1} over the absorbed paths of a batch.
pub fn estimate_mellin_t0_from(records: &[PathRecord], s: f64) -> Result<Estimate> {
    let vals: Vec<f64> = records
        .iter()
        .filter(|r| r.absorbed)
        .map(|r| r.t_absorb.powf(s - 1.0))
        .collect();
    if vals.is_empty() {
        return Err(DhgError::Parameter(
            "no absorbed paths: cannot estimate the absorption-time moment".into(),
        ));
    }
    let (mean, se) = mean_and_standard_error(&vals);
    Ok(Estimate {
        mean,
        std_error: se,
        n: vals.len(),
        truncated_fraction: truncated_fraction(records),
    })
}

/// Monte Carlo moment E[T0^{s-1}] of the absorption time of the ricocheted
/// process, with the truncation fraction flagged alongside.
pub fn estimate_mellin_t0(
    rp: &RicochetParameters,
    s: f64,
    cfg: &SimulationConfig,
) -> Result<Estimate> {
    if rp.p >= 1.0 && 0.5 - rp.alpha_rho_hat() >= 0.0 {
        return Err(DhgError::Parameter(
            "absorption time is almost surely infinite in this regime".into(),
        ));
    }
    let records = simulate_ricochet_batch(rp, cfg)?;
    estimate_mellin_t0_from(&records, s)
}

/// Summary of one path observed in the clock of its modulating additive
/// process (the Lamperti time change phi_t = int |X_u|^{-alpha} du).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MapPathRecord {
    /// log |X| displacement from the start at the stopping step.
    pub log_displacement: f64,
    /// Accumulated additive-process time at the stopping step.
    pub map_time: f64,
    /// True when the path left through the lower barrier.
    pub exited_bottom: bool,
    /// True when the horizon cut the path before either barrier.
    pub truncated: bool,
}

/// Real-valued ricochet path run until |X| first leaves
/// [lower x0, upper x0] (or the horizon), recorded in the additive clock.
/// The barriers keep the observation window inside the region where the
/// spatial discretisation resolves the dynamics.
pub fn simulate_rssmp_map_path(
    rs: &RssmpParameters,
    cfg: &SimulationConfig,
    lower: f64,
    upper: f64,
    path_index: u64,
) -> MapPathRecord {
    let mut rng = stream_rng(cfg.seed, path_index);
    let scale = cfg.dt.powf(1.0 / rs.alpha);
    let b = std::f64::consts::PI * (rs.rho - 0.5);
    let inv_alpha = 1.0 / rs.alpha;
    let exp_exp = (1.0 - rs.alpha) / rs.alpha;
    let mut pos = cfg.x0;
    let mut map_time = 0.0;
    let n_steps = (cfg.t_max / cfg.dt).ceil() as u64;
    let (lo, hi) = (lower * cfg.x0, upper * cfg.x0);
    for _ in 0..n_steps {
        map_time += cfg.dt * pos.abs().powf(-rs.alpha);
        let u = std::f64::consts::PI * (rng.gen::<f64>() - 0.5);
        let e: f64 = -(1.0 - rng.gen::<f64>()).ln();
        let step = if rs.alpha == 1.0 {
            scale * u.tan()
        } else {
            scale
                * ((rs.alpha * (u + b)).sin() / u.cos().powf(inv_alpha)
                    * ((u - rs.alpha * (u + b)).cos() / e).powf(exp_exp))
        };
        let was_positive = pos > 0.0;
        pos += step;
        if was_positive && pos < 0.0 {
            if rng.gen::<f64>() < rs.p {
                pos = -pos;
            }
        } else if !was_positive && pos > 0.0 {
            if rng.gen::<f64>() < rs.phat {
                pos = -pos;
            }
        }
        let a = pos.abs();
        if a < lo || a > hi {
            return MapPathRecord {
                log_displacement: (a / cfg.x0).ln(),
                map_time,
                exited_bottom: a < lo,
                truncated: false,
            };
        }
    }
    MapPathRecord {
        log_displacement: (pos.abs() / cfg.x0).ln(),
        map_time,
        exited_bottom: false,
        truncated: true,
    }
}

/// Drift estimate of the modulated additive process: per-path ratio of the
/// stopped log displacement to the accumulated additive time. Its sign
/// estimates sign(chi'(0)).
pub fn estimate_map_drift(
    rs: &RssmpParameters,
    cfg: &SimulationConfig,
    lower: f64,
    upper: f64,
) -> Result<Estimate> {
    cfg.validate()?;
    if !(lower > 0.0 && lower < 1.0 && upper > 1.0) {
        return Err(DhgError::Parameter(
            "barriers must satisfy 0 < lower < 1 < upper".into(),
        ));
    }
    let records = crate::exec::map_indices(cfg.n_paths, |i| {
        simulate_rssmp_map_path(rs, cfg, lower, upper, i as u64)
    });
    let vals: Vec<f64> = records
        .iter()
        .map(|r| r.log_displacement / r.map_time.max(cfg.dt))
        .collect();
    let (mean, se) = mean_and_standard_error(&vals);
    Ok(Estimate {
        mean,
        std_error: se,
        n: vals.len(),
        truncated_fraction: records.iter().filter(|r| r.truncated).count() as f64
            / records.len() as f64,
    })
}
