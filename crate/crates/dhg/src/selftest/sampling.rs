//! Seeded samplers for the acceptance suites: interior quadruples, factor
//! pairs and admissible stable-process parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::doublebeta::{classify, Quadruple};
use crate::dhgprocess::DhgParameters;
use crate::ricochet::RicochetParameters;
use crate::rssmp::RssmpParameters;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    /// Interior quadruple built from a strict interlacing chain, with
    /// comfortable margins and a sum gap kept inside [0.08, 0.92] so the
    /// near-unit hypergeometric transformation stays well conditioned.
    pub fn interior_quadruple(&mut self) -> Quadruple {
        loop {
            let case_one = self.rng.gen::<bool>();
            let k = self.rng.gen_range(0..3u32) as f64 + if case_one { 0.0 } else { 1.0 };
            let q = if case_one {
                // gamma + k < alpha + k < delta < beta < gamma + k + 1
                let g = self.uniform(0.1, 1.4);
                let a = g + self.uniform(0.05, 0.93);
                let lo = a + k;
                let hi = g + k + 1.0;
                if hi - lo < 0.08 {
                    continue;
                }
                let u1 = self.uniform(lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo));
                let u2 = self.uniform(lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo));
                let (d, b) = if u1 < u2 { (u1, u2) } else { (u2, u1) };
                if b - d < 0.02 {
                    continue;
                }
                Quadruple { alpha: a, beta: b, gamma: g, delta: d }
            } else {
                // alpha + k - 1 < gamma + k < beta < delta < alpha + k
                let a = self.uniform(0.2, 1.6);
                let g = a - self.uniform(0.05, 0.93);
                if g < 0.05 {
                    continue;
                }
                let lo = g + k;
                let hi = a + k;
                if hi - lo < 0.08 {
                    continue;
                }
                let u1 = self.uniform(lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo));
                let u2 = self.uniform(lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo));
                let (b, d) = if u1 < u2 { (u1, u2) } else { (u2, u1) };
                if d - b < 0.02 {
                    continue;
                }
                Quadruple { alpha: a, beta: b, gamma: g, delta: d }
            };
            let gap = q.sum_gap();
            if !(0.08..=0.92).contains(&gap) {
                continue;
            }
            debug_assert!(classify(&q).is_interior(), "sampler produced {q:?}");
            return q;
        }
    }

    /// Interior factor pair.
    pub fn interior_pair(&mut self) -> DhgParameters {
        let plus = self.interior_quadruple();
        let minus = self.interior_quadruple();
        DhgParameters::new(plus, minus).expect("interior factors are admissible")
    }

    /// Admissible (alpha, rho, p) with two-sided jumps.
    pub fn ricochet(&mut self) -> RicochetParameters {
        let mut alpha = self.uniform(0.15, 1.95);
        if (alpha - 1.0).abs() < 0.02 {
            alpha = 1.0;
        }
        let rho = if alpha == 1.0 {
            0.5
        } else {
            let lo = (1.0 - 1.0 / alpha).max(0.0);
            let hi = (1.0 / alpha).min(1.0);
            lo + (hi - lo) * self.uniform(0.05, 0.95)
        };
        let p = self.uniform(0.0, 1.0);
        RicochetParameters::new(alpha, rho, p).expect("sampler respects admissibility")
    }

    /// Admissible two-sided ricochet parameters with p, phat in [0, 0.98].
    pub fn rssmp(&mut self) -> RssmpParameters {
        let base = self.ricochet();
        RssmpParameters::new(
            base.alpha,
            base.rho,
            self.uniform(0.0, 0.98),
            self.uniform(0.0, 0.98),
        )
        .expect("sampler respects admissibility")
    }

    /// Point in the open upper half-plane.
    pub fn upper_half_plane(&mut self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.uniform(-8.0, 8.0), self.uniform(0.02, 8.0))
    }
}
