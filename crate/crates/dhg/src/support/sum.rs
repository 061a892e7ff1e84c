//! Deterministic pairwise summation and moment helpers.
//!
//! Reductions over Monte Carlo outputs must not depend on worker count, so
//! estimates are always formed from a fully collected, index-ordered slice
//! using this fixed reduction tree.

/// Pairwise (tree) summation; associativity is fixed by the slice layout.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Mean and standard error of the mean, via two-pass pairwise sums.
pub fn mean_and_standard_error(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = pairwise_sum(xs) / n as f64;
    if n == 1 {
        return (mean, f64::NAN);
    }
    let sq: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&sq) / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_sequential_on_small_input() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64).sin()).collect();
        let seq: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - seq).abs() < 1e-12);
    }

    #[test]
    fn mean_se_of_constant_sequence() {
        let xs = vec![2.5; 64];
        let (m, se) = mean_and_standard_error(&xs);
        assert_eq!(m, 2.5);
        assert_eq!(se, 0.0);
    }
}
