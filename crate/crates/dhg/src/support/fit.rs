//! Least-squares line fit and Richardson-type series extrapolation.

/// Slope and intercept of the least-squares line through (x, y) pairs.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

/// Extrapolates the limit of partial sums whose tails expand as
/// `S(N) = L + sum_j beta_j N^{p - j}` with known leading exponent `p < 0`.
///
/// `samples` holds (N, S(N)) pairs, one unknown per sample: the limit plus
/// one beta per remaining sample. Solved by dense Gaussian elimination on
/// the small Vandermonde-like system.
pub fn power_tail_extrapolate(samples: &[(f64, f64)], p: f64) -> f64 {
    let k = samples.len();
    assert!(k >= 2, "need at least two partial sums");
    // Unknowns: [L, beta_0, ..., beta_{k-2}]
    let mut a = vec![vec![0.0; k]; k];
    let mut b = vec![0.0; k];
    for (row, &(n, s)) in samples.iter().enumerate() {
        a[row][0] = 1.0;
        for j in 0..k - 1 {
            a[row][j + 1] = n.powf(p - j as f64);
        }
        b[row] = s;
    }
    // Gaussian elimination with partial pivoting.
    for col in 0..k {
        let mut piv = col;
        for r in col + 1..k {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        for r in col + 1..k {
            let f = a[r][col] / d;
            for c in col..k {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let mut acc = b[r];
        for c in r + 1..k {
            acc -= a[r][c] * x[c];
        }
        x[r] = acc / a[r][r];
    }
    x[0]
}
