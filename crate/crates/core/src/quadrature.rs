//! Gauss–Hermite rules for `∫ f(y) e^{−y²} dy`.

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, RealMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Normalised Hermite values `(p_{n−1}(x), p_n(x))` with
/// `p₀ = π^{−1/4}` and `p_j = x√(2/j) p_{j−1} − √((j−1)/j) p_{j−2}`.
fn hermite_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25);
    for j in 1..=n {
        let jf = j as f64;
        let next = x * (2.0 / jf).sqrt() * cur - ((jf - 1.0) / jf).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// `n`-point rule from the eigenvalues of the Jacobi matrix, polished by
/// Newton steps on the normalised Hermite polynomial. Exact for polynomials
/// of degree up to `2n − 1`.
pub fn gauss_hermite(n: usize) -> Result<GaussHermite> {
    if n == 0 {
        return Err(Error::invalid("Gauss-Hermite rule needs at least one node"));
    }
    let mut jacobi = RealMatrix::zeros(n, n);
    for j in 1..n {
        let b = (j as f64 / 2.0).sqrt();
        jacobi[(j - 1, j)] = b;
        jacobi[(j, j - 1)] = b;
    }
    let (mut nodes, _) = symmetric_eigen(&jacobi)?;
    let nf = n as f64;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (pm1, p) = hermite_pair(n, *x);
            // p_n' = √(2n) p_{n−1}
            let dp = (2.0 * nf).sqrt() * pm1;
            if dp == 0.0 {
                break;
            }
            *x -= p / dp;
        }
        let (pm1, _) = hermite_pair(n, *x);
        let dp = (2.0 * nf).sqrt() * pm1;
        weights.push(2.0 / (dp * dp));
    }
    Ok(GaussHermite { nodes, weights })
}
