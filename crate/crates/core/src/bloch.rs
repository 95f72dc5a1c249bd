//! Bloch vectors, pairwise correlation tensors and complete sets of
//! orthogonal observables.
//!
//! A local Bloch vector has components `r_k = Tr[ρ σ_k]` on a given site, and
//! the pairwise correlation tensor of sites `(i, j)` has entries
//! `t_kl = Tr[ρ σ_k^{(i)} σ_l^{(j)}]`. With these conventions a two-qudit state is
//!
//! ```text
//! ρ = I/d² + (r⃗₁·σ⃗ ⊗ I + I ⊗ r⃗₂·σ⃗)/(2d) + ¼ Σ t_kl σ_k ⊗ σ_l .
//! ```
//!
//! The same state written as `(1/d²)(I + … + Σ τ_kl σ_k ⊗ σ_l)` has
//! `τ = (d²/4)·t`; [`expansion_correlation_tensor`] returns that rescaled
//! tensor, which is the one the `d(d−1)/2` Ky-Fan separability bound refers to.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::generators::GeneratorBasis;
use crate::linalg::{real_svd, ComplexMatrix, RealMatrix};
use crate::operators::{expectation, partial_trace, DensityMatrix, Observable};

/// Tolerance on `ΘΘᵀ = I` for rotations that define observable sets.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;

fn check_uniform_dims(rho: &DensityMatrix, basis: &GeneratorBasis) -> Result<()> {
    let d = basis.dim();
    if let Some(&bad) = rho.dims().iter().find(|&&x| x != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad,
        });
    }
    Ok(())
}

fn check_site(rho: &DensityMatrix, site: usize) -> Result<()> {
    if site >= rho.num_subsystems() {
        return Err(Error::BadSubsystem {
            index: site,
            count: rho.num_subsystems(),
        });
    }
    Ok(())
}

/// Local Bloch vector of `site`.
pub fn bloch_vector(rho: &DensityMatrix, basis: &GeneratorBasis, site: usize) -> Result<Vec<f64>> {
    check_uniform_dims(rho, basis)?;
    check_site(rho, site)?;
    let local = partial_trace(rho, &[site])?;
    basis
        .generators()
        .iter()
        .map(|g| expectation(&local, g))
        .collect()
}

/// Pairwise correlation tensor `t_kl = Tr[ρ σ_k^{(i)} σ_l^{(j)}]`.
pub fn pairwise_correlation_tensor(
    rho: &DensityMatrix,
    basis: &GeneratorBasis,
    sites: (usize, usize),
) -> Result<RealMatrix> {
    check_uniform_dims(rho, basis)?;
    let (i, j) = sites;
    check_site(rho, i)?;
    check_site(rho, j)?;
    if i == j {
        return Err(Error::invalid("correlation tensor needs two distinct sites"));
    }
    // partial_trace orders the kept sites ascending
    let pair = partial_trace(rho, &[i, j])?;
    let n = basis.len();
    let mut t = RealMatrix::zeros(n, n);
    for k in 0..n {
        let rho_k = pair.matrix().matmul(&basis.generator(k).kron(&Observable::identity(basis.dim())).matrix().clone());
        for l in 0..n {
            let il = Observable::identity(basis.dim()).kron(basis.generator(l));
            t[(k, l)] = rho_k.trace_product(il.matrix()).re;
        }
    }
    Ok(if i < j { t } else { t.transpose() })
}

/// Correlation tensor in the `(1/d²)(I + … + Σ τ_kl σ_k⊗σ_l)` expansion,
/// `τ = (d²/4) t`.
pub fn expansion_correlation_tensor(
    rho: &DensityMatrix,
    basis: &GeneratorBasis,
    sites: (usize, usize),
) -> Result<RealMatrix> {
    let d = basis.dim() as f64;
    Ok(pairwise_correlation_tensor(rho, basis, sites)?.scale(d * d / 4.0))
}

/// Sum of singular values.
pub fn ky_fan_norm(m: &RealMatrix) -> Result<f64> {
    Ok(real_svd(m)?.singular_values.iter().sum())
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Local Bloch vectors of every site and correlation tensors of every pair.
#[derive(Debug, Clone)]
pub struct BlochDecomposition {
    pub dim: usize,
    pub sites: usize,
    pub local_vectors: Vec<Vec<f64>>,
    /// Keyed by `(i, j)` with `i < j`.
    pub pairwise_tensors: BTreeMap<(usize, usize), RealMatrix>,
}

impl BlochDecomposition {
    pub fn new(rho: &DensityMatrix, basis: &GeneratorBasis) -> Result<Self> {
        check_uniform_dims(rho, basis)?;
        let sites = rho.num_subsystems();
        let local_vectors = (0..sites)
            .map(|s| bloch_vector(rho, basis, s))
            .collect::<Result<Vec<_>>>()?;
        let mut pairwise_tensors = BTreeMap::new();
        for i in 0..sites {
            for j in (i + 1)..sites {
                pairwise_tensors.insert((i, j), pairwise_correlation_tensor(rho, basis, (i, j))?);
            }
        }
        Ok(Self {
            dim: basis.dim(),
            sites,
            local_vectors,
            pairwise_tensors,
        })
    }

    pub fn tensor(&self, i: usize, j: usize) -> Option<RealMatrix> {
        if i < j {
            self.pairwise_tensors.get(&(i, j)).cloned()
        } else {
            self.pairwise_tensors.get(&(j, i)).map(RealMatrix::transpose)
        }
    }
}

/// Rebuilds a two-site state from its Bloch data.
pub fn reconstruct_two_site(
    basis: &GeneratorBasis,
    r1: &[f64],
    r2: &[f64],
    t: &RealMatrix,
) -> Result<ComplexMatrix> {
    let d = basis.dim();
    let id = Observable::identity(d);
    let df = d as f64;
    let mut m = ComplexMatrix::identity(d * d).scale(1.0 / (df * df));
    m = m.add(&basis.combination(r1)?.kron(&id).matrix().scale(0.5 / df));
    m = m.add(&id.kron(&basis.combination(r2)?).matrix().scale(0.5 / df));
    for k in 0..basis.len() {
        for l in 0..basis.len() {
            let c = t[(k, l)];
            if c != 0.0 {
                let term = basis.generator(k).kron(basis.generator(l));
                m = m.add(&term.matrix().scale(0.25 * c));
            }
        }
    }
    Ok(m)
}

/// Observables `Ã_i = Σ_j Θ_ij σ_j` for an orthogonal `Θ`.
#[derive(Debug, Clone)]
pub struct OrthogonalObservableSet {
    pub rotation: RealMatrix,
    pub observables: Vec<Observable>,
    /// Rows of `Θ`, i.e. the Bloch vector `a⃗_i` of each `Ã_i`.
    pub bloch_rows: Vec<Vec<f64>>,
}

pub fn orthogonal_observable_set(
    basis: &GeneratorBasis,
    theta: &RealMatrix,
) -> Result<OrthogonalObservableSet> {
    let n = basis.len();
    if theta.rows() != n || theta.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: theta.rows().max(theta.cols()),
        });
    }
    let dev = theta.orthogonality_deviation();
    if dev > ORTHOGONALITY_TOLERANCE {
        return Err(Error::invalid(format!(
            "rotation is not orthogonal (max |ΘΘᵀ − I| = {dev:e})"
        )));
    }
    let bloch_rows: Vec<Vec<f64>> = (0..n).map(|i| theta.row(i)).collect();
    let observables = bloch_rows
        .iter()
        .map(|row| basis.combination(row))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrthogonalObservableSet {
        rotation: theta.clone(),
        observables,
        bloch_rows,
    })
}

/// `Σ_i a⃗_iᵀ T b⃗_i`.
pub fn alignment_sum(t: &RealMatrix, a: &OrthogonalObservableSet, b: &OrthogonalObservableSet) -> f64 {
    a.bloch_rows
        .iter()
        .zip(&b.bloch_rows)
        .map(|(ai, bi)| {
            let tb = t.mul_vec(bi);
            ai.iter().zip(&tb).map(|(x, y)| x * y).sum::<f64>()
        })
        .sum()
}

/// Observable sets aligned with the singular vectors of `T`: `a⃗_i = u⃗_i`
/// and `b⃗_i = −v⃗_i`, so that `Σ a⃗_iᵀ T b⃗_i = −‖T‖_KF`.
pub fn svd_aligned_observable_sets(
    t: &RealMatrix,
    basis: &GeneratorBasis,
) -> Result<(OrthogonalObservableSet, OrthogonalObservableSet)> {
    let n = basis.len();
    if t.rows() != n || t.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.rows().max(t.cols()),
        });
    }
    let svd = real_svd(t)?;
    let theta_a = svd.u.transpose();
    let theta_b = svd.v.transpose().scale(-1.0);
    Ok((
        orthogonal_observable_set(basis, &theta_a)?,
        orthogonal_observable_set(basis, &theta_b)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gell_mann_basis;
    use crate::random::Sampler;
    use crate::states;

    #[test]
    fn bloch_vector_examples() {
        let b2 = gell_mann_basis(2).unwrap();
        let zero = DensityMatrix::single(ComplexMatrix::diagonal(&[1.0, 0.0])).unwrap();
        assert_eq!(bloch_vector(&zero, &b2, 0).unwrap(), vec![0.0, 0.0, 1.0]);
        let b3 = gell_mann_basis(3).unwrap();
        let mixed = DensityMatrix::maximally_mixed(vec![3]);
        assert!(bloch_vector(&mixed, &b3, 0).unwrap().iter().all(|x| x.abs() < 1e-15));
        let q0 = DensityMatrix::single(ComplexMatrix::diagonal(&[1.0, 0.0, 0.0])).unwrap();
        let r = bloch_vector(&q0, &b3, 0).unwrap();
        assert!((norm(&r).powi(2) - 4.0 / 3.0).abs() < 1e-14);
        assert!(bloch_vector(&q0, &b2, 0).is_err());
        assert!(bloch_vector(&q0, &b3, 1).is_err());
    }

    #[test]
    fn local_reconstruction_matches_partial_trace() {
        let b3 = gell_mann_basis(3).unwrap();
        let mut s = Sampler::new(9);
        let rho = s.mixed_state(&[3, 3], 3);
        for site in 0..2 {
            let r = bloch_vector(&rho, &b3, site).unwrap();
            let rebuilt = ComplexMatrix::identity(3)
                .scale(1.0 / 3.0)
                .add(&b3.combination(&r).unwrap().matrix().scale(0.5));
            let reduced = partial_trace(&rho, &[site]).unwrap();
            assert!(rebuilt.max_abs_diff(reduced.matrix()) < 1e-10);
        }
    }

    #[test]
    fn correlation_tensor_examples() {
        let b2 = gell_mann_basis(2).unwrap();
        let r1 = [0.3, -0.2, 0.5];
        let r2 = [0.0, 0.6, 0.1];
        let p = states::nqubit_product(&[r1, r2]).unwrap();
        let t = pairwise_correlation_tensor(&p, &b2, (0, 1)).unwrap();
        for k in 0..3 {
            for l in 0..3 {
                assert!((t[(k, l)] - r1[k] * r2[l]).abs() < 1e-15);
            }
        }
        let singlet = states::werner(1.0).unwrap();
        let t = pairwise_correlation_tensor(&singlet, &b2, (0, 1)).unwrap();
        assert!(t.max_abs_diff(&RealMatrix::identity(3).scale(-1.0)) < 1e-15);

        let lam: f64 = 0.3;
        let s = states::schmidt_pure(lam).unwrap();
        let t = pairwise_correlation_tensor(&s, &b2, (0, 1)).unwrap();
        let txx = 2.0 * (lam * (1.0 - lam)).sqrt();
        assert!((t[(0, 0)] - txx).abs() < 1e-15);
        assert!((t[(1, 1)] + txx).abs() < 1e-15);
        assert!((t[(2, 2)] - 1.0).abs() < 1e-15);
        assert!(pairwise_correlation_tensor(&s, &b2, (0, 0)).is_err());
        assert!(pairwise_correlation_tensor(&s, &b2, (0, 2)).is_err());
    }

    #[test]
    fn reversed_site_order_transposes() {
        let b2 = gell_mann_basis(2).unwrap();
        let mut s = Sampler::new(2);
        let rho = s.mixed_state(&[2, 2, 2], 2);
        let t02 = pairwise_correlation_tensor(&rho, &b2, (0, 2)).unwrap();
        let t20 = pairwise_correlation_tensor(&rho, &b2, (2, 0)).unwrap();
        assert!(t02.max_abs_diff(&t20.transpose()) < 1e-15);
        let dec = BlochDecomposition::new(&rho, &b2).unwrap();
        assert_eq!(dec.pairwise_tensors.len(), 3);
        assert!(dec.tensor(2, 0).unwrap().max_abs_diff(&t20) < 1e-15);
    }

    #[test]
    fn two_qubit_reconstruction() {
        let b2 = gell_mann_basis(2).unwrap();
        let mut s = Sampler::new(13);
        for _ in 0..20 {
            let rho = s.mixed_state(&[2, 2], 4);
            let dec = BlochDecomposition::new(&rho, &b2).unwrap();
            let m = reconstruct_two_site(&b2, &dec.local_vectors[0], &dec.local_vectors[1], &dec.tensor(0, 1).unwrap()).unwrap();
            assert!(m.max_abs_diff(rho.matrix()) < 1e-10);
        }
        let b3 = gell_mann_basis(3).unwrap();
        let rho = s.mixed_state(&[3, 3], 4);
        let dec = BlochDecomposition::new(&rho, &b3).unwrap();
        let m = reconstruct_two_site(&b3, &dec.local_vectors[0], &dec.local_vectors[1], &dec.tensor(0, 1).unwrap()).unwrap();
        assert!(m.max_abs_diff(rho.matrix()) < 1e-10);
    }

    #[test]
    fn bloch_norm_bound() {
        let mut s = Sampler::new(21);
        for d in 2..=4 {
            let b = gell_mann_basis(d).unwrap();
            for _ in 0..10 {
                let rho = s.pure_state(&[d, d]);
                let dec = BlochDecomposition::new(&rho, &b).unwrap();
                let bound = 2.0 * (d as f64 - 1.0) / d as f64;
                for r in &dec.local_vectors {
                    assert!(norm(r).powi(2) <= bound + 1e-9);
                }
            }
        }
    }

    #[test]
    fn ky_fan_examples() {
        assert!((ky_fan_norm(&RealMatrix::diagonal(&[1.0, -2.0, 3.0])).unwrap() - 6.0).abs() < 1e-14);
        let b2 = gell_mann_basis(2).unwrap();
        for k in 0..=10 {
            let p = k as f64 / 10.0;
            let t = pairwise_correlation_tensor(&states::werner(p).unwrap(), &b2, (0, 1)).unwrap();
            assert!((ky_fan_norm(&t).unwrap() - 3.0 * p).abs() < 1e-14);
        }
    }

    #[test]
    fn ky_fan_orthogonal_invariance() {
        let mut s = Sampler::new(31);
        for n in [3, 8] {
            for _ in 0..10 {
                let m = s.rotation(n).scale(0.0);
                let m = {
                    let data = (0..n * n).map(|_| s.normal()).collect();
                    m.sub(&RealMatrix::new(n, n, data).unwrap())
                };
                let q = s.rotation(n);
                let r = s.rotation(n);
                let a = ky_fan_norm(&m).unwrap();
                let b = ky_fan_norm(&q.transpose().matmul(&m).matmul(&r)).unwrap();
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn orthogonal_set_examples() {
        let b2 = gell_mann_basis(2).unwrap();
        let id = orthogonal_observable_set(&b2, &RealMatrix::identity(3)).unwrap();
        for (o, g) in id.observables.iter().zip(b2.generators()) {
            assert_eq!(o.matrix(), g.matrix());
        }
        // rows (0,1,0), (−1,0,0), (0,0,1)
        let rot = RealMatrix::from_rows(&[vec![0.0, 1.0, 0.0], vec![-1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let set = orthogonal_observable_set(&b2, &rot).unwrap();
        assert_eq!(set.observables[0].matrix(), b2.generator(1).matrix());
        assert_eq!(set.observables[1].matrix(), &b2.generator(0).matrix().scale(-1.0));
        assert_eq!(set.observables[2].matrix(), b2.generator(2).matrix());

        let skew = RealMatrix::from_rows(&[vec![1.0, 0.1, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        assert!(orthogonal_observable_set(&b2, &skew).is_err());

        let b3 = gell_mann_basis(3).unwrap();
        let mut s = Sampler::new(41);
        for _ in 0..10 {
            let set = orthogonal_observable_set(&b3, &s.rotation(8)).unwrap();
            for (i, a) in set.observables.iter().enumerate() {
                for (j, b) in set.observables.iter().enumerate() {
                    let t = a.matrix().trace_product(b.matrix()).re;
                    assert!((t - if i == j { 2.0 } else { 0.0 }).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn svd_alignment_attains_minus_ky_fan() {
        let b2 = gell_mann_basis(2).unwrap();
        let t = RealMatrix::diagonal(&[1.0, 2.0, 3.0]);
        let (a, b) = svd_aligned_observable_sets(&t, &b2).unwrap();
        assert!((alignment_sum(&t, &a, &b) + 6.0).abs() < 1e-12);

        let w = RealMatrix::identity(3).scale(-0.4);
        let (a, b) = svd_aligned_observable_sets(&w, &b2).unwrap();
        assert!((alignment_sum(&w, &a, &b) + 1.2).abs() < 1e-12);

        let b3 = gell_mann_basis(3).unwrap();
        let mut s = Sampler::new(51);
        for k in 0..200 {
            let (n, basis) = if k % 2 == 0 { (3, &b2) } else { (8, &b3) };
            let data = (0..n * n).map(|_| s.normal()).collect();
            let t = RealMatrix::new(n, n, data).unwrap();
            let (a, b) = svd_aligned_observable_sets(&t, basis).unwrap();
            assert!((alignment_sum(&t, &a, &b) + ky_fan_norm(&t).unwrap()).abs() < 1e-10);
        }
        assert!(svd_aligned_observable_sets(&RealMatrix::identity(8), &b2).is_err());
    }

    #[test]
    fn separable_ky_fan_bound() {
        let mut s = Sampler::new(61);
        for d in [2usize, 3] {
            let b = gell_mann_basis(d).unwrap();
            for _ in 0..100 {
                let rho = s.separable_state(&[d, d], 4);
                let tau = expansion_correlation_tensor(&rho, &b, (0, 1)).unwrap();
                let bound = (d * (d - 1)) as f64 / 2.0;
                assert!(ky_fan_norm(&tau).unwrap() <= bound + 1e-9);
            }
        }
    }
}
