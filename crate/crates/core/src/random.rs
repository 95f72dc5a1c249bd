//! Seeded samplers for states, observables and rotations.
//!
//! Every sampler draws from a ChaCha8 stream seeded by the caller, so a
//! `(kind, dims, seed)` triple always produces the same object on every
//! platform.
//!
//! * pure states: normalised vectors of i.i.d. standard complex Gaussians;
//! * mixed states: convex mixtures of 1–4 pure states with uniform-simplex
//!   weights;
//! * separable states: convex mixtures of 1–4 products of pure local states;
//! * observables: Hermitian part of a complex Gaussian matrix, rescaled so
//!   the largest entry has modulus 1;
//! * rotations: Gram–Schmidt orthogonalised Gaussian matrices.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RealMatrix};
use crate::operators::{DensityMatrix, Observable};

/// Maximum number of pure components in sampled mixtures.
pub const MAX_COMPONENTS: usize = 4;

/// Value-semantic random source; advancing it requires `&mut self`.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal())
    }

    /// Uniformly distributed point on the probability simplex.
    pub fn simplex_weights(&mut self, k: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..k).map(|_| -(1.0 - self.uniform()).ln()).collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / total).collect()
    }

    /// Normalised random state vector.
    pub fn state_vector(&mut self, dim: usize) -> Vec<Complex64> {
        loop {
            let v: Vec<Complex64> = (0..dim).map(|_| self.complex_normal()).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }

    pub fn pure_state(&mut self, dims: &[usize]) -> DensityMatrix {
        let d = dims.iter().product();
        let psi = self.state_vector(d);
        DensityMatrix::from_parts_unchecked(ComplexMatrix::outer(&psi), dims.to_vec())
    }

    /// Mixture of between 1 and `max_components` pure states.
    pub fn mixed_state(&mut self, dims: &[usize], max_components: usize) -> DensityMatrix {
        let k = self.int_in(1, max_components.max(1));
        let weights = self.simplex_weights(k);
        let parts: Vec<DensityMatrix> = (0..k).map(|_| self.pure_state(dims)).collect();
        DensityMatrix::mixture(&weights, &parts).expect("sampled mixture is consistent")
    }

    /// Product of independent pure local states.
    pub fn product_state(&mut self, dims: &[usize]) -> DensityMatrix {
        let mut iter = dims.iter();
        let first = *iter.next().expect("at least one subsystem");
        iter.fold(self.pure_state(&[first]), |acc, &d| acc.tensor(&self.pure_state(&[d])))
    }

    /// Mixture of between 1 and `max_terms` pure product states.
    pub fn separable_state(&mut self, dims: &[usize], max_terms: usize) -> DensityMatrix {
        let k = self.int_in(1, max_terms.max(1));
        let weights = self.simplex_weights(k);
        let parts: Vec<DensityMatrix> = (0..k).map(|_| self.product_state(dims)).collect();
        DensityMatrix::mixture(&weights, &parts).expect("sampled mixture is consistent")
    }

    /// Random Hermitian observable with entries of modulus at most 1.
    pub fn observable(&mut self, dim: usize) -> Observable {
        let data = (0..dim * dim).map(|_| self.complex_normal()).collect();
        let g = ComplexMatrix::new(dim, dim, data).expect("finite entries");
        let h = g.add(&g.dagger()).scale(0.5);
        let max = h.max_abs();
        Observable::from_hermitian(if max > 0.0 { h.scale(1.0 / max) } else { h })
    }

    /// Random orthogonal `n × n` matrix.
    pub fn rotation(&mut self, n: usize) -> RealMatrix {
        loop {
            let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
            let mut ok = true;
            for _ in 0..n {
                let mut v: Vec<f64> = (0..n).map(|_| self.normal()).collect();
                for _ in 0..2 {
                    for r in &rows {
                        let p: f64 = v.iter().zip(r).map(|(a, b)| a * b).sum();
                        v.iter_mut().zip(r).for_each(|(a, b)| *a -= p * b);
                    }
                }
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-8 {
                    ok = false;
                    break;
                }
                v.iter_mut().for_each(|x| *x /= norm);
                rows.push(v);
            }
            if ok {
                return RealMatrix::from_rows(&rows);
            }
        }
    }

    /// Uniform random unit vector in ℝ³.
    pub fn unit_vector3(&mut self) -> [f64; 3] {
        loop {
            let v = [self.normal(), self.normal(), self.normal()];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 1e-8 {
                return [v[0] / n, v[1] / n, v[2] / n];
            }
        }
    }

    /// Uniform random unit vector orthogonal to `r` (any unit vector if `r = 0`).
    pub fn unit_vector3_orthogonal_to(&mut self, r: [f64; 3]) -> [f64; 3] {
        loop {
            let cand = self.unit_vector3();
            if let Ok(v) = crate::entanglement::project_orthogonal(cand, r) {
                return v;
            }
        }
    }
}

/// What `random_sample` should draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Pure,
    Mixed,
    Separable,
    Observable,
    Rotation,
}

/// Output of `random_sample`.
#[derive(Debug, Clone)]
pub enum Sample {
    State(DensityMatrix),
    Observable(Observable),
    Rotation(RealMatrix),
}

/// One-shot sampler keyed on `(kind, dims, seed)`.
///
/// For states `dims` lists the subsystem dimensions (a separable state needs
/// at least two); for observables and rotations it must have length one.
pub fn random_sample(kind: SampleKind, dims: &[usize], seed: u64) -> Result<Sample> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Error::invalid(format!("sampler needs dimensions >= 2, got {dims:?}")));
    }
    let mut s = Sampler::new(seed);
    let single = || {
        if dims.len() == 1 {
            Ok(dims[0])
        } else {
            Err(Error::invalid(format!("{kind:?} sampler takes one dimension")))
        }
    };
    Ok(match kind {
        SampleKind::Pure => Sample::State(s.pure_state(dims)),
        SampleKind::Mixed => Sample::State(s.mixed_state(dims, MAX_COMPONENTS)),
        SampleKind::Separable => {
            if dims.len() < 2 {
                return Err(Error::invalid("separable sampler needs at least two subsystems"));
            }
            Sample::State(s.separable_state(dims, MAX_COMPONENTS))
        }
        SampleKind::Observable => Sample::Observable(s.observable(single()?)),
        SampleKind::Rotation => Sample::Rotation(s.rotation(single()?)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = random_sample(SampleKind::Pure, &[3], 7).unwrap();
        let b = random_sample(SampleKind::Pure, &[3], 7).unwrap();
        match (a, b) {
            (Sample::State(x), Sample::State(y)) => assert_eq!(x, y),
            _ => unreachable!(),
        }
        let c = random_sample(SampleKind::Pure, &[3], 8).unwrap();
        if let (Sample::State(x), Sample::State(y)) = (random_sample(SampleKind::Pure, &[3], 7).unwrap(), c) {
            assert_ne!(x, y);
        }
    }

    #[test]
    fn rotation_is_orthogonal() {
        for seed in 0..10 {
            match random_sample(SampleKind::Rotation, &[8], seed).unwrap() {
                Sample::Rotation(r) => assert!(r.orthogonality_deviation() < 1e-10),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn sampled_states_validate() {
        let mut s = Sampler::new(3);
        for dims in [vec![2], vec![3], vec![2, 2], vec![3, 3], vec![2, 3, 2]] {
            for _ in 0..10 {
                for rho in [s.pure_state(&dims), s.mixed_state(&dims, 4)] {
                    DensityMatrix::new(rho.matrix().clone(), dims.clone()).unwrap();
                }
            }
        }
        let sep = s.separable_state(&[3, 3], 4);
        DensityMatrix::new(sep.matrix().clone(), vec![3, 3]).unwrap();
    }

    #[test]
    fn observable_entries_bounded() {
        let mut s = Sampler::new(11);
        for d in 2..=9 {
            let o = s.observable(d);
            assert!(o.matrix().max_abs() <= 1.0 + 1e-15);
            assert!(o.matrix().hermiticity_deviation() == 0.0);
        }
    }

    #[test]
    fn bad_requests() {
        assert!(random_sample(SampleKind::Pure, &[1], 0).is_err());
        assert!(random_sample(SampleKind::Separable, &[4], 0).is_err());
        assert!(random_sample(SampleKind::Rotation, &[2, 2], 0).is_err());
    }
}
