//! Generalized Gell-Mann generators of su(d) and their structure constants.
//!
//! The `d² − 1` generators are ordered as: symmetric off-diagonal pairs
//! `(j, k)` with `j < k` in lexicographic order, then the antisymmetric
//! pairs in the same order, then the diagonal generators `l = 1..d−1`.
//! They are normalised so that `Tr[σ_i σ_j] = 2 δ_ij`; for `d = 2` this
//! yields `(σ_x, σ_y, σ_z)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::operators::Observable;

/// Rank-3 real tensor of size `n × n × n`, indexed `(i, j, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor {
    n: usize,
    data: Vec<f64>,
}

impl StructureTensor {
    fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n * n],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.n + j) * self.n + k]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        self.data[(i * self.n + j) * self.n + k] = value;
    }
}

/// The su(d) generators together with `f_ijk` and `d_ijk`.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<Observable>,
    f: StructureTensor,
    d_sym: StructureTensor,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `d² − 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Observable] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Observable {
        &self.generators[i]
    }

    /// Antisymmetric structure constants `f_ijk`.
    pub fn f(&self) -> &StructureTensor {
        &self.f
    }

    /// Symmetric structure constants `d_ijk`.
    pub fn d_sym(&self) -> &StructureTensor {
        &self.d_sym
    }

    /// `Σ_j c_j σ_j` for real coefficients `c`.
    pub fn combination(&self, coeffs: &[f64]) -> Result<Observable> {
        if coeffs.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: coeffs.len(),
            });
        }
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if *c != 0.0 {
                acc = acc.add(&g.matrix().scale(*c));
            }
        }
        Ok(Observable::from_hermitian(acc))
    }
}

fn generator_matrices(d: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in (j + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = Complex64::new(1.0, 0.0);
            m[(k, j)] = Complex64::new(1.0, 0.0);
            out.push(m);
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = Complex64::new(0.0, -1.0);
            m[(k, j)] = Complex64::new(0.0, 1.0);
            out.push(m);
        }
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        diag[..l].iter_mut().for_each(|x| *x = norm);
        diag[l] = -(l as f64) * norm;
        out.push(ComplexMatrix::diagonal(&diag));
    }
    out
}

/// Builds the generalized Gell-Mann basis for dimension `d ≥ 2`, including
/// its structure constants.
pub fn gell_mann_basis(d: usize) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::invalid(format!("generator basis needs d >= 2, got {d}")));
    }
    let generators: Vec<Observable> = generator_matrices(d)
        .into_iter()
        .map(Observable::from_hermitian)
        .collect();
    let (f, d_sym) = compute_structure_constants(&generators);
    Ok(GeneratorBasis {
        dim: d,
        generators,
        f,
        d_sym,
    })
}

/// Returns `(f_ijk, d_ijk)` of a basis:
/// `f_ijk = −(i/4) Tr([σ_i, σ_j] σ_k)` and `d_ijk = (1/4) Tr({σ_i, σ_j} σ_k)`.
pub fn structure_constants(basis: &GeneratorBasis) -> (StructureTensor, StructureTensor) {
    (basis.f.clone(), basis.d_sym.clone())
}

fn compute_structure_constants(generators: &[Observable]) -> (StructureTensor, StructureTensor) {
    let n = generators.len();
    let mut f = StructureTensor::zeros(n);
    let mut d_sym = StructureTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let ij = generators[i].matrix().matmul(generators[j].matrix());
            let ji = generators[j].matrix().matmul(generators[i].matrix());
            let comm = ij.sub(&ji);
            let anti = ij.add(&ji);
            for (k, g) in generators.iter().enumerate() {
                // −(i/4)·Tr([σi,σj]σk): Tr of the commutator term is purely imaginary
                let tc = comm.trace_product(g.matrix());
                f.set(i, j, k, 0.25 * tc.im);
                let ta = anti.trace_product(g.matrix());
                d_sym.set(i, j, k, 0.25 * ta.re);
            }
        }
    }
    (f, d_sym)
}

/// The three Pauli matrices `(σ_x, σ_y, σ_z)`.
pub fn pauli() -> [Observable; 3] {
    let m = generator_matrices(2);
    [
        Observable::from_hermitian(m[0].clone()),
        Observable::from_hermitian(m[1].clone()),
        Observable::from_hermitian(m[2].clone()),
    ]
}

/// `a⃗·σ⃗` for a real 3-vector.
pub fn qubit_observable(a: [f64; 3]) -> Observable {
    let [x, y, z] = pauli();
    Observable::from_hermitian(
        x.matrix()
            .scale(a[0])
            .add(&y.matrix().scale(a[1]))
            .add(&z.matrix().scale(a[2])),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    }

    #[test]
    fn rejects_small_dimension() {
        assert!(gell_mann_basis(1).is_err());
        assert!(gell_mann_basis(0).is_err());
    }

    #[test]
    fn qubit_basis_is_pauli() {
        let b = gell_mann_basis(2).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let x = b.generator(0).matrix();
        let y = b.generator(1).matrix();
        let z = b.generator(2).matrix();
        assert_eq!(x[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(y[(0, 1)], -i);
        assert_eq!(y[(1, 0)], i);
        assert_eq!(z, &ComplexMatrix::diagonal(&[1.0, -1.0]));
        for a in 0..3 {
            for bb in 0..3 {
                for c in 0..3 {
                    assert!((b.f().get(a, bb, c) - levi_civita(a, bb, c)).abs() < 1e-15);
                    assert_eq!(b.d_sym().get(a, bb, c), 0.0);
                }
            }
        }
    }

    #[test]
    fn orthogonality_and_tracelessness() {
        for d in 2..=6 {
            let b = gell_mann_basis(d).unwrap();
            assert_eq!(b.len(), d * d - 1);
            for (i, gi) in b.generators().iter().enumerate() {
                assert!(gi.matrix().trace().norm() < 1e-12);
                for (j, gj) in b.generators().iter().enumerate() {
                    let t = gi.matrix().trace_product(gj.matrix());
                    let expected = if i == j { 2.0 } else { 0.0 };
                    assert!((t - expected).norm() < 1e-12, "d={d} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn product_reconstruction_from_structure_constants() {
        for d in 2..=4 {
            let b = gell_mann_basis(d).unwrap();
            let n = b.len();
            for i in 0..n {
                for j in 0..n {
                    let lhs = b.generator(i).matrix().matmul(b.generator(j).matrix());
                    let mut rhs = if i == j {
                        ComplexMatrix::identity(d).scale(2.0 / d as f64)
                    } else {
                        ComplexMatrix::zeros(d, d)
                    };
                    for k in 0..n {
                        let coeff = Complex64::new(b.d_sym().get(i, j, k), b.f().get(i, j, k));
                        rhs = rhs.add(&b.generator(k).matrix().scale_complex(coeff));
                    }
                    assert!(lhs.max_abs_diff(&rhs) < 1e-10, "d={d} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn symmetric_constants_trace_free() {
        for d in 2..=4 {
            let b = gell_mann_basis(d).unwrap();
            let n = b.len();
            for k in 0..n {
                let s: f64 = (0..n).map(|i| b.d_sym().get(i, i, k)).sum();
                assert!(s.abs() < 1e-10, "d={d} k={k} sum={s}");
            }
        }
    }

    #[test]
    fn combination_length_check() {
        let b = gell_mann_basis(3).unwrap();
        assert!(b.combination(&[1.0; 7]).is_err());
        let o = b.combination(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(o.matrix(), b.generator(7).matrix());
    }
}
