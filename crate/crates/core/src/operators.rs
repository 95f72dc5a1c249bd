//! Validated observables and density matrices, tensor products, partial
//! trace and partial transpose.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix, HermitianEigen};

/// Entrywise tolerance on `M - M†`.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Tolerance on `Tr ρ = 1`.
pub const TRACE_TOLERANCE: f64 = 1e-12;
/// Smallest eigenvalue accepted for a density matrix.
pub const PSD_TOLERANCE: f64 = -1e-9;

/// A Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix that is Hermitian by construction.
    pub(crate) fn from_hermitian(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermiticity_deviation() <= 1e-9);
        Self { matrix }
    }

    /// Builds a real diagonal observable.
    pub fn diagonal(entries: &[f64]) -> Self {
        Self::from_hermitian(ComplexMatrix::diagonal(entries))
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_hermitian(ComplexMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_hermitian(ComplexMatrix::identity(dim))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim(), rhs.dim())?;
        Ok(Self::from_hermitian(self.matrix.add(&rhs.matrix)))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim(), rhs.dim())?;
        Ok(Self::from_hermitian(self.matrix.sub(&rhs.matrix)))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_hermitian(self.matrix.scale(s))
    }

    /// Sum of a non-empty list of observables of equal dimension.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Observable>) -> Result<Self> {
        let mut iter = items.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::invalid("sum of zero observables"))?
            .clone();
        iter.try_fold(first, |acc, o| acc.add(o))
    }

    /// Kronecker product of two observables.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_hermitian(self.matrix.kron(&rhs.matrix))
    }

    /// Embeds this single-site observable at `site` of a product space with
    /// local dimensions `dims`, padding every other site with the identity.
    pub fn on_site(&self, dims: &[usize], site: usize) -> Result<Self> {
        if site >= dims.len() {
            return Err(Error::BadSubsystem {
                index: site,
                count: dims.len(),
            });
        }
        check_dim(dims[site], self.dim())?;
        let mut out = ComplexMatrix::identity(1);
        for (k, &d) in dims.iter().enumerate() {
            let factor = if k == site {
                self.matrix.clone()
            } else {
                ComplexMatrix::identity(d)
            };
            out = out.kron(&factor);
        }
        Ok(Self::from_hermitian(out))
    }

    /// Eigenvalues (ascending) and eigenvectors.
    pub fn eigen(&self) -> Result<HermitianEigen> {
        hermitian_eigen(&self.matrix)
    }

    /// Operator product `A·B` is not Hermitian in general; this returns the
    /// symmetrised product `(AB + BA)/2`.
    pub fn jordan_product(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim(), rhs.dim())?;
        let ab = self.matrix.matmul(&rhs.matrix);
        let ba = rhs.matrix.matmul(&self.matrix);
        Ok(Self::from_hermitian(ab.add(&ba).scale(0.5)))
    }
}

/// Validates a square matrix as an observable.
pub fn make_observable(m: ComplexMatrix) -> Result<Observable> {
    Observable::new(m)
}

/// A quantum state on a product of subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let dim = matrix.rows();
        if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != dim {
            return Err(Error::SubsystemMismatch { dims, dim });
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::BadTrace { trace });
        }
        let min_eigenvalue = hermitian_eigen(&matrix)?.values[0];
        if min_eigenvalue < PSD_TOLERANCE {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix, dims })
    }

    /// Single-system state, `dims = [dim]`.
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let d = matrix.rows();
        Self::new(matrix, vec![d])
    }

    /// Pure state `|ψ⟩⟨ψ|` from a state vector (normalised here).
    pub fn from_pure(psi: &[Complex64], dims: Vec<usize>) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::invalid("state vector has zero or non-finite norm"));
        }
        let normalised: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&normalised), dims)
    }

    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        // keep the stored matrix exactly Hermitian
        let matrix = matrix.add(&matrix.dagger()).scale(0.5);
        Self { matrix, dims }
    }

    /// Maximally mixed state on the given subsystems.
    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let d: usize = dims.iter().product();
        Self {
            matrix: ComplexMatrix::identity(d).scale(1.0 / d as f64),
            dims,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eigen(&self.matrix)?.values)
    }

    /// `ρ ⊗ σ`, concatenating the subsystem lists.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&rhs.dims);
        Self {
            matrix: self.matrix.kron(&rhs.matrix),
            dims,
        }
    }

    /// Convex combination `Σ w_k ρ_k`. Weights must be non-negative and sum to one.
    pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::invalid("weights and states must be non-empty and equal in length"));
        }
        if weights.iter().any(|&w| w < 0.0) || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("mixture weights must be a probability vector"));
        }
        let dims = states[0].dims.clone();
        let mut acc = ComplexMatrix::zeros(states[0].dim(), states[0].dim());
        for (w, s) in weights.iter().zip(states) {
            if s.dims != dims {
                return Err(Error::DimensionMismatch {
                    expected: states[0].dim(),
                    found: s.dim(),
                });
            }
            acc = acc.add(&s.matrix.scale(*w));
        }
        Ok(Self::from_parts_unchecked(acc, dims))
    }
}

/// Validates a matrix as a density matrix on subsystems `dims`.
pub fn make_density_matrix(m: ComplexMatrix, dims: Vec<usize>) -> Result<DensityMatrix> {
    DensityMatrix::new(m, dims)
}

/// Kronecker product of two matrices.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Mixed-radix digits of a flat index, most significant subsystem first.
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

fn flatten(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Reduced state on the subsystems in `keep` (listed in ascending order in
/// the output regardless of the order given).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.num_subsystems();
    if keep.is_empty() {
        return Err(Error::invalid("partial trace must keep at least one subsystem"));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
        return Err(Error::BadSubsystem { index: bad, count: n });
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let dims = rho.dims();
    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let traced: Vec<usize> = (0..n).filter(|k| !kept.contains(k)).collect();
    let out_dim: usize = kept_dims.iter().product();

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    let full = rho.dim();
    let mut ri = vec![0; n];
    let mut ci = vec![0; n];
    let mut kr = vec![0; kept.len()];
    let mut kc = vec![0; kept.len()];
    for r in 0..full {
        digits(r, dims, &mut ri);
        for c in 0..full {
            digits(c, dims, &mut ci);
            if traced.iter().any(|&t| ri[t] != ci[t]) {
                continue;
            }
            for (slot, &k) in kept.iter().enumerate() {
                kr[slot] = ri[k];
                kc[slot] = ci[k];
            }
            let (a, b) = (flatten(&kr, &kept_dims), flatten(&kc, &kept_dims));
            out[(a, b)] += rho.matrix()[(r, c)];
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(out, kept_dims))
}

/// Transpose on subsystem `sys` only. The result is Hermitian with unit
/// trace but need not be positive.
pub fn partial_transpose(rho: &DensityMatrix, sys: usize) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.dims(), sys)
}

pub(crate) fn partial_transpose_matrix(
    m: &ComplexMatrix,
    dims: &[usize],
    sys: usize,
) -> Result<ComplexMatrix> {
    let n = dims.len();
    if sys >= n {
        return Err(Error::BadSubsystem { index: sys, count: n });
    }
    let full = m.rows();
    let mut out = ComplexMatrix::zeros(full, full);
    let mut ri = vec![0; n];
    let mut ci = vec![0; n];
    for r in 0..full {
        for c in 0..full {
            digits(r, dims, &mut ri);
            digits(c, dims, &mut ci);
            std::mem::swap(&mut ri[sys], &mut ci[sys]);
            out[(flatten(&ri, dims), flatten(&ci, dims))] = m[(r, c)];
        }
    }
    Ok(out)
}

/// `Tr[ρA]`, with the roundoff imaginary part discarded.
pub fn expectation(rho: &DensityMatrix, a: &Observable) -> Result<f64> {
    check_dim(rho.dim(), a.dim())?;
    Ok(rho.matrix().trace_product(a.matrix()).re)
}
