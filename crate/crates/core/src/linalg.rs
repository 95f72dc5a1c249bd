//! Dense complex and real matrices, the cyclic Jacobi Hermitian eigensolver,
//! and a real SVD built on top of it.
//!
//! Everything here is sized for the small operators that show up in the rest
//! of the crate (dimension well below 100), so the kernels are plain triple
//! loops over row-major storage.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative off-diagonal norm at which a Jacobi sweep is considered converged.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Singular values below this fraction of the largest are clamped to zero.
pub const SVD_CLAMP: f64 = 1e-13;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries; rejects size mismatches and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from a nested slice of rows. Panics on ragged input,
    /// so it is meant for literals in code and tests.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self {
            rows: n,
            cols: m,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_real(m: &RealMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Projector |v⟩⟨v| for a (not necessarily normalised) vector.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Matrix product. Panics if the inner dimensions disagree.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_complex(Complex64::new(s, 0.0))
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Trace of the product `self * rhs` without forming it.
    pub fn trace_product(&self, rhs: &Self) -> Complex64 {
        assert_eq!(self.cols, rhs.rows);
        assert_eq!(self.rows, rhs.cols);
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * rhs[(k, i)];
            }
        }
        acc
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.sub(rhs).max_abs()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation from Hermiticity, `max |M - M†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Real part of every entry.
    pub fn re(&self) -> RealMatrix {
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.re).collect(),
        }
    }

    /// Imaginary part of every entry.
    pub fn im(&self) -> RealMatrix {
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.im).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Row-major dense real matrix.
#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self {
            rows: n,
            cols: m,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<f64>]) -> Self {
        let m = cols.len();
        let n = cols.first().map_or(0, Vec::len);
        let mut out = Self::zeros(n, m);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n, "ragged columns");
            for (i, &x) in c.iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row_slice(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn row_slice(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.sub(rhs).max_abs()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation of `M Mᵀ` from the identity.
    pub fn orthogonality_deviation(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        self.matmul(&self.transpose())
            .max_abs_diff(&Self::identity(self.rows))
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RealMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:+.6}")).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Spectrum and eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose `k`-th column is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Diagonalises a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// Only the Hermitian part of the input is used. Each rotation first removes
/// the phase of the pivot `a_pq` and then applies the textbook real Jacobi
/// rotation, so the accumulated transform stays unitary.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let n = h.rows();
    // symmetrise so roundoff in the caller's matrix cannot bias the result
    let mut a = h.add(&h.dagger()).scale(0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = JACOBI_TOLERANCE * scale;

    let mut converged = scale == 0.0 || off_diagonal_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, dst)] = v[(r, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // phase e^{-iφ} that makes the pivot real and positive
    let phase = g.conj() / g_abs;
    let theta = (aqq - app) / (2.0 * g_abs);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // W = [[c, s], [-s·phase, c·phase]] acting on columns p, q
    let wpp = Complex64::new(c, 0.0);
    let wpq = Complex64::new(s, 0.0);
    let wqp = phase * (-s);
    let wqq = phase * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * wpp + akq * wqp;
        a[(k, q)] = akp * wpq + akq * wqq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * wpp + vkq * wqp;
        v[(k, q)] = vkp * wpq + vkq * wqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = wpp.conj() * apk + wqp.conj() * aqk;
        a[(q, k)] = wpq.conj() * apk + wqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Eigendecomposition of a real symmetric matrix (ascending eigenvalues,
/// orthonormal eigenvectors as columns).
pub fn symmetric_eigen(m: &RealMatrix) -> Result<(Vec<f64>, RealMatrix)> {
    let eig = hermitian_eigen(&ComplexMatrix::from_real(m))?;
    Ok((eig.values, eig.vectors.re()))
}

/// Real singular value decomposition `M = U · diag(s) · Vᵀ`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × rows` orthogonal matrix of left singular vectors (columns).
    pub u: RealMatrix,
    /// `min(rows, cols)` singular values in descending order.
    pub singular_values: Vec<f64>,
    /// `cols × cols` orthogonal matrix of right singular vectors (columns).
    pub v: RealMatrix,
}

impl Svd {
    /// Rebuilds `U · diag(s) · Vᵀ`.
    pub fn reconstruct(&self) -> RealMatrix {
        let m = self.u.rows();
        let n = self.v.rows();
        let mut out = RealMatrix::zeros(m, n);
        for (k, &s) in self.singular_values.iter().enumerate() {
            for i in 0..m {
                let us = self.u[(i, k)] * s;
                for j in 0..n {
                    out[(i, j)] += us * self.v[(j, k)];
                }
            }
        }
        out
    }
}

/// Real SVD from the eigendecomposition of `MᵀM`.
///
/// Right singular vectors come straight from the symmetric eigensolver and
/// are sign-fixed so their largest component is positive. Left vectors are
/// `M v / σ`, re-orthogonalised in descending-σ order, and completed to a
/// full orthonormal basis where σ was clamped to zero.
pub fn real_svd(m: &RealMatrix) -> Result<Svd> {
    let rows = m.rows();
    let cols = m.cols();
    let gram = m.transpose().matmul(m);
    let (values, vectors) = symmetric_eigen(&gram)?;

    // descending order
    let mut v = RealMatrix::zeros(cols, cols);
    let mut sigma_all = Vec::with_capacity(cols);
    for (dst, src) in (0..cols).rev().enumerate() {
        let mut col = vectors.column(src);
        let pivot = col
            .iter()
            .copied()
            .fold(0.0_f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        if pivot < 0.0 {
            col.iter_mut().for_each(|x| *x = -*x);
        }
        for (i, x) in col.into_iter().enumerate() {
            v[(i, dst)] = x;
        }
        sigma_all.push(values[src].max(0.0).sqrt());
    }

    let rank_cap = rows.min(cols);
    let sigma_max = sigma_all.first().copied().unwrap_or(0.0);
    let clamp = SVD_CLAMP * sigma_max;
    let mut singular_values: Vec<f64> = sigma_all[..rank_cap]
        .iter()
        .map(|&s| if s <= clamp { 0.0 } else { s })
        .collect();

    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(rows);
    for (k, &s) in singular_values.iter().enumerate() {
        if s == 0.0 {
            break;
        }
        let mut u = m.mul_vec(&v.column(k));
        u.iter_mut().for_each(|x| *x /= s);
        orthonormalize_against(&mut u, &u_cols);
        u_cols.push(u);
    }
    // refine singular values against the cleaned-up left vectors
    for (k, u) in u_cols.iter().enumerate() {
        let mv = m.mul_vec(&v.column(k));
        singular_values[k] = dot(u, &mv).max(0.0);
    }
    complete_basis(&mut u_cols, rows);

    Ok(Svd {
        u: RealMatrix::from_columns(&u_cols),
        singular_values,
        v,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn orthonormalize_against(u: &mut [f64], basis: &[Vec<f64>]) {
    // two passes of modified Gram-Schmidt
    for _ in 0..2 {
        for b in basis {
            let proj = dot(u, b);
            u.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
        }
    }
    let norm = dot(u, u).sqrt();
    if norm > 0.0 {
        u.iter_mut().for_each(|x| *x /= norm);
    }
}

fn complete_basis(cols: &mut Vec<Vec<f64>>, n: usize) {
    let mut e = 0;
    while cols.len() < n && e < n {
        let mut cand = vec![0.0; n];
        cand[e] = 1.0;
        e += 1;
        for _ in 0..2 {
            for b in cols.iter() {
                let proj = dot(&cand, b);
                cand.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let norm = dot(&cand, &cand).sqrt();
        if norm > 1e-8 {
            cand.iter_mut().for_each(|x| *x /= norm);
            cols.push(cand);
        }
    }
}
