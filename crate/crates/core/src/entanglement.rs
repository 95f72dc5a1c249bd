//! Entanglement detectors built on uncertainty and Bloch geometry.
//!
//! * [`conditional_variance_witness`]: `Σᵢ Δ(Aᵢ|Bᵢ)²` against `2(d−1)` for
//!   complete orthogonal observable sets on each side.
//! * [`kyfan_criterion`]: Ky-Fan norm of the correlation tensor against the
//!   local-vector dependent bound (`CondF`) or `d(d−1)/2` (`Dsep`).
//! * [`ppt_criterion`]: smallest eigenvalue of the partial transpose.
//! * [`pure_two_qubit_mutual`], [`concurrence_from_mutual`] and
//!   [`nqubit_product_test`] for pure states.
//!
//! The conditional-variance witness is only reliable on product states: mixtures of
//! products can fall below `2(d−1)` (for example `½(|00⟩⟨00| + |11⟩⟨11|)`
//! with SVD-aligned sets gives 1). Use the Ky-Fan or PPT tests when soundness
//! on mixed inputs matters.

use serde::Serialize;

use crate::bloch::{
    bloch_vector, expansion_correlation_tensor, ky_fan_norm, norm, pairwise_correlation_tensor,
    OrthogonalObservableSet,
};
use crate::error::{Error, Result};
use crate::generators::{gell_mann_basis, qubit_observable, GeneratorBasis};
use crate::linalg::hermitian_eigen;
use crate::operators::{partial_transpose, DensityMatrix, Observable};
use crate::uncertainty::{conditional_variance, mutual_uncertainty};

/// A detector must clear its threshold by more than this to report
/// entanglement.
pub const DETECTION_MARGIN: f64 = 1e-10;
/// Minimum purity `Tr ρ²` accepted as a pure state.
pub const PURITY_TOLERANCE: f64 = 1e-10;
/// Tolerance on unit norms and orthogonality of measurement directions.
pub const DIRECTION_TOLERANCE: f64 = 1e-10;
/// `|M − (N − √N)|` above this flags a non-product state.
pub const PRODUCT_TEST_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

/// Which side of the threshold signals entanglement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Above,
    Below,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionVerdict {
    pub criterion: String,
    pub statistic: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub direction: Direction,
}

impl DetectionVerdict {
    pub fn new(criterion: &str, statistic: f64, threshold: f64, direction: Direction) -> Self {
        let hit = match direction {
            Direction::Above => statistic > threshold + DETECTION_MARGIN,
            Direction::Below => statistic < threshold - DETECTION_MARGIN,
        };
        Self {
            criterion: criterion.to_string(),
            statistic,
            threshold,
            verdict: if hit { Verdict::Entangled } else { Verdict::Inconclusive },
            direction,
        }
    }

    pub fn is_entangled(&self) -> bool {
        self.verdict == Verdict::Entangled
    }

    /// Signed distance past the threshold; positive means detection.
    pub fn margin(&self) -> f64 {
        match self.direction {
            Direction::Above => self.statistic - self.threshold,
            Direction::Below => self.threshold - self.statistic,
        }
    }
}

/// Local dimension of an equal-dimension bipartite state.
fn bipartite_dim(rho: &DensityMatrix) -> Result<usize> {
    match rho.dims() {
        [a, b] if a == b => Ok(*a),
        [a, b] => Err(Error::DimensionMismatch { expected: *a, found: *b }),
        dims => Err(Error::invalid(format!("expected a bipartite state, got dims {dims:?}"))),
    }
}

/// `Σᵢ Δ(Aᵢ|Bᵢ)²` with `Aᵢ = Ãᵢ ⊗ I` and `Bᵢ = I ⊗ B̃ᵢ`, compared with `2(d−1)`.
pub fn conditional_variance_witness(
    rho: &DensityMatrix,
    set_a: &OrthogonalObservableSet,
    set_b: &OrthogonalObservableSet,
) -> Result<DetectionVerdict> {
    let d = bipartite_dim(rho)?;
    let n = d * d - 1;
    for set in [set_a, set_b] {
        if set.observables.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: set.observables.len(),
            });
        }
        if let Some(o) = set.observables.iter().find(|o| o.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: o.dim() });
        }
    }
    let id = Observable::identity(d);
    let mut total = 0.0;
    for (a, b) in set_a.observables.iter().zip(&set_b.observables) {
        total += conditional_variance(rho, &a.kron(&id), &id.kron(b))?;
    }
    Ok(DetectionVerdict::new(
        "condvar",
        total,
        2.0 * (d as f64 - 1.0),
        Direction::Below,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KyFanCriterion {
    /// `‖T‖_KF ≤ 2(d−1)/d − ½(|r⃗₁| − |r⃗₂|)²` with `t_kl = Tr[ρ σ_k⊗σ_l]`.
    CondF,
    /// `‖τ‖_KF ≤ d(d−1)/2` with `τ = (d²/4) t`.
    Dsep,
}

impl KyFanCriterion {
    pub fn name(self) -> &'static str {
        match self {
            KyFanCriterion::CondF => "kyfan-condf",
            KyFanCriterion::Dsep => "kyfan-dsep",
        }
    }
}

/// Ky-Fan separability tests; the two tensors coincide for qubits.
pub fn kyfan_criterion(rho: &DensityMatrix, which: KyFanCriterion) -> Result<DetectionVerdict> {
    let d = bipartite_dim(rho)?;
    let basis = gell_mann_basis(d)?;
    kyfan_with_basis(rho, &basis, which)
}

fn kyfan_with_basis(
    rho: &DensityMatrix,
    basis: &GeneratorBasis,
    which: KyFanCriterion,
) -> Result<DetectionVerdict> {
    let d = basis.dim() as f64;
    let (statistic, threshold) = match which {
        KyFanCriterion::CondF => {
            let t = pairwise_correlation_tensor(rho, basis, (0, 1))?;
            let r1 = norm(&bloch_vector(rho, basis, 0)?);
            let r2 = norm(&bloch_vector(rho, basis, 1)?);
            (
                ky_fan_norm(&t)?,
                2.0 * (d - 1.0) / d - 0.5 * (r1 - r2).powi(2),
            )
        }
        KyFanCriterion::Dsep => {
            let tau = expansion_correlation_tensor(rho, basis, (0, 1))?;
            (ky_fan_norm(&tau)?, d * (d - 1.0) / 2.0)
        }
    };
    Ok(DetectionVerdict::new(which.name(), statistic, threshold, Direction::Above))
}

/// Peres-Horodecki test: smallest eigenvalue of `ρ^{T_B}`.
pub fn ppt_criterion(rho: &DensityMatrix) -> Result<DetectionVerdict> {
    if rho.num_subsystems() != 2 {
        return Err(Error::invalid(format!(
            "PPT test needs a bipartite state, got dims {:?}",
            rho.dims()
        )));
    }
    let pt = partial_transpose(rho, 1)?;
    let min = hermitian_eigen(&pt)?.values[0];
    Ok(DetectionVerdict::new("ppt", min, 0.0, Direction::Below))
}

fn require_pure(rho: &DensityMatrix) -> Result<()> {
    let purity = rho.purity();
    if purity < 1.0 - PURITY_TOLERANCE {
        return Err(Error::precondition(format!("state is not pure (Tr ρ² = {purity})")));
    }
    Ok(())
}

fn dot3(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn require_direction(a: &[f64; 3], r: &[f64], label: &str) -> Result<()> {
    let n = norm(a);
    if (n - 1.0).abs() > DIRECTION_TOLERANCE {
        return Err(Error::precondition(format!("{label} must be a unit vector (norm {n})")));
    }
    let overlap = dot3(a, r);
    if overlap.abs() > DIRECTION_TOLERANCE {
        return Err(Error::precondition(format!(
            "{label} must be orthogonal to the local Bloch vector (overlap {overlap:e})"
        )));
    }
    Ok(())
}

/// Projects `candidate` onto the plane orthogonal to `r` and normalises.
pub fn project_orthogonal(candidate: [f64; 3], r: [f64; 3]) -> Result<[f64; 3]> {
    let rn = norm(&r);
    let mut v = candidate;
    if rn > 1e-12 {
        let p = dot3(&candidate, &r) / (rn * rn);
        for k in 0..3 {
            v[k] -= p * r[k];
        }
    }
    let n = norm(&v);
    if n < 1e-12 {
        return Err(Error::precondition("candidate is parallel to the Bloch vector"));
    }
    Ok([v[0] / n, v[1] / n, v[2] / n])
}

/// `M(A:B) = 2 − √(2 + 2 a⃗ᵀ T b⃗)` for a pure two-qubit state with `A = a⃗·σ⃗ ⊗ I`,
/// `B = I ⊗ b⃗·σ⃗` and directions orthogonal to the local Bloch vectors.
pub fn pure_two_qubit_mutual(psi: &DensityMatrix, a: [f64; 3], b: [f64; 3]) -> Result<f64> {
    if psi.dims() != [2, 2] {
        return Err(Error::invalid(format!("expected two qubits, got dims {:?}", psi.dims())));
    }
    require_pure(psi)?;
    let basis = gell_mann_basis(2)?;
    require_direction(&a, &bloch_vector(psi, &basis, 0)?, "a")?;
    require_direction(&b, &bloch_vector(psi, &basis, 1)?, "b")?;
    let t = pairwise_correlation_tensor(psi, &basis, (0, 1))?;
    let atb = dot3(&a, &t.mul_vec(&b));
    Ok(2.0 - (2.0 + 2.0 * atb).max(0.0).sqrt())
}

/// Inverts `M = 2 − √(2 + 2Ct)` for the concurrence: `C = (2 + M(M−4))/(2t)`.
pub fn concurrence_from_mutual(m: f64, t: f64) -> Result<f64> {
    if !m.is_finite() || !t.is_finite() {
        return Err(Error::invalid("non-finite input"));
    }
    if t == 0.0 {
        return Err(Error::precondition("t = 0 leaves the concurrence undetermined"));
    }
    Ok((2.0 + m * (m - 4.0)) / (2.0 * t))
}

/// `a₁b₁ − a₂b₂` for in-plane directions on a Schmidt-form state.
pub fn schmidt_t(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] - a[1] * b[1]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductTestResult {
    pub mutual: f64,
    pub product_value: f64,
    pub verdict: Verdict,
}

fn nqubit_observables(n: usize, a_vectors: &[[f64; 3]]) -> Result<Vec<Observable>> {
    let dims = vec![2; n];
    a_vectors
        .iter()
        .enumerate()
        .map(|(i, a)| qubit_observable(*a).on_site(&dims, i))
        .collect()
}

fn check_nqubit(psi: &DensityMatrix, a_vectors: &[[f64; 3]]) -> Result<usize> {
    let n = psi.num_subsystems();
    if n < 2 || psi.dims().iter().any(|&d| d != 2) {
        return Err(Error::invalid(format!("expected N >= 2 qubits, got dims {:?}", psi.dims())));
    }
    if a_vectors.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a_vectors.len(),
        });
    }
    let basis = gell_mann_basis(2)?;
    for (i, a) in a_vectors.iter().enumerate() {
        require_direction(a, &bloch_vector(psi, &basis, i)?, &format!("a{i}"))?;
    }
    Ok(n)
}

/// Compares `M(A₁:…:A_N)` with the product-state value `N − √N`.
pub fn nqubit_product_test(psi: &DensityMatrix, a_vectors: &[[f64; 3]]) -> Result<ProductTestResult> {
    require_pure(psi)?;
    let n = check_nqubit(psi, a_vectors)?;
    let mutual = mutual_uncertainty(psi, &nqubit_observables(n, a_vectors)?)?;
    let product_value = n as f64 - (n as f64).sqrt();
    let verdict = if (mutual - product_value).abs() > PRODUCT_TEST_TOLERANCE {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(ProductTestResult {
        mutual,
        product_value,
        verdict,
    })
}

/// `N − √(N + 2 Σ_{i<j} a⃗ᵢᵀ T⁽ⁱʲ⁾ a⃗ⱼ)`, valid whenever each `a⃗ᵢ ⊥ r⃗ᵢ`.
pub fn nqubit_mutual_closed_form(rho: &DensityMatrix, a_vectors: &[[f64; 3]]) -> Result<f64> {
    let n = check_nqubit(rho, a_vectors)?;
    let basis = gell_mann_basis(2)?;
    let mut cross = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let t = pairwise_correlation_tensor(rho, &basis, (i, j))?;
            cross += dot3(&a_vectors[i], &t.mul_vec(&a_vectors[j]));
        }
    }
    Ok(n as f64 - (n as f64 + 2.0 * cross).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{orthogonal_observable_set, svd_aligned_observable_sets};
    use crate::linalg::RealMatrix;
    use crate::random::Sampler;
    use crate::states;

    const X: [f64; 3] = [1.0, 0.0, 0.0];
    const Y: [f64; 3] = [0.0, 1.0, 0.0];
    const Z: [f64; 3] = [0.0, 0.0, 1.0];

    fn sigma_sets(d: usize) -> (OrthogonalObservableSet, OrthogonalObservableSet) {
        let b = gell_mann_basis(d).unwrap();
        let id = RealMatrix::identity(d * d - 1);
        (
            orthogonal_observable_set(&b, &id).unwrap(),
            orthogonal_observable_set(&b, &id).unwrap(),
        )
    }

    #[test]
    fn verdict_margin_rules() {
        assert!(!DetectionVerdict::new("x", 1.0 + 1e-11, 1.0, Direction::Above).is_entangled());
        assert!(DetectionVerdict::new("x", 1.0 + 1e-9, 1.0, Direction::Above).is_entangled());
        assert!(DetectionVerdict::new("x", -1e-9, 0.0, Direction::Below).is_entangled());
        assert!(!DetectionVerdict::new("x", -1e-11, 0.0, Direction::Below).is_entangled());
    }

    #[test]
    fn witness_on_singlet_is_minus_three() {
        let (a, b) = sigma_sets(2);
        let v = conditional_variance_witness(&states::werner(1.0).unwrap(), &a, &b).unwrap();
        assert!((v.statistic + 3.0).abs() < 1e-10);
        assert_eq!(v.threshold, 2.0);
        assert!(v.is_entangled());
    }

    #[test]
    fn witness_on_products_respects_bound() {
        let mut s = Sampler::new(71);
        for d in [2usize, 3] {
            let b = gell_mann_basis(d).unwrap();
            for _ in 0..50 {
                let rho = s.product_state(&[d, d]);
                let a = orthogonal_observable_set(&b, &s.rotation(d * d - 1)).unwrap();
                let bb = orthogonal_observable_set(&b, &s.rotation(d * d - 1)).unwrap();
                let v = conditional_variance_witness(&rho, &a, &bb).unwrap();
                assert!(v.statistic >= v.threshold - 1e-9, "d={d} stat={}", v.statistic);
                assert!(!v.is_entangled());
            }
        }
    }

    #[test]
    fn witness_on_werner_with_aligned_sets() {
        let b2 = gell_mann_basis(2).unwrap();
        for k in 0..=10 {
            let p = k as f64 / 10.0;
            let rho = states::werner(p).unwrap();
            let t = pairwise_correlation_tensor(&rho, &b2, (0, 1)).unwrap();
            let (a, b) = svd_aligned_observable_sets(&t, &b2).unwrap();
            let v = conditional_variance_witness(&rho, &a, &b).unwrap();
            assert!((v.statistic - (3.0 - 6.0 * p)).abs() < 1e-10);
        }
    }

    #[test]
    fn witness_dimension_checks() {
        let (a, b) = sigma_sets(3);
        assert!(conditional_variance_witness(&states::werner(0.5).unwrap(), &a, &b).is_err());
        let rho = DensityMatrix::maximally_mixed(vec![2, 3]);
        let (a2, b2) = sigma_sets(2);
        assert!(conditional_variance_witness(&rho, &a2, &b2).is_err());
    }

    #[test]
    fn kyfan_on_canonical_example() {
        let below = canonical(0.32);
        let above = canonical(0.34);
        assert!(!kyfan_criterion(&below, KyFanCriterion::CondF).unwrap().is_entangled());
        assert!(kyfan_criterion(&above, KyFanCriterion::CondF).unwrap().is_entangled());
        // condF crossing (≈0.3303) < 0.332 < dsep crossing (1/3)
        let mid = canonical(0.332);
        assert!(kyfan_criterion(&mid, KyFanCriterion::CondF).unwrap().is_entangled());
        assert!(!kyfan_criterion(&mid, KyFanCriterion::Dsep).unwrap().is_entangled());
        let v = kyfan_criterion(&canonical(0.4), KyFanCriterion::Dsep).unwrap();
        assert!((v.statistic - 1.2).abs() < 1e-12);
        assert_eq!(v.threshold, 1.0);
    }

    fn canonical(alpha: f64) -> DensityMatrix {
        states::canonical_example(alpha).unwrap()
    }

    #[test]
    fn kyfan_on_tiles() {
        let t = states::tiles_bound_entangled().unwrap();
        let f = kyfan_criterion(&t, KyFanCriterion::CondF).unwrap();
        assert!((f.threshold - 4.0 / 3.0).abs() < 1e-12);
        assert!(f.is_entangled());
        let s = kyfan_criterion(&t, KyFanCriterion::Dsep).unwrap();
        assert!((s.statistic - 3.1603).abs() < 5e-4);
        assert_eq!(s.threshold, 3.0);
        assert!(s.is_entangled());
        assert!(!ppt_criterion(&t).unwrap().is_entangled());
    }

    #[test]
    fn qubit_condf_threshold_never_exceeds_dsep() {
        let mut s = Sampler::new(81);
        for _ in 0..50 {
            let rho = s.mixed_state(&[2, 2], 4);
            let f = kyfan_criterion(&rho, KyFanCriterion::CondF).unwrap();
            let g = kyfan_criterion(&rho, KyFanCriterion::Dsep).unwrap();
            assert!((f.statistic - g.statistic).abs() < 1e-12);
            assert!(f.threshold <= g.threshold + 1e-15);
        }
    }

    #[test]
    fn ppt_examples() {
        assert!(ppt_criterion(&states::werner(0.34).unwrap()).unwrap().is_entangled());
        assert!(!ppt_criterion(&states::werner(0.32).unwrap()).unwrap().is_entangled());
        let prod = states::nqubit_product(&[X, Z]).unwrap();
        assert!(!ppt_criterion(&prod).unwrap().is_entangled());
        assert!(ppt_criterion(&states::ghz3()).is_err());
    }

    #[test]
    fn pure_two_qubit_examples() {
        let prod = states::nqubit_product(&[Z, Z]).unwrap();
        assert!((pure_two_qubit_mutual(&prod, X, Y).unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-12);
        let singlet = states::werner(1.0).unwrap();
        assert!((pure_two_qubit_mutual(&singlet, X, X).unwrap() - 2.0).abs() < 1e-12);
        let max = states::schmidt_pure(0.5).unwrap();
        assert!(pure_two_qubit_mutual(&max, X, X).unwrap().abs() < 1e-7);
        // mixed input and non-orthogonal direction
        assert!(pure_two_qubit_mutual(&states::werner(0.5).unwrap(), X, X).is_err());
        assert!(pure_two_qubit_mutual(&prod, Z, X).is_err());
        assert!(pure_two_qubit_mutual(&prod, [2.0, 0.0, 0.0], X).is_err());
    }

    #[test]
    fn pure_two_qubit_matches_generic() {
        let mut s = Sampler::new(91);
        let b2 = gell_mann_basis(2).unwrap();
        for _ in 0..50 {
            let psi = s.pure_state(&[2, 2]);
            let r1 = bloch_vector(&psi, &b2, 0).unwrap();
            let r2 = bloch_vector(&psi, &b2, 1).unwrap();
            let a = s.unit_vector3_orthogonal_to([r1[0], r1[1], r1[2]]);
            let b = s.unit_vector3_orthogonal_to([r2[0], r2[1], r2[2]]);
            let closed = pure_two_qubit_mutual(&psi, a, b).unwrap();
            let obs = [
                qubit_observable(a).on_site(&[2, 2], 0).unwrap(),
                qubit_observable(b).on_site(&[2, 2], 1).unwrap(),
            ];
            let generic = mutual_uncertainty(&psi, &obs).unwrap();
            assert!((closed - generic).abs() < 1e-10);
        }
    }

    #[test]
    fn concurrence_examples() {
        assert!(concurrence_from_mutual(2.0 - 2f64.sqrt(), 0.7).unwrap().abs() < 1e-15);
        assert!((concurrence_from_mutual(0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(concurrence_from_mutual(0.5, 0.0).is_err());
        let lam: f64 = 0.3;
        let psi = states::schmidt_pure(lam).unwrap();
        let m = pure_two_qubit_mutual(&psi, X, X).unwrap();
        let c = concurrence_from_mutual(m, schmidt_t(X, X)).unwrap();
        assert!((c - 2.0 * (lam * (1.0 - lam)).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn projection_helper() {
        let v = project_orthogonal([1.0, 1.0, 0.0], [0.0, 0.0, 0.5]).unwrap();
        assert!((norm(&v) - 1.0).abs() < 1e-15);
        let v = project_orthogonal([1.0, 1.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        assert!((v[1] - 1.0).abs() < 1e-15);
        assert!(project_orthogonal([0.0, 0.0, 2.0], [0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn nqubit_examples() {
        let r = nqubit_product_test(&states::nqubit_product(&[Z, Z, Z]).unwrap(), &[X, Y, X]).unwrap();
        assert!((r.mutual - (3.0 - 3f64.sqrt())).abs() < 1e-10);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let r = nqubit_product_test(&states::nqubit_product(&[Z; 4]).unwrap(), &[X; 4]).unwrap();
        assert!((r.mutual - 2.0).abs() < 1e-10);
        // GHZ correlations live along z; along x every pair is uncorrelated
        let ghz = states::ghz3();
        let along_z = nqubit_product_test(&ghz, &[Z; 3]).unwrap();
        assert!(along_z.mutual.abs() < 1e-10);
        assert_eq!(along_z.verdict, Verdict::Entangled);
        let along_x = nqubit_product_test(&ghz, &[X; 3]).unwrap();
        assert!((along_x.mutual - (3.0 - 3f64.sqrt())).abs() < 1e-10);
        assert!(nqubit_product_test(&states::werner(0.5).unwrap(), &[X, X]).is_err());
        assert!(nqubit_product_test(&ghz, &[X, X]).is_err());
    }

    #[test]
    fn nqubit_closed_form_agrees() {
        let mut s = Sampler::new(101);
        let b2 = gell_mann_basis(2).unwrap();
        for n in 2..=4 {
            for _ in 0..10 {
                let psi = s.pure_state(&vec![2; n]);
                let dirs: Vec<[f64; 3]> = (0..n)
                    .map(|i| {
                        let r = bloch_vector(&psi, &b2, i).unwrap();
                        s.unit_vector3_orthogonal_to([r[0], r[1], r[2]])
                    })
                    .collect();
                let generic = nqubit_product_test(&psi, &dirs).unwrap().mutual;
                let closed = nqubit_mutual_closed_form(&psi, &dirs).unwrap();
                assert!((generic - closed).abs() < 1e-10);
            }
        }
    }
}
