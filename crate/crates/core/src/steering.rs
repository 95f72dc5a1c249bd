//! Steering tests from inferred uncertainties.
//!
//! Alice (subsystem 0) measures `C` and estimates Bob's (subsystem 1)
//! outcome of `A` with the best affine estimator
//! `A_est(c) = ⟨A⟩ + [Cov(A,C)/ΔC²](c − ⟨C⟩)`, which leaves the error
//! `Δ_inf A² = ΔA² − Cov(A,C)²/ΔC²`. Without a local-hidden-state model for
//! Bob, `Δ_inf A + Δ_inf B ≥ Δ(A+B)` on his reduced state, so
//!
//! ```text
//! M_inf(A:B) = Δ_inf A + Δ_inf B − Δ(A+B) < 0
//! ```
//!
//! certifies steering. The continuous-variable part covers the two-mode
//! squeezed vacuum with one photon subtracted.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::pauli;
use crate::operators::{partial_trace, DensityMatrix, Observable};
use crate::quadrature::{gauss_hermite, GaussHermite};
use crate::roots::bisect;
use crate::uncertainty::{covariance, std_dev, variance};

/// Margin a statistic must clear before a state is called steerable.
pub const STEERING_MARGIN: f64 = 1e-10;
/// Reid's bound on `Δ_inf X² Δ_inf P²`.
pub const REID_BOUND: f64 = 0.25;
/// `ΔC²` at or below this is treated as dispersion free.
pub const DISPERSION_FREE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SteeringCriterion {
    MInf,
    Reid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SteeringOutcome {
    Steerable,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteeringVerdict {
    pub criterion: SteeringCriterion,
    pub statistic: f64,
    pub threshold: f64,
    pub verdict: SteeringOutcome,
}

impl SteeringVerdict {
    pub fn m_inf(statistic: f64) -> Self {
        Self::below(SteeringCriterion::MInf, statistic, 0.0)
    }

    pub fn reid(product: f64) -> Self {
        Self::below(SteeringCriterion::Reid, product, REID_BOUND)
    }

    fn below(criterion: SteeringCriterion, statistic: f64, threshold: f64) -> Self {
        let verdict = if statistic < threshold - STEERING_MARGIN {
            SteeringOutcome::Steerable
        } else {
            SteeringOutcome::Inconclusive
        };
        Self {
            criterion,
            statistic,
            threshold,
            verdict,
        }
    }

    pub fn is_steerable(&self) -> bool {
        self.verdict == SteeringOutcome::Steerable
    }
}

fn bipartite_dims(rho: &DensityMatrix) -> Result<(usize, usize)> {
    match rho.dims() {
        [a, b] => Ok((*a, *b)),
        dims => Err(Error::invalid(format!("expected a bipartite state, got dims {dims:?}"))),
    }
}

fn lift(rho: &DensityMatrix, local: &Observable, site: usize) -> Result<Observable> {
    let dims = rho.dims();
    if local.dim() != dims[site] {
        return Err(Error::DimensionMismatch {
            expected: dims[site],
            found: local.dim(),
        });
    }
    local.on_site(dims, site)
}

/// `Δ_inf² = ΔA² − Cov²/ΔC²` from the variance and covariance data.
pub fn inferred_variance_from_moments(var_a: f64, var_c: f64, cov: f64) -> f64 {
    if var_c <= DISPERSION_FREE {
        return var_a.max(0.0);
    }
    (var_a - cov * cov / var_c).max(0.0)
}

/// `Δ_inf A` for Bob's local observable `bob` given Alice's local observable
/// `alice`. Both are local operators; they are embedded on subsystems 1 and
/// 0 of the bipartite `rho`, so they never share support.
pub fn inferred_std(rho: &DensityMatrix, bob: &Observable, alice: &Observable) -> Result<f64> {
    bipartite_dims(rho)?;
    let a = lift(rho, bob, 1)?;
    let c = lift(rho, alice, 0)?;
    let var = inferred_variance_from_moments(variance(rho, &a)?, variance(rho, &c)?, covariance(rho, &a, &c)?);
    Ok(var.sqrt())
}

/// The pieces of `M_inf(A:B)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InferredMutual {
    pub inferred_a: f64,
    pub inferred_b: f64,
    /// `Δ(A+B)` on Bob's reduced state.
    pub std_sum: f64,
    pub m_inf: f64,
}

/// `Δ_inf A + Δ_inf B − Δ(A+B)` with its components.
pub fn inferred_mutual_parts(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    c_a: &Observable,
    c_b: &Observable,
) -> Result<InferredMutual> {
    bipartite_dims(rho)?;
    let inferred_a = inferred_std(rho, a, c_a)?;
    let inferred_b = inferred_std(rho, b, c_b)?;
    let bob = partial_trace(rho, &[1])?;
    let std_sum = std_dev(&bob, &a.add(b)?)?;
    Ok(InferredMutual {
        inferred_a,
        inferred_b,
        std_sum,
        m_inf: inferred_a + inferred_b - std_sum,
    })
}

/// Steering verdict from `M_inf(A:B) < 0`.
pub fn inferred_mutual_uncertainty(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    c_a: &Observable,
    c_b: &Observable,
) -> Result<SteeringVerdict> {
    Ok(SteeringVerdict::m_inf(inferred_mutual_parts(rho, a, b, c_a, c_b)?.m_inf))
}

/// `A = σ_x/2`, `B = σ_z/2` on Bob's side, inferred from the same operators
/// on Alice's side: `(A, B, C_A, C_B)`.
pub fn werner_observables() -> (Observable, Observable, Observable, Observable) {
    let [x, _, z] = pauli();
    let (hx, hz) = (x.scale(0.5), z.scale(0.5));
    (hx.clone(), hz.clone(), hx, hz)
}

/// `M_inf = √(1 − p²) − 1/√2` for the Werner state with [`werner_observables`].
pub fn werner_minf_analytic(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p must lie in [0, 1], got {p}")));
    }
    Ok((1.0 - p * p).sqrt() - std::f64::consts::FRAC_1_SQRT_2)
}

/// Two-mode squeezed vacuum with one photon subtracted, squeezing `alpha > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PssvState {
    alpha: f64,
}

impl PssvState {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::invalid(format!("alpha must be finite and > 0, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Tensor-product Gauss–Hermite rule in the normal-mode coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    nodes: usize,
}

impl QuadratureSpec {
    pub const DEFAULT_NODES: usize = 24;
    pub const MIN_NODES: usize = 5;

    pub fn new(nodes: usize) -> Result<Self> {
        if nodes < Self::MIN_NODES {
            return Err(Error::invalid(format!(
                "quadrature needs at least {} nodes per axis, got {nodes}",
                Self::MIN_NODES
            )));
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes: Self::DEFAULT_NODES,
        }
    }
}

/// Phase-space point `(X₁, P₁, X₂, P₂)`.
pub type PhasePoint = [f64; 4];

/// Wigner function
///
/// ```text
/// W = π⁻² exp[2 sinh2α (X₁X₂ − P₁P₂) − cosh2α Σ(Xᵢ² + Pᵢ²)]
///     × [−sinh2α {(P₁−P₂)² − (X₁−X₂)²} + cosh2α {(P₁−P₂)² + (X₁−X₂)²} − 1].
/// ```
pub fn pssv_wigner_value(s: &PssvState, point: PhasePoint) -> f64 {
    let [x1, p1, x2, p2] = point;
    let (c, sh) = ((2.0 * s.alpha).cosh(), (2.0 * s.alpha).sinh());
    let gauss = (2.0 * sh * (x1 * x2 - p1 * p2) - c * (x1 * x1 + p1 * p1 + x2 * x2 + p2 * p2)).exp();
    let dx = (x1 - x2).powi(2);
    let dp = (p1 - p2).powi(2);
    gauss / std::f64::consts::PI.powi(2) * (-sh * (dp - dx) + c * (dp + dx) - 1.0)
}

/// Largest total power accepted by [`wigner_moment`].
pub const MAX_MOMENT_ORDER: u32 = 4;

/// `∫ X₁^{n₁} P₁^{m₁} X₂^{n₂} P₂^{m₂} W`.
///
/// In `u± = (X₁ ± X₂)/√2`, `v± = (P₁ ± P₂)/√2` the Gaussian factor is
/// `exp[−e^{−2α}u₊² − e^{2α}u₋² − e^{2α}v₊² − e^{−2α}v₋²]` and the prefactor is
/// `2e^{2α}u₋² + 2e^{−2α}v₋² − 1`; after scaling each coordinate to unit width
/// the integrand is a polynomial times `e^{−|y|²}`, which the rule integrates
/// exactly.
pub fn wigner_moment(s: &PssvState, powers: [u32; 4], q: &QuadratureSpec) -> Result<f64> {
    let order: u32 = powers.iter().sum();
    if order > MAX_MOMENT_ORDER {
        return Err(Error::invalid(format!(
            "moment order {order} exceeds {MAX_MOMENT_ORDER}"
        )));
    }
    // prefactor adds degree 2
    if (order + 2) as usize > 2 * q.nodes() - 1 {
        return Err(Error::invalid(format!(
            "{} nodes cannot integrate moment order {order} exactly",
            q.nodes()
        )));
    }
    let rule = gauss_hermite(q.nodes())?;
    Ok(integrate(s, &rule, |[x1, p1, x2, p2]| {
        x1.powi(powers[0] as i32) * p1.powi(powers[1] as i32) * x2.powi(powers[2] as i32) * p2.powi(powers[3] as i32)
    }))
}

fn integrate<F: Fn(PhasePoint) -> f64>(s: &PssvState, rule: &GaussHermite, f: F) -> f64 {
    let (ep, em) = ((2.0 * s.alpha).exp(), (-2.0 * s.alpha).exp());
    // widths of u+, u−, v+, v−
    let scale = [em.sqrt(), ep.sqrt(), ep.sqrt(), em.sqrt()];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let pi2 = std::f64::consts::PI.powi(2);
    let n = rule.nodes.len();
    let mut total = 0.0;
    for i in 0..n {
        let up = rule.nodes[i] / scale[0];
        for j in 0..n {
            let um = rule.nodes[j] / scale[1];
            let wij = rule.weights[i] * rule.weights[j];
            let (x1, x2) = (h * (up + um), h * (up - um));
            for k in 0..n {
                let vp = rule.nodes[k] / scale[2];
                for l in 0..n {
                    let vm = rule.nodes[l] / scale[3];
                    let (p1, p2) = (h * (vp + vm), h * (vp - vm));
                    let pref = 2.0 * ep * um * um + 2.0 * em * vm * vm - 1.0;
                    total += wij * rule.weights[k] * rule.weights[l] * pref * f([x1, p1, x2, p2]);
                }
            }
        }
    }
    // the unit-width substitution has Jacobian e^{α}e^{−α}e^{−α}e^{α} = 1
    total / pi2
}

/// Second-moment data of the CV state and the quantities derived from it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PssvMoments {
    pub norm: f64,
    pub x1x1: f64,
    pub p1p1: f64,
    pub x2x2: f64,
    pub p2p2: f64,
    pub x1x2: f64,
    pub p1p2: f64,
    pub x1p1: f64,
    pub inferred_x1_var: f64,
    pub inferred_p1_var: f64,
    pub reid_product: f64,
    /// `Δ(X₁ + P₁)` from the moments.
    pub std_sum: f64,
    /// `Δ_inf X₁ + Δ_inf P₁ − Δ(X₁ + P₁)` from the moments.
    pub m_inf: f64,
}

/// Moments needed for the inferred uncertainties, Alice inferring `X₁` from
/// `X₂` and `P₁` from `P₂`. First moments vanish by parity.
pub fn pssv_moments(s: &PssvState, q: &QuadratureSpec) -> Result<PssvMoments> {
    let m = |p: [u32; 4]| wigner_moment(s, p, q);
    let norm = m([0, 0, 0, 0])?;
    let x1x1 = m([2, 0, 0, 0])?;
    let p1p1 = m([0, 2, 0, 0])?;
    let x2x2 = m([0, 0, 2, 0])?;
    let p2p2 = m([0, 0, 0, 2])?;
    let x1x2 = m([1, 0, 1, 0])?;
    let p1p2 = m([0, 1, 0, 1])?;
    let x1p1 = m([1, 1, 0, 0])?;
    let inferred_x1_var = inferred_variance_from_moments(x1x1, x2x2, x1x2);
    let inferred_p1_var = inferred_variance_from_moments(p1p1, p2p2, p1p2);
    let std_sum = (x1x1 + p1p1 + 2.0 * x1p1).max(0.0).sqrt();
    Ok(PssvMoments {
        norm,
        x1x1,
        p1p1,
        x2x2,
        p2p2,
        x1x2,
        p1p2,
        x1p1,
        inferred_x1_var,
        inferred_p1_var,
        reid_product: inferred_x1_var * inferred_p1_var,
        std_sum,
        m_inf: inferred_x1_var.sqrt() + inferred_p1_var.sqrt() - std_sum,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PssvClosedForms {
    pub eta_plus: f64,
    pub eta_minus: f64,
    pub m_inf_cv: f64,
    pub reid_product: f64,
}

/// `η± = √(cosh2α ± coshα sinhα)`,
/// `M_inf = (√3/2)(1/η₋ + 1/η₊) − (η₊ + η₋)` and
/// `Δ_inf X₁² Δ_inf P₁² = 9/(2[3cosh4α + 5])`.
pub fn pssv_closed_forms(alpha: f64) -> Result<PssvClosedForms> {
    PssvState::new(alpha)?;
    let c2 = (2.0 * alpha).cosh();
    let cs = alpha.cosh() * alpha.sinh();
    let eta_plus = (c2 + cs).sqrt();
    let eta_minus = (c2 - cs).sqrt();
    let m_inf_cv = 0.5 * 3f64.sqrt() * (1.0 / eta_minus + 1.0 / eta_plus) - (eta_plus + eta_minus);
    Ok(PssvClosedForms {
        eta_plus,
        eta_minus,
        m_inf_cv,
        reid_product: reid_product(alpha),
    })
}

fn reid_product(alpha: f64) -> f64 {
    9.0 / (2.0 * (3.0 * (4.0 * alpha).cosh() + 5.0))
}

/// Bisection tolerance of [`reid_threshold_solver`].
pub const REID_THRESHOLD_TOLERANCE: f64 = 1e-10;

/// Squeezing at which the Reid product crosses 1/4, searched on `[0.1, 1.5]`.
pub fn reid_threshold_solver() -> Result<f64> {
    bisect(|a| Ok(reid_product(a) - REID_BOUND), 0.1, 1.5, REID_THRESHOLD_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;
    use crate::states;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn inferred_std_examples() {
        let (a, _, c, _) = werner_observables();
        for p in [0.0, 0.3, 0.8, 1.0] {
            let w = states::werner(p).unwrap();
            let v = inferred_std(&w, &a, &c).unwrap();
            assert!((v - (1.0 - p * p).sqrt() / 2.0).abs() < 1e-12);
        }
        let [_, _, z] = pauli();
        let singlet = states::werner(1.0).unwrap();
        assert!(inferred_std(&singlet, &z, &z).unwrap() < 1e-7);
        let prod = states::nqubit_product(&[[0.3, 0.0, 0.4], [0.0, 0.6, 0.0]]).unwrap();
        let bob = partial_trace(&prod, &[1]).unwrap();
        let d = inferred_std(&prod, &z, &z).unwrap();
        assert!((d - std_dev(&bob, &z).unwrap()).abs() < 1e-12);
        assert!(inferred_std(&prod, &Observable::identity(3), &z).is_err());
        assert!(inferred_std(&states::ghz3(), &z, &z).is_err());
    }

    #[test]
    fn dispersion_free_alice_gives_plain_std() {
        let prod = states::nqubit_product(&[[0.0, 0.0, 1.0], [0.5, 0.0, 0.0]]).unwrap();
        let [x, _, z] = pauli();
        let bob = partial_trace(&prod, &[1]).unwrap();
        assert!((inferred_std(&prod, &x, &z).unwrap() - std_dev(&bob, &x).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn werner_examples() {
        let (a, b, ca, cb) = werner_observables();
        let v = inferred_mutual_uncertainty(&states::werner(0.8).unwrap(), &a, &b, &ca, &cb).unwrap();
        assert!((v.statistic - (0.6 - H)).abs() < 1e-10);
        assert!(v.is_steerable());
        let v = inferred_mutual_uncertainty(&states::werner(0.5).unwrap(), &a, &b, &ca, &cb).unwrap();
        assert!((v.statistic - (0.75f64.sqrt() - H)).abs() < 1e-10);
        assert!(!v.is_steerable());
        assert!((werner_minf_analytic(0.0).unwrap() - (1.0 - H)).abs() < 1e-15);
        assert!(werner_minf_analytic(H).unwrap().abs() < 1e-15);
        assert!((werner_minf_analytic(1.0).unwrap() + H).abs() < 1e-15);
        assert!(werner_minf_analytic(1.2).is_err());
    }

    #[test]
    fn werner_grid_agreement() {
        let (a, b, ca, cb) = werner_observables();
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            let m = inferred_mutual_parts(&states::werner(p).unwrap(), &a, &b, &ca, &cb).unwrap();
            assert!((m.m_inf - werner_minf_analytic(p).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn no_false_steering_on_products() {
        let mut s = Sampler::new(111);
        for _ in 0..100 {
            let rho = s.product_state(&[2, 2]);
            let (a, b, ca, cb) = (s.observable(2), s.observable(2), s.observable(2), s.observable(2));
            let m = inferred_mutual_parts(&rho, &a, &b, &ca, &cb).unwrap();
            assert!(m.m_inf >= -1e-9);
            let bob = partial_trace(&rho, &[1]).unwrap();
            assert!(m.inferred_a <= std_dev(&bob, &a).unwrap() + 1e-12);
        }
    }

    #[test]
    fn verdict_thresholds() {
        assert!(SteeringVerdict::reid(0.2).is_steerable());
        assert!(!SteeringVerdict::reid(0.25).is_steerable());
        assert!(!SteeringVerdict::m_inf(-1e-11).is_steerable());
        assert!(SteeringVerdict::m_inf(-1e-9).is_steerable());
    }

    #[test]
    fn wigner_values() {
        let s = PssvState::new(0.4).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((pssv_wigner_value(&s, [0.0; 4]) + 1.0 / pi2).abs() < 1e-15);
        let pt = [0.3, -0.2, 0.7, 0.1];
        let swapped = [0.7, 0.1, 0.3, -0.2];
        assert!((pssv_wigner_value(&s, pt) - pssv_wigner_value(&s, swapped)).abs() < 1e-15);
        assert!(PssvState::new(0.0).is_err());
        assert!(PssvState::new(f64::NAN).is_err());
    }

    #[test]
    fn quadrature_reproduces_pointwise_wigner() {
        // the rotated integrand must agree with direct evaluation
        let s = PssvState::new(0.7).unwrap();
        let rule = gauss_hermite(6).unwrap();
        let direct = integrate(&s, &rule, |p| {
            let [x1, p1, x2, p2] = p;
            let up = H * (x1 + x2);
            let um = H * (x1 - x2);
            let vp = H * (p1 + p2);
            let vm = H * (p1 - p2);
            let a = s.alpha();
            let gauss = (-(-2.0 * a).exp() * up * up - (2.0 * a).exp() * um * um - (2.0 * a).exp() * vp * vp
                - (-2.0 * a).exp() * vm * vm)
                .exp();
            let w = pssv_wigner_value(&s, p);
            let pref = 2.0 * (2.0 * a).exp() * um * um + 2.0 * (-2.0 * a).exp() * vm * vm - 1.0;
            // W / (gauss · pref / π²) should be exactly one
            w / (gauss * pref / std::f64::consts::PI.powi(2))
        });
        let norm = integrate(&s, &rule, |_| 1.0);
        assert!((direct - norm).abs() < 1e-12);
    }

    #[test]
    fn moments_and_normalisation() {
        let q = QuadratureSpec::default();
        for alpha in [0.1, 0.5, 1.0] {
            let s = PssvState::new(alpha).unwrap();
            assert!((wigner_moment(&s, [0; 4], &q).unwrap() - 1.0).abs() < 1e-10);
            assert!(wigner_moment(&s, [1, 0, 0, 0], &q).unwrap().abs() < 1e-12);
            assert!(wigner_moment(&s, [1, 1, 0, 0], &q).unwrap().abs() < 1e-12);
            let m = pssv_moments(&s, &q).unwrap();
            let cf = pssv_closed_forms(alpha).unwrap();
            assert!((m.reid_product - cf.reid_product).abs() < 1e-8);
            assert!((m.inferred_x1_var - 0.75 / cf.eta_minus.powi(2)).abs() < 1e-10);
            assert!((m.inferred_p1_var - 0.75 / cf.eta_plus.powi(2)).abs() < 1e-10);
            // the closed form subtracts ΔX₁ + ΔP₁
            assert!((m.x1x1.sqrt() - cf.eta_minus).abs() < 1e-10);
            assert!((m.p1p1.sqrt() - cf.eta_plus).abs() < 1e-10);
        }
        let s = PssvState::new(0.5).unwrap();
        assert!(wigner_moment(&s, [2, 2, 1, 0], &q).is_err());
        assert!(QuadratureSpec::new(4).is_err());
    }

    #[test]
    fn doubling_nodes_is_stable() {
        let s = PssvState::new(0.8).unwrap();
        let (a, b) = (QuadratureSpec::new(12).unwrap(), QuadratureSpec::new(24).unwrap());
        for p in [[0, 0, 0, 0], [2, 0, 0, 0], [1, 0, 1, 0], [0, 2, 0, 2], [4, 0, 0, 0]] {
            let (x, y) = (wigner_moment(&s, p, &a).unwrap(), wigner_moment(&s, p, &b).unwrap());
            assert!((x - y).abs() < 1e-12 * y.abs().max(1.0), "{p:?}: {x} vs {y}");
        }
    }

    #[test]
    fn closed_form_examples() {
        let small = pssv_closed_forms(1e-9).unwrap();
        assert!((small.eta_plus - 1.0).abs() < 1e-8);
        assert!((small.m_inf_cv - (3f64.sqrt() - 2.0)).abs() < 1e-8);
        assert!((small.reid_product - 9.0 / 16.0).abs() < 1e-8);
        for alpha in [0.1, 0.5, 1.3] {
            let c = pssv_closed_forms(alpha).unwrap();
            let lhs = c.eta_plus.powi(2) * c.eta_minus.powi(2);
            assert!((lhs - (3.0 * (4.0 * alpha).cosh() + 5.0) / 8.0).abs() < 1e-12);
        }
        assert!(pssv_closed_forms(0.0).is_err());
        assert!(pssv_closed_forms(-1.0).is_err());
    }

    #[test]
    fn reid_threshold() {
        let a = reid_threshold_solver().unwrap();
        assert!((a - 0.25 * (13.0f64 / 3.0).acosh()).abs() < 1e-8);
        assert!((pssv_closed_forms(a).unwrap().reid_product - 0.25).abs() < 1e-9);
        assert!(reid_product(a - 0.01) > 0.25);
        assert!(reid_product(a + 0.01) < 0.25);
    }

    #[test]
    fn m_inf_negative_on_grid() {
        for k in 1..=150 {
            let alpha = 1.5 * k as f64 / 150.0;
            assert!(pssv_closed_forms(alpha).unwrap().m_inf_cv < 0.0);
        }
    }
}
