//! Variance-based uncertainty calculus.
//!
//! With `ΔA = √(⟨A²⟩ − ⟨A⟩²)` the standard deviation of an observable in a
//! state, this module provides
//!
//! * mutual uncertainty `M(A₁:…:Aₙ) = Σ ΔAᵢ − Δ(Σ Aᵢ)`,
//! * conditional uncertainty `Δ(A|B) = Δ(A+B) − ΔB`,
//! * conditional mutual uncertainty `M(A:B|C) = Δ(A|C) + Δ(B|C) − Δ(A+B|C)`,
//! * conditional variance `Δ(A|B)² = Δ(A+B)² − ΔB²`,
//!
//! together with the covariance `½⟨AB + BA⟩ − ⟨A⟩⟨B⟩`.
//!
//! Conditional quantities are sign-indefinite: `Δ(A|−A) = −ΔA`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{expectation, DensityMatrix, Observable};

/// Negative variances down to this magnitude are treated as roundoff.
pub const VARIANCE_ROUNDOFF: f64 = 1e-12;

fn check_dims(rho: &DensityMatrix, a: &Observable) -> Result<()> {
    if rho.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: a.dim(),
        });
    }
    Ok(())
}

/// `(ΔA², ΔA)`; roundoff-negative variances are clamped to zero.
pub fn variance_and_std(rho: &DensityMatrix, a: &Observable) -> Result<(f64, f64)> {
    check_dims(rho, a)?;
    let rho_a = rho.matrix().matmul(a.matrix());
    let mean = rho_a.trace().re;
    let second = rho_a.trace_product(a.matrix()).re;
    let var = second - mean * mean;
    let var = if var < 0.0 {
        if var < -VARIANCE_ROUNDOFF {
            return Err(Error::NegativeVariance(var));
        }
        0.0
    } else {
        var
    };
    Ok((var, var.sqrt()))
}

pub fn variance(rho: &DensityMatrix, a: &Observable) -> Result<f64> {
    variance_and_std(rho, a).map(|(v, _)| v)
}

pub fn std_dev(rho: &DensityMatrix, a: &Observable) -> Result<f64> {
    variance_and_std(rho, a).map(|(_, s)| s)
}

/// `Cov(A, B) = ½ Tr[ρ(AB + BA)] − Tr[ρA] Tr[ρB]`.
pub fn covariance(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<f64> {
    check_dims(rho, a)?;
    check_dims(rho, b)?;
    // Tr[ρBA] is the conjugate of Tr[ρAB] for Hermitian ρ, A, B
    let rho_a = rho.matrix().matmul(a.matrix());
    let sym = rho_a.trace_product(b.matrix()).re;
    Ok(sym - rho_a.trace().re * expectation(rho, b)?)
}

/// `M(A₁:…:Aₙ) = Σ ΔAᵢ − Δ(Σ Aᵢ)` for `n ≥ 2` observables.
pub fn mutual_uncertainty(rho: &DensityMatrix, obs: &[Observable]) -> Result<f64> {
    if obs.len() < 2 {
        return Err(Error::invalid(format!(
            "mutual uncertainty needs at least two observables, got {}",
            obs.len()
        )));
    }
    let mut total = 0.0;
    for a in obs {
        total += std_dev(rho, a)?;
    }
    let sum = Observable::sum(obs)?;
    Ok(total - std_dev(rho, &sum)?)
}

/// `Δ(A|B) = Δ(A+B) − ΔB`.
pub fn conditional_uncertainty(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<f64> {
    check_dims(rho, a)?;
    check_dims(rho, b)?;
    Ok(std_dev(rho, &a.add(b)?)? - std_dev(rho, b)?)
}

/// `M(A:B|C) = Δ(A|C) + Δ(B|C) − Δ(A+B|C)`.
pub fn conditional_mutual_uncertainty(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    c: &Observable,
) -> Result<f64> {
    let ab = a.add(b)?;
    Ok(conditional_uncertainty(rho, a, c)? + conditional_uncertainty(rho, b, c)?
        - conditional_uncertainty(rho, &ab, c)?)
}

/// The chain-rule form `Δ(B|C) − Δ(B|C+A)` of the conditional mutual
/// uncertainty; equal to [`conditional_mutual_uncertainty`] up to roundoff.
pub fn conditional_mutual_uncertainty_reduced(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    c: &Observable,
) -> Result<f64> {
    Ok(conditional_uncertainty(rho, b, c)? - conditional_uncertainty(rho, b, &c.add(a)?)?)
}

/// `Δ(A|B)² = Δ(A+B)² − ΔB²`.
pub fn conditional_variance(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<f64> {
    check_dims(rho, a)?;
    check_dims(rho, b)?;
    Ok(variance(rho, &a.add(b)?)? - variance(rho, b)?)
}

/// Summary of the uncertainty quantities for a list of observables.
///
/// Pairwise conditional quantities refer to the first two observables.
#[derive(Debug, Clone, Serialize)]
pub struct UncertaintyReport {
    pub std_devs: Vec<f64>,
    pub std_sum_obs: f64,
    pub mutual: f64,
    pub conditional: ConditionalReport,
    pub conditional_variance: f64,
    pub covariance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionalReport {
    pub a_given_b: f64,
}

pub fn uncertainty_report(rho: &DensityMatrix, obs: &[Observable]) -> Result<UncertaintyReport> {
    let mutual = mutual_uncertainty(rho, obs)?;
    let std_devs = obs
        .iter()
        .map(|a| std_dev(rho, a))
        .collect::<Result<Vec<_>>>()?;
    let std_sum_obs = std_dev(rho, &Observable::sum(obs)?)?;
    let (a, b) = (&obs[0], &obs[1]);
    Ok(UncertaintyReport {
        std_devs,
        std_sum_obs,
        mutual,
        conditional: ConditionalReport {
            a_given_b: conditional_uncertainty(rho, a, b)?,
        },
        conditional_variance: conditional_variance(rho, a, b)?,
        covariance: covariance(rho, a, b)?,
    })
}

/// Generators and slack functions for the structural inequalities of the
/// calculus. Each `*_slack` returns `rhs − lhs` of an inequality `lhs ≤ rhs`
/// (non-negative when it holds) or the signed residual of an identity.
pub mod properties {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::random::Sampler;

    /// A random state together with observables on the same space.
    #[derive(Debug, Clone)]
    pub struct PropertyCase {
        pub rho: DensityMatrix,
        pub observables: Vec<Observable>,
    }

    /// Draws a state of dimension 2–9 (pure or a mixture of up to four pure
    /// states, chosen at random) and `n_obs` random observables.
    pub fn sample_case(s: &mut Sampler, n_obs: usize) -> PropertyCase {
        let dim = s.int_in(2, 9);
        let rho = if s.uniform() < 0.5 {
            s.pure_state(&[dim])
        } else {
            s.mixed_state(&[dim], crate::random::MAX_COMPONENTS)
        };
        let observables = (0..n_obs).map(|_| s.observable(dim)).collect();
        PropertyCase { rho, observables }
    }

    /// `ΔA + ΔB − Δ(A+B)`.
    pub fn sum_relation_slack(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<f64> {
        mutual_uncertainty(rho, &[a.clone(), b.clone()])
    }

    /// `Σ ΔAᵢ − Δ(Σ Aᵢ)`.
    pub fn nary_sum_relation_slack(rho: &DensityMatrix, obs: &[Observable]) -> Result<f64> {
        mutual_uncertainty(rho, obs)
    }

    /// `Σ pᵢ ΔAᵢ − Δ(Σ pᵢ Aᵢ)` for convex weights.
    pub fn convexity_slack(rho: &DensityMatrix, weights: &[f64], obs: &[Observable]) -> Result<f64> {
        let mut rhs = 0.0;
        let mut combo = Observable::zero(rho.dim());
        for (w, a) in weights.iter().zip(obs) {
            rhs += w * std_dev(rho, a)?;
            combo = combo.add(&a.scale(*w))?;
        }
        Ok(rhs - std_dev(rho, &combo)?)
    }

    /// `Δ(A)_ρ − Σ λℓ Δ(A)_ρℓ` with `ρ = Σ λℓ ρℓ`.
    pub fn mixing_slack(weights: &[f64], states: &[DensityMatrix], a: &Observable) -> Result<f64> {
        let rho = DensityMatrix::mixture(weights, states)?;
        let mut avg = 0.0;
        for (w, s) in weights.iter().zip(states) {
            avg += w * std_dev(s, a)?;
        }
        Ok(std_dev(&rho, a)? - avg)
    }

    /// `Δ(ΣAᵢ) − Σᵢ Δ(Aᵢ | Aᵢ₋₁ + … + A₁)`, with `Δ(A₁|∅) = ΔA₁`.
    pub fn chain_rule_residual(rho: &DensityMatrix, obs: &[Observable]) -> Result<f64> {
        let total = std_dev(rho, &Observable::sum(obs)?)?;
        let mut acc = std_dev(rho, &obs[0])?;
        let mut prefix = obs[0].clone();
        for a in &obs[1..] {
            acc += conditional_uncertainty(rho, a, &prefix)?;
            prefix = prefix.add(a)?;
        }
        Ok(total - acc)
    }

    /// `Δ(A|B) − Δ(A|B+C)`; non-negative whenever `M(B:C) = 0`.
    pub fn ssa_slack(rho: &DensityMatrix, a: &Observable, b: &Observable, c: &Observable) -> Result<f64> {
        Ok(conditional_uncertainty(rho, a, b)? - conditional_uncertainty(rho, a, &b.add(c)?)?)
    }

    /// `M(A:B+C) − M(A:B)`.
    pub fn discarding_slack(rho: &DensityMatrix, a: &Observable, b: &Observable, c: &Observable) -> Result<f64> {
        let bc = b.add(c)?;
        Ok(mutual_uncertainty(rho, &[a.clone(), bc])? - mutual_uncertainty(rho, &[a.clone(), b.clone()])?)
    }

    /// `ΔA − Δ(A|B)`.
    pub fn conditioning_slack(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<f64> {
        Ok(std_dev(rho, a)? - conditional_uncertainty(rho, a, b)?)
    }

    /// `Δ(A|B)² − (ΔA² + 2 Cov(A,B))`.
    pub fn conditional_variance_residual(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<f64> {
        Ok(conditional_variance(rho, a, b)? - (variance(rho, a)? + 2.0 * covariance(rho, a, b)?))
    }

    /// Observable with the pure state `ψ` as an eigenvector, so it has zero
    /// variance in `ψ` and zero covariance with anything.
    pub fn dispersion_free(psi: &[num_complex::Complex64], s: &mut Sampler) -> Observable {
        let d = psi.len();
        let proj = ComplexMatrix::outer(psi);
        let perp = ComplexMatrix::identity(d).sub(&proj);
        let x = s.observable(d);
        let m = perp
            .matmul(x.matrix())
            .matmul(&perp)
            .add(&proj.scale(s.normal()));
        Observable::from_hermitian(m.add(&m.dagger()).scale(0.5))
    }

    /// Pure-state triple `(ρ, A, B, C)` where `C = c·B + D + ε·E` with `D`
    /// dispersion-free in `ρ`, so `M(B:C)` vanishes up to the `ε` term.
    pub fn near_zero_mutual_triple(
        s: &mut Sampler,
        epsilon: f64,
    ) -> (DensityMatrix, Observable, Observable, Observable) {
        let dim = s.int_in(2, 9);
        let psi = s.state_vector(dim);
        let rho = DensityMatrix::from_parts_unchecked(ComplexMatrix::outer(&psi), vec![dim]);
        let a = s.observable(dim);
        let b = s.observable(dim);
        let d = dispersion_free(&psi, s);
        let e = s.observable(dim);
        let c_scale = 0.1 + 2.0 * s.uniform();
        let c = b
            .scale(c_scale)
            .add(&d)
            .and_then(|x| x.add(&e.scale(epsilon)))
            .expect("equal dimensions");
        (rho, a, b, c)
    }
}
