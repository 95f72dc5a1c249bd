//! Named states used throughout the crate.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::qubit_observable;
use crate::linalg::ComplexMatrix;
use crate::operators::DensityMatrix;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must lie in [0, 1], got {x}")))
    }
}

/// `|Ψ⁻⟩ = (|01⟩ − |10⟩)/√2`.
pub fn singlet_vector() -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![c(0.0), c(h), c(-h), c(0.0)]
}

/// `ρ_W = p |Ψ⁻⟩⟨Ψ⁻| + (1 − p) I₄/4`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let singlet = ComplexMatrix::outer(&singlet_vector());
    let m = singlet
        .scale(p)
        .add(&ComplexMatrix::identity(4).scale((1.0 - p) / 4.0));
    DensityMatrix::new(m, vec![2, 2])
}

/// Two-qubit state with Bloch vectors `(0, 0, 2(1−α)/5)` and
/// `(0, 0, −3(1−α)/5)` and correlation tensor `−α I₃`.
///
/// Positivity is checked on construction; the state is valid for α in
/// roughly `[0, 1]`.
pub fn canonical_example(alpha: f64) -> Result<DensityMatrix> {
    if !alpha.is_finite() {
        return Err(Error::invalid("alpha must be finite"));
    }
    let s = 1.0 - alpha;
    let r1 = qubit_observable([0.0, 0.0, 0.4 * s]).on_site(&[2, 2], 0)?;
    let r2 = qubit_observable([0.0, 0.0, -0.6 * s]).on_site(&[2, 2], 1)?;
    let mut m = ComplexMatrix::identity(4).add(r1.matrix()).add(r2.matrix());
    for axis in 0..3 {
        let mut e = [0.0; 3];
        e[axis] = 1.0;
        let sigma = qubit_observable(e);
        m = m.sub(&sigma.kron(&sigma).matrix().scale(alpha));
    }
    DensityMatrix::new(m.scale(0.25), vec![2, 2])
}

fn ket3(i: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0); 3];
    v[i] = c(1.0);
    v
}

fn combine(a: &[Complex64], b: &[Complex64], sb: f64) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x + y * sb).collect()
}

fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// The five orthonormal product vectors of the 3⊗3 "Tiles" unextendible
/// product basis.
pub fn tiles_vectors() -> [Vec<Complex64>; 5] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (k0, k1, k2) = (ket3(0), ket3(1), ket3(2));
    let k0m1: Vec<Complex64> = combine(&k0, &k1, -1.0).iter().map(|z| z * h).collect();
    let k1m2: Vec<Complex64> = combine(&k1, &k2, -1.0).iter().map(|z| z * h).collect();
    let all: Vec<Complex64> = vec![c(1.0 / 3f64.sqrt()); 3];
    [
        kron_vec(&k0, &k0m1),
        kron_vec(&k0m1, &k2),
        kron_vec(&k2, &k1m2),
        kron_vec(&k1m2, &k0),
        kron_vec(&all, &all),
    ]
}

/// Bound entangled 3⊗3 state `(I₉ − Σᵢ |ψᵢ⟩⟨ψᵢ|)/4` built on the Tiles basis.
pub fn tiles_bound_entangled() -> Result<DensityMatrix> {
    let mut m = ComplexMatrix::identity(9);
    for v in tiles_vectors() {
        m = m.sub(&ComplexMatrix::outer(&v));
    }
    DensityMatrix::new(m.scale(0.25), vec![3, 3])
}

/// `√λ |00⟩ + √(1−λ) |11⟩`.
pub fn schmidt_pure(lambda: f64) -> Result<DensityMatrix> {
    check_unit_interval("lambda", lambda)?;
    let psi = vec![c(lambda.sqrt()), c(0.0), c(0.0), c((1.0 - lambda).sqrt())];
    DensityMatrix::new(ComplexMatrix::outer(&psi), vec![2, 2])
}

/// `(|000⟩ + |111⟩)/√2`.
pub fn ghz3() -> DensityMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut psi = vec![c(0.0); 8];
    psi[0] = c(h);
    psi[7] = c(h);
    DensityMatrix::from_parts_unchecked(ComplexMatrix::outer(&psi), vec![2, 2, 2])
}

/// `⊗ᵢ (I + r⃗ᵢ·σ⃗)/2`. Each Bloch vector must have norm at most one.
pub fn nqubit_product(bloch_vectors: &[[f64; 3]]) -> Result<DensityMatrix> {
    if bloch_vectors.is_empty() {
        return Err(Error::invalid("need at least one qubit"));
    }
    let mut m = ComplexMatrix::identity(1);
    for r in bloch_vectors {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if !norm.is_finite() || norm > 1.0 + 1e-12 {
            return Err(Error::invalid(format!("Bloch vector {r:?} has norm {norm} > 1")));
        }
        let local = ComplexMatrix::identity(2)
            .add(qubit_observable(*r).matrix())
            .scale(0.5);
        m = m.kron(&local);
    }
    DensityMatrix::new(m, vec![2; bloch_vectors.len()])
}

/// A constructed state together with the identifier and parameters that
/// produced it.
#[derive(Debug, Clone)]
pub struct NamedState {
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
    pub state: DensityMatrix,
}

/// Identifiers accepted by [`named_state`].
pub const STATE_IDS: [&str; 5] = ["werner", "canonical", "tiles", "schmidt", "nqubit-product"];

fn param(params: &BTreeMap<String, f64>, key: &str) -> Result<f64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::invalid(format!("missing parameter {key}")))
}

/// Looks up a named state.
///
/// * `werner`: `p`
/// * `canonical`: `alpha`
/// * `tiles`: no parameters
/// * `schmidt`: `lambda`
/// * `nqubit-product`: `n` qubits (default 2); site `i` has Bloch vector
///   `(x{i}, y{i}, z{i})`, defaulting to `(0, 0, 1)` when none of the
///   three keys is given and to zero components otherwise.
pub fn named_state(id: &str, params: &BTreeMap<String, f64>) -> Result<NamedState> {
    let state = match id {
        "werner" => werner(param(params, "p")?)?,
        "canonical" => canonical_example(param(params, "alpha")?)?,
        "tiles" => tiles_bound_entangled()?,
        "schmidt" => schmidt_pure(param(params, "lambda")?)?,
        "nqubit-product" => {
            let n = params.get("n").copied().unwrap_or(2.0);
            if n < 1.0 || n.fract() != 0.0 || n > 10.0 {
                return Err(Error::invalid(format!("n must be an integer in 1..=10, got {n}")));
            }
            let vectors = (0..n as usize)
                .map(|i| {
                    let keys = [format!("x{i}"), format!("y{i}"), format!("z{i}")];
                    if keys.iter().all(|k| !params.contains_key(k)) {
                        [0.0, 0.0, 1.0]
                    } else {
                        let get = |k: &String| params.get(k).copied().unwrap_or(0.0);
                        [get(&keys[0]), get(&keys[1]), get(&keys[2])]
                    }
                })
                .collect::<Vec<_>>();
            nqubit_product(&vectors)?
        }
        other => {
            return Err(Error::invalid(format!(
                "unknown state '{other}', expected one of {}",
                STATE_IDS.join(", ")
            )))
        }
    };
    Ok(NamedState {
        name: id.to_string(),
        parameters: params.clone(),
        state,
    })
}
