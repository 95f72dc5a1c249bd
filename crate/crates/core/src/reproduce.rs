//! Parameter sweeps and the reproduction tables behind `mu reproduce`.
//!
//! Each table row pairs a reference value with the computed one. Rows of
//! kind [`RowKind::Info`] are reported but never fail a run.

use serde::Serialize;

use crate::bloch::pairwise_correlation_tensor;
use crate::bloch::{bloch_vector, svd_aligned_observable_sets};
use crate::entanglement::{
    concurrence_from_mutual, conditional_variance_witness, kyfan_criterion, nqubit_product_test,
    ppt_criterion, pure_two_qubit_mutual, schmidt_t, KyFanCriterion,
};
use crate::error::{Error, Result};
use crate::generators::gell_mann_basis;
use crate::random::Sampler;
use crate::roots::bisect;
use crate::states;
use crate::steering::{
    inferred_mutual_parts, pssv_closed_forms, pssv_moments, reid_threshold_solver, werner_minf_analytic,
    werner_observables, wigner_moment, PssvState, QuadratureSpec, REID_BOUND,
};

/// Interval tolerance of threshold bisections.
pub const THRESHOLD_TOLERANCE: f64 = 1e-8;

/// Fixed seeds so every run draws the same samples.
pub const PRODUCT_SEED: u64 = 20_240_601;
pub const PROPOSITION_SEED: u64 = 20_240_602;
pub const CONCURRENCE_SEED: u64 = 20_240_603;

/// `from + i (to − from)/(steps − 1)` for `i = 0..steps`.
pub fn grid(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if !from.is_finite() || !to.is_finite() || from >= to {
        return Err(Error::invalid(format!("sweep needs from < to, got [{from}, {to}]")));
    }
    if steps < 2 {
        return Err(Error::invalid(format!("sweep needs at least 2 steps, got {steps}")));
    }
    let h = (to - from) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i + 1 == steps { to } else { from + h * i as f64 }).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvSweepRow {
    pub alpha: f64,
    pub m_inf: f64,
    pub reid_product: f64,
    pub reid_bound: f64,
}

/// Closed-form `M_inf` and Reid product of the photon-subtracted state.
pub fn cv_sweep(from: f64, to: f64, steps: usize) -> Result<Vec<CvSweepRow>> {
    grid(from, to, steps)?
        .into_iter()
        .map(|alpha| {
            let c = pssv_closed_forms(alpha)?;
            Ok(CvSweepRow {
                alpha,
                m_inf: c.m_inf_cv,
                reid_product: c.reid_product,
                reid_bound: REID_BOUND,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WernerSweepRow {
    pub p: f64,
    pub m_inf: f64,
    pub m_inf_analytic: f64,
    pub ppt_min_eigenvalue: f64,
}

/// Matrix-level and analytic `M_inf` plus the PPT statistic of Werner states.
pub fn werner_sweep(from: f64, to: f64, steps: usize) -> Result<Vec<WernerSweepRow>> {
    let (a, b, ca, cb) = werner_observables();
    grid(from, to, steps)?
        .into_iter()
        .map(|p| {
            let rho = states::werner(p)?;
            Ok(WernerSweepRow {
                p,
                m_inf: inferred_mutual_parts(&rho, &a, &b, &ca, &cb)?.m_inf,
                m_inf_analytic: werner_minf_analytic(p)?,
                ppt_min_eigenvalue: ppt_criterion(&rho)?.statistic,
            })
        })
        .collect()
}

/// Example-1 crossing of a detector, by bisection on α ∈ [0.1, 1]. At α = 0
/// the state has a zero eigenvalue, so the PPT margin vanishes there.
pub fn canonical_threshold(criterion: &str) -> Result<f64> {
    let margin = |alpha: f64| -> Result<f64> {
        let rho = states::canonical_example(alpha)?;
        let v = match criterion {
            "kyfan-condf" => kyfan_criterion(&rho, KyFanCriterion::CondF)?,
            "kyfan-dsep" => kyfan_criterion(&rho, KyFanCriterion::Dsep)?,
            "ppt" => ppt_criterion(&rho)?,
            other => return Err(Error::invalid(format!("no canonical threshold for '{other}'"))),
        };
        Ok(v.margin())
    };
    bisect(margin, 0.1, 1.0, THRESHOLD_TOLERANCE)
}

/// Werner `p` at which the PPT test starts to fire.
pub fn werner_ppt_threshold() -> Result<f64> {
    bisect(|p| Ok(ppt_criterion(&states::werner(p)?)?.margin()), 0.0, 1.0, THRESHOLD_TOLERANCE)
}

/// Werner `p` at which the matrix-level `M_inf` changes sign.
pub fn werner_steering_threshold() -> Result<f64> {
    let (a, b, ca, cb) = werner_observables();
    bisect(
        |p| Ok(inferred_mutual_parts(&states::werner(p)?, &a, &b, &ca, &cb)?.m_inf),
        0.0,
        1.0,
        THRESHOLD_TOLERANCE,
    )
}

/// Werner `p` above which the conditional-variance witness fires with
/// SVD-aligned observable sets.
pub fn werner_witness_threshold() -> Result<f64> {
    let b2 = gell_mann_basis(2)?;
    bisect(
        |p| {
            let rho = states::werner(p)?;
            let t = pairwise_correlation_tensor(&rho, &b2, (0, 1))?;
            let (a, b) = svd_aligned_observable_sets(&t, &b2)?;
            Ok(conditional_variance_witness(&rho, &a, &b)?.margin())
        },
        0.0,
        1.0,
        THRESHOLD_TOLERANCE,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    /// `|computed − reference| ≤ tolerance`.
    Match,
    /// `computed < reference`.
    Below,
    /// `computed > reference`.
    Above,
    /// `computed ≥ reference − tolerance`.
    AtLeast,
    /// Reported only.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproRow {
    pub quantity: String,
    pub reference: f64,
    pub computed: f64,
    pub diff: f64,
    pub tolerance: f64,
    pub kind: RowKind,
    pub pass: bool,
}

impl ReproRow {
    pub fn new(quantity: &str, reference: f64, computed: f64, tolerance: f64, kind: RowKind) -> Self {
        let diff = (computed - reference).abs();
        let pass = match kind {
            RowKind::Match => diff <= tolerance,
            RowKind::Below => computed < reference,
            RowKind::Above => computed > reference,
            RowKind::AtLeast => computed >= reference - tolerance,
            RowKind::Info => true,
        } && computed.is_finite();
        Self {
            quantity: quantity.to_string(),
            reference,
            computed,
            diff,
            tolerance,
            kind,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproReport {
    pub target: String,
    pub rows: Vec<ReproRow>,
}

impl ReproReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Fixed-width text table.
    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.quantity.chars().count()).max().unwrap_or(8).max(8);
        let mut out = format!(
            "{:<width$}  {:>18}  {:>18}  {:>10}  {:>8}  {}\n",
            "quantity", "reference", "computed", "|diff|", "kind", "status"
        );
        for r in &self.rows {
            let pad = width - r.quantity.chars().count();
            out.push_str(&format!(
                "{}{}  {:>18.12}  {:>18.12}  {:>10.3e}  {:>8}  {}\n",
                r.quantity,
                " ".repeat(pad),
                r.reference,
                r.computed,
                r.diff,
                format!("{:?}", r.kind).to_lowercase(),
                if r.pass { "pass" } else { "FAIL" }
            ));
        }
        out
    }
}

pub const TARGETS: [&str; 5] = ["example1", "example2", "werner", "figure1", "propositions"];

pub fn reproduce(target: &str) -> Result<ReproReport> {
    let rows = match target {
        "example1" => example1()?,
        "example2" => example2()?,
        "werner" => werner()?,
        "figure1" => figure1()?,
        "propositions" => propositions()?,
        other => {
            return Err(Error::invalid(format!(
                "unknown target '{other}', expected one of {}",
                TARGETS.join(", ")
            )))
        }
    };
    Ok(ReproReport {
        target: target.to_string(),
        rows,
    })
}

fn example1() -> Result<Vec<ReproRow>> {
    let condf = 5.0 * 221f64.sqrt() - 74.0;
    Ok(vec![
        ReproRow::new("condF threshold alpha", condf, canonical_threshold("kyfan-condf")?, 1e-6, RowKind::Match),
        ReproRow::new("dsep threshold alpha", 1.0 / 3.0, canonical_threshold("kyfan-dsep")?, 1e-6, RowKind::Match),
        ReproRow::new("PPT threshold alpha", 0.3288, canonical_threshold("ppt")?, 5e-3, RowKind::Match),
    ])
}

fn example2() -> Result<Vec<ReproRow>> {
    let tiles = states::tiles_bound_entangled()?;
    let condf = kyfan_criterion(&tiles, KyFanCriterion::CondF)?;
    let dsep = kyfan_criterion(&tiles, KyFanCriterion::Dsep)?;
    let ppt = ppt_criterion(&tiles)?;
    Ok(vec![
        ReproRow::new("Ky-Fan norm (d^2/4)T", 3.1603, dsep.statistic, 5e-4, RowKind::Match),
        ReproRow::new("dsep statistic vs d(d-1)/2", dsep.threshold, dsep.statistic, 1e-10, RowKind::Above),
        ReproRow::new("condF statistic vs 4/3", condf.threshold, condf.statistic, 1e-10, RowKind::Above),
        ReproRow::new("PPT min eigenvalue", 0.0, ppt.statistic, 1e-10, RowKind::AtLeast),
    ])
}

fn werner() -> Result<Vec<ReproRow>> {
    let mut worst: f64 = 0.0;
    for row in werner_sweep(0.0, 1.0, 101)? {
        worst = worst.max((row.m_inf - row.m_inf_analytic).abs());
    }
    Ok(vec![
        ReproRow::new("max |M_inf analytic - matrix|", 0.0, worst, 1e-10, RowKind::Match),
        ReproRow::new("steering threshold p", std::f64::consts::FRAC_1_SQRT_2, werner_steering_threshold()?, 1e-6, RowKind::Match),
        ReproRow::new("PPT threshold p", 1.0 / 3.0, werner_ppt_threshold()?, 1e-6, RowKind::Match),
        ReproRow::new("condvar witness threshold p", 1.0 / 6.0, werner_witness_threshold()?, 1e-6, RowKind::Info),
    ])
}

fn figure1() -> Result<Vec<ReproRow>> {
    let q = QuadratureSpec::default();
    let mut rows = vec![ReproRow::new(
        "Reid threshold alpha",
        0.25 * (13.0f64 / 3.0).acosh(),
        reid_threshold_solver()?,
        1e-8,
        RowKind::Match,
    )];
    let max_m = cv_sweep(0.01, 1.5, 150)?
        .iter()
        .map(|r| r.m_inf)
        .fold(f64::NEG_INFINITY, f64::max);
    rows.push(ReproRow::new("max M_inf on (0, 1.5]", 0.0, max_m, 0.0, RowKind::Below));
    for alpha in [0.1, 0.3, 0.5, 1.0] {
        let s = PssvState::new(alpha)?;
        let m = pssv_moments(&s, &q)?;
        rows.push(ReproRow::new(
            &format!("Reid product alpha={alpha} (quadrature)"),
            pssv_closed_forms(alpha)?.reid_product,
            m.reid_product,
            1e-8,
            RowKind::Match,
        ));
    }
    let norm = wigner_moment(&PssvState::new(0.5)?, [0; 4], &q)?;
    rows.push(ReproRow::new("Wigner normalisation alpha=0.5", 1.0, norm, 1e-10, RowKind::Match));
    let s = PssvState::new(0.5)?;
    rows.push(ReproRow::new(
        "M_inf alpha=0.5 from moments",
        pssv_closed_forms(0.5)?.m_inf_cv,
        pssv_moments(&s, &q)?.m_inf,
        0.0,
        RowKind::Info,
    ));
    Ok(rows)
}

fn propositions() -> Result<Vec<ReproRow>> {
    let b2 = gell_mann_basis(2)?;
    let mut s = Sampler::new(PRODUCT_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rho = s.product_state(&[2, 2]);
        let r1 = bloch_vector(&rho, &b2, 0)?;
        let r2 = bloch_vector(&rho, &b2, 1)?;
        let a = s.unit_vector3_orthogonal_to([r1[0], r1[1], r1[2]]);
        let b = s.unit_vector3_orthogonal_to([r2[0], r2[1], r2[2]]);
        worst = worst.max((pure_two_qubit_mutual(&rho, a, b)? - (2.0 - 2f64.sqrt())).abs());
    }
    let mut rows = vec![ReproRow::new("max |M - (2 - sqrt 2)| products", 0.0, worst, 1e-10, RowKind::Match)];

    let mut s = Sampler::new(PROPOSITION_SEED);
    for n in 2..=6usize {
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let r: Vec<[f64; 3]> = (0..n).map(|_| s.unit_vector3()).collect();
            let a: Vec<[f64; 3]> = r.iter().map(|ri| s.unit_vector3_orthogonal_to(*ri)).collect();
            let res = nqubit_product_test(&states::nqubit_product(&r)?, &a)?;
            worst = worst.max((res.mutual - res.product_value).abs());
        }
        rows.push(ReproRow::new(&format!("max |M - (N - sqrt N)| N={n}"), 0.0, worst, 1e-9, RowKind::Match));
    }
    let ghz = nqubit_product_test(&states::ghz3(), &[[0.0, 0.0, 1.0]; 3])?;
    rows.push(ReproRow::new(
        "GHZ3 |M - (3 - sqrt 3)| along z",
        1e-3,
        (ghz.mutual - ghz.product_value).abs(),
        0.0,
        RowKind::Above,
    ));

    let mut s = Sampler::new(CONCURRENCE_SEED);
    let x = [1.0, 0.0, 0.0];
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let lam = s.uniform();
        let m = pure_two_qubit_mutual(&states::schmidt_pure(lam)?, x, x)?;
        let c = concurrence_from_mutual(m, schmidt_t(x, x))?;
        worst = worst.max((c - 2.0 * (lam * (1.0 - lam)).sqrt()).abs());
    }
    rows.push(ReproRow::new("max concurrence round-trip error", 0.0, worst, 1e-9, RowKind::Match));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = grid(0.1, 1.0, 10).unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[9], 1.0);
        assert!(grid(1.0, 0.0, 10).is_err());
        assert!(grid(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn cv_sweep_rows() {
        let rows = cv_sweep(0.1, 1.0, 10).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.iter().all(|r| r.m_inf < 0.0 && r.reid_bound == 0.25));
        assert!(cv_sweep(0.0, 1.0, 10).is_err());
    }

    #[test]
    fn werner_sweep_brackets_steering() {
        let rows = werner_sweep(0.0, 1.0, 11).unwrap();
        let first_negative = rows.iter().position(|r| r.m_inf < 0.0).unwrap();
        assert!(rows[first_negative - 1].p < std::f64::consts::FRAC_1_SQRT_2);
        assert!(rows[first_negative].p > std::f64::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn row_kinds() {
        assert!(ReproRow::new("q", 1.0, 1.0 + 1e-9, 1e-8, RowKind::Match).pass);
        assert!(!ReproRow::new("q", 1.0, 1.1, 1e-8, RowKind::Match).pass);
        assert!(ReproRow::new("q", 0.0, -1.0, 0.0, RowKind::Below).pass);
        assert!(!ReproRow::new("q", 0.0, -1e-9, 1e-10, RowKind::AtLeast).pass);
        assert!(ReproRow::new("q", 0.0, 5.0, 0.0, RowKind::Info).pass);
        assert!(!ReproRow::new("q", 0.0, f64::NAN, 1.0, RowKind::Info).pass);
    }

    #[test]
    fn unknown_target() {
        assert!(reproduce("example9").is_err());
    }
}
