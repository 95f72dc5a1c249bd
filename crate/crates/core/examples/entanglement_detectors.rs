//! Ky-Fan, PPT and conditional-variance detectors on the canonical
//! two-qubit family and on the Tiles bound entangled state.
//!
//! Run with `cargo run --release --example entanglement_detectors`.

use mutual_uncertainty::bloch::{pairwise_correlation_tensor, svd_aligned_observable_sets};
use mutual_uncertainty::entanglement::{
    conditional_variance_witness, kyfan_criterion, ppt_criterion, DetectionVerdict, KyFanCriterion,
};
use mutual_uncertainty::generators::gell_mann_basis;
use mutual_uncertainty::reproduce::canonical_threshold;
use mutual_uncertainty::states;
use mutual_uncertainty::Result;

fn show(v: &DetectionVerdict) {
    println!(
        "  {:<12} statistic {:>10.6}  threshold {:>8.6}  {:?}",
        v.criterion, v.statistic, v.threshold, v.verdict
    );
}

fn main() -> Result<()> {
    for alpha in [0.2, 0.332, 0.34] {
        let rho = states::canonical_example(alpha)?;
        println!("canonical example, alpha = {alpha}");
        show(&kyfan_criterion(&rho, KyFanCriterion::CondF)?);
        show(&kyfan_criterion(&rho, KyFanCriterion::Dsep)?);
        show(&ppt_criterion(&rho)?);
    }
    println!("crossings by bisection");
    for c in ["kyfan-condf", "kyfan-dsep", "ppt"] {
        println!("  {c:<12} alpha = {:.8}", canonical_threshold(c)?);
    }

    let tiles = states::tiles_bound_entangled()?;
    println!("Tiles");
    show(&kyfan_criterion(&tiles, KyFanCriterion::CondF)?);
    show(&kyfan_criterion(&tiles, KyFanCriterion::Dsep)?);
    show(&ppt_criterion(&tiles)?);

    // the witness is tight on products only; a classical mixture already
    // falls below 2(d−1)
    let b2 = gell_mann_basis(2)?;
    for (name, rho) in [("singlet", states::werner(1.0)?), ("Werner 0.25", states::werner(0.25)?)] {
        let t = pairwise_correlation_tensor(&rho, &b2, (0, 1))?;
        let (a, b) = svd_aligned_observable_sets(&t, &b2)?;
        println!("{name}");
        show(&conditional_variance_witness(&rho, &a, &b)?);
    }
    Ok(())
}
