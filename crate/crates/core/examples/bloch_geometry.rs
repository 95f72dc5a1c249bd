//! Bloch vectors, correlation tensors, Ky-Fan norms and SVD-aligned
//! observable sets.
//!
//! Run with `cargo run --example bloch_geometry`.

use mutual_uncertainty::bloch::{
    alignment_sum, bloch_vector, expansion_correlation_tensor, ky_fan_norm, norm, pairwise_correlation_tensor,
    svd_aligned_observable_sets,
};
use mutual_uncertainty::generators::gell_mann_basis;
use mutual_uncertainty::states;
use mutual_uncertainty::Result;

fn main() -> Result<()> {
    let b2 = gell_mann_basis(2)?;
    let rho = states::canonical_example(0.4)?;
    println!("canonical example, alpha = 0.4");
    println!("  r1 = {:?}", bloch_vector(&rho, &b2, 0)?);
    println!("  r2 = {:?}", bloch_vector(&rho, &b2, 1)?);
    let t = pairwise_correlation_tensor(&rho, &b2, (0, 1))?;
    for i in 0..3 {
        println!("  T[{i}] = {:?}", t.row(i));
    }
    println!("  ‖T‖_KF = {:.6}", ky_fan_norm(&t)?);

    let (a, b) = svd_aligned_observable_sets(&t, &b2)?;
    println!("  Σ a_iᵀ T b_i with aligned sets = {:.6}", alignment_sum(&t, &a, &b));

    let b3 = gell_mann_basis(3)?;
    let tiles = states::tiles_bound_entangled()?;
    let t = pairwise_correlation_tensor(&tiles, &b3, (0, 1))?;
    let tau = expansion_correlation_tensor(&tiles, &b3, (0, 1))?;
    println!("Tiles state");
    println!("  |r1| = {:.6}, |r2| = {:.6}", norm(&bloch_vector(&tiles, &b3, 0)?), norm(&bloch_vector(&tiles, &b3, 1)?));
    println!("  ‖T‖_KF with t_kl = Tr[ρ σ_k⊗σ_l]  = {:.6}", ky_fan_norm(&t)?);
    println!("  ‖τ‖_KF with τ = (d²/4) t          = {:.6}", ky_fan_norm(&tau)?);
    Ok(())
}
