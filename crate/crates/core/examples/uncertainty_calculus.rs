//! Mutual, conditional and conditional-mutual uncertainty on a few
//! two-qubit states.
//!
//! Run with `cargo run --example uncertainty_calculus`.

use mutual_uncertainty::generators::qubit_observable;
use mutual_uncertainty::states;
use mutual_uncertainty::uncertainty::{
    conditional_mutual_uncertainty, conditional_uncertainty, conditional_variance, mutual_uncertainty,
    uncertainty_report,
};
use mutual_uncertainty::Result;

fn main() -> Result<()> {
    let dims = [2, 2];
    let x_a = qubit_observable([1.0, 0.0, 0.0]).on_site(&dims, 0)?;
    let x_b = qubit_observable([1.0, 0.0, 0.0]).on_site(&dims, 1)?;
    let z_b = qubit_observable([0.0, 0.0, 1.0]).on_site(&dims, 1)?;

    let singlet = states::werner(1.0)?;
    let product = states::nqubit_product(&[[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]])?;

    println!("M(X_A : X_B)");
    println!("  singlet  {:.6}", mutual_uncertainty(&singlet, &[x_a.clone(), x_b.clone()])?);
    println!("  |00>     {:.6}  (2 - sqrt 2 = {:.6})", mutual_uncertainty(&product, &[x_a.clone(), x_b.clone()])?, 2.0 - 2f64.sqrt());

    // conditioning on a perfectly anti-correlated partner removes all spread
    println!("Δ(X_A | X_B) on the singlet   {:.6}", conditional_uncertainty(&singlet, &x_a, &x_b)?);
    println!("Δ(X_A | X_B)² on the singlet  {:.6}", conditional_variance(&singlet, &x_a, &x_b)?);
    println!(
        "M(X_A : Z_B | X_B) on the singlet  {:.6}",
        conditional_mutual_uncertainty(&singlet, &x_a, &z_b, &x_b)?
    );

    let w = states::werner(0.6)?;
    let report = uncertainty_report(&w, &[x_a, x_b, z_b])?;
    println!("report for Werner(0.6):\n{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
