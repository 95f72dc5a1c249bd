//! Pure-state relations: the two-qubit mutual uncertainty, concurrence
//! recovery and the N-qubit product test.
//!
//! Run with `cargo run --example pure_state_tests`.

use mutual_uncertainty::entanglement::{
    concurrence_from_mutual, nqubit_product_test, pure_two_qubit_mutual, schmidt_t,
};
use mutual_uncertainty::states;
use mutual_uncertainty::Result;

fn main() -> Result<()> {
    let x = [1.0, 0.0, 0.0];
    let z = [0.0, 0.0, 1.0];
    println!("lambda   M(X:X)     C from M   2√(λ(1−λ))");
    for lam in [0.0, 0.1, 0.2, 0.3, 0.5] {
        let m = pure_two_qubit_mutual(&states::schmidt_pure(lam)?, x, x)?;
        let c = concurrence_from_mutual(m, schmidt_t(x, x))?;
        println!("{lam:<8} {m:<10.6} {c:<10.6} {:.6}", 2.0 * (lam * (1.0 - lam)).sqrt());
    }

    for n in 2..=5 {
        let psi = states::nqubit_product(&vec![z; n])?;
        let r = nqubit_product_test(&psi, &vec![x; n])?;
        println!("N = {n}: M = {:.6}, N − √N = {:.6}, {:?}", r.mutual, r.product_value, r.verdict);
    }
    let ghz = states::ghz3();
    for (label, dir) in [("x", x), ("z", z)] {
        let r = nqubit_product_test(&ghz, &[dir; 3])?;
        println!("GHZ3 along {label}: M = {:.6}, {:?}", r.mutual, r.verdict);
    }
    Ok(())
}
