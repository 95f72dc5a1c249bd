//! Inferred mutual uncertainty for Werner states.
//!
//! Run with `cargo run --example werner_steering`.

use mutual_uncertainty::reproduce::{werner_ppt_threshold, werner_steering_threshold};
use mutual_uncertainty::states;
use mutual_uncertainty::steering::{inferred_mutual_parts, werner_minf_analytic, werner_observables};
use mutual_uncertainty::Result;

fn main() -> Result<()> {
    let (a, b, ca, cb) = werner_observables();
    println!("p      Δinf A    Δinf B    Δ(A+B)    M_inf      analytic");
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        let m = inferred_mutual_parts(&states::werner(p)?, &a, &b, &ca, &cb)?;
        println!(
            "{p:<6.1} {:<9.6} {:<9.6} {:<9.6} {:<+10.6} {:+.6}",
            m.inferred_a,
            m.inferred_b,
            m.std_sum,
            m.m_inf,
            werner_minf_analytic(p)?
        );
    }
    println!("steerable above p = {:.8}", werner_steering_threshold()?);
    println!("entangled above p = {:.8}", werner_ppt_threshold()?);
    Ok(())
}
