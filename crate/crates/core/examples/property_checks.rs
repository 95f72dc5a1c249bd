//! Sampled checks of the structural relations of the uncertainty calculus:
//! sum relation, chain rule, strong sub-additivity, conditioning and the
//! conditional-variance identity.
//!
//! Run with `cargo run --release --example property_checks -- 1000`.

use mutual_uncertainty::random::Sampler;
use mutual_uncertainty::uncertainty::properties::*;
use mutual_uncertainty::Result;

fn main() -> Result<()> {
    let trials: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let mut s = Sampler::new(2024);
    let mut worst = [f64::INFINITY; 3];
    let mut residual: [f64; 2] = [0.0; 2];
    for _ in 0..trials {
        let case = sample_case(&mut s, 3);
        let [a, b, c] = [&case.observables[0], &case.observables[1], &case.observables[2]];
        worst[0] = worst[0].min(sum_relation_slack(&case.rho, a, b)?);
        worst[1] = worst[1].min(conditioning_slack(&case.rho, a, b)?);
        residual[0] = residual[0].max(chain_rule_residual(&case.rho, &case.observables)?.abs());
        residual[1] = residual[1].max(conditional_variance_residual(&case.rho, a, c)?.abs());
        let (rho, a, b, c) = near_zero_mutual_triple(&mut s, 0.0);
        worst[2] = worst[2].min(ssa_slack(&rho, &a, &b, &c)?);
    }
    println!("{trials} trials");
    println!("  min ΔA + ΔB − Δ(A+B)          {:+.3e}", worst[0]);
    println!("  min ΔA − Δ(A|B)               {:+.3e}", worst[1]);
    println!("  min Δ(A|B) − Δ(A|B+C), M(B:C)=0 {:+.3e}", worst[2]);
    println!("  max |chain rule residual|     {:.3e}", residual[0]);
    println!("  max |Δ(A|B)² − ΔA² − 2Cov|    {:.3e}", residual[1]);
    Ok(())
}
