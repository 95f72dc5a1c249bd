//! Generalized Gell-Mann generators and their structure constants.
//!
//! Run with `cargo run --example generator_basis -- 3`.

use mutual_uncertainty::generators::gell_mann_basis;
use mutual_uncertainty::Result;

fn main() -> Result<()> {
    let d: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let basis = gell_mann_basis(d)?;
    println!("su({d}) has {} generators", basis.len());

    let mut worst: f64 = 0.0;
    for (i, a) in basis.generators().iter().enumerate() {
        for (j, b) in basis.generators().iter().enumerate() {
            let expected = if i == j { 2.0 } else { 0.0 };
            worst = worst.max((a.matrix().trace_product(b.matrix()).re - expected).abs());
        }
    }
    println!("max |Tr[σ_i σ_j] − 2δ_ij| = {worst:e}");

    let n = basis.len();
    println!("non-zero f_ijk with i < j < k:");
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let f = basis.f().get(i, j, k);
                if f.abs() > 1e-12 {
                    println!("  f[{i}{j}{k}] = {f:+.6}");
                }
            }
        }
    }
    let trace_free: f64 = (0..n)
        .map(|k| (0..n).map(|i| basis.d_sym().get(i, i, k)).sum::<f64>().abs())
        .fold(0.0, f64::max);
    println!("max_k |Σ_i d_iik| = {trace_free:e}");
    Ok(())
}
