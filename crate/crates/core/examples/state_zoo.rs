//! Named states, seeded samplers and the JSON matrix file format.
//!
//! Run with `cargo run --example state_zoo`.

use std::collections::BTreeMap;

use mutual_uncertainty::io::{load_state, write_matrix_file};
use mutual_uncertainty::random::{random_sample, Sample, SampleKind};
use mutual_uncertainty::states::{named_state, STATE_IDS};
use mutual_uncertainty::Result;

fn main() -> Result<()> {
    let params: BTreeMap<String, f64> = [("p", 0.5), ("alpha", 0.3), ("lambda", 0.2)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    for id in STATE_IDS {
        let s = named_state(id, &params)?;
        println!("{:<15} dims {:?}  purity {:.6}", s.name, s.state.dims(), s.state.purity());
    }

    if let Sample::State(rho) = random_sample(SampleKind::Separable, &[3, 3], 4)? {
        println!("seeded separable 3x3 sample, purity {:.6}", rho.purity());
        let path = std::env::temp_dir().join("mu_state_zoo_example.json");
        write_matrix_file(&path, rho.matrix(), rho.dims())?;
        let back = load_state(&path)?;
        println!(
            "round trip through {}: max entry difference {:e}",
            path.display(),
            back.matrix().max_abs_diff(rho.matrix())
        );
        let _ = std::fs::remove_file(path);
    }
    Ok(())
}
