//! Steering of the two-mode squeezed vacuum with one photon subtracted:
//! closed forms against Wigner-function moments.
//!
//! Run with `cargo run --release --example cv_steering`.

use mutual_uncertainty::steering::{
    pssv_closed_forms, pssv_moments, reid_threshold_solver, PssvState, QuadratureSpec,
};
use mutual_uncertainty::Result;

fn main() -> Result<()> {
    let q = QuadratureSpec::default();
    println!("alpha  M_inf(closed)  M_inf(moments)  Reid(closed)  Reid(moments)  ∫W");
    for alpha in [0.1, 0.3, 0.5, 0.75, 1.0, 1.5] {
        let c = pssv_closed_forms(alpha)?;
        let m = pssv_moments(&PssvState::new(alpha)?, &q)?;
        println!(
            "{alpha:<6} {:<+14.6} {:<+15.6} {:<13.6} {:<14.6} {:.12}",
            c.m_inf_cv, m.m_inf, c.reid_product, m.reid_product, m.norm
        );
    }
    let a = reid_threshold_solver()?;
    println!("Reid product crosses 1/4 at alpha = {a:.10} (¼ acosh(13/3) = {:.10})", 0.25 * (13.0f64 / 3.0).acosh());
    Ok(())
}
