//! Drives the `mu` command line in-process: compute, detect, steer-sweep
//! and reproduce.
//!
//! Run with `cargo run --release --example cli_walkthrough`.

use mutual_uncertainty::cli::run;

fn main() {
    let invocations: &[&[&str]] = &[
        &["compute", "--state", "werner", "--param", "p=1", "--obs", "1,0,0", "--obs", "1,0,0"],
        &["detect", "--state", "canonical", "--param", "alpha=0.34", "--criterion", "kyfan-condf"],
        &["detect", "--state", "tiles", "--criterion", "ppt"],
        &["steer-sweep", "--from", "0.1", "--to", "1.0", "--steps", "4"],
        &["reproduce", "example2"],
    ];
    for args in invocations {
        println!("$ mu {}", args.join(" "));
        let code = run(
            std::iter::once("mu").chain(args.iter().copied()),
            &mut std::io::stdout(),
            &mut std::io::stderr(),
        );
        println!("(exit {code})\n");
    }
}
