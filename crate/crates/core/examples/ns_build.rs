//! Builds the Néron–Severi lattice of `X(p)` and checks its invariants.
//!
//! Usage: `cargo run --example ns_build -- [p]`

use k3_salem::lattice::discriminant_group;
use k3_salem::ns::{build_ns_model, curve_table, verify_ns_model};

fn main() -> k3_salem::Result<()> {
    let p: u64 = std::env::args()
        .nth(1)
        .map_or(Ok(7), |s| s.parse())
        .expect("p must be an integer");
    let model = build_ns_model(p)?;
    let report = verify_ns_model(&model);
    let group = discriminant_group(&model.lattice())?;
    println!("NS(X({p})) with basis {}", model.labels().join(" "));
    println!("det = {}", report.det);
    println!(
        "discriminant group: {:?}",
        group
            .invariant_factors
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!("signature: {:?}", report.signature);
    println!("Artin invariant: {:?}", report.sigma);
    println!(
        "{} (-2)-curves and sections in the curve table",
        curve_table(&model)?.len()
    );
    println!("all checks pass: {}", report.passed());
    Ok(())
}
