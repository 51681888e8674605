//! Finds the extended Dynkin configurations among the curves of `X(p)` and
//! the three elliptic fibrations used for the automorphism.

use std::collections::BTreeMap;

use k3_salem::fibration::standard_fibrations;
use k3_salem::ns::build_ns_model;

fn main() -> k3_salem::Result<()> {
    let p: u64 = std::env::args()
        .nth(1)
        .map_or(Ok(3), |s| s.parse())
        .expect("p must be an integer");
    let model = build_ns_model(p)?;
    let fibs = standard_fibrations(&model)?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for c in &fibs.configs {
        *counts.entry(c.kind.to_string()).or_default() += 1;
    }
    println!("{} configurations: {counts:?}", fibs.configs.len());
    for f in [&fibs.pi, &fibs.pi_prime, &fibs.pi_double_prime] {
        println!("{f}");
        for fiber in &f.fibers {
            let labels: Vec<&str> = fiber.components.iter().map(|c| c.label.as_str()).collect();
            println!(
                "  {:?} at {}: {}",
                fiber.kodaira,
                fiber.position,
                labels.join(" ")
            );
        }
    }
    Ok(())
}
