//! Runs the full computation for several primes in parallel and prints the
//! reports as JSON.
//!
//! Usage: `cargo run --example pipeline -- [p1,p2,...]`

use k3_salem::pipeline::{batch, PipelineOptions};

fn main() -> k3_salem::Result<()> {
    let primes: Vec<u64> = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "3,7,11".into())
        .split(',')
        .map(|s| s.trim().parse().expect("primes must be integers"))
        .collect();
    let entries = batch(&primes, None, &PipelineOptions::default())?;
    for e in &entries {
        match &e.result {
            Ok(r) => println!(
                "p = {}: Salem degree 22 {}, gram sha256 {}",
                r.p, r.verdict.is_salem22, r.gram_digest
            ),
            Err(err) => println!("p = {}: {err}", e.p),
        }
    }
    println!("{}", serde_json::to_string(&entries).expect("serializable"));
    Ok(())
}
