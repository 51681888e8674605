//! Checks `μ(f*) = x¹¹·g(x + 1/x)` with `n` as a formal parameter.

use k3_salem::salem::Word;
use k3_salem::symbolic::symbolic_check;

fn main() -> k3_salem::Result<()> {
    let report = symbolic_check(&Word::standard(), 4, 2)?;
    println!("entries of f_* have degree {} in n", report.entry_degree);
    println!("isometry identity over Q[n]: {}", report.isometry_identity);
    println!(
        "mu identity in Z[n][x]: {} ({} values of n)",
        report.mu_identity, report.mu_points
    );
    Ok(())
}
