//! Composes `(⊕R)∘(⊕P)∘(⊕P′)∘(⊕P″)` on `X(p)` and certifies its Salem degree.
//!
//! Usage: `cargo run --example salem_run -- [p] [word]`

use k3_salem::fibration::standard_fibrations;
use k3_salem::ns::build_ns_model;
use k3_salem::salem::{compose_word, salem_verdict, Word};

fn main() -> k3_salem::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args
        .next()
        .map_or(Ok(3), |s| s.parse())
        .expect("p must be an integer");
    let word: Word = match args.next() {
        Some(w) => w.parse()?,
        None => Word::standard(),
    };
    let model = build_ns_model(p)?;
    let fibrations = standard_fibrations(&model)?;
    let f_star = compose_word(&word, &model, &fibrations)?;
    let v = salem_verdict(&f_star)?;
    println!("p = {p}, word = {word}");
    println!("mu(f*) = {}", v.mu);
    if let Some(g) = &v.trace_g {
        println!("g      = {g}");
    }
    println!("cyclotomic factors: {:?}", v.cyclotomic_factors);
    println!("Salem degree 22: {}", v.is_salem22);
    if let (Some(a), Some(h)) = (&v.salem_number, &v.entropy) {
        println!("Salem number in {a}");
        println!("entropy in {h}");
    }
    Ok(())
}
