//! Height pairings of the sections `P, R` on `X(p)` and `P′, R′` on the
//! rational surface `Y`, by the local-contribution formula and by
//! orthogonal projection.

use k3_salem::exact::rational_to_string;
use k3_salem::fibration::{
    height_by_projection, height_pairing, rational_fixture, reduce_to_section, standard_fibrations,
    FibrationData, SectionClass,
};
use k3_salem::ns::{basis, build_ns_model};

fn show(name: &str, a: &SectionClass, b: &SectionClass, f: &FibrationData) -> k3_salem::Result<()> {
    let h = height_pairing(a, b, f)?;
    let check = height_by_projection(a, b, f)?;
    assert_eq!(h, check);
    println!("  {name} = {}", rational_to_string(&h));
    Ok(())
}

fn main() -> k3_salem::Result<()> {
    let p: u64 = std::env::args()
        .nth(1)
        .map_or(Ok(7), |s| s.parse())
        .expect("p must be an integer");
    let model = build_ns_model(p)?;
    let fibs = standard_fibrations(&model)?;
    let sp = reduce_to_section(&model.unit(basis::P), &fibs.pi)?;
    let sr = reduce_to_section(&model.unit(basis::R), &fibs.pi)?;
    println!("X({p}), fibration {}:", fibs.pi.name);
    show("<P,P>", &sp, &sp, &fibs.pi)?;
    show("<P,R>", &sp, &sr, &fibs.pi)?;
    show("<R,R>", &sr, &sr, &fibs.pi)?;

    let y = rational_fixture()?;
    println!("Y:");
    show("<P',P'>", &y.p, &y.p, &y.fibration)?;
    show("<P',R'>", &y.p, &y.r, &y.fibration)?;
    show("<R',R'>", &y.r, &y.r, &y.fibration)?;
    Ok(())
}
