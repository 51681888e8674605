//! Checks the explicit sections on the Weierstrass models over `F_{p²}` and
//! symbolically over `ℚ(ζ₈)`.

use k3_salem::weierstrass::{
    check_sections, classify_fibers, verify_y_sections_symbolically, QuadExtElement,
    WeierstrassModel,
};

fn main() -> k3_salem::Result<()> {
    let p: u64 = std::env::args()
        .nth(1)
        .map_or(Ok(7), |s| s.parse())
        .expect("p must be an integer");
    let checks = check_sections(p)?;
    println!("{checks:#?}");
    let (pp, rp) = verify_y_sections_symbolically()?;
    println!("over Q(zeta_8): P' on Y {pp}, R' on Y {rp}");
    if p > 3 {
        let x = WeierstrassModel::x_surface(&QuadExtElement::new(1, 0, p)?)?;
        for fiber in classify_fibers(&x)? {
            println!("X fiber at {}: {:?}", fiber.place, fiber.kodaira);
        }
    }
    Ok(())
}
