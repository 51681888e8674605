mod common;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use k3_salem::exact::{
    char_poly_exact, cyclotomic_poly, det_exact, rat, smith_normal_form, sturm_count, IntMatrix,
    IntPolynomial,
};
use k3_salem::fibration::{
    height_by_projection, height_pairing, reduce_to_section, standard_fibrations,
    translation_isometry, StandardFibrations, Translation,
};
use k3_salem::ns::{basis, build_ns_model, NSModel};
use k3_salem::salem::{
    compose_word, expand_reciprocal, strip_cyclotomic_factors, symmetrize_reciprocal, Word,
};
use k3_salem::weierstrass::{Coeff, QuadExtElement};

struct Fixture {
    model: NSModel,
    fibs: StandardFibrations,
    /// Translations by O, Q, P, R on the first fibration.
    pi: Vec<Translation>,
}

fn fixture() -> &'static Fixture {
    static CELL: OnceLock<Fixture> = OnceLock::new();
    CELL.get_or_init(|| {
        let model = build_ns_model(7).unwrap();
        let fibs = standard_fibrations(&model).unwrap();
        let pi = [basis::O, basis::Q, basis::P, basis::R]
            .iter()
            .map(|&i| {
                let s = reduce_to_section(&model.unit(i), &fibs.pi).unwrap();
                translation_isometry(&s, &fibs.pi).unwrap()
            })
            .collect();
        Fixture { model, fibs, pi }
    })
}

fn poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(coeffs)
}

fn lehmer() -> IntPolynomial {
    poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn det_matches_cofactor_expansion(m in common::small_matrix(5)) {
        prop_assert_eq!(det_exact(&common::to_matrix(&m)).unwrap(), common::cofactor_det(&m));
    }

    #[test]
    fn singular_matrices_have_zero_det(m in (2usize..=5).prop_flat_map(|n| common::low_rank_matrix(n, n - 1))) {
        prop_assert!(det_exact(&common::to_matrix(&m)).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn char_poly_agrees_with_shifted_det(m in common::small_matrix(5)) {
        let cp = char_poly_exact(&common::to_matrix(&m)).unwrap();
        prop_assert_eq!(cp.degree(), Some(m.len()));
        for t in -2i64..=m.len() as i64 + 2 {
            prop_assert_eq!(cp.eval(&BigInt::from(t)), common::cofactor_det(&common::shifted(&m, t)));
        }
    }

    #[test]
    fn snf_diagonalises_and_divides(m in common::small_matrix(4)) {
        let a = common::to_matrix(&m);
        let snf = smith_normal_form(&a).unwrap();
        let prod = snf.left.checked_mul(&a).unwrap().checked_mul(&snf.right).unwrap();
        prop_assert_eq!(prod, snf.diagonal_matrix());
        prop_assert!(det_exact(&snf.left).unwrap().magnitude().is_one());
        prop_assert!(det_exact(&snf.right).unwrap().magnitude().is_one());
        let d = &snf.diagonal;
        for w in d.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        let product: BigInt = d.iter().product();
        prop_assert_eq!(product, det_exact(&a).unwrap().magnitude().clone().into());
    }

    #[test]
    fn sturm_counts_known_roots(roots in prop::collection::vec(-20i64..=20, 1..7), a in -25i64..25, len in 1i64..30) {
        let p = roots.iter().fold(IntPolynomial::one(), |acc, &r| &acc * &poly(&[-r, 1]));
        let b = a + len;
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let expected = distinct.iter().filter(|&&r| a < r && r <= b).count();
        let got = sturm_count(&p, &rat(a, 1), &rat(b, 1)).unwrap();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn reciprocal_round_trip(g in prop::collection::vec(-50i64..=50, 1..10)) {
        let mut g = g;
        g.push(1);
        let g = poly(&g);
        let mu = expand_reciprocal(&g);
        prop_assert!(mu.is_reciprocal());
        prop_assert_eq!(mu.degree(), Some(2 * g.degree().unwrap()));
        prop_assert_eq!(symmetrize_reciprocal(&mu).unwrap(), g);
    }

    #[test]
    fn strip_recovers_salem_factor(ks in prop::collection::vec(1u64..=30, 0..4)) {
        let salem = lehmer();
        let product = ks.iter().fold(salem.clone(), |acc, &k| &acc * &cyclotomic_poly(k).unwrap());
        let (mut factors, rem) = strip_cyclotomic_factors(&product).unwrap();
        let mut ks = ks;
        ks.sort_unstable();
        factors.sort_unstable();
        prop_assert_eq!(factors, ks);
        prop_assert_eq!(rem, salem);
    }

    #[test]
    fn cyclotomic_products_give_x_n_minus_one(n in 1u64..=60) {
        let divisors = (1..=n).filter(|d| n % d == 0);
        let product = divisors.fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic_poly(d).unwrap());
        prop_assert_eq!(product, IntPolynomial::x_pow_minus_one(n as usize));
    }
}

fn field_element(p: u64) -> impl Strategy<Value = QuadExtElement> {
    (0..p as i64, 0..p as i64).prop_map(move |(a, b)| QuadExtElement::new(a, b, p).unwrap())
}

fn field_triple() -> impl Strategy<Value = (QuadExtElement, QuadExtElement, QuadExtElement)> {
    prop::sample::select(vec![3u64, 7, 11, 19, 23, 1_000_003])
        .prop_flat_map(|p| (field_element(p), field_element(p), field_element(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn quadratic_field_axioms((x, y, z) in field_triple()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.add(&x.neg()).is_zero());
        prop_assert_eq!(x.mul(&x.one_like()), x);
        match x.inverse() {
            Some(inv) => prop_assert_eq!(x.mul(&inv), x.one_like()),
            None => prop_assert!(x.is_zero()),
        }
        let p = x.modulus();
        // Frobenius is additive and fixes F_p.
        prop_assert_eq!(x.add(&y).pow(p), x.pow(p).add(&y.pow(p)));
        prop_assert_eq!(x.from_int_like(5).pow(p), x.from_int_like(5));
    }
}

fn word_strategy() -> impl Strategy<Value = Word> {
    let letters = ["O", "Q", "P", "R", "P'", "R'", "P''", "R''"];
    prop::collection::vec(prop::sample::select(letters.to_vec()), 0..6)
        .prop_map(|ls| ls.join(",").parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn composed_words_are_unimodular_and_self_reciprocal(word in word_strategy()) {
        let f = fixture();
        let m = compose_word(&word, &f.model, &f.fibs).unwrap();
        let det = m.det().unwrap();
        prop_assert!(det.magnitude().is_one());
        // x^22 mu(1/x) = det(M) mu(x): palindromic when det = 1, anti-palindromic when det = -1
        let mu = char_poly_exact(m.matrix()).unwrap();
        let reversed: Vec<BigInt> = mu.coeffs().iter().rev().cloned().collect();
        let scaled: Vec<BigInt> = mu.coeffs().iter().map(|c| c * &det).collect();
        prop_assert_eq!(reversed, scaled);
        if det.is_one() {
            prop_assert!(mu.is_reciprocal());
        }
    }

    #[test]
    fn mordell_weil_translations_commute(a in 0usize..4, b in 0usize..4) {
        let f = fixture();
        let (ta, tb) = (&f.pi[a].pushforward, &f.pi[b].pushforward);
        let (ab, ba) = (ta.compose(tb).unwrap(), tb.compose(ta).unwrap());
        prop_assert_eq!(ab.matrix(), ba.matrix());
    }

    #[test]
    fn heights_are_quadratic_and_agree(k in -2i64..=2, m in -2i64..=2) {
        let f = fixture();
        let pi = &f.fibs.pi;
        let n = f.model.n() as i64;
        let unit = |i: usize| f.model.unit(i);
        let d = &(&unit(basis::P).scale_i64(k) + &unit(basis::R).scale_i64(m))
            - &unit(basis::O).scale_i64(k + m - 1);
        let s = reduce_to_section(&d, pi).unwrap();
        let h = height_pairing(&s, &s, pi).unwrap();
        prop_assert_eq!(&h, &height_by_projection(&s, &s, pi).unwrap());
        let hp = rat(4 * n + 3, 2);
        let expected = &hp * BigRational::from_integer((k * k + m * m).into());
        prop_assert_eq!(h, expected);
    }
}

#[test]
fn two_torsion_translation_is_an_involution() {
    let f = fixture();
    let tq = &f.pi[1].pushforward;
    assert!(!tq.is_identity());
    assert!(tq.compose(tq).unwrap().is_identity());
}

#[test]
fn identity_matrix_char_poly_is_power_of_x_minus_one() {
    let cp = char_poly_exact(&IntMatrix::identity(6)).unwrap();
    assert_eq!(cp, poly(&[-1, 1]).pow(6));
}
