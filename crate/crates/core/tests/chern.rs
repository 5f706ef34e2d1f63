use proptest::prelude::*;
use weiltorus::chern::*;
use weiltorus::exterior::{Covector, Subset};
use weiltorus::scalars::rational;
use weiltorus::{BigRational, GaussRational, Ring};

fn e(ix: &[usize]) -> Covector<BigRational> {
    Covector::basis(Subset::from_indices(ix))
}

fn pow(a: &ChernTotal, n: usize) -> ChernTotal {
    (0..n).fold(ChernTotal::one(), |acc, _| acc.mul(a))
}

#[test]
fn trivial_products() {
    let ones = vec![
        (ChernTotal::one(), Exponent::Plus),
        (ChernTotal::one(), Exponent::Minus),
    ];
    assert!(whitney_product(&ones).unwrap().is_one());
    assert!(whitney_product(&[]).unwrap().is_one());
    assert!(whitney_inverse(&ChernTotal::one()).unwrap().is_one());
}

#[test]
fn geometric_series() {
    let a = e(&[0, 1])
        .add(&e(&[2, 3]))
        .add(&e(&[4, 5]))
        .add(&e(&[6, 7]));
    let one_plus_a = ChernTotal::new(&[a.clone()]).unwrap();
    let minus_a = ChernTotal::new(&[a.neg()]).unwrap();
    // 1 - a + a² - a³ + a⁴
    let series = (0..5).fold(ChernTotal::one().scale(&rational(0, 1)), |acc, n| {
        let term = pow(&minus_a.add(&ChernTotal::one().scale(&rational(-1, 1))), n);
        acc.add(&term)
    });
    assert_eq!(one_plus_a.mul(&series), ChernTotal::one());
    assert_eq!(whitney_inverse(&one_plus_a).unwrap(), series);
    // a⁴ = 4!·e*_{0..7} is the top-degree term.
    assert_eq!(series.c(4), point_class().scale(&rational(24, 1)));
}

#[test]
fn inverse_of_two_term_class() {
    let c1 = e(&[0, 1]).add(&e(&[2, 5]));
    let c2 = e(&[0, 3, 4, 7]).scale(&rational(3, 2));
    let c = ChernTotal::new(&[c1.clone(), c2.clone()]).unwrap();
    let inv = whitney_inverse(&c).unwrap();
    assert_eq!(inv.c(1), c1.neg());
    assert_eq!(inv.c(2), c1.wedge(&c1).unwrap().sub(&c2));
    assert!(c.mul(&inv).is_one() && inv.mul(&c).is_one());
}

#[test]
fn non_unit_constant_term() {
    let mut pieces: [Covector<BigRational>; PIECES] =
        std::array::from_fn(|k| Covector::zero(2 * k));
    pieces[0] = Covector::from_terms(0, [(Subset(0), rational(2, 1))]);
    let c = ChernTotal::from_pieces(pieces).unwrap();
    assert_eq!(whitney_inverse(&c), Err(ChernError::NonUnitConstantTerm));
    assert_eq!(
        whitney_product(&[(c, Exponent::Minus)]),
        Err(ChernError::NonUnitConstantTerm)
    );
}

#[test]
fn degree_mismatch() {
    assert_eq!(
        ChernTotal::new(&[e(&[0, 1, 2])]),
        Err(ChernError::DegreeMismatch { index: 1, found: 3 })
    );
}

#[test]
fn point_ideal_has_no_free_resolution() {
    let c_iz = point_ideal_class(&rational(-6, 1));
    assert_eq!(c_iz.positive_degrees(), vec![8]);
    let resolution = vec![ChernTotal::one(); 5];
    assert_eq!(
        resolution_contradiction(&c_iz, &resolution),
        Verdict::Contradiction
    );
}

#[test]
fn empty_subvariety_is_silent() {
    let resolution = vec![ChernTotal::one(); 3];
    assert_eq!(
        resolution_contradiction(&ChernTotal::one(), &resolution),
        Verdict::NoContradiction
    );
}

#[test]
fn nontrivial_resolution_is_silent() {
    let c_iz = point_ideal_class(&rational(1, 1));
    let e1 = ChernTotal::new(&[e(&[0, 4])]).unwrap();
    let resolution = vec![ChernTotal::one(), e1, ChernTotal::one()];
    assert_eq!(
        resolution_contradiction(&c_iz, &resolution),
        Verdict::NoContradiction
    );
}

#[test]
fn eta_identity() {
    assert!(eta_identity_check());
    // tr((R - μω)²) = trR2 - 2μω·trR + kμ²ω².
    let tr = curvature_trace();
    let s = Formal::sym;
    let expected = s(Symbol::TrR2)
        .sub(
            &Formal::int(2)
                .mul(&s(Symbol::Mu))
                .mul(&s(Symbol::Omega))
                .mul(&s(Symbol::TrR)),
        )
        .add(
            &s(Symbol::K)
                .mul(&s(Symbol::Mu).pow(2))
                .mul(&s(Symbol::Omega).pow(2)),
        );
    assert_eq!(tr, expected);
}

#[test]
fn eta_without_diagonal_part() {
    let s = Formal::sym;
    let reduced = eta_class().substitute(Symbol::Mu, &Formal::int(0));
    assert_eq!(
        reduced,
        s(Symbol::C1)
            .pow(2)
            .sub(&Formal::int(2).mul(&s(Symbol::C2)))
    );
}

#[test]
fn eta_rank_one_cancellation() {
    // k = 1 and c₁ = μω/κ: the c₁², mixed and ω² terms cancel.
    let s = Formal::sym;
    let c1 = s(Symbol::KappaInv)
        .mul(&s(Symbol::Mu))
        .mul(&s(Symbol::Omega));
    let r = eta_class()
        .substitute(Symbol::K, &Formal::int(1))
        .substitute(Symbol::C1, &c1);
    assert_eq!(r, Formal::int(-2).mul(&s(Symbol::C2)));
}

#[test]
fn eta_coefficients() {
    let c = eta_class();
    let mixed = [
        (Symbol::Mu, 1),
        (Symbol::KappaInv, 1),
        (Symbol::Omega, 1),
        (Symbol::C1, 1),
    ];
    assert_eq!(c.coefficient(&mixed), GaussRational::from_ints(-2, 0));
    let square = [
        (Symbol::K, 1),
        (Symbol::Mu, 2),
        (Symbol::KappaInv, 2),
        (Symbol::Omega, 2),
    ];
    assert_eq!(c.coefficient(&square), GaussRational::one());
    assert_eq!(c.coefficient(&[(Symbol::Kappa, 1)]), GaussRational::zero());
}

fn covector(degree: usize) -> impl Strategy<Value = Covector<BigRational>> {
    let subsets = Subset::all(degree);
    proptest::collection::vec((0..subsets.len(), -3i64..=3), 0..4).prop_map(move |terms| {
        Covector::from_terms(
            degree,
            terms.into_iter().map(|(s, c)| (subsets[s], rational(c, 1))),
        )
    })
}

fn class() -> impl Strategy<Value = ChernTotal> {
    (covector(2), covector(4), covector(6), covector(8))
        .prop_map(|(a, b, c, d)| ChernTotal::new(&[a, b, c, d]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative_and_commutative(a in class(), b in class(), c in class()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        let p = whitney_product(&[(a.clone(), Exponent::Plus), (b.clone(), Exponent::Minus)]).unwrap();
        let q = whitney_product(&[(b.clone(), Exponent::Minus), (a.clone(), Exponent::Plus)]).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn inverse_is_two_sided(a in class()) {
        let inv = whitney_inverse(&a).unwrap();
        prop_assert!(a.mul(&inv).is_one());
        prop_assert!(inv.mul(&a).is_one());
        prop_assert_eq!(whitney_inverse(&inv).unwrap(), a);
    }

    #[test]
    fn inverse_of_product(a in class(), b in class()) {
        let ab = whitney_inverse(&a.mul(&b)).unwrap();
        prop_assert_eq!(ab, whitney_inverse(&a).unwrap().mul(&whitney_inverse(&b).unwrap()));
    }

    #[test]
    fn trivial_chains_multiply_to_one(n in 0usize..8, m in -5i64..=5) {
        let chain: Vec<(ChernTotal, Exponent)> = (0..n).map(|i| (ChernTotal::one(), Exponent::alternating(i))).collect();
        prop_assert!(whitney_product(&chain).unwrap().is_one());
        let c_iz = point_ideal_class(&rational(m, 1));
        let expected = if m == 0 { Verdict::NoContradiction } else { Verdict::Contradiction };
        prop_assert_eq!(resolution_contradiction(&c_iz, &vec![ChernTotal::one(); n]), expected);
    }
}
