use proptest::prelude::*;

use super::*;

fn vars(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("t{k}")).collect()
}

fn q(text: &str) -> BigRational {
    parse_scalar(text, &[]).unwrap()
}

fn g(text: &str) -> GaussRational {
    parse_scalar(text, &[]).unwrap()
}

fn f(text: &str) -> RatFunc {
    parse_scalar(text, &vars(8)).unwrap()
}

#[test]
fn conj_examples() {
    assert_eq!(q("3/2").conj(), q("3/2"));
    assert_eq!(g("2+5*i").conj(), g("2-5*i"));
    assert_eq!(f("(i*t1 + 1)/(t2 - i)").conj(), f("(-i*t1 + 1)/(t2 + i)"));
}

#[test]
fn is_real_examples() {
    assert!(q("7/3").is_real());
    assert!(!g("i").is_real());
    assert!(f("t1^2 + 2").is_real());
    assert!(!f("t1 + i").is_real());
}

#[test]
fn specialize_examples() {
    let two = Assignment(vec![GaussRational::from_ints(2, 0)]);
    assert_eq!(f("t1 + i").specialize(&two).unwrap(), g("2+i"));

    let one = Assignment(vec![GaussRational::one()]);
    assert_eq!(
        f("1/(t1 - 1)").specialize(&one),
        Err(ScalarError::DenominatorVanishes)
    );

    let ones = Assignment(vec![GaussRational::one(), GaussRational::one()]);
    assert_eq!(f("(t1*t2)/(t1 + t2)").specialize(&ones).unwrap(), g("1/2"));

    assert_eq!(
        f("t2").specialize(&two),
        Err(ScalarError::MissingVariable(2))
    );
}

#[test]
fn text_forms() {
    assert_eq!(q("6/4").to_string(), "3/2");
    assert_eq!(q("-5").to_string(), "-5");
    assert_eq!(g("1/2+3/4*i").to_string(), "1/2+3/4*i");
    assert_eq!(g("-i").to_string(), "-i");
    assert_eq!(g("2-i").to_string(), "2-i");
    assert_eq!(f("t3 + t1*t2 - 1").to_string(), "t1*t2 + t3 - 1");
    assert_eq!(
        f("(1+i)*t1^2 - 1/2*i*t4").to_string(),
        "(1+i)*t1^2 - 1/2*i*t4"
    );
    assert_eq!(f("(t1^2 - 1)/(2*t1 - 2)").to_string(), "1/2*t1 + 1/2");
    assert_eq!(f("1/(2*t1 + 4)").to_string(), "(1/2)/(t1 + 2)");
}

#[test]
fn parse_errors() {
    assert!(matches!(
        parse_scalar::<RatFunc>("t9", &vars(2)),
        Err(ParseError::UnknownVariable(_))
    ));
    assert!(matches!(
        parse_scalar::<BigRational>("i", &[]),
        Err(ParseError::Domain(..))
    ));
    assert!(matches!(
        parse_scalar::<GaussRational>("1/0", &[]),
        Err(ParseError::DivisionByZero)
    ));
    assert!(parse_scalar::<GaussRational>("1 +", &[]).is_err());
}

#[test]
fn denominator_is_monic_and_reduced() {
    let x = f("(2*t1 + 2)/(4*t1^2 - 4)");
    assert_eq!(x.denom(), f("t1 - 1").numer());
    assert_eq!(x.numer(), f("1/2").numer());
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rational(n, d))
}

fn small_gauss() -> impl Strategy<Value = GaussRational> {
    (small_rational(), small_rational()).prop_map(|(re, im)| GaussRational::new(re, im))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((small_gauss(), prop::collection::vec(0u8..=2, 3)), 0..4).prop_map(
        |terms| {
            Poly::from_terms(
                terms
                    .into_iter()
                    .map(|(c, e)| (Monomial::from_exponents(&e), c)),
            )
        },
    )
}

fn small_func() -> impl Strategy<Value = RatFunc> {
    (small_poly(), small_poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { Poly::one() } else { d };
        RatFunc::new(n, d).unwrap()
    })
}

fn ring_axioms<S: Scalar>(a: &S, b: &S, c: &S) {
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.sub(a), S::zero());
    assert_eq!(a.conj().conj(), *a);
    assert_eq!(a.mul(b).conj(), a.conj().mul(&b.conj()));
    assert_eq!(a.add(b).conj(), a.conj().add(&b.conj()));
    if let Some(inv) = a.inv() {
        assert_eq!(a.mul(&inv), S::one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_ring(a in small_rational(), b in small_rational(), c in small_rational()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn gauss_ring(a in small_gauss(), b in small_gauss(), c in small_gauss()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn func_ring(a in small_func(), b in small_func(), c in small_func()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn text_round_trip(a in small_func()) {
        let back: RatFunc = parse_scalar(&a.to_string(), &vars(3)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn gauss_text_round_trip(a in small_gauss()) {
        let back: GaussRational = parse_scalar(&a.to_string(), &[]).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn canonical_form_is_idempotent(a in small_func()) {
        let again = RatFunc::new(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn specialize_is_a_ring_morphism(
        a in small_func(),
        b in small_func(),
        point in prop::collection::vec(small_rational(), 3),
    ) {
        let point = Assignment(point.into_iter().map(|r| GaussRational::from_rational(&r)).collect());
        let (sa, sb) = (a.specialize(&point), b.specialize(&point));
        if let (Ok(sa), Ok(sb)) = (sa, sb) {
            prop_assert_eq!(a.mul(&b).specialize(&point).unwrap(), sa.mul(&sb));
            prop_assert_eq!(a.add(&b).specialize(&point).unwrap(), sa.add(&sb));
            // real point: specialization commutes with conjugation
            prop_assert_eq!(a.conj().specialize(&point).unwrap(), sa.conj());
        }
    }
}
