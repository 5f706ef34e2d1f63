use proptest::prelude::*;
use weiltorus::deform::*;
use weiltorus::exterior::{Covector, Matrix, Subset};
use weiltorus::hodge::{kahler_candidate, KahlerCandidate};
use weiltorus::torus::*;
use weiltorus::{Assignment, GaussRational, RatFunc, Ring, Scalar};

fn g(re: i64, im: i64) -> GaussRational {
    GaussRational::from_ints(re, im)
}

fn point() -> Assignment {
    Assignment(vec![
        g(1, 2),
        g(0, -1),
        g(3, 1),
        g(-2, 1),
        g(2, -3),
        g(1, 1),
        g(-1, 0),
        g(0, 2),
    ])
}

/// `W̄*_c ∧ W*_d`.
fn bar_wedge(c: usize, d: usize) -> Covector<GaussRational> {
    Covector::unit(4 + c).wedge(&Covector::unit(d)).unwrap()
}

#[test]
fn weil_tangent_basis_shape() {
    let m = generic_model();
    let basis = weil_tangent_basis(&m).unwrap();
    assert_eq!(basis.len(), 8);
    assert!(basis.iter().all(|u| u.weil_flag()));
    let full = full_tangent_basis::<RatFunc>();
    assert_eq!(full.len(), 16);
    assert!(basis.iter().all(|u| full.contains(u)));
    assert_eq!(full.iter().filter(|u| u.weil_flag()).count(), 8);
}

#[test]
fn decomposable_interior_action() {
    // u = W*_0 ⊗ w̄_0, ω = W̄*_0 ∧ W*_1 gives W*_0 ∧ W*_1.
    let u = TangentVector::<GaussRational>::elementary(0, 0);
    let omega = bar_wedge(0, 1);
    let r = interior_action(&u, &omega).unwrap();
    assert_eq!(r, Covector::unit(0).wedge(&Covector::unit(1)).unwrap());
    // Pairing ⟨W̄*_1, w̄_0⟩ = 0.
    assert!(interior_action(&u, &bar_wedge(1, 1)).unwrap().is_zero());
}

#[test]
fn interior_action_rejects_other_types() {
    let u = TangentVector::<GaussRational>::elementary(0, 2);
    let c = Covector::unit(0).wedge(&Covector::unit(1)).unwrap();
    assert_eq!(interior_action(&u, &c), Err(DeformError::TypeError));
    let c = Covector::unit(4).wedge(&Covector::unit(5)).unwrap();
    assert_eq!(interior_action(&u, &c), Err(DeformError::TypeError));
}

#[test]
fn mixed_matrix_round_trip() {
    let m = Matrix::from_fn(4, 4, |c, d| g(c as i64 - d as i64, (c * d) as i64));
    let omega = from_mixed_matrix(&m);
    assert_eq!(mixed_matrix(&omega).unwrap(), m);
    assert_eq!(
        omega.coeff(Subset::from_indices(&[1, 6])),
        m.get(2, 1).neg()
    );
    let sum: Covector<GaussRational> = (0..4)
        .flat_map(|c| (0..4).map(move |d| (c, d)))
        .fold(Covector::zero(2), |acc, (c, d)| {
            acc.add(&bar_wedge(c, d).scale(m.get(c, d)))
        });
    assert_eq!(sum, omega);
}

#[test]
fn blocks_reconstruct() {
    let m = Matrix::from_fn(4, 4, |c, d| g(1 + c as i64, d as i64 - 1));
    let omega = from_mixed_matrix(&m);
    let b = BlockDecomposition::of(&omega).unwrap();
    assert_eq!(b.sum(), omega);
    assert!(b.blocks.iter().all(|x| x.terms().count() == 4));
}

#[test]
fn support_table_holds() {
    let checks = support_checks();
    assert_eq!(checks.len(), 8);
    for c in &checks {
        assert!(c.holds, "{}", c.statement);
        if c.statement.contains(" in ") {
            assert!(c.nonzero, "{} is vacuous", c.statement);
        }
    }
}

#[test]
fn joint_kernel_vanishes() {
    let k = joint_kernel(&generic_model()).unwrap();
    assert_eq!((k.rows, k.rank, k.dim()), (48, 16, 0));
    let sp = generic_model().specialize(&point()).unwrap();
    assert_eq!(joint_kernel(&sp).unwrap().dim(), 0);
}

#[test]
fn first_block_alone_leaves_omega_one_and_two() {
    let k = joint_kernel_for(&plus_tangents::<RatFunc>());
    assert_eq!(k.dim(), 8);
    for v in &k.basis {
        let b = BlockDecomposition::of(v).unwrap();
        assert!(b.blocks[2].is_zero() && b.blocks[3].is_zero());
    }
    let k = joint_kernel_for(&minus_tangents::<RatFunc>());
    for v in &k.basis {
        let b = BlockDecomposition::of(v).unwrap();
        assert!(b.blocks[0].is_zero() && b.blocks[1].is_zero());
    }
}

#[test]
fn every_nonzero_class_moves() {
    let tangents = weil_tangent_basis(&generic_model()).unwrap();
    let lift = |u: &TangentVector<RatFunc>| {
        TangentVector::new(u.coeffs.map(|x| x.specialize(&Assignment(vec![])).unwrap()))
    };
    for (c, d) in (0..4).flat_map(|c| (0..4).map(move |d| (c, d))) {
        let omega = bar_wedge(c, d);
        assert!(tangents
            .iter()
            .any(|u| !interior_action(&lift(u), &omega).unwrap().is_zero()));
    }
}

#[test]
fn cup_rank_of_standard_candidate() {
    let m = generic_model();
    let w0 = KahlerCandidate::<RatFunc>::standard();
    assert_eq!(cup_omega_rank(&m, &w0, &point()).unwrap(), 6);
    let zero = KahlerCandidate::from_form(Matrix::<RatFunc>::zero(4, 4)).unwrap();
    assert_eq!(
        cup_omega_rank(&m, &zero, &point()),
        Err(DeformError::NotPositive)
    );
    // Signature (3,1): no claim, the rank is still reported.
    let one = RatFunc::one;
    let z = RatFunc::zero;
    let h = kahler_candidate(
        [[one(), z()], [z(), one()]],
        [[one(), z()], [z(), one().neg()]],
    )
    .unwrap();
    assert_eq!(
        cup_omega_rank(&m, &h, &point()),
        Err(DeformError::NotPositive)
    );
    let r = cup_rank_at(&h, &point()).unwrap();
    assert!(r <= 6);
}

#[test]
fn square_identity_on_decomposables_and_zero() {
    let u = TangentVector::<GaussRational>::elementary(1, 3);
    let omega = bar_wedge(3, 0).add(&bar_wedge(0, 2));
    let c = int_on_square(&u, &omega).unwrap();
    assert!(c.difference.is_zero());
    let zero = TangentVector::new(Matrix::<GaussRational>::zero(4, 4));
    let c = int_on_square(&zero, &omega).unwrap();
    assert!(c.lhs.is_zero() && c.rhs.is_zero());
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (-5i64..=5, -5i64..=5).prop_map(|(a, b)| g(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn square_identity(u in proptest::collection::vec(gauss(), 16), w in proptest::collection::vec(gauss(), 16)) {
        let u = TangentVector::new(Matrix::from_fn(4, 4, |a, b| u[4 * a + b].clone()));
        let omega = from_mixed_matrix(&Matrix::from_fn(4, 4, |c, d| w[4 * c + d].clone()));
        let c = int_on_square(&u, &omega).unwrap();
        prop_assert!(c.difference.is_zero());
    }

    #[test]
    fn interior_action_matches_matrix_formula(u in proptest::collection::vec(gauss(), 16), w in proptest::collection::vec(gauss(), 16)) {
        let um = Matrix::from_fn(4, 4, |a, b| u[4 * a + b].clone());
        let om = Matrix::from_fn(4, 4, |c, d| w[4 * c + d].clone());
        let r = interior_action(&TangentVector::new(um.clone()), &from_mixed_matrix(&om)).unwrap();
        // Σ_ad (UΩ)_ad W*_a ∧ W*_d.
        let p = um.mul(&om);
        let mut expected = Covector::zero(2);
        for a in 0..4 {
            for d in 0..4 {
                let e = Covector::unit(a).wedge(&Covector::unit(d)).unwrap();
                expected = expected.add(&e.scale(p.get(a, d)));
            }
        }
        prop_assert_eq!(r, expected);
    }

    #[test]
    fn interior_action_is_bilinear(u in proptest::collection::vec(gauss(), 16), w1 in proptest::collection::vec(gauss(), 16), w2 in proptest::collection::vec(gauss(), 16), k in gauss()) {
        let u = TangentVector::new(Matrix::from_fn(4, 4, |a, b| u[4 * a + b].clone()));
        let o1 = from_mixed_matrix(&Matrix::from_fn(4, 4, |c, d| w1[4 * c + d].clone()));
        let o2 = from_mixed_matrix(&Matrix::from_fn(4, 4, |c, d| w2[4 * c + d].clone()));
        let lhs = interior_action(&u, &o1.add(&o2.scale(&k))).unwrap();
        let rhs = interior_action(&u, &o1).unwrap().add(&interior_action(&u, &o2).unwrap().scale(&k));
        prop_assert_eq!(lhs, rhs);
    }
}
