use proptest::prelude::*;
use weiltorus::exterior::{Matrix, Multivector, Subset, RANK};
use weiltorus::scalars::{rational, ScalarDomain};
use weiltorus::torus::*;
use weiltorus::{Assignment, GaussRational, RatFunc, Ring, Scalar};

fn g(re: i64, im: i64) -> GaussRational {
    GaussRational::from_ints(re, im)
}

#[test]
fn standard_eigenbasis() {
    let f = eigenbasis(&CmAction::standard()).unwrap();
    assert_eq!(f.len(), 4);
    for (k, v) in f.iter().enumerate() {
        let mut expected = vec![GaussRational::zero(); RANK];
        expected[2 * k] = GaussRational::i();
        expected[2 * k + 1] = GaussRational::one();
        assert_eq!(v, &expected);
    }
}

#[test]
fn identity_is_not_an_action() {
    let mut j = [[0i64; RANK]; RANK];
    for (k, row) in j.iter_mut().enumerate() {
        row[k] = 1;
    }
    assert_eq!(CmAction::new(j), Err(TorusError::InvalidAction));
    assert_eq!(
        eigenbasis(&CmAction::new_unchecked(j)),
        Err(TorusError::InvalidAction)
    );
}

/// `P J₀ P⁻¹` for a unimodular `P` built from elementary row operations.
fn conjugated_action(ops: &[(usize, usize, i64)]) -> CmAction {
    let mut p = [[0i64; RANK]; RANK];
    let mut q = [[0i64; RANK]; RANK];
    for k in 0..RANK {
        p[k][k] = 1;
        q[k][k] = 1;
    }
    for &(a, b, c) in ops {
        if a == b {
            continue;
        }
        // P ← E·P with E = 1 + c·e_{ab}; its inverse Q ← Q·E⁻¹.
        for col in 0..RANK {
            p[a][col] += c * p[b][col];
        }
        for row in 0..RANK {
            q[row][b] -= c * q[row][a];
        }
    }
    let j0 = CmAction::standard();
    let j0 = j0.entries();
    let mut pj = [[0i64; RANK]; RANK];
    let mut out = [[0i64; RANK]; RANK];
    for r in 0..RANK {
        for c in 0..RANK {
            pj[r][c] = (0..RANK).map(|k| p[r][k] * j0[k][c]).sum();
        }
    }
    for r in 0..RANK {
        for c in 0..RANK {
            out[r][c] = (0..RANK).map(|k| pj[r][k] * q[k][c]).sum();
        }
    }
    CmAction::new(out).expect("conjugate of J0")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn eigenvectors_satisfy_the_eigen_equation(ops in proptest::collection::vec((0usize..8, 0usize..8, -2i64..=2), 0..6)) {
        let action = conjugated_action(&ops);
        let f = eigenbasis(&action).unwrap();
        let j: Matrix<GaussRational> = action.matrix();
        for v in &f {
            let jv = j.apply(v);
            let iv: Vec<GaussRational> = v.iter().map(|x| x.mul(&GaussRational::i())).collect();
            prop_assert_eq!(jv, iv);
        }
        let frame = eigenframe(&action).unwrap();
        prop_assert!(!frame.det().is_zero());
    }
}

#[test]
fn generic_model_validates() {
    let m = generic_model();
    let report = validate_model(&m);
    assert!(report.passed(), "{report:?}");
    let det = m.eigen_adapted_matrix().det();
    let vars = generic_variables();
    let d: RatFunc =
        weiltorus::scalars::parse_scalar("(t5-t1)*(t8-t4)-(t7-t3)*(t6-t2)", &vars).unwrap();
    let d2 = d.mul(&d);
    assert!(det == d2 || det == d2.neg(), "det = {det}");
}

#[test]
fn dependent_wi_is_reported() {
    let one = GaussRational::one();
    let zero = GaussRational::zero();
    let f1 = vec![one.clone(), zero.clone(), zero.clone(), zero.clone()];
    let m = WeilTorusModel::new(
        CmAction::standard(),
        ScalarDomain::GaussianRational,
        [f1.clone(), f1.clone()],
        [
            vec![one.clone(), zero.clone(), g(1, 1), g(2, 0)],
            vec![zero.clone(), one.clone(), g(0, 3), g(1, -1)],
        ],
    );
    let r = validate_model(&m);
    assert_eq!(r.check(CHECK_WI), Some(false));
    assert!(!r.passed());
}

#[test]
fn conjugate_wmi_is_singular() {
    let wi: [Vec<GaussRational>; 2] = [
        vec![g(1, 0), g(0, 0), g(2, 1), g(0, 3)],
        vec![g(0, 0), g(1, 0), g(-1, 1), g(5, -2)],
    ];
    let wmi = [
        wi[0].iter().map(|x| x.conj()).collect(),
        wi[1].iter().map(|x| x.conj()).collect(),
    ];
    let m = WeilTorusModel::new(
        CmAction::standard(),
        ScalarDomain::GaussianRational,
        wi,
        wmi,
    );
    let r = validate_model(&m);
    assert_eq!(r.check(CHECK_ADAPTED), Some(false));
    assert!(m.eigen_adapted_matrix().det().is_zero());

    // Same statement symbolically: W_{-i} = conj(W_i) on the chart.
    let v = generic_variables();
    let t = |k: usize| RatFunc::var(k - 1);
    let wi = [
        vec![RatFunc::one(), RatFunc::zero(), t(1), t(3)],
        vec![RatFunc::zero(), RatFunc::one(), t(2), t(4)],
    ];
    let wmi = wi.clone();
    let m = WeilTorusModel::new(
        CmAction::standard(),
        ScalarDomain::FunctionField { variables: v },
        wi,
        wmi,
    );
    assert_eq!(validate_model(&m).check(CHECK_ADAPTED), Some(false));
}

fn sample_model() -> WeilTorusModel<GaussRational> {
    WeilTorusModel::new(
        CmAction::standard(),
        ScalarDomain::GaussianRational,
        [
            vec![g(1, 0), g(0, 0), g(2, 1), g(0, 3)],
            vec![g(0, 0), g(1, 0), g(-1, 1), g(5, -2)],
        ],
        [
            vec![g(1, 0), g(0, 0), g(1, -2), g(3, 1)],
            vec![g(0, 0), g(1, 0), g(0, 1), g(-2, 2)],
        ],
    )
}

#[test]
fn adapted_vectors_give_pure_components() {
    let m = generic_model();
    let sp = m.splitting().unwrap();
    let x = Multivector::wedge_all([&sp.vector(0), &sp.vector(1), &sp.vector(6), &sp.vector(7)])
        .unwrap();
    let parts = m.hodge_components(&x).unwrap();
    assert_eq!(parts.len(), 1);
    let (ty, part) = parts.iter().next().unwrap();
    assert_eq!(
        *ty,
        HodgeType {
            a1: 2,
            a2: 0,
            b1: 0,
            b2: 2
        }
    );
    assert_eq!(ty.coarse(), (2, 2));
    assert_eq!(part, &x);
}

#[test]
fn eigen_wedge_reconstructs() {
    let model = sample_model();
    let f = eigenbasis(model.action()).unwrap();
    let fs: Vec<Multivector<GaussRational>> = f.iter().map(|v| Multivector::vector(v)).collect();
    let x = Multivector::wedge_all(fs.iter()).unwrap();
    let parts = model.hodge_components(&x).unwrap();
    let sum = parts
        .values()
        .fold(Multivector::zero(4), |acc, p| acc.add(p));
    assert_eq!(sum, x);
    // f₁..f₄ span W_i ⊕ W̄_{-i}: only types with a₂ = b₁ = 0 occur.
    assert!(parts.keys().all(|t| t.a2 == 0 && t.b1 == 0));
}

#[test]
fn coarse_dimensions() {
    let dims: Vec<usize> = (0..=4u8)
        .map(|p| adapted_subsets(4, |c| c == (p, 4 - p)).len())
        .collect();
    assert_eq!(dims, vec![1, 16, 36, 16, 1]);
    let refined: std::collections::BTreeSet<HodgeType> =
        Subset::all(4).into_iter().map(HodgeType::of).collect();
    assert_eq!(refined.len(), 19);
}

#[test]
fn symbolic_components_reconstruct() {
    let m = generic_model();
    let x = Multivector::<RatFunc>::basis(Subset::from_indices(&[0, 1, 2, 3])).add(
        &Multivector::basis(Subset::from_indices(&[0, 2, 5, 7]))
            .scale(&RatFunc::from_rational(&rational(-3, 2))),
    );
    let parts = m.hodge_components(&x).unwrap();
    assert!(parts.len() <= 19);
    assert!(parts.keys().all(|t| t.a1 + t.a2 + t.b1 + t.b2 == 4));
    let sum = parts
        .values()
        .fold(Multivector::zero(4), |acc, p| acc.add(p));
    assert_eq!(sum, x);
}

#[test]
fn dense_components_at_a_chart_point() {
    let point = Assignment(vec![
        g(1, 1),
        g(0, -2),
        g(3, 0),
        g(-1, 1),
        g(2, -1),
        g(1, 3),
        g(-2, 0),
        g(0, 1),
    ]);
    assert!(!chart_discriminant(&point).is_zero());
    let sp = generic_model()
        .splitting()
        .unwrap()
        .specialize(&point)
        .unwrap();
    let coords: Vec<GaussRational> = (0..70)
        .map(|k| GaussRational::from_rational(&rational((k * 7 % 5) as i64 - 2, 1 + k as i64 % 3)))
        .collect();
    let x = Multivector::from_dense(4, &coords);
    let parts = sp.components(&x);
    assert!(parts.len() <= 19);
    let sum = parts
        .values()
        .fold(Multivector::zero(4), |acc, p| acc.add(p));
    assert_eq!(sum, x);
}

fn gauss_coord() -> impl Strategy<Value = GaussRational> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| g(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn components_sum_to_input(coords in proptest::collection::vec(gauss_coord(), 70)) {
        let model = sample_model();
        let x = Multivector::from_dense(4, &coords);
        let parts = model.hodge_components(&x).unwrap();
        let sum = parts.values().fold(Multivector::zero(4), |acc, p| acc.add(p));
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn conjugation_swaps_components(coords in proptest::collection::vec(gauss_coord(), 28)) {
        let model = sample_model();
        let x = Multivector::from_dense(2, &coords);
        let xc = x.map(|c| c.conj());
        let parts = model.hodge_components(&x).unwrap();
        let conj_parts = model.hodge_components(&xc).unwrap();
        for (t, p) in &parts {
            let expected = conj_parts.get(&t.conj()).cloned().unwrap_or_else(|| Multivector::zero(2));
            prop_assert_eq!(p.map(|c| c.conj()), expected);
        }
    }
}

#[test]
fn formal_specialization_matches_model_at_real_points() {
    let m = generic_model();
    let point = Assignment((1..=8).map(|k| g(k * k - 3 * k, 0)).collect());
    assert!(!chart_discriminant(&point).is_zero());
    let formal = m.splitting().unwrap().specialize(&point).unwrap();
    let honest = m.specialize(&point).unwrap();
    assert_eq!(formal.adapted(), honest.splitting().unwrap().adapted());
}
