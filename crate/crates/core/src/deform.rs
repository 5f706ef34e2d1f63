//! First-order deformations of the complex structure.
//!
//! A tangent vector is `u ∈ W*⊗W̄`, stored as a `4×4` matrix `U` with
//! `u = Σ U_ab W*_a ⊗ w̄_b`, rows and columns ordered `(w₁, w₂, v₁, v₂)`.
//! Covectors are taken in the dual adapted basis, where all maps below have
//! constant coefficients. A coarse-(1,1) covector is written
//! `ω = Σ Ω_cd W̄*_c ∧ W*_d`; then `int(u)(ω) = Σ U_ab Ω_bd W*_a ∧ W*_d`.

use thiserror::Error;

use crate::exterior::{Covector, Matrix, Multivector, Subset};
use crate::hodge::{form_covector, is_positive, HodgeError, KahlerCandidate};
use crate::scalars::{Assignment, GaussRational, Scalar};
use crate::torus::{TorusError, WeilTorusModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error("the covector has components outside coarse type (1,1)")]
    TypeError,
    #[error("the candidate is not positive at the point")]
    NotPositive,
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
}

/// Adapted index ranges of `W_i` and `W_{-i}` inside `(w₁, w₂, v₁, v₂)`.
const PLUS: [usize; 2] = [0, 1];
const MINUS: [usize; 2] = [2, 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentVector<S: Scalar> {
    pub coeffs: Matrix<S>,
}

impl<S: Scalar> TangentVector<S> {
    pub fn new(coeffs: Matrix<S>) -> Self {
        assert_eq!(
            (coeffs.rows(), coeffs.cols()),
            (4, 4),
            "tangent vectors are 4x4"
        );
        TangentVector { coeffs }
    }

    /// `W*_a ⊗ w̄_b`.
    pub fn elementary(a: usize, b: usize) -> Self {
        TangentVector::new(Matrix::from_fn(4, 4, |r, c| {
            if (r, c) == (a, b) {
                S::one()
            } else {
                S::zero()
            }
        }))
    }

    /// Supported on `W_i*⊗W̄_{-i} ⊕ W_{-i}*⊗W̄_i`.
    pub fn weil_flag(&self) -> bool {
        (0..4).all(|a| (0..4).all(|b| (a / 2 != b / 2) || self.coeffs.get(a, b).is_zero()))
    }
}

/// All 16 elementary tangents.
pub fn full_tangent_basis<S: Scalar>() -> Vec<TangentVector<S>> {
    (0..4)
        .flat_map(|a| (0..4).map(move |b| TangentVector::elementary(a, b)))
        .collect()
}

/// Elementary tangents of `W_i*⊗W̄_{-i}`.
pub fn plus_tangents<S: Scalar>() -> Vec<TangentVector<S>> {
    PLUS.iter()
        .flat_map(|&a| MINUS.iter().map(move |&b| TangentVector::elementary(a, b)))
        .collect()
}

/// Elementary tangents of `W_{-i}*⊗W̄_i`.
pub fn minus_tangents<S: Scalar>() -> Vec<TangentVector<S>> {
    MINUS
        .iter()
        .flat_map(|&a| PLUS.iter().map(move |&b| TangentVector::elementary(a, b)))
        .collect()
}

/// The 8 elementary tangents of the Weil-type deformations.
pub fn weil_tangent_basis<S: Scalar>(
    model: &WeilTorusModel<S>,
) -> Result<Vec<TangentVector<S>>, DeformError> {
    model.splitting()?;
    let mut out = plus_tangents();
    out.extend(minus_tangents());
    Ok(out)
}

/// The subset `{d, 4 + c}` carrying `W̄*_c ∧ W*_d`.
fn mixed(c: usize, d: usize) -> Subset {
    Subset::from_indices(&[d, 4 + c])
}

fn is_one_one(s: Subset) -> bool {
    s.len() == 2 && s.indices().filter(|&i| i < 4).count() == 1
}

/// `Ω` with `ω = Σ Ω_cd W̄*_c ∧ W*_d`.
pub fn mixed_matrix<S: Scalar>(omega: &Covector<S>) -> Result<Matrix<S>, DeformError> {
    if omega.degree() != 2 || omega.terms().any(|(s, _)| !is_one_one(s)) {
        return Err(DeformError::TypeError);
    }
    // W̄*_c ∧ W*_d = -(W*_d ∧ W̄*_c).
    Ok(Matrix::from_fn(4, 4, |c, d| omega.coeff(mixed(c, d)).neg()))
}

/// Inverse of [`mixed_matrix`].
pub fn from_mixed_matrix<S: Scalar>(m: &Matrix<S>) -> Covector<S> {
    Covector::from_terms(
        2,
        (0..4).flat_map(|c| (0..4).map(move |d| (mixed(c, d), m.get(c, d).neg()))),
    )
}

/// `D_u = Σ U_ab ε(W*_a) ι(w̄_b)`, a derivation of the exterior algebra of
/// adapted covectors.
pub fn derivation<S: Scalar>(u: &TangentVector<S>, c: &Covector<S>) -> Covector<S> {
    if c.degree() == 0 {
        return Covector::zero(0);
    }
    let mut out = Covector::zero(c.degree());
    for a in 0..4 {
        for b in 0..4 {
            let k = u.coeffs.get(a, b);
            if k.is_zero() {
                continue;
            }
            let inner = c.contract_by(&Multivector::unit(4 + b));
            let term = Covector::unit(a).wedge(&inner).expect("degree in range");
            out = out.add(&term.scale(k));
        }
    }
    out
}

/// `int(u)(ω) ∈ ⋀²W*`.
pub fn interior_action<S: Scalar>(
    u: &TangentVector<S>,
    omega: &Covector<S>,
) -> Result<Covector<S>, DeformError> {
    mixed_matrix(omega)?;
    Ok(derivation(u, omega))
}

/// The four blocks of a coarse-(1,1) covector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition<S: Scalar> {
    /// `ω₁ ∈ W̄_i*⊗W_i*`, `ω₂ ∈ W̄_i*⊗W_{-i}*`, `ω₃ ∈ W̄_{-i}*⊗W_i*`,
    /// `ω₄ ∈ W̄_{-i}*⊗W_{-i}*`.
    pub blocks: [Covector<S>; 4],
}

impl<S: Scalar> BlockDecomposition<S> {
    pub fn of(omega: &Covector<S>) -> Result<Self, DeformError> {
        let m = mixed_matrix(omega)?;
        let block = |rows: [usize; 2], cols: [usize; 2]| {
            from_mixed_matrix(&Matrix::from_fn(4, 4, |c, d| {
                if rows.contains(&c) && cols.contains(&d) {
                    m.get(c, d).clone()
                } else {
                    S::zero()
                }
            }))
        };
        Ok(BlockDecomposition {
            blocks: [
                block(PLUS, PLUS),
                block(PLUS, MINUS),
                block(MINUS, PLUS),
                block(MINUS, MINUS),
            ],
        })
    }

    pub fn sum(&self) -> Covector<S> {
        self.blocks
            .iter()
            .fold(Covector::zero(2), |acc, b| acc.add(b))
    }
}

/// Kernel of `ω ↦ (int(u)(ω))_u` on the 16-dimensional space of coarse-(1,1)
/// covectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointKernel<S: Scalar> {
    pub basis: Vec<Covector<S>>,
    /// Rank of the stacked matrix.
    pub rank: usize,
    /// Rows of the stacked matrix: 6 per tangent.
    pub rows: usize,
}

impl<S: Scalar> JointKernel<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn source_basis() -> Vec<(usize, usize)> {
    (0..4).flat_map(|c| (0..4).map(move |d| (c, d))).collect()
}

pub fn joint_kernel_for<S: Scalar>(tangents: &[TangentVector<S>]) -> JointKernel<S> {
    let sources = source_basis();
    let targets = Subset::all(2)
        .into_iter()
        .filter(|s| s.indices().all(|i| i < 4))
        .collect::<Vec<_>>();
    let mut rows = Vec::with_capacity(tangents.len() * targets.len());
    for u in tangents {
        let images: Vec<Covector<S>> = sources
            .iter()
            .map(|&(c, d)| derivation(u, &Covector::basis(mixed(c, d))))
            .collect();
        for &t in &targets {
            rows.push(images.iter().map(|img| img.coeff(t)).collect());
        }
    }
    let m = Matrix::from_rows(rows);
    let basis = m
        .kernel()
        .into_iter()
        .map(|v| {
            Covector::from_terms(
                2,
                sources.iter().zip(v).map(|(&(c, d), x)| (mixed(c, d), x)),
            )
        })
        .collect();
    JointKernel {
        basis,
        rank: m.rank(),
        rows: m.rows(),
    }
}

/// Joint kernel over the Weil-type tangents.
pub fn joint_kernel<S: Scalar>(model: &WeilTorusModel<S>) -> Result<JointKernel<S>, DeformError> {
    Ok(joint_kernel_for(&weil_tangent_basis(model)?))
}

/// One block-support statement, checked on all basis tangents of its
/// tangent block and all basis covectors of its `ω` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportCheck {
    pub statement: &'static str,
    pub holds: bool,
    /// Whether some image is nonzero, for the inclusion statements.
    pub nonzero: bool,
}

/// Target supports in `⋀²W*`.
#[derive(Clone, Copy)]
enum Target {
    Zero,
    PlusPlus,
    Mixed,
    MinusMinus,
}

fn in_target(s: Subset, t: Target) -> bool {
    let plus = s.indices().filter(|i| PLUS.contains(i)).count();
    match t {
        Target::Zero => false,
        Target::PlusPlus => plus == 2,
        Target::Mixed => plus == 1,
        Target::MinusMinus => plus == 0,
    }
}

/// The eight vanishing and support statements for `u₁ ∈ W_i*⊗W̄_{-i}` and
/// `u₂ ∈ W_{-i}*⊗W̄_i`.
pub fn support_checks() -> Vec<SupportCheck> {
    let blocks: [([usize; 2], [usize; 2]); 4] =
        [(PLUS, PLUS), (PLUS, MINUS), (MINUS, PLUS), (MINUS, MINUS)];
    let table: [(&'static str, bool, usize, Target); 8] = [
        ("int(u1)(w1) = 0", true, 0, Target::Zero),
        ("int(u1)(w2) = 0", true, 1, Target::Zero),
        ("int(u1)(w3) in L2 W_i*", true, 2, Target::PlusPlus),
        ("int(u1)(w4) in W_i* ^ W_-i*", true, 3, Target::Mixed),
        ("int(u2)(w3) = 0", false, 2, Target::Zero),
        ("int(u2)(w4) = 0", false, 3, Target::Zero),
        ("int(u2)(w1) in W_-i* ^ W_i*", false, 0, Target::Mixed),
        ("int(u2)(w2) in L2 W_-i*", false, 1, Target::MinusMinus),
    ];
    table
        .into_iter()
        .map(|(statement, first, block, target)| {
            let tangents: Vec<TangentVector<GaussRational>> = if first {
                plus_tangents()
            } else {
                minus_tangents()
            };
            let (rows, cols) = blocks[block];
            let mut holds = true;
            let mut nonzero = false;
            for u in &tangents {
                for &c in &rows {
                    for &d in &cols {
                        let img = derivation(u, &Covector::basis(mixed(c, d)));
                        nonzero |= !img.is_zero();
                        holds &= img.terms().all(|(s, _)| in_target(s, target));
                    }
                }
            }
            SupportCheck {
                statement,
                holds,
                nonzero,
            }
        })
        .collect()
}

/// Rank of `x ↦ ω∧x` from `⋀²W*` to `W̄*∧⋀³W*`, at a point where `ω` is
/// positive.
pub fn cup_omega_rank<S: Scalar>(
    model: &WeilTorusModel<S>,
    omega: &KahlerCandidate<S>,
    point: &Assignment,
) -> Result<usize, DeformError> {
    if !is_positive(model, omega, point)? {
        return Err(DeformError::NotPositive);
    }
    Ok(cup_rank_at(omega, point)?)
}

/// The rank of the same map without the positivity precondition.
pub fn cup_rank_at<S: Scalar>(
    omega: &KahlerCandidate<S>,
    point: &Assignment,
) -> Result<usize, HodgeError> {
    let w = form_covector(&omega.form().try_map(|x| x.specialize(point))?);
    let sources: Vec<Subset> = Subset::all(2)
        .into_iter()
        .filter(|s| s.indices().all(|i| i < 4))
        .collect();
    let targets: Vec<Subset> = Subset::all(4)
        .into_iter()
        .filter(|s| s.indices().filter(|&i| i >= 4).count() == 1)
        .collect();
    let images: Vec<Covector<GaussRational>> = sources
        .iter()
        .map(|&s| w.wedge(&Covector::basis(s)).expect("degree 4"))
        .collect();
    let m = Matrix::from_fn(targets.len(), sources.len(), |r, c| {
        images[c].coeff(targets[r])
    });
    Ok(m.rank())
}

/// Both sides of `int(u)(ω∧ω) = 2 ω∧int(u)(ω)` and their difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCheck<S: Scalar> {
    pub lhs: Covector<S>,
    pub rhs: Covector<S>,
    pub difference: Covector<S>,
}

pub fn int_on_square<S: Scalar>(
    u: &TangentVector<S>,
    omega: &Covector<S>,
) -> Result<SquareCheck<S>, DeformError> {
    let inner = interior_action(u, omega)?;
    let square = omega.wedge(omega).expect("degree 4");
    let lhs = derivation(u, &square);
    let rhs = omega
        .wedge(&inner)
        .expect("degree 4")
        .scale(&S::from_i64(2));
    let difference = lhs.sub(&rhs);
    Ok(SquareCheck {
        lhs,
        rhs,
        difference,
    })
}
