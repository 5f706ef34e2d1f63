//! Weil classes: the trace image of `⋀⁴_K Γ_{K,i}` in `⋀⁴Γ_ℚ`.
//!
//! With `f₁..f₄` a `ℚ(i)`-basis of `ker(J - i)` and `ζ = f₁∧f₂∧f₃∧f₄`, the
//! classes are `Tr ζ = ζ + ζ̄` and `Tr iζ = iζ + conj(iζ)`. They depend on
//! `(Γ, J)` only; the checks below test them against a chosen `W`.

use thiserror::Error;

use crate::exterior::{echelon_basis, Matrix, Multivector, RANK};
use crate::hodge::{is_hodge_class, HodgeError, KahlerCandidate};
use crate::scalars::{primitive_integer_vector, BigRational, GaussRational, RatFunc, Ring, Scalar};
use crate::torus::{eigenbasis, CmAction, TorusError, WeilTorusModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("J does not square to -1")]
    InvalidAction,
    #[error("the vectors are not a basis of ker(J - i)")]
    NotAnEigenbasis,
    #[error("the model's action differs from the action of the Weil classes")]
    ActionMismatch,
    #[error("the class has components in the mixed blocks")]
    BlockConstraintViolated,
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilClassSpace {
    pub action: CmAction,
    /// Primitive integer vectors, from the reduced echelon basis of the span.
    pub generators: [Multivector<BigRational>; 2],
    /// The basis `f₁..f₄` of `Γ_{K,i}` used.
    pub eigenbasis: Vec<Vec<GaussRational>>,
    /// `ζ = f₁∧f₂∧f₃∧f₄`.
    pub zeta: Multivector<GaussRational>,
}

/// `z + z̄`, a rational multivector.
pub fn trace(z: &Multivector<GaussRational>) -> Multivector<BigRational> {
    z.map(|c| c.add(&c.conj()).re)
}

pub fn weil_classes(action: &CmAction) -> Result<WeilClassSpace, WeilError> {
    let f = eigenbasis(action).map_err(|_| WeilError::InvalidAction)?;
    weil_classes_from_basis(action, &f)
}

/// Same construction from any `ℚ(i)`-basis of `ker(J - i)`.
pub fn weil_classes_from_basis(
    action: &CmAction,
    basis: &[Vec<GaussRational>],
) -> Result<WeilClassSpace, WeilError> {
    if !action.squares_to_minus_one() {
        return Err(WeilError::InvalidAction);
    }
    let j: Matrix<GaussRational> = action.matrix();
    let i = GaussRational::i();
    let eigen = basis.len() == RANK / 2
        && basis
            .iter()
            .all(|v| j.apply(v) == v.iter().map(|x| x.mul(&i)).collect::<Vec<_>>())
        && Matrix::from_rows(basis.to_vec()).rank() == RANK / 2;
    if !eigen {
        return Err(WeilError::NotAnEigenbasis);
    }
    let fs: Vec<Multivector<GaussRational>> =
        basis.iter().map(|v| Multivector::vector(v)).collect();
    let zeta = Multivector::wedge_all(fs.iter()).expect("degree 4");
    let rows = vec![trace(&zeta).to_dense(), trace(&zeta.scale(&i)).to_dense()];
    let rows = echelon_basis(rows);
    assert_eq!(rows.len(), 2, "trace images are independent");
    let generators =
        [0, 1].map(|k| Multivector::from_dense(4, &primitive_integer_vector(&rows[k])));
    Ok(WeilClassSpace {
        action: action.clone(),
        generators,
        eigenbasis: basis.to_vec(),
        zeta,
    })
}

impl WeilClassSpace {
    pub fn dim(&self) -> usize {
        let rows: Vec<Vec<BigRational>> = self.generators.iter().map(|g| g.to_dense()).collect();
        Matrix::from_rows(rows).rank()
    }
}

fn check_action<S: Scalar>(
    model: &WeilTorusModel<S>,
    weil: &WeilClassSpace,
) -> Result<(), WeilError> {
    if model.action() != &weil.action {
        return Err(WeilError::ActionMismatch);
    }
    Ok(())
}

/// Whether both generators are of type `(2,2)` identically over the
/// model's domain.
pub fn verify_weil_hodge<S: Scalar>(
    model: &WeilTorusModel<S>,
    weil: &WeilClassSpace,
) -> Result<bool, WeilError> {
    check_action(model, weil)?;
    let split = model.splitting()?;
    Ok(weil.generators.iter().all(|g| is_hodge_class(split, 2, g)))
}

/// Whether `⟨ω∧ω, g⟩ = 0` for both generators, for `ω` supported on the
/// diagonal blocks.
pub fn verify_perpendicular<S: Scalar>(
    model: &WeilTorusModel<S>,
    weil: &WeilClassSpace,
    omega: &KahlerCandidate<S>,
) -> Result<bool, WeilError> {
    check_action(model, weil)?;
    if !omega.is_block_diagonal() {
        return Err(WeilError::BlockConstraintViolated);
    }
    let split = model.splitting()?;
    let w = omega.adapted_covector();
    let square = w.wedge(&w).expect("degree 4");
    Ok(weil.generators.iter().all(|g| {
        split
            .pair_adapted(&square, &g.map(S::from_rational))
            .is_zero()
    }))
}

/// [`verify_perpendicular`] for the candidate with fully symbolic Hermitian
/// diagonal blocks, in variables after the model's own.
pub fn verify_perpendicular_symbolic(
    model: &WeilTorusModel<RatFunc>,
    weil: &WeilClassSpace,
) -> Result<bool, WeilError> {
    let omega = crate::hodge::symbolic_candidate(model.domain().variable_count());
    verify_perpendicular(model, weil, &omega)
}
