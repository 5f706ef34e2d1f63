//! Weil-type complex tori of dimension 4.
//!
//! The lattice is `ℤ⁸` with a complex multiplication `J` (`J² = -1`). The
//! subspaces `W_i`, `W_{-i}` are given in coordinates of the eigenbasis
//! `f₁..f₄` of `ker(J - i)` and its conjugate `f̄₁..f̄₄`. The adapted basis of
//! `Γ ⊗ ℂ` is `(w₁, w₂, v₁, v₂, w̄₁, w̄₂, v̄₁, v̄₂)` where `w` spans `W_i` and
//! `v` spans `W_{-i}`; its indices 0..3 span `W`, indices 4..7 span `W̄`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::exterior::{Covector, Matrix, Multivector, Subset, RANK};
use crate::scalars::{Assignment, GaussRational, RatFunc, Ring, Scalar, ScalarDomain, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("J does not square to -1")]
    InvalidAction,
    #[error("the {0} domain has no square root of -1")]
    NoImaginaryUnit(&'static str),
    #[error("adapted basis is singular: W meets the real span")]
    SingularAdaptedBasis,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Integer matrix `J` with `J² = -1` acting on `ℤ⁸`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CmAction {
    j: [[i64; RANK]; RANK],
}

impl CmAction {
    pub fn new(j: [[i64; RANK]; RANK]) -> Result<Self, TorusError> {
        let a = CmAction { j };
        if a.squares_to_minus_one() {
            Ok(a)
        } else {
            Err(TorusError::InvalidAction)
        }
    }

    /// Accepts any matrix; [`CmAction::squares_to_minus_one`] reports validity.
    pub fn new_unchecked(j: [[i64; RANK]; RANK]) -> Self {
        CmAction { j }
    }

    /// Block diagonal with four blocks `[[0, -1], [1, 0]]`.
    pub fn standard() -> Self {
        let mut j = [[0i64; RANK]; RANK];
        for k in 0..RANK / 2 {
            j[2 * k][2 * k + 1] = -1;
            j[2 * k + 1][2 * k] = 1;
        }
        CmAction { j }
    }

    pub fn entries(&self) -> &[[i64; RANK]; RANK] {
        &self.j
    }

    pub fn squares_to_minus_one(&self) -> bool {
        (0..RANK).all(|r| {
            (0..RANK).all(|c| {
                let v: i64 = (0..RANK).map(|k| self.j[r][k] * self.j[k][c]).sum();
                v == if r == c { -1 } else { 0 }
            })
        })
    }

    pub fn matrix<R: Ring>(&self) -> Matrix<R> {
        Matrix::from_fn(RANK, RANK, |r, c| R::from_i64(self.j[r][c]))
    }
}

/// `ℚ(i)`-basis `f₁..f₄` of `ker(J - i)`: the kernel basis with unit entries
/// at the free columns of the row-reduced `J - i`. For the standard action
/// this is `f_k = i·e_{2k-1} + e_{2k}`.
pub fn eigenbasis(action: &CmAction) -> Result<Vec<Vec<GaussRational>>, TorusError> {
    if !action.squares_to_minus_one() {
        return Err(TorusError::InvalidAction);
    }
    let i = GaussRational::i();
    let mut m: Matrix<GaussRational> = action.matrix();
    for k in 0..RANK {
        let v = m.get(k, k).sub(&i);
        m.set(k, k, v);
    }
    let basis = m.kernel_free_basis();
    debug_assert_eq!(basis.len(), RANK / 2);
    Ok(basis)
}

/// Lattice coordinates of `(f₁..f₄, f̄₁..f̄₄)` as columns.
pub fn eigenframe(action: &CmAction) -> Result<Matrix<GaussRational>, TorusError> {
    let f = eigenbasis(action)?;
    let mut cols = f.clone();
    cols.extend(
        f.iter()
            .map(|v| v.iter().map(|x| x.conj()).collect::<Vec<_>>()),
    );
    Ok(Matrix::from_cols(&cols))
}

/// Refined Hodge type of an adapted subset: how many indices it takes from
/// `W_i`, `W_{-i}`, `W̄_i`, `W̄_{-i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HodgeType {
    pub a1: u8,
    pub a2: u8,
    pub b1: u8,
    pub b2: u8,
}

impl HodgeType {
    pub fn of(s: Subset) -> HodgeType {
        let count = |lo: usize| (s.contains(lo) as u8) + (s.contains(lo + 1) as u8);
        HodgeType {
            a1: count(0),
            a2: count(2),
            b1: count(4),
            b2: count(6),
        }
    }

    /// Coarse type `(p, q)`.
    pub fn coarse(self) -> (u8, u8) {
        (self.a1 + self.a2, self.b1 + self.b2)
    }

    /// Type of the conjugate component.
    pub fn conj(self) -> HodgeType {
        HodgeType {
            a1: self.b1,
            a2: self.b2,
            b1: self.a1,
            b2: self.a2,
        }
    }
}

impl fmt::Display for HodgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a1, self.a2, self.b1, self.b2)
    }
}

/// Adapted subsets of size `k` whose coarse type satisfies `keep`.
pub fn adapted_subsets(k: usize, keep: impl Fn((u8, u8)) -> bool) -> Vec<Subset> {
    Subset::all(k)
        .into_iter()
        .filter(|&s| keep(HodgeType::of(s).coarse()))
        .collect()
}

/// Change of basis between the lattice basis and the adapted basis.
///
/// `B` holds the adapted vectors in eigenbasis coordinates and `F` the
/// eigenbasis in lattice coordinates, so the adapted vectors in lattice
/// coordinates are the columns of `A = F·B`. Adapted coordinates of a
/// multivector are computed as `⋀B⁻¹ ∘ ⋀F⁻¹`; rows of `B⁻¹` are also kept
/// with denominators cleared, for polynomial-only arithmetic.
#[derive(Clone, Debug)]
pub struct HodgeSplitting<S: Scalar> {
    frame: Matrix<GaussRational>,
    frame_inv: Matrix<GaussRational>,
    eigen_adapted: Matrix<S>,
    eigen_adapted_inv: Matrix<S>,
    cleared_inv: Matrix<S>,
    row_factors: Vec<S>,
    adapted: Matrix<S>,
    inverse: Matrix<S>,
}

impl<S: Scalar> HodgeSplitting<S> {
    pub fn from_eigen(
        frame: &Matrix<GaussRational>,
        eigen_adapted: Matrix<S>,
    ) -> Result<Self, TorusError> {
        let frame_s: Matrix<S> =
            frame.try_map(|g| S::from_gauss(g).ok_or(TorusError::NoImaginaryUnit(S::DOMAIN)))?;
        let frame_inv = frame.inverse().ok_or(TorusError::InvalidAction)?;
        let frame_inv_s: Matrix<S> = frame_inv.map(|g| S::from_gauss(g).expect("domain has i"));
        let eigen_adapted_inv = eigen_adapted
            .inverse()
            .ok_or(TorusError::SingularAdaptedBasis)?;
        let mut rows = eigen_adapted_inv.to_rows();
        let row_factors: Vec<S> = rows
            .iter_mut()
            .map(|r| S::clear_row_denominators(r))
            .collect();
        row_factors.iter().for_each(S::register_factor);
        let cleared_inv = Matrix::from_rows(rows);
        let adapted = frame_s.mul(&eigen_adapted);
        let inverse = eigen_adapted_inv.mul(&frame_inv_s);
        Ok(HodgeSplitting {
            frame: frame.clone(),
            frame_inv,
            eigen_adapted,
            eigen_adapted_inv,
            cleared_inv,
            row_factors,
            adapted,
            inverse,
        })
    }

    /// Adapted vectors in lattice coordinates, as columns.
    pub fn adapted(&self) -> &Matrix<S> {
        &self.adapted
    }

    /// Inverse of [`HodgeSplitting::adapted`]; its rows are the dual
    /// adapted covectors in lattice coordinates.
    pub fn inverse(&self) -> &Matrix<S> {
        &self.inverse
    }

    pub fn eigen_adapted(&self) -> &Matrix<S> {
        &self.eigen_adapted
    }

    pub fn frame(&self) -> &Matrix<GaussRational> {
        &self.frame
    }

    /// Dual adapted covector `W*_s` in lattice coordinates.
    pub fn dual(&self, s: usize) -> Covector<S> {
        Covector::vector(self.inverse.row(s))
    }

    /// Adapted vector `s` in lattice coordinates.
    pub fn vector(&self, s: usize) -> Multivector<S> {
        Multivector::vector(&self.adapted.col(s))
    }

    /// Coordinates of `x` in the eigenbasis.
    pub fn to_eigen(&self, x: &Multivector<S>) -> Multivector<S> {
        self.frame_inv
            .map(|g| S::from_gauss(g).expect("domain has i"))
            .exterior_apply(x)
    }

    /// Adapted coordinates of `x`, each multiplied by the product of the
    /// row factors of its subset. Zero exactly where the true coordinate is.
    pub fn adapted_coordinates_scaled(&self, x: &Multivector<S>) -> Multivector<S> {
        self.cleared_inv.exterior_apply(&self.to_eigen(x))
    }

    /// Row factor product for an adapted subset.
    pub fn subset_factor(&self, s: Subset) -> S {
        s.indices()
            .fold(S::one(), |acc, i| acc.mul(&self.row_factors[i]))
    }

    /// Adapted coordinates of `x`.
    pub fn adapted_coordinates(&self, x: &Multivector<S>) -> Multivector<S> {
        self.eigen_adapted_inv.exterior_apply(&self.to_eigen(x))
    }

    /// Rows, in lattice coordinates, of the functionals `x ↦ (adapted
    /// coordinate S of x)` for the given subsets, each scaled by its
    /// subset factor.
    pub fn coordinate_rows(&self, subsets: &[Subset]) -> Matrix<S> {
        let k = subsets.first().map_or(0, |s| s.len());
        let lattice = Subset::all(k);
        let frame_inv: Matrix<S> = self
            .frame_inv
            .map(|g| S::from_gauss(g).expect("domain has i"));
        // Eigen-dual covectors f*_T expressed in lattice coordinates.
        let duals: Vec<Covector<S>> = (0..RANK)
            .map(|j| Covector::vector(frame_inv.row(j)))
            .collect();
        let eigen_rows: Vec<Covector<S>> = (0..RANK)
            .map(|s| Covector::vector(self.cleared_inv.row(s)))
            .collect();
        let mut cache: BTreeMap<Subset, Covector<S>> = BTreeMap::new();
        let mut rows = Vec::with_capacity(subsets.len());
        for &s in subsets {
            assert_eq!(s.len(), k, "subsets of mixed size");
            let phi =
                Covector::wedge_all(s.indices().map(|i| &eigen_rows[i])).expect("degree in range");
            let mut row = Covector::zero(k);
            for (t, c) in phi.terms() {
                let ft = cache.entry(t).or_insert_with(|| {
                    Covector::wedge_all(t.indices().map(|j| &duals[j])).expect("degree in range")
                });
                row = row.add(&ft.scale(c));
            }
            rows.push(lattice.iter().map(|&u| row.coeff(u)).collect());
        }
        if rows.is_empty() {
            return Matrix::zero(0, lattice.len());
        }
        Matrix::from_rows(rows)
    }

    /// Splitting at a point, obtained by substituting into the adapted
    /// matrix `B` and inverting there.
    pub fn specialize(
        &self,
        point: &Assignment,
    ) -> Result<HodgeSplitting<GaussRational>, TorusError> {
        let b = self.eigen_adapted.try_map(|x| x.specialize(point))?;
        match HodgeSplitting::from_eigen(&self.frame, b) {
            Err(TorusError::SingularAdaptedBasis) => {
                Err(TorusError::Scalar(ScalarError::DenominatorVanishes))
            }
            other => other,
        }
    }

    /// A lattice covector in the dual adapted basis: `W*_S` coefficients.
    pub fn covector_in_adapted(&self, c: &Covector<S>) -> Covector<S> {
        Covector(self.adapted.transpose().exterior_apply(&c.0))
    }

    /// `⟨c, x⟩` for a covector `c` given in the dual adapted basis.
    pub fn pair_adapted(&self, c: &Covector<S>, x: &Multivector<S>) -> S {
        let y = self.adapted_coordinates_scaled(x);
        let mut groups: Vec<(Vec<S>, S)> = Vec::new();
        for (s, a) in c.terms() {
            let b = y.coeff(s);
            if b.is_zero() {
                continue;
            }
            let factors: Vec<S> = s.indices().map(|i| self.row_factors[i].clone()).collect();
            let term = a.mul(&b);
            match groups.iter_mut().find(|(f, _)| same_multiset(f, &factors)) {
                Some((_, sum)) => *sum = sum.add(&term),
                None => groups.push((factors, term)),
            }
        }
        groups.iter().fold(S::zero(), |acc, (factors, sum)| {
            acc.add(&divide_by_factors(sum, factors))
        })
    }

    /// Decomposition of `x` by refined Hodge type, in lattice coordinates.
    pub fn components(&self, x: &Multivector<S>) -> BTreeMap<HodgeType, Multivector<S>> {
        // Work with scaled coordinates and divide once per group of equal
        // factors, so that function-field arithmetic stays polynomial.
        let y = self.adapted_coordinates_scaled(x);
        let mut grouped: BTreeMap<HodgeType, Vec<(Vec<S>, Multivector<S>)>> = BTreeMap::new();
        for (s, c) in y.terms() {
            let factors: Vec<S> = s.indices().map(|i| self.row_factors[i].clone()).collect();
            let groups = grouped.entry(HodgeType::of(s)).or_default();
            match groups.iter_mut().find(|(f, _)| same_multiset(f, &factors)) {
                Some((_, part)) => part.add_term(s, c),
                None => groups.push((
                    factors,
                    Multivector::from_terms(x.degree(), [(s, c.clone())]),
                )),
            }
        }
        grouped
            .into_iter()
            .map(|(t, groups)| {
                let mut total = Multivector::zero(x.degree());
                for (factors, part) in groups {
                    let image = self.adapted.exterior_apply(&part);
                    total = total.add(&image.map(|c| divide_by_factors(c, &factors)));
                }
                (t, total)
            })
            .filter(|(_, part)| !part.is_zero())
            .collect()
    }
}

fn same_multiset<S: Scalar>(a: &[S], b: &[S]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter()
        .all(|x| match (0..b.len()).find(|&j| !used[j] && b[j] == *x) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        })
}

/// `c / Π factors`, dividing out each factor exactly where possible before
/// falling back to field division.
fn divide_by_factors<S: Scalar>(c: &S, factors: &[S]) -> S {
    let mut q = c.clone();
    let mut rest = S::one();
    for f in factors {
        match q.exact_quotient(f) {
            Some(x) => q = x,
            None => rest = rest.mul(f),
        }
    }
    q.div(&rest).expect("row factors are nonzero")
}

/// One named entry of a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Determinant of the adapted matrix in eigen coordinates, as text.
    pub determinant: Option<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.passed)
    }
}

pub const CHECK_ACTION: &str = "J^2 = -1";
pub const CHECK_WI: &str = "W_i basis independent";
pub const CHECK_WMI: &str = "W_-i basis independent";
pub const CHECK_ADAPTED: &str = "adapted basis invertible";

/// A Weil-type torus: CM action plus bases of `W_i` and `W_{-i}` in
/// eigenbasis coordinates.
#[derive(Debug)]
pub struct WeilTorusModel<S: Scalar> {
    action: CmAction,
    domain: ScalarDomain,
    wi: [Vec<S>; 2],
    wmi: [Vec<S>; 2],
    splitting: OnceLock<Result<HodgeSplitting<S>, TorusError>>,
}

impl<S: Scalar> Clone for WeilTorusModel<S> {
    fn clone(&self) -> Self {
        WeilTorusModel::new(
            self.action.clone(),
            self.domain.clone(),
            self.wi.clone(),
            self.wmi.clone(),
        )
    }
}

impl<S: Scalar> WeilTorusModel<S> {
    pub fn new(action: CmAction, domain: ScalarDomain, wi: [Vec<S>; 2], wmi: [Vec<S>; 2]) -> Self {
        for v in wi.iter().chain(wmi.iter()) {
            assert_eq!(v.len(), RANK / 2, "basis vectors have 4 eigen coordinates");
        }
        WeilTorusModel {
            action,
            domain,
            wi,
            wmi,
            splitting: OnceLock::new(),
        }
    }

    pub fn action(&self) -> &CmAction {
        &self.action
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }

    pub fn wi(&self) -> &[Vec<S>; 2] {
        &self.wi
    }

    pub fn wmi(&self) -> &[Vec<S>; 2] {
        &self.wmi
    }

    /// Adapted basis in eigen coordinates: columns `w₁, w₂, v₁, v₂, w̄₁,
    /// w̄₂, v̄₁, v̄₂`, rows `f₁..f₄, f̄₁..f̄₄`.
    pub fn eigen_adapted_matrix(&self) -> Matrix<S> {
        let mut cols: Vec<Vec<S>> = Vec::with_capacity(RANK);
        let zeros = vec![S::zero(); RANK / 2];
        let join =
            |top: &[S], bottom: &[S]| -> Vec<S> { top.iter().chain(bottom).cloned().collect() };
        let conj = |v: &[S]| -> Vec<S> { v.iter().map(|x| x.conj()).collect() };
        for w in &self.wi {
            cols.push(join(w, &zeros));
        }
        for v in &self.wmi {
            cols.push(join(&zeros, v));
        }
        for w in &self.wi {
            cols.push(join(&zeros, &conj(w)));
        }
        for v in &self.wmi {
            cols.push(join(&conj(v), &zeros));
        }
        Matrix::from_cols(&cols)
    }

    /// The cached adapted splitting.
    pub fn splitting(&self) -> Result<&HodgeSplitting<S>, TorusError> {
        self.splitting
            .get_or_init(|| {
                let frame = eigenframe(&self.action)?;
                HodgeSplitting::from_eigen(&frame, self.eigen_adapted_matrix())
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn validate(&self) -> ValidationReport {
        let action_ok = self.action.squares_to_minus_one();
        let rank2 = |b: &[Vec<S>; 2]| Matrix::from_rows(b.to_vec()).rank() == 2;
        let det = self.eigen_adapted_matrix().det();
        let adapted_ok = !det.is_zero() && S::imag_unit().is_some();
        ValidationReport {
            checks: vec![
                Check {
                    name: CHECK_ACTION,
                    passed: action_ok,
                },
                Check {
                    name: CHECK_WI,
                    passed: rank2(&self.wi),
                },
                Check {
                    name: CHECK_WMI,
                    passed: rank2(&self.wmi),
                },
                Check {
                    name: CHECK_ADAPTED,
                    passed: adapted_ok,
                },
            ],
            determinant: Some(self.format_scalar(&det)),
        }
    }

    /// Text form of a scalar using the domain's variable names.
    pub fn format_scalar(&self, x: &S) -> String {
        let names = self.domain.variables().to_vec();
        let f = x.to_func();
        f.fmt_with(&|v| {
            names
                .get(v)
                .cloned()
                .unwrap_or_else(|| format!("t{}", v + 1))
        })
    }

    /// Refined Hodge components of `x`; they sum to `x`.
    pub fn hodge_components(
        &self,
        x: &Multivector<S>,
    ) -> Result<BTreeMap<HodgeType, Multivector<S>>, TorusError> {
        Ok(self.splitting()?.components(x))
    }

    /// Substitutes a point into the bases, keeping the honest conjugation of
    /// the resulting `ℚ(i)` values.
    pub fn specialize(
        &self,
        point: &Assignment,
    ) -> Result<WeilTorusModel<GaussRational>, TorusError> {
        let sp = |b: &[Vec<S>; 2]| -> Result<[Vec<GaussRational>; 2], ScalarError> {
            Ok([
                b[0].iter()
                    .map(|x| x.specialize(point))
                    .collect::<Result<_, _>>()?,
                b[1].iter()
                    .map(|x| x.specialize(point))
                    .collect::<Result<_, _>>()?,
            ])
        };
        Ok(WeilTorusModel::new(
            self.action.clone(),
            ScalarDomain::GaussianRational,
            sp(&self.wi)?,
            sp(&self.wmi)?,
        ))
    }
}

/// Validation entry point.
pub fn validate_model<S: Scalar>(model: &WeilTorusModel<S>) -> ValidationReport {
    model.validate()
}

/// Names `t1..t8` of the generic chart.
pub fn generic_variables() -> Vec<String> {
    (1..=8).map(|k| format!("t{k}")).collect()
}

/// The 8-parameter chart: `W_i` spanned by the rows `(1, 0, t₁, t₃)` and
/// `(0, 1, t₂, t₄)` in the `f` basis, `W_{-i}` by `(1, 0, t₅, t₇)` and
/// `(0, 1, t₆, t₈)` in the `f̄` basis.
pub fn generic_model() -> WeilTorusModel<RatFunc> {
    let t = |k: usize| RatFunc::var(k - 1);
    let (one, zero) = (RatFunc::one(), RatFunc::zero());
    WeilTorusModel::new(
        CmAction::standard(),
        ScalarDomain::FunctionField {
            variables: generic_variables(),
        },
        [
            vec![one.clone(), zero.clone(), t(1), t(3)],
            vec![zero.clone(), one.clone(), t(2), t(4)],
        ],
        [
            vec![one.clone(), zero.clone(), t(5), t(7)],
            vec![zero, one, t(6), t(8)],
        ],
    )
}

/// Chart determinant `(t₅-t₁)(t₈-t₄) - (t₇-t₃)(t₆-t₂)` at a point.
pub fn chart_discriminant(point: &Assignment) -> GaussRational {
    let t = |k: usize| {
        point
            .get(k - 1)
            .cloned()
            .unwrap_or_else(GaussRational::zero)
    };
    t(5).sub(&t(1))
        .mul(&t(8).sub(&t(4)))
        .sub(&t(7).sub(&t(3)).mul(&t(6).sub(&t(2))))
}
