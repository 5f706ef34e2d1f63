//! Rational Hodge classes and Kähler candidates.
//!
//! A class in `⋀^{2p}Γ_ℚ` is Hodge when all of its adapted coordinates
//! outside coarse type `(p, p)` vanish. Over `ℚ(i)` this is a rational
//! kernel. Over the function field the kernel is computed at specialization
//! points and the surviving candidates are then checked symbolically: the
//! kernel at a point contains the generic kernel, so certified candidates
//! spanning the kernel at the points pin the generic space exactly.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exterior::{echelon_basis, Covector, Matrix, Multivector, Subset};
use crate::scalars::{Assignment, BigRational, GaussRational, RatFunc, Ring, Scalar, ScalarError};
use crate::torus::{adapted_subsets, HodgeSplitting, TorusError, WeilTorusModel};

pub use crate::exterior::evaluation_pairing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("Hodge classes are computed in degrees 2 and 4 only, not 2p with p = {0}")]
    UnsupportedDegree(usize),
    #[error("coefficient blocks are not Hermitian")]
    NonHermitianInput,
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// How a [`HodgeClassSpace`] was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Direct rational kernel over a constant domain.
    Exact,
    /// Full rational kernel of the symbolic constraint matrix.
    Symbolic,
    /// Kernel at the listed points, every basis vector certified
    /// symbolically.
    Certified { points: Vec<Assignment> },
    /// Kernel at the listed points; certification did not succeed within the
    /// point budget, so the basis spans an upper bound only.
    Specialized { points: Vec<Assignment> },
}

impl Provenance {
    pub fn points(&self) -> &[Assignment] {
        match self {
            Provenance::Certified { points } | Provenance::Specialized { points } => points,
            _ => &[],
        }
    }

    /// Whether the space is known to be the generic one.
    pub fn is_certified(&self) -> bool {
        !matches!(self, Provenance::Specialized { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeClassSpace {
    pub p: usize,
    /// Reduced echelon basis over `ℚ`.
    pub basis: Vec<Multivector<BigRational>>,
    pub provenance: Provenance,
    pub rank: usize,
}

impl HodgeClassSpace {
    /// Whether `x` lies in the span of the basis.
    pub fn contains(&self, x: &Multivector<BigRational>) -> bool {
        let mut rows: Vec<Vec<BigRational>> = self.basis.iter().map(|b| b.to_dense()).collect();
        rows.push(x.to_dense());
        Matrix::from_rows(rows).rank() == self.rank
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// Evaluate at points, then certify the candidates.
    Certify,
    /// Rational kernel of the full symbolic constraint matrix.
    Symbolic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOptions {
    pub seed: u64,
    pub max_points: usize,
    pub mode: SolveMode,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            seed: 1,
            max_points: 8,
            mode: SolveMode::Certify,
        }
    }
}

/// Draws a point with Gaussian-integer coordinates, each with nonzero
/// imaginary part.
pub fn sample_point(rng: &mut impl Rng, variables: usize) -> Assignment {
    Assignment(
        (0..variables)
            .map(|_| {
                let re = rng.gen_range(-9i64..=9);
                let im = rng.gen_range(1i64..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
                GaussRational::from_ints(re, im)
            })
            .collect(),
    )
}

/// Splitting at the next usable sampled point.
pub(crate) fn next_specialization<S: Scalar>(
    split: &HodgeSplitting<S>,
    rng: &mut ChaCha8Rng,
    variables: usize,
) -> Option<(Assignment, HodgeSplitting<GaussRational>)> {
    for _ in 0..64 {
        let point = sample_point(rng, variables);
        if let Ok(sp) = split.specialize(&point) {
            return Some((point, sp));
        }
    }
    None
}

/// Adapted subsets of degree `2p` outside coarse type `(p, p)`.
pub fn off_type_subsets(p: usize) -> Vec<Subset> {
    let p8 = p as u8;
    adapted_subsets(2 * p, |c| c != (p8, p8))
}

/// Whether every adapted coordinate of `x` outside type `(p, p)` vanishes
/// identically over the model's domain.
pub fn is_hodge_class<S: Scalar>(
    split: &HodgeSplitting<S>,
    p: usize,
    x: &Multivector<BigRational>,
) -> bool {
    let xs = x.map(S::from_rational);
    let y = split.adapted_coordinates_scaled(&xs);
    off_type_subsets(p)
        .into_iter()
        .all(|s| y.coeff(s).is_zero())
}

/// The `ℚ`-space `Hdg^{2p}` with default solver options.
pub fn hodge_class_space<S: Scalar>(
    model: &WeilTorusModel<S>,
    p: usize,
) -> Result<HodgeClassSpace, HodgeError> {
    hodge_class_space_with(model, p, &SolverOptions::default())
}

pub fn hodge_class_space_with<S: Scalar>(
    model: &WeilTorusModel<S>,
    p: usize,
    opts: &SolverOptions,
) -> Result<HodgeClassSpace, HodgeError> {
    if !(1..=2).contains(&p) {
        return Err(HodgeError::UnsupportedDegree(p));
    }
    let split = model.splitting()?;
    let subsets = off_type_subsets(p);
    let variables = model.domain().variable_count();
    let finish = |kernel: Vec<Vec<BigRational>>, provenance| HodgeClassSpace {
        p,
        rank: kernel.len(),
        basis: kernel
            .iter()
            .map(|v| Multivector::from_dense(2 * p, v))
            .collect(),
        provenance,
    };
    if variables == 0 || opts.mode == SolveMode::Symbolic {
        let provenance = if variables == 0 {
            Provenance::Exact
        } else {
            Provenance::Symbolic
        };
        let kernel = crate::exterior::rational_kernel(&split.coordinate_rows(&subsets));
        return Ok(finish(kernel, provenance));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut constraints: Vec<Vec<BigRational>> = Vec::new();
    let mut points = Vec::new();
    let mut kernel = Vec::new();
    while points.len() < opts.max_points.max(1) {
        let Some((point, sp)) = next_specialization(split, &mut rng, variables) else {
            break;
        };
        points.push(point);
        constraints.extend(
            sp.coordinate_rows(&subsets)
                .rational_constraints()
                .to_rows(),
        );
        constraints = echelon_basis(constraints);
        kernel = Matrix::from_rows(constraints.clone()).kernel();
        let certified = kernel
            .iter()
            .all(|v| is_hodge_class(split, p, &Multivector::from_dense(2 * p, v)));
        if certified {
            return Ok(finish(kernel, Provenance::Certified { points }));
        }
    }
    Ok(finish(kernel, Provenance::Specialized { points }))
}

/// The coarse-(1,1) real covector `i Σ H_ab W̄*_a ∧ W*_b`, where `a`, `b`
/// run over `w₁, w₂, v₁, v₂` and `H` is Hermitian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerCandidate<S: Scalar> {
    form: Matrix<S>,
}

/// The four `2×2` blocks of `H`, named by the covectors they pair:
/// `W̄_i*⊗W_i*`, `W̄_i*⊗W_{-i}*`, `W̄_{-i}*⊗W_i*`, `W̄_{-i}*⊗W_{-i}*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm<S: Scalar> {
    pub blocks: [Matrix<S>; 4],
}

impl<S: Scalar> KahlerCandidate<S> {
    /// Any Hermitian `4×4` form, so also off-diagonal blocks.
    pub fn from_form(form: Matrix<S>) -> Result<Self, HodgeError> {
        assert_eq!((form.rows(), form.cols()), (4, 4), "form must be 4x4");
        let hermitian = (0..4).all(|a| (0..4).all(|b| *form.get(a, b) == form.get(b, a).conj()));
        if !hermitian {
            return Err(HodgeError::NonHermitianInput);
        }
        Ok(KahlerCandidate { form })
    }

    /// Identity blocks: `ω₀ = i Σ W̄*_a ∧ W*_a`.
    pub fn standard() -> Self {
        KahlerCandidate {
            form: Matrix::identity(4),
        }
    }

    pub fn form(&self) -> &Matrix<S> {
        &self.form
    }

    pub fn block_form(&self) -> BlockForm<S> {
        let block =
            |r: usize, c: usize| Matrix::from_fn(2, 2, |i, j| self.form.get(r + i, c + j).clone());
        BlockForm {
            blocks: [block(0, 0), block(0, 2), block(2, 0), block(2, 2)],
        }
    }

    /// Whether the mixed blocks `W̄_i*⊗W_{-i}*` and `W̄_{-i}*⊗W_i*` vanish.
    pub fn is_block_diagonal(&self) -> bool {
        (0..2)
            .all(|a| (2..4).all(|b| self.form.get(a, b).is_zero() && self.form.get(b, a).is_zero()))
    }

    pub fn scale(&self, k: &S) -> Self {
        KahlerCandidate {
            form: self.form.map(|x| x.mul(k)),
        }
    }

    /// `ω` in the dual adapted basis.
    pub fn adapted_covector(&self) -> Covector<S> {
        form_covector(&self.form)
    }

    /// `ω` in lattice coordinates.
    pub fn covector(&self, split: &HodgeSplitting<S>) -> Covector<S> {
        let i = S::imag_unit().expect("domain has i");
        let mut out = Covector::zero(2);
        for a in 0..4 {
            for b in 0..4 {
                let h = self.form.get(a, b);
                if h.is_zero() {
                    continue;
                }
                let term = split.dual(4 + a).wedge(&split.dual(b)).expect("degree 2");
                out = out.add(&term.scale(&i.mul(h)));
            }
        }
        out
    }
}

/// `i Σ H_ab W̄*_a ∧ W*_b` in the dual adapted basis, for any `4×4` matrix.
pub fn form_covector<S: Scalar>(form: &Matrix<S>) -> Covector<S> {
    let i = S::imag_unit().expect("domain has i");
    let mut terms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let h = form.get(a, b);
            if h.is_zero() {
                continue;
            }
            // W̄*_a ∧ W*_b = -(W*_b ∧ W̄*_a) with b < 4 + a.
            terms.push((Subset::from_indices(&[b, 4 + a]), i.mul(h).neg()));
        }
    }
    Covector::from_terms(2, terms)
}

/// Candidate with the given diagonal blocks on `W̄_i*⊗W_i*` and
/// `W̄_{-i}*⊗W_{-i}*`.
pub fn kahler_candidate<S: Scalar>(
    h1: [[S; 2]; 2],
    h2: [[S; 2]; 2],
) -> Result<KahlerCandidate<S>, HodgeError> {
    let form = Matrix::from_fn(4, 4, |a, b| match (a / 2, b / 2) {
        (0, 0) => h1[a][b].clone(),
        (1, 1) => h2[a - 2][b - 2].clone(),
        _ => S::zero(),
    });
    KahlerCandidate::from_form(form)
}

/// Hermitian diagonal blocks in fresh real variables `first..first+8`:
/// `[[h₁, h₃ + i h₄], [h₃ - i h₄, h₂]]` and the same with `h₅..h₈`.
pub fn symbolic_candidate(first: usize) -> KahlerCandidate<RatFunc> {
    let h = |k: usize| RatFunc::var(first + k - 1);
    let i = RatFunc::imag_unit().expect("function field has i");
    let block = |o: usize| {
        let off = h(o + 3).add(&i.mul(&h(o + 4)));
        [[h(o + 1), off.clone()], [off.conj(), h(o + 2)]]
    };
    kahler_candidate(block(0), block(4)).expect("Hermitian by construction")
}

/// Positivity of the Hermitian form of `ω` at a point, by the signs of its
/// leading principal minors.
pub fn is_positive<S: Scalar>(
    model: &WeilTorusModel<S>,
    omega: &KahlerCandidate<S>,
    point: &Assignment,
) -> Result<bool, HodgeError> {
    model.splitting()?.specialize(point)?;
    let h = omega.form.try_map(|x| x.specialize(point))?;
    Ok((1..=4).all(|k| {
        let minor = Matrix::from_fn(k, k, |a, b| h.get(a, b).clone()).det();
        Ring::is_zero(&minor.im) && minor.re.is_positive()
    }))
}
