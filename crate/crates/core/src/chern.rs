//! Formal Chern-class calculus in `H^{even}(X, ℚ) = ⋀^{even} Γ_ℚ*`.
//!
//! Classes live in the wedge ring truncated at degree 8. Even-degree
//! classes commute, so total Chern classes form a commutative ring whose
//! units are the classes with constant term 1.

use std::fmt;

use thiserror::Error;

use crate::exterior::{Covector, Subset, RANK};
use crate::scalars::{BigRational, GaussRational, Monomial, Poly, Ring};

/// Number of graded pieces `c₀..c₄`.
pub const PIECES: usize = RANK / 2 + 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("constant term is not 1")]
    NonUnitConstantTerm,
    #[error("component c{index} has degree {found}, expected {}", 2 * index)]
    DegreeMismatch { index: usize, found: usize },
}

/// `c₀ + c₁ + c₂ + c₃ + c₄` with `cₖ` of degree `2k`.
#[derive(Clone, PartialEq, Eq)]
pub struct ChernTotal {
    pieces: [Covector<BigRational>; PIECES],
}

impl ChernTotal {
    pub fn one() -> Self {
        let mut pieces = std::array::from_fn(|k| Covector::zero(2 * k));
        pieces[0] = Covector::from_terms(0, [(Subset(0), BigRational::one())]);
        ChernTotal { pieces }
    }

    /// `1 + c₁ + ...`; missing components are zero.
    pub fn new(components: &[Covector<BigRational>]) -> Result<Self, ChernError> {
        let mut c = ChernTotal::one();
        for (k, x) in components.iter().enumerate() {
            c.set(k + 1, x.clone())?;
        }
        Ok(c)
    }

    /// All pieces given, constant term included.
    pub fn from_pieces(pieces: [Covector<BigRational>; PIECES]) -> Result<Self, ChernError> {
        for (index, x) in pieces.iter().enumerate() {
            if x.degree() != 2 * index {
                return Err(ChernError::DegreeMismatch {
                    index,
                    found: x.degree(),
                });
            }
        }
        Ok(ChernTotal { pieces })
    }

    fn set(&mut self, index: usize, x: Covector<BigRational>) -> Result<(), ChernError> {
        if index >= PIECES || x.degree() != 2 * index {
            return Err(ChernError::DegreeMismatch {
                index,
                found: x.degree(),
            });
        }
        self.pieces[index] = x;
        Ok(())
    }

    /// `cₖ`, zero past the top degree.
    pub fn c(&self, k: usize) -> Covector<BigRational> {
        self.pieces
            .get(k)
            .cloned()
            .unwrap_or_else(|| Covector::zero(0))
    }

    pub fn constant_term(&self) -> BigRational {
        self.pieces[0].coeff(Subset(0))
    }

    /// Degrees `2k > 0` with `cₖ ≠ 0`.
    pub fn positive_degrees(&self) -> Vec<usize> {
        (1..PIECES)
            .filter(|&k| !self.pieces[k].is_zero())
            .map(|k| 2 * k)
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self == &ChernTotal::one()
    }

    /// Graded product, truncated at degree 8.
    pub fn mul(&self, o: &ChernTotal) -> ChernTotal {
        let pieces = std::array::from_fn(|n| {
            (0..=n).fold(Covector::zero(2 * n), |acc, i| {
                acc.add(
                    &self.pieces[i]
                        .wedge(&o.pieces[n - i])
                        .expect("degree at most 8"),
                )
            })
        });
        ChernTotal { pieces }
    }

    pub fn add(&self, o: &ChernTotal) -> ChernTotal {
        ChernTotal {
            pieces: std::array::from_fn(|k| self.pieces[k].add(&o.pieces[k])),
        }
    }

    pub fn scale(&self, q: &BigRational) -> ChernTotal {
        ChernTotal {
            pieces: std::array::from_fn(|k| self.pieces[k].scale(q)),
        }
    }
}

impl fmt::Debug for ChernTotal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.pieces.iter()).finish()
    }
}

/// Solves `c·b = 1` degree by degree: `bₙ = -Σ_{i≥1} cᵢ b_{n-i}`.
pub fn whitney_inverse(c: &ChernTotal) -> Result<ChernTotal, ChernError> {
    if !c.constant_term().is_one() || c.pieces[0].terms().count() != 1 {
        return Err(ChernError::NonUnitConstantTerm);
    }
    let mut b = ChernTotal::one();
    for n in 1..PIECES {
        let s = (1..=n).fold(Covector::zero(2 * n), |acc, i| {
            acc.add(
                &c.pieces[i]
                    .wedge(&b.pieces[n - i])
                    .expect("degree at most 8"),
            )
        });
        b.pieces[n] = s.neg();
    }
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    Plus,
    Minus,
}

impl Exponent {
    /// `(-1)^i`.
    pub fn alternating(i: usize) -> Exponent {
        if i % 2 == 0 {
            Exponent::Plus
        } else {
            Exponent::Minus
        }
    }
}

/// `Π cᵢ^{εᵢ}`.
pub fn whitney_product(classes: &[(ChernTotal, Exponent)]) -> Result<ChernTotal, ChernError> {
    let mut out = ChernTotal::one();
    for (c, e) in classes {
        out = match e {
            Exponent::Plus => out.mul(c),
            Exponent::Minus => out.mul(&whitney_inverse(c)?),
        };
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Contradiction,
    NoContradiction,
}

/// The free-resolution argument for an ideal sheaf: `c(I_Z) = Π c(Eᵢ)^{(-1)^i}`
/// cannot hold if the left side has a positive-degree term while the right
/// side is 1.
pub fn resolution_contradiction(c_iz: &ChernTotal, resolution: &[ChernTotal]) -> Verdict {
    let factors: Vec<(ChernTotal, Exponent)> = resolution
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), Exponent::alternating(i)))
        .collect();
    let rhs = match whitney_product(&factors) {
        Ok(rhs) => rhs,
        Err(_) => return Verdict::NoContradiction,
    };
    if rhs.positive_degrees().is_empty() && !c_iz.positive_degrees().is_empty() {
        Verdict::Contradiction
    } else {
        Verdict::NoContradiction
    }
}

/// The point class `e*_{1..8}`.
pub fn point_class() -> Covector<BigRational> {
    Covector::basis(Subset::from_indices(&(0..RANK).collect::<Vec<_>>()))
}

/// `1 + m·[pt]` for a point `Z`, with `m ≠ 0` supplied by the caller.
pub fn point_ideal_class(multiple: &BigRational) -> ChernTotal {
    let mut c = ChernTotal::one();
    c.pieces[PIECES - 1] = point_class().scale(multiple);
    c
}

/// Formal symbols of the curvature identity, all of even degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    TrR,
    TrR2,
    Omega,
    Mu,
    K,
    Kappa,
    KappaInv,
    C1,
    C2,
}

impl Symbol {
    pub const ALL: [Symbol; 9] = [
        Symbol::TrR,
        Symbol::TrR2,
        Symbol::Omega,
        Symbol::Mu,
        Symbol::K,
        Symbol::Kappa,
        Symbol::KappaInv,
        Symbol::C1,
        Symbol::C2,
    ];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::TrR => "trR",
            Symbol::TrR2 => "trR2",
            Symbol::Omega => "w",
            Symbol::Mu => "mu",
            Symbol::K => "k",
            Symbol::Kappa => "kappa",
            Symbol::KappaInv => "kappa_inv",
            Symbol::C1 => "c1",
            Symbol::C2 => "c2",
        }
    }
}

/// Commutative polynomial in [`Symbol`]s modulo `κ·κ⁻¹ = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct Formal(Poly);

impl Formal {
    pub fn sym(s: Symbol) -> Formal {
        Formal(Poly::var(s.index()))
    }

    pub fn int(n: i64) -> Formal {
        Formal(Poly::from_i64(n))
    }

    fn reduce(p: Poly) -> Formal {
        let (k, ki) = (Symbol::Kappa.index(), Symbol::KappaInv.index());
        let terms = p.terms().iter().map(|(m, c)| {
            let cancel = m.exponent(k).min(m.exponent(ki));
            let mut exps: Vec<u8> = (0..Symbol::ALL.len()).map(|v| m.exponent(v)).collect();
            exps[k] -= cancel;
            exps[ki] -= cancel;
            (Monomial::from_exponents(&exps), c.clone())
        });
        Formal(Poly::from_terms(terms))
    }

    pub fn add(&self, o: &Formal) -> Formal {
        Formal(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &Formal) -> Formal {
        Formal(self.0.sub(&o.0))
    }

    pub fn mul(&self, o: &Formal) -> Formal {
        Formal::reduce(self.0.mul(&o.0))
    }

    pub fn pow(&self, e: u32) -> Formal {
        (0..e).fold(Formal::int(1), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Replaces every occurrence of `s` by `value`.
    pub fn substitute(&self, s: Symbol, value: &Formal) -> Formal {
        let mut out = Formal::int(0);
        for (m, c) in self.0.terms() {
            let mut exps: Vec<u8> = (0..Symbol::ALL.len()).map(|v| m.exponent(v)).collect();
            let e = std::mem::take(&mut exps[s.index()]);
            let rest = Formal(Poly::monomial(Monomial::from_exponents(&exps), c.clone()));
            out = out.add(&rest.mul(&value.pow(e as u32)));
        }
        out
    }

    pub fn coefficient(&self, monomial: &[(Symbol, u8)]) -> GaussRational {
        let mut exps = vec![0u8; Symbol::ALL.len()];
        for (s, e) in monomial {
            exps[s.index()] = *e;
        }
        let m = Monomial::from_exponents(&exps);
        self.0
            .terms()
            .iter()
            .find(|(n, _)| *n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(GaussRational::zero)
    }
}

impl fmt::Display for Formal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.fmt_with(&|v| Symbol::ALL[v].name().to_string()))
    }
}

impl fmt::Debug for Formal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A word in `R` and `Id`, as the number of `R` factors.
type Word = u32;

/// `tr((R - μω·Id)²)` expanded over words, then traced with
/// `tr(Id) = k`, `tr(R) = trR`, `tr(R²) = trR2`.
pub fn curvature_trace() -> Formal {
    let mu_omega = Formal::sym(Symbol::Mu).mul(&Formal::sym(Symbol::Omega));
    let factor: Vec<(Word, Formal)> = vec![(1, Formal::int(1)), (0, Formal::int(0).sub(&mu_omega))];
    let mut square: Vec<(Word, Formal)> = Vec::new();
    for (w1, a) in &factor {
        for (w2, b) in &factor {
            square.push((w1 + w2, a.mul(b)));
        }
    }
    square.into_iter().fold(Formal::int(0), |acc, (w, c)| {
        let tr = match w {
            0 => Formal::sym(Symbol::K),
            1 => Formal::sym(Symbol::TrR),
            _ => Formal::sym(Symbol::TrR2),
        };
        acc.add(&c.mul(&tr))
    })
}

/// `tr((R - μω·Id)²)/κ²` with `trR = κc₁`, `trR2 = κ²(c₁² - 2c₂)`.
pub fn eta_class() -> Formal {
    let kappa = Formal::sym(Symbol::Kappa);
    let c1 = Formal::sym(Symbol::C1);
    let c2 = Formal::sym(Symbol::C2);
    let tr2 = kappa.pow(2).mul(&c1.pow(2).sub(&Formal::int(2).mul(&c2)));
    curvature_trace()
        .substitute(Symbol::TrR, &kappa.mul(&c1))
        .substitute(Symbol::TrR2, &tr2)
        .mul(&Formal::sym(Symbol::KappaInv).pow(2))
}

/// `c₁² - 2c₂ - (2μ/κ)·ω·c₁ + k(μ/κ)²ω²`.
pub fn eta_expected() -> Formal {
    let s = Formal::sym;
    let mu_over_kappa = s(Symbol::Mu).mul(&s(Symbol::KappaInv));
    s(Symbol::C1)
        .pow(2)
        .sub(&Formal::int(2).mul(&s(Symbol::C2)))
        .sub(
            &Formal::int(2)
                .mul(&mu_over_kappa)
                .mul(&s(Symbol::Omega))
                .mul(&s(Symbol::C1)),
        )
        .add(
            &s(Symbol::K)
                .mul(&mu_over_kappa.pow(2))
                .mul(&s(Symbol::Omega).pow(2)),
        )
}

pub fn eta_identity_check() -> bool {
    eta_class() == eta_expected()
}
