//! Exterior algebra of a free module of rank [`RANK`].
//!
//! Basis `k`-vectors are indexed by [`Subset`] bitmasks; coefficients live in
//! any [`Ring`]. Covectors share the representation and pair with
//! multivectors through `<e*_S, e_T> = δ_{S,T}`.

mod linear;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalars::Ring;

pub(crate) use linear::echelon_basis;
pub use linear::{rational_kernel, LinearMap, Matrix};

/// Rank of the underlying module.
pub const RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("degree {0} + {1} exceeds {RANK}")]
    DegreeOverflow(usize, usize),
    #[error("degree mismatch: covector of degree {0}, multivector of degree {1}")]
    DegreeMismatch(usize, usize),
}

/// Subset of `{0, .., RANK-1}` as a bitmask. Ordered by size, then
/// lexicographically on the ascending element list.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset(pub u8);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_indices(indices: &[usize]) -> Subset {
        let mut m = 0u8;
        for &i in indices {
            assert!(i < RANK, "index {i} out of range");
            m |= 1 << i;
        }
        Subset(m)
    }

    pub fn singleton(i: usize) -> Subset {
        Subset::from_indices(&[i])
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..RANK).filter(move |&i| self.contains(i))
    }

    pub fn is_disjoint(self, o: Subset) -> bool {
        self.0 & o.0 == 0
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    /// Number of elements of `self` smaller than `i`.
    pub fn rank_of(self, i: usize) -> usize {
        (self.0 as u32 & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// Sign of the shuffle sorting the concatenation of `self` and `o`.
    pub fn shuffle_sign(self, o: Subset) -> i32 {
        let mut inversions = 0u32;
        for j in o.indices() {
            inversions += (self.0 as u32 >> (j + 1)).count_ones();
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All `k`-subsets in increasing order.
    pub fn all(k: usize) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0..=u8::MAX).map(Subset).filter(|s| s.len() == k).collect();
        out.sort();
        out
    }

    /// Position of `self` among [`Subset::all`] of its size.
    pub fn position(self) -> usize {
        // Colex ranking would be cheaper; lex order is what callers see.
        Subset::all(self.len())
            .iter()
            .position(|&s| s == self)
            .expect("subset enumerated")
    }
}

impl Ord for Subset {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.len().cmp(&o.len()) {
            Ordering::Equal => {}
            other => return other,
        }
        let diff = self.0 ^ o.0;
        if diff == 0 {
            Ordering::Equal
        } else if self.0 & diff & diff.wrapping_neg() != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for i in self.indices() {
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Homogeneous element of `⋀^k`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector<R> {
    degree: usize,
    coeffs: BTreeMap<Subset, R>,
}

impl<R: Ring> Multivector<R> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= RANK);
        Multivector {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(c: R) -> Self {
        Multivector::from_terms(0, [(Subset::EMPTY, c)])
    }

    pub fn basis(s: Subset) -> Self {
        Multivector::from_terms(s.len(), [(s, R::one())])
    }

    /// `e_i` for a single index.
    pub fn unit(i: usize) -> Self {
        Multivector::basis(Subset::singleton(i))
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Subset, R)>) -> Self {
        let mut out = Multivector::zero(degree);
        for (s, c) in terms {
            out.add_term(s, &c);
        }
        out
    }

    /// Degree-1 element with the given coordinates.
    pub fn vector(coords: &[R]) -> Self {
        assert!(coords.len() <= RANK);
        Multivector::from_terms(
            1,
            coords
                .iter()
                .enumerate()
                .map(|(i, c)| (Subset::singleton(i), c.clone())),
        )
    }

    /// Coordinates in the basis [`Subset::all`]`(degree)`.
    pub fn from_dense(degree: usize, coords: &[R]) -> Self {
        let basis = Subset::all(degree);
        assert_eq!(basis.len(), coords.len());
        Multivector::from_terms(degree, basis.into_iter().zip(coords.iter().cloned()))
    }

    pub fn to_dense(&self) -> Vec<R> {
        Subset::all(self.degree)
            .into_iter()
            .map(|s| self.coeff(s))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, s: Subset) -> R {
        self.coeffs.get(&s).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &R)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, s: Subset, c: &R) {
        assert_eq!(s.len(), self.degree, "subset size must equal the degree");
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&s) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.coeffs.remove(&s);
                }
            }
            None => {
                self.coeffs.insert(s, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(
            self.degree, o.degree,
            "adding multivectors of different degree"
        );
        let mut out = self.clone();
        for (s, c) in &o.coeffs {
            out.add_term(*s, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, k: &R) -> Self {
        if k.is_zero() {
            return Multivector::zero(self.degree);
        }
        self.map(|c| c.mul(k))
    }

    /// Applies `f` to every coefficient, dropping results that vanish.
    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> Multivector<T> {
        Multivector::from_terms(self.degree, self.coeffs.iter().map(|(s, c)| (*s, f(c))))
    }

    pub fn try_map<T: Ring, E>(&self, f: impl Fn(&R) -> Result<T, E>) -> Result<Multivector<T>, E> {
        let mut out = Multivector::zero(self.degree);
        for (s, c) in &self.coeffs {
            out.add_term(*s, &f(c)?);
        }
        Ok(out)
    }

    /// Keeps only the terms whose subset satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(Subset) -> bool) -> Self {
        Multivector {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(s, _)| keep(**s))
                .map(|(s, c)| (*s, c.clone()))
                .collect(),
        }
    }

    pub fn wedge(&self, o: &Self) -> Result<Self, ExteriorError> {
        if self.degree + o.degree > RANK {
            return Err(ExteriorError::DegreeOverflow(self.degree, o.degree));
        }
        let mut out = Multivector::zero(self.degree + o.degree);
        for (s, a) in &self.coeffs {
            for (t, b) in &o.coeffs {
                if !s.is_disjoint(*t) {
                    continue;
                }
                let c = a.mul(b);
                let c = if s.shuffle_sign(*t) < 0 { c.neg() } else { c };
                out.add_term(s.union(*t), &c);
            }
        }
        Ok(out)
    }

    /// Wedge product of several elements, left to right.
    pub fn wedge_all<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Result<Self, ExteriorError>
    where
        R: 'a,
    {
        let mut acc = Multivector::scalar(R::one());
        for f in factors {
            acc = acc.wedge(f)?;
        }
        Ok(acc)
    }

    /// Interior product with a degree-1 element of the dual module.
    /// Returns zero on degree-0 input.
    pub fn contract_by(&self, phi: &Multivector<R>) -> Self {
        assert_eq!(phi.degree, 1, "contraction needs a degree-1 form");
        if self.degree == 0 {
            return Multivector::zero(0);
        }
        let mut out = Multivector::zero(self.degree - 1);
        for (j, a) in &phi.coeffs {
            let j = j.indices().next().expect("singleton");
            for (s, c) in &self.coeffs {
                if !s.contains(j) {
                    continue;
                }
                let v = a.mul(c);
                let v = if s.rank_of(j) % 2 == 1 { v.neg() } else { v };
                out.add_term(s.without(j), &v);
            }
        }
        out
    }
}

impl<R: Ring> fmt::Debug for Multivector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(s, c)| format!("({c:?}) e{s:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of `⋀^k` of the dual module.
#[derive(Clone, PartialEq, Eq)]
pub struct Covector<R>(pub Multivector<R>);

impl<R: Ring> Covector<R> {
    pub fn zero(degree: usize) -> Self {
        Covector(Multivector::zero(degree))
    }

    pub fn basis(s: Subset) -> Self {
        Covector(Multivector::basis(s))
    }

    /// `e*_i` for a single index.
    pub fn unit(i: usize) -> Self {
        Covector(Multivector::unit(i))
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Subset, R)>) -> Self {
        Covector(Multivector::from_terms(degree, terms))
    }

    pub fn vector(coords: &[R]) -> Self {
        Covector(Multivector::vector(coords))
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, s: Subset) -> R {
        self.0.coeff(s)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &R)> {
        self.0.terms()
    }

    pub fn add(&self, o: &Self) -> Self {
        Covector(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Covector(self.0.sub(&o.0))
    }

    pub fn neg(&self) -> Self {
        Covector(self.0.neg())
    }

    pub fn scale(&self, k: &R) -> Self {
        Covector(self.0.scale(k))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> Covector<T> {
        Covector(self.0.map(f))
    }

    pub fn wedge(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.0.wedge(&o.0).map(Covector)
    }

    pub fn wedge_all<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Result<Self, ExteriorError>
    where
        R: 'a,
    {
        Multivector::wedge_all(factors.into_iter().map(|c| &c.0)).map(Covector)
    }

    /// Interior product `ι(v)` by a degree-1 vector.
    pub fn contract_by(&self, v: &Multivector<R>) -> Self {
        Covector(self.0.contract_by(v))
    }

    /// Evaluation pairing `<self, w>`.
    pub fn pair(&self, w: &Multivector<R>) -> Result<R, ExteriorError> {
        if self.degree() != w.degree() {
            return Err(ExteriorError::DegreeMismatch(self.degree(), w.degree()));
        }
        let mut acc = R::zero();
        for (s, a) in self.0.terms() {
            if let Some(b) = w.coeffs.get(&s) {
                acc = acc.add(&a.mul(b));
            }
        }
        Ok(acc)
    }
}

impl<R: Ring> fmt::Debug for Covector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*[{:?}]", self.0)
    }
}

/// `contract(φ, a)` for a degree-1 covector `φ`.
pub fn contract<R: Ring>(phi: &Covector<R>, a: &Multivector<R>) -> Multivector<R> {
    a.contract_by(&phi.0)
}

/// `wedge(a, b)`.
pub fn wedge<R: Ring>(
    a: &Multivector<R>,
    b: &Multivector<R>,
) -> Result<Multivector<R>, ExteriorError> {
    a.wedge(b)
}

/// `<c, w>`.
pub fn evaluation_pairing<R: Ring>(
    c: &Covector<R>,
    w: &Multivector<R>,
) -> Result<R, ExteriorError> {
    c.pair(w)
}
