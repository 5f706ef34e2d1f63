//! Exact scalar domains carrying a complex conjugation.
//!
//! Three domains are provided: the rationals, the Gaussian rationals
//! `Q(i)`, and rational functions over `Q(i)` in up to [`MAX_VARS`]
//! variables. Function-field variables are real: conjugation acts on
//! coefficients only.

mod gauss;
mod parse;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;

pub use gauss::GaussRational;
pub use num_rational::BigRational;
pub use parse::{parse_scalar, ParseError};
pub use poly::{Monomial, Poly, MAX_VARS};
pub use ratfunc::RatFunc;
pub(crate) use rational::primitive_integer_vector;
pub use rational::{rational, rational_to_string};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("denominator vanishes at the specialization point")]
    DenominatorVanishes,
    #[error("variable t{0} is not covered by the assignment")]
    MissingVariable(usize),
    #[error("value is not representable in the {0} domain")]
    NotInDomain(&'static str),
}

/// Which scalar domain an instance lives over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarDomain {
    Rational,
    GaussianRational,
    FunctionField { variables: Vec<String> },
}

impl ScalarDomain {
    pub fn variable_count(&self) -> usize {
        match self {
            ScalarDomain::FunctionField { variables } => variables.len(),
            _ => 0,
        }
    }

    pub fn variables(&self) -> &[String] {
        match self {
            ScalarDomain::FunctionField { variables } => variables,
            _ => &[],
        }
    }
}

/// Commutative ring with unit. Methods take references so that generic
/// code avoids cloning big-integer data on every operation.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A value assigned to each variable index, used by [`Scalar::specialize`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment(pub Vec<GaussRational>);

impl Assignment {
    pub fn get(&self, var: usize) -> Option<&GaussRational> {
        self.0.get(var)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|g| g.is_real())
    }
}

/// Field element of one of the exact domains.
pub trait Scalar: Ring + fmt::Display {
    /// Domain name used in error messages.
    const DOMAIN: &'static str;

    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    /// The imaginary unit, when the domain contains it.
    fn imag_unit() -> Option<Self>;
    fn from_gauss(g: &GaussRational) -> Option<Self>;
    fn from_rational(q: &BigRational) -> Self;
    fn to_func(&self) -> RatFunc;
    /// Inverse of [`Scalar::to_func`] where the value lies in this domain.
    fn from_func(f: &RatFunc) -> Option<Self>;
    fn specialize(&self, point: &Assignment) -> Result<GaussRational, ScalarError>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.mul(&inv))
    }

    fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `self / d` when it can be formed without a gcd computation: always in
    /// a field, and for function-field values when both are polynomials and
    /// `d` divides `self`.
    fn exact_quotient(&self, d: &Self) -> Option<Self> {
        self.div(d)
    }

    /// Hint that `self` will recur as a denominator factor.
    fn register_factor(&self) {}

    /// Splits the scalar into ℚ-linear pieces: real and imaginary parts,
    /// one pair per monomial for function-field values (after the caller
    /// has cleared denominators with [`Scalar::clear_row_denominators`]).
    fn rational_parts(&self) -> Vec<(Monomial, BigRational, BigRational)>;

    /// Rescales a row of a linear system by a nonzero common factor so
    /// that every entry has a constant denominator, and returns the factor.
    /// The row's solution set is unchanged.
    fn clear_row_denominators(_row: &mut [Self]) -> Self {
        Self::one()
    }

    /// Whether elimination should run fraction-free on polynomial
    /// numerators rather than by field division.
    fn fraction_free() -> bool {
        false
    }
}

#[cfg(test)]
mod tests;
