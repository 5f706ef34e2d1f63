use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Assignment, GaussRational, Monomial, RatFunc, Ring, Scalar, ScalarError};

/// Shorthand for the rational `num/den`.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `p` for integers, `p/q` otherwise.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Scalar for BigRational {
    const DOMAIN: &'static str = "rational";

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn from_gauss(g: &GaussRational) -> Option<Self> {
        if Zero::is_zero(&g.im) {
            Some(g.re.clone())
        } else {
            None
        }
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn to_func(&self) -> RatFunc {
        RatFunc::from_rational(self)
    }
    fn from_func(f: &RatFunc) -> Option<Self> {
        if !f.is_polynomial() {
            return None;
        }
        Self::from_gauss(&f.numer().constant_value()?)
    }
    fn specialize(&self, _point: &Assignment) -> Result<GaussRational, ScalarError> {
        Ok(GaussRational::from_rational(self))
    }
    fn rational_parts(&self) -> Vec<(Monomial, BigRational, BigRational)> {
        vec![(Monomial::one(), self.clone(), Zero::zero())]
    }
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub(crate) fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigRational> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| {
            if x.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        })
        .unwrap_or_else(BigInt::one);
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &g * &sign))
        .collect()
}
