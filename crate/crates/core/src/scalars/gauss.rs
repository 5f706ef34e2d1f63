use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{rational_to_string, Assignment, Monomial, RatFunc, Ring, Scalar, ScalarError};

/// Element `re + im·i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        GaussRational {
            re: q.clone(),
            im: BigRational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn i() -> Self {
        GaussRational::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Squared absolute value `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GaussRational {
            re: &self.re * q,
            im: &self.im * q,
        }
    }
}

impl Ring for GaussRational {
    fn zero() -> Self {
        GaussRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn one() -> Self {
        GaussRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GaussRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRational {
                re: &self.re * &o.re,
                im: BigRational::zero(),
            };
        }
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        GaussRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn from_i64(n: i64) -> Self {
        GaussRational::from_ints(n, 0)
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl Scalar for GaussRational {
    const DOMAIN: &'static str = "Gaussian rational";

    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = self.norm();
        Some(GaussRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }
    fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
    fn imag_unit() -> Option<Self> {
        Some(GaussRational::i())
    }
    fn from_gauss(g: &GaussRational) -> Option<Self> {
        Some(g.clone())
    }
    fn from_rational(q: &BigRational) -> Self {
        GaussRational::from_rational(q)
    }
    fn to_func(&self) -> RatFunc {
        RatFunc::constant(self.clone())
    }
    fn from_func(f: &RatFunc) -> Option<Self> {
        if !f.is_polynomial() {
            return None;
        }
        f.numer().constant_value()
    }
    fn specialize(&self, _point: &Assignment) -> Result<GaussRational, ScalarError> {
        Ok(self.clone())
    }
    fn rational_parts(&self) -> Vec<(Monomial, BigRational, BigRational)> {
        vec![(Monomial::one(), self.re.clone(), self.im.clone())]
    }
}

/// Formats `r/s*i` style imaginary parts; `i` and `-i` for unit magnitude.
fn imag_to_string(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if (-im).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", rational_to_string(im))
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rational_to_string(&self.re)),
            (true, false) => write!(f, "{}", imag_to_string(&self.im)),
            (false, false) => {
                let im = imag_to_string(&self.im.abs());
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}", rational_to_string(&self.re), sign, im)
            }
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
