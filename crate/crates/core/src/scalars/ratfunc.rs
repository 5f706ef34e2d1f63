use std::fmt;

use num_rational::BigRational;

use super::poly::default_name;
use super::{Assignment, GaussRational, Monomial, Poly, Ring, Scalar, ScalarError};

/// Reduced fraction of polynomials over `Q(i)`. The denominator is monic
/// in graded-lex order and coprime to the numerator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::reduce(num, den))
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn constant(c: GaussRational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        RatFunc::constant(GaussRational::from_rational(q))
    }

    pub fn var(index: usize) -> Self {
        RatFunc::from_poly(Poly::var(index))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn support(&self) -> u32 {
        self.num.support() | self.den.support()
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        RatFunc::normalize_unit(num, den)
    }

    fn normalize_unit(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.den.is_one() {
            self.num.fmt_with(names)
        } else {
            format!(
                "({})/({})",
                self.num.fmt_with(names),
                self.den.fmt_with(names)
            )
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFunc {
                    num,
                    den: Poly::one(),
                };
            }
            return RatFunc::reduce(num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        let den = self.den.mul(&b);
        if g.is_one() {
            // Numerator is coprime to a·b when both inputs are reduced.
            if num.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc::normalize_unit(num, den);
        }
        RatFunc::reduce(num, den)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc {
                num: self.num.mul(&o.num),
                den: Poly::one(),
            };
        }
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::normalize_unit(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::from_poly(Poly::from_i64(n))
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Scalar for RatFunc {
    const DOMAIN: &'static str = "function field";

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::normalize_unit(self.den.clone(), self.num.clone()))
    }
    fn conj(&self) -> Self {
        // Conjugates of coprime polynomials stay coprime.
        RatFunc::normalize_unit(self.num.conj(), self.den.conj())
    }
    fn imag_unit() -> Option<Self> {
        Some(RatFunc::constant(GaussRational::i()))
    }
    fn from_gauss(g: &GaussRational) -> Option<Self> {
        Some(RatFunc::constant(g.clone()))
    }
    fn from_rational(q: &BigRational) -> Self {
        RatFunc::from_rational(q)
    }
    fn to_func(&self) -> RatFunc {
        self.clone()
    }
    fn from_func(f: &RatFunc) -> Option<Self> {
        Some(f.clone())
    }
    fn specialize(&self, point: &Assignment) -> Result<GaussRational, ScalarError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        let n = self.num.eval(point)?;
        Ok(n.div(&d).expect("nonzero"))
    }
    fn rational_parts(&self) -> Vec<(Monomial, BigRational, BigRational)> {
        let d = self
            .den
            .constant_value()
            .expect("rational_parts needs a constant denominator");
        let inv = d.inv().expect("nonzero");
        self.num
            .terms()
            .iter()
            .map(|(m, c)| {
                let c = c.mul(&inv);
                (*m, c.re, c.im)
            })
            .collect()
    }
    fn fraction_free() -> bool {
        true
    }
    fn register_factor(&self) {
        if self.is_polynomial() {
            Poly::register_factor(&self.num);
        }
    }
    fn exact_quotient(&self, d: &Self) -> Option<Self> {
        if !self.is_polynomial() || !d.is_polynomial() {
            return None;
        }
        self.num.div_exact(&d.num).map(RatFunc::from_poly)
    }
    fn clear_row_denominators(row: &mut [Self]) -> Self {
        let mut lcm = Poly::one();
        for x in row.iter() {
            if x.den.is_one() {
                continue;
            }
            let g = Poly::gcd(&lcm, &x.den);
            lcm = lcm.mul(&x.den.div_exact(&g).expect("gcd divides"));
        }
        if lcm.is_one() {
            return RatFunc::one();
        }
        for x in row.iter_mut() {
            if x.is_zero() {
                continue;
            }
            let factor = lcm.div_exact(&x.den).expect("lcm is a multiple");
            *x = RatFunc {
                num: x.num.mul(&factor),
                den: Poly::one(),
            };
        }
        RatFunc::from_poly(lcm)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&default_name))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}
