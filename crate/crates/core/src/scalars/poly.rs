use std::collections::BTreeMap;
use std::fmt;
use std::sync::RwLock;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Assignment, GaussRational, Ring, Scalar, ScalarError};

/// Upper bound on the number of distinct variables in one polynomial.
pub const MAX_VARS: usize = 24;

/// Exponent vector. The derived order compares total degree first and then
/// exponents lexicographically with `t1 > t2 > ...`, i.e. graded lex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    deg: u16,
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            deg: 0,
            exps: [0; MAX_VARS],
        }
    }

    pub fn var(index: usize) -> Self {
        assert!(index < MAX_VARS, "variable index {index} exceeds MAX_VARS");
        let mut m = Monomial::one();
        m.exps[index] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Monomial::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u16).sum();
        m
    }

    pub fn exponent(&self, var: usize) -> u8 {
        self.exps[var]
    }

    pub fn degree(&self) -> u16 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bitmask of variables with nonzero exponent.
    pub fn support(&self) -> u32 {
        let mut s = 0u32;
        for (v, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                s |= 1 << v;
            }
        }
        s
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for v in 0..MAX_VARS {
            m.exps[v] = self.exps[v]
                .checked_add(o.exps[v])
                .expect("exponent overflow");
        }
        m.deg = self.deg + o.deg;
        m
    }

    /// Componentwise minimum of exponents.
    pub fn meet(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for v in 0..MAX_VARS {
            m.exps[v] = self.exps[v].min(o.exps[v]);
        }
        m.deg = m.exps.iter().map(|&e| e as u16).sum();
        m
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|v| self.exps[v] <= o.exps[v])
    }

    /// `o / self`, assuming `self.divides(o)`.
    fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for v in 0..MAX_VARS {
            m.exps[v] = o.exps[v] - self.exps[v];
        }
        m.deg = o.deg - self.deg;
        m
    }

    fn without(&self, var: usize) -> Monomial {
        let mut m = *self;
        m.deg -= m.exps[var] as u16;
        m.exps[var] = 0;
        m
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        let mut parts = Vec::new();
        for (v, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names(v)),
                _ => parts.push(format!("{}^{}", names(v), e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.fmt_with(&default_name))
        }
    }
}

pub(crate) fn default_name(v: usize) -> String {
    format!("t{}", v + 1)
}

/// Sparse polynomial over `Q(i)`. Terms are kept sorted by decreasing
/// monomial with no zero coefficients, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, GaussRational)>,
}

impl Poly {
    pub fn constant(c: GaussRational) -> Self {
        if c.is_zero() {
            Poly::default()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(index: usize) -> Self {
        Poly {
            terms: vec![(Monomial::var(index), GaussRational::one())],
        }
    }

    pub fn monomial(m: Monomial, c: GaussRational) -> Self {
        if c.is_zero() {
            Poly::default()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussRational)>) -> Self {
        let mut acc: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert_with(GaussRational::zero);
            *e = e.add(&c);
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, GaussRational>) -> Self {
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, GaussRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<GaussRational> {
        match self.terms.as_slice() {
            [] => Some(GaussRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, GaussRational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u16 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    /// Bitmask of variables occurring in the polynomial.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |s, (m, _)| s | m.support())
    }

    pub fn degree_in(&self, var: usize) -> u8 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussRational) -> Poly {
        if c.is_zero() {
            return Poly::default();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &GaussRational) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.mul(c)))
                .collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => Poly::default(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn conj(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    pub fn eval(&self, point: &Assignment) -> Result<GaussRational, ScalarError> {
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..MAX_VARS {
                let e = m.exponent(v);
                if e > 0 {
                    let x = point.get(v).ok_or(ScalarError::MissingVariable(v + 1))?;
                    t = t.mul(&x.pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let take = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match take {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate_other {
                        b[j].1.neg()
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.terms.first()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()?));
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (m0, _) = self.terms.first().expect("nonzero");
        if !dm.divides(m0) || (0..MAX_VARS).any(|v| d.degree_in(v) > self.degree_in(v)) {
            return None;
        }
        let dc_inv = dc.inv()?;
        let mut rem: BTreeMap<Monomial, GaussRational> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient_of(&m);
            let qc = c.mul(&dc_inv);
            for (n, a) in &d.terms[1..] {
                let key = n.mul(&qm);
                let e = rem.entry(key).or_insert_with(GaussRational::zero);
                *e = e.sub(&a.mul(&qc));
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quotient.push((qm, qc));
        }
        Some(Poly { terms: quotient })
    }

    /// Coefficients with respect to `var`, indexed by power.
    pub fn to_univariate(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, GaussRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exponent(var) as usize].push((m.without(var), c.clone()));
        }
        // Removing one variable from a sorted list can break the order.
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_univariate(var: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Monomial::from_exponents(&{
                let mut e = [0u8; MAX_VARS];
                e[var] = k as u8;
                e
            });
            for (m, a) in &c.terms {
                terms.push((m.mul(&shift), a.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a.monic() == b.monic() {
            return a.monic();
        }
        if a.div_exact(b).is_some() {
            return b.monic();
        }
        if b.div_exact(a).is_some() {
            return a.monic();
        }
        let (ma, a) = a.split_monomial_content();
        let (mb, b) = b.split_monomial_content();
        let m = ma.meet(&mb);
        let (common, a, b) = peel_known_factors(a, b);
        let rest = if a.is_constant() || b.is_constant() || coprime_by_specialization(&a, &b) {
            Poly::one()
        } else {
            gcd_recursive(&a, &b).monic()
        };
        rest.mul(&common)
            .mul_term(&m, &GaussRational::one())
            .monic()
    }

    /// Records `p` as a likely factor of later gcd arguments. Gcds try
    /// exact division by registered factors before anything else; results
    /// do not depend on what is registered.
    pub fn register_factor(p: &Poly) {
        if p.is_constant() {
            return;
        }
        let p = p.monic();
        let mut known = KNOWN_FACTORS.write().unwrap_or_else(|e| e.into_inner());
        if !known.contains(&p) {
            known.push(p);
        }
    }

    /// Largest monomial dividing every term, and the cofactor.
    fn split_monomial_content(&self) -> (Monomial, Poly) {
        let mut m = match self.terms.first() {
            Some((m, _)) => *m,
            None => return (Monomial::one(), Poly::zero()),
        };
        for (n, _) in &self.terms[1..] {
            m = m.meet(n);
        }
        if m.is_one() {
            return (m, self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(n, c)| (m.quotient_of(n), c.clone()))
            .collect();
        (m, Poly { terms })
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = (c.im.is_zero() && c.re < num_traits::Zero::zero())
                || (c.re.is_zero() && c.im < num_traits::Zero::zero());
            let mag = if negative { c.neg() } else { c.clone() };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let both = !mag.re.is_zero() && !mag.im.is_zero();
            let coeff = if both {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&m.fmt_with(names));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&m.fmt_with(names));
            }
        }
        out
    }
}

static KNOWN_FACTORS: RwLock<Vec<Poly>> = RwLock::new(Vec::new());

/// Divides registered factors out of `a` and `b` while both are divisible.
fn peel_known_factors(mut a: Poly, mut b: Poly) -> (Poly, Poly, Poly) {
    let known = KNOWN_FACTORS
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .clone();
    let mut common = Poly::one();
    for f in &known {
        loop {
            let Some(qa) = a.div_exact(f) else { break };
            let Some(qb) = b.div_exact(f) else { break };
            common = common.mul(f);
            a = qa;
            b = qb;
        }
    }
    (common, a, b)
}

/// Prime with `p ≡ 1 (mod 4)`, so that `i` has an image in `F_p`.
const MODULUS: u64 = 998_244_353;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MODULUS - 2)
}

/// Square root of -1 modulo `MODULUS`; 3 is a primitive root.
fn sqrt_minus_one() -> u64 {
    pow_mod(3, (MODULUS - 1) / 4)
}

fn rational_mod(q: &num_rational::BigRational) -> Option<u64> {
    let m = num_bigint::BigInt::from(MODULUS);
    let n = q.numer().mod_floor(&m).to_u64().expect("reduced");
    let d = q.denom().mod_floor(&m).to_u64().expect("reduced");
    (d != 0).then(|| mul_mod(n, inv_mod(d)))
}

fn gauss_mod(c: &GaussRational, i: u64) -> Option<u64> {
    Some((rational_mod(&c.re)? + mul_mod(i, rational_mod(&c.im)?)) % MODULUS)
}

impl Poly {
    /// Coefficients in `var` of the image in `F_p[var]` after substituting
    /// `values` for the other variables; `None` if a coefficient has `p` in
    /// its denominator.
    fn eval_except_mod(&self, var: usize, values: &[u64]) -> Option<Vec<u64>> {
        let i = sqrt_minus_one();
        let mut out = vec![0u64; self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let mut t = gauss_mod(c, i)?;
            for (v, &x) in values.iter().enumerate() {
                let e = m.exponent(v);
                if v != var && e > 0 {
                    t = mul_mod(t, pow_mod(x, e as u64));
                }
            }
            let k = m.exponent(var) as usize;
            out[k] = (out[k] + t) % MODULUS;
        }
        Some(out)
    }
}

fn univariate_gcd_degree_mod(a: &[u64], b: &[u64]) -> usize {
    let strip = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let mut p = strip(a.to_vec());
    let mut q = strip(b.to_vec());
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let inv = inv_mod(*q.last().expect("nonempty"));
        while p.len() >= q.len() {
            let f = mul_mod(*p.last().expect("nonempty"), inv);
            let d = p.len() - q.len();
            for (j, &qj) in q.iter().enumerate() {
                p[j + d] = (p[j + d] + MODULUS - mul_mod(f, qj)) % MODULUS;
            }
            p.pop();
            p = strip(p);
        }
        std::mem::swap(&mut p, &mut q);
    }
    p.len().saturating_sub(1)
}

/// Sound test for `gcd(a, b) = 1`. For each shared variable `x`, the other
/// variables are set to residues modulo a prime at which the leading
/// coefficients in `x` survive; the degree in `x` of any common factor is
/// then bounded by the degree of the univariate gcd of the images.
fn coprime_by_specialization(a: &Poly, b: &Poly) -> bool {
    let shared = a.support() & b.support();
    let mut seed: u64 = 0x9e37_79b9;
    'vars: for var in (0..MAX_VARS).filter(|v| shared & (1 << v) != 0) {
        let (da, db) = (a.degree_in(var) as usize, b.degree_in(var) as usize);
        for _ in 0..4 {
            let values: Vec<u64> = (0..MAX_VARS)
                .map(|_| {
                    seed = seed
                        .wrapping_mul(6_364_136_223_846_793_005)
                        .wrapping_add(1_442_695_040_888_963_407);
                    (seed >> 33) % MODULUS
                })
                .collect();
            let (Some(ua), Some(ub)) = (
                a.eval_except_mod(var, &values),
                b.eval_except_mod(var, &values),
            ) else {
                return false;
            };
            if ua[da] == 0 || ub[db] == 0 {
                continue;
            }
            if univariate_gcd_degree_mod(&ua, &ub) == 0 {
                continue 'vars;
            }
        }
        return false;
    }
    true
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::default();
    for c in coeffs {
        g = Poly::gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            return Poly::one();
        }
    }
    g
}

/// Divides out `content` and the numeric leading coefficient, so that the
/// top coefficient is monic and rational coefficients stay small.
fn primitive_part(coeffs: &[Poly], content: &Poly) -> Vec<Poly> {
    let mut out: Vec<Poly> = coeffs
        .iter()
        .map(|c| {
            c.div_exact(content)
                .expect("content divides every coefficient")
        })
        .collect();
    let unit = out
        .iter()
        .rev()
        .find_map(|c| c.leading().map(|(_, a)| a.clone()));
    if let Some(u) = unit.filter(|u| !u.is_one()) {
        let inv = u.inv().expect("nonzero");
        for c in out.iter_mut() {
            *c = c.scale(&inv);
        }
    }
    out
}

fn trim(u: &mut Vec<Poly>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

/// Pseudo-remainder of `p` by `q` as univariate polynomials, up to a factor
/// that is a power of the leading coefficient of `q`.
fn pseudo_remainder(p: &[Poly], q: &[Poly]) -> Vec<Poly> {
    let n = q.len() - 1;
    let lcq = &q[n];
    let mut r = p.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() - 1 >= n {
        let d = r.len() - 1 - n;
        let lr = r[r.len() - 1].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcq);
        }
        for (j, qj) in q.iter().enumerate() {
            r[j + d] = r[j + d].sub(&lr.mul(qj));
        }
        trim(&mut r);
    }
    r
}

fn gcd_recursive(a: &Poly, b: &Poly) -> Poly {
    let (sa, sb) = (a.support(), b.support());
    if sa & sb == 0 {
        return Poly::one();
    }
    // A variable present in only one argument cannot occur in the gcd, so
    // the gcd divides every coefficient with respect to it.
    for (x, other, only) in [(a, b, sa & !sb), (b, a, sb & !sa)] {
        if only != 0 {
            let v = only.trailing_zeros() as usize;
            let mut g = other.clone();
            for c in x.to_univariate(v) {
                g = Poly::gcd(&g, &c);
                if g.is_constant() {
                    return Poly::one();
                }
            }
            return g;
        }
    }
    let common = sa & sb;
    let var = (0..MAX_VARS)
        .filter(|v| common & (1 << v) != 0)
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("common variable");
    let ua = a.to_univariate(var);
    let ub = b.to_univariate(var);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = Poly::gcd(&ca, &cb);
    let mut p = primitive_part(&ua, &ca);
    let mut q = primitive_part(&ub, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_remainder(&p, &q);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            q = vec![Poly::one()];
            break;
        }
        let cr = content(&r);
        p = q;
        q = primitive_part(&r, &cr);
    }
    let qc = content(&q);
    let g = Poly::from_univariate(var, &primitive_part(&q, &qc));
    c.mul(&g)
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(GaussRational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }
    fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }
    fn mul(&self, o: &Self) -> Self {
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        let mut acc: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &o.terms {
                let e = acc.entry(m.mul(n)).or_insert_with(GaussRational::zero);
                *e = e.add(&a.mul(b));
            }
        }
        Poly::from_map(acc)
    }
    fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }
    fn from_i64(n: i64) -> Self {
        Poly::constant(GaussRational::from_ints(n, 0))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&default_name))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> Poly {
        Poly::var(i)
    }

    fn c(re: i64, im: i64) -> Poly {
        Poly::constant(GaussRational::from_ints(re, im))
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let a = Monomial::from_exponents(&[0, 2]);
        let b = Monomial::from_exponents(&[1, 0]);
        let d = Monomial::from_exponents(&[1, 1]);
        let e = Monomial::from_exponents(&[2, 0]);
        assert!(a > b);
        assert!(e > d && d > a);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = t(0).mul(&t(1)).add(&c(1, 1));
        let g = t(0).sub(&t(2)).add(&c(0, 3));
        let h = t(1).mul(&t(1)).add(&t(3));
        let a = f.mul(&g);
        let b = f.mul(&h).mul(&h);
        assert_eq!(Poly::gcd(&a, &b), f.monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = t(0).mul(&t(0)).add(&c(1, 0));
        let b = t(0).add(&t(1));
        assert_eq!(Poly::gcd(&a, &b), Poly::one());
    }

    #[test]
    fn gcd_handles_gaussian_factors() {
        // t1^2 + 1 = (t1 + i)(t1 - i)
        let a = t(0).mul(&t(0)).add(&c(1, 0));
        let b = t(0).add(&c(0, 1)).mul(&t(1));
        assert_eq!(Poly::gcd(&a, &b), t(0).add(&c(0, 1)));
    }

    #[test]
    fn exact_division() {
        let f = t(0).add(&t(1));
        let g = t(0).sub(&c(2, 0));
        assert_eq!(f.mul(&g).div_exact(&g), Some(f.clone()));
        assert_eq!(f.mul(&g).add(&c(1, 0)).div_exact(&g), None);
    }
}
