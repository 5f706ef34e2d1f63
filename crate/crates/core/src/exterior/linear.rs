use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::{Multivector, Subset};
use crate::scalars::{Monomial, Poly, RatFunc, Ring, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<R>]) -> Self {
        Matrix::from_rows(cols.to_vec()).transpose()
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Ring, E>(&self, f: impl Fn(&R) -> Result<T, E>) -> Result<Matrix<T>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<T>, E>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out: Matrix<R> = Matrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Stacks `o` below `self`.
    pub fn stack(&self, o: &Self) -> Self {
        if self.rows == 0 {
            return o.clone();
        }
        assert_eq!(self.cols, o.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix {
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    /// Image of a multivector under the induced map on `⋀^k`, for a square
    /// matrix acting on the rank-8 module.
    pub fn exterior_apply(&self, x: &Multivector<R>) -> Multivector<R> {
        let images: Vec<Multivector<R>> = (0..self.cols)
            .map(|j| Multivector::vector(&self.col(j)))
            .collect();
        let mut out = Multivector::zero(x.degree());
        for (s, c) in x.terms() {
            let w =
                Multivector::wedge_all(s.indices().map(|j| &images[j])).expect("degree in range");
            out = out.add(&w.scale(c));
        }
        out
    }

    /// Matrix of the induced map on `⋀^k` in the bases [`Subset::all`].
    pub fn exterior_power(&self, k: usize) -> Self {
        let basis = Subset::all(k);
        let cols: Vec<Vec<R>> = basis
            .iter()
            .map(|&t| self.exterior_apply(&Multivector::basis(t)).to_dense())
            .collect();
        Matrix::from_cols(&cols)
    }
}

impl<S: Scalar> Matrix<S> {
    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let (mut m, pivots) = if S::fraction_free() {
            bareiss_echelon(self)
        } else {
            gauss_echelon(self)
        };
        for (r, &c) in pivots.iter().enumerate() {
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..r {
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if S::fraction_free() {
            bareiss_echelon(self).1.len()
        } else {
            gauss_echelon(self).1.len()
        }
    }

    /// Basis of `{v : Mv = 0}`, returned in reduced echelon form.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        echelon_basis(self.kernel_free_basis())
    }

    /// Kernel basis with one vector per non-pivot column `f`, having entry 1
    /// at `f` and 0 at the other non-pivot columns.
    pub fn kernel_free_basis(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![S::zero(); self.cols];
            v[f] = S::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r.get(row, f).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if S::fraction_free() {
            let (m, pivots, scale) = bareiss_forward(self);
            if pivots.len() < self.rows {
                return S::zero();
            }
            return m
                .get(self.rows - 1, self.cols - 1)
                .div(&scale)
                .expect("row scalings are nonzero");
        }
        let (m, pivots, sign) = gauss_forward(self);
        if pivots.len() < self.rows {
            return S::zero();
        }
        let mut d = if sign < 0 { S::one().neg() } else { S::one() };
        for i in 0..self.rows {
            d = d.mul(m.get(i, i));
        }
        d
    }

    pub fn inverse(&self) -> Option<Matrix<S>> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Splits every row into rational constraints: one row per monomial and
    /// per real/imaginary part, monomials in decreasing graded-lex order.
    pub fn rational_constraints(&self) -> Matrix<BigRational> {
        let mut out: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..self.rows {
            out.extend(rational_rows(self.row(i)));
        }
        if out.is_empty() {
            return Matrix::zero(0, self.cols);
        }
        Matrix::from_rows(out)
    }
}

/// Rational constraints equivalent to `row · v = 0` for rational `v`.
pub(crate) fn rational_rows<S: Scalar>(row: &[S]) -> Vec<Vec<BigRational>> {
    let mut row = row.to_vec();
    S::clear_row_denominators(&mut row);
    let zero = <BigRational as Ring>::zero();
    let mut parts: BTreeMap<Monomial, (Vec<BigRational>, Vec<BigRational>)> = BTreeMap::new();
    for (j, x) in row.iter().enumerate() {
        for (m, re, im) in x.rational_parts() {
            let entry = parts
                .entry(m)
                .or_insert_with(|| (vec![zero.clone(); row.len()], vec![zero.clone(); row.len()]));
            entry.0[j] = re;
            entry.1[j] = im;
        }
    }
    let mut out = Vec::new();
    for (_, (re, im)) in parts.into_iter().rev() {
        for r in [re, im] {
            if r.iter().any(|x| !Ring::is_zero(x)) {
                out.push(r);
            }
        }
    }
    out
}

/// Reduced echelon basis of the row span of `vectors`.
pub(crate) fn echelon_basis<S: Scalar>(vectors: Vec<Vec<S>>) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return vectors;
    }
    let (r, pivots) = Matrix::from_rows(vectors).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// `ℚ`-basis of the rational vectors in the kernel of `m`, in reduced
/// echelon form.
pub fn rational_kernel<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<BigRational>> {
    let q = m.rational_constraints();
    if q.rows() == 0 {
        return Matrix::<BigRational>::identity(m.cols()).to_rows();
    }
    q.kernel()
}

fn gauss_forward<S: Scalar>(a: &Matrix<S>) -> (Matrix<S>, Vec<usize>, i32) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            swap_rows(&mut m, p, r);
            sign = -sign;
        }
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        for i in r + 1..m.rows {
            let f = m.get(i, c).mul(&inv);
            if f.is_zero() {
                continue;
            }
            m.set(i, c, S::zero());
            for j in c + 1..m.cols {
                let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots, sign)
}

fn gauss_echelon<S: Scalar>(a: &Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let (m, p, _) = gauss_forward(a);
    (m, p)
}

fn swap_rows<R: Ring>(m: &mut Matrix<R>, a: usize, b: usize) {
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

/// Fraction-free forward elimination on the polynomial numerators of the
/// rows; entries of the result are minors of the cleared input. Also returns
/// the product of the row scalings, signed by the row permutation.
fn bareiss_forward<S: Scalar>(a: &Matrix<S>) -> (Matrix<S>, Vec<usize>, S) {
    let mut rows: Vec<Vec<S>> = a.to_rows();
    let mut scale = S::one();
    for row in rows.iter_mut() {
        scale = scale.mul(&S::clear_row_denominators(row));
    }
    let mut m: Matrix<Poly> = Matrix::from_fn(a.rows, a.cols, |i, j| {
        let f = rows[i][j].to_func();
        debug_assert!(f.is_polynomial());
        f.numer().clone()
    });
    let mut pivots = Vec::new();
    let mut sign = 1;
    let mut prev = Poly::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // Prefer the sparsest pivot to limit swell.
        let Some(p) = (r..m.rows)
            .filter(|&i| !m.get(i, c).is_zero())
            .min_by_key(|&i| m.get(i, c).len())
        else {
            continue;
        };
        if p != r {
            swap_rows(&mut m, p, r);
            sign = -sign;
        }
        let piv = m.get(r, c).clone();
        for i in r + 1..m.rows {
            let f = m.get(i, c).clone();
            for j in c + 1..m.cols {
                let v = piv.mul(m.get(i, j)).sub(&f.mul(m.get(r, j)));
                let v = v.div_exact(&prev).expect("Bareiss division is exact");
                m.set(i, j, v);
            }
            m.set(i, c, Poly::zero());
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let out = m.map(|p| {
        S::from_func(&RatFunc::from_poly(p.clone())).expect("polynomial lies in the domain")
    });
    let scale = if sign < 0 { scale.neg() } else { scale };
    (out, pivots, scale)
}

fn bareiss_echelon<S: Scalar>(a: &Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let (m, p, _) = bareiss_forward(a);
    (m, p)
}

/// A linear map between graded pieces, with its matrix in the subset bases.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap<S> {
    pub source_degree: usize,
    pub target_degree: usize,
    pub matrix: Matrix<S>,
}

impl<S: Scalar> LinearMap<S> {
    /// Builds the map from its action on basis elements.
    pub fn from_fn(
        source_degree: usize,
        target_degree: usize,
        f: impl Fn(&Multivector<S>) -> Multivector<S>,
    ) -> Self {
        let cols: Vec<Vec<S>> = Subset::all(source_degree)
            .into_iter()
            .map(|s| {
                let y = f(&Multivector::basis(s));
                assert_eq!(y.degree(), target_degree, "image has the wrong degree");
                y.to_dense()
            })
            .collect();
        LinearMap {
            source_degree,
            target_degree,
            matrix: Matrix::from_cols(&cols),
        }
    }

    pub fn apply(&self, x: &Multivector<S>) -> Multivector<S> {
        assert_eq!(x.degree(), self.source_degree);
        Multivector::from_dense(self.target_degree, &self.matrix.apply(&x.to_dense()))
    }

    pub fn compose(&self, inner: &LinearMap<S>) -> LinearMap<S> {
        assert_eq!(inner.target_degree, self.source_degree);
        LinearMap {
            source_degree: inner.source_degree,
            target_degree: self.target_degree,
            matrix: self.matrix.mul(&inner.matrix),
        }
    }

    pub fn kernel(&self) -> Vec<Multivector<S>> {
        self.matrix
            .kernel()
            .into_iter()
            .map(|v| Multivector::from_dense(self.source_degree, &v))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
