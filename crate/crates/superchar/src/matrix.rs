//! Square matrices over F_q, unipotent group elements and dual functionals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::poset::PatternPoset;

/// An `n x n` matrix over F_q with 1-based accessors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    data: Vec<FieldScalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![FieldScalar::ZERO; n * n] }
    }

    pub fn from_entries(n: usize, entries: &[((usize, usize), FieldScalar)]) -> Self {
        let mut a = Self::zeros(n);
        for &((i, j), v) in entries {
            a.set(i, j, v);
        }
        a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldScalar {
        self.data[(i - 1) * self.n + (j - 1)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldScalar) {
        self.data[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> Vec<((usize, usize), FieldScalar)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push(((i, j), v));
                }
            }
        }
        out
    }

    pub fn support(&self) -> Vec<(usize, usize)> {
        self.entries().into_iter().map(|(p, _)| p).collect()
    }

    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (1..=self.n).filter(|&j| !self.get(i, j).is_zero()).collect()
    }

    pub fn col_support(&self, j: usize) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.get(i, j).is_zero()).collect()
    }

    pub fn fits(&self, poset: &PatternPoset) -> bool {
        self.n == poset.n() && self.support().iter().all(|&(i, j)| poset.lt(i, j))
    }

    /// Zeroes every entry outside `J`.
    pub fn masked(&self, poset: &PatternPoset) -> Self {
        let mut a = self.clone();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if !poset.lt(i, j) {
                    a.set(i, j, FieldScalar::ZERO);
                }
            }
        }
        a
    }

    pub fn add(&self, f: &Field, other: &Self) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { n: self.n, data }
    }

    pub fn neg(&self, f: &Field) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn mul(&self, f: &Field, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 1..=n {
            for k in 1..=n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    /// `row i += t * row j`.
    pub fn add_row(&mut self, f: &Field, i: usize, j: usize, t: FieldScalar) {
        for c in 1..=self.n {
            let v = self.get(j, c);
            if !v.is_zero() {
                let cur = self.get(i, c);
                self.set(i, c, f.add(cur, f.mul(t, v)));
            }
        }
    }

    /// `col l += t * col k`.
    pub fn add_col(&mut self, f: &Field, l: usize, k: usize, t: FieldScalar) {
        for r in 1..=self.n {
            let v = self.get(r, k);
            if !v.is_zero() {
                let cur = self.get(r, l);
                self.set(r, l, f.add(cur, f.mul(t, v)));
            }
        }
    }

    /// Sparse JSON form with 1-based indices and serialized scalars.
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            entries: self.entries().into_iter().map(|((i, j), v)| (i, j, v.0.to_string())).collect(),
        }
    }

    pub fn from_json(f: &Field, m: &MatrixJson) -> Result<Self> {
        let mut a = Self::zeros(m.n);
        for (i, j, v) in &m.entries {
            if *i == 0 || *j == 0 || *i > m.n || *j > m.n {
                return Err(Error::Parse(format!("index ({i},{j}) outside 1..={}", m.n)));
            }
            let raw = v.parse::<u32>().map_err(|_| Error::Parse(format!("bad scalar {v:?}")))?;
            a.set(*i, *j, f.element(raw)?);
        }
        Ok(a)
    }

    /// Parses whitespace-separated rows of serialized scalars, one row per line.
    pub fn parse_text(f: &Field, text: &str) -> Result<Self> {
        let rows: Vec<Vec<&str>> =
            text.lines().map(|l| l.split_whitespace().collect::<Vec<_>>()).filter(|r| !r.is_empty()).collect();
        let n = rows.len();
        let mut a = Self::zeros(n);
        for (ri, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!("line {}: expected {n} entries, found {}", ri + 1, row.len())));
            }
            for (ci, tok) in row.iter().enumerate() {
                let raw = tok
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("line {}, column {}: bad scalar {tok:?}", ri + 1, ci + 1)))?;
                a.set(ri + 1, ci + 1, f.element(raw)?);
            }
        }
        Ok(a)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            let row: Vec<String> = (1..=self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<(usize, usize, String)>,
}

/// `u` in `U_P`, stored as `u - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnipotentElement {
    offset: Matrix,
}

impl UnipotentElement {
    pub fn identity(n: usize) -> Self {
        UnipotentElement { offset: Matrix::zeros(n) }
    }

    /// Builds `1 + offset`; the support must lie in `J`.
    pub fn new(poset: &PatternPoset, offset: Matrix) -> Result<Self> {
        if !offset.fits(poset) {
            return Err(Error::Invalid("entries outside the allowed positions".into()));
        }
        Ok(UnipotentElement { offset })
    }

    pub fn from_offset_unchecked(offset: Matrix) -> Self {
        UnipotentElement { offset }
    }

    pub fn offset(&self) -> &Matrix {
        &self.offset
    }

    pub fn n(&self) -> usize {
        self.offset.n()
    }

    pub fn is_identity(&self) -> bool {
        self.offset.is_zero()
    }

    pub fn mul(&self, f: &Field, other: &Self) -> Self {
        let xy = self.offset.mul(f, &other.offset);
        UnipotentElement { offset: self.offset.add(f, &other.offset).add(f, &xy) }
    }

    pub fn inv(&self, f: &Field) -> Self {
        // (1 + X)^{-1} = sum_k (-X)^k, and X is nilpotent of index at most n.
        let neg = self.offset.neg(f);
        let mut acc = Matrix::zeros(self.n());
        let mut pow = neg.clone();
        while !pow.is_zero() {
            acc = acc.add(f, &pow);
            pow = pow.mul(f, &neg);
        }
        UnipotentElement { offset: acc }
    }
}

/// A linear functional on `n_P`, identified with the matrix `lambda_ij = lambda(e_ij)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualFunctional {
    values: Matrix,
}

impl DualFunctional {
    pub fn zero(n: usize) -> Self {
        DualFunctional { values: Matrix::zeros(n) }
    }

    pub fn new(poset: &PatternPoset, values: Matrix) -> Result<Self> {
        if !values.fits(poset) {
            return Err(Error::Invalid("entries outside the allowed positions".into()));
        }
        Ok(DualFunctional { values })
    }

    pub fn from_matrix_unchecked(values: Matrix) -> Self {
        DualFunctional { values }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.n()
    }

    /// `lambda(u - 1) = sum lambda_ij u_ij`.
    pub fn eval(&self, f: &Field, u: &UnipotentElement) -> FieldScalar {
        let mut acc = FieldScalar::ZERO;
        for ((i, j), v) in self.values.entries() {
            let w = u.offset().get(i, j);
            if !w.is_zero() {
                acc = f.add(acc, f.mul(v, w));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: u32) -> FieldScalar {
        FieldScalar(v)
    }

    #[test]
    fn products_and_inverses() {
        let f = Field::new(2, 1).unwrap();
        let p = PatternPoset::chain(3);
        let a = UnipotentElement::new(&p, Matrix::from_entries(3, &[((1, 2), s(1))])).unwrap();
        let b = UnipotentElement::new(&p, Matrix::from_entries(3, &[((2, 3), s(1))])).unwrap();
        let ab = a.mul(&f, &b);
        assert_eq!(ab.offset().support(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(a.mul(&f, &UnipotentElement::identity(3)), a);
        let f5 = Field::new(5, 1).unwrap();
        let c = UnipotentElement::new(&p, Matrix::from_entries(3, &[((1, 2), s(1))])).unwrap();
        assert_eq!(c.inv(&f5).offset().get(1, 2), s(4));
        let d = UnipotentElement::new(&p, Matrix::from_entries(3, &[((1, 2), s(2)), ((2, 3), s(3)), ((1, 3), s(1))]))
            .unwrap();
        assert!(d.mul(&f5, &d.inv(&f5)).is_identity());
    }

    #[test]
    fn functional_evaluation() {
        let f = Field::new(3, 1).unwrap();
        let p = PatternPoset::chain(3);
        let u = UnipotentElement::new(&p, Matrix::from_entries(3, &[((1, 3), s(2))])).unwrap();
        assert_eq!(DualFunctional::zero(3).eval(&f, &u), FieldScalar::ZERO);
        let l = DualFunctional::new(&p, Matrix::from_entries(3, &[((1, 3), s(1))])).unwrap();
        assert_eq!(l.eval(&f, &u), s(2));
        assert!(DualFunctional::new(&PatternPoset::interpolating(3, 3).unwrap(), l.matrix().clone()).is_err());
    }

    #[test]
    fn text_and_json_round_trip() {
        let f = Field::new(3, 1).unwrap();
        let a = Matrix::from_entries(3, &[((1, 2), s(2)), ((2, 3), s(1))]);
        assert_eq!(Matrix::parse_text(&f, &a.to_string()).unwrap(), a);
        assert_eq!(Matrix::from_json(&f, &a.to_json()).unwrap(), a);
        assert!(Matrix::parse_text(&f, "0 1\n0").is_err());
    }
}
