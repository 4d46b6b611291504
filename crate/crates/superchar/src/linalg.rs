//! Gaussian elimination over F_q: rank, one particular solution, null-space basis.

use crate::field::{Field, FieldScalar};

/// A dense `rows x cols` matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FieldScalar>,
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: DenseMatrix,
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![FieldScalar::ZERO; rows * cols] }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldScalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul_vec(&self, f: &Field, x: &[FieldScalar]) -> Vec<FieldScalar> {
        (0..self.rows).map(|r| f.sum((0..self.cols).map(|c| f.mul(self.get(r, c), x[c])))).collect()
    }

    /// Row reduction with the first nonzero entry of each column as pivot.
    pub fn echelon(&self, f: &Field) -> Echelon {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(pr) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..a.cols {
                    a.data.swap(pr * a.cols + c, row * a.cols + c);
                }
            }
            let inv = f.inv(a.get(row, col)).expect("pivot is nonzero");
            for c in 0..a.cols {
                let v = a.get(row, c);
                a.set(row, c, f.mul(v, inv));
            }
            for r in 0..a.rows {
                let factor = a.get(r, col);
                if r == row || factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                for c in 0..a.cols {
                    let v = a.get(row, c);
                    if !v.is_zero() {
                        let cur = a.get(r, c);
                        a.set(r, c, f.add(cur, f.mul(nf, v)));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.echelon(f).pivots.len()
    }

    /// One solution of `self * x = rhs`, free variables set to zero.
    pub fn solve(&self, f: &Field, rhs: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = DenseMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, rhs[r]);
        }
        let ech = aug.echelon(f);
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldScalar::ZERO; self.cols];
        for (r, &c) in ech.pivots.iter().enumerate() {
            x[c] = ech.reduced.get(r, self.cols);
        }
        Some(x)
    }

    /// A basis of `{x : self * x = 0}`, one vector per free column.
    pub fn null_space(&self, f: &Field) -> Vec<Vec<FieldScalar>> {
        let ech = self.echelon(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldScalar::ZERO; self.cols];
            v[free] = FieldScalar::ONE;
            for (r, &c) in ech.pivots.iter().enumerate() {
                v[c] = f.neg(ech.reduced.get(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

pub fn dot(f: &Field, a: &[FieldScalar], b: &[FieldScalar]) -> FieldScalar {
    f.sum(a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm(f: &Field, rows: usize, cols: usize, v: &[u32]) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(rows, cols);
        for (i, &x) in v.iter().enumerate() {
            a.data[i] = f.element(x).unwrap();
        }
        a
    }

    #[test]
    fn rank_solve_null_space() {
        let f = Field::new(3, 1).unwrap();
        let a = dm(&f, 2, 3, &[1, 2, 0, 2, 1, 0]);
        assert_eq!(a.rank(&f), 1);
        let ns = a.null_space(&f);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(&f, v).iter().all(|x| x.is_zero()));
        }
        let rhs = [FieldScalar(1), FieldScalar(2)];
        let x = a.solve(&f, &rhs).unwrap();
        assert_eq!(a.mul_vec(&f, &x), rhs.to_vec());
        assert!(a.solve(&f, &[FieldScalar(1), FieldScalar(1)]).is_none());
    }

    #[test]
    fn extension_field_rank() {
        let f = Field::new(2, 2).unwrap();
        let g = FieldScalar(2);
        let g2 = f.mul(g, g);
        let mut a = DenseMatrix::zeros(2, 2);
        a.set(0, 0, FieldScalar::ONE);
        a.set(0, 1, g);
        a.set(1, 0, g);
        a.set(1, 1, g2);
        assert_eq!(a.rank(&f), 1);
        assert_eq!(DenseMatrix::zeros(3, 2).rank(&f), 0);
    }
}
