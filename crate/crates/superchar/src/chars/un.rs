//! The `U_n` formula on set-partition labels.

use super::{orient, q_pow, CharValue, ZeroReason, ORIENTATION};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::reps::{RepStyle, SupercharLabel, SuperclassLabel};

/// `log_q chi^lambda(1) = sum over nonzero lambda_ij of (j - i - 1)`.
pub fn un_degree_exponent(lambda: &Matrix) -> usize {
    lambda.support().iter().map(|&(i, j)| j - i - 1).sum()
}

/// `chi^lambda(u)` for rook placements `lambda` and `x = u - 1` on the chain.
///
/// Zero when some nonzero `u_jk` has a nonzero `lambda_ik` above it (`i < j`) or a
/// nonzero `lambda_jl` to its East (`l > k`); otherwise
/// `chi^lambda(1) theta(lambda(u - 1)) / q^{#{i<j<k<l : u_jk, lambda_il != 0}}`.
pub fn un_value(f: &Field, lambda: &Matrix, x: &Matrix) -> Result<CharValue> {
    let n = lambda.n();
    if x.n() != n {
        return Err(Error::Invalid("label sizes differ".into()));
    }
    let lam = lambda.entries();
    let us = x.entries();
    for &((j, k), _) in &us {
        if lam.iter().any(|&((i, l), _)| l == k && i < j) {
            return Ok(CharValue::zero(f.p(), ZeroReason::ColumnAbove));
        }
        if lam.iter().any(|&((i, l), _)| i == j && l > k) {
            return Ok(CharValue::zero(f.p(), ZeroReason::RowEast));
        }
    }
    let nested = us.iter().flat_map(|&((j, k), _)| lam.iter().filter(move |&&((i, l), _)| i < j && k < l)).count();
    let lam_u = f.sum(lam.iter().map(|&((i, j), v)| f.mul(v, x.get(i, j))));
    let scale = q_pow(f.q(), un_degree_exponent(lambda) as i64 - nested as i64);
    Ok(CharValue::nonzero(orient(f.theta(lam_u).scale(&scale), ORIENTATION)))
}

/// `chi^lambda(u)` for `un_canonical` labels on the same chain.
pub fn un_char_value(f: &Field, lambda: &SupercharLabel, u: &SuperclassLabel) -> Result<CharValue> {
    if lambda.style != RepStyle::UnCanonical || u.style != RepStyle::UnCanonical {
        return Err(Error::Style { style: "un_canonical".into(), reason: "both labels must be un_canonical".into() });
    }
    if lambda.poset != u.poset || !lambda.poset.is_chain() {
        return Err(Error::Style { style: "un_canonical".into(), reason: "labels must share a chain poset".into() });
    }
    un_value(f, lambda.matrix(), u.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldScalar as S;
    use crate::oracle::Oracle;
    use crate::poset::PatternPoset;
    use crate::reps::{enumerate_labels, LabelKind};
    use crate::CycNumber;

    #[test]
    fn documented_values() {
        let f = Field::new(2, 1).unwrap();
        let lam = Matrix::from_entries(4, &[((1, 4), S(1))]);
        let one = un_value(&f, &lam, &Matrix::zeros(4)).unwrap();
        assert_eq!(one.value, CycNumber::from_int(2, 4));
        let v = un_value(&f, &lam, &Matrix::from_entries(4, &[((2, 3), S(1))])).unwrap();
        assert_eq!(v.value, CycNumber::from_int(2, 2));
        let f5 = Field::new(5, 1).unwrap();
        let lin = Matrix::from_entries(3, &[((1, 2), S(3))]);
        let u = Matrix::from_entries(3, &[((1, 2), S(4))]);
        let expect = orient(f5.theta(S(2)), ORIENTATION);
        assert_eq!(un_value(&f5, &lin, &u).unwrap().value, expect);
    }

    /// The literal reading "lambda_ij = 0 for all i < j" of the vanishing rule is refuted by this pair.
    #[test]
    fn vanishing_rule_reads_column_k() {
        let f = Field::new(2, 1).unwrap();
        let p = PatternPoset::chain(3);
        let lam = Matrix::from_entries(3, &[((1, 3), S(1))]);
        let x = Matrix::from_entries(3, &[((2, 3), S(1))]);
        assert!(Oracle::new(&f, &p).definitional_char(&lam, &x).unwrap().is_zero());
        assert_eq!(un_value(&f, &lam, &x).unwrap().zero_reason, Some(ZeroReason::ColumnAbove));
    }

    #[test]
    fn matches_oracle_on_chains() {
        for (q, max_n) in [(2u32, 5usize), (3, 4)] {
            let f = Field::new(q, 1).unwrap();
            for n in 1..=max_n {
                let p = PatternPoset::chain(n);
                let oracle = Oracle::new(&f, &p);
                let chars = enumerate_labels(&f, &p, RepStyle::UnCanonical, LabelKind::Character).unwrap();
                let classes = enumerate_labels(&f, &p, RepStyle::UnCanonical, LabelKind::Class).unwrap();
                for lam in &chars {
                    let truth = oracle.definitional_char_many(lam, &classes).unwrap();
                    for (x, t) in classes.iter().zip(&truth) {
                        assert_eq!(&un_value(&f, lam, x).unwrap().value, t, "q={q} n={n}\n{lam}\n{x}");
                    }
                }
            }
        }
    }
}
