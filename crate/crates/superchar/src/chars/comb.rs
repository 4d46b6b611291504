//! Character values on comb representatives of `U_(m)`.
//!
//! After splitting `lambda` into components and `u - 1` into columns, each factor has
//! `u - 1` supported in `{(1,k), (j,k)}` and `lambda` a single component whose rows all
//! contain the component's last column `L`, plus at most one tine per row. The system
//! `Mx = -a` then has one private unknown per tine to the East of `k` and the shared
//! unknown `x_L`, which is solved by back-substitution.

use super::factor::{components, lambda_at_column};
use super::{orient, q_pow, CharValue, ZeroReason, ORIENTATION};
use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::matrix::Matrix;
use crate::poset::PatternPoset;
use crate::reps::{is_normal_form, stats, LabelKind, RepStyle, SupercharLabel, SuperclassLabel};

/// `i <_P j` in `P_(m)`.
pub(crate) fn lt_m(m: usize, i: usize, j: usize) -> bool {
    i < j && (i > 1 || j > m)
}

/// `log_q chi^lambda(1)` for a comb label: each row counts the `j` strictly between it and its
/// leftmost entry, except row 1 when `wt(lambda) = 0` and `S_lambda` has more than one vertex.
pub fn comb_degree_exponent(lambda: &Matrix, m: usize) -> usize {
    let n = lambda.n();
    let st = stats(lambda);
    let skip_first = st.wt == 0 && st.component.len() > 1;
    (1..=n)
        .filter(|&i| !(i == 1 && skip_first))
        .filter_map(|i| lambda.row_support(i).first().map(|&k| (i, k)))
        .map(|(i, k)| ((i + 1)..k).filter(|&j| lt_m(m, i, j) && lt_m(m, j, k)).count())
        .sum()
}

/// Which reading of the leading factor of the single-component degree formula to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleReading {
    /// `q^{l_s - m - 2}` as printed.
    Literal,
    /// `q^{l_s - max(m,1) - 1}`, the count of `j` with `1 <_P j <_P l_s`.
    Corrected,
}

/// `log_q chi^lambda(1)` of a single comb component by the column/tine product formula.
///
/// Columns `l_1 < ... < l_s`, tine rows `i_1 > ... > i_{s-1}` with `lambda_{i_d l_d} != 0`;
/// the leading factor depends on whether a spine row lies below `i_1`.
pub fn triangle_degree_exponent(component: &Matrix, m: usize, reading: TriangleReading) -> i64 {
    let entries = component.support();
    let mut cols: Vec<usize> = entries.iter().map(|p| p.1).collect();
    cols.sort_unstable();
    cols.dedup();
    let Some(&ls) = cols.last() else { return 0 };
    let tines: Vec<(usize, usize)> =
        cols[..cols.len() - 1].iter().map(|&l| (entries.iter().find(|p| p.1 == l).unwrap().0, l)).collect();
    let product: i64 = tines.iter().map(|&(i, l)| l as i64 - i as i64 - 1).sum();
    let top = entries.iter().map(|p| p.0).min().unwrap();
    if top > 1 {
        // A component off row 1 is a single arc.
        return ls as i64 - top as i64 - 1 + product;
    }
    let i1 = tines.first().map_or(1, |t| t.0);
    let below = component.col_support(ls).into_iter().filter(|&i| i > i1).max();
    let lead = match (below, reading) {
        (Some(i), _) => ls as i64 - i as i64 - 1,
        (None, TriangleReading::Literal) => ls as i64 - m as i64 - 2,
        (None, TriangleReading::Corrected) => ls as i64 - m.max(1) as i64 - 1,
    };
    lead + product
}

/// One column factor: `theta` argument and rank, or the reason it vanishes.
fn column_factor(
    f: &Field,
    m: usize,
    lam: &Matrix,
    col: &[(usize, FieldScalar)],
    k: usize,
    is_s: bool,
) -> std::result::Result<(FieldScalar, usize), ZeroReason> {
    let two = col.len() == 2;
    let tag = match (two, is_s) {
        (false, false) => ZeroReason::Cc1,
        (true, false) => ZeroReason::Cc2,
        (false, true) => ZeroReason::Cc3,
        (true, true) => ZeroReason::Cc4,
    };
    let n = lam.n();
    let diag = f.sum(col.iter().map(|&(r, v)| f.mul(v, lam.get(r, k))));
    let Some(big_l) = (1..=n).rev().find(|&l| !lam.col_support(l).is_empty()) else {
        return Ok((diag, 0));
    };
    let j_star = col.iter().map(|p| p.0).find(|&r| r != 1);
    let tine = |i: usize| lam.row_support(i).into_iter().find(|&l| l != big_l);

    // Rows whose equation `sum_{l>k} lambda_il x_l = -lambda_ik` is present.
    let eq_rows: Vec<usize> = match j_star {
        Some(j) => (1..j).filter(|&i| lt_m(m, i, j) && !lam.row_support(i).is_empty()).collect(),
        None => Vec::new(),
    };
    let (mut tr, mut o) = (Vec::new(), Vec::new());
    for &i in &eq_rows {
        if big_l == k {
            if !lam.get(i, k).is_zero() {
                return Err(tag);
            }
            continue;
        }
        match tine(i) {
            Some(t) if t > k => tr.push((i, t)),
            _ => o.push(i),
        }
    }
    let rhs_rows: Vec<usize> = o.iter().copied().filter(|&i| !lam.get(i, k).is_zero()).collect();
    let x_l = match rhs_rows.as_slice() {
        [] => FieldScalar::ZERO,
        [i] if o.len() == 1 => f.neg(f.div(lam.get(*i, k), lam.get(*i, big_l))),
        _ => return Err(tag),
    };

    let b = |l: usize| f.sum(col.iter().map(|&(r, v)| f.mul(v, lam.get(r, l))));
    let mut c_set: Vec<usize> = Vec::new();
    if !tr.is_empty() || !o.is_empty() {
        c_set.push(big_l);
        c_set.extend(tr.iter().map(|p| p.1));
    }
    if ((k + 1)..=n).any(|l| !c_set.contains(&l) && !b(l).is_zero()) {
        return Err(tag);
    }
    // Coefficient of x_L in x . b after substituting each private tine unknown.
    let along = tr.iter().fold(if c_set.is_empty() { FieldScalar::ZERO } else { b(big_l) }, |acc, &(i, t)| {
        f.add(acc, f.mul(b(t), f.neg(f.div(lam.get(i, big_l), lam.get(i, t)))))
    });
    if o.is_empty() && !c_set.is_empty() && !along.is_zero() {
        return Err(if tag == ZeroReason::Cc4 { ZeroReason::CombSpecial } else { tag });
    }
    let xb = if o.is_empty() { FieldScalar::ZERO } else { f.mul(x_l, along) };
    Ok((f.add(xb, diag), tr.len() + o.len().min(1)))
}

/// `chi^lambda(u)` for comb labels on `P_(m)`, with `u` given through `x = u - 1`.
pub fn comb_value(f: &Field, m: usize, poset: &PatternPoset, lambda: &Matrix, x: &Matrix) -> Result<CharValue> {
    if !is_normal_form(lambda, poset, RepStyle::Comb, LabelKind::Character)? {
        return Err(Error::Style {
            style: "comb".into(),
            reason: "character label is not a comb representative".into(),
        });
    }
    if !is_normal_form(x, poset, RepStyle::Comb, LabelKind::Class)? {
        return Err(Error::Style { style: "comb".into(), reason: "class label is not a comb representative".into() });
    }
    let n = lambda.n();
    let mut arg = FieldScalar::ZERO;
    let mut rank = 0usize;
    for t in components(lambda) {
        let is_s = !t.row_support(1).is_empty();
        for k in 2..=n {
            let col: Vec<(usize, FieldScalar)> = x.col_support(k).into_iter().map(|r| (r, x.get(r, k))).collect();
            if col.is_empty() {
                continue;
            }
            let lam = lambda_at_column(&t, x, k);
            match column_factor(f, m, &lam, &col, k, is_s) {
                Ok((a, r)) => {
                    arg = f.add(arg, a);
                    rank += r;
                }
                Err(reason) => return Ok(CharValue::zero(f.p(), reason)),
            }
        }
    }
    let scale = q_pow(f.q(), comb_degree_exponent(lambda, m) as i64 - rank as i64);
    Ok(CharValue::nonzero(orient(f.theta(arg).scale(&scale), ORIENTATION)))
}

pub fn comb_char_value(f: &Field, lambda: &SupercharLabel, u: &SuperclassLabel) -> Result<CharValue> {
    if lambda.style != RepStyle::Comb || u.style != RepStyle::Comb {
        return Err(Error::Style { style: "comb".into(), reason: "both labels must be comb".into() });
    }
    if lambda.poset != u.poset {
        return Err(Error::Invalid("labels live on different posets".into()));
    }
    let m = crate::reps::style_m(&lambda.poset, RepStyle::Comb)?;
    comb_value(f, m, &lambda.poset, lambda.matrix(), u.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::general::left_orbit_exponent;
    use crate::field::FieldScalar as S;
    use crate::oracle::Oracle;
    use crate::reps::enumerate_labels;

    #[test]
    fn degrees_match_orbit_sizes() {
        for (q, n) in [(2u32, 5usize), (3, 4)] {
            let f = Field::new(q, 1).unwrap();
            for m in 0..=n {
                let p = PatternPoset::interpolating(n, m).unwrap();
                for lam in enumerate_labels(&f, &p, RepStyle::Comb, LabelKind::Character).unwrap() {
                    let rank = left_orbit_exponent(&f, &p, &lam);
                    assert_eq!(comb_degree_exponent(&lam, m), rank, "m={m}\n{lam}");
                    let by_triangle: i64 = components(&lam)
                        .iter()
                        .map(|t| triangle_degree_exponent(t, m, TriangleReading::Corrected))
                        .sum();
                    assert_eq!(by_triangle, rank as i64, "m={m}\n{lam}");
                }
            }
        }
    }

    #[test]
    fn literal_leading_factor_is_off_by_one() {
        let lam = Matrix::from_entries(5, &[((1, 5), S(1))]);
        assert_eq!(triangle_degree_exponent(&lam, 2, TriangleReading::Corrected), 2);
        assert_eq!(triangle_degree_exponent(&lam, 2, TriangleReading::Literal), 1);
    }

    #[test]
    fn matches_oracle() {
        for (q, n) in [(2u32, 4usize), (3, 4), (2, 5)] {
            let f = Field::new(q, 1).unwrap();
            for m in 0..=n {
                let p = PatternPoset::interpolating(n, m).unwrap();
                let oracle = Oracle::new(&f, &p);
                let chars = enumerate_labels(&f, &p, RepStyle::Comb, LabelKind::Character).unwrap();
                let classes = enumerate_labels(&f, &p, RepStyle::Comb, LabelKind::Class).unwrap();
                for lam in &chars {
                    let truth = oracle.definitional_char_many(lam, &classes).unwrap();
                    for (x, t) in classes.iter().zip(&truth) {
                        let v = comb_value(&f, m, &p, lam, x).unwrap();
                        assert_eq!(&v.value, t, "q={q} n={n} m={m}\n{lam}\n{x}");
                        assert_eq!(v.zero_reason.is_some(), t.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_comb_labels() {
        let f = Field::new(2, 1).unwrap();
        let p = PatternPoset::interpolating(4, 2).unwrap();
        let bad = Matrix::from_entries(4, &[((1, 2), S(1))]);
        assert!(comb_value(&f, 2, &p, &bad, &Matrix::zeros(4)).is_err());
    }
}
