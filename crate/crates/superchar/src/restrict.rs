//! Restriction of supercharacters along `U_n = U_(0) ⊃ U_(1) ⊃ ... ⊃ U_(n) ≅ U_{n-1}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::chars::general::left_orbit_exponent;
use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::matrix::Matrix;
use crate::poset::PatternPoset;
use crate::reps::{canonical_form, is_normal_form, render_arcs, stats, LabelKind, RepStyle};

/// Which copy of `U_{n-1}` inside `U_n` is restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Embedding {
    /// Row and column 1 removed, indices shifted down by one.
    FirstRow,
    /// Row and column `n` removed.
    LastColumn,
}

impl Embedding {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "first-row" => Ok(Embedding::FirstRow),
            "last-column" => Ok(Embedding::LastColumn),
            _ => Err(Error::Parse(format!("unknown embedding {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Embedding::FirstRow => "first-row",
            Embedding::LastColumn => "last-column",
        }
    }
}

/// A nonnegative integer combination of supercharacters of one pattern group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub poset: PatternPoset,
    pub style: RepStyle,
    terms: BTreeMap<Matrix, u64>,
}

impl Decomposition {
    pub fn new(poset: PatternPoset, style: RepStyle) -> Self {
        Decomposition { poset, style, terms: BTreeMap::new() }
    }

    /// Adds `coeff * chi^label` after bringing `label` to normal form.
    pub fn add(&mut self, f: &Field, label: &Matrix, coeff: u64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let key = canonical_form(f, label, &self.poset, self.style, LabelKind::Character)?;
        *self.terms.entry(key).or_insert(0) += coeff;
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matrix, u64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn coefficient(&self, label: &Matrix) -> u64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum c_mu chi^mu(1)`.
    pub fn degree(&self, f: &Field) -> BigInt {
        self.terms
            .iter()
            .map(|(mu, &c)| BigInt::from(c) * BigInt::from(f.q()).pow(left_orbit_exponent(f, &self.poset, mu) as u32))
            .sum()
    }

    /// Terms as `(coefficient, arc notation)`, sorted by label.
    pub fn render(&self, f: &Field) -> Vec<(u64, String)> {
        self.terms.iter().map(|(k, &c)| (c, render_arcs(f, k))).collect()
    }

    /// Coefficients as exact rationals keyed by label, for comparison with inner products.
    pub fn as_rationals(&self) -> BTreeMap<Matrix, BigRational> {
        self.terms.iter().map(|(k, &c)| (k.clone(), BigRational::from_integer(BigInt::from(c)))).collect()
    }
}

/// The normal form of `U_(m) lambda U_(m)` for a normal-form `lambda` on `P_(m-1)`.
pub fn lambda_down(lambda: &Matrix, m: usize, style: RepStyle) -> Result<Matrix> {
    let st = stats(lambda);
    if st.lc != m || m == 0 {
        return Ok(lambda.clone());
    }
    let mut out = lambda.clone();
    match style {
        RepStyle::Path => {
            let i = lambda.col_support(m)[0];
            out.set(i, m, FieldScalar::ZERO);
        }
        RepStyle::Comb => {
            let i = *st.component.iter().find(|p| p.1 == m).map(|(i, _)| i).expect("lc lies on S_lambda");
            out.set(i, m, FieldScalar::ZERO);
            let j = st.br;
            let l = *lambda.row_support(j).last().expect("bottom row of S_lambda");
            if st.wt == 0 && l != m {
                // The bottom spine entry moves to the vacated column.
                out.set(j, m, lambda.get(j, l));
                out.set(j, l, FieldScalar::ZERO);
            }
        }
        RepStyle::UnCanonical => {
            return Err(Error::Style { style: style.name().into(), reason: "lambda_down needs comb or path".into() })
        }
    }
    Ok(out)
}

/// Restriction of `chi^lambda` from `U_(m-1)` to `U_(m)` for a path label `lambda`.
pub fn restrict_step(f: &Field, lambda: &Matrix, m: usize) -> Result<Decomposition> {
    let n = lambda.n();
    if m == 0 || m > n {
        return Err(Error::Invalid(format!("restriction step m = {m} outside 1..={n}")));
    }
    let upper = PatternPoset::interpolating(n, m - 1)?;
    if !is_normal_form(lambda, &upper, RepStyle::Path, LabelKind::Character)? {
        return Err(Error::Style {
            style: "path".into(),
            reason: format!("label is not a path representative on {upper}"),
        });
    }
    let lower = PatternPoset::interpolating(n, m)?;
    let mut out = Decomposition::new(lower, RepStyle::Path);
    if m == 1 {
        // `P_(0)` and `P_(1)` are the same poset.
        out.add(f, lambda, 1)?;
        return Ok(out);
    }
    let st = stats(lambda);
    let k = st.lc;
    let down = lambda_down(lambda, m, RepStyle::Path)?;
    // A lone row-1 entry behaves like weight one.
    let wt = if st.component.len() == 1 { 1 } else { st.wt };
    if k == m || wt == 0 {
        out.add(f, &down, 1)?;
    } else if ((k + 1)..=n).any(|j| !lambda.get(m, j).is_zero()) {
        out.add(f, &down, u64::from(f.q()))?;
    } else {
        for t in f.elements() {
            let mut mu = down.clone();
            mu.set(m, k, t);
            out.add(f, &mu, 1)?;
        }
    }
    Ok(out)
}

fn bump(map: &mut BTreeMap<Matrix, u64>, key: Matrix, coeff: u64) {
    *map.entry(key).or_insert(0) += coeff;
}

fn is_rook(a: &Matrix) -> bool {
    (1..=a.n()).all(|i| a.row_support(i).len() <= 1 && a.col_support(i).len() <= 1)
}

fn star_right_into(f: &Field, lambda: Matrix, i: usize, k: usize, coeff: u64, out: &mut BTreeMap<Matrix, u64>) {
    if i == k {
        bump(out, lambda, coeff);
        return;
    }
    match lambda.row_support(i).first().copied() {
        Some(l) if l > k => star_right_into(f, lambda, i + 1, k, coeff * u64::from(f.q()), out),
        Some(l) if l == k => {
            let mut next = lambda;
            next.set(i, k, FieldScalar::ZERO);
            star_right_into(f, next, i + 1, k, coeff, out);
        }
        Some(j) => {
            for t in f.nonzero() {
                let mut next = lambda.clone();
                next.set(i, k, t);
                next.set(i, j, FieldScalar::ZERO);
                star_right_into(f, next, i + 1, j, coeff, out);
            }
            star_right_into(f, lambda, i + 1, k, coeff, out);
        }
        None => {
            for t in f.nonzero() {
                let mut next = lambda.clone();
                next.set(i, k, t);
                bump(out, next, coeff);
            }
            star_right_into(f, lambda, i + 1, k, coeff, out);
        }
    }
}

fn chain_label(lambda: &Matrix, i: usize, k: usize) -> Result<()> {
    let n = lambda.n();
    if !is_rook(lambda) {
        return Err(Error::Invalid("label is not a set-partition label".into()));
    }
    if i == 0 || i > k || k > n {
        return Err(Error::Invalid(format!("need 1 <= {i} <= {k} <= {n}")));
    }
    Ok(())
}

/// `lambda *_i {k}` on the chain of size `n`, as a combination of `n x n` labels.
pub fn star_right(f: &Field, lambda: &Matrix, i: usize, k: usize) -> Result<Decomposition> {
    chain_label(lambda, i, k)?;
    let mut raw = BTreeMap::new();
    star_right_into(f, lambda.clone(), i, k, 1, &mut raw);
    collect(f, PatternPoset::chain(lambda.n()), raw)
}

fn star_left_into(f: &Field, j: usize, l: usize, mu: Matrix, coeff: u64, out: &mut BTreeMap<Matrix, u64>) {
    if j == l {
        bump(out, mu, coeff);
        return;
    }
    match mu.col_support(l).first().copied() {
        Some(r) if r < j => star_left_into(f, j, l - 1, mu, coeff * u64::from(f.q()), out),
        Some(r) if r == j => {
            let mut next = mu;
            next.set(j, l, FieldScalar::ZERO);
            star_left_into(f, j, l - 1, next, coeff, out);
        }
        Some(k) => {
            for t in f.nonzero() {
                let mut next = mu.clone();
                next.set(k, l, FieldScalar::ZERO);
                next.set(j, l, t);
                star_left_into(f, k, l - 1, next, coeff, out);
            }
            star_left_into(f, j, l - 1, mu, coeff, out);
        }
        None => {
            for t in f.nonzero() {
                let mut next = mu.clone();
                next.set(j, l, t);
                bump(out, next, coeff);
            }
            star_left_into(f, j, l - 1, mu, coeff, out);
        }
    }
}

/// `{j} *_l mu` on the chain of size `n`, as a combination of `n x n` labels.
pub fn star_left(f: &Field, j: usize, l: usize, mu: &Matrix) -> Result<Decomposition> {
    chain_label(mu, j, l)?;
    let mut raw = BTreeMap::new();
    star_left_into(f, j, l, mu.clone(), 1, &mut raw);
    collect(f, PatternPoset::chain(mu.n()), raw)
}

fn collect(f: &Field, poset: PatternPoset, raw: BTreeMap<Matrix, u64>) -> Result<Decomposition> {
    let mut out = Decomposition::new(poset, RepStyle::UnCanonical);
    for (k, c) in raw {
        out.add(f, &k, c)?;
    }
    Ok(out)
}

/// Drops the row and column removed by `embedding`, giving an `(n-1) x (n-1)` matrix.
pub fn reindex(a: &Matrix, embedding: Embedding) -> Matrix {
    let n = a.n();
    let mut out = Matrix::zeros(n.saturating_sub(1));
    for ((i, j), v) in a.entries() {
        match embedding {
            Embedding::FirstRow if i > 1 => out.set(i - 1, j - 1, v),
            Embedding::LastColumn if j < n => out.set(i, j, v),
            _ => {}
        }
    }
    out
}

/// The subgroup of `U_n` that `embedding` identifies with `U_{n-1}`, as a pattern poset on `1..n`.
pub fn embedded_poset(n: usize, embedding: Embedding) -> Result<PatternPoset> {
    match embedding {
        Embedding::FirstRow => PatternPoset::interpolating(n, n),
        Embedding::LastColumn => Ok(PatternPoset::last_removed(n)),
    }
}

fn reindexed(f: &Field, d: &Decomposition, embedding: Embedding) -> Result<Decomposition> {
    let n = d.poset.n();
    let mut out = Decomposition::new(PatternPoset::chain(n - 1), RepStyle::UnCanonical);
    for (k, c) in d.terms() {
        out.add(f, &reindex(k, embedding), c)?;
    }
    Ok(out)
}

fn check_chain_label(lambda: &Matrix) -> Result<()> {
    let n = lambda.n();
    if n < 2 {
        return Err(Error::Invalid("restriction to U_{n-1} needs n >= 2".into()));
    }
    if !is_normal_form(lambda, &PatternPoset::chain(n), RepStyle::UnCanonical, LabelKind::Character)? {
        return Err(Error::Style { style: "un_canonical".into(), reason: "label is not a set-partition label".into() });
    }
    Ok(())
}

/// `Res^{U_n}_{U_{n-1}} chi^lambda` for the embedding that drops row and column 1.
pub fn restrict_un(f: &Field, lambda: &Matrix) -> Result<Decomposition> {
    check_chain_label(lambda)?;
    let full = match lambda.row_support(1).first() {
        Some(&k) => star_right(f, lambda, 1, k)?,
        None => collect(f, PatternPoset::chain(lambda.n()), BTreeMap::from([(lambda.clone(), 1)]))?,
    };
    reindexed(f, &full, Embedding::FirstRow)
}

/// `Res^{U_n}_{U_{n-1}} chi^lambda` for the embedding that drops row and column `n`.
pub fn restrict_un_alt(f: &Field, lambda: &Matrix) -> Result<Decomposition> {
    check_chain_label(lambda)?;
    let n = lambda.n();
    let full = match lambda.col_support(n).first() {
        Some(&j) => star_left(f, j, n, lambda)?,
        None => collect(f, PatternPoset::chain(n), BTreeMap::from([(lambda.clone(), 1)]))?,
    };
    reindexed(f, &full, Embedding::LastColumn)
}

/// Restricts along the embedding chosen by the caller.
pub fn restrict_embedded(f: &Field, lambda: &Matrix, embedding: Embedding) -> Result<Decomposition> {
    match embedding {
        Embedding::FirstRow => restrict_un(f, lambda),
        Embedding::LastColumn => restrict_un_alt(f, lambda),
    }
}

/// Composes `restrict_step` for `m = 1..=n`, then drops row and column 1.
pub fn restrict_by_steps(f: &Field, lambda: &Matrix) -> Result<Decomposition> {
    let n = lambda.n();
    let mut cur = Decomposition::new(PatternPoset::chain(n), RepStyle::Path);
    cur.add(f, lambda, 1)?;
    for m in 1..=n {
        let mut next = Decomposition::new(PatternPoset::interpolating(n, m)?, RepStyle::Path);
        for (mu, c) in cur.terms() {
            for (nu, d) in restrict_step(f, mu, m)?.terms() {
                next.add(f, nu, c * d)?;
            }
        }
        cur = next;
    }
    reindexed(f, &cur, Embedding::FirstRow)
}
