//! Orbit normal forms for `U_n` and the interpolating groups `U_(m)`: comb and path
//! representatives, baggage, the `lc`/`br`/`wt` statistics, enumeration and arc notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::graph::MatrixGraph;
use crate::matrix::{DualFunctional, Matrix, UnipotentElement};
use crate::poset::PatternPoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepStyle {
    UnCanonical,
    Comb,
    Path,
}

impl RepStyle {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "un" | "un_canonical" | "canonical" => Ok(RepStyle::UnCanonical),
            "comb" => Ok(RepStyle::Comb),
            "path" => Ok(RepStyle::Path),
            _ => Err(Error::Parse(format!("unknown style {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RepStyle::UnCanonical => "un_canonical",
            RepStyle::Comb => "comb",
            RepStyle::Path => "path",
        }
    }
}

impl fmt::Display for RepStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    Class,
    Character,
}

/// The `m` of the interpolating poset, after checking that `style` applies to it.
pub fn style_m(poset: &PatternPoset, style: RepStyle) -> Result<usize> {
    match style {
        RepStyle::UnCanonical if poset.is_chain() => Ok(0),
        RepStyle::UnCanonical => {
            Err(Error::Style { style: style.name().into(), reason: format!("{poset} is not a chain") })
        }
        RepStyle::Comb | RepStyle::Path => poset.interpolating_m().ok_or_else(|| Error::Style {
            style: style.name().into(),
            reason: format!("{poset} is not an interpolating poset"),
        }),
    }
}

/// A supercharacter label: a functional in the normal form of its style.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupercharLabel {
    pub poset: PatternPoset,
    pub style: RepStyle,
    pub functional: DualFunctional,
}

/// A superclass label: a group element in the normal form of its style.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperclassLabel {
    pub poset: PatternPoset,
    pub style: RepStyle,
    pub element: UnipotentElement,
}

impl SupercharLabel {
    pub fn matrix(&self) -> &Matrix {
        self.functional.matrix()
    }
}

impl SuperclassLabel {
    pub fn matrix(&self) -> &Matrix {
        self.element.offset()
    }
}

/// Values along the distinguished path component, starting at its row-1 vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathComponentWalk {
    pub positions: Vec<(usize, usize)>,
    pub values: Vec<FieldScalar>,
}

impl PathComponentWalk {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The ordered walk through the component of `a` containing its row-1 entry,
    /// alternating column and row steps. `None` when row 1 is zero or the
    /// component is not a simple alternating path.
    pub fn of(a: &Matrix) -> Option<Self> {
        let g = MatrixGraph::of(a);
        let start = g.vertices.iter().position(|&((i, _), _)| i == 1)?;
        let comp = g.components.iter().find(|c| c.contains(&start))?;
        let mut positions = vec![g.vertices[start].0];
        let mut values = vec![g.vertices[start].1];
        let mut vertical = true;
        loop {
            let (ci, cj) = *positions.last().unwrap();
            let next: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&v| {
                    let (i, j) = g.vertices[v].0;
                    !positions.contains(&(i, j)) && if vertical { j == cj } else { i == ci }
                })
                .collect();
            match next.as_slice() {
                [] => break,
                [v] => {
                    positions.push(g.vertices[*v].0);
                    values.push(g.vertices[*v].1);
                }
                _ => return None,
            }
            vertical = !vertical;
        }
        (positions.len() == comp.len()).then_some(PathComponentWalk { positions, values })
    }
}

/// `bag(x_j) = x_j (-x_{j-1})^{-1} x_{j-2} (-x_{j-3})^{-1} ...`, with `j` 1-based.
pub fn bag(f: &Field, values: &[FieldScalar], j: usize) -> Result<FieldScalar> {
    if j == 0 || j > values.len() {
        return Err(Error::Invalid(format!("baggage index {j} outside 1..={}", values.len())));
    }
    Ok(bag_all(f, &values[..j])[j - 1])
}

/// `bag(x_1), ..., bag(x_k)` via `bag(x_j) = x_j (-x_{j-1})^{-1} bag(x_{j-2})`.
pub fn bag_all(f: &Field, values: &[FieldScalar]) -> Vec<FieldScalar> {
    let mut out: Vec<FieldScalar> = Vec::with_capacity(values.len());
    for (idx, &x) in values.iter().enumerate() {
        let v = if idx == 0 {
            x
        } else {
            let prev2 = if idx >= 2 { out[idx - 2] } else { FieldScalar::ONE };
            f.mul(f.mul(x, f.inv(f.neg(values[idx - 1])).expect("path values are nonzero")), prev2)
        };
        out.push(v);
    }
    out
}

/// The distinguished component statistics of a label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub component: Vec<(usize, usize)>,
    pub lc: usize,
    pub br: usize,
    pub wt: usize,
}

/// `S_lambda`, `lc`, `br` and `wt`; `(empty, 0, n, 0)` when row 1 is zero.
pub fn stats(lambda: &Matrix) -> Stats {
    let n = lambda.n();
    let g = MatrixGraph::of(lambda);
    let comp =
        g.vertices.iter().position(|&((i, _), _)| i == 1).and_then(|s| g.components.iter().find(|c| c.contains(&s)));
    let Some(comp) = comp else {
        return Stats { component: Vec::new(), lc: 0, br: n, wt: 0 };
    };
    let mut component: Vec<(usize, usize)> = comp.iter().map(|&v| g.vertices[v].0).collect();
    component.sort();
    let lc = component.iter().map(|p| p.1).min().unwrap();
    let br = component.iter().map(|p| p.0).max().unwrap();
    let wt = lambda.row_support(br).len() - 1;
    Stats { component, lc, br, wt }
}

// ---------------------------------------------------------------------------
// Normal-form predicates

fn components_ok(a: &Matrix) -> (MatrixGraph, Option<Vec<(usize, usize)>>, bool) {
    let g = MatrixGraph::of(a);
    let big: Vec<_> = g.components.iter().filter(|c| c.len() > 1).collect();
    let ok = big.len() <= 1;
    let comp = big.first().map(|c| {
        let mut v: Vec<_> = c.iter().map(|&x| g.vertices[x].0).collect();
        v.sort();
        v
    });
    (g, comp, ok)
}

fn is_rook(a: &Matrix) -> bool {
    let n = a.n();
    (1..=n).all(|i| a.row_support(i).len() <= 1 && a.col_support(i).len() <= 1)
}

/// Class comb shape: row-1 entries at `k_1 < ... < k_r`, one entry `(i_d, k_d)` below
/// each except possibly the last, with `i_1 > i_2 > ...` and `1 < i_d <= m < k_d`.
fn class_comb_shape(comp: &[(usize, usize)], m: usize) -> bool {
    let top: Vec<usize> = comp.iter().filter(|p| p.0 == 1).map(|p| p.1).collect();
    let rest: Vec<(usize, usize)> = comp.iter().copied().filter(|p| p.0 != 1).collect();
    if top.is_empty() || top.iter().any(|&k| k <= m) {
        return false;
    }
    let mut tines = Vec::new();
    for (d, &k) in top.iter().enumerate() {
        let below: Vec<usize> = rest.iter().filter(|p| p.1 == k).map(|p| p.0).collect();
        match below.as_slice() {
            [] if d + 1 == top.len() => {}
            [i] if *i > 1 && *i <= m => tines.push(*i),
            _ => return false,
        }
    }
    tines.len() == rest.len() && tines.windows(2).all(|w| w[0] > w[1])
}

/// Character comb shape: spine column `k_1` holding `(1, k_1)` and rows `1 < i_1 < i_2 < ... <= m`,
/// each spine row except possibly the last carrying one tine `(i_d, k_{d+1})`, `k_1 > k_2 > ... > m`.
fn char_comb_shape(comp: &[(usize, usize)], m: usize) -> bool {
    let top: Vec<usize> = comp.iter().filter(|p| p.0 == 1).map(|p| p.1).collect();
    let [l] = top.as_slice() else { return false };
    let l = *l;
    if l <= m {
        return false;
    }
    let spine: Vec<usize> = comp.iter().filter(|p| p.1 == l && p.0 != 1).map(|p| p.0).collect();
    if spine.iter().any(|&i| i <= 1 || i > m) {
        return false;
    }
    let mut tines = Vec::new();
    for (d, &i) in spine.iter().enumerate() {
        let others: Vec<usize> = comp.iter().filter(|p| p.0 == i && p.1 != l).map(|p| p.1).collect();
        match others.as_slice() {
            [] if d + 1 == spine.len() => {}
            [k] if *k > m && *k < l => tines.push(*k),
            _ => return false,
        }
    }
    comp.len() == 1 + spine.len() + tines.len() && tines.windows(2).all(|w| w[0] > w[1])
}

/// Alternating path from row 1: vertical, horizontal, vertical, ... with the given
/// direction of travel for row and column indices after the first vertex.
fn path_shape(a: &Matrix, comp: &[(usize, usize)], m: usize, kind: LabelKind) -> bool {
    let Some(walk) = PathComponentWalk::of(a) else { return false };
    if walk.len() != comp.len() || walk.len() < 2 {
        return false;
    }
    let pos = &walk.positions;
    let rows: Vec<usize> = pos.iter().skip(1).step_by(2).map(|p| p.0).collect();
    let cols: Vec<usize> = pos.iter().step_by(2).map(|p| p.1).collect();
    if rows.iter().any(|&i| i <= 1 || i > m) || cols.iter().any(|&k| k <= m) {
        return false;
    }
    match kind {
        LabelKind::Class => rows.windows(2).all(|w| w[0] > w[1]) && cols.windows(2).all(|w| w[0] < w[1]),
        LabelKind::Character => rows.windows(2).all(|w| w[0] < w[1]) && cols.windows(2).all(|w| w[0] > w[1]),
    }
}

/// Whether `a` (an element of `n_P` or `n_P*`) is in the normal form of `style`.
pub fn is_normal_form(a: &Matrix, poset: &PatternPoset, style: RepStyle, kind: LabelKind) -> Result<bool> {
    let m = style_m(poset, style)?;
    if !a.fits(poset) {
        return Ok(false);
    }
    if style == RepStyle::UnCanonical {
        return Ok(is_rook(a));
    }
    let (_, comp, ok) = components_ok(a);
    if !ok {
        return Ok(false);
    }
    let Some(comp) = comp else { return Ok(true) };
    Ok(match (style, kind) {
        (RepStyle::Comb, LabelKind::Class) => class_comb_shape(&comp, m),
        (RepStyle::Comb, LabelKind::Character) => char_comb_shape(&comp, m),
        (RepStyle::Path, k) => path_shape(a, &comp, m, k),
        (RepStyle::UnCanonical, _) => unreachable!(),
    })
}

// ---------------------------------------------------------------------------
// Moves

trait DualMoves {
    fn dual_row(&mut self, f: &Field, p: &PatternPoset, j: usize, i: usize, t: FieldScalar);
    fn dual_col(&mut self, f: &Field, p: &PatternPoset, k: usize, l: usize, t: FieldScalar);
}

impl DualMoves for Matrix {
    /// `row j += t row i`, dropping entries outside `J`.
    fn dual_row(&mut self, f: &Field, p: &PatternPoset, j: usize, i: usize, t: FieldScalar) {
        for c in 1..=self.n() {
            let v = self.get(i, c);
            if !v.is_zero() && p.lt(j, c) {
                let cur = self.get(j, c);
                self.set(j, c, f.add(cur, f.mul(t, v)));
            }
        }
    }

    /// `col k += t col l`, dropping entries outside `J`.
    fn dual_col(&mut self, f: &Field, p: &PatternPoset, k: usize, l: usize, t: FieldScalar) {
        for r in 1..=self.n() {
            let v = self.get(r, l);
            if !v.is_zero() && p.lt(r, k) {
                let cur = self.get(r, k);
                self.set(r, k, f.add(cur, f.mul(t, v)));
            }
        }
    }
}

/// `-a / b`.
fn ratio(f: &Field, a: FieldScalar, b: FieldScalar) -> FieldScalar {
    f.neg(f.div(a, b))
}

// ---------------------------------------------------------------------------
// Canonical forms

/// Comb normal form of the superclass of `x = u - 1` in `U_(m)` (a rook placement when `m <= 1`).
pub fn canonical_class_comb(f: &Field, poset: &PatternPoset, x: &Matrix, m: usize) -> Matrix {
    let n = x.n();
    let mut x = x.clone();
    let mut pivot_row_of_col = vec![0usize; n + 1];
    for i in (2..=n).rev() {
        let Some(j) = (1..=n).find(|&c| !x.get(i, c).is_zero()) else { continue };
        let piv = x.get(i, j);
        for r in 2..i {
            let v = x.get(r, j);
            if !v.is_zero() {
                x.add_row(f, r, i, ratio(f, v, piv));
            }
        }
        for l in (j + 1)..=n {
            let v = x.get(i, l);
            if !v.is_zero() {
                x.add_col(f, l, j, ratio(f, v, piv));
            }
        }
        pivot_row_of_col[j] = i;
    }
    let row1_ok = |c: usize| poset.lt(1, c);
    for c in 1..=n {
        let i = pivot_row_of_col[c];
        if i > m.max(1) && !x.get(1, c).is_zero() {
            x.add_row(f, 1, i, ratio(f, x.get(1, c), x.get(i, c)));
        }
    }
    if let Some(k0) = (1..=n).find(|&c| pivot_row_of_col[c] == 0 && row1_ok(c) && !x.get(1, c).is_zero()) {
        for l in (k0 + 1)..=n {
            let v = x.get(1, l);
            if !v.is_zero() {
                x.add_col(f, l, k0, ratio(f, v, x.get(1, k0)));
            }
        }
    }
    let mut kept: Vec<(usize, usize)> = Vec::new();
    for c in 1..=n {
        let p = pivot_row_of_col[c];
        if p == 0 || x.get(1, c).is_zero() {
            continue;
        }
        match kept.last() {
            Some(&(k, i)) if i < p => {
                x.add_col(f, c, k, ratio(f, x.get(1, c), x.get(1, k)));
                x.add_row(f, i, p, ratio(f, x.get(i, c), x.get(p, c)));
            }
            _ => kept.push((c, p)),
        }
    }
    x
}

/// Comb normal form of the two-sided dual orbit of `lambda` in `U_(m)` (rook when `m <= 1`).
pub fn canonical_char_comb(f: &Field, poset: &PatternPoset, lambda: &Matrix, m: usize) -> Matrix {
    let n = lambda.n();
    let mut x = lambda.masked(poset);
    let l = (1..=n).rev().find(|&c| !x.get(1, c).is_zero());
    if let Some(l) = l {
        for k in 2..l {
            let v = x.get(1, k);
            if !v.is_zero() {
                x.dual_col(f, poset, k, l, ratio(f, v, x.get(1, l)));
            }
        }
    }
    let spine_col = l.unwrap_or(0);
    let clear_with_row1 = |x: &mut Matrix, j: usize| {
        if spine_col > 0 && poset.lt(1, j) && poset.lt(j, spine_col) {
            let v = x.get(j, spine_col);
            if !v.is_zero() {
                x.dual_row(f, poset, j, 1, ratio(f, v, x.get(1, spine_col)));
            }
        }
    };
    // (row, tine column or 0) for rows holding a spine entry, top to bottom.
    let mut spine_rows: Vec<(usize, usize)> = Vec::new();
    for i in 2..=n {
        clear_with_row1(&mut x, i);
        let mut has_spine = spine_col > 0 && !x.get(i, spine_col).is_zero();
        if has_spine {
            for k in (i + 1)..=m.min(n) {
                let v = x.get(i, k);
                if v.is_zero() {
                    continue;
                }
                x.dual_col(f, poset, k, spine_col, ratio(f, v, x.get(i, spine_col)));
                for &(r, tine) in &spine_rows {
                    let w = x.get(r, k);
                    if tine > 0 && !w.is_zero() {
                        x.dual_col(f, poset, k, tine, ratio(f, w, x.get(r, tine)));
                    }
                }
            }
        }
        let p = (1..=n).rev().find(|&c| c != spine_col && !x.get(i, c).is_zero());
        let Some(p) = p else {
            if has_spine {
                for j in (i + 1)..=n {
                    let v = x.get(j, spine_col);
                    if !v.is_zero() && poset.lt(j, spine_col) {
                        x.dual_row(f, poset, j, i, ratio(f, v, x.get(i, spine_col)));
                    }
                }
                spine_rows.push((i, 0));
            }
            continue;
        };
        if has_spine && p > spine_col {
            x.dual_col(f, poset, spine_col, p, ratio(f, x.get(i, spine_col), x.get(i, p)));
            has_spine = false;
        }
        let piv = x.get(i, p);
        for k in (i + 1)..p {
            let v = x.get(i, k);
            if !v.is_zero() && k != spine_col {
                x.dual_col(f, poset, k, p, ratio(f, v, piv));
            }
        }
        for j in (i + 1)..p {
            let v = x.get(j, p);
            if !v.is_zero() {
                x.dual_row(f, poset, j, i, ratio(f, v, piv));
            }
        }
        if has_spine {
            spine_rows.push((i, p));
        }
    }
    for j in 2..=n {
        clear_with_row1(&mut x, j);
    }
    let mut kept: Vec<(usize, usize)> = Vec::new();
    for &(j, pj) in &spine_rows {
        match kept.last() {
            Some(&(i, pi)) if pj > 0 && pi > 0 && pi < pj => {
                x.dual_row(f, poset, j, i, ratio(f, x.get(j, spine_col), x.get(i, spine_col)));
                let w = x.get(j, pi);
                if !w.is_zero() {
                    x.dual_col(f, poset, pi, pj, ratio(f, w, x.get(j, pj)));
                }
            }
            _ => kept.push((j, pj)),
        }
    }
    x
}

/// Class comb representative to the path representative of the same superclass.
pub fn class_comb_to_path(f: &Field, x: &Matrix) -> Matrix {
    let n = x.n();
    let top: Vec<usize> = x.row_support(1);
    if top.len() <= 1 && top.iter().all(|&k| x.col_support(k).len() <= 1) {
        return x.clone();
    }
    let mut out = x.clone();
    for &k in &top {
        out.set(1, k, FieldScalar::ZERO);
    }
    // x_1 = (1,k_1), x_{2d} = (i_d, k_d), x_{2d+1} = (i_d, k_{d+1}); comb row 1 at k_{d+1} is bag(x_{2d+1}).
    let tine_row = |k: usize| (2..=n).find(|&i| !x.get(i, k).is_zero());
    let mut vals: Vec<FieldScalar> = vec![x.get(1, top[0])];
    out.set(1, top[0], vals[0]);
    let mut bags = vec![vals[0]];
    for d in 0..top.len() {
        let Some(i) = tine_row(top[d]) else { break };
        vals.push(x.get(i, top[d]));
        bags.push(next_bag(f, &vals, &bags));
        if d + 1 < top.len() {
            // Solve bag(x_{2d+3}) = comb value for x_{2d+3}.
            let target = x.get(1, top[d + 1]);
            let prev = vals[vals.len() - 1];
            let prev2_bag = bags[bags.len() - 2];
            let v = f.mul(f.mul(target, f.neg(prev)), f.inv(prev2_bag).expect("nonzero baggage"));
            out.set(i, top[d + 1], v);
            vals.push(v);
            bags.push(next_bag(f, &vals, &bags));
        }
    }
    out
}

fn next_bag(f: &Field, vals: &[FieldScalar], bags: &[FieldScalar]) -> FieldScalar {
    let j = vals.len() - 1;
    let prev2 = if j >= 2 { bags[j - 2] } else { FieldScalar::ONE };
    f.mul(f.mul(vals[j], f.inv(f.neg(vals[j - 1])).expect("nonzero path value")), prev2)
}

/// Class path representative to the comb representative of the same superclass.
pub fn class_path_to_comb(f: &Field, x: &Matrix) -> Matrix {
    let Some(walk) = PathComponentWalk::of(x) else { return x.clone() };
    if walk.len() < 3 {
        return x.clone();
    }
    let bags = bag_all(f, &walk.values);
    let mut out = x.clone();
    for (idx, &(i, k)) in walk.positions.iter().enumerate() {
        if idx >= 2 && idx % 2 == 0 {
            out.set(i, k, FieldScalar::ZERO);
            out.set(1, k, bags[idx]);
        }
    }
    out
}

/// Character path representative to the comb representative of the same supercharacter.
pub fn char_path_to_comb(f: &Field, x: &Matrix) -> Matrix {
    let Some(walk) = PathComponentWalk::of(x) else { return x.clone() };
    if walk.len() < 3 {
        return x.clone();
    }
    let bags = bag_all(f, &walk.values);
    let y1 = walk.values[0];
    let spine = walk.positions[0].1;
    let mut out = x.clone();
    // y_{2d} = (i_d, k_d) moves to the spine column with value -y_1 bag(y_{2d}).
    for (idx, &(i, k)) in walk.positions.iter().enumerate() {
        if idx % 2 == 1 {
            out.set(i, k, FieldScalar::ZERO);
            out.set(i, spine, f.neg(f.mul(y1, bags[idx])));
        }
    }
    out
}

/// Character comb representative to the path representative of the same supercharacter.
pub fn char_comb_to_path(f: &Field, x: &Matrix) -> Matrix {
    let n = x.n();
    let Some(l) = (1..=n).rev().find(|&c| !x.get(1, c).is_zero()) else { return x.clone() };
    let spine: Vec<usize> = (2..=n).filter(|&i| !x.get(i, l).is_zero()).collect();
    if spine.len() <= 1 && spine.iter().all(|&i| x.row_support(i).len() == 1) {
        return x.clone();
    }
    let y1 = x.get(1, l);
    let mut out = x.clone();
    let mut vals = vec![y1];
    let mut bags = vec![y1];
    let mut col = l;
    for &i in &spine {
        // bag(y_{2d}) = -s_d / y_1 fixes y_{2d} at (i, col).
        let s = x.get(i, l);
        let target = f.neg(f.div(s, y1));
        let prev = *vals.last().unwrap();
        let prev2_bag = if bags.len() >= 2 { bags[bags.len() - 2] } else { FieldScalar::ONE };
        let v = f.mul(f.mul(target, f.neg(prev)), f.inv(prev2_bag).expect("nonzero baggage"));
        out.set(i, l, FieldScalar::ZERO);
        out.set(i, col, v);
        vals.push(v);
        bags.push(next_bag(f, &vals, &bags));
        let Some(tine) = (1..=n).find(|&c| c != l && !x.get(i, c).is_zero()) else { break };
        vals.push(x.get(i, tine));
        bags.push(next_bag(f, &vals, &bags));
        col = tine;
    }
    out
}

/// Canonical form of `a` in `n_P` (class) or `n_P*` (character) for `style`.
pub fn canonical_form(f: &Field, a: &Matrix, poset: &PatternPoset, style: RepStyle, kind: LabelKind) -> Result<Matrix> {
    let m = style_m(poset, style)?;
    if a.n() != poset.n() {
        return Err(Error::Invalid(format!("matrix size {} does not match {poset}", a.n())));
    }
    let comb = match kind {
        LabelKind::Class => {
            if !a.fits(poset) {
                return Err(Error::Invalid("entries outside the allowed positions".into()));
            }
            canonical_class_comb(f, poset, a, m)
        }
        LabelKind::Character => canonical_char_comb(f, poset, a, m),
    };
    Ok(match (style, kind) {
        (RepStyle::Path, LabelKind::Class) => class_comb_to_path(f, &comb),
        (RepStyle::Path, LabelKind::Character) => char_comb_to_path(f, &comb),
        _ => comb,
    })
}

pub fn canonical_superclass_rep(
    f: &Field,
    u: &UnipotentElement,
    poset: &PatternPoset,
    style: RepStyle,
) -> Result<SuperclassLabel> {
    let x = canonical_form(f, u.offset(), poset, style, LabelKind::Class)?;
    Ok(SuperclassLabel { poset: poset.clone(), style, element: UnipotentElement::from_offset_unchecked(x) })
}

pub fn canonical_supercharacter_rep(
    f: &Field,
    lambda: &DualFunctional,
    poset: &PatternPoset,
    style: RepStyle,
) -> Result<SupercharLabel> {
    let x = canonical_form(f, lambda.matrix(), poset, style, LabelKind::Character)?;
    Ok(SupercharLabel { poset: poset.clone(), style, functional: DualFunctional::from_matrix_unchecked(x) })
}

// ---------------------------------------------------------------------------
// Enumeration

/// All rook placements on rows `2..=n` avoiding `forbidden_col`, as `(row, col)` lists.
fn rook_shapes(n: usize, forbidden_col: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(
        i: usize,
        n: usize,
        forbidden: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i > n {
            out.push(cur.clone());
            return;
        }
        go(i + 1, n, forbidden, used, cur, out);
        for c in (i + 1)..=n {
            if c != forbidden && !used[c] {
                used[c] = true;
                cur.push((i, c));
                go(i + 1, n, forbidden, used, cur, out);
                cur.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(2, n, forbidden_col, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}

/// Every assignment of nonzero values to `positions`.
fn fill(f: &Field, n: usize, positions: &[(usize, usize)], out: &mut Vec<Matrix>) {
    let nz: Vec<FieldScalar> = f.nonzero().collect();
    let mut idx = vec![0usize; positions.len()];
    loop {
        let mut a = Matrix::zeros(n);
        for (p, &k) in positions.iter().zip(&idx) {
            a.set(p.0, p.1, nz[k]);
        }
        out.push(a);
        let mut d = 0;
        while d < idx.len() {
            idx[d] += 1;
            if idx[d] < nz.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
        if d == idx.len() {
            return;
        }
    }
}

/// Subsets of `items` (in order), as index lists.
fn subsets(len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1u32 << len)).map(move |mask| (0..len).filter(|&b| mask & (1 << b) != 0).collect())
}

fn comb_class_shapes(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for rook in rook_shapes(n, 0) {
        let pivot_row = |c: usize| rook.iter().find(|p| p.1 == c).map(|p| p.0);
        let mut cand: Vec<(usize, usize)> =
            rook.iter().copied().filter(|&(i, c)| i <= m && c > m.max(1)).map(|(i, c)| (c, i)).collect();
        cand.sort();
        let free: Vec<usize> = ((m.max(1) + 1)..=n).filter(|&c| pivot_row(c).is_none()).collect();
        for sub in subsets(cand.len()) {
            let tines: Vec<(usize, usize)> = sub.iter().map(|&s| cand[s]).collect();
            if !tines.windows(2).all(|w| w[0].1 > w[1].1) {
                continue;
            }
            let last = tines.last().map(|t| t.0).unwrap_or(0);
            let mut base = rook.clone();
            base.extend(tines.iter().map(|&(c, _)| (1, c)));
            out.push(base.clone());
            for &k0 in free.iter().filter(|&&k| k > last) {
                let mut s = base.clone();
                s.push((1, k0));
                out.push(s);
            }
        }
    }
    out
}

fn comb_char_shapes(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = rook_shapes(n, 1);
    for l in (m.max(1) + 1)..=n {
        for rook in rook_shapes(n, l) {
            let row_entry = |i: usize| rook.iter().find(|p| p.0 == i).map(|p| p.1);
            let cand: Vec<usize> = (2..=m.min(l - 1)).collect();
            for sub in subsets(cand.len()) {
                let rows: Vec<usize> = sub.iter().map(|&s| cand[s]).collect();
                let mut ok = true;
                let mut tines = Vec::new();
                for (d, &i) in rows.iter().enumerate() {
                    match row_entry(i) {
                        Some(c) if c > m && c < l => tines.push(c),
                        None if d + 1 == rows.len() => {}
                        _ => ok = false,
                    }
                }
                if !ok || !tines.windows(2).all(|w| w[0] > w[1]) {
                    continue;
                }
                let mut s = rook.clone();
                s.push((1, l));
                s.extend(rows.iter().map(|&i| (i, l)));
                out.push(s);
            }
        }
    }
    out
}

/// One normal-form representative per two-sided orbit, sorted.
pub fn enumerate_labels(f: &Field, poset: &PatternPoset, style: RepStyle, kind: LabelKind) -> Result<Vec<Matrix>> {
    let m = style_m(poset, style)?;
    let n = poset.n();
    let shapes = match kind {
        LabelKind::Class => comb_class_shapes(n, m),
        LabelKind::Character => comb_char_shapes(n, m),
    };
    let mut out = Vec::new();
    for s in &shapes {
        fill(f, n, s, &mut out);
    }
    if style == RepStyle::Path {
        out = out
            .into_iter()
            .map(|a| match kind {
                LabelKind::Class => class_comb_to_path(f, &a),
                LabelKind::Character => char_comb_to_path(f, &a),
            })
            .collect();
    }
    out.sort();
    out.dedup();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Arc notation

/// Renders a label as `i~j:v` arcs joined by `|`; chains of a rook placement are
/// merged into `i~j~k`, and `:v` is dropped over F_2.
pub fn render_arcs(f: &Field, a: &Matrix) -> String {
    let entries = a.entries();
    if entries.is_empty() {
        return "{}".into();
    }
    let show = |v: FieldScalar| if f.q() == 2 { String::new() } else { format!(":{v}") };
    if !is_rook(a) {
        return entries.iter().map(|&((i, j), v)| format!("{i}~{j}{}", show(v))).collect::<Vec<_>>().join("|");
    }
    let n = a.n();
    let has_incoming = |i: usize| !a.col_support(i).is_empty();
    let mut parts = Vec::new();
    for start in 1..=n {
        if has_incoming(start) || a.row_support(start).is_empty() {
            continue;
        }
        let mut s = start.to_string();
        let mut cur = start;
        while let Some(&next) = a.row_support(cur).first() {
            s.push_str(&format!("~{next}{}", show(a.get(cur, next))));
            cur = next;
        }
        parts.push(s);
    }
    parts.join("|")
}

/// Parses arc notation (singleton parts and braces allowed) into an `n x n` matrix.
pub fn parse_arcs(f: &Field, n: usize, s: &str) -> Result<Matrix> {
    let body = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
    let mut a = Matrix::zeros(n);
    if body.is_empty() {
        return Ok(a);
    }
    let mut col = 0usize;
    for part in body.split('|') {
        let part_start = col;
        col += part.len() + 1;
        let err = |msg: String| Error::Parse(format!("column {}: {msg}", part_start + 1));
        let mut pieces = part.trim().split('~');
        let first = pieces.next().unwrap_or("");
        let mut prev = parse_index(first, n).map_err(err)?;
        for piece in pieces {
            let (idx, val) = match piece.split_once(':') {
                Some((i, v)) => (i, Some(v)),
                None => (piece, None),
            };
            let next = parse_index(idx, n).map_err(err)?;
            if next <= prev {
                return Err(err(format!("arc {prev}~{next} is not increasing")));
            }
            let v = match val {
                Some(v) => {
                    let raw: u32 = v.trim().parse().map_err(|_| err(format!("bad scalar {v:?}")))?;
                    f.element(raw)?
                }
                None => FieldScalar::ONE,
            };
            if v.is_zero() {
                return Err(err("arc value must be nonzero".into()));
            }
            a.set(prev, next, v);
            prev = next;
        }
    }
    Ok(a)
}

fn parse_index(s: &str, n: usize) -> std::result::Result<usize, String> {
    let i: usize = s.trim().parse().map_err(|_| format!("bad index {s:?}"))?;
    if i == 0 || i > n {
        return Err(format!("index {i} outside 1..={n}"));
    }
    Ok(i)
}
