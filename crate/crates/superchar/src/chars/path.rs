//! Character values on path representatives of `U_(m)`.

use std::collections::HashMap;

use super::comb::lt_m;
use super::factor::components;
use super::{orient, q_pow, CharValue, ZeroReason, ORIENTATION};
use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::matrix::Matrix;
use crate::poset::PatternPoset;
use crate::reps::{
    bag_all, is_normal_form, stats, LabelKind, PathComponentWalk, RepStyle, SupercharLabel, SuperclassLabel,
};

/// A vertex of `G_lambda` with its corner decorations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaCorner {
    pub pos: (usize, usize),
    pub top: bool,
    pub bottom: bool,
    /// 1-based index along `S_lambda`, with its baggage.
    pub walk: Option<(usize, FieldScalar)>,
}

/// A vertex of `G_{u-1}` with its corner decorations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCorner {
    pub pos: (usize, usize),
    pub left: bool,
    pub right: bool,
    /// 1-based index along `S_u`, with its baggage.
    pub walk: Option<(usize, FieldScalar)>,
}

fn walk_info(f: &Field, a: &Matrix) -> Vec<((usize, usize), (usize, FieldScalar))> {
    match PathComponentWalk::of(a) {
        Some(w) => {
            let bags = bag_all(f, &w.values);
            w.positions.iter().enumerate().map(|(i, &p)| (p, (i + 1, bags[i]))).collect()
        }
        None => Vec::new(),
    }
}

/// Top corners of `S_lambda` are its odd-indexed vertices, bottom corners its even-indexed ones;
/// vertices off `S_lambda` are both.
pub fn lambda_corners(f: &Field, lambda: &Matrix) -> Vec<LambdaCorner> {
    let walk = walk_info(f, lambda);
    lambda
        .support()
        .into_iter()
        .map(|pos| match walk.iter().find(|w| w.0 == pos) {
            Some(&(_, (idx, bag))) => {
                LambdaCorner { pos, top: idx % 2 == 1, bottom: idx % 2 == 0, walk: Some((idx, bag)) }
            }
            None => LambdaCorner { pos, top: true, bottom: true, walk: None },
        })
        .collect()
}

/// Left and right corners are the leftmost and rightmost entries of each row of `u - 1`.
pub fn class_corners(f: &Field, x: &Matrix) -> Vec<ClassCorner> {
    let walk = walk_info(f, x);
    x.support()
        .into_iter()
        .map(|pos| {
            let row = x.row_support(pos.0);
            ClassCorner {
                pos,
                left: row.first() == Some(&pos.1),
                right: row.last() == Some(&pos.1),
                walk: walk.iter().find(|w| w.0 == pos).map(|w| w.1),
            }
        })
        .collect()
}

/// `log_q chi^lambda(1)`: pairs `i <_P j` with a bottom corner `lambda_ik`, `k > j`, or a top
/// corner when `wt(lambda) = 1` or `S_lambda` is a single vertex.
pub fn path_degree_exponent(f: &Field, lambda: &Matrix, m: usize) -> usize {
    let n = lambda.n();
    let st = stats(lambda);
    let use_top = st.wt == 1 || st.component.len() == 1;
    let corners = lambda_corners(f, lambda);
    let mut count = 0;
    for i in 1..=n {
        let far =
            corners.iter().filter(|c| c.pos.0 == i && if use_top { c.top } else { c.bottom }).map(|c| c.pos.1).max();
        if let Some(k) = far {
            count += ((i + 1)..k).filter(|&j| lt_m(m, i, j)).count();
        }
    }
    count
}

/// The walk along `S_lambda` or `S_u` with baggage; empty when row 1 is zero.
struct Walk {
    pos: Vec<(usize, usize)>,
    bag: Vec<FieldScalar>,
}

impl Walk {
    fn of(f: &Field, a: &Matrix) -> Self {
        match PathComponentWalk::of(a) {
            Some(w) => Walk { bag: bag_all(f, &w.values), pos: w.positions },
            None => Walk { pos: Vec::new(), bag: Vec::new() },
        }
    }

    /// Whether the last vertex shares its row with exactly one other walk vertex.
    fn ends_with_weight_one(&self) -> bool {
        let last = self.pos[self.pos.len() - 1];
        self.pos.iter().filter(|p| p.0 == last.0).count() == 2
    }

    /// `lambda` extends South from its last vertex rather than West.
    fn extends_south(&self) -> bool {
        self.pos.len() == 1 || self.ends_with_weight_one()
    }

    /// `u` extends North from its last vertex rather than East.
    fn extends_north(&self) -> bool {
        let l = self.pos.len();
        l >= 2 && self.pos[l - 2].0 == self.pos[l - 1].0
    }
}

type Pos = (usize, usize);

/// `c` has `d` straight North of it or straight East of it.
fn sees(c: Pos, d: Pos) -> bool {
    (c.1 == d.1 && d.0 < c.0) || (c.0 == d.0 && d.1 > c.1)
}

/// A vertical segment `(column, top row, bottom row)`, rows inclusive.
type Segment = (usize, usize, usize);

fn on_segment(segs: &[Segment], p: Pos) -> bool {
    segs.iter().any(|&(c, t, b)| p.1 == c && t <= p.0 && p.0 <= b)
}

/// Vertical edges of `S_u` after its first edge, plus the North extension up to row 1.
fn class_segments(w: &Walk) -> Vec<Segment> {
    let l = w.pos.len();
    let mut out: Vec<Segment> = w
        .pos
        .windows(2)
        .skip(1)
        .filter(|e| e[0].1 == e[1].1)
        .map(|e| (e[0].1, e[0].0.min(e[1].0), e[0].0.max(e[1].0)))
        .collect();
    if w.extends_north() {
        let z = w.pos[l - 1];
        out.push((z.1, 1, z.0));
    }
    out
}

/// Vertical edges of `S_lambda`, plus the South extension down to row `m` when present.
fn lambda_segments(w: &Walk, m: usize, wt: usize) -> Vec<Segment> {
    let mut out: Vec<Segment> = w
        .pos
        .windows(2)
        .filter(|e| e[0].1 == e[1].1)
        .map(|e| (e[0].1, e[0].0.min(e[1].0), e[0].0.max(e[1].0)))
        .collect();
    if let Some(&z) = w.pos.last() {
        if wt == 1 || w.pos.len() == 1 {
            out.push((z.1, z.0, m.max(z.0)));
        }
    }
    out
}

const INF: i64 = 1 << 40;

/// Points of `S_lambda` and its extension at half-step resolution, in doubled coordinates.
fn lambda_trace(w: &Walk, m: usize) -> Vec<(i64, i64)> {
    let d = |p: Pos| (2 * p.0 as i64, 2 * p.1 as i64);
    let mut pts: Vec<(i64, i64)> = w.pos.iter().map(|&p| d(p)).collect();
    for e in w.pos.windows(2) {
        let (a, b) = (d(e[0]), d(e[1]));
        if a.1 == b.1 {
            pts.extend((a.0.min(b.0)..=a.0.max(b.0)).map(|r| (r, a.1)));
        } else {
            pts.extend((a.1.min(b.1)..=a.1.max(b.1)).map(|c| (a.0, c)));
        }
    }
    let (lr, lc) = d(w.pos[w.pos.len() - 1]);
    let edge = 2 * m as i64 + 1;
    if w.extends_south() {
        pts.extend((lr + 1..=edge).map(|r| (r, lc)));
    } else {
        pts.extend((edge..lc).map(|c| (lr, c)));
    }
    pts
}

/// Whether the two distinguished paths may coexist with a nonzero value.
fn distinguished_pair_survives(m: usize, wl: &Walk, wu: &Walk, lam: &[LambdaCorner], us: &[ClassCorner]) -> bool {
    let ucs: Vec<&ClassCorner> = us.iter().filter(|c| c.walk.is_some() && (c.left || c.right)).collect();
    let lcs: Vec<&LambdaCorner> = lam.iter().filter(|c| c.walk.is_some()).collect();
    if !ucs.iter().any(|c| lcs.iter().any(|d| sees(c.pos, d.pos))) {
        return true;
    }
    // Lowest row of `S_u` over each column; the first edge rises from below the diagram.
    let l = wu.pos.len();
    let mut height: HashMap<i64, i64> = HashMap::new();
    let mut raise = |c: usize, r: usize| {
        let e = height.entry(c as i64).or_insert(-INF);
        *e = (*e).max(r as i64);
    };
    let (end, east) = if l == 1 {
        (wu.pos[0].1 as i64, None)
    } else {
        for e in wu.pos[1..].windows(2) {
            let (a, b) = (e[0], e[1]);
            if a.0 == b.0 {
                (a.1.min(b.1)..=a.1.max(b.1)).for_each(|c| raise(c, a.0));
            } else {
                raise(a.1, a.0.max(b.0));
            }
        }
        height.insert(wu.pos[1].1 as i64, INF);
        let last = wu.pos[l - 1];
        if wu.pos[l - 2].1 == last.1 {
            (INF, Some((last.1 as i64, last.0 as i64)))
        } else {
            (last.1 as i64, None)
        }
    };
    let h = |c: i64| {
        height.get(&c).copied().or(match east {
            Some((col, row)) if c > col => Some(row),
            _ => None,
        })
    };
    let below = lambda_trace(wl, m).into_iter().any(|(r2, c2)| {
        let cols = if c2 % 2 == 0 { vec![c2 / 2] } else { vec![(c2 - 1) / 2, (c2 + 1) / 2] };
        cols.into_iter().any(|c| h(c).is_some_and(|hm| hm < INF && r2 > 2 * hm))
    });
    let reaches = end >= wl.pos[0].1 as i64;
    let vertical = ucs
        .iter()
        .filter(|c| c.left)
        .any(|c| lcs.iter().filter(|d| d.bottom).any(|d| c.pos.1 == d.pos.1 && d.pos.0 < c.pos.0));
    !below && reaches && !vertical
}

struct Geometry<'a> {
    m: usize,
    wt: usize,
    lambda: &'a Matrix,
    x: &'a Matrix,
    lam: Vec<LambdaCorner>,
    us: Vec<ClassCorner>,
    wl: Walk,
    wu: Walk,
}

impl Geometry<'_> {
    fn vanishing(&self, f: &Field) -> Option<ZeroReason> {
        let useg = class_segments(&self.wu);
        let lseg = lambda_segments(&self.wl, self.m, self.wt);
        let lambda_parts = components(self.lambda);
        for s in components(self.x) {
            let s_dist = !s.row_support(1).is_empty();
            let sc: Vec<&ClassCorner> =
                self.us.iter().filter(|c| !s.get(c.pos.0, c.pos.1).is_zero() && (c.left || c.right)).collect();
            for t in &lambda_parts {
                let t_dist = !t.row_support(1).is_empty();
                let tc: Vec<&LambdaCorner> = self.lam.iter().filter(|d| !t.get(d.pos.0, d.pos.1).is_zero()).collect();
                if !sc.iter().any(|c| tc.iter().any(|d| sees(c.pos, d.pos))) {
                    continue;
                }
                match (s_dist, t_dist) {
                    (false, false) => return Some(ZeroReason::Pc1),
                    (true, false) => {
                        let touch = t.support().into_iter().any(|p| on_segment(&useg, p));
                        let left_sees = sc.iter().filter(|c| c.left).any(|c| tc.iter().any(|d| sees(c.pos, d.pos)));
                        if !touch || left_sees {
                            return Some(ZeroReason::Pc2);
                        }
                    }
                    (false, true) => {
                        let touch = s.support().into_iter().any(|p| on_segment(&lseg, p));
                        let bottom_sees = sc.iter().any(|c| tc.iter().filter(|d| d.bottom).any(|d| sees(c.pos, d.pos)));
                        if !touch || bottom_sees {
                            return Some(ZeroReason::Pc3);
                        }
                    }
                    (true, true) => {
                        if !distinguished_pair_survives(self.m, &self.wl, &self.wu, &self.lam, &self.us) {
                            return Some(ZeroReason::Pc4);
                        }
                    }
                }
            }
        }
        let minus_one = f.neg(FieldScalar::ONE);
        for (i, &xp) in self.wu.pos.iter().enumerate() {
            if !self.us.iter().any(|c| c.pos == xp && c.left) {
                continue;
            }
            for (k, &yp) in self.wl.pos.iter().enumerate() {
                let bottom = self.lam.iter().any(|d| d.pos == yp && d.bottom);
                if bottom && yp.0 == xp.0 && yp.1 > xp.1 && f.mul(self.wu.bag[i], self.wl.bag[k]) != minus_one {
                    return Some(ZeroReason::HorizontalTouch);
                }
            }
        }
        None
    }

    /// Number of `q` factors lost against the degree: bottom corners NorthEast of each left corner,
    /// and the first vertex of `S_lambda` when every such corner on the walk is followed by another.
    fn lost_exponent(&self) -> i64 {
        let y1 = self.lam.iter().find(|c| c.walk.is_some_and(|w| w.0 == 1));
        let mut lost = 0i64;
        for u in self.us.iter().filter(|u| u.left) {
            let (j, k) = u.pos;
            let ne = |c: &LambdaCorner| c.pos.0 < j && (c.pos.0 > 1 || j > self.m) && c.pos.1 > k;
            let corners: Vec<&LambdaCorner> = self.lam.iter().filter(|c| c.bottom && ne(c)).collect();
            lost += corners.len() as i64;
            if let Some(y1) = y1 {
                let followed = corners
                    .iter()
                    .filter_map(|b| b.walk)
                    .all(|(idx, _)| self.lam.iter().any(|c| c.walk.is_some_and(|w| w.0 == idx + 1) && ne(c)));
                if j > self.m && y1.pos.1 > k && followed {
                    lost += 1;
                }
            }
        }
        lost
    }

    /// Contributions to the `theta` argument from vertical edges of `S_u` and `S_lambda` sharing a column.
    fn touch_sum(&self, f: &Field) -> FieldScalar {
        let (wl, wu) = (&self.wl, &self.wu);
        let mut acc = FieldScalar::ZERO;
        if wl.pos.is_empty() || wu.pos.len() < 2 {
            return acc;
        }
        let l = wu.pos.len();
        // Upward edges of `S_u` as (bottom, top, column, baggage) in doubled rows; `None` marks the first edge.
        let mut up: Vec<(Option<i64>, i64, usize, FieldScalar)> =
            vec![(None, 2 * wu.pos[1].0 as i64, wu.pos[0].1, wu.bag[0])];
        for j in 1..l - 1 {
            let (a, b) = (wu.pos[j], wu.pos[j + 1]);
            if a.1 == b.1 && b.0 < a.0 {
                up.push((Some(2 * a.0 as i64), 2 * b.0 as i64, a.1, wu.bag[j]));
            }
        }
        if wu.extends_north() {
            up.push((Some(2 * wu.pos[l - 1].0 as i64), 0, wu.pos[l - 1].1, wu.bag[l - 1]));
        }
        // Downward edges of `S_lambda` as (top, bottom, column, baggage) in doubled rows.
        let k = wl.pos.len();
        let mut down: Vec<(i64, i64, usize, FieldScalar)> = (0..k - 1)
            .step_by(2)
            .map(|i| (2 * wl.pos[i].0 as i64, 2 * wl.pos[i + 1].0 as i64, wl.pos[i].1, wl.bag[i]))
            .collect();
        if wl.extends_south() {
            let z = wl.pos[k - 1];
            down.push((2 * z.0 as i64, (2 * self.m as i64 + 1).max(2 * z.0 as i64), z.1, wl.bag[k - 1]));
        }
        for &(rb, rt, uc, xb) in &up {
            for &(lt, lb, _, yb) in down.iter().filter(|d| d.2 == uc) {
                let term = f.mul(xb, yb);
                match rb {
                    None if 2 < lt && lt < rt => acc = f.add(acc, term),
                    None => {}
                    Some(rb) => {
                        if rb > lb && lb >= rt {
                            acc = f.add(acc, term);
                        }
                        if rt == lt {
                            acc = f.sub(acc, term);
                        }
                    }
                }
            }
        }
        acc
    }
}

/// `chi^lambda(u)` for path labels on `P_(m)`, with `u` given through `x = u - 1`.
pub fn path_value(f: &Field, m: usize, poset: &PatternPoset, lambda: &Matrix, x: &Matrix) -> Result<CharValue> {
    if !is_normal_form(lambda, poset, RepStyle::Path, LabelKind::Character)? {
        return Err(Error::Style {
            style: "path".into(),
            reason: "character label is not a path representative".into(),
        });
    }
    if !is_normal_form(x, poset, RepStyle::Path, LabelKind::Class)? {
        return Err(Error::Style { style: "path".into(), reason: "class label is not a path representative".into() });
    }
    let g = Geometry {
        m,
        wt: stats(lambda).wt,
        lambda,
        x,
        lam: lambda_corners(f, lambda),
        us: class_corners(f, x),
        wl: Walk::of(f, lambda),
        wu: Walk::of(f, x),
    };
    if let Some(reason) = g.vanishing(f) {
        return Ok(CharValue::zero(f.p(), reason));
    }
    let exponent = path_degree_exponent(f, lambda, m) as i64 - g.lost_exponent();
    let diag = f.sum(lambda.entries().into_iter().map(|((i, j), v)| f.mul(v, x.get(i, j))));
    let arg = f.add(diag, g.touch_sum(f));
    Ok(CharValue::nonzero(orient(f.theta(arg).scale(&q_pow(f.q(), exponent)), ORIENTATION)))
}

pub fn path_char_value(f: &Field, lambda: &SupercharLabel, u: &SuperclassLabel) -> Result<CharValue> {
    if lambda.style != RepStyle::Path || u.style != RepStyle::Path {
        return Err(Error::Style { style: "path".into(), reason: "both labels must be path".into() });
    }
    if lambda.poset != u.poset {
        return Err(Error::Invalid("labels live on different posets".into()));
    }
    let m = crate::reps::style_m(&lambda.poset, RepStyle::Path)?;
    path_value(f, m, &lambda.poset, lambda.matrix(), u.matrix())
}
