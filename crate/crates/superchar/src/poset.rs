//! Posets on `{1..n}` refining the positional order, and their allowed-position sets.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetKind {
    Chain,
    Interpolating { m: usize },
    General,
}

/// A strict partial order on `{1..n}` with `i <_P j` implying `i < j`.
#[derive(Clone, Debug)]
pub struct PatternPoset {
    n: usize,
    kind: PosetKind,
    less: Vec<bool>,
    j: Vec<(usize, usize)>,
    index: Vec<Option<usize>>,
}

impl PartialEq for PatternPoset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.less == other.less
    }
}

impl Eq for PatternPoset {}

impl PatternPoset {
    fn build(n: usize, kind: PosetKind, rel: impl Fn(usize, usize) -> bool) -> Self {
        let mut less = vec![false; n * n];
        let mut index = vec![None; n * n];
        let mut j = Vec::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                if rel(a, b) {
                    less[(a - 1) * n + (b - 1)] = true;
                    index[(a - 1) * n + (b - 1)] = Some(j.len());
                    j.push((a, b));
                }
            }
        }
        PatternPoset { n, kind, less, j, index }
    }

    /// The total order `1 < 2 < ... < n`.
    pub fn chain(n: usize) -> Self {
        Self::build(n, PosetKind::Chain, |_, _| true)
    }

    /// `P_(m)`: a chain on `2..n` with `1 < j` exactly for `j > m`.
    pub fn interpolating(n: usize, m: usize) -> Result<Self> {
        if m > n {
            return Err(Error::Invalid(format!("m = {m} outside 0..={n}")));
        }
        Ok(Self::build(n, PosetKind::Interpolating { m }, move |a, b| a > 1 || b > m))
    }

    /// The chain on `1..n-1` with `n` incomparable to everything.
    pub fn last_removed(n: usize) -> Self {
        Self::build(n, PosetKind::General, move |_, b| b < n)
    }

    /// A poset from an explicit strict relation; rejects pairs with `i >= j` and non-transitive input.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rel = vec![false; n * n];
        for &(a, b) in pairs {
            if a == 0 || b > n || a >= b {
                return Err(Error::Invalid(format!("pair ({a},{b}) does not refine 1..{n}")));
            }
            rel[(a - 1) * n + (b - 1)] = true;
        }
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    if rel[(a - 1) * n + (b - 1)] && rel[(b - 1) * n + (c - 1)] && !rel[(a - 1) * n + (c - 1)] {
                        return Err(Error::Invalid(format!("relation not transitive at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Self::build(n, PosetKind::General, |a, b| rel[(a - 1) * n + (b - 1)]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    /// `Some(m)` for an interpolating poset, `Some(0)` for a chain.
    pub fn interpolating_m(&self) -> Option<usize> {
        match self.kind {
            PosetKind::Chain => Some(0),
            PosetKind::Interpolating { m } => Some(m),
            PosetKind::General => None,
        }
    }

    pub fn is_chain(&self) -> bool {
        self.j.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a >= 1 && b >= 1 && a <= self.n && b <= self.n && self.less[(a - 1) * self.n + (b - 1)]
    }

    /// The allowed positions `J`, row-major.
    pub fn positions(&self) -> &[(usize, usize)] {
        &self.j
    }

    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        if a == 0 || b == 0 || a > self.n || b > self.n {
            return None;
        }
        self.index[(a - 1) * self.n + (b - 1)]
    }

    /// Whether `J` is transitively closed.
    pub fn is_transitive(&self) -> bool {
        self.j.iter().all(|&(a, b)| ((b + 1)..=self.n).all(|c| !self.lt(b, c) || self.lt(a, c)))
    }
}

impl fmt::Display for PatternPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PosetKind::Chain => write!(f, "chain({})", self.n),
            PosetKind::Interpolating { m } => write!(f, "P_({m}) on {}", self.n),
            PosetKind::General => write!(f, "poset on {} with {} relations", self.n, self.j.len()),
        }
    }
}
