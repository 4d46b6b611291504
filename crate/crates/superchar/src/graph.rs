//! Union-find and the row/column graph of a matrix.

use crate::field::FieldScalar;
use crate::matrix::Matrix;

/// Disjoint sets where every root is the minimum element of its set.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind { parent: (0..len as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut c = x;
        while self.parent[c] as usize != r {
            let next = self.parent[c] as usize;
            self.parent[c] = r as u32;
            c = next;
        }
        r
    }

    /// Merges the sets of `a` and `b`; the smaller root wins.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        true
    }

    /// Root of every element after full compression.
    pub fn roots(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGraph {
    pub vertices: Vec<((usize, usize), FieldScalar)>,
    pub edges: Vec<(usize, usize)>,
    /// Vertex indices of each component, components ordered by their first vertex.
    pub components: Vec<Vec<usize>>,
}

impl MatrixGraph {
    /// Vertices are the nonzero entries; two are adjacent when they share a row or a column.
    pub fn of(a: &Matrix) -> Self {
        Self::from_vertices(a.entries())
    }

    pub fn from_vertices(vertices: Vec<((usize, usize), FieldScalar)>) -> Self {
        let mut edges = Vec::new();
        let mut uf = UnionFind::new(vertices.len());
        for x in 0..vertices.len() {
            for y in (x + 1)..vertices.len() {
                let ((i, j), _) = vertices[x];
                let ((k, l), _) = vertices[y];
                if i == k || j == l {
                    edges.push((x, y));
                    uf.union(x, y);
                }
            }
        }
        let roots = uf.roots();
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; vertices.len()];
        for (v, &r) in roots.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = components.len();
                components.push(Vec::new());
            }
            components[slot[r]].push(v);
        }
        MatrixGraph { vertices, edges, components }
    }

    /// Component positions as sorted lists.
    pub fn component_positions(&self) -> Vec<Vec<(usize, usize)>> {
        self.components.iter().map(|c| c.iter().map(|&v| self.vertices[v].0).collect()).collect()
    }

    /// The restriction of `a` to one component.
    pub fn component_matrix(&self, n: usize, comp: usize) -> Matrix {
        let entries: Vec<_> = self.components[comp].iter().map(|&v| self.vertices[v]).collect();
        Matrix::from_entries(n, &entries)
    }
}
