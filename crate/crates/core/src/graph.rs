//! Oriented graphs: no loops, no antiparallel pairs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    LoopEdge {
        vertex: usize,
    },
    TwoCycle {
        u: usize,
        v: usize,
    },
    DuplicateEdge {
        u: usize,
        v: usize,
    },
    VertexOutOfRange {
        vertex: usize,
        n: usize,
    },
    /// More vertices than fit in a [`VertexSet`].
    TooManyVertices {
        n: usize,
    },
    EmptyGraph,
    BadParams(&'static str),
    TooLarge {
        n: usize,
        bound: usize,
    },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::LoopEdge { vertex } => write!(f, "loop edge at vertex {vertex}"),
            GraphError::TwoCycle { u, v } => {
                write!(f, "both ({u},{v}) and ({v},{u}) present: not an oriented graph")
            }
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u},{v})"),
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n={n}")
            }
            GraphError::TooManyVertices { n } => {
                write!(f, "{n} vertices exceeds the supported maximum of {MAX_VERTICES}")
            }
            GraphError::EmptyGraph => f.write_str("graph has no vertices"),
            GraphError::BadParams(msg) => write!(f, "bad parameters: {msg}"),
            GraphError::TooLarge { n, bound } => {
                write!(f, "n={n} exceeds the configured bound {bound}")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// An oriented graph on vertices `0..n`, `n <= 64`.
///
/// Out- and in-neighbourhoods are both stored; they are kept consistent by
/// construction and the value is immutable afterwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    out_nbrs: Vec<VertexSet>,
    in_nbrs: Vec<VertexSet>,
}

/// Degree statistics of a graph. `None` stands for "undefined".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeSummary {
    pub min_semidegree: Option<usize>,
    pub min_pseudo_semidegree: Option<usize>,
    pub edge_count: usize,
}

impl OrientedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        Ok(OrientedGraph {
            n,
            out_nbrs: vec![VertexSet::EMPTY; n],
            in_nbrs: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph containing exactly `edges`, each `(u, v)` meaning `u -> v`.
    pub fn from_edge_list(edges: &[(usize, usize)], n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from out-neighbourhood bitmasks, rejecting loops and 2-cycles.
    pub fn from_out_sets(out: &[VertexSet]) -> Result<Self, GraphError> {
        let n = out.len();
        let mut g = Self::empty(n)?;
        let all = VertexSet::full(n);
        for (u, &s) in out.iter().enumerate() {
            if let Some(v) = s.difference(all).first() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            for v in s {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n;
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::LoopEdge { vertex: u });
        }
        if self.out_nbrs[u].contains(v) {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        if self.out_nbrs[v].contains(u) {
            return Err(GraphError::TwoCycle { u, v });
        }
        self.out_nbrs[u].insert(v);
        self.in_nbrs[v].insert(u);
        Ok(())
    }

    /// Adds `u -> v` without checks. Callers guarantee the pair is new and unordered-free.
    #[inline]
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.out_nbrs[u].insert(v);
        self.in_nbrs[v].insert(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn out_nbrs(&self, v: usize) -> VertexSet {
        self.out_nbrs[v]
    }

    #[inline]
    pub fn in_nbrs(&self, v: usize) -> VertexSet {
        self.in_nbrs[v]
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_nbrs[v].len()
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_nbrs[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_nbrs[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.out_nbrs.iter().map(|s| s.len()).sum()
    }

    /// All edges, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_nbrs
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |v| (u, v)))
    }

    /// Minimum over vertices of `min(d+(v), d-(v))`.
    pub fn min_semidegree(&self) -> Result<usize, GraphError> {
        (0..self.n)
            .map(|v| self.out_degree(v).min(self.in_degree(v)))
            .min()
            .ok_or(GraphError::EmptyGraph)
    }

    /// Minimum over all strictly positive in- and out-degrees; `None` iff edgeless.
    pub fn min_pseudo_semidegree(&self) -> Option<usize> {
        self.out_nbrs
            .iter()
            .chain(self.in_nbrs.iter())
            .map(|s| s.len())
            .filter(|&d| d > 0)
            .min()
    }

    pub fn degree_summary(&self) -> DegreeSummary {
        DegreeSummary {
            min_semidegree: self.min_semidegree().ok(),
            min_pseudo_semidegree: self.min_pseudo_semidegree(),
            edge_count: self.edge_count(),
        }
    }

    /// Subgraph induced on `keep`, relabelled densely in increasing order.
    ///
    /// The second component maps each old vertex to its new id.
    pub fn induced_subgraph(&self, keep: VertexSet) -> (OrientedGraph, Vec<Option<usize>>) {
        let keep = keep.intersection(self.vertices());
        let mut new_of_old = vec![None; self.n];
        for (i, v) in keep.iter().enumerate() {
            new_of_old[v] = Some(i);
        }
        let mut h = OrientedGraph {
            n: keep.len(),
            out_nbrs: vec![VertexSet::EMPTY; keep.len()],
            in_nbrs: vec![VertexSet::EMPTY; keep.len()],
        };
        for u in keep {
            for v in self.out_nbrs[u].intersection(keep) {
                let (a, b) = (new_of_old[u].unwrap(), new_of_old[v].unwrap());
                h.add_edge_unchecked(a, b);
            }
        }
        (h, new_of_old)
    }

    /// Checks the loop, orientation and consistency invariants over all ordered pairs.
    pub fn check_invariants(&self) -> bool {
        if self.out_nbrs.len() != self.n || self.in_nbrs.len() != self.n {
            return false;
        }
        let all = VertexSet::full(self.n);
        for u in 0..self.n {
            if !self.out_nbrs[u].is_subset(all) || !self.in_nbrs[u].is_subset(all) {
                return false;
            }
            for v in 0..self.n {
                let fwd = self.out_nbrs[u].contains(v);
                if fwd != self.in_nbrs[v].contains(u) {
                    return false;
                }
                if fwd && (u == v || self.out_nbrs[v].contains(u)) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrientedGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
