//! The undirected bipartite graph of source-to-sink edges, the Moon–Moser
//! degree condition, and Hamilton cycle search on balanced bipartite graphs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::OrientedGraph;
use crate::oracle;
use crate::path::ParityFrame;
use crate::set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BipartiteError {
    OverlappingParts,
    /// `|X| != |Y|`.
    BadParts {
        x: usize,
        y: usize,
    },
    /// A Hamilton cycle needs `m >= 2`.
    TooSmall {
        m: usize,
    },
    /// Edge endpoints are not one in each part.
    NotAcross {
        u: usize,
        v: usize,
    },
    BudgetExceeded,
    NotOnCycle {
        vertex: usize,
    },
}

impl fmt::Display for BipartiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BipartiteError::OverlappingParts => f.write_str("parts overlap"),
            BipartiteError::BadParts { x, y } => write!(f, "unbalanced parts: |X|={x}, |Y|={y}"),
            BipartiteError::TooSmall { m } => write!(f, "part size {m} is below 2"),
            BipartiteError::NotAcross { u, v } => write!(f, "edge {u}-{v} does not join the parts"),
            BipartiteError::BudgetExceeded => f.write_str("search budget exceeded"),
            BipartiteError::NotOnCycle { vertex } => write!(f, "vertex {vertex} is not on the cycle"),
        }
    }
}

impl core::error::Error for BipartiteError {}

/// A simple bipartite graph with parts `X`, `Y` over vertex ids `0..64`.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteView {
    x: VertexSet,
    y: VertexSet,
    adj: Vec<VertexSet>,
}

impl BipartiteView {
    pub fn new(x: VertexSet, y: VertexSet) -> Result<Self, BipartiteError> {
        if !x.intersection(y).is_empty() {
            return Err(BipartiteError::OverlappingParts);
        }
        Ok(BipartiteView {
            x,
            y,
            adj: vec![VertexSet::EMPTY; MAX_VERTICES],
        })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), BipartiteError> {
        let across = (self.x.contains(u) && self.y.contains(v)) || (self.y.contains(u) && self.x.contains(v));
        if !across {
            return Err(BipartiteError::NotAcross { u, v });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn x(&self) -> VertexSet {
        self.x
    }

    #[inline]
    pub fn y(&self) -> VertexSet {
        self.y
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        self.x.union(self.y)
    }

    #[inline]
    pub fn nbrs(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.x.iter().map(|v| self.degree(v)).sum()
    }

    /// Common part size, if balanced.
    pub fn balanced_size(&self) -> Result<usize, BipartiteError> {
        let (x, y) = (self.x.len(), self.y.len());
        if x == y {
            Ok(x)
        } else {
            Err(BipartiteError::BadParts { x, y })
        }
    }

    /// The subgraph induced on `keep`.
    pub fn restrict(&self, keep: VertexSet) -> BipartiteView {
        let mut adj = vec![VertexSet::EMPTY; MAX_VERTICES];
        for v in self.vertices().intersection(keep) {
            adj[v] = self.adj[v].intersection(keep);
        }
        BipartiteView {
            x: self.x.intersection(keep),
            y: self.y.intersection(keep),
            adj,
        }
    }

    /// True iff `cycle` visits every vertex once, alternates parts, and uses only edges.
    pub fn is_hamilton_cycle(&self, cycle: &[usize]) -> bool {
        let len = cycle.len();
        if len < 4 || cycle.iter().copied().collect::<VertexSet>() != self.vertices() || len != self.vertices().len() {
            return false;
        }
        (0..len).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % len]))
    }

    /// True iff `path` visits every vertex once using only edges.
    pub fn is_hamilton_path(&self, path: &[usize]) -> bool {
        path.len() == self.vertices().len()
            && path.iter().copied().collect::<VertexSet>() == self.vertices()
            && path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

impl fmt::Debug for BipartiteView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(usize, usize)> = self
            .x
            .iter()
            .flat_map(|u| self.adj[u].iter().map(move |v| (u, v)))
            .collect();
        f.debug_struct("BipartiteView")
            .field("x", &self.x)
            .field("y", &self.y)
            .field("edges", &edges)
            .finish()
    }
}

/// `X = O`, `Y = E`, and `x ~ y` iff `x -> y` is an edge of `g`.
pub fn build_h(g: &OrientedGraph, frame: &ParityFrame) -> BipartiteView {
    let mut h = BipartiteView::new(frame.sources, frame.sinks).expect("frame classes are disjoint");
    for x in frame.sources {
        let ys = g.out_nbrs(x).intersection(frame.sinks);
        h.adj[x] = ys;
        for y in ys {
            h.adj[y].insert(x);
        }
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// The smallest `ℓ` at which the Moon–Moser condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoonMoserFailure {
    pub ell: usize,
    pub side: Side,
    /// Vertices of that side with degree at most `ell`.
    pub witnesses: VertexSet,
}

/// For every `1 <= ℓ <= ⌊m/2⌋`, fewer than `ℓ` vertices of `X` (and of `Y`)
/// may have degree at most `ℓ`. `m` is the size of the larger part.
pub fn moon_moser_check(h: &BipartiteView) -> Result<(), MoonMoserFailure> {
    let m = h.x.len().max(h.y.len());
    for ell in 1..=m / 2 {
        for (side, part) in [(Side::X, h.x), (Side::Y, h.y)] {
            let low: VertexSet = part.iter().filter(|&v| h.degree(v) <= ell).collect();
            if low.len() >= ell {
                return Err(MoonMoserFailure {
                    ell,
                    side,
                    witnesses: low,
                });
            }
        }
    }
    Ok(())
}

/// Budget for [`mm_hamilton_cycle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HamiltonBudget {
    /// Rotation steps allowed in the constructive pass.
    pub rotation_steps: usize,
    /// Search nodes allowed in the exact fallback.
    pub backtrack_nodes: u64,
}

impl Default for HamiltonBudget {
    fn default() -> Self {
        HamiltonBudget {
            rotation_steps: 4096,
            backtrack_nodes: 5_000_000,
        }
    }
}

/// Hamilton cycle of a balanced bipartite graph: a rotation–extension pass,
/// then exact backtracking. `Ok(None)` means no cycle exists.
///
/// Returned cycles are normalised (see [`normalize_cycle`]).
pub fn mm_hamilton_cycle(h: &BipartiteView, budget: HamiltonBudget) -> Result<Option<Vec<usize>>, BipartiteError> {
    let m = h.balanced_size()?;
    if m < 2 {
        return Err(BipartiteError::TooSmall { m });
    }
    if let Some(c) = rotation_extension_cycle(h, budget.rotation_steps) {
        debug_assert!(h.is_hamilton_cycle(&c));
        return Ok(Some(normalize_cycle(&c)));
    }
    match oracle::hamilton_cycle_search(h, Some(budget.backtrack_nodes)) {
        Ok(found) => Ok(found),
        Err(oracle::SearchExhausted) => Err(BipartiteError::BudgetExceeded),
    }
}

/// Rotates so the cycle starts at its smallest vertex and continues toward the
/// smaller of that vertex's two cycle neighbours.
pub fn normalize_cycle(cycle: &[usize]) -> Vec<usize> {
    let len = cycle.len();
    if len == 0 {
        return Vec::new();
    }
    let (start, _) = cycle.iter().enumerate().min_by_key(|&(_, v)| *v).unwrap();
    let next = cycle[(start + 1) % len];
    let prev = cycle[(start + len - 1) % len];
    if next <= prev {
        (0..len).map(|i| cycle[(start + i) % len]).collect()
    } else {
        (0..len).map(|i| cycle[(start + len - i) % len]).collect()
    }
}

/// The cycle opened at `v`: `v` followed by the rest of the cycle in its stored order.
pub fn cut_cycle_at(cycle: &[usize], v: usize) -> Result<Vec<usize>, BipartiteError> {
    let pos = cycle
        .iter()
        .position(|&u| u == v)
        .ok_or(BipartiteError::NotOnCycle { vertex: v })?;
    let len = cycle.len();
    Ok((0..len).map(|i| cycle[(pos + i) % len]).collect())
}

/// Pósa-style search: grow a path greedily, rotate at the tail when stuck,
/// close into a cycle and reopen it at a vertex with an outside neighbour.
fn rotation_extension_cycle(h: &BipartiteView, max_steps: usize) -> Option<Vec<usize>> {
    let all = h.vertices();
    let total = all.len();
    if all.iter().any(|v| h.degree(v) < 2) {
        return None;
    }
    let start = h.x.iter().max_by_key(|&v| (h.degree(v), core::cmp::Reverse(v)))?;
    let mut path = vec![start];
    let mut on_path = VertexSet::singleton(start);
    let mut steps = 0usize;
    // Rotation endpoints already visited for the current path length; avoids cycling.
    let mut tried_ends = VertexSet::EMPTY;
    let mut flip_used = false;

    while steps < max_steps {
        steps += 1;
        let tail = *path.last().unwrap();
        let free = h.nbrs(tail).difference(on_path);
        if let Some(w) = pick_min_degree(h, free, on_path) {
            path.push(w);
            on_path.insert(w);
            tried_ends = VertexSet::EMPTY;
            flip_used = false;
            continue;
        }
        let head = path[0];
        // Closable: even length and the ends are adjacent.
        if path.len() % 2 == 0 && h.has_edge(tail, head) {
            if path.len() == total {
                return Some(path);
            }
            // Reopen at a cycle vertex with an outside neighbour.
            let mut reopened = false;
            for i in 0..path.len() {
                let outside = h.nbrs(path[i]).difference(on_path);
                if let Some(w) = outside.first() {
                    // Cycle c_{i+1} .. c_{len-1} c_0 .. c_i, then w.
                    let len = path.len();
                    let mut np: Vec<usize> = (1..=len).map(|j| path[(i + j) % len]).collect();
                    np.push(w);
                    on_path.insert(w);
                    path = np;
                    tried_ends = VertexSet::EMPTY;
                    flip_used = false;
                    reopened = true;
                    break;
                }
            }
            if !reopened {
                // Disconnected.
                return None;
            }
            continue;
        }
        // Rotate: chord tail ~ path[j] gives path[..=j] + reversed(path[j+1..]).
        tried_ends.insert(tail);
        let len = path.len();
        let mut rotated = false;
        let chords = h.nbrs(tail).intersection(on_path);
        // Prefer a chord whose new end is fresh, preferring ends that close to head.
        let mut best: Option<(usize, (bool, usize))> = None;
        for j in 0..len.saturating_sub(2) {
            if !chords.contains(path[j]) {
                continue;
            }
            let new_end = path[j + 1];
            if tried_ends.contains(new_end) {
                continue;
            }
            let closes = h.has_edge(new_end, head) && len % 2 == 0;
            let free_nbrs = h.nbrs(new_end).difference(on_path).len();
            let key = (closes || free_nbrs > 0, free_nbrs);
            if best.is_none_or(|(_, k)| key > k) {
                best = Some((j, key));
            }
        }
        if let Some((j, _)) = best {
            path[j + 1..].reverse();
            rotated = true;
        }
        if !rotated {
            if flip_used {
                return None;
            }
            // Try rotating from the other end.
            path.reverse();
            tried_ends = VertexSet::EMPTY;
            flip_used = true;
        }
    }
    None
}

fn pick_min_degree(h: &BipartiteView, candidates: VertexSet, on_path: VertexSet) -> Option<usize> {
    candidates
        .iter()
        .min_by_key(|&w| (h.nbrs(w).difference(on_path).len(), w))
}
