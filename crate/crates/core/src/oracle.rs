//! Exact brute-force ground truth.
//!
//! Everything here is exponential and guarded by an [`OracleBudget`]; the
//! constructive engine never calls into this module except as an explicit
//! fallback, so these routines serve as an independent referee.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bipartite::{normalize_cycle, BipartiteError, BipartiteView};
use crate::graph::OrientedGraph;
use crate::path::{AlternatingPath, ParityFrame};
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Vertex bound for the subset dynamic programme.
    pub max_n_subset_dp: usize,
    /// Vertex bound for exhaustive path enumeration.
    pub max_n_enumeration: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n_subset_dp: 22,
            max_n_enumeration: 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { n: usize, bound: usize },
    NoRespectablePath,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { n, bound } => {
                write!(f, "{n} vertices exceeds the oracle bound {bound}")
            }
            OracleError::NoRespectablePath => f.write_str("no respectable path spans the frame"),
        }
    }
}

impl core::error::Error for OracleError {}

// State bit `2v` : the last edge left v (v is a source, next edge leaves v).
// State bit `2v+1`: the last edge entered v (next edge enters v too).
#[inline]
fn leave_bit(v: usize) -> u64 {
    1u64 << (2 * v)
}

#[inline]
fn enter_bit(v: usize) -> u64 {
    1u64 << (2 * v + 1)
}

/// Runs the subset DP. Stops as soon as a reachable subset of size `stop_at` is
/// seen. Returns the table and the largest reachable subset found.
fn subset_dp(g: &OrientedGraph, stop_at: usize) -> (Vec<u64>, u64) {
    let n = g.n();
    let mut reach = vec![0u64; 1usize << n];
    for v in 0..n {
        reach[1 << v] = leave_bit(v) | enter_bit(v);
    }
    let mut best_mask = 0u64;
    let mut best = 0usize;
    for mask in 1..reach.len() {
        let mut states = reach[mask];
        if states == 0 {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size > best {
            best = size;
            best_mask = mask as u64;
            if size >= stop_at {
                break;
            }
        }
        let free = !(mask as u64);
        while states != 0 {
            let bit = states.trailing_zeros() as usize;
            states &= states - 1;
            let v = bit / 2;
            if bit % 2 == 1 {
                // v is a sink: next vertex w must point into v and becomes a source.
                for w in VertexSet(g.in_nbrs(v).bits() & free) {
                    reach[mask | 1 << w] |= leave_bit(w);
                }
            } else {
                for w in VertexSet(g.out_nbrs(v).bits() & free) {
                    reach[mask | 1 << w] |= enter_bit(w);
                }
            }
        }
    }
    (reach, best_mask)
}

fn witness_from_table(g: &OrientedGraph, reach: &[u64], mut mask: u64) -> AlternatingPath {
    if mask == 0 {
        return AlternatingPath::empty();
    }
    let states = reach[mask as usize];
    let bit = states.trailing_zeros() as usize;
    let (mut v, mut entered) = (bit / 2, bit % 2 == 1);
    let mut rev = vec![v];
    while mask.count_ones() > 1 {
        let prev = mask & !(1u64 << v);
        let prev_states = reach[prev as usize];
        // Predecessor u: if v was entered, u -> v and u is a source; else v -> u, u is a sink.
        let found = if entered {
            g.in_nbrs(v)
                .iter()
                .find(|&u| prev_states & leave_bit(u) != 0 && prev >> u & 1 == 1)
                .map(|u| (u, false))
        } else {
            g.out_nbrs(v)
                .iter()
                .find(|&u| prev_states & enter_bit(u) != 0 && prev >> u & 1 == 1)
                .map(|u| (u, true))
        };
        let (u, u_entered) = found.expect("reachable state has a predecessor");
        rev.push(u);
        mask = prev;
        v = u;
        entered = u_entered;
    }
    rev.reverse();
    AlternatingPath::from_vertices(g, rev).expect("DP witness follows edges")
}

/// Maximum order of an alternating path in `g`, with a witness.
///
/// Dynamic programme over (vertex subset, last vertex, direction of last edge).
pub fn longest_alt_path_exact(
    g: &OrientedGraph,
    budget: &OracleBudget,
) -> Result<(usize, AlternatingPath), OracleError> {
    check_bound(g.n(), budget.max_n_subset_dp)?;
    let (reach, best) = subset_dp(g, usize::MAX);
    let w = witness_from_table(g, &reach, best);
    Ok((w.order(), w))
}

/// Whether `g` has an alternating path on `k` vertices; stops early once one is seen.
pub fn has_alt_path_k(g: &OrientedGraph, k: usize, budget: &OracleBudget) -> Result<bool, OracleError> {
    check_bound(g.n(), budget.max_n_subset_dp)?;
    if k == 0 {
        return Ok(true);
    }
    if k > g.n() {
        return Ok(false);
    }
    let (_, best) = subset_dp(g, k);
    Ok(best.count_ones() as usize >= k)
}

/// An alternating path on exactly `k` vertices, if one exists.
pub fn find_alt_path_k(
    g: &OrientedGraph,
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<AlternatingPath>, OracleError> {
    check_bound(g.n(), budget.max_n_subset_dp)?;
    if k == 0 {
        return Ok(Some(AlternatingPath::empty()));
    }
    if k > g.n() {
        return Ok(None);
    }
    let (reach, best) = subset_dp(g, k);
    if (best.count_ones() as usize) < k {
        return Ok(None);
    }
    Ok(Some(witness_from_table(g, &reach, best)))
}

/// Longest alternating path by plain depth-first enumeration of every path.
/// Independent of the subset DP; used to cross-check it.
pub fn longest_alt_path_enumerate(g: &OrientedGraph, budget: &OracleBudget) -> Result<usize, OracleError> {
    check_bound(g.n(), budget.max_n_enumeration)?;
    fn dfs(g: &OrientedGraph, v: usize, entered: bool, used: VertexSet, depth: usize, best: &mut usize) {
        *best = (*best).max(depth);
        let next = if entered { g.in_nbrs(v) } else { g.out_nbrs(v) };
        for w in next.difference(used) {
            let mut u = used;
            u.insert(w);
            dfs(g, w, !entered, u, depth + 1, best);
        }
    }
    let mut best = 0;
    for v in 0..g.n() {
        for entered in [false, true] {
            dfs(g, v, entered, VertexSet::singleton(v), 1, &mut best);
        }
    }
    Ok(best)
}

/// All start vertices (in `O`) and terminal vertices (in `E`) of respectable
/// paths: alternating paths spanning `O ∪ E` whose every edge runs `O -> E`.
///
/// Exact: a DP over (covered subset, last vertex) from every start.
pub fn enumerate_respectable_endpoints(
    g: &OrientedGraph,
    frame: &ParityFrame,
    budget: &OracleBudget,
) -> Result<(VertexSet, VertexSet), OracleError> {
    let span: Vec<usize> = frame.span().iter().collect();
    let size = span.len();
    check_bound(size, budget.max_n_enumeration)?;
    if size == 0 {
        return Err(OracleError::NoRespectablePath);
    }
    // Local adjacency: O -> E edges only, as local bitmasks.
    let local = |s: VertexSet| -> u32 {
        span.iter()
            .enumerate()
            .filter(|(_, &v)| s.contains(v))
            .fold(0u32, |acc, (i, _)| acc | 1 << i)
    };
    let is_source: Vec<bool> = span.iter().map(|&v| frame.sources.contains(v)).collect();
    let forward: Vec<u32> = span
        .iter()
        .map(|&v| local(g.out_nbrs(v).intersection(frame.sinks)))
        .collect();
    let backward: Vec<u32> = span
        .iter()
        .map(|&v| local(g.in_nbrs(v).intersection(frame.sources)))
        .collect();

    let full = (1u32 << size) - 1;
    let mut starts = VertexSet::EMPTY;
    let mut terminals = VertexSet::EMPTY;
    let mut reach = vec![0u32; 1usize << size];
    for s in (0..size).filter(|&i| is_source[i]) {
        reach.iter_mut().for_each(|r| *r = 0);
        reach[1 << s] = 1 << s;
        for mask in 1..=full {
            let mut lasts = reach[mask as usize];
            while lasts != 0 {
                let v = lasts.trailing_zeros() as usize;
                lasts &= lasts - 1;
                let next = if is_source[v] { forward[v] } else { backward[v] } & !mask;
                let mut nx = next;
                while nx != 0 {
                    let w = nx.trailing_zeros();
                    nx &= nx - 1;
                    reach[(mask | 1 << w) as usize] |= 1 << w;
                }
            }
        }
        let ends = reach[full as usize];
        if ends != 0 {
            starts.insert(span[s]);
            for (i, &v) in span.iter().enumerate() {
                if ends >> i & 1 == 1 {
                    terminals.insert(v);
                }
            }
        }
    }
    if starts.is_empty() {
        return Err(OracleError::NoRespectablePath);
    }
    Ok((starts, terminals))
}

/// Search ran out of its node allowance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchExhausted;

/// Exact Hamilton cycle search on a balanced bipartite graph.
pub fn hamilton_cycle_bipartite_exact(h: &BipartiteView) -> Result<Option<Vec<usize>>, BipartiteError> {
    let m = h.balanced_size()?;
    if m < 2 {
        return Err(BipartiteError::TooSmall { m });
    }
    Ok(hamilton_cycle_search(h, None).expect("unbounded search always completes"))
}

/// Backtracking with fewest-options-first branching. Prunes when an unvisited
/// vertex has fewer than two usable neighbours or when the unvisited vertices
/// together with the current end are disconnected.
pub(crate) fn hamilton_cycle_search(
    h: &BipartiteView,
    node_limit: Option<u64>,
) -> Result<Option<Vec<usize>>, SearchExhausted> {
    let all = h.vertices();
    let total = all.len();
    if total < 4 || h.x().len() != h.y().len() || all.iter().any(|v| h.degree(v) < 2) {
        return Ok(None);
    }
    let start = h.x().iter().min_by_key(|&v| (h.degree(v), v)).expect("nonempty part");

    struct Search<'a> {
        h: &'a BipartiteView,
        start: usize,
        total: usize,
        path: Vec<usize>,
        nodes: u64,
        limit: Option<u64>,
    }

    impl Search<'_> {
        fn connected(&self, unvisited: VertexSet, head: usize) -> bool {
            let region = unvisited.union(VertexSet::singleton(head));
            let mut seen = VertexSet::singleton(head);
            let mut frontier = seen;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next = next.union(self.h.nbrs(v));
                }
                next = next.intersection(region).difference(seen);
                seen = seen.union(next);
                frontier = next;
            }
            seen == region
        }

        fn go(&mut self, visited: VertexSet) -> Result<bool, SearchExhausted> {
            self.nodes += 1;
            if self.limit.is_some_and(|l| self.nodes > l) {
                return Err(SearchExhausted);
            }
            let head = *self.path.last().unwrap();
            if self.path.len() == self.total {
                return Ok(self.h.has_edge(head, self.start));
            }
            let unvisited = self.h.vertices().difference(visited);
            let ends = VertexSet::singleton(head).union(VertexSet::singleton(self.start));
            for u in unvisited {
                if self.h.nbrs(u).intersection(unvisited.union(ends)).len() < 2 {
                    return Ok(false);
                }
            }
            if !self.connected(unvisited, head) {
                return Ok(false);
            }
            if self.h.nbrs(self.start).intersection(unvisited).is_empty() {
                return Ok(false);
            }
            let mut cands: Vec<usize> = self.h.nbrs(head).intersection(unvisited).iter().collect();
            cands.sort_by_key(|&w| (self.h.nbrs(w).intersection(unvisited).len(), w));
            for w in cands {
                self.path.push(w);
                let mut vis = visited;
                vis.insert(w);
                if self.go(vis)? {
                    return Ok(true);
                }
                self.path.pop();
            }
            Ok(false)
        }
    }

    let mut s = Search {
        h,
        start,
        total,
        path: vec![start],
        nodes: 0,
        limit: node_limit,
    };
    if s.go(VertexSet::singleton(start))? {
        Ok(Some(normalize_cycle(&s.path)))
    } else {
        Ok(None)
    }
}

fn check_bound(n: usize, bound: usize) -> Result<(), OracleError> {
    if n > bound {
        Err(OracleError::TooLarge { n, bound })
    } else {
        Ok(())
    }
}
