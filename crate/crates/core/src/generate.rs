//! Graph generators: blow-ups of directed cycles, seeded random orientations,
//! exhaustive enumeration of labelled oriented graphs, and stuck-path instances.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{GraphError, OrientedGraph};
use crate::path::AlternatingPath;
use crate::set::MAX_VERTICES;

/// Default vertex bound for [`enumerate_all_oriented`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 6;

/// `t` classes of `b` vertices each; every vertex of class `i` points to every
/// vertex of class `i + 1 (mod t)`. Class `i` is `i*b .. (i+1)*b`.
pub fn blowup_directed_cycle(t: usize, b: usize) -> Result<OrientedGraph, GraphError> {
    if t < 3 {
        return Err(GraphError::BadParams("cycle length must be at least 3"));
    }
    if b < 1 {
        return Err(GraphError::BadParams("class size must be at least 1"));
    }
    let n = t.checked_mul(b).ok_or(GraphError::TooManyVertices { n: usize::MAX })?;
    let mut g = OrientedGraph::empty(n)?;
    for class in 0..t {
        let next = (class + 1) % t;
        for u in class * b..(class + 1) * b {
            for v in next * b..(next + 1) * b {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

/// Each unordered pair independently carries an edge with probability `p`,
/// oriented uniformly at random. Deterministic in `seed`.
pub fn random_oriented(n: usize, p: f64, seed: u64) -> Result<OrientedGraph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_oriented_with(n, p, &mut rng)
}

/// Same as [`random_oriented`], drawing from a caller-supplied generator.
pub fn random_oriented_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<OrientedGraph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadParams("edge probability must lie in [0, 1]"));
    }
    let mut g = OrientedGraph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                if rng.random_bool(0.5) {
                    g.add_edge_unchecked(u, v);
                } else {
                    g.add_edge_unchecked(v, u);
                }
            }
        }
    }
    Ok(g)
}

/// Number of labelled oriented graphs on `n` vertices, `3^(n(n-1)/2)`, if it fits.
pub fn oriented_graph_count(n: usize) -> Option<u64> {
    let pairs = u32::try_from(n * n.saturating_sub(1) / 2).ok()?;
    3u64.checked_pow(pairs)
}

/// Lexicographic enumeration of all labelled oriented graphs on `n` vertices.
///
/// Pairs are taken in the order `(0,1), (0,2), ..., (n-2,n-1)`; each pair is a
/// base-3 digit with `absent < forward (u->v) < backward (v->u)`, the first pair
/// being the most significant digit. The `i`-th graph yielded is [`Enumeration::graph_at`]`(i)`.
#[derive(Debug, Clone)]
pub struct Enumeration {
    n: usize,
    pairs: Vec<(usize, usize)>,
    digits: Vec<u8>,
    next_index: u64,
    total: u64,
}

pub fn enumerate_all_oriented(n: usize) -> Result<Enumeration, GraphError> {
    enumerate_all_oriented_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_all_oriented_bounded(n: usize, bound: usize) -> Result<Enumeration, GraphError> {
    if n > bound || n > MAX_VERTICES {
        return Err(GraphError::TooLarge { n, bound });
    }
    let total = oriented_graph_count(n).ok_or(GraphError::TooLarge { n, bound })?;
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    let digits = vec![0; pairs.len()];
    Ok(Enumeration {
        n,
        pairs,
        digits,
        next_index: 0,
        total,
    })
}

impl Enumeration {
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The graph at position `index` of the enumeration order.
    pub fn graph_at(&self, mut index: u64) -> Option<OrientedGraph> {
        if index >= self.total {
            return None;
        }
        let mut g = OrientedGraph::empty(self.n).ok()?;
        for &(u, v) in self.pairs.iter().rev() {
            match index % 3 {
                1 => g.add_edge_unchecked(u, v),
                2 => g.add_edge_unchecked(v, u),
                _ => {}
            }
            index /= 3;
        }
        Some(g)
    }

    fn build_current(&self) -> OrientedGraph {
        let mut g = OrientedGraph::empty(self.n).expect("n checked at construction");
        for (&(u, v), &d) in self.pairs.iter().zip(&self.digits) {
            match d {
                1 => g.add_edge_unchecked(u, v),
                2 => g.add_edge_unchecked(v, u),
                _ => {}
            }
        }
        g
    }
}

impl Iterator for Enumeration {
    type Item = OrientedGraph;

    fn next(&mut self) -> Option<OrientedGraph> {
        if self.next_index >= self.total {
            return None;
        }
        let g = self.build_current();
        self.next_index += 1;
        for d in self.digits.iter_mut().rev() {
            if *d == 2 {
                *d = 0;
            } else {
                *d += 1;
                break;
            }
        }
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.total - self.next_index).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// An instance whose even path `o_0 e_1 o_1 e_2 ... o_{m-1} e_0` sits on a closed
/// parity frame: sources `0..m`, sinks `m..2m`, `x` further vertices `2m..2m+x`.
///
/// Each of the three blocks carries a tournament (rotational when `drop == 0`
/// and the block has odd size, random otherwise). `o_i` points to `e_i` and
/// `e_{i+1}`; every other source-to-sink edge survives with probability
/// `1 - drop`. The extra vertices point to every source and receive from every
/// sink, so no source has an out-neighbour and no sink an in-neighbour outside
/// the frame. Greedy extension is stuck on the returned path.
pub fn planted_closed_frame<R: Rng + ?Sized>(
    m: usize,
    x: usize,
    drop: f64,
    rng: &mut R,
) -> Result<(OrientedGraph, AlternatingPath), GraphError> {
    if m < 2 {
        return Err(GraphError::BadParams("frame needs at least two sources"));
    }
    if !(0.0..=1.0).contains(&drop) {
        return Err(GraphError::BadParams("drop probability must lie in [0, 1]"));
    }
    let n = 2 * m + x;
    let mut g = OrientedGraph::empty(n)?;
    let rotational = drop == 0.0;
    for (lo, hi) in [(0, m), (m, 2 * m), (2 * m, n)] {
        let s = hi - lo;
        for u in lo..hi {
            for v in u + 1..hi {
                let fwd = if rotational && s % 2 == 1 {
                    v - u <= s / 2
                } else {
                    rng.random_bool(0.5)
                };
                if fwd {
                    g.add_edge_unchecked(u, v);
                } else {
                    g.add_edge_unchecked(v, u);
                }
            }
        }
    }
    for o in 0..m {
        for e in 0..m {
            let kept = e == o || e == (o + 1) % m || !rng.random_bool(drop);
            if kept {
                g.add_edge_unchecked(o, m + e);
            }
        }
    }
    for w in 2 * m..n {
        for o in 0..m {
            g.add_edge_unchecked(w, o);
        }
        for e in m..2 * m {
            g.add_edge_unchecked(e, w);
        }
    }
    let verts = (0..m).flat_map(|i| [i, m + (i + 1) % m]).collect();
    Ok((g, AlternatingPath::new(verts, true)))
}

/// Random tail-extension walk from a uniform start vertex, stopping at
/// `max_order` vertices or when the tail has no candidate.
pub fn random_walk_path<R: Rng + ?Sized>(g: &OrientedGraph, max_order: usize, rng: &mut R) -> AlternatingPath {
    if g.n() == 0 || max_order == 0 {
        return AlternatingPath::empty();
    }
    let mut p = AlternatingPath::single(rng.random_range(0..g.n()));
    while p.order() < max_order {
        let cands: Vec<usize> = p.tail_candidates(g).iter().collect();
        if cands.is_empty() {
            break;
        }
        let w = cands[rng.random_range(0..cands.len())];
        p.push_tail(g, w);
    }
    p
}
