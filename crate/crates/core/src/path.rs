//! Alternating paths and their source/sink parity frames.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::OrientedGraph;
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathError {
    /// A parity frame needs an even number of vertices.
    OddOrder {
        order: usize,
    },
    TooShort {
        order: usize,
        wanted: usize,
    },
}

impl fmt::Display for PathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathError::OddOrder { order } => write!(f, "path has odd order {order}"),
            PathError::TooShort { order, wanted } => {
                write!(f, "path has order {order}, fewer than the {wanted} requested")
            }
        }
    }
}

impl core::error::Error for PathError {}

/// A path whose edge directions flip at every step, so that each internal
/// vertex is either a source or a sink of its two path edges.
///
/// Edge `i` joins `verts[i]` and `verts[i + 1]`; it is *forward*
/// (`verts[i] -> verts[i + 1]`) iff `first_forward == (i % 2 == 0)`.
/// `first_forward` is `None` below order 2.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlternatingPath {
    verts: Vec<usize>,
    first_forward: Option<bool>,
}

/// The source class `O` and sink class `E` of an even-order alternating path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParityFrame {
    pub sources: VertexSet,
    pub sinks: VertexSet,
    pub m: usize,
}

impl ParityFrame {
    /// `None` unless the classes are disjoint and of equal size.
    pub fn new(sources: VertexSet, sinks: VertexSet) -> Option<Self> {
        let m = sources.len();
        if sinks.len() != m || !sources.intersection(sinks).is_empty() {
            return None;
        }
        Some(ParityFrame { sources, sinks, m })
    }

    /// `O ∪ E`.
    #[inline]
    pub fn span(&self) -> VertexSet {
        self.sources.union(self.sinks)
    }
}

impl AlternatingPath {
    pub fn empty() -> Self {
        AlternatingPath::default()
    }

    pub fn single(v: usize) -> Self {
        AlternatingPath {
            verts: alloc::vec![v],
            first_forward: None,
        }
    }

    /// Wraps a vertex sequence. `first_forward` is dropped below order 2.
    /// No validity check is made; see [`validate`].
    pub fn new(verts: Vec<usize>, first_forward: bool) -> Self {
        let first_forward = (verts.len() >= 2).then_some(first_forward);
        AlternatingPath { verts, first_forward }
    }

    /// Reads the direction of the first edge off `g`. `None` if it is not an edge.
    pub fn from_vertices(g: &OrientedGraph, verts: Vec<usize>) -> Option<Self> {
        if verts.len() < 2 {
            return Some(AlternatingPath {
                verts,
                first_forward: None,
            });
        }
        let (a, b) = (verts[0], verts[1]);
        let ff = if g.has_edge(a, b) {
            true
        } else if g.has_edge(b, a) {
            false
        } else {
            return None;
        };
        Some(AlternatingPath::new(verts, ff))
    }

    #[inline]
    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.verts.len()
    }

    #[inline]
    pub fn first_forward(&self) -> Option<bool> {
        self.first_forward
    }

    pub fn first(&self) -> Option<usize> {
        self.verts.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.verts.last().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().copied().collect()
    }

    /// Whether edge `i` runs `verts[i] -> verts[i + 1]`.
    #[inline]
    pub fn edge_is_forward(&self, i: usize) -> bool {
        self.first_forward.unwrap_or(true) == (i % 2 == 0)
    }

    /// Whether the vertex at `pos` is the tail of its path edges. Order >= 2 only.
    #[inline]
    pub fn is_source_at(&self, pos: usize) -> bool {
        self.first_forward.unwrap_or(true) == (pos % 2 == 0)
    }

    /// The same path traversed from the other end.
    pub fn reversed(&self) -> Self {
        let mut verts = self.verts.clone();
        verts.reverse();
        let first_forward = self
            .first_forward
            .map(|ff| if self.verts.len() % 2 == 0 { !ff } else { ff });
        AlternatingPath { verts, first_forward }
    }

    /// Vertices `w` outside the path such that appending `w` keeps it alternating.
    pub fn tail_candidates(&self, g: &OrientedGraph) -> VertexSet {
        match self.verts.len() {
            0 => VertexSet::EMPTY,
            1 => {
                let v = self.verts[0];
                g.out_nbrs(v).union(g.in_nbrs(v))
            }
            len => {
                let v = self.verts[len - 1];
                let nbrs = if self.is_source_at(len - 1) {
                    g.out_nbrs(v)
                } else {
                    g.in_nbrs(v)
                };
                nbrs.difference(self.vertex_set())
            }
        }
    }

    /// Vertices `w` outside the path such that prepending `w` keeps it alternating.
    pub fn head_candidates(&self, g: &OrientedGraph) -> VertexSet {
        match self.verts.len() {
            0 => VertexSet::EMPTY,
            1 => self.tail_candidates(g),
            _ => {
                let v = self.verts[0];
                let nbrs = if self.is_source_at(0) {
                    g.out_nbrs(v)
                } else {
                    g.in_nbrs(v)
                };
                nbrs.difference(self.vertex_set())
            }
        }
    }

    /// Appends `w`; the caller guarantees `w` is a tail candidate.
    pub fn push_tail(&mut self, g: &OrientedGraph, w: usize) {
        if self.verts.len() == 1 {
            self.first_forward = Some(g.has_edge(self.verts[0], w));
        }
        self.verts.push(w);
    }

    /// Prepends `w`; the caller guarantees `w` is a head candidate.
    pub fn push_head(&mut self, g: &OrientedGraph, w: usize) {
        self.first_forward = match (self.verts.len(), self.first_forward) {
            (0, _) => None,
            (1, _) => Some(g.has_edge(w, self.verts[0])),
            (_, ff) => ff.map(|ff| !ff),
        };
        self.verts.insert(0, w);
    }

    /// The length-`k` prefix.
    pub fn trim(&self, k: usize) -> Result<Self, PathError> {
        if k > self.order() {
            return Err(PathError::TooShort {
                order: self.order(),
                wanted: k,
            });
        }
        let verts = self.verts[..k].to_vec();
        let first_forward = if k >= 2 { self.first_forward } else { None };
        Ok(AlternatingPath { verts, first_forward })
    }

    pub fn frame(&self) -> Result<ParityFrame, PathError> {
        frame_of(self)
    }
}

/// True iff `p` is a valid alternating path of `g`.
pub fn validate(g: &OrientedGraph, p: &AlternatingPath) -> bool {
    let n = g.n();
    let mut seen = VertexSet::EMPTY;
    for &v in &p.verts {
        if v >= n || seen.contains(v) {
            return false;
        }
        seen.insert(v);
    }
    if p.verts.len() < 2 {
        return p.first_forward.is_none();
    }
    if p.first_forward.is_none() {
        return false;
    }
    p.verts.windows(2).enumerate().all(|(i, w)| {
        if p.edge_is_forward(i) {
            g.has_edge(w[0], w[1])
        } else {
            g.has_edge(w[1], w[0])
        }
    })
}

/// Source and sink classes of an even-order path.
pub fn frame_of(p: &AlternatingPath) -> Result<ParityFrame, PathError> {
    let order = p.order();
    if order % 2 == 1 {
        return Err(PathError::OddOrder { order });
    }
    if order == 0 {
        return Err(PathError::TooShort { order, wanted: 2 });
    }
    let mut sources = VertexSet::EMPTY;
    let mut sinks = VertexSet::EMPTY;
    for (pos, &v) in p.verts.iter().enumerate() {
        if p.is_source_at(pos) {
            sources.insert(v);
        } else {
            sinks.insert(v);
        }
    }
    Ok(ParityFrame {
        sources,
        sinks,
        m: order / 2,
    })
}

/// Extends `p` one vertex at a time until neither end admits a new vertex.
///
/// The tail is tried before the head and the smallest candidate is taken. An
/// empty path is seeded with vertex 0.
pub fn greedy_extend(g: &OrientedGraph, p: &AlternatingPath) -> AlternatingPath {
    let mut p = p.clone();
    if p.order() == 0 {
        if g.n() == 0 {
            return p;
        }
        p = AlternatingPath::single(0);
    }
    loop {
        if let Some(w) = p.tail_candidates(g).first() {
            p.push_tail(g, w);
        } else if let Some(w) = p.head_candidates(g).first() {
            p.push_head(g, w);
        } else {
            return p;
        }
    }
}

impl fmt::Debug for AlternatingPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlternatingPath({self})")
    }
}

/// `first_forward:<0|1> verts:<ids>`; an unset direction prints as `0`.
impl fmt::Display for AlternatingPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "first_forward:{} verts:", u8::from(self.first_forward == Some(true)))?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::blowup_directed_cycle;
    use alloc::format;
    use alloc::vec;

    fn g(edges: &[(usize, usize)], n: usize) -> OrientedGraph {
        OrientedGraph::from_edge_list(edges, n).unwrap()
    }

    #[test]
    fn validate_examples() {
        let e = g(&[(0, 1)], 2);
        assert!(validate(&e, &AlternatingPath::new(vec![0, 1], true)));
        assert!(!validate(&e, &AlternatingPath::new(vec![0, 1], false)));

        let tri = g(&[(0, 1), (1, 2), (2, 0)], 3);
        assert!(AlternatingPath::from_vertices(&tri, vec![0, 1, 2]).is_some_and(|p| !validate(&tri, &p)));

        let b = blowup_directed_cycle(3, 2).unwrap();
        let p = AlternatingPath::new(vec![0, 2, 1, 3], true);
        assert!(validate(&b, &p));
        assert!(validate(&b, &AlternatingPath::single(4)));
        assert!(validate(&b, &AlternatingPath::empty()));
        assert!(!validate(&b, &AlternatingPath::new(vec![0, 2, 0], true)));
    }

    #[test]
    fn frames() {
        let f = frame_of(&AlternatingPath::new(vec![0, 1], true)).unwrap();
        assert_eq!(
            (f.sources, f.sinks, f.m),
            (VertexSet::from_iter([0]), VertexSet::from_iter([1]), 1)
        );

        let p = AlternatingPath::new(vec![0, 2, 1, 3], true);
        let f = frame_of(&p).unwrap();
        assert_eq!(f.sources, VertexSet::from_iter([0, 1]));
        assert_eq!(f.sinks, VertexSet::from_iter([2, 3]));
        assert_eq!(frame_of(&p.reversed()).unwrap(), f);

        assert_eq!(
            frame_of(&AlternatingPath::new(vec![0, 1, 2], true)),
            Err(PathError::OddOrder { order: 3 })
        );
    }

    #[test]
    fn reverse_keeps_validity() {
        let b = blowup_directed_cycle(3, 2).unwrap();
        for p in [
            AlternatingPath::new(vec![0, 2, 1, 3], true),
            AlternatingPath::new(vec![0, 2, 1], true),
            AlternatingPath::new(vec![2, 0], false),
        ] {
            let r = p.reversed();
            assert!(validate(&b, &r), "{r}");
            assert_eq!(r.reversed(), p);
        }
    }

    #[test]
    fn greedy_examples() {
        let e = g(&[(0, 1)], 2);
        let p = greedy_extend(&e, &AlternatingPath::single(0));
        assert_eq!(p, AlternatingPath::new(vec![0, 1], true));

        let tri = g(&[(0, 1), (1, 2), (2, 0)], 3);
        let p = greedy_extend(&tri, &AlternatingPath::new(vec![0, 1], true));
        assert_eq!(p.order(), 2);

        let b = blowup_directed_cycle(3, 2).unwrap();
        let p = greedy_extend(&b, &AlternatingPath::new(vec![0, 2], true));
        assert_eq!(p.order(), 4);
        assert!(validate(&b, &p));
        assert!(p.tail_candidates(&b).is_empty() && p.head_candidates(&b).is_empty());
    }

    #[test]
    fn trim_examples() {
        let p = AlternatingPath::new(vec![0, 2, 1, 3], true);
        assert_eq!(p.trim(2).unwrap(), AlternatingPath::new(vec![0, 2], true));
        assert_eq!(p.trim(4).unwrap(), p);
        assert_eq!(p.trim(3).unwrap(), AlternatingPath::new(vec![0, 2, 1], true));
        assert_eq!(p.trim(1).unwrap().first_forward(), None);
        assert_eq!(p.trim(5), Err(PathError::TooShort { order: 4, wanted: 5 }));
    }

    #[test]
    fn display_format() {
        let p = AlternatingPath::new(vec![0, 2, 1, 3], true);
        assert_eq!(format!("{p}"), "first_forward:1 verts:0 2 1 3");
        assert_eq!(format!("{}", AlternatingPath::single(5)), "first_forward:0 verts:5");
    }
}
