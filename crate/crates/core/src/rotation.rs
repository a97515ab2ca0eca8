//! Rotation machinery on respectable paths.
//!
//! Fix an even-order alternating path and its frame (sources `O`, sinks `E`).
//! A *respectable* path spans `O ∪ E` and uses only `O -> E` edges; it starts in
//! `O` and ends in `E`. A chord from the start (or into the terminal) rotates the
//! path into another respectable path with a new endpoint. Closing the set of
//! reachable endpoints under rotations either exposes a vertex outside the
//! frame that extends the path, or yields enough structure to build an
//! alternating spanning cycle and, from it, a re-rooted path `Q` whose next
//! closure must extend.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bipartite::{self, build_h, moon_moser_check, BipartiteView, HamiltonBudget, Side};
use crate::graph::OrientedGraph;
use crate::path::{validate, AlternatingPath, ParityFrame};
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationError {
    /// The pivot position does not carry a usable chord.
    BadPivot {
        pos: usize,
    },
    /// Closure explored more endpoint pairs than allowed.
    BudgetExceeded {
        states: usize,
    },
    NotRespectable,
}

impl fmt::Display for RotationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationError::BadPivot { pos } => write!(f, "no rotation chord at position {pos}"),
            RotationError::BudgetExceeded { states } => {
                write!(f, "closure exceeded its budget after {states} endpoint pairs")
            }
            RotationError::NotRespectable => f.write_str("path is not respectable for the frame"),
        }
    }
}

impl core::error::Error for RotationError {}

/// An alternating path spanning the frame with every edge `O -> E`, stored
/// start first: `verts[0] ∈ O`, `verts[2m-1] ∈ E`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RespectablePath(AlternatingPath);

impl RespectablePath {
    /// Orients `p` start-first, checking that it is respectable for `frame`.
    pub fn new(g: &OrientedGraph, frame: &ParityFrame, p: &AlternatingPath) -> Result<Self, RotationError> {
        if p.order() != 2 * frame.m || p.order() < 2 || p.vertex_set() != frame.span() || !validate(g, p) {
            return Err(RotationError::NotRespectable);
        }
        let p = if frame.sources.contains(p.verts()[0]) {
            p.clone()
        } else {
            p.reversed()
        };
        if p.first_forward() != Some(true) {
            return Err(RotationError::NotRespectable);
        }
        let ok = p.verts().iter().enumerate().all(|(i, &v)| {
            if i % 2 == 0 {
                frame.sources.contains(v)
            } else {
                frame.sinks.contains(v)
            }
        });
        if !ok {
            return Err(RotationError::NotRespectable);
        }
        Ok(RespectablePath(p))
    }

    fn from_verts_unchecked(verts: Vec<usize>) -> Self {
        RespectablePath(AlternatingPath::new(verts, true))
    }

    #[inline]
    pub fn verts(&self) -> &[usize] {
        self.0.verts()
    }

    #[inline]
    pub fn start(&self) -> usize {
        self.0.verts()[0]
    }

    #[inline]
    pub fn terminal(&self) -> usize {
        *self.0.verts().last().unwrap()
    }

    pub fn as_path(&self) -> &AlternatingPath {
        &self.0
    }

    pub fn into_path(self) -> AlternatingPath {
        self.0
    }

    /// Re-checks respectability against `g` and `frame`.
    pub fn is_valid(&self, g: &OrientedGraph, frame: &ParityFrame) -> bool {
        RespectablePath::new(g, frame, &self.0).is_ok_and(|r| r == *self)
    }
}

impl fmt::Debug for RespectablePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RespectablePath({:?})", self.verts())
    }
}

/// Rotation at the start through the chord `start -> verts[pivot]` (`pivot` odd, 0-based):
/// `verts[pivot-1], ..., verts[0], verts[pivot], ..., verts[2m-1]`.
pub fn rotate_at_start(
    g: &OrientedGraph,
    frame: &ParityFrame,
    r: &RespectablePath,
    pivot: usize,
) -> Result<RespectablePath, RotationError> {
    let v = r.verts();
    if pivot == 0
        || pivot >= v.len()
        || pivot % 2 == 0
        || !frame.sinks.contains(v[pivot])
        || !g.has_edge(v[0], v[pivot])
    {
        return Err(RotationError::BadPivot { pos: pivot });
    }
    let mut out = Vec::with_capacity(v.len());
    out.extend(v[..pivot].iter().rev());
    out.extend_from_slice(&v[pivot..]);
    let rotated = RespectablePath::from_verts_unchecked(out);
    debug_assert!(rotated.is_valid(g, frame), "start rotation broke respectability");
    Ok(rotated)
}

/// Rotation at the terminal through the chord `verts[pivot] -> terminal` (`pivot` even):
/// `verts[0], ..., verts[pivot], verts[2m-1], ..., verts[pivot+1]`.
pub fn rotate_at_end(
    g: &OrientedGraph,
    frame: &ParityFrame,
    r: &RespectablePath,
    pivot: usize,
) -> Result<RespectablePath, RotationError> {
    let v = r.verts();
    let last = v.len() - 1;
    if pivot >= last || pivot % 2 == 1 || !frame.sources.contains(v[pivot]) || !g.has_edge(v[pivot], v[last]) {
        return Err(RotationError::BadPivot { pos: pivot });
    }
    let mut out = Vec::with_capacity(v.len());
    out.extend_from_slice(&v[..=pivot]);
    out.extend(v[pivot + 1..].iter().rev());
    let rotated = RespectablePath::from_verts_unchecked(out);
    debug_assert!(rotated.is_valid(g, frame), "end rotation broke respectability");
    Ok(rotated)
}

/// Which end of a respectable path an outside vertex attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionEnd {
    /// `start -> outside`.
    Start,
    /// `outside -> terminal`.
    Terminal,
}

/// A respectable path together with an outside vertex that extends it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub witness: RespectablePath,
    pub outside: usize,
    pub end: ExtensionEnd,
}

impl Extension {
    /// The extended alternating path, of order `2m + 1`.
    pub fn extended(&self, g: &OrientedGraph) -> AlternatingPath {
        let mut p = self.witness.as_path().clone();
        match self.end {
            ExtensionEnd::Start => p.push_head(g, self.outside),
            ExtensionEnd::Terminal => p.push_tail(g, self.outside),
        }
        p
    }
}

fn scan_start(g: &OrientedGraph, frame: &ParityFrame, r: &RespectablePath) -> Option<Extension> {
    g.out_nbrs(r.start())
        .difference(frame.span())
        .first()
        .map(|x| Extension {
            witness: r.clone(),
            outside: x,
            end: ExtensionEnd::Start,
        })
}

fn scan_terminal(g: &OrientedGraph, frame: &ParityFrame, r: &RespectablePath) -> Option<Extension> {
    g.in_nbrs(r.terminal())
        .difference(frame.span())
        .first()
        .map(|y| Extension {
            witness: r.clone(),
            outside: y,
            end: ExtensionEnd::Terminal,
        })
}

/// Starting and terminal vertices reached by rotation, each with one witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub starts: VertexSet,
    pub terminals: VertexSet,
    start_witness: Vec<Option<RespectablePath>>,
    terminal_witness: Vec<Option<RespectablePath>>,
    /// Set when an endpoint had a neighbour outside the frame; exploration stops there.
    pub extension: Option<Extension>,
    /// Distinct `(start, terminal)` pairs visited.
    pub states: usize,
}

impl ClosureResult {
    pub fn start_witness(&self, v: usize) -> Option<&RespectablePath> {
        self.start_witness.get(v).and_then(Option::as_ref)
    }

    pub fn terminal_witness(&self, v: usize) -> Option<&RespectablePath> {
        self.terminal_witness.get(v).and_then(Option::as_ref)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &RespectablePath> {
        self.start_witness.iter().chain(&self.terminal_witness).flatten()
    }
}

/// Default closure state budget: `4 m^2`.
pub fn default_closure_budget(m: usize) -> usize {
    4 * m * m
}

/// Breadth-first closure of `seed` under rotations at both ends, keeping one
/// witness per `(start, terminal)` pair. Every newly discovered start is
/// scanned for an out-neighbour outside the frame, every terminal for an
/// in-neighbour outside it; the first hit ends the search.
pub fn start_closure(
    g: &OrientedGraph,
    frame: &ParityFrame,
    seed: &RespectablePath,
    budget: usize,
) -> Result<ClosureResult, RotationError> {
    closure(g, frame, seed, budget, true)
}

/// Closure under terminal rotations only, so every witness keeps the seed's start.
pub fn terminal_closure(
    g: &OrientedGraph,
    frame: &ParityFrame,
    seed: &RespectablePath,
    budget: usize,
) -> Result<ClosureResult, RotationError> {
    closure(g, frame, seed, budget, false)
}

fn closure(
    g: &OrientedGraph,
    frame: &ParityFrame,
    seed: &RespectablePath,
    budget: usize,
    rotate_starts: bool,
) -> Result<ClosureResult, RotationError> {
    let n = g.n();
    let mut res = ClosureResult {
        starts: VertexSet::EMPTY,
        terminals: VertexSet::EMPTY,
        start_witness: vec![None; n],
        terminal_witness: vec![None; n],
        extension: None,
        states: 0,
    };
    let mut seen_pairs = vec![VertexSet::EMPTY; n];
    let mut queue = VecDeque::new();

    // Records a path; true if exploration must stop.
    let mut visit = |r: RespectablePath,
                     res: &mut ClosureResult,
                     queue: &mut VecDeque<RespectablePath>|
     -> Result<bool, RotationError> {
        let (s, t) = (r.start(), r.terminal());
        if seen_pairs[s].contains(t) {
            return Ok(false);
        }
        seen_pairs[s].insert(t);
        res.states += 1;
        if res.states > budget {
            return Err(RotationError::BudgetExceeded { states: res.states });
        }
        if !res.starts.contains(s) {
            res.starts.insert(s);
            res.start_witness[s] = Some(r.clone());
            if let Some(ext) = scan_start(g, frame, &r) {
                res.extension = Some(ext);
                return Ok(true);
            }
        }
        if !res.terminals.contains(t) {
            res.terminals.insert(t);
            res.terminal_witness[t] = Some(r.clone());
            if let Some(ext) = scan_terminal(g, frame, &r) {
                res.extension = Some(ext);
                return Ok(true);
            }
        }
        queue.push_back(r);
        Ok(false)
    };

    if visit(seed.clone(), &mut res, &mut queue)? {
        return Ok(res);
    }
    while let Some(r) = queue.pop_front() {
        let v = r.verts();
        let len = v.len();
        if rotate_starts {
            let chords = g.out_nbrs(v[0]);
            for pivot in (3..len).step_by(2) {
                if chords.contains(v[pivot]) {
                    let rotated = rotate_at_start(g, frame, &r, pivot)?;
                    if visit(rotated, &mut res, &mut queue)? {
                        return Ok(res);
                    }
                }
            }
        }
        let chords = g.in_nbrs(v[len - 1]);
        for pivot in (0..len.saturating_sub(3)).step_by(2) {
            if chords.contains(v[pivot]) {
                let rotated = rotate_at_end(g, frame, &r, pivot)?;
                if visit(rotated, &mut res, &mut queue)? {
                    return Ok(res);
                }
            }
        }
    }
    Ok(res)
}

/// An alternating cycle through every vertex of the frame, all edges `O -> E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltSpanningCycle {
    verts: Vec<usize>,
}

impl AltSpanningCycle {
    pub fn new(verts: Vec<usize>) -> Self {
        AltSpanningCycle { verts }
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    pub fn is_valid(&self, g: &OrientedGraph, frame: &ParityFrame) -> bool {
        let len = self.verts.len();
        if len != 2 * frame.m || len < 2 || self.verts.iter().copied().collect::<VertexSet>() != frame.span() {
            return false;
        }
        (0..len).all(|i| {
            let (a, b) = (self.verts[i], self.verts[(i + 1) % len]);
            let (o, e) = if frame.sources.contains(a) { (a, b) } else { (b, a) };
            frame.sources.contains(o) && frame.sinks.contains(e) && g.has_edge(o, e)
        })
    }
}

/// Which degree a certificate talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeSide {
    In,
    Out,
}

impl DegreeSide {
    pub fn as_str(self) -> &'static str {
        match self {
            DegreeSide::In => "in",
            DegreeSide::Out => "out",
        }
    }

    pub fn degree(self, g: &OrientedGraph, v: usize) -> usize {
        match self {
            DegreeSide::In => g.in_degree(v),
            DegreeSide::Out => g.out_degree(v),
        }
    }
}

/// Pipeline step that produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    ACount,
    CCount,
    DegreeCount,
    NoQ2,
    NoQ1,
    MmFail,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::ACount => "A-count",
            Stage::CCount => "C-count",
            Stage::DegreeCount => "lemma6",
            Stage::NoQ2 => "no-q2",
            Stage::NoQ1 => "no-q1",
            Stage::MmFail => "MM-fail",
        }
    }
}

/// A checkable explanation of why a counting step failed: `vertex` has
/// `degree` on `side`, which does not exceed `5k/8` (stored as `bound_num / 8`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub vertex: usize,
    pub side: DegreeSide,
    pub degree: usize,
    /// `5k`; the bound is `bound_num / 8`.
    pub bound_num: usize,
    pub stage: Stage,
    /// Counting sum (`s` or `t`) when the stage has one.
    pub sum: Option<usize>,
    /// Failing `ℓ` for the degree-count stages.
    pub ell: Option<usize>,
}

impl Certificate {
    fn new(g: &OrientedGraph, k: usize, vertex: usize, side: DegreeSide, stage: Stage) -> Self {
        Certificate {
            vertex,
            side,
            degree: side.degree(g, vertex),
            bound_num: 5 * k,
            stage,
            sum: None,
            ell: None,
        }
    }

    /// Human-readable bound, e.g. `25/8`.
    pub fn bound(&self) -> BoundDisplay {
        BoundDisplay(self.bound_num)
    }

    /// True iff the stated degree matches `g`.
    pub fn is_consistent(&self, g: &OrientedGraph) -> bool {
        self.vertex < g.n() && self.side.degree(g, self.vertex) == self.degree
    }
}

pub struct BoundDisplay(usize);

impl fmt::Display for BoundDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/8", self.0)
    }
}

fn min_degree_vertex(g: &OrientedGraph, set: VertexSet, side: DegreeSide) -> Option<usize> {
    set.iter().min_by_key(|&v| (side.degree(g, v), v))
}

/// Quantities from the two counting arguments behind the spanning cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingTrace {
    pub m: usize,
    pub a: usize,
    /// `|A| = d+_E(a)`.
    pub size_a: usize,
    /// `s = Σ_{u∈A} d+_O(u)`.
    pub s: usize,
    pub b: usize,
    /// `|C| = d-_O(b)`.
    pub size_c: usize,
    /// `t = Σ_{w∈C} d-_E(w)`.
    pub t: usize,
    /// Whether `|A|` exceeded `m/2`; when false the later fields are zero.
    pub a_ok: bool,
    /// Whether `C` was computed at all (not if `B`'s closure found an extension first).
    pub c_evaluated: bool,
    pub c_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvenhamOutcome {
    Cycle(AltSpanningCycle, CountingTrace),
    Extension(Extension, CountingTrace),
    Diagnostic(Certificate, CountingTrace),
}

/// Builds an alternating spanning cycle on the frame from a closure with no extension.
///
/// `a` maximises `d+_E` over the discovered starts; rotating `a`'s witness at
/// its start shows `d+_E(a) > m/2`. A terminal-only closure from that witness
/// gives the terminals `B` of paths starting at `a`; `b` maximises `d-_O` over
/// `B` and the same argument gives `d-_O(b) > m/2`. On `b`'s witness
/// `r_1 .. r_2m` some odd position `i` then has `r_i -> b` and `a -> r_{i+1}`,
/// which closes `r_1..r_i, r_2m, r_2m-1, .., r_{i+1}` into a cycle.
///
/// `k` only scales the bound reported in certificates.
pub fn evenham_cycle(
    g: &OrientedGraph,
    frame: &ParityFrame,
    closure: &ClosureResult,
    k: usize,
    budget: usize,
) -> Result<EvenhamOutcome, RotationError> {
    let m = frame.m;
    let mut trace = CountingTrace {
        m,
        a: 0,
        size_a: 0,
        s: 0,
        b: 0,
        size_c: 0,
        t: 0,
        a_ok: false,
        c_evaluated: false,
        c_ok: false,
    };
    let d_plus_e = |v: usize| g.out_nbrs(v).intersection(frame.sinks).len();
    let d_minus_o = |v: usize| g.in_nbrs(v).intersection(frame.sources).len();

    let a = closure
        .starts
        .iter()
        .max_by_key(|&v| (d_plus_e(v), core::cmp::Reverse(v)))
        .ok_or(RotationError::NotRespectable)?;
    let ra = closure.start_witness(a).expect("every start has a witness");
    // A: predecessors of a's out-neighbours along the witness.
    let set_a: VertexSet = ra
        .verts()
        .windows(2)
        .filter(|w| g.has_edge(a, w[1]) && frame.sinks.contains(w[1]))
        .map(|w| w[0])
        .collect();
    trace.a = a;
    trace.size_a = set_a.len();
    trace.s = set_a
        .iter()
        .map(|u| g.out_nbrs(u).intersection(frame.sources).len())
        .sum();
    if 2 * set_a.len() <= m {
        let culprit = min_degree_vertex(g, set_a.union(VertexSet::singleton(a)), DegreeSide::Out).unwrap();
        let mut cert = Certificate::new(g, k, culprit, DegreeSide::Out, Stage::ACount);
        cert.sum = Some(trace.s);
        return Ok(EvenhamOutcome::Diagnostic(cert, trace));
    }
    trace.a_ok = true;

    let from_a = terminal_closure(g, frame, ra, budget)?;
    if let Some(ext) = from_a.extension {
        return Ok(EvenhamOutcome::Extension(ext, trace));
    }
    let b = from_a
        .terminals
        .iter()
        .max_by_key(|&v| (d_minus_o(v), core::cmp::Reverse(v)))
        .expect("seed terminal is always present");
    let rb = from_a.terminal_witness(b).expect("every terminal has a witness");
    debug_assert_eq!(rb.start(), a);
    let v = rb.verts();
    let set_c: VertexSet = v
        .windows(2)
        .filter(|w| g.has_edge(w[0], b) && frame.sources.contains(w[0]))
        .map(|w| w[1])
        .collect();
    trace.b = b;
    trace.c_evaluated = true;
    trace.size_c = set_c.len();
    trace.t = set_c.iter().map(|w| g.in_nbrs(w).intersection(frame.sinks).len()).sum();
    if 2 * set_c.len() <= m {
        let culprit = min_degree_vertex(g, set_c.union(VertexSet::singleton(b)), DegreeSide::In).unwrap();
        let mut cert = Certificate::new(g, k, culprit, DegreeSide::In, Stage::CCount);
        cert.sum = Some(trace.t);
        return Ok(EvenhamOutcome::Diagnostic(cert, trace));
    }
    trace.c_ok = true;

    // Pigeonhole over odd (1-based) positions i: r_i -> b and a -> r_{i+1}.
    let len = v.len();
    let i = (0..len - 1)
        .step_by(2)
        .find(|&i| g.has_edge(v[i], b) && g.has_edge(a, v[i + 1]))
        .expect("two index sets larger than m/2 among m positions intersect");
    let mut cyc = Vec::with_capacity(len);
    cyc.extend_from_slice(&v[..=i]);
    cyc.extend(v[i + 1..].iter().rev());
    let cycle = AltSpanningCycle::new(cyc);
    debug_assert!(cycle.is_valid(g, frame), "pigeonhole cycle is not alternating");
    Ok(EvenhamOutcome::Cycle(cycle, trace))
}

/// Looks for a frame vertex with a neighbour outside the frame on the side
/// that extends: out-neighbours of sources, in-neighbours of sinks.
///
/// On a hit at cycle vertex `c_j`, the cycle is opened as
/// `c_{j-1}, c_{j-2}, ..., c_{j+1}, c_j` (ending at the hit vertex) and the
/// outside vertex is appended.
pub fn extension_scan_on_cycle(
    g: &OrientedGraph,
    frame: &ParityFrame,
    cyc: &AltSpanningCycle,
) -> Option<AlternatingPath> {
    let c = cyc.verts();
    let len = c.len();
    for (j, &v) in c.iter().enumerate() {
        let outside = if frame.sources.contains(v) {
            g.out_nbrs(v)
        } else {
            g.in_nbrs(v)
        }
        .difference(frame.span());
        if let Some(x) = outside.first() {
            let mut verts: Vec<usize> = (1..=len).map(|i| c[(j + i) % len]).collect();
            verts.push(x);
            let p = AlternatingPath::from_vertices(g, verts).expect("cycle edges exist");
            debug_assert!(validate(g, &p));
            return Some(p);
        }
    }
    None
}

/// The smallest `ℓ` at which the bipartite degree count fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeCountFailure {
    pub ell: usize,
    pub side: Side,
    /// Vertices of that side with `H`-degree at most `ℓ + 1`.
    pub witnesses: VertexSet,
}

/// For each `1 <= ℓ <= ⌊m/2⌋`, fewer than `ℓ` sources and fewer than `ℓ` sinks
/// may have degree at most `ℓ + 1` in the source-to-sink bipartite graph.
pub fn lemma_forgotten_check(g: &OrientedGraph, frame: &ParityFrame) -> Result<(), DegreeCountFailure> {
    let h = build_h(g, frame);
    for ell in 1..=frame.m / 2 {
        for (side, part) in [(Side::X, frame.sources), (Side::Y, frame.sinks)] {
            let low: VertexSet = part.iter().filter(|&v| h.degree(v) <= ell + 1).collect();
            if low.len() >= ell {
                return Err(DegreeCountFailure {
                    ell,
                    side,
                    witnesses: low,
                });
            }
        }
    }
    Ok(())
}

impl DegreeCountFailure {
    /// Names the witness with the smallest relevant degree in `g`.
    pub fn certificate(&self, g: &OrientedGraph, k: usize) -> Certificate {
        let side = match self.side {
            Side::X => DegreeSide::Out,
            Side::Y => DegreeSide::In,
        };
        let v = min_degree_vertex(g, self.witnesses, side).expect("witness set is nonempty");
        let mut cert = Certificate::new(g, k, v, side, Stage::DegreeCount);
        cert.ell = Some(self.ell);
        cert
    }
}

/// A re-rooted path `q1 q2 .. q2m` with `q1` outside the old frame, `q2, q3`
/// old sources joined by `q3 -> q2`, and `q3 .. q2m` a Hamilton path of the
/// bipartite graph on the old frame minus `q2` and one sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPath {
    pub path: AlternatingPath,
    pub frame: ParityFrame,
    pub q1: usize,
    pub q2: usize,
    pub q3: usize,
    pub dropped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildQError {
    Diagnostic(Certificate),
    BudgetExceeded,
}

/// Builds `Q` from a frame with an alternating spanning cycle and no extension.
///
/// The sink dropped from `E` is the smallest one whose removal leaves a
/// Moon–Moser graph, falling back to the smallest sink.
pub fn build_q(g: &OrientedGraph, frame: &ParityFrame, k: usize, hb: HamiltonBudget) -> Result<QPath, BuildQError> {
    let span = frame.span();
    let o = frame.sources;
    let e = frame.sinks;
    let mut chosen = None;
    let mut saw_pair = false;
    for q2 in o {
        let into = g.in_nbrs(q2).intersection(o);
        let Some(q3) = into.first() else { continue };
        saw_pair = true;
        if let Some(q1) = g.in_nbrs(q2).difference(span).first() {
            chosen = Some((q1, q2, q3));
            break;
        }
    }
    let Some((q1, q2, q3)) = chosen else {
        if !saw_pair {
            let v = min_degree_vertex(g, o, DegreeSide::Out).expect("frame has sources");
            return Err(BuildQError::Diagnostic(Certificate::new(
                g,
                k,
                v,
                DegreeSide::Out,
                Stage::NoQ2,
            )));
        }
        // Every q2 with an in-neighbour in O has all in-neighbours inside the frame.
        let q2s: VertexSet = o.iter().filter(|&v| !g.in_nbrs(v).intersection(o).is_empty()).collect();
        let v = min_degree_vertex(g, q2s, DegreeSide::In).unwrap();
        return Err(BuildQError::Diagnostic(Certificate::new(
            g,
            k,
            v,
            DegreeSide::In,
            Stage::NoQ1,
        )));
    };

    let h = build_h(g, frame);
    let o_rest = o.difference(VertexSet::singleton(q2));
    let restricted = |dropped: usize| -> BipartiteView {
        let mut keep = o_rest.union(e);
        keep.remove(dropped);
        h.restrict(keep)
    };

    let tail: Vec<usize>;
    let dropped;
    if frame.m == 2 {
        // H' is a single sink and a single source; it needs the edge q3 -> e.
        let Some(e_keep) = g.out_nbrs(q3).intersection(e).first() else {
            return Err(BuildQError::Diagnostic(Certificate::new(
                g,
                k,
                q3,
                DegreeSide::Out,
                Stage::MmFail,
            )));
        };
        dropped = e.difference(VertexSet::singleton(e_keep)).first().unwrap();
        tail = vec![q3, e_keep];
    } else {
        let choice = e.iter().find(|&d| moon_moser_check(&restricted(d)).is_ok());
        dropped = choice.unwrap_or_else(|| e.first().unwrap());
        let h_prime = restricted(dropped);
        if let Err(fail) = moon_moser_check(&h_prime) {
            let v = fail.witnesses.first().unwrap();
            let side = if o.contains(v) { DegreeSide::Out } else { DegreeSide::In };
            let mut cert = Certificate::new(g, k, v, side, Stage::MmFail);
            cert.ell = Some(fail.ell);
            return Err(BuildQError::Diagnostic(cert));
        }
        let cycle = match bipartite::mm_hamilton_cycle(&h_prime, hb) {
            Ok(Some(c)) => c,
            Ok(None) => {
                let v = min_degree_vertex(g, o_rest, DegreeSide::Out).unwrap();
                return Err(BuildQError::Diagnostic(Certificate::new(
                    g,
                    k,
                    v,
                    DegreeSide::Out,
                    Stage::MmFail,
                )));
            }
            Err(_) => return Err(BuildQError::BudgetExceeded),
        };
        tail = bipartite::cut_cycle_at(&cycle, q3).expect("q3 lies in H'");
    }

    let mut verts = Vec::with_capacity(2 * frame.m);
    verts.push(q1);
    verts.push(q2);
    verts.extend_from_slice(&tail);
    let path = AlternatingPath::new(verts, true);
    debug_assert!(validate(g, &path), "Q is not alternating");
    let new_frame = crate::path::frame_of(&path).expect("Q has even order");
    Ok(QPath {
        path,
        frame: new_frame,
        q1,
        q2,
        q3,
        dropped,
    })
}

/// Closure of an arbitrary alternating path (any parity) under rotations at
/// both ends, deduplicated by the ordered endpoint pair. Returns an extended
/// path as soon as some endpoint admits a new vertex.
pub fn endpoint_closure(
    g: &OrientedGraph,
    seed: &AlternatingPath,
    budget: usize,
) -> Result<Option<AlternatingPath>, RotationError> {
    let extend = |p: &AlternatingPath| -> Option<AlternatingPath> {
        if let Some(w) = p.tail_candidates(g).first() {
            let mut q = p.clone();
            q.push_tail(g, w);
            return Some(q);
        }
        if let Some(w) = p.head_candidates(g).first() {
            let mut q = p.clone();
            q.push_head(g, w);
            return Some(q);
        }
        None
    };
    if seed.order() < 2 {
        return Ok(extend(seed));
    }
    let n = g.n();
    let mut seen = vec![VertexSet::EMPTY; n];
    let mut queue = VecDeque::new();
    let mut states = 0usize;
    seen[seed.first().unwrap()].insert(seed.last().unwrap());
    queue.push_back(seed.clone());
    while let Some(p) = queue.pop_front() {
        states += 1;
        if states > budget {
            return Err(RotationError::BudgetExceeded { states });
        }
        if let Some(q) = extend(&p) {
            return Ok(Some(q));
        }
        for q in [
            tail_rotations(g, &p),
            tail_rotations(g, &p.reversed())
                .into_iter()
                .map(|r| r.reversed())
                .collect(),
        ]
        .into_iter()
        .flatten()
        {
            let (h, t) = (q.first().unwrap(), q.last().unwrap());
            if !seen[h].contains(t) {
                seen[h].insert(t);
                queue.push_back(q);
            }
        }
    }
    Ok(None)
}

/// All single rotations at the tail: a chord from the tail to `verts[j]` in the
/// direction of the tail's role turns `verts[..=j] + rev(verts[j+1..])` into a path.
fn tail_rotations(g: &OrientedGraph, p: &AlternatingPath) -> Vec<AlternatingPath> {
    let v = p.verts();
    let len = v.len();
    if len < 3 {
        return Vec::new();
    }
    let tail = v[len - 1];
    let tail_source = p.is_source_at(len - 1);
    let chords = if tail_source { g.out_nbrs(tail) } else { g.in_nbrs(tail) };
    let mut out = Vec::new();
    for j in 0..len - 2 {
        // v[j] must have the opposite role to the tail.
        if p.is_source_at(j) != tail_source && chords.contains(v[j]) {
            let mut verts = v[..=j].to_vec();
            verts.extend(v[j + 1..].iter().rev());
            let q = AlternatingPath::new(verts, p.first_forward().unwrap());
            debug_assert!(validate(g, &q), "tail rotation broke alternation");
            out.push(q);
        }
    }
    out
}
