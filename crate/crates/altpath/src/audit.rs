//! An observer that re-checks every intermediate object the finder produces.

use altpath_core::bipartite::{build_h, moon_moser_check};
use altpath_core::finder::Observer;
use altpath_core::oracle::{enumerate_respectable_endpoints, OracleBudget};
use altpath_core::rotation::{AltSpanningCycle, ClosureResult, CountingTrace, DegreeCountFailure, QPath, RespectablePath};
use altpath_core::{condition_holds, validate, FinderOutcome, FinderRun, OrientedGraph, ParityFrame};
use serde::Serialize;

/// Frames up to this many vertices get their closure compared with the exact endpoint sets.
pub const ORACLE_FRAME_LIMIT: usize = 12;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditTally {
    pub closures: u64,
    pub closures_vs_oracle: u64,
    pub countings: u64,
    pub cycles: u64,
    pub degree_counts: u64,
    pub q_paths: u64,
    pub outcomes: u64,
    pub failures: u64,
    /// The first few failure messages.
    pub messages: Vec<String>,
}

const KEPT_MESSAGES: usize = 20;

impl AuditTally {
    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.messages.len() < KEPT_MESSAGES {
            self.messages.push(msg);
        }
    }

    pub fn merge(&mut self, other: &AuditTally) {
        self.closures += other.closures;
        self.closures_vs_oracle += other.closures_vs_oracle;
        self.countings += other.countings;
        self.cycles += other.cycles;
        self.degree_counts += other.degree_counts;
        self.q_paths += other.q_paths;
        self.outcomes += other.outcomes;
        self.failures += other.failures;
        for m in &other.messages {
            if self.messages.len() < KEPT_MESSAGES {
                self.messages.push(m.clone());
            }
        }
    }
}

/// Collects an [`AuditTally`]. `label` prefixes failure messages.
#[derive(Debug, Default)]
pub struct Auditor {
    pub tally: AuditTally,
    pub label: String,
    oracle: OracleBudget,
}

impl Auditor {
    pub fn new() -> Self {
        Auditor::default()
    }

    fn fail(&mut self, what: &str, g: &OrientedGraph) {
        let msg = format!("{} {what}: {}", self.label, crate::io::write_digraph6(g));
        self.tally.fail(msg);
    }

    /// Checks a finished run: found paths are valid and of order `k`,
    /// certificates match the graph, and the precondition forces `Found`.
    pub fn check_run(&mut self, g: &OrientedGraph, k: usize, run: &FinderRun) {
        self.tally.outcomes += 1;
        match &run.outcome {
            FinderOutcome::Found(p) => {
                if p.order() != k || !validate(g, p) {
                    self.fail("invalid found path", g);
                }
            }
            FinderOutcome::Diagnostic(c) => {
                if !c.is_consistent(g) {
                    self.fail("inconsistent certificate", g);
                }
            }
            FinderOutcome::GaveUp { best, .. } => {
                if !validate(g, best) {
                    self.fail("invalid best path", g);
                }
            }
        }
        if run.condition_holds && !run.outcome.is_found() {
            self.fail(&format!("no path at k={k} under the degree condition"), g);
        }
    }
}

impl Observer for Auditor {
    fn closure(&mut self, g: &OrientedGraph, frame: &ParityFrame, seed: &RespectablePath, c: &ClosureResult) {
        self.tally.closures += 1;
        if !seed.is_valid(g, frame) || !c.witnesses().all(|w| w.is_valid(g, frame)) {
            self.fail("invalid rotation witness", g);
        }
        if let Some(ext) = &c.extension {
            let longer = ext.extended(g);
            if longer.order() != 2 * frame.m + 1 || !validate(g, &longer) {
                self.fail("invalid closure extension", g);
            }
        }
        if 2 * frame.m <= ORACLE_FRAME_LIMIT {
            self.tally.closures_vs_oracle += 1;
            match enumerate_respectable_endpoints(g, frame, &self.oracle) {
                Ok((starts, terminals)) => {
                    if !c.starts.is_subset(starts) || !c.terminals.is_subset(terminals) {
                        self.fail("closure reached a non-respectable endpoint", g);
                    }
                }
                Err(_) => self.fail("oracle found no respectable path", g),
            }
        }
    }

    fn counting(&mut self, g: &OrientedGraph, frame: &ParityFrame, k: usize, t: &CountingTrace) {
        self.tally.countings += 1;
        let sinks_of_a = g.out_nbrs(t.a).intersection(frame.sinks).len();
        if t.size_a != sinks_of_a {
            self.fail("|A| differs from the out-degree of a into E", g);
        }
        if t.c_evaluated && t.size_c != g.in_nbrs(t.b).intersection(frame.sources).len() {
            self.fail("|C| differs from the in-degree of b from O", g);
        }
        if condition_holds(g.min_pseudo_semidegree(), k) && 2 * frame.m < k {
            if 2 * t.size_a <= frame.m || !t.a_ok {
                self.fail("|A| <= m/2 under the degree condition", g);
            }
            if t.c_evaluated && (2 * t.size_c <= frame.m || !t.c_ok) {
                self.fail("|C| <= m/2 under the degree condition", g);
            }
        }
    }

    fn cycle(&mut self, g: &OrientedGraph, frame: &ParityFrame, cycle: &AltSpanningCycle) {
        self.tally.cycles += 1;
        if !cycle.is_valid(g, frame) {
            self.fail("invalid alternating spanning cycle", g);
        }
    }

    fn degree_count(&mut self, g: &OrientedGraph, frame: &ParityFrame, k: usize, r: &Result<(), DegreeCountFailure>) {
        self.tally.degree_counts += 1;
        if r.is_err() && condition_holds(g.min_pseudo_semidegree(), k) && 2 * frame.m < k {
            self.fail("degree-count check failed under the degree condition", g);
        }
    }

    fn q_path(&mut self, g: &OrientedGraph, frame: &ParityFrame, q: &QPath) {
        self.tally.q_paths += 1;
        let v = q.path.verts();
        let shape_ok = q.path.order() == 2 * frame.m
            && v.len() >= 3
            && v[..3] == [q.q1, q.q2, q.q3]
            && !frame.span().contains(q.q1)
            && frame.sources.contains(q.q2)
            && frame.sources.contains(q.q3)
            && frame.sinks.contains(q.dropped)
            && !q.path.vertex_set().contains(q.dropped);
        if !shape_ok || !validate(g, &q.path) {
            self.fail("malformed re-rooted path", g);
        }
        if moon_moser_check(&build_h(g, frame)).is_err() {
            self.fail("re-rooted from a frame that fails the degree-count check", g);
        }
    }
}
