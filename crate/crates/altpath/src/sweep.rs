//! Batch checks over families of graphs.
//!
//! Work is split into fixed-size chunks of instance indices; chunks run on a
//! rayon pool and their partial results are merged in index order, so a
//! report does not depend on the number of workers. Random instances draw
//! from a ChaCha8 stream selected by `(seed, index)`.

use std::collections::BTreeMap;
use std::time::Instant;

use altpath_core::finder::{find_alternating_path_from, find_alternating_path_observed};
use altpath_core::generate::{
    blowup_directed_cycle, enumerate_all_oriented_bounded, planted_closed_frame, random_oriented_with, Enumeration,
    DEFAULT_ENUMERATION_BOUND,
};
use altpath_core::oracle::{has_alt_path_k, longest_alt_path_exact, OracleBudget};
use altpath_core::{largest_qualifying_k, FinderBudget, FinderOutcome, FinderRun, GraphError, OrientedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audit::{AuditTally, Auditor};
use crate::io::write_digraph6;
use crate::report::InstanceRecord;

/// Instances per chunk; fixed so that merging order never depends on the pool.
const CHUNK: u64 = 1024;
const KEPT_IDS: usize = 100;
/// Planted instances above this size skip the exact longest-path check; the
/// audited finder output still certifies `L >= k` for them.
const PLANTED_ORACLE_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// Every labelled oriented graph on `n` vertices.
    Exhaustive,
    /// Seeded random oriented graphs.
    Random,
    /// Blow-ups of directed cycles.
    Blowup,
    /// Dense random graphs against the edge-count bound.
    Corollary,
    /// Odd longest paths against twice the pseudo-semidegree.
    Oddcase,
    /// Paths stuck on closed frames, forcing the rotation pipeline.
    Planted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub mode: SweepMode,
    /// Inclusive vertex-count range.
    pub n_range: (usize, usize),
    pub k: Option<usize>,
    /// Random instances; zero makes `oddcase` exhaustive.
    pub samples: u64,
    pub p: f64,
    pub seed: u64,
    /// Inclusive ranges for `blowup`.
    pub t_range: (usize, usize),
    pub b_range: (usize, usize),
    pub keep_records: bool,
    /// Zero all timings so reports are byte-stable.
    pub stable: bool,
    /// Not part of the report: results do not depend on it.
    #[serde(skip)]
    pub workers: usize,
}

impl SweepConfig {
    pub fn new(mode: SweepMode) -> Self {
        SweepConfig {
            mode,
            n_range: (4, 4),
            k: None,
            samples: 0,
            p: 1.0,
            seed: 0,
            t_range: (3, 5),
            b_range: (1, 3),
            keep_records: true,
            stable: false,
            workers: 0,
        }
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n_range = (n, n);
        self
    }

    pub fn n_range(mut self, lo: usize, hi: usize) -> Self {
        self.n_range = (lo, hi);
        self
    }

    pub fn samples(mut self, samples: u64) -> Self {
        self.samples = samples;
        self
    }

    pub fn p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn records(mut self, keep: bool) -> Self {
        self.keep_records = keep;
        self
    }

    pub fn stable(mut self, stable: bool) -> Self {
        self.stable = stable;
        self
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("no graph on {n} vertices has more than (5k+4)n/4 edges for k = {k}")]
    VacuousParams { n: usize, k: usize },
    #[error("bad sweep configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Smallest longest-path order seen for one pseudo-semidegree value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub min_pseudo_semidegree: usize,
    pub largest_qualifying_k: usize,
    #[serde(rename = "min_oracle_L")]
    pub min_oracle_l: usize,
    pub instances: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Aggregate {
    pub instances: u64,
    /// Instances outside the hypothesis (edgeless, too sparse, or no qualifying `k`).
    pub skipped: u64,
    /// Instances where the claim was checked against the exact oracle.
    pub checked: u64,
    pub counterexamples: u64,
    pub counterexample_ids: Vec<String>,
    pub finder_runs: u64,
    pub finder_found: u64,
    pub finder_diagnostic: u64,
    pub finder_gave_up: u64,
    pub oracle_fallbacks: u64,
    pub odd_longest: u64,
    pub frontier: Vec<FrontierPoint>,
    pub audit: AuditTally,
}

impl Aggregate {
    fn merge(&mut self, o: &Aggregate) {
        self.instances += o.instances;
        self.skipped += o.skipped;
        self.checked += o.checked;
        self.counterexamples += o.counterexamples;
        for id in &o.counterexample_ids {
            if self.counterexample_ids.len() < KEPT_IDS {
                self.counterexample_ids.push(id.clone());
            }
        }
        self.finder_runs += o.finder_runs;
        self.finder_found += o.finder_found;
        self.finder_diagnostic += o.finder_diagnostic;
        self.finder_gave_up += o.finder_gave_up;
        self.oracle_fallbacks += o.oracle_fallbacks;
        self.odd_longest += o.odd_longest;
        for p in &o.frontier {
            self.frontier_point(p.min_pseudo_semidegree, p.min_oracle_l, p.instances);
        }
        self.audit.merge(&o.audit);
    }

    fn frontier_point(&mut self, d: usize, l: usize, count: u64) {
        match self.frontier.binary_search_by_key(&d, |p| p.min_pseudo_semidegree) {
            Ok(i) => {
                let p = &mut self.frontier[i];
                p.min_oracle_l = p.min_oracle_l.min(l);
                p.instances += count;
            }
            Err(i) => self.frontier.insert(
                i,
                FrontierPoint {
                    min_pseudo_semidegree: d,
                    largest_qualifying_k: largest_qualifying_k(Some(d)).unwrap_or(0),
                    min_oracle_l: l,
                    instances: count,
                },
            ),
        }
    }

    fn counterexample(&mut self, id: &str) {
        self.counterexamples += 1;
        if self.counterexample_ids.len() < KEPT_IDS {
            self.counterexample_ids.push(id.to_string());
        }
    }

    fn finder(&mut self, run: &FinderRun) {
        self.finder_runs += 1;
        self.oracle_fallbacks += run.oracle_fallbacks as u64;
        match run.outcome {
            FinderOutcome::Found(_) => self.finder_found += 1,
            FinderOutcome::Diagnostic(_) => self.finder_diagnostic += 1,
            FinderOutcome::GaveUp { .. } => self.finder_gave_up += 1,
        }
    }

    /// Precondition runs that did not produce a path.
    pub fn finder_failures(&self) -> u64 {
        self.finder_diagnostic + self.finder_gave_up
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub aggregate: Aggregate,
    pub records: Vec<InstanceRecord>,
}

impl SweepReport {
    pub fn summary(&self) -> String {
        let a = &self.aggregate;
        format!(
            "{:?}: {} instances, {} skipped, {} checked, {} counterexamples, finder {}/{} found, {} audit failures",
            self.config.mode,
            a.instances,
            a.skipped,
            a.checked,
            a.counterexamples,
            a.finder_found,
            a.finder_runs,
            a.audit.failures
        )
    }
}

/// How instance `index` of a sweep is produced.
enum Source {
    Exhaustive(Vec<Enumeration>),
    Random,
    Blowup(Vec<(usize, usize)>),
}

impl Source {
    fn total(&self, cfg: &SweepConfig) -> u64 {
        match self {
            Source::Exhaustive(es) => es.iter().map(Enumeration::total).sum(),
            Source::Random => cfg.samples,
            Source::Blowup(pairs) => pairs.len() as u64,
        }
    }
}

fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

struct Worker<'a> {
    cfg: &'a SweepConfig,
    source: &'a Source,
    finder: FinderBudget,
    oracle: OracleBudget,
    auditor: Auditor,
    agg: Aggregate,
    records: Vec<InstanceRecord>,
}

/// What one instance contributes besides aggregate counters.
struct Row {
    l: Option<usize>,
    k: Option<usize>,
    outcome: &'static str,
    rounds: usize,
    violation: bool,
}

impl Row {
    fn new(l: Option<usize>) -> Self {
        Row {
            l,
            k: None,
            outcome: "none",
            rounds: 0,
            violation: false,
        }
    }
}

impl<'a> Worker<'a> {
    fn new(cfg: &'a SweepConfig, source: &'a Source) -> Self {
        Worker {
            cfg,
            source,
            finder: FinderBudget::default(),
            oracle: OracleBudget::default(),
            auditor: Auditor::new(),
            agg: Aggregate::default(),
            records: Vec::new(),
        }
    }

    fn longest(&self, g: &OrientedGraph) -> Option<usize> {
        longest_alt_path_exact(g, &self.oracle).ok().map(|(l, _)| l)
    }

    fn random_graph(&self, rng: &mut ChaCha8Rng) -> OrientedGraph {
        let (lo, hi) = self.cfg.n_range;
        let n = rng.random_range(lo..=hi);
        random_oriented_with(n, self.cfg.p, rng).expect("parameters checked up front")
    }

    fn instance(&self, index: u64) -> (String, OrientedGraph, Option<ChaCha8Rng>) {
        match self.source {
            Source::Exhaustive(es) => {
                let mut local = index;
                for e in es {
                    if local < e.total() {
                        let g = e.graph_at(local).expect("index in range");
                        return (format!("n{}-{local}", e.n()), g, None);
                    }
                    local -= e.total();
                }
                unreachable!("index beyond the enumeration")
            }
            Source::Random => {
                let mut rng = instance_rng(self.cfg.seed, index);
                if self.cfg.mode == SweepMode::Planted {
                    return (format!("p{index}"), OrientedGraph::empty(0).unwrap(), Some(rng));
                }
                let g = self.random_graph(&mut rng);
                (format!("r{index}"), g, Some(rng))
            }
            Source::Blowup(pairs) => {
                let (t, b) = pairs[index as usize];
                (
                    format!("C{t}[{b}]"),
                    blowup_directed_cycle(t, b).expect("parameters checked up front"),
                    None,
                )
            }
        }
    }

    fn run(&mut self, index: u64) {
        let clock = Instant::now();
        let (id, mut g, rng) = self.instance(index);
        self.auditor.label = id.clone();
        let row = match self.cfg.mode {
            SweepMode::Exhaustive | SweepMode::Random => self.theorem(&g),
            SweepMode::Oddcase => self.oddcase(&g),
            SweepMode::Corollary => self.corollary(&g),
            SweepMode::Blowup => self.blowup(&g),
            SweepMode::Planted => {
                let (row, planted) = self.planted(rng.expect("planted instances are random"));
                g = planted;
                row
            }
        };
        self.agg.instances += 1;
        if row.violation {
            self.agg.counterexample(&id);
        }
        if self.cfg.keep_records {
            let micros = if self.cfg.stable {
                0
            } else {
                clock.elapsed().as_micros() as u64
            };
            self.records.push(InstanceRecord {
                graph_id: id,
                n: g.n(),
                edges: g.edge_count(),
                min_pseudo_semidegree: g.min_pseudo_semidegree(),
                min_semidegree: g.min_semidegree().ok(),
                oracle_l: row.l,
                k: row.k,
                finder_outcome: row.outcome.to_string(),
                rounds: row.rounds,
                micros,
                violation: row.violation,
                digraph6: write_digraph6(&g),
            });
        }
    }

    fn run_finder(&mut self, g: &OrientedGraph, k: usize) -> FinderRun {
        let run = find_alternating_path_observed(g, k, &self.finder, &mut self.auditor);
        self.auditor.check_run(g, k, &run);
        self.agg.finder(&run);
        run
    }

    /// `L >= k` for every qualifying `k`, and the finder produces each such path.
    fn theorem(&mut self, g: &OrientedGraph) -> Row {
        let l = self.longest(g);
        let d = g.min_pseudo_semidegree();
        let Some(kmax) = largest_qualifying_k(d).filter(|&k| k >= 1) else {
            self.agg.skipped += 1;
            return Row::new(l);
        };
        let mut row = Row::new(l);
        row.k = Some(kmax);
        match (l, d) {
            (Some(l), Some(d)) => {
                self.agg.checked += 1;
                self.agg.frontier_point(d, l, 1);
                row.violation = l < kmax;
            }
            _ => self.agg.skipped += 1,
        }
        let mut worst = "found";
        for k in 1..=kmax {
            let run = self.run_finder(g, k);
            row.rounds += run.rounds;
            if !run.outcome.is_found() && worst == "found" {
                worst = run.outcome.kind();
            }
        }
        row.outcome = worst;
        row
    }

    /// An odd longest path has at least `2 δ̄⁰ - 1` vertices.
    fn oddcase(&mut self, g: &OrientedGraph) -> Row {
        let (Some(d), Some(l)) = (g.min_pseudo_semidegree(), self.longest(g)) else {
            self.agg.skipped += 1;
            return Row::new(None);
        };
        self.agg.checked += 1;
        let mut row = Row::new(Some(l));
        if l % 2 == 1 {
            self.agg.odd_longest += 1;
            row.violation = l + 1 < 2 * d;
        }
        row
    }

    /// More than `(5k+4)n/4` edges force an alternating path on `k` vertices.
    fn corollary(&mut self, g: &OrientedGraph) -> Row {
        let k = self.cfg.k.expect("checked up front");
        let mut row = Row::new(None);
        row.k = Some(k);
        if 4 * g.edge_count() <= (5 * k + 4) * g.n() {
            self.agg.skipped += 1;
            return row;
        }
        match has_alt_path_k(g, k, &self.oracle) {
            Ok(has) => {
                self.agg.checked += 1;
                row.violation = !has;
                row.l = self.longest(g);
            }
            Err(_) => self.agg.skipped += 1,
        }
        row
    }

    /// A blow-up with classes of size `b` has semidegree `b` and longest path `2b`.
    fn blowup(&mut self, g: &OrientedGraph) -> Row {
        let b = g.out_degree(0);
        let l = self.longest(g);
        let mut row = Row::new(l);
        row.violation = g.min_semidegree() != Ok(b) || g.min_pseudo_semidegree() != Some(b);
        match l {
            Some(l) => {
                self.agg.checked += 1;
                row.violation |= l != 2 * b;
            }
            None => self.agg.skipped += 1,
        }
        row
    }

    fn planted(&mut self, mut rng: ChaCha8Rng) -> (Row, OrientedGraph) {
        let m = rng.random_range(3..=9usize) | 1;
        let x = rng.random_range(m..=2 * m) | 1;
        let drop = if rng.random_bool(0.5) {
            0.0
        } else {
            rng.random_range(0.0..0.3)
        };
        let (g, start) = planted_closed_frame(m, x, drop, &mut rng).expect("m >= 3");
        let l = if g.n() <= PLANTED_ORACLE_N {
            self.longest(&g)
        } else {
            None
        };
        let mut row = Row::new(l);
        let Some(k) = largest_qualifying_k(g.min_pseudo_semidegree()).filter(|&k| k > 2 * m) else {
            self.agg.skipped += 1;
            return (row, g);
        };
        row.k = Some(k);
        if let Some(l) = l {
            self.agg.checked += 1;
            row.violation = l < k;
        }
        let run = find_alternating_path_from(&g, k, &start, &self.finder, &mut self.auditor);
        self.auditor.check_run(&g, k, &run);
        self.agg.finder(&run);
        row.outcome = run.outcome.kind();
        row.rounds = run.rounds;
        (row, g)
    }

    fn finish(mut self) -> (Aggregate, Vec<InstanceRecord>) {
        let tally = std::mem::take(&mut self.auditor.tally);
        self.agg.audit.merge(&tally);
        (self.agg, self.records)
    }
}

fn check_range(name: &str, (lo, hi): (usize, usize)) -> Result<(), SweepError> {
    if lo > hi {
        return Err(SweepError::BadConfig(format!("empty {name} range {lo}..{hi}")));
    }
    Ok(())
}

fn build_source(cfg: &SweepConfig) -> Result<Source, SweepError> {
    check_range("n", cfg.n_range)?;
    if !(0.0..=1.0).contains(&cfg.p) {
        return Err(SweepError::BadConfig(format!(
            "edge probability {} outside [0, 1]",
            cfg.p
        )));
    }
    let (lo, hi) = cfg.n_range;
    let exhaustive = || -> Result<Source, SweepError> {
        let es = (lo..=hi)
            .map(|n| enumerate_all_oriented_bounded(n, DEFAULT_ENUMERATION_BOUND))
            .collect::<Result<_, _>>()?;
        Ok(Source::Exhaustive(es))
    };
    let random = || -> Result<Source, SweepError> {
        if hi > altpath_core::set::MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n: hi }.into());
        }
        Ok(Source::Random)
    };
    match cfg.mode {
        SweepMode::Exhaustive => exhaustive(),
        SweepMode::Random | SweepMode::Planted => random(),
        SweepMode::Oddcase if cfg.samples == 0 => exhaustive(),
        SweepMode::Oddcase => random(),
        SweepMode::Corollary => {
            let k = cfg
                .k
                .ok_or_else(|| SweepError::BadConfig("corollary sweeps need --k".into()))?;
            if let Some(n) = (lo..=hi).find(|&n| 2 * n <= 5 * k + 6) {
                return Err(SweepError::VacuousParams { n, k });
            }
            random()
        }
        SweepMode::Blowup => {
            check_range("t", cfg.t_range)?;
            check_range("b", cfg.b_range)?;
            let pairs: Vec<_> = (cfg.t_range.0..=cfg.t_range.1)
                .flat_map(|t| (cfg.b_range.0..=cfg.b_range.1).map(move |b| (t, b)))
                .collect();
            for &(t, b) in &pairs {
                blowup_directed_cycle(t, b)?;
            }
            Ok(Source::Blowup(pairs))
        }
    }
}

/// Runs a sweep of any mode.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    let source = build_source(cfg)?;
    let total = source.total(cfg);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build()?;
    let chunks: Vec<(Aggregate, Vec<InstanceRecord>)> = pool.install(|| {
        (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut w = Worker::new(cfg, &source);
                for index in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    w.run(index);
                }
                w.finish()
            })
            .collect()
    });
    let mut aggregate = Aggregate::default();
    let mut records = Vec::new();
    for (agg, recs) in chunks {
        aggregate.merge(&agg);
        records.extend(recs);
    }
    Ok(SweepReport {
        config: cfg.clone(),
        aggregate,
        records,
    })
}

fn expect_mode(cfg: &SweepConfig, allowed: &[SweepMode]) -> Result<(), SweepError> {
    if allowed.contains(&cfg.mode) {
        Ok(())
    } else {
        Err(SweepError::BadConfig(format!(
            "mode {:?} does not fit this sweep",
            cfg.mode
        )))
    }
}

/// Checks `L >= k` at every qualifying `k` and runs the finder there.
pub fn run_theorem_sweep(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    expect_mode(cfg, &[SweepMode::Exhaustive, SweepMode::Random])?;
    run_sweep(cfg)
}

pub fn run_blowup_suite(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    expect_mode(cfg, &[SweepMode::Blowup])?;
    run_sweep(cfg)
}

pub fn run_corollary_sweep(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    expect_mode(cfg, &[SweepMode::Corollary])?;
    run_sweep(cfg)
}

pub fn run_oddcase_sweep(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    expect_mode(cfg, &[SweepMode::Oddcase])?;
    run_sweep(cfg)
}

/// Counts of each finder outcome kind across records.
pub fn outcome_histogram(records: &[InstanceRecord]) -> BTreeMap<String, u64> {
    let mut h = BTreeMap::new();
    for r in records {
        *h.entry(r.finder_outcome.clone()).or_insert(0) += 1;
    }
    h
}
