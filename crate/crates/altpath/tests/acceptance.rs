//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use altpath::audit::{AuditTally, Auditor};
use altpath::report::{report_to_string, OutFormat};
use altpath::sweep::{run_blowup_suite, run_corollary_sweep, run_oddcase_sweep, run_sweep, run_theorem_sweep};
use altpath::{SweepConfig, SweepMode, SweepReport};
use altpath_core::bipartite::{mm_hamilton_cycle, moon_moser_check, BipartiteView, HamiltonBudget};
use altpath_core::finder::find_alternating_path_from;
use altpath_core::generate::{random_oriented_with, random_walk_path};
use altpath_core::oracle::hamilton_cycle_bipartite_exact;
use altpath_core::{largest_qualifying_k, FinderBudget, OrientedGraph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Counterexamples, finder failures and audit failures all zero.
fn clean(r: &SweepReport) -> bool {
    let a = &r.aggregate;
    a.counterexamples == 0 && a.finder_failures() == 0 && a.audit.failures == 0
}

fn describe(r: &SweepReport, took: Duration) -> String {
    let a = &r.aggregate;
    let mut s = format!(
        "{} graphs, {} checked, {} counterexamples, finder {}/{} found, {} audit failures, {:.1?}",
        a.instances, a.checked, a.counterexamples, a.finder_found, a.finder_runs, a.audit.failures, took
    );
    for m in a.audit.messages.iter().take(3) {
        s.push_str(&format!("\n      audit: {m}"));
    }
    s
}

/// Audit tallies of every sweep that criterion 5 covers.
#[derive(Default)]
struct Ledger {
    tally: AuditTally,
    sources: Vec<String>,
}

impl Ledger {
    fn add(&mut self, name: &str, t: &AuditTally) {
        self.tally.merge(t);
        self.sources.push(name.to_string());
    }
}

fn exhaustive(ledger: &mut Ledger) -> Outcome {
    let expected = [(4, 729u64), (5, 59_049), (6, 14_348_907)];
    let mut pass = true;
    let mut lines = Vec::new();
    for (n, count) in expected {
        let cfg = SweepConfig::new(SweepMode::Exhaustive).n(n).records(false).stable(true);
        let t = Instant::now();
        let r = run_theorem_sweep(&cfg).expect("exhaustive sweep");
        let took = t.elapsed();
        ledger.add(&format!("exhaustive n={n}"), &r.aggregate.audit);
        let ok = clean(&r) && r.aggregate.instances == count && r.aggregate.checked + r.aggregate.skipped == count;
        pass &= ok;
        lines.push(format!("n={n}: {}", describe(&r, took)));
    }
    verdict(pass, lines.join("\n    "))
}

fn random_agreement(ledger: &mut Ledger) -> Outcome {
    let mut pass = true;
    let mut lines = Vec::new();
    let mut total = 0;
    for (i, (p, samples)) in [(0.5, 3334), (0.8, 3333), (1.0, 3333)].into_iter().enumerate() {
        let cfg = SweepConfig::new(SweepMode::Random)
            .n_range(10, 16)
            .p(p)
            .samples(samples)
            .seed(100 + i as u64)
            .records(false)
            .stable(true);
        let t = Instant::now();
        let r = run_theorem_sweep(&cfg).expect("random sweep");
        ledger.add(&format!("random p={p}"), &r.aggregate.audit);
        total += r.aggregate.instances;
        pass &= clean(&r) && r.aggregate.finder_runs > 0;
        lines.push(format!("p={p}: {}", describe(&r, t.elapsed())));
    }
    pass &= total == 10_000;
    verdict(pass, lines.join("\n    "))
}

fn blowups() -> Outcome {
    let r = run_blowup_suite(&SweepConfig::new(SweepMode::Blowup).stable(true)).expect("blowup suite");
    let mut pass = r.records.len() == 9 && r.aggregate.checked == 9 && r.aggregate.counterexamples == 0;
    let mut pts = Vec::new();
    for rec in &r.records {
        let b = rec.min_semidegree.unwrap_or(0);
        pass &= rec.min_pseudo_semidegree == Some(b) && rec.oracle_l == Some(2 * b) && !rec.violation;
        pts.push(format!(
            "{}:L={}",
            rec.graph_id,
            rec.oracle_l.map_or("?".into(), |l| l.to_string())
        ));
    }
    verdict(pass, pts.join(" "))
}

fn frontier() -> Outcome {
    // Blow-up points (b, 2b) against the smallest L seen at pseudo-semidegree b.
    let mut pass = true;
    let mut seen = Vec::new();
    for n in 3..=5 {
        let cfg = SweepConfig::new(SweepMode::Exhaustive).n(n).records(false).stable(true);
        let r = run_theorem_sweep(&cfg).expect("exhaustive sweep");
        for p in &r.aggregate.frontier {
            pass &= p.min_oracle_l >= p.largest_qualifying_k;
            if n >= 3 * p.min_pseudo_semidegree {
                pass &= p.min_oracle_l <= 2 * p.min_pseudo_semidegree;
            }
            seen.push(format!("n={n} d={} minL={}", p.min_pseudo_semidegree, p.min_oracle_l));
        }
    }
    verdict(pass, seen.join(", "))
}

fn oddcase() -> Outcome {
    let mut pass = true;
    let mut lines = Vec::new();
    let exhaustive = SweepConfig::new(SweepMode::Oddcase)
        .n_range(1, 5)
        .records(false)
        .stable(true);
    let mut runs = vec![("exhaustive n<=5".to_string(), exhaustive)];
    for (i, p) in [0.3, 0.6, 1.0].into_iter().enumerate() {
        let samples = if i == 0 { 3334 } else { 3333 };
        let cfg = SweepConfig::new(SweepMode::Oddcase)
            .n_range(2, 16)
            .p(p)
            .samples(samples)
            .seed(200 + i as u64)
            .records(false)
            .stable(true);
        runs.push((format!("random p={p}"), cfg));
    }
    for (name, cfg) in runs {
        let t = Instant::now();
        let r = run_oddcase_sweep(&cfg).expect("oddcase sweep");
        let a = &r.aggregate;
        pass &= a.counterexamples == 0 && a.checked > 0;
        lines.push(format!(
            "{name}: {} graphs, {} with odd L, {} violations, {:.1?}",
            a.instances,
            a.odd_longest,
            a.counterexamples,
            t.elapsed()
        ));
    }
    verdict(pass, lines.join("\n    "))
}

/// A rotational tournament on an odd number of vertices with `flips` random edge deletions or reversals.
fn perturbed_rotational(n: usize, flips: usize, rng: &mut ChaCha8Rng) -> OrientedGraph {
    let mut out = vec![VertexSet::EMPTY; n];
    for (i, o) in out.iter_mut().enumerate() {
        for j in 1..=(n - 1) / 2 {
            o.insert((i + j) % n);
        }
    }
    for _ in 0..flips {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && out[u].contains(v) {
            out[u].remove(v);
            if rng.random_bool(0.5) {
                out[v].insert(u);
            }
        }
    }
    OrientedGraph::from_out_sets(&out).expect("still oriented")
}

fn step_soundness(ledger: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let planted = SweepConfig::new(SweepMode::Planted)
        .samples(2000)
        .seed(300)
        .records(false)
        .stable(true);
    let r = run_sweep(&planted).expect("planted sweep");
    ledger.add("planted", &r.aggregate.audit);
    let planted_ok = r.aggregate.finder_failures() == 0 && r.aggregate.finder_runs > 500;
    let planted_runs = r.aggregate.finder_runs;

    // Random stuck starting points on dense graphs.
    let mut auditor = Auditor::new();
    let budget = FinderBudget::default();
    let mut adversarial = 0;
    for i in 0..3000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(400 + i);
        let n = rng.random_range(9..=21usize);
        let g = if i % 2 == 0 {
            random_oriented_with(n, 1.0, &mut rng).unwrap()
        } else {
            let flips = rng.random_range(0..n);
            perturbed_rotational(n | 1, flips, &mut rng)
        };
        let Some(k) = largest_qualifying_k(g.min_pseudo_semidegree()) else {
            continue;
        };
        let walk = random_walk_path(&g, k.saturating_sub(1), &mut rng);
        let start = walk.trim(walk.order() & !1).unwrap();
        auditor.label = format!("adversarial {i}");
        let run = find_alternating_path_from(&g, k, &start, &budget, &mut auditor);
        auditor.check_run(&g, k, &run);
        adversarial += 1;
    }
    ledger.add("adversarial", &auditor.tally);

    let a = &ledger.tally;
    let exercised = a.closures > 0 && a.closures_vs_oracle > 0 && a.countings > 0 && a.cycles > 0 && a.degree_counts > 0;
    let pass = a.failures == 0 && planted_ok && exercised && a.q_paths > 0;
    let mut detail = format!(
        "sources [{}]: {} outcomes, {} closures ({} vs oracle), {} counting traces, {} spanning cycles, {} degree-count checks, {} re-rooted paths, {} failures; planted {} runs, adversarial {} runs, {:.1?}",
        ledger.sources.join(", "),
        a.outcomes,
        a.closures,
        a.closures_vs_oracle,
        a.countings,
        a.cycles,
        a.degree_counts,
        a.q_paths,
        a.failures,
        planted_runs,
        adversarial,
        t.elapsed()
    );
    for m in a.messages.iter().take(3) {
        detail.push_str(&format!("\n      audit: {m}"));
    }
    verdict(pass, detail)
}

fn moon_moser() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut passing = 0;
    let mut drawn = 0;
    let mut pass = true;
    while passing < 1000 {
        drawn += 1;
        let m = rng.random_range(2..=10usize);
        let x: VertexSet = (0..m).collect();
        let y: VertexSet = (m..2 * m).collect();
        let mut h = BipartiteView::new(x, y).unwrap();
        let p = rng.random_range(0.5..1.0);
        for u in 0..m {
            for v in m..2 * m {
                if rng.random_bool(p) {
                    h.add_edge(u, v).unwrap();
                }
            }
        }
        if moon_moser_check(&h).is_err() {
            continue;
        }
        passing += 1;
        let fast = mm_hamilton_cycle(&h, HamiltonBudget::default()).ok().flatten();
        let exact = hamilton_cycle_bipartite_exact(&h).ok().flatten();
        pass &= fast.as_deref().is_some_and(|c| h.is_hamilton_cycle(c));
        pass &= exact.as_deref().is_some_and(|c| h.is_hamilton_cycle(c));
    }
    let took = t.elapsed();
    pass &= took < Duration::from_secs(30);
    verdict(pass, format!("{passing} passing views of {drawn} drawn, {took:.1?}"))
}

fn corollary() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut lines = Vec::new();
    for n in 14..=16 {
        let cfg = SweepConfig::new(SweepMode::Corollary)
            .n(n)
            .k(4)
            .samples(100)
            .seed(600)
            .stable(true);
        let r = run_corollary_sweep(&cfg).expect("corollary sweep");
        let a = &r.aggregate;
        pass &= a.checked == 100 && a.counterexamples == 0;
        pass &= r
            .records
            .iter()
            .all(|x| x.edges == n * (n - 1) / 2 && x.oracle_l.is_some_and(|l| l >= 4));
        let min_l = r.records.iter().filter_map(|x| x.oracle_l).min().unwrap_or(0);
        lines.push(format!("n={n}: {} tournaments, min L {min_l}", a.checked));
    }
    let took = t.elapsed();
    pass &= took < Duration::from_secs(60);
    verdict(pass, format!("{}, {took:.1?}", lines.join("; ")))
}

fn determinism() -> Outcome {
    let configs = [
        SweepConfig::new(SweepMode::Random)
            .n_range(6, 12)
            .p(0.8)
            .samples(3000)
            .seed(7)
            .stable(true),
        SweepConfig::new(SweepMode::Exhaustive).n(4).stable(true),
        SweepConfig::new(SweepMode::Planted).samples(300).seed(8).stable(true),
        SweepConfig::new(SweepMode::Corollary)
            .n(14)
            .k(4)
            .samples(40)
            .seed(9)
            .stable(true),
    ];
    let mut pass = true;
    let mut compared = 0;
    for cfg in configs {
        let mut outputs = Vec::new();
        for workers in [1, 2, 4, 1] {
            let r = run_sweep(&cfg.clone().workers(workers)).expect("sweep");
            outputs.push((
                report_to_string(&r, OutFormat::Json),
                report_to_string(&r, OutFormat::Csv),
            ));
        }
        pass &= outputs.windows(2).all(|w| w[0] == w[1]);
        compared += outputs.len();
    }
    verdict(
        pass,
        format!("{compared} reports over 4 configs and worker counts 1, 2, 4"),
    )
}

fn main() {
    let mut ledger = Ledger::default();
    let mut failures = 0;
    let mut report = |name: &str, o: Outcome| {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failures += 1;
        }
        println!("[{tag}] {name}\n    {}", o.detail);
    };
    report("1 exhaustive theorem sweep n=4,5,6", exhaustive(&mut ledger));
    report(
        "2 random graphs: finder agrees with oracle",
        random_agreement(&mut ledger),
    );
    report("3 blow-ups of directed cycles are tight", blowups());
    report("3b frontier vs blow-up points", frontier());
    report("4 odd longest paths", oddcase());
    report("5 intermediate-step soundness", step_soundness(&mut ledger));
    report("6 Moon-Moser views are Hamiltonian", moon_moser());
    report("7 edge-count corollary on tournaments", corollary());
    report("8 reports independent of worker count", determinism());
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
