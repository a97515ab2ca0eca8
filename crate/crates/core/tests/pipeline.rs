use altpath_core::bipartite::{build_h, mm_hamilton_cycle, moon_moser_check, BipartiteView, HamiltonBudget};
use altpath_core::finder::{find_alternating_path_from, Observer};
use altpath_core::generate::{planted_closed_frame, random_oriented_with, random_walk_path};
use altpath_core::oracle::{enumerate_respectable_endpoints, hamilton_cycle_bipartite_exact, OracleBudget};
use altpath_core::path::frame_of;
use altpath_core::rotation::*;
use altpath_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn closures_stay_inside_the_exact_endpoint_sets() {
    let ob = OracleBudget::default();
    let mut checked = 0;
    for seed in 0..3000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(4..=12);
        let p = rng.random_range(0.4..1.0);
        let g = random_oriented_with(n, p, &mut rng).unwrap();
        let walk = random_walk_path(&g, 12, &mut rng);
        let walk = walk.trim(walk.order() & !1).unwrap();
        if walk.order() < 4 {
            continue;
        }
        let frame = frame_of(&walk).unwrap();
        let seed_path = RespectablePath::new(&g, &frame, &walk).unwrap();
        let (true_starts, true_terms) = enumerate_respectable_endpoints(&g, &frame, &ob).unwrap();
        for closure in [
            start_closure(&g, &frame, &seed_path, 1 << 20).unwrap(),
            terminal_closure(&g, &frame, &seed_path, 1 << 20).unwrap(),
        ] {
            assert!(closure.starts.is_subset(true_starts));
            assert!(closure.terminals.is_subset(true_terms));
            for w in closure.witnesses() {
                assert!(w.is_valid(&g, &frame));
            }
            match &closure.extension {
                Some(ext) => {
                    let longer = ext.extended(&g);
                    assert_eq!(longer.order(), walk.order() + 1);
                    assert!(validate(&g, &longer));
                }
                None => checked += 1,
            }
        }
    }
    assert!(checked > 100, "only {checked} closed frames");
}

#[test]
fn moon_moser_graphs_are_hamiltonian() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut passing = 0;
    while passing < 300 {
        let m = rng.random_range(2..=8);
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
        let exact = hamilton_cycle_bipartite_exact(&h).unwrap();
        let fast = mm_hamilton_cycle(&h, HamiltonBudget::default()).unwrap();
        if let Some(c) = &fast {
            assert!(h.is_hamilton_cycle(c));
        }
        if let Some(c) = &exact {
            assert!(h.is_hamilton_cycle(c));
        }
        assert_eq!(exact.is_some(), fast.is_some());
        if moon_moser_check(&h).is_ok() {
            passing += 1;
            assert!(exact.is_some());
        }
    }
}

#[derive(Default)]
struct Audit {
    closures: usize,
    cycles: usize,
    qs: usize,
}

impl Observer for Audit {
    fn closure(&mut self, g: &OrientedGraph, frame: &ParityFrame, _seed: &RespectablePath, c: &ClosureResult) {
        self.closures += 1;
        assert!(c.witnesses().all(|w| w.is_valid(g, frame)));
    }

    fn counting(&mut self, g: &OrientedGraph, frame: &ParityFrame, k: usize, t: &CountingTrace) {
        if condition_holds(g.min_pseudo_semidegree(), k) {
            assert!(t.a_ok, "{t:?}");
            assert!(!t.c_evaluated || t.c_ok, "{t:?}");
            assert!(2 * t.size_a > frame.m);
        }
    }

    fn cycle(&mut self, g: &OrientedGraph, frame: &ParityFrame, cycle: &AltSpanningCycle) {
        self.cycles += 1;
        assert!(cycle.is_valid(g, frame));
    }

    fn degree_count(&mut self, g: &OrientedGraph, _frame: &ParityFrame, k: usize, r: &Result<(), DegreeCountFailure>) {
        if condition_holds(g.min_pseudo_semidegree(), k) {
            assert!(r.is_ok());
        }
    }

    fn q_path(&mut self, g: &OrientedGraph, frame: &ParityFrame, q: &QPath) {
        self.qs += 1;
        assert!(validate(g, &q.path));
        assert_eq!(q.path.order(), 2 * frame.m);
        assert!(!frame.span().contains(q.q1));
        assert!(frame.sources.contains(q.q2) && frame.sources.contains(q.q3));
        assert_eq!(q.path.verts()[..3], [q.q1, q.q2, q.q3]);
        assert!(moon_moser_check(&build_h(g, frame)).is_ok());
    }
}

#[test]
fn planted_frames_run_the_whole_pipeline() {
    let mut audit = Audit::default();
    let budget = FinderBudget::default();
    let mut qualifying = 0;
    for seed in 0..400u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(3..=9) | 1;
        let x = rng.random_range(m..=2 * m) | 1;
        let (g, start) = planted_closed_frame(m, x, 0.0, &mut rng).unwrap();
        let Some(k) = largest_qualifying_k(g.min_pseudo_semidegree()) else {
            continue;
        };
        if k <= 2 * m {
            continue;
        }
        qualifying += 1;
        let run = find_alternating_path_from(&g, k, &start, &budget, &mut audit);
        match run.outcome {
            FinderOutcome::Found(p) => {
                assert_eq!(p.order(), k);
                assert!(validate(&g, &p));
            }
            other => panic!("seed {seed}: {other:?}"),
        }
    }
    assert!(qualifying > 100);
    assert!(audit.closures > 0 && audit.cycles > 0 && audit.qs > 0);
}

#[test]
fn below_threshold_blowups_report_certificates() {
    for (t, b) in [(3, 2), (4, 3), (5, 2)] {
        let g = generate::blowup_directed_cycle(t, b).unwrap();
        let run = find_alternating_path(&g, 2 * b + 1, &FinderBudget::default());
        assert!(!run.condition_holds);
        match run.outcome {
            FinderOutcome::Found(p) => panic!("longer than possible: {p}"),
            FinderOutcome::Diagnostic(c) => assert!(c.is_consistent(&g)),
            FinderOutcome::GaveUp { best, .. } => assert!(validate(&g, &best)),
        }
    }
}
