use altpath_core::bipartite::{cut_cycle_at, normalize_cycle};
use altpath_core::generate::{enumerate_all_oriented, enumerate_all_oriented_bounded, random_walk_path};
use altpath_core::oracle::{
    find_alt_path_k, has_alt_path_k, longest_alt_path_enumerate, longest_alt_path_exact, OracleBudget,
};
use altpath_core::path::{frame_of, greedy_extend};
use altpath_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random labelled oriented graph on `lo..=hi` vertices, as an enumeration index.
fn graph(lo: usize, hi: usize) -> impl Strategy<Value = OrientedGraph> {
    (lo..=hi).prop_flat_map(|n| {
        let e = enumerate_all_oriented_bounded(n, 9).unwrap();
        (0..e.total()).prop_map(move |i| e.graph_at(i).unwrap())
    })
}

fn walk(g: &OrientedGraph, seed: u64) -> AlternatingPath {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_walk_path(g, g.n(), &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn subset_dp_matches_enumeration(g in graph(1, 7)) {
        let b = OracleBudget::default();
        let (l, witness) = longest_alt_path_exact(&g, &b).unwrap();
        prop_assert_eq!(l, longest_alt_path_enumerate(&g, &b).unwrap());
        prop_assert_eq!(witness.order(), l);
        prop_assert!(validate(&g, &witness));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn trim_keeps_validity(g in graph(1, 8), seed in any::<u64>()) {
        let p = walk(&g, seed);
        prop_assert!(validate(&g, &p));
        for k in 0..=p.order() {
            let t = p.trim(k).unwrap();
            prop_assert_eq!(t.order(), k);
            prop_assert!(validate(&g, &t));
            prop_assert_eq!(t.verts(), &p.verts()[..k]);
        }
    }

    #[test]
    fn reversal_keeps_frame(g in graph(2, 8), seed in any::<u64>()) {
        let p = walk(&g, seed);
        let r = p.reversed();
        prop_assert!(validate(&g, &r));
        prop_assert_eq!(r.reversed().verts().to_vec(), p.verts().to_vec());
        if p.order() >= 2 && p.order() % 2 == 0 {
            prop_assert_eq!(frame_of(&p).unwrap(), frame_of(&r).unwrap());
        } else if p.order() % 2 == 1 {
            prop_assert!(frame_of(&p).is_err());
        }
    }

    #[test]
    fn greedy_is_maximal(g in graph(1, 8), seed in any::<u64>(), cut in 0usize..8) {
        let p = walk(&g, seed);
        let p = p.trim(cut.min(p.order())).unwrap();
        let q = greedy_extend(&g, &p);
        prop_assert!(validate(&g, &q));
        prop_assert!(q.order() >= p.order());
        prop_assert!(q.tail_candidates(&g).is_empty());
        prop_assert!(q.head_candidates(&g).is_empty());
        prop_assert!(p.vertex_set().is_subset(q.vertex_set()));
    }

    #[test]
    fn longest_is_monotone_under_edge_addition(g in graph(2, 7), pick in any::<usize>(), flip in any::<bool>()) {
        let n = g.n();
        let absent: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v) && !g.has_edge(v, u))
            .collect();
        prop_assume!(!absent.is_empty());
        let (u, v) = absent[pick % absent.len()];
        let (u, v) = if flip { (v, u) } else { (u, v) };
        let mut edges: Vec<_> = g.edges().collect();
        edges.push((u, v));
        let h = OrientedGraph::from_edge_list(&edges, n).unwrap();
        let b = OracleBudget::default();
        prop_assert!(longest_alt_path_exact(&h, &b).unwrap().0 >= longest_alt_path_exact(&g, &b).unwrap().0);
    }

    #[test]
    fn odd_longest_is_long(g in graph(2, 8)) {
        let (l, _) = longest_alt_path_exact(&g, &OracleBudget::default()).unwrap();
        if let Some(d) = g.min_pseudo_semidegree() {
            if l % 2 == 1 {
                prop_assert!(l + 1 >= 2 * d, "L = {} with pseudo-semidegree {}", l, d);
            }
        }
    }

    #[test]
    fn decision_and_search_agree(g in graph(1, 7)) {
        let b = OracleBudget::default();
        let (l, _) = longest_alt_path_exact(&g, &b).unwrap();
        for k in 0..=g.n() {
            let found = find_alt_path_k(&g, k, &b).unwrap();
            prop_assert_eq!(has_alt_path_k(&g, k, &b).unwrap(), k <= l);
            prop_assert_eq!(found.is_some(), k <= l);
            if let Some(p) = found {
                prop_assert_eq!(p.order(), k);
                prop_assert!(validate(&g, &p));
            }
        }
    }

    #[test]
    fn finder_output_is_sound(g in graph(1, 9), k in 1usize..10) {
        let run = find_alternating_path(&g, k, &FinderBudget::default());
        prop_assert_eq!(run.condition_holds, condition_holds(g.min_pseudo_semidegree(), k));
        match &run.outcome {
            FinderOutcome::Found(p) => {
                prop_assert_eq!(p.order(), k);
                prop_assert!(validate(&g, p));
            }
            FinderOutcome::Diagnostic(c) => {
                prop_assert!(!run.condition_holds);
                prop_assert!(c.is_consistent(&g));
            }
            FinderOutcome::GaveUp { best, .. } => {
                prop_assert!(!run.condition_holds);
                prop_assert!(validate(&g, best));
            }
        }
        if run.condition_holds {
            prop_assert!(run.outcome.is_found());
        }
    }

    #[test]
    fn cycle_cut_and_normalize(len in 2usize..12, rot in 0usize..12, flip in any::<bool>()) {
        let mut c: Vec<usize> = (0..len).map(|i| (i * 7 + 3) % 64).collect();
        c.rotate_left(rot % len);
        if flip {
            c.reverse();
        }
        let norm = normalize_cycle(&c);
        prop_assert_eq!(norm[0], *c.iter().min().unwrap());
        prop_assert!(len < 3 || norm[1] < norm[len - 1]);
        for &v in &c {
            let cut = cut_cycle_at(&c, v).unwrap();
            prop_assert_eq!(cut[0], v);
            let at = c.iter().position(|&w| w == v).unwrap();
            prop_assert_eq!(cut[1], c[(at + 1) % len]);
        }
    }
}

#[test]
fn dp_matches_enumeration_exhaustively_to_four() {
    let b = OracleBudget::default();
    for n in 1..=4 {
        for g in enumerate_all_oriented(n).unwrap() {
            let (l, _) = longest_alt_path_exact(&g, &b).unwrap();
            assert_eq!(
                l,
                longest_alt_path_enumerate(&g, &b).unwrap(),
                "{:?}",
                g.edges().collect::<Vec<_>>()
            );
        }
    }
}
