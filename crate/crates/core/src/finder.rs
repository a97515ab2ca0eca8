//! The top-level constructive finder.
//!
//! Each round starts from a path that cannot be extended at either end. Odd
//! paths go through a generic endpoint-rotation closure and, failing that, the
//! exact oracle. Even paths of order `2m < k` go through the respectable-path
//! pipeline: closure, spanning cycle, cycle scan, bipartite degree check and
//! the `Q` rebuild. Under `δ̄⁰ > 5k/8` every stage either extends the path or
//! hands the next stage what it needs; any failed counting step surfaces as a
//! [`Certificate`].

use crate::bipartite::HamiltonBudget;
use crate::graph::OrientedGraph;
use crate::oracle::{self, OracleBudget};
use crate::path::{frame_of, greedy_extend, AlternatingPath, ParityFrame};
use crate::rotation::{
    self, build_q, default_closure_budget, evenham_cycle, extension_scan_on_cycle, lemma_forgotten_check,
    AltSpanningCycle, BuildQError, Certificate, ClosureResult, CountingTrace, EvenhamOutcome, DegreeCountFailure, QPath,
    RespectablePath, RotationError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GiveUpReason {
    /// An odd path could not be extended and the oracle could not help.
    OddStuck,
    /// Two `Q` rebuilds in a row without the path growing.
    Livelock,
    BudgetExceeded,
}

impl GiveUpReason {
    pub fn as_str(self) -> &'static str {
        match self {
            GiveUpReason::OddStuck => "OddStuck",
            GiveUpReason::Livelock => "Livelock",
            GiveUpReason::BudgetExceeded => "BudgetExceeded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinderOutcome {
    /// A valid alternating path of order exactly `k`.
    Found(AlternatingPath),
    Diagnostic(Certificate),
    GaveUp {
        reason: GiveUpReason,
        best: AlternatingPath,
    },
}

impl FinderOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, FinderOutcome::Found(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FinderOutcome::Found(_) => "found",
            FinderOutcome::Diagnostic(_) => "diagnostic",
            FinderOutcome::GaveUp { .. } => "gave_up",
        }
    }
}

/// Outcome plus bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinderRun {
    pub outcome: FinderOutcome,
    pub rounds: usize,
    /// Whether `δ̄⁰(g) > 5k/8`.
    pub condition_holds: bool,
    /// Rounds settled by the oracle fallback.
    pub oracle_fallbacks: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinderBudget {
    /// Defaults to `4k` when `None`.
    pub rounds: Option<usize>,
    /// Endpoint pairs per closure; defaults to `4m^2` when `None`.
    pub closure_states: Option<usize>,
    pub oracle: OracleBudget,
    /// Whether odd stuck paths may fall back to the exact oracle.
    pub oracle_fallback: bool,
    pub hamilton: HamiltonBudget,
}

impl Default for FinderBudget {
    fn default() -> Self {
        FinderBudget {
            rounds: None,
            closure_states: None,
            oracle: OracleBudget::default(),
            oracle_fallback: true,
            hamilton: HamiltonBudget::default(),
        }
    }
}

/// Hooks into the pipeline, for auditing. All methods default to no-ops.
#[allow(unused_variables)]
pub trait Observer {
    fn closure(&mut self, g: &OrientedGraph, frame: &ParityFrame, seed: &RespectablePath, closure: &ClosureResult) {}
    fn counting(&mut self, g: &OrientedGraph, frame: &ParityFrame, k: usize, trace: &CountingTrace) {}
    fn cycle(&mut self, g: &OrientedGraph, frame: &ParityFrame, cycle: &AltSpanningCycle) {}
    fn degree_count(&mut self, g: &OrientedGraph, frame: &ParityFrame, k: usize, result: &Result<(), DegreeCountFailure>) {}
    fn q_path(&mut self, g: &OrientedGraph, frame: &ParityFrame, q: &QPath) {}
}

impl Observer for () {}

/// Looks for an alternating path on `k` vertices.
pub fn find_alternating_path(g: &OrientedGraph, k: usize, budget: &FinderBudget) -> FinderRun {
    find_alternating_path_observed(g, k, budget, &mut ())
}

pub fn find_alternating_path_observed(
    g: &OrientedGraph,
    k: usize,
    budget: &FinderBudget,
    obs: &mut dyn Observer,
) -> FinderRun {
    let condition_holds = crate::condition_holds(g.min_pseudo_semidegree(), k);
    let run = FinderRun {
        outcome: FinderOutcome::Found(AlternatingPath::empty()),
        rounds: 0,
        condition_holds,
        oracle_fallbacks: 0,
    };
    if k == 0 {
        return run;
    }
    let seed = match g.edges().next() {
        Some((u, v)) => AlternatingPath::new(alloc::vec![u, v], true),
        None if g.n() > 0 => AlternatingPath::single(0),
        None => AlternatingPath::empty(),
    };
    drive(g, k, greedy_extend(g, &seed), budget, obs, run)
}

/// Runs the rounds starting from `start` itself rather than a greedy seed.
/// `start` must be a valid alternating path of `g`.
pub fn find_alternating_path_from(
    g: &OrientedGraph,
    k: usize,
    start: &AlternatingPath,
    budget: &FinderBudget,
    obs: &mut dyn Observer,
) -> FinderRun {
    debug_assert!(crate::path::validate(g, start));
    let run = FinderRun {
        outcome: FinderOutcome::Found(AlternatingPath::empty()),
        rounds: 0,
        condition_holds: crate::condition_holds(g.min_pseudo_semidegree(), k),
        oracle_fallbacks: 0,
    };
    if k == 0 {
        return run;
    }
    drive(g, k, start.clone(), budget, obs, run)
}

fn drive(
    g: &OrientedGraph,
    k: usize,
    mut path: AlternatingPath,
    budget: &FinderBudget,
    obs: &mut dyn Observer,
    mut run: FinderRun,
) -> FinderRun {
    let round_budget = budget.rounds.unwrap_or(4 * k);
    let mut q_rounds = 0usize;

    let give_up = |reason, best: &AlternatingPath| FinderOutcome::GaveUp {
        reason,
        best: best.clone(),
    };

    loop {
        if path.order() >= k {
            run.outcome = FinderOutcome::Found(path.trim(k).expect("order checked"));
            return run;
        }
        run.rounds += 1;
        if run.rounds > round_budget {
            run.outcome = give_up(GiveUpReason::BudgetExceeded, &path);
            return run;
        }

        if path.order() % 2 == 1 || path.order() == 0 {
            let states = budget.closure_states.unwrap_or(g.n() * g.n() + 1);
            match rotation::endpoint_closure(g, &path, states) {
                Ok(Some(longer)) => {
                    path = greedy_extend(g, &longer);
                    q_rounds = 0;
                    continue;
                }
                Ok(None) => {}
                Err(_) => {
                    run.outcome = give_up(GiveUpReason::BudgetExceeded, &path);
                    return run;
                }
            }
            if budget.oracle_fallback && g.n() <= budget.oracle.max_n_subset_dp {
                run.oracle_fallbacks += 1;
                if let Ok(Some(p)) = oracle::find_alt_path_k(g, k, &budget.oracle) {
                    run.outcome = FinderOutcome::Found(p.trim(k).expect("oracle path has order k"));
                    return run;
                }
            }
            run.outcome = give_up(GiveUpReason::OddStuck, &path);
            return run;
        }

        match even_round(g, k, &path, budget, obs) {
            EvenStep::Extended(longer) => {
                path = greedy_extend(g, &longer);
                q_rounds = 0;
            }
            EvenStep::Rerooted(q) => {
                q_rounds += 1;
                if q_rounds >= 2 {
                    run.outcome = give_up(GiveUpReason::Livelock, &path);
                    return run;
                }
                path = q;
            }
            EvenStep::Diagnostic(cert) => {
                run.outcome = FinderOutcome::Diagnostic(cert);
                return run;
            }
            EvenStep::OverBudget => {
                run.outcome = give_up(GiveUpReason::BudgetExceeded, &path);
                return run;
            }
        }
    }
}

enum EvenStep {
    Extended(AlternatingPath),
    Rerooted(AlternatingPath),
    Diagnostic(Certificate),
    OverBudget,
}

fn even_round(
    g: &OrientedGraph,
    k: usize,
    path: &AlternatingPath,
    budget: &FinderBudget,
    obs: &mut dyn Observer,
) -> EvenStep {
    let frame = frame_of(path).expect("even order");
    let seed = RespectablePath::new(g, &frame, path).expect("an even path is respectable for its own frame");
    let states = budget.closure_states.unwrap_or_else(|| default_closure_budget(frame.m));

    let closure = match rotation::start_closure(g, &frame, &seed, states) {
        Ok(c) => c,
        Err(RotationError::BudgetExceeded { .. }) => return EvenStep::OverBudget,
        Err(e) => unreachable!("closure on a respectable seed: {e}"),
    };
    obs.closure(g, &frame, &seed, &closure);
    if let Some(ext) = &closure.extension {
        return EvenStep::Extended(ext.extended(g));
    }

    let cycle = match evenham_cycle(g, &frame, &closure, k, states) {
        Ok(EvenhamOutcome::Cycle(c, trace)) => {
            obs.counting(g, &frame, k, &trace);
            c
        }
        Ok(EvenhamOutcome::Extension(ext, trace)) => {
            obs.counting(g, &frame, k, &trace);
            return EvenStep::Extended(ext.extended(g));
        }
        Ok(EvenhamOutcome::Diagnostic(cert, trace)) => {
            obs.counting(g, &frame, k, &trace);
            return EvenStep::Diagnostic(cert);
        }
        Err(RotationError::BudgetExceeded { .. }) => return EvenStep::OverBudget,
        Err(e) => unreachable!("evenham on a closed frame: {e}"),
    };
    obs.cycle(g, &frame, &cycle);
    if let Some(longer) = extension_scan_on_cycle(g, &frame, &cycle) {
        return EvenStep::Extended(longer);
    }

    let counted = lemma_forgotten_check(g, &frame);
    obs.degree_count(g, &frame, k, &counted);
    if let Err(fail) = counted {
        return EvenStep::Diagnostic(fail.certificate(g, k));
    }

    match build_q(g, &frame, k, budget.hamilton) {
        Ok(q) => {
            obs.q_path(g, &frame, &q);
            EvenStep::Rerooted(q.path)
        }
        Err(BuildQError::Diagnostic(cert)) => EvenStep::Diagnostic(cert),
        Err(BuildQError::BudgetExceeded) => EvenStep::OverBudget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::blowup_directed_cycle;
    use crate::oracle::longest_alt_path_exact;
    use crate::path::validate;

    #[test]
    fn complete_bipartite_orientation() {
        let mut edges = alloc::vec::Vec::new();
        for x in 0..4 {
            for y in 4..8 {
                edges.push((x, y));
            }
        }
        let g = OrientedGraph::from_edge_list(&edges, 8).unwrap();
        let run = find_alternating_path(&g, 5, &FinderBudget::default());
        assert!(run.condition_holds);
        match run.outcome {
            FinderOutcome::Found(p) => {
                assert_eq!(p.order(), 5);
                assert!(validate(&g, &p));
                // x, y, x, y, x
                assert!(p.verts().iter().step_by(2).all(|&v| v < 4));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(longest_alt_path_exact(&g, &OracleBudget::default()).unwrap().0, 8);
    }

    #[test]
    fn blowup_below_threshold() {
        let g = blowup_directed_cycle(3, 2).unwrap();
        let run = find_alternating_path(&g, 5, &FinderBudget::default());
        assert!(!run.condition_holds);
        assert!(!run.outcome.is_found());
        assert_eq!(longest_alt_path_exact(&g, &OracleBudget::default()).unwrap().0, 4);
    }

    #[test]
    fn single_edge_and_edgeless() {
        let g = OrientedGraph::from_edge_list(&[(0, 1)], 2).unwrap();
        let run = find_alternating_path(&g, 2, &FinderBudget::default());
        assert_eq!(
            run.outcome,
            FinderOutcome::Found(AlternatingPath::new(alloc::vec![0, 1], true))
        );

        let g = OrientedGraph::empty(3).unwrap();
        let run = find_alternating_path(&g, 2, &FinderBudget::default());
        assert!(!run.condition_holds);
        assert!(matches!(run.outcome, FinderOutcome::GaveUp { .. }));

        let g = OrientedGraph::empty(0).unwrap();
        let run = find_alternating_path(&g, 3, &FinderBudget::default());
        assert!(matches!(
            run.outcome,
            FinderOutcome::GaveUp {
                reason: GiveUpReason::OddStuck,
                ..
            }
        ));
    }
}
