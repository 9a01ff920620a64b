//! Deciders for structural and target controllability/observability, and the
//! weak/strong duality reports connecting them.
//!
//! Target controllability of (A,B;F): every target is reachable from a
//! driver, and the targets can be matched injectively into their predecessors
//! within the control subgraph (Hall's condition, equivalent to no target
//! subset having a dilation there). Target observability of (C,A;F) is
//! decided on the transposed system: the same reachability condition plus
//! emptiness of the intersection between targets and the union of minimal
//! dilation sets of the dual graph. The two dual-side conditions coincide
//! with the contraction-based characterization on every system satisfying the
//! independence assumption with a diagonalizable realization, and are exactly
//! what the weak/strong duality principles preserve.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{InferenceGraph, Node};
use crate::graphops::{
    control_subgraph_mask, coreachable_to, dilation_union_on_targets, graph_has_dilation,
    reachable_from, target_predecessor_problem, ClosureOutcome,
};
use crate::matching::hall_saturates;
use crate::system::{AssumptionReport, AssumptionVerdict, StructuredSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructuralError {
    #[error("independence assumption violated: {0:?}")]
    AssumptionViolated(AssumptionReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecisionVerdict {
    True,
    False,
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionStatus {
    Pass,
    Fail,
    Undecided,
}

/// One of the two graph conditions of a decision, with its witness nodes:
/// unreached/unreaching targets for condition 1, a Hall violator or the
/// members of T ∩ D for condition 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub status: ConditionStatus,
    pub witness: Vec<Node>,
}

impl ConditionReport {
    fn pass() -> Self {
        Self {
            status: ConditionStatus::Pass,
            witness: Vec::new(),
        }
    }

    fn fail(witness: Vec<Node>) -> Self {
        Self {
            status: ConditionStatus::Fail,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == ConditionStatus::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DecisionMethod {
    Matching,
    AlternatingClosure,
    SelfEdgeShortcut,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: DecisionVerdict,
    pub condition1: ConditionReport,
    pub condition2: ConditionReport,
    pub method: DecisionMethod,
}

impl Decision {
    pub fn holds(&self) -> bool {
        self.verdict == DecisionVerdict::True
    }
}

fn ensure_assumption(system: &StructuredSystem) -> Result<AssumptionReport, StructuralError> {
    let report = system.validate_assumption();
    if report.verdict == AssumptionVerdict::Violated {
        return Err(StructuralError::AssumptionViolated(report));
    }
    Ok(report)
}

fn combine(condition1: ConditionReport, condition2: ConditionReport, method: DecisionMethod) -> Decision {
    let verdict = match (condition1.status, condition2.status) {
        (ConditionStatus::Fail, _) | (_, ConditionStatus::Fail) => DecisionVerdict::False,
        (ConditionStatus::Undecided, _) | (_, ConditionStatus::Undecided) => {
            DecisionVerdict::Exhausted
        }
        (ConditionStatus::Pass, ConditionStatus::Pass) => DecisionVerdict::True,
    };
    Decision {
        verdict,
        condition1,
        condition2,
        method,
    }
}

/// Structural controllability: every state reachable from some driver and no
/// dilation anywhere in the graph.
pub fn is_structurally_controllable(system: &StructuredSystem) -> Decision {
    let graph = InferenceGraph::from_system(system);
    structurally_controllable_graph(&graph)
}

fn structurally_controllable_graph(graph: &InferenceGraph) -> Decision {
    let drivers: BTreeSet<usize> = graph.driver_ids().collect();
    let reach = reachable_from(graph, &drivers);
    let unreached: Vec<Node> = (0..graph.state_count())
        .filter(|id| !reach.contains(id))
        .map(|id| graph.node(id))
        .collect();
    let condition1 = if unreached.is_empty() {
        ConditionReport::pass()
    } else {
        ConditionReport::fail(unreached)
    };
    let (has_dilation, violator) = graph_has_dilation(graph);
    let condition2 = if has_dilation {
        ConditionReport::fail(
            violator
                .unwrap_or_default()
                .into_iter()
                .map(|id| graph.node(id))
                .collect(),
        )
    } else {
        ConditionReport::pass()
    };
    combine(condition1, condition2, DecisionMethod::Matching)
}

/// Structural observability, decided as structural controllability of the
/// transposed system.
pub fn is_structurally_observable(system: &StructuredSystem) -> Decision {
    is_structurally_controllable(&system.transpose_dual())
}

/// Target controllability of (A,B;F): condition 1 is driver-to-target
/// reachability, condition 2 is Hall's condition on targets vs. their
/// predecessors within the control subgraph.
pub fn is_target_controllable(system: &StructuredSystem) -> Result<Decision, StructuralError> {
    ensure_assumption(system)?;
    let graph = InferenceGraph::from_system(system);
    Ok(target_controllable_graph(&graph))
}

/// Graph-level target controllability; used directly by placement search.
pub(crate) fn target_controllable_graph(graph: &InferenceGraph) -> Decision {
    let targets = graph.targets().clone();
    if targets.is_empty() {
        return combine(
            ConditionReport::pass(),
            ConditionReport::pass(),
            DecisionMethod::Matching,
        );
    }
    let drivers: BTreeSet<usize> = graph.driver_ids().collect();
    let reach = reachable_from(graph, &drivers);
    let unreached: Vec<Node> = targets
        .iter()
        .filter(|t| !reach.contains(t))
        .map(|&t| graph.node(t))
        .collect();
    let condition1 = if unreached.is_empty() {
        ConditionReport::pass()
    } else {
        ConditionReport::fail(unreached)
    };

    let mask = control_subgraph_mask(graph);
    let (problem, lefts, _) = target_predecessor_problem(graph, &targets, Some(&mask));
    let all: Vec<usize> = (0..lefts.len()).collect();
    let cert = hall_saturates(&problem, &all);
    let condition2 = if cert.saturated {
        ConditionReport::pass()
    } else {
        ConditionReport::fail(
            cert.violator
                .unwrap_or_default()
                .into_iter()
                .map(|li| graph.node(lefts[li]))
                .collect(),
        )
    };
    combine(condition1, condition2, DecisionMethod::Matching)
}

/// Target observability of (C,A;F): condition 1 is target-to-sensor
/// reachability; condition 2 is decided on the edge-reversed dual graph,
/// where contractions become dilations — the targets must be saturable
/// within the dual control subgraph and no target may belong to a minimal
/// dilation set of the dual graph (T ∩ D = ∅).
pub fn is_target_observable(
    system: &StructuredSystem,
    cap: usize,
) -> Result<Decision, StructuralError> {
    ensure_assumption(system)?;
    let graph = InferenceGraph::from_system(system);
    Ok(target_observable_graph(&graph, cap))
}

pub(crate) fn target_observable_graph(graph: &InferenceGraph, cap: usize) -> Decision {
    let targets = graph.targets().clone();
    let self_edge_regime = !targets.is_empty() && targets.iter().all(|&t| graph.has_self_edge(t));
    if targets.is_empty() {
        return combine(
            ConditionReport::pass(),
            ConditionReport::pass(),
            DecisionMethod::AlternatingClosure,
        );
    }
    let sensors: BTreeSet<usize> = graph.sensor_ids().collect();
    let coreach = coreachable_to(graph, &sensors);
    let unreaching: Vec<Node> = targets
        .iter()
        .filter(|t| !coreach.contains(t))
        .map(|&t| graph.node(t))
        .collect();
    let condition1 = if unreaching.is_empty() {
        ConditionReport::pass()
    } else {
        ConditionReport::fail(unreaching)
    };

    let dual = graph.reversed_dual();
    let mask = control_subgraph_mask(&dual);
    let (problem, lefts, _) = target_predecessor_problem(&dual, &targets, Some(&mask));
    let all: Vec<usize> = (0..lefts.len()).collect();
    let cert = hall_saturates(&problem, &all);
    let condition2 = if !cert.saturated {
        ConditionReport::fail(
            cert.violator
                .unwrap_or_default()
                .into_iter()
                .map(|li| graph.node(lefts[li]))
                .collect(),
        )
    } else {
        match dilation_union_on_targets(&dual, &targets, cap) {
            ClosureOutcome::Complete { members } if members.is_empty() => ConditionReport::pass(),
            ClosureOutcome::Complete { members } => {
                ConditionReport::fail(members.into_iter().map(|t| graph.node(t)).collect())
            }
            ClosureOutcome::Exhausted { members, .. } if !members.is_empty() => {
                ConditionReport::fail(members.into_iter().map(|t| graph.node(t)).collect())
            }
            ClosureOutcome::Exhausted { undecided, .. } => ConditionReport {
                status: ConditionStatus::Undecided,
                witness: undecided.into_iter().map(|t| graph.node(t)).collect(),
            },
        }
    };
    let method = if self_edge_regime && condition2.passed() {
        DecisionMethod::SelfEdgeShortcut
    } else {
        DecisionMethod::AlternatingClosure
    };
    combine(condition1, condition2, method)
}

/// True iff every target state carries a self-edge. In that regime the
/// classical sufficient condition applies in the bulk of cases, but it is
/// not relied on for verdicts: condition 2 is always verified.
pub fn all_targets_self_edged(system: &StructuredSystem) -> bool {
    let targets = system.targets();
    !targets.is_empty() && targets.iter().all(|&t| system.has_self_edge(t))
}

/// Sides of a duality pair. The observability side is the system itself when
/// it has sensors, otherwise its transpose; the controllability side is
/// always the transpose of the observability side.
fn duality_pair(system: &StructuredSystem) -> (StructuredSystem, StructuredSystem) {
    if system.sensor_count() > 0 {
        (system.clone(), system.transpose_dual())
    } else {
        (system.transpose_dual(), system.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakDualityReport {
    pub observable: Decision,
    pub dual_controllable: Decision,
    /// True would mean target observability held while dual target
    /// controllability failed — impossible, so any occurrence is a defect in
    /// this crate, not in the input.
    pub violation_bug: bool,
}

/// Evaluates both sides of the weak duality principle.
pub fn weak_duality_report(
    system: &StructuredSystem,
    cap: usize,
) -> Result<WeakDualityReport, StructuralError> {
    let (obs_side, ctrb_side) = duality_pair(system);
    let observable = is_target_observable(&obs_side, cap)?;
    let dual_controllable = is_target_controllable(&ctrb_side)?;
    let violation_bug = observable.verdict == DecisionVerdict::True
        && dual_controllable.verdict == DecisionVerdict::False;
    Ok(WeakDualityReport {
        observable,
        dual_controllable,
        violation_bug,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongDualityReport {
    pub dual_target_controllable: Decision,
    /// T ∩ D on the controllability-side graph, when decided.
    pub targets_in_dilation_union: Option<Vec<Node>>,
    pub exhausted_targets: Vec<Node>,
    /// Verdict implied by strong duality: controllable and T ∩ D = ∅.
    pub implied_observable: DecisionVerdict,
    pub observable: Decision,
    /// Implied and directly-decided verdicts agree whenever both are decided.
    pub consistent: bool,
}

impl StrongDualityReport {
    pub fn strong_duality_holds(&self) -> Option<bool> {
        match (
            self.dual_target_controllable.verdict,
            &self.targets_in_dilation_union,
        ) {
            (DecisionVerdict::Exhausted, _) | (_, None) => None,
            (_, Some(members)) => Some(members.is_empty()),
        }
    }
}

/// Evaluates the strong duality principle: target observability holds iff the
/// transposed system is target controllable and no target lies in the union
/// of minimal dilation sets of the controllability-side graph.
pub fn strong_duality_report(
    system: &StructuredSystem,
    cap: usize,
) -> Result<StrongDualityReport, StructuralError> {
    let (obs_side, ctrb_side) = duality_pair(system);
    let dual_target_controllable = is_target_controllable(&ctrb_side)?;
    let ctrb_graph = InferenceGraph::from_system(&ctrb_side);
    let targets = ctrb_graph.targets().clone();
    let union = dilation_union_on_targets(&ctrb_graph, &targets, cap);
    let (members, exhausted): (Option<Vec<Node>>, Vec<Node>) = match &union {
        ClosureOutcome::Complete { members } => (
            Some(members.iter().map(|&t| ctrb_graph.node(t)).collect()),
            Vec::new(),
        ),
        ClosureOutcome::Exhausted { members, undecided } => {
            let decided_members: Vec<Node> =
                members.iter().map(|&t| ctrb_graph.node(t)).collect();
            let undecided: Vec<Node> = undecided.iter().map(|&t| ctrb_graph.node(t)).collect();
            if decided_members.is_empty() {
                (None, undecided)
            } else {
                // A decided member settles T ∩ D ≠ ∅ regardless of the rest.
                (Some(decided_members), undecided)
            }
        }
    };
    let implied_observable = match (&dual_target_controllable.verdict, &members) {
        (DecisionVerdict::False, _) => DecisionVerdict::False,
        (_, Some(m)) if !m.is_empty() => DecisionVerdict::False,
        (DecisionVerdict::Exhausted, _) | (_, None) => DecisionVerdict::Exhausted,
        (DecisionVerdict::True, Some(_)) => DecisionVerdict::True,
    };
    let observable = is_target_observable(&obs_side, cap)?;
    let consistent = implied_observable == DecisionVerdict::Exhausted
        || observable.verdict == DecisionVerdict::Exhausted
        || implied_observable == observable.verdict;
    Ok(StrongDualityReport {
        dual_target_controllable,
        targets_in_dilation_union: members,
        exhausted_targets: exhausted,
        implied_observable,
        observable,
        consistent,
    })
}
