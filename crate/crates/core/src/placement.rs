//! Minimum driver placement for target controllability and minimum sensor
//! placement for target observability.
//!
//! Placement treats its input as a bare state pattern: existing input/output
//! attachments are not part of the minimization problem, and the result is a
//! fresh system over the same state pattern with one dedicated driver (or
//! sensor) per attach point. Every result carries a certificate from the
//! structural deciders; a result is never returned uncertified.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::InferenceGraph;
use crate::graphops::{control_subgraph_mask, target_predecessor_problem};
use crate::matching::hall_saturates;
use crate::structural::{
    target_controllable_graph, target_observable_graph, Decision, DecisionVerdict,
};
use crate::system::StructuredSystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlacementError {
    #[error("target set is empty")]
    EmptyTargets,
    #[error("targets without self-edges: {0:?} (use the duality-based sensor placement)")]
    SelfEdgeMissing(Vec<usize>),
    #[error("closure enumeration cap hit while certifying; undecided targets: {0:?}")]
    Exhausted(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PlacementMethod {
    SetCover,
    MatchingRepair,
    DualityConversion,
}

/// Attachment points plus the certified system they produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacementResult {
    /// States receiving a dedicated driver/sensor, in selection order.
    pub attach_points: Vec<usize>,
    pub resulting_system: StructuredSystem,
    pub certificate: Decision,
    pub iterations: usize,
    pub method: PlacementMethod,
}

/// Greedy set cover: repeatedly pick the candidate covering the most
/// uncovered elements, ties by ascending candidate id. Candidates that can
/// cover nothing new are never picked.
pub fn greedy_set_cover(
    universe: &BTreeSet<usize>,
    candidates: &[(usize, BTreeSet<usize>)],
) -> Vec<usize> {
    let mut uncovered = universe.clone();
    let mut selection = Vec::new();
    while !uncovered.is_empty() {
        let mut best: Option<(usize, usize)> = None; // (gain, id)
        for (id, set) in candidates {
            let gain = set.intersection(&uncovered).count();
            if gain == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bg, bid)) => gain > bg || (gain == bg && *id < bid),
            };
            if better {
                best = Some((gain, *id));
            }
        }
        match best {
            Some((_, id)) => {
                let set = &candidates.iter().find(|(cid, _)| *cid == id).unwrap().1;
                uncovered = uncovered.difference(set).copied().collect();
                selection.push(id);
            }
            None => break,
        }
    }
    selection
}

fn bare_graph(system: &StructuredSystem, targets: &[usize]) -> InferenceGraph {
    let edges: Vec<(usize, usize)> = system
        .pattern_a()
        .iter()
        .map(|&(i, j)| (j, i))
        .collect();
    InferenceGraph::from_state_edges(system.state_count(), &edges, targets)
}

/// Coverage sets for driver placement: candidate v covers every target
/// reachable from v. Computed by one reverse BFS per target.
fn driver_coverage(graph: &InferenceGraph, targets: &[usize]) -> Vec<(usize, BTreeSet<usize>)> {
    let n = graph.state_count();
    let mut covers: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &t in targets {
        let sources: BTreeSet<usize> = [t].into_iter().collect();
        for v in crate::graphops::coreachable_to(graph, &sources) {
            if graph.is_state(v) {
                covers[v].insert(t);
            }
        }
    }
    covers.into_iter().enumerate().collect()
}

/// Coverage sets for sensor placement: candidate v covers every target that
/// reaches v. Computed by one forward BFS per target.
fn sensor_coverage(graph: &InferenceGraph, targets: &[usize]) -> Vec<(usize, BTreeSet<usize>)> {
    let n = graph.state_count();
    let mut covers: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &t in targets {
        let sources: BTreeSet<usize> = [t].into_iter().collect();
        for v in crate::graphops::reachable_from(graph, &sources) {
            if graph.is_state(v) {
                covers[v].insert(t);
            }
        }
    }
    covers.into_iter().enumerate().collect()
}

fn driver_system(
    system: &StructuredSystem,
    attach: &[usize],
    targets: &[usize],
) -> StructuredSystem {
    let a_edges: Vec<(usize, usize)> = system
        .pattern_a()
        .iter()
        .map(|&(i, j)| (j, i))
        .collect();
    StructuredSystem::from_parts(system.state_count(), &a_edges, attach, &[], targets)
        .expect("placement constructs valid systems")
}

fn sensor_system(
    system: &StructuredSystem,
    attach: &[usize],
    targets: &[usize],
) -> StructuredSystem {
    let a_edges: Vec<(usize, usize)> = system
        .pattern_a()
        .iter()
        .map(|&(i, j)| (j, i))
        .collect();
    StructuredSystem::from_parts(system.state_count(), &a_edges, &[], attach, targets)
        .expect("placement constructs valid systems")
}

fn normalize_targets(targets: &[usize]) -> Result<Vec<usize>, PlacementError> {
    let set: BTreeSet<usize> = targets.iter().copied().collect();
    if set.is_empty() {
        return Err(PlacementError::EmptyTargets);
    }
    Ok(set.into_iter().collect())
}

/// Minimum driver placement for target controllability. Two-phase greedy:
/// set cover for driver-to-target reachability, then matching repair —
/// attach a dedicated driver at the first unmatched target until the targets
/// saturate their predecessors in the control subgraph. A dedicated driver is
/// an exclusive predecessor, so each repair raises the maximum matching by
/// exactly one and at most |T| repairs occur.
pub fn place_drivers_mdpt(
    system: &StructuredSystem,
    targets: &[usize],
) -> Result<PlacementResult, PlacementError> {
    let targets = normalize_targets(targets)?;
    let base = bare_graph(system, &targets);
    let universe: BTreeSet<usize> = targets.iter().copied().collect();
    let coverage = driver_coverage(&base, &targets);
    let mut attach = greedy_set_cover(&universe, &coverage);
    let mut iterations = attach.len();
    let mut method = PlacementMethod::SetCover;

    loop {
        let graph = base.with_drivers(&attach);
        let mask = control_subgraph_mask(&graph);
        let (problem, lefts, _) = target_predecessor_problem(&graph, &universe, Some(&mask));
        let all: Vec<usize> = (0..lefts.len()).collect();
        let cert = hall_saturates(&problem, &all);
        if cert.saturated {
            break;
        }
        method = PlacementMethod::MatchingRepair;
        let unmatched = lefts
            .iter()
            .enumerate()
            .find(|(li, _)| cert.matching.pairs[*li].is_none())
            .map(|(_, &t)| t)
            .expect("unsaturated matching leaves an unmatched target");
        attach.push(unmatched);
        iterations += 1;
    }

    if attach.len() > targets.len() {
        // One dedicated driver per target is always feasible and certified.
        attach = targets.clone();
        method = PlacementMethod::MatchingRepair;
    }

    let resulting_system = driver_system(system, &attach, &targets);
    let certificate = target_controllable_graph(&InferenceGraph::from_system(&resulting_system));
    assert_eq!(
        certificate.verdict,
        DecisionVerdict::True,
        "driver placement must certify"
    );
    Ok(PlacementResult {
        attach_points: attach,
        resulting_system,
        certificate,
        iterations,
        method,
    })
}

/// Minimum sensor placement for target observability in the self-edge
/// regime: greedy set cover over target-to-sensor reachability. Requires a
/// self-edge on every target; the certificate is still verified in full, and
/// any residual condition-2 deficiency is repaired with dedicated sensors at
/// the offending targets (a dedicated sensor is an exclusive successor, which
/// removes its state from every minimal contraction set).
pub fn place_sensors_mspt_selfloop(
    system: &StructuredSystem,
    targets: &[usize],
    cap: usize,
) -> Result<PlacementResult, PlacementError> {
    let targets = normalize_targets(targets)?;
    let missing: Vec<usize> = targets
        .iter()
        .copied()
        .filter(|&t| !system.has_self_edge(t))
        .collect();
    if !missing.is_empty() {
        return Err(PlacementError::SelfEdgeMissing(missing));
    }
    let base = bare_graph(system, &targets);
    let universe: BTreeSet<usize> = targets.iter().copied().collect();
    let coverage = sensor_coverage(&base, &targets);
    let attach = greedy_set_cover(&universe, &coverage);
    let iterations = attach.len();
    certify_sensors(
        system,
        &targets,
        attach,
        iterations,
        PlacementMethod::SetCover,
        cap,
    )
}

/// Minimum sensor placement through the duality conversion: run the driver
/// placement on the edge-reversed pattern, read the attach points as sensor
/// sites, then verify the strong-duality condition T ∩ D = ∅ and repair with
/// dedicated sensors at violating targets until the observability certificate
/// holds.
pub fn place_sensors_via_duality(
    system: &StructuredSystem,
    targets: &[usize],
    cap: usize,
) -> Result<PlacementResult, PlacementError> {
    let targets = normalize_targets(targets)?;
    let reversed_edges: Vec<(usize, usize)> = system
        .pattern_a()
        .iter()
        .map(|&(i, j)| (i, j)) // pattern (i, j) is edge j -> i; reversed is i -> j
        .collect();
    let reversed = StructuredSystem::from_parts(
        system.state_count(),
        &reversed_edges,
        &[],
        &[],
        &targets,
    )
    .expect("reversal preserves validity");
    let inner = place_drivers_mdpt(&reversed, &targets)?;
    let attach = inner.attach_points.clone();
    let iterations = inner.iterations;
    certify_sensors(
        system,
        &targets,
        attach,
        iterations,
        PlacementMethod::DualityConversion,
        cap,
    )
}

fn certify_sensors(
    system: &StructuredSystem,
    targets: &[usize],
    mut attach: Vec<usize>,
    mut iterations: usize,
    method: PlacementMethod,
    cap: usize,
) -> Result<PlacementResult, PlacementError> {
    let mut repaired: BTreeSet<usize> = BTreeSet::new();
    loop {
        let resulting_system = sensor_system(system, &attach, targets);
        let graph = InferenceGraph::from_system(&resulting_system);
        let certificate = target_observable_graph(&graph, cap);
        if certificate.verdict == DecisionVerdict::True {
            let mut final_attach = attach;
            let mut final_system = resulting_system;
            let mut final_cert = certificate;
            if final_attach.len() > targets.len() {
                final_attach = targets.to_vec();
                final_system = sensor_system(system, &final_attach, targets);
                final_cert =
                    target_observable_graph(&InferenceGraph::from_system(&final_system), cap);
                assert_eq!(final_cert.verdict, DecisionVerdict::True);
            }
            return Ok(PlacementResult {
                attach_points: final_attach,
                resulting_system: final_system,
                certificate: final_cert,
                iterations,
                method,
            });
        }
        // Repair: every witness target — unable to reach a sensor, inside
        // the dilation union or a Hall violator, or undecided under the cap
        // — gets its own dedicated sensor. A dedicated sensor is an
        // exclusive successor, which provably removes its state from every
        // minimal contraction set without any enumeration, so each repair is
        // decisive and the loop ends after at most |T| rounds.
        let witnesses: Vec<usize> = certificate
            .condition1
            .witness
            .iter()
            .chain(certificate.condition2.witness.iter())
            .filter_map(|node| match node {
                crate::graph::Node::State(s) => Some(*s),
                _ => None,
            })
            .filter(|s| !repaired.contains(s))
            .collect();
        if witnesses.is_empty() {
            return Err(PlacementError::Exhausted(
                certificate
                    .condition2
                    .witness
                    .iter()
                    .filter_map(|node| match node {
                        crate::graph::Node::State(s) => Some(*s),
                        _ => None,
                    })
                    .collect(),
            ));
        }
        for state in witnesses {
            if repaired.insert(state) {
                attach.push(state);
                iterations += 1;
            }
        }
    }
}

/// One row of the placement-vs-target-fraction sweep; counts are normalized
/// by the state count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub fraction: f64,
    pub mean_drivers: f64,
    pub sd_drivers: f64,
    pub mean_sensors: f64,
    pub sd_sensors: f64,
}

/// For each target fraction, samples `trials` uniform target sets and runs
/// both placements, reporting mean and population standard deviation of
/// |attach points| / n. Per-trial randomness comes from a dedicated stream of
/// the seeded generator, so results do not depend on evaluation order.
pub fn coverage_curve(
    system: &StructuredSystem,
    fractions: &[f64],
    trials: usize,
    seed: u64,
    cap: usize,
) -> Result<Vec<CurveRow>, PlacementError> {
    let n = system.state_count();
    let mut rows = Vec::with_capacity(fractions.len());
    for (point, &fraction) in fractions.iter().enumerate() {
        let r = ((fraction * n as f64).round() as usize).min(n);
        let mut driver_counts = Vec::with_capacity(trials);
        let mut sensor_counts = Vec::with_capacity(trials);
        for trial in 0..trials {
            if r == 0 {
                driver_counts.push(0.0);
                sensor_counts.push(0.0);
                continue;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((point as u64) << 32 | trial as u64);
            let mut pool: Vec<usize> = (0..n).collect();
            pool.shuffle(&mut rng);
            let targets: Vec<usize> = pool.into_iter().take(r).collect();
            let drivers = place_drivers_mdpt(system, &targets)?;
            let sensors = place_sensors_via_duality(system, &targets, cap)?;
            driver_counts.push(drivers.attach_points.len() as f64 / n as f64);
            sensor_counts.push(sensors.attach_points.len() as f64 / n as f64);
        }
        let stats = |xs: &[f64]| -> (f64, f64) {
            if xs.is_empty() {
                return (0.0, 0.0);
            }
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / xs.len() as f64;
            (mean, var.sqrt())
        };
        let (mean_drivers, sd_drivers) = stats(&driver_counts);
        let (mean_sensors, sd_sensors) = stats(&sensor_counts);
        rows.push(CurveRow {
            fraction,
            mean_drivers,
            sd_drivers,
            mean_sensors,
            sd_sensors,
        });
    }
    Ok(rows)
}
