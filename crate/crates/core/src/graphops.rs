//! Sparse-graph primitives: predecessor/successor sets, reachability, the
//! control subgraph, dilation tests, and the alternating-closure membership
//! search for minimal dilation sets.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::InferenceGraph;
use crate::matching::{hall_saturates, BipartiteProblem, HallCertificate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphOpsError {
    #[error("node id {0} is not a state node")]
    UnknownNode(usize),
}

/// Touch counters for the closure construction; the build is linear in the
/// graph, so `nodes_touched + edges_scanned` stays O(n + |E|) per target.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClosureStats {
    pub nodes_touched: usize,
    pub edges_scanned: usize,
}

fn ensure_states(graph: &InferenceGraph, nodes: &BTreeSet<usize>) -> Result<(), GraphOpsError> {
    for &v in nodes {
        if !graph.is_state(v) {
            return Err(GraphOpsError::UnknownNode(v));
        }
    }
    Ok(())
}

/// All nodes (states or drivers) with a direct edge into the given states.
pub fn predecessors(
    graph: &InferenceGraph,
    nodes: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>, GraphOpsError> {
    ensure_states(graph, nodes)?;
    let mut out = BTreeSet::new();
    for &v in nodes {
        out.extend(graph.in_neighbors(v).iter().copied());
    }
    Ok(out)
}

/// All nodes (states or sensors) with a direct edge from the given states.
pub fn successors(
    graph: &InferenceGraph,
    nodes: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>, GraphOpsError> {
    ensure_states(graph, nodes)?;
    let mut out = BTreeSet::new();
    for &v in nodes {
        out.extend(graph.out_neighbors(v).iter().copied());
    }
    Ok(out)
}

/// Nodes reachable from `sources` along directed paths, sources included.
pub fn reachable_from(graph: &InferenceGraph, sources: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut seen = vec![false; graph.node_count()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in graph.out_neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.iter()
        .enumerate()
        .filter_map(|(i, &s)| s.then_some(i))
        .collect()
}

/// Nodes from which some sink is reachable, sinks included.
pub fn coreachable_to(graph: &InferenceGraph, sinks: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut seen = vec![false; graph.node_count()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in sinks {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in graph.in_neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.iter()
        .enumerate()
        .filter_map(|(i, &s)| s.then_some(i))
        .collect()
}

/// Node mask of the control subgraph: the drivers plus every node lying on a
/// directed path from some driver to some target.
pub fn control_subgraph_mask(graph: &InferenceGraph) -> Vec<bool> {
    let drivers: BTreeSet<usize> = graph.driver_ids().collect();
    let reach = reachable_from(graph, &drivers);
    let coreach = coreachable_to(graph, graph.targets());
    let mut mask = vec![false; graph.node_count()];
    for id in 0..graph.node_count() {
        if reach.contains(&id) && coreach.contains(&id) {
            mask[id] = true;
        }
    }
    for d in graph.driver_ids() {
        mask[d] = true;
    }
    mask
}

/// The control subgraph as a compacted graph plus the retained original ids
/// (ascending). State/driver/sensor order is preserved.
pub fn control_subgraph(graph: &InferenceGraph) -> (InferenceGraph, Vec<usize>) {
    let mask = control_subgraph_mask(graph);
    let retained: Vec<usize> = (0..graph.node_count()).filter(|&id| mask[id]).collect();
    let mut new_id = vec![usize::MAX; graph.node_count()];
    let mut counts = [0usize; 3]; // states, drivers, sensors kept
    for &old in &retained {
        let kind = if graph.is_state(old) {
            0
        } else if graph.is_driver(old) {
            1
        } else {
            2
        };
        counts[kind] += 1;
    }
    let mut next = [0, counts[0], counts[0] + counts[1]];
    for &old in &retained {
        let kind = if graph.is_state(old) {
            0
        } else if graph.is_driver(old) {
            1
        } else {
            2
        };
        new_id[old] = next[kind];
        next[kind] += 1;
    }
    let edges: Vec<(usize, usize)> = graph
        .edges()
        .into_iter()
        .filter(|&(from, to)| mask[from] && mask[to])
        .map(|(from, to)| (new_id[from], new_id[to]))
        .collect();
    let targets: Vec<usize> = graph
        .targets()
        .iter()
        .copied()
        .filter(|&t| mask[t])
        .map(|t| new_id[t])
        .collect();
    let sub = InferenceGraph::from_unified_edges(counts[0], counts[1], counts[2], &edges, &targets);
    (sub, retained)
}

/// Bipartite problem "targets vs. their predecessors", optionally restricted
/// to a node mask (the control subgraph). Returns the problem, the left node
/// ids (targets, ascending), and the right node ids (predecessor entities,
/// ascending unified ids).
pub fn target_predecessor_problem(
    graph: &InferenceGraph,
    left_states: &BTreeSet<usize>,
    mask: Option<&[bool]>,
) -> (BipartiteProblem, Vec<usize>, Vec<usize>) {
    let lefts: Vec<usize> = left_states.iter().copied().collect();
    let keep = |id: usize| mask.is_none_or(|m| m[id]);
    let mut right_ids: BTreeSet<usize> = BTreeSet::new();
    for &t in &lefts {
        if !keep(t) {
            continue;
        }
        for &p in graph.in_neighbors(t) {
            if keep(p) {
                right_ids.insert(p);
            }
        }
    }
    let right_ids: Vec<usize> = right_ids.into_iter().collect();
    let right_index = |id: usize| right_ids.binary_search(&id).unwrap();
    let mut edges = Vec::new();
    for (li, &t) in lefts.iter().enumerate() {
        if !keep(t) {
            continue;
        }
        for &p in graph.in_neighbors(t) {
            if keep(p) {
                edges.push((li, right_index(p)));
            }
        }
    }
    let problem = BipartiteProblem::new(lefts.len(), right_ids.len(), &edges)
        .expect("indices constructed in range");
    (problem, lefts, right_ids)
}

/// Whether some state subset has fewer distinct predecessors than members.
/// The certificate is the Hall violator mapped back to state ids.
pub fn graph_has_dilation(graph: &InferenceGraph) -> (bool, Option<Vec<usize>>) {
    let states: BTreeSet<usize> = (0..graph.state_count()).collect();
    let (problem, lefts, _) = target_predecessor_problem(graph, &states, None);
    let all: Vec<usize> = (0..lefts.len()).collect();
    let cert: HallCertificate = hall_saturates(&problem, &all);
    let violator = cert
        .violator
        .map(|w| w.into_iter().map(|li| lefts[li]).collect());
    (!cert.saturated, violator)
}

/// Alternating successor-of-predecessor closure of a target state: the least
/// fixed point of S := S ∪ states(S(P(S))) starting from the target. Every
/// minimal dilation set containing the target lies inside the closure, since
/// a minimal dilating set cannot split into parts with disjoint predecessors.
/// Runs in O(n + |E|): each node's in-edges and each predecessor's out-edges
/// are scanned at most once.
pub fn dilation_closure(graph: &InferenceGraph, target: usize) -> (BTreeSet<usize>, ClosureStats) {
    let mut stats = ClosureStats::default();
    let mut in_closure = vec![false; graph.state_count()];
    let mut pred_seen = vec![false; graph.node_count()];
    let mut queue = VecDeque::new();
    in_closure[target] = true;
    queue.push_back(target);
    stats.nodes_touched += 1;
    while let Some(v) = queue.pop_front() {
        for &p in graph.in_neighbors(v) {
            stats.edges_scanned += 1;
            if pred_seen[p] {
                continue;
            }
            pred_seen[p] = true;
            stats.nodes_touched += 1;
            for &s in graph.out_neighbors(p) {
                stats.edges_scanned += 1;
                if graph.is_state(s) && !in_closure[s] {
                    in_closure[s] = true;
                    stats.nodes_touched += 1;
                    queue.push_back(s);
                }
            }
        }
    }
    let closure = in_closure
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    (closure, stats)
}

/// Result of a membership query against the union of minimal dilation sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// The target belongs to the returned minimal dilation set.
    Member { witness: Vec<usize> },
    NonMember,
    /// The closure exceeded the enumeration cap.
    Exhausted { closure_size: usize },
}

/// Hard ceiling on closure sizes for subset enumeration, whatever cap the
/// caller asks for: the tables are 2^k entries.
pub const MAX_ENUMERATION_CAP: usize = 22;

/// Decides whether `target` belongs to some minimal dilation set, by subset
/// enumeration over the alternating closure, capped at `cap` closure nodes.
///
/// A set D ∋ target is a minimal dilation set iff |P(D)| < |D| and no strict
/// subset dilates; such a D exists within the closure iff one exists at all.
///
/// Two sound narrowings run before enumeration. If some predecessor of the
/// target feeds no other state, the target cannot belong to a minimal
/// dilation set: minimality forces P(D \ {t}) = P(D), which would require
/// that exclusive predecessor to feed another member. Dedicated drivers are
/// the canonical case, so freshly instrumented targets are decided without
/// enumeration. And if every closure node has a self-edge, each subset is
/// contained in its own predecessor set and nothing dilates.
pub fn dilation_membership(graph: &InferenceGraph, target: usize, cap: usize) -> Membership {
    let has_exclusive_pred = graph.in_neighbors(target).iter().any(|&p| {
        graph
            .out_neighbors(p)
            .iter()
            .filter(|&&w| graph.is_state(w))
            .all(|&w| w == target)
    });
    if has_exclusive_pred {
        return Membership::NonMember;
    }
    let (closure, _) = dilation_closure(graph, target);
    if closure.iter().all(|&v| graph.has_self_edge(v)) {
        return Membership::NonMember;
    }
    if closure.len() > cap.min(MAX_ENUMERATION_CAP) {
        return Membership::Exhausted {
            closure_size: closure.len(),
        };
    }
    let members: Vec<usize> = closure.iter().copied().collect();
    let k = members.len();
    let target_bit = members
        .iter()
        .position(|&v| v == target)
        .expect("closure contains its target");

    // Predecessor bitmasks over the compacted predecessor universe.
    let mut universe: BTreeSet<usize> = BTreeSet::new();
    for &v in &members {
        universe.extend(graph.in_neighbors(v).iter().copied());
    }
    let universe: Vec<usize> = universe.into_iter().collect();
    let words = universe.len().div_ceil(64).max(1);
    let mut pred_mask = vec![0u64; k * words];
    for (i, &v) in members.iter().enumerate() {
        for &p in graph.in_neighbors(v) {
            let pos = universe.binary_search(&p).unwrap();
            pred_mask[i * words + pos / 64] |= 1 << (pos % 64);
        }
    }

    let total = 1usize << k;
    // Flat union-mask table built from the lowest set bit of each subset.
    let mut union_mask = vec![0u64; total * words];
    let mut dilates = vec![false; total];
    let mut bad = vec![false; total]; // some subset (itself included) dilates
    for s in 1..total {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let mut pred_count = 0u32;
        for w in 0..words {
            let m = union_mask[rest * words + w] | pred_mask[low * words + w];
            union_mask[s * words + w] = m;
            pred_count += m.count_ones();
        }
        dilates[s] = pred_count < s.count_ones();
        let mut b = dilates[s];
        if !b {
            let mut rem = s;
            while rem != 0 {
                let bit = rem & rem.wrapping_neg();
                if bad[s & !bit] {
                    b = true;
                    break;
                }
                rem &= rem - 1;
            }
        }
        bad[s] = b;
    }
    drop(union_mask);

    // Search for a minimal dilating subset containing the target: it dilates
    // and every one-element-removed subset is dilation-free.
    let tbit = 1usize << target_bit;
    for s in 1..total {
        if s & tbit == 0 || !dilates[s] {
            continue;
        }
        let mut minimal = true;
        let mut rem = s;
        while rem != 0 {
            let bit = rem & rem.wrapping_neg();
            if bad[s & !bit] {
                minimal = false;
                break;
            }
            rem &= rem - 1;
        }
        if minimal {
            let witness: Vec<usize> = members
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (s >> i & 1 == 1).then_some(v))
                .collect();
            return Membership::Member { witness };
        }
    }
    Membership::NonMember
}

/// Outcome of intersecting the target set with the union of all minimal
/// dilation sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureOutcome {
    Complete { members: BTreeSet<usize> },
    Exhausted {
        members: BTreeSet<usize>,
        undecided: BTreeSet<usize>,
    },
}

impl ClosureOutcome {
    pub fn members(&self) -> &BTreeSet<usize> {
        match self {
            ClosureOutcome::Complete { members } | ClosureOutcome::Exhausted { members, .. } => {
                members
            }
        }
    }
}

/// T ∩ D: which of the given targets belong to some minimal dilation set.
pub fn dilation_union_on_targets(
    graph: &InferenceGraph,
    targets: &BTreeSet<usize>,
    cap: usize,
) -> ClosureOutcome {
    let mut members = BTreeSet::new();
    let mut undecided = BTreeSet::new();
    for &t in targets {
        match dilation_membership(graph, t, cap) {
            Membership::Member { .. } => {
                members.insert(t);
            }
            Membership::NonMember => {}
            Membership::Exhausted { .. } => {
                undecided.insert(t);
            }
        }
    }
    if undecided.is_empty() {
        ClosureOutcome::Complete { members }
    } else {
        ClosureOutcome::Exhausted { members, undecided }
    }
}
