//! Brute-force reference implementations shared by the integration tests.
//! Everything here enumerates subsets directly and stays independent of the
//! library's matching/closure code paths.

use std::collections::BTreeSet;

use targetability::graph::InferenceGraph;

/// Distinct predecessors (states and drivers) of a state subset.
pub fn preds_of(graph: &InferenceGraph, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &v in set {
        out.extend(graph.in_neighbors(v).iter().copied());
    }
    out
}

/// Distinct successors (states and sensors) of a state subset.
pub fn succs_of(graph: &InferenceGraph, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &v in set {
        out.extend(graph.out_neighbors(v).iter().copied());
    }
    out
}

pub fn dilates(graph: &InferenceGraph, set: &BTreeSet<usize>) -> bool {
    preds_of(graph, set).len() < set.len()
}

pub fn contracts(graph: &InferenceGraph, set: &BTreeSet<usize>) -> bool {
    succs_of(graph, set).len() < set.len()
}

/// All minimal dilation sets, by exhaustive enumeration over subsets of X.
pub fn minimal_dilation_sets(graph: &InferenceGraph) -> Vec<BTreeSet<usize>> {
    let n = graph.state_count();
    assert!(n <= 16, "brute force is for desk-scale graphs");
    let mut dilating: Vec<BTreeSet<usize>> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if dilates(graph, &set) {
            dilating.push(set);
        }
    }
    dilating
        .iter()
        .filter(|d| !dilating.iter().any(|w| w.len() < d.len() && w.is_subset(d)))
        .cloned()
        .collect()
}

/// Union of all minimal dilation sets intersected with the targets.
pub fn brute_dilation_union_on_targets(graph: &InferenceGraph) -> BTreeSet<usize> {
    let mut union: BTreeSet<usize> = BTreeSet::new();
    for set in minimal_dilation_sets(graph) {
        union.extend(set);
    }
    union.intersection(graph.targets()).copied().collect()
}

/// Does any subset of X fail Hall against its predecessors?
pub fn brute_has_dilation(graph: &InferenceGraph) -> bool {
    let n = graph.state_count();
    (1u32..(1u32 << n)).any(|mask| {
        let set: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        dilates(graph, &set)
    })
}

/// Membership of `target` in some minimal dilation set, by enumeration.
pub fn brute_membership(graph: &InferenceGraph, target: usize) -> bool {
    minimal_dilation_sets(graph)
        .iter()
        .any(|set| set.contains(&target))
}
