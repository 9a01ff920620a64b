//! Bipartite maximum matching and Hall-condition certificates.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("edge ({left}, {right}) references an undeclared node")]
    UnknownNode { left: usize, right: usize },
}

/// Bipartite graph with `left_count` left nodes and `right_count` right
/// nodes; adjacency is stored left-to-right with sorted edge lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteProblem {
    left_count: usize,
    right_count: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteProblem {
    pub fn new(
        left_count: usize,
        right_count: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, BipartiteError> {
        let mut adj = vec![Vec::new(); left_count];
        for &(left, right) in edges {
            if left >= left_count || right >= right_count {
                return Err(BipartiteError::UnknownNode { left, right });
            }
            adj[left].push(right);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self {
            left_count,
            right_count,
            adj,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adj[left]
    }

    /// Distinct right-neighborhood size of a left subset.
    pub fn neighborhood_size(&self, left_subset: &[usize]) -> usize {
        let mut seen = vec![false; self.right_count];
        let mut count = 0;
        for &l in left_subset {
            for &r in &self.adj[l] {
                if !seen[r] {
                    seen[r] = true;
                    count += 1;
                }
            }
        }
        count
    }
}

/// A partial injection from left nodes into right nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<Option<usize>>,
    pub size: usize,
}

const UNMATCHED: usize = usize::MAX;

/// Hopcroft–Karp maximum matching over the left nodes listed in `lefts`.
/// Deterministic: layers and augmenting searches follow input order.
fn hopcroft_karp(problem: &BipartiteProblem, lefts: &[usize]) -> Matching {
    let mut match_l = vec![UNMATCHED; problem.left_count];
    let mut match_r = vec![UNMATCHED; problem.right_count];
    let mut dist = vec![usize::MAX; problem.left_count];

    loop {
        let mut queue = VecDeque::new();
        for &l in lefts {
            if match_l[l] == UNMATCHED {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found_free_right = false;
        while let Some(l) = queue.pop_front() {
            for &r in &problem.adj[l] {
                let next = match_r[r];
                if next == UNMATCHED {
                    found_free_right = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found_free_right {
            break;
        }
        let mut advanced = false;
        for &l in lefts {
            if match_l[l] == UNMATCHED && augment(problem, l, &mut match_l, &mut match_r, &mut dist)
            {
                advanced = true;
            }
        }
        if !advanced {
            break;
        }
    }

    let pairs: Vec<Option<usize>> = match_l
        .iter()
        .map(|&r| (r != UNMATCHED).then_some(r))
        .collect();
    let size = pairs.iter().filter(|p| p.is_some()).count();
    Matching { pairs, size }
}

fn augment(
    problem: &BipartiteProblem,
    l: usize,
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    let d = std::mem::replace(&mut dist[l], usize::MAX);
    for &r in &problem.adj[l] {
        let next = match_r[r];
        if next == UNMATCHED || (dist[next] == d + 1 && augment(problem, next, match_l, match_r, dist))
        {
            match_l[l] = r;
            match_r[r] = l;
            return true;
        }
    }
    false
}

/// Maximum-cardinality matching over all left nodes.
pub fn max_bipartite_matching(problem: &BipartiteProblem) -> Matching {
    let lefts: Vec<usize> = (0..problem.left_count).collect();
    hopcroft_karp(problem, &lefts)
}

/// Outcome of testing whether a left subset can be saturated. When it cannot,
/// `violator` is a subset W of the tested nodes with |N(W)| < |W|, extracted
/// by alternating-path reachability from the unmatched left nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallCertificate {
    pub saturated: bool,
    pub matching: Matching,
    pub violator: Option<Vec<usize>>,
}

pub fn hall_saturates(problem: &BipartiteProblem, left_subset: &[usize]) -> HallCertificate {
    let matching = hopcroft_karp(problem, left_subset);
    if matching.size == left_subset.len() {
        return HallCertificate {
            saturated: true,
            matching,
            violator: None,
        };
    }

    // Kőnig-style violator: from every unmatched left node, walk any edge to
    // the right and matched edges back to the left. The reached left nodes W
    // then have N(W) fully matched into W, so |N(W)| = |W| - #unmatched < |W|.
    let mut match_r = vec![UNMATCHED; problem.right_count];
    for &l in left_subset {
        if let Some(r) = matching.pairs[l] {
            match_r[r] = l;
        }
    }
    let mut in_left = vec![false; problem.left_count];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &l in left_subset {
        if matching.pairs[l].is_none() {
            in_left[l] = true;
            queue.push_back(l);
        }
    }
    let mut seen_right = vec![false; problem.right_count];
    while let Some(l) = queue.pop_front() {
        for &r in &problem.adj[l] {
            if seen_right[r] {
                continue;
            }
            seen_right[r] = true;
            let back = match_r[r];
            if back != UNMATCHED && !in_left[back] {
                in_left[back] = true;
                queue.push_back(back);
            }
        }
    }
    let violator: Vec<usize> = left_subset.iter().copied().filter(|&l| in_left[l]).collect();
    let neighborhood = problem.neighborhood_size(&violator);
    assert!(
        neighborhood < violator.len(),
        "extracted violator fails |N(W)| < |W|: {} vs {}",
        neighborhood,
        violator.len()
    );
    HallCertificate {
        saturated: false,
        matching,
        violator: Some(violator),
    }
}
