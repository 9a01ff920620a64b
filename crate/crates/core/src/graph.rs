//! Inference graphs: states, drivers, and sensors with directed influence edges.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::system::StructuredSystem;

/// A node of an inference graph. States, drivers, and sensors carry separate
/// 0-based namespaces; display labels are 1-based (`x1`, `u1`, `y1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Node {
    State(usize),
    Driver(usize),
    Sensor(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::State(i) => write!(f, "x{}", i + 1),
            Node::Driver(i) => write!(f, "u{}", i + 1),
            Node::Sensor(i) => write!(f, "y{}", i + 1),
        }
    }
}

/// Directed graph over `n` states, `p` drivers, and `q` sensors.
///
/// Unified node ids: states are `0..n`, drivers `n..n+p`, sensors
/// `n+p..n+p+q`. An A entry `(i, j)` yields the edge `xj -> xi`, a B entry
/// `(i, j)` yields `uj -> xi`, and a C entry `(i, j)` yields `xj -> yi`.
/// Adjacency lists are kept sorted so traversals are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferenceGraph {
    n: usize,
    p: usize,
    q: usize,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    targets: BTreeSet<usize>,
}

impl InferenceGraph {
    pub fn from_system(system: &StructuredSystem) -> Self {
        let n = system.state_count();
        let p = system.driver_count();
        let q = system.sensor_count();
        let total = n + p + q;
        let mut out_adj = vec![Vec::new(); total];
        let mut in_adj = vec![Vec::new(); total];
        let mut push = |from: usize, to: usize| {
            out_adj[from].push(to);
            in_adj[to].push(from);
        };
        for &(i, j) in system.pattern_a() {
            push(j, i);
        }
        for &(i, j) in system.pattern_b() {
            push(n + j, i);
        }
        for &(i, j) in system.pattern_c() {
            push(j, n + p + i);
        }
        for adj in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            adj.sort_unstable();
        }
        Self {
            n,
            p,
            q,
            out_adj,
            in_adj,
            targets: system.targets(),
        }
    }

    /// Graph over unified node ids given explicit counts and directed edges.
    pub fn from_unified_edges(
        n: usize,
        p: usize,
        q: usize,
        edges: &[(usize, usize)],
        targets: &[usize],
    ) -> Self {
        let total = n + p + q;
        let mut out_adj = vec![Vec::new(); total];
        let mut in_adj = vec![Vec::new(); total];
        for &(from, to) in edges {
            out_adj[from].push(to);
            in_adj[to].push(from);
        }
        for adj in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            adj.sort_unstable();
        }
        Self {
            n,
            p,
            q,
            out_adj,
            in_adj,
            targets: targets.iter().copied().collect(),
        }
    }

    /// Graph of a bare state pattern: edges are `(from, to)` state pairs.
    pub fn from_state_edges(n: usize, edges: &[(usize, usize)], targets: &[usize]) -> Self {
        Self::from_unified_edges(n, 0, 0, edges, targets)
    }

    /// Copy with extra dedicated drivers attached at the given states.
    pub fn with_drivers(&self, attach: &[usize]) -> Self {
        let shift = attach.len();
        let remap = |id: usize| if id >= self.n + self.p { id + shift } else { id };
        let mut edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(from, to)| (remap(from), remap(to)))
            .collect();
        for (k, &state) in attach.iter().enumerate() {
            edges.push((self.n + self.p + k, state));
        }
        let targets: Vec<usize> = self.targets.iter().copied().collect();
        Self::from_unified_edges(self.n, self.p + shift, self.q, &edges, &targets)
    }

    /// Copy with extra dedicated sensors attached at the given states.
    pub fn with_sensors(&self, attach: &[usize]) -> Self {
        let old_total = self.node_count();
        let mut edges = self.edges();
        for (k, &state) in attach.iter().enumerate() {
            edges.push((state, old_total + k));
        }
        let targets: Vec<usize> = self.targets.iter().copied().collect();
        Self::from_unified_edges(self.n, self.p, self.q + attach.len(), &edges, &targets)
    }

    /// The dual graph: every edge reversed, drivers and sensors swapping
    /// roles. A set has a contraction here iff it has a dilation there.
    pub fn reversed_dual(&self) -> Self {
        let remap = |id: usize| -> usize {
            if id < self.n {
                id
            } else if id < self.n + self.p {
                // old driver -> new sensor
                self.n + self.q + (id - self.n)
            } else {
                // old sensor -> new driver
                self.n + (id - self.n - self.p)
            }
        };
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(from, to)| (remap(to), remap(from)))
            .collect();
        let targets: Vec<usize> = self.targets.iter().copied().collect();
        Self::from_unified_edges(self.n, self.q, self.p, &edges, &targets)
    }

    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn driver_count(&self) -> usize {
        self.p
    }

    pub fn sensor_count(&self) -> usize {
        self.q
    }

    pub fn node_count(&self) -> usize {
        self.n + self.p + self.q
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn targets(&self) -> &BTreeSet<usize> {
        &self.targets
    }

    pub fn is_state(&self, id: usize) -> bool {
        id < self.n
    }

    pub fn is_driver(&self, id: usize) -> bool {
        id >= self.n && id < self.n + self.p
    }

    pub fn is_sensor(&self, id: usize) -> bool {
        id >= self.n + self.p && id < self.node_count()
    }

    pub fn driver_ids(&self) -> impl Iterator<Item = usize> {
        self.n..self.n + self.p
    }

    pub fn sensor_ids(&self) -> impl Iterator<Item = usize> {
        self.n + self.p..self.n + self.p + self.q
    }

    pub fn out_neighbors(&self, id: usize) -> &[usize] {
        &self.out_adj[id]
    }

    pub fn in_neighbors(&self, id: usize) -> &[usize] {
        &self.in_adj[id]
    }

    pub fn has_self_edge(&self, state: usize) -> bool {
        self.out_adj[state].binary_search(&state).is_ok()
    }

    pub fn node(&self, id: usize) -> Node {
        if id < self.n {
            Node::State(id)
        } else if id < self.n + self.p {
            Node::Driver(id - self.n)
        } else {
            Node::Sensor(id - self.n - self.p)
        }
    }

    pub fn node_id(&self, node: Node) -> usize {
        match node {
            Node::State(i) => i,
            Node::Driver(i) => self.n + i,
            Node::Sensor(i) => self.n + self.p + i,
        }
    }

    /// All directed edges as unified id pairs, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (from, outs) in self.out_adj.iter().enumerate() {
            for &to in outs {
                out.push((from, to));
            }
        }
        out
    }
}
