//! Target controllability and target observability of structured linear systems.
//!
//! A structured system is a sparsity pattern (A, B, C, F): which entries of the
//! state, input, output, and functional matrices are free nonzeros. Whether a
//! target subset of states can be steered (output controllability) or
//! reconstructed (functional observability) is then a generic property,
//! decidable on the inference graph of the pattern:
//!
//! * [`structural::is_target_controllable`] — driver-to-target reachability
//!   plus Hall's condition on targets vs. their predecessors in the control
//!   subgraph,
//! * [`structural::is_target_observable`] — target-to-sensor reachability plus
//!   emptiness of the intersection between targets and the union of minimal
//!   contraction sets, decided per target through an alternating
//!   successor-of-predecessor closure,
//! * [`structural::weak_duality_report`] / [`structural::strong_duality_report`]
//!   — the bridge between the two notions through the transposed system,
//! * [`placement`] — minimum driver/sensor placement (set cover plus matching
//!   repair, and the duality-based conversion),
//! * [`oracle`] — exact generic-rank verification of the matrix-rank
//!   conditions over a large prime field, the ground truth every structural
//!   verdict is validated against.

pub mod fixtures;
pub mod graph;
pub mod graphops;
pub mod matching;
pub mod oracle;
pub mod placement;
pub mod structural;
pub mod system;

pub use graph::{InferenceGraph, Node};
pub use graphops::{ClosureOutcome, Membership};
pub use matching::{BipartiteProblem, HallCertificate, Matching};
pub use oracle::{OracleProperty, OracleVerdict, Realization};
pub use placement::PlacementResult;
pub use structural::{Decision, DecisionVerdict};
pub use system::{AssumptionReport, AssumptionVerdict, StructuredSystem, SystemError};
