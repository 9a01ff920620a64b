//! Machine-readable report documents. Key order is declaration order and
//! documents round-trip losslessly; wall-clock timing is deliberately kept
//! out so identical invocations produce byte-identical files.

use serde::{Deserialize, Serialize};

use targetability::graph::Node;
use targetability::structural::{ConditionStatus, Decision, DecisionMethod, DecisionVerdict};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub args: Vec<String>,
    pub seed: u64,
    pub system: SystemSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assumption: Option<AssumptionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<PlacementSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleSection>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SystemSummary {
    pub states: usize,
    pub drivers: usize,
    pub sensors: usize,
    pub target_rows: usize,
    pub edge_count: usize,
    pub targets: Vec<String>,
    pub driver_sites: Vec<String>,
    pub sensor_sites: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AssumptionSection {
    pub independent_drivers: bool,
    pub independent_sensors: bool,
    pub independent_targets: bool,
    pub target_self_edges: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConditionJson {
    pub status: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DecisionJson {
    pub verdict: String,
    pub condition1: ConditionJson,
    pub condition2: ConditionJson,
    pub method: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerdictsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structurally_controllable: Option<DecisionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structurally_observable: Option<DecisionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_controllable: Option<DecisionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_observable: Option<DecisionJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DualitySection {
    /// Which side carries the drivers: "given" when the input system is the
    /// controllability side, "transposed" otherwise.
    pub controllability_side: String,
    pub dual_target_controllable: DecisionJson,
    pub target_observable: DecisionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets_in_dilation_union: Option<Vec<String>>,
    pub undecided_targets: Vec<String>,
    pub weak_duality_consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strong_duality_holds: Option<bool>,
    pub region: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PlacementSection {
    pub mode: String,
    pub attach_points: Vec<String>,
    pub count: usize,
    pub iterations: usize,
    pub method: String,
    pub certificate: DecisionJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OracleSection {
    pub side: String,
    pub property: String,
    pub trials: usize,
    pub successes: usize,
    pub verdict: String,
    pub ranks: Vec<(usize, usize)>,
    pub trivial_estimation: bool,
}

/// Renders nodes with the user's labels for states and 1-based u#/y# names
/// for attachments.
pub struct LabelTable<'a> {
    pub labels: &'a [String],
}

impl LabelTable<'_> {
    pub fn node(&self, node: Node) -> String {
        match node {
            Node::State(i) => self
                .labels
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("x{}", i + 1)),
            Node::Driver(k) => format!("u{}", k + 1),
            Node::Sensor(k) => format!("y{}", k + 1),
        }
    }

    pub fn state(&self, i: usize) -> String {
        self.node(Node::State(i))
    }
}

pub fn verdict_str(v: DecisionVerdict) -> &'static str {
    match v {
        DecisionVerdict::True => "true",
        DecisionVerdict::False => "false",
        DecisionVerdict::Exhausted => "exhausted",
    }
}

fn status_str(s: ConditionStatus) -> &'static str {
    match s {
        ConditionStatus::Pass => "pass",
        ConditionStatus::Fail => "fail",
        ConditionStatus::Undecided => "undecided",
    }
}

fn method_str(m: DecisionMethod) -> &'static str {
    match m {
        DecisionMethod::Matching => "matching",
        DecisionMethod::AlternatingClosure => "alternatingClosure",
        DecisionMethod::SelfEdgeShortcut => "selfEdgeShortcut",
        DecisionMethod::BruteForce => "bruteForce",
    }
}

pub fn decision_json(decision: &Decision, table: &LabelTable) -> DecisionJson {
    let cond = |c: &targetability::structural::ConditionReport| ConditionJson {
        status: status_str(c.status).to_owned(),
        witness: c.witness.iter().map(|&n| table.node(n)).collect(),
    };
    DecisionJson {
        verdict: verdict_str(decision.verdict).to_owned(),
        condition1: cond(&decision.condition1),
        condition2: cond(&decision.condition2),
        method: method_str(decision.method).to_owned(),
    }
}

pub fn write_json(path: &std::path::Path, report: &ReportDocument) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let report = ReportDocument {
            schema_version: SCHEMA_VERSION.to_owned(),
            command: "analyze".into(),
            args: vec!["--graph".into(), "g.txt".into()],
            seed: 7,
            system: SystemSummary {
                states: 3,
                drivers: 1,
                sensors: 0,
                target_rows: 1,
                edge_count: 3,
                targets: vec!["c".into()],
                driver_sites: vec!["a".into()],
                sensor_sites: vec![],
            },
            assumption: None,
            verdicts: None,
            duality: None,
            placement: None,
            oracle: None,
        };
        let text = serde_json::to_string(&report).unwrap();
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
