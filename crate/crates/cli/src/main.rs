//! Command-line surface: analysis, placement, target-fraction sweeps,
//! network generation, and rank-oracle verification.
//!
//! Exit codes: 0 success / true verdict, 1 false verdict, 2 enumeration cap
//! exhausted, 64 usage error, 65 file parse error.

mod edgelist;
mod generate;
mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use targetability::graph::InferenceGraph;
use targetability::graphops::{dilation_union_on_targets, ClosureOutcome};
use targetability::oracle::{
    generic_test_capped, GenericVerdict, OracleProperty, OracleVerdict, DEFAULT_STATE_CAP,
};
use targetability::placement::{
    coverage_curve, place_drivers_mdpt, place_sensors_mspt_selfloop, place_sensors_via_duality,
    PlacementError, PlacementMethod, PlacementResult,
};
use targetability::structural::{
    all_targets_self_edged, is_structurally_controllable, is_structurally_observable,
    is_target_controllable, ConditionReport, ConditionStatus, Decision, DecisionMethod,
    DecisionVerdict, StructuralError,
};
use targetability::system::{AssumptionVerdict, StructuredSystem};

use edgelist::{parse_edge_list, parse_node_set, FileError, ParsedGraph};
use report::{
    decision_json, verdict_str, write_json, AssumptionSection, DualitySection,
    LabelTable, OracleSection, PlacementSection, ReportDocument, SystemSummary, VerdictsSection,
    SCHEMA_VERSION,
};

const EXIT_TRUE: i32 = 0;
const EXIT_FALSE: i32 = 1;
const EXIT_EXHAUSTED: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_PARSE: i32 = 65;

#[derive(Parser)]
#[command(
    name = "targetability",
    version,
    about = "Target controllability/observability analysis and driver/sensor placement on sparse networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Suppress the human-readable summary.
    #[arg(long, global = true)]
    quiet: bool,
    /// RNG seed; falls back to $TARGETABILITY_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlaceMode {
    Drivers,
    Sensors,
    SensorsViaDuality,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Ctrb,
    Obsv,
}

#[derive(Subcommand)]
enum Command {
    /// Decide structural/target controllability and observability, classify
    /// the duality regime, and optionally cross-check with the rank oracle.
    Analyze {
        /// Edge-list file: `src dst` per line, `#` comments, optional
        /// ignored weight column.
        #[arg(long)]
        graph: PathBuf,
        /// Target states, one label per line.
        #[arg(long)]
        targets: PathBuf,
        /// Driver attachment states, one label per line.
        #[arg(long)]
        drivers: Option<PathBuf>,
        /// Sensor attachment states, one label per line.
        #[arg(long)]
        sensors: Option<PathBuf>,
        /// Closure-size cap for the per-target dilation enumeration.
        #[arg(long, default_value_t = 20)]
        cap: usize,
        /// Append exact generic-rank verification.
        #[arg(long)]
        oracle: bool,
        /// Oracle realizations per property.
        #[arg(long, default_value_t = 16)]
        trials: usize,
        /// Write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Place a minimum set of dedicated drivers or sensors for the targets.
    Place {
        /// Edge-list file.
        #[arg(long)]
        graph: PathBuf,
        /// Target states, one label per line.
        #[arg(long)]
        targets: PathBuf,
        #[arg(long, value_enum)]
        mode: PlaceMode,
        #[arg(long, default_value_t = 20)]
        cap: usize,
        /// Write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sweep target fractions, sampling random target sets and running both
    /// placements; writes a CSV table.
    Curve {
        /// Edge-list file.
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated fractions of n, each in (0, 1].
        #[arg(long)]
        fractions: String,
        /// Random target sets sampled per fraction.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        cap: usize,
        /// Output CSV path.
        #[arg(long)]
        csv: PathBuf,
    },
    /// Generate a reproducible random directed network as an edge list.
    Generate {
        #[arg(long, value_enum)]
        model: generate::Model,
        /// Node count.
        #[arg(long)]
        n: usize,
        /// Mean out-degree (er-directed only; must be below n).
        #[arg(long)]
        avg_degree: Option<f64>,
        /// Add a self-edge at every node.
        #[arg(long, value_enum, default_value = "off")]
        self_loops: generate::SelfLoops,
        /// Output edge-list path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run only the exact generic-rank test.
    Oracle {
        /// Edge-list file.
        #[arg(long)]
        graph: PathBuf,
        /// Target states, one label per line.
        #[arg(long)]
        targets: PathBuf,
        /// Driver attachment states (required for --property ctrb).
        #[arg(long)]
        drivers: Option<PathBuf>,
        /// Sensor attachment states (required for --property obsv).
        #[arg(long)]
        sensors: Option<PathBuf>,
        #[arg(long, value_enum)]
        property: PropertyArg,
        /// Independent realizations to test.
        #[arg(long, default_value_t = 16)]
        trials: usize,
        /// Write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_PARSE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) => m,
        }
    }
}

impl From<FileError> for CliError {
    fn from(err: FileError) -> Self {
        match err {
            FileError::Io { .. } => CliError::Usage(err.to_string()),
            _ => CliError::Data(err.to_string()),
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    let seed = cli.seed.unwrap_or_else(|| {
        std::env::var("TARGETABILITY_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    });
    let quiet = cli.quiet;
    let outcome = match cli.command {
        Command::Analyze {
            graph,
            targets,
            drivers,
            sensors,
            cap,
            oracle,
            trials,
            json,
        } => cmd_analyze(
            &graph, &targets, drivers.as_deref(), sensors.as_deref(), cap, oracle, trials, seed,
            json.as_deref(), quiet,
        ),
        Command::Place {
            graph,
            targets,
            mode,
            cap,
            json,
        } => cmd_place(&graph, &targets, mode, cap, seed, json.as_deref(), quiet),
        Command::Curve {
            graph,
            fractions,
            trials,
            cap,
            csv,
        } => cmd_curve(&graph, &fractions, trials, cap, seed, &csv, quiet),
        Command::Generate {
            model,
            n,
            avg_degree,
            self_loops,
            out,
        } => cmd_generate(model, n, avg_degree, self_loops, seed, &out, quiet),
        Command::Oracle {
            graph,
            targets,
            drivers,
            sensors,
            property,
            trials,
            json,
        } => cmd_oracle(
            &graph, &targets, drivers.as_deref(), sensors.as_deref(), property, trials, seed,
            json.as_deref(), quiet,
        ),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.code()
        }
    }
}

struct LoadedSystem {
    parsed: ParsedGraph,
    system: StructuredSystem,
    driver_sites: Vec<usize>,
    sensor_sites: Vec<usize>,
    target_sites: Vec<usize>,
}

fn load_system(
    graph_path: &Path,
    targets_path: &Path,
    drivers_path: Option<&Path>,
    sensors_path: Option<&Path>,
) -> Result<LoadedSystem, CliError> {
    let parsed = parse_edge_list(graph_path)?;
    let target_sites = parse_node_set(targets_path, &parsed)?;
    let driver_sites = match drivers_path {
        Some(p) => parse_node_set(p, &parsed)?,
        None => Vec::new(),
    };
    let sensor_sites = match sensors_path {
        Some(p) => parse_node_set(p, &parsed)?,
        None => Vec::new(),
    };
    let n = parsed.node_count();
    let a: Vec<(usize, usize)> = parsed.edges.iter().map(|&(f, t)| (t, f)).collect();
    let b: Vec<(usize, usize)> = driver_sites.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let c: Vec<(usize, usize)> = sensor_sites.iter().enumerate().map(|(k, &s)| (k, s)).collect();
    let f: Vec<(usize, usize)> = target_sites.iter().enumerate().map(|(k, &s)| (k, s)).collect();
    let system = StructuredSystem::build(
        n,
        driver_sites.len(),
        sensor_sites.len(),
        target_sites.len(),
        &a,
        &b,
        &c,
        &f,
    )
    .map_err(|e| CliError::Data(format!("invalid system: {e}")))?;
    Ok(LoadedSystem {
        parsed,
        system,
        driver_sites,
        sensor_sites,
        target_sites,
    })
}

fn system_summary(loaded: &LoadedSystem) -> SystemSummary {
    let table = LabelTable {
        labels: &loaded.parsed.labels,
    };
    SystemSummary {
        states: loaded.system.state_count(),
        drivers: loaded.system.driver_count(),
        sensors: loaded.system.sensor_count(),
        target_rows: loaded.system.target_row_count(),
        edge_count: loaded.system.pattern_a().len()
            + loaded.system.pattern_b().len()
            + loaded.system.pattern_c().len(),
        targets: loaded.target_sites.iter().map(|&s| table.state(s)).collect(),
        driver_sites: loaded.driver_sites.iter().map(|&s| table.state(s)).collect(),
        sensor_sites: loaded.sensor_sites.iter().map(|&s| table.state(s)).collect(),
    }
}

fn assumption_section(system: &StructuredSystem) -> AssumptionSection {
    let report = system.validate_assumption();
    AssumptionSection {
        independent_drivers: report.independent_drivers,
        independent_sensors: report.independent_sensors,
        independent_targets: report.independent_targets,
        target_self_edges: report.target_self_edges,
        verdict: match report.verdict {
            AssumptionVerdict::Satisfied => "satisfied",
            AssumptionVerdict::SatisfiedIfDiagonalizable => "satisfied-if-diagonalizable",
            AssumptionVerdict::Violated => "violated",
        }
        .to_owned(),
    }
}

fn base_report(command: &str, seed: u64, loaded: &LoadedSystem) -> ReportDocument {
    ReportDocument {
        schema_version: SCHEMA_VERSION.to_owned(),
        command: command.to_owned(),
        args: std::env::args().skip(1).collect(),
        seed,
        system: system_summary(loaded),
        assumption: Some(assumption_section(&loaded.system)),
        verdicts: None,
        duality: None,
        placement: None,
        oracle: None,
    }
}

/// Duality analysis assembled from one pass of the underlying computations:
/// the controllability-side decision, the dilation-union on its graph, and
/// the observability verdict those two induce.
struct DualityAnalysis {
    ctrb_side_is_given: bool,
    dual_tc: Decision,
    union_members: Option<Vec<usize>>,
    undecided: Vec<usize>,
    observable: Decision,
}

fn analyze_duality(system: &StructuredSystem, cap: usize) -> Result<DualityAnalysis, StructuralError> {
    let ctrb_side_is_given = system.sensor_count() == 0;
    let ctrb_side = if ctrb_side_is_given {
        system.clone()
    } else {
        system.transpose_dual()
    };
    let dual_tc = is_target_controllable(&ctrb_side)?;
    let ctrb_graph = InferenceGraph::from_system(&ctrb_side);
    let targets = ctrb_graph.targets().clone();
    let union = dilation_union_on_targets(&ctrb_graph, &targets, cap);
    let (union_members, undecided): (Option<Vec<usize>>, Vec<usize>) = match &union {
        ClosureOutcome::Complete { members } => (Some(members.iter().copied().collect()), Vec::new()),
        ClosureOutcome::Exhausted { members, undecided } => {
            let m: Vec<usize> = members.iter().copied().collect();
            let u: Vec<usize> = undecided.iter().copied().collect();
            if m.is_empty() {
                (None, u)
            } else {
                (Some(m), u)
            }
        }
    };

    // The observability decision over the transposed pair follows from the
    // controllability-side conditions: condition 1 coincides under edge
    // reversal, and condition 2 is the dual Hall test plus T ∩ D = ∅.
    let condition2 = if dual_tc.condition2.status == ConditionStatus::Fail {
        dual_tc.condition2.clone()
    } else {
        match (&union_members, undecided.is_empty()) {
            (Some(m), _) if !m.is_empty() => ConditionReport {
                status: ConditionStatus::Fail,
                witness: m
                    .iter()
                    .map(|&t| targetability::graph::Node::State(t))
                    .collect(),
            },
            (Some(_), true) => ConditionReport {
                status: ConditionStatus::Pass,
                witness: Vec::new(),
            },
            _ => ConditionReport {
                status: ConditionStatus::Undecided,
                witness: undecided
                    .iter()
                    .map(|&t| targetability::graph::Node::State(t))
                    .collect(),
            },
        }
    };
    let verdict = match (dual_tc.condition1.status, condition2.status) {
        (ConditionStatus::Fail, _) | (_, ConditionStatus::Fail) => DecisionVerdict::False,
        (ConditionStatus::Undecided, _) | (_, ConditionStatus::Undecided) => {
            DecisionVerdict::Exhausted
        }
        _ => DecisionVerdict::True,
    };
    let observable = Decision {
        verdict,
        condition1: dual_tc.condition1.clone(),
        condition2,
        method: if all_targets_self_edged(system) && verdict == DecisionVerdict::True {
            DecisionMethod::SelfEdgeShortcut
        } else {
            DecisionMethod::AlternatingClosure
        },
    };
    Ok(DualityAnalysis {
        ctrb_side_is_given,
        dual_tc,
        union_members,
        undecided,
        observable,
    })
}

fn duality_section(
    analysis: &DualityAnalysis,
    system: &StructuredSystem,
    table: &LabelTable,
) -> DualitySection {
    let region = if analysis.observable.verdict == DecisionVerdict::Exhausted
        || (!analysis.undecided.is_empty() && analysis.union_members.is_none())
    {
        "undecided-exhausted"
    } else {
        match &analysis.union_members {
            Some(m) if m.is_empty() => {
                if all_targets_self_edged(system) {
                    "self-edged"
                } else {
                    "strongly-dual"
                }
            }
            Some(_) => "weakly-dual-only",
            None => "undecided-exhausted",
        }
    };
    let weak_duality_consistent = !(analysis.observable.verdict == DecisionVerdict::True
        && analysis.dual_tc.verdict == DecisionVerdict::False);
    // The strong-duality condition is the emptiness of the decided T ∩ D.
    let strong_duality_holds = analysis.union_members.as_ref().map(|m| m.is_empty());
    DualitySection {
        controllability_side: if analysis.ctrb_side_is_given {
            "given"
        } else {
            "transposed"
        }
        .to_owned(),
        dual_target_controllable: decision_json(&analysis.dual_tc, table),
        target_observable: decision_json(&analysis.observable, table),
        targets_in_dilation_union: analysis
            .union_members
            .as_ref()
            .map(|m| m.iter().map(|&t| table.state(t)).collect()),
        undecided_targets: analysis.undecided.iter().map(|&t| table.state(t)).collect(),
        weak_duality_consistent,
        strong_duality_holds,
        region: region.to_owned(),
    }
}

/// Oracle cross-checks for every side of the system that has attachments.
/// A system past the state cap degrades to a warning: the cross-check is an
/// appendix to the structural analysis, not a gate on it.
fn oracle_sections(
    system: &StructuredSystem,
    trials: usize,
    seed: u64,
) -> Result<Option<Vec<OracleSection>>, CliError> {
    if system.state_count() > DEFAULT_STATE_CAP {
        eprintln!(
            "warning: oracle cross-check skipped ({} states exceed the cap of {})",
            system.state_count(),
            DEFAULT_STATE_CAP
        );
        return Ok(None);
    }
    let mut sections = Vec::new();
    let mut push = |side: &str, property: OracleProperty, sys: &StructuredSystem| -> Result<(), CliError> {
        let verdict = run_oracle(sys, property, trials, seed)?;
        sections.push(oracle_section(side, &verdict));
        Ok(())
    };
    if system.driver_count() > 0 {
        push("given", OracleProperty::OutputControllability, system)?;
    }
    if system.sensor_count() > 0 {
        push("given", OracleProperty::FunctionalObservability, system)?;
    }
    let dual = system.transpose_dual();
    if dual.driver_count() > 0 {
        push("transposed", OracleProperty::OutputControllability, &dual)?;
    }
    if dual.sensor_count() > 0 {
        push("transposed", OracleProperty::FunctionalObservability, &dual)?;
    }
    Ok(Some(sections))
}

fn run_oracle(
    system: &StructuredSystem,
    property: OracleProperty,
    trials: usize,
    seed: u64,
) -> Result<OracleVerdict, CliError> {
    generic_test_capped(system, property, trials, seed, DEFAULT_STATE_CAP).map_err(|e| {
        CliError::Usage(format!("oracle refused: {e}"))
    })
}

fn oracle_section(side: &str, verdict: &OracleVerdict) -> OracleSection {
    OracleSection {
        side: side.to_owned(),
        property: match verdict.property {
            OracleProperty::OutputControllability => "outputControllability",
            OracleProperty::FunctionalObservability => "functionalObservability",
        }
        .to_owned(),
        trials: verdict.trials,
        successes: verdict.successes,
        verdict: match verdict.verdict {
            GenericVerdict::GenericTrue => "genericTrue",
            GenericVerdict::GenericFalse => "genericFalse",
        }
        .to_owned(),
        ranks: verdict.ranks.clone(),
        trivial_estimation: verdict.trivial_estimation,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    graph: &Path,
    targets: &Path,
    drivers: Option<&Path>,
    sensors: Option<&Path>,
    cap: usize,
    oracle: bool,
    trials: usize,
    seed: u64,
    json: Option<&Path>,
    quiet: bool,
) -> Result<i32, CliError> {
    let started = Instant::now();
    let loaded = load_system(graph, targets, drivers, sensors)?;
    let table = LabelTable {
        labels: &loaded.parsed.labels,
    };
    let mut report = base_report("analyze", seed, &loaded);

    let assumption = loaded.system.validate_assumption();
    let sc = is_structurally_controllable(&loaded.system);
    let so = is_structurally_observable(&loaded.system);

    let mut exit = EXIT_TRUE;
    let mut verdicts = VerdictsSection {
        structurally_controllable: Some(decision_json(&sc, &table)),
        structurally_observable: Some(decision_json(&so, &table)),
        target_controllable: None,
        target_observable: None,
    };

    if assumption.verdict == AssumptionVerdict::Violated {
        report.verdicts = Some(verdicts);
        finish_report(&report, json)?;
        if !quiet {
            println!("assumption: violated — target deciders not applicable");
            print_elapsed(started);
        }
        return Ok(EXIT_FALSE);
    }

    let tc = is_target_controllable(&loaded.system).expect("assumption checked above");
    if loaded.system.driver_count() > 0 {
        verdicts.target_controllable = Some(decision_json(&tc, &table));
    }

    let analysis = analyze_duality(&loaded.system, cap).expect("assumption checked above");
    if loaded.system.sensor_count() > 0 {
        verdicts.target_observable = Some(decision_json(&analysis.observable, &table));
    }
    let duality = duality_section(&analysis, &loaded.system, &table);

    // Exit code: headline verdicts for the given attachments; Exhausted wins.
    let mut headlines: Vec<DecisionVerdict> = Vec::new();
    if loaded.system.driver_count() > 0 {
        headlines.push(tc.verdict);
    }
    if loaded.system.sensor_count() > 0 {
        headlines.push(analysis.observable.verdict);
    }
    if headlines.contains(&DecisionVerdict::Exhausted) {
        exit = EXIT_EXHAUSTED;
    } else if headlines.contains(&DecisionVerdict::False) {
        exit = EXIT_FALSE;
    }

    report.verdicts = Some(verdicts);
    report.duality = Some(duality);
    if oracle {
        report.oracle = oracle_sections(&loaded.system, trials, seed)?;
    }
    finish_report(&report, json)?;

    if !quiet {
        let summary = &report.system;
        println!(
            "system: {} states, {} drivers, {} sensors, {} targets, {} edges",
            summary.states,
            summary.drivers,
            summary.sensors,
            summary.targets.len(),
            summary.edge_count
        );
        println!(
            "assumption: {}",
            report.assumption.as_ref().unwrap().verdict
        );
        println!(
            "structurally controllable: {}   structurally observable: {}",
            verdict_str(sc.verdict),
            verdict_str(so.verdict)
        );
        println!("target controllable: {}", verdict_str(tc.verdict));
        let d = report.duality.as_ref().unwrap();
        let obs_side = if d.controllability_side == "given" {
            "transposed system"
        } else {
            "given system"
        };
        println!(
            "target observable ({obs_side}): {}",
            d.target_observable.verdict
        );
        match &d.targets_in_dilation_union {
            Some(m) if m.is_empty() => println!("targets in dilation union: none"),
            Some(m) => println!("targets in dilation union: {}", m.join(", ")),
            None => println!("targets in dilation union: undecided (cap)"),
        }
        println!("region: {}", d.region);
        if let Some(sections) = &report.oracle {
            for s in sections {
                println!(
                    "oracle [{} {}]: {} ({}/{} trials passed)",
                    s.side, s.property, s.verdict, s.successes, s.trials
                );
            }
        }
        print_elapsed(started);
    }
    Ok(exit)
}

fn cmd_place(
    graph: &Path,
    targets: &Path,
    mode: PlaceMode,
    cap: usize,
    seed: u64,
    json: Option<&Path>,
    quiet: bool,
) -> Result<i32, CliError> {
    let started = Instant::now();
    let loaded = load_system(graph, targets, None, None)?;
    let table = LabelTable {
        labels: &loaded.parsed.labels,
    };
    let mode_name = match mode {
        PlaceMode::Drivers => "drivers",
        PlaceMode::Sensors => "sensors",
        PlaceMode::SensorsViaDuality => "sensors-via-duality",
    };
    let outcome: Result<PlacementResult, PlacementError> = match mode {
        PlaceMode::Drivers => place_drivers_mdpt(&loaded.system, &loaded.target_sites),
        PlaceMode::Sensors => {
            place_sensors_mspt_selfloop(&loaded.system, &loaded.target_sites, cap)
        }
        PlaceMode::SensorsViaDuality => {
            place_sensors_via_duality(&loaded.system, &loaded.target_sites, cap)
        }
    };
    let result = match outcome {
        Ok(result) => result,
        Err(PlacementError::EmptyTargets) => {
            return Err(CliError::Data("targets file is empty".to_owned()));
        }
        Err(PlacementError::SelfEdgeMissing(missing)) => {
            let names: Vec<String> = missing.iter().map(|&s| table.state(s)).collect();
            eprintln!(
                "targets without self-edges: {}; the set-cover mode needs them — use --mode sensors-via-duality",
                names.join(", ")
            );
            return Ok(EXIT_FALSE);
        }
        Err(PlacementError::Exhausted(targets)) => {
            let names: Vec<String> = targets.iter().map(|&s| table.state(s)).collect();
            eprintln!(
                "closure cap {cap} exhausted while certifying; undecided targets: {}",
                names.join(", ")
            );
            return Ok(EXIT_EXHAUSTED);
        }
    };

    let mut report = base_report("place", seed, &loaded);
    report.placement = Some(PlacementSection {
        mode: mode_name.to_owned(),
        attach_points: result
            .attach_points
            .iter()
            .map(|&s| table.state(s))
            .collect(),
        count: result.attach_points.len(),
        iterations: result.iterations,
        method: match result.method {
            PlacementMethod::SetCover => "setCover",
            PlacementMethod::MatchingRepair => "matchingRepair",
            PlacementMethod::DualityConversion => "dualityConversion",
        }
        .to_owned(),
        certificate: decision_json(&result.certificate, &table),
    });
    finish_report(&report, json)?;

    if !quiet {
        let p = report.placement.as_ref().unwrap();
        println!(
            "mode {}: {} attach point(s): {}",
            p.mode,
            p.count,
            p.attach_points.join(", ")
        );
        println!("certificate: {} (method {})", p.certificate.verdict, p.method);
        print_elapsed(started);
    }
    Ok(if result.certificate.holds() {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    })
}

fn cmd_curve(
    graph: &Path,
    fractions: &str,
    trials: usize,
    cap: usize,
    seed: u64,
    csv: &Path,
    quiet: bool,
) -> Result<i32, CliError> {
    let started = Instant::now();
    if trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".to_owned()));
    }
    let mut fracs = Vec::new();
    for token in fractions.split(',') {
        let token = token.trim();
        let value: f64 = token
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid fraction {token:?}")))?;
        if !(0.0..=1.0).contains(&value) {
            return Err(CliError::Usage(format!(
                "invalid fraction {value}: must lie in [0, 1]"
            )));
        }
        fracs.push(value);
    }
    let parsed = parse_edge_list(graph)?;
    let n = parsed.node_count();
    let a: Vec<(usize, usize)> = parsed.edges.iter().map(|&(f, t)| (t, f)).collect();
    let system = StructuredSystem::build(n, 0, 0, 0, &a, &[], &[], &[])
        .map_err(|e| CliError::Data(format!("invalid system: {e}")))?;
    let rows = match coverage_curve(&system, &fracs, trials, seed, cap) {
        Ok(rows) => rows,
        Err(PlacementError::Exhausted(_)) => {
            eprintln!("closure cap {cap} exhausted during a trial");
            return Ok(EXIT_EXHAUSTED);
        }
        Err(e) => return Err(CliError::Data(e.to_string())),
    };
    let mut out = String::from("fraction,mean_drivers,sd_drivers,mean_sensors,sd_sensors\n");
    for row in &rows {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6},{:.6}\n",
            row.fraction, row.mean_drivers, row.sd_drivers, row.mean_sensors, row.sd_sensors
        ));
    }
    std::fs::write(csv, out).map_err(|e| CliError::Usage(format!("{}: {e}", csv.display())))?;
    if !quiet {
        println!("wrote {} row(s) to {}", rows.len(), csv.display());
        print_elapsed(started);
    }
    Ok(EXIT_TRUE)
}

fn cmd_generate(
    model: generate::Model,
    n: usize,
    avg_degree: Option<f64>,
    self_loops: generate::SelfLoops,
    seed: u64,
    out: &Path,
    quiet: bool,
) -> Result<i32, CliError> {
    let edges = generate::generate_edges(model, n, avg_degree, self_loops, seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let text = generate::render_edge_list(model, n, avg_degree, self_loops, seed, &edges);
    std::fs::write(out, text).map_err(|e| CliError::Usage(format!("{}: {e}", out.display())))?;
    if !quiet {
        println!("wrote {} edge(s) to {}", edges.len(), out.display());
    }
    Ok(EXIT_TRUE)
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    graph: &Path,
    targets: &Path,
    drivers: Option<&Path>,
    sensors: Option<&Path>,
    property: PropertyArg,
    trials: usize,
    seed: u64,
    json: Option<&Path>,
    quiet: bool,
) -> Result<i32, CliError> {
    let started = Instant::now();
    let loaded = load_system(graph, targets, drivers, sensors)?;
    let (prop, needs) = match property {
        PropertyArg::Ctrb => (
            OracleProperty::OutputControllability,
            loaded.system.driver_count() > 0,
        ),
        PropertyArg::Obsv => (
            OracleProperty::FunctionalObservability,
            loaded.system.sensor_count() > 0,
        ),
    };
    if !needs {
        return Err(CliError::Usage(match property {
            PropertyArg::Ctrb => "property ctrb needs a --drivers file".to_owned(),
            PropertyArg::Obsv => "property obsv needs a --sensors file".to_owned(),
        }));
    }
    let verdict = run_oracle(&loaded.system, prop, trials, seed)?;
    let mut report = base_report("oracle", seed, &loaded);
    report.oracle = Some(vec![oracle_section("given", &verdict)]);
    finish_report(&report, json)?;
    if !quiet {
        let s = &report.oracle.as_ref().unwrap()[0];
        println!(
            "oracle [{}]: {} ({}/{} trials passed)",
            s.property, s.verdict, s.successes, s.trials
        );
        if s.trivial_estimation {
            println!("note: some target functional is a combination of outputs (trivially estimated)");
        }
        print_elapsed(started);
    }
    Ok(match verdict.verdict {
        GenericVerdict::GenericTrue => EXIT_TRUE,
        GenericVerdict::GenericFalse => EXIT_FALSE,
    })
}

fn finish_report(report: &ReportDocument, json: Option<&Path>) -> Result<(), CliError> {
    if let Some(path) = json {
        write_json(path, report).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn print_elapsed(started: Instant) {
    println!("elapsed: {:.1} ms", started.elapsed().as_secs_f64() * 1e3);
}
