//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! 1. Example fixture relations on FIG1, including the three repairs.
//! 2. Structural-vs-oracle equivalence (exhaustive small + sampled random).
//! 3. Weak duality over 10 000 random systems.
//! 4. Strong duality over the same corpus.
//! 5. Identity-functional reduction to the classical deciders.
//! 6. Placement soundness, upper bounds, and near-optimality at desk scale.
//! 7. Scaling on a generated sparse digraph (n=300, mean out-degree 3).
//! 8. Analyze performance on a 10^4-node, 5*10^4-edge digraph.
//! 9. Byte-identical reports under identical inputs and seeds.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use targetability::fixtures::load_fixture;
use targetability::graph::InferenceGraph;
use targetability::graphops::{control_subgraph, dilation_union_on_targets, predecessors, ClosureOutcome};
use targetability::oracle::{exhaustive_equivalence_sweep, sample_random_system, SweepConfig};
use targetability::placement::{
    coverage_curve, place_drivers_mdpt, place_sensors_mspt_selfloop, place_sensors_via_duality,
};
use targetability::structural::{
    is_structurally_controllable, is_structurally_observable, is_target_controllable,
    is_target_observable, strong_duality_report, weak_duality_report, DecisionVerdict,
};
use targetability::system::StructuredSystem;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_targetability")
}

fn pass(line: &str) {
    println!("ACCEPTANCE {line}: PASS");
}

// --- criterion 1 -----------------------------------------------------------

#[test]
fn criterion_1_example_fixture_suite() {
    let started = Instant::now();
    let fig1 = load_fixture("FIG1").unwrap();
    let graph = InferenceGraph::from_system(&fig1);

    // Target controllable; the transposed system is not target observable.
    let tc = is_target_controllable(&fig1).unwrap();
    assert_eq!(tc.verdict, DecisionVerdict::True);
    let dual = fig1.transpose_dual();
    let to = is_target_observable(&dual, 20).unwrap();
    assert_eq!(to.verdict, DecisionVerdict::False);

    // T ∩ D = {x2}.
    match dilation_union_on_targets(&graph, graph.targets(), 20) {
        ClosureOutcome::Complete { members } => {
            assert_eq!(members.into_iter().collect::<Vec<_>>(), vec![1]);
        }
        other => panic!("unexpected {other:?}"),
    }

    // G' drops exactly x7.
    let (_, retained) = control_subgraph(&graph);
    let dropped: Vec<usize> = (0..graph.node_count())
        .filter(|id| !retained.contains(id))
        .collect();
    assert_eq!(dropped, vec![6]);

    // P({x4, x5}) = {x3, x4}.
    let set: BTreeSet<usize> = [3, 4].into_iter().collect();
    let preds = predecessors(&graph, &set).unwrap();
    assert_eq!(preds.into_iter().collect::<Vec<_>>(), vec![2, 3]);

    // Each of the three repairs flips the transposed system to observable.
    let with_self_edge = fig1.with_state_edge(1, 1).unwrap().transpose_dual();
    assert_eq!(
        is_target_observable(&with_self_edge, 20).unwrap().verdict,
        DecisionVerdict::True
    );
    let with_second_driver = fig1.with_driver_at(1).unwrap().transpose_dual();
    assert_eq!(
        is_target_observable(&with_second_driver, 20).unwrap().verdict,
        DecisionVerdict::True
    );
    let without_x2 = fig1.with_targets(&[3, 4]).unwrap().transpose_dual();
    assert_eq!(
        is_target_observable(&without_x2, 20).unwrap().verdict,
        DecisionVerdict::True
    );

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_millis() < 10,
        "fixture suite took {elapsed:?}, budget 10 ms"
    );
    pass(&format!("criterion 1 (example fixture, {elapsed:?})"));
}

// --- criterion 2 -----------------------------------------------------------

#[test]
fn criterion_2_structural_vs_oracle_equivalence() {
    let started = Instant::now();
    let report = exhaustive_equivalence_sweep(SweepConfig {
        exhaustive_max_states: 3,
        sampled_count: 1000,
        sampled_max_states: 6,
        trials: 16,
        seed: 0,
        cap: 20,
    });
    assert!(report.exhaustive_checked >= 6900, "exhaustive half too small");
    assert_eq!(report.sampled_checked, 1000);
    assert!(
        report.disagreements.is_empty(),
        "structural vs oracle disagreements: {:?}",
        report.disagreements
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "sweep took {elapsed:?}, budget 60 s");
    pass(&format!(
        "criterion 2 (equivalence: {} exhaustive + {} sampled, 0 disagreements, {elapsed:?})",
        report.exhaustive_checked, report.sampled_checked
    ));
}

// --- criteria 3 and 4 ------------------------------------------------------

fn duality_corpus() -> impl Iterator<Item = StructuredSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    std::iter::from_fn(move || {
        loop {
            if let Some(system) = sample_random_system(&mut rng, 8) {
                return Some(system);
            }
        }
    })
}

#[test]
fn criterion_3_weak_duality() {
    let mut checked = 0;
    for system in duality_corpus().take(10_000) {
        let report = weak_duality_report(&system, 24).unwrap();
        assert!(
            !report.violation_bug,
            "weak duality violated on {system:?}"
        );
        checked += 1;
    }
    pass(&format!("criterion 3 (weak duality over {checked} systems)"));
}

#[test]
fn criterion_4_strong_duality() {
    let mut checked = 0;
    let mut exhausted = 0;
    for system in duality_corpus().take(10_000) {
        let report = strong_duality_report(&system, 24).unwrap();
        if report.implied_observable == DecisionVerdict::Exhausted
            || report.observable.verdict == DecisionVerdict::Exhausted
        {
            exhausted += 1;
            continue;
        }
        assert_eq!(
            report.implied_observable, report.observable.verdict,
            "strong duality exception on {system:?}"
        );
        checked += 1;
    }
    pass(&format!(
        "criterion 4 (strong duality over {checked} decided systems, {exhausted} exhausted)"
    ));
}

// --- criterion 5 -----------------------------------------------------------

#[test]
fn criterion_5_identity_functional_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 1000 {
        let Some(system) = sample_random_system(&mut rng, 7) else {
            continue;
        };
        let n = system.state_count();
        let full: Vec<usize> = (0..n).collect();
        let sys = system.with_targets(&full).unwrap();
        let tc = is_target_controllable(&sys).unwrap();
        let sc = is_structurally_controllable(&sys);
        assert_eq!(tc.verdict, sc.verdict, "controllability reduction on {sys:?}");
        let to = is_target_observable(&sys, 64).unwrap();
        let so = is_structurally_observable(&sys);
        assert_eq!(to.verdict, so.verdict, "observability reduction on {sys:?}");
        checked += 1;
    }
    pass("criterion 5 (identity-functional reduction over 1000 systems)");
}

// --- criterion 6 -----------------------------------------------------------

fn brute_force_min_drivers(system: &StructuredSystem, targets: &[usize]) -> usize {
    let n = system.state_count();
    let a_edges: Vec<(usize, usize)> = system.pattern_a().iter().map(|&(i, j)| (j, i)).collect();
    for size in 0..=targets.len() {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let attach: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let sys =
                StructuredSystem::from_parts(n, &a_edges, &attach, &[], targets).unwrap();
            if is_target_controllable(&sys).unwrap().verdict == DecisionVerdict::True {
                return size;
            }
        }
    }
    targets.len()
}

/// Number of picks the greedy cover makes on the sensor-reachability
/// universe, reconstructed with plain BFS.
fn greedy_sensor_cover_count(system: &StructuredSystem, targets: &[usize]) -> usize {
    let n = system.state_count();
    let mut out_adj = vec![Vec::new(); n];
    for &(i, j) in system.pattern_a() {
        out_adj[j].push(i);
    }
    let mut covers: Vec<(usize, BTreeSet<usize>)> = (0..n).map(|v| (v, BTreeSet::new())).collect();
    for &t in targets {
        let mut seen = vec![false; n];
        let mut stack = vec![t];
        seen[t] = true;
        while let Some(v) = stack.pop() {
            covers[v].1.insert(t);
            for &w in &out_adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let universe: BTreeSet<usize> = targets.iter().copied().collect();
    targetability::placement::greedy_set_cover(&universe, &covers).len()
}

fn brute_force_min_sensors(system: &StructuredSystem, targets: &[usize]) -> usize {
    let n = system.state_count();
    let a_edges: Vec<(usize, usize)> = system.pattern_a().iter().map(|&(i, j)| (j, i)).collect();
    for size in 0..=targets.len() {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let attach: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let sys =
                StructuredSystem::from_parts(n, &a_edges, &[], &attach, targets).unwrap();
            if is_target_observable(&sys, 32).unwrap().verdict == DecisionVerdict::True {
                return size;
            }
        }
    }
    targets.len()
}

#[test]
fn criterion_6_placement_soundness_and_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut driver_cases = 0;
    let mut sensor_cases = 0;
    for _ in 0..400 {
        let n = rng.gen_range(2..=6usize);
        let density = [0.2, 0.35, 0.5][rng.gen_range(0..3)];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rng.gen_bool(density) {
                    edges.push((i, j));
                }
            }
        }
        let r = rng.gen_range(1..=3.min(n));
        let mut pool: Vec<usize> = (0..n).collect();
        for i in (1..pool.len()).rev() {
            let j = rng.gen_range(0..=i);
            pool.swap(i, j);
        }
        let targets: Vec<usize> = pool.into_iter().take(r).collect();
        let mut targets = targets;
        targets.sort_unstable();
        let system = StructuredSystem::from_parts(n, &edges, &[], &[], &[]).unwrap();

        // Drivers: certified, bounded by |T|, within optimum + 1.
        let placed = place_drivers_mdpt(&system, &targets).unwrap();
        assert!(placed.certificate.holds());
        assert!(placed.attach_points.len() <= targets.len());
        let optimum = brute_force_min_drivers(&system, &targets);
        assert!(
            placed.attach_points.len() <= optimum + 1,
            "greedy {} vs optimum {optimum} on {system:?} targets {targets:?}",
            placed.attach_points.len()
        );
        driver_cases += 1;

        // Sensors in the self-edge regime: certified, bounded by |T|, and the
        // set-cover phase stays within (ln r + 1) x optimum. Any certified
        // placement also covers target-to-sensor reachability, so the greedy
        // cover count is bounded against the exhaustive minimum; repairs for
        // residual contraction-set members are separately bounded by |T|.
        let mut looped_edges = edges.clone();
        for &t in &targets {
            looped_edges.push((t, t));
        }
        looped_edges.sort_unstable();
        looped_edges.dedup();
        let looped = StructuredSystem::from_parts(n, &looped_edges, &[], &[], &[]).unwrap();
        let placed = place_sensors_mspt_selfloop(&looped, &targets, 32).unwrap();
        assert!(placed.certificate.holds());
        assert!(placed.attach_points.len() <= targets.len());
        let optimum = brute_force_min_sensors(&looped, &targets);
        let cover_picks = greedy_sensor_cover_count(&looped, &targets);
        let bound = ((r as f64).ln() + 1.0) * optimum.max(1) as f64;
        assert!(
            cover_picks as f64 <= bound + 1e-9,
            "set cover {cover_picks} vs bound {bound} on {looped:?}"
        );
        sensor_cases += 1;

        // Duality-based sensors: certified and bounded.
        let placed = place_sensors_via_duality(&system, &targets, 32).unwrap();
        assert!(placed.certificate.holds());
        assert!(placed.attach_points.len() <= targets.len());
    }
    pass(&format!(
        "criterion 6 (placement sound and near-optimal over {driver_cases} driver / {sensor_cases} sensor cases)"
    ));
}

// --- criterion 7 -----------------------------------------------------------

#[test]
fn criterion_7_scaling_on_generated_sparse_digraph() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("net300.txt");
    let status = Command::new(bin())
        .args([
            "generate",
            "--model",
            "er-directed",
            "--n",
            "300",
            "--avg-degree",
            "3",
            "--seed",
            "7",
            "--out",
            graph_path.to_str().unwrap(),
            "--quiet",
        ])
        .status()
        .unwrap();
    assert!(status.success());

    let parsed = parse_generated(&graph_path);
    let n = parsed.0;
    let system = StructuredSystem::build(n, 0, 0, 0, &parsed.1, &[], &[], &[]).unwrap();
    let rows = coverage_curve(&system, &[0.05], 100, 7, 20).unwrap();
    let row = &rows[0];
    assert!(
        row.mean_drivers <= 0.10,
        "mean drivers/n {} exceeds 0.10",
        row.mean_drivers
    );
    assert!(
        row.mean_sensors <= 0.10,
        "mean sensors/n {} exceeds 0.10",
        row.mean_sensors
    );
    assert!(row.sd_drivers.is_finite() && row.sd_sensors.is_finite());
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "sweep took {elapsed:?}, budget 30 s");
    pass(&format!(
        "criterion 7 (n={n} scaling: drivers/n={:.4}±{:.4}, sensors/n={:.4}±{:.4}, {elapsed:?})",
        row.mean_drivers, row.sd_drivers, row.mean_sensors, row.sd_sensors
    ));

    // Optional anchor run on a user-supplied connectome edge list.
    if let Ok(path) = std::env::var("TARGETABILITY_CELEGANS_EDGELIST") {
        let parsed = parse_generated(Path::new(&path));
        let system = StructuredSystem::build(parsed.0, 0, 0, 0, &parsed.1, &[], &[], &[]).unwrap();
        let rows = coverage_curve(&system, &[0.05], 100, 7, 20).unwrap();
        println!(
            "user-supplied connectome (n={}): drivers/n={:.4} (anchor 0.015), sensors/n={:.4} (anchor 0.010)",
            parsed.0, rows[0].mean_drivers, rows[0].mean_sensors
        );
    }
}

fn parse_generated(path: &Path) -> (usize, Vec<(usize, usize)>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut labels: std::collections::HashMap<String, usize> = std::collections::HashMap::new();
    let mut edges = BTreeSet::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let from = it.next().unwrap().to_owned();
        let to = it.next().unwrap().to_owned();
        let mut intern = |label: String| {
            let next = labels.len();
            *labels.entry(label).or_insert(next)
        };
        let f = intern(from);
        let t = intern(to);
        edges.insert((t, f)); // pattern position (row, col) = (to, from)
    }
    (labels.len(), edges.into_iter().collect())
}

// --- criterion 8 -----------------------------------------------------------

#[test]
fn criterion_8_analyze_performance_at_scale() {
    // Sparse digraph with n = 10^4 and |E| = 5x10^4, built as disjoint dense
    // clusters of 10 nodes so every alternating closure stays within the
    // enumeration cap.
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 10_000usize;
    let cluster = 10usize;
    let mut text = String::new();
    let mut edge_count = 0usize;
    for c in 0..(n / cluster) {
        let base = c * cluster;
        let mut seen = BTreeSet::new();
        while seen.len() < 50 {
            let i = base + rng.gen_range(0..cluster);
            let j = base + rng.gen_range(0..cluster);
            if i != j && seen.insert((i, j)) {
                text.push_str(&format!("n{i} n{j}\n"));
                edge_count += 1;
            }
        }
    }
    assert_eq!(edge_count, 50_000);
    let graph_path = dir.path().join("big.txt");
    std::fs::write(&graph_path, text).unwrap();

    let mut pick = |count: usize| -> String {
        let mut set = BTreeSet::new();
        while set.len() < count {
            set.insert(rng.gen_range(0..n));
        }
        set.iter().map(|i| format!("n{i}\n")).collect()
    };
    let targets_path = dir.path().join("targets.txt");
    std::fs::write(&targets_path, pick(50)).unwrap();
    let drivers_path = dir.path().join("drivers.txt");
    std::fs::write(&drivers_path, pick(20)).unwrap();
    let sensors_path = dir.path().join("sensors.txt");
    std::fs::write(&sensors_path, pick(20)).unwrap();
    let json = dir.path().join("big.json");

    let started = Instant::now();
    let out = Command::new(bin())
        .args([
            "analyze",
            "--graph",
            graph_path.to_str().unwrap(),
            "--drivers",
            drivers_path.to_str().unwrap(),
            "--sensors",
            sensors_path.to_str().unwrap(),
            "--targets",
            targets_path.to_str().unwrap(),
            "--json",
            json.to_str().unwrap(),
            "--quiet",
        ])
        .output()
        .unwrap();
    let elapsed = started.elapsed();
    let code = out.status.code().unwrap();
    assert!(code == 0 || code == 1, "analyze failed: {out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(
        report["duality"]["undecided_targets"],
        serde_json::json!([]),
        "all targets must pass the closure cap"
    );
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "analyze took {elapsed:?}, budget 10 s"
    );
    pass(&format!("criterion 8 (n=10^4 analyze in {elapsed:?})"));
}

// --- criterion 9 -----------------------------------------------------------

#[test]
fn criterion_9_byte_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    std::fs::write(&graph, "x1 x2\nx1 x3\nx3 x4\nx4 x5\nx5 x7\nx6 x1\n").unwrap();
    let drivers = dir.path().join("d.txt");
    std::fs::write(&drivers, "x6\n").unwrap();
    let targets = dir.path().join("t.txt");
    std::fs::write(&targets, "x2\nx4\nx5\n").unwrap();

    let analyze = |json: &PathBuf| {
        let status = Command::new(bin())
            .args([
                "analyze",
                "--graph",
                graph.to_str().unwrap(),
                "--drivers",
                drivers.to_str().unwrap(),
                "--targets",
                targets.to_str().unwrap(),
                "--seed",
                "11",
                "--oracle",
                "--json",
                json.to_str().unwrap(),
                "--quiet",
            ])
            .status()
            .unwrap();
        assert!(status.success());
    };
    let j = dir.path().join("a.json");
    analyze(&j);
    let b1 = std::fs::read(&j).unwrap();
    std::fs::remove_file(&j).unwrap();
    analyze(&j);
    assert!(!b1.is_empty());
    assert_eq!(b1, std::fs::read(&j).unwrap(), "JSON reports must match");

    let curve = |csv: &PathBuf| {
        let status = Command::new(bin())
            .args([
                "curve",
                "--graph",
                graph.to_str().unwrap(),
                "--fractions",
                "0.3,0.7",
                "--trials",
                "5",
                "--seed",
                "11",
                "--csv",
                csv.to_str().unwrap(),
                "--quiet",
            ])
            .status()
            .unwrap();
        assert!(status.success());
    };
    let c = dir.path().join("c.csv");
    curve(&c);
    let b1 = std::fs::read(&c).unwrap();
    std::fs::remove_file(&c).unwrap();
    curve(&c);
    assert!(!b1.is_empty());
    assert_eq!(b1, std::fs::read(&c).unwrap(), "CSV tables must match");
    pass("criterion 9 (byte-identical JSON and CSV outputs)");
}
