//! Exhaustive verification of the strong-duality equivalence on small
//! patterns: target observability coincides with [dual target controllability
//! and empty target/dilation-union intersection] for every pattern with up to
//! three states, one driver, one sensor, and every nonempty target set; n = 4
//! is covered by dense pattern sampling to keep the runtime flat.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use targetability::structural::{strong_duality_report, DecisionVerdict};
use targetability::system::StructuredSystem;

fn check(system: &StructuredSystem) {
    let report = strong_duality_report(system, 32).unwrap();
    assert!(
        report.implied_observable == DecisionVerdict::Exhausted
            || report.observable.verdict == DecisionVerdict::Exhausted
            || report.implied_observable == report.observable.verdict,
        "strong duality exception on {system:?}: implied {:?} vs decided {:?}",
        report.implied_observable,
        report.observable.verdict
    );
    assert!(report.consistent);
}

#[test]
fn strong_duality_exhaustive_up_to_three_states() {
    let mut checked = 0usize;
    for n in 1..=3usize {
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .collect();
        for bits in 0u32..(1u32 << cells.len()) {
            let pattern: Vec<(usize, usize)> = cells
                .iter()
                .enumerate()
                .filter_map(|(k, &c)| (bits >> k & 1 == 1).then_some(c))
                .collect();
            for target_bits in 1u32..(1u32 << n) {
                let targets: Vec<(usize, usize)> = (0..n)
                    .filter(|&t| target_bits >> t & 1 == 1)
                    .enumerate()
                    .map(|(row, t)| (row, t))
                    .collect();
                for driver in 0..n {
                    for sensor in 0..n {
                        let system = StructuredSystem::build(
                            n,
                            1,
                            1,
                            targets.len(),
                            &pattern,
                            &[(driver, 0)],
                            &[(0, sensor)],
                            &targets,
                        )
                        .unwrap();
                        check(&system);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 30_000, "checked only {checked}");
}

#[test]
fn strong_duality_sampled_four_states_all_target_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let mut pattern = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                if rng.gen_bool(0.4) {
                    pattern.push((i, j));
                }
            }
        }
        let driver = rng.gen_range(0..4);
        let sensor = rng.gen_range(0..4);
        for target_bits in 1u32..16 {
            let targets: Vec<(usize, usize)> = (0..4)
                .filter(|&t| target_bits >> t & 1 == 1)
                .enumerate()
                .map(|(row, t)| (row, t))
                .collect();
            let system = StructuredSystem::build(
                4,
                1,
                1,
                targets.len(),
                &pattern,
                &[(driver, 0)],
                &[(0, sensor)],
                &targets,
            )
            .unwrap();
            check(&system);
        }
    }
}
