//! Canonical small systems used across tests and documentation.

use crate::system::{StructuredSystem, SystemError};

/// Loads a fixture by catalog name.
///
/// * `CHAIN3` — chain x1 -> x2 -> x3 with a driver on x1, a sensor on x3, and
///   target x3.
/// * `FIG1` — seven states with edges x6 -> x1, x1 -> x2, x1 -> x3, x3 -> x4,
///   x4 -> x5, x5 -> x7, one driver on x6, no sensors, targets {x2, x4, x5}.
///   The branch through x1 gives x2 and x3 a single shared predecessor, so
///   {x2, x3} is a minimal dilation set and the system is target controllable
///   without being structurally controllable.
/// * `LOOP2` — two self-looped states with x1 -> x2, a driver on x1, a sensor
///   on x2, and target x2.
pub fn load_fixture(name: &str) -> Result<StructuredSystem, SystemError> {
    // Edges are 1-based (from, to) pairs for readability.
    let one_based = |n: usize,
                     edges: &[(usize, usize)],
                     drivers: &[usize],
                     sensors: &[usize],
                     targets: &[usize]| {
        let shift = |v: &[usize]| v.iter().map(|&x| x - 1).collect::<Vec<_>>();
        let edges: Vec<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        StructuredSystem::from_parts(n, &edges, &shift(drivers), &shift(sensors), &shift(targets))
    };
    match name {
        "CHAIN3" => one_based(3, &[(1, 2), (2, 3)], &[1], &[3], &[3]),
        "FIG1" => one_based(
            7,
            &[(6, 1), (1, 2), (1, 3), (3, 4), (4, 5), (5, 7)],
            &[6],
            &[],
            &[2, 4, 5],
        ),
        "LOOP2" => one_based(2, &[(1, 1), (2, 2), (1, 2)], &[1], &[2], &[2]),
        other => Err(SystemError::UnknownFixture(other.to_owned())),
    }
}
