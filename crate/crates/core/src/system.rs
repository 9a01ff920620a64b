//! Sparsity patterns of structured systems and the independence assumption.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which pattern an invalid position belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternKind {
    A,
    B,
    C,
    F,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("{kind:?} position ({row}, {col}) out of range for declared dimensions")]
    IndexOutOfRange {
        kind: PatternKind,
        row: usize,
        col: usize,
    },
    #[error("duplicate {kind:?} position ({row}, {col})")]
    DuplicateEntry {
        kind: PatternKind,
        row: usize,
        col: usize,
    },
    #[error("functional row {row} has no nonzero entry")]
    TargetRowEmpty { row: usize },
    #[error("functional rows {first} and {second} both target state {state} exclusively")]
    DuplicateTargetRow {
        first: usize,
        second: usize,
        state: usize,
    },
    #[error("invalid dimensions: r = {r} target rows exceed n = {n} states")]
    InvalidDimensions { n: usize, r: usize },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

/// Zero/nonzero pattern of a system (A, B, C, F).
///
/// Positions are 0-based `(row, col)` pairs. State `j` influences state `i`
/// when `(i, j)` is in the A pattern; driver `j` drives state `i` through
/// `(i, j)` in B; sensor `i` reads state `j` through `(i, j)` in C; functional
/// row `i` weights state `j` through `(i, j)` in F.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredSystem {
    n: usize,
    p: usize,
    q: usize,
    r: usize,
    pattern_a: BTreeSet<(usize, usize)>,
    pattern_b: BTreeSet<(usize, usize)>,
    pattern_c: BTreeSet<(usize, usize)>,
    pattern_f: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssumptionVerdict {
    Satisfied,
    SatisfiedIfDiagonalizable,
    Violated,
}

/// Outcome of checking the independence assumption: dedicated drivers,
/// dedicated sensors, dedicated target rows, and self-edges on targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub independent_drivers: bool,
    pub independent_sensors: bool,
    pub independent_targets: bool,
    pub target_self_edges: bool,
    pub verdict: AssumptionVerdict,
}

fn validate_pattern(
    kind: PatternKind,
    positions: &[(usize, usize)],
    rows: usize,
    cols: usize,
) -> Result<BTreeSet<(usize, usize)>, SystemError> {
    let mut set = BTreeSet::new();
    for &(row, col) in positions {
        if row >= rows || col >= cols {
            return Err(SystemError::IndexOutOfRange { kind, row, col });
        }
        if !set.insert((row, col)) {
            return Err(SystemError::DuplicateEntry { kind, row, col });
        }
    }
    Ok(set)
}

impl StructuredSystem {
    /// Validates and builds a system from raw 0-based pattern positions.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        n: usize,
        p: usize,
        q: usize,
        r: usize,
        pattern_a: &[(usize, usize)],
        pattern_b: &[(usize, usize)],
        pattern_c: &[(usize, usize)],
        pattern_f: &[(usize, usize)],
    ) -> Result<Self, SystemError> {
        if r > n {
            return Err(SystemError::InvalidDimensions { n, r });
        }
        let pattern_a = validate_pattern(PatternKind::A, pattern_a, n, n)?;
        let pattern_b = validate_pattern(PatternKind::B, pattern_b, n, p)?;
        let pattern_c = validate_pattern(PatternKind::C, pattern_c, q, n)?;
        let pattern_f = validate_pattern(PatternKind::F, pattern_f, r, n)?;

        let mut row_support: Vec<Vec<usize>> = vec![Vec::new(); r];
        for &(row, col) in &pattern_f {
            row_support[row].push(col);
        }
        let mut single_target_owner: BTreeMap<usize, usize> = BTreeMap::new();
        for (row, support) in row_support.iter().enumerate() {
            if support.is_empty() {
                return Err(SystemError::TargetRowEmpty { row });
            }
            if let [state] = support[..] {
                if let Some(&first) = single_target_owner.get(&state) {
                    return Err(SystemError::DuplicateTargetRow {
                        first,
                        second: row,
                        state,
                    });
                }
                single_target_owner.insert(state, row);
            }
        }

        Ok(Self {
            n,
            p,
            q,
            r,
            pattern_a,
            pattern_b,
            pattern_c,
            pattern_f,
        })
    }

    /// Convenience builder: `n` states, dedicated drivers/sensors at the given
    /// states, and one functional row per target state.
    pub fn from_parts(
        n: usize,
        state_edges: &[(usize, usize)],
        driver_sites: &[usize],
        sensor_sites: &[usize],
        targets: &[usize],
    ) -> Result<Self, SystemError> {
        let a: Vec<(usize, usize)> = state_edges.iter().map(|&(from, to)| (to, from)).collect();
        let b: Vec<(usize, usize)> = driver_sites.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let c: Vec<(usize, usize)> = sensor_sites.iter().enumerate().map(|(k, &s)| (k, s)).collect();
        let f: Vec<(usize, usize)> = targets.iter().enumerate().map(|(k, &s)| (k, s)).collect();
        Self::build(n, driver_sites.len(), sensor_sites.len(), targets.len(), &a, &b, &c, &f)
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

    pub fn target_row_count(&self) -> usize {
        self.r
    }

    pub fn pattern_a(&self) -> &BTreeSet<(usize, usize)> {
        &self.pattern_a
    }

    pub fn pattern_b(&self) -> &BTreeSet<(usize, usize)> {
        &self.pattern_b
    }

    pub fn pattern_c(&self) -> &BTreeSet<(usize, usize)> {
        &self.pattern_c
    }

    pub fn pattern_f(&self) -> &BTreeSet<(usize, usize)> {
        &self.pattern_f
    }

    /// States targeted by some functional row, ascending.
    pub fn targets(&self) -> BTreeSet<usize> {
        self.pattern_f.iter().map(|&(_, col)| col).collect()
    }

    pub fn has_self_edge(&self, state: usize) -> bool {
        self.pattern_a.contains(&(state, state))
    }

    /// The transposed triple: A -> Aᵀ, the C pattern becomes the input side,
    /// the B pattern becomes the output side, F is unchanged. An involution.
    pub fn transpose_dual(&self) -> Self {
        let transpose =
            |set: &BTreeSet<(usize, usize)>| set.iter().map(|&(i, j)| (j, i)).collect();
        Self {
            n: self.n,
            p: self.q,
            q: self.p,
            r: self.r,
            pattern_a: transpose(&self.pattern_a),
            pattern_b: transpose(&self.pattern_c),
            pattern_c: transpose(&self.pattern_b),
            pattern_f: self.pattern_f.clone(),
        }
    }

    /// Checks the independence assumption: every B column, C row, and F row
    /// has exactly one nonzero, and reports whether every target state has a
    /// self-edge. The verdict is `Violated` iff an independence flag is false;
    /// `Satisfied` additionally requires self-edges on all targets, and
    /// `SatisfiedIfDiagonalizable` covers the remaining case (correctness then
    /// rests on the state pattern admitting a diagonalizable realization).
    pub fn validate_assumption(&self) -> AssumptionReport {
        let mut b_col_counts = vec![0usize; self.p];
        for &(_, col) in &self.pattern_b {
            b_col_counts[col] += 1;
        }
        let mut c_row_counts = vec![0usize; self.q];
        for &(row, _) in &self.pattern_c {
            c_row_counts[row] += 1;
        }
        let mut f_row_counts = vec![0usize; self.r];
        for &(row, _) in &self.pattern_f {
            f_row_counts[row] += 1;
        }
        let independent_drivers = b_col_counts.iter().all(|&c| c == 1);
        let independent_sensors = c_row_counts.iter().all(|&c| c == 1);
        let independent_targets = f_row_counts.iter().all(|&c| c == 1);
        let target_self_edges = self.targets().iter().all(|&t| self.has_self_edge(t));
        let verdict = if !(independent_drivers && independent_sensors && independent_targets) {
            AssumptionVerdict::Violated
        } else if target_self_edges {
            AssumptionVerdict::Satisfied
        } else {
            AssumptionVerdict::SatisfiedIfDiagonalizable
        };
        AssumptionReport {
            independent_drivers,
            independent_sensors,
            independent_targets,
            target_self_edges,
            verdict,
        }
    }

    /// Returns a copy with the state edge `from -> to` present.
    pub fn with_state_edge(&self, from: usize, to: usize) -> Result<Self, SystemError> {
        if from >= self.n || to >= self.n {
            return Err(SystemError::IndexOutOfRange {
                kind: PatternKind::A,
                row: to,
                col: from,
            });
        }
        let mut out = self.clone();
        out.pattern_a.insert((to, from));
        Ok(out)
    }

    /// Returns a copy with one extra dedicated driver attached at `state`.
    pub fn with_driver_at(&self, state: usize) -> Result<Self, SystemError> {
        if state >= self.n {
            return Err(SystemError::IndexOutOfRange {
                kind: PatternKind::B,
                row: state,
                col: self.p,
            });
        }
        let mut out = self.clone();
        out.pattern_b.insert((state, self.p));
        out.p += 1;
        Ok(out)
    }

    /// Returns a copy with one extra dedicated sensor attached at `state`.
    pub fn with_sensor_at(&self, state: usize) -> Result<Self, SystemError> {
        if state >= self.n {
            return Err(SystemError::IndexOutOfRange {
                kind: PatternKind::C,
                row: self.q,
                col: state,
            });
        }
        let mut out = self.clone();
        out.pattern_c.insert((self.q, state));
        out.q += 1;
        Ok(out)
    }

    /// Returns a copy whose functional is one dedicated row per given state.
    pub fn with_targets(&self, targets: &[usize]) -> Result<Self, SystemError> {
        let mut sorted: Vec<usize> = targets.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let f: Vec<(usize, usize)> = sorted.iter().enumerate().map(|(k, &s)| (k, s)).collect();
        let mut out = self.clone();
        out.pattern_f = validate_pattern(PatternKind::F, &f, sorted.len(), self.n)?;
        out.r = sorted.len();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load_fixture;

    #[test]
    fn chain3_builds() {
        let s = load_fixture("CHAIN3").unwrap();
        assert_eq!(s.state_count(), 3);
        assert_eq!(s.driver_count(), 1);
        assert_eq!(s.target_row_count(), 1);
        assert_eq!(s.targets().into_iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn out_of_range_position_rejected() {
        // A position (4, 1) with n = 3, i.e. 0-based (3, 0).
        let err = StructuredSystem::build(3, 0, 0, 0, &[(3, 0)], &[], &[], &[]).unwrap_err();
        assert!(matches!(err, SystemError::IndexOutOfRange { kind: PatternKind::A, .. }));
    }

    #[test]
    fn empty_functional_row_rejected() {
        let err =
            StructuredSystem::build(3, 0, 0, 2, &[], &[], &[], &[(0, 1)]).unwrap_err();
        assert_eq!(err, SystemError::TargetRowEmpty { row: 1 });
    }

    #[test]
    fn duplicate_position_rejected() {
        let err =
            StructuredSystem::build(3, 1, 0, 0, &[], &[(0, 0), (0, 0)], &[], &[]).unwrap_err();
        assert!(matches!(err, SystemError::DuplicateEntry { kind: PatternKind::B, .. }));
    }

    #[test]
    fn duplicate_single_entry_target_rows_rejected() {
        let err = StructuredSystem::build(3, 0, 0, 2, &[], &[], &[], &[(0, 2), (1, 2)])
            .unwrap_err();
        assert_eq!(
            err,
            SystemError::DuplicateTargetRow {
                first: 0,
                second: 1,
                state: 2
            }
        );
    }

    #[test]
    fn r_larger_than_n_rejected() {
        let err = StructuredSystem::build(1, 0, 0, 2, &[], &[], &[], &[(0, 0), (1, 0)])
            .unwrap_err();
        assert_eq!(err, SystemError::InvalidDimensions { n: 1, r: 2 });
    }

    #[test]
    fn transpose_dual_swaps_roles() {
        let s = load_fixture("CHAIN3").unwrap();
        let d = s.transpose_dual();
        assert_eq!(d.driver_count(), 1);
        assert_eq!(d.sensor_count(), 1);
        // The sensor on x3 becomes a driver attached to x3.
        assert!(d.pattern_b().contains(&(2, 0)));
        // The driver on x1 becomes a sensor reading x1.
        assert!(d.pattern_c().contains(&(0, 0)));
        assert_eq!(d.transpose_dual(), s);
    }

    #[test]
    fn assumption_flags() {
        // B column with two nonzeros: drivers not independent.
        let s = StructuredSystem::build(2, 1, 0, 1, &[], &[(0, 0), (1, 0)], &[], &[(0, 0)])
            .unwrap();
        let report = s.validate_assumption();
        assert!(!report.independent_drivers);
        assert_eq!(report.verdict, AssumptionVerdict::Violated);

        let loop2 = load_fixture("LOOP2").unwrap();
        let report = loop2.validate_assumption();
        assert!(report.target_self_edges);
        assert_eq!(report.verdict, AssumptionVerdict::Satisfied);

        let fig1 = load_fixture("FIG1").unwrap();
        let report = fig1.validate_assumption();
        assert!(!report.target_self_edges);
        assert_eq!(report.verdict, AssumptionVerdict::SatisfiedIfDiagonalizable);
    }
}
