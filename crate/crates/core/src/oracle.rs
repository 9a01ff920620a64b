//! Exact generic-rank verification of the output-controllability and
//! functional-observability rank conditions on randomized realizations.
//!
//! Ranks are computed exactly, never in floating point: the default field is
//! the integers modulo M61 = 2^61 - 1 (controllability matrices contain
//! A^(n-1), whose float conditioning is hopeless beyond small n), with an
//! exact-integer Bareiss elimination as an independent cross-check route.
//! A property is generically true as soon as one realization passes: the
//! structured definitions are existential, and over a field of size ~2^61 a
//! false failure of a true property has probability bounded by the minor
//! degree divided by the field size, far below 2^-30 per trial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::structural::{is_target_controllable, is_target_observable, DecisionVerdict};
use crate::system::{AssumptionVerdict, StructuredSystem};

/// Default modulus: the Mersenne prime 2^61 - 1.
pub const FIELD_MODULUS: u64 = (1 << 61) - 1;

/// The oracle is a desk-scale validator; controllability matrices are n x np
/// dense, so refuse beyond this state count by default.
pub const DEFAULT_STATE_CAP: usize = 64;

pub const DEFAULT_TRIALS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("trial count must be at least 1")]
    InvalidTrials,
    #[error("state count {n} exceeds the oracle cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OracleProperty {
    OutputControllability,
    FunctionalObservability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FieldSpec {
    /// Arithmetic modulo a large prime.
    Prime { modulus: u64 },
    /// Exact integer entries with fraction-free (Bareiss) elimination.
    ExactInteger,
}

/// Numerical values for every nonzero position of a system's patterns. Zero
/// positions stay exactly zero; nonzero positions are drawn uniformly from
/// the nonzero elements of the chosen domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub field: FieldSpec,
    pub seed: u64,
    n: usize,
    p: usize,
    q: usize,
    r: usize,
    a: Vec<(usize, usize, u64)>,
    b: Vec<(usize, usize, u64)>,
    c: Vec<(usize, usize, u64)>,
    f: Vec<(usize, usize, u64)>,
}

const EXACT_ENTRY_RANGE: u64 = 1_000_000_000;

fn fill(
    pattern: &BTreeSet<(usize, usize)>,
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
) -> Vec<(usize, usize, u64)> {
    pattern
        .iter()
        .map(|&(i, j)| {
            let value = match field {
                FieldSpec::Prime { modulus } => rng.gen_range(1..modulus),
                FieldSpec::ExactInteger => rng.gen_range(1..=EXACT_ENTRY_RANGE),
            };
            (i, j, value)
        })
        .collect()
}

/// Deterministic realization of a system over the default prime field.
pub fn realize(system: &StructuredSystem, seed: u64) -> Realization {
    realize_in(system, seed, FieldSpec::Prime { modulus: FIELD_MODULUS })
}

pub fn realize_in(system: &StructuredSystem, seed: u64, field: FieldSpec) -> Realization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Realization {
        field,
        seed,
        n: system.state_count(),
        p: system.driver_count(),
        q: system.sensor_count(),
        r: system.target_row_count(),
        a: fill(system.pattern_a(), &mut rng, field),
        b: fill(system.pattern_b(), &mut rng, field),
        c: fill(system.pattern_c(), &mut rng, field),
        f: fill(system.pattern_f(), &mut rng, field),
    }
}

impl Realization {
    pub fn nonzero_count(&self) -> usize {
        self.a.len() + self.b.len() + self.c.len() + self.f.len()
    }

    fn dense(&self, entries: &[(usize, usize, u64)], rows: usize, cols: usize) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; cols]; rows];
        for &(i, j, v) in entries {
            m[i][j] = v;
        }
        m
    }

    pub fn matrix_a(&self) -> Vec<Vec<u64>> {
        self.dense(&self.a, self.n, self.n)
    }

    pub fn matrix_b(&self) -> Vec<Vec<u64>> {
        self.dense(&self.b, self.n, self.p)
    }

    pub fn matrix_c(&self) -> Vec<Vec<u64>> {
        self.dense(&self.c, self.q, self.n)
    }

    pub fn matrix_f(&self) -> Vec<Vec<u64>> {
        self.dense(&self.f, self.r, self.n)
    }
}

mod fp {
    pub fn mul(a: u64, b: u64, modulus: u64) -> u64 {
        ((a as u128 * b as u128) % modulus as u128) as u64
    }

    pub fn add(a: u64, b: u64, modulus: u64) -> u64 {
        let s = a + b;
        if s >= modulus {
            s - modulus
        } else {
            s
        }
    }

    pub fn sub(a: u64, b: u64, modulus: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + modulus - b
        }
    }

    pub fn pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
        let mut acc = 1u64;
        base %= modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, modulus);
            }
            base = mul(base, base, modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(a: u64, modulus: u64) -> u64 {
        pow(a, modulus - 2, modulus)
    }

    /// In-place row reduction; returns the rank.
    pub fn rank(matrix: &mut [Vec<u64>], modulus: u64) -> usize {
        let rows = matrix.len();
        let cols = if rows == 0 { 0 } else { matrix[0].len() };
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| matrix[r][col] != 0) else {
                continue;
            };
            matrix.swap(rank, pivot);
            let inv = inv(matrix[rank][col], modulus);
            for j in col..cols {
                matrix[rank][j] = mul(matrix[rank][j], inv, modulus);
            }
            for r in 0..rows {
                if r != rank && matrix[r][col] != 0 {
                    let factor = matrix[r][col];
                    for j in col..cols {
                        let t = mul(factor, matrix[rank][j], modulus);
                        matrix[r][j] = sub(matrix[r][j], t, modulus);
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

}

/// Exact rank of an integer matrix via fraction-free Bareiss elimination.
pub fn rank_exact_integer(matrix: &[Vec<BigInt>]) -> usize {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for j in col + 1..cols {
                let num = &m[rank][col] * &m[r][j] - &m[r][col] * &m[rank][j];
                m[r][j] = &num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], modulus: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let inner = if rows == 0 { 0 } else { a[0].len() };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![0u64; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            let av = a[i][k];
            if av == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] = fp::add(out[i][j], fp::mul(av, b[k][j], modulus), modulus);
            }
        }
    }
    out
}

fn modulus_of(real: &Realization) -> u64 {
    match real.field {
        FieldSpec::Prime { modulus } => modulus,
        // Exact-integer realizations reuse the modular path for matrix
        // assembly; rank tests dispatch separately.
        FieldSpec::ExactInteger => u64::MAX,
    }
}

/// The controllability matrix [B AB ... A^(n-1)B], n x (n p).
pub fn controllability_matrix(real: &Realization) -> Vec<Vec<u64>> {
    assert!(
        matches!(real.field, FieldSpec::Prime { .. }),
        "modular controllability matrix requires a prime-field realization"
    );
    let modulus = modulus_of(real);
    let a = real.matrix_a();
    let mut block = real.matrix_b();
    let mut out = vec![Vec::with_capacity(real.n * real.p); real.n];
    for _ in 0..real.n {
        for (row, b_row) in out.iter_mut().zip(block.iter()) {
            row.extend(b_row.iter().copied());
        }
        block = mat_mul_mod(&a, &block, modulus);
    }
    out
}

/// The observability matrix [C; CA; ...; CA^(n-1)], (n q) x n.
pub fn observability_matrix(real: &Realization) -> Vec<Vec<u64>> {
    assert!(
        matches!(real.field, FieldSpec::Prime { .. }),
        "modular observability matrix requires a prime-field realization"
    );
    let modulus = modulus_of(real);
    let a = real.matrix_a();
    let mut block = real.matrix_c();
    let mut out = Vec::with_capacity(real.n * real.q);
    for _ in 0..real.n {
        out.extend(block.iter().cloned());
        block = mat_mul_mod(&block, &a, modulus);
    }
    out
}

/// One rank comparison; `pass` iff the defining equality holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialResult {
    pub pass: bool,
    /// rank(F C) for controllability, rank([O; F]) for observability.
    pub rank_lhs: usize,
    /// rank(F) for controllability, rank(O) for observability.
    pub rank_rhs: usize,
    /// The stacked [C; F] lost rank against rank(C) + rank(F): some target
    /// functional is a combination of outputs and needs no observer.
    pub trivial_estimation: bool,
}

/// rank(F C) = rank(F)?
pub fn output_controllability_test(real: &Realization) -> TrialResult {
    let modulus = modulus_of(real);
    let ctrb = controllability_matrix(real);
    let f = real.matrix_f();
    let mut fc = mat_mul_mod(&f, &ctrb, modulus);
    let rank_lhs = fp::rank(&mut fc, modulus);
    let mut fm = f;
    let rank_rhs = fp::rank(&mut fm, modulus);
    TrialResult {
        pass: rank_lhs == rank_rhs,
        rank_lhs,
        rank_rhs,
        trivial_estimation: false,
    }
}

/// rank([O; F]) = rank(O)? Also prechecks rank([C; F]) = rank(C) + rank(F);
/// a deficit there means some target combination is directly readable from
/// the outputs, flagged as `trivial_estimation`.
pub fn functional_observability_test(real: &Realization) -> TrialResult {
    let modulus = modulus_of(real);
    let obsv = observability_matrix(real);
    let f = real.matrix_f();

    let mut stacked_cf: Vec<Vec<u64>> = real.matrix_c();
    stacked_cf.extend(f.iter().cloned());
    let rank_cf = fp::rank(&mut stacked_cf, modulus);
    let mut cm = real.matrix_c();
    let rank_c = fp::rank(&mut cm, modulus);
    let mut fm2 = f.clone();
    let rank_f = fp::rank(&mut fm2, modulus);
    let trivial_estimation = rank_cf != rank_c + rank_f;

    let mut of: Vec<Vec<u64>> = obsv.clone();
    of.extend(f.iter().cloned());
    let rank_lhs = fp::rank(&mut of, modulus);
    let mut om = obsv;
    let rank_rhs = fp::rank(&mut om, modulus);
    TrialResult {
        pass: rank_lhs == rank_rhs,
        rank_lhs,
        rank_rhs,
        trivial_estimation,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GenericVerdict {
    GenericTrue,
    GenericFalse,
}

/// Aggregate of independent randomized trials. One success settles generic
/// truth; generic falsity requires every trial to fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub property: OracleProperty,
    pub trials: usize,
    pub successes: usize,
    pub verdict: GenericVerdict,
    /// (lhs, rhs) rank pair per trial.
    pub ranks: Vec<(usize, usize)>,
    pub trivial_estimation: bool,
}

impl OracleVerdict {
    pub fn generic_true(&self) -> bool {
        self.verdict == GenericVerdict::GenericTrue
    }
}

/// Runs `trials` independent prime-field realizations of the system and
/// tests the requested rank property on each.
pub fn generic_test(
    system: &StructuredSystem,
    property: OracleProperty,
    trials: usize,
    seed_base: u64,
) -> Result<OracleVerdict, OracleError> {
    generic_test_capped(system, property, trials, seed_base, DEFAULT_STATE_CAP)
}

pub fn generic_test_capped(
    system: &StructuredSystem,
    property: OracleProperty,
    trials: usize,
    seed_base: u64,
    cap: usize,
) -> Result<OracleVerdict, OracleError> {
    if trials == 0 {
        return Err(OracleError::InvalidTrials);
    }
    if system.state_count() > cap {
        return Err(OracleError::CapExceeded {
            n: system.state_count(),
            cap,
        });
    }
    let mut successes = 0;
    let mut ranks = Vec::with_capacity(trials);
    let mut trivial = false;
    for t in 0..trials {
        let real = realize(system, seed_base.wrapping_add(t as u64));
        let result = match property {
            OracleProperty::OutputControllability => output_controllability_test(&real),
            OracleProperty::FunctionalObservability => functional_observability_test(&real),
        };
        if result.pass {
            successes += 1;
        }
        trivial |= result.trivial_estimation;
        ranks.push((result.rank_lhs, result.rank_rhs));
    }
    let verdict = if successes >= 1 {
        GenericVerdict::GenericTrue
    } else {
        GenericVerdict::GenericFalse
    };
    Ok(OracleVerdict {
        property,
        trials,
        successes,
        verdict,
        ranks,
        trivial_estimation: trivial,
    })
}

/// Exact-integer (Bareiss) evaluation of a rank property, the independent
/// cross-check route for the prime-field path. Intended for small systems:
/// entries of A^(n-1) grow combinatorially.
pub fn exact_integer_test(system: &StructuredSystem, property: OracleProperty, seed: u64) -> bool {
    let real = realize_in(system, seed, FieldSpec::ExactInteger);
    let n = real.n;
    let to_big = |m: &[Vec<u64>]| -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    };
    let mul_big = |a: &[Vec<BigInt>], b: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        let rows = a.len();
        let inner = if rows == 0 { 0 } else { a[0].len() };
        let cols = if b.is_empty() { 0 } else { b[0].len() };
        let mut out = vec![vec![BigInt::zero(); cols]; rows];
        for i in 0..rows {
            for k in 0..inner {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let t = &a[i][k] * &b[k][j];
                    out[i][j] += t;
                }
            }
        }
        out
    };
    let a = to_big(&real.matrix_a());
    let f = to_big(&real.matrix_f());
    match property {
        OracleProperty::OutputControllability => {
            let mut block = to_big(&real.matrix_b());
            let mut ctrb: Vec<Vec<BigInt>> = vec![Vec::new(); n];
            for _ in 0..n {
                for (row, b_row) in ctrb.iter_mut().zip(block.iter()) {
                    row.extend(b_row.iter().cloned());
                }
                block = mul_big(&a, &block);
            }
            let fc = mul_big(&f, &ctrb);
            rank_exact_integer(&fc) == rank_exact_integer(&f)
        }
        OracleProperty::FunctionalObservability => {
            let mut block = to_big(&real.matrix_c());
            let mut obsv: Vec<Vec<BigInt>> = Vec::new();
            for _ in 0..n {
                obsv.extend(block.iter().cloned());
                block = mul_big(&block, &a);
            }
            let mut stacked = obsv.clone();
            stacked.extend(f.iter().cloned());
            rank_exact_integer(&stacked) == rank_exact_integer(&obsv)
        }
    }
}

/// Probabilistic certificate that the state pattern admits a diagonalizable
/// realization: a random realization whose squarefree characteristic-part
/// annihilates the matrix is diagonalizable over the algebraic closure, and
/// the property transfers to generic real realizations.
pub fn has_diagonalizable_realization(system: &StructuredSystem, seed: u64, attempts: usize) -> bool {
    let n = system.state_count();
    if n == 0 {
        return true;
    }
    let modulus = FIELD_MODULUS;
    for k in 0..attempts.max(1) {
        let real = realize(system, seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(k as u64 + 1)));
        let a = real.matrix_a();
        let chi = charpoly_mod(&a, modulus);
        let sf = squarefree_part(&chi, modulus);
        if poly_at_matrix_is_zero(&sf, &a, modulus) {
            return true;
        }
    }
    false
}

/// Characteristic polynomial by the Faddeev–LeVerrier recurrence, leading
/// coefficient first.
fn charpoly_mod(a: &[Vec<u64>], modulus: u64) -> Vec<u64> {
    let n = a.len();
    let mut coeffs = vec![1u64];
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for k in 1..=n {
        let am = mat_mul_mod(a, &m, modulus);
        let mut trace = 0u64;
        for (i, row) in am.iter().enumerate() {
            trace = fp::add(trace, row[i], modulus);
        }
        // c_k = -trace(A M_k) / k
        let ck = fp::mul(
            fp::sub(0, trace, modulus),
            fp::inv(k as u64, modulus),
            modulus,
        );
        coeffs.push(ck);
        m = am;
        for i in 0..n {
            m[i][i] = fp::add(m[i][i], ck, modulus);
        }
    }
    coeffs
}

fn poly_normalize(p: &mut Vec<u64>) {
    while p.len() > 1 && p[0] == 0 {
        p.remove(0);
    }
    if p.iter().all(|&c| c == 0) {
        p.clear();
    }
}

fn poly_rem(a: &[u64], b: &[u64], modulus: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    poly_normalize(&mut a);
    let binv = fp::inv(b[0], modulus);
    while !a.is_empty() && a.len() >= b.len() {
        let factor = fp::mul(a[0], binv, modulus);
        for (i, &bc) in b.iter().enumerate() {
            a[i] = fp::sub(a[i], fp::mul(factor, bc, modulus), modulus);
        }
        a.remove(0);
        poly_normalize(&mut a);
    }
    a
}

fn poly_gcd(a: &[u64], b: &[u64], modulus: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_normalize(&mut a);
    poly_normalize(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, modulus);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn poly_derivative(p: &[u64], modulus: u64) -> Vec<u64> {
    let deg = p.len() - 1;
    (0..deg)
        .map(|i| fp::mul(p[i], (deg - i) as u64 % modulus, modulus))
        .collect()
}

fn poly_div_exact(a: &[u64], b: &[u64], modulus: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut q = Vec::new();
    let binv = fp::inv(b[0], modulus);
    while a.len() >= b.len() {
        let factor = fp::mul(a[0], binv, modulus);
        q.push(factor);
        for (i, &bc) in b.iter().enumerate() {
            a[i] = fp::sub(a[i], fp::mul(factor, bc, modulus), modulus);
        }
        a.remove(0);
    }
    q
}

fn squarefree_part(p: &[u64], modulus: u64) -> Vec<u64> {
    if p.len() <= 1 {
        return p.to_vec();
    }
    let d = poly_derivative(p, modulus);
    let g = poly_gcd(p, &d, modulus);
    if g.len() <= 1 {
        return p.to_vec();
    }
    poly_div_exact(p, &g, modulus)
}

fn poly_at_matrix_is_zero(p: &[u64], a: &[Vec<u64>], modulus: u64) -> bool {
    let n = a.len();
    let mut m = vec![vec![0u64; n]; n];
    for &c in p {
        m = mat_mul_mod(&m, a, modulus);
        for i in 0..n {
            m[i][i] = fp::add(m[i][i], c, modulus);
        }
    }
    m.iter().all(|row| row.iter().all(|&v| v == 0))
}

/// One structural-vs-oracle disagreement, with everything needed to
/// reproduce it.
#[derive(Debug, Clone)]
pub struct SweepDisagreement {
    pub system: StructuredSystem,
    pub property: OracleProperty,
    pub structural: DecisionVerdict,
    pub oracle_generic_true: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub exhaustive_checked: usize,
    pub sampled_checked: usize,
    pub skipped_assumption: usize,
    pub exhausted_verdicts: usize,
    pub disagreements: Vec<SweepDisagreement>,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    /// Enumerate every pattern with up to this many states, one driver, one
    /// sensor, one self-edged target.
    pub exhaustive_max_states: usize,
    /// Number of random systems to sample on top of the enumeration.
    pub sampled_count: usize,
    pub sampled_max_states: usize,
    pub trials: usize,
    pub seed: u64,
    pub cap: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            exhaustive_max_states: 3,
            sampled_count: 1000,
            sampled_max_states: 6,
            trials: DEFAULT_TRIALS,
            seed: 0,
            cap: 20,
        }
    }
}

fn check_system(
    system: &StructuredSystem,
    trials: usize,
    seed: u64,
    cap: usize,
    report: &mut SweepReport,
) {
    let ctrb = is_target_controllable(system).expect("sweep systems satisfy independence");
    let ctrb_oracle = generic_test(system, OracleProperty::OutputControllability, trials, seed)
        .expect("sweep systems fit the oracle cap");
    match ctrb.verdict {
        DecisionVerdict::Exhausted => report.exhausted_verdicts += 1,
        v => {
            if (v == DecisionVerdict::True) != ctrb_oracle.generic_true() {
                report.disagreements.push(SweepDisagreement {
                    system: system.clone(),
                    property: OracleProperty::OutputControllability,
                    structural: v,
                    oracle_generic_true: ctrb_oracle.generic_true(),
                    seed,
                });
            }
        }
    }
    let obsv = is_target_observable(system, cap).expect("sweep systems satisfy independence");
    let obsv_oracle = generic_test(system, OracleProperty::FunctionalObservability, trials, seed)
        .expect("sweep systems fit the oracle cap");
    match obsv.verdict {
        DecisionVerdict::Exhausted => report.exhausted_verdicts += 1,
        v => {
            if (v == DecisionVerdict::True) != obsv_oracle.generic_true() {
                report.disagreements.push(SweepDisagreement {
                    system: system.clone(),
                    property: OracleProperty::FunctionalObservability,
                    structural: v,
                    oracle_generic_true: obsv_oracle.generic_true(),
                    seed,
                });
            }
        }
    }
}

/// Compares the structural deciders against the rank oracle. The exhaustive
/// half enumerates every pattern with n <= exhaustive_max_states, one driver,
/// one sensor, and one self-edged target. The sampled half draws random
/// systems and keeps those whose state pattern certifies a diagonalizable
/// realization (self-edges on targets alone do not suffice for the rank
/// equivalences; see the regression tests). Systems outside the population
/// are counted as skipped.
pub fn exhaustive_equivalence_sweep(config: SweepConfig) -> SweepReport {
    let mut report = SweepReport::default();

    // Exhaustive half.
    for n in 1..=config.exhaustive_max_states {
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .collect();
        for bits in 0u32..(1u32 << cells.len()) {
            let pattern: Vec<(usize, usize)> = cells
                .iter()
                .enumerate()
                .filter_map(|(k, &c)| (bits >> k & 1 == 1).then_some(c))
                .collect();
            for target in 0..n {
                if !pattern.contains(&(target, target)) {
                    continue;
                }
                for driver in 0..n {
                    for sensor in 0..n {
                        let system = StructuredSystem::build(
                            n,
                            1,
                            1,
                            1,
                            &pattern,
                            &[(driver, 0)],
                            &[(0, sensor)],
                            &[(0, target)],
                        )
                        .expect("enumerated patterns are valid");
                        check_system(&system, config.trials, config.seed, config.cap, &mut report);
                        report.exhaustive_checked += 1;
                    }
                }
            }
        }
    }

    // Sampled half.
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xa5a5_5a5a_dead_beef);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < config.sampled_count && attempts < 200 * config.sampled_count.max(1) {
        attempts += 1;
        let Some(system) = sample_random_system(&mut rng, config.sampled_max_states) else {
            continue;
        };
        debug_assert!(system.validate_assumption().verdict != AssumptionVerdict::Violated);
        if !has_diagonalizable_realization(&system, rng.gen(), 2) {
            report.skipped_assumption += 1;
            continue;
        }
        check_system(
            &system,
            config.trials,
            config.seed.wrapping_add(accepted as u64),
            config.cap,
            &mut report,
        );
        report.sampled_checked += 1;
        accepted += 1;
    }
    report
}

/// Random system with independent drivers, sensors, and targets.
pub fn sample_random_system(rng: &mut ChaCha8Rng, max_states: usize) -> Option<StructuredSystem> {
    let n = rng.gen_range(2..=max_states.max(2));
    let density = [0.15, 0.3, 0.45][rng.gen_range(0..3)];
    let mut pattern = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                pattern.push((i, j));
            }
        }
    }
    let r = rng.gen_range(1..=3.min(n));
    let mut pool: Vec<usize> = (0..n).collect();
    for i in (1..pool.len()).rev() {
        let j = rng.gen_range(0..=i);
        pool.swap(i, j);
    }
    let targets: Vec<usize> = pool.iter().copied().take(r).collect();
    let p = rng.gen_range(1..=2.min(n));
    let q = rng.gen_range(1..=2.min(n));
    let drivers: Vec<usize> = (0..p).map(|_| rng.gen_range(0..n)).collect();
    let sensors: Vec<usize> = (0..q).map(|_| rng.gen_range(0..n)).collect();
    StructuredSystem::from_parts(n, &to_edges(&pattern), &drivers, &sensors, &targets).ok()
}

fn to_edges(pattern: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pattern.iter().map(|&(i, j)| (j, i)).collect()
}
