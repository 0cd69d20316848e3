//! Subset-sum generating polynomials, completeness certificates, and
//! representation witnesses.
//!
//! For an increasing sequence `q_1 < q_2 < ...` the polynomial
//! `f_n(x) = (1+x^{q_1})...(1+x^{q_n})` has coefficient `γ_m(n)` counting
//! the subsets of the first `n` members that sum to `m`. Multiplying by
//! `(1+x^{q_{n+1}})` gives the three-branch recurrence
//!
//! ```text
//! γ_m(n+1) = γ_m(n)                      for m < q_{n+1}
//!          = γ_m(n) + γ_{m-q_{n+1}}(n)   for q_{n+1} <= m <= S_n
//!          = γ_{m-q_{n+1}}(n)            for S_n < m <= S_{n+1}
//! ```
//!
//! [`PresenceTable`] keeps only the presence shadow (`γ_m(n) >= 1`) as
//! word-packed bitsets; that is enough for every representability question
//! and scales to sums in the hundreds of millions. [`CoefficientTable`]
//! keeps the exact counts with checked arithmetic for small prefixes.
//!
//! A [`CompletenessCertificate`] packages the two hypotheses that make a
//! class sequence complete from `k0` on: a fully-achievable coefficient
//! window at one prefix `n0`, and the gap condition `2*k0 + q(n+1) <= S(n)`
//! from `n0` onward, verified empirically to the sieve bound and propagated
//! beyond it by a doubling argument resting on an explicit
//! interval theorem (recorded in the certificate as an assumption).

use crate::bitrow::BitRow;
use crate::primes::{self, ClassSequence, PrimeClass, PrimesError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact coefficient tables refuse prefixes beyond this length; subset
/// counts up to `2^64` fit comfortably in the 128-bit accumulators used.
pub const MAX_COEFFICIENT_PREFIX: usize = 64;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SumsetError {
    #[error("sequence must be strictly increasing and positive (violated at position {position})")]
    NonIncreasing { position: usize },
    #[error("prefix {prefix} out of range (table holds prefixes up to {available})")]
    PrefixOutOfRange { prefix: usize, available: usize },
    #[error(
        "coefficient tables support at most {max} prefixes (requested {requested}); \
         use a presence table for longer prefixes"
    )]
    TooManyPrefixes { requested: usize, max: usize },
    #[error("coefficient overflow at prefix {prefix}, power {m}: wider arithmetic required")]
    Overflow { prefix: usize, m: u64 },
    #[error("empty window: need 2*k0 <= S(n0), got k0 = {k0} with S(n0) = {s_n0}")]
    EmptyWindow { k0: u64, s_n0: u64 },
    #[error("k0 must be positive")]
    ZeroK0,
    #[error("target must be positive")]
    ZeroTarget,
    #[error("target {m} exceeds the sieved bound {limit}")]
    SieveTooSmall { m: u64, limit: u64 },
    #[error("doubling q(n+1) < 2*q(n) fails at n = {index}")]
    DoublingViolated { index: usize },
    #[error("gap S(n) - q(n+1) >= 2*k0 fails at n = {index} despite doubling")]
    GapViolated { index: usize },
    #[error("class-split mode needs two disjoint residue classes (same modulus, different residues)")]
    ClassesNotDisjoint,
    #[error(transparent)]
    Primes(#[from] PrimesError),
}

fn check_increasing(sequence: &[u64]) -> Result<(), SumsetError> {
    for (i, pair) in sequence.windows(2).enumerate() {
        if pair[0] >= pair[1] {
            return Err(SumsetError::NonIncreasing { position: i + 1 });
        }
    }
    if sequence.first().is_some_and(|&q| q == 0) {
        return Err(SumsetError::NonIncreasing { position: 0 });
    }
    Ok(())
}

/// Common read surface of presence and coefficient tables, letting window
/// verification run on either.
pub trait SumTable {
    /// Number of prefixes held (a table always also holds the empty prefix 0).
    fn prefix_count(&self) -> usize;
    /// `S_n`, the n-th prefix sum.
    fn prefix_sum(&self, prefix: usize) -> u64;
    /// Whether `γ_m(prefix) >= 1`.
    fn has_sum(&self, prefix: usize, m: u64) -> bool;
}

// ---------------------------------------------------------------------------
// Presence tables
// ---------------------------------------------------------------------------

/// Per-prefix achievable-sum bitsets: bit `m` of prefix `n` is set iff some
/// subset of `{q_1, ..., q_n}` sums to `m`.
///
/// Bit 0 (the empty subset) is always set; paper-facing representability
/// queries exclude it and start at `m = 1`.
#[derive(Clone, Debug)]
pub struct PresenceTable {
    sequence: Vec<u64>,
    prefix_sums: Vec<u64>,
    rows: Vec<BitRow>,
    cap: Option<u64>,
}

/// Build exact-width presence bitsets for all prefixes up to `n_max`.
///
/// Memory is one bit per (prefix, sum) pair, so keep `n_max` modest for
/// sequences with large sums; [`PresenceTable::build_capped`] bounds the
/// tracked width instead.
pub fn build_presence(sequence: &[u64], n_max: usize) -> Result<PresenceTable, SumsetError> {
    PresenceTable::build(sequence, n_max, None)
}

impl PresenceTable {
    /// Presence bitsets over the whole sequence with sums tracked only up
    /// to `cap`. Since sums never shrink, bits `<= cap` are exact.
    pub fn build_capped(sequence: &[u64], cap: u64) -> Result<PresenceTable, SumsetError> {
        PresenceTable::build(sequence, sequence.len(), Some(cap))
    }

    fn build(sequence: &[u64], n_max: usize, cap: Option<u64>) -> Result<PresenceTable, SumsetError> {
        check_increasing(sequence)?;
        if n_max > sequence.len() {
            return Err(SumsetError::PrefixOutOfRange { prefix: n_max, available: sequence.len() });
        }
        let sequence = sequence[..n_max].to_vec();
        let mut prefix_sums = Vec::with_capacity(n_max + 1);
        prefix_sums.push(0u64);
        for &q in &sequence {
            prefix_sums.push(prefix_sums.last().unwrap() + q);
        }
        let width = |s: u64| -> usize {
            let w = match cap {
                Some(c) => s.min(c),
                None => s,
            };
            w as usize + 1
        };
        let mut rows = Vec::with_capacity(n_max + 1);
        let mut first = BitRow::zeros(width(0));
        first.set(0);
        rows.push(first);
        for (i, &q) in sequence.iter().enumerate() {
            let prev: &BitRow = &rows[i];
            let mut next = prev.widened(width(prefix_sums[i + 1]));
            next.or_shifted(prev, q as usize);
            rows.push(next);
        }
        Ok(PresenceTable { sequence, prefix_sums, rows, cap })
    }

    pub fn sequence(&self) -> &[u64] {
        &self.sequence
    }

    pub fn n_max(&self) -> usize {
        self.sequence.len()
    }

    pub fn cap(&self) -> Option<u64> {
        self.cap
    }

    /// Whether sum `m` is achievable from the first `prefix` members.
    /// Sums beyond the cap read as unachievable.
    pub fn is_achievable(&self, prefix: usize, m: u64) -> bool {
        prefix < self.rows.len() && m < self.rows[prefix].len() as u64 && self.rows[prefix].get(m as usize)
    }

    /// Achievable sums of a prefix, ascending (0 included).
    pub fn achievable_sums(&self, prefix: usize) -> Result<Vec<u64>, SumsetError> {
        if prefix >= self.rows.len() {
            return Err(SumsetError::PrefixOutOfRange { prefix, available: self.n_max() });
        }
        Ok(self.rows[prefix].iter_ones().map(|i| i as u64).collect())
    }

    /// Number of achievable sums of a prefix (0 included).
    pub fn achievable_count(&self, prefix: usize) -> Result<usize, SumsetError> {
        if prefix >= self.rows.len() {
            return Err(SumsetError::PrefixOutOfRange { prefix, available: self.n_max() });
        }
        Ok(self.rows[prefix].count_ones())
    }

    /// One subset of the full prefix summing to `m`, reconstructed by
    /// backtracking from the largest usable member downward, so the output
    /// is deterministic. Parts are returned ascending.
    pub fn witness(&self, m: u64) -> Option<Vec<u64>> {
        let full = self.n_max();
        if !self.is_achievable(full, m) {
            return None;
        }
        let mut parts = Vec::new();
        let mut rem = m;
        let mut i = full;
        while rem > 0 {
            // Members above rem cannot participate; jump straight past them.
            i = self.sequence[..i].partition_point(|&q| q <= rem);
            debug_assert!(i > 0, "achievable sum lost during backtracking");
            let q = self.sequence[i - 1];
            if self.is_achievable(i - 1, rem - q) {
                parts.push(q);
                rem -= q;
            }
            i -= 1;
        }
        parts.reverse();
        Some(parts)
    }
}

impl SumTable for PresenceTable {
    fn prefix_count(&self) -> usize {
        self.n_max()
    }

    fn prefix_sum(&self, prefix: usize) -> u64 {
        self.prefix_sums[prefix]
    }

    fn has_sum(&self, prefix: usize, m: u64) -> bool {
        self.is_achievable(prefix, m)
    }
}

// ---------------------------------------------------------------------------
// Exact coefficient tables
// ---------------------------------------------------------------------------

/// Exact coefficients `γ_m(n)` for every prefix up to `n_max <= 64`.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    sequence: Vec<u64>,
    prefix_sums: Vec<u64>,
    rows: Vec<Vec<u128>>,
}

/// Build exact coefficient rows by the three-branch recurrence, with
/// checked additions: overflow is an error, never a silent wraparound.
pub fn build_coefficients(sequence: &[u64], n_max: usize) -> Result<CoefficientTable, SumsetError> {
    check_increasing(sequence)?;
    if n_max > sequence.len() {
        return Err(SumsetError::PrefixOutOfRange { prefix: n_max, available: sequence.len() });
    }
    if n_max > MAX_COEFFICIENT_PREFIX {
        return Err(SumsetError::TooManyPrefixes { requested: n_max, max: MAX_COEFFICIENT_PREFIX });
    }
    let sequence = sequence[..n_max].to_vec();
    let mut prefix_sums = Vec::with_capacity(n_max + 1);
    prefix_sums.push(0u64);
    for &q in &sequence {
        prefix_sums.push(prefix_sums.last().unwrap() + q);
    }
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![1]);
    for (i, &q) in sequence.iter().enumerate() {
        let prev = &rows[i];
        let s_next = prefix_sums[i + 1] as usize;
        let q = q as usize;
        let mut next = vec![0u128; s_next + 1];
        next[..prev.len()].copy_from_slice(prev);
        for (m, &c) in prev.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let target = m + q;
            next[target] = next[target]
                .checked_add(c)
                .ok_or(SumsetError::Overflow { prefix: i + 1, m: target as u64 })?;
        }
        rows.push(next);
    }
    Ok(CoefficientTable { sequence, prefix_sums, rows })
}

impl CoefficientTable {
    pub fn sequence(&self) -> &[u64] {
        &self.sequence
    }

    pub fn n_max(&self) -> usize {
        self.sequence.len()
    }

    /// `γ_m(prefix)`; zero beyond `S_prefix` by convention.
    pub fn coefficient(&self, prefix: usize, m: u64) -> Result<u128, SumsetError> {
        let row = self
            .rows
            .get(prefix)
            .ok_or(SumsetError::PrefixOutOfRange { prefix, available: self.n_max() })?;
        Ok(row.get(m as usize).copied().unwrap_or(0))
    }

    pub fn row(&self, prefix: usize) -> Result<&[u128], SumsetError> {
        self.rows
            .get(prefix)
            .map(|r| r.as_slice())
            .ok_or(SumsetError::PrefixOutOfRange { prefix, available: self.n_max() })
    }

    /// The stable value `Γ_m = γ_m(n)` for any prefix `n` with
    /// `q_{n+1} > m`; the recurrence stops touching coefficient `m` there.
    /// `None` when the held sequence never outgrows `m`.
    pub fn stable_coefficient(&self, m: u64) -> Option<u128> {
        let n = self.sequence.partition_point(|&q| q <= m);
        if n == self.sequence.len() {
            return None;
        }
        Some(self.rows[n].get(m as usize).copied().unwrap_or(0))
    }
}

impl SumTable for CoefficientTable {
    fn prefix_count(&self) -> usize {
        self.n_max()
    }

    fn prefix_sum(&self, prefix: usize) -> u64 {
        self.prefix_sums[prefix]
    }

    fn has_sum(&self, prefix: usize, m: u64) -> bool {
        self.rows
            .get(prefix)
            .and_then(|row| row.get(m as usize))
            .is_some_and(|&c| c > 0)
    }
}

// ---------------------------------------------------------------------------
// Window verification
// ---------------------------------------------------------------------------

/// Result of checking `γ_m(n0) >= 1` across the window
/// `k0 <= m <= S(n0) - k0`, with the nearest vanishing coefficients on
/// each side of the window when they exist.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowReport {
    pub n0: usize,
    pub k0: u64,
    pub window: (u64, u64),
    pub ok: bool,
    /// Largest `m < k0` with `γ_m(n0) = 0`.
    pub zero_below: Option<u64>,
    /// Smallest `m > S(n0) - k0` with `γ_m(n0) = 0` (at most `S(n0)`).
    pub zero_above: Option<u64>,
    /// First failing `m` inside the window, when not ok.
    pub first_gap: Option<u64>,
}

/// Check the window hypothesis at prefix `n0` for threshold `k0`, on either
/// table kind.
pub fn verify_window<T: SumTable>(table: &T, n0: usize, k0: u64) -> Result<WindowReport, SumsetError> {
    if k0 == 0 {
        return Err(SumsetError::ZeroK0);
    }
    if n0 == 0 || n0 > table.prefix_count() {
        return Err(SumsetError::PrefixOutOfRange { prefix: n0, available: table.prefix_count() });
    }
    let s = table.prefix_sum(n0);
    if 2 * k0 > s {
        return Err(SumsetError::EmptyWindow { k0, s_n0: s });
    }
    let (lo, hi) = (k0, s - k0);
    let mut first_gap = None;
    for m in lo..=hi {
        if !table.has_sum(n0, m) {
            first_gap = Some(m);
            break;
        }
    }
    let zero_below = (0..lo).rev().find(|&m| !table.has_sum(n0, m));
    let zero_above = (hi + 1..=s).find(|&m| !table.has_sum(n0, m));
    Ok(WindowReport {
        n0,
        k0,
        window: (lo, hi),
        ok: first_gap.is_none(),
        zero_below,
        zero_above,
        first_gap,
    })
}

// ---------------------------------------------------------------------------
// Gap threshold (growth argument)
// ---------------------------------------------------------------------------

/// For a sequence with `q(n+1) < 2*q(n)`, the gap `S(n) - q(n+1)` reaches
/// `2*k0` no later than index `q_1 + 2*k0 + 1` and never shrinks after.
/// Returns that threshold index and verifies the inequality for every
/// available `n` at or beyond it.
///
/// The doubling precondition is demanded on the checked range only
/// (strictly, `q(n+1) < 2*q(n)` for n at or beyond the threshold): early
/// members may grow faster, as `3, 7, ...` does, without affecting the
/// tail argument. Any violation is an error carrying the index.
pub fn lemma3_threshold(sequence: &[u64], k0: u64) -> Result<usize, SumsetError> {
    check_increasing(sequence)?;
    if sequence.is_empty() {
        return Err(SumsetError::PrefixOutOfRange { prefix: 1, available: 0 });
    }
    let threshold = (sequence[0] + 2 * k0 + 1) as usize;
    for n in threshold..sequence.len() {
        // 1-based: q(n) = sequence[n - 1], so this is q(n+1) < 2*q(n).
        if sequence[n] >= 2 * sequence[n - 1] {
            return Err(SumsetError::DoublingViolated { index: n });
        }
    }
    let mut s: u64 = sequence.iter().take(threshold.min(sequence.len())).sum();
    for n in threshold..sequence.len() {
        // here s = S(n), 1-based, and sequence[n] = q(n+1)
        if (s as i64) - (sequence[n] as i64) < 2 * k0 as i64 {
            return Err(SumsetError::GapViolated { index: n });
        }
        s += sequence[n];
    }
    Ok(threshold)
}

// ---------------------------------------------------------------------------
// Completeness certificates
// ---------------------------------------------------------------------------

/// The checked evidence that every integer `m >= k0` is a sum of distinct
/// members of a class sequence.
///
/// `valid` requires all of: the window at `n0` fully achievable, the gap
/// condition `2*k0 + q(n+1) <= S(n)` on the whole checked range, and the
/// doubling `q(n+2) <= 2*q(n+1)` that propagates the gap. Everything is
/// verified up to the recorded bounds; beyond them the certificate relies
/// on the analytic interval theorem recorded in `analytic_tail`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompletenessCertificate {
    pub class: PrimeClass,
    pub k0: u64,
    pub n0: usize,
    pub sieve_limit: u64,
    pub check_limit: u64,
    pub window: (u64, u64),
    pub window_ok: bool,
    pub boundary_zero_below: Option<u64>,
    pub boundary_zero_above: Option<u64>,
    /// `S(n0) - q(n0+1)`, the induction base.
    pub gap_base: i64,
    /// Minimum of `S(n) - q(n+1)` over the checked range (must be `>= 2*k0`).
    pub gap_min: i64,
    pub gap_checked: (usize, usize),
    pub gap_ok: bool,
    pub doubling_checked: (usize, usize),
    pub doubling_ok: bool,
    pub analytic_tail_assumed: bool,
    pub analytic_tail: String,
    pub failure: Option<String>,
    pub valid: bool,
}

/// Adapter exposing a single presence row as a [`SumTable`], so window
/// checks do not require materializing every prefix.
struct SingleRow {
    row: BitRow,
    n0: usize,
    s_n0: u64,
}

impl SumTable for SingleRow {
    fn prefix_count(&self) -> usize {
        self.n0
    }

    fn prefix_sum(&self, _prefix: usize) -> u64 {
        self.s_n0
    }

    fn has_sum(&self, _prefix: usize, m: u64) -> bool {
        self.row.get(m as usize)
    }
}

/// The presence row of one prefix, built with rolling storage.
fn presence_row(sequence: &[u64], n: usize) -> BitRow {
    let mut sum = 0usize;
    let mut row = BitRow::zeros(1);
    row.set(0);
    for &q in &sequence[..n] {
        sum += q as usize;
        let mut next = row.widened(sum + 1);
        next.or_shifted(&row, q as usize);
        row = next;
    }
    row
}

/// Assemble a completeness certificate for `(k0, n0)` over a sieved class
/// sequence, checking conditions with primes up to `check_limit`.
///
/// Failed conditions mark the certificate invalid (with the failing index
/// recorded); errors are reserved for inputs the check cannot even run on.
pub fn certify_completeness(
    seq: &ClassSequence,
    k0: u64,
    n0: usize,
    check_limit: u64,
) -> Result<CompletenessCertificate, SumsetError> {
    if k0 == 0 {
        return Err(SumsetError::ZeroK0);
    }
    if seq.limit() < check_limit {
        return Err(SumsetError::SieveTooSmall { m: check_limit, limit: seq.limit() });
    }
    let primes = seq.primes();
    let n_check = primes.partition_point(|&q| q <= check_limit);
    if n0 == 0 || n0 + 1 > n_check {
        return Err(SumsetError::PrefixOutOfRange { prefix: n0 + 1, available: n_check });
    }

    let window = verify_window(
        &SingleRow {
            row: presence_row(primes, n0),
            n0,
            s_n0: seq.partial_sum(n0)?,
        },
        n0,
        k0,
    )?;

    let mut failure: Option<String> = None;
    if !window.ok {
        failure = Some(format!(
            "window: γ_m(n0) = 0 at m = {} inside [{}, {}]",
            window.first_gap.unwrap(),
            window.window.0,
            window.window.1
        ));
    }

    // Gap condition 2*k0 + q(n+1) <= S(n) for n in [n0, n_check - 1].
    let gap_base = primes::partial_sum_gap(seq, n0)?;
    let mut gap_min = i64::MAX;
    let mut gap_ok = true;
    for n in n0..n_check {
        let gap = seq.partial_sum(n)? as i64 - primes[n] as i64;
        gap_min = gap_min.min(gap);
        if gap < 2 * k0 as i64 && gap_ok {
            gap_ok = false;
            if failure.is_none() {
                failure = Some(format!("gap: S({n}) - q({}) = {gap} < 2*k0", n + 1));
            }
        }
    }
    let gap_checked = (n0, n_check - 1);

    // Doubling q(n+2) <= 2*q(n+1) for n in [n0, n_check - 2] propagates the
    // gap condition one index at a time.
    let doubling_checked = (n0, n_check.saturating_sub(2));
    let mut doubling_ok = true;
    for n in n0..n_check.saturating_sub(1) {
        if primes[n + 1] > 2 * primes[n] {
            doubling_ok = false;
            if failure.is_none() {
                failure = Some(format!("doubling: q({}) > 2*q({})", n + 2, n + 1));
            }
            break;
        }
    }

    let valid = window.ok && gap_ok && doubling_ok;
    Ok(CompletenessCertificate {
        class: seq.class(),
        k0,
        n0,
        sieve_limit: seq.limit(),
        check_limit,
        window: window.window,
        window_ok: window.ok,
        boundary_zero_below: window.zero_below,
        boundary_zero_above: window.zero_above,
        gap_base,
        gap_min,
        gap_checked,
        gap_ok,
        doubling_checked,
        doubling_ok,
        analytic_tail_assumed: true,
        analytic_tail: format!(
            "beyond {} the doubling step relies on the explicit interval theorem: \
             for x >= 887 the interval (x, 1.048x] contains a prime in each residue \
             class 1 and 3 mod 4",
            check_limit
        ),
        failure,
        valid,
    })
}

// ---------------------------------------------------------------------------
// Representations
// ---------------------------------------------------------------------------

/// A witness that `target` is a sum of distinct class primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub target: u64,
    /// Distinct parts, ascending.
    pub parts: Vec<u64>,
    pub class: PrimeClass,
}

impl Representation {
    /// Re-validate independently of the solver: parts distinct, each a
    /// class member by trial division, an antichain under divisibility,
    /// summing to the target, with at least one part.
    pub fn validate(&self) -> Result<(), String> {
        if self.parts.is_empty() {
            return Err("representation has no parts".into());
        }
        if !self.parts.windows(2).all(|w| w[0] < w[1]) {
            return Err(format!("parts not strictly increasing: {:?}", self.parts));
        }
        for &p in &self.parts {
            if !self.class.contains(p) {
                return Err(format!("{p} is not a member of {}", self.class));
            }
        }
        for (i, &a) in self.parts.iter().enumerate() {
            for &b in &self.parts[i + 1..] {
                if b % a == 0 {
                    return Err(format!("divisibility antichain violated: {a} | {b}"));
                }
            }
        }
        let sum: u64 = self.parts.iter().sum();
        if sum != self.target {
            return Err(format!("parts sum to {sum}, target is {}", self.target));
        }
        Ok(())
    }
}

/// Reusable representability queries for one class up to a cap; builds the
/// per-prefix presence table once and answers any `m <= cap` from it.
#[derive(Debug)]
pub struct RepresentationSolver {
    class: PrimeClass,
    table: PresenceTable,
    cap: u64,
}

impl RepresentationSolver {
    pub fn new(seq: &ClassSequence, cap: u64) -> Result<Self, SumsetError> {
        if seq.limit() < cap {
            return Err(SumsetError::SieveTooSmall { m: cap, limit: seq.limit() });
        }
        let upto = seq.primes().partition_point(|&p| p <= cap);
        let table = PresenceTable::build_capped(&seq.primes()[..upto], cap)?;
        Ok(RepresentationSolver { class: seq.class(), table, cap })
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn is_representable(&self, m: u64) -> Result<bool, SumsetError> {
        if m == 0 {
            return Err(SumsetError::ZeroTarget);
        }
        if m > self.cap {
            return Err(SumsetError::SieveTooSmall { m, limit: self.cap });
        }
        Ok(self.table.is_achievable(self.table.n_max(), m))
    }

    /// A deterministic witness (largest usable prime first during
    /// backtracking), or `None` when `m` is not a sum of distinct class
    /// primes.
    pub fn represent(&self, m: u64) -> Result<Option<Representation>, SumsetError> {
        if !self.is_representable(m)? {
            return Ok(None);
        }
        let parts = self.table.witness(m).expect("bit set but no witness");
        Ok(Some(Representation { target: m, parts, class: self.class }))
    }
}

/// One-shot representability: DP over the class primes `<= m`.
pub fn represent(seq: &ClassSequence, m: u64) -> Result<Option<Representation>, SumsetError> {
    if m == 0 {
        return Err(SumsetError::ZeroTarget);
    }
    if seq.limit() < m {
        return Err(SumsetError::SieveTooSmall { m, limit: seq.limit() });
    }
    RepresentationSolver::new(seq, m)?.represent(m)
}

/// All `m <= limit` that are not sums of distinct class primes.
pub fn exceptional_set(seq: &ClassSequence, limit: u64) -> Result<Vec<u64>, SumsetError> {
    let solver = RepresentationSolver::new(seq, limit)?;
    Ok((1..=limit).filter(|&m| !solver.is_representable(m).unwrap()).collect())
}

// ---------------------------------------------------------------------------
// Double representations
// ---------------------------------------------------------------------------

/// The prime universe a free-mode double representation draws from.
///
/// Tables of double representations avoid the prime 2 (a sum containing 2
/// cannot be split off into a second odd-only sum of the same parity
/// pattern), so `OddPrimes` is the default universe; `AllPrimes` admits 2
/// for exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Universe {
    AllPrimes,
    OddPrimes,
    Class(PrimeClass),
}

impl Universe {
    pub fn primes_upto(&self, limit: u64) -> Vec<u64> {
        let all = primes::sieve_primes(limit);
        match self {
            Universe::AllPrimes => all,
            Universe::OddPrimes => all.into_iter().filter(|&p| p != 2).collect(),
            Universe::Class(c) => {
                all.into_iter().filter(|&p| c.is_all_primes() || p % c.modulus() == c.residue()).collect()
            }
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            Universe::AllPrimes => primes::is_prime(p),
            Universe::OddPrimes => p != 2 && primes::is_prime(p),
            Universe::Class(c) => c.contains(p),
        }
    }
}

impl std::fmt::Display for Universe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Universe::AllPrimes => write!(f, "all-primes"),
            Universe::OddPrimes => write!(f, "odd-primes"),
            Universe::Class(c) => write!(f, "{c}"),
        }
    }
}

/// Two disjoint sets of distinct primes with the same sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleRepresentation {
    pub target: u64,
    /// Ascending distinct primes.
    pub t1: Vec<u64>,
    pub t2: Vec<u64>,
    /// Residue-class tags in class-split mode.
    pub t1_class: Option<PrimeClass>,
    pub t2_class: Option<PrimeClass>,
}

impl DoubleRepresentation {
    /// Re-validate: each side distinct primes summing to the target, sides
    /// disjoint, class tags honored when present.
    pub fn validate(&self) -> Result<(), String> {
        for (side, parts, class) in
            [("T1", &self.t1, self.t1_class), ("T2", &self.t2, self.t2_class)]
        {
            if parts.is_empty() {
                return Err(format!("{side} is empty"));
            }
            if !parts.windows(2).all(|w| w[0] < w[1]) {
                return Err(format!("{side} not strictly increasing: {parts:?}"));
            }
            for &p in parts.iter() {
                if !primes::is_prime(p) {
                    return Err(format!("{side} contains non-prime {p}"));
                }
                if let Some(c) = class {
                    if !c.contains(p) {
                        return Err(format!("{side} member {p} not in {c}"));
                    }
                }
            }
            let sum: u64 = parts.iter().sum();
            if sum != self.target {
                return Err(format!("{side} sums to {sum}, target is {}", self.target));
            }
        }
        if self.t1.iter().any(|p| self.t2.binary_search(p).is_ok()) {
            return Err("T1 and T2 are not disjoint".into());
        }
        Ok(())
    }

    /// The relation is symmetric in the two sides.
    pub fn swapped(&self) -> DoubleRepresentation {
        DoubleRepresentation {
            target: self.target,
            t1: self.t2.clone(),
            t2: self.t1.clone(),
            t1_class: self.t2_class,
            t2_class: self.t1_class,
        }
    }
}

/// Class-split mode: one sum from each of two disjoint residue classes
/// (same modulus, different residues), found independently per class.
pub fn double_representation_split(
    m: u64,
    a: &ClassSequence,
    b: &ClassSequence,
) -> Result<Option<DoubleRepresentation>, SumsetError> {
    let (ca, cb) = (a.class(), b.class());
    if ca.modulus() != cb.modulus() || ca.residue() == cb.residue() || ca.modulus() == 1 {
        return Err(SumsetError::ClassesNotDisjoint);
    }
    let r1 = represent(a, m)?;
    let r2 = represent(b, m)?;
    Ok(match (r1, r2) {
        (Some(r1), Some(r2)) => Some(DoubleRepresentation {
            target: m,
            t1: r1.parts,
            t2: r2.parts,
            t1_class: Some(ca),
            t2_class: Some(cb),
        }),
        _ => None,
    })
}

/// Free mode: exhaustive search for two disjoint sets of distinct primes
/// from `universe` with equal sum `m`.
///
/// The first set is enumerated by depth-first search from the largest
/// prime down (include before skip), pruned by a presence table; each
/// complete candidate is checked by a fresh presence run over the
/// complement primes. First witness in that fixed order is returned, so
/// the output is deterministic.
pub fn double_representation_free(
    m: u64,
    universe: Universe,
) -> Result<Option<DoubleRepresentation>, SumsetError> {
    if m == 0 {
        return Err(SumsetError::ZeroTarget);
    }
    let primes = universe.primes_upto(m);
    Ok(free_search(m, &primes))
}

fn free_search(m: u64, primes: &[u64]) -> Option<DoubleRepresentation> {
    if primes.is_empty() {
        return None;
    }
    let table = PresenceTable::build_capped(primes, m).expect("sieved primes are increasing");
    if !table.is_achievable(primes.len(), m) {
        return None;
    }
    let mut chosen = Vec::new();
    let mut in_t1 = vec![false; primes.len()];
    dfs_t1(m, primes, &table, primes.len(), m, &mut chosen, &mut in_t1).map(|(t1, t2)| {
        DoubleRepresentation { target: m, t1, t2, t1_class: None, t2_class: None }
    })
}

fn dfs_t1(
    m: u64,
    primes: &[u64],
    table: &PresenceTable,
    i: usize,
    needed: u64,
    chosen: &mut Vec<u64>,
    in_t1: &mut [bool],
) -> Option<(Vec<u64>, Vec<u64>)> {
    if needed == 0 {
        let complement: Vec<u64> =
            primes.iter().enumerate().filter(|&(j, _)| !in_t1[j]).map(|(_, &p)| p).collect();
        let comp_table = PresenceTable::build_capped(&complement, m).ok()?;
        if comp_table.is_achievable(complement.len(), m) {
            let t2 = comp_table.witness(m).expect("bit set but no witness");
            let mut t1 = chosen.clone();
            t1.sort_unstable();
            return Some((t1, t2));
        }
        return None;
    }
    // No subset of the first i primes reaches `needed`: dead branch.
    if !table.is_achievable(i, needed) {
        return None;
    }
    let i = primes[..i].partition_point(|&q| q <= needed);
    if i == 0 {
        return None;
    }
    let p = primes[i - 1];
    chosen.push(p);
    in_t1[i - 1] = true;
    if let Some(found) = dfs_t1(m, primes, table, i - 1, needed - p, chosen, in_t1) {
        return Some(found);
    }
    chosen.pop();
    in_t1[i - 1] = false;
    dfs_t1(m, primes, table, i - 1, needed, chosen, in_t1)
}

/// All `m <= limit` with no free-mode double representation.
pub fn double_exceptional_set(universe: Universe, limit: u64) -> Result<Vec<u64>, SumsetError> {
    let primes = universe.primes_upto(limit);
    let mut out = Vec::new();
    for m in 1..=limit {
        let upto = primes.partition_point(|&p| p <= m);
        if free_search(m, &primes[..upto]).is_none() {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve_class;

    fn p41(limit: u64) -> ClassSequence {
        sieve_class(PrimeClass::new(4, 1).unwrap(), limit).unwrap()
    }

    fn p43(limit: u64) -> ClassSequence {
        sieve_class(PrimeClass::new(4, 3).unwrap(), limit).unwrap()
    }

    #[test]
    fn presence_tiny_sequences() {
        let table = build_presence(&[5, 13], 2).unwrap();
        assert_eq!(table.achievable_sums(2).unwrap(), vec![0, 5, 13, 18]);
        let table = build_presence(&[3, 7, 11], 3).unwrap();
        assert_eq!(table.achievable_sums(3).unwrap(), vec![0, 3, 7, 10, 11, 14, 18, 21]);
    }

    #[test]
    fn presence_rejects_bad_sequences() {
        assert!(matches!(
            build_presence(&[3, 3, 7], 3),
            Err(SumsetError::NonIncreasing { position: 1 })
        ));
        assert!(build_presence(&[0, 2], 2).is_err());
        assert!(matches!(
            build_presence(&[2, 3], 5),
            Err(SumsetError::PrefixOutOfRange { .. })
        ));
    }

    #[test]
    fn presence_matches_exhaustive_enumeration() {
        let seq = [2u64, 5, 9, 11, 20];
        let table = build_presence(&seq, seq.len()).unwrap();
        for n in 0..=seq.len() {
            let mut sums = std::collections::BTreeSet::new();
            for mask in 0u32..1 << n {
                let s: u64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| seq[i]).sum();
                sums.insert(s);
            }
            assert_eq!(table.achievable_sums(n).unwrap(), sums.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn presence_recurrence_shadow() {
        // bitset(n+1) = bitset(n) OR (bitset(n) << q_{n+1})
        let seq = [3u64, 4, 9, 17];
        let table = build_presence(&seq, seq.len()).unwrap();
        for n in 0..seq.len() {
            let q = seq[n];
            let s_next = table.prefix_sum(n + 1);
            for m in 0..=s_next {
                let expected =
                    table.is_achievable(n, m) || (m >= q && table.is_achievable(n, m - q));
                assert_eq!(table.is_achievable(n + 1, m), expected, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn presence_boundary_bits_for_reference_prefix() {
        let seq = p41(110);
        let table = build_presence(seq.primes(), 13).unwrap();
        assert!(!table.is_achievable(13, 121));
        assert!(table.is_achievable(13, 122));
        assert!(table.is_achievable(13, 0));
        assert!(table.is_achievable(13, table.prefix_sum(13)));
    }

    #[test]
    fn capped_presence_agrees_below_cap() {
        let seq = [2u64, 5, 9, 11, 20];
        let exact = build_presence(&seq, seq.len()).unwrap();
        let capped = PresenceTable::build_capped(&seq, 15).unwrap();
        for n in 0..=seq.len() {
            for m in 0..=15u64 {
                assert_eq!(capped.is_achievable(n, m), exact.is_achievable(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn coefficients_examples() {
        let table = build_coefficients(&[5, 13, 17], 3).unwrap();
        assert_eq!(table.coefficient(2, 18).unwrap(), 1);
        assert_eq!(table.coefficient(3, 35).unwrap(), 1);
        for n in 0..=3 {
            assert_eq!(table.coefficient(n, 0).unwrap(), 1);
        }
        // Beyond S_n the coefficient is zero by convention.
        assert_eq!(table.coefficient(1, 6).unwrap(), 0);
    }

    #[test]
    fn coefficient_row_sums_are_powers_of_two() {
        let seq = p41(110);
        let table = build_coefficients(seq.primes(), 13).unwrap();
        for n in 0..=13usize {
            let sum: u128 = table.row(n).unwrap().iter().sum();
            assert_eq!(sum, 1u128 << n);
        }
        assert!(table.coefficient(13, 122).unwrap() >= 1);
        assert_eq!(table.coefficient(13, 121).unwrap(), 0);
        assert_eq!(table.coefficient(13, 604).unwrap(), 0);
    }

    #[test]
    fn coefficient_monotone_and_stable() {
        let seq = [1u64, 2, 4, 9, 13];
        let table = build_coefficients(&seq, seq.len()).unwrap();
        for n in 0..seq.len() {
            for m in 0..=table.prefix_sum(n) {
                assert!(table.coefficient(n + 1, m).unwrap() >= table.coefficient(n, m).unwrap());
            }
        }
        // Γ_3 stabilizes once the next member exceeds 3: subsets {1,2}.
        assert_eq!(table.stable_coefficient(3), Some(1));
        assert_eq!(table.stable_coefficient(100), None);
    }

    #[test]
    fn coefficient_prefix_bound() {
        let seq: Vec<u64> = (1..=70).collect();
        assert!(matches!(
            build_coefficients(&seq, 70),
            Err(SumsetError::TooManyPrefixes { requested: 70, max: 64 })
        ));
    }

    #[test]
    fn window_reference_parameters() {
        let table41 = build_presence(p41(110).primes(), 13).unwrap();
        let report = verify_window(&table41, 13, 122).unwrap();
        assert!(report.ok);
        assert_eq!(report.window, (122, 603));
        assert_eq!(report.zero_below, Some(121));
        assert_eq!(report.zero_above, Some(604));

        let report = verify_window(&table41, 13, 121).unwrap();
        assert!(!report.ok);
        assert_eq!(report.first_gap, Some(121));

        let table43 = build_presence(p43(80).primes(), 12).unwrap();
        let report = verify_window(&table43, 12, 56).unwrap();
        assert!(report.ok);
        assert_eq!(report.window, (56, 404));
        assert_eq!(report.zero_below, Some(55));
        assert_eq!(report.zero_above, Some(405));
    }

    #[test]
    fn window_works_on_coefficient_tables_too() {
        let table = build_coefficients(p41(110).primes(), 13).unwrap();
        let report = verify_window(&table, 13, 122).unwrap();
        assert!(report.ok);
        assert_eq!(report.zero_below, Some(121));
    }

    #[test]
    fn window_preconditions() {
        let table = build_presence(&[5, 13], 2).unwrap();
        assert!(matches!(verify_window(&table, 2, 0), Err(SumsetError::ZeroK0)));
        assert!(matches!(verify_window(&table, 3, 1), Err(SumsetError::PrefixOutOfRange { .. })));
        assert!(matches!(verify_window(&table, 2, 10), Err(SumsetError::EmptyWindow { .. })));
    }

    #[test]
    fn lemma3_examples() {
        // All primes, k0 = 0: threshold q1 + 1 = 3, and S(3) - q(4) = 3 >= 0.
        let all = sieve_class(PrimeClass::ALL, 1000).unwrap();
        assert_eq!(lemma3_threshold(all.primes(), 0).unwrap(), 3);

        let seq43 = p43(10_000);
        assert_eq!(lemma3_threshold(seq43.primes(), 56).unwrap(), 116);

        assert!(matches!(
            lemma3_threshold(&[1, 2, 5], 0),
            Err(SumsetError::DoublingViolated { .. })
        ));
    }

    #[test]
    fn certificates_for_reference_parameters() {
        let seq = p41(20_000);
        let cert = certify_completeness(&seq, 122, 13, 10_000).unwrap();
        assert!(cert.valid, "certificate failure: {:?}", cert.failure);
        assert_eq!(cert.boundary_zero_below, Some(121));
        assert_eq!(cert.boundary_zero_above, Some(604));
        assert_eq!(cert.gap_base, 612); // S(13) - q(14) = 725 - 113
        assert!(cert.gap_min >= 244);

        let bad = certify_completeness(&seq, 121, 13, 10_000).unwrap();
        assert!(!bad.valid);
        assert!(bad.failure.unwrap().contains("121"));

        let seq = p43(20_000);
        let cert = certify_completeness(&seq, 56, 12, 10_000).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.boundary_zero_below, Some(55));
        assert_eq!(cert.boundary_zero_above, Some(405));
        assert!(cert.gap_min >= 112);
    }

    #[test]
    fn certificate_preconditions() {
        let seq = p41(1000);
        assert!(matches!(
            certify_completeness(&seq, 122, 13, 5000),
            Err(SumsetError::SieveTooSmall { .. })
        ));
        assert!(matches!(
            certify_completeness(&seq, 0, 13, 1000),
            Err(SumsetError::ZeroK0)
        ));
    }

    #[test]
    fn represent_reference_witnesses() {
        let seq = p41(200);
        let r = represent(&seq, 18).unwrap().unwrap();
        assert_eq!(r.parts, vec![5, 13]);
        r.validate().unwrap();

        let r = represent(&seq, 5).unwrap().unwrap();
        assert_eq!(r.parts, vec![5]);

        assert_eq!(represent(&seq, 121).unwrap(), None);
        assert!(matches!(represent(&seq, 0), Err(SumsetError::ZeroTarget)));
        assert!(matches!(represent(&seq, 500), Err(SumsetError::SieveTooSmall { .. })));
    }

    #[test]
    fn represent_agrees_with_exhaustive_oracle() {
        // 21 primes congruent 1 mod 4 below 200: 2^21 subsets is still fast.
        let seq = p41(200);
        let primes = seq.primes();
        let mut reachable = vec![false; 201];
        for mask in 0u32..1 << primes.len() {
            let s: u64 = primes
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .sum();
            if s <= 200 && mask != 0 {
                reachable[s as usize] = true;
            }
        }
        let solver = RepresentationSolver::new(&seq, 200).unwrap();
        for m in 1..=200u64 {
            assert_eq!(
                solver.is_representable(m).unwrap(),
                reachable[m as usize],
                "mismatch at m = {m}"
            );
            if let Some(r) = solver.represent(m).unwrap() {
                r.validate().unwrap();
            }
        }
    }

    #[test]
    fn exceptional_set_anchors() {
        let e = exceptional_set(&sieve_class(PrimeClass::ALL, 50).unwrap(), 10).unwrap();
        assert_eq!(e, vec![1, 4, 6]);

        let e43 = exceptional_set(&p43(1000), 1000).unwrap();
        assert_eq!(e43.last().copied(), Some(55));

        let e41 = exceptional_set(&p41(1000), 1000).unwrap();
        assert_eq!(e41.last().copied(), Some(121));
    }

    #[test]
    fn double_split_reference_row() {
        let a = p41(200);
        let b = p43(200);
        let d = double_representation_split(18, &a, &b).unwrap().unwrap();
        assert_eq!(d.t1, vec![5, 13]);
        assert_eq!(d.t2, vec![7, 11]);
        d.validate().unwrap();
        d.swapped().validate().unwrap();

        assert!(double_representation_split(4, &a, &b).unwrap().is_none());
        assert!(matches!(
            double_representation_split(18, &a, &a),
            Err(SumsetError::ClassesNotDisjoint)
        ));
    }

    #[test]
    fn double_free_reference_targets() {
        for m in [16u64, 18, 19, 20, 121] {
            let d = double_representation_free(m, Universe::OddPrimes).unwrap().unwrap();
            d.validate().unwrap();
        }
        assert!(double_representation_free(17, Universe::OddPrimes).unwrap().is_none());
        // Admitting 2 rescues 17 = 17 = 2+3+5+7.
        let d = double_representation_free(17, Universe::AllPrimes).unwrap().unwrap();
        d.validate().unwrap();
    }

    #[test]
    fn double_exceptional_small_limit() {
        assert_eq!(
            double_exceptional_set(Universe::OddPrimes, 3).unwrap(),
            vec![1, 2, 3]
        );
    }

    #[test]
    fn double_free_matches_exhaustive_oracle_small() {
        // Independent oracle: enumerate every subset pair by masks.
        let limit = 40u64;
        let primes = Universe::OddPrimes.primes_upto(limit);
        for m in 1..=limit {
            let usable: Vec<u64> = primes.iter().copied().filter(|&p| p <= m).collect();
            let k = usable.len();
            let mut found = false;
            'outer: for mask1 in 1u32..1 << k {
                let s1: u64 = (0..k).filter(|&i| mask1 >> i & 1 == 1).map(|i| usable[i]).sum();
                if s1 != m {
                    continue;
                }
                let rest = !mask1 & ((1 << k) - 1);
                let mut mask2 = rest;
                while mask2 != 0 {
                    let s2: u64 =
                        (0..k).filter(|&i| mask2 >> i & 1 == 1).map(|i| usable[i]).sum();
                    if s2 == m {
                        found = true;
                        break 'outer;
                    }
                    mask2 = (mask2 - 1) & rest;
                }
            }
            let got = double_representation_free(m, Universe::OddPrimes).unwrap();
            assert_eq!(got.is_some(), found, "mismatch at m = {m}");
            if let Some(d) = got {
                d.validate().unwrap();
            }
        }
    }
}
