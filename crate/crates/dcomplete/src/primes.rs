//! Prime generation restricted to arithmetic-progression residue classes,
//! interval (Bertrand-type) checks, and partial-sum gap facts.
//!
//! A [`PrimeClass`] `(d, r)` is the sequence of all primes `p ≡ r (mod d)`;
//! the special value `(1, 0)` denotes all primes. Sequences are produced by
//! a deterministic sieve of Eratosthenes, never by probabilistic testing,
//! so every claim below a sieve bound is unconditional.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum PrimesError {
    #[error("invalid prime class ({d}, {r}): need 0 <= r < d and gcd(d, r) = 1 for d > 1")]
    InvalidClass { d: u64, r: u64 },
    #[error("sieve limit {limit} too small (need at least {min})")]
    LimitTooSmall { limit: u64, min: u64 },
    #[error("index {index} out of sieved range (have {len} primes up to {limit})")]
    IndexOutOfRange { index: usize, len: usize, limit: u64 },
    #[error("ratio must exceed 1 (got {num}/{den})")]
    InvalidRatio { num: u64, den: u64 },
    #[error("invalid x-range [{lo}, {hi}]: need 1 <= lo <= hi")]
    InvalidRange { lo: u64, hi: u64 },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Deterministic primality by trial division. Used by validators as a route
/// independent of the sieve.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes up to `limit` inclusive, by a plain sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// An arithmetic-progression residue class of primes: the universe a
/// sequence lives in.
///
/// `(1, 0)` is the distinguished "all primes" class, so the plain sequence
/// `2, 3, 5, ...` is expressible in the same machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeClass {
    d: u64,
    r: u64,
}

impl PrimeClass {
    /// The class of all primes.
    pub const ALL: PrimeClass = PrimeClass { d: 1, r: 0 };

    pub fn new(d: u64, r: u64) -> Result<Self, PrimesError> {
        if d == 0 || r >= d || (d > 1 && gcd(d, r) != 1) {
            return Err(PrimesError::InvalidClass { d, r });
        }
        Ok(PrimeClass { d, r })
    }

    pub fn modulus(&self) -> u64 {
        self.d
    }

    pub fn residue(&self) -> u64 {
        self.r
    }

    pub fn is_all_primes(&self) -> bool {
        self.d == 1
    }

    /// Membership test: `p` belongs iff `p` is prime and, unless this is the
    /// all-primes class, `p ≡ r (mod d)`. Primality is by trial division,
    /// independent of any sieve.
    pub fn contains(&self, p: u64) -> bool {
        is_prime(p) && (self.d == 1 || p % self.d == self.r)
    }
}

impl std::fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.d == 1 {
            write!(f, "P")
        } else {
            write!(f, "P({},{})", self.d, self.r)
        }
    }
}

/// The complete increasing sequence of class primes up to a sieve bound,
/// with exact partial sums.
///
/// Indices in the paper-facing accessors are 1-based: `prime(1)` is the
/// smallest class prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSequence {
    class: PrimeClass,
    primes: Vec<u64>,
    partial_sums: Vec<u64>,
    limit: u64,
}

/// Sieve the complete ordered class sequence up to `limit`.
pub fn sieve_class(class: PrimeClass, limit: u64) -> Result<ClassSequence, PrimesError> {
    if limit < 2 {
        return Err(PrimesError::LimitTooSmall { limit, min: 2 });
    }
    let primes: Vec<u64> = sieve_primes(limit)
        .into_iter()
        .filter(|&p| class.d == 1 || p % class.d == class.r)
        .collect();
    let mut partial_sums = Vec::with_capacity(primes.len());
    let mut acc = 0u64;
    for &p in &primes {
        acc += p;
        partial_sums.push(acc);
    }
    Ok(ClassSequence { class, primes, partial_sums, limit })
}

impl ClassSequence {
    pub fn class(&self) -> PrimeClass {
        self.class
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn partial_sums(&self) -> &[u64] {
        &self.partial_sums
    }

    /// The n-th class prime `q(n)`, 1-based.
    pub fn prime(&self, n: usize) -> Result<u64, PrimesError> {
        if n == 0 || n > self.primes.len() {
            return Err(self.range_error(n));
        }
        Ok(self.primes[n - 1])
    }

    /// The n-th partial sum `S(n) = q(1) + ... + q(n)`, 1-based.
    pub fn partial_sum(&self, n: usize) -> Result<u64, PrimesError> {
        if n == 0 || n > self.partial_sums.len() {
            return Err(self.range_error(n));
        }
        Ok(self.partial_sums[n - 1])
    }

    fn range_error(&self, index: usize) -> PrimesError {
        PrimesError::IndexOutOfRange { index, len: self.primes.len(), limit: self.limit }
    }
}

/// An exact rational ratio `num/den > 1` for interval checks.
///
/// Keeping the ratio rational makes the bound test `p <= ratio * x` exact:
/// it is evaluated as `p * den <= num * x` in 128-bit arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    /// The classical Bertrand ratio 2.
    pub const DOUBLE: Ratio = Ratio { num: 2, den: 1 };

    /// The explicit interval-theorem ratio 1.048 (reduces to 131/125).
    /// Sharp at its bound 887: the first prime congruent 1 mod 4 past 887
    /// is 929, and 929/887 is just above 1.047.
    pub const TIGHT: Ratio = Ratio { num: 131, den: 125 };

    pub fn new(num: u64, den: u64) -> Result<Self, PrimesError> {
        if den == 0 || num <= den {
            return Err(PrimesError::InvalidRatio { num, den });
        }
        let g = gcd(num, den);
        Ok(Ratio { num: num / g, den: den / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// True iff `value <= self * x`, exactly.
    fn bounds(&self, value: u64, x: u64) -> bool {
        (value as u128) * (self.den as u128) <= (self.num as u128) * (x as u128)
    }

    /// Smallest integer `>= self * x` (used to size sieves).
    fn ceil_mul(&self, x: u64) -> u64 {
        (((self.num as u128) * (x as u128) + (self.den as u128) - 1) / (self.den as u128)) as u64
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Outcome of scanning `(x, ratio*x]` for class primes over an x-range.
///
/// `failures` lists exactly those integer `x` in the range with no class
/// prime in `(x, ratio*x]`; an empty list is an empirical verification of
/// the interval claim on the range. `witnesses`, when collected, maps each
/// non-failing `x` to the smallest witness prime.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntervalReport {
    pub class: PrimeClass,
    pub ratio: Ratio,
    pub x_range: (u64, u64),
    pub failures: Vec<u64>,
    pub witnesses: Option<Vec<(u64, u64)>>,
}

impl IntervalReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Scan `x` in `[x_lo, x_hi]`, sieving internally up to `ratio * x_hi`.
pub fn interval_check(
    class: PrimeClass,
    ratio: Ratio,
    x_lo: u64,
    x_hi: u64,
) -> Result<IntervalReport, PrimesError> {
    if x_lo < 1 || x_lo > x_hi {
        return Err(PrimesError::InvalidRange { lo: x_lo, hi: x_hi });
    }
    let seq = sieve_class(class, ratio.ceil_mul(x_hi).max(2))?;
    interval_check_in(&seq, ratio, x_lo, x_hi, false)
}

/// Like [`interval_check`] but against a pre-sieved sequence, optionally
/// collecting the smallest witness prime per `x`.
///
/// The scan is a single pointer sweep, O(range + sequence length).
pub fn interval_check_in(
    seq: &ClassSequence,
    ratio: Ratio,
    x_lo: u64,
    x_hi: u64,
    collect_witnesses: bool,
) -> Result<IntervalReport, PrimesError> {
    if x_lo < 1 || x_lo > x_hi {
        return Err(PrimesError::InvalidRange { lo: x_lo, hi: x_hi });
    }
    let needed = ratio.ceil_mul(x_hi);
    if seq.limit < needed {
        return Err(PrimesError::LimitTooSmall { limit: seq.limit, min: needed });
    }
    let mut failures = Vec::new();
    let mut witnesses = if collect_witnesses { Some(Vec::new()) } else { None };
    let primes = seq.primes();
    let mut idx = 0usize;
    for x in x_lo..=x_hi {
        while idx < primes.len() && primes[idx] <= x {
            idx += 1;
        }
        match primes.get(idx) {
            Some(&p) if ratio.bounds(p, x) => {
                if let Some(w) = witnesses.as_mut() {
                    w.push((x, p));
                }
            }
            _ => failures.push(x),
        }
    }
    Ok(IntervalReport { class: seq.class, ratio, x_range: (x_lo, x_hi), failures, witnesses })
}

/// The gap `S(n) - q(n+1)`, 1-based. Negative for small `n`.
pub fn partial_sum_gap(seq: &ClassSequence, n: usize) -> Result<i64, PrimesError> {
    let s = seq.partial_sum(n)?;
    let q_next = seq.prime(n + 1)?;
    Ok(s as i64 - q_next as i64)
}

/// The doubling property `q(n+2) <= 2*q(n+1)` for every `n` in
/// `[n_from, n_to]`, on a raw increasing sequence (1-based indices).
///
/// This is the inductive-step hypothesis that makes `S(n) - q(n+1)`
/// non-decreasing.
pub fn doubling_holds(seq: &[u64], n_from: usize, n_to: usize) -> Result<bool, PrimesError> {
    if n_from == 0 || n_from > n_to || n_to + 2 > seq.len() {
        return Err(PrimesError::IndexOutOfRange {
            index: n_to + 2,
            len: seq.len(),
            limit: 0,
        });
    }
    Ok((n_from..=n_to).all(|n| seq[n + 1] <= 2 * seq[n]))
}

/// [`doubling_holds`] over a sieved class sequence.
pub fn gap_monotone_check(
    seq: &ClassSequence,
    n_from: usize,
    n_to: usize,
) -> Result<bool, PrimesError> {
    if n_to + 2 > seq.len() {
        return Err(seq.range_error(n_to + 2));
    }
    doubling_holds(&seq.primes, n_from, n_to)
}
