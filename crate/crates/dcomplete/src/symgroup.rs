//! Cycle types, element orders, and centralizer order sets in the
//! symmetric group, with a brute-force permutation oracle for small n.
//!
//! The centralizer of an element of cycle type `{l: m_l}` in S_n is the
//! direct product over l of wreath products `(cyclic of order l) wr S_{m_l}`.
//! Its element orders are therefore computable combinatorially:
//! the wreath factor for `(l, m)` realizes exactly the orders
//! `lcm_i(c_i * d_i)` over partitions `(c_1, ..., c_k)` of `m` and divisors
//! `d_i` of `l`, and a direct product realizes the lcms of one choice per
//! factor. This is what lets adjacency questions scale to n = 60, where
//! enumerating n! permutations is hopeless; the permutation oracle
//! ([`brute_force_commuting_orders`]) pins the formula to ground truth for
//! n <= 8.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Partition enumeration stays exact but the counts explode; beyond this
/// the library refuses rather than spinning for hours.
pub const MAX_PARTITION_N: u64 = 120;

/// Bound for the factorial-scale permutation oracle (8! = 40320).
pub const MAX_ORACLE_N: u64 = 8;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SymgroupError {
    #[error("n = {n} out of supported range [{min}, {max}]")]
    NOutOfRange { n: u64, min: u64, max: u64 },
    #[error("invalid cycle type: {reason}")]
    InvalidCycleType { reason: String },
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

// ---------------------------------------------------------------------------
// Cycle types
// ---------------------------------------------------------------------------

/// A partition of n with multiplicities: the conjugacy-class datum of S_n.
///
/// Stored as `(length, multiplicity)` pairs with strictly increasing
/// lengths. The element order is the lcm of the lengths present.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType {
    factors: Vec<(u64, u64)>,
}

impl CycleType {
    pub fn new(factors: Vec<(u64, u64)>) -> Result<Self, SymgroupError> {
        for &(l, m) in &factors {
            if l == 0 || m == 0 {
                return Err(SymgroupError::InvalidCycleType {
                    reason: format!("zero entry in factor ({l}, {m})"),
                });
            }
        }
        if !factors.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(SymgroupError::InvalidCycleType {
                reason: "cycle lengths must be strictly increasing".into(),
            });
        }
        if factors.is_empty() {
            return Err(SymgroupError::InvalidCycleType { reason: "empty cycle type".into() });
        }
        Ok(CycleType { factors })
    }

    /// From a list of cycle lengths in any order, e.g. `[3, 1, 3, 1]`.
    pub fn from_parts(parts: &[u64]) -> Result<Self, SymgroupError> {
        let mut mult: BTreeMap<u64, u64> = BTreeMap::new();
        for &p in parts {
            *mult.entry(p).or_insert(0) += 1;
        }
        CycleType::new(mult.into_iter().collect())
    }

    /// `(length, multiplicity)` pairs, lengths ascending.
    pub fn factors(&self) -> &[(u64, u64)] {
        &self.factors
    }

    /// The n with `sum(l * m_l) = n`.
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|&(l, m)| l * m).sum()
    }

    /// Element order: lcm of the cycle lengths present.
    pub fn order(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &(l, _)| lcm(acc, l))
    }

    pub fn multiplicity(&self, l: u64) -> u64 {
        self.factors
            .binary_search_by_key(&l, |&(len, _)| len)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Cycle lengths expanded with multiplicity, descending.
    pub fn parts(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &(l, m) in self.factors.iter().rev() {
            out.extend(std::iter::repeat(l).take(m as usize));
        }
        out
    }
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for &(l, m) in self.factors.iter().rev() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{m}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Partition enumeration
// ---------------------------------------------------------------------------

/// Visit every partition of `n` as a descending parts slice, in
/// reverse-lexicographic order: `[n]`, `[n-1, 1]`, ..., `[1, 1, ..., 1]`.
pub fn for_each_partition<F: FnMut(&[u64])>(n: u64, mut f: F) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut parts: Vec<u64> = vec![n];
    loop {
        f(&parts);
        let Some(k) = parts.iter().rposition(|&p| p > 1) else { break };
        // Decrement the rightmost part above 1, then repack everything
        // after it greedily with parts of the new size.
        let tail_sum: u64 = parts[k] + (parts.len() - k - 1) as u64;
        let v = parts[k] - 1;
        parts.truncate(k);
        let mut rem = tail_sum;
        while rem > 0 {
            let part = v.min(rem);
            parts.push(part);
            rem -= part;
        }
    }
}

/// All partitions of `n` as cycle types, reverse-lexicographic order.
///
/// Materializes p(n) values; fine through n ≈ 60, increasingly punishing
/// beyond.
pub fn partitions(n: u64) -> Result<Vec<CycleType>, SymgroupError> {
    check_n(n, MAX_PARTITION_N)?;
    let mut out = Vec::new();
    for_each_partition(n, |parts| {
        out.push(CycleType::from_parts(parts).expect("partition parts are positive"));
    });
    Ok(out)
}

fn check_n(n: u64, max: u64) -> Result<(), SymgroupError> {
    if n == 0 || n > max {
        return Err(SymgroupError::NOutOfRange { n, min: 1, max });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Order sets
// ---------------------------------------------------------------------------

/// A sorted set of element orders of some group or subgroup.
///
/// Order sets here are divisor-closed: if k is an element order, every
/// divisor of k is the order of a power of a realizing element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSet(Vec<u64>);

impl OrderSet {
    pub fn from_sorted(values: Vec<u64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        OrderSet(values)
    }

    pub fn contains(&self, k: u64) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> u64 {
        self.0.last().copied().unwrap_or(1)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn is_divisor_closed(&self) -> bool {
        self.0.iter().all(|&k| divisors(k).iter().all(|d| self.contains(*d)))
    }
}

impl FromIterator<u64> for OrderSet {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        let set: BTreeSet<u64> = iter.into_iter().collect();
        OrderSet(set.into_iter().collect())
    }
}

/// The distinct element orders of S_n: all lcms of partitions of n.
pub fn element_orders(n: u64) -> Result<OrderSet, SymgroupError> {
    check_n(n, MAX_PARTITION_N)?;
    let mut orders = BTreeSet::new();
    for_each_partition(n, |parts| {
        orders.insert(parts.iter().fold(1, |acc, &p| lcm(acc, p)));
    });
    Ok(orders.into_iter().collect())
}

/// Element orders of the wreath product `(cyclic of order l) wr S_m`:
/// `{ lcm_i(c_i * d_i) }` over partitions `(c_i)` of `m` with each `d_i` a
/// divisor of `l`. For `m = 0` the group is trivial.
pub fn wreath_order_set(l: u64, m: u64) -> OrderSet {
    if m == 0 {
        return OrderSet(vec![1]);
    }
    let divs = divisors(l);
    let mut orders: BTreeSet<u64> = BTreeSet::new();
    for_each_partition(m, |parts| {
        // Fold parts one at a time, deduplicating intermediate lcm sets.
        let mut acc: BTreeSet<u64> = BTreeSet::new();
        acc.insert(1);
        for &c in parts {
            let mut next = BTreeSet::new();
            for &x in &acc {
                for &d in &divs {
                    next.insert(lcm(x, c * d));
                }
            }
            acc = next;
        }
        orders.extend(acc);
    });
    orders.into_iter().collect()
}

/// The exact element-order set of the centralizer of an element with the
/// given cycle type: the per-factor wreath order sets combined by pairwise
/// lcm across the direct product.
pub fn centralizer_orders(t: &CycleType) -> OrderSet {
    let mut acc: BTreeSet<u64> = BTreeSet::new();
    acc.insert(1);
    for &(l, m) in t.factors() {
        let factor = wreath_order_set(l, m);
        let mut next = BTreeSet::new();
        for &x in &acc {
            for w in factor.iter() {
                next.insert(lcm(x, w));
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Permutation oracle
// ---------------------------------------------------------------------------

/// cycle lengths of an image array, as a cycle type.
fn cycle_type_of(perm: &[usize]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parts.push(len);
    }
    CycleType::from_parts(&parts).expect("nonempty permutation")
}

/// A canonical representative of a cycle type: consecutive cycles
/// `(0 1 ... l-1)(l ...)...`, as an image array.
fn representative(t: &CycleType) -> Vec<usize> {
    let n = t.degree() as usize;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut base = 0usize;
    for &(l, m) in t.factors() {
        for _ in 0..m {
            let l = l as usize;
            for i in 0..l {
                perm[base + i] = base + (i + 1) % l;
            }
            base += l;
        }
    }
    perm
}

/// Composition convention: right-to-left, `(a ∘ b)(x) = a(b(x))`.
#[cfg(test)]
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn commutes(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|x| a[b[x]] == b[a[x]])
}

/// Every unordered pair of element orders realized by commuting
/// permutations in S_n, computed by enumerating one representative per
/// conjugacy class and every permutation commuting with it. Ground truth
/// for the wreath-product formula; factorial cost, so n <= 8.
pub fn brute_force_commuting_orders(n: u64) -> Result<BTreeSet<(u64, u64)>, SymgroupError> {
    check_n(n, MAX_ORACLE_N)?;
    let mut pairs = BTreeSet::new();
    let types = partitions(n)?;
    let mut all_perms = Vec::new();
    heaps_permutations((0..n as usize).collect(), &mut all_perms);
    for t in &types {
        let rep = representative(t);
        let a = t.order();
        for p in &all_perms {
            if commutes(&rep, p) {
                let b = cycle_type_of(p).order();
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    Ok(pairs)
}

fn heaps_permutations(mut items: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let n = items.len();
    let mut c = vec![0usize; n];
    out.push(items.clone());
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Partition counts by the pentagonal-number recurrence, as an
    /// independent check on the enumerator.
    fn partition_counts(n_max: usize) -> Vec<u64> {
        let mut p = vec![0u64; n_max + 1];
        p[0] = 1;
        for n in 1..=n_max {
            let mut total: i64 = 0;
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 as usize > n && g2 as usize > n {
                    break;
                }
                let sign = if k % 2 == 0 { -1 } else { 1 };
                if g1 as usize <= n {
                    total += sign * p[n - g1 as usize] as i64;
                }
                if g2 as usize <= n {
                    total += sign * p[n - g2 as usize] as i64;
                }
                k += 1;
            }
            p[n] = total as u64;
        }
        p
    }

    #[test]
    fn partition_counts_match_recurrence() {
        let expected = partition_counts(30);
        for n in 1..=30u64 {
            assert_eq!(partitions(n).unwrap().len() as u64, expected[n as usize], "p({n})");
        }
        assert_eq!(expected[4], 5);
        assert_eq!(expected[9], 30);
    }

    #[test]
    fn partition_order_is_reverse_lex() {
        let mut seen = Vec::new();
        for_each_partition(4, |p| seen.push(p.to_vec()));
        assert_eq!(
            seen,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
    }

    #[test]
    fn partitions_of_one() {
        let ps = partitions(1).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].factors(), &[(1, 1)]);
        assert!(partitions(0).is_err());
        assert!(partitions(121).is_err());
    }

    #[test]
    fn cycle_type_basics() {
        let t = CycleType::from_parts(&[3, 1, 4, 1]).unwrap();
        assert_eq!(t.degree(), 9);
        assert_eq!(t.order(), 12);
        assert_eq!(t.multiplicity(1), 2);
        assert_eq!(t.parts(), vec![4, 3, 1, 1]);
        assert_eq!(t.to_string(), "4 3 1^2");
        assert!(CycleType::new(vec![(2, 1), (2, 1)]).is_err());
        assert!(CycleType::new(vec![(0, 1)]).is_err());
        assert!(CycleType::new(vec![]).is_err());
    }

    #[test]
    fn element_orders_small() {
        assert_eq!(element_orders(4).unwrap().as_slice(), &[1, 2, 3, 4]);
        assert_eq!(element_orders(5).unwrap().as_slice(), &[1, 2, 3, 4, 5, 6]);
        assert!(element_orders(7).unwrap().contains(12));
    }

    #[test]
    fn landau_values_match_reference_table() {
        // Maximal element order of S_n for n = 1..=30.
        let landau: [u64; 30] = [
            1, 2, 3, 4, 6, 6, 12, 15, 20, 30, 30, 60, 60, 84, 105, 140, 210, 210, 420, 420, 420,
            420, 840, 840, 1260, 1260, 1540, 2310, 2520, 4620,
        ];
        for (i, &g) in landau.iter().enumerate() {
            assert_eq!(element_orders(i as u64 + 1).unwrap().max(), g, "n = {}", i + 1);
        }
    }

    #[test]
    fn wreath_and_centralizer_reference_sets() {
        // 5-cycle in S5: centralizer is the cyclic group it generates.
        let t = CycleType::from_parts(&[5]).unwrap();
        assert_eq!(centralizer_orders(&t).as_slice(), &[1, 5]);

        // 5-cycle in S7: direct product with S2 on the two fixed points.
        let t = CycleType::from_parts(&[5, 1, 1]).unwrap();
        assert_eq!(centralizer_orders(&t).as_slice(), &[1, 2, 5, 10]);

        // Two 2-cycles in S4: the dihedral centralizer of order 8.
        let t = CycleType::from_parts(&[2, 2]).unwrap();
        assert_eq!(centralizer_orders(&t).as_slice(), &[1, 2, 4]);

        assert_eq!(wreath_order_set(1, 0).as_slice(), &[1]);
        // C_1 wr S_m is plain S_m.
        assert_eq!(wreath_order_set(1, 5), element_orders(5).unwrap());
    }

    #[test]
    fn order_sets_divisor_closed_and_contain_own_order() {
        for n in 1..=15u64 {
            for t in partitions(n).unwrap() {
                let set = centralizer_orders(&t);
                assert!(set.contains(t.order()), "order of {t} missing from its centralizer");
                assert!(set.is_divisor_closed(), "not divisor closed for {t}");
            }
        }
    }

    #[test]
    fn oracle_pairs_for_tiny_groups() {
        let pairs = brute_force_commuting_orders(2).unwrap();
        assert_eq!(pairs.into_iter().collect::<Vec<_>>(), vec![(1, 1), (1, 2), (2, 2)]);

        // In S5, an order-5 element commutes only with powers of itself.
        let pairs = brute_force_commuting_orders(5).unwrap();
        for b in 1..=6u64 {
            let has = pairs.contains(&(5u64.min(b), 5u64.max(b)));
            assert_eq!(has, b == 1 || b == 5, "pair (5, {b})");
        }

        assert!(brute_force_commuting_orders(9).is_err());
    }

    #[test]
    fn oracle_agrees_with_wreath_formula() {
        for n in 2..=6u64 {
            let oracle = brute_force_commuting_orders(n).unwrap();
            let mut formula = BTreeSet::new();
            for t in partitions(n).unwrap() {
                let a = t.order();
                for b in centralizer_orders(&t).iter() {
                    formula.insert((a.min(b), a.max(b)));
                }
            }
            assert_eq!(formula, oracle, "n = {n}");
        }
    }

    #[test]
    fn composition_is_right_to_left() {
        // a = (0 1), b = (1 2): (a ∘ b)(1) = a(2) = 2, (b ∘ a)(1) = b(0) = 0.
        let a = vec![1, 0, 2];
        let b = vec![0, 2, 1];
        assert_eq!(compose(&a, &b), vec![1, 2, 0]);
        assert_eq!(compose(&b, &a), vec![2, 0, 1]);
        assert!(!commutes(&a, &b));
    }

    #[test]
    fn divisors_ascending() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }
}
