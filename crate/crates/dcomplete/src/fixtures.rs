//! Reference tables embedded as checked-in plain-text fixtures, so
//! regressions against the published values show up as explicit diffs.

use std::sync::OnceLock;

/// The first 15 class primes of each residue class mod 4 with their
/// partial sums.
#[derive(Clone, Debug)]
pub struct Table1 {
    pub q41: Vec<u64>,
    pub s41: Vec<u64>,
    pub q43: Vec<u64>,
    pub s43: Vec<u64>,
}

/// One double-representation row: `target = sum(lhs) = sum(rhs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleRow {
    pub target: u64,
    pub lhs: Vec<u64>,
    pub rhs: Vec<u64>,
}

fn data_lines(raw: &str) -> impl Iterator<Item = &str> {
    raw.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_values(line: &str) -> Vec<u64> {
    line.split_whitespace().map(|v| v.parse().expect("fixture value")).collect()
}

fn parse_double_rows(raw: &'static str) -> Vec<DoubleRow> {
    data_lines(raw)
        .map(|line| {
            let mut parts = line.split('=');
            let target = parts.next().expect("target").parse().expect("fixture target");
            let mut side = |name: &str| -> Vec<u64> {
                parts
                    .next()
                    .unwrap_or_else(|| panic!("missing {name} side in fixture line {line:?}"))
                    .split('+')
                    .map(|v| v.parse().expect("fixture summand"))
                    .collect()
            };
            let lhs = side("lhs");
            let rhs = side("rhs");
            assert!(parts.next().is_none(), "extra field in fixture line {line:?}");
            DoubleRow { target, lhs, rhs }
        })
        .collect()
}

/// Reference class primes and partial sums (first 15 of each class).
pub fn table1() -> &'static Table1 {
    static TABLE: OnceLock<Table1> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows = std::collections::HashMap::new();
        for line in data_lines(include_str!("../fixtures/table1.txt")) {
            let (label, rest) = line.split_once(' ').expect("labelled fixture row");
            rows.insert(label.to_string(), parse_values(rest));
        }
        let mut take = |label: &str| rows.remove(label).expect("fixture row present");
        Table1 { q41: take("q41"), s41: take("s41"), q43: take("q43"), s43: take("s43") }
    })
}

/// Class-split double representations (lhs from primes 1 mod 4, rhs from
/// primes 3 mod 4).
pub fn table2() -> &'static [DoubleRow] {
    static TABLE: OnceLock<Vec<DoubleRow>> = OnceLock::new();
    TABLE.get_or_init(|| parse_double_rows(include_str!("../fixtures/table2.txt")))
}

/// Free-mode double representations over odd primes.
pub fn table3() -> &'static [DoubleRow] {
    static TABLE: OnceLock<Vec<DoubleRow>> = OnceLock::new();
    TABLE.get_or_init(|| parse_double_rows(include_str!("../fixtures/table3.txt")))
}

/// Integers with no two disjoint sums of distinct odd primes.
pub fn double_exceptional() -> &'static [u64] {
    static SET: OnceLock<Vec<u64>> = OnceLock::new();
    SET.get_or_init(|| {
        data_lines(include_str!("../fixtures/double_exceptional.txt"))
            .flat_map(|l| parse_values(l))
            .collect()
    })
}

/// Integers missing a representation in at least one of the two classes
/// mod 4 (the union of the two single-class exceptional sets).
pub fn dual_class_exceptions() -> &'static [u64] {
    static SET: OnceLock<Vec<u64>> = OnceLock::new();
    SET.get_or_init(|| {
        data_lines(include_str!("../fixtures/dual_class_exceptions.txt"))
            .flat_map(|l| parse_values(l))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_and_sum() {
        let t1 = table1();
        assert_eq!(t1.q41.len(), 15);
        assert_eq!(t1.s43[11], 460);
        for rows in [table2(), table3()] {
            for row in rows {
                assert_eq!(row.lhs.iter().sum::<u64>(), row.target, "lhs of {}", row.target);
                assert_eq!(row.rhs.iter().sum::<u64>(), row.target, "rhs of {}", row.target);
            }
        }
        assert_eq!(table2().len(), 66);
        assert_eq!(table3().len(), 36);
        assert_eq!(double_exceptional().len(), 19);
        assert!(dual_class_exceptions().contains(&121));
    }
}
