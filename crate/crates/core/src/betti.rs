//! Graded and multigraded Betti tables and the statistics read off them:
//! regularity, the anchor degrees `d_k`, and the `k`-th linear strands.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::monomial::Monomial;

/// `β_{i,j}` for homological degree `i` and internal degree `j`. Zero
/// entries are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BettiTable {
    n: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TableFile {
    n: usize,
    entries: Vec<EntryFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EntryFile {
    i: usize,
    j: usize,
    beta: u64,
}

impl BettiTable {
    pub fn new(n: usize) -> Self {
        BettiTable { n, entries: BTreeMap::new() }
    }

    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let mut t = BettiTable::new(n);
        for ((i, j), b) in entries {
            t.add(i, j, b);
        }
        t
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, beta: u64) {
        if beta == 0 {
            return;
        }
        *self.entries.entry((i, j)).or_insert(0) += beta;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries `((i, j), β_{i,j})` in `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn max_homological_degree(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Total Betti number `β_i = Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..(i + 1, 0)).map(|(_, &v)| v).sum()
    }

    /// Entries with `j - i = offset`, as `(i, β_{i,i+offset})`.
    pub fn diagonal(&self, offset: i64) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.entries
            .iter()
            .filter(move |(&(i, j), _)| j as i64 - i as i64 == offset)
            .map(|(&(i, _), &v)| (i, v))
    }

    /// Read an ideal's table as the table of the quotient ring:
    /// `β_{i+1,j}(S/I) = β_{i,j}(I)` plus `β_{0,0}(S/I) = 1`.
    pub fn quotient_view(&self) -> BettiTable {
        let mut t = BettiTable::new(self.n);
        if self.get(0, 0) != 0 {
            // unit ideal: S/I = 0
            return t;
        }
        t.add(0, 0, 1);
        for ((i, j), b) in self.iter() {
            t.add(i + 1, j, b);
        }
        t
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("table serializes")
    }

    fn to_file(&self) -> TableFile {
        TableFile {
            n: self.n,
            entries: self.iter().map(|((i, j), beta)| EntryFile { i, j, beta }).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Ok(BettiTable::from_entries(file.n, file.entries.into_iter().map(|e| ((e.i, e.j), e.beta))))
    }

    /// Betti diagram: columns are `i`, rows are `j - i`, zeros print as `.`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let Some(max_i) = self.max_homological_degree() else {
            out.push_str("(zero table)\n");
            return out;
        };
        let offsets: Vec<i64> = self.entries.keys().map(|&(i, j)| j as i64 - i as i64).collect();
        let (lo, hi) = (*offsets.iter().min().unwrap(), *offsets.iter().max().unwrap());
        let mut cells: Vec<Vec<String>> = Vec::new();
        cells.push((0..=max_i).map(|i| i.to_string()).collect());
        cells.push((0..=max_i).map(|i| self.total(i).to_string()).collect());
        for off in lo..=hi {
            cells.push(
                (0..=max_i)
                    .map(|i| {
                        let j = i as i64 + off;
                        let v = if j < 0 { 0 } else { self.get(i, j as usize) };
                        if v == 0 { ".".to_string() } else { v.to_string() }
                    })
                    .collect(),
            );
        }
        let width: Vec<usize> = (0..=max_i).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap()).collect();
        let mut labels = vec![String::new(), "total:".to_string()];
        labels.extend((lo..=hi).map(|o| format!("{o}:")));
        let lw = labels.iter().map(String::len).max().unwrap();
        for (label, row) in labels.iter().zip(&cells) {
            let _ = write!(out, "{label:>lw$}");
            for (c, cell) in row.iter().enumerate() {
                let _ = write!(out, " {cell:>w$}", w = width[c]);
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl fmt::Debug for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BettiTable(n={}, {{", self.n)?;
        for (k, ((i, j), v)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "b{i},{j}={v}")?;
        }
        write!(f, "}})")
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `β_{i,a}` keyed by homological degree and multidegree `a ∈ N^n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultigradedBettiTable {
    n: usize,
    entries: BTreeMap<(usize, Monomial), u64>,
}

impl MultigradedBettiTable {
    pub fn new(n: usize) -> Self {
        MultigradedBettiTable { n, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, a: Monomial, beta: u64) {
        if beta != 0 {
            *self.entries.entry((i, a)).or_insert(0) += beta;
        }
    }

    pub fn get(&self, i: usize, a: &Monomial) -> u64 {
        self.entries.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> + '_ {
        self.entries.iter().map(|((i, a), &v)| (*i, a, v))
    }

    /// Sum multidegrees by total degree.
    pub fn coarse(&self) -> BettiTable {
        let mut t = BettiTable::new(self.n);
        for ((i, a), &v) in &self.entries {
            t.add(*i, a.degree() as usize, v);
        }
        t
    }
}

impl Serialize for MultigradedBettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            i: usize,
            a: &'a Monomial,
            beta: u64,
        }
        #[derive(Serialize)]
        struct File<'a> {
            n: usize,
            entries: Vec<Entry<'a>>,
        }
        File { n: self.n, entries: self.iter().map(|(i, a, beta)| Entry { i, a, beta }).collect() }.serialize(s)
    }
}

/// `reg = max{j : β_{i,i+j} ≠ 0 for some i}`.
pub fn regularity(t: &BettiTable) -> Result<i64> {
    t.iter()
        .map(|((i, j), _)| j as i64 - i as i64)
        .max()
        .ok_or_else(|| Error::UndefinedInput("regularity of the zero table".into()))
}

/// `d_k = min({j : β_{k,k+j} ≠ 0} ∪ {reg})`.
pub fn d_k_degree(t: &BettiTable, k: usize) -> Result<i64> {
    let reg = regularity(t)?;
    check_strand_index(t, k)?;
    Ok(row_anchor(t, k).map_or(reg, |j| j.min(reg)))
}

fn row_anchor(t: &BettiTable, k: usize) -> Option<i64> {
    t.iter().filter(|((i, _), _)| *i == k).map(|((_, j), _)| j as i64 - k as i64).min()
}

fn check_strand_index(t: &BettiTable, k: usize) -> Result<()> {
    if k > t.n {
        return Err(Error::Argument(format!("strand index k = {k} exceeds n = {}", t.n)));
    }
    Ok(())
}

/// The `k`-th linear strand `β_i^{k,lin} = β_{i,i+d_k}` for `i = k..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearStrand {
    pub k: usize,
    pub d_k: i64,
    /// `(i, β_{i,i+d_k})` for `i = k..=n`.
    pub values: Vec<(usize, u64)>,
    /// Largest `i` with a nonzero value.
    pub p: Option<usize>,
    /// Whether row `k` of the table is nonempty, so `d_k` comes from it
    /// rather than from the regularity fallback.
    pub anchored: bool,
}

impl LinearStrand {
    pub fn value(&self, i: usize) -> u64 {
        self.values.iter().find(|(x, _)| *x == i).map_or(0, |(_, v)| *v)
    }

    /// No claim is made about a strand whose row `k` is empty.
    pub fn is_vacuous(&self) -> bool {
        !self.anchored || self.p.is_none()
    }
}

pub fn linear_strand(t: &BettiTable, k: usize) -> Result<LinearStrand> {
    let d_k = d_k_degree(t, k)?;
    let values: Vec<(usize, u64)> = (k..=t.n)
        .map(|i| {
            let j = i as i64 + d_k;
            (i, if j < 0 { 0 } else { t.get(i, j as usize) })
        })
        .collect();
    let p = values.iter().rev().find(|(_, v)| *v != 0).map(|(i, _)| *i);
    Ok(LinearStrand { k, d_k, values, p, anchored: row_anchor(t, k).is_some() })
}

/// All nonzero entries lie on `j = i + d`.
pub fn has_linear_resolution(t: &BettiTable, d: usize) -> bool {
    off_diagonal(t, d).is_none()
}

pub(crate) fn off_diagonal(t: &BettiTable, d: usize) -> Option<((usize, usize), u64)> {
    t.iter().find(|((i, j), _)| *j != i + d)
}

/// Entrywise `a ≤ b`.
pub fn table_leq(a: &BettiTable, b: &BettiTable) -> Result<bool> {
    check_dims(a.n, b.n)?;
    Ok(a.iter().all(|((i, j), v)| v <= b.get(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, e: &[(usize, usize, u64)]) -> BettiTable {
        BettiTable::from_entries(n, e.iter().map(|&(i, j, b)| ((i, j), b)))
    }

    fn max_ideal3() -> BettiTable {
        table(3, &[(0, 1, 3), (1, 2, 3), (2, 3, 1)])
    }

    fn square2() -> BettiTable {
        table(3, &[(0, 2, 3), (1, 3, 2)])
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(regularity(&square2()).unwrap(), 2);
        assert_eq!(regularity(&max_ideal3()).unwrap(), 1);
        assert_eq!(regularity(&table(2, &[(0, 5, 1)])).unwrap(), 5);
        assert!(matches!(regularity(&BettiTable::new(3)), Err(Error::UndefinedInput(_))));
    }

    #[test]
    fn d_k_examples() {
        assert_eq!(d_k_degree(&square2(), 1).unwrap(), 2);
        assert_eq!(d_k_degree(&square2(), 2).unwrap(), 2);
        assert_eq!(d_k_degree(&max_ideal3(), 0).unwrap(), 1);
        assert!(d_k_degree(&BettiTable::new(3), 0).is_err());
        assert!(d_k_degree(&square2(), 4).is_err());
    }

    #[test]
    fn d_k_reads_each_row_minimum() {
        let t = table(3, &[(0, 1, 1), (0, 3, 1), (1, 4, 1)]);
        assert_eq!(d_k_degree(&t, 0).unwrap(), 1);
        assert_eq!(d_k_degree(&t, 1).unwrap(), 3);
    }

    #[test]
    fn strand_examples() {
        let s = linear_strand(&max_ideal3(), 0).unwrap();
        assert_eq!(s.values, vec![(0, 3), (1, 3), (2, 1), (3, 0)]);
        assert_eq!(s.p, Some(2));
        let s = linear_strand(&table(2, &[(0, 2, 1)]), 0).unwrap();
        assert_eq!(s.value(0), 1);
        assert_eq!(s.p, Some(0));
        let s = linear_strand(&square2(), 1).unwrap();
        assert_eq!((s.value(1), s.value(2)), (2, 0));
        assert_eq!(s.p, Some(1));
        let s = linear_strand(&square2(), 2).unwrap();
        assert!(s.is_vacuous());
    }

    #[test]
    fn linear_resolution_examples() {
        assert!(has_linear_resolution(&square2(), 2));
        let t = table(2, &[(0, 2, 1), (0, 3, 1), (1, 5, 1)]);
        assert!(!has_linear_resolution(&t, 2));
        assert!(has_linear_resolution(&BettiTable::new(4), 7));
    }

    #[test]
    fn table_order() {
        let lower = square2();
        let upper = table(3, &[(0, 2, 3), (1, 3, 3), (2, 4, 1)]);
        assert!(table_leq(&lower, &upper).unwrap());
        assert!(table_leq(&upper, &upper).unwrap());
        assert!(!table_leq(&upper, &lower).unwrap());
        assert!(table_leq(&lower, &table(4, &[])).is_err());
    }

    #[test]
    fn quotient_view_shifts() {
        let q = max_ideal3().quotient_view();
        assert_eq!(q, table(3, &[(0, 0, 1), (1, 1, 3), (2, 2, 3), (3, 3, 1)]));
        assert!(table(2, &[(0, 0, 1)]).quotient_view().is_zero());
        assert_eq!(BettiTable::new(2).quotient_view(), table(2, &[(0, 0, 1)]));
    }

    #[test]
    fn json_is_sorted() {
        let t = table(3, &[(1, 3, 2), (0, 2, 3)]);
        assert_eq!(
            t.to_json(),
            r#"{"n":3,"entries":[{"i":0,"j":2,"beta":3},{"i":1,"j":3,"beta":2}]}"#
        );
        assert_eq!(BettiTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn diagram_layout() {
        let text = max_ideal3().render();
        let expected = "       0 1 2\ntotal: 3 3 1\n    1: 3 3 1\n";
        assert_eq!(text, expected);
        let text = table(3, &[(0, 2, 1), (0, 3, 1), (1, 5, 1)]).render();
        assert_eq!(text, "       0 1\ntotal: 2 1\n    2: 1 .\n    3: 1 .\n    4: . 1\n");
    }
}
