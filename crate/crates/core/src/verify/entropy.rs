//! Joint count tables and exact zero tests for conditional entropy and mutual
//! information.
//!
//! Pass/fail decisions only compare integer counts. The bit values in
//! [`Measure::bits`] are for display.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// Whether an information quantity is exactly zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Zero,
    Positive,
}

impl Exactness {
    pub fn is_zero(self) -> bool {
        self == Exactness::Zero
    }
}

/// An information quantity: exact zero flag plus its value in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measure {
    pub exact: Exactness,
    pub bits: f64,
}

/// Counts `c(x, y)` of a label `x` together with an outcome `y`. Each row is
/// kept as a sorted list of `(outcome, count)` pairs with positive counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JointCounts {
    rows: BTreeMap<u64, Vec<(u64, u64)>>,
}

impl JointCounts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table from a dense matrix: `counts[x][y]`.
    pub fn from_matrix(counts: &[Vec<u64>]) -> Self {
        let mut t = Self::new();
        for (x, row) in counts.iter().enumerate() {
            for (y, &c) in row.iter().enumerate() {
                t.add(x as u64, y as u64, c);
            }
        }
        t
    }

    pub fn add(&mut self, label: u64, outcome: u64, count: u64) {
        if count == 0 {
            return;
        }
        let row = self.rows.entry(label).or_default();
        match row.binary_search_by_key(&outcome, |&(y, _)| y) {
            Ok(i) => row[i].1 += count,
            Err(i) => row.insert(i, (outcome, count)),
        }
    }

    /// Adds one observation per element of `outcomes` under `label`.
    pub fn add_observations(&mut self, label: u64, mut outcomes: Vec<u64>) {
        outcomes.sort_unstable();
        let mut runs: Vec<(u64, u64)> = Vec::new();
        for y in outcomes {
            match runs.last_mut() {
                Some((last, c)) if *last == y => *c += 1,
                _ => runs.push((y, 1)),
            }
        }
        if self.rows.get(&label).is_none_or(|r| r.is_empty()) {
            if !runs.is_empty() {
                self.rows.insert(label, runs);
            }
        } else {
            for (y, c) in runs {
                self.add(label, y, c);
            }
        }
    }

    /// Merges another table into this one.
    pub fn merge(&mut self, other: JointCounts) {
        for (x, row) in other.rows {
            for (y, c) in row {
                self.add(x, y, c);
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.rows.values().flatten().map(|&(_, c)| c).sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, label: u64) -> &[(u64, u64)] {
        self.rows.get(&label).map_or(&[], |r| r.as_slice())
    }

    fn column_sums(&self) -> HashMap<u64, u64> {
        let mut cols = HashMap::new();
        for &(y, c) in self.rows.values().flatten() {
            *cols.entry(y).or_insert(0) += c;
        }
        cols
    }

    /// Zero iff every outcome occurs under a single label, i.e. the label
    /// is a function of the outcome.
    pub fn label_determined(&self) -> Result<Exactness> {
        self.nonempty()?;
        let mut owner: HashMap<u64, u64> = HashMap::new();
        for (&x, row) in &self.rows {
            for &(y, _) in row {
                if *owner.entry(y).or_insert(x) != x {
                    return Ok(Exactness::Positive);
                }
            }
        }
        Ok(Exactness::Zero)
    }

    /// Zero iff all rows are proportional, i.e. the outcome is independent
    /// of the label.
    pub fn independent(&self) -> Result<Exactness> {
        self.nonempty()?;
        let mut rows = self.rows.values();
        let first = rows.next().expect("nonempty");
        let s0 = u128::from(first.iter().map(|&(_, c)| c).sum::<u64>());
        for row in rows {
            let s = u128::from(row.iter().map(|&(_, c)| c).sum::<u64>());
            let same = row.len() == first.len()
                && row
                    .iter()
                    .zip(first)
                    .all(|(&(y, c), &(y0, c0))| y == y0 && u128::from(c) * s0 == u128::from(c0) * s);
            if !same {
                return Ok(Exactness::Positive);
            }
        }
        Ok(Exactness::Zero)
    }

    fn nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyTable)
        } else {
            Ok(())
        }
    }
}

/// `H(X|Y)` in bits, with `X` the label and `Y` the outcome.
pub fn conditional_entropy(t: &JointCounts) -> Result<Measure> {
    let exact = t.label_determined()?;
    let n = t.total() as f64;
    let cols = t.column_sums();
    let bits: f64 = t
        .rows
        .values()
        .flatten()
        .map(|&(y, c)| c as f64 / n * (cols[&y] as f64 / c as f64).log2())
        .sum();
    Ok(Measure {
        exact,
        bits: if exact.is_zero() { 0.0 } else { bits.max(0.0) },
    })
}

/// `I(X;Y)` in bits.
pub fn mutual_information(t: &JointCounts) -> Result<Measure> {
    let exact = t.independent()?;
    let n = t.total() as f64;
    let cols = t.column_sums();
    let bits: f64 = t
        .rows
        .values()
        .map(|row| {
            let rs: u64 = row.iter().map(|&(_, c)| c).sum();
            row.iter()
                .map(|&(y, c)| {
                    let c = c as f64;
                    c / n * (c * n / (rs as f64 * cols[&y] as f64)).log2()
                })
                .sum::<f64>()
        })
        .sum();
    Ok(Measure {
        exact,
        bits: if exact.is_zero() { 0.0 } else { bits.max(0.0) },
    })
}
