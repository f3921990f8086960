//! Datasets and raw sample moments about the origin.
//!
//! Sums over observations run in ascending row order with Neumaier
//! compensation, so a given moment is bit-for-bit reproducible.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::combinatorics::SetPartition;
use crate::error::{Error, Result};

/// `N` observations of `n` real variables, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    n_rows: usize,
    n_cols: usize,
    column_names: Option<Vec<String>>,
}

impl Dataset {
    /// Builds a dataset from rows. Rows must be non-empty, equally long and finite.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n_rows = rows.len();
        if n_rows == 0 {
            return Err(Error::EmptyDataset);
        }
        let n_cols = rows[0].as_ref().len();
        if n_cols == 0 {
            return Err(Error::NoColumns);
        }
        let mut values = Vec::with_capacity(n_rows * n_cols);
        for (t, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_cols {
                return Err(Error::RaggedRow {
                    row: t + 1,
                    found: row.len(),
                    expected: n_cols,
                });
            }
            values.extend_from_slice(row);
        }
        Self::from_row_major(values, n_rows, n_cols)
    }

    /// Builds a dataset from columns of equal length.
    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        let n_cols = columns.len();
        if n_cols == 0 {
            return Err(Error::NoColumns);
        }
        let n_rows = columns[0].as_ref().len();
        if n_rows == 0 {
            return Err(Error::EmptyDataset);
        }
        for (i, col) in columns.iter().enumerate() {
            if col.as_ref().len() != n_rows {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    found: col.as_ref().len(),
                    expected: n_rows,
                });
            }
        }
        let values = (0..n_rows)
            .flat_map(|t| columns.iter().map(move |c| c.as_ref()[t]))
            .collect();
        Self::from_row_major(values, n_rows, n_cols)
    }

    pub fn from_row_major(values: Vec<f64>, n_rows: usize, n_cols: usize) -> Result<Self> {
        if n_rows == 0 {
            return Err(Error::EmptyDataset);
        }
        if n_cols == 0 {
            return Err(Error::NoColumns);
        }
        if values.len() != n_rows * n_cols {
            return Err(Error::RaggedRow {
                row: values.len() / n_cols + 1,
                found: values.len() % n_cols,
                expected: n_cols,
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / n_cols + 1,
                col: pos % n_cols + 1,
            });
        }
        Ok(Self {
            values,
            n_rows,
            n_cols,
            column_names: None,
        })
    }

    pub fn with_column_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n_cols {
            return Err(Error::ColumnNameCount {
                expected: self.n_cols,
                found: names.len(),
            });
        }
        self.column_names = Some(names);
        Ok(self)
    }

    /// Number of observations, `N`.
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    /// Number of variables, `n`.
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn column_names(&self) -> Option<&[String]> {
        self.column_names.as_deref()
    }

    pub fn row(&self, t: usize) -> &[f64] {
        &self.values[t * self.n_cols..(t + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n_cols)
    }

    /// Column `i` (0-based) as a fresh vector.
    pub fn column(&self, i: usize) -> Vec<f64> {
        self.rows().map(|r| r[i]).collect()
    }

    /// A new dataset made of the given rows (0-based, repetition allowed).
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(rows.len() * self.n_cols);
        for &t in rows {
            values.extend_from_slice(self.row(t));
        }
        let mut out = Self::from_row_major(values, rows.len(), self.n_cols)?;
        out.column_names = self.column_names.clone();
        Ok(out)
    }

    /// Subtracts each column's sample mean.
    pub fn centered(&self) -> Self {
        let means: Vec<f64> = (0..self.n_cols)
            .map(|i| {
                let mut acc = NeumaierSum::default();
                for r in self.rows() {
                    acc.add(r[i]);
                }
                acc.total() / self.n_rows as f64
            })
            .collect();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(p, v)| v - means[p % self.n_cols])
            .collect();
        Self {
            values,
            ..self.clone()
        }
    }

    /// Hash of the shape and the exact bit patterns of every entry.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.n_rows.hash(&mut h);
        self.n_cols.hash(&mut h);
        for v in &self.values {
            v.to_bits().hash(&mut h);
        }
        h.finish()
    }
}

/// Sorted multiset of 1-based variable indices, e.g. `[1,1,2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexMultiset {
    indices: Vec<usize>,
}

impl IndexMultiset {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i == 0) {
            return Err(Error::InvalidIndex {
                index: bad,
                n_vars: 0,
            });
        }
        indices.sort_unstable();
        Ok(Self { indices })
    }

    /// `[i; k]`, the univariate multiset of order `k`.
    pub fn repeated(index: usize, k: usize) -> Result<Self> {
        Self::new(vec![index; k])
    }

    /// `[1, 2, .., k]`.
    pub fn distinct(k: usize) -> Result<Self> {
        Self::new((1..=k).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The order `k`.
    pub fn order(&self) -> usize {
        self.indices.len()
    }

    /// Errors unless every index lies in `1..=n_vars`.
    pub fn check(&self, n_vars: usize) -> Result<()> {
        match self.indices.iter().find(|&&i| i > n_vars) {
            Some(&index) => Err(Error::InvalidIndex { index, n_vars }),
            None => Ok(()),
        }
    }

    /// `[i_j | j ∈ positions]` for a non-empty bit mask of 0-based positions.
    pub fn sub_multiset(&self, mask: u32) -> IndexMultiset {
        let indices = self
            .indices
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .map(|(_, &i)| i)
            .collect();
        IndexMultiset { indices }
    }

    /// `[i_j | j ∈ block]` for 0-based positions.
    pub fn select(&self, block: &[usize]) -> IndexMultiset {
        let mut indices: Vec<usize> = block.iter().map(|&j| self.indices[j]).collect();
        indices.sort_unstable();
        IndexMultiset { indices }
    }
}

impl fmt::Display for IndexMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Raw sample moment `(1/N) Σ_t Π_j x_{t,i_j}`.
pub fn raw_sample_moment(data: &Dataset, idx: &IndexMultiset) -> Result<f64> {
    idx.check(data.n_cols)?;
    Ok(moment_unchecked(data, idx.indices()))
}

fn moment_unchecked(data: &Dataset, indices: &[usize]) -> f64 {
    let mut acc = NeumaierSum::default();
    for row in data.rows() {
        let mut prod = 1.0;
        for &i in indices {
            prod *= row[i - 1];
        }
        acc.add(prod);
    }
    acc.total() / data.n_rows as f64
}

/// Memoized raw sample moments for every sub-multiset a k-statistic needs.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    fingerprint: u64,
    entries: HashMap<IndexMultiset, f64>,
}

impl MomentTable {
    pub fn new(data: &Dataset) -> Self {
        Self {
            fingerprint: data.fingerprint(),
            entries: HashMap::new(),
        }
    }

    /// Adds any sub-multiset of `idx` not already present.
    pub fn extend(&mut self, data: &Dataset, idx: &IndexMultiset) -> Result<()> {
        if data.fingerprint() != self.fingerprint {
            return Err(Error::TableMismatch);
        }
        idx.check(data.n_cols)?;
        for_each_sub_multiset(idx, |_, sub| {
            if !self.entries.contains_key(sub) {
                let value = moment_unchecked(data, sub.indices());
                self.entries.insert(sub.clone(), value);
            }
        });
        Ok(())
    }

    pub fn get(&self, idx: &IndexMultiset) -> Option<f64> {
        self.entries.get(idx).copied()
    }

    /// Inserts a moment directly, e.g. when evaluating formulas on supplied values.
    pub fn insert(&mut self, idx: IndexMultiset, value: f64) {
        self.entries.insert(idx, value);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn entries(&self) -> impl Iterator<Item = (&IndexMultiset, f64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }
}

/// Visits every non-empty position mask of `idx` with its sub-multiset.
fn for_each_sub_multiset(idx: &IndexMultiset, mut visit: impl FnMut(u32, &IndexMultiset)) {
    let k = idx.order();
    for mask in 1..(1u32 << k) {
        visit(mask, &idx.sub_multiset(mask));
    }
}

/// Moment table covering every block `[i_j | j ∈ B]` of every `π ∈ Π_k`.
pub fn build_moment_table(data: &Dataset, idx: &IndexMultiset) -> Result<MomentTable> {
    let mut table = MomentTable::new(data);
    table.extend(data, idx)?;
    Ok(table)
}

/// `Π_{B∈π} m̂_{[i_j | j∈B]}`, read from the table.
pub fn product_over_partition(
    table: &MomentTable,
    idx: &IndexMultiset,
    pi: &SetPartition,
) -> Result<f64> {
    if pi.ground_size() != idx.order() {
        return Err(Error::GroundSetMismatch {
            left: pi.ground_size(),
            right: idx.order(),
        });
    }
    let mut prod = 1.0;
    for block in pi.blocks() {
        let sub = idx.select(&block);
        prod *= table
            .get(&sub)
            .ok_or_else(|| Error::MissingMoment(sub.indices.clone()))?;
    }
    Ok(prod)
}

/// Sample moments addressed by position mask, `2^k` slots with slot 0 unused.
/// Each distinct sub-multiset is computed once.
#[derive(Debug, Clone)]
pub(crate) struct MaskedMoments {
    slots: Vec<f64>,
}

impl MaskedMoments {
    pub(crate) fn new(data: &Dataset, idx: &IndexMultiset) -> Result<Self> {
        idx.check(data.n_cols)?;
        let mut seen: HashMap<IndexMultiset, f64> = HashMap::new();
        let mut slots = vec![0.0; 1usize << idx.order()];
        for_each_sub_multiset(idx, |mask, sub| {
            let value = *seen
                .entry(sub.clone())
                .or_insert_with(|| moment_unchecked(data, sub.indices()));
            slots[mask as usize] = value;
        });
        Ok(Self { slots })
    }

    #[inline]
    pub(crate) fn get(&self, mask: u32) -> f64 {
        self.slots[mask as usize]
    }
}
