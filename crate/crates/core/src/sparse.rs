//! Column-compressed sparse integer matrices.

use std::fmt::Write as _;

use crate::ring::{add_i64, mul_i64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    /// Per column: (row, value) sorted by row, no explicit zeros.
    entries: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, entries: (0..n).map(|i| vec![(i as u32, 1)]).collect() }
    }

    /// Builds from (row, col, value) triplets; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut entries: Vec<Vec<(u32, i64)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            if v != 0 {
                entries[c].push((r as u32, v));
            }
        }
        for col in entries.iter_mut() {
            normalize(col);
        }
        SparseMatrix { rows, cols, entries }
    }

    /// Builds from complete columns, each an unsorted list of (row, value).
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = columns.len();
        let mut entries = columns;
        for col in entries.iter_mut() {
            normalize(col);
            if let Some(&(r, _)) = col.last() {
                assert!((r as usize) < rows);
            }
        }
        SparseMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, c: usize) -> &[(u32, i64)] {
        &self.entries[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        match self.entries[c].binary_search_by_key(&(r as u32), |e| e.0) {
            Ok(k) => self.entries[c][k].1,
            Err(_) => 0,
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_empty())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r as usize, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v)))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut acc = vec![0i64; self.rows];
        let mut touched: Vec<u32> = Vec::new();
        let mut out = Vec::with_capacity(rhs.cols);
        for col in &rhs.entries {
            for &(k, b) in col {
                for &(r, a) in &self.entries[k as usize] {
                    if acc[r as usize] == 0 {
                        touched.push(r);
                    }
                    acc[r as usize] = add_i64(acc[r as usize], mul_i64(a, b));
                    if acc[r as usize] == 0 {
                        // keep it in `touched`; filtered below
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut c = Vec::with_capacity(touched.len());
            for &r in &touched {
                let v = acc[r as usize];
                if v != 0 {
                    c.push((r, v));
                }
                acc[r as usize] = 0;
            }
            touched.clear();
            out.push(c);
        }
        SparseMatrix { rows: self.rows, cols: rhs.cols, entries: out }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.combine(rhs, 1)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.combine(rhs, -1)
    }

    fn combine(&self, rhs: &SparseMatrix, sign: i64) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| {
                let mut c: Vec<(u32, i64)> = a.clone();
                c.extend(b.iter().map(|&(r, v)| (r, mul_i64(sign, v))));
                normalize(&mut c);
                c
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, s: i64) -> SparseMatrix {
        SparseMatrix::from_columns(
            self.rows,
            self.entries.iter().map(|c| c.iter().map(|&(r, v)| (r, mul_i64(s, v))).collect()).collect(),
        )
    }

    /// Entries reduced into `[0, p)`; zeros dropped.
    pub fn reduce_mod(&self, p: u64) -> SparseMatrix {
        SparseMatrix::from_columns(
            self.rows,
            self.entries
                .iter()
                .map(|c| c.iter().map(|&(r, v)| (r, v.rem_euclid(p as i64))).collect())
                .collect(),
        )
    }

    /// Applies a vector (as a sparse list) to the matrix.
    pub fn apply(&self, v: &[(u32, i64)]) -> Vec<(u32, i64)> {
        let mut out = Vec::new();
        for &(k, b) in v {
            for &(r, a) in &self.entries[k as usize] {
                out.push((r, mul_i64(a, b)));
            }
        }
        normalize(&mut out);
        out
    }

    /// Coordinate-list dump, one `row col value` entry per line, sorted by
    /// column then row.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# {}x{}", self.rows, self.cols).unwrap();
        for (r, c, v) in self.triplets() {
            writeln!(s, "{r} {c} {v}").unwrap();
        }
        s
    }
}

/// Sorts by row, sums duplicates and drops zeros.
pub(crate) fn normalize(col: &mut Vec<(u32, i64)>) {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for &(r, v) in col.iter() {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 = add_i64(last.1, v),
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    *col = out;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = SparseMatrix::from_triplets(2, 3, [(0, 0, 1), (1, 2, -2), (0, 2, 3)]);
        let i3 = SparseMatrix::identity(3);
        assert_eq!(a.mul(&i3), a);
        assert_eq!(SparseMatrix::identity(2).mul(&a), a);
        let b = SparseMatrix::from_triplets(3, 1, [(0, 0, 2), (2, 0, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.get(0, 0), 5);
        assert_eq!(ab.get(1, 0), -2);
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = SparseMatrix::from_triplets(1, 1, [(0, 0, 2), (0, 0, -2)]);
        assert!(a.is_zero());
        let b = SparseMatrix::from_triplets(2, 2, [(0, 1, 4)]);
        assert!(b.sub(&b).is_zero());
        assert_eq!(b.dump(), "# 2x2\n0 1 4\n");
    }
}
