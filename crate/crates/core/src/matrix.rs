//! Sparse integer matrices in coordinate form.

use std::collections::HashMap;
use std::fmt::Write as _;

/// A sparse integer matrix with sorted, duplicate-free, nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Merges duplicate coordinates, drops zeros and sorts by `(row, col)`.
    /// Panics on out-of-range coordinates.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
        for (r, c, v) in entries {
            assert!(
                r < rows && c < cols,
                "entry ({r}, {c}) outside {rows}x{cols}"
            );
            *acc.entry((r, c)).or_insert(0) += v;
        }
        let mut entries: Vec<(usize, usize, i64)> = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        entries.sort_unstable();
        SparseIntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, 1)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(
            self.cols,
            self.rows,
            self.entries.iter().map(|&(r, c, v)| (c, r, v)),
        )
    }

    /// `self * other`. Panics on a dimension mismatch.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut out = Vec::new();
        for &(r, k, a) in &self.entries {
            for &(c, b) in &by_row[k] {
                out.push((r, c, a * b));
            }
        }
        Self::from_entries(self.rows, other.cols, out)
    }

    /// Reorders rows and columns: entry `(r, c)` moves to
    /// `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        Self::from_entries(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|&(r, c, v)| (row_perm[r], col_perm[c], v)),
        )
    }

    /// Block-diagonal assembly.
    pub fn block_diagonal(blocks: &[SparseIntMatrix]) -> Self {
        let (mut r0, mut c0) = (0, 0);
        let mut entries = Vec::new();
        for b in blocks {
            entries.extend(b.entries.iter().map(|&(r, c, v)| (r + r0, c + c0, v)));
            r0 += b.rows;
            c0 += b.cols;
        }
        Self::from_entries(r0, c0, entries)
    }

    /// Debug dump: `rows cols nnz`, then one `r c v` line per entry,
    /// 1-indexed and sorted by `(r, c)`.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.entries.len());
        for &(r, c, v) in &self.entries {
            let _ = writeln!(out, "{} {} {}", r + 1, c + 1, v);
        }
        out
    }

    /// Parses the [`dump`](Self::dump) format.
    pub fn parse_dump(text: &str) -> Option<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head: Vec<usize> = lines
            .next()?
            .split_whitespace()
            .map(|t| t.parse().ok())
            .collect::<Option<_>>()?;
        let [rows, cols, nnz] = head[..] else {
            return None;
        };
        let mut entries = Vec::with_capacity(nnz);
        for line in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = t[..] else { return None };
            let (r, c, v): (usize, usize, i64) =
                (r.parse().ok()?, c.parse().ok()?, v.parse().ok()?);
            if r == 0 || c == 0 || r > rows || c > cols {
                return None;
            }
            entries.push((r - 1, c - 1, v));
        }
        (entries.len() == nnz).then(|| Self::from_entries(rows, cols, entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_normalized() {
        let m = SparseIntMatrix::from_entries(2, 2, [(1, 1, 2), (0, 1, 1), (1, 1, -2), (0, 1, 1)]);
        assert_eq!(m.entries(), &[(0, 1, 2)]);
    }

    #[test]
    fn dump_roundtrip() {
        let m = SparseIntMatrix::from_entries(3, 2, [(0, 0, 1), (2, 1, -1), (1, 0, 2)]);
        let text = m.dump();
        assert_eq!(text, "3 2 3\n1 1 1\n2 1 2\n3 2 -1\n");
        assert_eq!(SparseIntMatrix::parse_dump(&text).unwrap(), m);
        assert!(SparseIntMatrix::parse_dump("2 2 1\n3 1 1\n").is_none());
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_entries(2, 3, [(0, 0, 1), (0, 2, 2), (1, 1, 3)]);
        let i3 = SparseIntMatrix::identity(3);
        assert_eq!(a.mul(&i3), a);
        let aat = a.mul(&a.transpose());
        assert_eq!(aat.entries(), &[(0, 0, 5), (1, 1, 9)]);
    }
}
