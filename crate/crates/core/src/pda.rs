//! The placement delivery array value type.
//!
//! A [`Pda`] is an `f x K` grid: rows are subfile indices, columns are
//! users. A [`Cell::Star`] at `(j, k)` means user `k` caches subfile `j` of
//! every file; equal labels mark cells served by one XOR transmission.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Star,
    Label(u32),
}

impl Cell {
    pub fn is_star(self) -> bool {
        matches!(self, Cell::Star)
    }

    pub fn label(self) -> Option<u32> {
        match self {
            Cell::Star => None,
            Cell::Label(s) => Some(s),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Star => f.write_str("*"),
            Cell::Label(s) => write!(f, "{s}"),
        }
    }
}

/// Row-major rectangular array of cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pda {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
}

impl Pda {
    pub fn new(rows: usize, cols: usize, cells: Vec<Cell>) -> Result<Self> {
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return Err(Error::NotRectangular {
                rows,
                cols,
                cells: cells.len(),
            });
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn from_rows(rows: Vec<Vec<Cell>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::RaggedRows {
                line: i + 1,
                expected: cols,
                found: r.len(),
            });
        }
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cell) -> Self {
        assert!(rows > 0 && cols > 0, "empty array");
        let mut cells = Vec::with_capacity(rows * cols);
        for j in 0..rows {
            for k in 0..cols {
                cells.push(f(j, k));
            }
        }
        Self { rows, cols, cells }
    }

    /// Number of rows, the subpacketization `f`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns, the user count `K`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.cols + col]
    }

    pub fn is_star(&self, row: usize, col: usize) -> bool {
        self.get(row, col).is_star()
    }

    pub fn row(&self, row: usize) -> &[Cell] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    /// Iterates `(row, col, cell)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Cell)> + '_ {
        let cols = self.cols;
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i / cols, i % cols, c))
    }

    pub fn stars_in_col(&self, col: usize) -> usize {
        (0..self.rows).filter(|&j| self.is_star(j, col)).count()
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.cells.iter().filter_map(|c| c.label()).collect()
    }

    /// Cells carrying each label, in row-major order.
    pub fn label_positions(&self) -> BTreeMap<u32, Vec<(usize, usize)>> {
        let mut out: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (j, k, c) in self.iter() {
            if let Cell::Label(s) = c {
                out.entry(s).or_default().push((j, k));
            }
        }
        out
    }

    pub fn star_positions(&self) -> Vec<(usize, usize)> {
        self.iter()
            .filter(|(_, _, c)| c.is_star())
            .map(|(j, k, _)| (j, k))
            .collect()
    }

    /// Applies `f` to every label, leaving stars in place.
    pub fn map_labels(&self, mut f: impl FnMut(u32) -> u32) -> Pda {
        Pda {
            rows: self.rows,
            cols: self.cols,
            cells: self
                .cells
                .iter()
                .map(|&c| match c {
                    Cell::Star => Cell::Star,
                    Cell::Label(s) => Cell::Label(f(s)),
                })
                .collect(),
        }
    }

    /// Replaces every label through an injective `mapping`.
    pub fn relabel(&self, mapping: &BTreeMap<u32, u32>) -> Result<Pda> {
        let mut seen = BTreeSet::new();
        for &to in mapping.values() {
            if !seen.insert(to) {
                return Err(Error::NonInjectiveMapping(to));
            }
        }
        if let Some(s) = self.labels().into_iter().find(|s| !mapping.contains_key(s)) {
            return Err(Error::IncompleteMapping(s));
        }
        Ok(self.map_labels(|s| mapping[&s]))
    }

    /// Renames labels to `0..|S|` in order of first row-major appearance.
    pub fn canonicalize(&self) -> Pda {
        let mut next = 0u32;
        let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
        self.map_labels(|s| {
            *seen.entry(s).or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
    }

    /// True when the label set is exactly `0..|S|`.
    pub fn has_dense_labels(&self) -> bool {
        let labels = self.labels();
        labels
            .iter()
            .enumerate()
            .all(|(i, &s)| s as usize == i)
    }

    /// Shifts every label by `offset`; requires labels `0..|S|`.
    pub fn disjoint_copy(&self, offset: u32) -> Result<Pda> {
        if !self.has_dense_labels() {
            return Err(Error::NonCanonical(self.labels().len()));
        }
        Ok(self.map_labels(|s| s + offset))
    }

    /// Maps the sorted label set onto `offset..offset + |S|`, whatever the
    /// labels were.
    pub fn pack_labels(&self, offset: u32) -> Pda {
        let index: BTreeMap<u32, u32> = self
            .labels()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, offset + i as u32))
            .collect();
        self.map_labels(|s| index[&s])
    }

    pub fn transpose(&self) -> Pda {
        Pda::from_fn(self.cols, self.rows, |j, k| self.get(k, j))
    }

    /// Replaces the cell at `(row, col)`.
    pub fn with_cell(&self, row: usize, col: usize, cell: Cell) -> Pda {
        let mut out = self.clone();
        out.cells[row * self.cols + col] = cell;
        out
    }

    /// Glues a grid of blocks into one array. Blocks in a block row must
    /// share a height and blocks in a block column a width.
    pub fn assemble(blocks: &[Vec<&Pda>]) -> Result<Pda> {
        let block_rows = blocks.len();
        let block_cols = blocks.first().map_or(0, Vec::len);
        if block_rows == 0 || block_cols == 0 {
            return Err(Error::SizeMismatch("no blocks to assemble".into()));
        }
        let heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != block_cols {
                return Err(Error::SizeMismatch(format!(
                    "block row {bi} has {} blocks, expected {block_cols}",
                    row.len()
                )));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::SizeMismatch(format!(
                        "block ({bi},{bj}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[bi], widths[bj]
                    )));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut cells = Vec::with_capacity(rows * cols);
        for (bi, row) in blocks.iter().enumerate() {
            for r in 0..heights[bi] {
                for b in row {
                    cells.extend_from_slice(b.row(r));
                }
            }
        }
        Pda::new(rows, cols, cells)
    }
}

impl fmt::Display for Pda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::serialize_grid(self))
    }
}

impl std::str::FromStr for Pda {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::format::parse_grid(s)
    }
}
