//! Flat geometry of a Young diagram, precomputed once per shape.
//!
//! Cells are addressed by their row-major index `0..n`. The sorting engine and
//! the enumerators work on these indices instead of `Cell` pairs.

use crate::partition::{Cell, Partition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    shape: Partition,
    cells: Vec<Cell>,
    row_start: Vec<usize>,
    plus: Vec<Vec<usize>>,
    minus: Vec<Vec<usize>>,
    height: Vec<usize>,
    column_major: Vec<usize>,
}

impl Diagram {
    pub fn new(shape: &Partition) -> Self {
        let cells: Vec<Cell> = shape.cells().collect();
        let mut row_start = Vec::with_capacity(shape.rows() + 1);
        let mut acc = 0;
        for &len in shape.parts() {
            row_start.push(acc);
            acc += len;
        }
        row_start.push(acc);
        let mut d = Diagram {
            shape: shape.clone(),
            cells,
            row_start,
            plus: Vec::new(),
            minus: Vec::new(),
            height: Vec::new(),
            column_major: Vec::new(),
        };
        d.plus = d
            .cells
            .iter()
            .map(|c| {
                [Cell::new(c.row + 1, c.col), Cell::new(c.row, c.col + 1)]
                    .into_iter()
                    .filter_map(|y| d.index(y))
                    .collect()
            })
            .collect();
        d.minus = d
            .cells
            .iter()
            .map(|c| {
                [Cell::new(c.row.wrapping_sub(1), c.col), Cell::new(c.row, c.col.wrapping_sub(1))]
                    .into_iter()
                    .filter_map(|y| d.index(y))
                    .collect()
            })
            .collect();
        d.height = d.cells.iter().map(|c| c.height()).collect();
        d.column_major = shape.cells_column_major().into_iter().map(|c| d.index(c).unwrap()).collect();
        d
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, idx: usize) -> Cell {
        self.cells[idx]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn index(&self, c: Cell) -> Option<usize> {
        if self.shape.contains(c) {
            Some(self.row_start[c.row - 1] + c.col - 1)
        } else {
            None
        }
    }

    /// Bottom and right neighbours (`N⁺`), as cell indices.
    pub fn plus(&self, idx: usize) -> &[usize] {
        &self.plus[idx]
    }

    /// Top and left neighbours (`N⁻`), as cell indices.
    pub fn minus(&self, idx: usize) -> &[usize] {
        &self.minus[idx]
    }

    pub fn height(&self, idx: usize) -> usize {
        self.height[idx]
    }

    /// Row-major indices listed in column-wise cell order.
    pub fn column_major(&self) -> &[usize] {
        &self.column_major
    }

    /// Number of directed edge slots used by per-edge tables: two per cell,
    /// one for each possible `N⁺` neighbour.
    pub fn edge_slots(&self) -> usize {
        2 * self.size()
    }

    /// Slot of the edge between `upper` and its `N⁺` neighbour `lower`.
    pub fn edge(&self, upper: usize, lower: usize) -> Option<usize> {
        self.plus[upper].iter().position(|&y| y == lower).map(|k| 2 * upper + k)
    }
}
