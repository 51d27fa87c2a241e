//! Partitions, their Young diagrams and per-cell hook statistics.
//!
//! Cells are 1-based `(row, col)` pairs in English notation: row 1 is the top
//! row, column 1 the leftmost column.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, Count};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails when the parts
    /// increase anywhere or a zero sits between positive parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::domain(format!("zero part inside {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The single-row shape `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n]).expect("a single part is a partition")
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of nonzero rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Length of row `i` (1-based); zero beyond the last row.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of column `j` (1-based), i.e. `λ'_j`.
    pub fn col_len(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.parts.iter().take_while(|&&p| p >= j).count()
    }

    pub fn contains(&self, x: Cell) -> bool {
        x.row >= 1 && x.col >= 1 && x.col <= self.row_len(x.row)
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    /// All cells sorted by column, then row.
    pub fn cells_column_major(&self) -> Vec<Cell> {
        let width = self.row_len(1);
        (1..=width).flat_map(|j| (1..=self.col_len(j)).map(move |i| Cell::new(i, j))).collect()
    }

    /// Every partition of `n`, in reverse lexicographic order of parts.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition::new(cur.clone()).unwrap());
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    fn require(&self, x: Cell) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::domain(format!("cell {x} is not in shape {self}")))
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses a comma-separated list such as `5,4,2,1,1,1`; the empty string
    /// is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::parse(format!("bad part {p:?} in {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::parse(e.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A cell `(row, col)`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Taxicab distance from the top-left corner.
    pub fn height(self) -> usize {
        self.row + self.col - 2
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.row, self.col].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [row, col] = <[usize; 2]>::deserialize(d)?;
        Ok(Cell { row, col })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellStats {
    pub arm: usize,
    pub leg: usize,
    pub coarm: usize,
    pub coleg: usize,
    pub hook: usize,
    pub height: usize,
}

pub fn conjugate(p: &Partition) -> Partition {
    let parts = (1..=p.row_len(1)).map(|i| p.col_len(i)).collect();
    Partition::new(parts).expect("column lengths are weakly decreasing")
}

pub fn cell_stats(p: &Partition, x: Cell) -> Result<CellStats> {
    p.require(x)?;
    let arm = p.row_len(x.row) - x.col;
    let leg = p.col_len(x.col) - x.row;
    let coarm = x.col - 1;
    let coleg = x.row - 1;
    Ok(CellStats { arm, leg, coarm, coleg, hook: arm + leg + 1, height: coarm + coleg })
}

/// Left/top neighbours (`minus`) and bottom/right neighbours (`plus`) inside the shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighbors {
    pub minus: Vec<Cell>,
    pub plus: Vec<Cell>,
}

pub fn neighbors(p: &Partition, x: Cell) -> Result<Neighbors> {
    p.require(x)?;
    let minus = [(x.row.wrapping_sub(1), x.col), (x.row, x.col.wrapping_sub(1))]
        .into_iter()
        .map(|(r, c)| Cell::new(r, c))
        .filter(|&c| p.contains(c))
        .collect();
    let plus =
        [Cell::new(x.row + 1, x.col), Cell::new(x.row, x.col + 1)].into_iter().filter(|&c| p.contains(c)).collect();
    Ok(Neighbors { minus, plus })
}

/// Cells weakly below and weakly right of `x`.
pub fn dropping_zone(p: &Partition, x: Cell) -> Result<Vec<Cell>> {
    p.require(x)?;
    Ok(p.cells().filter(|c| c.row >= x.row && c.col >= x.col).collect())
}

pub fn hook_product<C: Count>(p: &Partition) -> C {
    p.cells().map(|x| cell_stats(p, x).unwrap().hook).fold(C::one(), |acc, h| acc * C::from_index(h))
}

/// `f_λ` by the hook-length formula.
pub fn syt_count<C: Count>(p: &Partition) -> C {
    factorial::<C>(p.size()) / hook_product::<C>(p)
}

pub fn count_hook_functions<C: Count>(p: &Partition) -> C {
    hook_product(p)
}

/// The three closed forms of the total initial height `α_λ`: height sum,
/// hook sum, and the row-length form.
pub fn alpha_forms<C: Count>(p: &Partition) -> Result<[C; 3]> {
    let n = p.size();
    if n == 0 {
        return Err(Error::domain("alpha is undefined for the empty partition"));
    }
    let scale: C = factorial(n - 1);
    let heights: usize = p.cells().map(Cell::height).sum();
    let hooks: usize = p.cells().map(|x| cell_stats(p, x).unwrap().hook).sum();
    let rows = p
        .parts()
        .iter()
        .enumerate()
        .fold(C::zero(), |acc, (i, &len)| acc + binomial::<C>(len as i64, 2) + C::from_index(i * len));
    Ok([
        scale.clone() * C::from_index(heights),
        scale.clone() * (C::from_index(hooks) - C::from_index(n)),
        scale * rows,
    ])
}

/// `α_λ`, the total initial height of any entry summed over all fillings.
pub fn alpha<C: Count>(p: &Partition) -> Result<C> {
    let [a, b, c] = alpha_forms::<C>(p)?;
    if a != b || a != c {
        return Err(Error::invariant(format!("alpha forms disagree for {p}: {a}, {b}, {c}")));
    }
    Ok(a)
}

/// A map `H` on the cells of a shape with `-leg(x) ≤ H(x) ≤ arm(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookFunction {
    shape: Partition,
    values: Vec<i64>,
}

impl HookFunction {
    /// `values` are given in row-major cell order.
    pub fn new(shape: Partition, values: Vec<i64>) -> Result<Self> {
        if values.len() != shape.size() {
            return Err(Error::domain(format!("hook function needs {} values, got {}", shape.size(), values.len())));
        }
        for (x, &v) in shape.cells().zip(&values) {
            let st = cell_stats(&shape, x)?;
            if v < -(st.leg as i64) || v > st.arm as i64 {
                return Err(Error::domain(format!("H{x} = {v} outside [-{}, {}]", st.leg, st.arm)));
            }
        }
        Ok(HookFunction { shape, values })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn get(&self, x: Cell) -> Option<i64> {
        self.shape.cells().position(|c| c == x).map(|i| self.values[i])
    }
}
