//! Tableaux (bijective fillings of a shape) and the standard tableaux used as
//! sorting orders.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::partition::{conjugate, Cell, Partition};

/// A bijection from the cells of a shape onto `{1..n}`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    entries: Vec<usize>,
}

impl Tableau {
    /// `entries` are listed in row-major cell order.
    pub fn new(shape: Partition, entries: Vec<usize>) -> Result<Self> {
        let n = shape.size();
        if entries.len() != n {
            return Err(Error::domain(format!("shape {shape} has {n} cells but {} entries were given", entries.len())));
        }
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            if e == 0 || e > n {
                return Err(Error::domain(format!("entry {e} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::domain(format!("entry {e} occurs twice")));
            }
        }
        Ok(Tableau { shape, entries })
    }

    pub(crate) fn from_raw(shape: Partition, entries: Vec<usize>) -> Self {
        debug_assert_eq!(shape.size(), entries.len());
        Tableau { shape, entries }
    }

    /// Builds a tableau from ragged rows; the row lengths give the shape.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        Tableau::new(shape, rows.concat())
    }

    pub fn empty() -> Self {
        Tableau { shape: Partition::empty(), entries: Vec::new() }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.shape.rows());
        let mut rest = self.entries.as_slice();
        for &len in self.shape.parts() {
            let (row, tail) = rest.split_at(len);
            out.push(row.to_vec());
            rest = tail;
        }
        out
    }

    fn index(&self, x: Cell) -> Option<usize> {
        if !self.shape.contains(x) {
            return None;
        }
        Some(self.shape.parts()[..x.row - 1].iter().sum::<usize>() + x.col - 1)
    }

    pub fn get(&self, x: Cell) -> Option<usize> {
        self.index(x).map(|i| self.entries[i])
    }

    /// The cell holding `entry`.
    pub fn position(&self, entry: usize) -> Option<Cell> {
        let idx = self.entries.iter().position(|&e| e == entry)?;
        Some(self.shape.cells().nth(idx).unwrap())
    }

    /// `h'(a, T)`, the height of the cell holding `a`.
    pub fn height_of(&self, entry: usize) -> Option<usize> {
        self.position(entry).map(Cell::height)
    }

    /// True iff `T(x) ≤ min T(N⁺(x))` for every listed cell with a bottom or
    /// right neighbour. Cells outside the shape are ignored.
    pub fn is_ordered_on(&self, cells: &[Cell]) -> bool {
        cells.iter().all(|&x| {
            let Some(v) = self.get(x) else { return true };
            [Cell::new(x.row + 1, x.col), Cell::new(x.row, x.col + 1)]
                .into_iter()
                .filter_map(|y| self.get(y))
                .all(|w| v <= w)
        })
    }

    pub fn is_standard(&self) -> bool {
        let rows = self.rows();
        rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
            && rows.windows(2).all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| above < below))
    }

    /// `σ ∘ T` for the transposition `σ = (a, b)` of entries.
    pub fn swap_entries(&self, a: usize, b: usize) -> Tableau {
        let entries = self
            .entries
            .iter()
            .map(|&e| {
                if e == a {
                    b
                } else if e == b {
                    a
                } else {
                    e
                }
            })
            .collect();
        Tableau::from_raw(self.shape.clone(), entries)
    }

    pub(crate) fn require_standard(&self, what: &str) -> Result<()> {
        if self.is_standard() {
            Ok(())
        } else {
            Err(Error::domain(format!("{what} must be a standard tableau")))
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")).collect();
        f.write_str(&rows.join(" / "))
    }
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    shape: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson { shape: self.shape.parts().to_vec(), rows: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TableauJson::deserialize(d)?;
        let lens: Vec<usize> = raw.rows.iter().map(Vec::len).collect();
        if lens != raw.shape {
            return Err(serde::de::Error::custom(format!("rows have lengths {lens:?} but shape is {:?}", raw.shape)));
        }
        Tableau::from_rows(&raw.rows).map_err(serde::de::Error::custom)
    }
}

/// `U'(j, i) = U(i, j)`, a tableau of the conjugate shape.
pub fn conjugate_tableau(u: &Tableau) -> Tableau {
    let shape = conjugate(u.shape());
    let entries = shape.cells().map(|c| u.get(Cell::new(c.col, c.row)).expect("transposed cell exists")).collect();
    Tableau::from_raw(shape, entries)
}

/// The standard tableau numbering the cells column by column.
pub fn column_order(p: &Partition) -> Tableau {
    let d = Diagram::new(p);
    let mut entries = vec![0; p.size()];
    for (k, &idx) in d.column_major().iter().enumerate() {
        entries[idx] = k + 1;
    }
    Tableau::from_raw(p.clone(), entries)
}

/// The standard tableau numbering the cells row by row.
pub fn row_order(p: &Partition) -> Tableau {
    Tableau::from_raw(p.clone(), (1..=p.size()).collect())
}

/// One step of a strip order: fill the top row that still has empty cells,
/// or the leftmost column that still has empty cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StripChoice {
    Row,
    Column,
}

impl StripChoice {
    pub fn parse_seq(s: &str) -> Result<Vec<StripChoice>> {
        s.chars()
            .map(|ch| match ch {
                'R' => Ok(StripChoice::Row),
                'C' => Ok(StripChoice::Column),
                other => Err(Error::parse(format!("strip spec may only contain R and C, got {other:?}"))),
            })
            .collect()
    }

    pub fn render_seq(seq: &[StripChoice]) -> String {
        seq.iter()
            .map(|c| match c {
                StripChoice::Row => 'R',
                StripChoice::Column => 'C',
            })
            .collect()
    }
}

impl FromStr for StripChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "Row" | "row" => Ok(StripChoice::Row),
            "C" | "Column" | "column" => Ok(StripChoice::Column),
            _ => Err(Error::parse(format!("unknown strip choice {s:?}"))),
        }
    }
}

/// Greedy strip filling. Choices beyond the point where the shape is full
/// are ignored; running out of choices before that is an error.
pub fn strip_order(p: &Partition, choices: &[StripChoice]) -> Result<Tableau> {
    let (t, used) = strip_fill(p, choices);
    match t {
        Some(t) => {
            debug_assert!(used <= choices.len());
            Ok(t)
        }
        None => Err(Error::domain(format!("{} strip choices do not exhaust shape {p}", choices.len()))),
    }
}

/// Fills strips and reports how many choices were consumed.
fn strip_fill(p: &Partition, choices: &[StripChoice]) -> (Option<Tableau>, usize) {
    let d = Diagram::new(p);
    let n = p.size();
    let mut entries = vec![0usize; n];
    let mut next = 1;
    let mut used = 0;
    while next <= n {
        let Some(&choice) = choices.get(used) else {
            return (None, used);
        };
        used += 1;
        let strip: Vec<usize> = match choice {
            StripChoice::Row => {
                let row = (1..=p.rows())
                    .find(|&i| (1..=p.row_len(i)).any(|j| entries[d.index(Cell::new(i, j)).unwrap()] == 0))
                    .unwrap();
                (1..=p.row_len(row)).map(|j| d.index(Cell::new(row, j)).unwrap()).collect()
            }
            StripChoice::Column => {
                let col = (1..=p.row_len(1))
                    .find(|&j| (1..=p.col_len(j)).any(|i| entries[d.index(Cell::new(i, j)).unwrap()] == 0))
                    .unwrap();
                (1..=p.col_len(col)).map(|i| d.index(Cell::new(i, col)).unwrap()).collect()
            }
        };
        for idx in strip {
            if entries[idx] == 0 {
                entries[idx] = next;
                next += 1;
            }
        }
    }
    (Some(Tableau::from_raw(p.clone(), entries)), used)
}

/// Every distinct tableau reachable by strip filling, sorted by entries.
pub fn all_strip_orders(p: &Partition) -> Vec<Tableau> {
    strip_orders_with_choices(p).into_iter().map(|(_, t)| t).collect()
}

/// Every distinct strip-filled tableau together with the first choice
/// sequence (rows before columns) that produces it, sorted by entries.
pub fn strip_orders_with_choices(p: &Partition) -> Vec<(Vec<StripChoice>, Tableau)> {
    fn rec(p: &Partition, prefix: &mut Vec<StripChoice>, out: &mut BTreeMap<Vec<usize>, Vec<StripChoice>>) {
        match strip_fill(p, prefix) {
            (Some(t), _) => {
                out.entry(t.entries().to_vec()).or_insert_with(|| prefix.clone());
            }
            (None, _) => {
                for c in [StripChoice::Row, StripChoice::Column] {
                    prefix.push(c);
                    rec(p, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut found = BTreeMap::new();
    rec(p, &mut Vec::new(), &mut found);
    found.into_iter().map(|(e, choices)| (choices, Tableau::from_raw(p.clone(), e))).collect()
}
