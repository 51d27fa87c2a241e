//! The generalized Novelli–Pak–Stoyanovskii sorting algorithm.
//!
//! A standard tableau `U` fixes a linear order `x_1 ≺ … ≺ x_n` on the cells
//! (`x ≺ y` iff `U(x) < U(y)`). While the filling is not standard, the
//! algorithm takes the `≺`-largest cell `x` whose entry exceeds the smaller
//! of its bottom/right neighbours and swaps the two entries.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::partition::{Cell, Partition};
use crate::tableau::Tableau;

/// One exchange `(a, b)`, `a < b`, of a sort.
///
/// Before the step `b` sits at the active cell `x` and `a` at its bottom or
/// right neighbour `y`; afterwards they have traded places.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transposition {
    #[serde(rename = "i")]
    pub step: usize,
    #[serde(rename = "a")]
    pub small: usize,
    #[serde(rename = "b")]
    pub large: usize,
    pub x: Cell,
    pub y: Cell,
}

/// The recorded run of one sort. Intermediate tableaux are not stored; they
/// are replayed from the transpositions on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortTrace {
    order: Tableau,
    initial: Tableau,
    steps: Vec<Transposition>,
    result: Tableau,
    mu: Vec<usize>,
}

impl SortTrace {
    pub fn order(&self) -> &Tableau {
        &self.order
    }

    pub fn initial(&self) -> &Tableau {
        &self.initial
    }

    pub fn steps(&self) -> &[Transposition] {
        &self.steps
    }

    pub fn result(&self) -> &Tableau {
        &self.result
    }

    /// Number of exchanges, `r_U(T)`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `μ_U(s, T)` for `1 ≤ s ≤ n + 1`: the first step index after which the
    /// tableau is ordered on `{x_s, …, x_n}`. `μ(n + 1) = 0`.
    pub fn mu(&self, s: usize) -> usize {
        assert!((1..=self.mu.len()).contains(&s), "mu index {s} out of range");
        self.mu[s - 1]
    }

    /// `μ(1), …, μ(n + 1)`.
    pub fn mu_values(&self) -> &[usize] {
        &self.mu
    }

    /// `T_k`, replayed by applying the first `k` transpositions to the input.
    pub fn tableau_at(&self, k: usize) -> Tableau {
        self.steps[..k].iter().fold(self.initial.clone(), |t, tr| t.swap_entries(tr.small, tr.large))
    }

    /// `T_0, …, T_r`.
    pub fn tableaux(&self) -> Vec<Tableau> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.initial.clone());
        for tr in &self.steps {
            let next = out.last().unwrap().swap_entries(tr.small, tr.large);
            out.push(next);
        }
        out
    }

    /// Cells in `≺_U` order, `x_1, …, x_n`.
    pub fn cells_in_order(&self) -> Vec<Cell> {
        cells_by_order(&self.order)
    }
}

impl Serialize for SortTrace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SortTrace", 3)?;
        st.serialize_field("steps", &self.steps)?;
        st.serialize_field("mu", &self.mu)?;
        st.serialize_field("result", &self.result)?;
        st.end()
    }
}

/// The drop of one entry: its consecutive exchanges with smaller entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DropRecord {
    pub entry: usize,
    pub start_cell: Cell,
    /// Cells visited after each exchange, in order.
    pub drop_path: Vec<Cell>,
    pub max_height: usize,
}

fn cells_by_order(u: &Tableau) -> Vec<Cell> {
    let mut cells = vec![Cell::new(0, 0); u.size()];
    for (x, &e) in u.shape().cells().zip(u.entries()) {
        cells[e - 1] = x;
    }
    cells
}

/// Raw data of one step, in row-major cell indices.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RawStep {
    /// 1-based position of the active cell in `≺_U`.
    pub rank: usize,
    pub x: usize,
    pub y: usize,
    pub small: usize,
    pub large: usize,
}

/// A sorting order prepared for repeated use on one shape.
#[derive(Clone, Debug)]
pub struct Sorter {
    diagram: Diagram,
    order: Tableau,
    by_rank: Vec<usize>,
    rank: Vec<usize>,
    budget: usize,
}

impl Sorter {
    pub fn new(order: &Tableau) -> Result<Self> {
        order.require_standard("sorting order")?;
        let diagram = Diagram::new(order.shape());
        let n = order.size();
        let mut by_rank = vec![0; n];
        for (idx, &e) in order.entries().iter().enumerate() {
            by_rank[e - 1] = idx;
        }
        let rank = order.entries().to_vec();
        let budget = n * (n * n.saturating_sub(1) / 2);
        Ok(Sorter { diagram, order: order.clone(), by_rank, rank, budget })
    }

    pub fn shape(&self) -> &Partition {
        self.diagram.shape()
    }

    pub fn order(&self) -> &Tableau {
        &self.order
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    /// Row-major index of `x_k` (1-based `k`).
    pub(crate) fn cell_at_rank(&self, k: usize) -> usize {
        self.by_rank[k - 1]
    }

    fn check_shape(&self, t: &Tableau) -> Result<()> {
        if t.shape() != self.shape() {
            return Err(Error::domain(format!(
                "tableau shape {} does not match order shape {}",
                t.shape(),
                self.shape()
            )));
        }
        Ok(())
    }

    #[inline]
    fn violation(&self, buf: &[usize], c: usize) -> Option<usize> {
        let v = buf[c];
        let mut best: Option<usize> = None;
        for &y in self.diagram.plus(c) {
            if best.is_none_or(|b| buf[y] < buf[b]) {
                best = Some(y);
            }
        }
        best.filter(|&y| buf[y] < v)
    }

    /// Scans all cells from the `≺_U`-largest down.
    pub fn find_active_cell(&self, t: &Tableau) -> Result<Option<Cell>> {
        self.check_shape(t)?;
        Ok((1..=t.size())
            .rev()
            .map(|k| self.cell_at_rank(k))
            .find(|&c| self.violation(t.entries(), c).is_some())
            .map(|c| self.diagram.cell(c)))
    }

    pub fn step(&self, t: &Tableau) -> Result<(Tableau, Transposition)> {
        self.check_shape(t)?;
        let Some(x) = self.find_active_cell(t)? else {
            return Err(Error::InvalidCall("tableau is already standard".into()));
        };
        let xi = self.diagram.index(x).unwrap();
        let yi = self.violation(t.entries(), xi).unwrap();
        let (large, small) = (t.entries()[xi], t.entries()[yi]);
        let next = t.swap_entries(small, large);
        let tr = Transposition { step: 1, small, large, x, y: self.diagram.cell(yi) };
        Ok((next, tr))
    }

    /// Sorts `buf` (row-major entries) in place, reporting every exchange.
    /// Returns the number of exchanges.
    pub(crate) fn run(&self, buf: &mut [usize], mut on_step: impl FnMut(RawStep)) -> Result<usize> {
        let mut top = buf.len();
        let mut steps = 0;
        loop {
            let mut found = None;
            let mut k = top;
            while k >= 1 {
                let c = self.by_rank[k - 1];
                if let Some(y) = self.violation(buf, c) {
                    found = Some((k, c, y));
                    break;
                }
                k -= 1;
            }
            let Some((k, x, y)) = found else { break };
            let (large, small) = (buf[x], buf[y]);
            buf.swap(x, y);
            steps += 1;
            if steps > self.budget {
                return Err(Error::invariant(format!("sort exceeded its step budget of {}", self.budget)));
            }
            on_step(RawStep { rank: k, x, y, small, large });
            // Every cell after x other than y is still ordered, and x now holds
            // the minimum of its old neighbours.
            top = if self.violation(buf, y).is_some() { self.rank[y] } else { k - 1 };
        }
        Ok(steps)
    }

    pub fn sort(&self, t: &Tableau) -> Result<SortTrace> {
        self.check_shape(t)?;
        let n = t.size();
        let mut buf = t.entries().to_vec();
        let mut steps = Vec::new();
        let mut ranks = Vec::new();
        self.run(&mut buf, |st| {
            ranks.push(st.rank);
            steps.push(Transposition {
                step: steps.len() + 1,
                small: st.small,
                large: st.large,
                x: self.diagram.cell(st.x),
                y: self.diagram.cell(st.y),
            });
        })?;
        let mu = mu_from_ranks(n, &ranks);
        Ok(SortTrace {
            order: self.order.clone(),
            initial: t.clone(),
            steps,
            result: Tableau::from_raw(t.shape().clone(), buf),
            mu,
        })
    }
}

/// `μ(s)` is the first step index `i` whose active rank is below `s`, where a
/// standard tableau counts as rank 0. Returned for `s = 1..=n+1`.
pub(crate) fn mu_from_ranks(n: usize, ranks: &[usize]) -> Vec<usize> {
    let mut mu = vec![0; n + 1];
    let mut i = 0;
    for s in (1..=n + 1).rev() {
        while i < ranks.len() && ranks[i] >= s {
            i += 1;
        }
        mu[s - 1] = i;
    }
    mu
}

fn check_pair(t: &Tableau, u: &Tableau) -> Result<Sorter> {
    if t.shape() != u.shape() {
        return Err(Error::domain(format!("tableau shape {} does not match order shape {}", t.shape(), u.shape())));
    }
    Sorter::new(u)
}

pub fn find_active_cell(t: &Tableau, u: &Tableau) -> Result<Option<Cell>> {
    check_pair(t, u)?.find_active_cell(t)
}

pub fn step(t: &Tableau, u: &Tableau) -> Result<(Tableau, Transposition)> {
    check_pair(t, u)?.step(t)
}

pub fn sort(t: &Tableau, u: &Tableau) -> Result<SortTrace> {
    check_pair(t, u)?.sort(t)
}

/// Splits the trace into the drops of the entries `b_s = T(x_s)`, one record
/// per nonempty drop, in the order the drops happen.
pub fn drop_records(trace: &SortTrace) -> Result<Vec<DropRecord>> {
    let n = trace.initial.size();
    let cells = trace.cells_in_order();
    let mut out = Vec::new();
    for s in (1..=n).rev() {
        let (from, to) = (trace.mu(s + 1), trace.mu(s));
        if from == to {
            continue;
        }
        let start = cells[s - 1];
        let entry = trace.initial.get(start).unwrap();
        let mut at = start;
        let mut path = Vec::with_capacity(to - from);
        for tr in &trace.steps[from..to] {
            if tr.large != entry || tr.x != at {
                return Err(Error::invariant(format!(
                    "step {} exchanges ({}, {}) at {} during the drop of {entry} from {at}",
                    tr.step, tr.small, tr.large, tr.x
                )));
            }
            at = tr.y;
            path.push(at);
        }
        out.push(DropRecord { entry, start_cell: start, drop_path: path, max_height: at.height() });
    }
    Ok(out)
}

/// `β_U(b, T)`, the largest height entry `b` reaches during the sort.
pub fn beta(trace: &SortTrace, b: usize) -> Result<usize> {
    let n = trace.initial.size();
    if b == 0 || b > n {
        return Err(Error::domain(format!("entry {b} outside 1..={n}")));
    }
    let start = trace.initial.position(b).unwrap();
    let s = trace.order.get(start).unwrap();
    Ok(trace.tableau_at(trace.mu(s)).height_of(b).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_tableaux;
    use crate::tableau::{column_order, row_order};

    fn tab(rows: &[&[usize]]) -> Tableau {
        Tableau::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn active_cell() {
        let p: Partition = "2,1".parse().unwrap();
        let u = column_order(&p);
        assert_eq!(find_active_cell(&row_order(&p), &u).unwrap(), None);
        assert_eq!(find_active_cell(&tab(&[&[2, 1], &[3]]), &u).unwrap(), Some(Cell::new(1, 1)));
        let bad_order = tab(&[&[2, 1], &[3]]);
        assert!(find_active_cell(&row_order(&p), &bad_order).is_err());
        assert!(find_active_cell(&tab(&[&[1, 2, 3]]), &u).is_err());

        // Only (2,2) is out of order: 7 sits above-left of 5 and 6.
        let q: Partition = "3,3,1".parse().unwrap();
        let t = tab(&[&[1, 2, 3], &[4, 7, 5], &[6]]);
        assert_eq!(find_active_cell(&t, &column_order(&q)).unwrap(), Some(Cell::new(2, 2)));
    }

    #[test]
    fn single_steps() {
        let p: Partition = "2,1".parse().unwrap();
        let u = column_order(&p);
        let (next, tr) = step(&tab(&[&[2, 1], &[3]]), &u).unwrap();
        assert_eq!(next, tab(&[&[1, 2], &[3]]));
        assert_eq!((tr.small, tr.large), (1, 2));
        let (next, tr) = step(&tab(&[&[3, 2], &[1]]), &u).unwrap();
        assert_eq!(next, tab(&[&[1, 2], &[3]]));
        assert_eq!((tr.small, tr.large), (1, 3));
        let col = tab(&[&[2], &[1]]);
        let (next, tr) = step(&col, &column_order(col.shape())).unwrap();
        assert_eq!(next, tab(&[&[1], &[2]]));
        assert_eq!((tr.small, tr.large), (1, 2));
        assert!(matches!(step(&row_order(&p), &u), Err(Error::InvalidCall(_))));
    }

    #[test]
    fn sorting_small_shapes() {
        let p: Partition = "2,1".parse().unwrap();
        let u = column_order(&p);
        let tr = sort(&row_order(&p), &u).unwrap();
        assert!(tr.is_empty());
        assert_eq!(tr.mu_values(), &[0, 0, 0, 0]);

        let tr = sort(&tab(&[&[2, 3], &[1]]), &u).unwrap();
        assert_eq!(tr.len(), 1);
        assert_eq!((tr.steps()[0].small, tr.steps()[0].large), (1, 2));
        assert_eq!(tr.result(), &tab(&[&[1, 3], &[2]]));

        let total: usize = enumerate_tableaux(&p).unwrap().map(|t| sort(&t, &u).unwrap().len()).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn drops_and_beta_on_small_shape() {
        let p: Partition = "2,1".parse().unwrap();
        let u = column_order(&p);
        assert!(drop_records(&sort(&row_order(&p), &u).unwrap()).unwrap().is_empty());
        let tr = sort(&tab(&[&[2, 3], &[1]]), &u).unwrap();
        let recs = drop_records(&tr).unwrap();
        assert_eq!(
            recs,
            vec![DropRecord { entry: 2, start_cell: Cell::new(1, 1), drop_path: vec![Cell::new(2, 1)], max_height: 1 }]
        );
        assert_eq!(beta(&tr, 2).unwrap(), 1);
        assert_eq!(beta(&tr, 1).unwrap(), tr.initial().height_of(1).unwrap());
        assert!(beta(&tr, 0).is_err());
        assert!(beta(&tr, 4).is_err());
        let std = sort(&row_order(&p), &u).unwrap();
        for b in 1..=3 {
            assert_eq!(beta(&std, b).unwrap(), std.initial().height_of(b).unwrap());
        }
    }

    #[test]
    fn mu_from_active_ranks() {
        assert_eq!(mu_from_ranks(3, &[]), vec![0, 0, 0, 0]);
        // ranks 3, 1, 1: T_1 is ordered on {x_2, x_3}.
        assert_eq!(mu_from_ranks(3, &[3, 1, 1]), vec![3, 1, 1, 0]);
    }

    #[test]
    fn json_shape() {
        let p: Partition = "2,1".parse().unwrap();
        let tr = sort(&tab(&[&[2, 3], &[1]]), &column_order(&p)).unwrap();
        let s = serde_json::to_string(&tr).unwrap();
        assert_eq!(
            s,
            r#"{"steps":[{"i":1,"a":1,"b":2,"x":[1,1],"y":[2,1]}],"mu":[1,0,0,0],"result":{"shape":[2,1],"rows":[[1,3],[2]]}}"#
        );
    }
}
