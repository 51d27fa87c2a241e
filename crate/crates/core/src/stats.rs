//! Brute-force statistics over all (or sampled) fillings of a shape.
//!
//! Every sort updates all tables in a single pass. Workers accumulate raw
//! `u64` counts in a [`Tally`]; tallies merge by componentwise addition, so
//! the exact totals do not depend on how the fillings were split between
//! workers. [`Aggregator::finish`] converts the raw counts into the exact scalar
//! type of the caller.

use std::collections::HashMap;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagram::Diagram;
use crate::enumerate::{enumerate_syt, filling_count, for_each_filling, scatter};
use crate::error::{Error, Result};
use crate::nps::Sorter;
use crate::partition::{alpha, Cell, Partition};
use crate::scalar::{exact_div, factorial, Count};
use crate::tableau::Tableau;

/// Fillings handled per work unit. Fixed so that the split never depends on
/// the number of workers.
pub const CHUNK: u64 = 4096;

/// Raw per-worker counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    n: usize,
    edges: usize,
    fillings: u64,
    total_steps: u64,
    total_steps_sq: u128,
    pair: Vec<u64>,
    local: Vec<u64>,
    distribution: Vec<u64>,
    omega_cell: Vec<u64>,
    drop: Vec<u64>,
    beta: Vec<u64>,
}

impl Tally {
    fn new(n: usize, edges: usize, syts: usize) -> Self {
        Tally {
            n,
            edges,
            fillings: 0,
            total_steps: 0,
            total_steps_sq: 0,
            pair: vec![0; n * n],
            local: vec![0; n * n * edges],
            distribution: vec![0; syts],
            omega_cell: vec![0; n * n],
            drop: vec![0; n * n],
            beta: vec![0; n],
        }
    }

    /// Componentwise sum. Associative and commutative.
    pub fn merge(mut self, other: &Tally) -> Tally {
        assert_eq!(
            (self.n, self.edges, self.distribution.len()),
            (other.n, other.edges, other.distribution.len()),
            "tallies of different shapes"
        );
        fn add(a: &mut [u64], b: &[u64]) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
        self.fillings += other.fillings;
        self.total_steps += other.total_steps;
        self.total_steps_sq += other.total_steps_sq;
        add(&mut self.pair, &other.pair);
        add(&mut self.local, &other.local);
        add(&mut self.distribution, &other.distribution);
        add(&mut self.omega_cell, &other.omega_cell);
        add(&mut self.drop, &other.drop);
        add(&mut self.beta, &other.beta);
        self
    }

    pub fn fillings(&self) -> u64 {
        self.fillings
    }

    pub fn total_steps(&self) -> u64 {
        self.total_steps
    }
}

/// How the fillings were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every filling exactly once.
    Exhaustive,
    /// `samples` uniform fillings drawn from a seeded generator.
    Sample { samples: u64, seed: u64 },
    /// A caller-supplied stream.
    Stream,
}

/// A sorting order prepared for aggregation over one shape.
pub struct Aggregator {
    sorter: Sorter,
    syts: Vec<Tableau>,
    syt_index: HashMap<Vec<usize>, usize>,
}

impl Aggregator {
    pub fn new(order: &Tableau) -> Result<Self> {
        let sorter = Sorter::new(order)?;
        let syts = enumerate_syt(order.shape());
        let syt_index = syts.iter().enumerate().map(|(i, t)| (t.entries().to_vec(), i)).collect();
        Ok(Aggregator { sorter, syts, syt_index })
    }

    pub fn shape(&self) -> &Partition {
        self.sorter.shape()
    }

    fn diagram(&self) -> &Diagram {
        self.sorter.diagram()
    }

    fn empty_tally(&self) -> Tally {
        let d = self.diagram();
        Tally::new(d.size(), d.edge_slots(), self.syts.len())
    }

    /// Sorts one filling (row-major entries) and records every statistic.
    fn record(&self, tally: &mut Tally, entries: &[usize]) -> Result<()> {
        let d = self.diagram();
        let n = d.size();
        let edges = d.edge_slots();
        let mut buf = entries.to_vec();
        // Cell of maximal height visited by each entry so far.
        let mut peak = vec![0usize; n + 1];
        for (c, &e) in entries.iter().enumerate() {
            peak[e] = c;
        }
        let steps = self.sorter.run(&mut buf, |st| {
            let pair = (st.small - 1) * n + (st.large - 1);
            tally.pair[pair] += 1;
            let edge = d.edge(st.x, st.y).expect("exchange along a neighbour edge");
            tally.local[pair * edges + edge] += 1;
            if d.height(st.y) > d.height(peak[st.large]) {
                peak[st.large] = st.y;
            }
        })?;
        tally.fillings += 1;
        tally.total_steps += steps as u64;
        tally.total_steps_sq += (steps as u128) * (steps as u128);
        let w = *self.syt_index.get(&buf).ok_or_else(|| Error::invariant("sort did not produce a standard tableau"))?;
        tally.distribution[w] += 1;
        for (c, &e) in buf.iter().enumerate() {
            tally.omega_cell[(e - 1) * n + c] += 1;
        }
        for (b, &cell) in peak.iter().enumerate().skip(1) {
            tally.drop[(b - 1) * n + cell] += 1;
            tally.beta[b - 1] += d.height(cell) as u64;
        }
        Ok(())
    }

    fn check_filling(&self, t: &Tableau) -> Result<()> {
        if t.shape() != self.shape() {
            return Err(Error::domain(format!(
                "filling of shape {} fed to an aggregator for {}",
                t.shape(),
                self.shape()
            )));
        }
        Ok(())
    }

    /// Tallies an arbitrary stream of fillings on the calling thread.
    pub fn tally_stream<I: IntoIterator<Item = Tableau>>(&self, source: I) -> Result<Tally> {
        let mut tally = self.empty_tally();
        for t in source {
            self.check_filling(&t)?;
            self.record(&mut tally, t.entries())?;
        }
        Ok(tally)
    }

    /// Tallies fillings `start..end` of the enumeration order.
    pub fn tally_range(&self, start: u64, end: u64) -> Result<Tally> {
        let mut tally = self.empty_tally();
        let mut err = None;
        for_each_filling(self.diagram(), start, end, |entries| {
            if err.is_none() {
                if let Err(e) = self.record(&mut tally, entries) {
                    err = Some(e);
                }
            }
        });
        err.map_or(Ok(tally), Err)
    }

    /// Every filling, split into fixed chunks over the current rayon pool.
    pub fn tally_exhaustive(&self) -> Result<Tally> {
        let total = filling_count(self.diagram().size())?;
        let chunks = total.div_ceil(CHUNK).max(1);
        (0..chunks)
            .into_par_iter()
            .map(|k| self.tally_range(k * CHUNK, ((k + 1) * CHUNK).min(total)))
            .try_reduce(|| self.empty_tally(), |a, b| Ok(a.merge(&b)))
    }

    /// `samples` uniform fillings. Block `k` of [`CHUNK`] samples draws from
    /// ChaCha8 seeded with `seed` on stream `k`; each sample shuffles
    /// `1..=n` and writes it into the cells in column-wise order.
    pub fn tally_sampled(&self, samples: u64, seed: u64) -> Result<Tally> {
        let blocks = samples.div_ceil(CHUNK);
        let d = self.diagram();
        let n = d.size();
        (0..blocks)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k);
                let mut tally = self.empty_tally();
                let mut seq: Vec<usize> = (1..=n).collect();
                let mut buf = vec![0; n];
                let count = CHUNK.min(samples - k * CHUNK);
                for _ in 0..count {
                    seq.shuffle(&mut rng);
                    scatter(d, &seq, &mut buf);
                    self.record(&mut tally, &buf)?;
                }
                Ok(tally)
            })
            .try_reduce(|| self.empty_tally(), |a, b| Ok(a.merge(&b)))
    }

    pub fn finish<C: Count>(&self, tally: &Tally, mode: Mode) -> Result<Aggregate<C>> {
        Aggregate::from_tally(self, tally, mode)
    }
}

/// Runs `f` on a dedicated pool of `workers` threads (or the global pool).
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(Error::domain("worker count must be positive")),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Capacity(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Exchange counts `m_U(a, b)` and `m_U(a, b, x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeTables<C> {
    order: Tableau,
    diagram: Diagram,
    /// `M_U`, zero on and below the diagonal. Indexed `[a-1][b-1]`.
    matrix: Vec<Vec<C>>,
    local: Vec<C>,
}

impl<C: Count> ExchangeTables<C> {
    pub fn order(&self) -> &Tableau {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<C>] {
        &self.matrix
    }

    /// `m_U(a, b)`; symmetric in its arguments, zero when `a = b`.
    pub fn pair(&self, a: usize, b: usize) -> C {
        let (lo, hi) = (a.min(b), a.max(b));
        self.matrix[lo - 1][hi - 1].clone()
    }

    /// `m_U(a, b, x, y)`: `a` sits in `x` and `b` in `y` right before they
    /// are exchanged.
    pub fn local(&self, a: usize, b: usize, x: Cell, y: Cell) -> C {
        let n = self.size();
        if a == b || a == 0 || b == 0 || a > n || b > n {
            return C::zero();
        }
        let (Some(xi), Some(yi)) = (self.diagram.index(x), self.diagram.index(y)) else {
            return C::zero();
        };
        // The smaller entry always moves to the upper-left cell of the edge.
        let (small, large, upper, lower) = if a < b { (a, b, yi, xi) } else { (b, a, xi, yi) };
        match self.diagram.edge(upper, lower) {
            Some(e) => self.local[((small - 1) * n + (large - 1)) * self.diagram.edge_slots() + e].clone(),
            None => C::zero(),
        }
    }

    /// `m_U(a) = m_U(a, a + 1)`, for `a < n`.
    pub fn exchange_number(&self, a: usize) -> Option<C> {
        (a >= 1 && a < self.size()).then(|| self.pair(a, a + 1))
    }

    /// `m_U(a, x, y) = m_U(a, a + 1, x, y)`, for `a < n`.
    pub fn local_exchange_number(&self, a: usize, x: Cell, y: Cell) -> Option<C> {
        (a >= 1 && a < self.size()).then(|| self.local(a, a + 1, x, y))
    }

    /// Checks that `m_U(a, b, x, y)` and `m_U(a, b)` do not depend on `b > a`.
    pub fn check_independence(&self) -> Result<()> {
        let n = self.size();
        let cells = self.diagram.cells().to_vec();
        for a in 1..n {
            for b in a + 2..=n {
                if self.pair(a, b) != self.pair(a, a + 1) {
                    return Err(Error::invariant(format!(
                        "m({a},{b}) = {} but m({a},{}) = {}",
                        self.pair(a, b),
                        a + 1,
                        self.pair(a, a + 1)
                    )));
                }
                for &x in &cells {
                    for &y in &cells {
                        if self.local(a, b, x, y) != self.local(a, a + 1, x, y) {
                            return Err(Error::invariant(format!(
                                "m({a},{b},{x},{y}) differs from m({a},{},{x},{y})",
                                a + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Nonzero `m_U(a, x, y)` entries as `(a, x, y, count)`.
    pub fn local_entries(&self) -> Vec<(usize, Cell, Cell, C)> {
        let mut out = Vec::new();
        for a in 1..self.size() {
            for (ui, &upper) in self.diagram.cells().iter().enumerate() {
                for &li in self.diagram.plus(ui) {
                    let lower = self.diagram.cell(li);
                    let v = self.local(a, a + 1, lower, upper);
                    if !v.is_zero() {
                        out.push((a, lower, upper, v));
                    }
                }
            }
        }
        out
    }
}

/// `z_U(W)` for every standard tableau `W`, in [`enumerate_syt`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionVector<C> {
    pub order: Tableau,
    pub tableaux: Vec<Tableau>,
    pub multiplicities: Vec<C>,
}

impl<C: Count> DistributionVector<C> {
    pub fn get(&self, w: &Tableau) -> Option<&C> {
        self.tableaux.iter().position(|t| t == w).map(|i| &self.multiplicities[i])
    }

    pub fn total(&self) -> C {
        self.multiplicities.iter().fold(C::zero(), |a, b| a + b.clone())
    }
}

/// True iff every standard tableau is hit exactly `n!/f_λ` times.
pub fn is_uniform<C: Count>(z: &DistributionVector<C>) -> bool {
    let n = z.order.size();
    let f = C::from_index(z.tableaux.len());
    match exact_div(&factorial::<C>(n), &f) {
        Some(each) => z.multiplicities.iter().all(|m| *m == each),
        None => false,
    }
}

/// Initial, terminal and peak heights, totalled over all fillings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightTotals<C> {
    /// `α_λ`; zero for the empty shape.
    pub alpha: C,
    /// `ω_U(b)`, indexed `[b-1]`.
    pub omega_by_entry: Vec<C>,
    /// `ω_U(b, x)`, indexed `[b-1][cell]` with cells row-major.
    pub omega_by_entry_cell: Vec<Vec<C>>,
    /// `β_U(b)`, indexed `[b-1]`.
    pub beta_by_entry: Vec<C>,
}

/// `d_U(b, x)`, indexed `[b-1][cell]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropTable<C> {
    pub order: Tableau,
    pub counts: Vec<Vec<C>>,
}

/// `Δ_U(b, x)`, indexed `[b-1][cell]`. The row for `b = n` is zero: there is
/// no larger entry to exchange with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedExitTable<C> {
    pub order: Tableau,
    pub values: Vec<Vec<C>>,
}

/// Everything one aggregation pass produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aggregate<C> {
    pub shape: Partition,
    pub mode: Mode,
    pub fillings: C,
    pub total_steps: C,
    pub total_steps_sq: C,
    pub exchange: ExchangeTables<C>,
    pub distribution: DistributionVector<C>,
    pub heights: HeightTotals<C>,
    pub drops: DropTable<C>,
    pub exits: SignedExitTable<C>,
}

fn to_c<C: Count>(v: &[u64]) -> Vec<C> {
    v.iter().map(|&x| C::from_count(x)).collect()
}

fn rows<C: Count>(v: &[u64], width: usize) -> Vec<Vec<C>> {
    if width == 0 {
        return Vec::new();
    }
    v.chunks(width).map(to_c).collect()
}

impl<C: Count> Aggregate<C> {
    fn from_tally(agg: &Aggregator, t: &Tally, mode: Mode) -> Result<Self> {
        let d = agg.diagram().clone();
        let n = d.size();
        let order = agg.sorter.order().clone();
        let mut matrix: Vec<Vec<C>> = rows(&t.pair, n);
        for (a, row) in matrix.iter_mut().enumerate() {
            for v in row.iter_mut().take(a + 1) {
                *v = C::zero();
            }
        }
        let exchange = ExchangeTables { order: order.clone(), diagram: d.clone(), matrix, local: to_c(&t.local) };
        let omega_by_entry_cell: Vec<Vec<C>> = rows(&t.omega_cell, n);
        let omega_by_entry = omega_by_entry_cell
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(C::zero(), |acc, (c, v)| acc + v.clone() * C::from_index(d.height(c)))
            })
            .collect();
        let heights = HeightTotals {
            alpha: if n == 0 { C::zero() } else { alpha(agg.shape())? },
            omega_by_entry,
            omega_by_entry_cell,
            beta_by_entry: to_c(&t.beta),
        };
        let exits = SignedExitTable { order: order.clone(), values: signed_exits(&exchange) };
        Ok(Aggregate {
            shape: agg.shape().clone(),
            mode,
            fillings: C::from_count(t.fillings),
            total_steps: C::from_count(t.total_steps),
            total_steps_sq: C::from_u128(t.total_steps_sq).expect("sum of squares fits"),
            exchange,
            distribution: DistributionVector {
                order: order.clone(),
                tableaux: agg.syts.clone(),
                multiplicities: to_c(&t.distribution),
            },
            heights,
            drops: DropTable { order, counts: rows(&t.drop, n) },
            exits,
        })
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn is_exhaustive(&self) -> bool {
        self.mode == Mode::Exhaustive
    }

    /// Checks the identities every exhaustive aggregate must satisfy:
    /// independence of exchange numbers from the larger entry, row sums of
    /// the terminal/drop/exit tables, `ω(1) = 0`, `d(1, x) = (n-1)!`, and the
    /// height balance `α + Σ_{a<b} m(a,b) − Σ_{c>b} m(b,c) = ω(b)`.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.size();
        if n == 0 {
            return Ok(());
        }
        let nf: C = factorial(n);
        let nf1: C = factorial(n - 1);
        if self.distribution.total() != nf {
            return Err(Error::invariant("distribution vector does not sum to n!"));
        }
        self.exchange.check_independence()?;
        if !self.heights.omega_by_entry[0].is_zero() {
            return Err(Error::invariant("entry 1 does not always end in the corner"));
        }
        for b in 1..=n {
            let sum = |v: &[C]| v.iter().fold(C::zero(), |a, x| a + x.clone());
            if sum(&self.heights.omega_by_entry_cell[b - 1]) != nf {
                return Err(Error::invariant(format!("terminal counts of {b} do not sum to n!")));
            }
            if sum(&self.drops.counts[b - 1]) != nf {
                return Err(Error::invariant(format!("drop counts of {b} do not sum to n!")));
            }
            if !sum(&self.exits.values[b - 1]).is_zero() {
                return Err(Error::invariant(format!("signed exits of {b} do not sum to zero")));
            }
            let up = (1..b).fold(C::zero(), |acc, a| acc + self.exchange.pair(a, b));
            let down = (b + 1..=n).fold(C::zero(), |acc, c| acc + self.exchange.pair(b, c));
            if self.heights.alpha.clone() + up - down != self.heights.omega_by_entry[b - 1] {
                return Err(Error::invariant(format!("height balance fails for entry {b}")));
            }
        }
        if self.drops.counts[0].iter().any(|v| *v != nf1) {
            return Err(Error::invariant("entry 1 does not drop to its start"));
        }
        Ok(())
    }

    /// Sample mean of `r_U(T)` and its standard error.
    pub fn mean_and_std_error(&self) -> (f64, f64) {
        let count = self.fillings.to_f64().unwrap_or(f64::NAN);
        let s1 = self.total_steps.to_f64().unwrap_or(f64::NAN);
        let s2 = self.total_steps_sq.to_f64().unwrap_or(f64::NAN);
        if count < 1.0 {
            return (f64::NAN, f64::NAN);
        }
        let mean = s1 / count;
        if count < 2.0 {
            return (mean, f64::NAN);
        }
        let var = ((s2 - s1 * s1 / count) / (count - 1.0)).max(0.0);
        (mean, (var / count).sqrt())
    }
}

/// `Δ_U(b, x) = Σ_{y∈N⁻(x)} m(b, x, y) − Σ_{y∈N⁺(x)} m(b, y, x)`, with
/// `m(b, ·, ·) = m(b, b+1, ·, ·)`.
fn signed_exits<C: Count>(ex: &ExchangeTables<C>) -> Vec<Vec<C>> {
    let d = &ex.diagram;
    let n = d.size();
    (1..=n)
        .map(|b| {
            (0..n)
                .map(|xi| {
                    if b == n {
                        return C::zero();
                    }
                    let x = d.cell(xi);
                    let out = d.minus(xi).iter().fold(C::zero(), |acc, &y| acc + ex.local(b, b + 1, x, d.cell(y)));
                    let inn = d.plus(xi).iter().fold(C::zero(), |acc, &y| acc + ex.local(b, b + 1, d.cell(y), x));
                    out - inn
                })
                .collect()
        })
        .collect()
}

/// Exhaustive aggregation on `workers` threads (global pool when `None`).
pub fn aggregate_exhaustive<C: Count>(order: &Tableau, workers: Option<usize>) -> Result<Aggregate<C>> {
    let agg = Aggregator::new(order)?;
    let tally = with_workers(workers, || agg.tally_exhaustive())??;
    agg.finish(&tally, Mode::Exhaustive)
}

pub fn aggregate_sampled<C: Count>(
    order: &Tableau,
    samples: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<Aggregate<C>> {
    if samples == 0 {
        return Err(Error::domain("sampling needs at least one sample"));
    }
    let agg = Aggregator::new(order)?;
    let tally = with_workers(workers, || agg.tally_sampled(samples, seed))??;
    agg.finish(&tally, Mode::Sample { samples, seed })
}

/// Aggregates a caller-supplied stream of fillings.
pub fn aggregate<C: Count, I: IntoIterator<Item = Tableau>>(order: &Tableau, source: I) -> Result<Aggregate<C>> {
    let agg = Aggregator::new(order)?;
    let tally = agg.tally_stream(source)?;
    agg.finish(&tally, Mode::Stream)
}

/// `C(U) = (1/n!) Σ_T r_U(T)`.
pub fn complexity<C: Count>(total_steps: &C, n: usize) -> Ratio<C> {
    Ratio::new(total_steps.clone(), factorial(n))
}

/// `C(U) = (1/n!) Σ_a (n − a) m_U(a)`. Fails if the exchange numbers depend
/// on the larger entry.
pub fn complexity_from_exchange<C: Count>(tables: &ExchangeTables<C>) -> Result<Ratio<C>> {
    tables.check_independence()?;
    let n = tables.size();
    let sum = (1..n).fold(C::zero(), |acc, a| acc + C::from_index(n - a) * tables.exchange_number(a).unwrap());
    Ok(Ratio::new(sum, factorial(n)))
}

/// `C(U) = (1/n!) Σ_b (β_U(b) − α_λ)`.
pub fn complexity_from_beta<C: Count>(totals: &HeightTotals<C>, n: usize) -> Ratio<C> {
    let sum = totals.beta_by_entry.iter().fold(C::zero(), |acc, b| acc + b.clone() - totals.alpha.clone());
    Ratio::new(sum, factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_tableaux;
    use crate::tableau::{column_order, row_order};

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn two_one_column_order() {
        let p = part("2,1");
        let u = column_order(&p);
        let agg: Aggregate<i64> = aggregate_exhaustive(&u, Some(1)).unwrap();
        agg.check_invariants().unwrap();
        assert_eq!(agg.exchange.exchange_number(1), Some(2));
        assert_eq!(agg.exchange.exchange_number(2), Some(0));
        assert_eq!(agg.distribution.multiplicities, vec![3, 3]);
        assert_eq!(agg.total_steps, 4);
        // Cells row-major: (1,1), (1,2), (2,1).
        assert_eq!(agg.drops.counts, vec![vec![2, 2, 2], vec![0, 3, 3], vec![0, 3, 3]]);
        assert_eq!(agg.exits.values[0], vec![-2, 1, 1]);
        assert_eq!(agg.exits.values[1], vec![0, 0, 0]);
        assert_eq!(complexity(&agg.total_steps, 3), Ratio::new(2, 3));
        assert_eq!(complexity_from_exchange(&agg.exchange).unwrap(), Ratio::new(2, 3));
        assert_eq!(complexity_from_beta(&agg.heights, 3), Ratio::new(2, 3));
        assert!(is_uniform(&agg.distribution));
    }

    #[test]
    fn trivial_shapes() {
        let agg: Aggregate<i64> = aggregate_exhaustive(&row_order(&part("1")), Some(1)).unwrap();
        agg.check_invariants().unwrap();
        assert_eq!(agg.total_steps, 0);
        assert_eq!(complexity(&agg.total_steps, 1), Ratio::from_integer(0));
        let agg: Aggregate<i64> = aggregate_exhaustive(&row_order(&part("1,1")), Some(1)).unwrap();
        assert_eq!(complexity(&agg.total_steps, 2), Ratio::new(1, 2));
        assert_eq!(complexity_from_exchange(&agg.exchange).unwrap(), Ratio::new(1, 2));
        let agg: Aggregate<i64> = aggregate_exhaustive(&Tableau::empty(), None).unwrap();
        agg.check_invariants().unwrap();
        assert_eq!(agg.fillings, 1);
    }

    #[test]
    fn all_standard_stream_has_zero_complexity() {
        let p = part("3,2");
        let u = column_order(&p);
        let agg: Aggregate<i64> = aggregate(&u, enumerate_syt(&p)).unwrap();
        assert_eq!(agg.total_steps, 0);
        // No entry moves, so peak heights are the initial heights.
        let initial: i64 = agg
            .distribution
            .tableaux
            .iter()
            .map(|t| (1..=5).map(|b| t.height_of(b).unwrap() as i64).sum::<i64>())
            .sum();
        assert_eq!(agg.heights.beta_by_entry.iter().sum::<i64>(), initial);
        assert!(aggregate::<i64, _>(&u, [row_order(&part("2,1"))]).is_err());
    }

    #[test]
    fn single_row_paths_agree() {
        let p = Partition::row(3);
        let agg: Aggregate<i64> = aggregate_exhaustive(&row_order(&p), None).unwrap();
        let direct = complexity(&agg.total_steps, 3);
        assert_eq!(complexity_from_beta(&agg.heights, 3), direct);
        assert_eq!(complexity_from_exchange(&agg.exchange).unwrap(), direct);
    }

    #[test]
    fn partition_independence() {
        let p = part("3,2,1");
        let u = column_order(&p);
        let agg = Aggregator::new(&u).unwrap();
        let whole = agg.tally_range(0, 720).unwrap();
        let parts = [0u64, 5, 100, 101, 500, 720]
            .windows(2)
            .map(|w| agg.tally_range(w[0], w[1]).unwrap())
            .fold(agg.empty_tally(), |a, b| a.merge(&b));
        assert_eq!(whole, parts);
        let streamed = agg.tally_stream(enumerate_tableaux(&p).unwrap()).unwrap();
        assert_eq!(whole, streamed);
        let pooled = with_workers(Some(3), || agg.tally_exhaustive()).unwrap().unwrap();
        assert_eq!(whole, pooled);
    }

    #[test]
    fn sampling_is_reproducible() {
        let u = column_order(&part("3,2"));
        let a: Aggregate<i64> = aggregate_sampled(&u, 5000, 7, Some(1)).unwrap();
        let b: Aggregate<i64> = aggregate_sampled(&u, 5000, 7, Some(4)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.fillings, 5000);
        let c: Aggregate<i64> = aggregate_sampled(&u, 5000, 8, Some(1)).unwrap();
        assert_ne!(a.total_steps, c.total_steps);
        assert!(aggregate_sampled::<i64>(&u, 0, 1, None).is_err());
    }

    #[test]
    fn local_counts_are_symmetric_in_roles() {
        let p = part("2,2");
        let agg: Aggregate<i64> = aggregate_exhaustive(&column_order(&p), None).unwrap();
        let cells: Vec<Cell> = p.cells().collect();
        for a in 1..=4 {
            for b in 1..=4 {
                for &x in &cells {
                    for &y in &cells {
                        assert_eq!(agg.exchange.local(a, b, x, y), agg.exchange.local(b, a, y, x));
                    }
                }
            }
        }
    }
}
