//! Recursions and closed forms for exchange numbers, signed exit numbers and
//! drop functions, evaluated in exact arithmetic without sorting anything.
//!
//! Each recursion divides by `n − b`; a remainder means the input tables are
//! inconsistent and is reported as [`Error::InvariantViolation`].

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::enumerate_syt;
use crate::error::{Error, Result};
use crate::partition::{Cell, Partition};
use crate::scalar::{binomial, exact_div, factorial, lcm_upto, ratio_string, Count};
use crate::stats::{aggregate_exhaustive, complexity, is_uniform, Aggregate, DistributionVector, DropTable};
use crate::tableau::Tableau;

/// Exchange numbers `m_U(1), …, m_U(n−1)` from
/// `(n − b) m(b) = α − ω(b) + Σ_{a<b} m(a)`.
///
/// `omega[b-1] = ω_U(b)`. `m_U(n)` is not determined by the recursion and is
/// not returned.
pub fn exchange_recursion<C: Count>(alpha: &C, omega: &[C], n: usize) -> Result<Vec<C>> {
    if n < 2 {
        return Err(Error::domain("the exchange recursion needs n >= 2"));
    }
    if omega.len() < n - 1 {
        return Err(Error::domain(format!("need {} terminal heights, got {}", n - 1, omega.len())));
    }
    if !omega[0].is_zero() {
        return Err(Error::invariant(format!("omega(1) = {} but entry 1 always ends in the corner", omega[0])));
    }
    let mut m: Vec<C> = Vec::with_capacity(n - 1);
    let mut running = C::zero();
    for b in 1..n {
        let rhs = alpha.clone() - omega[b - 1].clone() + running.clone();
        let den = C::from_index(n - b);
        let v = exact_div(&rhs, &den)
            .ok_or_else(|| Error::invariant(format!("(n-b) m(b) = {rhs} is not divisible by {den} at b = {b}")))?;
        running = running + v.clone();
        m.push(v);
    }
    Ok(m)
}

/// The `b = n` instance of the exchange recursion, `0 = α − ω(n) + Σ_{a<n} m(a)`.
pub fn exchange_recursion_closes<C: Count>(alpha: &C, omega: &[C], m: &[C]) -> bool {
    let n = omega.len();
    let sum = m.iter().fold(C::zero(), |a, v| a + v.clone());
    n >= 1 && (alpha.clone() - omega[n - 1].clone() + sum).is_zero()
}

/// `ω(b) = (n!/f_λ) Σ_W h'(b, W)` for a uniformly distributed algorithm.
/// Indexed `[b-1]`.
pub fn uniform_omega<C: Count>(p: &Partition) -> Vec<C> {
    let n = p.size();
    let syts = enumerate_syt(p);
    let each = factorial::<C>(n) / C::from_index(syts.len());
    (1..=n)
        .map(|b| {
            let s: usize = syts.iter().map(|w| w.height_of(b).unwrap()).sum();
            each.clone() * C::from_index(s)
        })
        .collect()
}

/// `ω(b) = Σ_W z(W) h'(b, W)`. Indexed `[b-1]`.
pub fn omega_from_distribution<C: Count>(z: &DistributionVector<C>) -> Vec<C> {
    let n = z.order.size();
    (1..=n)
        .map(|b| {
            z.tableaux
                .iter()
                .zip(&z.multiplicities)
                .fold(C::zero(), |acc, (w, m)| acc + m.clone() * C::from_index(w.height_of(b).unwrap()))
        })
        .collect()
}

/// `ω(b, x) = Σ_W z(W) [W(x) = b]`, indexed `[b-1][cell]` (cells row-major).
pub fn omega_cells_from_distribution<C: Count>(z: &DistributionVector<C>) -> Vec<Vec<C>> {
    let n = z.order.size();
    let mut out = vec![vec![C::zero(); n]; n];
    for (w, m) in z.tableaux.iter().zip(&z.multiplicities) {
        for (c, &e) in w.entries().iter().enumerate() {
            out[e - 1][c] = out[e - 1][c].clone() + m.clone();
        }
    }
    out
}

/// Signed exit numbers `Δ(b, x)` for `b = 1..n−1` from
/// `(n − b) Δ(b, x) = (n−1)! − ω(b, x) + Σ_{a<b} Δ(a, x)`.
///
/// `omega_cell[b-1][cell]` with cells in row-major order. Every row of the
/// result is checked to sum to zero.
pub fn exit_recursion<C: Count>(p: &Partition, omega_cell: &[Vec<C>], n: usize) -> Result<Vec<Vec<C>>> {
    if n < 2 || p.size() != n {
        return Err(Error::domain(format!("exit recursion needs n >= 2 matching shape {p}")));
    }
    let nf1: C = factorial(n - 1);
    let mut running = vec![C::zero(); n];
    let mut out = Vec::with_capacity(n - 1);
    for b in 1..n {
        let den = C::from_index(n - b);
        let row = (0..n)
            .map(|c| {
                let rhs = nf1.clone() - omega_cell[b - 1][c].clone() + running[c].clone();
                exact_div(&rhs, &den).ok_or_else(|| {
                    Error::invariant(format!("(n-b) Δ({b}, cell {c}) = {rhs} is not divisible by {den}"))
                })
            })
            .collect::<Result<Vec<C>>>()?;
        if !row.iter().fold(C::zero(), |a, v| a + v.clone()).is_zero() {
            return Err(Error::invariant(format!("signed exits of {b} do not sum to zero")));
        }
        for (r, v) in running.iter_mut().zip(&row) {
            *r = r.clone() + v.clone();
        }
        out.push(row);
    }
    Ok(out)
}

/// `d(b, x) = (n−1)! + Σ_{a<b} Δ(a, x)` for `b = 1..n`.
///
/// `exits` must hold the rows for `a = 1..n−1`; each row has one entry per cell.
pub fn drop_from_exits<C: Count>(exits: &[Vec<C>], n: usize) -> Result<Vec<Vec<C>>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if exits.len() < n - 1 || exits.iter().any(|r| r.len() != n) {
        return Err(Error::domain(format!("need {} exit rows of length {n}", n - 1)));
    }
    let nf1: C = factorial(n - 1);
    let mut acc = vec![nf1; n];
    let mut out = Vec::with_capacity(n);
    for b in 1..=n {
        out.push(acc.clone());
        if b < n {
            for (a, v) in acc.iter_mut().zip(&exits[b - 1]) {
                *a = a.clone() + v.clone();
            }
        }
    }
    Ok(out)
}

/// Single row `(n)`: number of fillings in which entry `a` starts at `x`
/// and drops to `y`, `C(x−1, y−a) C(n−x, n−y) (a−1)! (n−a)!`.
pub fn single_row_partial_drop<C: Count>(n: usize, a: usize, x: usize, y: usize) -> C {
    if a == 0 || a > n || x == 0 || x > n || y == 0 || y > n {
        return C::zero();
    }
    let (n, a, x, y) = (n as i64, a as i64, x as i64, y as i64);
    binomial::<C>(x - 1, y - a)
        * binomial::<C>(n - x, n - y)
        * factorial::<C>((a - 1) as usize)
        * factorial::<C>((n - a) as usize)
}

/// Single row `(n)`: `d_n(a, x) = n!/(n − a + 1)` when `x ≥ a`, else 0.
pub fn single_row_drop<C: Count>(n: usize, a: usize, x: usize) -> C {
    if a == 0 || a > n || x == 0 || x > n || x < a {
        return C::zero();
    }
    factorial::<C>(n) / C::from_index(n - a + 1)
}

/// Checks `d(a+1, x, y) (n−a) = (y−a) d(a, x, y) + (n−y+1) d(a, x, y−1)` at
/// every point `1 ≤ a < n`, `1 ≤ x, y ≤ n`.
pub fn single_row_recursion_holds<C: Count>(n: usize) -> bool {
    (1..n).all(|a| {
        (1..=n).all(|x| {
            (1..=n).all(|y| {
                let lhs = C::from_index(n - a) * single_row_partial_drop::<C>(n, a + 1, x, y);
                let left = C::from_i64(y as i64 - a as i64).unwrap() * single_row_partial_drop::<C>(n, a, x, y);
                let right = if y >= 2 {
                    C::from_index(n - y + 1) * single_row_partial_drop::<C>(n, a, x, y - 1)
                } else {
                    C::zero()
                };
                lhs == left + right
            })
        })
    })
}

/// Data for the gcd conjecture on one drop table. Nothing here is asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjecture66<C: Count> {
    /// gcd of all drop values; zero entries are neutral (`gcd(0, k) = k`).
    pub gcd: C,
    pub lcm: C,
    /// `n! / (lcm{1..n} · gcd)`.
    pub ratio: Ratio<C>,
    pub is_integer: bool,
    /// Whether the algorithm was uniformly distributed.
    pub uniform: bool,
    /// `(b, x)` with `d(b, x) = 0`, listed so the gcd convention is auditable.
    pub zero_cells: Vec<(usize, Cell)>,
}

impl<C: Count> Conjecture66<C> {
    /// One line for the experiment log: shape, order, ratio, flags.
    pub fn log_line(&self, shape: &Partition, order: &str) -> String {
        format!(
            "shape={shape}\torder={order}\tratio={}\tinteger={}\tuniform={}\tgcd={}\tlcm={}\tzero_cells={}",
            ratio_string(&self.ratio),
            self.is_integer,
            self.uniform,
            self.gcd,
            self.lcm,
            self.zero_cells.len()
        )
    }
}

pub fn conjecture66_check<C: Count>(drop: &DropTable<C>, n: usize, uniform: bool) -> Conjecture66<C> {
    let cells: Vec<Cell> = drop.order.shape().cells().collect();
    let mut gcd = C::zero();
    let mut zero_cells = Vec::new();
    for (b, row) in drop.counts.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if v.is_zero() {
                zero_cells.push((b + 1, cells[c]));
            }
            gcd = gcd.gcd(v);
        }
    }
    let lcm: C = lcm_upto(n);
    let den = lcm.clone() * gcd.clone();
    let ratio = if den.is_zero() { Ratio::from_integer(C::zero()) } else { Ratio::new(factorial(n), den) };
    Conjecture66 { is_integer: ratio.is_integer() && !gcd.is_zero(), gcd, lcm, ratio, uniform, zero_cells }
}

/// `(z_U(W))` over all pairs of standard tableaux of one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FischerMatrix<C> {
    pub shape: Partition,
    pub tableaux: Vec<Tableau>,
    /// Row `U`, column `W`.
    pub matrix: Vec<Vec<C>>,
}

impl<C: Count> FischerMatrix<C> {
    pub fn is_symmetric(&self) -> bool {
        let k = self.matrix.len();
        (0..k).all(|i| (0..i).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn row_sums_ok(&self) -> bool {
        let nf: C = factorial(self.shape.size());
        self.matrix.iter().all(|r| r.iter().fold(C::zero(), |a, v| a + v.clone()) == nf)
    }
}

/// Sorts every filling under every standard order of `p`. Refuses when
/// `f_λ · n!` exceeds `max_sorts`.
pub fn fischer_matrix<C: Count>(p: &Partition, max_sorts: u64, workers: Option<usize>) -> Result<FischerMatrix<C>> {
    let syts = enumerate_syt(p);
    let n = p.size();
    let sorts = crate::enumerate::filling_count(n)?.saturating_mul(syts.len() as u64);
    if sorts > max_sorts {
        return Err(Error::Capacity(format!("Fischer matrix of {p} needs {sorts} sorts, cap is {max_sorts}")));
    }
    let matrix = syts
        .par_iter()
        .map(|u| aggregate_exhaustive::<C>(u, workers).map(|a| a.distribution.multiplicities))
        .collect::<Result<Vec<_>>>()?;
    Ok(FischerMatrix { shape: p.clone(), tableaux: syts, matrix })
}

/// One order inside a complexity comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderComplexity<C: Count> {
    pub label: String,
    pub order: Tableau,
    pub complexity: Ratio<C>,
    pub uniform: bool,
    /// Index of the group of orders sharing this distribution vector.
    pub group: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityComparison<C: Count> {
    pub shape: Partition,
    pub orders: Vec<OrderComplexity<C>>,
    /// True iff orders with equal distribution vectors have equal complexity.
    pub consistent: bool,
}

/// Groups orders by distribution vector and checks that each group has a
/// single complexity.
pub fn complexity_theorem_check<C: Count>(
    p: &Partition,
    orders: &[(String, Tableau)],
    workers: Option<usize>,
) -> Result<ComplexityComparison<C>> {
    let mut groups: Vec<Vec<C>> = Vec::new();
    let mut out = Vec::with_capacity(orders.len());
    for (label, u) in orders {
        if u.shape() != p {
            return Err(Error::domain(format!("order {label} has shape {} not {p}", u.shape())));
        }
        let agg: Aggregate<C> = aggregate_exhaustive(u, workers)?;
        let z = agg.distribution.multiplicities.clone();
        let group = match groups.iter().position(|g| *g == z) {
            Some(g) => g,
            None => {
                groups.push(z);
                groups.len() - 1
            }
        };
        out.push(OrderComplexity {
            label: label.clone(),
            order: u.clone(),
            complexity: complexity(&agg.total_steps, p.size()),
            uniform: is_uniform(&agg.distribution),
            group,
        });
    }
    let consistent =
        out.iter().all(|o| out.iter().filter(|q| q.group == o.group).all(|q| q.complexity == o.complexity));
    Ok(ComplexityComparison { shape: p.clone(), orders: out, consistent })
}

/// Recursion-derived tables set against their brute-force counterparts for
/// one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryReport<C> {
    pub shape: Partition,
    pub order: Tableau,
    pub uniform: bool,
    /// `m(1..n−1)` from the recursion, fed with brute-force `ω`.
    pub exchange_recursion: Result<Vec<C>, String>,
    /// `m(1..n−1)` from brute force.
    pub exchange_brute: Vec<C>,
    pub exits_recursion: Result<Vec<Vec<C>>, String>,
    pub exits_brute: Vec<Vec<C>>,
    pub drops_recursion: Result<Vec<Vec<C>>, String>,
    pub drops_brute: Vec<Vec<C>>,
    /// `ω(b)` recomputed from the distribution vector.
    pub omega_from_distribution: Vec<C>,
    /// `ω(b)` from standard tableaux alone, present for uniform orders.
    pub omega_uniform: Option<Vec<C>>,
    pub omega_brute: Vec<C>,
}

impl<C: Count> TheoryReport<C> {
    pub fn from_aggregate(agg: &Aggregate<C>) -> Self {
        let n = agg.size();
        let p = agg.shape.clone();
        let uniform = is_uniform(&agg.distribution);
        let omega_brute = agg.heights.omega_by_entry.clone();
        let exchange_brute = (1..n).map(|a| agg.exchange.exchange_number(a).unwrap()).collect();
        let exchange_recursion = exchange_recursion(&agg.heights.alpha, &omega_brute, n).map_err(|e| e.to_string());
        let exits_recursion = exit_recursion(&p, &agg.heights.omega_by_entry_cell, n).map_err(|e| e.to_string());
        let drops_recursion = match &exits_recursion {
            Ok(ex) => drop_from_exits(ex, n).map_err(|e| e.to_string()),
            Err(e) => Err(e.clone()),
        };
        TheoryReport {
            shape: p.clone(),
            order: agg.exchange.order().clone(),
            uniform,
            exchange_recursion,
            exchange_brute,
            exits_recursion,
            exits_brute: agg.exits.values.iter().take(n.saturating_sub(1)).cloned().collect(),
            drops_recursion,
            drops_brute: agg.drops.counts.clone(),
            omega_from_distribution: omega_from_distribution(&agg.distribution),
            omega_uniform: uniform.then(|| uniform_omega(&p)),
            omega_brute,
        }
    }

    /// Exchange recursion reproduces brute force.
    pub fn thm44(&self) -> bool {
        self.exchange_recursion.as_ref().is_ok_and(|m| *m == self.exchange_brute)
            && self.omega_from_distribution == self.omega_brute
            && self.omega_uniform.as_ref().is_none_or(|w| *w == self.omega_brute)
    }

    /// Exit recursion reproduces brute force.
    pub fn thm53(&self) -> bool {
        self.exits_recursion.as_ref().is_ok_and(|d| *d == self.exits_brute)
    }

    /// Drops derived from exits reproduce brute force.
    pub fn cor54(&self) -> bool {
        self.drops_recursion.as_ref().is_ok_and(|d| *d == self.drops_brute)
    }
}

/// Map from `(b, x)` to a value, for reports keyed by entry and cell.
pub fn keyed<C: Clone>(p: &Partition, table: &[Vec<C>]) -> BTreeMap<(usize, Cell), C> {
    let cells: Vec<Cell> = p.cells().collect();
    table
        .iter()
        .enumerate()
        .flat_map(|(b, row)| row.iter().enumerate().map(move |(c, v)| ((b + 1, c), v.clone())))
        .map(|((b, c), v)| ((b, cells[c]), v))
        .collect()
}

/// Serialized verdict of the gcd conjecture checker.
#[derive(Clone, Debug, Serialize)]
pub struct Conjecture66Json {
    pub gcd: String,
    pub lcm: String,
    pub ratio: String,
    pub is_integer: bool,
    pub uniform: bool,
    pub zero_cells: Vec<(usize, Cell)>,
}

impl<C: Count> From<&Conjecture66<C>> for Conjecture66Json {
    fn from(c: &Conjecture66<C>) -> Self {
        Conjecture66Json {
            gcd: c.gcd.to_string(),
            lcm: c.lcm.to_string(),
            ratio: ratio_string(&c.ratio),
            is_integer: c.is_integer,
            uniform: c.uniform,
            zero_cells: c.zero_cells.clone(),
        }
    }
}
