//! Invariants every single sort must satisfy, checked trace by trace.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::nps::{beta, drop_records, SortTrace, Sorter, Transposition};
use crate::partition::{neighbors, Cell};
use crate::tableau::Tableau;

fn fail(msg: String) -> Error {
    Error::invariant(msg)
}

/// Composing the recorded transpositions onto the input yields the result,
/// which is standard; `r = 0` exactly for standard inputs.
pub fn check_composition(trace: &SortTrace) -> Result<()> {
    let composed = trace.steps().iter().fold(trace.initial().clone(), |t, tr| t.swap_entries(tr.small, tr.large));
    if &composed != trace.result() {
        return Err(fail(format!("transpositions do not compose to the result for {}", trace.initial())));
    }
    if !trace.result().is_standard() {
        return Err(fail(format!("result of {} is not standard", trace.initial())));
    }
    if trace.is_empty() != trace.initial().is_standard() {
        return Err(fail(format!("r = {} on {}", trace.len(), trace.initial())));
    }
    Ok(())
}

/// Each exchange swaps neighbouring cells, moving the smaller entry one step
/// toward the corner and the larger one step away.
pub fn check_heights(trace: &SortTrace) -> Result<()> {
    let shape = trace.initial().shape();
    let mut prev = trace.initial().clone();
    for tr in trace.steps() {
        if tr.small >= tr.large {
            return Err(fail(format!("step {} has a >= b", tr.step)));
        }
        if !neighbors(shape, tr.x)?.plus.contains(&tr.y) {
            return Err(fail(format!("step {}: {} is not below/right of {}", tr.step, tr.y, tr.x)));
        }
        if prev.get(tr.x) != Some(tr.large) || prev.get(tr.y) != Some(tr.small) {
            return Err(fail(format!("step {} does not match the cells it names", tr.step)));
        }
        let next = prev.swap_entries(tr.small, tr.large);
        let dh = |t: &Tableau, e| t.height_of(e).unwrap() as i64;
        if dh(&next, tr.small) != dh(&prev, tr.small) - 1 || dh(&next, tr.large) != dh(&prev, tr.large) + 1 {
            return Err(fail(format!("step {} breaks the height rule", tr.step)));
        }
        prev = next;
    }
    Ok(())
}

/// Exchanges of `b` with smaller entries happen at consecutive steps with the
/// smaller entries increasing; no pair is exchanged twice.
pub fn check_drops(trace: &SortTrace) -> Result<()> {
    let n = trace.initial().size();
    let mut seen = HashSet::new();
    for tr in trace.steps() {
        if !seen.insert((tr.small, tr.large)) {
            return Err(fail(format!("pair ({}, {}) exchanged twice", tr.small, tr.large)));
        }
    }
    for b in 1..=n {
        let mine: Vec<&Transposition> = trace.steps().iter().filter(|t| t.large == b).collect();
        for w in mine.windows(2) {
            if w[1].step != w[0].step + 1 || w[1].small <= w[0].small {
                return Err(fail(format!("drop of {b} is not consecutive and increasing")));
            }
        }
    }
    let mu = trace.mu_values();
    if mu.windows(2).any(|w| w[0] < w[1]) || mu.first() != Some(&trace.len()) || mu.last() != Some(&0) {
        return Err(fail(format!("mu values {mu:?} malformed for r = {}", trace.len())));
    }
    // The μ-based split and the path-following peak must agree.
    let records = drop_records(trace)?;
    let dropped: usize = records.iter().map(|r| r.drop_path.len()).sum();
    if dropped != trace.len() {
        return Err(fail("drop records do not cover every exchange".into()));
    }
    let tabs = trace.tableaux();
    for b in 1..=n {
        let peak = tabs.iter().map(|t| t.height_of(b).unwrap()).max().unwrap();
        if beta(trace, b)? != peak {
            return Err(fail(format!("beta({b}) differs from the peak height {peak}")));
        }
    }
    Ok(())
}

pub fn check_trace(trace: &SortTrace) -> Result<()> {
    check_composition(trace)?;
    check_heights(trace)?;
    check_drops(trace)
}

/// `(a, x, y)` for every exchange of `large` with a smaller entry `a`, where
/// `a` moved from `x` to `y`.
fn drops_of(trace: &SortTrace, large: usize) -> BTreeSet<(usize, Cell, Cell)> {
    trace.steps().iter().filter(|t| t.large == large).map(|t| (t.small, t.y, t.x)).collect()
}

/// Swapping `b` and `b + 1` in the input: the traces agree up to the
/// transposition `(b, b+1)` until both entries have dropped, and the drops of
/// `b` and `b + 1` trade places.
pub fn check_swap_stability(sorter: &Sorter, t: &Tableau, b: usize) -> Result<()> {
    let n = t.size();
    if b == 0 || b >= n {
        return Err(Error::domain(format!("need 1 <= b < n, got {b}")));
    }
    let order = sorter.order();
    let rank = |t: &Tableau, e: usize| order.get(t.position(e).unwrap()).unwrap();
    // Orient the pair so that `b` sits in the earlier of the two cells.
    let (t, star) = if rank(t, b) < rank(t, b + 1) {
        (t.clone(), t.swap_entries(b, b + 1))
    } else {
        (t.swap_entries(b, b + 1), t.clone())
    };
    let tr = sorter.sort(&t)?;
    let tr_star = sorter.sort(&star)?;
    let i = rank(&t, b);
    let upto = tr.mu(i);
    if tr_star.len() < upto {
        return Err(fail(format!("T* = {star} stops before step {upto}")));
    }
    let (mut cur, mut cur_star) = (t.clone(), star.clone());
    for k in 0..=upto {
        if cur != cur_star.swap_entries(b, b + 1) {
            return Err(fail(format!("T_{k} and T*_{k} differ beyond (b, b+1) for T = {t}, b = {b}")));
        }
        if k < upto {
            let (s, s_star) = (tr.steps()[k], tr_star.steps()[k]);
            cur = cur.swap_entries(s.small, s.large);
            cur_star = cur_star.swap_entries(s_star.small, s_star.large);
        }
    }
    let below = |set: BTreeSet<(usize, Cell, Cell)>| -> BTreeSet<_> { set.into_iter().filter(|d| d.0 < b).collect() };
    if below(drops_of(&tr, b)) != below(drops_of(&tr_star, b + 1))
        || below(drops_of(&tr, b + 1)) != below(drops_of(&tr_star, b))
    {
        return Err(fail(format!("drops of {b} and {} do not trade places for T = {t}", b + 1)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_tableaux;
    use crate::partition::Partition;
    use crate::tableau::{column_order, row_order};

    #[test]
    fn every_trace_of_small_shapes() {
        for p in ["2,1", "2,2", "3,1", "3,2"] {
            let p: Partition = p.parse().unwrap();
            for u in [row_order(&p), column_order(&p)] {
                let s = Sorter::new(&u).unwrap();
                for t in enumerate_tableaux(&p).unwrap() {
                    check_trace(&s.sort(&t).unwrap()).unwrap();
                    for b in 1..p.size() {
                        check_swap_stability(&s, &t, b).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn swap_check_rejects_out_of_range_entries() {
        let p: Partition = "2,1".parse().unwrap();
        let s = Sorter::new(&column_order(&p)).unwrap();
        let t = Tableau::from_rows(&[vec![3, 2], vec![1]]).unwrap();
        let good = s.sort(&t).unwrap();
        check_trace(&good).unwrap();
        assert!(check_swap_stability(&s, &t, 3).is_err());
    }
}
