//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Runs without the libtest harness so the lines show up under a plain
//! `cargo test`.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use npslab::checks::{check_swap_stability, check_trace};
use npslab::enumerate::{enumerate_syt, enumerate_tableaux};
use npslab::partition::{alpha, syt_count};
use npslab::report::aggregate_json;
use npslab::scalar::factorial;
use npslab::stats::{aggregate_exhaustive, complexity, complexity_from_beta, complexity_from_exchange, is_uniform};
use npslab::theory::{
    conjecture66_check, exchange_recursion_closes, fischer_matrix, single_row_drop, single_row_partial_drop,
    single_row_recursion_holds, TheoryReport,
};
use npslab::verify::default_orders;
use npslab::{beta, column_order, row_order, Aggregate64, Partition, Sorter, Tableau};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn partitions_upto(n: usize) -> impl Iterator<Item = Partition> {
    (1..=n).flat_map(Partition::all)
}

/// Column, row and strip orders; every standard tableau when `n <= all_upto`.
fn orders(p: &Partition, all_upto: usize) -> Vec<(String, Tableau)> {
    if p.size() <= all_upto {
        enumerate_syt(p).into_iter().enumerate().map(|(i, u)| (format!("syt#{i}"), u)).collect()
    } else {
        default_orders(p)
    }
}

fn exhaustive(u: &Tableau) -> Aggregate64 {
    aggregate_exhaustive(u, None).unwrap()
}

fn hook_length_formula() -> Result<String, String> {
    for p in partitions_upto(8) {
        let brute = enumerate_syt(&p).len() as i64;
        if syt_count::<i64>(&p) != brute {
            return Err(format!("f for {p}: formula {} vs {brute} enumerated", syt_count::<i64>(&p)));
        }
    }
    Ok("f_lambda agrees with enumeration for every partition of n <= 8".into())
}

fn uniformity() -> Result<String, String> {
    let mut count = 0;
    for p in partitions_upto(7) {
        for (label, u) in default_orders(&p) {
            let agg = exhaustive(&u);
            let want = factorial::<i64>(p.size()) / syt_count::<i64>(&p);
            if agg.distribution.multiplicities.iter().any(|&z| z != want) {
                return Err(format!("{p} {label}: z_U(W) not constantly {want}"));
            }
            count += 1;
        }
    }
    Ok(format!("z_U(W) = n!/f for {count} (shape, order) pairs with n <= 7"))
}

fn exchange_independence() -> Result<String, String> {
    let mut count = 0;
    for p in partitions_upto(7) {
        for (label, u) in orders(&p, 5) {
            exhaustive(&u).exchange.check_independence().map_err(|e| format!("{p} {label}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("m(a,b,x,y) and m(a,b) independent of b for {count} orders"))
}

fn exchange_recursion() -> Result<String, String> {
    let mut count = 0;
    for p in partitions_upto(7).filter(|p| p.size() >= 2) {
        let n = p.size() as i64;
        for (label, u) in orders(&p, 5) {
            let agg = exhaustive(&u);
            let t = TheoryReport::from_aggregate(&agg);
            let m = t.exchange_recursion.clone().map_err(|e| format!("{p} {label}: {e}"))?;
            if !t.thm44() || !exchange_recursion_closes(&agg.heights.alpha, &agg.heights.omega_by_entry, &m) {
                return Err(format!("{p} {label}: recursion {m:?} vs brute {:?}", t.exchange_brute));
            }
            let a = alpha::<i64>(&p).unwrap();
            if m[0] * (n - 1) != a {
                return Err(format!("{p} {label}: m(1) = {} but alpha = {a}", m[0]));
            }
            count += 1;
        }
    }
    let u = column_order(&"2,1".parse().unwrap());
    let agg = exhaustive(&u);
    let m: Vec<i64> = (1..3).map(|a| agg.exchange.exchange_number(a).unwrap()).collect();
    let c = complexity(&agg.total_steps, 3);
    if m != [2, 0] || c != Ratio::new(2, 3) || complexity_from_exchange(&agg.exchange).unwrap() != c {
        return Err(format!("(2,1) column: m = {m:?}, C = {c}"));
    }
    Ok(format!("recursion matches brute force for {count} orders; (2,1) column m = (2, 0), C = 2/3"))
}

fn row_column_complexity() -> Result<String, String> {
    let shapes: Vec<Partition> = partitions_upto(8).collect();
    let bad: Vec<String> = shapes
        .par_iter()
        .filter_map(|p| {
            let n = p.size();
            let cr = complexity(&exhaustive(&row_order(p)).total_steps, n);
            let cc = complexity(&exhaustive(&column_order(p)).total_steps, n);
            (cr != cc).then(|| format!("{p}: row {cr} vs column {cc}"))
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("row and column complexities equal for all {} partitions of n <= 8", shapes.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn drop_recursion() -> Result<String, String> {
    let mut count = 0;
    for p in partitions_upto(7).filter(|p| p.size() >= 2) {
        for (label, u) in orders(&p, 5) {
            let agg = exhaustive(&u);
            let t = TheoryReport::from_aggregate(&agg);
            if !t.thm53() || !t.cor54() {
                return Err(format!("{p} {label}: exit/drop recursion disagrees with brute force"));
            }
            if let Some(b) = agg.exits.values.iter().position(|row| row.iter().sum::<i64>() != 0) {
                return Err(format!("{p} {label}: signed exits of {} do not sum to zero", b + 1));
            }
            count += 1;
        }
    }
    let agg = exhaustive(&column_order(&"2,1".parse().unwrap()));
    if agg.exits.values[0] != [-2, 1, 1] || agg.drops.counts[1] != [0, 3, 3] || agg.drops.counts[2] != [0, 3, 3] {
        return Err(format!("(2,1) column: exits {:?}, drops {:?}", agg.exits.values, agg.drops.counts));
    }
    Ok(format!("exit and drop recursions match brute force for {count} orders; (2,1) oracle values hold"))
}

fn single_row() -> Result<String, String> {
    for n in 1..=7 {
        let p = Partition::row(n);
        let u = row_order(&p);
        let agg = exhaustive(&u);
        for a in 1..=n {
            for x in 1..=n {
                if agg.drops.counts[a - 1][x - 1] != single_row_drop::<i64>(n, a, x) {
                    return Err(format!("d_{n}({a},{x}) = {}", agg.drops.counts[a - 1][x - 1]));
                }
            }
        }
        // partial[a][x][y]: T(x) = a and a ends its drop at y.
        let mut partial = vec![vec![vec![0i64; n]; n]; n];
        let sorter = Sorter::new(&u).unwrap();
        for t in enumerate_tableaux(&p).unwrap() {
            let trace = sorter.sort(&t).unwrap();
            for a in 1..=n {
                let x = t.position(a).unwrap().col;
                let y = beta(&trace, a).unwrap() + 1;
                partial[a - 1][x - 1][y - 1] += 1;
            }
        }
        for a in 1..=n {
            for x in 1..=n {
                for y in 1..=n {
                    let want = single_row_partial_drop::<i64>(n, a, x, y);
                    if partial[a - 1][x - 1][y - 1] != want {
                        return Err(format!("d_{n}({a},{x},{y}): brute {} vs {want}", partial[a - 1][x - 1][y - 1]));
                    }
                }
            }
        }
        if !single_row_recursion_holds::<i64>(n) {
            return Err(format!("partial-drop recursion fails for n = {n}"));
        }
    }
    Ok("closed forms d_n(a,x,y), d_n(a,x) and the partial-drop recursion hold for n <= 7".into())
}

fn fischer_symmetry() -> Result<String, String> {
    let mut count = 0;
    for p in partitions_upto(6) {
        let f = fischer_matrix::<i64>(&p, u64::MAX, None).map_err(|e| e.to_string())?;
        if !f.is_symmetric() || !f.row_sums_ok() {
            return Err(format!("{p}: matrix not symmetric"));
        }
        count += 1;
    }
    Ok(format!("(z_U(W)) symmetric for all {count} partitions of n <= 6"))
}

fn gcd_conjecture() -> Result<String, String> {
    for n in 1..=7 {
        let agg = exhaustive(&row_order(&Partition::row(n)));
        let c = conjecture66_check(&agg.drops, n, is_uniform(&agg.distribution));
        if c.ratio != Ratio::from_integer(1) {
            return Err(format!("({n}): ratio {}", c.ratio));
        }
    }
    let mut logged = 0;
    for p in partitions_upto(6).filter(|p| p.rows() > 1) {
        for (label, u) in default_orders(&p) {
            let agg = exhaustive(&u);
            let c = conjecture66_check(&agg.drops, p.size(), is_uniform(&agg.distribution));
            println!("      {}", c.log_line(&p, &label));
            logged += 1;
        }
    }
    Ok(format!("ratio = 1 for single rows n <= 7; {logged} other (shape, order) ratios logged"))
}

fn per_trace_invariants() -> Result<String, String> {
    let mut traces = 0u64;
    for p in partitions_upto(6) {
        for (label, u) in default_orders(&p) {
            let sorter = Sorter::new(&u).unwrap();
            let all: Vec<Tableau> = enumerate_tableaux(&p).unwrap().collect();
            all.par_iter()
                .try_for_each(|t| {
                    check_trace(&sorter.sort(t)?)?;
                    (1..p.size()).try_for_each(|b| check_swap_stability(&sorter, t, b))
                })
                .map_err(|e| format!("{p} {label}: {e}"))?;
            traces += all.len() as u64;
        }
    }
    // 10^5 seeded fillings spread over three shapes of size 12, each sorted
    // under both the column and the row order.
    let shapes: [Partition; 3] = ["4,3,3,2".parse().unwrap(), "5,4,2,1".parse().unwrap(), "6,3,2,1".parse().unwrap()];
    let sorters: Vec<[Sorter; 2]> =
        shapes.iter().map(|p| [Sorter::new(&column_order(p)).unwrap(), Sorter::new(&row_order(p)).unwrap()]).collect();
    const SAMPLES: u64 = 100_000;
    (0..SAMPLES)
        .into_par_iter()
        .try_for_each(|k| {
            let i = (k % 3) as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(12);
            rng.set_stream(k);
            let mut entries: Vec<usize> = (1..=12).collect();
            entries.shuffle(&mut rng);
            let t = Tableau::new(shapes[i].clone(), entries)?;
            for sorter in &sorters[i] {
                check_trace(&sorter.sort(&t)?)?;
                (1..12).try_for_each(|b| check_swap_stability(sorter, &t, b))?;
            }
            Ok::<_, npslab::Error>(())
        })
        .map_err(|e| e.to_string())?;
    traces += 2 * SAMPLES;
    Ok(format!("{traces} traces checked (exhaustive n <= 6, 10^5 random n = 12 fillings under two orders)"))
}

fn determinism() -> Result<String, String> {
    let p: Partition = "4,3,2".parse().unwrap();
    let u = column_order(&p);
    let mut outputs = Vec::new();
    let mut slowest = Duration::ZERO;
    for w in [1, 4, 8] {
        let start = Instant::now();
        let agg: Aggregate64 = aggregate_exhaustive(&u, Some(w)).unwrap();
        let bytes = serde_json::to_vec_pretty(&aggregate_json(&agg, "column").unwrap()).unwrap();
        slowest = slowest.max(start.elapsed());
        if agg.fillings != 362_880 || complexity_from_beta(&agg.heights, 9) != complexity(&agg.total_steps, 9) {
            return Err("n = 9 aggregate is inconsistent".into());
        }
        outputs.push(bytes);
    }
    if outputs.windows(2).any(|w| w[0] != w[1]) {
        return Err("output differs between worker counts".into());
    }
    if slowest > Duration::from_secs(60) {
        return Err(format!("slowest n = 9 run took {slowest:?}"));
    }
    Ok(format!("n = 9 exhaustive, identical bytes for 1/4/8 workers, slowest {:.2}s", slowest.as_secs_f64()))
}

type Criterion = (&'static str, fn() -> Result<String, String>);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("hook-length formula", hook_length_formula),
        ("uniformity of the distribution vector", uniformity),
        ("exchange numbers independent of b", exchange_independence),
        ("exchange-number recursion", exchange_recursion),
        ("row-wise = column-wise complexity", row_column_complexity),
        ("signed-exit and drop recursions", drop_recursion),
        ("single-row closed forms", single_row),
        ("Fischer symmetry", fischer_symmetry),
        ("gcd conjecture checker", gcd_conjecture),
        ("per-trace invariants", per_trace_invariants),
        ("determinism and n = 9 performance", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
