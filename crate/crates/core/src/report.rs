//! JSON and CSV renderings of aggregation results.
//!
//! Counts are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise. Rationals are written as
//! `{"exact": "p/q", "decimal": "…"}`.
//!
//! CSV schema: a header row `b,row,col,drop,signed_exit,terminal`, then one
//! record per entry `b` and cell `(row, col)`, entries ascending and cells
//! row-major within each entry.

use std::io::Write;

use num_rational::Ratio;
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::scalar::{ratio_decimal, ratio_string, Count};
use crate::stats::{complexity, complexity_from_beta, complexity_from_exchange, is_uniform, Aggregate, Mode};

pub fn count_json<C: Count>(v: &C) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(v.to_string()),
    }
}

pub fn ratio_json<C: Count>(r: &Ratio<C>) -> Value {
    json!({ "exact": ratio_string(r), "decimal": ratio_decimal(r, 9) })
}

fn counts_json<C: Count>(v: &[C]) -> Value {
    Value::Array(v.iter().map(count_json).collect())
}

/// The full report of one aggregation run. `order_label` names the order
/// the way it was requested (`column`, `strip:RCC`, …).
pub fn aggregate_json<C: Count>(agg: &Aggregate<C>, order_label: &str) -> Result<Value> {
    let n = agg.size();
    let cells: Vec<_> = agg.shape.cells().collect();
    let mut out = Map::new();
    out.insert("shape".into(), json!(agg.shape.parts()));
    out.insert("order".into(), json!({ "label": order_label, "tableau": agg.exchange.order() }));
    match agg.mode {
        Mode::Exhaustive => {
            out.insert("mode".into(), json!("exhaustive"));
        }
        Mode::Sample { samples, seed } => {
            out.insert("mode".into(), json!({ "sample": { "samples": samples, "seed": seed } }));
        }
        Mode::Stream => {
            out.insert("mode".into(), json!("stream"));
        }
    }
    out.insert("fillings".into(), count_json(&agg.fillings));
    out.insert("total_steps".into(), count_json(&agg.total_steps));

    if agg.is_exhaustive() {
        let direct = complexity(&agg.total_steps, n);
        let from_beta = complexity_from_beta(&agg.heights, n);
        let from_exchange = complexity_from_exchange(&agg.exchange)?;
        out.insert(
            "complexity".into(),
            json!({
                "direct": ratio_json(&direct),
                "from_exchange": ratio_json(&from_exchange),
                "from_beta": ratio_json(&from_beta),
                "agree": direct == from_beta && direct == from_exchange,
            }),
        );
        out.insert("uniform".into(), json!(is_uniform(&agg.distribution)));
    } else {
        let (mean, se) = agg.mean_and_std_error();
        out.insert("estimate".into(), json!({ "mean": mean, "std_error": se }));
    }
    out.insert("alpha".into(), count_json(&agg.heights.alpha));

    let ex = &agg.exchange;
    let local: Vec<Value> = ex
        .local_entries()
        .into_iter()
        .map(|(a, x, y, v)| json!({ "a": a, "x": x, "y": y, "count": count_json(&v) }))
        .collect();
    out.insert(
        "exchange".into(),
        json!({
            "matrix": ex.matrix().iter().map(|r| counts_json(r)).collect::<Vec<_>>(),
            "exchange_numbers": (1..n).map(|a| count_json(&ex.exchange_number(a).unwrap())).collect::<Vec<_>>(),
            "local": local,
        }),
    );
    let z = &agg.distribution;
    out.insert(
        "distribution".into(),
        Value::Array(
            z.tableaux
                .iter()
                .zip(&z.multiplicities)
                .map(|(w, m)| json!({ "rows": w.rows(), "multiplicity": count_json(m) }))
                .collect(),
        ),
    );
    out.insert(
        "heights".into(),
        json!({
            "omega": counts_json(&agg.heights.omega_by_entry),
            "beta": counts_json(&agg.heights.beta_by_entry),
        }),
    );
    let mut table = Vec::with_capacity(n * n);
    for b in 1..=n {
        for (c, x) in cells.iter().enumerate() {
            table.push(json!({
                "b": b,
                "x": x,
                "drop": count_json(&agg.drops.counts[b - 1][c]),
                "signed_exit": count_json(&agg.exits.values[b - 1][c]),
                "terminal": count_json(&agg.heights.omega_by_entry_cell[b - 1][c]),
            }));
        }
    }
    out.insert("by_entry_cell".into(), Value::Array(table));
    Ok(Value::Object(out))
}

pub fn write_csv<C: Count, W: Write>(agg: &Aggregate<C>, w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["b", "row", "col", "drop", "signed_exit", "terminal"])?;
    let cells: Vec<_> = agg.shape.cells().collect();
    for b in 1..=agg.size() {
        for (c, x) in cells.iter().enumerate() {
            wr.write_record([
                b.to_string(),
                x.row.to_string(),
                x.col.to_string(),
                agg.drops.counts[b - 1][c].to_string(),
                agg.exits.values[b - 1][c].to_string(),
                agg.heights.omega_by_entry_cell[b - 1][c].to_string(),
            ])?;
        }
    }
    wr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::aggregate_exhaustive;
    use crate::tableau::column_order;
    use num_bigint::BigInt;

    #[test]
    fn report_for_two_one() {
        let u = column_order(&"2,1".parse().unwrap());
        let agg: Aggregate<i64> = aggregate_exhaustive(&u, Some(1)).unwrap();
        let v = aggregate_json(&agg, "column").unwrap();
        assert_eq!(v["complexity"]["direct"]["exact"], "2/3");
        assert_eq!(v["complexity"]["agree"], true);
        assert_eq!(v["exchange"]["exchange_numbers"], json!([2, 0]));
        assert_eq!(v["uniform"], true);

        let mut buf = Vec::new();
        write_csv(&agg, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "b,row,col,drop,signed_exit,terminal");
        assert_eq!(lines[1], "1,1,1,2,-2,6");
        assert_eq!(lines.len(), 10);
    }

    #[test]
    fn big_counts_become_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(count_json(&big), json!("123456789012345678901234567890"));
        assert_eq!(count_json(&BigInt::from(-5)), json!(-5));
    }
}
