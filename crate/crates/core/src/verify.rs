//! Runs the checkers over a shape and a set of orders and collects verdicts.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::checks::{check_composition, check_drops, check_heights, check_swap_stability};
use crate::enumerate::{filling_count, fillings_range};
use crate::error::{Error, Result};
use crate::nps::Sorter;
use crate::partition::Partition;
use crate::scalar::{ratio_string, Count};
use crate::stats::{aggregate_exhaustive, complexity, is_uniform, with_workers, Aggregate, CHUNK};
use crate::tableau::{column_order, row_order, strip_orders_with_choices, StripChoice, Tableau};
use crate::theory::{
    complexity_theorem_check, conjecture66_check, exchange_recursion_closes, fischer_matrix, TheoryReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Thm44,
    Thm53,
    Cor54,
    Prop41,
    Eq21,
    Eq22,
    Fischer,
    Conj66,
    Cor45,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Thm44,
        Check::Thm53,
        Check::Cor54,
        Check::Prop41,
        Check::Eq21,
        Check::Eq22,
        Check::Fischer,
        Check::Conj66,
        Check::Cor45,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Thm44 => "thm44",
            Check::Thm53 => "thm53",
            Check::Cor54 => "cor54",
            Check::Prop41 => "prop41",
            Check::Eq21 => "eq21",
            Check::Eq22 => "eq22",
            Check::Fischer => "fischer",
            Check::Conj66 => "conj66",
            Check::Cor45 => "cor45",
        }
    }

    fn needs_aggregate(self) -> bool {
        !matches!(self, Check::Eq21 | Check::Eq22 | Check::Fischer)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

/// A requested sorting order: `column`, `row`, `strip:<R/C string>`, or
/// `file:<path>` holding tableau JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    Column,
    Row,
    Strip(Vec<StripChoice>),
    File(String),
}

impl OrderSpec {
    pub fn resolve(&self, p: &Partition) -> Result<Tableau> {
        let t = match self {
            OrderSpec::Column => column_order(p),
            OrderSpec::Row => row_order(p),
            OrderSpec::Strip(ch) => crate::tableau::strip_order(p, ch)?,
            OrderSpec::File(path) => {
                let text = std::fs::read_to_string(path)?;
                let t: Tableau = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
                if t.shape() != p {
                    return Err(Error::Parse(format!("{path}: order has shape {} not {p}", t.shape())));
                }
                t
            }
        };
        if !t.is_standard() {
            return Err(Error::Parse(format!("order {self} is not a standard tableau")));
        }
        Ok(t)
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSpec::Column => f.write_str("column"),
            OrderSpec::Row => f.write_str("row"),
            OrderSpec::Strip(ch) => write!(f, "strip:{}", StripChoice::render_seq(ch)),
            OrderSpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

impl FromStr for OrderSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "column" => Ok(OrderSpec::Column),
            "row" => Ok(OrderSpec::Row),
            _ => {
                if let Some(rest) = s.strip_prefix("strip:") {
                    Ok(OrderSpec::Strip(StripChoice::parse_seq(rest)?))
                } else if let Some(rest) = s.strip_prefix("file:") {
                    Ok(OrderSpec::File(rest.to_string()))
                } else {
                    Err(Error::Parse(format!("unknown order {s:?}")))
                }
            }
        }
    }
}

/// Column order, row order, then every other strip order.
pub fn default_orders(p: &Partition) -> Vec<(String, Tableau)> {
    let mut out = vec![("column".to_string(), column_order(p)), ("row".to_string(), row_order(p))];
    for (choices, t) in strip_orders_with_choices(p) {
        if out.iter().all(|(_, u)| *u != t) {
            out.push((OrderSpec::Strip(choices).to_string(), t));
        }
    }
    out
}

/// Verdicts for one order, in the order the checks were requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderVerdict {
    pub shape: Partition,
    pub order: String,
    pub verdicts: Vec<(Check, String)>,
    /// `C(U)` when an aggregate was computed.
    pub complexity: Option<String>,
    pub failed: Vec<Check>,
}

impl OrderVerdict {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("shape".into(), Value::String(self.shape.to_string()));
        m.insert("order".into(), Value::String(self.order.clone()));
        for (c, v) in &self.verdicts {
            let key = if *c == Check::Conj66 { "conj66_ratio" } else { c.name() };
            m.insert(key.into(), Value::String(v.clone()));
        }
        if let Some(cx) = &self.complexity {
            m.insert("complexity".into(), Value::String(cx.clone()));
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub orders: Vec<OrderVerdict>,
    /// Experiment-log lines for the gcd conjecture.
    pub conj66_log: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.orders.iter().all(|o| o.failed.is_empty())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.orders.iter().map(OrderVerdict::to_json).collect())
    }
}

/// Runs `check` on every filling of the sorter's shape, in parallel chunks.
fn for_all_fillings(sorter: &Sorter, check: impl Fn(&Tableau) -> Result<()> + Sync) -> Result<()> {
    let p = sorter.shape();
    let total = filling_count(p.size())?;
    let chunks = total.div_ceil(CHUNK).max(1);
    (0..chunks).into_par_iter().try_for_each(|k| {
        for t in fillings_range(p, k * CHUNK, ((k + 1) * CHUNK).min(total))? {
            check(&t)?;
        }
        Ok(())
    })
}

fn holds(r: Result<()>) -> Result<bool> {
    match r {
        Ok(()) => Ok(true),
        Err(Error::InvariantViolation(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Settings for [`verify`].
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub which: Vec<Check>,
    pub workers: Option<usize>,
    /// Largest number of sorts the Fischer matrix may take.
    pub max_fischer_sorts: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { which: Check::ALL.to_vec(), workers: None, max_fischer_sorts: 50_000_000 }
    }
}

pub fn verify<C: Count>(p: &Partition, orders: &[(String, Tableau)], cfg: &VerifyConfig) -> Result<VerifyReport> {
    with_workers(cfg.workers, || verify_inner::<C>(p, orders, cfg))?
}

fn verify_inner<C: Count>(p: &Partition, orders: &[(String, Tableau)], cfg: &VerifyConfig) -> Result<VerifyReport> {
    let n = p.size();
    let wants = |c: Check| cfg.which.contains(&c);
    let fischer = if wants(Check::Fischer) {
        let f = fischer_matrix::<C>(p, cfg.max_fischer_sorts, None)?;
        Some(f.is_symmetric() && f.row_sums_ok())
    } else {
        None
    };
    let cor45 = if wants(Check::Cor45) { Some(complexity_theorem_check::<C>(p, orders, None)?) } else { None };
    let mut report = VerifyReport::default();
    for (label, u) in orders {
        let sorter = Sorter::new(u)?;
        let agg: Option<Aggregate<C>> =
            if cfg.which.iter().any(|c| c.needs_aggregate()) { Some(aggregate_exhaustive(u, None)?) } else { None };
        let mut verdicts = Vec::new();
        let mut failed = Vec::new();
        let theory = agg.as_ref().filter(|_| n >= 2).map(TheoryReport::from_aggregate);
        for &c in &cfg.which {
            let outcome = match c {
                Check::Thm44 => {
                    let ok = match (&theory, &agg) {
                        (Some(t), Some(a)) => {
                            t.thm44()
                                && exchange_recursion_closes(
                                    &a.heights.alpha,
                                    &a.heights.omega_by_entry,
                                    t.exchange_recursion.as_ref().unwrap(),
                                )
                        }
                        _ => true,
                    };
                    Some((ok, "match", "mismatch"))
                }
                Check::Thm53 => Some((theory.as_ref().is_none_or(|t| t.thm53()), "match", "mismatch")),
                Check::Cor54 => Some((theory.as_ref().is_none_or(|t| t.cor54()), "match", "mismatch")),
                Check::Prop41 => {
                    let a = agg.as_ref().unwrap();
                    let ok = holds(a.exchange.check_independence())?
                        && holds(for_all_fillings(&sorter, |t| {
                            (1..n).try_for_each(|b| check_swap_stability(&sorter, t, b))
                        }))?;
                    Some((ok, "holds", "violated"))
                }
                Check::Eq21 => {
                    let ok = holds(for_all_fillings(&sorter, |t| check_composition(&sorter.sort(t)?)))?;
                    Some((ok, "holds", "violated"))
                }
                Check::Eq22 => {
                    let ok = holds(for_all_fillings(&sorter, |t| {
                        let tr = sorter.sort(t)?;
                        check_heights(&tr)?;
                        check_drops(&tr)
                    }))?;
                    Some((ok, "holds", "violated"))
                }
                Check::Fischer => Some((fischer.unwrap(), "symmetric", "asymmetric")),
                Check::Conj66 => {
                    let a = agg.as_ref().unwrap();
                    let res = conjecture66_check(&a.drops, n, is_uniform(&a.distribution));
                    report.conj66_log.push(res.log_line(p, label));
                    verdicts.push((c, ratio_string(&res.ratio)));
                    None
                }
                Check::Cor45 => {
                    let ok = cor45.as_ref().unwrap().consistent;
                    Some((ok, "consistent", "inconsistent"))
                }
            };
            if let Some((ok, yes, no)) = outcome {
                verdicts.push((c, if ok { yes } else { no }.to_string()));
                if !ok {
                    failed.push(c);
                }
            }
        }
        report.orders.push(OrderVerdict {
            shape: p.clone(),
            order: label.clone(),
            verdicts,
            complexity: agg.as_ref().map(|a| ratio_string(&complexity(&a.total_steps, n))),
            failed,
        });
    }
    Ok(report)
}
