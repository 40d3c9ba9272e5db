//! Parameter sweeps over a construction, written as CSV.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use angles_core::constructions::{Built, ConstructionKind, ConstructionParams};
use angles_core::counters::{self, ChainPolicy, TripleClasses};
use angles_core::{ClusterStats, GeomError, Rational};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::PinKind;

pub const CSV_HEADER: [&str; 6] = ["construction", "n", "quantity", "value", "eps", "elapsed_ms"];

/// A quantity computed per configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    DistinctAngles,
    Pinned(PinKind),
    Chains(usize),
    Energy,
    /// Cauchy–Schwarz lower bound `(n(n−1)(n−2))² / E`.
    Bound,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::DistinctAngles => f.write_str("distinct_angles"),
            Quantity::Pinned(k) => write!(f, "pinned_{k}"),
            Quantity::Chains(k) => write!(f, "chains_{k}"),
            Quantity::Energy => f.write_str("energy"),
            Quantity::Bound => f.write_str("bound"),
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "distinct_angles" => return Ok(Quantity::DistinctAngles),
            "energy" => return Ok(Quantity::Energy),
            "bound" => return Ok(Quantity::Bound),
            _ => {}
        }
        if let Some(kind) = s.strip_prefix("pinned_") {
            return kind.parse().map(Quantity::Pinned);
        }
        if let Some(k) = s.strip_prefix("chains_") {
            return match k.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(Quantity::Chains(k)),
                _ => Err(format!("chain length in `{s}` must be a positive integer")),
            };
        }
        Err(format!("unknown quantity `{s}`"))
    }
}

/// A computed value: a count or a rational bound.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Count(BigUint),
    Ratio(Rational),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Count(c) => c.to_f64().unwrap_or(f64::INFINITY),
            Value::Ratio(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Count(c) => write!(f, "{c}"),
            Value::Ratio(r) => write!(f, "{r}"),
        }
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Count(BigUint::from(v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub construction: String,
    pub n: usize,
    pub quantity: String,
    pub value: Value,
    pub eps: f64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub eps: f64,
    pub chain_policy: ChainPolicy,
    /// Record wall-clock time per row. When off, `elapsed_ms` is 0 and the
    /// CSV is byte-identical across runs.
    pub timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            eps: angles_core::DEFAULT_EPS,
            chain_policy: ChainPolicy::default(),
            timing: true,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    /// Sizes that were skipped, with the reason.
    pub skipped: Vec<(usize, String)>,
    /// Float-mode clustering diagnostics, one per row that produced them.
    pub stats: Vec<(usize, String, ClusterStats)>,
}

/// Evaluate one quantity on a generated configuration, with clustering
/// diagnostics in float mode. Pinned quantities use the construction's
/// designated points, or indices 0 and 1 when it has none.
pub fn evaluate(
    built: &Built,
    quantity: Quantity,
    opts: &SweepOptions,
) -> Result<(Value, Option<ClusterStats>), GeomError> {
    let config = &built.config;
    let eps = opts.eps;
    Ok(match quantity {
        Quantity::DistinctAngles => {
            let t = TripleClasses::scan(config, eps);
            (t.num_classes().into(), t.stats())
        }
        Quantity::Pinned(kind) => {
            let a = built.a.unwrap_or(0);
            let b = built.b.unwrap_or(1);
            let (count, stats) = counters::count_pinned_with_stats(config, kind.spec(a, b), eps)?;
            (count.into(), stats)
        }
        Quantity::Chains(k) => {
            let t = TripleClasses::scan(config, eps);
            (counters::chain_keys(&t, k, opts.chain_policy)?.len().into(), t.stats())
        }
        Quantity::Energy => {
            let hist = counters::angle_histogram(config, eps);
            (Value::Count(counters::energy(&hist)), hist.stats)
        }
        Quantity::Bound => {
            let hist = counters::angle_histogram(config, eps);
            (Value::Ratio(counters::cauchy_schwarz_check(&hist)?.0), hist.stats)
        }
    })
}

/// Generate `kind` at every size in `n_list` (sorted, deduplicated) and
/// evaluate each quantity in the order given.
pub fn run_sweep(
    kind: ConstructionKind,
    base: &ConstructionParams,
    n_list: &[usize],
    quantities: &[Quantity],
    opts: &SweepOptions,
) -> SweepOutput {
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut out = SweepOutput::default();
    for n in ns {
        if !kind.accepts_n(n) {
            out.skipped.push((n, format!("{kind} does not accept n = {n}")));
            continue;
        }
        let params = ConstructionParams { n, ..base.clone() };
        let built = match kind.build(&params) {
            Ok(b) => b,
            Err(e) => {
                out.skipped.push((n, e.to_string()));
                continue;
            }
        };
        for &q in quantities {
            let start = Instant::now();
            match evaluate(&built, q, opts) {
                Ok((value, stats)) => {
                    if let Some(st) = stats {
                        out.stats.push((n, q.to_string(), st));
                    }
                    out.rows.push(SweepRow {
                        construction: kind.name().to_string(),
                        n,
                        quantity: q.to_string(),
                        value,
                        eps: opts.eps,
                        elapsed_ms: if opts.timing { start.elapsed().as_millis() as u64 } else { 0 },
                    })
                }
                Err(e) => out.skipped.push((n, format!("{q}: {e}"))),
            }
        }
    }
    out
}

/// Write rows as CSV with the standard header.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.construction.clone(),
            r.n.to_string(),
            r.quantity.clone(),
            r.value.to_string(),
            format!("{:e}", r.eps),
            r.elapsed_ms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Read rows written by [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| e.to_string())?.clone();
    if headers.iter().ne(CSV_HEADER) {
        return Err(format!("unexpected CSV header `{}`", headers.iter().collect::<Vec<_>>().join(",")));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| format!("line {line}: {e}"))?;
        let field = |j: usize| rec.get(j).unwrap_or("");
        let bad = |what: &str| format!("line {line}: malformed {what}");
        let value_text = field(3);
        let value = if field(2) == "bound" {
            Value::Ratio(value_text.parse().map_err(|_| bad("value"))?)
        } else {
            Value::Count(value_text.parse().map_err(|_| bad("value"))?)
        };
        rows.push(SweepRow {
            construction: field(0).to_string(),
            n: field(1).parse().map_err(|_| bad("n"))?,
            quantity: field(2).to_string(),
            value,
            eps: field(4).parse().map_err(|_| bad("eps"))?,
            elapsed_ms: field(5).parse().map_err(|_| bad("elapsed_ms"))?,
        });
    }
    Ok(rows)
}
