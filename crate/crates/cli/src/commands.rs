use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use kstat_core::combinatorics::{bell, integer_partitions};
use kstat_core::kstats::{
    k_statistic_batch_with, k_statistic_with, resample, summarize_replicates, CoefficientCache,
    KStatOptions, KStatRequest, ReplicateSummary, ResampleScheme, HARD_MAX_ORDER,
};
use kstat_core::oracle::{
    enumeration_size, exact_cumulant, exact_expectation_of_kstat, fixture_distributions,
    RowSampler, StandardNormalSampler,
};
use kstat_core::symbolic::{
    cumulant_from_moments_formula, k_statistic_formula, moments_from_cumulants_formula, render,
    RenderStyle,
};
use kstat_core::{Dataset, IndexMultiset, VERSION};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{code, CliError};
use crate::input::{read_csv, resolve_order};
use crate::{Format, Kind};

/// 17 significant digits: enough for any f64 to round-trip.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_out(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

pub fn parse_resample(spec: &str, seed: u64) -> Result<Option<ResampleScheme>, CliError> {
    match spec {
        "none" => Ok(None),
        "jackknife" => Ok(Some(ResampleScheme::Jackknife)),
        other => {
            let count = other
                .strip_prefix("bootstrap:")
                .and_then(|c| c.parse::<usize>().ok())
                .filter(|&c| c > 0)
                .ok_or_else(|| {
                    CliError::Usage(format!("invalid --resample '{other}': expected none, jackknife, or bootstrap:COUNT"))
                })?;
            Ok(Some(ResampleScheme::Bootstrap { count, seed }))
        }
    }
}

fn scheme_name(scheme: &ResampleScheme) -> String {
    match scheme {
        ResampleScheme::Jackknife => "jackknife".to_string(),
        ResampleScheme::Bootstrap { count, .. } => format!("bootstrap:{count}"),
    }
}

pub struct ComputeOptions {
    pub format: Format,
    pub resample: Option<ResampleScheme>,
    pub seed: u64,
    pub max_order: usize,
    pub center: bool,
}

struct ComputeResult {
    labels: Vec<String>,
    k: usize,
    value: f64,
    elapsed_ms: f64,
    replicates: Option<(Vec<f64>, Option<ReplicateSummary>)>,
}

pub fn compute(
    input: &Path,
    orders: &[String],
    opts: &ComputeOptions,
) -> Result<ExitCode, CliError> {
    let table = read_csv(input)?;
    let data = if opts.center {
        table.data.centered()
    } else {
        table.data
    };
    let n = data.n_rows();
    let specs = orders
        .iter()
        .map(|spec| resolve_order(spec, &table.names))
        .collect::<Result<Vec<_>, _>>()?;

    let kopts = KStatOptions {
        max_order: opts.max_order,
    };
    let cache = CoefficientCache::new(n);
    let replicate_sets: Option<Vec<Dataset>> =
        opts.resample.map(|s| resample(&data, s)).transpose()?;
    let mut results = Vec::with_capacity(specs.len());
    for (idx, labels) in specs {
        let start = Instant::now();
        let value = k_statistic_with(&cache, KStatRequest::new(&data, &idx), &kopts)?;
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let replicates = match (&replicate_sets, opts.resample) {
            (Some(sets), Some(scheme)) => {
                let values = k_statistic_batch_with(sets, &idx, &kopts)?;
                let summary = summarize_replicates(&values, scheme);
                Some((values, summary))
            }
            _ => None,
        };
        results.push(ComputeResult {
            labels,
            k: idx.order(),
            value,
            elapsed_ms,
            replicates,
        });
    }

    let text = match opts.format {
        Format::Json => compute_json(&results, n, opts),
        Format::Csv => compute_csv(&results, n)?,
        Format::Plain => compute_plain(&results, n, opts),
    };
    write_out(&text)?;
    Ok(ExitCode::from(code::OK))
}

fn compute_json(results: &[ComputeResult], n: usize, opts: &ComputeOptions) -> String {
    let items: Vec<Value> = results
        .iter()
        .map(|r| {
            let mut item = json!({
                "order_spec": r.labels,
                "k": r.k,
                "value": r.value,
                "elapsed_ms": r.elapsed_ms,
            });
            if let Some((values, summary)) = &r.replicates {
                item["replicates"] = json!(values);
                item["summary"] = match summary {
                    Some(s) => json!({ "mean": s.mean, "stderr": s.stderr }),
                    None => Value::Null,
                };
            }
            item
        })
        .collect();
    let doc = json!({
        "version": VERSION,
        "seed": opts.seed,
        "resample": opts.resample.as_ref().map_or("none".to_string(), scheme_name),
        "n_rows": n,
        "results": items,
    });
    format!(
        "{}\n",
        serde_json::to_string_pretty(&doc).expect("serializable")
    )
}

fn compute_csv(results: &[ComputeResult], n: usize) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "order_spec",
        "k",
        "n_rows",
        "value",
        "elapsed_ms",
        "replicates",
        "replicate_mean",
        "replicate_stderr",
    ];
    let to_io = |e: csv::Error| CliError::Io(format!("csv output: {e}"));
    w.write_record(header).map_err(to_io)?;
    for r in results {
        let (count, mean, stderr) = match &r.replicates {
            Some((values, Some(s))) => {
                (values.len().to_string(), fmt_f64(s.mean), fmt_f64(s.stderr))
            }
            Some((values, None)) => (values.len().to_string(), String::new(), String::new()),
            None => (String::new(), String::new(), String::new()),
        };
        w.write_record([
            r.labels.join(","),
            r.k.to_string(),
            n.to_string(),
            fmt_f64(r.value),
            format!("{:.3}", r.elapsed_ms),
            count,
            mean,
            stderr,
        ])
        .map_err(to_io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Io(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8 output"))
}

fn compute_plain(results: &[ComputeResult], n: usize, opts: &ComputeOptions) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "k[{}] = {}  (N={n}, k={}, {:.3} ms)\n",
            r.labels.join(","),
            fmt_f64(r.value),
            r.k,
            r.elapsed_ms
        ));
        if let (Some((values, summary)), Some(scheme)) = (&r.replicates, &opts.resample) {
            match summary {
                Some(s) => out.push_str(&format!(
                    "  {}: {} replicates, mean {}, stderr {}\n",
                    scheme_name(scheme),
                    values.len(),
                    fmt_f64(s.mean),
                    fmt_f64(s.stderr)
                )),
                None => out.push_str(&format!(
                    "  {}: {} replicate\n",
                    scheme_name(scheme),
                    values.len()
                )),
            }
        }
    }
    out
}

pub fn symbolic(
    kind: Kind,
    order: Option<usize>,
    indices: Option<&str>,
    latex: bool,
    json: bool,
) -> Result<ExitCode, CliError> {
    let idx = match (order, indices) {
        (Some(k), None) => IndexMultiset::distinct(k)?,
        (None, Some(list)) => {
            let parsed = list
                .split(',')
                .map(|t| t.trim().parse::<usize>().ok().filter(|&i| i >= 1))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "invalid --indices '{list}': expected 1-based integers"
                    ))
                })?;
            IndexMultiset::new(parsed)?
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --order or --indices".into(),
            ))
        }
    };
    let formula = match kind {
        Kind::Kstat => k_statistic_formula(&idx)?,
        Kind::Cumulant => cumulant_from_moments_formula(&idx)?,
        Kind::Moment => moments_from_cumulants_formula(&idx)?,
    };
    let style = if latex {
        RenderStyle::Latex
    } else if json {
        RenderStyle::Json
    } else {
        RenderStyle::Plain
    };
    write_out(&format!("{}\n", render(&formula, style)))?;
    Ok(ExitCode::from(code::OK))
}

/// Every multiset of order `k` over variables `1..=dims`.
fn multisets(dims: usize, k: usize) -> Vec<IndexMultiset> {
    let mut out = Vec::new();
    let mut cur = vec![1usize; k];
    loop {
        out.push(IndexMultiset::new(cur.clone()).expect("non-empty, sorted"));
        let Some(pos) = (0..k).rev().find(|&j| cur[j] < dims) else {
            return out;
        };
        let v = cur[pos] + 1;
        cur[pos..].iter_mut().for_each(|x| *x = v);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CellStatus {
    Pass,
    Fail,
    Skip,
}

impl CellStatus {
    fn as_str(self) -> &'static str {
        match self {
            CellStatus::Pass => "PASS",
            CellStatus::Fail => "FAIL",
            CellStatus::Skip => "SKIP",
        }
    }
}

pub fn verify(orders: &[usize], budget: u128, format: Format) -> Result<ExitCode, CliError> {
    if let Some(&bad) = orders.iter().find(|&&k| k == 0) {
        return Err(CliError::Usage(format!("invalid order {bad}")));
    }
    let mut cells = Vec::new();
    for dist in fixture_distributions() {
        for &k in orders {
            let mut sizes = vec![k, k + 1, 5];
            sizes.sort_unstable();
            sizes.dedup();
            for n in sizes.into_iter().filter(|&n| n >= k) {
                let status = if enumeration_size(&dist, n, budget).is_err() {
                    CellStatus::Skip
                } else {
                    let mut ok = true;
                    for idx in multisets(dist.dim(), k) {
                        let e = exact_expectation_of_kstat(&dist, n, &idx, budget)?;
                        ok &= e == exact_cumulant(&dist, &idx)?;
                    }
                    if ok {
                        CellStatus::Pass
                    } else {
                        CellStatus::Fail
                    }
                };
                cells.push((dist.name().to_string(), k, n, status));
            }
        }
    }
    let count = |s: CellStatus| cells.iter().filter(|c| c.3 == s).count();
    let (passed, failed, skipped) = (
        count(CellStatus::Pass),
        count(CellStatus::Fail),
        count(CellStatus::Skip),
    );

    let text = match format {
        Format::Json => {
            let items: Vec<Value> = cells
                .iter()
                .map(|(d, k, n, s)| json!({ "distribution": d, "k": k, "n": n, "status": s.as_str() }))
                .collect();
            let doc = json!({ "version": VERSION, "budget": budget.to_string(), "cells": items,
                "passed": passed, "failed": failed, "skipped": skipped });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )
        }
        Format::Csv | Format::Plain => {
            let mut out = String::new();
            for (d, k, n, s) in &cells {
                out.push_str(&format!("{} {d} k={k} N={n}\n", s.as_str()));
            }
            out.push_str(&format!(
                "verify: {passed} passed, {failed} failed, {skipped} skipped\n"
            ));
            out
        }
    };
    write_out(&text)?;
    Ok(ExitCode::from(if failed > 0 {
        code::VERIFY_FAILED
    } else if skipped > 0 {
        code::VERIFY_SKIPPED
    } else {
        code::OK
    }))
}

pub fn bench(
    max_order: usize,
    rows: usize,
    seed: u64,
    format: Format,
) -> Result<ExitCode, CliError> {
    if max_order == 0 {
        return Err(CliError::Usage("--max-order must be at least 1".into()));
    }
    if max_order > HARD_MAX_ORDER {
        return Err(CliError::OrderCap {
            order: max_order,
            cap: HARD_MAX_ORDER,
        });
    }
    if rows < max_order {
        return Err(CliError::InsufficientRows {
            n: rows,
            k: max_order,
        });
    }
    let sampler = StandardNormalSampler { dims: 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0.0; rows];
    for v in values.chunks_exact_mut(1) {
        sampler.sample_row(&mut rng, v);
    }
    let data = Dataset::from_row_major(values, rows, 1)?;
    let opts = KStatOptions { max_order };

    let mut table = Vec::with_capacity(max_order);
    for k in 1..=max_order {
        let idx = IndexMultiset::repeated(1, k)?;
        let cache = CoefficientCache::new(rows);
        let start = Instant::now();
        k_statistic_with(&cache, KStatRequest::new(&data, &idx), &opts)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        table.push((
            k,
            bell(k).to_string(),
            integer_partitions(k)?.len(),
            ms,
            cache.len(),
        ));
    }

    let text = match format {
        Format::Json => {
            let items: Vec<Value> = table
                .iter()
                .map(|(k, b, p, ms, c)| json!({ "k": k, "bell": b, "partitions": p, "elapsed_ms": ms, "cache_entries": c }))
                .collect();
            let doc = json!({ "version": VERSION, "seed": seed, "n_rows": rows, "rows": items });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )
        }
        Format::Csv => {
            let mut out = String::from("k,bell,partitions,elapsed_ms,cache_entries\n");
            for (k, b, p, ms, c) in &table {
                out.push_str(&format!("{k},{b},{p},{ms:.3},{c}\n"));
            }
            out
        }
        Format::Plain => {
            let mut out = format!(
                "{:>3} {:>12} {:>6} {:>12} {:>6}\n",
                "k", "bell", "p(k)", "ms", "cache"
            );
            for (k, b, p, ms, c) in &table {
                out.push_str(&format!("{k:>3} {b:>12} {p:>6} {ms:>12.3} {c:>6}\n"));
            }
            out
        }
    };
    write_out(&text)?;
    Ok(ExitCode::from(code::OK))
}
