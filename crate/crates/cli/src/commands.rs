use std::io::Write;

use awbi_core::extension::{self, plan};
use awbi_core::numoracle::{default_points, numeric_relation, RepSpec};
use awbi_core::relations::{check_comm, check_star, scan as run_scan, ScanSummary};
use awbi_core::{Aw, Backend, BackendKind, Bi, GeneratorCache, IndexSet, Process, RelationKind, RelationReport};
use serde_json::{json, Value};

use crate::Config;

pub type CmdResult = Result<bool, Box<dyn std::error::Error>>;

macro_rules! dispatch {
    ($cfg:expr, $f:ident($($arg:expr),*)) => {
        match $cfg.backend {
            BackendKind::Aw => $f::<Aw>($($arg),*),
            BackendKind::Bi => $f::<Bi>($($arg),*),
        }
    };
}

pub fn symbol(kind: BackendKind) -> &'static str {
    match kind {
        BackendKind::Aw => "Λ",
        BackendKind::Bi => "Γ",
    }
}

pub fn build(cfg: &Config, out: &mut dyn Write, set: &str, n: usize, process: Process, full: bool) -> CmdResult {
    dispatch!(cfg, build_with(cfg, out, set, n, process, full))
}

fn build_with<B: Backend>(cfg: &Config, out: &mut dyn Write, set: &str, n: usize, process: Process, full: bool) -> CmdResult {
    let a = IndexSet::parse(set, n)?;
    let (elem, plan_text) = if a.is_empty() {
        (extension::empty_generator::<B>(n), "scalar".to_string())
    } else {
        let p = plan(&a, process)?;
        (extension::build::<B>(&a, &p)?, p.to_string())
    };
    if cfg.json() {
        let v = json!({
            "backend": B::KIND,
            "set": a.to_string(),
            "n": n,
            "process": process.to_string(),
            "plan": plan_text,
            "terms": elem.len(),
            "element": elem.to_json(),
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{}_{a} in [1;{n}], backend {}, process {process}", symbol(B::KIND), B::KIND)?;
        writeln!(out, "plan: {plan_text}")?;
        writeln!(out, "terms: {}", elem.len())?;
        write!(out, "{}", elem.render(if full { None } else { Some(12) }))?;
    }
    Ok(true)
}

pub fn check(cfg: &Config, out: &mut dyn Write, a: &str, b: &str, n: usize, relation: RelationKind) -> CmdResult {
    dispatch!(cfg, check_with(cfg, out, a, b, n, relation))
}

/// Numeric verdicts at the default points on `(2,...,2)`; `None` off the aw backend.
fn numeric<B: Backend>(cfg: &Config, cache: &GeneratorCache<Aw>, a: &IndexSet, b: &IndexSet, kind: RelationKind) -> Result<Option<Vec<bool>>, awbi_core::Error> {
    if !cfg.numeric || B::KIND != BackendKind::Aw {
        return Ok(None);
    }
    default_points()
        .into_iter()
        .map(|r| numeric_relation(cache, a, b, kind, &RepSpec::new(vec![2; a.n()], r)?))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn warn_numeric<B: Backend>(cfg: &Config) {
    if cfg.numeric && B::KIND != BackendKind::Aw {
        eprintln!("note: the numeric oracle only covers the aw backend");
    }
}

fn check_with<B: Backend>(cfg: &Config, out: &mut dyn Write, a: &str, b: &str, n: usize, relation: RelationKind) -> CmdResult {
    warn_numeric::<B>(cfg);
    let (a, b) = (IndexSet::parse(a, n)?, IndexSet::parse(b, n)?);
    let cache = GeneratorCache::<B>::new();
    let report = match relation {
        RelationKind::Star => check_star(&cache, &a, &b)?,
        RelationKind::Comm => check_comm(&cache, &a, &b)?,
    };
    let holds = report.holds(relation) == Some(true);
    let num = numeric::<B>(cfg, &GeneratorCache::new(), &a, &b, relation)?;
    if cfg.json() {
        let mut v = serde_json::to_value(report.line(true))?;
        if let Some(num) = &num {
            v["numeric"] = json!(num);
        }
        writeln!(out, "{v}")?;
    } else {
        let s = symbol(B::KIND);
        let name = match relation {
            RelationKind::Star => "standard relation",
            RelationKind::Comm => "commutation",
        };
        writeln!(out, "{name} for {s}_{a}, {s}_{b} in [1;{n}] ({}): {}", B::KIND, if holds { "holds" } else { "fails" })?;
        if let Some(w) = &report.pattern {
            writeln!(out, "quadruple pattern: {w}")?;
        }
        if let Some(num) = &num {
            writeln!(out, "numeric: {}", verdicts(num))?;
        }
        if !holds {
            let res = match relation {
                RelationKind::Star => report.residual_star.as_ref(),
                RelationKind::Comm => report.residual_comm.as_ref(),
            };
            if let Some(res) = res {
                writeln!(out, "residual ({} terms):", res.len())?;
                write!(out, "{}", res.render(Some(20)))?;
            }
        }
    }
    Ok(holds)
}

fn verdicts(v: &[bool]) -> String {
    let points = default_points();
    v.iter().zip(points.iter()).map(|(h, r)| format!("r={r}: {}", if *h { "holds" } else { "fails" })).collect::<Vec<_>>().join(", ")
}

pub fn scan(cfg: &Config, out: &mut dyn Write, n: usize) -> CmdResult {
    if n > cfg.max_scan_n {
        return Err(format!("scan at n = {n} exceeds the limit --max-scan-n {}", cfg.max_scan_n).into());
    }
    dispatch!(cfg, scan_with(cfg, out, n))
}

fn yn(x: Option<bool>) -> &'static str {
    match x {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

fn scan_with<B: Backend>(cfg: &Config, out: &mut dyn Write, n: usize) -> CmdResult {
    warn_numeric::<B>(cfg);
    let cache = GeneratorCache::<B>::new();
    let aw_cache = GeneratorCache::<Aw>::new();
    let mut numeric_mismatches = 0usize;
    let mut io_error = None;
    if !cfg.json() {
        writeln!(out, "{:<12} {:<12} {:>5} {:>5} {:>9}", "A", "B", "star", "comm", "predicted")?;
    }
    let summary = run_scan(&cache, n, cfg.workers, |r: &RelationReport<B::Mono>| {
        let num = match numeric::<B>(cfg, &aw_cache, &r.a, &r.b, RelationKind::Star) {
            Ok(v) => v,
            Err(e) => {
                io_error.get_or_insert_with(|| e.to_string());
                None
            }
        };
        if let Some(num) = &num {
            numeric_mismatches += num.iter().any(|&h| Some(h) != r.holds_star()) as usize;
        }
        let res = if cfg.json() {
            let mut v = serde_json::to_value(r.line(false)).expect("serializable");
            if let Some(num) = &num {
                v["numeric_star"] = json!(num);
            }
            writeln!(out, "{v}")
        } else {
            let predicted = if r.pattern_predicted() { "yes" } else { "no" };
            writeln!(out, "{:<12} {:<12} {:>5} {:>5} {:>9}", r.a.to_string(), r.b.to_string(), yn(r.holds_star()), yn(r.holds_comm()), predicted)
        };
        if let Err(e) = res.and_then(|_| out.flush()) {
            io_error.get_or_insert_with(|| e.to_string());
        }
    })?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    print_summary(cfg, out, &summary, cfg.numeric.then_some(numeric_mismatches))?;
    Ok(summary.passed() && numeric_mismatches == 0)
}

fn print_summary(cfg: &Config, out: &mut dyn Write, s: &ScanSummary, numeric: Option<usize>) -> std::io::Result<()> {
    if cfg.json() {
        let mut v: Value = s.to_json();
        if let Some(m) = numeric {
            v["numeric_mismatches"] = json!(m);
        }
        return writeln!(out, "{v}");
    }
    writeln!(out, "pairs: {}", s.pairs)?;
    writeln!(out, "standard relation holds: {}", s.star_pairs)?;
    writeln!(out, "predicted by quadruple patterns: {}", s.predicted_pairs)?;
    writeln!(out, "disagreements: {}", s.disagreements.len())?;
    for (a, b, holds, predicted) in &s.disagreements {
        writeln!(out, "  {a} {b}: holds={holds} predicted={predicted}")?;
    }
    if !s.disagreements.is_empty() {
        writeln!(out, "  of which commuting containment pairs: {}", s.explained_by_containment)?;
    }
    writeln!(out, "containment pairs failing to commute: {}", s.comm_failures.len())?;
    writeln!(out, "commutation symmetric: {}", if s.comm_symmetric { "yes" } else { "no" })?;
    if let Some(m) = numeric {
        writeln!(out, "numeric mismatches: {m}")?;
    }
    Ok(())
}
