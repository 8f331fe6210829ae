use std::io::Write;

use awbi_core::axioms::{comodule_suite, cotensor_check, hopf_suite};
use awbi_core::extension::{derive_empty_scalar, process_equivalence};
use awbi_core::numoracle::{concordance, default_points, negative_control, RepSpec};
use awbi_core::qcoeff::q_plus_qinv;
use awbi_core::relations::{
    q_identities_regression, scan, suite_commute, suite_commute_curated, suite_fundamental, suite_named_lemmas,
    suite_rank_one, suite_theorem_b,
};
use awbi_core::{Aw, Backend, BackendKind, Bi, GeneratorCache, IndexSet, RelationReport};
use serde::Serialize;

use crate::commands::CmdResult;
use crate::Config;

#[derive(Debug, Serialize)]
struct SuiteResult {
    suite: &'static str,
    backend: BackendKind,
    passed: usize,
    total: usize,
    failures: Vec<String>,
}

impl SuiteResult {
    fn new(suite: &'static str, backend: BackendKind, checks: impl IntoIterator<Item = (String, bool)>) -> Self {
        let mut r = SuiteResult { suite, backend, passed: 0, total: 0, failures: Vec::new() };
        for (label, ok) in checks {
            r.total += 1;
            if ok {
                r.passed += 1;
            } else {
                r.failures.push(label);
            }
        }
        r
    }

    fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn from_reports<M: awbi_core::Monomial>(
    suite: &'static str,
    backend: BackendKind,
    reports: Vec<RelationReport<M>>,
) -> SuiteResult {
    SuiteResult::new(suite, backend, reports.into_iter().map(|r| (r.label.clone(), r.passed())))
}

fn backend_suites<B: Backend>(cfg: &Config, max_arity: usize, n: usize) -> awbi_core::Result<Vec<SuiteResult>> {
    let k = B::KIND;
    let cache = GeneratorCache::<B>::new();
    let w = cfg.workers;
    let axioms = |v: Vec<awbi_core::axioms::AxiomCheck>| v.into_iter().map(|c| (c.label, c.holds));
    let mut out = vec![
        SuiteResult::new("hopf axioms", k, axioms(hopf_suite::<B>()?)),
        SuiteResult::new("comodule axioms", k, axioms(comodule_suite::<B>()?)),
        SuiteResult::new("cotensor", k, axioms(vec![cotensor_check::<B>()?])),
    ];
    let mut eq = Vec::new();
    let mut sets: Vec<IndexSet> = IndexSet::all(n).filter(|a| !a.is_empty()).collect();
    sets.push(IndexSet::new(9, &[2, 4, 5, 8])?);
    for a in sets {
        for (p, same) in process_equivalence::<B>(&a)? {
            eq.push((format!("{a} {p}"), same));
        }
    }
    out.push(SuiteResult::new("process equivalence", k, eq));
    let derived = derive_empty_scalar::<B>()?;
    let mut empty = vec![("empty-set constant".to_string(), derived == B::empty_scalar())];
    if k == BackendKind::Aw {
        empty.push(("empty-set constant is q+q^-1".to_string(), derived == q_plus_qinv()));
    }
    out.push(SuiteResult::new("empty-set constant", k, empty));
    out.push(from_reports("rank one", k, suite_rank_one(&cache)?));
    let mut containment = suite_commute(&cache, n, w)?;
    containment.extend(suite_commute_curated(&cache, w)?);
    out.push(from_reports("containment", k, containment));
    out.push(from_reports("quadruples", k, suite_theorem_b(&cache, n, w)?));
    out.push(from_reports("families", k, suite_fundamental(&cache, max_arity, w)?));
    out.push(from_reports("named lemmas", k, suite_named_lemmas(&cache, w)?));
    let ids = q_identities_regression(&cache)?;
    out.push(SuiteResult::new("nested brackets", k, ids.iter().map(|r| (r.label.clone(), r.passed()))));
    let s = scan(&cache, 3, w, |_| {})?;
    let mut scan_checks = vec![("disagreements".to_string(), s.disagreements.is_empty())];
    scan_checks.push(("containment commutes".to_string(), s.comm_failures.is_empty()));
    scan_checks.push(("commutation symmetric".to_string(), s.comm_symmetric));
    out.push(SuiteResult::new("scan n=3", k, scan_checks));
    Ok(out)
}

fn numeric_suite(cfg: &Config) -> awbi_core::Result<SuiteResult> {
    let cache = GeneratorCache::<Aw>::new();
    let rows = concordance(&cache, 20, cfg.seed, &default_points())?;
    let mut checks: Vec<(String, bool)> =
        rows.iter().map(|r| (format!("{} {}|{}", r.identity.label, r.identity.a, r.identity.b), r.agrees())).collect();
    for p in default_points() {
        let spec = RepSpec::new(vec![2, 2, 2], p.clone())?;
        checks.push((format!("negative control r={p}"), negative_control(&spec)?));
    }
    Ok(SuiteResult::new("numeric concordance", BackendKind::Aw, checks))
}

pub fn run(cfg: &Config, out: &mut dyn Write, max_arity: usize, n: usize) -> CmdResult {
    let mut results = backend_suites::<Aw>(cfg, max_arity, n)?;
    results.extend(backend_suites::<Bi>(cfg, max_arity, n)?);
    results.push(numeric_suite(cfg)?);
    let mut all_ok = true;
    for r in &results {
        all_ok &= r.ok();
        if cfg.json() {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
        } else {
            let tag = if r.ok() { "PASS" } else { "FAIL" };
            writeln!(out, "{tag}  {:<3} {:<22} {}/{}", r.backend.to_string(), r.suite, r.passed, r.total)?;
            for f in &r.failures {
                writeln!(out, "      failed: {f}")?;
            }
        }
    }
    if !cfg.json() {
        writeln!(out, "{}", if all_ok { "all suites passed" } else { "some suites failed" })?;
    }
    Ok(all_ok)
}
