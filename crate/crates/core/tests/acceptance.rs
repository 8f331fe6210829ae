//! The eleven acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 8 is expected to fail: at n = 4 four containment pairs satisfy the
//! standard relation without matching any quadruple pattern. The test asserts
//! that this is the only failure and that the disagreement is exactly that set.

use std::time::Instant;

use awbi_core::axioms::{comodule_suite, cotensor_check, hopf_suite};
use awbi_core::extension::{derive_empty_scalar, process_equivalence};
use awbi_core::numoracle::{concordance, default_points, negative_control, RepSpec};
use awbi_core::qcoeff::q_plus_qinv;
use awbi_core::relations::{
    check_star, q_identities_regression, scan, suite_commute, suite_commute_curated, suite_fundamental,
    suite_named_lemmas, suite_rank_one, suite_theorem_b, ScanSummary,
};
use awbi_core::{Aw, Backend, Bi, GeneratorCache, IndexSet, RelationReport, Result};

const WORKERS: usize = 4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn tally<M: awbi_core::Monomial>(reports: &[RelationReport<M>]) -> (usize, usize) {
    (reports.iter().filter(|r| r.passed()).count(), reports.len())
}

fn outcome(parts: &[(&str, usize, usize)]) -> Outcome {
    let pass = parts.iter().all(|(_, ok, total)| ok == total && *total > 0);
    let detail = parts.iter().map(|(n, ok, t)| format!("{n} {ok}/{t}")).collect::<Vec<_>>().join(", ");
    Outcome { pass, detail }
}

fn rank_one() -> Result<Outcome> {
    let (a, at) = tally(&suite_rank_one(&GeneratorCache::<Aw>::new())?);
    let (b, bt) = tally(&suite_rank_one(&GeneratorCache::<Bi>::new())?);
    Ok(outcome(&[("aw", a, at), ("bi", b, bt)]))
}

fn cotensor() -> Result<Outcome> {
    let aw = cotensor_check::<Aw>()?.holds as usize;
    let bi = cotensor_check::<Bi>()?.holds as usize;
    Ok(outcome(&[("aw", aw, 1), ("bi", bi, 1)]))
}

fn processes<B: Backend>() -> Result<(usize, usize)> {
    let mut sets: Vec<IndexSet> = IndexSet::all(4).filter(|a| !a.is_empty()).collect();
    sets.push(IndexSet::new(9, &[2, 4, 5, 8])?);
    let mut ok = 0;
    let mut total = 0;
    for a in sets {
        for (_, same) in process_equivalence::<B>(&a)? {
            total += 1;
            ok += same as usize;
        }
    }
    Ok((ok, total))
}

fn process_equivalence_all() -> Result<Outcome> {
    let (a, at) = processes::<Aw>()?;
    let (b, bt) = processes::<Bi>()?;
    Ok(outcome(&[("aw", a, at), ("bi", b, bt)]))
}

fn containment<B: Backend>() -> Result<(usize, usize)> {
    let c = GeneratorCache::<B>::new();
    let mut r = suite_commute(&c, 4, WORKERS)?;
    r.extend(suite_commute_curated(&c, WORKERS)?);
    Ok(tally(&r))
}

fn containment_all() -> Result<Outcome> {
    let (a, at) = containment::<Aw>()?;
    let (b, bt) = containment::<Bi>()?;
    Ok(outcome(&[("aw", a, at), ("bi", b, bt)]))
}

fn quadruples() -> Result<Outcome> {
    let (a, at) = tally(&suite_theorem_b(&GeneratorCache::<Aw>::new(), 4, WORKERS)?);
    let (b, bt) = tally(&suite_theorem_b(&GeneratorCache::<Bi>::new(), 4, WORKERS)?);
    Ok(outcome(&[("aw", a, at), ("bi", b, bt)]))
}

fn families() -> Result<Outcome> {
    let (a, at) = tally(&suite_fundamental(&GeneratorCache::<Aw>::new(), 7, WORKERS)?);
    let (b, bt) = tally(&suite_fundamental(&GeneratorCache::<Bi>::new(), 7, WORKERS)?);
    Ok(outcome(&[("aw", a, at), ("bi", b, bt)]))
}

fn named<B: Backend>() -> Result<(usize, usize)> {
    let c = GeneratorCache::<B>::new();
    let (ok, total) = tally(&suite_named_lemmas(&c, WORKERS)?);
    let ids = q_identities_regression(&c)?;
    Ok((ok + ids.iter().filter(|r| r.passed()).count(), total + ids.len()))
}

fn named_all() -> Result<Outcome> {
    let (a, at) = named::<Aw>()?;
    let (b, bt) = named::<Bi>()?;
    Ok(outcome(&[("aw", a, at), ("bi", b, bt)]))
}

fn minimality() -> Result<(Outcome, Vec<ScanSummary>)> {
    let mut summaries = Vec::new();
    for n in [3, 4] {
        summaries.push(scan(&GeneratorCache::<Aw>::new(), n, WORKERS, |_| {})?);
        summaries.push(scan(&GeneratorCache::<Bi>::new(), n, WORKERS, |_| {})?);
    }
    let pass = summaries.iter().all(ScanSummary::passed);
    let detail = summaries
        .iter()
        .map(|s| {
            let pairs: String = s.disagreements.iter().map(|(a, b, _, _)| format!(" ({a},{b})")).collect();
            format!(
                "{} n={}: {} pairs, {} hold, {} predicted, {} disagree{pairs}",
                s.backend,
                s.n,
                s.pairs,
                s.star_pairs,
                s.predicted_pairs,
                s.disagreements.len(),
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Ok((Outcome { pass, detail }, summaries))
}

fn hopf() -> Result<Outcome> {
    let count = |v: Vec<awbi_core::axioms::AxiomCheck>| (v.iter().filter(|c| c.holds).count(), v.len());
    let (a, at) = count(hopf_suite::<Aw>()?);
    let (b, bt) = count(hopf_suite::<Bi>()?);
    let (c, ct) = count(comodule_suite::<Aw>()?);
    let (d, dt) = count(comodule_suite::<Bi>()?);
    Ok(outcome(&[("aw hopf", a, at), ("bi hopf", b, bt), ("aw comodule", c, ct), ("bi comodule", d, dt)]))
}

fn numeric() -> Result<Outcome> {
    let rows = concordance(&GeneratorCache::<Aw>::new(), 20, 1, &default_points())?;
    let agree = rows.iter().filter(|r| r.agrees()).count();
    let mut detected = 0;
    for p in default_points() {
        detected += negative_control(&RepSpec::new(vec![2, 2, 2], p)?)? as usize;
    }
    Ok(outcome(&[("concordant", agree, rows.len()), ("negative control", detected, 2)]))
}

fn empty_constant() -> Result<Outcome> {
    let bi = derive_empty_scalar::<Bi>()? == Bi::empty_scalar();
    let s = |e: &[usize]| IndexSet::new(2, e).unwrap();
    let inst = check_star(&GeneratorCache::<Bi>::new(), &s(&[1]), &s(&[2]))?.passed();
    let aw = derive_empty_scalar::<Aw>()? == q_plus_qinv();
    Ok(outcome(&[("bi derivation", bi as usize, 1), ("bi disjoint instance", inst as usize, 1), ("aw q+q^-1", aw as usize, 1)]))
}

fn main() {
    type Criterion = (&'static str, fn() -> Result<Outcome>);
    let criteria: [Criterion; 11] = [
        ("rank-one relations", rank_one),
        ("cotensor property", cotensor),
        ("process equivalence", process_equivalence_all),
        ("containment commutes", containment_all),
        ("quadruple forms", quadruples),
        ("parametrized families", families),
        ("named regressions", named_all),
        ("minimality scan", || minimality().map(|(o, _)| o)),
        ("hopf and comodule axioms", hopf),
        ("numeric concordance", numeric),
        ("empty-set constant", empty_constant),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name} ({:.2?}): {}", i + 1, start.elapsed(), o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    println!("criteria failing: {failed:?} (criterion 8 is the expected, documented finding)");
    assert_eq!(failed, vec![8], "unexpected criterion failures");

    let (_, summaries) = minimality().unwrap();
    let s13 = IndexSet::new(4, &[1, 3]).unwrap();
    let s24 = IndexSet::new(4, &[2, 4]).unwrap();
    let full = IndexSet::all(4).last().unwrap();
    let expected = [(s13, full), (s24, full), (full, s13), (full, s24)];
    for s in &summaries {
        if s.n == 3 {
            assert!(s.passed(), "n = 3 must agree");
            continue;
        }
        let key = |x: &(IndexSet, IndexSet, bool, bool)| (x.0.mask(), x.1.mask());
        let mut found = s.disagreements.clone();
        found.sort_by_key(key);
        let mut want: Vec<_> = expected.iter().map(|(a, b)| (*a, *b, true, false)).collect();
        want.sort_by_key(key);
        assert_eq!(found, want, "{}", s.backend);
        assert_eq!(s.explained_by_containment, 4);
        assert!(s.comm_failures.is_empty() && s.comm_symmetric);
    }
}
