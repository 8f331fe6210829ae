//! Relation checks, curated suites and the exhaustive pair scanner.
//!
//! Two relation shapes are checked between generators `G_A`, `G_B`:
//! the standard relation, whose coefficients come from [`Backend::star`],
//! and plain commutation. Verdicts always come from the normal form of the
//! residual.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backend::{Backend, BackendKind};
use crate::elem::{AlgElem, ElemJson, Monomial};
use crate::error::Result;
use crate::extension::{GeneratorCache, IndexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Star,
    Comm,
}

impl std::str::FromStr for RelationKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "star" => Ok(RelationKind::Star),
            "comm" => Ok(RelationKind::Comm),
            other => Err(format!("unknown relation {other:?} (expected star or comm)")),
        }
    }
}

/// Outcome of checking one pair `(A, B)`.
#[derive(Debug, Clone)]
pub struct RelationReport<M: Monomial> {
    pub label: String,
    pub backend: BackendKind,
    pub a: IndexSet,
    pub b: IndexSet,
    pub residual_star: Option<AlgElem<M>>,
    pub residual_comm: Option<AlgElem<M>>,
    pub pattern: Option<PatternWitness>,
    /// The relation this check is expected to confirm or refute.
    pub expect: Option<(RelationKind, bool)>,
    pub elapsed: Duration,
}

impl<M: Monomial> RelationReport<M> {
    pub fn holds_star(&self) -> Option<bool> {
        self.residual_star.as_ref().map(AlgElem::is_zero)
    }

    pub fn holds_comm(&self) -> Option<bool> {
        self.residual_comm.as_ref().map(AlgElem::is_zero)
    }

    pub fn holds(&self, kind: RelationKind) -> Option<bool> {
        match kind {
            RelationKind::Star => self.holds_star(),
            RelationKind::Comm => self.holds_comm(),
        }
    }

    pub fn pattern_predicted(&self) -> bool {
        self.pattern.is_some()
    }

    pub fn passed(&self) -> bool {
        match self.expect {
            None => true,
            Some((kind, want)) => self.holds(kind) == Some(want),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn expecting(mut self, kind: RelationKind, holds: bool) -> Self {
        self.expect = Some((kind, holds));
        self
    }

    /// Serializable summary; residuals are included only on request.
    pub fn line(&self, with_residuals: bool) -> ReportLine {
        let res = |r: &Option<AlgElem<M>>| r.as_ref().filter(|x| with_residuals && !x.is_zero()).map(AlgElem::to_json);
        ReportLine {
            label: self.label.clone(),
            backend: self.backend,
            n: self.a.n(),
            a: Some(self.a.to_string()),
            b: Some(self.b.to_string()),
            relation: self.expect.map(|e| e.0),
            expected: self.expect.map(|e| e.1),
            holds_star: self.holds_star(),
            holds_comm: self.holds_comm(),
            residual_star_terms: self.residual_star.as_ref().map(AlgElem::len),
            residual_comm_terms: self.residual_comm.as_ref().map(AlgElem::len),
            pattern_predicted: self.pattern_predicted(),
            pattern: self.pattern.as_ref().map(|w| w.to_string()),
            passed: self.passed(),
            residual_star: res(&self.residual_star),
            residual_comm: res(&self.residual_comm),
        }
    }
}

/// Backend-neutral, deterministic summary of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub label: String,
    pub backend: BackendKind,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<RelationKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds_star: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds_comm: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_star_terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_comm_terms: Option<usize>,
    pub pattern_predicted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_star: Option<ElemJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_comm: Option<ElemJson>,
}

fn report<B: Backend>(a: IndexSet, b: IndexSet, start: Instant) -> RelationReport<B::Mono> {
    RelationReport {
        label: format!("{a}|{b}"),
        backend: B::KIND,
        a,
        b,
        residual_star: None,
        residual_comm: None,
        pattern: predict_pattern(&a, &b),
        expect: None,
        elapsed: start.elapsed(),
    }
}

/// `lhs - rhs` of the standard relation, given the products `G_A G_B` and `G_B G_A`.
fn star_residual<B: Backend>(
    cache: &GeneratorCache<B>,
    a: &IndexSet,
    b: &IndexSet,
    ab: &AlgElem<B::Mono>,
    ba: &AlgElem<B::Mono>,
) -> Result<AlgElem<B::Mono>> {
    let s = B::star();
    let lhs = ab.scale(&s.xy).try_add(&ba.scale(&s.yx))?;
    let g = |x: &IndexSet| cache.get(x);
    let inter = a.intersection(b);
    let pair = g(&inter)?
        .mul(&*g(&a.union(b))?)?
        .try_add(&g(&a.difference(b))?.mul(&*g(&b.difference(a))?)?)?;
    let rhs = g(&a.symmetric_difference(b))?.scale(&s.symdiff).try_add(&pair.scale(&s.pair))?;
    lhs.try_sub(&rhs)
}

pub fn check_star<B: Backend>(cache: &GeneratorCache<B>, a: &IndexSet, b: &IndexSet) -> Result<RelationReport<B::Mono>> {
    let start = Instant::now();
    let (ga, gb) = (cache.get(a)?, cache.get(b)?);
    let ab = ga.mul(&gb)?;
    let ba = gb.mul(&ga)?;
    let residual = star_residual(cache, a, b, &ab, &ba)?;
    let mut r = report::<B>(*a, *b, start);
    r.residual_star = Some(residual);
    r.elapsed = start.elapsed();
    Ok(r.expecting(RelationKind::Star, true))
}

pub fn check_comm<B: Backend>(cache: &GeneratorCache<B>, a: &IndexSet, b: &IndexSet) -> Result<RelationReport<B::Mono>> {
    let start = Instant::now();
    let (ga, gb) = (cache.get(a)?, cache.get(b)?);
    let residual = AlgElem::comm(&ga, &gb)?;
    let mut r = report::<B>(*a, *b, start);
    r.residual_comm = Some(residual);
    r.elapsed = start.elapsed();
    Ok(r.expecting(RelationKind::Comm, true))
}

/// Both relations for one pair, sharing the two products.
pub fn check_both<B: Backend>(cache: &GeneratorCache<B>, a: &IndexSet, b: &IndexSet) -> Result<RelationReport<B::Mono>> {
    let start = Instant::now();
    let (ga, gb) = (cache.get(a)?, cache.get(b)?);
    let ab = ga.mul(&gb)?;
    let ba = gb.mul(&ga)?;
    let mut r = report::<B>(*a, *b, start);
    r.residual_comm = Some(ab.try_sub(&ba)?);
    r.residual_star = Some(star_residual(cache, a, b, &ab, &ba)?);
    r.elapsed = start.elapsed();
    Ok(r)
}

/// The three admissible shapes of `(A, B)` built from an ordered quadruple
/// `A1 ≺ A2 ≺ A3 ≺ A4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    /// `A = A1 ∪ A2 ∪ A4`, `B = A2 ∪ A3`.
    Outer,
    /// `A = A2 ∪ A3`, `B = A1 ∪ A3 ∪ A4`.
    Inner,
    /// `A = A1 ∪ A3 ∪ A4`, `B = A1 ∪ A2 ∪ A4`.
    Shared,
}

impl Form {
    pub const ALL: [Form; 3] = [Form::Outer, Form::Inner, Form::Shared];

    pub fn apply(self, q: &[IndexSet; 4]) -> (IndexSet, IndexSet) {
        let [a1, a2, a3, a4] = q;
        match self {
            Form::Outer => (a1.union(a2).union(a4), a2.union(a3)),
            Form::Inner => (a2.union(a3), a1.union(a3).union(a4)),
            Form::Shared => (a1.union(a3).union(a4), a1.union(a2).union(a4)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub form: Form,
    pub parts: [IndexSet; 4],
}

impl std::fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a1, a2, a3, a4] = &self.parts;
        write!(f, "{:?}: A1={a1} A2={a2} A3={a3} A4={a4}", self.form)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.n(), self.elems()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (n, e): (usize, Vec<usize>) = Deserialize::deserialize(d)?;
        IndexSet::new(n, &e).map_err(serde::de::Error::custom)
    }
}

/// Every pair `Ai ≺ Aj` with `i < j`; empty sets impose nothing.
pub fn is_chain(q: &[IndexSet; 4]) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| q[i].precedes(&q[j])))
}

/// Splits `s` into the elements below `t` and the rest.
fn split_at(s: &IndexSet, t: usize) -> (IndexSet, IndexSet) {
    let low = if t == 0 { 0 } else { s.mask() & ((1u64 << t) - 1) };
    let n = s.n();
    (IndexSet::from_mask(n, low).unwrap(), IndexSet::from_mask(n, s.mask() & !low).unwrap())
}

/// Searches the three shapes for a quadruple producing `(A, B)`.
///
/// In each shape the middle parts are forced by intersections and differences
/// of `A` and `B`; only the split of the outer parts into a prefix and a suffix
/// is free, and it is searched directly.
pub fn predict_pattern(a: &IndexSet, b: &IndexSet) -> Option<PatternWitness> {
    let n = a.n();
    let (inter, a_only, b_only) = (a.intersection(b), a.difference(b), b.difference(a));
    for form in Form::ALL {
        let (outer, x, y) = match form {
            Form::Outer => (a_only, inter, b_only),
            Form::Inner => (b_only, a_only, inter),
            Form::Shared => (inter, b_only, a_only),
        };
        for t in 0..=n {
            let (a1, a4) = split_at(&outer, t);
            let parts = [a1, x, y, a4];
            if is_chain(&parts) && form.apply(&parts) == (*a, *b) {
                return Some(PatternWitness { form, parts });
            }
        }
    }
    None
}

/// All chains `A1 ≺ A2 ≺ A3 ≺ A4` inside `[1;n]`.
pub fn quadruples(n: usize) -> Vec<[IndexSet; 4]> {
    let mut out = Vec::new();
    // label 0 = unused, 1..=4 = part; labels of used elements are nondecreasing
    let total = 5usize.pow(n as u32);
    for code in 0..total {
        let mut masks = [0u64; 4];
        let mut c = code;
        let mut last = 0;
        let mut ok = true;
        for pos in 0..n {
            let label = c % 5;
            c /= 5;
            if label > 0 {
                if label < last {
                    ok = false;
                    break;
                }
                last = label;
                masks[label - 1] |= 1 << pos;
            }
        }
        if ok {
            out.push(masks.map(|m| IndexSet::from_mask(n, m).unwrap()));
        }
    }
    out
}

/// Distinct `(A, B)` pairs generated by all chains and all shapes, each with
/// its first witness.
pub fn theorem_pairs(n: usize) -> Vec<(IndexSet, IndexSet, PatternWitness)> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for q in quadruples(n) {
        for form in Form::ALL {
            let (a, b) = form.apply(&q);
            if seen.insert((a.mask(), b.mask())) {
                out.push((a, b, PatternWitness { form, parts: q }));
            }
        }
    }
    out
}

/// Runs `f` over `items` on a bounded pool, preserving order.
pub fn run_pool<T: Sync, R: Send>(workers: usize, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
    pool.install(|| items.par_iter().map(&f).collect())
}

type Reports<B> = Result<Vec<RelationReport<<B as Backend>::Mono>>>;

fn run_checks<B: Backend>(
    cache: &GeneratorCache<B>,
    workers: usize,
    items: Vec<(IndexSet, IndexSet, RelationKind, String)>,
) -> Reports<B> {
    run_pool(workers, &items, |(a, b, kind, label)| {
        let r = match kind {
            RelationKind::Star => check_star(cache, a, b),
            RelationKind::Comm => check_comm(cache, a, b),
        };
        r.map(|r| r.with_label(label.clone()))
    })
    .into_iter()
    .collect()
}

/// Commutation for every containment pair `B ⊆ A ⊆ [1;n]`.
pub fn suite_commute<B: Backend>(cache: &GeneratorCache<B>, n: usize, workers: usize) -> Reports<B> {
    let mut items = Vec::new();
    for a in IndexSet::all(n) {
        for b in IndexSet::all(n).filter(|b| b.is_subset(&a)) {
            items.push((a, b, RelationKind::Comm, format!("containment {a}⊇{b}")));
        }
    }
    run_checks(cache, workers, items)
}

/// Containment pairs at arity 5 with several intervals.
pub fn curated_containment_n5() -> Vec<(IndexSet, IndexSet)> {
    let s = |e: &[usize]| IndexSet::new(5, e).unwrap();
    vec![
        (s(&[1, 2, 4, 5]), s(&[1, 5])),
        (s(&[1, 3, 5]), s(&[3])),
        (s(&[1, 3, 5]), s(&[1, 5])),
        (s(&[1, 2, 3, 4, 5]), s(&[2, 4])),
        (s(&[1, 2, 4, 5]), s(&[2, 4])),
        (s(&[2, 3, 5]), s(&[2, 5])),
        (s(&[1, 3, 4, 5]), s(&[1, 4])),
        (s(&[1, 2, 3, 5]), s(&[1, 3, 5])),
        (s(&[1, 3, 4]), s(&[1, 4])),
        (s(&[1, 2, 3, 4, 5]), s(&[1, 3, 5])),
    ]
}

pub fn suite_commute_curated<B: Backend>(cache: &GeneratorCache<B>, workers: usize) -> Reports<B> {
    let items = curated_containment_n5()
        .into_iter()
        .map(|(a, b)| (a, b, RelationKind::Comm, format!("containment {a}⊇{b}")))
        .collect();
    run_checks(cache, workers, items)
}

/// The standard relation for every pair produced by an ordered quadruple.
pub fn suite_theorem_b<B: Backend>(cache: &GeneratorCache<B>, n: usize, workers: usize) -> Reports<B> {
    let items = theorem_pairs(n)
        .into_iter()
        .map(|(a, b, w)| (a, b, RelationKind::Star, format!("quadruple {w}")))
        .collect();
    run_checks(cache, workers, items)
}

/// Parametrized families of pairs satisfying the standard relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    F1,
    F2,
    F3,
    F4,
    F4Gap,
    F5,
    F5Gap,
    F6,
    F6Gap,
}

fn evens(k: usize) -> impl Iterator<Item = usize> {
    (1..=k).map(|t| 2 * t)
}

/// `first, first+2, ..., last`.
fn step2(first: usize, last: usize) -> impl Iterator<Item = usize> {
    (first..=last).step_by(2)
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::F1,
        Family::F2,
        Family::F3,
        Family::F4,
        Family::F4Gap,
        Family::F5,
        Family::F5Gap,
        Family::F6,
        Family::F6Gap,
    ];

    pub fn uses_ell(self) -> bool {
        !matches!(self, Family::F1 | Family::F2 | Family::F3)
    }

    /// Element lists of `(A, B)` for parameters `k ≥ 1`, `ell ≥ 0`.
    pub fn sets(self, k: usize, ell: usize) -> (Vec<usize>, Vec<usize>) {
        let e: Vec<usize> = evens(k).collect();
        let cat = |parts: &[&[usize]]| -> Vec<usize> { parts.concat() };
        let (k2, l2) = (2 * k, 2 * ell);
        match self {
            Family::F1 => (cat(&[&[1], &e]), cat(&[&e, &[k2 + 1]])),
            Family::F2 => (cat(&[&e, &[k2 + 1]]), vec![1, k2 + 1]),
            Family::F3 => (vec![1, k2 + 1], cat(&[&[1], &e])),
            Family::F4 => {
                let odd: Vec<usize> = step2(k2 + 1, k2 + l2 + 1).collect();
                (cat(&[&[1], &e, &[k2 + l2 + 2]]), cat(&[&e, &odd]))
            }
            Family::F4Gap => {
                let ev: Vec<usize> = step2(k2 + 2, k2 + l2 + 2).collect();
                (cat(&[&[1], &e, &[k2 + l2 + 3]]), cat(&[&e, &ev]))
            }
            Family::F5 => {
                let odd: Vec<usize> = step2(k2 + 1, k2 + l2 + 1).collect();
                (cat(&[&e, &odd]), cat(&[&[1], &odd, &[k2 + l2 + 2]]))
            }
            Family::F5Gap => {
                let ev: Vec<usize> = step2(k2 + 2, k2 + l2 + 2).collect();
                (cat(&[&e, &ev]), cat(&[&[1], &ev, &[k2 + l2 + 3]]))
            }
            Family::F6 => {
                let odd: Vec<usize> = step2(k2 + 1, k2 + l2 + 1).collect();
                (cat(&[&[1], &odd, &[k2 + l2 + 2]]), cat(&[&[1], &e, &[k2 + l2 + 2]]))
            }
            Family::F6Gap => {
                let ev: Vec<usize> = step2(k2 + 2, k2 + l2 + 2).collect();
                (cat(&[&[1], &ev, &[k2 + l2 + 3]]), cat(&[&[1], &e, &[k2 + l2 + 3]]))
            }
        }
    }

    /// Smallest arity containing both sets.
    pub fn arity(self, k: usize, ell: usize) -> usize {
        let (a, b) = self.sets(k, ell);
        a.into_iter().chain(b).max().unwrap_or(1)
    }

    /// Every `(k, ell)` whose arity is at most `max_n`.
    pub fn instances(self, max_n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in 1..=max_n {
            for ell in 0..=if self.uses_ell() { max_n } else { 0 } {
                if self.arity(k, ell) <= max_n {
                    out.push((k, ell));
                }
            }
        }
        out
    }
}

pub fn suite_fundamental<B: Backend>(cache: &GeneratorCache<B>, max_n: usize, workers: usize) -> Reports<B> {
    let mut items = Vec::new();
    for fam in Family::ALL {
        for (k, ell) in fam.instances(max_n) {
            let n = fam.arity(k, ell);
            let (a, b) = fam.sets(k, ell);
            let (a, b) = (IndexSet::new(n, &a)?, IndexSet::new(n, &b)?);
            items.push((a, b, RelationKind::Star, format!("family {fam:?} k={k} l={ell}")));
        }
    }
    run_checks(cache, workers, items)
}

fn set(n: usize, e: impl IntoIterator<Item = usize>) -> IndexSet {
    IndexSet::new(n, &e.into_iter().collect::<Vec<_>>()).expect("curated set")
}

/// The fixed list of explicit commutations among two-interval sets.
pub fn explicit_commutations() -> Vec<(IndexSet, IndexSet)> {
    let raw: [(&[usize], &[usize]); 15] = [
        (&[1, 3, 4], &[1, 3]),
        (&[1, 3, 4], &[1, 4]),
        (&[1, 3, 4, 5], &[1, 4]),
        (&[1, 2, 4], &[1, 4]),
        (&[1, 2, 4, 5], &[1, 4]),
        (&[1, 2, 4, 5], &[1, 5]),
        (&[1, 2, 4, 5, 6], &[1, 5]),
        (&[1, 2, 4], &[2, 4]),
        (&[1, 2, 4, 5], &[2, 4]),
        (&[1, 2, 4, 5], &[2, 5]),
        (&[1, 2, 4, 5, 6], &[2, 5]),
        (&[1, 2, 3, 5], &[2, 5]),
        (&[1, 2, 3, 5, 6], &[2, 5]),
        (&[1, 2, 3, 5, 6], &[2, 6]),
        (&[1, 2, 3, 5, 6, 7], &[2, 6]),
    ];
    raw.iter()
        .map(|(a, b)| {
            let n = a.iter().chain(b.iter()).copied().max().unwrap();
            (set(n, a.iter().copied()), set(n, b.iter().copied()))
        })
        .collect()
}

/// Curated lemma instances: `(label, A, B, relation)`.
pub fn named_lemma_items() -> Vec<(String, IndexSet, IndexSet, RelationKind)> {
    use RelationKind::{Comm, Star};
    let mut v: Vec<(String, IndexSet, IndexSet, RelationKind)> = Vec::new();
    let n4 = 4;

    for a in IndexSet::all(n4) {
        for i in 1..=n4 {
            v.push((format!("singleton {a}|{{{i}}}"), a, set(n4, [i]), Comm));
        }
    }
    for a in IndexSet::all(n4).filter(|a| !a.is_empty()) {
        for b in IndexSet::all(n4).filter(|b| !b.is_empty() && a.precedes(b)) {
            let u = a.union(&b);
            v.push((format!("ordered {a}|{b}"), a, b, Comm));
            v.push((format!("ordered {a}|{u}"), a, u, Comm));
            v.push((format!("ordered {b}|{u}"), b, u, Comm));
        }
    }
    for i in 1..=n4 {
        let below = IndexSet::all(n4).filter(|s| s.max().is_none_or(|m| m < i));
        for a1 in below {
            for a2 in IndexSet::all(n4).filter(|s| s.min().is_none_or(|m| m > i)) {
                let si = set(n4, [i]);
                let tag = format!("couple A1={a1} i={i} A2={a2}");
                v.push((format!("{tag} #1"), a1.union(&si), si.union(&a2), Star));
                v.push((format!("{tag} #2"), si.union(&a2), a1.union(&a2), Star));
                v.push((format!("{tag} #3"), a1.union(&a2), a1.union(&si), Star));
            }
        }
    }
    for k in 1..=3 {
        let n = 2 * k + 1;
        v.push((format!("evens-vs-ends k={k}"), set(n, evens(k)), set(n, [1, n]), Comm));
    }
    for k in 1..=2 {
        let n = 2 * k + 1;
        let big = set(n, std::iter::once(1).chain(evens(k)).chain([n]));
        v.push((format!("ends-vs-filled k={k}"), set(n, [1, n]), big, Comm));
    }
    for k in 1..=2 {
        let odds = |n| set(n, step2(1, 2 * k - 1));
        v.push((format!("odds-vs-interval k={k} even"), odds(2 * k), set(2 * k, 1..=2 * k), Comm));
        v.push((format!("odds-vs-interval k={k} odd"), odds(2 * k - 1), set(2 * k - 1, 1..=2 * k - 1), Comm));
        v.push((format!("evens-vs-interval k={k} even"), set(2 * k, evens(k)), set(2 * k, 1..=2 * k), Comm));
        let n = 2 * k + 1;
        v.push((format!("evens-vs-interval k={k} odd"), set(n, evens(k)), set(n, 1..=n), Comm));
    }
    for k in 1..=3 {
        let n = 2 * k;
        let lo = set(n, [1, n]);
        v.push((format!("corner-vs-evens k={k}"), lo, set(n, std::iter::once(1).chain(evens(k))), Comm));
        v.push((format!("corner-vs-odds k={k}"), lo, set(n, step2(1, n - 1).chain([n])), Comm));
    }
    for k in 1..=3 {
        let n = 2 * k + 1;
        let big = set(n, std::iter::once(1).chain(evens(k)).chain([n]));
        v.push((format!("evens-vs-filled k={k}"), set(n, evens(k)), big, Comm));
    }
    for (i, (a, b)) in explicit_commutations().into_iter().enumerate() {
        v.push((format!("explicit #{} {a}|{b}", i + 1), a, b, Comm));
    }
    let spot: [(usize, &[usize], &[usize]); 5] = [
        (6, &[1, 2, 4, 6], &[2, 4, 6]),
        (6, &[1, 3, 5, 6], &[3, 5]),
        (7, &[1, 3, 5, 7], &[3, 5, 7]),
        (7, &[1, 2, 4, 6, 7], &[2, 4, 7]),
        (6, &[1, 2, 4, 5], &[1, 5]),
    ];
    for (n, a, b) in spot {
        let (a, b) = (set(n, a.iter().copied()), set(n, b.iter().copied()));
        v.push((format!("multi-interval {a}⊇{b}"), a, b, Comm));
    }
    v
}

pub fn suite_named_lemmas<B: Backend>(cache: &GeneratorCache<B>, workers: usize) -> Reports<B> {
    let items = named_lemma_items().into_iter().map(|(l, a, b, k)| (a, b, k, l)).collect();
    run_checks(cache, workers, items)
}

/// Rank-one relations at arity 3, plus the reversed pair that must fail.
pub fn suite_rank_one<B: Backend>(cache: &GeneratorCache<B>) -> Reports<B> {
    let s = |e: &[usize]| set(3, e.iter().copied());
    let mut out = Vec::new();
    for (a, b) in [(s(&[1, 2]), s(&[2, 3])), (s(&[2, 3]), s(&[1, 3])), (s(&[1, 3]), s(&[1, 2]))] {
        out.push(check_star(cache, &a, &b)?.with_label(format!("rank-one {a}|{b}")));
    }
    let (a, b) = (s(&[1, 2]), s(&[1, 3]));
    out.push(check_star(cache, &a, &b)?.with_label(format!("rank-one reversed {a}|{b}")).expecting(RelationKind::Star, false));
    Ok(out)
}

/// A nested-bracket identity check.
#[derive(Debug, Clone)]
pub struct IdentityReport<M: Monomial> {
    pub label: String,
    pub backend: BackendKind,
    pub hypothesis_holds: bool,
    pub residual: AlgElem<M>,
}

impl<M: Monomial> IdentityReport<M> {
    pub fn passed(&self) -> bool {
        self.hypothesis_holds && self.residual.is_zero()
    }

    pub fn line(&self) -> ReportLine {
        ReportLine {
            label: self.label.clone(),
            backend: self.backend,
            n: self.residual.arity(),
            a: None,
            b: None,
            relation: None,
            expected: None,
            holds_star: None,
            holds_comm: Some(self.hypothesis_holds),
            residual_star_terms: Some(self.residual.len()),
            residual_comm_terms: None,
            pattern_predicted: false,
            pattern: None,
            passed: self.passed(),
            residual_star: None,
            residual_comm: None,
        }
    }
}

/// The four nested-bracket exchange identities, each instantiated with
/// generators satisfying its commutation hypothesis, plus degenerate scalar
/// instances.
pub fn q_identities_regression<B: Backend>(cache: &GeneratorCache<B>) -> Result<Vec<IdentityReport<B::Mono>>> {
    let g = |e: &[usize]| cache.get(&set(3, e.iter().copied())).map(|x| (*x).clone());
    let br = |x: &AlgElem<B::Mono>, y: &AlgElem<B::Mono>| B::bracket(x, y);
    let (g1, g3, g12, g23) = (g(&[1])?, g(&[3])?, g(&[1, 2])?, g(&[2, 3])?);
    let one = AlgElem::one(3);
    let mut out = Vec::new();
    let mut push = |label: &str, hyp: AlgElem<B::Mono>, lhs: AlgElem<B::Mono>, rhs: AlgElem<B::Mono>| -> Result<()> {
        out.push(IdentityReport {
            label: label.to_string(),
            backend: B::KIND,
            hypothesis_holds: hyp.is_zero(),
            residual: lhs.try_sub(&rhs)?,
        });
        Ok(())
    };
    for (tag, alpha) in [("", &g1), (" scalar", &one)] {
        // [α,[γ,δ]] = [[α,γ],δ] when [α,δ] = 0
        let (gm, dl) = (&g12, &g23);
        push(&format!("exchange-1{tag}"), AlgElem::comm(alpha, dl)?, br(alpha, &br(gm, dl)?)?, br(&br(alpha, gm)?, dl)?)?;
        // [β-variant] [[γ,δ],β] = [γ,[δ,β]] when [β,γ] = 0
        push(&format!("exchange-4{tag}"), AlgElem::comm(alpha, gm)?, br(&br(gm, dl)?, alpha)?, br(gm, &br(dl, alpha)?)?)?;
    }
    for (tag, alpha) in [("", &g3), (" scalar", &one)] {
        let (gm, dl) = (&g12, &g23);
        // [α,[γ,δ]] = [γ,[α,δ]] when [α,γ] = 0
        push(&format!("exchange-2{tag}"), AlgElem::comm(alpha, gm)?, br(alpha, &br(gm, dl)?)?, br(gm, &br(alpha, dl)?)?)?;
        // [[γ,δ],β] = [[γ,β],δ] when [β,δ] = 0
        push(&format!("exchange-3{tag}"), AlgElem::comm(alpha, dl)?, br(&br(gm, dl)?, alpha)?, br(&br(gm, alpha)?, dl)?)?;
    }
    Ok(out)
}

/// Result of classifying every ordered pair of subsets.
#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub backend: BackendKind,
    pub n: usize,
    pub pairs: usize,
    pub star_pairs: usize,
    pub predicted_pairs: usize,
    /// Pairs where the standard relation and the pattern prediction disagree.
    pub disagreements: Vec<(IndexSet, IndexSet, bool, bool)>,
    /// Disagreements on containment pairs that commute; for those the
    /// standard relation reduces to an identity in the empty-set constant.
    pub explained_by_containment: usize,
    /// Containment pairs that fail to commute.
    pub comm_failures: Vec<(IndexSet, IndexSet)>,
    /// Commutation is symmetric for every pair.
    pub comm_symmetric: bool,
}

impl ScanSummary {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.comm_failures.is_empty() && self.comm_symmetric
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pair = |a: &IndexSet, b: &IndexSet| serde_json::json!([a.to_string(), b.to_string()]);
        serde_json::json!({
            "summary": true,
            "backend": self.backend,
            "n": self.n,
            "pairs": self.pairs,
            "star_pairs": self.star_pairs,
            "predicted_pairs": self.predicted_pairs,
            "disagreements": self.disagreements.iter().map(|(a, b, h, p)| serde_json::json!({
                "a": a.to_string(), "b": b.to_string(), "holds_star": h, "predicted": p
            })).collect::<Vec<_>>(),
            "explained_by_containment": self.explained_by_containment,
            "comm_failures": self.comm_failures.iter().map(|(a, b)| pair(a, b)).collect::<Vec<_>>(),
            "comm_symmetric": self.comm_symmetric,
            "passed": self.passed(),
        })
    }
}

/// Classifies all ordered pairs `(A, B)` of subsets of `[1;n]`. Reports are
/// handed to `sink` in a fixed order as each chunk completes.
pub fn scan<B: Backend>(
    cache: &GeneratorCache<B>,
    n: usize,
    workers: usize,
    mut sink: impl FnMut(&RelationReport<B::Mono>),
) -> Result<ScanSummary> {
    let pairs: Vec<(IndexSet, IndexSet)> =
        IndexSet::all(n).flat_map(|a| IndexSet::all(n).map(move |b| (a, b))).collect();
    let mut summary = ScanSummary {
        backend: B::KIND,
        n,
        pairs: pairs.len(),
        star_pairs: 0,
        predicted_pairs: 0,
        disagreements: Vec::new(),
        explained_by_containment: 0,
        comm_failures: Vec::new(),
        comm_symmetric: true,
    };
    let mut comm = std::collections::HashMap::new();
    for chunk in pairs.chunks(64) {
        let reports = run_pool(workers, chunk, |(a, b)| check_both(cache, a, b));
        for r in reports {
            let r = r?;
            let holds = r.holds_star() == Some(true);
            let predicted = r.pattern_predicted();
            summary.star_pairs += holds as usize;
            summary.predicted_pairs += predicted as usize;
            let c = r.holds_comm() == Some(true);
            let nested = r.b.is_subset(&r.a) || r.a.is_subset(&r.b);
            if holds != predicted {
                summary.disagreements.push((r.a, r.b, holds, predicted));
                summary.explained_by_containment += (holds && nested && c) as usize;
            }
            if !c && nested {
                summary.comm_failures.push((r.a, r.b));
            }
            comm.insert((r.a.mask(), r.b.mask()), c);
            sink(&r);
        }
    }
    summary.comm_symmetric = comm.iter().all(|((a, b), c)| comm.get(&(*b, *a)) == Some(c));
    Ok(summary)
}
