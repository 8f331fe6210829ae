//! Index sets, extension plans and generator construction.
//!
//! A generator for a nonempty set `A` is built from the Casimir by a sequence
//! of coproducts and coactions ([`MorphismPlan`]), then padded with identity
//! legs. The right, left, mixed and derived-order processes yield different
//! plans for the same set; they are required to agree.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use dashmap::DashMap;

use crate::backend::Backend;
use crate::coideal::{EdgeElem, Step, StepKind};
use crate::elem::AlgElem;
use crate::error::{Error, Result};
use crate::qcoeff::{RatQ, Scalar};

/// Largest supported arity.
pub const MAX_N: usize = 63;

/// A subset of `[1;n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSet {
    n: usize,
    mask: u64,
}

impl IndexSet {
    pub fn empty(n: usize) -> Self {
        IndexSet { n, mask: 0 }
    }

    pub fn new(n: usize, elems: &[usize]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidSet(format!("arity {n} outside 1..={MAX_N}")));
        }
        let mut mask = 0u64;
        for &a in elems {
            if a == 0 || a > n {
                return Err(Error::InvalidSet(format!("element {a} outside [1;{n}]")));
            }
            mask |= 1 << (a - 1);
        }
        Ok(IndexSet { n, mask })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > MAX_N || mask >> n != 0 {
            return Err(Error::InvalidSet(format!("mask {mask:#b} does not fit arity {n}")));
        }
        Ok(IndexSet { n, mask })
    }

    /// Parses `"1,3-5,8"`; braces and `∅` are accepted for the empty set.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        let mut elems = Vec::new();
        if !(body.is_empty() || body == "∅") {
            for part in body.split(',') {
                let part = part.trim();
                let num = |t: &str| {
                    t.trim().parse::<usize>().map_err(|_| Error::InvalidSet(format!("cannot parse {t:?} in {s:?}")))
                };
                match part.split_once('-') {
                    Some((a, b)) => {
                        let (a, b) = (num(a)?, num(b)?);
                        if a > b {
                            return Err(Error::InvalidSet(format!("empty range {part:?}")));
                        }
                        elems.extend(a..=b);
                    }
                    None => elems.push(num(part)?),
                }
            }
        }
        Self::new(n, &elems)
    }

    /// All subsets of `[1;n]` in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = IndexSet> {
        assert!(n <= 20, "enumerating all subsets of [1;{n}] is not supported");
        (0..1u64 << n).map(move |mask| IndexSet { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, a: usize) -> bool {
        a >= 1 && a <= self.n && self.mask >> (a - 1) & 1 == 1
    }

    pub fn elems(&self) -> Vec<usize> {
        (1..=self.n).filter(|a| self.contains(*a)).collect()
    }

    pub fn min(&self) -> Option<usize> {
        (self.mask != 0).then(|| self.mask.trailing_zeros() as usize + 1)
    }

    pub fn max(&self) -> Option<usize> {
        (self.mask != 0).then(|| 64 - self.mask.leading_zeros() as usize)
    }

    /// Maximal discrete intervals `[i;j]`, in increasing order.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for a in self.elems() {
            match out.last_mut() {
                Some((_, j)) if *j + 1 == a => *j = a,
                _ => out.push((a, a)),
            }
        }
        out
    }

    /// `max(self) < min(other)`, or either set is empty.
    pub fn precedes(&self, other: &IndexSet) -> bool {
        match (self.max(), other.min()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.mask & !other.mask == 0
    }

    fn check_n(&self, other: &IndexSet) {
        assert_eq!(self.n, other.n, "index sets of different arity");
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        self.check_n(other);
        IndexSet { n: self.n, mask: self.mask | other.mask }
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        self.check_n(other);
        IndexSet { n: self.n, mask: self.mask & other.mask }
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        self.check_n(other);
        IndexSet { n: self.n, mask: self.mask & !other.mask }
    }

    pub fn symmetric_difference(&self, other: &IndexSet) -> IndexSet {
        self.check_n(other);
        IndexSet { n: self.n, mask: self.mask ^ other.mask }
    }

    /// The same elements inside a larger (or smaller) ambient range.
    pub fn with_n(&self, n: usize) -> Result<IndexSet> {
        Self::from_mask(n, self.mask)
    }

    /// Translate so the minimum becomes 1, with ambient range `[1;max-min+1]`.
    pub fn normalized(&self) -> Option<IndexSet> {
        let (lo, hi) = (self.min()?, self.max()?);
        Some(IndexSet { n: hi - lo + 1, mask: self.mask >> (lo - 1) })
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}⊆[1;{}]", self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Process {
    Right,
    Left,
    /// Split at the `j`-th element (1-based).
    Mixed(usize),
    Derived,
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Process::Right => f.write_str("right"),
            Process::Left => f.write_str("left"),
            Process::Mixed(j) => write!(f, "mixed:{j}"),
            Process::Derived => f.write_str("derived"),
        }
    }
}

impl FromStr for Process {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "right" => Ok(Process::Right),
            "left" => Ok(Process::Left),
            "derived" => Ok(Process::Derived),
            other => match other.strip_prefix("mixed:").map(str::parse) {
                Some(Ok(j)) => Ok(Process::Mixed(j)),
                _ => Err(Error::InvalidPlan(format!("unknown process {other:?}"))),
            },
        }
    }
}

/// A validated sequence of steps acting on the Casimir.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismPlan {
    steps: Vec<Step>,
    arity: usize,
}

impl MorphismPlan {
    /// Checks every step against the arity reached so far, starting from one leg.
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut arity = 1;
        for (i, s) in steps.iter().enumerate() {
            let ok = match s.map {
                StepKind::Delta => s.pos >= 1 && s.pos <= arity,
                StepKind::TauR => s.pos == arity,
                StepKind::TauL => s.pos == 1,
            };
            if !ok {
                return Err(Error::InvalidPlan(format!("step {} ({s}) does not fit arity {arity}", i + 1)));
            }
            arity += 1;
        }
        Ok(MorphismPlan { steps, arity })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of legs produced.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn execute<B: Backend>(&self) -> Result<AlgElem<B::Mono>> {
        Ok(EdgeElem::<B>::casimir().apply_all(&self.steps)?.finalize())
    }
}

impl fmt::Display for MorphismPlan {
    /// Composition notation, last-applied factor first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("id");
        }
        let mut factors = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            let arity = i + 1;
            let mut parts = Vec::new();
            let id = |k: usize| if k == 1 { "1".to_string() } else { format!("1^{{⊗{k}}}") };
            if s.pos > 1 {
                parts.push(id(s.pos - 1));
            }
            parts.push(s.map.symbol().to_string());
            if arity > s.pos {
                parts.push(id(arity - s.pos));
            }
            factors.push(if parts.len() == 1 { parts.pop().unwrap() } else { format!("({})", parts.join("⊗")) });
        }
        factors.reverse();
        f.write_str(&factors.join(""))
    }
}

fn nonempty(a: &IndexSet) -> Result<Vec<usize>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(a.elems())
}

fn push_right_part(steps: &mut Vec<Step>, a: &[usize], base: usize, from: usize) {
    for i in from..a.len() {
        let delta_at = a[i - 1] - base + 1;
        steps.push(Step::delta(delta_at));
        for l in (a[i - 1] - base + 1)..(a[i] - base) {
            steps.push(Step::tau_r(l + 1));
        }
    }
}

fn push_left_part(steps: &mut Vec<Step>, a: &[usize], upto: usize) {
    let am = a[a.len() - 1];
    for i in (0..upto).rev() {
        steps.push(Step::delta(1));
        for _ in (am - a[i + 1] + 1)..(am - a[i]) {
            steps.push(Step::tau_l(1));
        }
    }
}

pub fn plan_right(a: &IndexSet) -> Result<MorphismPlan> {
    let e = nonempty(a)?;
    let mut steps = Vec::new();
    push_right_part(&mut steps, &e, e[0], 1);
    MorphismPlan::new(steps)
}

pub fn plan_left(a: &IndexSet) -> Result<MorphismPlan> {
    let e = nonempty(a)?;
    let mut steps = Vec::new();
    push_left_part(&mut steps, &e, e.len() - 1);
    MorphismPlan::new(steps)
}

/// Right process from the `j`-th element onwards, then the left process
/// for the elements before it.
pub fn plan_mixed(a: &IndexSet, j: usize) -> Result<MorphismPlan> {
    let e = nonempty(a)?;
    if j == 0 || j > e.len() {
        return Err(Error::SplitOutOfRange { j, len: e.len() });
    }
    let mut steps = Vec::new();
    push_right_part(&mut steps, &e, e[j - 1], j);
    push_left_part(&mut steps, &e, j - 1);
    MorphismPlan::new(steps)
}

/// Holes first, on `{1,3,...,2k-1}`, then every hole and interval is
/// enlarged by coproducts.
pub fn plan_derived(a: &IndexSet) -> Result<MorphismPlan> {
    nonempty(a)?;
    let shifted = a.normalized().expect("nonempty");
    let iv = shifted.intervals();
    let k = iv.len();
    let i = |m: usize| iv[m - 1].0 as i64;
    let j = |m: usize| iv[m - 1].1 as i64;
    let jk = j(k);

    let seed: Vec<usize> = (0..k).map(|t| 2 * t + 1).collect();
    let mut steps = Vec::new();
    push_right_part(&mut steps, &seed, 1, 1);
    let mut arity = 2 * k - 1;
    for np in (0..=2 * k - 2).rev() {
        let (alpha, beta) = if np % 2 == 0 {
            let m = (np + 2) / 2;
            (jk - j(m), jk - i(m) - 1)
        } else {
            let m = (np + 3) / 2;
            (jk - i(m) + 1, jk - j(m - 1) - 2)
        };
        for ell in alpha..=beta {
            if arity as i64 != np as i64 + 1 + ell {
                return Err(Error::InvalidPlan(format!(
                    "derived schedule expects {} legs before Δ at {} but has {arity}",
                    np as i64 + 1 + ell,
                    np + 1
                )));
            }
            steps.push(Step::delta(np + 1));
            arity += 1;
        }
    }
    MorphismPlan::new(steps)
}

pub fn plan(a: &IndexSet, process: Process) -> Result<MorphismPlan> {
    match process {
        Process::Right => plan_right(a),
        Process::Left => plan_left(a),
        Process::Mixed(j) => plan_mixed(a, j),
        Process::Derived => plan_derived(a),
    }
}

/// Runs `plan` and pads the result into `[1;n]` around `a`.
pub fn build<B: Backend>(a: &IndexSet, plan: &MorphismPlan) -> Result<AlgElem<B::Mono>> {
    let (lo, hi) = match (a.min(), a.max()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Ok(empty_generator::<B>(a.n())),
    };
    if plan.arity() != hi - lo + 1 {
        return Err(Error::InvalidPlan(format!("plan yields {} legs but {a} spans {}", plan.arity(), hi - lo + 1)));
    }
    Ok(plan.execute::<B>()?.pad(lo - 1, a.n() - hi))
}

pub fn build_with<B: Backend>(a: &IndexSet, process: Process) -> Result<AlgElem<B::Mono>> {
    if a.is_empty() {
        return Ok(empty_generator::<B>(a.n()));
    }
    build::<B>(a, &plan(a, process)?)
}

/// Right, left, every mixed split and, for at most two intervals, the
/// derived order.
pub fn processes_for(a: &IndexSet) -> Vec<Process> {
    let mut out = vec![Process::Right, Process::Left];
    out.extend((1..=a.len()).map(Process::Mixed));
    if a.intervals().len() <= 2 {
        out.push(Process::Derived);
    }
    out
}

/// Builds `a` with every process of [`processes_for`] and compares each
/// result with the right process.
pub fn process_equivalence<B: Backend>(a: &IndexSet) -> Result<Vec<(Process, bool)>> {
    let r = build_with::<B>(a, Process::Right)?;
    processes_for(a)
        .into_iter()
        .map(|p| Ok((p, build_with::<B>(a, p)? == r)))
        .collect()
}

/// The empty-set generator as a multiple of the identity.
pub fn empty_generator<B: Backend>(n: usize) -> AlgElem<B::Mono> {
    AlgElem::scalar(n, B::empty_scalar())
}

/// Solves the standard relation for `A = {1}`, `B = {2}` at arity 2 for the
/// unknown empty-set scalar, and checks the solution.
pub fn derive_empty_scalar<B: Backend>() -> Result<Scalar> {
    let s = B::star();
    let g1 = build_with::<B>(&IndexSet::new(2, &[1])?, Process::Right)?;
    let g2 = build_with::<B>(&IndexSet::new(2, &[2])?, Process::Right)?;
    let g12 = build_with::<B>(&IndexSet::new(2, &[1, 2])?, Process::Right)?;
    let lhs = B::bracket(&g1, &g2)?;
    let r0 = g12.scale(&s.symdiff).try_add(&g1.mul(&g2)?.scale(&s.pair))?;
    let r1 = g12.scale(&s.pair);
    let target = lhs.try_sub(&r0)?;
    let (key, c1) = r1.sorted_terms().into_iter().next().ok_or_else(|| Error::Inconsistent("zero coefficient".into()))?;
    let c0 = target.get(key).map(Scalar::to_ratq).unwrap_or_else(RatQ::zero);
    let c = Scalar::try_from_ratq(&c0.div(&c1.to_ratq())?)?;
    if !target.try_sub(&r1.scale(&c))?.is_zero() {
        return Err(Error::Inconsistent("no scalar satisfies the disjoint two-leg relation".into()));
    }
    Ok(c)
}

/// Content-addressed store of generators shared across relation checks.
pub struct GeneratorCache<B: Backend> {
    cores: DashMap<u64, Arc<AlgElem<B::Mono>>>,
    padded: DashMap<(usize, u64), Arc<AlgElem<B::Mono>>>,
}

impl<B: Backend> Default for GeneratorCache<B> {
    fn default() -> Self {
        GeneratorCache { cores: DashMap::new(), padded: DashMap::new() }
    }
}

impl<B: Backend> GeneratorCache<B> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, a: &IndexSet) -> Result<Arc<AlgElem<B::Mono>>> {
        if let Some(x) = self.padded.get(&(a.n(), a.mask())) {
            return Ok(x.clone());
        }
        let elem = match a.normalized() {
            None => Arc::new(empty_generator::<B>(a.n())),
            Some(core_set) => {
                let core = match self.cores.get(&core_set.mask()) {
                    Some(c) => c.clone(),
                    None => {
                        let c = Arc::new(plan_right(&core_set)?.execute::<B>()?);
                        self.cores.entry(core_set.mask()).or_insert(c).clone()
                    }
                };
                let lo = a.min().unwrap();
                Arc::new(core.pad(lo - 1, a.n() + 1 - lo - core_set.n()))
            }
        };
        Ok(self.padded.entry((a.n(), a.mask())).or_insert(elem).clone())
    }

    pub fn len(&self) -> usize {
        self.padded.len()
    }

    pub fn is_empty(&self) -> bool {
        self.padded.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{Aw, Bi};
    use crate::uq;
    use proptest::prelude::*;

    fn s(n: usize, e: &[usize]) -> IndexSet {
        IndexSet::new(n, e).unwrap()
    }

    #[test]
    fn parse_and_intervals() {
        let a = IndexSet::parse("1,3-5,8", 9).unwrap();
        assert_eq!(a.elems(), vec![1, 3, 4, 5, 8]);
        assert_eq!(a.intervals(), vec![(1, 1), (3, 5), (8, 8)]);
        assert_eq!(IndexSet::parse("{2, 3-4, 5}", 6).unwrap().intervals(), vec![(2, 5)]);
        assert!(IndexSet::parse("∅", 3).unwrap().is_empty());
        assert!(IndexSet::parse("0,1", 3).is_err());
        assert!(IndexSet::parse("4", 3).is_err());
        assert!(IndexSet::parse("3-1", 3).is_err());
        assert!(IndexSet::parse("x", 3).is_err());
        assert_eq!(a.to_string(), "{1,3,4,5,8}");
        assert_eq!(s(9, &[4, 6]).normalized().unwrap(), s(3, &[1, 3]));
    }

    #[test]
    fn precedes() {
        assert!(s(4, &[1, 2]).precedes(&s(4, &[3])));
        assert!(!s(4, &[1, 3]).precedes(&s(4, &[2])));
        assert!(IndexSet::empty(4).precedes(&s(4, &[1])));
        assert!(s(4, &[4]).precedes(&IndexSet::empty(4)));
    }

    fn steps(p: &MorphismPlan) -> Vec<String> {
        p.steps().iter().map(Step::to_string).collect()
    }

    #[test]
    fn example_plans() {
        let a = s(9, &[2, 4, 5, 8]);
        let r = plan_right(&a).unwrap();
        assert_eq!(steps(&r), ["Δ@1", "τ_R@2", "Δ@3", "Δ@4", "τ_R@5", "τ_R@6"]);
        assert_eq!(r.to_string(), "(1^{⊗5}⊗τ_R)(1^{⊗4}⊗τ_R)(1^{⊗3}⊗Δ)(1^{⊗2}⊗Δ)(1⊗τ_R)Δ");
        let l = plan_left(&a).unwrap();
        assert_eq!(steps(&l), ["Δ@1", "τ_L@1", "τ_L@1", "Δ@1", "Δ@1", "τ_L@1"]);
        assert_eq!(l.to_string(), "(τ_L⊗1^{⊗5})(Δ⊗1^{⊗4})(Δ⊗1^{⊗3})(τ_L⊗1^{⊗2})(τ_L⊗1)Δ");
        let m = plan_mixed(&a, 2).unwrap();
        assert_eq!(steps(&m), ["Δ@1", "Δ@2", "τ_R@3", "τ_R@4", "Δ@1", "τ_L@1"]);
        assert_eq!(plan_mixed(&a, 1).unwrap(), r);
        assert_eq!(plan_mixed(&a, 4).unwrap(), l);
        assert!(matches!(plan_mixed(&a, 5), Err(Error::SplitOutOfRange { .. })));
        assert_eq!(steps(&plan_right(&s(3, &[1, 3])).unwrap()), ["Δ@1", "τ_R@2"]);
        assert_eq!(steps(&plan_left(&s(3, &[1, 3])).unwrap()), ["Δ@1", "τ_L@1"]);
        assert_eq!(steps(&plan_right(&s(2, &[1, 2])).unwrap()), ["Δ@1"]);
        assert!(plan_left(&s(3, &[2])).unwrap().steps().is_empty());
        assert!(matches!(plan_right(&IndexSet::empty(3)), Err(Error::EmptySet)));
        assert_eq!(steps(&plan_derived(&s(5, &[1, 2, 4, 5])).unwrap()), ["Δ@1", "τ_R@2", "Δ@3", "Δ@1"]);
        assert_eq!(steps(&plan_derived(&s(3, &[1, 2, 3])).unwrap()), ["Δ@1", "Δ@1"]);
    }

    #[test]
    fn plan_validation() {
        assert!(MorphismPlan::new(vec![Step::tau_r(1), Step::tau_r(1)]).is_err());
        assert!(MorphismPlan::new(vec![Step::delta(1), Step::tau_l(2)]).is_err());
        assert!(MorphismPlan::new(vec![Step::delta(2)]).is_err());
        assert_eq!(MorphismPlan::new(vec![Step::delta(1), Step::delta(2)]).unwrap().arity(), 3);
        assert_eq!("mixed:3".parse::<Process>().unwrap(), Process::Mixed(3));
        assert!("sideways".parse::<Process>().is_err());
    }

    fn all_processes_agree<B: Backend>(n: usize) {
        for a in IndexSet::all(n).filter(|a| !a.is_empty()) {
            let results = process_equivalence::<B>(&a).unwrap();
            assert_eq!(results.len(), a.len() + 3, "{a:?}");
            for (p, same) in results {
                assert!(same, "{p} {a:?}");
            }
        }
    }

    #[test]
    fn aw_process_equivalence() {
        all_processes_agree::<Aw>(4);
    }

    #[test]
    fn bi_process_equivalence() {
        all_processes_agree::<Bi>(4);
    }

    #[test]
    fn derived_matches_right_up_to_five() {
        for a in IndexSet::all(5).filter(|a| !a.is_empty() && a.intervals().len() <= 2) {
            let r = build_with::<Aw>(&a, Process::Right).unwrap();
            assert_eq!(build_with::<Aw>(&a, Process::Derived).unwrap(), r, "{a:?}");
        }
    }

    #[test]
    fn comodule_rewrites_of_a_long_hole() {
        let a = s(5, &[1, 5]);
        let r = build_with::<Aw>(&a, Process::Right).unwrap();
        let alt = MorphismPlan::new(vec![Step::delta(1), Step::tau_r(2), Step::delta(2), Step::delta(2)]).unwrap();
        assert_eq!(build::<Aw>(&a, &alt).unwrap(), r);
        let alt = MorphismPlan::new(vec![Step::delta(1), Step::tau_l(1), Step::delta(2), Step::delta(3)]).unwrap();
        assert_eq!(build::<Aw>(&a, &alt).unwrap(), r);
    }

    #[test]
    fn padding_naturality() {
        for a in IndexSet::all(3).filter(|a| !a.is_empty()) {
            let x = build_with::<Bi>(&a, Process::Right).unwrap().pad(0, 1);
            assert_eq!(build_with::<Bi>(&a.with_n(4).unwrap(), Process::Right).unwrap(), x);
        }
    }

    #[test]
    fn singletons_and_intervals() {
        assert_eq!(build_with::<Aw>(&s(3, &[2]), Process::Right).unwrap(), Aw::casimir().pad(1, 1));
        let chain = uq::casimir().coproduct(1).unwrap().coproduct(2).unwrap();
        assert_eq!(build_with::<Aw>(&s(3, &[1, 2, 3]), Process::Right).unwrap(), chain);
    }

    #[test]
    fn lambda_13_solves_rank_one_relation() {
        let g = |e: &[usize]| build_with::<Aw>(&s(3, e), Process::Right).unwrap();
        let lhs = uq::q_comm(&g(&[1, 2]), &g(&[2, 3])).unwrap();
        let rest = &g(&[2]).mul(&g(&[1, 2, 3])).unwrap() + &g(&[1]).mul(&g(&[3])).unwrap();
        let want = &lhs - &rest.scale(&Scalar::d());
        let coeff = &Scalar::q_pow(-2) - &Scalar::q_pow(2);
        assert_eq!(build_with::<Aw>(&s(3, &[1, 3]), Process::Right).unwrap().scale(&coeff), want);
    }

    #[test]
    fn empty_scalars() {
        assert_eq!(derive_empty_scalar::<Aw>().unwrap(), crate::qcoeff::q_plus_qinv());
        let bi = derive_empty_scalar::<Bi>().unwrap();
        assert_eq!(bi, Bi::empty_scalar());
        assert_eq!(&bi * &crate::qcoeff::v_plus_vinv(), Scalar::int(-1));
    }

    #[test]
    fn cache_matches_direct_build() {
        let cache = GeneratorCache::<Aw>::new();
        for a in IndexSet::all(4) {
            assert_eq!(*cache.get(&a).unwrap(), build_with::<Aw>(&a, Process::Right).unwrap());
        }
        assert_eq!(cache.len(), 16);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn set_algebra(n in 1usize..12, x in any::<u64>(), y in any::<u64>()) {
            let m = (1u64 << n) - 1;
            let a = IndexSet::from_mask(n, x & m).unwrap();
            let b = IndexSet::from_mask(n, y & m).unwrap();
            prop_assert_eq!(a.symmetric_difference(&b), a.difference(&b).union(&b.difference(&a)));
            prop_assert_eq!(IndexSet::parse(&a.to_string(), n).unwrap(), a);
            let iv = a.intervals();
            prop_assert!(iv.windows(2).all(|w| w[0].1 + 1 < w[1].0));
            prop_assert_eq!(iv.iter().map(|(i, j)| j - i + 1).sum::<usize>(), a.len());
            prop_assert_eq!(a.precedes(&b), a.is_empty() || b.is_empty() || a.max() < b.min());
        }

        #[test]
        fn mixed_plans_validate(n in 1usize..10, x in 1u64..1024) {
            let a = IndexSet::from_mask(n, x & ((1u64 << n) - 1)).unwrap();
            prop_assume!(!a.is_empty());
            let span = a.max().unwrap() - a.min().unwrap() + 1;
            for j in 1..=a.len() {
                prop_assert_eq!(plan_mixed(&a, j).unwrap().arity(), span);
            }
            prop_assert_eq!(plan_derived(&a).unwrap().arity(), span);
        }
    }
}
