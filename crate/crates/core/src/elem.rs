//! Backend-independent tensor elements.
//!
//! An [`AlgElem`] is a finite linear combination of length-`n` sequences of
//! single-factor normal-form monomials. All algebra-specific behaviour lives
//! behind the [`Monomial`] trait; tensor factors multiply independently.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};
use std::rc::Rc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::qcoeff::{RatQ, Scalar};

/// Per-term monomial sequence.
pub type Key<M> = SmallVec<[M; 8]>;

/// Single-factor normal-form monomial of one of the algebra backends.
pub trait Monomial: Copy + Eq + Hash + Ord + fmt::Debug + Send + Sync + 'static {
    fn one() -> Self;
    fn is_one(&self) -> bool;
    /// Normal form of the product `a * b`.
    fn mul(a: Self, b: Self) -> Rc<[(Self, Scalar)]>;
    /// Coproduct as a sum of `left ⊗ right` terms.
    fn coproduct(self) -> Rc<[(Self, Self, Scalar)]>;
    fn counit(self) -> Scalar;
    /// Exponent tuple used by the JSON element schema.
    fn to_exps(&self) -> Vec<i64>;
    fn from_exps(e: &[i64]) -> Option<Self>;
    /// Human-readable form; the identity renders as `1`.
    fn render(&self) -> String;
}

#[derive(Clone, PartialEq, Eq)]
pub struct AlgElem<M: Monomial> {
    arity: usize,
    terms: FxHashMap<Key<M>, Scalar>,
}

const PAR_THRESHOLD: usize = 4096;

impl<M: Monomial> AlgElem<M> {
    pub fn zero(arity: usize) -> Self {
        AlgElem { arity, terms: FxHashMap::default() }
    }

    pub fn scalar(arity: usize, s: Scalar) -> Self {
        let mut e = Self::zero(arity);
        e.add_term(SmallVec::from_elem(M::one(), arity), s);
        e
    }

    pub fn one(arity: usize) -> Self {
        Self::scalar(arity, Scalar::one())
    }

    pub fn from_key(key: Key<M>, coeff: Scalar) -> Self {
        let mut e = Self::zero(key.len());
        e.add_term(key, coeff);
        e
    }

    /// Arity-1 element from `(monomial, coefficient)` pairs.
    pub fn from_monos<I: IntoIterator<Item = (M, Scalar)>>(terms: I) -> Self {
        let mut e = Self::zero(1);
        for (m, c) in terms {
            e.add_term(SmallVec::from_elem(m, 1), c);
        }
        e
    }

    pub fn mono(m: M) -> Self {
        Self::from_monos([(m, Scalar::one())])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &[M]) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key<M>, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in lexicographic monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Key<M>, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, key: Key<M>, coeff: Scalar) {
        debug_assert_eq!(key.len(), self.arity);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    fn check_pos(&self, pos: usize) -> Result<()> {
        if pos == 0 || pos > self.arity {
            return Err(Error::PositionOutOfRange { pos, arity: self.arity });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let (mut big, small) =
            if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (k, c) in &small.terms {
            big.add_term(k.clone(), c.clone());
        }
        Ok(big)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.arity);
        }
        if s.is_one() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect();
        AlgElem { arity: self.arity, terms }
    }

    /// Normal-form product.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_arity(rhs)?;
        let arity = self.arity;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(arity));
        }
        let rhs_terms: Vec<(&Key<M>, &Scalar)> = rhs.terms.iter().collect();
        let work = |acc: &mut FxHashMap<Key<M>, Scalar>, ka: &Key<M>, ca: &Scalar| {
            for (kb, cb) in &rhs_terms {
                mul_keys_into(acc, ka, kb, ca * cb);
            }
        };
        let terms = if self.len() * rhs.len() >= PAR_THRESHOLD {
            let lhs: Vec<(&Key<M>, &Scalar)> = self.terms.iter().collect();
            lhs.par_chunks(32)
                .map(|chunk| {
                    let mut acc = FxHashMap::default();
                    for (ka, ca) in chunk {
                        work(&mut acc, ka, ca);
                    }
                    acc
                })
                .reduce(FxHashMap::default, merge_maps)
        } else {
            let mut acc = FxHashMap::default();
            for (ka, ca) in &self.terms {
                work(&mut acc, ka, ca);
            }
            acc
        };
        let mut out = AlgElem { arity, terms };
        out.prune();
        Ok(out)
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// `a * x y + b * y x`.
    pub fn lin_comm(x: &Self, y: &Self, a: &Scalar, b: &Scalar) -> Result<Self> {
        let xy = x.mul(y)?;
        let yx = y.mul(x)?;
        xy.scale(a).try_add(&yx.scale(b))
    }

    /// Plain commutator `xy - yx`.
    pub fn comm(x: &Self, y: &Self) -> Result<Self> {
        Self::lin_comm(x, y, &Scalar::one(), &Scalar::int(-1))
    }

    /// Coproduct applied at the 1-based leg `pos`.
    pub fn coproduct(&self, pos: usize) -> Result<Self> {
        self.check_pos(pos)?;
        let i = pos - 1;
        let mut out = Self::zero(self.arity + 1);
        for (k, c) in &self.terms {
            for (l, r, s) in k[i].coproduct().iter() {
                let mut key: Key<M> = SmallVec::with_capacity(self.arity + 1);
                key.extend_from_slice(&k[..i]);
                key.push(*l);
                key.push(*r);
                key.extend_from_slice(&k[i + 1..]);
                out.add_term(key, if s.is_one() { c.clone() } else { c * s });
            }
        }
        Ok(out)
    }

    /// Counit applied at the 1-based leg `pos`.
    pub fn counit(&self, pos: usize) -> Result<Self> {
        self.check_pos(pos)?;
        let i = pos - 1;
        let mut out = Self::zero(self.arity - 1);
        for (k, c) in &self.terms {
            let e = k[i].counit();
            if e.is_zero() {
                continue;
            }
            let mut key = k.clone();
            key.remove(i);
            out.add_term(key, c * &e);
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.arity + other.arity);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                out.add_term(key, ca * cb);
            }
        }
        out
    }

    /// Surrounds every term with identity legs.
    pub fn pad(&self, left: usize, right: usize) -> Self {
        if left == 0 && right == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut key: Key<M> = SmallVec::with_capacity(left + k.len() + right);
                key.extend(std::iter::repeat_n(M::one(), left));
                key.extend_from_slice(k);
                key.extend(std::iter::repeat_n(M::one(), right));
                (key, c.clone())
            })
            .collect();
        AlgElem { arity: left + self.arity + right, terms }
    }

    /// Places an arity-1 element at leg `pos` of an otherwise trivial tensor.
    pub fn at_leg(x: &Self, pos: usize, arity: usize) -> Result<Self> {
        if x.arity != 1 {
            return Err(Error::ArityMismatch { left: x.arity, right: 1 });
        }
        if pos == 0 || pos > arity {
            return Err(Error::PositionOutOfRange { pos, arity });
        }
        Ok(x.pad(pos - 1, arity - pos))
    }

    /// The scalar value when the element is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                k.iter().all(M::is_one).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn to_json(&self) -> ElemJson {
        ElemJson {
            arity: self.arity,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(k, c)| TermJson {
                    mono: k.iter().map(M::to_exps).collect(),
                    coeff: c.to_ratq(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ElemJson) -> Result<Self> {
        let mut out = Self::zero(j.arity);
        for t in &j.terms {
            if t.mono.len() != j.arity {
                return Err(Error::Malformed(format!(
                    "term has {} legs, expected {}",
                    t.mono.len(),
                    j.arity
                )));
            }
            let key: Option<Key<M>> = t.mono.iter().map(|e| M::from_exps(e)).collect();
            let key = key.ok_or_else(|| Error::Malformed("bad monomial exponents".into()))?;
            out.add_term(key, Scalar::try_from_ratq(&t.coeff)?);
        }
        Ok(out)
    }

    /// Multi-line listing, at most `limit` terms.
    pub fn render(&self, limit: Option<usize>) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms = self.sorted_terms();
        let shown = limit.unwrap_or(terms.len()).min(terms.len());
        let mut out = String::new();
        for (k, c) in &terms[..shown] {
            let legs: Vec<String> = k.iter().map(M::render).collect();
            out.push_str(&format!("  ({})  {}\n", c.render(), legs.join(" ⊗ ")));
        }
        if shown < terms.len() {
            out.push_str(&format!("  ... {} more terms\n", terms.len() - shown));
        }
        out
    }
}

fn merge_maps<M: Monomial>(
    mut a: FxHashMap<Key<M>, Scalar>,
    mut b: FxHashMap<Key<M>, Scalar>,
) -> FxHashMap<Key<M>, Scalar> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (k, c) in b {
        match a.entry(k) {
            std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &c,
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }
    a
}

enum Factor<M: Monomial> {
    Single(M),
    Many(Rc<[(M, Scalar)]>),
}

fn mul_keys_into<M: Monomial>(
    acc: &mut FxHashMap<Key<M>, Scalar>,
    ka: &[M],
    kb: &[M],
    coeff: Scalar,
) {
    let n = ka.len();
    let mut lists: SmallVec<[Factor<M>; 8]> = SmallVec::with_capacity(n);
    for i in 0..n {
        if kb[i].is_one() {
            lists.push(Factor::Single(ka[i]));
        } else if ka[i].is_one() {
            lists.push(Factor::Single(kb[i]));
        } else {
            let p = M::mul(ka[i], kb[i]);
            if p.len() == 1 && p[0].1.is_one() {
                lists.push(Factor::Single(p[0].0));
            } else {
                lists.push(Factor::Many(p));
            }
        }
    }
    let mut key: Key<M> = SmallVec::with_capacity(n);
    expand(&lists, 0, &mut key, coeff, acc);
}

fn expand<M: Monomial>(
    lists: &[Factor<M>],
    i: usize,
    key: &mut Key<M>,
    coeff: Scalar,
    acc: &mut FxHashMap<Key<M>, Scalar>,
) {
    if i == lists.len() {
        match acc.entry(key.clone()) {
            std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &coeff,
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
        return;
    }
    match &lists[i] {
        Factor::Single(m) => {
            key.push(*m);
            expand(lists, i + 1, key, coeff, acc);
            key.pop();
        }
        Factor::Many(list) => {
            for (m, s) in list.iter() {
                key.push(*m);
                let c = if s.is_one() { coeff.clone() } else { &coeff * s };
                expand(lists, i + 1, key, c, acc);
                key.pop();
            }
        }
    }
}

impl<M: Monomial> Add for &AlgElem<M> {
    type Output = AlgElem<M>;
    /// Panics on arity mismatch; use [`AlgElem::try_add`] to handle it.
    fn add(self, rhs: &AlgElem<M>) -> AlgElem<M> {
        self.try_add(rhs).expect("arity mismatch in addition")
    }
}

impl<M: Monomial> Sub for &AlgElem<M> {
    type Output = AlgElem<M>;
    /// Panics on arity mismatch; use [`AlgElem::try_sub`] to handle it.
    fn sub(self, rhs: &AlgElem<M>) -> AlgElem<M> {
        self.try_sub(rhs).expect("arity mismatch in subtraction")
    }
}

impl<M: Monomial> Neg for &AlgElem<M> {
    type Output = AlgElem<M>;
    fn neg(self) -> AlgElem<M> {
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect();
        AlgElem { arity: self.arity, terms }
    }
}

impl<M: Monomial> fmt::Debug for AlgElem<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem(arity {}, {} terms)\n{}", self.arity, self.len(), self.render(Some(12)))
    }
}

impl<M: Monomial> fmt::Display for AlgElem<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub mono: Vec<Vec<i64>>,
    pub coeff: RatQ,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

impl<M: Monomial> Serialize for AlgElem<M> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de, M: Monomial> Deserialize<'de> for AlgElem<M> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ElemJson::deserialize(d)?;
        AlgElem::from_json(&j).map_err(serde::de::Error::custom)
    }
}
