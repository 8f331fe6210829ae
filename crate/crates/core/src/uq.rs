//! `U_q(sl2)` in the PBW basis `F^f K^k E^e`.

use std::cell::RefCell;
use std::rc::Rc;

use rustc_hash::FxHashMap;

use crate::elem::{AlgElem, Monomial};
use crate::qcoeff::{q_int, Scalar};
#[cfg(test)]
use crate::qcoeff::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UqMono {
    pub f: u16,
    pub k: i32,
    pub e: u16,
}

pub type UqElem = AlgElem<UqMono>;

impl UqMono {
    pub const fn new(f: u16, k: i32, e: u16) -> Self {
        UqMono { f, k, e }
    }
    pub const E: UqMono = UqMono::new(0, 0, 1);
    pub const F: UqMono = UqMono::new(1, 0, 0);
    pub const K: UqMono = UqMono::new(0, 1, 0);
    pub const KINV: UqMono = UqMono::new(0, -1, 0);
}

type MulTable = FxHashMap<(UqMono, UqMono), Rc<[(UqMono, Scalar)]>>;
type CoprodTable = FxHashMap<UqMono, Rc<[(UqMono, UqMono, Scalar)]>>;

thread_local! {
    static MUL_CACHE: RefCell<MulTable> =
        RefCell::new(FxHashMap::default());
    static COPROD_CACHE: RefCell<CoprodTable> =
        RefCell::new(FxHashMap::default());
}

/// `E * F^d K^g E^h`, accumulated into `out` with weight `c`.
fn left_mul_e(out: &mut FxHashMap<UqMono, Scalar>, m: UqMono, c: &Scalar) {
    let mut push = |mono: UqMono, s: Scalar| {
        let slot = out.entry(mono).or_default();
        *slot += &s;
    };
    push(UqMono::new(m.f, m.k, m.e + 1), c.shift(-4 * m.k));
    if m.f > 0 {
        let d = m.f as i32;
        let base = c * &Scalar::over_d(q_int(m.f as u32), 1);
        push(UqMono::new(m.f - 1, m.k + 1, m.e), base.shift(2 * (1 - d)));
        push(UqMono::new(m.f - 1, m.k - 1, m.e), -base.shift(2 * (d - 1)));
    }
}

fn mul_raw(a: UqMono, b: UqMono) -> Vec<(UqMono, Scalar)> {
    let mut cur: FxHashMap<UqMono, Scalar> = FxHashMap::default();
    cur.insert(b, Scalar::one());
    for _ in 0..a.e {
        let mut next = FxHashMap::default();
        for (m, c) in &cur {
            left_mul_e(&mut next, *m, c);
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let mut out: Vec<(UqMono, Scalar)> = cur
        .into_iter()
        .map(|(m, c)| {
            // K^b F^x = q^{-2bx} F^x K^b
            let s = c.shift(-4 * a.k * m.f as i32);
            (UqMono::new(a.f + m.f, a.k + m.k, m.e), s)
        })
        .collect();
    out.sort_by_key(|t| t.0);
    out
}

fn coproduct_raw(m: UqMono) -> Vec<(UqMono, UqMono, Scalar)> {
    let one = Scalar::one();
    let key = |a: UqMono, b: UqMono| smallvec::smallvec![a, b];
    let mut df = AlgElem::zero(2);
    df.add_term(key(UqMono::F, UqMono::KINV), one.clone());
    df.add_term(key(UqMono::default(), UqMono::F), one.clone());
    let mut de = AlgElem::zero(2);
    de.add_term(key(UqMono::E, UqMono::default()), one.clone());
    de.add_term(key(UqMono::K, UqMono::E), one.clone());
    let mut acc = AlgElem::from_key(key(UqMono::new(0, m.k, 0), UqMono::new(0, m.k, 0)), one);
    for _ in 0..m.f {
        acc = df.mul(&acc).expect("arity 2");
    }
    for _ in 0..m.e {
        acc = acc.mul(&de).expect("arity 2");
    }
    let mut out: Vec<_> = acc.iter().map(|(k, c)| (k[0], k[1], c.clone())).collect();
    out.sort_by_key(|t| (t.0, t.1));
    out
}

impl Monomial for UqMono {
    fn one() -> Self {
        UqMono::default()
    }

    fn is_one(&self) -> bool {
        self.f == 0 && self.k == 0 && self.e == 0
    }

    fn mul(a: Self, b: Self) -> Rc<[(Self, Scalar)]> {
        if let Some(hit) = MUL_CACHE.with(|c| c.borrow().get(&(a, b)).cloned()) {
            return hit;
        }
        let v: Rc<[(Self, Scalar)]> = mul_raw(a, b).into();
        MUL_CACHE.with(|c| c.borrow_mut().insert((a, b), v.clone()));
        v
    }

    fn coproduct(self) -> Rc<[(Self, Self, Scalar)]> {
        if let Some(hit) = COPROD_CACHE.with(|c| c.borrow().get(&self).cloned()) {
            return hit;
        }
        let v: Rc<[(Self, Self, Scalar)]> = coproduct_raw(self).into();
        COPROD_CACHE.with(|c| c.borrow_mut().insert(self, v.clone()));
        v
    }

    fn counit(self) -> Scalar {
        if self.f == 0 && self.e == 0 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    fn to_exps(&self) -> Vec<i64> {
        vec![self.f as i64, self.k as i64, self.e as i64]
    }

    fn from_exps(e: &[i64]) -> Option<Self> {
        match e {
            [f, k, e] => Some(UqMono::new(
                u16::try_from(*f).ok()?,
                i32::try_from(*k).ok()?,
                u16::try_from(*e).ok()?,
            )),
            _ => None,
        }
    }

    fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let pw = |sym: &str, x: i64| match x {
            1 => sym.to_string(),
            _ => format!("{sym}^{x}"),
        };
        if self.f > 0 {
            parts.push(pw("F", self.f as i64));
        }
        if self.k != 0 {
            parts.push(pw("K", self.k as i64));
        }
        if self.e > 0 {
            parts.push(pw("E", self.e as i64));
        }
        parts.join(" ")
    }
}

/// `q - q^-1`.
pub fn d() -> Scalar {
    Scalar::d()
}

/// `(q-q^-1)^2 FE + qK + q^-1 K^-1`, the normal form of the Casimir.
pub fn casimir() -> UqElem {
    AlgElem::from_monos([
        (UqMono::new(1, 0, 1), &d() * &d()),
        (UqMono::K, Scalar::q_pow(1)),
        (UqMono::KINV, Scalar::q_pow(-1)),
    ])
}

/// `[X, Y]_q = qXY - q^-1 YX`.
pub fn q_comm(x: &UqElem, y: &UqElem) -> crate::Result<UqElem> {
    AlgElem::lin_comm(x, y, &Scalar::q_pow(1), &-Scalar::q_pow(-1))
}

pub fn gen(m: UqMono) -> UqElem {
    AlgElem::mono(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Word rewriting using only the elementary relations, one swap at a time.
    mod oracle {
        use super::*;

        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
        pub enum G {
            F,
            K,
            Ki,
            E,
        }

        fn rank(g: G) -> u8 {
            match g {
                G::F => 0,
                G::K | G::Ki => 1,
                G::E => 2,
            }
        }

        pub fn word_of(m: UqMono) -> Vec<G> {
            let mut w = vec![G::F; m.f as usize];
            let kg = if m.k >= 0 { G::K } else { G::Ki };
            w.extend(std::iter::repeat_n(kg, m.k.unsigned_abs() as usize));
            w.extend(std::iter::repeat_n(G::E, m.e as usize));
            w
        }

        pub fn normalize(word: Vec<G>) -> FxHashMap<UqMono, Scalar> {
            let mut todo: Vec<(Vec<G>, Scalar)> = vec![(word, Scalar::one())];
            let mut out: FxHashMap<UqMono, Scalar> = FxHashMap::default();
            let dinv = Scalar::over_d(LaurentPoly::one(), 1);
            while let Some((w, c)) = todo.pop() {
                let pos = (0..w.len().saturating_sub(1)).find(|&i| {
                    let (a, b) = (w[i], w[i + 1]);
                    rank(a) > rank(b) || matches!((a, b), (G::K, G::Ki) | (G::Ki, G::K))
                });
                let Some(i) = pos else {
                    let f = w.iter().filter(|g| **g == G::F).count() as u16;
                    let e = w.iter().filter(|g| **g == G::E).count() as u16;
                    let k = w.iter().filter(|g| **g == G::K).count() as i32
                        - w.iter().filter(|g| **g == G::Ki).count() as i32;
                    *out.entry(UqMono::new(f, k, e)).or_default() += &c;
                    continue;
                };
                let splice = |rep: &[G]| {
                    let mut n = w[..i].to_vec();
                    n.extend_from_slice(rep);
                    n.extend_from_slice(&w[i + 2..]);
                    n
                };
                match (w[i], w[i + 1]) {
                    (G::K, G::Ki) | (G::Ki, G::K) => todo.push((splice(&[]), c)),
                    (G::E, G::F) => {
                        todo.push((splice(&[G::F, G::E]), c.clone()));
                        todo.push((splice(&[G::K]), &c * &dinv));
                        todo.push((splice(&[G::Ki]), -(&c * &dinv)));
                    }
                    (G::E, G::K) => todo.push((splice(&[G::K, G::E]), c.shift(-4))),
                    (G::E, G::Ki) => todo.push((splice(&[G::Ki, G::E]), c.shift(4))),
                    (G::K, G::F) => todo.push((splice(&[G::F, G::K]), c.shift(-4))),
                    (G::Ki, G::F) => todo.push((splice(&[G::F, G::Ki]), c.shift(4))),
                    _ => unreachable!(),
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        }
    }

    fn as_map(x: &UqElem) -> FxHashMap<UqMono, Scalar> {
        x.iter().map(|(k, c)| (k[0], c.clone())).collect()
    }

    fn dinv() -> Scalar {
        Scalar::over_d(LaurentPoly::one(), 1)
    }

    #[test]
    fn e_times_f() {
        let got = gen(UqMono::E).mul(&gen(UqMono::F)).unwrap();
        let want = AlgElem::from_monos([
            (UqMono::new(1, 0, 1), Scalar::one()),
            (UqMono::K, dinv()),
            (UqMono::KINV, -dinv()),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn e_times_k() {
        let got = gen(UqMono::E).mul(&gen(UqMono::K)).unwrap();
        assert_eq!(got, AlgElem::from_monos([(UqMono::new(0, 1, 1), Scalar::q_pow(-2))]));
    }

    #[test]
    fn e_squared_times_f_matches_rewriting() {
        let e2 = gen(UqMono::new(0, 0, 2));
        let got = e2.mul(&gen(UqMono::F)).unwrap();
        let want = oracle::normalize(vec![oracle::G::E, oracle::G::E, oracle::G::F]);
        assert_eq!(as_map(&got), want);
        assert!(got.iter().all(|(k, _)| k[0].f <= 1 && k[0].e <= 2));
    }

    #[test]
    fn closed_form_agrees_with_rewriting_exhaustively() {
        let mut monos = Vec::new();
        for f in 0..3 {
            for k in -2..3 {
                for e in 0..3 {
                    monos.push(UqMono::new(f, k, e));
                }
            }
        }
        for &a in &monos {
            for &b in &monos {
                let got: FxHashMap<_, _> = mul_raw(a, b).into_iter().filter(|t| !t.1.is_zero()).collect();
                let mut w = oracle::word_of(a);
                w.extend(oracle::word_of(b));
                assert_eq!(got, oracle::normalize(w), "{a:?} * {b:?}");
            }
        }
    }

    #[test]
    fn q_comm_examples() {
        let x = &gen(UqMono::F) + &gen(UqMono::K);
        let lhs = q_comm(&x, &x).unwrap();
        let rhs = x.mul(&x).unwrap().scale(&d());
        assert_eq!(lhs, rhs);
        let ef = UqElem::comm(&gen(UqMono::E), &gen(UqMono::F)).unwrap();
        let want = AlgElem::from_monos([(UqMono::K, dinv()), (UqMono::KINV, -dinv())]);
        assert_eq!(ef, want);
    }

    #[test]
    fn casimir_normal_form_and_centrality() {
        let ef = gen(UqMono::E).mul(&gen(UqMono::F)).unwrap();
        let defining = &(&ef.scale(&(&d() * &d())) + &gen(UqMono::K).scale(&Scalar::q_pow(-1)))
            + &gen(UqMono::KINV).scale(&Scalar::q_pow(1));
        assert_eq!(defining, casimir());
        for g in [UqMono::E, UqMono::F, UqMono::K, UqMono::KINV] {
            assert!(UqElem::comm(&casimir(), &gen(g)).unwrap().is_zero(), "{g:?}");
        }
        let eps = casimir().counit(1).unwrap().as_scalar().unwrap();
        assert_eq!(eps, crate::qcoeff::q_plus_qinv());
    }

    #[test]
    fn coproduct_examples() {
        let dk = gen(UqMono::K).coproduct(1).unwrap();
        assert_eq!(dk, AlgElem::from_key(smallvec::smallvec![UqMono::K, UqMono::K], Scalar::one()));
        assert_eq!(UqElem::one(1).coproduct(1).unwrap(), UqElem::one(2));
        assert!(gen(UqMono::E).counit(1).unwrap().is_zero());
        assert!(gen(UqMono::KINV).counit(1).unwrap().as_scalar().unwrap().is_one());
        assert!(matches!(
            gen(UqMono::E).coproduct(2),
            Err(crate::Error::PositionOutOfRange { pos: 2, arity: 1 })
        ));
    }

    #[test]
    fn coproduct_of_casimir_display() {
        // Λ⊗K^-1 + K⊗Λ − (q+q^-1)K⊗K^-1 + D²(E⊗F + q^-2 FK⊗EK^-1)
        let lam = casimir();
        let k = gen(UqMono::K);
        let ki = gen(UqMono::KINV);
        let d2 = &d() * &d();
        let fk = gen(UqMono::new(1, 1, 0));
        let eki = gen(UqMono::E).mul(&ki).unwrap();
        let want = &(&(&lam.tensor(&ki) + &k.tensor(&lam))
            - &k.tensor(&ki).scale(&crate::qcoeff::q_plus_qinv()))
            + &(&gen(UqMono::E).tensor(&gen(UqMono::F))
                + &fk.tensor(&eki).scale(&Scalar::q_pow(-2)))
                .scale(&d2);
        assert_eq!(lam.coproduct(1).unwrap(), want);
        assert_eq!(lam.coproduct(1).unwrap().len(), 6);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let r = UqElem::one(1).mul(&UqElem::one(2));
        assert_eq!(r, Err(crate::Error::ArityMismatch { left: 1, right: 2 }));
    }

    fn arb_elem(arity: usize) -> impl Strategy<Value = UqElem> {
        let mono = (0u16..3, -3i32..4, 0u16..3).prop_map(|(f, k, e)| UqMono::new(f, k, e));
        let term = (prop::collection::vec(mono, arity), -3i64..4, -2i32..3);
        prop::collection::vec(term, 1..4).prop_map(move |ts| {
            let mut x = AlgElem::zero(arity);
            for (ms, c, s) in ts {
                x.add_term(ms.into_iter().collect(), Scalar::int(c).shift(s));
            }
            x
        })
    }

    fn arb_pair_arity() -> impl Strategy<Value = (UqElem, UqElem, UqElem)> {
        (1usize..3).prop_flat_map(|n| (arb_elem(n), arb_elem(n), arb_elem(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn straightening_is_associative((a, b, c) in arb_pair_arity()) {
            let l = a.mul(&b).unwrap().mul(&c).unwrap();
            let r = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn coproduct_is_multiplicative(a in arb_elem(1), b in arb_elem(1)) {
            let l = a.mul(&b).unwrap().coproduct(1).unwrap();
            let r = a.coproduct(1).unwrap().mul(&b.coproduct(1).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn counit_laws(a in arb_elem(1)) {
            let d = a.coproduct(1).unwrap();
            prop_assert_eq!(&d.counit(1).unwrap(), &a);
            prop_assert_eq!(&d.counit(2).unwrap(), &a);
        }

        #[test]
        fn json_round_trip(a in arb_elem(2)) {
            let s = serde_json::to_string(&a).unwrap();
            let back: UqElem = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn coproduct_respects_defining_relations() {
        let g = |m| gen(m).coproduct(1).unwrap();
        let (e, f, k, ki) = (g(UqMono::E), g(UqMono::F), g(UqMono::K), g(UqMono::KINV));
        let q2 = Scalar::q_pow(2);
        assert_eq!(k.mul(&e).unwrap(), e.mul(&k).unwrap().scale(&q2));
        assert_eq!(k.mul(&f).unwrap(), f.mul(&k).unwrap().scale(&Scalar::q_pow(-2)));
        assert_eq!(k.mul(&ki).unwrap(), UqElem::one(2));
        assert_eq!(ki.mul(&k).unwrap(), UqElem::one(2));
        let lhs = UqElem::comm(&e, &f).unwrap();
        let rhs = (&k - &ki).scale(&dinv());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coassociativity_on_generators() {
        for x in [gen(UqMono::E), gen(UqMono::F), gen(UqMono::K), gen(UqMono::KINV), casimir()] {
            let d = x.coproduct(1).unwrap();
            assert_eq!(d.coproduct(1).unwrap(), d.coproduct(2).unwrap());
        }
    }
}
