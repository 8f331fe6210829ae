//! `osp_q(1|2)` in the basis `A_-^a A_+^c K^k P^p` with `P^2 = 1`.
//!
//! The tensor product is the ordinary one: the parity generator `P` carries
//! the signs, so factors multiply independently.

use std::cell::RefCell;
use std::rc::Rc;

use rustc_hash::FxHashMap;

use crate::elem::{AlgElem, Monomial};
use crate::qcoeff::{v_plus_vinv, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OspMono {
    pub am: u16,
    pub ap: u16,
    pub k: i32,
    pub p: u8,
}

pub type OspElem = AlgElem<OspMono>;

impl OspMono {
    pub const fn new(am: u16, ap: u16, k: i32, p: u8) -> Self {
        OspMono { am, ap, k, p }
    }
    pub const AM: OspMono = OspMono::new(1, 0, 0, 0);
    pub const AP: OspMono = OspMono::new(0, 1, 0, 0);
    pub const K: OspMono = OspMono::new(0, 0, 1, 0);
    pub const KINV: OspMono = OspMono::new(0, 0, -1, 0);
    pub const P: OspMono = OspMono::new(0, 0, 0, 1);

    pub fn parity(&self) -> u16 {
        (self.am + self.ap) % 2
    }
}

type MulTable = FxHashMap<(OspMono, OspMono), Rc<[(OspMono, Scalar)]>>;
type CoprodTable = FxHashMap<OspMono, Rc<[(OspMono, OspMono, Scalar)]>>;

thread_local! {
    static MUL_CACHE: RefCell<MulTable> =
        RefCell::new(FxHashMap::default());
    static COPROD_CACHE: RefCell<CoprodTable> =
        RefCell::new(FxHashMap::default());
}

/// `1/(q^(1/2) - q^(-1/2))`.
pub fn inv_v_minus() -> Scalar {
    Scalar::over_d(v_plus_vinv().numerator().clone(), 1)
}

fn sign(odd: bool) -> Scalar {
    Scalar::int(if odd { -1 } else { 1 })
}

/// `A_+ * A_-^a A_+^c K^b P^e`, accumulated into `out` with weight `w`.
fn left_mul_ap(out: &mut FxHashMap<OspMono, Scalar>, m: OspMono, w: &Scalar) {
    let mut push = |mono: OspMono, s: Scalar| {
        *out.entry(mono).or_default() += &s;
    };
    push(OspMono::new(m.am, m.ap + 1, m.k, m.p), w * &sign(m.am % 2 == 1));
    if m.am > 0 {
        let a = m.am as i32;
        let c = m.ap as i32;
        let base = w * &inv_v_minus();
        for i in 0..a {
            let t = &base * &sign(i % 2 == 1);
            let j = a - 1 - i;
            push(OspMono::new(m.am - 1, m.ap, m.k + 2, m.p), t.shift(-2 * j + 2 * c));
            push(OspMono::new(m.am - 1, m.ap, m.k - 2, m.p), -t.shift(2 * j - 2 * c));
        }
    }
}

fn mul_raw(x: OspMono, y: OspMono) -> Vec<(OspMono, Scalar)> {
    // K^b P^e past A_-^{a'} A_+^{c'}
    let lead = sign(x.p == 1 && (y.am + y.ap) % 2 == 1)
        .shift(-x.k * y.am as i32 + x.k * y.ap as i32);
    let start = OspMono::new(y.am, y.ap, x.k + y.k, (x.p + y.p) % 2);
    let mut cur: FxHashMap<OspMono, Scalar> = FxHashMap::default();
    cur.insert(start, lead);
    for _ in 0..x.ap {
        let mut next = FxHashMap::default();
        for (m, c) in &cur {
            left_mul_ap(&mut next, *m, c);
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let mut out: Vec<_> = cur
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (OspMono::new(m.am + x.am, m.ap, m.k, m.p), c))
        .collect();
    out.sort_by_key(|t| t.0);
    out
}

fn coproduct_raw(m: OspMono) -> Vec<(OspMono, OspMono, Scalar)> {
    let one = Scalar::one();
    let key = |a: OspMono, b: OspMono| smallvec::smallvec![a, b];
    let kp = OspMono::new(0, 0, 1, 1);
    let delta_a = |g: OspMono| {
        let mut d = AlgElem::zero(2);
        d.add_term(key(g, kp), one.clone());
        d.add_term(key(OspMono::KINV, g), one.clone());
        d
    };
    let dam = delta_a(OspMono::AM);
    let dap = delta_a(OspMono::AP);
    let kpart = OspMono::new(0, 0, m.k, m.p);
    let mut acc = AlgElem::from_key(key(kpart, kpart), one);
    for _ in 0..m.ap {
        acc = dap.mul(&acc).expect("arity 2");
    }
    for _ in 0..m.am {
        acc = dam.mul(&acc).expect("arity 2");
    }
    let mut out: Vec<_> = acc.iter().map(|(k, c)| (k[0], k[1], c.clone())).collect();
    out.sort_by_key(|t| (t.0, t.1));
    out
}

impl Monomial for OspMono {
    fn one() -> Self {
        OspMono::default()
    }

    fn is_one(&self) -> bool {
        *self == OspMono::default()
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
        if self.am == 0 && self.ap == 0 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    fn to_exps(&self) -> Vec<i64> {
        vec![self.am as i64, self.ap as i64, self.k as i64, self.p as i64]
    }

    fn from_exps(e: &[i64]) -> Option<Self> {
        match e {
            [am, ap, k, p] if (0..=1).contains(p) => Some(OspMono::new(
                u16::try_from(*am).ok()?,
                u16::try_from(*ap).ok()?,
                i32::try_from(*k).ok()?,
                *p as u8,
            )),
            _ => None,
        }
    }

    fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let pw = |sym: &str, x: i64| match x {
            1 => sym.to_string(),
            _ => format!("{sym}^{x}"),
        };
        let mut parts = Vec::new();
        if self.am > 0 {
            parts.push(pw("A-", self.am as i64));
        }
        if self.ap > 0 {
            parts.push(pw("A+", self.ap as i64));
        }
        if self.k != 0 {
            parts.push(pw("K", self.k as i64));
        }
        if self.p == 1 {
            parts.push("P".into());
        }
        parts.join(" ")
    }
}

/// Normal form of `(-A_+A_- + (q^(-1/2)K^2 - q^(1/2)K^-2)/(q-q^-1)) P`.
pub fn gamma_casimir() -> OspElem {
    let dinv = Scalar::over_d(crate::LaurentPoly::one(), 1);
    AlgElem::from_monos([
        (OspMono::new(1, 1, 0, 1), Scalar::one()),
        (OspMono::new(0, 0, 2, 1), -dinv.shift(1)),
        (OspMono::new(0, 0, -2, 1), dinv.shift(-1)),
    ])
}

/// `{X, Y}_q = q^(1/2) XY + q^(-1/2) YX`.
pub fn q_anticomm(x: &OspElem, y: &OspElem) -> crate::Result<OspElem> {
    AlgElem::lin_comm(x, y, &Scalar::v_pow(1), &Scalar::v_pow(-1))
}

pub fn gen(m: OspMono) -> OspElem {
    AlgElem::mono(m)
}
