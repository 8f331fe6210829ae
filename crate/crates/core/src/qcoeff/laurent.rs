use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Int;

/// Laurent polynomial in `v` with integer coefficients.
///
/// Stored densely from the lowest nonzero exponent `lo`; both ends of `c` are
/// nonzero, and the zero polynomial is the empty vector with `lo == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    lo: i32,
    c: Vec<Int>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { lo: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(k: i64) -> Self {
        Self::monomial(Int::from(k), 0)
    }

    /// `coeff * v^exp`.
    pub fn monomial(coeff: Int, exp: i32) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: exp, c: vec![coeff] }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(Int::ONE, exp)
    }

    /// `q^exp = v^(2 exp)`.
    pub fn q_pow(exp: i32) -> Self {
        Self::v_pow(2 * exp)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<Int>,
    {
        let terms: Vec<(i32, Int)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Int::ZERO; (hi - lo + 1) as usize];
        for (e, k) in &terms {
            c[(e - lo) as usize] += k;
        }
        Self::from_dense(lo, c)
    }

    pub(crate) fn from_dense(lo: i32, mut c: Vec<Int>) -> Self {
        while c.last().is_some_and(Int::is_zero) {
            c.pop();
        }
        let lead = c.iter().take_while(|x| x.is_zero()).count();
        if lead == c.len() {
            return Self::zero();
        }
        if lead > 0 {
            c.drain(..lead);
        }
        LaurentPoly { lo: lo + lead as i32, c }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i32 {
        self.lo
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exp(&self) -> i32 {
        self.lo + self.c.len() as i32 - 1
    }

    pub fn num_terms(&self) -> usize {
        self.c.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn coeff(&self, exp: i32) -> Int {
        let i = exp - self.lo;
        if i < 0 || i as usize >= self.c.len() {
            Int::ZERO
        } else {
            self.c[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> &Int {
        self.c.last().unwrap_or(&Int::ZERO)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Int)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, k)| !k.is_zero())
            .map(move |(i, k)| (self.lo + i as i32, k))
    }

    pub(crate) fn dense(&self) -> &[Int] {
        &self.c
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: self.lo + k, c: self.c.clone() }
    }

    pub fn scale(&self, k: &Int) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: self.lo, c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Positive gcd of the coefficients.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for k in &self.c {
            g = g.gcd(k);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_int(&self, k: &Int) -> Option<Self> {
        let c: Option<Vec<Int>> = self.c.iter().map(|x| x.div_exact(k)).collect();
        Some(LaurentPoly { lo: self.lo, c: c? })
    }

    /// Exact division; `None` when `d` does not divide `self` in `Z[v, v^-1]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly_div_exact(&self.c, &d.c)?;
        Some(Self::from_dense(self.lo - d.lo, q))
    }

    /// Substitutes an exact rational value for `v`.
    pub fn eval(&self, v: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for k in self.c.iter().rev() {
            acc = acc * v + BigRational::from_integer(k.to_big());
        }
        acc * rat_pow(v, self.lo)
    }

    /// Renders in powers of `q`, writing odd `v` exponents as `q^(k/2)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, k)) in self.terms().rev().enumerate() {
            let neg = k.is_negative();
            let mag = k.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = q_power(e);
            match (mag.is_one(), var.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&var),
                (false, true) => out.push_str(&mag.to_string()),
                (false, false) => {
                    out.push_str(&mag.to_string());
                    out.push('*');
                    out.push_str(&var);
                }
            }
        }
        out
    }
}

fn q_power(e: i32) -> String {
    match e {
        0 => String::new(),
        2 => "q".into(),
        _ if e % 2 == 0 => format!("q^{}", e / 2),
        _ => format!("q^({}/2)", e),
    }
}

pub(crate) fn rat_pow(v: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { v.recip() } else { v.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Exact division of dense ordinary polynomials over the integers.
pub(crate) fn poly_div_exact(a: &[Int], b: &[Int]) -> Option<Vec<Int>> {
    if a.len() < b.len() {
        return if a.iter().all(Int::is_zero) { Some(Vec::new()) } else { None };
    }
    let lb = b.last()?;
    let mut r: Vec<Int> = a.to_vec();
    let n = a.len() - b.len() + 1;
    let mut q = vec![Int::ZERO; n];
    for i in (0..n).rev() {
        let top = &r[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let qi = top.div_exact(lb)?;
        for (j, bj) in b.iter().enumerate() {
            let t = &qi * bj;
            r[i + j] -= &t;
        }
        q[i] = qi;
    }
    if r.iter().all(Int::is_zero) {
        Some(q)
    } else {
        None
    }
}

impl From<i64> for LaurentPoly {
    fn from(k: i64) -> Self {
        Self::constant(k)
    }
}

fn add_dense(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.lo.min(b.lo);
    let hi = a.high_exp().max(b.high_exp());
    let mut c = vec![Int::ZERO; (hi - lo + 1) as usize];
    for (i, k) in a.c.iter().enumerate() {
        c[(a.lo - lo) as usize + i] += k;
    }
    for (i, k) in b.c.iter().enumerate() {
        let slot = &mut c[(b.lo - lo) as usize + i];
        if negate_b {
            *slot -= k;
        } else {
            *slot += k;
        }
    }
    LaurentPoly::from_dense(lo, c)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_dense(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_dense(self, rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![Int::ZERO; self.c.len() + rhs.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                c[i + j].add_mul(x, y);
            }
        }
        LaurentPoly::from_dense(self.lo + rhs.lo, c)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { lo: self.lo, c: self.c.iter().map(|x| -x).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[")?;
        for (i, (e, k)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}v^{e}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i32, String)> = self.terms().map(|(e, k)| (e, k.to_string())).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(i32, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(v.len());
        for (e, k) in v {
            let k: BigInt = k.parse().map_err(D::Error::custom)?;
            terms.push((e, Int::from(k)));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn square_of_d() {
        let d = lp(&[(2, 1), (-2, -1)]);
        assert_eq!(&d * &d, lp(&[(4, 1), (0, -2), (-4, 1)]));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let p = lp(&[(2, 1), (0, 1)]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z, LaurentPoly::zero());
    }

    #[test]
    fn no_zero_terms_stored() {
        let p = lp(&[(3, 1), (3, -1), (1, 2)]);
        assert_eq!(p.low_exp(), 1);
        assert_eq!(p.high_exp(), 1);
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(4, 1), (0, -1)]);
        let b = lp(&[(2, 1), (0, -1)]);
        assert_eq!(a.div_exact(&b), Some(lp(&[(2, 1), (0, 1)])));
        assert_eq!(b.div_exact(&lp(&[(1, 2)])), None);
    }

    #[test]
    fn render_uses_q_powers() {
        assert_eq!(lp(&[(2, 1), (-2, 1)]).render(), "q + q^-1");
        assert_eq!(lp(&[(1, 1), (-1, -3)]).render(), "q^(1/2) - 3*q^(-1/2)");
    }

    #[test]
    fn json_round_trip() {
        let p = lp(&[(-3, 5), (4, -7)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-3,"5"],[4,"-7"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
