use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::laurent::poly_div_exact;
use super::{Int, LaurentPoly, QError};

/// Element of `Q(v)` in canonical reduced form.
///
/// `num` and `den` are coprime over `Q`, their integer contents are coprime,
/// `den` has lowest exponent 0 and a positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatQ {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Deserialize)]
struct RawRatQ {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl<'de> Deserialize<'de> for RatQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawRatQ::deserialize(d)?;
        RatQ::make(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

impl RatQ {
    pub fn zero() -> Self {
        RatQ { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RatQ { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatQ { num: p, den: LaurentPoly::one() }
    }

    pub fn make(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let shift = num.low_exp() - den.low_exp();
        let n = num.dense();
        let d = den.dense();
        let g = poly_gcd(n, d);
        let mut n = poly_div_exact(n, &g).expect("gcd divides numerator");
        let mut d = poly_div_exact(d, &g).expect("gcd divides denominator");
        let cn = dense_content(&n);
        let cd = dense_content(&d);
        let c = cn.gcd(&cd);
        if !c.is_one() {
            n.iter_mut().for_each(|x| *x = x.div_exact(&c).unwrap());
            d.iter_mut().for_each(|x| *x = x.div_exact(&c).unwrap());
        }
        if d.last().unwrap().is_negative() {
            n.iter_mut().for_each(|x| *x = -&*x);
            d.iter_mut().for_each(|x| *x = -&*x);
        }
        Ok(RatQ { num: LaurentPoly::from_dense(shift, n), den: LaurentPoly::from_dense(0, d) })
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(p)` when the value is a Laurent polynomial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self, QError> {
        if self.is_zero() {
            return Err(QError::DivisionByZero);
        }
        RatQ::make(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatQ) -> Result<Self, QError> {
        if rhs.is_zero() {
            return Err(QError::DivisionByZero);
        }
        RatQ::make(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn eval(&self, v: &BigRational) -> Result<BigRational, QError> {
        let d = self.den.eval(v);
        if num_traits::Zero::is_zero(&d) {
            return Err(QError::VanishingDenominator(v.to_string()));
        }
        Ok(self.num.eval(v) / d)
    }

    pub fn render(&self) -> String {
        if self.den.is_one() {
            return self.num.render();
        }
        let wrap = |p: &LaurentPoly| {
            if p.num_terms() > 1 {
                format!("({})", p.render())
            } else {
                p.render()
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

fn dense_content(p: &[Int]) -> Int {
    let mut g = Int::ZERO;
    for k in p {
        g = g.gcd(k);
    }
    g
}

fn primitive(p: &mut Vec<Int>) {
    while p.last().is_some_and(Int::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        return;
    }
    let c = dense_content(p);
    let c = if p.last().unwrap().is_negative() { -c } else { c };
    if !c.is_one() {
        p.iter_mut().for_each(|x| *x = x.div_exact(&c).unwrap());
    }
}

/// Primitive gcd over `Q[x]` of two nonzero dense polynomials, normalized with
/// positive leading coefficient.
fn poly_gcd(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    primitive(&mut a);
    primitive(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let mut r = a;
        let lb = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let lr = r.last().unwrap().clone();
            let off = r.len() - b.len();
            for x in r.iter_mut() {
                *x = &*x * &lb;
            }
            for (j, bj) in b.iter().enumerate() {
                let t = &lr * bj;
                r[off + j] -= &t;
            }
            while r.last().is_some_and(Int::is_zero) {
                r.pop();
            }
            primitive(&mut r);
        }
        a = b;
        b = r;
    }
    a
}

impl From<LaurentPoly> for RatQ {
    fn from(p: LaurentPoly) -> Self {
        RatQ::from_poly(p)
    }
}

impl From<i64> for RatQ {
    fn from(k: i64) -> Self {
        RatQ::from_poly(LaurentPoly::constant(k))
    }
}

impl Add for &RatQ {
    type Output = RatQ;
    fn add(self, rhs: &RatQ) -> RatQ {
        if self.den == rhs.den {
            return RatQ::make(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatQ::make(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .unwrap()
    }
}

impl Sub for &RatQ {
    type Output = RatQ;
    fn sub(self, rhs: &RatQ) -> RatQ {
        self + &(-rhs)
    }
}

impl Mul for &RatQ {
    type Output = RatQ;
    fn mul(self, rhs: &RatQ) -> RatQ {
        RatQ::make(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        RatQ { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatQ {
            type Output = RatQ;
            fn $f(self, rhs: RatQ) -> RatQ {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatQ({:?} / {:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn factor_cancellation() {
        let r = RatQ::make(lp(&[(4, 1), (0, -1)]), lp(&[(2, 1), (0, -1)])).unwrap();
        assert_eq!(r, RatQ::from(lp(&[(2, 1), (0, 1)])));
    }

    #[test]
    fn self_quotient_is_one() {
        let d = lp(&[(2, 1), (-2, -1)]);
        assert!(RatQ::make(d.clone(), d).unwrap().is_one());
    }

    #[test]
    fn inverse_of_d_normalization() {
        let r = RatQ::make(LaurentPoly::one(), lp(&[(2, 1), (-2, -1)])).unwrap();
        assert_eq!(r.num(), &lp(&[(2, 1)]));
        assert_eq!(r.den(), &lp(&[(4, 1), (0, -1)]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatQ::make(LaurentPoly::one(), LaurentPoly::zero()), Err(QError::ZeroDenominator));
        assert_eq!(RatQ::one().div(&RatQ::zero()), Err(QError::DivisionByZero));
    }

    #[test]
    fn inverse_of_v_plus_three() {
        let a = RatQ::from(lp(&[(1, 1), (0, 3)]));
        assert!((&a * &a.recip().unwrap()).is_one());
    }

    #[test]
    fn difference_of_squares() {
        let a = RatQ::from(lp(&[(2, 1), (-2, -1)]));
        let b = RatQ::from(lp(&[(2, 1), (-2, 1)]));
        assert_eq!(&a * &b, RatQ::from(lp(&[(4, 1), (-4, -1)])));
        assert_eq!(&b + &RatQ::zero(), b);
    }

    #[test]
    fn content_and_sign_normalized() {
        let r = RatQ::make(lp(&[(0, 4)]), lp(&[(1, -6), (0, 2)])).unwrap();
        assert_eq!(r.num(), &lp(&[(0, -2)]));
        assert_eq!(r.den(), &lp(&[(1, 3), (0, -1)]));
    }

    #[test]
    fn json_schema() {
        let r = RatQ::make(LaurentPoly::one(), lp(&[(2, 1), (-2, -1)])).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":[[2,"1"]],"den":[[0,"-1"],[4,"1"]]}"#);
        let back: RatQ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
