use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, QError, RatQ};

/// Element of the ring `Z[v, v^-1][1/D]` with `D = v^2 - v^-2 = q - q^-1`.
///
/// Stored as `num / D^dpow` with `dpow == 0` or `D` not dividing `num`, which
/// makes the representation canonical without any polynomial gcd. Every
/// structure constant of both algebra backends lives in this ring, so it is
/// the coefficient type of the symbolic engine; [`RatQ`] is used at the
/// boundaries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    num: LaurentPoly,
    dpow: u32,
}

fn d_poly() -> &'static LaurentPoly {
    static D: OnceLock<LaurentPoly> = OnceLock::new();
    D.get_or_init(|| LaurentPoly::from_terms([(2, 1i64), (-2, -1)]))
}

fn d_pow(k: u32) -> LaurentPoly {
    static POWS: OnceLock<Vec<LaurentPoly>> = OnceLock::new();
    let pows = POWS.get_or_init(|| {
        let mut v = vec![LaurentPoly::one()];
        for i in 1..16 {
            let next = &v[i - 1] * d_poly();
            v.push(next);
        }
        v
    });
    match pows.get(k as usize) {
        Some(p) => p.clone(),
        None => d_poly().pow(k),
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: LaurentPoly::zero(), dpow: 0 }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Scalar { num: p, dpow: 0 }
    }

    pub fn int(k: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(k))
    }

    pub fn v_pow(e: i32) -> Self {
        Self::from_poly(LaurentPoly::v_pow(e))
    }

    pub fn q_pow(e: i32) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    /// `num / (q - q^-1)^k`, reduced.
    pub fn over_d(num: LaurentPoly, k: u32) -> Self {
        let mut s = Scalar { num, dpow: k };
        s.reduce();
        s
    }

    /// `q - q^-1`.
    pub fn d() -> Self {
        Self::from_poly(d_poly().clone())
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.dpow = 0;
            return;
        }
        while self.dpow > 0 {
            match self.num.div_exact(d_poly()) {
                Some(q) => {
                    self.num = q;
                    self.dpow -= 1;
                }
                None => break,
            }
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.dpow == 0 && self.num.is_one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn d_power(&self) -> u32 {
        self.dpow
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Scalar { num: self.num.shift(k), dpow: self.dpow }
    }

    pub fn to_ratq(&self) -> RatQ {
        if self.dpow == 0 {
            return RatQ::from_poly(self.num.clone());
        }
        RatQ::make(self.num.clone(), d_pow(self.dpow)).expect("D is nonzero")
    }

    /// Converts a field element whose denominator divides a power of `D`.
    pub fn try_from_ratq(r: &RatQ) -> Result<Self, QError> {
        if let Some(p) = r.as_poly() {
            return Ok(Self::from_poly(p.clone()));
        }
        let den = r.den();
        let max_j = (den.high_exp() - den.low_exp()) as u32;
        for j in 1..=max_j.max(1) {
            if let Some(q) = d_pow(j).div_exact(den) {
                return Ok(Self::over_d(r.num() * &q, j));
            }
        }
        Err(QError::NotInRing(r.render()))
    }

    pub fn eval(&self, v: &BigRational) -> Result<BigRational, QError> {
        let n = self.num.eval(v);
        if self.dpow == 0 {
            return Ok(n);
        }
        let d = d_poly().eval(v);
        if num_traits::Zero::is_zero(&d) {
            return Err(QError::VanishingDenominator(v.to_string()));
        }
        Ok(n / super::laurent::rat_pow(&d, self.dpow as i32))
    }

    pub fn render(&self) -> String {
        if self.dpow == 0 {
            return self.num.render();
        }
        let n = if self.num.num_terms() > 1 {
            format!("({})", self.num.render())
        } else {
            self.num.render()
        };
        if self.dpow == 1 {
            format!("{n}/(q - q^-1)")
        } else {
            format!("{n}/(q - q^-1)^{}", self.dpow)
        }
    }
}

impl From<i64> for Scalar {
    fn from(k: i64) -> Self {
        Scalar::int(k)
    }
}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Scalar::from_poly(p)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let m = self.dpow.max(rhs.dpow);
        let a = if self.dpow == m { self.num.clone() } else { &self.num * &d_pow(m - self.dpow) };
        let b = if rhs.dpow == m { rhs.num.clone() } else { &rhs.num * &d_pow(m - rhs.dpow) };
        Scalar::over_d(&a + &b, m)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.dpow == 0 && rhs.dpow == 0 {
            self.num = &self.num + &rhs.num;
            return;
        }
        *self = &*self + rhs;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.dpow == 0 && rhs.dpow == 0 {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Scalar::over_d(&self.num * &rhs.num, self.dpow + rhs.dpow)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, dpow: self.dpow }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({:?} / D^{})", self.num, self.dpow)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_ratq().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatQ::deserialize(d)?;
        Scalar::try_from_ratq(&r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_cancels() {
        let d = Scalar::d();
        let inv = Scalar::over_d(LaurentPoly::one(), 1);
        assert!((&d * &inv).is_one());
        assert_eq!(inv.d_power(), 1);
    }

    #[test]
    fn bracket_half_inverse() {
        // 1/(v - v^-1) = (v + v^-1)/D
        let s = Scalar::over_d(LaurentPoly::from_terms([(1, 1i64), (-1, 1)]), 1);
        let back = RatQ::make(LaurentPoly::one(), LaurentPoly::from_terms([(1, 1i64), (-1, -1)]))
            .unwrap();
        assert_eq!(s.to_ratq(), back);
        assert_eq!(Scalar::try_from_ratq(&back).unwrap(), s);
    }

    #[test]
    fn partial_reduction() {
        // (v^4 - 1)(v + 1) / D^2 reduces to v^2 (v + 1) / D
        let num = &LaurentPoly::from_terms([(4, 1i64), (0, -1)])
            * &LaurentPoly::from_terms([(1, 1i64), (0, 1)]);
        let s = Scalar::over_d(num, 2);
        assert_eq!(s.d_power(), 1);
        assert_eq!(s.numerator(), &LaurentPoly::from_terms([(3, 1i64), (2, 1)]));
    }

    #[test]
    fn outside_ring_rejected() {
        let r = RatQ::make(LaurentPoly::one(), LaurentPoly::from_terms([(1, 1i64), (0, 3)]))
            .unwrap();
        assert!(Scalar::try_from_ratq(&r).is_err());
    }
}
