//! Exact coefficient arithmetic in the formal variable `v = q^(1/2)`.
//!
//! [`LaurentPoly`] is the coefficient atom, [`RatQ`] the canonical field
//! element of `Q(v)`, and [`Scalar`] the localized ring the engines compute in.

mod int;
mod laurent;
mod ratq;
mod scalar;

pub use int::Int;
pub use laurent::LaurentPoly;
pub use ratq::RatQ;
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at v = {0}")]
    VanishingDenominator(String),
    #[error("{0} is not in Z[v, 1/v, 1/(q - 1/q)]")]
    NotInRing(String),
}

/// `q + q^-1`.
pub fn q_plus_qinv() -> Scalar {
    Scalar::from_poly(LaurentPoly::from_terms([(2, 1i64), (-2, 1)]))
}

/// `q^(1/2) + q^(-1/2)`.
pub fn v_plus_vinv() -> Scalar {
    Scalar::from_poly(LaurentPoly::from_terms([(1, 1i64), (-1, 1)]))
}

/// `q^(1/2) - q^(-1/2)`.
pub fn v_minus_vinv() -> Scalar {
    Scalar::from_poly(LaurentPoly::from_terms([(1, 1i64), (-1, -1)]))
}

/// The symmetric q-integer `[n]_q = (q^n - q^-n)/(q - q^-1)` as a polynomial.
pub fn q_int(n: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..n).map(|i| (2 * (n as i32 - 1) - 4 * i as i32, 1i64)))
}
