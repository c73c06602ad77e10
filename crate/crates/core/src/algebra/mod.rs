//! Exact arithmetic substrate.
//!
//! Everything in the crate is built over the rationals: bivariate polynomials
//! in the potential parameters `(g, h)`, their quotients, and univariate
//! polynomials in `eta = cos 2x` whose coefficients live in one of those rings.

mod affine;
mod eta;
mod gcd;
mod param;
mod param_rat;
pub mod serde_impls;
mod sturm;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use affine::AffineExp;
pub use eta::EtaPoly;
pub use param::{Monomial, ParamPoly};
pub use param_rat::ParamRat;
pub use sturm::sturm_count;

/// Arbitrary-precision rational with a positive, coprime denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n/d`. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, `p`, or a terminating decimal such as `3.7`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().ok()?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().ok()?;
        let mag = Rational::new(whole * &scale + frac, scale);
        return Some(if negative { -mag } else { mag });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// A commutative ring with exact arithmetic and a test for exact division.
///
/// Implemented by [`Rational`], [`ParamPoly`] and [`ParamRat`]; the generic
/// polynomial and determinant code is written against this trait so the same
/// routines run symbolically in `(g, h)` or at an instantiated parameter point.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Fraction field, used for proportionality constants.
    type Frac: Field;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// `Some(q)` with `self = q * divisor` when the division is exact in the ring.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
    fn to_frac(&self) -> Self::Frac;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Coefficients of the product of two polynomials with coefficients in
    /// this ring; `a` and `b` are nonempty.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].plus(&x.times(y));
            }
        }
        out
    }

    fn scaled(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }

    /// `a / b` in the fraction field. Panics if `b` is zero.
    fn ratio(a: &Self, b: &Self) -> Self::Frac {
        a.to_frac().divide(&b.to_frac())
    }
}

pub trait Field: Ring<Frac = Self> {
    /// Panics on zero.
    fn inverse(&self) -> Self;

    fn divide(&self, other: &Self) -> Self {
        self.times(&other.inverse())
    }
}

impl Ring for Rational {
    type Frac = Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            None
        } else {
            Some(self / divisor)
        }
    }
    fn to_frac(&self) -> Self {
        self.clone()
    }
}

impl Field for Rational {
    fn inverse(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero rational");
        self.recip()
    }
}
