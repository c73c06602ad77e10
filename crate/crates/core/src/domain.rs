//! Coefficient domains: symbolic in `(g, h)` or instantiated at a rational point.
//!
//! Every construction (states, Wronskians, Hamiltonians) is generic over a
//! [`Domain`]. A domain carries an integer parameter offset so that objects
//! "at `(g + dg, h + dh)`" can be built directly; sin/cos exponents are always
//! expressed in the base variables.

use std::marker::PhantomData;

use crate::algebra::{int, rat, rational_to_string, AffineExp, ParamPoly, ParamRat, Rational, Ring};
use crate::error::{Error, Result};

pub trait Domain: Clone + Send + Sync {
    type C: Ring;

    /// Accumulated parameter offset `(dg, dh)`.
    fn offset(&self) -> (i64, i64);

    /// The same domain with the offset increased by `(dg, dh)`.
    fn shifted(&self, dg: i64, dh: i64) -> Self;

    /// Lifts a parameter polynomial written in the shifted variables
    /// `(g + dg, h + dh)`.
    fn param(&self, p: &ParamPoly) -> Self::C;

    /// Lifts an exponent written in the base variables.
    fn exponent(&self, e: &AffineExp) -> Self::C;
}

/// Exact symbolic coefficients: [`ParamPoly`] for Wronskians, [`ParamRat`]
/// when quotients are needed.
#[derive(Debug)]
pub struct Symbolic<C = ParamPoly> {
    dg: i64,
    dh: i64,
    _coeff: PhantomData<fn() -> C>,
}

impl<C> Symbolic<C> {
    pub fn new() -> Self {
        Symbolic {
            dg: 0,
            dh: 0,
            _coeff: PhantomData,
        }
    }
}

impl<C> Default for Symbolic<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C> Clone for Symbolic<C> {
    fn clone(&self) -> Self {
        Symbolic {
            dg: self.dg,
            dh: self.dh,
            _coeff: PhantomData,
        }
    }
}

impl<C: Ring + From<ParamPoly>> Domain for Symbolic<C> {
    type C = C;

    fn offset(&self) -> (i64, i64) {
        (self.dg, self.dh)
    }

    fn shifted(&self, dg: i64, dh: i64) -> Self {
        Symbolic {
            dg: self.dg + dg,
            dh: self.dh + dh,
            _coeff: PhantomData,
        }
    }

    fn param(&self, p: &ParamPoly) -> C {
        C::from(p.shift(self.dg, self.dh))
    }

    fn exponent(&self, e: &AffineExp) -> C {
        C::from(e.to_param_poly())
    }
}

/// Symbolic domain with coefficients in the field of parameter quotients.
pub type SymbolicField = Symbolic<ParamRat>;

/// A generic rational parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    g: Rational,
    h: Rational,
    dg: i64,
    dh: i64,
}

impl Point {
    /// Validates the genericity conditions `g +/- h` not integral and
    /// `g, h` not in `Z + 1/2`.
    pub fn new(g: Rational, h: Rational) -> Result<Self> {
        if !is_generic(&g, &h) {
            return Err(Error::NonGeneric {
                g: rational_to_string(&g),
                h: rational_to_string(&h),
            });
        }
        Ok(Point { g, h, dg: 0, dh: 0 })
    }

    /// The default instantiation `(37/10, 52/7)`.
    pub fn default_generic() -> Self {
        Point::new(rat(37, 10), rat(52, 7)).expect("default point is generic")
    }

    pub fn g(&self) -> &Rational {
        &self.g
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    /// Parameter values after applying the offset.
    pub fn shifted_values(&self) -> (Rational, Rational) {
        (&self.g + int(self.dg), &self.h + int(self.dh))
    }
}

pub fn is_generic(g: &Rational, h: &Rational) -> bool {
    let half = rat(1, 2);
    let not_int = |x: Rational| !x.is_integer();
    not_int(g + h) && not_int(g - h) && not_int(g - &half) && not_int(h - &half)
}

impl Domain for Point {
    type C = Rational;

    fn offset(&self) -> (i64, i64) {
        (self.dg, self.dh)
    }

    fn shifted(&self, dg: i64, dh: i64) -> Self {
        Point {
            g: self.g.clone(),
            h: self.h.clone(),
            dg: self.dg + dg,
            dh: self.dh + dh,
        }
    }

    fn param(&self, p: &ParamPoly) -> Rational {
        let (g, h) = self.shifted_values();
        p.eval(&g, &h)
    }

    fn exponent(&self, e: &AffineExp) -> Rational {
        e.eval(&self.g, &self.h)
    }
}
