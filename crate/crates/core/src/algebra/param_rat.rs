use std::fmt;

use num_traits::{One, Zero};

use super::gcd::{gcd, monic};
use super::{ParamPoly, Rational};

/// Reduced quotient of parameter polynomials.
///
/// The denominator is monic under graded lex order and coprime to the
/// numerator, so two equal functions have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamRat {
    num: ParamPoly,
    den: ParamPoly,
}

impl ParamRat {
    /// Panics if `den` is zero.
    pub fn new(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "ParamRat with zero denominator");
        if num.is_zero() {
            return ParamRat {
                num,
                den: ParamPoly::one(),
            };
        }
        let common = gcd(&num, &den);
        let (num, den) = if common.as_constant().is_some() {
            (num, den)
        } else {
            (
                num.div_exact(&common).expect("gcd divides numerator"),
                den.div_exact(&common).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            ParamRat { num, den }
        } else {
            let inv = lc.recip();
            ParamRat {
                num: num.scale(&inv),
                den: monic(&den),
            }
        }
    }

    pub fn constant(c: Rational) -> Self {
        ParamPoly::constant(c).into()
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == ParamPoly::one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// `None` when the denominator vanishes at the point.
    pub fn eval(&self, gv: &Rational, hv: &Rational) -> Option<Rational> {
        let d = self.den.eval(gv, hv);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(gv, hv) / d)
        }
    }

    pub fn shift(&self, dg: i64, dh: i64) -> Self {
        ParamRat::new(self.num.shift(dg, dh), self.den.shift(dg, dh))
    }

    pub fn to_latex(&self) -> String {
        if self.is_polynomial() {
            self.num.to_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
        }
    }
}

impl From<ParamPoly> for ParamRat {
    fn from(num: ParamPoly) -> Self {
        ParamRat {
            num,
            den: ParamPoly::one(),
        }
    }
}

impl fmt::Display for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamRat({})", self)
    }
}

impl super::Ring for ParamRat {
    type Frac = ParamRat;

    fn zero() -> Self {
        ParamPoly::zero().into()
    }
    fn one() -> Self {
        ParamPoly::one().into()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        if self.den == other.den {
            return ParamRat::new(&self.num + &other.num, self.den.clone());
        }
        ParamRat::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_polynomial() && other.is_polynomial() {
            return (&self.num * &other.num).into();
        }
        ParamRat::new(&self.num * &other.num, &self.den * &other.den)
    }
    fn negated(&self) -> Self {
        ParamRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        ParamRat::constant(r.clone())
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(super::Field::divide(self, divisor))
        }
    }
    fn to_frac(&self) -> Self {
        self.clone()
    }
    fn scaled(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return Self::zero();
        }
        ParamRat {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }
}

impl super::Field for ParamRat {
    fn inverse(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero ParamRat");
        ParamRat::new(self.den.clone(), self.num.clone())
    }
}
