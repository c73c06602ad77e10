use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{int, ParamPoly, Rational};

/// The affine form `cg*g + ch*h + c0`, used for every sin/cos exponent.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AffineExp {
    pub cg: i64,
    pub ch: i64,
    pub c0: Rational,
}

impl AffineExp {
    pub fn new(cg: i64, ch: i64, c0: Rational) -> Self {
        AffineExp { cg, ch, c0 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c0: Rational) -> Self {
        AffineExp { cg: 0, ch: 0, c0 }
    }

    pub fn g() -> Self {
        AffineExp::new(1, 0, Rational::zero())
    }

    pub fn h() -> Self {
        AffineExp::new(0, 1, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.cg == 0 && self.ch == 0 && self.c0.is_zero()
    }

    /// The constant part when there is no parameter dependence.
    pub fn as_constant(&self) -> Option<&Rational> {
        (self.cg == 0 && self.ch == 0).then_some(&self.c0)
    }

    pub fn scale(&self, k: i64) -> Self {
        AffineExp::new(self.cg * k, self.ch * k, &self.c0 * int(k))
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        AffineExp::new(self.cg, self.ch, &self.c0 + c)
    }

    /// Substitutes `(g, h) -> (g + dg, h + dh)`.
    pub fn shift(&self, dg: i64, dh: i64) -> Self {
        AffineExp::new(self.cg, self.ch, &self.c0 + int(self.cg * dg + self.ch * dh))
    }

    pub fn eval(&self, gv: &Rational, hv: &Rational) -> Rational {
        int(self.cg) * gv + int(self.ch) * hv + &self.c0
    }

    pub fn to_param_poly(&self) -> ParamPoly {
        ParamPoly::linear(int(self.cg), int(self.ch), self.c0.clone())
    }

    pub fn to_latex(&self) -> String {
        self.to_string().replace(' ', "")
    }
}

impl fmt::Display for AffineExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, var) in [(self.cg, "g"), (self.ch, "h")] {
            if k == 0 {
                continue;
            }
            let sign = if k < 0 { "-" } else { "+" };
            if first {
                if k < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            if k.abs() != 1 {
                write!(f, "{}", k.abs())?;
            }
            write!(f, "{}", var)?;
            first = false;
        }
        if first {
            return write!(f, "{}", self.c0);
        }
        if !self.c0.is_zero() {
            let sign = if self.c0.is_negative() { "-" } else { "+" };
            write!(f, " {} {}", sign, self.c0.abs())?;
        }
        Ok(())
    }
}

impl Add for &AffineExp {
    type Output = AffineExp;
    fn add(self, rhs: &AffineExp) -> AffineExp {
        AffineExp::new(self.cg + rhs.cg, self.ch + rhs.ch, &self.c0 + &rhs.c0)
    }
}

impl Sub for &AffineExp {
    type Output = AffineExp;
    fn sub(self, rhs: &AffineExp) -> AffineExp {
        AffineExp::new(self.cg - rhs.cg, self.ch - rhs.ch, &self.c0 - &rhs.c0)
    }
}

impl Add for AffineExp {
    type Output = AffineExp;
    fn add(self, rhs: AffineExp) -> AffineExp {
        &self + &rhs
    }
}

impl Sub for AffineExp {
    type Output = AffineExp;
    fn sub(self, rhs: AffineExp) -> AffineExp {
        &self - &rhs
    }
}

impl Neg for &AffineExp {
    type Output = AffineExp;
    fn neg(self) -> AffineExp {
        AffineExp::new(-self.cg, -self.ch, -&self.c0)
    }
}

impl Neg for AffineExp {
    type Output = AffineExp;
    fn neg(self) -> AffineExp {
        -&self
    }
}
