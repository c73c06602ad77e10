use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rational, Ring};
use crate::error::{Error, Result};

/// Polynomial in `eta = cos 2x` with coefficients in a [`Ring`].
///
/// `coeffs[k]` is the coefficient of `eta^k`; trailing zeros are trimmed so the
/// zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EtaPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> EtaPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        EtaPoly { coeffs }
    }

    pub fn zero() -> Self {
        EtaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `eta`.
    pub fn eta() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    /// `1 - eta`.
    pub fn one_minus_eta() -> Self {
        Self::new(vec![C::one(), C::one().negated()])
    }

    /// `1 + eta`.
    pub fn one_plus_eta() -> Self {
        Self::new(vec![C::one(), C::one()])
    }

    pub fn from_rationals(cs: &[Rational]) -> Self {
        Self::new(cs.iter().map(C::from_rational).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.scaled(r)).collect())
    }

    /// `d/d eta`.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scaled(&super::int(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.times(x).plus(c))
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> EtaPoly<D> {
        EtaPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient by `eta - root` when `root` is a root, by synthetic division.
    fn div_linear(&self, root: &C) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![C::zero(); n - 1];
        let mut carry = C::zero();
        for k in (0..n).rev() {
            let v = self.coeffs[k].plus(&carry.times(root));
            if k == 0 {
                return v.is_zero().then(|| Self::new(q));
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// `p / (1 - eta)` when exact.
    pub fn div_one_minus_eta(&self) -> Option<Self> {
        self.div_linear(&C::one()).map(|q| -&q)
    }

    /// `p / (1 + eta)` when exact.
    pub fn div_one_plus_eta(&self) -> Option<Self> {
        self.div_linear(&C::one().negated())
    }

    /// Splits `p = (1 - eta)^k_minus (1 + eta)^k_plus core` with `core`
    /// divisible by neither edge factor.
    pub fn extract_edge_factors(&self) -> Result<(usize, usize, Self)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut core = self.clone();
        let mut k_minus = 0;
        while let Some(q) = core.div_one_minus_eta() {
            core = q;
            k_minus += 1;
        }
        let mut k_plus = 0;
        while let Some(q) = core.div_one_plus_eta() {
            core = q;
            k_plus += 1;
        }
        Ok((k_minus, k_plus, core))
    }

    /// Exact quotient in `C[eta]`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lc = d.leading();
        let mut rem = self.clone();
        let Some(rd) = rem.degree() else {
            return Some(Self::zero());
        };
        if rd < dd {
            return None;
        }
        let mut q = vec![C::zero(); rd - dd + 1];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return None;
            }
            let c = rem.leading().exact_div(&lc)?;
            let shift = rd - dd;
            let mut sub = vec![C::zero(); shift];
            sub.extend(d.coeffs.iter().map(|x| x.times(&c)));
            rem = &rem - &Self::new(sub);
            q[shift] = c;
            if rem.degree() == Some(rd) {
                // leading term did not cancel: only possible with zero divisors
                return None;
            }
        }
        Some(Self::new(q))
    }

    /// `Some(c)` with `self = c * other` when the two are proportional over
    /// the fraction field of the coefficients.
    pub fn proportional(&self, other: &Self) -> Result<Option<C::Frac>> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.degree() != other.degree() {
            return Ok(None);
        }
        let la = self.leading();
        let lb = other.leading();
        if self.scale(&lb) == other.scale(&la) {
            Ok(Some(C::ratio(&la, &lb)))
        } else {
            Ok(None)
        }
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "\\eta".to_string(),
                _ => format!("\\eta^{{{}}}", k),
            };
            parts.push(format!("\\left({}\\right){}", c, var));
        }
        parts.join(" + ")
    }
}

impl<C: Field> EtaPoly<C> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().inverse();
        self.scale(&inv)
    }

    /// Euclidean division over a field.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.leading().inverse();
        let mut rem = self.clone();
        let mut q = vec![C::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().times(&inv);
            let shift = rd - dd;
            let mut sub = vec![C::zero(); shift];
            sub.extend(d.coeffs.iter().map(|x| x.times(&c)));
            q[shift] = c;
            let mut next = (&rem - &Self::new(sub)).coeffs;
            // the leading coefficient cancels exactly
            next.truncate(rd);
            rem = Self::new(next);
        }
        (Self::new(q), rem)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<C: Ring> fmt::Display for EtaPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*eta", c)?,
                _ => write!(f, "({})*eta^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for EtaPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EtaPoly[{}]", self)
    }
}

impl<C: Ring> Add for &EtaPoly<C> {
    type Output = EtaPoly<C>;
    fn add(self, rhs: &EtaPoly<C>) -> EtaPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        EtaPoly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a.plus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<C: Ring> Sub for &EtaPoly<C> {
    type Output = EtaPoly<C>;
    fn sub(self, rhs: &EtaPoly<C>) -> EtaPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        EtaPoly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a.minus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.negated(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<C: Ring> Mul for &EtaPoly<C> {
    type Output = EtaPoly<C>;
    fn mul(self, rhs: &EtaPoly<C>) -> EtaPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return EtaPoly::zero();
        }
        EtaPoly::new(C::convolve(&self.coeffs, &rhs.coeffs))
    }
}

impl<C: Ring> Neg for &EtaPoly<C> {
    type Output = EtaPoly<C>;
    fn neg(self) -> EtaPoly<C> {
        EtaPoly::new(self.coeffs.iter().map(Ring::negated).collect())
    }
}

impl<C: Ring> Add for EtaPoly<C> {
    type Output = EtaPoly<C>;
    fn add(self, rhs: EtaPoly<C>) -> EtaPoly<C> {
        &self + &rhs
    }
}

impl<C: Ring> Sub for EtaPoly<C> {
    type Output = EtaPoly<C>;
    fn sub(self, rhs: EtaPoly<C>) -> EtaPoly<C> {
        &self - &rhs
    }
}

impl<C: Ring> Mul for EtaPoly<C> {
    type Output = EtaPoly<C>;
    fn mul(self, rhs: EtaPoly<C>) -> EtaPoly<C> {
        &self * &rhs
    }
}

impl<C: Ring> Neg for EtaPoly<C> {
    type Output = EtaPoly<C>;
    fn neg(self) -> EtaPoly<C> {
        -&self
    }
}
