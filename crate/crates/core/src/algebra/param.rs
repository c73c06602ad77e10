use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{int, ParamRat, Rational};

/// Exponent pair of `g^g h^h`, ordered graded-lexicographically with `g > h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub g: u32,
    pub h: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { g: 0, h: 0 };

    pub fn new(g: u32, h: u32) -> Self {
        Monomial { g, h }
    }

    pub fn degree(&self) -> u32 {
        self.g + self.h
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.g + other.g, self.h + other.h)
    }

    fn checked_div(self, other: Monomial) -> Option<Monomial> {
        Some(Monomial::new(
            self.g.checked_sub(other.g)?,
            self.h.checked_sub(other.h)?,
        ))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.g.cmp(&other.g))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the parameters `(g, h)` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    /// The polynomial `g`.
    pub fn g() -> Self {
        Self::term(Rational::one(), Monomial::new(1, 0))
    }

    /// The polynomial `h`.
    pub fn h() -> Self {
        Self::term(Rational::one(), Monomial::new(0, 1))
    }

    /// `a*g + b*h + c`.
    pub fn linear(a: Rational, b: Rational, c: Rational) -> Self {
        let mut p = Self::constant(c);
        p.add_term(Monomial::new(1, 0), a);
        p.add_term(Monomial::new(0, 1), b);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value when the polynomial has no `g` or `h` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Leading term under graded lex order.
    pub fn leading(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_g(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.g).max()
    }

    pub fn degree_h(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.h).max()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub(crate) fn mul_monomial(&self, m: Monomial) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ParamPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at `(g, h) = (gv, hv)`.
    pub fn eval(&self, gv: &Rational, hv: &Rational) -> Rational {
        let max_g = self.degree_g().unwrap_or(0) as usize;
        let max_h = self.degree_h().unwrap_or(0) as usize;
        let gp = powers(gv, max_g);
        let hp = powers(hv, max_h);
        self.terms
            .iter()
            .map(|(m, c)| c * &gp[m.g as usize] * &hp[m.h as usize])
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Substitutes `(g, h) -> (g + dg, h + dh)`.
    pub fn shift(&self, dg: i64, dh: i64) -> Self {
        if dg == 0 && dh == 0 {
            return self.clone();
        }
        let max_g = self.degree_g().unwrap_or(0);
        let max_h = self.degree_h().unwrap_or(0);
        let gpow = binomial_powers(dg, max_g);
        let hpow = binomial_powers(dh, max_h);
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            for (i, gc) in gpow[m.g as usize].iter().enumerate() {
                if gc.is_zero() {
                    continue;
                }
                for (j, hc) in hpow[m.h as usize].iter().enumerate() {
                    if hc.is_zero() {
                        continue;
                    }
                    out.add_term(Monomial::new(i as u32, j as u32), c * gc * hc);
                }
            }
        }
        out
    }

    /// Exact quotient by `d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (dm, dc) = d.leading()?;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.checked_div(dm)?;
            let qc = rc / &dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Sum of `c * g^i * h^j` rendered with `*` and `^`, highest term first.
    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mut wrote = false;
            if !mag.is_one() || *m == Monomial::ONE {
                if latex && !mag.is_integer() {
                    write!(f, "\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())?;
                } else {
                    write!(f, "{}", mag)?;
                }
                wrote = true;
            }
            for (var, e) in [("g", m.g), ("h", m.h)] {
                if e == 0 {
                    continue;
                }
                if wrote && !latex {
                    write!(f, "*")?;
                }
                write!(f, "{}", var)?;
                if e > 1 {
                    if latex {
                        write!(f, "^{{{}}}", e)?;
                    } else {
                        write!(f, "^{}", e)?;
                    }
                }
                wrote = true;
            }
        }
        Ok(())
    }

    /// LaTeX rendering, e.g. `2 g^{2} - \frac{1}{2} h`.
    pub fn to_latex(&self) -> String {
        struct L<'a>(&'a ParamPoly);
        impl fmt::Display for L<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, true)
            }
        }
        L(self).to_string()
    }
}

fn powers(x: &Rational, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::one());
    for i in 0..n {
        let next = &out[i] * x;
        out.push(next);
    }
    out
}

/// Row `k` holds the coefficients of `(x + a)^k` in ascending powers of `x`.
fn binomial_powers(a: i64, n: u32) -> Vec<Vec<Rational>> {
    let a = int(a);
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for k in 1..=n as usize {
        let prev = &rows[k - 1];
        let mut row = vec![Rational::zero(); k + 1];
        for (i, c) in prev.iter().enumerate() {
            row[i + 1] += c;
            row[i] += c * &a;
        }
        rows.push(row);
    }
    rows
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({})", self)
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl ParamPoly {
    /// Integer numerators over the least common denominator.
    fn integral(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (nums, den)
    }
}

/// Common denominator of a list of polynomials and their integer numerators.
fn integral_all(ps: &[ParamPoly]) -> (Vec<Vec<(Monomial, BigInt)>>, BigInt) {
    let den = ps
        .iter()
        .flat_map(|p| p.terms.values())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = ps
        .iter()
        .map(|p| p.terms.iter().map(|(m, c)| (*m, c.numer() * (&den / c.denom()))).collect())
        .collect();
    (nums, den)
}

fn from_integral(acc: BTreeMap<Monomial, BigInt>, den: &BigInt) -> ParamPoly {
    ParamPoly {
        terms: acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::new(c, den.clone())))
            .collect(),
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    // Works over the integers and reduces once per output term.
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return ParamPoly::zero();
        }
        let (a, da) = self.integral();
        let (b, db) = rhs.integral();
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                *acc.entry(ma.mul(*mb)).or_default() += ca * cb;
            }
        }
        from_integral(acc, &(da * db))
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: &ParamPoly) -> ParamPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(c: i64) -> Self {
        ParamPoly::constant(int(c))
    }
}

impl super::Ring for ParamPoly {
    type Frac = ParamRat;

    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (na, da) = integral_all(a);
        let (nb, db) = integral_all(b);
        let den = da * db;
        let mut out = Vec::with_capacity(a.len() + b.len() - 1);
        for k in 0..a.len() + b.len() - 1 {
            let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
            for i in k.saturating_sub(b.len() - 1)..=k.min(a.len() - 1) {
                for (ma, ca) in &na[i] {
                    for (mb, cb) in &nb[k - i] {
                        *acc.entry(ma.mul(*mb)).or_default() += ca * cb;
                    }
                }
            }
            out.push(from_integral(acc, &den));
        }
        out
    }

    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
        ParamPoly::constant(r.clone())
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div_exact(divisor)
    }
    fn to_frac(&self) -> ParamRat {
        ParamRat::from(self.clone())
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}
