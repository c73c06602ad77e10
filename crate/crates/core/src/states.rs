//! Poschl-Teller eigenstates, the three seed families, and their eigenvalues.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, rat, AffineExp, EtaPoly, Field, ParamPoly, Rational, Ring};
use crate::domain::{Domain, Symbolic};
use crate::error::{Error, Result};
use crate::spectral::QuasiRat;

/// The four families: seed solutions `I`, `II`, `III` and the square-integrable
/// eigenstates `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StateType {
    I,
    II,
    III,
    N,
}

impl StateType {
    pub const ALL: [StateType; 4] = [StateType::I, StateType::II, StateType::III, StateType::N];

    pub fn as_str(self) -> &'static str {
        match self {
            StateType::I => "I",
            StateType::II => "II",
            StateType::III => "III",
            StateType::N => "N",
        }
    }

    /// `(flip_sin, flip_cos)`: whether `g -> 1 - g` and `h -> 1 - h`.
    fn flips(self) -> (bool, bool) {
        match self {
            StateType::N => (false, false),
            StateType::I => (false, true),
            StateType::II => (true, false),
            StateType::III => (true, true),
        }
    }

    /// Parameter shift of the Darboux step that removes the `v = 0` member
    /// of this family.
    pub fn darboux_shift(self) -> (i64, i64) {
        match self {
            StateType::I => (1, -1),
            StateType::II => (-1, 1),
            StateType::III => (-1, -1),
            StateType::N => (1, 1),
        }
    }
}

impl fmt::Display for StateType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The pairing `(J, J')`: 1 on the diagonal, -1 for `{I, II}` and `{III, N}`,
/// 0 otherwise.
pub fn pairing(j: StateType, jp: StateType) -> i64 {
    use StateType::*;
    if j == jp {
        return 1;
    }
    match (j, jp) {
        (I, II) | (II, I) | (III, N) | (N, III) => -1,
        _ => 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct State {
    pub kind: StateType,
    pub index: u32,
}

impl State {
    pub fn new(kind: StateType, index: u32) -> Self {
        State { kind, index }
    }

    pub fn i(v: u32) -> Self {
        Self::new(StateType::I, v)
    }
    pub fn ii(v: u32) -> Self {
        Self::new(StateType::II, v)
    }
    pub fn iii(v: u32) -> Self {
        Self::new(StateType::III, v)
    }
    pub fn n(v: u32) -> Self {
        Self::new(StateType::N, v)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.index)
    }
}

impl FromStr for State {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| {
            Error::Parse(format!("state '{}' has no index", s))
        })?;
        let (tag, idx) = s.split_at(split);
        let kind = match tag {
            "I" => StateType::I,
            "II" => StateType::II,
            "III" => StateType::III,
            "N" => StateType::N,
            _ => return Err(Error::Parse(format!("unknown state type '{}' in '{}'", tag, s))),
        };
        let index = idx
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad index '{}' in '{}'", idx, s)))?;
        Ok(State::new(kind, index))
    }
}

/// An ordered list of distinct states.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct StateTuple(Vec<State>);

impl StateTuple {
    pub fn new(states: Vec<State>) -> Result<Self> {
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::DuplicateState(s.to_string()));
            }
        }
        Ok(StateTuple(states))
    }

    pub fn empty() -> Self {
        StateTuple(Vec::new())
    }

    /// Parses a comma-separated list such as `I1,II2,III1`. The empty string
    /// is the empty tuple.
    pub fn parse(spec: &str) -> Result<Self> {
        if spec.trim().is_empty() {
            return Ok(Self::empty());
        }
        let states = spec
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<State>>>()?;
        Self::new(states)
    }

    pub fn states(&self) -> &[State] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Ascending indices of the given family.
    pub fn indices(&self, kind: StateType) -> Vec<u32> {
        let mut v: Vec<u32> = self.0.iter().filter(|s| s.kind == kind).map(|s| s.index).collect();
        v.sort_unstable();
        v
    }

    /// Canonical ordering: `I`, `II`, `III`, `N`, each ascending.
    pub fn sorted(&self) -> Self {
        let mut v = self.0.clone();
        v.sort();
        StateTuple(v)
    }

    pub fn with(&self, s: State) -> Result<Self> {
        let mut v = self.0.clone();
        v.push(s);
        Self::new(v)
    }

    pub fn without(&self, position: usize) -> Result<Self> {
        if position >= self.0.len() {
            return Err(Error::IndexOutOfRange {
                index: position,
                len: self.0.len(),
            });
        }
        let mut v = self.0.clone();
        v.remove(position);
        Ok(StateTuple(v))
    }

    pub fn contains(&self, s: &State) -> bool {
        self.0.contains(s)
    }
}

/// A random tuple of up to `max_size` distinct states with indices up to
/// `max_index`.
pub fn random_tuple<R: rand::Rng + ?Sized>(rng: &mut R, max_size: usize, max_index: u32) -> StateTuple {
    let size = rng.random_range(0..=max_size).min(4 * (max_index as usize + 1));
    let mut states: Vec<State> = Vec::with_capacity(size);
    while states.len() < size {
        let kind = StateType::ALL[rng.random_range(0..4)];
        let s = State::new(kind, rng.random_range(0..=max_index));
        if !states.contains(&s) {
            states.push(s);
        }
    }
    StateTuple(states)
}

impl TryFrom<Vec<State>> for StateTuple {
    type Error = Error;
    fn try_from(v: Vec<State>) -> Result<Self> {
        StateTuple::new(v)
    }
}

impl TryFrom<String> for StateTuple {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        StateTuple::parse(&s)
    }
}

impl From<StateTuple> for String {
    fn from(t: StateTuple) -> Self {
        t.to_string()
    }
}

impl From<StateTuple> for Vec<State> {
    fn from(t: StateTuple) -> Self {
        t.0
    }
}

impl fmt::Display for StateTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(State::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `(sin x)^exp_s (cos x)^exp_c P(eta)` with `P` divisible by neither
/// `1 - eta` nor `1 + eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPoly<C: Ring> {
    pub(crate) exp_s: AffineExp,
    pub(crate) exp_c: AffineExp,
    pub(crate) poly: EtaPoly<C>,
}

impl<C: Ring> QuasiPoly<C> {
    pub fn exp_s(&self) -> &AffineExp {
        &self.exp_s
    }

    pub fn exp_c(&self) -> &AffineExp {
        &self.exp_c
    }

    pub fn poly(&self) -> &EtaPoly<C> {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("canonical quasi-polynomials are nonzero")
    }

    /// Pointwise product; canonical inputs give a canonical product.
    pub fn mul(&self, other: &Self) -> Self {
        QuasiPoly {
            exp_s: &self.exp_s + &other.exp_s,
            exp_c: &self.exp_c + &other.exp_c,
            poly: &self.poly * &other.poly,
        }
    }

    /// Multiplies by `(sin x)^s (cos x)^c`.
    pub fn with_prefactor(&self, s: &AffineExp, c: &AffineExp) -> Self {
        QuasiPoly {
            exp_s: &self.exp_s + s,
            exp_c: &self.exp_c + c,
            poly: self.poly.clone(),
        }
    }

    /// Scales the polynomial part by a nonzero constant.
    pub fn scale(&self, c: &C) -> Self {
        assert!(!c.is_zero(), "scaling a quasi-polynomial by zero");
        QuasiPoly {
            exp_s: self.exp_s.clone(),
            exp_c: self.exp_c.clone(),
            poly: self.poly.scale(c),
        }
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Result<QuasiPoly<D>> {
        let poly = self.poly.map(f);
        if poly.is_zero() {
            return Err(Error::ZeroWronskian);
        }
        Ok(QuasiPoly {
            exp_s: self.exp_s.clone(),
            exp_c: self.exp_c.clone(),
            poly,
        })
    }
}

impl<C: Ring> fmt::Display for QuasiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(sin x)^({}) (cos x)^({}) [{}]", self.exp_s, self.exp_c, self.poly)
    }
}

/// `(a)_k = a (a + 1) ... (a + k - 1)`.
pub fn pochhammer(base: &ParamPoly, k: u32) -> ParamPoly {
    (0..k).fold(ParamPoly::one(), |acc, i| &acc * &(base + &ParamPoly::from(i as i64)))
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

/// Jacobi polynomial `P_n^(alpha, beta)(eta)` with polynomial coefficients.
///
/// Uses the expansion in `(1 - eta)/2` whose `k`-th coefficient is
/// `(-1)^k (alpha + k + 1)_{n-k} (n + alpha + beta + 1)_k / ((n-k)! k!)`,
/// which needs no division by parameter polynomials.
pub fn jacobi_poly(n: u32, alpha: &ParamPoly, beta: &ParamPoly) -> EtaPoly<ParamPoly> {
    let half_one_minus: EtaPoly<ParamPoly> =
        EtaPoly::from_rationals(&[rat(1, 2), rat(-1, 2)]);
    let top = alpha + &(beta + &ParamPoly::from(n as i64 + 1));
    let mut out = EtaPoly::zero();
    let mut basis = EtaPoly::one();
    for k in 0..=n {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let denom = factorial(n - k) * factorial(k);
        let c = &pochhammer(&(alpha + &ParamPoly::from(k as i64 + 1)), n - k) * &pochhammer(&top, k);
        let c = c.scale(&(sign / denom));
        out = &out + &basis.scale(&c);
        basis = &basis * &half_one_minus;
    }
    out
}

/// Symbolic exponents and Jacobi parameters of a state.
fn state_shape(s: State) -> (AffineExp, AffineExp, ParamPoly, ParamPoly) {
    let (fs, fc) = s.kind.flips();
    let one = int(1);
    let half = rat(1, 2);
    let exp_s = if fs { AffineExp::new(-1, 0, one.clone()) } else { AffineExp::g() };
    let exp_c = if fc { AffineExp::new(0, -1, one) } else { AffineExp::h() };
    let alpha = if fs {
        ParamPoly::linear(int(-1), int(0), half.clone())
    } else {
        ParamPoly::linear(int(1), int(0), -half.clone())
    };
    let beta = if fc {
        ParamPoly::linear(int(0), int(-1), half.clone())
    } else {
        ParamPoly::linear(int(0), int(1), -half)
    };
    (exp_s, exp_c, alpha, beta)
}

/// The state as a symbolic quasi-polynomial at `(g, h)`.
pub fn make_state(s: State) -> QuasiPoly<ParamPoly> {
    make_state_in(&Symbolic::<ParamPoly>::new(), s)
}

/// The state in the given domain, i.e. at parameters `(g + dg, h + dh)` for
/// the domain's offset. Exponents are expressed in the base variables.
pub fn make_state_in<D: Domain>(domain: &D, s: State) -> QuasiPoly<D::C> {
    let (exp_s, exp_c, alpha, beta) = state_shape(s);
    let (dg, dh) = domain.offset();
    let poly = jacobi_poly(s.index, &alpha, &beta).map(|c| domain.param(c));
    QuasiPoly {
        exp_s: exp_s.shift(dg, dh),
        exp_c: exp_c.shift(dg, dh),
        poly,
    }
}

/// `E_n(g, h) = 4 n (n + g + h)`, valid for any integer `n`.
pub fn energy(n: i64) -> ParamPoly {
    ParamPoly::linear(int(1), int(1), int(n)).scale(&int(4 * n))
}

/// The Schrodinger eigenvalue of a state.
pub fn eigenvalue(s: State) -> ParamPoly {
    let v = s.index as i64;
    let four = int(-4);
    match s.kind {
        StateType::N => energy(v),
        StateType::I => {
            let a = ParamPoly::linear(int(1), int(0), int(v) + rat(1, 2));
            let b = ParamPoly::linear(int(0), int(1), -int(v) - rat(1, 2));
            (&a * &b).scale(&four)
        }
        StateType::II => {
            let a = ParamPoly::linear(int(1), int(0), -int(v) - rat(1, 2));
            let b = ParamPoly::linear(int(0), int(1), int(v) + rat(1, 2));
            (&a * &b).scale(&four)
        }
        StateType::III => energy(-(v + 1)),
    }
}

/// The Poschl-Teller potential
/// `2 g (g - 1)/(1 - eta) + 2 h (h - 1)/(1 + eta) - (g + h)^2`.
pub fn potential() -> QuasiRat<crate::algebra::ParamRat> {
    potential_in(&Symbolic::<crate::algebra::ParamRat>::new())
}

pub fn potential_in<D: Domain>(domain: &D) -> QuasiRat<D::C>
where
    D::C: Field,
{
    let g = ParamPoly::g();
    let h = ParamPoly::h();
    let one = ParamPoly::one();
    let two = int(2);
    let gg = domain.param(&(&g * &(&g - &one)).scale(&two));
    let hh = domain.param(&(&h * &(&h - &one)).scale(&two));
    let sum = &g + &h;
    let sq = domain.param(&(&sum * &sum));
    let plus = EtaPoly::<D::C>::one_plus_eta();
    let minus = EtaPoly::<D::C>::one_minus_eta();
    let den = &plus * &minus;
    let num = &(&plus.scale(&gg) + &minus.scale(&hh)) - &den.scale(&sq);
    QuasiRat::new(AffineExp::zero(), AffineExp::zero(), num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> ParamPoly {
        ParamPoly::g()
    }
    fn h() -> ParamPoly {
        ParamPoly::h()
    }
    fn c(n: i64) -> ParamPoly {
        ParamPoly::from(n)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&g(), 0), ParamPoly::one());
        let alpha = g();
        let p = pochhammer(&(&alpha + &c(1)), 2);
        assert_eq!(p, &(&(&alpha * &alpha) + &alpha.scale(&int(3))) + &c(2));
        assert_eq!(pochhammer(&g(), 3).eval(&int(2), &int(0)), int(24));
    }

    #[test]
    fn jacobi_low_degrees() {
        let (a, b) = (g(), h());
        assert_eq!(jacobi_poly(0, &a, &b), EtaPoly::one());
        // (a + 1) - (a + b + 2)(1 - eta)/2
        let p1 = jacobi_poly(1, &a, &b);
        let expected = EtaPoly::new(vec![
            &(&a + &c(1)) - &(&(&a + &b) + &c(2)).scale(&rat(1, 2)),
            (&(&a + &b) + &c(2)).scale(&rat(1, 2)),
        ]);
        assert_eq!(p1, expected);
        // Legendre P_2 = (3 eta^2 - 1)/2
        let p2 = jacobi_poly(2, &ParamPoly::zero(), &ParamPoly::zero());
        assert_eq!(p2, EtaPoly::from_rationals(&[rat(-1, 2), int(0), rat(3, 2)]));
    }

    #[test]
    fn jacobi_degree_is_exact() {
        let alpha = ParamPoly::linear(int(1), int(0), rat(-1, 2));
        let beta = ParamPoly::linear(int(0), int(-1), rat(1, 2));
        for n in 0..9 {
            let p = jacobi_poly(n, &alpha, &beta);
            assert_eq!(p.degree(), Some(n as usize));
            assert!(!p.leading().is_zero());
        }
    }

    #[test]
    fn state_shapes() {
        let i0 = make_state(State::i(0));
        assert_eq!(i0.exp_s(), &AffineExp::g());
        assert_eq!(i0.exp_c(), &AffineExp::new(0, -1, int(1)));
        assert_eq!(i0.poly(), &EtaPoly::one());
        let n0 = make_state(State::n(0));
        assert_eq!((n0.exp_s(), n0.exp_c()), (&AffineExp::g(), &AffineExp::h()));
        let iii1 = make_state(State::iii(1));
        assert_eq!(iii1.exp_s(), &AffineExp::new(-1, 0, int(1)));
        let alpha = ParamPoly::linear(int(-1), int(0), rat(1, 2));
        let beta = ParamPoly::linear(int(0), int(-1), rat(1, 2));
        assert_eq!(iii1.poly(), &jacobi_poly(1, &alpha, &beta));
    }

    #[test]
    fn eigenvalues() {
        assert!(eigenvalue(State::n(0)).is_zero());
        let v = 3;
        let expected = (&(&g() - &ParamPoly::constant(rat(7, 2))) * &(&h() + &ParamPoly::constant(rat(7, 2)))).scale(&int(-4));
        assert_eq!(eigenvalue(State::ii(v)), expected);
        let expected = (&(&g() + &h()) - &c(4)).scale(&int(-16));
        assert_eq!(eigenvalue(State::iii(3)), expected);
    }

    #[test]
    fn eigenvalue_reflection_identities() {
        for v in 0..=8i64 {
            // E~I at index -(v+1): -4(g - v - 1/2)(h + v + 1/2)
            let w = -(v + 1);
            let a = ParamPoly::linear(int(1), int(0), int(w) + rat(1, 2));
            let b = ParamPoly::linear(int(0), int(1), -int(w) - rat(1, 2));
            assert_eq!(eigenvalue(State::ii(v as u32)), (&a * &b).scale(&int(-4)));
            let e = (&(&g() + &h()) + &c(w)).scale(&int(4 * w));
            assert_eq!(eigenvalue(State::iii(v as u32)), e);
        }
    }

    #[test]
    fn pairing_table() {
        use StateType::*;
        assert_eq!(pairing(I, I), 1);
        assert_eq!(pairing(I, II), -1);
        assert_eq!(pairing(N, III), -1);
        assert_eq!(pairing(I, III), 0);
        assert_eq!(pairing(II, N), 0);
    }

    #[test]
    fn tuple_parsing() {
        let t = StateTuple::parse("I1,II2,III1").unwrap();
        assert_eq!(t.states(), &[State::i(1), State::ii(2), State::iii(1)]);
        assert_eq!(t.to_string(), "I1,II2,III1");
        assert!(StateTuple::parse("").unwrap().is_empty());
        assert!(matches!(StateTuple::parse("I1,I1"), Err(Error::DuplicateState(_))));
        assert!(matches!(StateTuple::parse("IV1"), Err(Error::Parse(_))));
        assert!(matches!(StateTuple::parse("I"), Err(Error::Parse(_))));
        assert_eq!(t.indices(StateType::II), vec![2]);
    }
}
