//! Deformed Hamiltonians and their eigenfunctions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, rat, sturm_count, AffineExp, EtaPoly, Field, ParamPoly, ParamRat, Rational, Ring};
use crate::domain::{Domain, Point, Symbolic, SymbolicField};
use crate::error::{Error, Result};
use crate::maya::tuple_to_diagrams;
use crate::states::{energy, make_state_in, potential_in, QuasiPoly, State, StateTuple, StateType};
use crate::wronskian::{derivative_poly, differentiate, wronskian_in, RawQuasi};

/// `(sin x)^exp_s (cos x)^exp_c num(eta)/den(eta)` with `num/den` reduced and
/// `den` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiRat<C: Field> {
    exp_s: AffineExp,
    exp_c: AffineExp,
    num: EtaPoly<C>,
    den: EtaPoly<C>,
}

impl<C: Field> QuasiRat<C> {
    pub fn new(exp_s: AffineExp, exp_c: AffineExp, num: EtaPoly<C>, den: EtaPoly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QuasiRat {
                exp_s,
                exp_c,
                num,
                den: EtaPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead = den.leading().inverse();
        num = num.scale(&lead);
        den = den.scale(&lead);
        QuasiRat {
            exp_s,
            exp_c,
            num,
            den,
        }
    }

    pub fn zero() -> Self {
        Self::new(AffineExp::zero(), AffineExp::zero(), EtaPoly::zero(), EtaPoly::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(AffineExp::zero(), AffineExp::zero(), EtaPoly::constant(c), EtaPoly::one())
    }

    pub fn exp_s(&self) -> &AffineExp {
        &self.exp_s
    }

    pub fn exp_c(&self) -> &AffineExp {
        &self.exp_c
    }

    pub fn num(&self) -> &EtaPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &EtaPoly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.exp_s + &other.exp_s,
            &self.exp_c + &other.exp_c,
            &self.num * &other.num,
            &self.den * &other.den,
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::new(-&self.exp_s, -&self.exp_c, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.exp_s.clone(), self.exp_c.clone(), self.num.scale(c), self.den.clone())
    }

    pub fn neg(&self) -> Self {
        QuasiRat {
            num: -&self.num,
            ..self.clone()
        }
    }

    /// Lowers the exponents by `2 ds`, `2 dc`, compensating with powers of
    /// `sin^2 x = (1 - eta)/2` and `cos^2 x = (1 + eta)/2`.
    fn lowered(&self, ds: i64, dc: i64) -> Self {
        let half = rat(1, 2);
        let s2 = EtaPoly::<C>::one_minus_eta().scale_rational(&half);
        let c2 = EtaPoly::<C>::one_plus_eta().scale_rational(&half);
        let factor = &s2.pow(ds as usize) * &c2.pow(dc as usize);
        Self::new(
            self.exp_s.add_constant(&int(-2 * ds)),
            self.exp_c.add_constant(&int(-2 * dc)),
            &self.num * &factor,
            self.den.clone(),
        )
    }

    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        let half_even = |d: AffineExp| -> Result<i64> {
            match d.as_constant() {
                Some(c) if c.is_integer() => {
                    let v = i64::try_from(c.to_integer()).expect("exponent difference fits in i64");
                    if v % 2 == 0 {
                        Ok(v / 2)
                    } else {
                        Err(Error::IncompatibleExponents(d.to_string()))
                    }
                }
                _ => Err(Error::IncompatibleExponents(d.to_string())),
            }
        };
        let ds = half_even(&self.exp_s - &other.exp_s)?;
        let dc = half_even(&self.exp_c - &other.exp_c)?;
        let a = self.lowered(ds.max(0), dc.max(0));
        let b = other.lowered((-ds).max(0), (-dc).max(0));
        Ok((a, b))
    }

    /// Sum; the exponents may differ by even integers.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (a, b) = self.align(other)?;
        Ok(Self::new(
            a.exp_s.clone(),
            a.exp_c.clone(),
            &(&a.num * &b.den) + &(&b.num * &a.den),
            &a.den * &b.den,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Whether the two describe the same function.
    pub fn same_function(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Exact `d/dx` by the quotient rule.
    pub fn differentiate<D: Domain<C = C>>(&self, domain: &D) -> Self {
        let a = domain.exponent(&self.exp_s);
        let b = domain.exponent(&self.exp_c);
        // d/dx [s^a c^b N/D] = s^(a-1) c^(b-1) [L(N) D + (1 - eta^2) N D'] / D^2
        let edge = &EtaPoly::<C>::one_minus_eta() * &EtaPoly::one_plus_eta();
        let num = &(&derivative_poly(&a, &b, &self.num) * &self.den)
            + &(&(&edge * &self.num) * &self.den.derivative());
        Self::new(
            self.exp_s.add_constant(&int(-1)),
            self.exp_c.add_constant(&int(-1)),
            num,
            &self.den * &self.den,
        )
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> QuasiRat<D> {
        QuasiRat::new(self.exp_s.clone(), self.exp_c.clone(), self.num.map(&f), self.den.map(&f))
    }
}

impl QuasiRat<ParamRat> {
    /// Evaluates the coefficients at `(g, h)`; `None` if a coefficient
    /// denominator vanishes there.
    pub fn eval_params(&self, gv: &Rational, hv: &Rational) -> Option<QuasiRat<Rational>> {
        let ev = |p: &EtaPoly<ParamRat>| -> Option<EtaPoly<Rational>> {
            let cs = p.coeffs().iter().map(|c| c.eval(gv, hv)).collect::<Option<Vec<_>>>()?;
            Some(EtaPoly::new(cs))
        };
        let den = ev(&self.den)?;
        if den.is_zero() {
            return None;
        }
        Some(QuasiRat::new(self.exp_s.clone(), self.exp_c.clone(), ev(&self.num)?, den))
    }
}

impl<C: Field> From<QuasiPoly<C>> for QuasiRat<C> {
    fn from(q: QuasiPoly<C>) -> Self {
        QuasiRat::new(q.exp_s().clone(), q.exp_c().clone(), q.poly().clone(), EtaPoly::one())
    }
}

impl<C: Field> fmt::Display for QuasiRat<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(sin x)^({}) (cos x)^({}) [{}] / [{}]",
            self.exp_s, self.exp_c, self.num, self.den
        )
    }
}

/// `U - 2 (log W)''` for the Wronskian of `t`, in the given domain.
pub fn deformed_potential_in<D: Domain>(domain: &D, t: &StateTuple) -> Result<QuasiRat<D::C>>
where
    D::C: Field,
{
    let u = potential_in(domain);
    if t.is_empty() {
        return Ok(u);
    }
    let w = QuasiRat::from(wronskian_in(domain, t)?);
    let w1 = w.differentiate(domain);
    let w2 = w1.differentiate(domain);
    let log2 = w2.mul(&w).sub(&w1.mul(&w1))?.div(&w.mul(&w))?;
    u.sub(&log2.scale(&D::C::from_rational(&int(2))))
}

/// Symbolic deformed potential.
pub fn deformed_potential(t: &StateTuple) -> Result<QuasiRat<ParamRat>> {
    deformed_potential_in(&SymbolicField::new(), t)
}

/// `-f'' + pot f`.
pub fn apply_hamiltonian<D: Domain>(domain: &D, pot: &QuasiRat<D::C>, f: &QuasiRat<D::C>) -> Result<QuasiRat<D::C>>
where
    D::C: Field,
{
    let f2 = f.differentiate(domain).differentiate(domain);
    pot.mul(f).sub(&f2)
}

/// Result of an exact eigenfunction check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenCheck {
    pub holds: bool,
    pub eigenvalue: ParamPoly,
    /// Boundary-behaviour notes at the instantiation, if any.
    pub warnings: Vec<String>,
}

fn lift_state_quasi<D: Domain>(domain: &D, s: State) -> QuasiRat<D::C>
where
    D::C: Field,
{
    QuasiRat::from(make_state_in(domain, s))
}

/// `U` as `(sin x)^-2 (cos x)^-2 [2g(g-1)(1+eta) + 2h(h-1)(1-eta) - (g+h)^2 (1-eta^2)]/4`.
fn potential_raw<D: Domain>(domain: &D) -> RawQuasi<D::C> {
    let g = ParamPoly::g();
    let h = ParamPoly::h();
    let one = ParamPoly::one();
    let quarter = rat(1, 4);
    let a = domain.param(&(&g * &(&g - &one)).scale(&rat(1, 2)));
    let b = domain.param(&(&h * &(&h - &one)).scale(&rat(1, 2)));
    let gh = &g + &h;
    let c = domain.param(&(&gh * &gh).scale(&quarter));
    // a(1+eta) + b(1-eta) - c(1-eta^2)
    let poly = EtaPoly::new(vec![a.plus(&b).minus(&c), a.minus(&b), c]);
    RawQuasi::new(AffineExp::constant(int(-2)), AffineExp::constant(int(-2)), poly)
}

/// Whether `N/W` solves `H f = E f` for the deformed Hamiltonian of `W`,
/// through the division-free form `-N'' W + 2 N' W' - N W'' + (U - E) N W = 0`
/// (the equation multiplied by `W^3` and divided by `W`).
fn check_ratio<D: Domain>(domain: &D, num: &QuasiPoly<D::C>, w: &QuasiPoly<D::C>, eigenvalue: &ParamPoly) -> Result<bool> {
    let n0 = RawQuasi::from(num);
    let w0 = RawQuasi::from(w);
    let n1 = differentiate(domain, &n0);
    let w1 = differentiate(domain, &w0);
    let n2 = differentiate(domain, &n1);
    let w2 = differentiate(domain, &w1);
    let scale = |q: RawQuasi<D::C>, c: &D::C| RawQuasi::new(q.exp_s, q.exp_c, q.poly.scale(c));
    let minus_one = D::C::from_rational(&int(-1));
    let nw = n0.mul(&w0);
    let total = scale(n2.mul(&w0), &minus_one)
        .add(&scale(n1.mul(&w1), &D::C::from_rational(&int(2))))?
        .add(&scale(n0.mul(&w2), &minus_one))?
        .add(&potential_raw(domain).mul(&nw))?
        .add(&scale(nw, &domain.param(eigenvalue).negated()))?;
    Ok(total.is_zero())
}

fn check_eigen<D: Domain>(
    domain: &D,
    num: &QuasiPoly<D::C>,
    w: &QuasiPoly<D::C>,
    eigenvalue: ParamPoly,
) -> Result<EigenCheck> {
    Ok(EigenCheck {
        holds: check_ratio(domain, num, w, &eigenvalue)?,
        eigenvalue,
        warnings: Vec::new(),
    })
}

/// Notes on `f = num/w` whose exponents at `point` fall below 3/2.
fn boundary_warnings(point: &Point, num: &QuasiPoly<Rational>, w: &QuasiPoly<Rational>) -> Vec<String> {
    let limit = rat(3, 2);
    let mut out = Vec::new();
    let exp_s = num.exp_s() - w.exp_s();
    let exp_c = num.exp_c() - w.exp_c();
    for (name, e) in [("sin", &exp_s), ("cos", &exp_c)] {
        let v = e.eval(point.g(), point.h());
        if v < limit {
            out.push(format!(
                "{} x exponent {} = {} is below 3/2; the parameters may not be large enough",
                name,
                e,
                crate::algebra::rational_to_string(&v)
            ));
        }
    }
    out
}

/// `W[t, phi_n] / W[t]`.
pub fn deformed_eigenfunction_in<D: Domain>(domain: &D, t: &StateTuple, n: u32) -> Result<QuasiRat<D::C>>
where
    D::C: Field,
{
    let num = wronskian_in(domain, &t.with(State::n(n))?)?;
    let den = wronskian_in(domain, t)?;
    QuasiRat::from(num).div(&QuasiRat::from(den))
}

pub fn verify_eigenfunction_in<D: Domain>(domain: &D, t: &StateTuple, n: u32) -> Result<EigenCheck> {
    let (num, w) = eigen_parts(domain, t, n)?;
    check_eigen(domain, &num, &w, energy(n as i64))
}

/// `W[t, phi_n]` and `W[t]`.
/// Numerator and denominator Wronskians of a deformed state.
type Parts<C> = (QuasiPoly<C>, QuasiPoly<C>);

fn eigen_parts<D: Domain>(domain: &D, t: &StateTuple, n: u32) -> Result<Parts<D::C>> {
    Ok((wronskian_in(domain, &t.with(State::n(n))?)?, wronskian_in(domain, t)?))
}

/// Checks that `W[t, phi_n]/W[t]` is an eigenfunction with eigenvalue `E_n`:
/// at `inst` if given, symbolically for tuples of at most two states, and at
/// the default generic point otherwise.
pub fn verify_eigenfunction(t: &StateTuple, n: u32, inst: Option<(Rational, Rational)>) -> Result<EigenCheck> {
    match pick_point(t, inst)? {
        None => verify_eigenfunction_in(&Symbolic::<ParamPoly>::new(), t, n),
        Some(p) => {
            let (num, w) = eigen_parts(&p, t, n)?;
            let mut check = check_eigen(&p, &num, &w, energy(n as i64))?;
            check.warnings = boundary_warnings(&p, &num, &w);
            Ok(check)
        }
    }
}

fn pick_point(t: &StateTuple, inst: Option<(Rational, Rational)>) -> Result<Option<Point>> {
    match inst {
        Some((g, h)) => Ok(Some(Point::new(g, h)?)),
        None if t.len() <= 2 => Ok(None),
        None => Ok(Some(Point::default_generic())),
    }
}

/// `E_(-m-1) = -4 (m + 1)(g + h - m - 1)`.
pub fn extra_eigenvalue(m: u32) -> ParamPoly {
    energy(-(m as i64) - 1)
}

/// `W[t minus t[ell]]`, `W[t]` and the eigenvalue, for `t[ell] = III_m`.
fn extra_parts<D: Domain>(domain: &D, t: &StateTuple, ell: usize) -> Result<(Parts<D::C>, ParamPoly)> {
    let s = *t.states().get(ell).ok_or(Error::IndexOutOfRange { index: ell, len: t.len() })?;
    if s.kind != StateType::III {
        return Err(Error::NotTypeIII(s.to_string()));
    }
    let num = wronskian_in(domain, &t.without(ell)?)?;
    let den = wronskian_in(domain, t)?;
    Ok(((num, den), extra_eigenvalue(s.index)))
}

/// `W[t minus t[ell]] / W[t]` and its eigenvalue, for `t[ell] = III_m`.
pub fn extra_eigenstate_in<D: Domain>(domain: &D, t: &StateTuple, ell: usize) -> Result<(QuasiRat<D::C>, ParamPoly)>
where
    D::C: Field,
{
    let ((num, den), e) = extra_parts(domain, t, ell)?;
    Ok((QuasiRat::from(num).div(&QuasiRat::from(den))?, e))
}

/// Symbolic extra eigenstate.
pub fn extra_eigenstate(t: &StateTuple, ell: usize) -> Result<(QuasiRat<ParamRat>, ParamPoly)> {
    extra_eigenstate_in(&SymbolicField::new(), t, ell)
}

pub fn verify_extra_eigenstate_in<D: Domain>(domain: &D, t: &StateTuple, ell: usize) -> Result<EigenCheck> {
    let ((num, w), e) = extra_parts(domain, t, ell)?;
    check_eigen(domain, &num, &w, e)
}

/// Same dispatch as [`verify_eigenfunction`].
pub fn verify_extra_eigenstate(t: &StateTuple, ell: usize, inst: Option<(Rational, Rational)>) -> Result<EigenCheck> {
    match pick_point(t, inst)? {
        None => verify_extra_eigenstate_in(&Symbolic::<ParamPoly>::new(), t, ell),
        Some(p) => {
            let ((num, w), e) = extra_parts(&p, t, ell)?;
            let mut check = check_eigen(&p, &num, &w, e)?;
            check.warnings = boundary_warnings(&p, &num, &w);
            Ok(check)
        }
    }
}

/// Whether a state solves the undeformed Schrodinger equation with its
/// eigenvalue.
pub fn verify_state<D: Domain>(domain: &D, s: State) -> Result<bool>
where
    D::C: Field,
{
    let f = lift_state_quasi(domain, s);
    let hf = apply_hamiltonian(domain, &potential_in(domain), &f)?;
    hf.same_function(&f.scale(&domain.param(&crate::states::eigenvalue(s))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Extra,
    Bound,
}

/// `Bound, n` is `E_n`; `Extra, m` is `E_(-m-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectrumLabel {
    pub kind: SpectrumKind,
    pub index: u32,
}

impl SpectrumLabel {
    /// The subscript of `E`.
    pub fn energy_index(&self) -> i64 {
        match self.kind {
            SpectrumKind::Bound => self.index as i64,
            SpectrumKind::Extra => -(self.index as i64) - 1,
        }
    }
}

impl fmt::Display for SpectrumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E_{}", self.energy_index())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub label: SpectrumLabel,
    pub eigenvalue: ParamPoly,
}

/// Permitted eigenvalues: one extra level per white bead left of the first
/// division, and `E_n` for `n <= up_to` not occupied by a black bead.
pub fn permitted_spectrum(t: &StateTuple, up_to: u32) -> Vec<SpectrumEntry> {
    let d = tuple_to_diagrams(t);
    let extra = d.first.left_white.iter().rev().map(|&m| SpectrumLabel {
        kind: SpectrumKind::Extra,
        index: m,
    });
    let bound = (0..=up_to).filter(|n| !d.first.right_black.contains(n)).map(|n| SpectrumLabel {
        kind: SpectrumKind::Bound,
        index: n,
    });
    extra
        .chain(bound)
        .map(|label| SpectrumEntry {
            label,
            eigenvalue: energy(label.energy_index()),
        })
        .collect()
}

/// Whether the instantiated Wronskian has no zeros for `eta` in `(-1, 1)`.
pub fn check_nonsingular(t: &StateTuple, gv: &Rational, hv: &Rational) -> Result<bool> {
    let p = Point::new(gv.clone(), hv.clone())?;
    let w = wronskian_in(&p, t)?;
    Ok(sturm_count(w.poly(), &int(-1), &int(1))? == 0)
}
