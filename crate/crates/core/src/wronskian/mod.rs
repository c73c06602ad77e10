//! Differentiation of quasi-polynomials and Wronskian determinants in `eta`.

pub mod det;

use std::fmt;

use crate::algebra::{int, AffineExp, EtaPoly, ParamPoly, Ring};
use crate::domain::{Domain, Point, Symbolic};
use crate::error::{Error, Result};
use crate::states::{make_state_in, QuasiPoly, State, StateTuple};

/// `(sin x)^exp_s (cos x)^exp_c P(eta)` before edge factors are pulled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawQuasi<C: Ring> {
    pub exp_s: AffineExp,
    pub exp_c: AffineExp,
    pub poly: EtaPoly<C>,
}

impl<C: Ring> RawQuasi<C> {
    pub fn new(exp_s: AffineExp, exp_c: AffineExp, poly: EtaPoly<C>) -> Self {
        RawQuasi { exp_s, exp_c, poly }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Product of two quasi-polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        RawQuasi {
            exp_s: &self.exp_s + &other.exp_s,
            exp_c: &self.exp_c + &other.exp_c,
            poly: &self.poly * &other.poly,
        }
    }

    /// Lowers the exponents by `2 ds` and `2 dc`, multiplying the polynomial
    /// part by `((1 - eta)/2)^ds ((1 + eta)/2)^dc` to compensate.
    pub fn lower_exponents(&self, ds: usize, dc: usize) -> Self {
        let half = crate::algebra::rat(1, 2);
        let minus = EtaPoly::<C>::one_minus_eta().scale_rational(&half);
        let plus = EtaPoly::<C>::one_plus_eta().scale_rational(&half);
        RawQuasi {
            exp_s: self.exp_s.add_constant(&int(-2 * ds as i64)),
            exp_c: self.exp_c.add_constant(&int(-2 * dc as i64)),
            poly: &(&self.poly * &minus.pow(ds)) * &plus.pow(dc),
        }
    }

    /// Sum of two quasi-polynomials whose exponents differ by even integers.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = align(self, other)?;
        Ok(RawQuasi {
            exp_s: a.exp_s,
            exp_c: a.exp_c,
            poly: &a.poly + &b.poly,
        })
    }
}

/// Brings two quasi-polynomials to common exponents.
fn align<C: Ring>(a: &RawQuasi<C>, b: &RawQuasi<C>) -> Result<(RawQuasi<C>, RawQuasi<C>)> {
    let lift = |d: &AffineExp| -> Result<i64> {
        match d.as_constant() {
            Some(c) if c.is_integer() && (c.to_integer() % 2u8) == 0u8.into() => {
                Ok(i64::try_from(c.to_integer()).expect("exponent difference fits in i64") / 2)
            }
            _ => Err(Error::IncompatibleExponents(d.to_string())),
        }
    };
    let ds = lift(&(&a.exp_s - &b.exp_s))?;
    let dc = lift(&(&a.exp_c - &b.exp_c))?;
    let (mut a, mut b) = (a.clone(), b.clone());
    if ds > 0 {
        a = a.lower_exponents(ds as usize, 0);
    } else {
        b = b.lower_exponents((-ds) as usize, 0);
    }
    if dc > 0 {
        a = a.lower_exponents(0, dc as usize);
    } else {
        b = b.lower_exponents(0, (-dc) as usize);
    }
    Ok((a, b))
}

impl<C: Ring> From<QuasiPoly<C>> for RawQuasi<C> {
    fn from(q: QuasiPoly<C>) -> Self {
        RawQuasi {
            exp_s: q.exp_s,
            exp_c: q.exp_c,
            poly: q.poly,
        }
    }
}

impl<C: Ring> From<&QuasiPoly<C>> for RawQuasi<C> {
    fn from(q: &QuasiPoly<C>) -> Self {
        q.clone().into()
    }
}

impl<C: Ring> fmt::Display for RawQuasi<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(sin x)^({}) (cos x)^({}) [{}]", self.exp_s, self.exp_c, self.poly)
    }
}

/// Polynomial part of `d/dx [s^a c^b Q(eta)]`, which equals
/// `s^(a-1) c^(b-1) [(a (1 + eta) - b (1 - eta))/2 Q - (1 - eta^2) Q']`.
pub(crate) fn derivative_poly<C: Ring>(a: &C, b: &C, q: &EtaPoly<C>) -> EtaPoly<C> {
    let half = crate::algebra::rat(1, 2);
    let lin = EtaPoly::new(vec![a.minus(b).scaled(&half), a.plus(b).scaled(&half)]);
    let edge = &EtaPoly::<C>::one_minus_eta() * &EtaPoly::one_plus_eta();
    &(&lin * q) - &(&edge * &q.derivative())
}

/// Exact `d/dx`; both exponents drop by one.
pub fn differentiate<D: Domain>(domain: &D, q: &RawQuasi<D::C>) -> RawQuasi<D::C> {
    let a = domain.exponent(&q.exp_s);
    let b = domain.exponent(&q.exp_c);
    RawQuasi {
        exp_s: q.exp_s.add_constant(&int(-1)),
        exp_c: q.exp_c.add_constant(&int(-1)),
        poly: derivative_poly(&a, &b, &q.poly),
    }
}

/// Pulls `(1 - eta)^k = 2^k s^(2k)` and `(1 + eta)^k = 2^k c^(2k)` out of the
/// polynomial part.
pub fn canonicalize<C: Ring>(r: &RawQuasi<C>) -> Result<QuasiPoly<C>> {
    let (km, kp, core) = r.poly.extract_edge_factors().map_err(|_| Error::ZeroWronskian)?;
    let two_pow = (0..km + kp).fold(int(1), |acc, _| acc * int(2));
    Ok(QuasiPoly {
        exp_s: r.exp_s.add_constant(&int(2 * km as i64)),
        exp_c: r.exp_c.add_constant(&int(2 * kp as i64)),
        poly: core.scale_rational(&two_pow),
    })
}

/// Wronskian of arbitrary quasi-polynomials, as a canonical quasi-polynomial.
pub fn wronskian_of<D: Domain>(domain: &D, fs: &[RawQuasi<D::C>]) -> Result<QuasiPoly<D::C>> {
    let n = fs.len();
    if n == 0 {
        return Ok(QuasiPoly {
            exp_s: AffineExp::zero(),
            exp_c: AffineExp::zero(),
            poly: EtaPoly::one(),
        });
    }
    // column j holds the polynomial parts of f_j, f_j', ..., f_j^(n-1)
    let columns: Vec<Vec<EtaPoly<D::C>>> = fs
        .iter()
        .map(|f| {
            let mut col = Vec::with_capacity(n);
            let mut cur = f.clone();
            for i in 0..n {
                col.push(cur.poly.clone());
                if i + 1 < n {
                    cur = differentiate(domain, &cur);
                }
            }
            col
        })
        .collect();
    let matrix: det::Matrix<D::C> =
        (0..n).map(|i| (0..n).map(|j| columns[j][i].clone()).collect()).collect();
    let poly = det::determinant(&matrix);
    let drop = int(-((n * (n - 1) / 2) as i64));
    let sum = |pick: fn(&RawQuasi<D::C>) -> &AffineExp| {
        fs.iter().fold(AffineExp::zero(), |acc, f| &acc + pick(f)).add_constant(&drop)
    };
    let raw = RawQuasi {
        exp_s: sum(|f| &f.exp_s),
        exp_c: sum(|f| &f.exp_c),
        poly,
    };
    canonicalize(&raw)
}

/// `W[t]` in the given domain, i.e. at the domain's shifted parameters.
pub fn wronskian_in<D: Domain>(domain: &D, t: &StateTuple) -> Result<QuasiPoly<D::C>> {
    let fs: Vec<RawQuasi<D::C>> =
        t.states().iter().map(|&s| make_state_in(domain, s).into()).collect();
    wronskian_of(domain, &fs)
}

/// Symbolic `W[t](x; g, h)`.
pub fn wronskian(t: &StateTuple) -> Result<QuasiPoly<ParamPoly>> {
    wronskian_in(&Symbolic::<ParamPoly>::new(), t)
}

/// `Some(c)` with `a = c b` when the exponents agree and the polynomial parts
/// are proportional.
pub fn compare_quasi<C: Ring>(a: &QuasiPoly<C>, b: &QuasiPoly<C>) -> Option<C::Frac> {
    if a.exp_s != b.exp_s || a.exp_c != b.exp_c {
        return None;
    }
    a.poly.proportional(&b.poly).ok().flatten()
}

/// Substitutes `(g, h) -> (g + dg, h + dh)` everywhere.
pub fn shift_quasi(q: &QuasiPoly<ParamPoly>, dg: i64, dh: i64) -> QuasiPoly<ParamPoly> {
    QuasiPoly {
        exp_s: q.exp_s.shift(dg, dh),
        exp_c: q.exp_c.shift(dg, dh),
        poly: q.poly.map(|c| c.shift(dg, dh)),
    }
}

/// Checks `W[base, f, g] W[base] = W[W[base, f], W[base, g]]` exactly at an
/// instantiation; the outer Wronskian differentiates the instantiated inner
/// ones directly.
pub fn wronskian_compose_check(
    point: &Point,
    base: &StateTuple,
    f: State,
    g2: State,
) -> Result<bool> {
    let with_f = base.with(f)?;
    let with_g = base.with(g2)?;
    let with_both = with_f.with(g2)?;
    let lhs = wronskian_in(point, &with_both)?.mul(&wronskian_in(point, base)?);
    let wf = RawQuasi::from(wronskian_in(point, &with_f)?);
    let wg = RawQuasi::from(wronskian_in(point, &with_g)?);
    let rhs = wronskian_of(point, &[wf, wg])?;
    Ok(lhs == rhs)
}
