//! Greatest common divisors in `Q[g, h]`.
//!
//! The polynomial is viewed as an element of `Q[g][h]`: the content is a
//! univariate gcd over `Q` and the primitive part is handled with a primitive
//! pseudo-remainder sequence in `h`.

use num_traits::One;

use super::{Monomial, ParamPoly};

/// Coefficients of `p` as a polynomial in `h`, indexed by `h`-degree; each
/// entry depends on `g` only.
fn h_coeffs(p: &ParamPoly) -> Vec<ParamPoly> {
    let deg = p.degree_h().unwrap_or(0) as usize;
    let mut out = vec![ParamPoly::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.h as usize] = &out[m.h as usize] + &ParamPoly::term(c.clone(), Monomial::new(m.g, 0));
    }
    out
}

fn lead_in_h(p: &ParamPoly) -> (u32, ParamPoly) {
    let deg = p.degree_h().unwrap_or(0);
    let lc = ParamPoly::from_terms(
        p.terms()
            .filter(|(m, _)| m.h == deg)
            .map(|(m, c)| (Monomial::new(m.g, 0), c.clone())),
    );
    (deg, lc)
}

/// Scales so the leading coefficient (graded lex) is one.
pub(crate) fn monic(p: &ParamPoly) -> ParamPoly {
    match p.leading() {
        Some((_, c)) if !c.is_one() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

/// Remainder of `a` modulo `b`, both univariate in `g`.
fn rem_in_g(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let db = b.degree_g().unwrap_or(0);
    let lb = b.coeff(Monomial::new(db, 0));
    let mut r = a.clone();
    while let Some(dr) = r.degree_g() {
        if r.is_zero() || dr < db {
            break;
        }
        let q = r.coeff(Monomial::new(dr, 0)) / &lb;
        r = &r - &b.mul_monomial(Monomial::new(dr - db, 0)).scale(&q);
    }
    r
}

fn gcd_in_g(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = rem_in_g(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// Monic gcd of the `h`-coefficients.
fn content(p: &ParamPoly) -> ParamPoly {
    let mut c = ParamPoly::zero();
    for coeff in h_coeffs(p) {
        if coeff.is_zero() {
            continue;
        }
        c = gcd_in_g(&c, &coeff);
        if c.as_constant().is_some() {
            return ParamPoly::one();
        }
    }
    c
}

fn primitive_part(p: &ParamPoly) -> ParamPoly {
    if p.is_zero() {
        return ParamPoly::zero();
    }
    let c = content(p);
    let pp = p.div_exact(&c).expect("content divides its polynomial");
    monic(&pp)
}

/// Pseudo-remainder of `a` by `b` in `h`.
fn pseudo_rem(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let (db, lb) = lead_in_h(b);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = lead_in_h(&r);
        if dr < db {
            break;
        }
        let shifted = (b * &lr).mul_monomial(Monomial::new(0, dr - db));
        r = &(&r * &lb) - &shifted;
    }
    r
}

/// Monic gcd of two parameter polynomials. `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return ParamPoly::one();
    }
    let c = gcd_in_g(&content(a), &content(b));
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.degree_h() < y.degree_h() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    monic(&(&c * &primitive_part(&x)))
}
