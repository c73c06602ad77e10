//! JSON shapes: rationals as `"p/q"`, parameter polynomials as `[[i, j, "p/q"]]`
//! (coefficient of `g^i h^j`), quotients as `{"num", "den"}`, exponents as
//! `{"g", "h", "c"}`, and `eta`-polynomials as `[[k, coefficient]]`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, rational_to_string, AffineExp, EtaPoly, Monomial, ParamPoly, ParamRat, Rational, Ring};

/// `serialize_with` / `deserialize_with` helpers for a bare rational.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational '{}'", s)))
    }
}

#[derive(Serialize, Deserialize)]
struct Term(u32, u32, #[serde(with = "rational")] Rational);

impl Serialize for ParamPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self.terms().map(|(m, c)| Term(m.g, m.h, c.clone())).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        Ok(ParamPoly::from_terms(terms.into_iter().map(|Term(i, j, c)| (Monomial::new(i, j), c))))
    }
}

#[derive(Serialize, Deserialize)]
struct RatRepr {
    num: ParamPoly,
    den: ParamPoly,
}

impl Serialize for ParamRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatRepr {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatRepr::deserialize(d)?;
        if r.den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(ParamRat::new(r.num, r.den))
    }
}

#[derive(Serialize, Deserialize)]
struct AffineRepr {
    g: i64,
    h: i64,
    #[serde(with = "rational")]
    c: Rational,
}

impl Serialize for AffineExp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AffineRepr {
            g: self.cg,
            h: self.ch,
            c: self.c0.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineExp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = AffineRepr::deserialize(d)?;
        Ok(AffineExp::new(r.g, r.h, r.c))
    }
}

impl<C: Ring + Serialize> Serialize for EtaPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(usize, &C)> =
            self.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        terms.serialize(s)
    }
}

impl<'de, C: Ring + Deserialize<'de>> Deserialize<'de> for EtaPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<(usize, C)>::deserialize(d)?;
        let len = terms.iter().map(|(k, _)| k + 1).max().unwrap_or(0);
        let mut coeffs = vec![C::zero(); len];
        for (k, c) in terms {
            coeffs[k] = coeffs[k].plus(&c);
        }
        Ok(EtaPoly::new(coeffs))
    }
}
