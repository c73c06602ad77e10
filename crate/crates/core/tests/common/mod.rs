//! Helpers shared by the integration tests, including an independent
//! high-precision numeric Wronskian used as an oracle for the symbolic one.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use maya_jacobi::algebra::{rat, Rational};
use maya_jacobi::domain::Point;
use maya_jacobi::{State, StateTuple, StateType};
use rand::Rng;

pub const PREC: usize = 200;
const RM: RoundingMode = RoundingMode::ToEven;

/// Random generic parameters. The denominators 7 and 11 keep `g`, `h`,
/// `g + h` and `g - h` away from the integers and half-integers.
pub fn random_point<R: Rng>(rng: &mut R) -> Point {
    loop {
        let g = rat(rng.random_range(15..=90), 7);
        let h = rat(rng.random_range(20..=130), 11);
        if let Ok(p) = Point::new(g, h) {
            return p;
        }
    }
}

pub struct Numeric {
    cc: Consts,
}

impl Default for Numeric {
    fn default() -> Self {
        Numeric {
            cc: Consts::new().expect("constants cache"),
        }
    }
}

type Series = Vec<BigFloat>;

impl Numeric {
    pub fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, PREC, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, PREC, RM, &mut self.cc);
        n.div(&d, PREC, RM)
    }

    fn int(&mut self, k: i64) -> BigFloat {
        BigFloat::from_i64(k, PREC)
    }

    fn mul(a: &Series, b: &Series) -> Series {
        let n = a.len();
        (0..n)
            .map(|k| {
                (0..=k).fold(BigFloat::from_i64(0, PREC), |acc, i| {
                    acc.add(&a[i].mul(&b[k - i], PREC, RM), PREC, RM)
                })
            })
            .collect()
    }

    fn lin(a: &Series, ca: &BigFloat, b: &Series, cb: &BigFloat) -> Series {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.mul(ca, PREC, RM).add(&y.mul(cb, PREC, RM), PREC, RM))
            .collect()
    }

    /// `u^a` for a series with positive constant term:
    /// `f_n = sum_{k=1}^n ((a + 1) k - n) u_k f_{n-k} / (n u_0)`.
    fn pow(&mut self, u: &Series, a: &BigFloat) -> Series {
        let mut f = vec![u[0].pow(a, PREC, RM, &mut self.cc)];
        let a1 = a.add(&self.int(1), PREC, RM);
        for n in 1..u.len() {
            let mut acc = self.int(0);
            for k in 1..=n {
                let w = a1.mul(&self.int(k as i64), PREC, RM).sub(&self.int(n as i64), PREC, RM);
                acc = acc.add(&w.mul(&u[k], PREC, RM).mul(&f[n - k], PREC, RM), PREC, RM);
            }
            let den = u[0].mul(&self.int(n as i64), PREC, RM);
            f.push(acc.div(&den, PREC, RM));
        }
        f
    }

    /// Standard Jacobi `P_n^{(al, be)}` of a series via the three-term recurrence.
    fn jacobi(&mut self, n: u32, al: &BigFloat, be: &BigFloat, x: &Series) -> Series {
        let len = x.len();
        let one = self.int(1);
        let two = self.int(2);
        let mut unit = vec![self.int(0); len];
        unit[0] = one.clone();
        if n == 0 {
            return unit;
        }
        let ab = al.add(be, PREC, RM);
        // P_1 = (al + 1) + (al + be + 2)(x - 1)/2
        let half_slope = ab.add(&two, PREC, RM).div(&two, PREC, RM);
        let c0 = al.add(&one, PREC, RM).sub(&half_slope, PREC, RM);
        let mut prev = unit.clone();
        let mut cur = Self::lin(&unit, &c0, x, &half_slope);
        for k in 2..=n as i64 {
            let k2ab = self.int(2 * k).add(&ab, PREC, RM);
            let lead = self
                .int(2 * k)
                .mul(&self.int(k).add(&ab, PREC, RM), PREC, RM)
                .mul(&k2ab.sub(&two, PREC, RM), PREC, RM);
            let a1 = k2ab.sub(&one, PREC, RM);
            let xcoef = a1.mul(&k2ab, PREC, RM).mul(&k2ab.sub(&two, PREC, RM), PREC, RM);
            let ccoef = a1.mul(&al.mul(al, PREC, RM).sub(&be.mul(be, PREC, RM), PREC, RM), PREC, RM);
            let pcoef = two
                .mul(&self.int(k - 1).add(al, PREC, RM), PREC, RM)
                .mul(&self.int(k - 1).add(be, PREC, RM), PREC, RM)
                .mul(&k2ab, PREC, RM)
                .neg();
            let xp = Self::mul(x, &cur);
            let mut next = Self::lin(&xp, &xcoef, &cur, &ccoef);
            next = Self::lin(&next, &one, &prev, &pcoef);
            next = next.iter().map(|c| c.div(&lead, PREC, RM)).collect();
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Exponents and Jacobi parameters of a state, straight from the definitions.
    fn state_data(&mut self, s: State, g: &BigFloat, h: &BigFloat) -> (BigFloat, BigFloat, BigFloat, BigFloat) {
        let one = self.int(1);
        let half = one.div(&self.int(2), PREC, RM);
        let (flip_g, flip_h) = match s.kind {
            StateType::N => (false, false),
            StateType::I => (false, true),
            StateType::II => (true, false),
            StateType::III => (true, true),
        };
        let (a, al) = if flip_g {
            (one.sub(g, PREC, RM), half.sub(g, PREC, RM))
        } else {
            (g.clone(), g.sub(&half, PREC, RM))
        };
        let (b, be) = if flip_h {
            (one.sub(h, PREC, RM), half.sub(h, PREC, RM))
        } else {
            (h.clone(), h.sub(&half, PREC, RM))
        };
        (a, b, al, be)
    }

    /// `W[t](x0)` where `cos 2 x0 = eta`, from Taylor expansions around `x0`.
    pub fn wronskian(&mut self, t: &StateTuple, g: &Rational, h: &Rational, eta: &Rational) -> BigFloat {
        let n = t.len();
        if n == 0 {
            return self.int(1);
        }
        let (gf, hf, ef) = (self.rational(g), self.rational(h), self.rational(eta));
        let one = self.int(1);
        let two = self.int(2);
        let s0 = one.sub(&ef, PREC, RM).div(&two, PREC, RM).sqrt(PREC, RM);
        let c0 = one.add(&ef, PREC, RM).div(&two, PREC, RM).sqrt(PREC, RM);
        // cos t and sin t around 0
        let mut cos_t = Vec::with_capacity(n);
        let mut sin_t = Vec::with_capacity(n);
        let mut fact = self.int(1);
        for k in 0..n {
            if k > 0 {
                fact = fact.mul(&self.int(k as i64), PREC, RM);
            }
            let inv = one.div(&fact, PREC, RM);
            let sign = if (k / 2) % 2 == 0 { inv.clone() } else { inv.neg() };
            let zero = self.int(0);
            if k % 2 == 0 {
                cos_t.push(sign);
                sin_t.push(zero);
            } else {
                cos_t.push(zero);
                sin_t.push(sign);
            }
        }
        let sin = Self::lin(&cos_t, &s0, &sin_t, &c0);
        let cos = Self::lin(&cos_t, &c0, &sin_t, &s0.neg());
        let eta_s = Self::lin(&Self::mul(&cos, &cos), &one, &Self::mul(&sin, &sin), &one.neg());

        let mut matrix: Vec<Vec<BigFloat>> = Vec::with_capacity(n);
        for &s in t.states() {
            let (a, b, al, be) = self.state_data(s, &gf, &hf);
            let p = self.jacobi(s.index, &al, &be, &eta_s);
            let f = Self::mul(&Self::mul(&self.pow(&sin, &a), &self.pow(&cos, &b)), &p);
            // row of derivatives f^(j)(x0) = j! f_j
            let mut fact = self.int(1);
            let mut row = Vec::with_capacity(n);
            for (j, c) in f.iter().enumerate() {
                if j > 0 {
                    fact = fact.mul(&self.int(j as i64), PREC, RM);
                }
                row.push(c.mul(&fact, PREC, RM));
            }
            matrix.push(row);
        }
        determinant(matrix)
    }

    /// `(sin x0)^A (cos x0)^B P(eta)` for exact rational data.
    pub fn quasi_value(&mut self, a: &Rational, b: &Rational, p_eta: &Rational, eta: &Rational) -> BigFloat {
        let one = self.int(1);
        let two = self.int(2);
        let ef = self.rational(eta);
        let s0 = one.sub(&ef, PREC, RM).div(&two, PREC, RM).sqrt(PREC, RM);
        let c0 = one.add(&ef, PREC, RM).div(&two, PREC, RM).sqrt(PREC, RM);
        let (af, bf, pf) = (self.rational(a), self.rational(b), self.rational(p_eta));
        s0.pow(&af, PREC, RM, &mut self.cc)
            .mul(&c0.pow(&bf, PREC, RM, &mut self.cc), PREC, RM)
            .mul(&pf, PREC, RM)
    }

    /// `|a - b| / |b|` as an `f64` (only the magnitude matters).
    pub fn relative_error(&mut self, a: &BigFloat, b: &BigFloat) -> f64 {
        let d = a.sub(b, PREC, RM).abs();
        let r = d.div(&b.abs(), PREC, RM);
        r.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
    }
}

/// Gaussian elimination with partial pivoting.
fn determinant(mut m: Vec<Vec<BigFloat>>) -> BigFloat {
    let n = m.len();
    let mut det = BigFloat::from_i64(1, PREC);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty");
        if m[p][k].is_zero() {
            return BigFloat::from_i64(0, PREC);
        }
        if p != k {
            m.swap(p, k);
            det = det.neg();
        }
        det = det.mul(&m[k][k], PREC, RM);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = row[k].div(&pivot[k], PREC, RM);
            for (x, p) in row.iter_mut().zip(pivot).skip(k) {
                *x = x.sub(&p.mul(&f, PREC, RM), PREC, RM);
            }
        }
    }
    det
}
