use num_traits::{One, Signed, Zero};

use super::{EtaPoly, Rational};
use crate::error::{Error, Result};

fn sign_changes(chain: &[EtaPoly<Rational>], x: &Rational) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_count(p: &EtaPoly<Rational>, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    assert!(lo < hi, "empty interval");
    // square-free part, with any root sitting exactly on an endpoint removed
    let g = p.gcd(&p.derivative());
    let mut sf = p.div_rem(&g).0;
    for end in [lo, hi] {
        let linear = EtaPoly::new(vec![-end.clone(), Rational::one()]);
        if sf.eval(end).is_zero() {
            sf = sf.div_rem(&linear).0;
        }
    }
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    let a = sign_changes(&chain, lo);
    let b = sign_changes(&chain, hi);
    Ok(a - b)
}
