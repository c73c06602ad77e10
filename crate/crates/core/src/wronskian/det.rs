//! Determinants of matrices over `C[eta]`.

use crate::algebra::{EtaPoly, Ring};

pub type Matrix<C> = Vec<Vec<EtaPoly<C>>>;

fn check_square<C: Ring>(m: &Matrix<C>) {
    assert!(m.iter().all(|row| row.len() == m.len()), "matrix is not square");
}

/// Fraction-free Gaussian elimination. Every intermediate division is exact
/// in `C[eta]`, so no fractions of parameter polynomials ever appear.
pub fn bareiss<C: Ring>(m: &Matrix<C>) -> EtaPoly<C> {
    check_square(m);
    let n = m.len();
    if n == 0 {
        return EtaPoly::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = EtaPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return EtaPoly::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_div(&prev).expect("fraction-free division is exact");
            }
            a[i][k] = EtaPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Laplace expansion along the first column, memoized over row subsets.
/// Costs `n 2^(n-1)` multiplications; meant for small `n`.
pub fn cofactor<C: Ring>(m: &Matrix<C>) -> EtaPoly<C> {
    check_square(m);
    let n = m.len();
    assert!(n < 20, "cofactor expansion is exponential in the size");
    // minors[mask] = det of the rows in `mask` against the last popcount(mask) columns
    let mut minors: Vec<Option<EtaPoly<C>>> = vec![None; 1 << n];
    minors[0] = Some(EtaPoly::one());
    for mask in 1usize..(1 << n) {
        let size = mask.count_ones() as usize;
        let col = n - size;
        let mut acc = EtaPoly::zero();
        let mut sign_pos = true;
        for row in 0..n {
            if mask & (1 << row) == 0 {
                continue;
            }
            let sub = minors[mask & !(1 << row)].as_ref().expect("smaller minors first");
            let term = &m[row][col] * sub;
            acc = if sign_pos { &acc + &term } else { &acc - &term };
            sign_pos = !sign_pos;
        }
        minors[mask] = Some(acc);
    }
    minors.pop().flatten().expect("full minor")
}

/// Below this size the division-free expansion beats Bareiss on parameter
/// polynomial entries, whose exact divisions are expensive.
const COFACTOR_MAX: usize = 7;

/// Determinant; small sizes are cross-checked between both methods in debug
/// builds.
pub fn determinant<C: Ring>(m: &Matrix<C>) -> EtaPoly<C> {
    if m.len() <= COFACTOR_MAX {
        let d = cofactor(m);
        debug_assert!(m.len() > 3 || d == bareiss(m));
        d
    } else {
        bareiss(m)
    }
}
