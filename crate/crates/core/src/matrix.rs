//! Determinants: fraction-free Bareiss over polynomial and integer entries,
//! Gaussian elimination over F_p.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::{inv_mod, mul_mod, sub_mod, Coeff};
use crate::mpoly::MPoly;

/// Sylvester matrix of two scalar coefficient vectors (ascending, formal
/// degrees `a.len()-1` and `b.len()-1`); `a`'s shifted rows come first.
pub fn sylvester_scalar<T: Clone + Default>(a: &[T], b: &[T], _p: u64) -> Vec<Vec<T>> {
    sylvester_rows(a, b, b.len() - 1, a.len() - 1)
}

/// Generic Sylvester layout with `rows_a` rows of `a` and `rows_b` rows of `b`.
pub fn sylvester_rows<T: Clone + Default>(a: &[T], b: &[T], rows_a: usize, rows_b: usize) -> Vec<Vec<T>> {
    let n = a.len() - 1;
    let m = b.len() - 1;
    let width = (n + rows_a).max(m + rows_b);
    let mut out = Vec::with_capacity(rows_a + rows_b);
    for i in 0..rows_a {
        let mut row = vec![T::default(); width];
        for k in 0..=n {
            row[i + k] = a[n - k].clone();
        }
        out.push(row);
    }
    for i in 0..rows_b {
        let mut row = vec![T::default(); width];
        for k in 0..=m {
            row[i + k] = b[m - k].clone();
        }
        out.push(row);
    }
    out
}

/// Determinant over F_p (destroys the input).
pub fn det_modp(m: &mut [Vec<u64>], p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if piv != c {
            m.swap(piv, c);
            det = sub_mod(0, det, p);
        }
        let pv = m[c][c];
        det = mul_mod(det, pv, p);
        let inv = inv_mod(pv, p).expect("p prime");
        for r in c + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            let f = mul_mod(m[r][c], inv, p);
            let (top, bottom) = m.split_at_mut(r);
            let src = &top[c];
            let dst = &mut bottom[0];
            for k in c..n {
                dst[k] = sub_mod(dst[k], mul_mod(f, src[k], p), p);
            }
        }
    }
    det
}

/// Fraction-free Bareiss elimination over an exact ring.
pub fn bareiss_scalar<C: Coeff>(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    if n == 0 {
        return C::one();
    }
    let mut sign = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return C::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul_ref(&m[k][k]).sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = C::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg_ref()
    } else {
        d
    }
}

pub fn det_bigint(m: Vec<Vec<BigInt>>) -> BigInt {
    bareiss_scalar(m)
}

/// Fraction-free Bareiss elimination with polynomial entries.
pub fn bareiss_poly<C: Coeff>(mut m: Vec<Vec<MPoly<C>>>) -> MPoly<C> {
    let n = m.len();
    assert!(n > 0, "empty matrix");
    let vars = m[0][0].vars().clone();
    let mut sign = false;
    let mut prev = MPoly::one(vars.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pick the sparsest nonzero pivot below
            match (k + 1..n).filter(|&r| !m[r][k].is_zero()).min_by_key(|&r| m[r][k].len()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return MPoly::zero(vars),
            }
        }
        let pivot = m[k][k].clone();
        let row_k = m[k].clone();
        let prev_is_one = prev.constant_value().is_some_and(|c: C| c.is_one());
        let rows: Vec<Vec<MPoly<C>>> = {
            use rayon::prelude::*;
            m[k + 1..]
                .par_iter()
                .map(|row| {
                    let mut out = row.clone();
                    for j in k + 1..n {
                        let t = if row[k].is_zero() {
                            row[j].mul(&pivot)
                        } else {
                            row[j].mul(&pivot).sub(&row[k].mul(&row_k[j]))
                        };
                        out[j] = if prev_is_one || t.is_zero() {
                            t
                        } else {
                            t.exact_div(&prev).expect("Bareiss division is exact")
                        };
                    }
                    out[k] = MPoly::zero(row[k].vars().clone());
                    out
                })
                .collect()
        };
        for (i, r) in rows.into_iter().enumerate() {
            m[k + 1 + i] = r;
        }
        prev = pivot;
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

pub fn is_zero_matrix<C: Coeff>(m: &[Vec<C>]) -> bool {
    m.iter().all(|r| r.iter().all(|c| c.is_zero()))
}

pub fn bigint_is_zero(x: &BigInt) -> bool {
    x.is_zero()
}
