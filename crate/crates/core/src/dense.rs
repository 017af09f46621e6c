//! Dense univariate polynomials over Q and over F_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeff::{add_mod, inv_mod, mul_mod, pow_mod, rational_mod, sub_mod, Rational};
use crate::error::{Error, Result};

/// Ascending coefficients `c_0 .. c_d`, trimmed so the last is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dense(Vec<Rational>);

impl Dense {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Dense(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    pub fn zero() -> Self {
        Dense(Vec::new())
    }

    pub fn one() -> Self {
        Dense(vec![Rational::one()])
    }

    /// `v - r`
    pub fn linear_root(r: &Rational) -> Self {
        Dense(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let n = self.0.len().max(o.0.len());
        Dense::new(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_else(Rational::zero)
                        + o.0.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Dense {
        Dense(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Dense) -> Dense {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        if self.is_zero() || o.is_zero() {
            return Dense::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Dense::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Dense {
        Dense::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn divrem(&self, d: &Dense) -> Result<(Dense, Dense)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return Ok((Dense::zero(), self.clone()));
        }
        let inv = Rational::one() / d.lc();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Dense::new(q), Dense::new(r)))
    }

    pub fn rem(&self, d: &Dense) -> Result<Dense> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Dense {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Rational::one() / self.lc();
        self.scale(&inv)
    }

    /// Monic gcd; errors when both inputs vanish.
    pub fn gcd(&self, o: &Dense) -> Result<Dense> {
        if self.is_zero() && o.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.primitive_scaled();
        }
        Ok(a.monic())
    }

    /// A rescaled copy with small integer-like coefficients, to slow growth in Euclid.
    fn primitive_scaled(&self) -> Dense {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Dense::new(ints.into_iter().map(|c| Rational::new(c, g.clone())).collect())
    }

    pub fn derivative(&self) -> Dense {
        Dense::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn squarefree_part(&self) -> Dense {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative()).expect("nonzero input");
        self.divrem(&g).expect("gcd nonzero").0.monic()
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Dense) -> Result<Dense> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(q)
    }

    pub fn to_integer_primitive(&self) -> Vec<BigInt> {
        self.primitive_scaled().0.iter().map(|c| c.to_integer()).collect()
    }

    /// Cauchy bound: all complex roots lie strictly inside `|z| < bound`.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.0[..self.0.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    pub fn to_modp(&self, p: u64) -> Option<Vec<u64>> {
        let v: Option<Vec<u64>> = self.0.iter().map(|c| rational_mod(c, p)).collect();
        v.map(|mut v| {
            trim(&mut v);
            v
        })
    }
}

impl std::fmt::Display for Dense {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vars = crate::mpoly::vars_from(&["v"]);
        let terms = self
            .0
            .iter()
            .enumerate()
            .map(|(i, c)| (crate::mpoly::Monomial::var(1, 0, i as u16), c.clone()))
            .collect();
        write!(f, "{}", crate::mpoly::QPoly::from_terms(vars, terms))
    }
}

// ---- F_p[t] on ascending coefficient vectors ----

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn modp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

pub fn modp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub fn modp_divrem(a: &[u64], d: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let inv = inv_mod(d[dd], p).expect("leading coefficient invertible");
    let mut q = vec![0u64; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = mul_mod(r[i + dd], inv, p);
        if c != 0 {
            for (j, &dc) in d.iter().enumerate() {
                r[i + j] = sub_mod(r[i + j], mul_mod(c, dc, p), p);
            }
        }
        q[i] = c;
    }
    r.truncate(dd);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn modp_monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p).unwrap();
            a.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

pub fn modp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = modp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    modp_monic(&a, p)
}

pub fn modp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect();
    trim(&mut out);
    out
}

pub fn modp_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = modp_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = modp_divrem(&modp_mul(&acc, &b, p), m, p).1;
        }
        b = modp_divrem(&modp_mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    acc
}

/// `t^(p^k) mod f`, by repeated p-th powering.
fn frobenius_power(f: &[u64], k: usize, p: u64) -> Vec<u64> {
    let mut x = vec![0, 1];
    for _ in 0..k {
        x = modp_powmod(&x, p as u128, f, p);
    }
    x
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test over F_p.
pub fn modp_is_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    let Some(n) = f.len().checked_sub(1) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = modp_monic(&f, p);
    let x = vec![0u64, 1];
    if !modp_sub(&frobenius_power(&f, n, p), &x, p).is_empty() {
        return false;
    }
    for q in prime_factors(n) {
        let h = modp_sub(&frobenius_power(&f, n / q, p), &x, p);
        let g = modp_gcd(&f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Resultant over F_p via the Euclidean algorithm, with formal degrees `da`, `db`.
pub fn modp_resultant(a: &[u64], da: usize, b: &[u64], db: usize, p: u64) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.resize(da + 1, 0);
    b.resize(db + 1, 0);
    let mut m = crate::matrix::sylvester_scalar(&a, &b, p);
    crate::matrix::det_modp(&mut m, p)
}

/// Evaluates at `x`.
pub fn modp_eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

pub fn modp_pow(a: u64, e: u64, p: u64) -> u64 {
    pow_mod(a, e, p)
}
