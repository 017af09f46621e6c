//! Coefficient rings: integers, rationals and small prime fields.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// An exact commutative coefficient ring.
pub trait Coeff: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + Zero + One + 'static {
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: BigInt) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Exact quotient, `None` when `o` does not divide `self`.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn to_rational(&self) -> Rational;
    fn is_neg(&self) -> bool;

    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: BigInt) -> Self {
        v
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
}

impl Coeff for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational literal `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if Zero::is_zero(&d) {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Symmetric residue of `v` modulo `p`, in `[0, p)`.
pub fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let m = v.mod_floor(&BigInt::from(p));
    m.to_u64().unwrap_or(0)
}

pub fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
    let d = bigint_mod(q.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(q.numer(), p), inv_mod(d, p)?, p))
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= 1 << 32 {
        (a * b) % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, (a % p) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    if n < 1 << 20 {
        let mut d = 41;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        return true;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `start`, in descending order.
pub fn primes_descending(start: u64) -> impl Iterator<Item = u64> {
    (2..start).rev().filter(|&n| is_prime(n))
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    value: u64,
}

impl PrimeField {
    pub fn new(p: u64, value: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p, value: value.rem_euclid(p as i64) as u64 })
    }

    pub fn from_rational(q: &Rational, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let value = rational_mod(q, p).ok_or(Error::DivisionByZero)?;
        Ok(PrimeField { p, value })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
    pub fn value(&self) -> u64 {
        self.value
    }
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn symmetric(&self) -> i64 {
        if self.value > self.p / 2 {
            self.value as i64 - self.p as i64
        } else {
            self.value as i64
        }
    }

    pub fn add(self, o: Self) -> Self {
        PrimeField { p: self.p, value: add_mod(self.value, o.value, self.p) }
    }
    pub fn sub(self, o: Self) -> Self {
        PrimeField { p: self.p, value: sub_mod(self.value, o.value, self.p) }
    }
    pub fn mul(self, o: Self) -> Self {
        PrimeField { p: self.p, value: mul_mod(self.value, o.value, self.p) }
    }
    pub fn neg(self) -> Self {
        PrimeField { p: self.p, value: sub_mod(0, self.value, self.p) }
    }
    pub fn inv(self) -> Option<Self> {
        inv_mod(self.value, self.p).map(|value| PrimeField { p: self.p, value })
    }
}

impl std::fmt::Display for PrimeField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

/// Chinese remaindering of `(r mod m, v mod p)` into a residue modulo `m*p`.
pub fn crt_step(r: &BigInt, m: &BigInt, v: u64, p: u64) -> BigInt {
    let r_mod_p = bigint_mod(r, p);
    let m_mod_p = bigint_mod(m, p);
    let inv = inv_mod(m_mod_p, p).expect("moduli must be coprime");
    let t = mul_mod(sub_mod(v, r_mod_p, p), inv, p);
    r + m * BigInt::from(t)
}

/// Maps a residue in `[0, m)` to `(-m/2, m/2]`.
pub fn symmetric_lift(r: &BigInt, m: &BigInt) -> BigInt {
    let r = r.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(is_prime(2147483647));
        assert!(!is_prime(2147483649));
        assert_eq!(primes_descending(2147483648).next(), Some(2147483647));
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(15, 1).is_err());
        let a = PrimeField::new(7, -1).unwrap();
        assert_eq!(a.value(), 6);
        assert_eq!(a.inv().unwrap().value(), 6);
        assert_eq!(a.symmetric(), -1);
    }

    #[test]
    fn rational_reduction() {
        assert_eq!(rational_mod(&rat(1, 2), 7), Some(4));
        assert_eq!(rational_mod(&rat(1, 7), 7), None);
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn crt_recovers_negative() {
        let (p, q) = (101u64, 103u64);
        let v = -5000i64;
        let r = BigInt::from(v.rem_euclid(p as i64));
        let m = BigInt::from(p);
        let r2 = crt_step(&r, &m, v.rem_euclid(q as i64) as u64, q);
        assert_eq!(symmetric_lift(&r2, &BigInt::from(p * q)), BigInt::from(v));
    }
}
