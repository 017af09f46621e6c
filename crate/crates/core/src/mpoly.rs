//! Sparse multivariate polynomials.
//!
//! Terms are kept sorted in descending lexicographic order with the first
//! declared variable most significant, so `x0` leads in every display.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::coeff::{add_mod, mul_mod, pow_mod, rational_mod, Coeff, Rational};
use crate::error::{Error, Result};

pub type Exps = SmallVec<[u16; 12]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Exps);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(n);
        m.0[i] = e;
        m
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if !o.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }
}

/// Positive integer weights, one per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem(Vec<u32>);

impl WeightSystem {
    pub fn new(w: Vec<u32>) -> Result<Self> {
        if w.iter().any(|&x| x == 0) {
            return Err(Error::InvalidParameters("weights must be positive".into()));
        }
        Ok(WeightSystem(w))
    }

    pub fn unit(n: usize) -> Self {
        WeightSystem(vec![1; n])
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    pub fn of(&self, m: &Monomial) -> u64 {
        m.0.iter().zip(&self.0).map(|(&e, &w)| e as u64 * w as u64).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(u64),
    NotHomogeneous,
}

pub type Vars = Arc<[String]>;

pub fn vars_from<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// `x0, x1, ..., x{n-1}` with the given prefix.
pub fn indexed_vars(prefix: &str, range: std::ops::Range<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

#[derive(Clone, Debug)]
pub struct MPoly<C> {
    vars: Vars,
    terms: Vec<(Monomial, C)>,
}

pub type QPoly = MPoly<Rational>;
pub type ZPoly = MPoly<BigInt>;

impl<C: Coeff> PartialEq for MPoly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.vars == o.vars && self.terms == o.terms
    }
}
impl<C: Coeff> Eq for MPoly<C> {}

impl<C: Coeff> MPoly<C> {
    pub fn zero(vars: Vars) -> Self {
        MPoly { vars, terms: Vec::new() }
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        let n = vars.len();
        Self::from_terms(vars, vec![(Monomial::one(n), c)])
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn from_i64(vars: Vars, c: i64) -> Self {
        Self::constant(vars, C::from_i64(c))
    }

    pub fn var(vars: Vars, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(vars, i))
    }

    pub fn var_at(vars: Vars, i: usize) -> Self {
        let n = vars.len();
        MPoly { vars, terms: vec![(Monomial::var(n, i, 1), C::one())] }
    }

    /// Builds a canonical polynomial, merging duplicates and dropping zeros.
    pub fn from_terms(vars: Vars, terms: Vec<(Monomial, C)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), vars.len());
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => lc.add_assign_ref(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c))
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        MPoly { vars, terms: out }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    fn check_vars(&self, o: &Self) -> Result<()> {
        if self.vars != o.vars {
            return Err(Error::ArityMismatch(self.vars.to_vec(), o.vars.to_vec()));
        }
        Ok(())
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = match (self.terms.get(i), o.terms.get(j)) {
                (Some(a), Some(b)) => b.0.cmp(&a.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (m, c) = &o.terms[j];
                    out.push((m.clone(), if negate { c.neg_ref() } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        self.terms[i].1.sub_ref(&o.terms[j].1)
                    } else {
                        self.terms[i].1.add_ref(&o.terms[j].1)
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly { vars: self.vars.clone(), terms: out }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_vars(o)?;
        Ok(self.merge(o, false))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_vars(o)?;
        Ok(self.merge(o, true))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_vars(o)?;
        Ok(self.mul_unchecked(o))
    }

    /// Panics on mismatched variables; use the `try_` forms for checked input.
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("variable mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("variable mismatch")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("variable mismatch")
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let (small, big) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            let terms = big
                .terms
                .iter()
                .filter_map(|(bm, bc)| {
                    let p = c.mul_ref(bc);
                    (!p.is_zero()).then(|| (m.mul(bm), p))
                })
                .collect();
            return MPoly { vars: self.vars.clone(), terms };
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(big.terms.len() * 2);
        for (am, ac) in &small.terms {
            for (bm, bc) in &big.terms {
                let m = am.mul(bm);
                let p = ac.mul_ref(bc);
                match acc.get_mut(&m) {
                    Some(c) => c.add_assign_ref(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let p = c.mul_ref(k);
                    (!p.is_zero()).then(|| (m.clone(), p))
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, k: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(tm, c)| {
                let p = c.mul_ref(k);
                (!p.is_zero()).then(|| (tm.mul(m), p))
            })
            .collect();
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Divides every coefficient exactly by `k`.
    pub fn div_scalar_exact(&self, k: &C) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), c.div_exact(k).ok_or(Error::NotDivisible)?));
        }
        Ok(MPoly { vars: self.vars.clone(), terms })
    }

    /// Exact multivariate division; errors if any remainder survives.
    pub fn exact_div(&self, g: &Self) -> Result<Self> {
        self.check_vars(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.vars.clone()));
        }
        if g.terms.len() == 1 {
            let (gm, gc) = &g.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let q = m.div(gm).ok_or(Error::NotDivisible)?;
                terms.push((q, c.div_exact(gc).ok_or(Error::NotDivisible)?));
            }
            return Ok(MPoly { vars: self.vars.clone(), terms });
        }
        let (gm, gc) = &g.terms[0];
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(gm).ok_or(Error::NotDivisible)?;
            let qc = c.div_exact(gc).ok_or(Error::NotDivisible)?;
            for (tm, tc) in &g.terms[1..] {
                let pm = tm.mul(&qm);
                let pc = tc.mul_ref(&qc);
                match rem.get_mut(&pm) {
                    Some(v) => {
                        *v = v.sub_ref(&pc);
                        if v.is_zero() {
                            rem.remove(&pm);
                        }
                    }
                    None => {
                        rem.insert(pm, pc.neg_ref());
                    }
                }
            }
            quot.push((qm, qc));
        }
        Ok(MPoly { vars: self.vars.clone(), terms: quot })
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.exact_div(self).is_ok()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[i] as u32).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn weighted_degree(&self, w: &WeightSystem) -> Result<WeightedDegree> {
        if w.0.len() != self.arity() {
            return Err(Error::PointArity { expected: self.arity(), got: w.0.len() });
        }
        let mut it = self.terms.iter().map(|(m, _)| w.of(m));
        let d = it.next().ok_or(Error::ZeroPolynomial)?;
        if it.all(|e| e == d) {
            Ok(WeightedDegree::Homogeneous(d))
        } else {
            Ok(WeightedDegree::NotHomogeneous)
        }
    }

    pub fn max_weighted_degree(&self, w: &WeightSystem) -> u64 {
        self.terms.iter().map(|(m, _)| w.of(m)).max().unwrap_or(0)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = m2.0[i];
                m2.0[i] -= 1;
                (m2, c.mul_ref(&C::from_i64(e as i64)))
            })
            .collect();
        Self::from_terms(self.vars.clone(), terms)
    }

    pub fn derivative_by(&self, name: &str) -> Result<Self> {
        Ok(self.derivative(self.index_of(name)?))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(
            self.vars.clone(),
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        )
    }

    pub fn to_q(&self) -> QPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.to_rational())).collect(),
        }
    }

    /// Re-expresses over `new_vars`, which must contain every used variable.
    pub fn embed(&self, new_vars: &Vars) -> Result<Self> {
        let map: Vec<Option<usize>> =
            self.vars.iter().map(|v| new_vars.iter().position(|w| w == v)).collect();
        let n = new_vars.len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = Monomial::one(n);
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    let j = map[i].ok_or_else(|| Error::UnknownVariable(self.vars[i].clone()))?;
                    e.0[j] = x;
                }
            }
            terms.push((e, c.clone()));
        }
        Ok(Self::from_terms(new_vars.clone(), terms))
    }

    /// Renames variables positionally; the new list must have the same length.
    pub fn rename(&self, new_vars: &Vars) -> Result<Self> {
        if new_vars.len() != self.arity() {
            return Err(Error::PointArity { expected: self.arity(), got: new_vars.len() });
        }
        Ok(MPoly { vars: new_vars.clone(), terms: self.terms.clone() })
    }

    /// Substitutes `subs[i]` for variable `i`; all substitutes share one variable set.
    pub fn compose(&self, subs: &[MPoly<C>]) -> Result<MPoly<C>> {
        if subs.len() != self.arity() {
            return Err(Error::PointArity { expected: self.arity(), got: subs.len() });
        }
        let target = subs
            .first()
            .map(|s| s.vars.clone())
            .unwrap_or_else(|| Vec::<String>::new().into());
        for s in subs {
            if s.vars != target {
                return Err(Error::ArityMismatch(s.vars.to_vec(), target.to_vec()));
            }
        }
        let mut powers: Vec<Vec<MPoly<C>>> = subs.iter().map(|s| vec![MPoly::one(s.vars.clone()), s.clone()]).collect();
        let mut acc = MPoly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&subs[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e as usize]);
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Substitutes a constant for variable `i`, keeping the variable list.
    pub fn substitute_const(&self, i: usize, value: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = m2.0[i];
                m2.0[i] = 0;
                (m2, c.mul_ref(&value.pow(e as u32)))
            })
            .collect();
        Self::from_terms(self.vars.clone(), terms)
    }

    /// Drops variables not in `keep`; they must not occur.
    pub fn restrict_vars(&self, keep: &Vars) -> Result<Self> {
        self.embed(keep)
    }

    /// Substitutes constants for the listed variables and removes them.
    pub fn specialize(&self, assign: &[(usize, C)]) -> Self {
        let mut p = self.clone();
        for (i, v) in assign {
            p = p.substitute_const(*i, v);
        }
        let drop: Vec<usize> = assign.iter().map(|(i, _)| *i).collect();
        let keep: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        p.embed(&keep.into()).expect("specialised variables removed")
    }

    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.arity() {
            return Err(Error::PointArity { expected: self.arity(), got: point.len() });
        }
        let mut cache: Vec<Vec<C>> = point.iter().map(|x| vec![C::one(), x.clone()]).collect();
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul_ref(&point[i]);
                    cache[i].push(next);
                }
                t = t.mul_ref(&cache[i][e as usize]);
            }
            acc.add_assign_ref(&t);
        }
        Ok(acc)
    }

    /// Evaluates modulo `p`; `None` if a coefficient denominator vanishes mod p.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Result<Option<u64>> {
        if point.len() != self.arity() {
            return Err(Error::PointArity { expected: self.arity(), got: point.len() });
        }
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let Some(mut t) = rational_mod(&c.to_rational(), p) else {
                return Ok(None);
            };
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = mul_mod(t, pow_mod(point[i], e as u64, p), p);
                }
            }
            acc = add_mod(acc, t, p);
        }
        Ok(Some(acc))
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .iter()
            .map(|(_, c)| c.to_rational().abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl QPoly {
    /// `Some` when every coefficient is an integer.
    pub fn to_z(&self) -> Option<ZPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if !c.denom().is_one() {
                return None;
            }
            terms.push((m.clone(), c.numer().clone()));
        }
        Some(MPoly { vars: self.vars.clone(), terms })
    }

    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    pub fn from_z(p: &ZPoly) -> QPoly {
        p.to_q()
    }
}

impl ZPoly {
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
    }

    /// Sum of absolute values of the coefficients.
    pub fn norm1(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).sum()
    }

    /// Images of the coefficients modulo `p` with monomials, for fast repeated evaluation.
    pub fn reduce_mod(&self, p: u64) -> Vec<(Monomial, u64)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), crate::coeff::bigint_mod(c, p)))
            .filter(|(_, c)| *c != 0)
            .collect()
    }
}
