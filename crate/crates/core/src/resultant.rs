//! Resultants and principal subresultant coefficients of parametric
//! univariate polynomials.

use num_bigint::BigInt;
use num_traits::One;

use crate::coeff::{Coeff, Rational};
use crate::error::{Error, Result};
use crate::matrix::{bareiss_poly, sylvester_rows};
use crate::mpoly::{MPoly, QPoly, ZPoly};
use crate::upoly::{QUPoly, UPoly, ZUPoly};

/// Matrices up to this size go through Bareiss; larger ones through the PRS.
pub const BAREISS_LIMIT: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Auto,
    Bareiss,
    Prs,
}

fn check_vars<C: Coeff>(a: &UPoly<C>, b: &UPoly<C>) -> Result<()> {
    if a.params() != b.params() || a.var() != b.var() {
        return Err(Error::ArityMismatch(a.params().to_vec(), b.params().to_vec()));
    }
    Ok(())
}

/// The `(n+m) x (n+m)` Sylvester matrix; the first `deg b` rows carry `a`.
pub fn sylvester<C: Coeff>(a: &UPoly<C>, b: &UPoly<C>) -> Result<Vec<Vec<MPoly<C>>>> {
    check_vars(a, b)?;
    let (n, m) = (a.declared_degree(), b.declared_degree());
    if n == 0 || m == 0 {
        return Err(Error::DegreeZero);
    }
    Ok(sub_sylvester(a, b, 0))
}

/// Rows `(m-j)` of `a` and `(n-j)` of `b`, truncated to the first `n+m-2j` columns.
fn sub_sylvester<C: Coeff>(a: &UPoly<C>, b: &UPoly<C>, j: usize) -> Vec<Vec<MPoly<C>>> {
    let (n, m) = (a.declared_degree(), b.declared_degree());
    let zero = MPoly::zero(a.params().clone());
    let rows = sylvester_rows(
        &wrap(a.coeffs()),
        &wrap(b.coeffs()),
        m - j,
        n - j,
    );
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .take(n + m - 2 * j)
                .map(|c| c.0.unwrap_or_else(|| zero.clone()))
                .collect()
        })
        .collect()
}

#[derive(Clone)]
struct Slot<C>(Option<MPoly<C>>);

impl<C> Default for Slot<C> {
    fn default() -> Self {
        Slot(None)
    }
}

fn wrap<C: Coeff>(c: &[MPoly<C>]) -> Vec<Slot<C>> {
    c.iter().map(|x| Slot(Some(x.clone()))).collect()
}

/// Resultant over the coefficient ring with the vanishing-leading-coefficient
/// reduction applied one step at a time.
pub fn resultant_with<C: Coeff>(a: &UPoly<C>, b: &UPoly<C>, algo: Algorithm) -> Result<MPoly<C>> {
    check_vars(a, b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let params = a.params().clone();
    let (n, m) = (a.declared_degree(), b.declared_degree());
    if n == 0 {
        return Ok(a.coeffs()[0].pow(m as u32));
    }
    if m == 0 {
        return Ok(b.coeffs()[0].pow(n as u32));
    }
    let (la, lb) = (a.leading(), b.leading());
    if la.is_zero() && lb.is_zero() {
        return Ok(MPoly::zero(params));
    }
    if lb.is_zero() {
        // Res(a, b) = a_n Res(a, b^)
        return Ok(la.mul(&resultant_with(a, &b.drop_leading(), algo)?));
    }
    if la.is_zero() {
        // Res(a, b) = (-1)^m b_m Res(a^, b)
        let r = lb.mul(&resultant_with(&a.drop_leading(), b, algo)?);
        return Ok(if m % 2 == 1 { r.neg() } else { r });
    }
    let use_bareiss = match algo {
        Algorithm::Bareiss => true,
        Algorithm::Prs => false,
        Algorithm::Auto => n + m <= BAREISS_LIMIT,
    };
    if use_bareiss {
        Ok(bareiss_poly(sub_sylvester(a, b, 0)))
    } else {
        Ok(prs_resultant(a, b))
    }
}

fn lc<C: Coeff>(p: &[MPoly<C>]) -> &MPoly<C> {
    p.last().unwrap()
}

fn trim<C: Coeff>(p: &mut Vec<MPoly<C>>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn deg<C: Coeff>(p: &[MPoly<C>]) -> usize {
    p.len() - 1
}

fn is_zero_vec<C: Coeff>(p: &[MPoly<C>]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem<C: Coeff>(a: &[MPoly<C>], b: &[MPoly<C>]) -> Vec<MPoly<C>> {
    let mut r = a.to_vec();
    let db = deg(b);
    let lb = lc(b).clone();
    let mut steps = (deg(a) + 1).saturating_sub(db) as u32;
    while r.len() > db && !is_zero_vec(&r) {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&bc.mul(&lr));
        }
        r.pop();
        trim(&mut r);
        steps = steps.saturating_sub(1);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    if steps > 0 && !is_zero_vec(&r) {
        let k = lb.pow(steps);
        for c in r.iter_mut() {
            *c = c.mul(&k);
        }
    }
    r
}

/// Subresultant PRS (no content extraction); leading coefficients must be nonzero.
fn prs_resultant<C: Coeff>(a: &UPoly<C>, b: &UPoly<C>) -> MPoly<C> {
    let params = a.params().clone();
    let one = MPoly::one(params.clone());
    let mut pa: Vec<MPoly<C>> = a.coeffs().to_vec();
    let mut pb: Vec<MPoly<C>> = b.coeffs().to_vec();
    let mut negate = false;
    if deg(&pa) < deg(&pb) {
        std::mem::swap(&mut pa, &mut pb);
        if deg(&pa) % 2 == 1 && deg(&pb) % 2 == 1 {
            negate = true;
        }
    }
    let mut g = one.clone();
    let mut h = one;
    while deg(&pb) > 0 {
        let delta = deg(&pa) - deg(&pb);
        if deg(&pa) % 2 == 1 && deg(&pb) % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&pa, &pb);
        pa = pb;
        if is_zero_vec(&r) {
            return MPoly::zero(params);
        }
        let div = g.mul(&h.pow(delta as u32));
        pb = r.iter().map(|c| c.exact_div(&div).expect("PRS division is exact")).collect();
        g = lc(&pa).clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32).exact_div(&h.pow(delta as u32 - 1)).expect("PRS division is exact")
        };
    }
    let da = deg(&pa) as u32;
    let lb = pb[0].clone();
    let res = if da == 0 {
        one_like(&lb)
    } else {
        lb.pow(da).exact_div(&h.pow(da - 1)).expect("PRS division is exact")
    };
    if negate {
        res.neg()
    } else {
        res
    }
}

fn one_like<C: Coeff>(p: &MPoly<C>) -> MPoly<C> {
    MPoly::one(p.vars().clone())
}

/// Scales rational inputs to integers; returns the integer pair and the
/// factors `(c, d)` with `c*a`, `d*b` integral.
fn clear_denominators(a: &QUPoly, b: &QUPoly) -> (ZUPoly, ZUPoly, BigInt, BigInt) {
    let den = |u: &QUPoly| {
        u.coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, &c.denominator_lcm()))
    };
    let (c, d) = (den(a), den(b));
    let sa = a.map_coeffs(|x| x.scale(&Rational::from_integer(c.clone())));
    let sb = b.map_coeffs(|x| x.scale(&Rational::from_integer(d.clone())));
    (sa.to_z().unwrap(), sb.to_z().unwrap(), c, d)
}

/// `Res_v(a, b)` over Q with the integer fast path.
pub fn resultant(a: &QUPoly, b: &QUPoly) -> Result<QPoly> {
    resultant_algo(a, b, Algorithm::Auto)
}

pub fn resultant_algo(a: &QUPoly, b: &QUPoly, algo: Algorithm) -> Result<QPoly> {
    check_vars(a, b)?;
    let (za, zb, c, d) = clear_denominators(a, b);
    let r = resultant_with(&za, &zb, algo)?.to_q();
    let (n, m) = (a.declared_degree() as u32, b.declared_degree() as u32);
    let k = Rational::from_integer(num_traits::pow(c, m as usize) * num_traits::pow(d, n as usize));
    Ok(if k.is_one() { r } else { r.scale(&(Rational::one() / k)) })
}

pub fn resultant_z(a: &ZUPoly, b: &ZUPoly) -> Result<ZPoly> {
    resultant_with(a, b, Algorithm::Auto)
}

/// `Res^(j)`: determinant of the first `n+m-2j` columns of the matrix with
/// `(m-j)` rows of `a` and `(n-j)` rows of `b`.
pub fn psc_with<C: Coeff>(a: &UPoly<C>, b: &UPoly<C>, j: usize) -> Result<MPoly<C>> {
    check_vars(a, b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (n, m) = (a.declared_degree(), b.declared_degree());
    if n == 0 || m == 0 {
        return Err(Error::DegreeZero);
    }
    if j > n.min(m) {
        return Err(Error::InvalidParameters(format!("subresultant index {j} out of range")));
    }
    if j == 0 {
        return resultant_with(a, b, Algorithm::Auto);
    }
    if n + m == 2 * j {
        return Ok(MPoly::one(a.params().clone()));
    }
    Ok(bareiss_poly(sub_sylvester(a, b, j)))
}

fn psc_q(a: &QUPoly, b: &QUPoly, j: usize) -> Result<QPoly> {
    let (za, zb, c, d) = clear_denominators(a, b);
    let (n, m) = (a.declared_degree(), b.declared_degree());
    let r = psc_with(&za, &zb, j)?.to_q();
    let k = Rational::from_integer(num_traits::pow(c, m - j) * num_traits::pow(d, n - j));
    Ok(if k.is_one() { r } else { r.scale(&(Rational::one() / k)) })
}

/// `Psc_v(a, b) = Res^(1)_v(a, b)`.
pub fn psc1(a: &QUPoly, b: &QUPoly) -> Result<QPoly> {
    psc_q(a, b, 1)
}

pub fn psc(a: &QUPoly, b: &QUPoly, j: usize) -> Result<QPoly> {
    psc_q(a, b, j)
}

/// `[Res^(0), ..., Res^(min(n,m))]`.
pub fn subresultant_chain(a: &QUPoly, b: &QUPoly) -> Result<Vec<QPoly>> {
    let k = a.declared_degree().min(b.declared_degree());
    (0..=k).map(|j| psc_q(a, b, j)).collect()
}

/// Discriminant-style helper: `Res_v(f, df/dv)`.
pub fn resultant_with_derivative(f: &QUPoly) -> Result<QPoly> {
    resultant(f, &f.derivative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::vars_from;
    use crate::parse::parse_q;
    use crate::upoly::qupoly_from;

    fn up(s: &str, vars: &[&str], main: &str) -> QUPoly {
        qupoly_from(&parse_q(s, &vars_from(vars)).unwrap(), main).unwrap()
    }

    #[test]
    fn cross_cap_pair() {
        let vars = ["x", "y", "z", "v"];
        let a = up("x*v - y", &vars, "v");
        let b = up("v^2 - z", &vars, "v");
        let m = sylvester(&a, &b).unwrap();
        let txt: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        assert_eq!(txt, vec![vec!["x", "-y", "0"], vec!["0", "x", "-y"], vec!["1", "0", "-z"]]);
        assert_eq!(resultant(&a, &b).unwrap().to_string(), "-x^2*z + y^2");
        assert_eq!(psc1(&a, &b).unwrap().to_string(), "x");
    }

    #[test]
    fn scalar_cases() {
        let vars = ["v", "c"];
        let a = up("v - 1", &vars, "v");
        let b = up("v - 2", &vars, "v");
        assert_eq!(resultant(&a, &b).unwrap().to_string(), "-1");
        let a = up("v - c", &vars, "v");
        assert!(resultant(&a, &a).unwrap().is_zero());
        let v = up("v", &vars, "v");
        assert!(resultant(&v, &v).unwrap().is_zero());
    }

    #[test]
    fn shared_double_factor() {
        let vars = ["v"];
        let a = up("(v - 1)^2*(v - 2)", &vars, "v");
        let b = up("(v - 1)^2*(v - 3)", &vars, "v");
        let chain = subresultant_chain(&a, &b).unwrap();
        assert_eq!(chain.len(), 4);
        assert!(chain[0].is_zero() && chain[1].is_zero());
        assert!(!chain[2].is_zero());
        assert_eq!(chain[3].to_string(), "1");
    }

    #[test]
    fn prs_agrees_with_bareiss() {
        let vars = ["v", "x", "y"];
        let a = up("x*v^4 + y*v^3 - 3*v + x*y + 1", &vars, "v");
        let b = up("v^3 + (x - y)*v^2 + 2*x", &vars, "v");
        let r1 = resultant_algo(&a, &b, Algorithm::Bareiss).unwrap();
        let r2 = resultant_algo(&a, &b, Algorithm::Prs).unwrap();
        assert_eq!(r1, r2);
        let r3 = resultant_algo(&b, &a, Algorithm::Prs).unwrap();
        // Res(b, a) = (-1)^(nm) Res(a, b) with n m = 12
        assert_eq!(r3, r1);
        let c = up("v^3 + x*v + 1", &vars, "v");
        let d = up("y*v^5 + v^2 - x", &vars, "v");
        assert_eq!(
            resultant_algo(&c, &d, Algorithm::Prs).unwrap(),
            resultant_algo(&c, &d, Algorithm::Bareiss).unwrap()
        );
        assert_eq!(
            resultant_algo(&d, &c, Algorithm::Prs).unwrap(),
            resultant_algo(&c, &d, Algorithm::Bareiss).unwrap().neg()
        );
    }

    #[test]
    fn rational_inputs_rescale() {
        let vars = ["v", "x"];
        let a = up("v^2 + x/4", &vars, "v");
        let b = up("2*v", &vars, "v");
        // Res(v^2 + x/4, 2v) = 4 * x/4 = x
        assert_eq!(resultant(&a, &b).unwrap().to_string(), "x");
    }

    #[test]
    fn vanishing_leading_coefficient() {
        let vars = ["v", "x"];
        let a = up("v^2 + x*v + 1", &vars, "v");
        let b = UPoly::from_mpoly_with_degree(&parse_q("v - x", &vars_from(&vars)).unwrap(), "v", 2).unwrap();
        let bh = up("v - x", &vars, "v");
        let r = resultant(&a, &b).unwrap();
        assert_eq!(r, a.leading().mul(&resultant(&a, &bh).unwrap()));
        let full = bareiss_poly(sub_sylvester(&a.to_z().unwrap(), &b.to_z().unwrap(), 0)).to_q();
        assert_eq!(r, full);
        let full2 = bareiss_poly(sub_sylvester(&b.to_z().unwrap(), &a.to_z().unwrap(), 0)).to_q();
        assert_eq!(resultant(&b, &a).unwrap(), full2);
    }
}
