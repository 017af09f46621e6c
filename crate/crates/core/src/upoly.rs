//! Univariate polynomials with multivariate coefficients and a declared degree.

use crate::coeff::{Coeff, Rational};
use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::mpoly::{Monomial, MPoly, QPoly, Vars, ZPoly};

/// `c_0 + c_1 v + ... + c_n v^n` with `n` the declared (formal) degree.
///
/// The leading coefficient may be the zero polynomial.
#[derive(Clone, Debug)]
pub struct UPoly<C> {
    var: String,
    params: Vars,
    coeffs: Vec<MPoly<C>>,
}

impl<C: Coeff> PartialEq for UPoly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.var == o.var && self.params == o.params && self.coeffs == o.coeffs
    }
}
impl<C: Coeff> Eq for UPoly<C> {}

pub type QUPoly = UPoly<Rational>;
pub type ZUPoly = UPoly<num_bigint::BigInt>;

impl<C: Coeff> UPoly<C> {
    pub fn new(var: &str, params: Vars, coeffs: Vec<MPoly<C>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameters("a univariate polynomial needs a coefficient list".into()));
        }
        for c in &coeffs {
            if c.vars() != &params {
                return Err(Error::ArityMismatch(c.vars().to_vec(), params.to_vec()));
            }
        }
        Ok(UPoly { var: var.to_string(), params, coeffs })
    }

    /// Collects `f` in `main_var`; the declared degree is the actual degree.
    pub fn from_mpoly(f: &MPoly<C>, main_var: &str) -> Result<Self> {
        let k = f.index_of(main_var)?;
        let params: Vars = f
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, v)| v.clone())
            .collect::<Vec<_>>()
            .into();
        let deg = f.degree_in(k) as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in f.terms() {
            let e = m.0[k] as usize;
            let mut rest = m.clone();
            rest.0.remove(k);
            buckets[e].push((rest, c.clone()));
        }
        let coeffs = buckets
            .into_iter()
            .map(|t| MPoly::from_terms(params.clone(), t))
            .collect();
        Ok(UPoly { var: main_var.to_string(), params, coeffs })
    }

    pub fn from_mpoly_with_degree(f: &MPoly<C>, main_var: &str, degree: usize) -> Result<Self> {
        let mut u = Self::from_mpoly(f, main_var)?;
        if u.declared_degree() > degree {
            return Err(Error::InvalidParameters(format!(
                "actual degree {} exceeds declared degree {degree}",
                u.declared_degree()
            )));
        }
        while u.coeffs.len() < degree + 1 {
            u.coeffs.push(MPoly::zero(u.params.clone()));
        }
        Ok(u)
    }

    /// Reassembles over `params` with the main variable inserted at `pos`.
    pub fn to_mpoly_at(&self, pos: usize) -> MPoly<C> {
        let mut names: Vec<String> = self.params.to_vec();
        names.insert(pos, self.var.clone());
        let vars: Vars = names.into();
        let mut terms = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            for (m, k) in c.terms() {
                let mut m2 = m.clone();
                m2.0.insert(pos, e as u16);
                terms.push((m2, k.clone()));
            }
        }
        MPoly::from_terms(vars, terms)
    }

    /// Reassembles with the main variable first.
    pub fn to_mpoly(&self) -> MPoly<C> {
        self.to_mpoly_at(0)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn params(&self) -> &Vars {
        &self.params
    }

    pub fn declared_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest index with a nonzero coefficient, `None` for the zero polynomial.
    pub fn actual_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn coeffs(&self) -> &[MPoly<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> MPoly<C> {
        self.coeffs.get(i).cloned().unwrap_or_else(|| MPoly::zero(self.params.clone()))
    }

    pub fn leading(&self) -> &MPoly<C> {
        self.coeffs.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Removes the (zero) leading coefficient, lowering the declared degree.
    pub fn drop_leading(&self) -> Self {
        let mut c = self.coeffs.clone();
        if c.len() > 1 {
            c.pop();
        }
        UPoly { var: self.var.clone(), params: self.params.clone(), coeffs: c }
    }

    pub fn derivative(&self) -> Self {
        let n = self.declared_degree();
        let coeffs = if n == 0 {
            vec![MPoly::zero(self.params.clone())]
        } else {
            (1..=n).map(|i| self.coeffs[i].scale(&C::from_i64(i as i64))).collect()
        };
        UPoly { var: self.var.clone(), params: self.params.clone(), coeffs }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&MPoly<C>) -> MPoly<D>) -> UPoly<D> {
        UPoly { var: self.var.clone(), params: self.params.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_q(&self) -> QUPoly {
        self.map_coeffs(|c| c.to_q())
    }

    pub fn scale(&self, k: &MPoly<C>) -> Self {
        self.map_coeffs(|c| c.mul(k))
    }

    pub fn embed_params(&self, params: &Vars) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.embed(params)).collect::<Result<_>>()?;
        Ok(UPoly { var: self.var.clone(), params: params.clone(), coeffs })
    }

    /// Substitutes values for all parameters.
    pub fn eval_params(&self, point: &[C]) -> Result<Vec<C>> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }
}

impl QUPoly {
    pub fn to_z(&self) -> Option<ZUPoly> {
        let coeffs = self.coeffs.iter().map(|c| c.to_z()).collect::<Option<Vec<_>>>()?;
        Some(UPoly { var: self.var.clone(), params: self.params.clone(), coeffs })
    }

    /// Specialises every parameter to a rational value.
    pub fn specialize(&self, point: &[Rational]) -> Result<Dense> {
        Ok(Dense::new(self.eval_params(point)?))
    }
}

impl ZUPoly {
    pub fn from_q(p: &QUPoly) -> Option<Self> {
        p.to_z()
    }
}

pub fn zupoly_from(f: &ZPoly, main_var: &str) -> Result<ZUPoly> {
    UPoly::from_mpoly(f, main_var)
}

pub fn qupoly_from(f: &QPoly, main_var: &str) -> Result<QUPoly> {
    UPoly::from_mpoly(f, main_var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::vars_from;
    use crate::parse::parse_q;

    #[test]
    fn collect_in_main_variable() {
        let vars = vars_from(&["x", "y", "v"]);
        let f = parse_q("x*v - y", &vars).unwrap();
        let u = qupoly_from(&f, "v").unwrap();
        assert_eq!(u.declared_degree(), 1);
        assert_eq!(u.coeffs()[0].to_string(), "-y");
        assert_eq!(u.coeffs()[1].to_string(), "x");
        assert_eq!(u.to_mpoly_at(2), f);

        let c = parse_q("5", &vars).unwrap();
        let u = qupoly_from(&c, "v").unwrap();
        assert_eq!(u.declared_degree(), 0);
        assert_eq!(u.coeffs()[0].to_string(), "5");
    }

    #[test]
    fn derivative_matches_mpoly_derivative() {
        let vars = vars_from(&["v", "x0", "x1"]);
        let f = parse_q("v^3 + x1*v + x0", &vars).unwrap();
        let u = qupoly_from(&f, "v").unwrap();
        assert_eq!(u.derivative().to_mpoly(), f.derivative(0));
    }

    #[test]
    fn declared_degree_padding() {
        let vars = vars_from(&["v", "a"]);
        let f = parse_q("a*v + 1", &vars).unwrap();
        let u = UPoly::from_mpoly_with_degree(&f, "v", 3).unwrap();
        assert_eq!(u.declared_degree(), 3);
        assert_eq!(u.actual_degree(), Some(1));
        assert!(UPoly::from_mpoly_with_degree(&f, "v", 0).is_err());
    }
}
