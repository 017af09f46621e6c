//! Deciding whether a rational point lies in the image of a standard map.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::coeff::{fmt_rational, rat, rat_int, Rational};
use crate::dense::Dense;
use crate::discriminant::{char_system, morin_theta, CharSystem};
use crate::error::{Error, Result};
use crate::maps::{build_map, MapSpec, SingularityType};
use crate::mpoly::QPoly;

// ---- Sturm sequences ----

/// Sturm chain of the squarefree part of `f`.
pub fn sturm_chain(f: &Dense) -> Vec<Dense> {
    let g = f.squarefree_part();
    let mut chain = vec![g.clone(), g.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]).expect("nonzero divisor").neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain.retain(|p| !p.is_zero());
    chain
}

fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// A real endpoint; `None` stands for -inf (left) or +inf (right).
fn variations_at(chain: &[Dense], x: Option<&Rational>, right: bool) -> usize {
    match x {
        Some(x) => variations(chain.iter().map(|p| sign(&p.eval(x)))),
        None => variations(chain.iter().map(|p| {
            let d = p.degree().unwrap_or(0);
            let s = sign(&p.lc());
            if right || d % 2 == 0 {
                s
            } else {
                -s
            }
        })),
    }
}

/// Distinct real roots of `f` in `(lo, hi]`; `None` endpoints are infinite.
pub fn sturm_count(f: &Dense, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(f);
    sturm_count_chain(&chain, lo, hi)
}

fn sturm_count_chain(chain: &[Dense], lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
    let a = variations_at(chain, lo, false);
    let b = variations_at(chain, hi, true);
    a.saturating_sub(b)
}

/// Real roots of a squarefree polynomial: exact rationals plus disjoint open
/// intervals containing exactly one irrational root each.
#[derive(Clone, Debug, PartialEq)]
pub struct RootIsolation {
    pub polynomial: Dense,
    pub rational_roots: Vec<Rational>,
    pub intervals: Vec<(Rational, Rational)>,
}

impl RootIsolation {
    pub fn count(&self) -> usize {
        self.rational_roots.len() + self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    /// Halves the interval `i` until it is narrower than `width`.
    pub fn refine(&mut self, i: usize, width: &Rational) {
        let f = self.polynomial.clone();
        let (lo, hi) = &mut self.intervals[i];
        refine_interval(&f, lo, hi, width);
    }

    /// Real roots in increasing order, rationals exact and the rest by interval.
    pub fn roots(&self) -> Vec<RealRoot> {
        let mut out: Vec<RealRoot> = self.rational_roots.iter().cloned().map(RealRoot::Rational).collect();
        for (lo, hi) in &self.intervals {
            out.push(RealRoot::Algebraic(AlgebraicReal {
                poly: self.polynomial.clone(),
                lo: lo.clone(),
                hi: hi.clone(),
            }));
        }
        out.sort_by(|a, b| a.approx().partial_cmp(&b.approx()).unwrap_or(std::cmp::Ordering::Equal));
        out
    }
}

fn refine_interval(f: &Dense, lo: &mut Rational, hi: &mut Rational, width: &Rational) {
    // hi is never a root of an open interval, lo may be
    let s_hi = sign(&f.eval(hi));
    while &(&*hi - &*lo) >= width {
        let mid = (&*lo + &*hi) / rat_int(2);
        let s = sign(&f.eval(&mid));
        if s == 0 {
            *lo = mid.clone();
            *hi = mid;
            return;
        }
        if s == s_hi {
            *hi = mid;
        } else {
            *lo = mid;
        }
    }
}

/// The rational with the smallest denominator in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    if lo > hi {
        return simplest_between(hi, lo);
    }
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let n = lo.floor();
    let inner = simplest_between(&(Rational::one() / (hi - &n)), &(Rational::one() / (lo - &n)));
    n + Rational::one() / inner
}

/// Isolates the real roots of `f`.
pub fn isolate(f: &Dense) -> RootIsolation {
    let g = f.squarefree_part();
    let mut iso = RootIsolation { polynomial: g.clone(), rational_roots: Vec::new(), intervals: Vec::new() };
    match g.degree() {
        None | Some(0) => return iso,
        Some(1) => {
            iso.rational_roots.push(-&g.coeffs()[0] / &g.coeffs()[1]);
            return iso;
        }
        _ => {}
    }
    let chain = sturm_chain(&g);
    let b = g.cauchy_bound();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm_count_chain(&chain, Some(&lo), Some(&hi));
        if n == 0 {
            continue;
        }
        if n == 1 {
            if g.eval(&hi).is_zero() {
                iso.rational_roots.push(hi);
            } else {
                iso.intervals.push((lo, hi));
            }
            continue;
        }
        let mid = (&lo + &hi) / rat_int(2);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    // rational roots inside intervals: once narrower than 1/lc^2 the simplest
    // rational in the interval is the only candidate
    let ints = g.to_integer_primitive();
    let lc = ints.last().cloned().unwrap_or_else(BigInt::one).abs();
    let width = Rational::new(BigInt::one(), &lc * &lc * BigInt::from(2));
    let mut keep = Vec::new();
    for (mut lo, mut hi) in std::mem::take(&mut iso.intervals) {
        refine_interval(&g, &mut lo, &mut hi, &width);
        let s = simplest_between(&lo, &hi);
        if g.eval(&s).is_zero() {
            iso.rational_roots.push(s);
        } else {
            keep.push((lo, hi));
        }
    }
    iso.intervals = keep;
    iso.rational_roots.sort();
    iso.intervals.sort_by(|a, b| a.0.cmp(&b.0));
    iso
}

/// Real roots of `gcd(a, b)`.
pub fn common_real_roots(a: &Dense, b: &Dense) -> Result<RootIsolation> {
    let g = a.gcd(b)?;
    Ok(isolate(&g))
}

/// A real root of `poly` in the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicReal {
    pub poly: Dense,
    pub lo: Rational,
    pub hi: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RealRoot {
    Rational(Rational),
    Algebraic(AlgebraicReal),
}

impl RealRoot {
    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Rational(q) => to_f64(q),
            RealRoot::Algebraic(a) => (to_f64(&a.lo) + to_f64(&a.hi)) / 2.0,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealRoot::Rational(q) => Some(q),
            _ => None,
        }
    }
}

fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

// ---- arithmetic in Q[t]/(m) ----

/// `a^-1 mod m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: &Dense, m: &Dense) -> Option<Dense> {
    let (mut r0, mut r1) = (m.clone(), a.rem(m).ok()?);
    let (mut s0, mut s1) = (Dense::zero(), Dense::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).ok()?;
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.degree() != Some(0) {
        return None;
    }
    let k = Rational::one() / r0.lc();
    s0.scale(&k).rem(m).ok()
}

/// `f(vals)` in `Q[t]/(m)`; with `m = None` the values are constants.
fn eval_ext(f: &QPoly, vals: &[Dense], m: Option<&Dense>) -> Dense {
    let reduce = |d: Dense| match m {
        Some(m) => d.rem(m).expect("nonzero modulus"),
        None => d,
    };
    let mut acc = Dense::zero();
    for (mono, c) in f.terms() {
        let mut t = Dense::new(vec![c.clone()]);
        for (i, &e) in mono.0.iter().enumerate() {
            for _ in 0..e {
                t = reduce(t.mul(&vals[i]));
            }
        }
        acc = acc.add(&t);
    }
    reduce(acc)
}

// ---- verdicts ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Member,
    NotMember,
    BoundaryBranch,
    OnZeroSetNotMember,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Member => "Member",
            Status::NotMember => "NotMember",
            Status::BoundaryBranch => "BoundaryBranch",
            Status::OnZeroSetNotMember => "OnZeroSetNotMember",
        }
    }
}

/// Source parameters of a preimage, as polynomials in one real algebraic
/// number `alpha` (constants when every parameter is rational).
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub names: Vec<String>,
    pub params: Vec<Dense>,
    pub alpha: Option<AlgebraicReal>,
}

impl Witness {
    fn rational(names: &[String], vals: Vec<Rational>) -> Self {
        Witness {
            names: names.to_vec(),
            params: vals.into_iter().map(|q| Dense::new(vec![q])).collect(),
            alpha: None,
        }
    }

    /// Rational parameter values, when there is no algebraic part.
    pub fn rational_values(&self) -> Option<Vec<Rational>> {
        if self.alpha.is_some() {
            return None;
        }
        Some(self.params.iter().map(|p| p.coeffs().first().cloned().unwrap_or_else(Rational::zero)).collect())
    }

    /// Exact check that the map sends the witness to `x`.
    pub fn verify(&self, map: &MapSpec, x: &[Rational]) -> bool {
        let m = self.alpha.as_ref().map(|a| &a.poly);
        map.components.iter().zip(x).all(|(f, xi)| eval_ext(f, &self.params, m) == Dense::new(vec![xi.clone()]))
    }

    pub fn to_json(&self) -> Value {
        let params: Vec<Value> = self
            .names
            .iter()
            .zip(&self.params)
            .map(|(n, p)| json!({ "name": n, "value": dense_text(p, "alpha") }))
            .collect();
        let alpha = self.alpha.as_ref().map(|a| {
            json!({
                "polynomial": dense_text(&a.poly, "alpha"),
                "interval": [fmt_rational(&a.lo), fmt_rational(&a.hi)],
                "approx": (to_f64(&a.lo) + to_f64(&a.hi)) / 2.0,
            })
        });
        json!({ "params": params, "alpha": alpha })
    }
}

fn dense_text(p: &Dense, var: &str) -> String {
    let vars = crate::mpoly::vars_from(&[var]);
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (crate::mpoly::Monomial::var(1, 0, i as u16), c.clone()))
        .collect();
    QPoly::from_terms(vars, terms).to_string()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MemberVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Which branch decided, and the exceptional locus for boundary cases.
    pub detail: String,
    /// Sign determinations backing the verdict.
    pub certificates: Vec<String>,
}

impl MemberVerdict {
    fn new(status: Status, detail: impl Into<String>) -> Self {
        MemberVerdict { status, witness: None, detail: detail.into(), certificates: Vec::new() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.as_str(),
            "detail": self.detail,
            "witness": self.witness.as_ref().map(|w| w.to_json()),
            "certificates": self.certificates,
        })
    }
}

/// Preimages found by the decision procedure.
struct Search {
    preimages: Vec<Witness>,
    indeterminate: Option<String>,
    notes: Vec<String>,
}

/// Witness with `v` a real root of `m` (rational when `m` is linear), the
/// other parameters given as polynomials in `v` modulo `m`.
fn witness_from_root(
    names: &[String],
    root: &RealRoot,
    build: impl Fn(&Dense, Option<&Dense>) -> Option<Vec<Dense>>,
) -> Option<Witness> {
    match root {
        RealRoot::Rational(q) => {
            let v = Dense::new(vec![q.clone()]);
            let params = build(&v, None)?;
            Some(Witness { names: names.to_vec(), params, alpha: None })
        }
        RealRoot::Algebraic(a) => {
            let t = Dense::new(vec![Rational::zero(), Rational::one()]);
            let params = build(&t, Some(&a.poly))?;
            Some(Witness { names: names.to_vec(), params, alpha: Some(a.clone()) })
        }
    }
}

/// `p(v)` in the current ring.
fn at(p: &Dense, v: &Dense, m: Option<&Dense>) -> Dense {
    let mut acc = Dense::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(v).add(&Dense::new(vec![c.clone()]));
        if let Some(m) = m {
            acc = acc.rem(m).expect("nonzero modulus");
        }
    }
    acc
}

fn constants(xs: &[Rational]) -> Vec<Dense> {
    xs.iter().map(|q| Dense::new(vec![q.clone()])).collect()
}

/// Splits the real roots of `g` by whether `delta` vanishes there.
fn split_by_delta(g: &Dense, delta: &Dense) -> Result<(RootIsolation, RootIsolation)> {
    let g = g.squarefree_part();
    if delta.is_zero() {
        return Ok((isolate(&Dense::one()), isolate(&g)));
    }
    let h = g.gcd(delta)?;
    let rest = g.exact_div(&h)?;
    Ok((isolate(&rest), isolate(&h)))
}

fn search_ade(t: SingularityType, cs: &CharSystem, map: &MapSpec, x: &[Rational]) -> Result<Option<Search>> {
    let a = cs.a.specialize(x)?;
    let b = cs.b.specialize(x)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let g = a.gcd(&b)?;
    if g.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let delta = cs.delta.specialize(x)?;
    let (good, bad) = split_by_delta(&g, &delta)?;
    let names: Vec<String> = map.source_vars.to_vec();
    let k = t.target_arity();
    let mut s = Search { preimages: Vec::new(), indeterminate: None, notes: Vec::new() };
    s.notes.push(format!("gcd(A, B) has degree {}", g.degree().unwrap_or(0)));
    s.notes.push(format!("{} real roots with delta != 0", good.count()));
    for root in good.roots() {
        let w = match t {
            SingularityType::A(_) => witness_from_root(&names, &root, |v, _| {
                let mut p = vec![v.clone()];
                p.extend(constants(&x[2..]));
                Some(p)
            }),
            SingularityType::D(_, sg) => witness_from_root(&names, &root, |v, m| {
                // u = -sigma x1 / (2v)
                let inv = match m {
                    Some(m) => inverse_mod(v, m)?,
                    None => Dense::new(vec![Rational::one() / v.coeffs().first()?]),
                };
                let u = inv.scale(&(rat(-sg.sigma(), 2) * &x[1]));
                let mut p = vec![u, v.clone()];
                p.extend(constants(&x[3..k]));
                Some(p)
            }),
            _ => {
                let gamma2 = cs.gamma.as_ref().expect("E type")[2].specialize(x)?;
                witness_from_root(&names, &root, |v, m| {
                    // u = gamma2(v) / delta(v)
                    let num = at(&gamma2, v, m);
                    let den = at(&delta, v, m);
                    let inv = match m {
                        Some(m) => inverse_mod(&den, m)?,
                        None => Dense::new(vec![Rational::one() / den.coeffs().first()?]),
                    };
                    let u = match m {
                        Some(m) => num.mul(&inv).rem(m).ok()?,
                        None => num.mul(&inv),
                    };
                    let mut p = vec![u, v.clone()];
                    p.extend(constants(&x[3..k]));
                    Some(p)
                })
            }
        };
        match w {
            Some(w) if w.verify(map, x) => s.preimages.push(w),
            _ => s.notes.push("a delta != 0 root failed verification".into()),
        }
    }
    // delta = 0 class
    if !bad.is_empty() {
        match t {
            SingularityType::D(_, sg) => {
                // v = 0 is the only such root; h(u, 0, x3..) = (0, 0, -sigma u^2, x3..)
                let target = -(rat_int(sg.sigma()) * &x[2]);
                s.notes.push(format!("v = 0 branch: u^2 = {}", fmt_rational(&target)));
                let upoly = Dense::new(vec![-target.clone(), Rational::zero(), Rational::one()]);
                for root in isolate(&upoly).roots() {
                    let w = match &root {
                        RealRoot::Rational(q) => {
                            let mut vals = vec![q.clone(), Rational::zero()];
                            vals.extend(x[3..k].iter().cloned());
                            Witness::rational(&names, vals)
                        }
                        RealRoot::Algebraic(al) => {
                            let mut p = vec![Dense::new(vec![Rational::zero(), Rational::one()]), Dense::zero()];
                            p.extend(constants(&x[3..k]));
                            Witness { names: names.clone(), params: p, alpha: Some(al.clone()) }
                        }
                    };
                    if w.verify(map, x) {
                        s.preimages.push(w);
                    }
                }
            }
            SingularityType::A(_) => {}
            _ => e_delta_zero(cs, map, x, &bad, &names, &mut s)?,
        }
    }
    Ok(Some(s))
}

/// Common real roots of `G0 = 2u^3 + gamma0(v)` and `G1 = -3u^2 + gamma1(v)`
/// at each rational root `v` of the `delta = 0` class.
fn e_delta_zero(
    cs: &CharSystem,
    map: &MapSpec,
    x: &[Rational],
    bad: &RootIsolation,
    names: &[String],
    s: &mut Search,
) -> Result<()> {
    let k = cs.ty.target_arity();
    let gamma = cs.gamma.as_ref().expect("E type");
    let gs: Vec<Dense> = gamma.iter().map(|g| g.specialize(x)).collect::<Result<_>>()?;
    for root in bad.roots() {
        let Some(vh) = root.as_rational() else {
            s.indeterminate = Some("delta = 0 at an irrational common root".into());
            continue;
        };
        s.notes.push(format!("delta = 0 branch at v = {}", fmt_rational(vh)));
        if !gs[2].eval(vh).is_zero() {
            continue;
        }
        let g0 = Dense::new(vec![gs[0].eval(vh), Rational::zero(), Rational::zero(), rat_int(2)]);
        let g1 = Dense::new(vec![gs[1].eval(vh), Rational::zero(), rat_int(-3)]);
        for u in common_real_roots(&g0, &g1)?.roots() {
            let w = match &u {
                RealRoot::Rational(q) => {
                    let mut vals = vec![q.clone(), vh.clone()];
                    vals.extend(x[3..k].iter().cloned());
                    Witness::rational(names, vals)
                }
                RealRoot::Algebraic(al) => {
                    let mut p = vec![Dense::new(vec![Rational::zero(), Rational::one()]), Dense::new(vec![vh.clone()])];
                    p.extend(constants(&x[3..k]));
                    Witness { names: names.to_vec(), params: p, alpha: Some(al.clone()) }
                }
            };
            if w.verify(map, x) {
                s.preimages.push(w);
            } else {
                s.notes.push("a delta = 0 candidate failed verification".into());
            }
        }
    }
    Ok(())
}

/// Real preimages of a Morin map: `x_1..x_{m-1}` are read off and the last
/// coordinate `t` is a common real root of the remaining components.
fn search_morin(map: &MapSpec, y: &[Rational]) -> Result<Search> {
    let src = map.source_arity();
    let names: Vec<String> = map.source_vars.to_vec();
    let mut s = Search { preimages: Vec::new(), indeterminate: None, notes: Vec::new() };
    let fixed: Vec<Rational> = y[..src - 1].to_vec();
    let mut g = Dense::zero();
    for (f, yi) in map.components.iter().zip(y).skip(src - 1) {
        let mut assign: Vec<(usize, Rational)> = (0..src - 1).map(|i| (i, fixed[i].clone())).collect();
        assign.sort_by_key(|a| a.0);
        let spec = f.specialize(&assign);
        let u = crate::upoly::qupoly_from(&spec, &names[src - 1])?;
        let mut d = u.specialize(&[])?;
        d = d.sub(&Dense::new(vec![yi.clone()]));
        g = if g.is_zero() { d } else if d.is_zero() { g } else { g.gcd(&d)? };
    }
    // the first m-1 coordinates must match exactly
    for (f, yi) in map.components.iter().zip(y).take(src - 1) {
        let probe: Vec<Rational> = fixed.iter().cloned().chain(std::iter::once(Rational::zero())).collect();
        if &f.eval(&probe)? != yi {
            return Ok(s);
        }
    }
    if g.is_zero() {
        s.indeterminate = Some("every component is constant in the last coordinate".into());
        return Ok(s);
    }
    for root in isolate(&g).roots() {
        let w = witness_from_root(&names, &root, |t, _| {
            let mut p = constants(&fixed);
            p.push(t.clone());
            Some(p)
        });
        if let Some(w) = w {
            if w.verify(map, y) {
                s.preimages.push(w);
            }
        }
    }
    Ok(s)
}

/// Decides membership of `x` in the image of the standard map of `t`.
pub fn member(t: SingularityType, x: &[Rational]) -> Result<MemberVerdict> {
    let t = t.validate()?;
    let map = build_map(t)?;
    if x.len() != map.target_arity() {
        return Err(Error::PointArity { expected: map.target_arity(), got: x.len() });
    }
    if !t.is_ade() {
        let s = search_morin(&map, x)?;
        let theta = morin_theta(t)?.theta;
        let on_zero = theta.eval(x)?.is_zero();
        return Ok(finish(s, on_zero, true, vec![format!("Theta(x) {} 0", if on_zero { "=" } else { "!=" })]));
    }
    let cs = char_system(t)?;
    let Some(s) = search_ade(t, &cs, &map, x)? else {
        return Ok(MemberVerdict::new(Status::NotMember, "gcd(A^x, B^x) = 1").with_cert("Res_v(A^x, B^x) != 0"));
    };
    // R(x) = 0 here; Theta(x) = 0 follows when r(x) != 0
    let r_nonzero = !cs.r.eval(x)?.is_zero();
    let certs = vec![format!("r(x) {} 0", if r_nonzero { "!=" } else { "=" })];
    Ok(finish(s, r_nonzero, r_nonzero, certs))
}

impl MemberVerdict {
    fn with_cert(mut self, c: &str) -> Self {
        self.certificates.push(c.into());
        self
    }
}

fn finish(s: Search, on_zero: bool, theta_known: bool, mut certs: Vec<String>) -> MemberVerdict {
    certs.extend(s.notes.iter().cloned());
    let mut v = if let Some(w) = s.preimages.into_iter().next() {
        let mut v = MemberVerdict::new(Status::Member, "real preimage found and verified");
        v.witness = Some(w);
        v
    } else if let Some(why) = s.indeterminate {
        MemberVerdict::new(Status::BoundaryBranch, format!("indeterminate: {why}"))
    } else if on_zero && theta_known {
        MemberVerdict::new(Status::OnZeroSetNotMember, "common roots exist but none gives a real preimage")
    } else {
        MemberVerdict::new(Status::NotMember, "no real preimage")
    };
    v.certificates = certs;
    v
}

/// Number of real preimages, for non-suspended types.
pub fn preimage_count(t: SingularityType, x: &[Rational]) -> Result<usize> {
    let t = t.validate()?;
    let map = build_map(t)?;
    if x.len() != map.target_arity() {
        return Err(Error::PointArity { expected: map.target_arity(), got: x.len() });
    }
    let s = if t.is_ade() {
        let cs = char_system(t)?;
        match search_ade(t, &cs, &map, x)? {
            Some(s) => s,
            None => return Ok(0),
        }
    } else {
        search_morin(&map, x)?
    };
    if let Some(why) = s.indeterminate {
        return Err(Error::Unsupported(format!("preimage count is indeterminate: {why}")));
    }
    let n = s.preimages.len();
    if let SingularityType::A(k) | SingularityType::D(k, _) = t {
        if n > k {
            return Err(Error::InvalidParameters(format!("{n} preimages exceed the bound {k}")));
        }
    }
    Ok(n)
}

/// Parses `"c0,c1,..."` with entries `p` or `p/q`.
pub fn parse_point(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|p| crate::coeff::parse_rational(p.trim())).collect()
}
