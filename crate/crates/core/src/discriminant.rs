//! Characteristic systems of the ADE maps and their main-analytic
//! polynomials, plus the closed forms for Morin maps.

use std::time::Duration;

use crate::coeff::{rat, rat_int, Rational};
use crate::error::{Error, Result};
use crate::maps::{build_map, generating_family, MapSpec, Sign, SingularityType, Suspension};
use crate::modular::{psc_modular, resultant_modular, ModularOptions, Strategy, WeightHint};
use crate::mpoly::{indexed_vars, vars_from, Monomial, MPoly, QPoly, Vars, WeightSystem};
use crate::parse::parse_q;
use crate::resultant::{psc1, resultant_algo, Algorithm};
use crate::upoly::{qupoly_from, QUPoly, UPoly};

pub const E6_A: &str = "48*v^6 + 4*(12*x3 + x5^3)*v^4 + 8*(3*x2 + x4*x5^2)*v^3 \
    + (4*x1*x5^2 + 5*x4^2*x5 + 12*x3^2)*v^2 + (4*x1*x4*x5 + 12*x2*x3 + x4^3)*v + x1*x4^2 + 3*x2^2";
pub const E6_B: &str = "2*x5*v^5 + 5*x4*v^4 + (8*x1 - 2*x3*x5)*v^3 + (x3*x4 - 4*x2*x5)*v^2 \
    + (-6*x0*x5 + 4*x1*x3 - x2*x4)*v - 3*x0*x4 + 2*x1*x2";
pub const E6_R: &str = "x4^3 + 2*x3*x5^2*x4 - 2*x2*x5^3";

pub const E7_A: &str = "9*v^7 + 21*x6*v^6 + (15*x5 + 16*x6^2)*v^5 + (9*x1 + 27*x4^2 + 22*x5*x6 + 4*x6^3)*v^4 \
    + (12*x1*x6 + 36*x3*x4 + 7*x5^2 + 8*x5*x6^2)*v^3 \
    + (6*x1*x5 + 4*x1*x6^2 + 18*x2*x4 + 12*x3^2 + 5*x5^2*x6)*v^2 \
    + (4*x1*x5*x6 + 12*x2*x3 + x5^3)*v + x1*x5^2 + 3*x2^2";
pub const E7_B: &str = "-3*x4*v^5 - 5*x3*v^4 + (-7*x2 - 2*x3*x6 + 3*x4*x5)*v^3 \
    + (-9*x0 + 6*x1*x4 - 4*x2*x6 + x3*x5)*v^2 + (-6*x0*x6 + 4*x1*x3 - x2*x5)*v - 3*x0*x5 + 2*x1*x2";
pub const E7_R: &str = "3*x2^2 + (-6*x4*x5 - 4*x3*x6 + 4*x4*x6^2)*x2 + x5*(4*x3^2 + 3*x4^2*x5 - 4*x3*x4*x6)";

pub const E8_A: &str = "75*v^8 + 9*x7^3*v^7 + 3*(30*x4 + 7*x6*x7^2)*v^6 + (60*x3 + x7*(15*x5*x7 + 16*x6^2))*v^5 \
    + (9*x1*x7^2 + 30*x2 + 27*x4^2 + 22*x5*x6*x7 + 4*x6^3)*v^4 \
    + (12*x1*x6*x7 + 36*x3*x4 + 7*x5^2*x7 + 8*x5*x6^2)*v^3 \
    + (6*x1*x5*x7 + 4*x1*x6^2 + 18*x2*x4 + 12*x3^2 + 5*x5^2*x6)*v^2 \
    + (4*x1*x5*x6 + 12*x2*x3 + x5^3)*v + x1*x5^2 + 3*x2^2";
pub const E8_B: &str = "x7*v^7 + 4*x6*v^6 + (7*x5 - 3*x4*x7)*v^5 + 5*(2*x1 - x3*x7)*v^4 \
    + (-7*x2*x7 - 2*x3*x6 + 3*x4*x5)*v^3 + (-9*x0*x7 + 6*x1*x4 - 4*x2*x6 + x3*x5)*v^2 \
    + (-6*x0*x6 + 4*x1*x3 - x2*x5)*v - 3*x0*x5 + 2*x1*x2";
pub const E8_R: &str = "25*x5^4 - 90*x4*x7*x5^3 \
    + (60*x4*x6^2 + 81*x4^2*x7^2 + 180*x3*x6*x7 + 90*x2*x7^2)*x5^2 \
    + (-80*x3*x6^3 - 240*x2*x6^2*x7 - 108*x3*x4*x6*x7^2 + 108*x3^2*x7^3 - 162*x2*x4*x7^3)*x5 \
    + x2*(80*x6^4 + 108*x4*x6^2*x7^2 - 108*x3*x6*x7^3 + 81*x2*x7^4)";
pub const E8_P1: &str = "20*x6^3 + (27*x4*x7^2 - 30*x5*x7)*x6 - 27*x3*x7^3";
pub const E8_P2: &str = "40*x6^4 + (54*x4*x7^2 - 120*x5*x7)*x6^2 - 54*x3*x7^3*x6 \
    + (45*x5^2*x7^2 - 81*x4*x5*x7^3 + 81*x2*x7^4)";

pub const E6_K0: &str = "8*x5^3*u^3 - 4*x0*x5^3 - x4^4 + x4^3*x5";
pub const E6_K1: &str = "24*x5^3*u^2 - 8*x1*x5^3 - 4*x4*x5^3 - x4^3";

pub const THETA_24: &str = "-y1^2*y3*y4 - y2^2*y3^2*y4 - 2*y2*y3*y4^2 - y4^3 + y1^3*y5 \
    + y1*y2^2*y3*y5 + 3*y1*y2*y4*y5 + y2^3*y5^2";
pub const S_24: &str = "y4*y2 + y1^2 + y2^2*y3";

/// Characteristic data of one ADE type.
#[derive(Clone, Debug)]
pub struct CharSystem {
    pub ty: SingularityType,
    /// `x0 .. x{k-1}`.
    pub params: Vars,
    pub a: QUPoly,
    pub b: QUPoly,
    /// `x0 * dB/dx0` at its actual degree (E types).
    pub b0: Option<QUPoly>,
    /// `delta` as a polynomial in `v`; the constant 1 for A, `v` for D.
    pub delta: QUPoly,
    pub r: QPoly,
    /// `g0, g1, g2` over `(u, v, x0, ...)` (E types).
    pub g: Option<[QPoly; 3]>,
    /// `gamma0, gamma1, gamma2` with `G0 = 2u^3 + gamma0 + u v delta`,
    /// `G1 = -3u^2 + gamma1`, `G2 = gamma2 - u delta` (E types).
    pub gamma: Option<[QUPoly; 3]>,
}

fn x_vars(k: usize) -> Vars {
    indexed_vars("x", 0..k).into()
}

fn v_x_vars(k: usize) -> Vars {
    let mut v = vec!["v".to_string()];
    v.extend(indexed_vars("x", 0..k));
    v.into()
}

fn u_v_x_vars(k: usize) -> Vars {
    let mut v = vec!["u".to_string(), "v".to_string()];
    v.extend(indexed_vars("x", 0..k));
    v.into()
}

fn in_v(text: &str, k: usize) -> Result<QUPoly> {
    qupoly_from(&parse_q(text, &v_x_vars(k))?, "v")
}

/// Collects a polynomial over `(v, x..)` in `v`, padding to `degree`.
fn collect_v(f: &QPoly, degree: Option<usize>) -> Result<QUPoly> {
    match degree {
        Some(d) => UPoly::from_mpoly_with_degree(f, "v", d),
        None => qupoly_from(f, "v"),
    }
}

/// Lowers a `UPoly` into a polynomial over `(v, params)`.
fn flat(p: &QUPoly) -> QPoly {
    p.to_mpoly_at(0)
}

/// `v * F(c/v, v, x)` for `F` over `(u, v, x..)` with `deg_u F <= deg_v F + 1` termwise.
fn substitute_u_over_v(f: &QPoly, c: &QPoly) -> Result<QPoly> {
    let out_vars = c.vars().clone();
    let mut acc = MPoly::zero(out_vars.clone());
    for (m, k) in f.terms() {
        let (a, b) = (m.0[0] as u32, m.0[1] as i64);
        let e = b + 1 - a as i64;
        if e < 0 {
            return Err(Error::Unsupported("negative power of v after substitution".into()));
        }
        let mut rest = m.clone();
        rest.0.remove(0);
        rest.0[0] = e as u16;
        let t = MPoly::from_terms(out_vars.clone(), vec![(rest, k.clone())]);
        acc = acc.add(&t.mul(&c.pow(a)));
    }
    Ok(acc)
}

/// `(alpha, beta)` with `alpha = 3 g2^2 - delta^2 g1` and
/// `beta = 2 g1 g2 + 3 g0 delta + 3 v g2 delta`.
pub fn pair_from_g_system(g0: &QUPoly, g1: &QUPoly, g2: &QUPoly, delta: &QUPoly) -> Result<(QUPoly, QUPoly)> {
    let (f0, f1, f2, d) = (flat(g0), flat(g1), flat(g2), flat(delta));
    for f in [&f1, &f2, &d] {
        if f.vars() != f0.vars() {
            return Err(Error::ArityMismatch(f.vars().to_vec(), f0.vars().to_vec()));
        }
    }
    let three = rat_int(3);
    let v = MPoly::var_at(f0.vars().clone(), 0);
    let alpha = f2.mul(&f2).scale(&three).sub(&d.mul(&d).mul(&f1));
    let beta = f1
        .mul(&f2)
        .scale(&rat_int(2))
        .add(&f0.mul(&d).scale(&three))
        .add(&v.mul(&f2).mul(&d).scale(&three));
    let var = g0.var().to_string();
    let to_u = |f: &QPoly| -> Result<QUPoly> {
        let mut u = qupoly_from(f, &var)?;
        if u.params() != g0.params() {
            u = u.embed_params(g0.params())?;
        }
        Ok(u)
    };
    Ok((to_u(&alpha)?, to_u(&beta)?))
}

fn e_texts(t: SingularityType) -> (&'static str, &'static str, &'static str) {
    match t {
        SingularityType::E6 => (E6_A, E6_B, E6_R),
        SingularityType::E7 => (E7_A, E7_B, E7_R),
        _ => (E8_A, E8_B, E8_R),
    }
}

/// `g0 = h0 - x0`, `g1 = x1 - h1`, `g2 = h2 - x2` over `(u, v, x0, ...)`.
pub fn g_system(t: SingularityType) -> Result<[QPoly; 3]> {
    if !matches!(t, SingularityType::E6 | SingularityType::E7 | SingularityType::E8) {
        return Err(Error::Unsupported(format!("no g-system for {t}")));
    }
    let map = build_map(t)?;
    let k = t.target_arity();
    let vars = u_v_x_vars(k);
    // map source (u, v, x3..) -> (u, v, x0..)
    let lift = |f: &QPoly| f.embed(&vars);
    let x = |i: usize| MPoly::var(vars.clone(), &format!("x{i}"));
    Ok([
        lift(&map.components[0])?.sub(&x(0)?),
        x(1)?.sub(&lift(&map.components[1])?),
        lift(&map.components[2])?.sub(&x(2)?),
    ])
}

fn delta_text(t: SingularityType) -> &'static str {
    match t {
        SingularityType::E6 => "x4 + 2*v*x5",
        SingularityType::E7 => "3*v^2 + 2*x6*v + x5",
        _ => "3*x7*v^2 + 2*x6*v + x5",
    }
}

/// Drops the `u` slot of a polynomial over `(u, v, x..)`; `u` must not occur.
fn drop_u(f: &QPoly, k: usize) -> Result<QPoly> {
    f.restrict_vars(&v_x_vars(k))
}

fn gammas(g: &[QPoly; 3], delta: &QPoly, k: usize) -> Result<[QUPoly; 3]> {
    let vars = u_v_x_vars(k);
    let u = MPoly::var(vars.clone(), "u")?;
    let v = MPoly::var(vars.clone(), "v")?;
    let d = delta.embed(&vars)?;
    let three = rat_int(3);
    // gamma_i: the u-free parts of G0 = g0, G1 = -g1, G2 = g2
    let g0 = g[0].substitute_const(0, &Rational::from_integer(0.into()));
    let g1 = g[1].neg().substitute_const(0, &Rational::from_integer(0.into()));
    let g2 = g[2].substitute_const(0, &Rational::from_integer(0.into()));
    // structural check of the three-equation shape
    let shape0 = g0.add(&u.pow(3).scale(&rat_int(2))).add(&u.mul(&v).mul(&d));
    let shape1 = g1.sub(&u.pow(2).scale(&three));
    let shape2 = g2.sub(&u.mul(&d));
    if shape0 != g[0] || shape1 != g[1].neg() || shape2 != g[2] {
        return Err(Error::Transcription("g-system does not have the expected shape".into()));
    }
    Ok([
        collect_v(&drop_u(&g0, k)?, None)?,
        collect_v(&drop_u(&g1, k)?, None)?,
        collect_v(&drop_u(&g2, k)?, None)?,
    ])
}

/// Characteristic system of an ADE type; every literal transcription is
/// checked against an independent derivation.
pub fn char_system(t: SingularityType) -> Result<CharSystem> {
    let t = t.validate()?;
    let k = t.target_arity();
    let params = x_vars(k);
    let one = QPoly::one(params.clone());
    match t {
        SingularityType::A(_) => {
            let f = generating_family(t)?.f;
            let a = qupoly_from(&f, "v")?;
            let b = a.derivative();
            let delta = UPoly::new("v", params.clone(), vec![one.clone()])?;
            Ok(CharSystem { ty: t, params, a, b, b0: None, delta, r: one, g: None, gamma: None })
        }
        SingularityType::D(_, s) => {
            let a = d_type_a(k, s)?;
            // v * F(u(v), v) with u(v) = -sigma x1 / (2v)
            let f = generating_family(t)?.f;
            let vx = v_x_vars(k);
            let c = MPoly::var(vx.clone(), "x1")?.scale(&rat(-s.sigma(), 2));
            let derived = collect_v(&substitute_u_over_v(&f, &c)?, Some(k))?;
            if derived != a {
                return Err(Error::Transcription(format!("{t}: A^x differs from v*F(u(v), v)")));
            }
            let b = a.derivative();
            let delta = in_v("v", k)?;
            Ok(CharSystem { ty: t, params, a, b, b0: None, delta, r: one, g: None, gamma: None })
        }
        _ => {
            let (ta, tb, tr) = e_texts(t);
            let a = in_v(ta, k)?;
            let b = in_v(tb, k)?;
            let r = parse_q(tr, &params)?;
            let delta = in_v(delta_text(t), k)?;
            let g = g_system(t)?;
            let gamma = gammas(&g, &flat(&delta), k)?;
            let (alpha, beta) = pair_from_g_system(&gamma[0], &gamma[1], &gamma[2], &delta)?;
            if alpha != a {
                return Err(Error::Transcription(format!("{t}: A^x differs from the g-elimination")));
            }
            if beta != b {
                return Err(Error::Transcription(format!("{t}: B^x differs from the g-elimination")));
            }
            let r_derived = r_from_g(t, &g[2], &delta)?;
            if r_derived != r {
                return Err(Error::Transcription(format!("{t}: r differs from Res_v(g2, delta)")));
            }
            let b0 = b0_of(&b)?;
            Ok(CharSystem { ty: t, params, a, b, b0: Some(b0), delta, r, g: Some(g), gamma: Some(gamma) })
        }
    }
}

/// `A^x` of a D type: `v^k + x_{k-1} v^{k-1} + ... + x2 v^2 + x0 v - sigma/4 x1^2`.
pub fn d_type_a(k: usize, s: Sign) -> Result<QUPoly> {
    let mut parts = vec![format!("v^{k}")];
    parts.extend((2..k).map(|i| format!("x{i}*v^{i}")));
    parts.push("x0*v".into());
    parts.push(format!("({})/4*x1^2", -s.sigma()));
    in_v(&parts.join(" + "), k)
}

/// `r = -1/4 Res_v(g2, delta6)`, `Res_v(g2, delta7)/3`, `Res_v(g2, delta8)`.
pub fn r_from_g(t: SingularityType, g2: &QPoly, delta: &QUPoly) -> Result<QPoly> {
    let k = t.target_arity();
    let vars = u_v_x_vars(k);
    let g2u = qupoly_from(g2, "v")?;
    let du = qupoly_from(&flat(delta).embed(&vars)?, "v")?;
    let res = resultant_algo(&g2u, &du, Algorithm::Bareiss)?;
    let scale = match t {
        SingularityType::E6 => rat(-1, 4),
        SingularityType::E7 => rat(1, 3),
        _ => rat_int(1),
    };
    res.scale(&scale).restrict_vars(&x_vars(k))
}

/// `x0 * dB/dx0`, collected at its actual degree.
fn b0_of(b: &QUPoly) -> Result<QUPoly> {
    let f = flat(b);
    let i = f.index_of("x0")?;
    let x0 = MPoly::var_at(f.vars().clone(), i);
    collect_v(&x0.mul(&f.derivative(i)), None)
}

/// Weights of `(x0, ..)`, of `v`, and the weighted degrees of `r`, `R`, `Theta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightData {
    pub params: Vec<u32>,
    pub v: u32,
    pub r: u64,
    pub res: u64,
    pub theta: u64,
}

pub fn weight_data(t: SingularityType) -> Option<WeightData> {
    match t {
        SingularityType::E6 => {
            Some(WeightData { params: vec![12, 8, 9, 6, 5, 2], v: 3, r: 15, res: 102, theta: 72 })
        }
        SingularityType::E7 => {
            Some(WeightData { params: vec![9, 6, 7, 5, 3, 4, 2], v: 2, r: 14, res: 91, theta: 63 })
        }
        SingularityType::E8 => Some(WeightData {
            params: vec![15, 10, 12, 9, 6, 7, 4, 1],
            v: 3,
            r: 28,
            res: 176,
            theta: 120,
        }),
        SingularityType::A(k) => {
            let k = k as u32;
            let params = (0..k).map(|i| k + 1 - i).collect();
            Some(WeightData { params, v: 1, r: 0, res: (k as u64 + 1) * k as u64, theta: (k as u64 + 1) * k as u64 })
        }
        SingularityType::D(k, _) => {
            // F has weight 2(k-1) with w(v) = 2, w(u) = k-2
            let k = k as u32;
            let mut params = vec![2 * (k - 1), k];
            params.extend((2..k).map(|i| 2 * (k - i)));
            let res = 2 * k as u64 * (k as u64 - 1);
            Some(WeightData { params, v: 2, r: 0, res, theta: res })
        }
        _ => None,
    }
}

/// The E7 weight tuple as printed. It swaps the weights of `x1` and `x2`:
/// `3*x2^2` in `r7` and `9*x1*v^4` in `A` force `w(x1) = 6`, `w(x2) = 7`.
pub const E7_PRINTED_WEIGHTS: [u32; 7] = [9, 7, 6, 5, 3, 4, 2];

pub fn weight_system(t: SingularityType) -> Option<WeightSystem> {
    weight_data(t).map(|w| WeightSystem::new(w.params).expect("positive weights"))
}

/// How `R` (and `S`) are computed.
#[derive(Clone, Debug)]
pub enum Method {
    Direct(Algorithm),
    Modular(ModularOptions),
}

#[derive(Clone, Debug)]
pub struct ThetaOptions {
    pub method: Method,
    /// Also compute `S = Psc_v(A, B)`.
    pub with_psc: bool,
}

impl ThetaOptions {
    /// Weighted modular interpolation for ADE types, direct otherwise; `S`
    /// only for the E types.
    pub fn for_type(t: SingularityType) -> Self {
        let e = matches!(t, SingularityType::E6 | SingularityType::E7 | SingularityType::E8);
        let method = if t.is_ade() { Method::Modular(modular_options(t, None)) } else { Method::Direct(Algorithm::Auto) };
        ThetaOptions { method, with_psc: e }
    }

    pub fn with_psc(mut self, on: bool) -> Self {
        self.with_psc = on;
        self
    }

    pub fn with_method(mut self, m: Method) -> Self {
        self.method = m;
        self
    }
}

/// Modular options carrying the type's weight hint.
pub fn modular_options(t: SingularityType, budget: Option<Duration>) -> ModularOptions {
    let mut o = ModularOptions::default().with_strategy(Strategy::Hybrid);
    if let Some(w) = weight_data(t) {
        o = o.with_weights(WeightHint { params: w.params, main: w.v });
    }
    o.budget = budget;
    o
}

#[derive(Clone, Debug)]
pub struct ThetaResult {
    pub theta: QPoly,
    /// `Res_v(A, B)`.
    pub res: QPoly,
    /// `Psc_v(A, B)` when requested.
    pub psc: Option<QPoly>,
    pub r: QPoly,
    /// `theta = res / r^2`.
    pub divided: bool,
}

fn res_of(a: &QUPoly, b: &QUPoly, m: &Method) -> Result<QPoly> {
    match m {
        Method::Direct(alg) => resultant_algo(a, b, *alg),
        Method::Modular(o) => resultant_modular(a, b, o),
    }
}

fn psc_of(a: &QUPoly, b: &QUPoly, m: &Method) -> Result<QPoly> {
    match m {
        Method::Direct(_) => psc1(a, b),
        Method::Modular(o) => psc_modular(a, b, 1, o),
    }
}

/// `Theta = Res_v(A, B)` (A, D) or `Res_v(A, B) / r^2` (E).
pub fn build_theta(t: SingularityType, opts: &ThetaOptions) -> Result<ThetaResult> {
    let cs = char_system(t)?;
    theta_from_system(&cs, opts)
}

pub fn theta_from_system(cs: &CharSystem, opts: &ThetaOptions) -> Result<ThetaResult> {
    let res = res_of(&cs.a, &cs.b, &opts.method)?;
    let psc = if opts.with_psc { Some(psc_of(&cs.a, &cs.b, &opts.method)?) } else { None };
    if cs.r.is_constant() {
        return Ok(ThetaResult { theta: res.clone(), res, psc, r: cs.r.clone(), divided: false });
    }
    let theta = res.exact_div(&cs.r.mul(&cs.r))?;
    Ok(ThetaResult { theta, res, psc, r: cs.r.clone(), divided: true })
}

/// Degree in `var` and the corresponding leading coefficient, over the
/// variables of `f`.
pub fn leading_in(f: &QPoly, var: &str) -> Result<(usize, QPoly)> {
    let u = qupoly_from(f, var)?;
    let d = u.actual_degree().unwrap_or(0);
    Ok((d, u.coeff(d).embed(f.vars())?))
}

/// `x0`-leading data of `Res_v(A, B0)` and `Psc_v(A, B0)`.
pub fn b0_leading(cs: &CharSystem) -> Result<((usize, QPoly), (usize, QPoly))> {
    let b0 = cs.b0.as_ref().ok_or_else(|| Error::Unsupported(format!("no B0 for {}", cs.ty)))?;
    let r = resultant_algo(&cs.a, b0, Algorithm::Auto)?;
    let s = psc1(&cs.a, b0)?;
    Ok((leading_in(&r, "x0")?, leading_in(&s, "x0")?))
}

/// `(Res_v(A, delta), Res_v(B, delta))`.
pub fn delta_resultants(cs: &CharSystem) -> Result<(QPoly, QPoly)> {
    Ok((resultant_algo(&cs.a, &cs.delta, Algorithm::Auto)?, resultant_algo(&cs.b, &cs.delta, Algorithm::Auto)?))
}

/// `J = Res_v(B, delta8) / (4 x7 r8)`.
pub fn e8_j(cs: &CharSystem) -> Result<QPoly> {
    if cs.ty != SingularityType::E8 {
        return Err(Error::Unsupported("J is defined for E8".into()));
    }
    let (_, rb) = delta_resultants(cs)?;
    let x7 = MPoly::var(cs.params.clone(), "x7")?;
    rb.exact_div(&x7.mul(&cs.r).scale(&rat_int(4)))
}

/// Auxiliary E6 data on the `delta6 = 0` branch.
#[derive(Clone, Debug)]
pub struct E6Aux {
    pub k0: QUPoly,
    pub k1: QUPoly,
    /// `Res_u(k0, k1)`.
    pub h: QPoly,
}

fn in_u(text: &str) -> Result<QUPoly> {
    let mut names = vec!["u".to_string()];
    names.extend(indexed_vars("x", 0..6));
    qupoly_from(&parse_q(text, &names.into())?, "u")
}

/// The displayed `k0`, `k1` and `H = Res_u(k0, k1)`.
pub fn e6_aux() -> Result<E6Aux> {
    let k0 = in_u(E6_K0)?;
    let k1 = in_u(E6_K1)?;
    let h = resultant_algo(&k0, &k1, Algorithm::Bareiss)?;
    Ok(E6Aux { k0, k1, h })
}

/// `g0(u, -x4/(2 x5))` and `g1(u, -x4/(2 x5))` with denominators cleared
/// (`16 x5^4` and `4 x5^2`), as polynomials in `u`.
pub fn e6_boundary_pair() -> Result<(QUPoly, QUPoly)> {
    let k0 = in_u("32*x5^4*u^3 - 16*x0*x5^4 + 4*x3*x4^2*x5^2 + 3*x4^4")?;
    let k1 = in_u("12*x5^2*u^2 + 4*x1*x5^2 - x4^2")?;
    Ok((k0, k1))
}

/// `P * delta + rest == f` check with denominators cleared: `scale*f - rest`
/// divisible by `delta`.
pub fn divisible_by_delta(f: &QUPoly, scale: &QPoly, rest: &QPoly, delta: &QUPoly) -> Result<bool> {
    let vx = flat(f).vars().clone();
    let lhs = flat(f).mul(&scale.embed(&vx)?).sub(&rest.embed(&vx)?);
    Ok(flat(delta).divides(&lhs))
}

/// Morin main-analytic polynomials over `y1 .. yn`.
#[derive(Clone, Debug)]
pub struct MorinTheta {
    /// Resultant form when the characteristic data is a pair, else the
    /// sum-of-squares form.
    pub theta: QPoly,
    /// `sum_i (y_{m-1+i}^2 - y_i^2 y_n)^2` (r = 1).
    pub sum_of_squares: Option<QPoly>,
    /// `Psc_t` of the characteristic pair.
    pub psc: Option<QPoly>,
}

fn morin_params(t: SingularityType) -> Result<(usize, usize, usize)> {
    match t.validate()? {
        SingularityType::Morin { m, n, r } => Ok((m, n, r)),
        SingularityType::CrossCap(m) => Ok((m, 2 * m - 1, 1)),
        _ => Err(Error::Unsupported(format!("{t} is not a Morin type"))),
    }
}

/// Characteristic polynomials in `t` over `y1..yn` for `n = m + 1`.
pub fn morin_pair(t: SingularityType) -> Result<(QUPoly, QUPoly)> {
    let (m, n, r) = morin_params(t)?;
    if n != m + 1 || r > 2 {
        return Err(Error::Unsupported(format!("{t} has no characteristic pair")));
    }
    let mut names = vec!["t".to_string()];
    names.extend(indexed_vars("y", 1..n + 1));
    let vars: Vars = names.into();
    let (a, b) = if r == 1 {
        (format!("y1*t - y{m}"), format!("t^2 - y{n}"))
    } else {
        (format!("y1*t + y2*t^2 - y{m}"), format!("t^3 + y3*t - y{n}"))
    };
    Ok((qupoly_from(&parse_q(&a, &vars)?, "t")?, qupoly_from(&parse_q(&b, &vars)?, "t")?))
}

pub fn morin_theta(t: SingularityType) -> Result<MorinTheta> {
    let (m, n, r) = morin_params(t)?;
    let vars: Vars = indexed_vars("y", 1..n + 1).into();
    match r {
        1 => {
            let mp = n - m + 1;
            let parts: Vec<String> =
                (1..mp).map(|i| format!("(y{}^2 - y{i}^2*y{n})^2", m - 1 + i)).collect();
            let sos = parse_q(&parts.join(" + "), &vars)?;
            if mp == 2 {
                let (a, b) = morin_pair(t)?;
                let theta = resultant_algo(&a, &b, Algorithm::Bareiss)?;
                let psc = psc1(&a, &b)?;
                Ok(MorinTheta { theta, sum_of_squares: Some(sos), psc: Some(psc) })
            } else {
                Ok(MorinTheta { theta: sos.clone(), sum_of_squares: Some(sos), psc: None })
            }
        }
        2 if n == m + 1 => {
            let (a, b) = morin_pair(t)?;
            let theta = resultant_algo(&a, &b, Algorithm::Bareiss)?;
            let psc = psc1(&a, &b)?;
            if m == 4 {
                let expect = parse_q(THETA_24, &vars)?;
                if theta != expect {
                    return Err(Error::Transcription("Theta_{2,4} differs from its resultant".into()));
                }
            }
            Ok(MorinTheta { theta, sum_of_squares: None, psc: Some(psc) })
        }
        _ => Err(Error::Unsupported(format!("main-analytic function of {t} is outside m <= 5 scope"))),
    }
}

/// Lifts `theta` (over the base target variables) to a suspension: renamed
/// unchanged without zero slots, `theta^2 + sum z_i^2` otherwise.
pub fn suspended_theta(theta: &QPoly, map: &MapSpec) -> Result<QPoly> {
    let Some(Suspension { zeros, .. }) = map.suspension.clone() else {
        return Ok(theta.clone());
    };
    let lifted = theta.embed(&map.target_vars)?;
    if zeros == 0 {
        return Ok(lifted);
    }
    let mut acc = lifted.mul(&lifted);
    for i in 1..=zeros {
        let z = MPoly::var(map.target_vars.clone(), &format!("z{i}"))?;
        acc = acc.add(&z.mul(&z));
    }
    Ok(acc)
}

/// Main-analytic polynomial of any supported type without suspension.
pub fn theta_any(t: SingularityType, opts: &ThetaOptions) -> Result<QPoly> {
    if t.is_ade() {
        Ok(build_theta(t, opts)?.theta)
    } else {
        Ok(morin_theta(t)?.theta)
    }
}

/// `Delta(x) = x3 - x4 x6` of the E7 `delta = 0` branch.
pub fn e7_big_delta() -> Result<QPoly> {
    parse_q("x3 - x4*x6", &x_vars(7))
}

/// Monomial `x0^e` over `params` scaled by `c`.
pub fn x0_power(params: &Vars, e: usize, c: &QPoly) -> QPoly {
    let mut m = Monomial::one(params.len());
    m.0[0] = e as u16;
    c.mul_monomial(&m, &rat_int(1))
}

/// Variables `(v, x0, ..)` of a type's polynomials in `v`.
pub fn vx_vars(t: SingularityType) -> Vars {
    v_x_vars(t.target_arity())
}

pub fn params_of(t: SingularityType) -> Vars {
    x_vars(t.target_arity())
}

pub fn parse_params(text: &str, t: SingularityType) -> Result<QPoly> {
    parse_q(text, &x_vars(t.target_arity()))
}

pub fn y_vars(n: usize) -> Vars {
    vars_from(&indexed_vars("y", 1..n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_systems_build() {
        for t in [
            SingularityType::A(2),
            SingularityType::A(5),
            SingularityType::D(4, Sign::Plus),
            SingularityType::D(7, Sign::Minus),
            SingularityType::E6,
            SingularityType::E7,
            SingularityType::E8,
        ] {
            char_system(t).unwrap();
        }
    }

    #[test]
    fn e6_b0_and_delta() {
        let cs = char_system(SingularityType::E6).unwrap();
        assert_eq!(flat(&cs.delta), parse_q("x4 + 2*v*x5", &v_x_vars(6)).unwrap());
        assert_eq!(flat(cs.b0.as_ref().unwrap()), parse_q("-3*(2*x5*v + x4)*x0", &v_x_vars(6)).unwrap());
        let cs = char_system(SingularityType::E8).unwrap();
        assert_eq!(
            flat(cs.b0.as_ref().unwrap()),
            parse_q("-3*x0*x5 - 6*x0*x6*v - 9*x0*x7*v^2", &v_x_vars(8)).unwrap()
        );
    }

    #[test]
    fn small_thetas() {
        let th = build_theta(SingularityType::A(2), &ThetaOptions::for_type(SingularityType::A(2))).unwrap();
        assert_eq!(th.theta.to_string(), "27*x0^2 + 4*x1^3");
        let d4 = d_type_a(4, Sign::Plus).unwrap();
        assert_eq!(flat(&d4), parse_q("v^4 + x3*v^3 + x2*v^2 + x0*v - 1/4*x1^2", &v_x_vars(4)).unwrap());
    }

    #[test]
    fn morin_forms() {
        let c2 = morin_theta(SingularityType::CrossCap(2)).unwrap();
        assert_eq!(c2.theta, parse_q("y2^2 - y3*y1^2", &y_vars(3)).unwrap());
        assert_eq!(c2.psc.unwrap().to_string(), "y1");
        let m = morin_theta(SingularityType::Morin { m: 4, n: 5, r: 2 }).unwrap();
        assert_eq!(m.psc.unwrap(), parse_q(S_24, &y_vars(5)).unwrap());
        assert!(morin_theta(SingularityType::Morin { m: 6, n: 8, r: 2 }).is_err());
    }

    #[test]
    fn e6_aux_has_no_x2() {
        let aux = e6_aux().unwrap();
        let i = aux.h.index_of("x2").unwrap();
        assert!(aux.h.derivative(i).is_zero());
        assert_eq!(aux.k1.to_mpoly().to_string(), "24*u^2*x5^3 - 8*x1*x5^3 - x4^3 - 4*x4*x5^3");
    }
}
