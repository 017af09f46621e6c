//! Modular resultants: evaluation at grid points, Newton interpolation on a
//! lower set of exponents, Chinese remaindering over word-size primes.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeff::{add_mod, bigint_mod, inv_mod, mul_mod, primes_descending, sub_mod, Rational};
use crate::error::{Error, Result};
use crate::matrix::{bareiss_scalar, det_modp, sylvester_rows};
use crate::mpoly::{Monomial, MPoly, QPoly, WeightSystem, WeightedDegree, ZPoly};
use crate::upoly::{QUPoly, ZUPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Exact integer determinants at grid points, interpolation over Q.
    EvaluateInterpolate,
    /// Tensor-grid interpolation modulo each prime, then CRT.
    CrtPrimes,
    /// Lower-set interpolation (total and weighted degree cuts) modulo each prime, then CRT.
    Hybrid,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "evaluate-interpolate" => Ok(Strategy::EvaluateInterpolate),
            "crt-primes" => Ok(Strategy::CrtPrimes),
            "hybrid" | "modular" => Ok(Strategy::Hybrid),
            _ => Err(Error::Parse(format!("unknown strategy `{s}`"))),
        }
    }
}

/// Weights of the parameters and of the main variable under which both
/// inputs are weighted homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightHint {
    pub params: Vec<u32>,
    pub main: u32,
}

#[derive(Clone, Debug)]
pub struct ModularOptions {
    pub strategy: Strategy,
    pub budget: Option<Duration>,
    pub weights: Option<WeightHint>,
    /// JSON-lines file of completed prime images; reused on restart.
    pub checkpoint: Option<PathBuf>,
}

impl Default for ModularOptions {
    fn default() -> Self {
        ModularOptions { strategy: Strategy::Hybrid, budget: None, weights: None, checkpoint: None }
    }
}

impl ModularOptions {
    pub fn with_weights(mut self, w: WeightHint) -> Self {
        self.weights = Some(w);
        self
    }
    pub fn with_strategy(mut self, s: Strategy) -> Self {
        self.strategy = s;
        self
    }
    pub fn with_budget(mut self, b: Duration) -> Self {
        self.budget = Some(b);
        self
    }
}

/// Statistics of the last modular run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModularStats {
    pub points: usize,
    pub primes: usize,
    pub resumed_primes: usize,
}

struct Problem {
    k: usize,
    a: Vec<ZPoly>,
    b: Vec<ZPoly>,
    n: usize,
    m: usize,
    j: usize,
}

impl Problem {
    fn size(&self) -> usize {
        self.n + self.m - 2 * self.j
    }

    /// Entry (row, col) of the sub-Sylvester matrix, as an index into a or b.
    fn layout(&self) -> Vec<Vec<Option<(bool, usize)>>> {
        let a: Vec<Option<(bool, usize)>> = (0..=self.n).map(|i| Some((true, i))).collect();
        let b: Vec<Option<(bool, usize)>> = (0..=self.m).map(|i| Some((false, i))).collect();
        let rows = sylvester_rows(&a, &b, self.m - self.j, self.n - self.j);
        rows.into_iter().map(|r| r.into_iter().take(self.size()).collect()).collect()
    }

    fn entry<'a>(&'a self, e: &(bool, usize)) -> &'a ZPoly {
        if e.0 {
            &self.a[e.1]
        } else {
            &self.b[e.1]
        }
    }

    fn fingerprint(&self, support_len: usize) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |s: &str| {
            for byte in s.bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(&format!("{} {} {} {} {}", self.k, self.n, self.m, self.j, support_len));
        for c in self.a.iter().chain(self.b.iter()) {
            eat(&c.to_string());
            eat(";");
        }
        h
    }
}

/// Exponent support on which the determinant is interpolated.
struct Support {
    k: usize,
    /// Interpolation axes (parameters other than the dehomogenised one).
    axes: Vec<usize>,
    /// Dehomogenised variable, its weight and the weighted degree of the result.
    dehom: Option<(usize, u32, u64, Vec<u32>)>,
    /// Flattened exponents, `k` entries per point.
    points: Vec<u16>,
    max_node: Vec<u16>,
}

impl Support {
    fn len(&self) -> usize {
        if self.k == 0 {
            1
        } else {
            self.points.len() / self.k
        }
    }

    fn point(&self, i: usize) -> &[u16] {
        &self.points[i * self.k..(i + 1) * self.k]
    }

    /// Fibers along each axis: contiguous runs of point indices `e, e+1*axis, ...`.
    fn fibers(&self) -> Vec<Vec<Vec<u32>>> {
        let key = |p: &[u16]| -> u128 {
            p.iter().fold(0u128, |acc, &e| acc * 65536 + e as u128)
        };
        let index: HashMap<u128, u32> =
            (0..self.len()).map(|i| (key(self.point(i)), i as u32)).collect();
        self.axes
            .iter()
            .map(|&ax| {
                let mut out = Vec::new();
                for i in 0..self.len() {
                    let p = self.point(i);
                    if p[ax] != 0 {
                        continue;
                    }
                    let mut fiber = vec![i as u32];
                    let mut q = p.to_vec();
                    loop {
                        q[ax] += 1;
                        match index.get(&key(&q)) {
                            Some(&idx) => fiber.push(idx),
                            None => break,
                        }
                    }
                    if fiber.len() > 1 {
                        out.push(fiber);
                    }
                }
                out
            })
            .collect()
    }
}

fn entry_degrees(p: &Problem, layout: &[Vec<Option<(bool, usize)>>], f: &dyn Fn(&ZPoly) -> u64) -> u64 {
    let rows: u64 = layout
        .iter()
        .map(|r| r.iter().flatten().filter(|e| !p.entry(e).is_zero()).map(|e| f(p.entry(e))).max().unwrap_or(0))
        .sum();
    let n = layout.len();
    let cols: u64 = (0..n)
        .map(|c| {
            layout
                .iter()
                .filter_map(|r| r[c].as_ref())
                .filter(|e| !p.entry(e).is_zero())
                .map(|e| f(p.entry(e)))
                .max()
                .unwrap_or(0)
        })
        .sum();
    rows.min(cols)
}

/// Weighted degree of the determinant when both inputs are weighted homogeneous.
fn weighted_det_degree(p: &Problem, w: &WeightHint) -> Option<i64> {
    if w.params.len() != p.k || w.params.iter().any(|&x| x == 0) || w.main == 0 {
        return None;
    }
    let ws = WeightSystem::new(w.params.clone()).ok()?;
    let hom = |cs: &[ZPoly]| -> Option<i64> {
        let mut d: Option<i64> = None;
        for (i, c) in cs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match c.weighted_degree(&ws).ok()? {
                WeightedDegree::Homogeneous(e) => {
                    let full = e as i64 + i as i64 * w.main as i64;
                    if d.is_some_and(|d| d != full) {
                        return None;
                    }
                    d = Some(full);
                }
                WeightedDegree::NotHomogeneous => return None,
            }
        }
        d
    };
    let da = hom(&p.a)?;
    let db = hom(&p.b)?;
    let (n, m, j, wv) = (p.n as i64, p.m as i64, p.j as i64, w.main as i64);
    let ra = m - j;
    let rb = n - j;
    let size = n + m - 2 * j;
    Some(
        ra * (da - n * wv) - wv * ra * (ra - 1) / 2 + rb * (db - m * wv) - wv * rb * (rb - 1) / 2
            + wv * size * (size - 1) / 2,
    )
}

const MAX_POINTS: usize = 40_000_000;

fn build_support(p: &Problem, strategy: Strategy, weights: Option<&WeightHint>) -> Result<Option<Support>> {
    let layout = p.layout();
    let k = p.k;
    let deg: Vec<u64> = (0..k).map(|i| entry_degrees(p, &layout, &|f| f.degree_in(i) as u64)).collect();
    let total = entry_degrees(p, &layout, &|f| f.total_degree() as u64);
    let mut dehom = None;
    if strategy != Strategy::CrtPrimes {
        if let Some(w) = weights {
            match weighted_det_degree(p, w) {
                Some(d) if d < 0 => return Ok(None),
                Some(d) if k > 0 => {
                    let t = (0..k).min_by_key(|&i| (w.params[i], std::cmp::Reverse(deg[i]))).unwrap();
                    dehom = Some((t, w.params[t], d as u64, w.params.clone()));
                }
                _ => {}
            }
        }
    }
    let axes: Vec<usize> = (0..k).filter(|&i| dehom.as_ref().map_or(true, |d| d.0 != i)).collect();
    let use_total = strategy != Strategy::CrtPrimes;
    let mut points: Vec<u16> = Vec::new();
    let mut cur = vec![0u16; k];
    let mut count = 0usize;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize,
        axes: &[usize],
        deg: &[u64],
        total_left: u64,
        wleft: Option<(u64, &[u32])>,
        cur: &mut Vec<u16>,
        points: &mut Vec<u16>,
        count: &mut usize,
    ) -> Result<()> {
        if depth == axes.len() {
            *count += 1;
            if *count > MAX_POINTS {
                return Err(Error::Unsupported("interpolation support too large".into()));
            }
            points.extend_from_slice(cur);
            return Ok(());
        }
        let ax = axes[depth];
        let mut e = 0u64;
        while e <= deg[ax] && e <= total_left {
            let wl = match wleft {
                Some((left, w)) => {
                    let cost = e * w[ax] as u64;
                    if cost > left {
                        break;
                    }
                    Some((left - cost, w))
                }
                None => None,
            };
            cur[ax] = e as u16;
            rec(depth + 1, axes, deg, total_left - e, wl, cur, points, count)?;
            e += 1;
        }
        cur[ax] = 0;
        Ok(())
    }
    let total_cap = if use_total { total } else { u64::MAX };
    let wl = dehom.as_ref().map(|(_, _, d, w)| (*d, w.as_slice()));
    rec(0, &axes, &deg, total_cap, wl, &mut cur, &mut points, &mut count)?;
    let mut max_node = vec![0u16; k];
    for i in 0..count {
        for (a, &e) in points[i * k..(i + 1) * k].iter().enumerate() {
            max_node[a] = max_node[a].max(e);
        }
    }
    Ok(Some(Support { k, axes, dehom, points, max_node }))
}

/// Coefficient bound: product over rows of the summed 1-norms (and likewise columns).
fn coefficient_bound(p: &Problem) -> BigInt {
    let layout = p.layout();
    let row: BigInt = layout
        .iter()
        .map(|r| r.iter().flatten().map(|e| p.entry(e).norm1()).sum::<BigInt>())
        .product();
    let n = layout.len();
    let col: BigInt = (0..n)
        .map(|c| layout.iter().filter_map(|r| r[c].as_ref()).map(|e| p.entry(e).norm1()).sum::<BigInt>())
        .product();
    row.min(col)
}

struct ModEval {
    p: u64,
    coeffs: Vec<Vec<(Monomial, u64)>>,
    /// pow[var][node][e]
    pow: Vec<Vec<Vec<u64>>>,
    layout: Vec<Vec<Option<(bool, usize)>>>,
    nb: usize,
}

impl ModEval {
    fn new(prob: &Problem, sup: &Support, p: u64) -> Self {
        let coeffs: Vec<Vec<(Monomial, u64)>> =
            prob.a.iter().chain(prob.b.iter()).map(|c| c.reduce_mod(p)).collect();
        let k = prob.k;
        let mut pow = Vec::with_capacity(k);
        for i in 0..k {
            let maxe = prob.a.iter().chain(prob.b.iter()).map(|c| c.degree_in(i)).max().unwrap_or(0) as usize;
            let nodes: Vec<u64> = match &sup.dehom {
                Some((t, ..)) if *t == i => vec![1],
                _ => (0..=sup.max_node[i] as u64).collect(),
            };
            pow.push(
                nodes
                    .iter()
                    .map(|&x| {
                        let mut v = vec![1u64; maxe + 1];
                        for e in 1..=maxe {
                            v[e] = mul_mod(v[e - 1], x % p, p);
                        }
                        v
                    })
                    .collect(),
            );
        }
        ModEval { p, coeffs, pow, layout: prob.layout(), nb: prob.a.len() }
    }

    fn det_at(&self, pt: &[u16], dehom: Option<usize>) -> u64 {
        let p = self.p;
        let vals: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| {
                let mut acc = 0u64;
                for (m, k) in c {
                    let mut t = *k;
                    for (i, &e) in m.0.iter().enumerate() {
                        if e > 0 {
                            let node = if dehom == Some(i) { 0 } else { pt[i] as usize };
                            t = mul_mod(t, self.pow[i][node][e as usize], p);
                        }
                    }
                    acc = add_mod(acc, t, p);
                }
                acc
            })
            .collect();
        let mut mat: Vec<Vec<u64>> = self
            .layout
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        Some((true, i)) => vals[*i],
                        Some((false, i)) => vals[self.nb + *i],
                        None => 0,
                    })
                    .collect()
            })
            .collect();
        det_modp(&mut mat, p)
    }
}

/// Divided differences along each axis, then conversion to the monomial basis.
/// Nodes along every axis are `0, 1, 2, ...`.
fn newton_to_monomial_modp(vals: &mut [u64], fibers: &[Vec<Vec<u32>>], p: u64, max_len: usize) {
    let inv: Vec<u64> = (0..=max_len as u64).map(|k| if k == 0 { 0 } else { inv_mod(k % p, p).unwrap() }).collect();
    for axis in fibers {
        for fiber in axis {
            let mut c: Vec<u64> = fiber.iter().map(|&i| vals[i as usize]).collect();
            let l = c.len();
            for k in 1..l {
                for jj in (k..l).rev() {
                    c[jj] = mul_mod(sub_mod(c[jj], c[jj - 1], p), inv[k], p);
                }
            }
            for (t, &i) in fiber.iter().enumerate() {
                vals[i as usize] = c[t];
            }
        }
    }
    for axis in fibers {
        for fiber in axis {
            let c: Vec<u64> = fiber.iter().map(|&i| vals[i as usize]).collect();
            let l = c.len();
            // Horner in the Newton basis with nodes 0..l-1
            let mut poly = vec![0u64; l];
            poly[0] = c[l - 1];
            let mut deg = 0;
            for jj in (0..l - 1).rev() {
                // poly = poly * (y - jj) + c[jj]
                let node = jj as u64 % p;
                for d in (0..=deg + 1).rev() {
                    let lower = if d > 0 { poly[d - 1] } else { 0 };
                    let here = if d <= deg { mul_mod(poly[d], node, p) } else { 0 };
                    poly[d] = sub_mod(lower, here, p);
                }
                deg += 1;
                poly[0] = add_mod(poly[0], c[jj], p);
            }
            for (t, &i) in fiber.iter().enumerate() {
                vals[i as usize] = poly[t];
            }
        }
    }
}

fn newton_to_monomial_q(vals: &mut [Rational], fibers: &[Vec<Vec<u32>>]) {
    for axis in fibers {
        for fiber in axis {
            let mut c: Vec<Rational> = fiber.iter().map(|&i| vals[i as usize].clone()).collect();
            let l = c.len();
            for k in 1..l {
                for jj in (k..l).rev() {
                    c[jj] = (&c[jj] - &c[jj - 1]) / Rational::from_integer(BigInt::from(k));
                }
            }
            for (t, &i) in fiber.iter().enumerate() {
                vals[i as usize] = c[t].clone();
            }
        }
    }
    for axis in fibers {
        for fiber in axis {
            let c: Vec<Rational> = fiber.iter().map(|&i| vals[i as usize].clone()).collect();
            let l = c.len();
            let mut poly = vec![Rational::zero(); l];
            poly[0] = c[l - 1].clone();
            let mut deg = 0;
            for jj in (0..l - 1).rev() {
                let node = Rational::from_integer(BigInt::from(jj));
                for d in (0..=deg + 1).rev() {
                    let lower = if d > 0 { poly[d - 1].clone() } else { Rational::zero() };
                    let here = if d <= deg { &poly[d] * &node } else { Rational::zero() };
                    poly[d] = lower - here;
                }
                deg += 1;
                poly[0] = &poly[0] + &c[jj];
            }
            for (t, &i) in fiber.iter().enumerate() {
                vals[i as usize] = poly[t].clone();
            }
        }
    }
}

struct Checkpoint {
    path: PathBuf,
    fingerprint: u64,
}

impl Checkpoint {
    fn load(&self, n_points: usize) -> Result<Vec<(u64, Vec<u64>)>> {
        let Ok(f) = std::fs::File::open(&self.path) else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        for line in std::io::BufReader::new(f).lines() {
            let line = line?;
            let Ok(v) = serde_json::from_str::<serde_json::Value>(&line) else { continue };
            let fp = v.get("fingerprint").and_then(|x| x.as_str()).unwrap_or("");
            if fp != format!("{:016x}", self.fingerprint) {
                continue;
            }
            let Some(p) = v.get("prime").and_then(|x| x.as_u64()) else { continue };
            let Some(res) = v.get("residues").and_then(|x| x.as_array()) else { continue };
            let res: Vec<u64> = res.iter().filter_map(|x| x.as_u64()).collect();
            if res.len() == n_points {
                out.push((p, res));
            }
        }
        Ok(out)
    }

    fn append(&self, p: u64, res: &[u64]) -> Result<()> {
        let mut f = std::fs::OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut line = format!(
            "{{\"fingerprint\":\"{:016x}\",\"prime\":{},\"points\":{},\"residues\":[",
            self.fingerprint,
            p,
            res.len()
        );
        for (i, r) in res.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&r.to_string());
        }
        line.push_str("]}\n");
        f.write_all(line.as_bytes())?;
        Ok(())
    }
}

fn check_budget(start: Instant, budget: Option<Duration>) -> Result<()> {
    match budget {
        Some(b) if start.elapsed() > b => Err(Error::BudgetExceeded(b)),
        _ => Ok(()),
    }
}

fn image_modp(prob: &Problem, sup: &Support, fibers: &[Vec<Vec<u32>>], p: u64, start: Instant, budget: Option<Duration>) -> Result<Vec<u64>> {
    let ev = ModEval::new(prob, sup, p);
    let dehom = sup.dehom.as_ref().map(|d| d.0);
    let n = sup.len();
    let mut vals = vec![0u64; n];
    const CHUNK: usize = 4096;
    let results: Vec<Result<()>> = vals
        .par_chunks_mut(CHUNK)
        .enumerate()
        .map(|(ci, chunk)| {
            check_budget(start, budget)?;
            for (o, v) in chunk.iter_mut().enumerate() {
                let i = ci * CHUNK + o;
                *v = if sup.k == 0 { ev.det_at(&[], None) } else { ev.det_at(sup.point(i), dehom) };
            }
            Ok(())
        })
        .collect();
    for r in results {
        r?;
    }
    let max_len = fibers.iter().flat_map(|a| a.iter().map(|f| f.len())).max().unwrap_or(1);
    newton_to_monomial_modp(&mut vals, fibers, p, max_len);
    Ok(vals)
}

/// Monomial of the result for support point `i`, restoring the dehomogenised exponent.
fn result_monomial(sup: &Support, i: usize) -> Option<Monomial> {
    let mut m = Monomial::one(sup.k);
    if sup.k == 0 {
        return Some(m);
    }
    for (a, &e) in sup.point(i).iter().enumerate() {
        m.0[a] = e;
    }
    if let Some((t, wt, d, w)) = &sup.dehom {
        let used: u64 = sup.axes.iter().map(|&a| m.0[a] as u64 * w[a] as u64).sum();
        if used > *d || (d - used) % *wt as u64 != 0 {
            return None;
        }
        m.0[*t] = ((d - used) / *wt as u64) as u16;
    }
    Some(m)
}

fn det_modular_z(prob: &Problem, opts: &ModularOptions, stats: &mut ModularStats) -> Result<ZPoly> {
    let start = Instant::now();
    let vars: crate::mpoly::Vars = prob.a[0].vars().clone();
    let Some(sup) = build_support(prob, opts.strategy, opts.weights.as_ref())? else {
        return Ok(MPoly::zero(vars));
    };
    let fibers = sup.fibers();
    stats.points = sup.len();

    if opts.strategy == Strategy::EvaluateInterpolate {
        let layout = prob.layout();
        let dehom = sup.dehom.as_ref().map(|d| d.0);
        let mut vals: Vec<Rational> = (0..sup.len())
            .into_par_iter()
            .map(|i| {
                let pt: Vec<BigInt> = (0..prob.k)
                    .map(|a| if dehom == Some(a) { BigInt::one() } else { BigInt::from(sup.point(i)[a]) })
                    .collect();
                let av: Vec<BigInt> = prob.a.iter().map(|c| c.eval(&pt).unwrap()).collect();
                let bv: Vec<BigInt> = prob.b.iter().map(|c| c.eval(&pt).unwrap()).collect();
                let mat: Vec<Vec<BigInt>> = layout
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|e| match e {
                                Some((true, i)) => av[*i].clone(),
                                Some((false, i)) => bv[*i].clone(),
                                None => BigInt::zero(),
                            })
                            .collect()
                    })
                    .collect();
                Rational::from_integer(bareiss_scalar(mat))
            })
            .collect();
        check_budget(start, opts.budget)?;
        newton_to_monomial_q(&mut vals, &fibers);
        let mut terms = Vec::new();
        for (i, v) in vals.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let m = result_monomial(&sup, i).ok_or_else(|| Error::Unsupported("weight hint inconsistent with result".into()))?;
            if !v.is_integer() {
                return Err(Error::Unsupported("non-integral interpolant".into()));
            }
            terms.push((m, v.to_integer()));
        }
        return Ok(MPoly::from_terms(vars, terms));
    }

    let bound = coefficient_bound(prob);
    let need = BigInt::from(2) * bound + 1;
    let lead_const: Option<BigInt> = [prob.a.last().unwrap(), prob.b.last().unwrap()]
        .iter()
        .filter_map(|c| c.constant_value())
        .filter(|c| !c.is_zero())
        .reduce(|x, y| x * y);

    let ckpt = opts.checkpoint.as_ref().map(|path| Checkpoint { path: path.clone(), fingerprint: prob.fingerprint(sup.len()) });
    let mut images: Vec<(u64, Vec<u64>)> = match &ckpt {
        Some(c) => c.load(sup.len())?,
        None => Vec::new(),
    };
    images.sort_by(|a, b| b.0.cmp(&a.0));
    images.dedup_by_key(|x| x.0);
    stats.resumed_primes = images.len();
    let mut modulus: BigInt = images.iter().map(|(p, _)| BigInt::from(*p)).product();
    let max_node = sup.max_node.iter().copied().max().unwrap_or(0) as u64;
    for p in primes_descending(1u64 << 31) {
        if modulus >= need {
            break;
        }
        check_budget(start, opts.budget)?;
        if images.iter().any(|(q, _)| *q == p) {
            continue;
        }
        if p <= max_node + 1 {
            return Err(Error::PrimesExhausted);
        }
        if let Some(l) = &lead_const {
            if bigint_mod(l, p) == 0 {
                continue;
            }
        }
        let img = image_modp(prob, &sup, &fibers, p, start, opts.budget)?;
        if let Some(c) = &ckpt {
            c.append(p, &img)?;
        }
        modulus *= p;
        images.push((p, img));
    }
    stats.primes = images.len();

    // Garner reconstruction per coefficient
    let primes: Vec<u64> = images.iter().map(|x| x.0).collect();
    let r = primes.len();
    let mut inv_table = vec![vec![0u64; r]; r];
    for i in 0..r {
        for jj in 0..i {
            inv_table[i][jj] = inv_mod(primes[jj] % primes[i], primes[i]).unwrap();
        }
    }
    let half = &modulus / 2;
    let coeffs: Vec<Option<(usize, BigInt)>> = (0..sup.len())
        .into_par_iter()
        .map(|idx| {
            let res: Vec<u64> = images.iter().map(|(_, v)| v[idx]).collect();
            if res.iter().all(|&x| x == 0) {
                return None;
            }
            let mut digits = vec![0u64; r];
            for i in 0..r {
                let p = primes[i];
                let mut x = res[i];
                for jj in 0..i {
                    x = mul_mod(sub_mod(x, digits[jj] % p, p), inv_table[i][jj], p);
                }
                digits[i] = x;
            }
            let mut v = BigInt::from(digits[r - 1]);
            for i in (0..r - 1).rev() {
                v = v * primes[i] + digits[i];
            }
            if v > half {
                v -= &modulus;
            }
            Some((idx, v))
        })
        .collect();
    let mut terms = Vec::new();
    for (idx, v) in coeffs.into_iter().flatten() {
        let m = result_monomial(&sup, idx)
            .ok_or_else(|| Error::Unsupported("weight hint inconsistent with result".into()))?;
        terms.push((m, v));
    }
    Ok(MPoly::from_terms(vars, terms))
}

fn det_modular(a: &QUPoly, b: &QUPoly, j: usize, opts: &ModularOptions) -> Result<(QPoly, ModularStats)> {
    if a.params() != b.params() || a.var() != b.var() {
        return Err(Error::ArityMismatch(a.params().to_vec(), b.params().to_vec()));
    }
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
    let den = |u: &QUPoly| {
        u.coeffs().iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, &c.denominator_lcm()))
    };
    let (c, d) = (den(a), den(b));
    let za: ZUPoly = a.map_coeffs(|x| x.scale(&Rational::from_integer(c.clone()))).to_z().unwrap();
    let zb: ZUPoly = b.map_coeffs(|x| x.scale(&Rational::from_integer(d.clone()))).to_z().unwrap();
    let prob = Problem { k: a.params().len(), a: za.coeffs().to_vec(), b: zb.coeffs().to_vec(), n, m, j };
    let mut stats = ModularStats::default();
    if n + m == 2 * j {
        return Ok((QPoly::one(a.params().clone()), stats));
    }
    let r = det_modular_z(&prob, opts, &mut stats)?.to_q();
    let k = Rational::from_integer(num_traits::pow(c, m - j) * num_traits::pow(d, n - j));
    Ok((if k.is_one() { r } else { r.scale(&(Rational::one() / k)) }, stats))
}

/// `Res_v(a, b)` by evaluation/interpolation and CRT; identical to [`crate::resultant::resultant`].
pub fn resultant_modular(a: &QUPoly, b: &QUPoly, opts: &ModularOptions) -> Result<QPoly> {
    Ok(det_modular(a, b, 0, opts)?.0)
}

pub fn resultant_modular_stats(a: &QUPoly, b: &QUPoly, opts: &ModularOptions) -> Result<(QPoly, ModularStats)> {
    det_modular(a, b, 0, opts)
}

/// `Res^(j)_v(a, b)` by the same pipeline.
pub fn psc_modular(a: &QUPoly, b: &QUPoly, j: usize, opts: &ModularOptions) -> Result<QPoly> {
    Ok(det_modular(a, b, j, opts)?.0)
}
