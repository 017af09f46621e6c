//! Standard singularity maps, their suspensions and generating families.

use std::fmt;

use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::mpoly::{indexed_vars, vars_from, MPoly, QPoly, Vars};
use crate::parse::{parse_q, to_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn sigma(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityType {
    A(usize),
    D(usize, Sign),
    E6,
    E7,
    E8,
    Morin { m: usize, n: usize, r: usize },
    CrossCap(usize),
}

impl SingularityType {
    pub fn validate(self) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidParameters(s));
        match self {
            SingularityType::A(k) if k < 2 => bad(format!("A_k needs k >= 2, got {k}")),
            SingularityType::D(k, _) if k < 4 => bad(format!("D_k needs k >= 4, got {k}")),
            SingularityType::Morin { m, n, r } => {
                if !(n > m && m >= 2 && r >= 1) {
                    return bad(format!("Morin needs n > m >= 2 and r >= 1, got ({m},{n},{r})"));
                }
                if m < r * (n - m + 1) {
                    return bad(format!("Morin needs m >= r(n-m+1), got ({m},{n},{r})"));
                }
                Ok(self)
            }
            SingularityType::CrossCap(m) if m < 2 => bad(format!("cross cap needs m >= 2, got {m}")),
            t => Ok(t),
        }
    }

    pub fn is_ade(self) -> bool {
        !matches!(self, SingularityType::Morin { .. } | SingularityType::CrossCap(_))
    }

    /// Dimension of the target (number of unfolding parameters for ADE types).
    pub fn target_arity(self) -> usize {
        match self {
            SingularityType::A(k) | SingularityType::D(k, _) => k,
            SingularityType::E6 => 6,
            SingularityType::E7 => 7,
            SingularityType::E8 => 8,
            SingularityType::Morin { n, .. } => n,
            SingularityType::CrossCap(m) => 2 * m - 1,
        }
    }

    pub fn source_arity(self) -> usize {
        match self {
            SingularityType::A(k) => k - 1,
            SingularityType::D(k, _) => k - 1,
            SingularityType::E6 => 5,
            SingularityType::E7 => 6,
            SingularityType::E8 => 7,
            SingularityType::Morin { m, .. } => m,
            SingularityType::CrossCap(m) => m,
        }
    }

    /// Parameter names `x0 .. x{k-1}` (ADE) or `y1 .. yn` (Morin, cross caps).
    pub fn target_vars(self) -> Vars {
        match self {
            SingularityType::Morin { .. } | SingularityType::CrossCap(_) => {
                indexed_vars("y", 1..self.target_arity() + 1).into()
            }
            _ => indexed_vars("x", 0..self.target_arity()).into(),
        }
    }

    pub fn source_vars(self) -> Vars {
        let mut v: Vec<String> = Vec::new();
        match self {
            SingularityType::A(k) => {
                v.push("v".into());
                v.extend(indexed_vars("x", 2..k));
            }
            SingularityType::D(k, _) => {
                v.extend(["u".to_string(), "v".to_string()]);
                v.extend(indexed_vars("x", 3..k));
            }
            SingularityType::E6 | SingularityType::E7 | SingularityType::E8 => {
                v.extend(["u".to_string(), "v".to_string()]);
                v.extend(indexed_vars("x", 3..self.target_arity()));
            }
            SingularityType::Morin { m, .. } | SingularityType::CrossCap(m) => {
                v.extend(indexed_vars("x", 1..m + 1));
            }
        }
        v.into()
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::A(k) => write!(f, "A{k}"),
            SingularityType::D(k, Sign::Plus) => write!(f, "D{k}+"),
            SingularityType::D(k, Sign::Minus) => write!(f, "D{k}-"),
            SingularityType::E6 => write!(f, "E6"),
            SingularityType::E7 => write!(f, "E7"),
            SingularityType::E8 => write!(f, "E8"),
            SingularityType::Morin { m, n, r } => write!(f, "M{m},{n},{r}"),
            SingularityType::CrossCap(m) => write!(f, "C{m}"),
        }
    }
}

impl std::str::FromStr for SingularityType {
    type Err = Error;

    /// `A<k>`, `D<k>[+|-]`, `E6`, `E7`, `E8`, `M<m>,<n>,<r>`, `C<m>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown singularity type `{s}`"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let t = match s.chars().next().ok_or_else(bad)? {
            'A' | 'a' => SingularityType::A(num(&s[1..])?),
            'D' | 'd' => {
                let rest = &s[1..];
                if let Some(k) = rest.strip_suffix('+') {
                    SingularityType::D(num(k)?, Sign::Plus)
                } else if let Some(k) = rest.strip_suffix('-') {
                    SingularityType::D(num(k)?, Sign::Minus)
                } else {
                    SingularityType::D(num(rest)?, Sign::Plus)
                }
            }
            'E' | 'e' => match &s[1..] {
                "6" => SingularityType::E6,
                "7" => SingularityType::E7,
                "8" => SingularityType::E8,
                _ => return Err(bad()),
            },
            'M' | 'm' => {
                let parts: Vec<&str> = s[1..].split(',').collect();
                if parts.len() != 3 {
                    return Err(bad());
                }
                SingularityType::Morin { m: num(parts[0])?, n: num(parts[1])?, r: num(parts[2])? }
            }
            'C' | 'c' => SingularityType::CrossCap(num(&s[1..])?),
            _ => return Err(bad()),
        };
        t.validate()
    }
}

/// Pass-through and zero slots added by a suspension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suspension {
    pub pass: usize,
    pub zeros: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpec {
    pub ty: SingularityType,
    pub source_vars: Vars,
    pub target_vars: Vars,
    pub components: Vec<QPoly>,
    pub suspension: Option<Suspension>,
}

impl MapSpec {
    pub fn source_arity(&self) -> usize {
        self.source_vars.len()
    }

    pub fn target_arity(&self) -> usize {
        self.target_vars.len()
    }

    pub fn eval(&self, params: &[Rational]) -> Result<Vec<Rational>> {
        if params.len() != self.source_arity() {
            return Err(Error::PointArity { expected: self.source_arity(), got: params.len() });
        }
        self.components.iter().map(|c| c.eval(params)).collect()
    }

    /// Header plus JSON components.
    pub fn to_json(&self) -> String {
        let (params, sign) = match self.ty {
            SingularityType::A(k) => (format!("[{k}]"), "null".to_string()),
            SingularityType::D(k, s) => (format!("[{k}]"), format!("\"{}\"", if s == Sign::Plus { "+" } else { "-" })),
            SingularityType::Morin { m, n, r } => (format!("[{m},{n},{r}]"), "null".into()),
            SingularityType::CrossCap(m) => (format!("[{m}]"), "null".into()),
            _ => ("[]".into(), "null".into()),
        };
        let comps: Vec<String> = self.components.iter().map(to_json).collect();
        let susp = match &self.suspension {
            Some(s) => format!("{{\"pass\":{},\"zeros\":{}}}", s.pass, s.zeros),
            None => "null".into(),
        };
        format!(
            "{{\"type\":\"{}\",\"parameters\":{},\"sign\":{},\"suspension\":{},\"source\":{},\"target\":{},\"components\":[{}]}}",
            self.ty,
            params,
            sign,
            susp,
            serde_json::to_string(&self.source_vars.to_vec()).unwrap(),
            serde_json::to_string(&self.target_vars.to_vec()).unwrap(),
            comps.join(",")
        )
    }

    pub fn to_text(&self) -> String {
        self.components
            .iter()
            .zip(self.target_vars.iter())
            .map(|(c, t)| format!("{t} = {c}\n"))
            .collect()
    }
}

fn term(c: i64, body: &str) -> String {
    if body.is_empty() {
        return format!("{c}");
    }
    format!("{c}*{body}")
}

fn pw(var: &str, e: usize) -> String {
    match e {
        0 => "1".into(),
        1 => var.into(),
        _ => format!("{var}^{e}"),
    }
}

fn joined(parts: &[String]) -> String {
    let s: Vec<&String> = parts.iter().filter(|p| !p.is_empty()).collect();
    if s.is_empty() {
        "0".into()
    } else {
        s.iter().map(|x| format!("({x})")).collect::<Vec<_>>().join(" + ")
    }
}

fn a_components(k: usize) -> Vec<String> {
    let mut h0 = vec![term(k as i64, &pw("v", k + 1))];
    let mut h1 = vec![term(-(k as i64 + 1), &pw("v", k))];
    for i in 2..k {
        h0.push(term(i as i64 - 1, &format!("x{i}*{}", pw("v", i))));
        h1.push(term(-(i as i64), &format!("x{i}*{}", pw("v", i - 1))));
    }
    let mut out = vec![joined(&h0), joined(&h1)];
    out.extend((2..k).map(|i| format!("x{i}")));
    out
}

fn d_components(k: usize, s: i64) -> Vec<String> {
    let mut h0 = vec![term(2 * s, "u^2*v"), term(k as i64 - 2, &pw("v", k - 1))];
    let h1 = vec![term(-2 * s, "u*v")];
    let mut h2 = vec![term(-s, "u^2"), term(-(k as i64 - 1), &pw("v", k - 2))];
    for i in 3..k {
        h0.push(term(i as i64 - 2, &format!("x{i}*{}", pw("v", i - 1))));
        h2.push(term(-(i as i64 - 1), &format!("x{i}*{}", pw("v", i - 2))));
    }
    let mut out = vec![joined(&h0), joined(&h1), joined(&h2)];
    out.extend((3..k).map(|i| format!("x{i}")));
    out
}

const E6_MAP: [&str; 3] = [
    "2*u^3 + 3*v^4 + v^2*x3 + u*v*(x4 + 2*x5*v)",
    "-3*u^2 - v*x4 - v^2*x5",
    "-4*v^3 - 2*v*x3 - (x4 + 2*x5*v)*u",
];
const E7_MAP: [&str; 3] = [
    "2*u^3 + x3*v^2 + 2*x4*v^3 + u*v*(3*v^2 + 2*x6*v + x5)",
    "-3*u^2 - v^3 - x5*v - x6*v^2",
    "-2*x3*v - 3*x4*v^2 - u*(3*v^2 + 2*x6*v + x5)",
];
const E8_MAP: [&str; 3] = [
    "2*u^3 + 4*v^5 + x3*v^2 + 2*x4*v^3 + u*v*(3*x7*v^2 + 2*x6*v + x5)",
    "-3*u^2 - x5*v - x6*v^2 - x7*v^3",
    "-5*v^4 - 2*x3*v - 3*x4*v^2 - u*(3*x7*v^2 + 2*x6*v + x5)",
];

fn morin_components(m: usize, n: usize, r: usize) -> Vec<String> {
    let xm = format!("x{m}");
    let mut out: Vec<String> = (1..m).map(|i| format!("x{i}")).collect();
    for i in 1..=n - m {
        let parts: Vec<String> = (1..=r).map(|j| format!("x{}*{}", j + r * (i - 1), pw(&xm, j))).collect();
        out.push(parts.join(" + "));
    }
    let mut last = vec![pw(&xm, r + 1)];
    last.extend((1..r).map(|j| format!("x{}*{}", j + r * (n - m), pw(&xm, j))));
    out.push(last.join(" + "));
    out
}

pub fn build_map(t: SingularityType) -> Result<MapSpec> {
    let t = t.validate()?;
    let src = t.source_vars();
    let texts: Vec<String> = match t {
        SingularityType::A(k) => a_components(k),
        SingularityType::D(k, s) => d_components(k, s.sigma()),
        SingularityType::E6 | SingularityType::E7 | SingularityType::E8 => {
            let base = match t {
                SingularityType::E6 => E6_MAP,
                SingularityType::E7 => E7_MAP,
                _ => E8_MAP,
            };
            let mut v: Vec<String> = base.iter().map(|s| s.to_string()).collect();
            v.extend(indexed_vars("x", 3..t.target_arity()));
            v
        }
        SingularityType::Morin { m, n, r } => morin_components(m, n, r),
        SingularityType::CrossCap(m) => morin_components(m, 2 * m - 1, 1),
    };
    let components = texts.iter().map(|s| parse_q(s, &src)).collect::<Result<Vec<_>>>()?;
    if let SingularityType::Morin { m: 4, n: 5, r: 2 } = t {
        // guard against index drift in the normal form
        let expect = ["x1", "x2", "x3", "x1*x4 + x2*x4^2", "x4^3 + x3*x4"];
        for (c, e) in components.iter().zip(expect) {
            assert_eq!(*c, parse_q(e, &src)?, "Morin(4,5,2) normal form");
        }
    }
    Ok(MapSpec { ty: t, source_vars: src, target_vars: t.target_vars(), components, suspension: None })
}

/// `(x, w) -> (h(x), w, 0)` with `new_source - k` pass-through slots.
pub fn suspend(map: &MapSpec, new_source: usize, new_target: usize) -> Result<MapSpec> {
    let (k, l) = (map.source_arity(), map.target_arity());
    if new_source < k || new_target < l || new_target - l < new_source - k {
        return Err(Error::InvalidParameters(format!(
            "cannot suspend ({k},{l}) to ({new_source},{new_target})"
        )));
    }
    let pass = new_source - k;
    let zeros = new_target - l - pass;
    let (prev_pass, prev_zeros) = map.suspension.as_ref().map_or((0, 0), |s| (s.pass, s.zeros));
    let mut src: Vec<String> = map.source_vars.to_vec();
    let new_w: Vec<String> = (prev_pass + 1..=prev_pass + pass).map(|i| format!("w{i}")).collect();
    src.extend(new_w.iter().cloned());
    let src: Vars = src.into();
    let mut tgt: Vec<String> = map.target_vars.iter().filter(|v| !v.starts_with('z')).cloned().collect();
    tgt.extend(new_w.iter().cloned());
    tgt.extend((1..=prev_zeros + zeros).map(|i| format!("z{i}")));
    let mut comps = Vec::with_capacity(new_target);
    for (c, name) in map.components.iter().zip(map.target_vars.iter()) {
        if !name.starts_with('z') {
            comps.push(c.embed(&src)?);
        }
    }
    for w in &new_w {
        comps.push(MPoly::var(src.clone(), w)?);
    }
    for _ in 0..prev_zeros + zeros {
        comps.push(MPoly::zero(src.clone()));
    }
    Ok(MapSpec {
        ty: map.ty,
        source_vars: src,
        target_vars: tgt.into(),
        components: comps,
        suspension: Some(Suspension { pass: prev_pass + pass, zeros: prev_zeros + zeros }),
    })
}

/// Positions in the Morin(m, n, 1) target of the suspended cross cap's
/// coordinates: cross-cap target slots first, then the pass-through slots.
pub fn morin_crosscap_permutation(m: usize, n: usize) -> Vec<usize> {
    let mp = n - m + 1;
    let mut perm = Vec::with_capacity(n);
    for i in 1..mp {
        perm.push(i - 1);
    }
    for i in 1..mp {
        perm.push(m - 1 + i - 1);
    }
    perm.push(n - 1);
    for s in 1..=(m - mp) {
        perm.push(mp - 1 + s - 1);
    }
    perm
}

/// Generating family for an ADE type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingFamily {
    pub ty: SingularityType,
    pub f: QPoly,
}

pub fn family_vars(t: SingularityType) -> Vars {
    let mut v: Vec<String> = match t {
        SingularityType::A(_) => vec!["v".into()],
        _ => vec!["u".into(), "v".into()],
    };
    v.extend(indexed_vars("x", 0..t.target_arity()));
    v.into()
}

pub fn generating_family(t: SingularityType) -> Result<GeneratingFamily> {
    let t = t.validate()?;
    let vars = family_vars(t);
    let text = match t {
        SingularityType::A(k) => {
            let mut parts = vec![pw("v", k + 1)];
            parts.extend((0..k).map(|i| format!("x{i}*{}", pw("v", i))));
            parts.join(" + ")
        }
        SingularityType::D(k, s) => {
            let mut parts = vec![term(s.sigma(), "u^2*v"), pw("v", k - 1), "x1*u".into(), "x0".into()];
            parts.extend((2..k).map(|i| format!("x{i}*{}", pw("v", i - 1))));
            parts.join(" + ")
        }
        SingularityType::E6 => "u^3 + v^4 + x5*u*v^2 + x4*u*v + x3*v^2 + x2*v + x1*u + x0".into(),
        SingularityType::E7 => "u^3 + u*v^3 + x6*u*v^2 + x5*u*v + x4*v^3 + x3*v^2 + x2*v + x1*u + x0".into(),
        SingularityType::E8 => {
            "u^3 + v^5 + x7*u*v^3 + x6*u*v^2 + x5*u*v + x4*v^3 + x3*v^2 + x2*v + x1*u + x0".into()
        }
        _ => return Err(Error::Unsupported(format!("no generating family for {t}"))),
    };
    Ok(GeneratingFamily { ty: t, f: parse_q(&text, &vars)? })
}

/// Substitutes the map into `F`, `F_u`, `F_v`; each result is zero for a consistent pair.
pub fn family_on_map(t: SingularityType) -> Result<Vec<QPoly>> {
    let fam = generating_family(t)?;
    let map = build_map(t)?;
    // family variables: (u?, v, x0..x{k-1}); express each in the map's source variables
    let src = map.source_vars.clone();
    let mut subs = Vec::new();
    for name in fam.f.vars().iter() {
        if name == "u" || name == "v" {
            subs.push(MPoly::var(src.clone(), name)?);
        } else {
            let idx: usize = name[1..].parse().unwrap();
            subs.push(map.components[idx].clone());
        }
    }
    let mut out = vec![fam.f.compose(&subs)?];
    for d in ["u", "v"] {
        if let Ok(i) = fam.f.index_of(d) {
            out.push(fam.f.derivative(i).compose(&subs)?);
        }
    }
    Ok(out)
}

pub fn crosscap_vars(m: usize) -> Vars {
    vars_from(&indexed_vars("y", 1..2 * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat_int;

    #[test]
    fn parse_types() {
        assert_eq!("A3".parse::<SingularityType>().unwrap(), SingularityType::A(3));
        assert_eq!("D5-".parse::<SingularityType>().unwrap(), SingularityType::D(5, Sign::Minus));
        assert_eq!("D4".parse::<SingularityType>().unwrap(), SingularityType::D(4, Sign::Plus));
        assert_eq!("M4,5,2".parse::<SingularityType>().unwrap(), SingularityType::Morin { m: 4, n: 5, r: 2 });
        assert!("A1".parse::<SingularityType>().is_err());
        assert!("D3".parse::<SingularityType>().is_err());
        assert!("M3,5,1".parse::<SingularityType>().is_ok());
        assert!("M3,5,2".parse::<SingularityType>().is_err());
        for s in ["A7", "D6+", "D6-", "E6", "E7", "E8", "M6,7,3", "C3"] {
            assert_eq!(s.parse::<SingularityType>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn printed_maps() {
        let a2 = build_map(SingularityType::A(2)).unwrap();
        let txt: Vec<String> = a2.components.iter().map(|c| c.to_string()).collect();
        assert_eq!(txt, ["2*v^3", "-3*v^2"]);
        let m = build_map(SingularityType::Morin { m: 6, n: 7, r: 3 }).unwrap();
        let txt: Vec<String> = m.components.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            txt,
            ["x1", "x2", "x3", "x4", "x5", "x1*x6 + x2*x6^2 + x3*x6^3", "x4*x6 + x5*x6^2 + x6^4"]
        );
        let m = build_map(SingularityType::Morin { m: 4, n: 5, r: 1 }).unwrap();
        let txt: Vec<String> = m.components.iter().map(|c| c.to_string()).collect();
        assert_eq!(txt, ["x1", "x2", "x3", "x1*x4", "x4^2"]);
    }

    #[test]
    fn evaluation() {
        let a3 = build_map(SingularityType::A(3)).unwrap();
        assert_eq!(a3.eval(&[rat_int(1), rat_int(0)]).unwrap(), vec![rat_int(3), rat_int(-4), rat_int(0)]);
        let c2 = build_map(SingularityType::CrossCap(2)).unwrap();
        assert_eq!(c2.eval(&[rat_int(1), rat_int(2)]).unwrap(), vec![rat_int(1), rat_int(2), rat_int(4)]);
        assert!(c2.eval(&[rat_int(1)]).is_err());
    }

    #[test]
    fn suspensions() {
        let c2 = build_map(SingularityType::CrossCap(2)).unwrap();
        let s = suspend(&c2, 3, 4).unwrap();
        let txt: Vec<String> = s.components.iter().map(|c| c.to_string()).collect();
        assert_eq!(txt, ["x1", "x1*x2", "x2^2", "w1"]);
        let a2 = build_map(SingularityType::A(2)).unwrap();
        let s = suspend(&a2, 1, 3).unwrap();
        let txt: Vec<String> = s.components.iter().map(|c| c.to_string()).collect();
        assert_eq!(txt, ["2*v^3", "-3*v^2", "0"]);
        let same = suspend(&a2, 1, 2).unwrap();
        assert_eq!(same.components, a2.components);
        assert!(suspend(&a2, 2, 2).is_err());
    }

    #[test]
    fn families() {
        let f = generating_family(SingularityType::A(2)).unwrap();
        assert_eq!(f.f.to_string(), "v^3 + v*x1 + x0");
        assert!(generating_family(SingularityType::CrossCap(2)).is_err());
    }
}

#[cfg(test)]
mod family_tests {
    use super::*;

    #[test]
    fn maps_lie_on_critical_sets() {
        let mut types: Vec<SingularityType> = (2..=8).map(SingularityType::A).collect();
        for k in 4..=8 {
            types.push(SingularityType::D(k, Sign::Plus));
            types.push(SingularityType::D(k, Sign::Minus));
        }
        types.extend([SingularityType::E6, SingularityType::E7, SingularityType::E8]);
        for t in types {
            for p in family_on_map(t).unwrap() {
                assert!(p.is_zero(), "{t}: {p}");
            }
        }
    }

    #[test]
    fn morin_r1_is_suspended_crosscap() {
        for (m, n) in [(3, 4), (4, 5), (3, 5), (4, 7)] {
            let morin = build_map(SingularityType::Morin { m, n, r: 1 }).unwrap();
            let mp = n - m + 1;
            let cc = build_map(SingularityType::CrossCap(mp)).unwrap();
            let s = suspend(&cc, m, n).unwrap();
            let perm = morin_crosscap_permutation(m, n);
            // cross-cap source x1..x{mp-1}, x{mp} and w's map onto Morin's x1..x{m-1}, x{m}
            let mut subs_names: Vec<String> = (1..mp).map(|i| format!("x{i}")).collect();
            subs_names.push(format!("x{m}"));
            subs_names.extend((mp..m).map(|i| format!("x{i}")));
            let subs: Vec<QPoly> =
                subs_names.iter().map(|nm| MPoly::var(morin.source_vars.clone(), nm).unwrap()).collect();
            for (i, c) in s.components.iter().enumerate() {
                assert_eq!(c.compose(&subs).unwrap(), morin.components[perm[i]], "({m},{n}) slot {i}");
            }
        }
    }
}
