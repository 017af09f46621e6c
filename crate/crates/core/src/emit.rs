//! Named objects of a singularity type, rendered for output and golden files.

use std::fmt;
use std::str::FromStr;

use crate::discriminant::{char_system, e6_aux, morin_pair, morin_theta, theta_from_system, ThetaOptions};
use crate::error::{Error, Result};
use crate::maps::{build_map, generating_family, MapSpec, SingularityType};
use crate::mpoly::QPoly;
use crate::parse::to_json;
use crate::upoly::QUPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum What {
    Theta,
    /// `Res_v(A, B)`.
    Res,
    /// `Psc_v(A, B)`.
    Psc,
    A,
    B,
    B0,
    Delta,
    /// The factor `r` with `r^2 | R`.
    SmallR,
    H,
    K0,
    K1,
    Map,
    Family,
}

impl What {
    pub const ALL: [What; 13] = [
        What::Theta,
        What::Res,
        What::Psc,
        What::A,
        What::B,
        What::B0,
        What::Delta,
        What::SmallR,
        What::H,
        What::K0,
        What::K1,
        What::Map,
        What::Family,
    ];

    pub fn name(self) -> &'static str {
        match self {
            What::Theta => "theta",
            What::Res => "R",
            What::Psc => "S",
            What::A => "A",
            What::B => "B",
            What::B0 => "B0",
            What::Delta => "delta",
            What::SmallR => "r",
            What::H => "H",
            What::K0 => "k0",
            What::K1 => "k1",
            What::Map => "map",
            What::Family => "family",
        }
    }
}

impl fmt::Display for What {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for What {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        What::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown object `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub enum Emitted {
    Poly(QPoly),
    Map(MapSpec),
}

impl Emitted {
    pub fn to_text(&self) -> String {
        match self {
            Emitted::Poly(p) => format!("{p}\n"),
            Emitted::Map(m) => m.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Emitted::Poly(p) => format!("{}\n", to_json(p)),
            Emitted::Map(m) => format!("{}\n", m.to_json()),
        }
    }

    pub fn poly(&self) -> Option<&QPoly> {
        match self {
            Emitted::Poly(p) => Some(p),
            Emitted::Map(_) => None,
        }
    }
}

/// Polynomial in `v` flattened with `v` as the most significant variable.
fn flat(u: &QUPoly) -> QPoly {
    u.to_mpoly_at(0)
}

fn missing(t: SingularityType, w: What) -> Error {
    Error::Unsupported(format!("{w} is not defined for {t}"))
}

/// Computes `what` for `t`. `opts` only affects how `theta`, `R` and `S` are computed.
pub fn emit(t: SingularityType, what: What, opts: Option<ThetaOptions>) -> Result<Emitted> {
    let t = t.validate()?;
    let poly = match what {
        What::Map => return Ok(Emitted::Map(build_map(t)?)),
        What::Family => generating_family(t)?.f,
        What::H | What::K0 | What::K1 => {
            if t != SingularityType::E6 {
                return Err(missing(t, what));
            }
            let aux = e6_aux()?;
            match what {
                What::H => aux.h,
                What::K0 => flat(&aux.k0),
                _ => flat(&aux.k1),
            }
        }
        _ if !t.is_ade() => {
            let mt = morin_theta(t)?;
            match what {
                What::Theta => mt.theta,
                What::Res => {
                    let (a, b) = morin_pair(t)?;
                    crate::resultant::resultant(&a, &b)?
                }
                What::Psc => mt.psc.ok_or_else(|| missing(t, what))?,
                What::A => flat(&morin_pair(t)?.0),
                What::B => flat(&morin_pair(t)?.1),
                _ => return Err(missing(t, what)),
            }
        }
        _ => {
            let cs = char_system(t)?;
            match what {
                What::A => flat(&cs.a),
                What::B => flat(&cs.b),
                What::B0 => flat(cs.b0.as_ref().ok_or_else(|| missing(t, what))?),
                What::Delta => flat(&cs.delta),
                What::SmallR => cs.r.clone(),
                What::Theta | What::Res | What::Psc => {
                    let opts = opts.unwrap_or_else(|| ThetaOptions::for_type(t)).with_psc(what == What::Psc);
                    let tr = theta_from_system(&cs, &opts)?;
                    match what {
                        What::Theta => tr.theta,
                        What::Res => tr.res,
                        _ => tr.psc.expect("requested"),
                    }
                }
                _ => unreachable!(),
            }
        }
    };
    Ok(Emitted::Poly(poly))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_theta_text() {
        let e = emit(SingularityType::A(2), What::Theta, None).unwrap();
        assert_eq!(e.to_text(), "27*x0^2 + 4*x1^3\n");
        assert!(emit(SingularityType::A(2), What::H, None).is_err());
        for w in What::ALL {
            assert_eq!(w.name().parse::<What>().unwrap(), w);
        }
    }
}
