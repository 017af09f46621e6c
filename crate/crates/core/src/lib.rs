//! Exact resultant machinery for the discriminants of ADE wave-front maps
//! and Morin maps.

pub mod certificates;
pub mod coeff;
pub mod dense;
pub mod discriminant;
pub mod emit;
pub mod error;
pub mod golden;
pub mod maps;
pub mod membership;
pub mod matrix;
pub mod modular;
pub mod mpoly;
pub mod parse;
pub mod resultant;
pub mod upoly;

pub use coeff::{PrimeField, Rational};
pub use error::{Error, Result};
pub use mpoly::{Monomial, MPoly, QPoly, Vars, WeightSystem, WeightedDegree, ZPoly};
pub use upoly::{QUPoly, UPoly, ZUPoly};
pub use maps::{build_map, generating_family, suspend, MapSpec, Sign, SingularityType};
