//! Shared inputs for the benchmarks.

use wavefront_core::discriminant::char_system;
use wavefront_core::{QUPoly, SingularityType};

/// Characteristic pair `(A, B)` of an ADE type.
pub fn pair(t: SingularityType) -> (QUPoly, QUPoly) {
    let cs = char_system(t).expect("valid ADE type");
    (cs.a, cs.b)
}
