//! Exact arithmetic in real cyclotomic fields, certified enclosures and
//! closed-form recognition.

mod field;
mod interval;
mod poly;
mod surd;

pub use field::{ngon_conductor, FieldDescriptor, FieldElement};
pub use interval::CertifiedInterval;
pub use poly::{cyclotomic, real_cyclotomic_minpoly, totient, IntPolynomial};
pub use surd::{element_minpoly, QuadraticSurd, SurdForm};

pub(crate) use field::pow2_rational;
