//! The plane quartic, its points, forms on the plane, and intersections.

pub mod context;
pub mod form;
pub mod intersect;
pub mod local;
pub mod point;

pub use context::{CurveContext, SmoothnessCertificate};
pub use form::{monomials, Monomial, PlaneForm, Quartic};
pub use intersect::{forms_through, intersection_divisor, monomial_basis, system_dimension};
pub use local::{Branch, PRECISION};
pub use point::PlanePoint;
