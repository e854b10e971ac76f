pub mod counting;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod fields;
pub mod grassmann;
pub mod jacobian;
pub mod par;
pub mod pencil;
pub mod selftest;
pub mod text;

pub use error::{Error, Result};
