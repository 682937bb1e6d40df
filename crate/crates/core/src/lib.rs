//! Team semantics on finite structures: dependence atoms, generalized
//! quantifiers, and dependency inference.

pub mod deps;
pub mod error;
pub mod eval;
pub mod model;
pub mod quantifiers;
pub mod syntax;

pub use error::{Error, ParseError, Result};
