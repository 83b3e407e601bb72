//! Finite enriched category theory: enriched categories over pluggable
//! monoidal backends, bimodules and their composition by the bar
//! construction, composite algebras over chains with Segal checks,
//! functor Segal spaces, and the simplex-category combinatorics used to
//! index all of it.

pub mod barcomp;
pub mod bimodule;
pub mod cli;
pub mod doublecat;
pub mod enriched;
pub mod error;
pub mod fincat;
pub mod funcat;
pub mod generate;
pub mod indexcat;
pub mod report;
pub mod simplex;
pub mod vbackend;

pub use error::{Error, Result};
pub use report::{Qualifier, Report};
