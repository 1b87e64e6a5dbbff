//! Exact computations with quantum linear spaces, their liftings, and the
//! comodule algebras that classify exact module categories over them.

pub mod algebra;
pub mod bigalois;
pub mod cache;
pub mod checks;
pub mod classification;
pub mod cli;
pub mod clifford;
pub mod cohomology;
pub mod comodule;
pub mod dump;
pub mod error;
pub mod generation;
pub mod group;
pub mod hopf;
pub mod input;
pub mod lifting;
pub mod linalg;
pub mod modcat;
pub mod pbw;
pub mod scalar;
pub mod simplicity;
pub mod twist;

pub use error::{Error, Result};
