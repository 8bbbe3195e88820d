pub mod error;
pub mod exec;
pub mod mpcore;
pub mod oracles;
pub mod regprod;
pub mod sequences;
pub mod specialfns;
pub mod tmdirichlet;
pub mod verify;

pub use error::{Error, Result};
pub use mpcore::{ApproxComplex, ApproxReal, PrecisionContext, Rigor};
pub use rug;
