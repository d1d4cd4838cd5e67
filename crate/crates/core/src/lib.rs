pub mod error;
pub mod experiments;
pub mod field;
pub mod hassewitt;
pub mod hyperelliptic;
pub mod lattice;
pub mod laurent;
pub mod unipoly;
pub mod zeta;

pub use error::{Error, Result};
