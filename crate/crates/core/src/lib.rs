pub mod engine;
pub mod error;
pub mod invariants;
pub mod linkdiag;
pub mod oracle;
pub mod periodicity;
pub mod qlaurent;
pub mod reduce;
pub mod relcheck;
pub mod web;

pub use engine::{engine_by_name, Engine};
pub use error::{Error, Result};
pub use qlaurent::LPoly;
