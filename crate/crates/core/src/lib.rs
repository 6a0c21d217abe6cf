pub mod cli;
pub mod clifford;
pub mod code;
pub mod error;
pub mod exact;
pub mod json;
pub mod lattice;
pub mod normal_form;
pub mod transport;

pub use error::{Error, Result};
