//! File formats, random instances and the command-line front end for
//! [`catcoh_core`].

pub mod check;
pub mod cli;
pub mod input;
pub mod random;

pub use cli::{run, Outcome};
pub use input::{parse_document, Document, ParseError};
