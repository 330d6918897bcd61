//! Session scripts for raygroup: parsing, elaboration and command dispatch.

pub mod ast;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod run;
pub mod session;

pub use parser::parse_script;
pub use run::{execute, render_text, Options, Outcome};
