// Places and curves cache data behind mutexes; hashing and ordering use only immutable keys.
#![allow(clippy::mutable_key_type)]

pub mod classgroup;
pub mod curve;
pub mod cycle;
pub mod divisor;
pub mod error;
pub mod field;
pub mod function;
pub mod linalg;
pub mod poly;
pub mod par;
pub mod riemann_roch;
pub mod symbols;
pub mod verify;
pub mod series;
pub mod snf;

pub use error::{Error, Result};
