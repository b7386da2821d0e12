//! Exact computation with K-theoretic shifted symmetric functions, the
//! peak algebras they pair with, and multi-word Hopf algebras.

pub mod cli;
pub mod error;
pub mod exactpoly;
pub mod qsymbases;
pub mod shapes;
pub mod shiftedsym;
pub mod peakalg;
pub mod wordalg;

pub(crate) mod elim;
pub(crate) mod memo;
pub(crate) mod tableaux;

pub use error::{KhopfError, Result};
