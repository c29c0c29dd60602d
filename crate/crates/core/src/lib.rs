//! Brauer characters of finite groups of Lie type in defining characteristic,
//! computed from weight multiplicities of the ambient algebraic group.

pub mod brauer;
pub mod cartan;
pub mod character;
pub mod classes;
pub mod cyclotomic;
pub mod datum;
pub mod error;
pub mod formats;
pub mod library;
pub mod matching;
pub mod matrix;
pub mod modular;
pub mod orbit;
pub mod poly;
pub mod snf;
pub mod steinberg;
pub mod table;
pub mod torus;
pub mod weyl;

pub use datum::{RootDatum, TwistSpec, Weight, WeylElement};
pub use error::{Error, Result};
