//! Second trace forms of central simple algebras over fields of
//! characteristic two.

#![allow(clippy::needless_range_loop)]

pub mod csa;
pub mod error;
pub mod field;
pub mod quadform;
pub mod spec;
pub mod theorems;

pub use error::{Error, Result};
pub use field::{Elem, Field, Poly};
