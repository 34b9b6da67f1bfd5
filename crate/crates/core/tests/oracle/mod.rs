//! Independent decision procedures used to cross-check the library.
//!
//! Nothing here calls into the algorithms under test; library values are
//! only read back as raw coefficients.
#![allow(dead_code)]

pub mod finite;
pub mod laurent;
pub mod q2;
