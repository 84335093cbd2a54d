//! Exact arithmetic for Hessian-curve Frobenius traces: finite-field
//! hypergeometric character sums with integer lifting, point counts and
//! isomorphism censuses, Hurwitz class numbers, the moment identities tying
//! the two sides together, and the combinatorial machinery behind their
//! asymptotics.

pub mod charsum;
pub mod classnum;
pub mod cli;
pub mod combin;
pub mod config;
pub mod error;
pub mod field;
pub mod hessian;
pub mod moments;
pub mod report;

pub use error::{Error, Result};
