//! Exact computation with protorootoids: finite groupoids acting on Boolean
//! set algebras, their 1-cocycles, weak orders and classification.

pub mod builders;
pub mod cat;
pub mod classify;
pub mod error;
pub mod fixtures;
pub mod groupoid;
pub mod poset;
pub mod prd;
pub mod setalg;
pub mod signed;

pub use error::{Error, Result};
