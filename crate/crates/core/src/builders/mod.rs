//! Constructions of Coxeter and hyperplane-arrangement protorootoids.

pub mod arrangement;
pub mod coxeter;
pub mod cyclotomic;
pub mod fm;

pub use arrangement::{build_arrangement, chambers, Arrangement, ArrangementRootoid, Chamber};
pub use coxeter::{
    build_coxeter, coxeter_ball, reflection_subgroup, CoxeterBall, CoxeterChecks, CoxeterMatrix,
    CoxeterSystem, ReflectionSubgroup, DEFAULT_BUDGET,
};
