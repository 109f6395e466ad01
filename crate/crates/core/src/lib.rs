//! Exact computations with Jacobi diagrams: the diagram algebra modulo STU,
//! deframing, Alexander-Conway weight systems and Lie (super)algebra weight
//! systems.

pub mod conway;
pub mod deframing;
pub mod diagram;
pub mod hopf;
pub mod lie;
pub mod linear;
