//! Exact evaluation of planar spin networks in the symmetric sl2 diagram
//! calculus, with Apollonian and Ford packing generators and analytic
//! continuations of the closed forms.
//!
//! The layers build on each other: [`numerics`] supplies exact rationals and
//! factorials, [`diagram`] evaluates closed strand diagrams, [`recoupling`]
//! holds the loop, theta and tetrahedron closed forms, [`network`] evaluates
//! labelled trivalent graphs, [`apollonian`] turns disk packings into
//! networks, and [`analytic`] continues the disk formulas to real arguments.

pub mod analytic;
pub mod apollonian;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod io;
pub mod network;
pub mod numerics;
pub mod recoupling;

pub use error::{Error, Result};
pub use numerics::Rational;
