//! Solver library for the time-fractional sub-diffusion equation
//! u_t − B_α Δu = f with a hybridizable discontinuous Galerkin (HDG)
//! spatial discretization, convolution-quadrature time marching and
//! elementwise superconvergent postprocessing.
//!
//! Modules:
//! - [`fracops`]: Riemann–Liouville kernels, fractional operators, their
//!   adjoints, convolution-quadrature weights and the operator property
//!   verifiers.
//! - [`meshing`]: simplicial meshes of intervals and triangulated polygons.
//! - [`polyspace`]: polynomial bases, quadrature and local L² projections.
//! - [`hdg`]: local solvers, numerical trace, static condensation onto the
//!   face traces, and the coupled projections.
//! - [`timeloop`]: convolution-quadrature time marching with flux history.
//! - [`postprocess`]: elementwise reconstruction of a faster-converging
//!   approximation.
//! - [`harness`]: manufactured solutions, convergence studies and CSV/plot
//!   emission.

pub mod error;
pub mod fracops;
pub mod harness;
pub mod hdg;
pub mod meshing;
pub mod polyspace;
pub mod postprocess;
pub mod special;
pub mod timeloop;

pub use error::{Error, Result};
