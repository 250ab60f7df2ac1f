//! Exact computer-algebra core for the reduced two-body problem on the
//! sphere and the hyperbolic plane.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactfield`]: rationals, Q(i) and the tower Q(i)[κ, λ];
//! * [`ratcalc`]: polynomials and rational functions over the tower;
//! * [`linode`]: second-order linear ODEs, normal forms, exponents;
//! * [`kovacic`]: rational Riccati search, the case-II steps of Kovacic's
//!   algorithm and the Galois classification built on them;
//! * [`models`]: the four Fuchsian reductions of the normal variational
//!   equations, their closed-form coefficient tables and Hamiltonians.

pub mod exactfield;
pub mod kovacic;
pub mod linode;
pub mod models;
pub mod ratcalc;
