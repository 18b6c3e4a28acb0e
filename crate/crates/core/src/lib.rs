//! Exact time evolution and entanglement detection for two-qutrit states.
//!
//! The crate simulates a pair of spin-1 particles coupled by the
//! bilinear-biquadratic exchange Hamiltonian `H = s1.s2 - beta (s1.s2)^2`
//! and asks, at each instant, whether the evolved state is entangled and
//! whether that entanglement is distillable. Two detection criteria are
//! implemented: the partial-transpose (negativity) test and the
//! realignment test, which together separate free, bound, and undetected
//! entanglement for the states of interest here.
//!
//! Module layout:
//!
//! * [`linalg`] - dense complex matrices plus Jacobi eigenvalue / singular
//!   value routines sized for 9x9 problems,
//! * [`model`] - operators, the evolution unitary, and the standard initial
//!   states (the one-parameter Horodecki family and two UPB complements),
//! * [`criteria`] - partial transpose, realignment, and the derived
//!   entanglement measures and classification,
//! * [`analytic`] - closed-form spectra for the `beta = -1` evolution of the
//!   Horodecki family, kept free of `linalg` calls so they can serve as an
//!   independent cross-check of the numeric pipeline,
//! * [`sweep`] - time/parameter grids, CSV output, and the numeric-vs-closed
//!   form validation gate.

pub mod analytic;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod model;
pub mod sweep;

pub use error::{Error, Result};
