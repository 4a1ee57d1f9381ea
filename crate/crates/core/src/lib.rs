//! Exact spectra and optical transitions of an N-site excitonic ring.
//!
//! The ring carries one two-level site per vertex with nearest-neighbour
//! hopping, so its n-excitation sectors are hardcore-boson problems that map
//! onto free fermions with a parity-dependent boundary condition. This crate
//! provides both sides of that correspondence:
//!
//! - [`analytic`]: closed-form manifold eigenstates built from momentum labels,
//!   with determinant amplitudes over the occupation basis.
//! - [`fock`]: a brute-force occupation-basis Hamiltonian, a dense Hermitian
//!   eigensolver and the optical raising operator. This is the oracle every
//!   analytic result is checked against.
//! - [`optics`]: inter-manifold dipoles, the phase-matching selection rule and
//!   the bright/dark classification of doubly excited states.
//! - [`degeneracy`]: energy ladders, mixed-category (accidental) levels and the
//!   evenly-spaced cosine triple scan.
//! - [`disorder`]: first-order degenerate perturbation coefficients and the
//!   site/coupling disorder experiments.
//! - [`verify`]: an aggregate property suite over a range of ring sizes.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, IO and the
//! command-line interface live in the companion `exciton-ring` crate.

#![no_std]

extern crate alloc;

pub mod analytic;
pub mod combinatorics;
pub mod degeneracy;
pub mod disorder;
mod error;
pub mod fock;
pub mod linalg;
pub mod model;
pub mod optics;
pub mod trig;
pub mod verify;

pub use error::{Error, Result};
pub use model::{make_uniform_ring, RingSpec, SpecViolation};

pub use num_complex::Complex64;
