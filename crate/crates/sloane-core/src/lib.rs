//! Exact arithmetic for the dynamics of digit-product maps: the t-shifted
//! Sloane maps (multiply all base-b digits after adding t) and the
//! Erdős–Sloane map (multiply the nonzero digits).
//!
//! The crate provides:
//!
//! - arbitrary-precision radix conversion with digit statistics and exact
//!   rational equidistribution tests ([`numbase`]);
//! - single map steps through two independent routes ([`sloanemaps`]);
//! - budgeted orbit iteration with cycle detection, persistence, and
//!   heuristic divergence verdicts ([`orbits`]);
//! - verification suites for the attractor structure, the inequality
//!   lemmas, the threshold roots, and persistence-growth bounds
//!   ([`verify`]);
//! - measurement tools for the equidistribution conjectures and the
//!   ternary ones-chain ([`conjectures`]).
//!
//! All computations on naturals are exact. Real-valued inequality checks
//! run in directed-rounding interval arithmetic and refuse to answer
//! rather than guess. The asymptotic limsup statements and the
//! equidistribution conjectures themselves are not decidable by any
//! finite computation; the suites here check their desk-scale
//! consequences and report evidence, nothing more.
//!
//! The crate is `no_std` (it requires `alloc`); IO, file formats, and the
//! command-line interface live in the companion `sloane-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod conjectures;
pub mod error;
pub mod interval;
pub mod numbase;
pub mod orbits;
pub mod primes;
pub mod sloanemaps;
pub mod verify;

pub use error::Error;
pub use numbase::{Base, DigitStats, DigitVector, Epsilon, Natural};
pub use orbits::{OrbitBudget, OrbitResult, OrbitStatus};
pub use sloanemaps::MapSpec;
