//! Exact-arithmetic Goldman bracket, Kawazumi–Kuno action and their
//! I-adic completions for oriented surfaces with boundary.
//!
//! The crate is organised bottom-up:
//!
//! * [`tensoralg`]: rationals, the completed weighted tensor Hopf algebra,
//!   derivations and exact linear algebra.
//! * [`surface`]: free-group words, conjugacy classes and the one-vertex
//!   ribbon graph realising the surface.
//! * [`goldman`]: Goldman bracket, Kawazumi–Kuno action, the path
//!   bi-pairing, Adams operations and Dehn-twist fixtures.
//! * [`magnus`]: Magnus expansions, necklaces, symplectic expansions,
//!   the Kashiwara–Vergne check and the surface-algebra resolution.
//! * [`barcx`]: bar constructions over finite DGA models and the
//!   combinatorial Chen pairing.
//! * [`verify`]: seeded property sweeps shared by the CLI and the tests.

pub mod barcx;
pub mod error;
pub mod goldman;
pub mod json;
pub mod magnus;
pub mod surface;
pub mod tensoralg;
pub mod verify;

pub use error::{Error, Result};
