//! Exact-arithmetic toolkit for studying linear syzygies.
//!
//! The crate has three layers:
//!
//! * exact scalars and dense linear algebra over `F_p` and `Q`
//!   ([`field`], [`matrix`]),
//! * multilinear algebra on exterior and symmetric powers, matrices of
//!   linear forms with their minor maps, Koszul cohomology of graded
//!   modules, and finite point sets with their syzygy invariants
//!   ([`multilinear`], [`linforms`], [`koszul`], [`points`]),
//! * seeded verification suites and text formats shared by the test suite
//!   and the command line tool ([`verify`], [`io`], [`report`]).
//!
//! Everything generic is parameterized by [`field::Field`]; the aliases
//! below fix the two concrete scalar types.

pub mod error;
pub mod field;
pub mod io;
pub mod koszul;
pub mod linforms;
pub mod matrix;
pub mod multilinear;
pub mod points;
pub mod reduce;
pub mod report;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp, Rat};
pub use matrix::DenseMatrix;

/// Dense matrix over a prime field.
pub type FpMatrix = DenseMatrix<Fp>;
/// Dense matrix over the rationals.
pub type QMatrix = DenseMatrix<Rat>;
