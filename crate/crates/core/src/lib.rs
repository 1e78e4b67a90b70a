//! Exact algebra kernels for exterior and polynomial algebras over a prime
//! field: dense linear algebra, graded ideals, generic initial ideals, Cartan
//! homology, simplicial complexes, algebraic shifting and degree functions.
//!
//! Everything is computed exactly over F_q (default q = 2^31 - 1, a stand-in
//! for a field of characteristic zero at desk scale). All operations are pure
//! functions of their inputs plus an explicit seed, so results are
//! reproducible bit for bit.

pub mod cartan;
pub mod error;
pub mod exterior;
pub mod field;
pub mod gin;
pub mod matrix;
pub mod sample;
pub mod shifting;
pub mod simplicial;
pub mod symmetric;

pub use cartan::{CartanBettiTable, DividedPowerIndex};
pub use error::{Error, Result};
pub use exterior::{ExtGradedIdeal, ExtMonomial, ExtTermOrder, MStatistics};
pub use field::{Fp, DEFAULT_PRIME};
pub use gin::GinResult;
pub use shifting::{DegreeReport, IteratedBettiTriangle, ShiftOperator};
pub use matrix::DenseMatrix;
pub use simplicial::{FTriangle, FVector, HTriangle, SimplicialComplex};
pub use symmetric::{SymIdeal, SymMonomial};
