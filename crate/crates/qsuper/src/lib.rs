//! Quantum matrix superalgebras over `Z[q, q^-1]`: PBW normal forms,
//! the `U_q(gl_{m|n})` action, invariants `X_ab`, and degree-wise checks of
//! the first and second fundamental theorems of invariant theory.
//!
//! Modules build on each other bottom-up:
//! [`laurent`] → [`exactla`] → [`hookcomb`] → [`qalgebra`] → [`uqaction`]
//! → [`invariants`], with [`rmat_hecke`] alongside.

pub mod error;
pub mod exactla;
pub mod hookcomb;
pub mod invariants;
pub mod laurent;
pub mod parity;
pub mod qalgebra;
pub mod rmat_hecke;
pub mod uqaction;

pub use error::{Error, ParseError, Result};
pub use exactla::{CoeffMatrix, CoeffVector};
pub use laurent::Laurent;
pub use qalgebra::{AlgebraPresentation, Family, GenIndex, Kind, NCElement, Word};
