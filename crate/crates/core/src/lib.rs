//! Combinatorial homotopy invariants of complex hyperplane arrangements.
//!
//! The crate works with exact rational data throughout: arrangements and
//! their matroids, Orlik-Solomon algebras, hypersolvable composition series,
//! minimal equivariant chain complexes with Laurent polynomial entries,
//! Fitting ideals and characteristic varieties, and graphic arrangements.

pub mod arrangement;
pub mod catalog;
pub mod chaincx;
pub mod error;
pub mod fitcv;
pub mod graphs;
pub mod homotopy;
pub mod hypersolv;
pub mod laurent;
pub mod linalg;
pub mod osalg;
pub mod poly;

pub use arrangement::{Arrangement, CircuitList, CollinearityData, LinearForm};
pub use error::{Error, Result};
pub use laurent::{GaussianRational, LaurentPoly};
pub use poly::IntPolynomial;
