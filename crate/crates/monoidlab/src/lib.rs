//! Word problems, constructible right ideals and structural condition checkers
//! for left cancellative monoids embedded in groups.

pub mod catalog;
pub mod conditions;
pub mod error;
pub mod graphprod;
pub mod ideals;
pub mod ktheory;
pub mod oracles;
pub mod selftest;
pub mod semilattice;
pub mod words;

pub use error::{Error, Result};
pub use graphprod::{GPWord, GraphProduct, GraphProductGroup, GraphSpec, Syllable, VertexKind};
pub use oracles::{GroupOracle, Positivity};
pub use words::{GroupWord, Letter, MonoidWord, Presentation};

/// Laurent polynomials in two variables over arbitrary-precision integers.
pub type LaurentPoly2 = oracles::laurent::Laurent<num_bigint::BigInt>;

/// Elements m + n·i√3 of Z[i√3] with machine integers.
pub type QuadInt = catalog::quad::QuadElem<i64>;
