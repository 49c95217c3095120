//! Exact computation of singularity thresholds for monomial ideals.
//!
//! The crate works entirely over exact integers and rationals. Monomial ideals
//! are handled combinatorially through their exponent vectors; Newton
//! polyhedra are queried through an exact simplex solver; multiplicities are
//! read off lattice-point counts; characteristic-p computations run on sparse
//! polynomials over `F_p` and `F_p[t]`.
//!
//! Module map:
//!
//! * [`monomials`]: minimal generators, products, colons, Frobenius powers,
//!   colength, height.
//! * [`polytope`]: membership in the Newton polyhedron, the diagonal
//!   parameter `mu`, integral closure.
//! * [`thresholds`]: log canonical thresholds, F-thresholds, colon formulas,
//!   valuation ideals, the Lojasiewicz exponent.
//! * [`multiplicities`]: Hilbert-Samuel and mixed multiplicities, `sigma_j`.
//! * [`dp`]: the Demailly-Pham invariant `E_l`, the bound `E_l <= c` and the
//!   equality classifier.
//! * [`charp`]: sparse polynomials in characteristic p and `nu` for
//!   polynomial ideals.
//! * [`degeneration`]: the weight-order construction for degenerating
//!   aligned complete intersections.

pub mod charp;
pub mod degeneration;
pub mod dp;
mod error;
mod lp;
pub mod monomials;
pub mod multiplicities;
pub mod polytope;
pub mod rational;
pub mod thresholds;

pub use error::{Error, Result};
pub use monomials::{minimalize, ExponentVector, MonomialIdeal};
pub use rational::Rational;
