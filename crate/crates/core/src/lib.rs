//! Exact computer algebra for weighted shifted symplectic and Poisson structures.
//!
//! Every computation runs over the rationals on free graded-commutative
//! algebras with a Koszul sign discipline. The modules build on each other:
//!
//! - [`algebra`]: generators, sign-normalized monomials, elements, derivations.
//! - [`linalg`]: exact echelon forms, kernels, solves and matrices over elements.
//! - [`cdga`]: weighted free CDGAs, graded pieces, homology, resolutions, truncations.
//! - [`derham`]: Kähler forms, the de Rham differential, pre-symplectic,
//!   symplectic, isotropic and Lagrangian checks.
//! - [`polyvector`]: shifted multiderivations with the Schouten bracket and
//!   Maurer–Cartan checks.
//! - [`correspondence`]: the compatibility map between forms and bivectors and the
//!   level-by-level solvers in both directions.
//! - [`dgla`]: differential graded Lie algebras, deformation functors,
//!   Chevalley–Eilenberg algebras, formal symplectic forms and Casimirs.
//! - [`io`] and [`cli`]: the document format and the command runner.

pub mod algebra;
pub mod cdga;
pub mod cli;
pub mod correspondence;
pub mod derham;
pub mod dgla;
pub mod error;
pub mod instances;
pub mod io;
pub mod linalg;
pub mod polyvector;
pub mod sample;
pub mod scalar;

pub use algebra::{Derivation, Element, Generator, Kind, Monomial, Truncation};
pub use error::{Error, Result};
pub use scalar::Scalar;
