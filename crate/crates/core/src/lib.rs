//! Exact computer algebra for A-polynomials of satellite knots.
//!
//! The crate computes A-polynomials of torus knots, twist knots, cables,
//! connected sums, Whitehead doubles and double-twisted doubles by exact
//! integer arithmetic, extracts strongly detected boundary slopes from
//! Newton polygons, evaluates logarithmic Mahler measures, and runs the
//! twisted-gluing resultant pipeline for doubles of the figure-eight knot.
//!
//! Modules:
//! - [`laurent2`]: bivariate integer Laurent polynomials in `L`, `M`
//! - [`knotlang`]: the knot-construction expression language
//! - [`families`]: closed-form A-polynomials (torus, iterated torus, twist)
//! - [`engine`]: satellite composition formulas and expression dispatch
//! - [`slopes`]: Newton polygons and boundary-slope composition
//! - [`mahler`]: logarithmic Mahler measure, numeric and symbolic
//! - [`respipe`]: the four-variable iterated-resultant pipeline

pub mod error;
pub mod laurent2;
pub mod knotlang;
pub mod families;
pub mod engine;
pub mod slopes;
pub mod mahler;
pub mod respipe;

pub use error::Error;
