//! Milnor numbers of weighted-homogeneous polynomials with an isolated
//! singularity, computed exactly and cross-checked three ways:
//!
//! * the closed formula `mu = prod_i (d - w_i) / w_i` ([`milnor::mu_formula`]);
//! * the Hilbert series of the Milnor algebra,
//!   `prod_i (1 - t^{d - w_i}) / (1 - t^{w_i})`, divided exactly and
//!   evaluated at `t = 1` ([`series::milnor_poincare_polynomial`]);
//! * graded linear algebra on `S / (f_1, ..., f_r)` ([`milnor::mu_oracle`]).
//!
//! [`koszul`] builds the graded Koszul complex on the partial derivatives and
//! checks, degree by degree, that it is exact and resolves the Milnor algebra.
//!
//! ```
//! use milnor_orlik::{milnor, poly};
//!
//! let f = poly::Polynomial::parse("x^3 + y^5", &["x", "y"]).unwrap();
//! let report = milnor::full_report(&f, None).unwrap();
//! assert_eq!(report.weight_system.to_string(), "5,3;15");
//! assert_eq!(report.mu(), Some(8));
//! ```

pub mod cli;
pub mod corpus;
pub mod error;
pub mod grading;
pub mod koszul;
pub mod linalg;
pub mod milnor;
pub mod poly;
pub mod series;

pub use error::{Error, Result};
pub use grading::WeightSystem;
pub use poly::{ExponentVector, Polynomial};
pub use series::{IntegerPolynomial, TruncatedSeries};
