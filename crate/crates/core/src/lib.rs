//! Mutual and conditional uncertainty of quantum observables, with
//! entanglement and steering detectors built on them.
//!
//! ```
//! use mutual_uncertainty::{generators::qubit_observable, states, uncertainty::mutual_uncertainty};
//!
//! let singlet = states::werner(1.0).unwrap();
//! let a = qubit_observable([1.0, 0.0, 0.0]).on_site(&[2, 2], 0).unwrap();
//! let b = qubit_observable([1.0, 0.0, 0.0]).on_site(&[2, 2], 1).unwrap();
//! let m = mutual_uncertainty(&singlet, &[a, b]).unwrap();
//! assert!((m - 2.0).abs() < 1e-12);
//! ```

pub mod bloch;
pub mod cli;
pub mod entanglement;
pub mod error;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod quadrature;
pub mod random;
pub mod reproduce;
pub mod roots;
pub mod states;
pub mod steering;
pub mod uncertainty;

pub use error::{Error, Result};
pub use operators::{DensityMatrix, Observable};
