//! Matrix partial orders (minus, one-sided minus, star, sharp, core), the
//! subspace geometry behind them, and generalized inverses of sums.

pub mod batch;
pub mod error;
pub mod gen;
pub mod geninv;
pub mod linalg;
pub mod lsq;
pub mod mtx;
pub mod orders;
pub mod range_additivity;
pub mod subspace;
pub mod sum_inverses;

pub use error::{Error, Result};
pub use linalg::{Matrix, ToleranceConfig, Vector};
pub use orders::{OrderKind, OrderReport};
pub use subspace::{Projection, Subspace};
