//! Exact combinatorics and symmetric-polynomial algebra for the `M(3,p)` vertex
//! operator algebras: admissible partitions, the partition bijection, fermionic and
//! recursive characters, the symmetric-polynomial model of the ideal, and the
//! current-mode relations.

pub mod bijection;
pub mod character;
pub mod error;
pub mod linalg;
pub mod partition;
pub mod relations;
pub mod series;
pub mod sympoly;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{Bound, Partition};
pub use series::{QSeries, QZSeries};
