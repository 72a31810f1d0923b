//! Exact computation of Masur-Veech volumes of odd strata of quadratic
//! differentials.
//!
//! The library has two independent layers:
//!
//! * a *formula* layer that evaluates completed volumes as finite sums over
//!   decorated stable graphs of zeta-values of Kontsevich polynomials, and
//!   recovers the true Masur-Veech volume by peeling off boundary strata
//!   contributions, all in exact rational arithmetic;
//! * a *brute-force* layer that enumerates metric ribbon graphs, counts
//!   integer metrics with prescribed boundary perimeters, and recovers the
//!   same polynomials by exact interpolation, so that every tabulated value
//!   can be re-derived from first principles at desk scale.
//!
//! Everything is exact: volumes are rational multiples of powers of pi and
//! are represented as such ([`exact::PiValue`]).

pub mod error;
pub mod exact;
pub mod kontsevich;
pub mod partitions;
pub mod ribbon;
pub mod stable;
pub mod volumes;

pub use error::{Error, Result};
pub use exact::{PiValue, Polynomial, Rat};
pub use partitions::{Composition, OddPartition};
pub use volumes::{StratumSpec, VolumeBreakdown};
