//! Certified asymptotic expansions for the partition function.
//!
//! The crate computes truncated expansions in powers of n^{-1/2} for
//!
//! * p(n+k), relative to e^{π√(2n/3)}/(4n√3) ([`shift_expansion`]),
//! * 1/p(n), relative to 4n√3·e^{−π√(2n/3)} ([`inverse_expansion`]),
//! * p(n+k)/p(n) ([`quotient_expansion`]),
//!
//! together with explicit error constants and cutoffs, so that each
//! evaluation is a [`BoundedApprox`]: a center and a certified radius.
//! Every bound can be checked against exact big-integer partition numbers
//! ([`exact_partition`]) and every coefficient against an independent
//! truncated-series expansion ([`series_oracle`]). The [`harness`] runs the
//! verification suites and renders JSON/CSV reports.
//!
//! ```
//! use partition_expansions::{ExactPartitionTable, ExpansionTable, PrecisionContext};
//!
//! let ctx = PrecisionContext::new(128).unwrap();
//! let table = ExpansionTable::ratio(1, 2, &ctx).unwrap();
//! let oracle = ExactPartitionTable::build(table.cutoff + 1);
//! let (dev, radius) = table.band_sides(&oracle, table.cutoff).unwrap();
//! assert!(dev <= radius);
//! ```

pub mod appendix_sums;
pub mod error;
pub mod exact_partition;
pub mod harness;
pub mod inverse_expansion;
pub mod numerics;
pub mod quotient_expansion;
pub mod series_oracle;
pub mod shift_expansion;

pub use error::{Error, Result};
pub use exact_partition::ExactPartitionTable;
pub use numerics::{HPReal, PrecisionContext, Status};
pub use quotient_expansion::{BoundedApprox, ExpansionTable, Kind};
pub use series_oracle::TruncatedSeries;
