//! Hashing with coalesced chains under late insertion (LISCH) and early
//! insertion (EISCH).
//!
//! * [`table`]: the hash table itself, with exact per-item displacements and
//!   unsuccessful-search costs.
//! * [`limit`]: the limiting displacement distributions as `m, n -> ∞` with
//!   `n/m -> α`, their moments and tail bounds.
//! * [`mc`]: Monte Carlo experiments on random tables against those limits.
//! * [`oracle`]: exhaustive enumeration of all `m^n` hash sequences for tiny
//!   tables.
//! * [`cli`]: the `coalesced` command-line tool.
//! * [`table1`]: the reference table of limit probabilities and moments at
//!   `α = 0.5` and `α = 1`.

pub mod cli;
pub mod error;
pub mod format;
pub mod histogram;
pub mod limit;
pub mod mc;
pub mod oracle;
pub mod policy;
pub mod quad;
pub mod stats;
pub mod table;
pub mod table1;

pub use error::{Error, Result};
pub use histogram::DisplacementHistogram;
pub use limit::{LimitDistribution, LimitSpec};
pub use policy::Policy;
pub use table::{Cell, HashTable};
