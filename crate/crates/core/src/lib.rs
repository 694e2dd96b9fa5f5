//! Number-theoretic core for the `tzl` toolkit: a segmented sieve serving
//! primality, von Mangoldt and Möbius values; admissible offset tuples and
//! prime k-tuple enumeration; truncated tuple zeta-type series; finite-N
//! audits of shift-lattice inequalities; and log-log growth probes.
//!
//! Everything here is deterministic: floating-point sums are compensated and
//! chunked at fixed boundaries, so results are bit-identical regardless of
//! thread count.

pub mod admissible;
pub mod error;
pub mod growth;
pub mod kahan;
pub mod lemma;
pub mod series;
pub mod sieve;

pub use admissible::{AdmissibilityReport, EquivalenceClass, OffsetTuple};
pub use error::{Error, Result};
pub use growth::{GrowthFit, MertensProbe, PairDoubleCount, RatioPoint};
pub use kahan::KahanSum;
pub use lemma::{LemmaParams, LemmaReport, RayCheck};
pub use series::{SeriesKind, SeriesSample, WeightContext};
pub use sieve::SieveTable;
