//! Invariants and case analysis for smooth projective varieties whose degree
//! does not exceed their embedding codimension plus dimension (`d <= n`).
//!
//! Varieties are described symbolically by [`VarietySpec`]; numbers such as
//! degree and sectional genus are obtained by intersecting in a Chow ring
//! ([`chow`]). [`classify()`] narrows numeric data `(r, d, n)` to the ten
//! possible cases and [`catalog`] lists and re-verifies representatives.

pub mod bigint_serde;
pub mod bounds;
pub mod bundles;
pub mod catalog;
pub mod chow;
pub mod classify;
pub mod varieties;

pub use bounds::{harris_bound, BoundVerdict, HarrisBound};
pub use bundles::{BundleP2, SplitBundleP1};
pub use catalog::{build_catalog, verify_catalog, CatalogEntry, VerificationReport};
pub use chow::{AmbientRing, ChowClass};
pub use classify::{classify, CaseLabel, ClassificationRecord};
pub use varieties::{invariants, InvariantRecord, VarietySpec};
