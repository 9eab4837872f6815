//! Exact-arithmetic models for orbifold Euler classes and finite Kuranishi systems.
//!
//! Everything in this crate is computed over `Q` (arbitrary-precision rationals);
//! there is no floating point anywhere in the core pipeline. The main layers are:
//!
//! - [`graph`]: dual-graph calculus for stable marked nodal curves and maps
//!   (genus, stability, stabilization, degeneration, strata enumeration).
//! - [`simplicial`], [`group`], [`action`]: finite global-quotient models of
//!   effective orbifolds as simplicial complexes with finite group actions.
//! - [`covering`]: branched coverings of quotient complexes and their degree
//!   bookkeeping.
//! - [`bundle`]: PL equivariant vector bundles, sections, multisections, the
//!   transversality test, and the seeded generic perturbation scheme.
//! - [`resolution`]: resolutions of transversal multisections into weighted
//!   branched covers, admissible triangulations, and the rational Euler cycle.
//! - [`kuranishi`]: finite Kuranishi charts, coordinate changes, dimensionally
//!   graded systems, thickenings, shrinkings, and the pure-orbibundle virtual
//!   class.
//! - [`invariants`]: closed-form degree-zero and elliptic-surface
//!   Gromov-Witten numbers in exact rationals.
//! - [`io`]: line-oriented text formats for all of the above.

pub mod action;
pub mod covering;
pub mod graph;
pub mod group;
pub mod invariants;
pub mod rat;
pub mod simplicial;

pub use rat::Rational;
