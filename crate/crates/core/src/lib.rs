//! Exact-arithmetic classification of invertible two- and four-dimensional
//! topological field theories.
//!
//! The crate is organized around a single chain of exact computations:
//!
//! * [`abelian`] — finitely generated abelian groups in invariant-factor
//!   normal form, Smith normal form, Hom/Ext/tensor/torsion functors, and
//!   extension classification by cocycle enumeration.
//! * [`descriptor`] — symbolic group descriptors mixing finitely generated
//!   parts with circle factors, Witt groups and countable sums.
//! * [`stablecoh`] — stable cohomology of Eilenberg–MacLane spectra in
//!   degrees 0..5 from an anchored fact table, cross-checked by an iterated
//!   bar-complex oracle computing the homology of deloopings by brute force.
//! * [`spectra`] — two-term spectra, the mapping-group short exact sequence,
//!   and the truncated bordism/SKK catalog.
//! * [`targets`] — the Picard-spectrum catalog of target categories and
//!   exact Witt-group arithmetic.
//! * [`manifolds`] — formal closed oriented 4-manifold and surface
//!   expressions with exact Euler characteristic and signature.
//! * [`scalar`] — exact nonzero scalars (rational-with-square-root
//!   magnitudes, rational phases).
//! * [`tqft`] — the classification theorems and partition-function
//!   evaluators, including Crane–Yetter and reflection positivity.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so the whole API is safe to use concurrently without
//! synchronization.

pub mod abelian;
pub mod descriptor;
pub mod manifolds;
pub mod scalar;
pub mod spectra;
pub mod stablecoh;
pub mod targets;
pub mod tqft;
