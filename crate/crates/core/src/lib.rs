//! Binary matroids and the circuit-difference property.
//!
//! A matroid is *circuit-difference* when the symmetric difference of any
//! two distinct intersecting circuits is again a circuit. This crate
//! provides:
//!
//! * [`gf2`]: word-packed linear algebra over GF(2);
//! * [`matroid`]: binary matroids with circuits, cocircuits, duals, minors,
//!   connectivity, series classes and isomorphism;
//! * [`zoo`]: constructors for the named matroids used throughout;
//! * [`predicates`]: brute-force decision procedures (circuit-difference,
//!   skew circuits, circuit/hyperplane complementarity, unbreakability,
//!   regularity);
//! * [`recognizer`]: structural recognition of regular circuit-difference
//!   matroids from their cosimplified components;
//! * [`exminors`]: series minors, the excluded series minors and the
//!   affine-geometry family describing them.

pub mod error;
pub mod exminors;
pub mod gf2;
pub mod matroid;
pub mod predicates;
pub mod recognizer;
pub mod zoo;

pub use error::{MatroidError, Result};
pub use gf2::{ElementSet, Gf2Matrix, Gf2Vector};
pub use matroid::{BinaryMatroid, CircuitFamily, SeriesClassPartition};
