//! An exact computational laboratory for finite unital rings.
//!
//! The crate builds rings from a small construction language (integers
//! mod n, Galois fields, matrix and triangular rings, products, trivial
//! extensions, truncated polynomial rings, quaternions, trivial Morita
//! contexts), classifies their elements (idempotent, nilpotent, unit,
//! central, radical, zero-insertive) with verifiable witnesses, decides
//! ring-level properties with certificates, and re-verifies a catalogue
//! of structural statements over a built-in corpus of rings.

pub mod audit;
pub mod bitset;
pub mod cert;
pub mod classify;
pub mod construct;
pub mod dsl;
pub mod expr;
pub mod properties;
pub mod report;
pub mod ring;
pub mod theorems;

pub use classify::Gates;
pub use expr::RingExpr;
pub use ring::{ElementId, FiniteRing};
