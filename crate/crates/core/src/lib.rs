//! Exact computations for symplectic fillability of tight contact
//! structures on torus bundles over the circle.
//!
//! A torus bundle is determined by its monodromy, an element of SL(2,Z).
//! Everything here is exact integer arithmetic: monodromy classification
//! and conjugacy ([`sl2z`]), the circular-sequence calculus for negative
//! hyperbolic normal forms ([`seqcalc`]), first homology and intersection
//! ledgers for the relevant cobordisms ([`homology`]), the fillability
//! verdict engine with citation-bearing answers ([`fillability`]), and a
//! rewriting system for mapping-class-group twist words on the genus-one
//! surface with two boundary circles ([`mcgwords`]).

pub mod fillability;
pub mod homology;
pub mod mcgwords;
pub mod seqcalc;
pub mod sl2z;
