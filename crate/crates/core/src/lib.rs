//! Homotopy decompositions of the suspension and double suspension of a
//! closed, smooth, connected, orientable 4-manifold whose integral homology
//! may carry 2-torsion, together with the 2-local cohomotopy bookkeeping
//! that follows from them.
//!
//! The crate is `no_std` and only needs `alloc`. Layout:
//!
//! * [`abelian`]: finitely generated abelian groups and Smith normal form.
//! * [`catalog`]: elementary complexes (spheres, Moore spaces, Chang
//!   complexes, the three-cell `A^{n+3}` complexes), their homology,
//!   cohomology operations and tabulated homotopy groups.
//! * [`normalizer`]: symbolic maps from a sphere into a wedge, reduced to a
//!   canonical form by elementary row operations, and their cofibres.
//! * [`classifier`]: the decision procedure producing `Σ²M` and `ΣM`.
//! * [`ehp`]: `π⁵` cohomotopy groups, Hopf-invariant cokernels and the
//!   surjectivity of the suspension on `π²(M; Z_(2))`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod catalog;
pub mod classifier;
pub mod ehp;
pub mod normalizer;

pub use abelian::{CyclicFactor, FgAbelianGroup, FreeRing};
pub use catalog::{ElementaryComplex, WedgeComplex};
pub use classifier::{Branch, DecompositionReport, ManifoldInvariants, Sq2Case, ThetaAction};
pub use normalizer::{MapClass, MapVector};
