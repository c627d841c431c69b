//! Exact computations around Gorenstein normal tangent cones of integrally
//! closed ideals on normal surface singularities.
//!
//! * [`lattice`]: intersection theory on weighted dual graphs (duals,
//!   canonical cycle, `chi`, fundamental cycle, anti-nef enumerations).
//! * [`io`]: the `.wdg.json` graph format.
//! * [`reduction`]: q-sequences, normal reduction numbers, b-sequences and
//!   the Gorenstein tests built on them.
//! * [`brieskorn`]: the maximal ideal of `x^a + y^b + z^c`.
//! * [`homogeneous`]: ideals on cones over smooth plane curves of degree `d`.
//!
//! All arithmetic is exact.

pub mod brieskorn;
pub mod fixtures;
pub mod graph;
pub mod homogeneous;
pub mod io;
pub mod lattice;
pub mod rational;
pub mod reduction;

pub use graph::{Arrow, GraphError, Vertex, WeightedDualGraph};
pub use lattice::{CanonicalData, Cycle, IntersectionForm, Lattice, LatticeError};
pub use rational::Q;
pub use reduction::{BSequence, QSequence, ReductionError, StepSequence};
