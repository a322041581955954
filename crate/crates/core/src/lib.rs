//! Exact resonating-valence-bond (RVB) liquids on 2×M ladders.
//!
//! The crate builds the equal-weight superposition of all nearest-neighbour
//! directed singlet coverings of a two-leg ladder and measures how its
//! entanglement is distributed: Werner parameters on rails and steps,
//! regional entanglement and teleportation fidelities, the tangle monogamy
//! inequality, asymmetric-cloning bounds on the Werner parameters, and the
//! generalized geometric measure of genuine multipartite entanglement.
//!
//! Module map:
//!
//! - [`lattice`]: ladder geometry, sublattices, and dimer-covering enumeration.
//! - [`state`]: singlet products, the RVB state vector, and total spin.
//! - [`reduced`]: partial traces, Werner fits, regional entanglement.
//! - [`measures`]: tangle, monogamy, cloning bounds, and the GGM.
//! - [`numerics`]: small dense eigen/singular-value kernels, bisection, fits.
//! - [`sweep`]: size sweeps, figure fits, and CSV output.

pub mod error;
pub mod lattice;
pub mod measures;
pub mod numerics;
pub mod reduced;
pub mod state;
pub mod sweep;

#[cfg(test)]
mod properties;

pub use error::{Error, Result};
pub use lattice::{Boundary, DimerCovering, Edge, EdgeKind, LadderLattice, SiteId, WrapConvention};
pub use state::StateVector;
