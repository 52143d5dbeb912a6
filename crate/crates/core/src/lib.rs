//! A bijection between 210-avoiding ascent sequences and 3-nonnesting set
//! partitions, built on growth diagrams of 01-fillings of triangular shapes.
//!
//! The modules build on each other in order: [`partition`] (integer
//! partitions and strips), [`ascent`] and [`setpartition`] (the two sides of
//! the bijection), [`filling`] (Ferrers shapes, chains, the filling ↔
//! partition correspondence), [`growth`] (local rules and boundary
//! sequences) and [`bijection`]. [`oracle`] re-derives the counts by brute
//! force.

pub mod ascent;
pub mod bijection;
pub mod error;
pub mod filling;
pub mod growth;
pub mod oracle;
pub mod partition;
pub mod setpartition;

pub use ascent::{AscentSequence, Pattern, Run};
pub use bijection::{ascent_to_partition, partition_to_ascent, phi, phi_inverse, psi, psi_inverse, BijectionTrace};
pub use error::{Error, Result};
pub use filling::{Corner, FerrersShape, Filling01, TriangularFilling};
pub use growth::{backward_diagram, forward_diagram, GrowthDiagram, PartitionSequence};
pub use partition::IntegerPartition;
pub use setpartition::{ArcDiagram, SetPartition};
