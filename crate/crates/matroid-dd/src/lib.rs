//! Matroids represented as reduced ordered binary decision diagrams.
//!
//! The crate has three layers:
//!
//! * a small combinatorial substrate — explicit [`family::SetFamily`] bit-vector
//!   families and the hash-consed diagram store in [`dd`], which supports both
//!   BDD and ZDD reduction rules over a fixed element order;
//! * matroids as independence oracles ([`matroid::Matroid`]) with constructors
//!   for the usual classes (free, uniform, partition, nested, transversal,
//!   laminar, graphic, binary-vector, explicit) and the derived operations
//!   (dual, deletion, contraction, direct sum);
//! * the operations connecting the two: [`build`] turns a matroid into a
//!   diagram of its independent sets or bases, [`transforms`] rewrites one
//!   diagram variant into another without re-enumerating, [`analysis`] counts
//!   minors and checks width bounds and path-width, and [`oracle`] answers
//!   independence and rank queries by walking a ZDD.
//!
//! Everything is sized for exhaustive, desk-scale verification: ground sets are
//! bit masks in a `u64`, and the expensive operations take explicit limits.

pub mod analysis;
pub mod build;
pub mod dd;
pub mod family;
pub mod matroid;
pub mod oracle;
pub mod transforms;

pub use build::{build_dd, build_dd_limited, build_dd_via_minors, BuildTarget, TargetFamily};
pub use dd::{DdKind, Diagram, ElementOrder, Node, NodeId, Store};
pub use family::SetFamily;
pub use matroid::{ClassTag, GaleBasis, Matroid};
