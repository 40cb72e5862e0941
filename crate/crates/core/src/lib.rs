//! Exact solving, data reduction and hardness-gadget generation for
//! triangle-constrained and seeded s-clubs.
//!
//! An s-club is a vertex set whose induced subgraph has diameter at most `s`.
//! The crate handles three refinements of it: every vertex in at least ℓ
//! triangles ([`Variant::VertexTriangle`]), a spanning subgraph whose edges
//! each lie in at least ℓ triangles ([`Variant::EdgeTriangle`]), and clubs
//! that must contain a seed set ([`Variant::Seeded`]).

pub mod error;
pub mod generators;
pub mod graph;
pub mod kernel;
pub mod properties;
pub mod solve;

mod dense;

pub use error::{Error, Result};
pub use graph::{Diameter, Edge, EdgeSet, Graph, Vertex, VertexSet};
pub use properties::{Certificate, ProblemSpec, Variant};
