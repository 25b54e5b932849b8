//! A laboratory for the vertex-cover to Euclidean k-means reduction.
//!
//! * [`graph`]: simple graphs, the edge-list format, small-graph enumeration.
//! * [`reduction`]: edge points `e_i + e_j`, exact cluster costs, covers to
//!   star clusterings and clusterings back to covers.
//! * [`kmeans`]: generic k-means heuristics, an exhaustive oracle and
//!   Johnson–Lindenstrauss projection.
//! * [`oracles`]: exact vertex cover, independent set and edge-partition
//!   optima.
//! * [`spectral`]: Kronecker products, spectral radii, triangle-free
//!   expanders and independent-set rounding on products.
//! * [`harness`]: verification suites, gap reports and file formats used by
//!   the `kmh` binary.

pub mod error;
pub mod formats;
pub mod graph;
pub mod harness;
pub mod kmeans;
pub mod oracles;
pub mod reduction;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex};
pub use reduction::{Clustering, Cover, KMeansInstance, Rational};
