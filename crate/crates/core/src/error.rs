use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("cluster has no edges")]
    EmptyCluster,

    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(usize, usize),

    #[error("vertex set is not a vertex cover: edge ({0}, {1}) is uncovered")]
    InvalidCover(usize, usize),

    #[error("point {0} is not assigned to a cluster")]
    UnassignedPoint(usize),

    #[error("instance has no point-to-edge provenance")]
    MissingProvenance,

    #[error("{what} exceeds size guard: {actual} > {limit}")]
    GuardExceeded { what: &'static str, limit: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("k = {k} exceeds the number of points ({points})")]
    TooManyClusters { k: usize, points: usize },

    #[error("expander generation failed after {attempts} attempts (best rho found: {best_rho:?})")]
    ExpanderGeneration { attempts: usize, best_rho: Option<f64> },

    #[error("vector is not an independent set of the product: ({0}, {1}) are adjacent")]
    NotIndependent(usize, usize),

    #[error("graph is not regular")]
    NotRegular,

    #[error("lambda = {lambda} is below the spectral radius {rho}")]
    LambdaBelowRadius { lambda: f64, rho: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
