use alloc::string::String;
use core::fmt;

/// Errors raised by graph construction, path sets and generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vertex index outside `0..n`.
    VertexOutOfRange { vertex: usize, n: usize },
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    /// The parent map does not describe a single rooted tree.
    NotATree(String),
    /// Two paths share an internal vertex.
    InternalVertexConflict(usize),
    /// Consecutive path vertices are not adjacent in the graph.
    NotAPathInGraph { path: usize, from: usize, to: usize },
    /// Two paths use the same edge.
    NotEdgeDisjoint { first: usize, second: usize },
    /// A path has fewer than two edges or repeats a vertex.
    MalformedPath { path: usize, reason: &'static str },
    /// Paths whose ordering constraints form a cycle.
    UnorderablePaths,
    InvalidPrufer(String),
    InvalidParameter(&'static str),
    /// Rejection sampling gave up.
    RejectionCapExceeded { attempts: u64, what: &'static str },
    ZeroVector,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {} out of range for {} vertices", vertex + 1, n)
            }
            Error::SelfLoop(v) => write!(f, "self-loop at vertex {}", v + 1),
            Error::DuplicateEdge(u, v) => write!(f, "duplicate edge {} {}", u + 1, v + 1),
            Error::NotATree(why) => write!(f, "not a tree: {why}"),
            Error::InternalVertexConflict(v) => write!(
                f,
                "internal-vertex conflict: vertex {} is internal to two paths",
                v + 1
            ),
            Error::NotAPathInGraph { path, from, to } => write!(
                f,
                "not a path in graph: path {} uses non-edge {} {}",
                path + 1,
                from + 1,
                to + 1
            ),
            Error::NotEdgeDisjoint { first, second } => write!(
                f,
                "not edge-disjoint: paths {} and {} share an edge",
                first + 1,
                second + 1
            ),
            Error::MalformedPath { path, reason } => {
                write!(f, "malformed path {}: {reason}", path + 1)
            }
            Error::UnorderablePaths => {
                f.write_str("paths cannot be ordered: endpoint/internal constraints are cyclic")
            }
            Error::InvalidPrufer(why) => write!(f, "invalid Prufer sequence: {why}"),
            Error::InvalidParameter(why) => write!(f, "invalid parameter: {why}"),
            Error::RejectionCapExceeded { attempts, what } => {
                write!(f, "{what} unreachable after {attempts} attempts")
            }
            Error::ZeroVector => f.write_str("zero vector has no primitive direction"),
        }
    }
}

impl core::error::Error for Error {}
