use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex id {0} does not fit in a 32-bit index")]
    IdOverflow(u64),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("report: {0}")]
    Report(String),
    #[error("oracle refuses instances with {size} vertices (limit {limit})")]
    OracleTooLarge { size: usize, limit: usize },
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
