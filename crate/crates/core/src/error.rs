use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid graph spec `{spec}`: {message}")]
    GraphSpec { spec: String, message: String },

    #[error("vertex set is not contained in a graph on {order} vertices")]
    NotASubset { order: usize },

    #[error("clique {index} is not a complete subgraph")]
    NotAClique { index: usize },

    #[error("graph order {order} exceeds the canonical-code limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("{count} generators exceed the supported maximum of {limit}")]
    TooManyGenerators { count: usize, limit: usize },

    #[error("{0} is not a prime greater than 2^30")]
    BadModulus(u64),

    #[error("malformed clique list: {0}")]
    CliqueSpec(String),

    #[error("cache I/O: {0}")]
    Io(#[from] std::io::Error),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid golden table: {0}")]
    Golden(String),
}
