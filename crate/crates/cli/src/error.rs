use gdcage_core::cage::CageError;
use gdcage_core::geometry::GeometryError;
use gdcage_core::graph::GraphError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error("network: {0}")]
    Network(String),
    #[error(transparent)]
    Cage(#[from] CageError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Cage(_) | CliError::Geometry(_) => 2,
            CliError::Io { .. } | CliError::Input(_) | CliError::Network(_) | CliError::Graph(_) => 3,
        }
    }
}
