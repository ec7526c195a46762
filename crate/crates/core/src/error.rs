use thiserror::Error;

use crate::complex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertexId(String),

    #[error("vertex {vertex} out of range for a table of {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("dimension {requested} out of range (complex has dimension {dim})")]
    DimensionOutOfRange { requested: usize, dim: usize },

    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(Simplex),

    #[error("moment parameter {0} used for more than one vertex")]
    DuplicateParameter(i64),

    #[error("no generic configuration found after {attempts} attempts")]
    GenericityExhausted { attempts: u32 },

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("cone apex is not generic: {0}")]
    DegenerateApex(String),

    #[error("enumeration exceeded the bound of {bound} objects")]
    ComplexTooLarge { bound: usize },

    #[error("not a tetrahedron of the complex: {0}")]
    NotATetrahedron(String),

    #[error("sphere transport broken: {0}")]
    TransportBroken(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
