//! Finite fields, projective planes, biaffine Levi graphs and amalgamation.

pub mod amalgam;
pub mod biaffine;
pub mod field;
pub mod plane;

pub use amalgam::{amalgamate, regular_graphs, search_amalgam, AmalgamSearch, AmalgamSpec, ClassEdges};
pub use biaffine::{biaffine, default_flag, distance4_classes, BiaffineLevi, ClassKind, PlaneType, Side};
pub use field::{gf, FiniteField};
pub use plane::{levi, pg2, ProjectivePlane};

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("field order {0} exceeds 32")]
    FieldTooLarge(usize),
    #[error("point {point} out of range ({count} points)")]
    PointOutOfRange { point: usize, count: usize },
    #[error("line {line} out of range ({count} lines)")]
    LineOutOfRange { line: usize, count: usize },
    #[error("type {plane_type} biaffine plane needs a {} point-line pair", if *.incident { "non-incident" } else { "incident" })]
    IncidenceMismatch { plane_type: u8, incident: bool },
    #[error("plane type must be 1 or 2, got {0}")]
    BadType(u8),
    #[error("graph has order {found}, expected {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("no {kind:?} class with index {index}")]
    ClassOutOfRange { kind: ClassKind, index: usize },
    #[error("local vertex {vertex} out of range for a class of size {size}")]
    LocalVertexOutOfRange { vertex: usize, size: usize },
    #[error("auxiliary edge {u}-{v} leaves its class")]
    CrossClass { u: usize, v: usize },
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NonUniformDegree { vertex: usize, degree: usize, expected: usize },
    #[error("no {a}-regular graph on a class of {size} vertices")]
    InfeasibleIncrement { a: usize, size: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
