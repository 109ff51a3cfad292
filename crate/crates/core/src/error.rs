use thiserror::Error;

use crate::poly::HomPoly;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("inexact division, remainder {}", .0)]
    InexactDivision(Box<HomPoly>),
    #[error("singular matrix")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no quadric: the form is antisymmetric")]
    NoQuadric,
    #[error("not a translation operator: {0}")]
    NotTranslation(String),
    #[error("point not on the quadric")]
    NotOnQuadric,
    #[error("singular point of the quadric")]
    SingularPoint,
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("not in M1: {0}")]
    NotInM1(String),
    #[error("not expressible over Q(i): {0}")]
    Irrational(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("not normal basis: {0}")]
    NotNormal(String),
    #[error("base point: {0}")]
    BasePoint(String),
    #[error("identically zero tuple")]
    ZeroTuple,
    #[error("singular conic")]
    SingularConic,
    #[error("rank drop")]
    RankDrop,
    #[error("section undefined here")]
    SectionUndefined,
    #[error("image all degenerate")]
    AllDegenerate,
    #[error("unknown label: {0}")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
