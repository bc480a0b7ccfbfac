use thiserror::Error;

use crate::scalar::{rat_to_string, Rat};

#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator subspace is not contained in the numerator subspace")]
    SubspaceNotContained,
    #[error("group element is singular")]
    SingularGroupElement,
    #[error("law symmetry {found} is incompatible with identity type {kind}")]
    SymmetryMismatch { kind: String, found: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("span enumeration needs ambient dimension <= {limit}, got {dim}")]
    SpanTooLarge { dim: usize, limit: usize },
    #[error("quadratic tensor is not symmetric at ({a}, {p}, {q})")]
    AsymmetricTensor { a: usize, p: usize, q: usize },
    #[error("law violates the defining identities at {} coordinates (first: {})", .nonzero.len(), first_coord(.nonzero))]
    NotOnLocus { nonzero: Vec<(usize, Rat)> },
    #[error("law is not a Lie bracket: {0}")]
    NotLie(String),
    #[error("first-order condition fails: Phi(alpha) has {0} nonzero coordinates")]
    FirstOrderObstructed(usize),
    #[error("transvectant order {order} exceeds the degrees ({deg_f}, {deg_g})")]
    OrderTooHigh { order: usize, deg_f: usize, deg_g: usize },
    #[error("transvectant order {0} is even, so the cochain is not alternating")]
    EvenOrderNotAlternating(usize),
    #[error("evaluation is not a multiple of a single basis vector: {0}")]
    NotScalarMultiple(String),
    #[error("torus does not fix the law: coordinate {coord} has weight {weight:?}")]
    TorusDoesNotFix { coord: usize, weight: Vec<i64> },
    #[error("invalid law: {0}")]
    InvalidLaw(String),
    #[error("could not detect a nilpotent ideal; supply it explicitly")]
    IdealNotDetected,
    #[error("unknown builtin algebra {0:?}")]
    UnknownBuiltin(String),
    #[error("well-definedness check failed: {0}")]
    WellDefinedness(String),
}

fn first_coord(nonzero: &[(usize, Rat)]) -> String {
    nonzero
        .first()
        .map(|(i, v)| format!("#{i} = {}", rat_to_string(v)))
        .unwrap_or_default()
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
