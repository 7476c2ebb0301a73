//! The Frobenius surjectivity condition catalog: identifiers, decidable
//! checkers, the implication graph, and closure-consistent matrices.

mod catalog;
mod check;
mod closure;
mod matrix;
mod status;

pub use catalog::{ConditionId, Edge, EdgeKind, ImplicationGraph};
pub use check::{check, recheck, Budget, CheckContext, VImageWitness, WitnessStore};
pub use closure::{implication_closure, Contradiction};
pub use matrix::{
    condition_matrix, condition_matrix_with_assertions, direct_statuses, ConditionMatrix,
    MatrixCellJson, MatrixJson,
};
pub use status::{ConditionStatus, Method};
