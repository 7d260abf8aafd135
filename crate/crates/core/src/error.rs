use thiserror::Error;

use crate::fincat::CategoryError;
use crate::finspace::SpaceError;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("action of `{morphism}` is not monotone: {source}")]
    NonMonotoneAction { morphism: String, source: SpaceError },
    #[error("action is not functorial on `{g} ∘ {f}`")]
    NotFunctorial { g: String, f: String },
    #[error("no action given for `{0}`")]
    MissingAction(String),
    #[error("unknown point {point} at `{object}`")]
    UnknownPoint { object: String, point: usize },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("not an orbit: {0}")]
    NotAnOrbit(String),
    #[error("not discrete: {0}")]
    NotDiscrete(String),
    #[error("family has no free orbit on `{0}`")]
    MissingFreeOrbit(String),
    #[error("attaching map does not fit{}: {reason}", stage.map(|s| format!(" at stage {s}")).unwrap_or_default())]
    SourceMismatch { stage: Option<usize>, reason: String },
    #[error("enumeration needs about {estimate} instances, budget is {budget}")]
    BoundsTooLarge { estimate: u128, budget: u128 },
    #[error("search budget of {0} steps exceeded")]
    BudgetExceeded(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
