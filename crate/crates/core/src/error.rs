use thiserror::Error;

/// Errors raised by the construction and analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set mismatch: `{0}` vs `{1}`")]
    GroundMismatch(String, String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid expression: {0}")]
    InvalidExpression(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("cocycle condition fails at ({g}, {h}): N(gh) = {lhs} but N(g) + gN(h) = {rhs}")]
    CocycleViolation {
        g: String,
        h: String,
        lhs: String,
        rhs: String,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not a CSL0 morphism at object `{object}`: {reason}")]
    NotCsl0 { object: String, reason: String },
    #[error("invalid signed groupoid-set: {0}")]
    InvalidSigned(String),
    #[error("coxeter matrix {0}")]
    CoxeterMatrix(String),
    #[error("enumeration budget of {0} elements exhausted before closure; supply a length cutoff")]
    BudgetExhausted(usize),
    #[error("invalid arrangement: {0}")]
    Arrangement(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
