use thiserror::Error;

/// Errors raised while constructing or combining the finite structures of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("not a group: {law} fails at {witness:?}")]
    NotAGroup {
        law: &'static str,
        witness: Vec<usize>,
    },

    #[error("not a group action: {law} fails at {witness:?}")]
    NotAnAction {
        law: &'static str,
        witness: Vec<usize>,
    },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("index {index} out of range (size {size})")]
    OutOfRange { index: usize, size: usize },

    #[error("map is not equivariant: f(g x) != g f(x) for g = {g}, x = {x}")]
    NotEquivariant { g: usize, x: usize },

    #[error("group mismatch")]
    GroupMismatch,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("objects differ: {0}")]
    ObjectMismatch(String),

    #[error("biset actions are incompatible: (h u) g != h (u g) for h = {h}, u = {u}, g = {g}")]
    IncompatibleActions { h: usize, u: usize, g: usize },

    #[error("no g0 with u = u0 g0 and g0 y = f(x0) for class {class}")]
    NoWitnessG0 { class: usize },

    #[error("no section value solves the defining equation: {0}")]
    NoSolution(String),

    #[error("well-definedness failure: {0}")]
    WellDefinedness(String),

    #[error("size limit exceeded: {needed} elements requested, limit {limit}")]
    SizeLimit { needed: u128, limit: usize },

    #[error("not a ring: {law} fails at {witness:?}")]
    NotARing {
        law: &'static str,
        witness: Vec<usize>,
    },

    #[error("not an ideal: condition {condition} fails: {witness}")]
    NotAnIdeal {
        condition: &'static str,
        witness: String,
    },

    #[error("not a multiplicative subfunctor: {condition} fails: {witness}")]
    NotASubfunctor {
        condition: &'static str,
        witness: String,
    },

    #[error("unsupported functor shape: {0}")]
    UnsupportedFunctorShape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
