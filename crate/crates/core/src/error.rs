use thiserror::Error;

/// Errors raised by constructors and analyses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square or has entries out of range")]
    MalformedTable,
    #[error("operation is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("no inverse for element {0}")]
    MissingInverse(usize),
    #[error("operator `{label}` is malformed: {reason}")]
    MalformedOperator { label: String, reason: String },
    #[error("operator `{label}` is not distributive: a({x}*{y}) != a({x})*a({y})")]
    NotDistributive { label: String, x: usize, y: usize },
    #[error("duplicate operator label `{0}`")]
    DuplicateLabel(String),
    #[error("operator label sets differ")]
    LabelMismatch,
    #[error("unknown group kind `{0}`")]
    UnknownKind(String),
    #[error("{what}: order {order} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not closed under operators")]
    NotOmegaStable,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("group is not simple")]
    NotSimple,
    #[error("family does not satisfy the commutativity conditions")]
    CommutativityFails,
    #[error("group is not semisimple")]
    NotSemisimple,
    #[error("morphism is not normal")]
    NotNormalMorphism,
    #[error("map is not a morphism: {0}")]
    NotMorphism(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
