use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in the cyclotomic field")]
    DivisionByZero,

    #[error("cannot parse scalar: {0:?}")]
    Parse(String),

    #[error("unknown group identifier: {0:?}")]
    UnknownGroup(String),

    #[error("group {0} has no catalogued degree-2 irreducible representations")]
    NoDegreeTwoIrreps(String),

    #[error("{0} is not a representation of the required subgroup")]
    NotARepresentation(String),

    #[error("braid equation fails for the given matrix")]
    BraidEquationFailed,

    #[error("braiding is not of diagonal type in the constructed basis")]
    NotDiagonal,

    #[error("unsupported lifting configuration: {0}")]
    UnsupportedLifting(String),

    #[error("reduction did not terminate (ordering bug)")]
    NonTerminatingReduction,

    #[error("unknown module label: {0:?}")]
    UnknownModule(String),

    #[error("missing golden data for group {0:?}")]
    MissingGolden(String),

    #[error("malformed golden data: {0}")]
    BadGolden(String),

    #[error("cannot parse braiding matrix: {0}")]
    BadMatrix(String),
}
