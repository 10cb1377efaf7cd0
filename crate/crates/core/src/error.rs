use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element index {0} out of carrier range (size {1})")]
    IndexOutOfRange(usize, usize),
    #[error("carrier size {0} exceeds the cap of {1} for this operation")]
    CapExceeded(usize, usize),
    #[error("search budget exceeded while enumerating homomorphisms")]
    BudgetExceeded,
    #[error("relation is not regular on this hypergroup")]
    NotRegular,
    #[error("subset is not a closed subhypergroup")]
    NotClosed,
    #[error("hypergroup is not canonical")]
    NotCanonical,
    #[error("enumeration did not stabilize before the length cap {0}")]
    NotStabilized(usize),
    #[error("quotient cell is not single-valued; the relation is not strongly regular")]
    NotSingleValued,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("subset is not a subgroup of the quotient group")]
    NotSubgroup,
    #[error("homomorphism does not map the source kernel into the target kernel")]
    KernelNotMapped,
    #[error("relation assignments live on different universes")]
    UniverseMismatch,
    #[error("partition does not cover the carrier of this hypergroup")]
    PartitionMismatch,
    #[error("hypergroup is outside the commutative regular class required here")]
    NotInClass,
    #[error("quotient cell depends on the choice of representatives at ({0},{1})")]
    WellDefinednessViolation(usize, usize),
    #[error("table is not a hypergroup: {0}")]
    Axioms(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
