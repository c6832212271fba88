use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arrow `{0}` has equal source and target")]
    LoopArrow(String),
    #[error("arrow `{arrow}` references undeclared vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("vector has {got} entries but the quiver has {expected} vertices")]
    IndexMismatch { expected: usize, got: usize },
    #[error("quiver is not affine: {0}")]
    NotAffine(String),
    #[error("quiver has an oriented cycle")]
    OrientedCycle,
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("grade {0:?} lies beyond the level cutoff")]
    CutoffExceeded(Vec<i64>),
    #[error("operands belong to different quivers")]
    MixedQuiver,
    #[error("representations live over different fields or quivers")]
    FieldMismatch,
    #[error("{needed} distinct primes needed, {got} given")]
    InsufficientPrimes { needed: usize, got: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("interpolation failed: {0}")]
    Interpolation(String),
    #[error("total pairing <theta, dim X> = {0} is nonzero")]
    NonzeroTotalPairing(i64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("internal check failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Work limits for the exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Upper bound on the number of points any single sweep may visit.
    pub max_ops: u128,
    /// Upper bound on the size of an endomorphism algebra scanned element by element.
    pub max_end_elements: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_ops: 1_000_000_000,
            max_end_elements: 1_000_000,
        }
    }
}

impl Budget {
    pub fn with_max_ops(max_ops: u128) -> Self {
        Budget {
            max_ops,
            ..Budget::default()
        }
    }

    pub(crate) fn end_check(&self, needed: u128) -> Result<()> {
        if needed > self.max_end_elements {
            Err(Error::BudgetExceeded {
                what: "endomorphism algebra elements",
                needed,
                limit: self.max_end_elements,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_ops {
            Err(Error::BudgetExceeded {
                what,
                needed,
                limit: self.max_ops,
            })
        } else {
            Ok(())
        }
    }
}
