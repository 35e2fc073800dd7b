use thiserror::Error;

/// Which enumeration ran out of room.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetKind {
    /// Left cosets inside a single double coset.
    Cosets,
    /// Members of S^n at a fixed level.
    Level,
    /// Elements of a generated subgroup.
    Subgroup,
}

impl std::fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BudgetKind::Cosets => "coset",
            BudgetKind::Level => "level",
            BudgetKind::Subgroup => "subgroup",
        })
    }
}

#[derive(Debug, Error)]
pub enum HeckeError {
    /// An orbit did not close within its budget. For coset orbits this means
    /// either the pair is not a Hecke pair or the budget is too small; the two
    /// cannot be told apart from the orbit alone.
    #[error("{kind} budget of {budget} exhausted before the orbit closed (non-Hecke pair or insufficient budget)")]
    BudgetExhausted {
        kind: BudgetKind,
        budget: usize,
        /// Printed prefix of the partial orbit, for diagnostics.
        partial: Vec<String>,
    },
    #[error("element {0} does not belong to the group of this pair")]
    NotInGroup(String),
    #[error("closure is not complete; certification needs a finite co-hereditary set")]
    NotComplete,
    #[error("row identity sum_j lambda_ij L(s_j) = L(s_i)^2 violated in row {row}")]
    RowIdentityViolation { row: usize },
    #[error("certificate check failed: {0}")]
    CheckFailed(&'static str),
    #[error("no certified bound for double coset {0}")]
    MissingCertificate(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("commutator argument {index} is not in gamma")]
    NotInGamma { index: usize },
    #[error("path step {index} is not a successor of the previous double coset")]
    NotASuccessorPath { index: usize },
    #[error("gamma is not contained in the subgroup: {0}")]
    GammaNotContained(String),
    #[error("unknown pair '{0}'")]
    UnknownPair(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("cannot parse element: {0}")]
    Parse(String),
}

impl HeckeError {
    pub fn is_budget_exhausted(&self) -> bool {
        matches!(self, HeckeError::BudgetExhausted { .. })
    }

    /// Short machine-readable tag used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            HeckeError::BudgetExhausted { .. } => "BudgetExhausted",
            HeckeError::NotInGroup(_) => "NotInGroup",
            HeckeError::NotComplete => "NotComplete",
            HeckeError::RowIdentityViolation { .. } => "RowIdentityViolation",
            HeckeError::CheckFailed(_) => "CheckFailed",
            HeckeError::MissingCertificate(_) => "MissingCertificate",
            HeckeError::DimensionMismatch { .. } => "DimensionMismatch",
            HeckeError::NotInGamma { .. } => "NotInGamma",
            HeckeError::NotASuccessorPath { .. } => "NotASuccessorPath",
            HeckeError::GammaNotContained(_) => "GammaNotContained",
            HeckeError::UnknownPair(_) => "UnknownPair",
            HeckeError::BadParams(_) => "BadParams",
            HeckeError::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = HeckeError> = std::result::Result<T, E>;
