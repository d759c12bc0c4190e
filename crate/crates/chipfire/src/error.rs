use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("the zero strategy has no natural form")]
    ZeroStrategy,
    #[error("divisor is negative at vertex {0}, which is not the base")]
    NotSandpileForm(usize),
    #[error("configuration is not stable at vertex {0}")]
    NotStable(usize),
    #[error("not arithmetical: {0}")]
    NotArithmetical(String),
    #[error("multiplicities are not primitive (gcd {0})")]
    NotPrimitive(i64),
    #[error("budget exceeded: {needed} candidates against a budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("stabilization stopped after {0} firings")]
    StepCap(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::StepCap(_))
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
