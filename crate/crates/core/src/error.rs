use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: out-of-range labels, non-edges, bad files.
    #[error("input error: {0}")]
    Input(String),
    /// The request exceeds what the exact machinery supports.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The instance admits no feasible solution.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A decision oracle answered inconsistently during self-reduction.
    #[error("oracle fault: {0}")]
    OracleFault(String),
    /// An internal bound was exceeded; indicates a framework bug.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("epsilon must lie in (0, 1], got {eps}")))
    }
}
