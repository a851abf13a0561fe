use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("signature (n={n}, r={r}) is outside the supported range")]
    UnsupportedSignature { n: usize, r: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point lies on a wall of the orbit-cone arrangement")]
    WallPoint,

    #[error("degenerate point configuration: {0}")]
    DegenerateConfig(String),

    #[error("random search exhausted after {attempts} attempts: {what}")]
    SearchExhausted { what: String, attempts: usize },

    #[error("chamber traversal budget of {budget} exceeded ({found} chambers found so far)")]
    TraversalBudget { budget: usize, found: usize },
}

impl Error {
    /// Short machine-readable tag, used by the CLI's `ERROR:<kind>:` prefix.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::Input(_) => "input",
            Error::UnsupportedSignature { .. } => "unsupported-signature",
            Error::Unsupported(_) => "unsupported",
            Error::Domain(_) => "domain",
            Error::WallPoint => "wall",
            Error::DegenerateConfig(_) => "degenerate-config",
            Error::SearchExhausted { .. } => "search-exhausted",
            Error::TraversalBudget { .. } => "traversal-budget",
        }
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::Dimension { expected, found })
        }
    }
}
