use thiserror::Error;

/// Error type shared by every module in the crate.
///
/// The CLI maps these onto its exit-code contract: domain/unsupported errors
/// are usage problems (exit 2), `Resource` is exit 3, and a verified bound
/// failing its check is reported as exit 1 by the command itself.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Arguments are valid reals but outside the parameter family this crate
    /// supports (e.g. a Kummer-U region unreachable via the implemented
    /// transforms, or a Mills-ratio bound requested below s = 1).
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// Adaptive quadrature stopped before reaching the requested tolerance.
    #[error(
        "quadrature did not converge: estimate {estimate:.6e} with error {error:.3e} > tolerance {tolerance:.3e}; worst subinterval [{lo:.6e}, {hi:.6e}]"
    )]
    Quadrature {
        estimate: f64,
        error: f64,
        tolerance: f64,
        lo: f64,
        hi: f64,
    },

    /// A computation would exceed its size guard (e.g. the urn DP state/step
    /// product limit).
    #[error("resource guard exceeded: {0}")]
    Resource(String),

    /// An internal cross-check failed (e.g. a probability table that should
    /// normalize exactly did not).
    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
