use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("parameter domain violation: {0}")]
    ParameterDomain(String),

    #[error("non-finite sample {value} at (p={p}, q={q})")]
    NonFinite { p: usize, q: usize, value: f64 },

    #[error("multiplier `{description}` is not finite at (xi={xi}, n={n})")]
    NonFiniteSymbol { description: String, xi: f64, n: i64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("CFL violation at t={time}: max|u|={max_u}, dt={dt} exceeds limit {limit}")]
    Cfl {
        time: f64,
        max_u: f64,
        dt: f64,
        limit: f64,
    },

    #[error("blow-up sentinel tripped at t={time}: sup|u|={sup}")]
    BlowUp { time: f64, sup: f64 },

    #[error("boundary decay violated at t={time}: outer/peak amplitude ratio {ratio:e}")]
    BoundaryDecay { time: f64, ratio: f64 },

    #[error("block j={j} under-resolved: {reason}; required Lx >= {required_lx}, Nx >= {required_nx}")]
    UnderResolved {
        j: u32,
        reason: String,
        required_lx: f64,
        required_nx: usize,
    },

    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("snapshot format: {0}")]
    Format(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
