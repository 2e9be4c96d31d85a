use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("multiplier is not finite at xi = {xi}")]
    NonFiniteMultiplier { xi: f64 },

    #[error("invalid Lebesgue exponent {0} (need p >= 1)")]
    InvalidExponent(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("blow-up detected at t = {t}")]
    BlowUp { t: f64 },

    #[error("CFL condition violated: dt = {dt} exceeds {limit}")]
    Cfl { dt: f64, limit: f64 },

    #[error("({q}, {r}) is not {flavor}-admissible: {violated}")]
    NotAdmissible {
        q: f64,
        r: f64,
        flavor: &'static str,
        violated: String,
    },

    #[error("horizon guard violated: {0}")]
    Horizon(String),

    #[error("invalid time window: {0}")]
    Window(String),

    #[error("symbol is singular at xi = {xi}, eta = {eta}, zeta = {zeta}")]
    SingularSymbol { xi: f64, eta: f64, zeta: f64 },

    #[error("unsupported model: {0}")]
    Model(String),

    #[error("malformed field file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
