use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain where the operator is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("t = {t} is outside the admissible range {lo}..={hi}")]
    Range { t: i64, lo: i64, hi: i64 },

    #[error("signal needs at least {needed} points, got {got}")]
    Length { needed: usize, got: usize },

    #[error("series did not meet tolerance after {k_max} terms (tail bound {tail_bound:e})")]
    Convergence { k_max: usize, tail_bound: f64 },

    #[error("signals start at different origins ({0} vs {1})")]
    OriginMismatch(i64, i64),

    #[error("signals live on different grids: {0}")]
    GridMismatch(String),

    #[error("orders use different alpha ({0} vs {1})")]
    AlphaMismatch(f64, f64),

    #[error("pole: {0}")]
    Pole(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("transform needs a horizon beyond t = {available} (needed {needed})")]
    HorizonOverflow { available: i64, needed: i64 },

    #[error("value at t = {0} is not finite")]
    NonFinite(i64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by parameters rather than by numerical failure.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Range { .. }
                | Error::Length { .. }
                | Error::OriginMismatch(..)
                | Error::GridMismatch(_)
                | Error::AlphaMismatch(..)
                | Error::Pole(_)
                | Error::DivisionByZero(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Range { .. } => "range",
            Error::Length { .. } => "length",
            Error::Convergence { .. } => "convergence",
            Error::OriginMismatch(..) => "origin_mismatch",
            Error::GridMismatch(_) => "grid_mismatch",
            Error::AlphaMismatch(..) => "alpha_mismatch",
            Error::Pole(_) => "pole",
            Error::DivisionByZero(_) => "division_by_zero",
            Error::HorizonOverflow { .. } => "horizon_overflow",
            Error::NonFinite(_) => "non_finite",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
