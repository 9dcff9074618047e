use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report. Each variant has a stable string
/// code (see [`Error::code`]) that the command-line front end echoes in
/// its reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("rational function has a pole at {0}")]
    PoleAtPoint(String),
    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("bad transposition variant for p = {p}: {variant}")]
    BadVariant { p: u8, variant: String },
    #[error("3-transposition law violated: |cd| = {order} for {c} and {d}")]
    ThreeTranspositionViolation { c: String, d: String, order: usize },
    #[error("{0} is not in the transposition class")]
    NotInClass(String),
    #[error("inconsistent line through points {0} and {1}")]
    InconsistentLine(usize, usize),
    #[error("map is not an automorphism of the Fischer space: {0}")]
    NotAnAutomorphism(String),
    #[error("map is not an involution")]
    NotInvolutive,
    #[error("line axiom violated: {0}")]
    LineAxiomViolation(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not in the span")]
    NotInSpan,
    #[error("span is not closed under the algebra product")]
    NotClosed,
    #[error("not an axis: {0}")]
    NotAnAxis(String),
    #[error("cap of {0} exceeded")]
    CapExceeded(usize),
    #[error("symbolic pivot degenerates")]
    SymbolicDegenerate,
    #[error("axis supports overlap")]
    OverlappingSupports,
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("vector does not belong to the algebra")]
    NotInAlgebra,
    #[error("eta = {0} is excluded")]
    ExcludedEta(String),
    #[error("cannot specialise at excluded eta = {0}")]
    SpecializationAtExcludedEta(String),
    #[error("entry is not a polynomial in eta: {0}")]
    NotPolynomial(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Stable identifier used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::ModeMismatch(_) => "mode-mismatch",
            Error::ZeroPolynomial => "zero-polynomial",
            Error::PoleAtPoint(_) => "pole-at-point",
            Error::DuplicateAbscissa(_) => "duplicate-abscissa",
            Error::Parse { .. } => "parse-error",
            Error::BadVariant { .. } => "bad-variant",
            Error::ThreeTranspositionViolation { .. } => "three-transposition-violation",
            Error::NotInClass(_) => "not-in-class",
            Error::InconsistentLine(..) => "inconsistent-line",
            Error::NotAnAutomorphism(_) => "not-an-automorphism",
            Error::NotInvolutive => "not-involutive",
            Error::LineAxiomViolation(_) => "line-axiom-violation",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NotInSpan => "not-in-span",
            Error::NotClosed => "not-closed",
            Error::NotAnAxis(_) => "not-an-axis",
            Error::CapExceeded(_) => "cap-exceeded",
            Error::SymbolicDegenerate => "symbolic-degenerate",
            Error::OverlappingSupports => "overlapping-supports",
            Error::UnknownCase(_) => "unknown-case",
            Error::NonSquare { .. } => "non-square",
            Error::NotInAlgebra => "not-in-algebra",
            Error::ExcludedEta(_) => "excluded-eta",
            Error::SpecializationAtExcludedEta(_) => "specialization-at-excluded-eta",
            Error::NotPolynomial(_) => "not-polynomial",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Io(_) => "io-error",
        }
    }

    /// Errors caused by malformed user input rather than by a failed check.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::BadVariant { .. }
                | Error::UnknownCase(_)
                | Error::ExcludedEta(_)
                | Error::SpecializationAtExcludedEta(_)
                | Error::InvalidArgument(_)
                | Error::NotInClass(_)
                | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
