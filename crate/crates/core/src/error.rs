use std::fmt;

/// Errors surfaced by the symbolic DGA layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A differential image has the wrong degree.
    DegreeMismatch {
        generator: String,
        expected: u32,
        found: Option<u32>,
    },
    /// d(d(v)) is nonzero for some generator v.
    NonSquareZero { generator: String, d_squared: String },
    /// Two values belong to different algebras.
    AlgebraMismatch,
    /// A prescribed differential image is not closed.
    NotClosed { generator: String },
    /// The algebra has nonvanishing first cohomology.
    NotSimplyConnected,
    /// A graded basis beyond the configured degree cap was requested.
    DegreeCapExceeded { degree: u32, cap: u32 },
    /// Unknown name in the canned model catalog.
    UnknownModel(String),
    /// A weight assignment does not commute with the differential.
    InvalidGrading(String),
    /// The input maps do not form the expected extension diagram.
    DiagramMismatch(String),
    /// A proposed witness does not cobound the obstruction.
    WitnessInvalid,
    /// A proposed primitive does not differentiate to the step obstruction.
    PrimitiveInvalid,
    /// Homotopy endpoints do not agree where required.
    EndpointMismatch,
    /// A required antiderivative target is not closed.
    UnresolvablePrimitive { generator: String },
    /// An element mentions a symbol missing from the weight ledger.
    UnregisteredAtom { name: String },
    /// The differentials are mutually recursive; no evaluation order exists.
    DependencyCycle,
    /// A generator name that is not declared in the signature.
    UnknownGenerator(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeMismatch {
                generator,
                expected,
                found,
            } => match found {
                Some(d) => write!(
                    f,
                    "differential of `{generator}` must have degree {expected}, found {d}"
                ),
                None => write!(
                    f,
                    "differential of `{generator}` must be homogeneous of degree {expected}"
                ),
            },
            Error::NonSquareZero {
                generator,
                d_squared,
            } => write!(f, "d(d({generator})) = {d_squared} is nonzero"),
            Error::AlgebraMismatch => write!(f, "values belong to different algebras"),
            Error::NotClosed { generator } => {
                write!(f, "differential image of `{generator}` is not closed")
            }
            Error::NotSimplyConnected => write!(f, "algebra has nonzero first cohomology"),
            Error::DegreeCapExceeded { degree, cap } => {
                write!(f, "degree {degree} exceeds the basis cap {cap}")
            }
            Error::UnknownModel(name) => write!(f, "unknown model `{name}`"),
            Error::InvalidGrading(msg) => write!(f, "invalid weight grading: {msg}"),
            Error::DiagramMismatch(msg) => write!(f, "extension diagram mismatch: {msg}"),
            Error::WitnessInvalid => write!(f, "witness does not cobound the obstruction"),
            Error::PrimitiveInvalid => {
                write!(f, "primitive does not differentiate to the obstruction")
            }
            Error::EndpointMismatch => write!(f, "homotopy endpoints do not match"),
            Error::UnresolvablePrimitive { generator } => write!(
                f,
                "antiderivative target for `{generator}` is not closed"
            ),
            Error::UnregisteredAtom { name } => {
                write!(f, "symbol `{name}` is not registered in the ledger")
            }
            Error::DependencyCycle => write!(f, "differentials are cyclically dependent"),
            Error::UnknownGenerator(name) => write!(f, "unknown generator `{name}`"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
