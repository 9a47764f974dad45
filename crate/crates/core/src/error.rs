use core::fmt;

/// Errors raised by the algebra, the models and the series machinery.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An enumeration or evaluation was asked for more than a fixed ceiling allows.
    LimitExceeded { what: &'static str, requested: usize, limit: usize },
    /// A family or model was evaluated beyond its order bound.
    OrderExceeded { requested: usize, max: usize },
    /// Two families with incompatible order bounds or dimensions were combined.
    Mismatch(&'static str),
    /// `star_exp` needs a zero scalar part, `star_log` a unit scalar part.
    BadScalarPart { expected: f64, found: f64 },
    /// The pair correlation vanishes at the anchor points.
    HardCore { separation: f64, radius: f64 },
    /// Vanishing density.
    ZeroDensity,
    /// A non-finite integrand value was produced at a quadrature node.
    NonFinite { node: alloc::vec::Vec<f64> },
    /// Tensor cubature was requested in too many dimensions.
    DimensionCeiling { total: usize, max: usize },
    /// An adaptive quadrature did not reach its tolerance.
    QuadratureFailure { estimate: f64, error: f64 },
    /// Invalid input data, with a description.
    Invalid(alloc::string::String),
    /// Argument outside the domain of a special function.
    Domain { value: f64, lower: f64 },
    /// The quadratic of the radius bound has no real roots.
    NegativeDiscriminant { chi: f64, theta: f64, discriminant: f64 },
    /// A generating function was evaluated at or beyond its pole.
    Pole { t: f64, d_rho: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LimitExceeded { what, requested, limit } => {
                write!(f, "{what}: requested {requested}, ceiling is {limit}")
            }
            Error::OrderExceeded { requested, max } => {
                write!(f, "order {requested} exceeds the supported maximum {max}")
            }
            Error::Mismatch(what) => write!(f, "mismatched operands: {what}"),
            Error::BadScalarPart { expected, found } => {
                write!(f, "scalar part must be {expected}, found {found}")
            }
            Error::HardCore { separation, radius } => write!(
                f,
                "pair correlation vanishes at separation {separation} (hard-core radius {radius})"
            ),
            Error::ZeroDensity => write!(f, "density must be positive"),
            Error::NonFinite { node } => write!(f, "non-finite integrand at node {node:?}"),
            Error::DimensionCeiling { total, max } => write!(
                f,
                "tensor cubature in {total} dimensions exceeds the ceiling {max}"
            ),
            Error::QuadratureFailure { estimate, error } => write!(
                f,
                "adaptive quadrature did not converge (estimate {estimate}, error {error})"
            ),
            Error::Invalid(msg) => write!(f, "{msg}"),
            Error::Domain { value, lower } => {
                write!(f, "argument {value} below the domain bound {lower}")
            }
            Error::NegativeDiscriminant { chi, theta, discriminant } => write!(
                f,
                "radius quadratic has negative discriminant {discriminant} (chi {chi}, theta {theta})"
            ),
            Error::Pole { t, d_rho } => {
                write!(f, "generating function pole: t * D_rho = {} >= 1", t * d_rho)
            }
        }
    }
}

impl core::error::Error for Error {}
