use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error: the CLI maps
/// them to exit code 1 and a JSON error object.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field degree {0} out of range (1..=32)")]
    FieldDegree(u32),
    #[error("modulus {modulus:#x} is not irreducible of degree {degree}")]
    Reducible { degree: u32, modulus: u64 },
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field has {size} elements, above the enumeration cap {cap}")]
    EnumerationCap { size: u128, cap: u128 },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid lattice polygon: {0}")]
    InvalidPolygon(String),
    #[error("matrix {0:?} is not unimodular")]
    NotUnimodular([[i64; 2]; 2]),
    #[error("support of the Laurent polynomial is not two-dimensional")]
    LowDimensionalSupport,
    #[error("face does not belong to the Newton polygon")]
    FaceNotIncident,
    #[error("({0}, {1}) does not solve the edge congruences")]
    NotASolution(i64, i64),
    #[error("polygon is not admissible ({0})")]
    Inadmissible(&'static str),
    #[error("curve is degenerate with respect to its Newton polygon: {0}")]
    Degenerate(String),
    #[error("hyperelliptic model is not smooth: {0}")]
    NotSmooth(String),
    #[error("H1 vanishes identically")]
    ZeroH1,
    #[error("genus {0} must be odd for this operation")]
    EvenGenus(usize),
    #[error("invalid hyperelliptic model: {0}")]
    InvalidModel(String),
    #[error("point-counting cap exceeded: {0}")]
    ZetaCap(String),
    #[error("point counts do not determine an integral L-polynomial: {0}")]
    NonIntegral(String),
    #[error("invalid experiment configuration: {0}")]
    Config(String),
    #[error("census budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FieldDegree(_) => "field_degree",
            Error::Reducible { .. } => "reducible",
            Error::ContextMismatch => "context_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::EnumerationCap { .. } => "enumeration_cap",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::InvalidPolygon(_) => "invalid_polygon",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::LowDimensionalSupport => "low_dimensional_support",
            Error::FaceNotIncident => "face_not_incident",
            Error::NotASolution(..) => "not_a_solution",
            Error::Inadmissible(_) => "inadmissible",
            Error::Degenerate(_) => "degenerate",
            Error::NotSmooth(_) => "not_smooth",
            Error::ZeroH1 => "zero_h1",
            Error::EvenGenus(_) => "even_genus",
            Error::InvalidModel(_) => "invalid_model",
            Error::ZetaCap(_) => "zeta_cap",
            Error::NonIntegral(_) => "non_integral",
            Error::Config(_) => "config",
            Error::Budget(_) => "budget",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
