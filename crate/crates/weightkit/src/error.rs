use thiserror::Error;

/// Errors surfaced by constructors and user-facing operations.
///
/// Arithmetic between elements of different rings is a programming error and
/// panics instead; everything reachable from input documents goes through
/// these variants.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ring mismatch: {0} vs {1}")]
    SpecMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("cannot parse {text:?} as an element of {ring}")]
    ElementParse { ring: String, text: String },
    #[error("matrix is not a chain map: fails to commute at degree {0}")]
    NotChainMap(i64),
    #[error("differential composition is nonzero at degree {0}")]
    NotComplex(i64),
    #[error("matrix does not define a module homomorphism: relation {0} is not mapped into target relations")]
    NotModuleHom(usize),
    #[error("homotopy identity f - g = dh + hd fails at degree {0}")]
    NotHomotopy(i64),
    #[error("localization spec rejected: {0}")]
    BadLocalizationSpec(String),
    #[error("operation requires a matrix-family spec; telescope cones are handled through contramodule certificates")]
    TelescopeConeUnsupported,
    #[error("{0}")]
    Unsupported(String),
    #[error("sequence is not short exact at position {0}")]
    NotExact(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
