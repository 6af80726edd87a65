use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("signature mismatch: operands live in different algebras")]
    SignatureMismatch,

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("substitution image for {name} has the wrong degree parity")]
    ParityViolation { name: String },

    #[error("component of degree {degree} is not congruent to {top} mod 4")]
    NotMod4Graded { degree: u32, top: u32 },

    #[error("parameter list too short: need {needed}, got {got}")]
    ParametersTooShort { needed: usize, got: usize },

    #[error("degree cap {cap} is below the required degree {needed}")]
    CapTooSmall { cap: u32, needed: u32 },

    #[error("degree caps differ ({0} vs {1})")]
    CapMismatch(u32, u32),

    #[error("quotient is not finite-dimensional up to the cap: degree {0} is not full")]
    NotFull(u32),

    #[error("normal form does not exist or is not unique: {0}")]
    BasisProperty(String),

    #[error("degree balance violated: 2a + 4b + 3r = {got}, need 6g - 2 = {need}")]
    DegreeBalance { got: u32, need: u32 },

    #[error("psi index {0} out of range 1..=2g")]
    PsiIndex(usize),

    #[error("genus {0} is out of range for this operation: {1}")]
    Genus(u32, &'static str),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("result has a nonzero imaginary part: {0}")]
    NonReal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
