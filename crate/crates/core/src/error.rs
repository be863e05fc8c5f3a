use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NonPrimeBase(u64),
    ZeroExponent,
    NotPrimePower(u64),
    FieldTooLarge { order: u64, max: u64 },
    InvalidCode { code: u64, order: u32 },
    DivisionByZero,
    ZeroElement,
    CtxMismatch,
    InvalidTower(&'static str),
    TowerMismatch,
    /// A norm product left a coefficient outside the subfield. Never expected.
    InternalSubfieldViolation,
    BadShape(&'static str),
    NotSubfieldCoeffs,
    BadExponentPair { m: u64, n: u64, modulus: u64 },
    NotAPermutation,
    BadParams(&'static str),
    NotPowerOfFour(u32),
    NotUnityRoot,
    OrderMismatch { left: usize, right: usize },
    BadAlpha(&'static str),
    WrongResidue(&'static str),
    NotEvenQ(u32),
    NotLatin,
    TooManySquares { squares: usize, order: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimeBase(p) => write!(f, "{p} is not prime"),
            Error::ZeroExponent => f.write_str("field degree must be at least 1"),
            Error::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            Error::FieldTooLarge { order, max } => {
                write!(f, "field of order {order} exceeds the configured maximum {max}")
            }
            Error::InvalidCode { code, order } => {
                write!(f, "element code {code} out of range for field of order {order}")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::ZeroElement => f.write_str("operation undefined for the zero element"),
            Error::CtxMismatch => f.write_str("operands belong to different fields"),
            Error::InvalidTower(why) => write!(f, "invalid tower: {why}"),
            Error::TowerMismatch => f.write_str("field does not match the tower's ambient field"),
            Error::InternalSubfieldViolation => {
                f.write_str("internal error: norm product has a coefficient outside the subfield")
            }
            Error::BadShape(why) => write!(f, "bad cyclotomic shape: {why}"),
            Error::NotSubfieldCoeffs => f.write_str("polynomial has coefficients outside the subfield"),
            Error::BadExponentPair { m, n, modulus } => {
                write!(f, "m*n = {m}*{n} is not 1 modulo {modulus}")
            }
            Error::NotAPermutation => f.write_str("polynomial does not permute the field"),
            Error::BadParams(why) => write!(f, "bad parameters: {why}"),
            Error::NotPowerOfFour(q) => write!(f, "{q} is not a power of 4"),
            Error::NotUnityRoot => f.write_str("beta is not a (Q+1)-th root of unity"),
            Error::OrderMismatch { left, right } => {
                write!(f, "latin squares have different orders {left} and {right}")
            }
            Error::BadAlpha(why) => write!(f, "alpha rejected: {why}"),
            Error::WrongResidue(why) => write!(f, "unsupported residue of Q: {why}"),
            Error::NotEvenQ(q) => write!(f, "Q = {q} must be a power of 2"),
            Error::NotLatin => f.write_str("grid is not a latin square"),
            Error::TooManySquares { squares, order } => {
                write!(f, "{squares} squares of order {order} cannot be mutually orthogonal")
            }
        }
    }
}

impl core::error::Error for Error {}
