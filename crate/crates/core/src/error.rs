use thiserror::Error;

/// Errors shared by the field layer, the oracles and the geometry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("no built-in primitive modulus for p = {p}, e = {e}; supply one explicitly")]
    NoBuiltinModulus { p: u64, e: u32 },
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("modulus is not primitive over GF({p})")]
    NotPrimitive { p: u64 },
    #[error("GF({q4}) needs tables larger than the limit of {limit} entries")]
    TableLimitExceeded { q4: u64, limit: u64 },
    #[error("element code {code} out of range for GF({q4})")]
    BadElementCode { code: u64, q4: u64 },
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("zero input")]
    ZeroInput,
    #[error("q = {q} exceeds the size guard q <= {limit} for this enumeration")]
    FieldTooLarge { q: u64, limit: u64 },
    #[error("norm of b down to the base field is not one")]
    NormNotOne,
    #[error("degenerate span: the given points coincide")]
    DegenerateSpan,
    #[error("vertex line meets the subgeometry")]
    VertexMeetsSubgeometry,
    #[error("linear set is not scattered")]
    NotScattered,
}

pub type Result<T> = std::result::Result<T, Error>;
