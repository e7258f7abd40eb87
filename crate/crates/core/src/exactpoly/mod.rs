//! Exact arithmetic kernel: integer and rational polynomials, exact division,
//! quotient rings and Newton's identities.

mod intpoly;
mod newton;
mod quotient;
mod ratpoly;

pub use intpoly::{IntPoly, KARATSUBA_THRESHOLD};
pub use newton::{inverse_power_sums, newton_power_sums};
pub use quotient::{QuotientElement, QuotientRing};
pub use ratpoly::RatPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("exact division left a nonzero remainder of degree {remainder_degree}")]
    NonZeroRemainder { remainder_degree: usize },
    #[error("quotient coefficient at degree {degree} is not an integer")]
    NonIntegerQuotient { degree: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("element is not invertible: shares factor {gcd} with the modulus")]
    NotInvertible { gcd: RatPoly },
    #[error("modulus must have degree at least 1")]
    DegenerateModulus,
    #[error("modulus has the repeated factor {repeated}")]
    NotSquarefree { repeated: RatPoly },
}
