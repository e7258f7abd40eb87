//! Exact computer algebra for the Yablonskii–Vorob'ev polynomials `Q_n` and the
//! rational solutions of the second Painlevé equation `w'' = 2w^3 + zw + n`.
//!
//! * [`exactpoly`]: integer/rational polynomials, quotient rings, Newton's identities.
//! * [`gen`]: the recurrence for `Q_n` and the exact identity checks built on it.
//! * [`roots`]: multiprecision root extraction with certification and plot export.
//! * [`relations`]: inter-root relations checked exactly and numerically.
//! * [`series`]: inverse-root power sums and power series of `w_n` at the origin.

pub mod exactpoly;
pub mod gen;
pub mod mp;
pub mod relations;
pub mod report;
pub mod roots;
pub mod series;

pub use exactpoly::{IntPoly, PolyError, QuotientElement, QuotientRing, RatPoly};
pub use gen::{generate, RationalSolution, YvRecord, YvStream};
pub use report::{Status, VerificationReport};
pub use roots::RootSet;
