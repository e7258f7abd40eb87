//! Arithmetic in `Q[a] / (m(a))` for a fixed squarefree modulus `m`.
//!
//! An element is a residue of degree below `deg m`. Because `m` is squarefree,
//! an element is zero iff the represented rational function vanishes at every
//! root of `m`, which is how relations over all roots are checked at once.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational};

use super::intpoly::IntPoly;
use super::ratpoly::RatPoly;
use super::PolyError;

/// Shared modulus for a family of [`QuotientElement`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    modulus: Arc<RatPoly>,
}

impl QuotientRing {
    /// The modulus is made monic; it must have degree at least one and no repeated factors.
    pub fn new(modulus: RatPoly) -> Result<Self, PolyError> {
        match modulus.degree() {
            None | Some(0) => return Err(PolyError::DegenerateModulus),
            Some(_) => {}
        }
        let g = RatPoly::gcd(&modulus, &modulus.derivative());
        if !g.is_one() {
            return Err(PolyError::NotSquarefree { repeated: g });
        }
        Ok(QuotientRing {
            modulus: Arc::new(modulus.monic()),
        })
    }

    pub fn from_int(modulus: &IntPoly) -> Result<Self, PolyError> {
        match modulus.degree() {
            None | Some(0) => return Err(PolyError::DegenerateModulus),
            Some(_) => {}
        }
        let g = modulus.gcd(&modulus.derivative());
        if g.degree() != Some(0) {
            return Err(PolyError::NotSquarefree {
                repeated: g.to_rat().monic(),
            });
        }
        Ok(QuotientRing {
            modulus: Arc::new(modulus.to_rat().monic()),
        })
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn element(&self, p: &RatPoly) -> QuotientElement {
        QuotientElement {
            modulus: Arc::clone(&self.modulus),
            residue: p.rem(&self.modulus),
        }
    }

    pub fn reduce_int(&self, p: &IntPoly) -> QuotientElement {
        // Integral moduli stay integral under monic reduction.
        if let Some(m) = self.modulus.to_int() {
            return QuotientElement {
                modulus: Arc::clone(&self.modulus),
                residue: p.rem_monic(&m).to_rat(),
            };
        }
        self.element(&p.to_rat())
    }

    pub fn constant(&self, c: BigRational) -> QuotientElement {
        self.element(&RatPoly::constant(c))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> QuotientElement {
        self.constant(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero(&self) -> QuotientElement {
        self.element(&RatPoly::zero())
    }

    pub fn one(&self) -> QuotientElement {
        self.element(&RatPoly::one())
    }

    /// The class of the indeterminate: a generic root of the modulus.
    pub fn generator(&self) -> QuotientElement {
        self.element(&RatPoly::z())
    }
}

/// Canonical residue in a [`QuotientRing`].
#[derive(Clone, PartialEq, Eq)]
pub struct QuotientElement {
    modulus: Arc<RatPoly>,
    residue: RatPoly,
}

impl QuotientElement {
    pub fn residue(&self) -> &RatPoly {
        &self.residue
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.residue.is_one()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QuotientElement {
            modulus: Arc::clone(&self.modulus),
            residue: self.residue.scale(c),
        }
    }

    pub fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.scale(&BigRational::new(num.into(), den.into()))
    }

    /// Multiplicative inverse; fails with the shared factor when none exists.
    pub fn inv(&self) -> Result<Self, PolyError> {
        let (g, s, _) = RatPoly::gcd_ext(&self.residue, &self.modulus);
        if !g.is_one() {
            return Err(PolyError::NotInvertible { gcd: g });
        }
        Ok(QuotientElement {
            modulus: Arc::clone(&self.modulus),
            residue: s.rem(&self.modulus),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QuotientElement {
            modulus: Arc::clone(&self.modulus),
            residue: RatPoly::one().rem(&self.modulus),
        };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn with_residue(&self, residue: RatPoly) -> Self {
        QuotientElement {
            modulus: Arc::clone(&self.modulus),
            residue,
        }
    }

    fn check_same_ring(&self, other: &Self) {
        debug_assert!(
            Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus,
            "quotient elements from different rings"
        );
    }
}

impl<'a> Add<&'a QuotientElement> for &'a QuotientElement {
    type Output = QuotientElement;

    fn add(self, rhs: &QuotientElement) -> QuotientElement {
        self.check_same_ring(rhs);
        self.with_residue(&self.residue + &rhs.residue)
    }
}

impl<'a> Sub<&'a QuotientElement> for &'a QuotientElement {
    type Output = QuotientElement;

    fn sub(self, rhs: &QuotientElement) -> QuotientElement {
        self.check_same_ring(rhs);
        self.with_residue(&self.residue - &rhs.residue)
    }
}

impl<'a> Mul<&'a QuotientElement> for &'a QuotientElement {
    type Output = QuotientElement;

    fn mul(self, rhs: &QuotientElement) -> QuotientElement {
        self.check_same_ring(rhs);
        self.with_residue((&self.residue * &rhs.residue).rem(&self.modulus))
    }
}

impl Neg for &QuotientElement {
    type Output = QuotientElement;

    fn neg(self) -> QuotientElement {
        self.with_residue(-&self.residue)
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.residue, self.modulus)
    }
}

impl fmt::Debug for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientElement({self})")
    }
}
