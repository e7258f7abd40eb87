//! Multiprecision real and complex scalars for root extraction.
//!
//! Every value carries its own binary precision; arithmetic rounds to the
//! larger precision of its operands, so callers create all inputs at the
//! working precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::ops::{BitTest, UnsignedAbs};
use dashu_int::{IBig, Sign, UBig};
use num::{BigInt, BigRational};

pub type Real = FBig<HalfEven, 2>;

pub fn real_from_bigint(x: &BigInt, precision: usize) -> Real {
    let (sign, bytes) = x.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    let sign = if sign == num::bigint::Sign::Minus {
        Sign::Negative
    } else {
        Sign::Positive
    };
    Real::from_parts(IBig::from_parts(sign, mag), 0)
        .with_precision(precision)
        .value()
}

pub fn real_from_ratio(x: &BigRational, precision: usize) -> Real {
    real_from_bigint(x.numer(), precision) / real_from_bigint(x.denom(), precision)
}

pub fn real_from_f64(x: f64, precision: usize) -> Real {
    Real::try_from(x)
        .expect("finite f64")
        .with_precision(precision)
        .value()
}

pub fn real_from_i64(x: i64, precision: usize) -> Real {
    Real::from_parts(IBig::from(x), 0)
        .with_precision(precision)
        .value()
}

pub fn zero(precision: usize) -> Real {
    real_from_i64(0, precision)
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

pub fn abs(x: &Real) -> Real {
    if *x.repr().significand() < IBig::ZERO {
        -x
    } else {
        x.clone()
    }
}

pub fn is_zero(x: &Real) -> bool {
    x.repr().significand() == &IBig::ZERO
}

/// `2^e` at the given precision.
pub fn pow2(e: isize, precision: usize) -> Real {
    Real::from_parts(IBig::ONE, e)
        .with_precision(precision)
        .value()
}

/// Approximate base-2 logarithm of `|x|`; `-inf` for zero.
pub fn log2_abs(x: &Real) -> f64 {
    if is_zero(x) {
        return f64::NEG_INFINITY;
    }
    let sig = x.repr().significand();
    let bits = sig.unsigned_abs().bit_len() as isize;
    // Keep 53 leading bits for the mantissa estimate.
    let shift = (bits - 53).max(0) as usize;
    let top: f64 = (sig.unsigned_abs() >> shift).to_f64().value();
    top.log2() + shift as f64 + x.repr().exponent() as f64
}

/// Decimal rendering with `digits` significant digits.
pub fn to_decimal_string(x: &Real, digits: usize) -> String {
    if is_zero(x) {
        return "0".into();
    }
    x.clone()
        .with_base_and_precision::<10>(digits)
        .value()
        .to_string()
}

/// Decimal digits needed to represent `bits` binary digits.
pub fn decimal_digits_for(bits: usize) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
}

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(precision: usize) -> Self {
        Complex::new(zero(precision), zero(precision))
    }

    pub fn one(precision: usize) -> Self {
        Complex::new(real_from_i64(1, precision), zero(precision))
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.precision();
        Complex::new(re, zero(p))
    }

    pub fn from_f64(re: f64, im: f64, precision: usize) -> Self {
        Complex::new(real_from_f64(re, precision), real_from_f64(im, precision))
    }

    pub fn from_bigint(x: &BigInt, precision: usize) -> Self {
        Complex::from_real(real_from_bigint(x, precision))
    }

    pub fn from_ratio(x: &BigRational, precision: usize) -> Self {
        Complex::from_real(real_from_ratio(x, precision))
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(&self, precision: usize) -> Self {
        Complex::new(
            self.re.clone().with_precision(precision).value(),
            self.im.clone().with_precision(precision).value(),
        )
    }

    /// `e^{2 pi i / 3} = -1/2 + i sqrt(3)/2`.
    pub fn omega(precision: usize) -> Self {
        let half = pow2(-1, precision);
        let s3 = real_from_i64(3, precision).sqrt();
        Complex::new(-&half, s3 * half)
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.re) && is_zero(&self.im)
    }

    pub fn scale(&self, s: &Real) -> Self {
        Complex::new(&self.re * s, &self.im * s)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Complex::one(self.precision());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    /// Approximate `log2 |z|`, robust to magnitudes outside the `f64` range.
    pub fn log2_abs(&self) -> f64 {
        let a = log2_abs(&self.re);
        let b = log2_abs(&self.im);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2.0 * (lo - hi)).exp2()).log2()
    }

    /// Cube root closest to `seed`, by Newton's iteration on `z^3 = self`.
    pub fn cbrt_near(&self, seed: &Complex) -> Complex {
        let p = self.precision();
        let three = real_from_i64(3, p);
        let mut z = seed.with_precision(p);
        // Quadratic convergence from a ~50-bit seed.
        let mut bits = 40usize;
        loop {
            let z2 = &z * &z;
            let step = &(&(&z2 * &z) - self) / &z2.scale(&three);
            z = &z - &step;
            if bits >= p + 16 {
                break;
            }
            bits *= 2;
        }
        z
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;

    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;

    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;

    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;

    fn div(self, rhs: &Complex) -> Complex {
        let d = rhs.norm_sqr();
        Complex::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        )
    }
}

impl Neg for &Complex {
    type Output = Complex;

    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "({re:e} {:+e}i)", im)
    }
}

/// Total order on reals for sorting; panics on NaN-like values, which `Real` cannot hold.
pub fn cmp_real(a: &Real, b: &Real) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}
