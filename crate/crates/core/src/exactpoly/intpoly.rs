//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

use super::ratpoly::RatPoly;
use super::PolyError;

/// Operand length (in terms) at which multiplication switches from schoolbook to Karatsuba.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// Dense polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `z^i`. The highest stored coefficient is
/// always nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `z^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient, i.e. the multiplicity of the root 0.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn derivative(&self) -> Self {
        self.divided_derivative(1)
    }

    /// `k`-th derivative divided by `k!`: the coefficient of `t^k` in `p(z + t)`.
    ///
    /// Integer-valued because `binom(i, k)` is an integer.
    pub fn divided_derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Self::zero();
        }
        let mut binom = BigInt::one(); // binom(i, k), starting at i = k
        let mut out = Vec::with_capacity(self.coeffs.len() - k);
        for i in k..self.coeffs.len() {
            if i > k {
                binom = binom * BigInt::from(i) / BigInt::from(i - k);
            }
            out.push(&self.coeffs[i] * &binom);
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divide by `z^k`, which must divide the polynomial.
    pub fn shift_down(&self, k: usize) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(PolyError::NonZeroRemainder {
                remainder_degree: self.lowest_degree().unwrap_or(0),
            });
        }
        Ok(IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Writes the polynomial as `z^offset * P(z^stride)` with `stride` maximal.
    ///
    /// Stride is 0 for polynomials with at most one term (any stride works).
    pub fn stride(&self) -> (usize, usize) {
        let mut nz = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i);
        let Some(offset) = nz.next() else {
            return (0, 0);
        };
        let stride = nz.fold(0usize, |g, i| g.gcd(&(i - offset)));
        (offset, stride)
    }

    /// Coefficients of `P` in `self = z^offset * P(z^stride)`; `stride` must divide the true stride.
    pub fn compress(&self, offset: usize, stride: usize) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let stride = stride.max(1);
        self.coeffs[offset..]
            .iter()
            .step_by(stride)
            .cloned()
            .collect()
    }

    /// Inverse of [`compress`](Self::compress).
    pub fn expand(compressed: &[BigInt], offset: usize, stride: usize) -> Self {
        if compressed.is_empty() {
            return Self::zero();
        }
        let stride = stride.max(1);
        let mut coeffs = vec![BigInt::zero(); offset + (compressed.len() - 1) * stride + 1];
        for (k, c) in compressed.iter().enumerate() {
            coeffs[offset + k * stride] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Exact quotient `self / den`; fails unless the division is exact over the integers.
    pub fn exact_div(&self, den: &IntPoly) -> Result<IntPoly, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (na, ns) = self.stride();
        let (da, ds) = den.stride();
        let s = ns.gcd(&ds);
        if s > 1 && na >= da {
            let q = div_dense(&self.compress(na, s), &den.compress(da, s))?;
            return Ok(Self::expand(&q, na - da, s));
        }
        Ok(Self::new(div_dense(&self.coeffs, &den.coeffs)?))
    }

    /// Remainder modulo a monic polynomial; stays integral.
    pub fn rem_monic(&self, modulus: &IntPoly) -> IntPoly {
        assert!(modulus.is_monic(), "rem_monic needs a monic modulus");
        let d = modulus.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        for top in (d..r.len()).rev() {
            let q = std::mem::take(&mut r[top]);
            if q.is_zero() {
                continue;
            }
            let base = top - d;
            for (j, m) in modulus.coeffs[..d].iter().enumerate() {
                if !m.is_zero() {
                    r[base + j] -= &q * m;
                }
            }
        }
        r.truncate(d);
        Self::new(r)
    }

    /// Exact Horner evaluation.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from(c.clone())
            })
    }

    pub fn evaluate_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Reverses the coefficient sequence; roots of the result are the reciprocals of the roots.
    pub fn reverse_nonzero(&self) -> Result<IntPoly, PolyError> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => Ok(IntPoly {
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            }),
            _ => Err(PolyError::ZeroConstantTerm),
        }
    }

    /// Content (nonnegative gcd of coefficients); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(BigRational::from).collect())
    }

    /// Polynomial gcd over the rationals, returned primitive with positive leading coefficient.
    ///
    /// Works on the compressed polynomials when both operands share a stride,
    /// then runs a primitive pseudo-remainder sequence over the integers.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (a_off, a_s) = self.stride();
        let (b_off, b_s) = other.stride();
        let s = a_s.gcd(&b_s).max(1);
        let mut a = IntPoly::new(self.compress(a_off, s)).primitive_part();
        let mut b = IntPoly::new(other.compress(b_off, s)).primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        IntPoly::expand(a.coeffs(), a_off.min(b_off), s)
    }

    /// Pseudo-remainder: the remainder of `lc(d)^(deg self - deg d + 1) * self` by `d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-remainder by the zero polynomial");
        if self.coeffs.len() <= dd {
            return self.clone();
        }
        let lead = &d.coeffs[dd];
        let mut r = self.coeffs.clone();
        for top in (dd..r.len()).rev() {
            let c = std::mem::take(&mut r[top]);
            if !lead.is_one() {
                for x in r[..top].iter_mut() {
                    if !x.is_zero() {
                        *x *= lead;
                    }
                }
            }
            if c.is_zero() {
                continue;
            }
            let base = top - dd;
            for (j, x) in d.coeffs[..dd].iter().enumerate() {
                if !x.is_zero() {
                    r[base + j] -= &c * x;
                }
            }
        }
        r.truncate(dd);
        Self::new(r)
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn div_dense(num: &[BigInt], den: &[BigInt]) -> Result<Vec<BigInt>, PolyError> {
    let dn = den.len() - 1;
    if num.len() < den.len() {
        return if num.iter().all(Zero::is_zero) {
            Ok(Vec::new())
        } else {
            Err(PolyError::NonZeroRemainder {
                remainder_degree: num.len() - 1,
            })
        };
    }
    let lead = &den[dn];
    let mut r = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dn];
    for top in (dn..r.len()).rev() {
        let c = std::mem::take(&mut r[top]);
        if c.is_zero() {
            continue;
        }
        let (qc, rem) = c.div_rem(lead);
        if !rem.is_zero() {
            return Err(PolyError::NonIntegerQuotient { degree: top - dn });
        }
        let base = top - dn;
        for (j, d) in den[..dn].iter().enumerate() {
            if !d.is_zero() {
                r[base + j] -= &qc * d;
            }
        }
        q[base] = qc;
    }
    if let Some(deg) = r[..dn].iter().rposition(|c| !c.is_zero()) {
        return Err(PolyError::NonZeroRemainder {
            remainder_degree: deg,
        });
    }
    Ok(q)
}

fn add_into(acc: &mut [BigInt], src: &[BigInt]) {
    for (a, s) in acc.iter_mut().zip(src) {
        if !s.is_zero() {
            *a += s;
        }
    }
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() < KARATSUBA_THRESHOLD || b.len() < KARATSUBA_THRESHOLD {
        return schoolbook(a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    if a1.is_empty() || b1.is_empty() {
        // Unbalanced: one operand fits entirely in the low half.
        let lo = karatsuba(a0, b0);
        add_into(&mut out, &lo);
        if !a1.is_empty() {
            add_into(&mut out[m..], &karatsuba(a1, b0));
        }
        if !b1.is_empty() {
            add_into(&mut out[m..], &karatsuba(a0, b1));
        }
        return out;
    }
    let z0 = karatsuba(a0, b0);
    let z2 = karatsuba(a1, b1);
    let sa = sum_halves(a0, a1);
    let sb = sum_halves(b0, b1);
    let mut z1 = karatsuba(&sa, &sb);
    for (i, c) in z0.iter().enumerate() {
        z1[i] -= c;
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] -= c;
    }
    add_into(&mut out, &z0);
    add_into(&mut out[m..], &z1);
    add_into(&mut out[2 * m..], &z2);
    out
}

fn sum_halves(lo: &[BigInt], hi: &[BigInt]) -> Vec<BigInt> {
    let mut s = lo.to_vec();
    if s.len() < hi.len() {
        s.resize(hi.len(), BigInt::zero());
    }
    add_into(&mut s, hi);
    s
}

fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    karatsuba(a, b)
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let (ao, a_s) = self.stride();
        let (bo, b_s) = rhs.stride();
        let s = a_s.gcd(&b_s);
        if s > 1 {
            let c = mul_coeffs(&self.compress(ao, s), &rhs.compress(bo, s));
            return IntPoly::expand(&c, ao + bo, s);
        }
        IntPoly::new(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        add_into(&mut coeffs, &short.coeffs);
        IntPoly::new(coeffs)
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}z", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}z^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}
