//! The Yablonskii–Vorob'ev family and its exact identities.
//!
//! `Q_0 = 1`, `Q_1 = z` and
//! `Q_{n+1} Q_{n-1} = z Q_n^2 - 4 (Q_n Q_n'' - (Q_n')^2)`,
//! where every division is checked to be exact. Every check in this module is
//! literal polynomial or integer equality; nothing here uses floating point.

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::exactpoly::{IntPoly, PolyError};
use crate::report::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("Q_{n}: {source}")]
    Division { n: u32, source: PolyError },
    #[error("Q_{n} violates its structure: {reason}")]
    StructureViolation { n: u32, reason: String },
    #[error("w_{n} has the unexpected common factor {gcd}")]
    UnexpectedCommonFactor { n: i64, gcd: IntPoly },
    #[error("Backlund denominator 2w^2 + 2w' + z vanishes identically for w_{n}")]
    DegenerateDenominator { n: i64 },
    #[error("record for Q_{n} is not available")]
    MissingRecord { n: u32 },
    #[error("malformed record document: {0}")]
    Malformed(String),
}

/// Degree `n(n+1)/2` of `Q_n`.
pub fn yv_degree(n: u32) -> usize {
    let n = n as usize;
    n * (n + 1) / 2
}

/// Index of the last cube-compressed coefficient, `floor(n(n+1)/6)`.
pub fn compressed_len_minus_one(n: u32) -> usize {
    yv_degree(n) / 3
}

/// The predicted 2-adic valuation `floor(n(n+1)/3)` of `x_n`.
pub fn predicted_valuation(n: u32) -> u64 {
    let n = n as u64;
    n * (n + 1) / 3
}

/// `Q_n` together with its cube-compressed coefficients and lowest coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YvRecord {
    n: u32,
    poly: IntPoly,
    compressed: Vec<BigInt>,
    x_n: BigInt,
    p_n: u64,
}

impl YvRecord {
    /// Validates monicity, degree, the `z^3` structure and `x_n != 0`.
    pub fn new(n: u32, poly: IntPoly) -> Result<Self, GenError> {
        let violation = |reason: String| GenError::StructureViolation { n, reason };
        let deg = yv_degree(n);
        if poly.degree() != Some(deg) {
            return Err(violation(format!(
                "degree {:?}, expected {deg}",
                poly.degree()
            )));
        }
        if !poly.is_monic() {
            return Err(violation("not monic".into()));
        }
        let compressed = cube_compress_poly(n, &poly)?;
        let x_n = compressed.last().cloned().unwrap_or_else(BigInt::one);
        if x_n.is_zero() {
            return Err(violation("lowest coefficient x_n vanishes".into()));
        }
        let p_n = two_adic_valuation(&x_n);
        Ok(YvRecord {
            n,
            poly,
            compressed,
            x_n,
            p_n,
        })
    }

    /// Rebuilds `Q_n` from its cube-compressed coefficients.
    pub fn from_compressed(n: u32, compressed: &[BigInt]) -> Result<Self, GenError> {
        let deg = yv_degree(n);
        let offset = deg % 3;
        let low_first: Vec<BigInt> = compressed.iter().rev().cloned().collect();
        if compressed.len() != compressed_len_minus_one(n) + 1 {
            return Err(GenError::StructureViolation {
                n,
                reason: format!("expected {} compressed coefficients", deg / 3 + 1),
            });
        }
        Self::new(n, IntPoly::expand(&low_first, offset, 3))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        yv_degree(self.n)
    }

    /// `a_0^n, ..., a_{floor(n(n+1)/6)}^n`, with `a_s^n` the coefficient of `z^{deg - 3s}`.
    pub fn compressed(&self) -> &[BigInt] {
        &self.compressed
    }

    pub fn residue_class(&self) -> u32 {
        self.n % 3
    }

    /// Coefficient of the lowest-degree term.
    pub fn x_n(&self) -> &BigInt {
        &self.x_n
    }

    /// 2-adic valuation of `x_n`.
    pub fn p_n(&self) -> u64 {
        self.p_n
    }

    /// `true` when `z` divides `Q_n`, i.e. `n = 1 (mod 3)`.
    pub fn has_zero_root(&self) -> bool {
        self.n % 3 == 1
    }

    pub fn to_document(&self) -> YvDocument {
        YvDocument {
            n: self.n,
            degree: self.degree(),
            compressed: self.compressed.iter().map(BigInt::to_string).collect(),
            x_n: self.x_n.to_string(),
            p_n: self.p_n,
        }
    }

    pub fn from_document(doc: &YvDocument) -> Result<Self, GenError> {
        let compressed = doc
            .compressed
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|e| GenError::Malformed(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rec = Self::from_compressed(doc.n, &compressed)?;
        if rec.degree() != doc.degree || rec.x_n.to_string() != doc.x_n || rec.p_n != doc.p_n {
            return Err(GenError::Malformed(format!(
                "summary fields of Q_{} disagree with its coefficients",
                doc.n
            )));
        }
        Ok(rec)
    }
}

/// JSON form of a [`YvRecord`]; big integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YvDocument {
    pub n: u32,
    pub degree: usize,
    pub compressed: Vec<String>,
    pub x_n: String,
    pub p_n: u64,
}

fn two_adic_valuation(x: &BigInt) -> u64 {
    x.trailing_zeros().unwrap_or(0)
}

fn cube_compress_poly(n: u32, poly: &IntPoly) -> Result<Vec<BigInt>, GenError> {
    let deg = yv_degree(n);
    if let Some((k, _)) = poly
        .coeffs()
        .iter()
        .enumerate()
        .find(|(k, c)| !c.is_zero() && k % 3 != deg % 3)
    {
        return Err(GenError::StructureViolation {
            n,
            reason: format!("nonzero coefficient at z^{k} breaks the z^3 structure"),
        });
    }
    Ok((0..=deg / 3).map(|s| poly.coeff(deg - 3 * s)).collect())
}

/// Recomputes the cube-compressed coefficients of a record's polynomial.
pub fn cube_compress(r: &YvRecord) -> Result<Vec<BigInt>, GenError> {
    cube_compress_poly(r.n, &r.poly)
}

/// Next member of the family from the previous two.
pub fn recurrence_step(prev: &IntPoly, cur: &IntPoly) -> Result<IntPoly, PolyError> {
    let d1 = cur.derivative();
    let d2 = d1.derivative();
    let num = &cur.pow(2).shift_up(1) - &(&(cur * &d2) - &d1.pow(2)).scale(&BigInt::from(4));
    num.exact_div(prev)
}

/// Streaming generator keeping only the two most recent polynomials.
#[derive(Debug, Clone)]
pub struct YvStream {
    next_n: u32,
    prev: Option<IntPoly>,
    cur: IntPoly,
    failed: bool,
}

impl YvStream {
    pub fn new() -> Self {
        YvStream {
            next_n: 0,
            prev: None,
            cur: IntPoly::one(),
            failed: false,
        }
    }
}

impl Default for YvStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for YvStream {
    type Item = Result<YvRecord, GenError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let n = self.next_n;
        let poly = match n {
            0 => IntPoly::one(),
            1 => IntPoly::z(),
            _ => {
                let prev = self.prev.as_ref().expect("window holds Q_{n-2}");
                match recurrence_step(prev, &self.cur) {
                    Ok(p) => p,
                    Err(source) => {
                        self.failed = true;
                        return Some(Err(GenError::Division { n, source }));
                    }
                }
            }
        };
        if n >= 1 {
            self.prev = Some(std::mem::replace(&mut self.cur, poly.clone()));
        }
        self.next_n += 1;
        let rec = YvRecord::new(n, poly);
        self.failed = rec.is_err();
        Some(rec)
    }
}

/// Records for `n = 0..=n_max`.
pub fn generate(n_max: u32) -> Result<Vec<YvRecord>, GenError> {
    YvStream::new().take(n_max as usize + 1).collect()
}

fn record(records: &[YvRecord], n: u32) -> Result<&YvRecord, GenError> {
    records
        .get(n as usize)
        .filter(|r| r.n == n)
        .ok_or(GenError::MissingRecord { n })
}

/// `4^m | a_m^n` for every compressed coefficient.
pub fn check_divisibility(r: &YvRecord) -> VerificationReport {
    let failures = r
        .compressed
        .iter()
        .enumerate()
        .filter(|(m, a)| !a.is_zero() && two_adic_valuation(a) < 2 * *m as u64)
        .map(|(m, a)| json!({ "m": m, "a_m": a.to_string() }))
        .collect();
    VerificationReport::from_failures(
        "divisibility",
        Some(r.n.into()),
        format!("4^m | a_m for 0 <= m <= {}", r.compressed.len() - 1),
        failures,
    )
}

/// Valuation and lowest-coefficient identities over a contiguous family starting at `n = 0`.
///
/// Checks the three-case recursion for `x_n`, `p_n = floor(n(n+1)/3)`, the
/// recursion for `p_n`, and that the recurrence evaluated at `z = 0` gives
/// `x_{n+1} x_{n-1} = 4 x_n^2` when `n = 1 (mod 3)`.
pub fn valuation_checks(records: &[YvRecord]) -> VerificationReport {
    let mut failures = Vec::new();
    if records.iter().enumerate().any(|(i, r)| r.n as usize != i) {
        return VerificationReport::fail(
            "valuation",
            None,
            "records must be contiguous from n = 0",
            json!("non-contiguous records"),
        );
    }
    for r in records {
        let want = predicted_valuation(r.n);
        if r.p_n != want {
            failures
                .push(json!({ "check": "p_n formula", "n": r.n, "p_n": r.p_n, "expected": want }));
        }
    }
    for w in records.windows(3) {
        let (lo, mid, hi) = (&w[0], &w[1], &w[2]);
        let n = mid.n;
        let sq = &mid.x_n * &mid.x_n;
        let factor = match n % 3 {
            0 => BigInt::from(2 * n + 1),
            1 => BigInt::from(4),
            _ => -BigInt::from(2 * n + 1),
        };
        if &hi.x_n * &lo.x_n != factor * sq {
            failures.push(json!({
                "check": "x_n recursion",
                "n": n,
                "x_prev": lo.x_n.to_string(),
                "x_n": mid.x_n.to_string(),
                "x_next": hi.x_n.to_string(),
            }));
        }
        let bump = if n % 3 == 1 { 2 } else { 0 };
        if hi.p_n as i128 != bump + 2 * mid.p_n as i128 - lo.p_n as i128 {
            failures.push(json!({ "check": "p_n recursion", "n": n }));
        }
        if n % 3 == 1 {
            // Recurrence at z = 0, straight from the polynomials.
            let lhs = hi.poly.coeff(0) * lo.poly.coeff(0);
            let rhs = BigInt::from(4) * mid.poly.coeff(1).pow(2);
            if lhs != rhs {
                failures.push(json!({ "check": "recurrence at 0", "n": n }));
            }
        }
    }
    let n_max = records.last().map(|r| r.n).unwrap_or(0);
    VerificationReport::from_failures(
        "valuation",
        None,
        format!("x_n recursion and p_n = floor(n(n+1)/3) for 0 <= n <= {n_max}"),
        failures,
    )
}

/// `Q_{n+1}' Q_{n-1} - Q_{n+1} Q_{n-1}' = (2n+1) Q_n^2`.
pub fn wronskian_check(records: &[YvRecord], n: u32) -> VerificationReport {
    let suite = "wronskian";
    if n == 0 {
        return VerificationReport::skipped(suite, Some(0), "needs n >= 1");
    }
    let (Ok(lo), Ok(mid), Ok(hi)) = (
        record(records, n - 1),
        record(records, n),
        record(records, n + 1),
    ) else {
        return VerificationReport::skipped(suite, Some(n.into()), "needs Q_{n-1}, Q_n, Q_{n+1}");
    };
    let lhs = &(&hi.poly.derivative() * &lo.poly) - &(&hi.poly * &lo.poly.derivative());
    let rhs = mid.poly.pow(2).scale(&BigInt::from(2 * n + 1));
    let diff = &lhs - &rhs;
    if diff.is_zero() {
        VerificationReport::pass(suite, Some(n.into()), "exact polynomial identity")
    } else {
        VerificationReport::fail(
            suite,
            Some(n.into()),
            "exact polynomial identity",
            json!({ "difference_degree": diff.degree() }),
        )
    }
}

/// Every non-leading coefficient of `Q_n` (or `Q_n / z`) is divisible by 4.
pub fn mod4_reduction(r: &YvRecord) -> VerificationReport {
    let failures = r
        .compressed
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, a)| !a.is_multiple_of(&BigInt::from(4)))
        .map(|(m, a)| json!({ "m": m, "a_m": a.to_string() }))
        .collect();
    VerificationReport::from_failures(
        "mod4",
        Some(r.n.into()),
        "Q_n = z^deg (mod 4) after stripping z",
        failures,
    )
}

/// The three computational premises of the irrationality argument for the
/// nonzero roots: 4-power divisibility, the exact valuation of `x_n`, and the
/// mod-4 reduction. When all hold, a rational nonzero root `x = 2y` would force
/// `2^(n(n+1)/3 + 1) | x_n`, contradicting the valuation.
pub fn verify_irrationality_premises(r: &YvRecord) -> VerificationReport {
    let suite = "irrationality";
    let n = Some(r.n.into());
    if r.n == 0 {
        return VerificationReport::pass(suite, n, "Q_0 = 1 has no roots");
    }
    let div = check_divisibility(r);
    let m4 = mod4_reduction(r);
    let val_ok = r.p_n == predicted_valuation(r.n);
    let mut failures = Vec::new();
    if div.failed() {
        failures.push(serde_json::to_value(&div).unwrap_or_default());
    }
    if m4.failed() {
        failures.push(serde_json::to_value(&m4).unwrap_or_default());
    }
    if !val_ok {
        failures.push(json!({ "p_n": r.p_n, "expected": predicted_valuation(r.n) }));
    }
    VerificationReport::from_failures(
        suite,
        n,
        "divisibility, valuation and mod-4 premises hold; nonzero roots are irrational",
        failures,
    )
}

/// Rational solution `w_n = numerator / denominator` of `P_II(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSolution {
    n: i64,
    numerator: IntPoly,
    denominator: IntPoly,
}

impl RationalSolution {
    /// Reduces `num / den` to lowest terms with a positive leading denominator coefficient.
    pub fn reduced(n: i64, num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero_with(n);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) && g.coeff(0).is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalized(n, num, den)
    }

    fn normalized(n: i64, mut num: IntPoly, mut den: IntPoly) -> Self {
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num
                .exact_div(&IntPoly::constant(c.clone()))
                .expect("content divides");
            den = den
                .exact_div(&IntPoly::constant(c))
                .expect("content divides");
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        RationalSolution {
            n,
            numerator: num,
            denominator: den,
        }
    }

    fn zero_with(n: i64) -> Self {
        RationalSolution {
            n,
            numerator: IntPoly::zero(),
            denominator: IntPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::zero_with(0)
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.denominator
    }

    /// `w_{-n} = -w_n`.
    pub fn negated(&self) -> Self {
        RationalSolution {
            n: -self.n,
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    /// Same rational function, compared by cross-multiplication.
    pub fn same_function(&self, other: &RationalSolution) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

/// `w_n = Q_{n-1}'/Q_{n-1} - Q_n'/Q_n` (and `w_0 = 0`, `w_{-n} = -w_n`).
pub fn rational_solution(records: &[YvRecord], n: i64) -> Result<RationalSolution, GenError> {
    if n == 0 {
        return Ok(RationalSolution::zero());
    }
    if n < 0 {
        return Ok(rational_solution(records, -n)?.negated());
    }
    let k = u32::try_from(n).map_err(|_| GenError::MissingRecord { n: u32::MAX })?;
    let lo = &record(records, k - 1)?.poly;
    let hi = &record(records, k)?.poly;
    let num = &(&lo.derivative() * hi) - &(lo * &hi.derivative());
    let den = lo * hi;
    let g = num.gcd(&den);
    if g.degree() != Some(0) {
        return Err(GenError::UnexpectedCommonFactor { n, gcd: g });
    }
    Ok(RationalSolution::normalized(n, num, den))
}

/// Numerator of `w'' - 2w^3 - z w - n` over the common denominator `D^3`.
pub fn pii_residual_numerator(w: &RationalSolution) -> IntPoly {
    let (num, den) = (&w.numerator, &w.denominator);
    let (n1, d1) = (num.derivative(), den.derivative());
    let (n2, d2) = (n1.derivative(), d1.derivative());
    // w'' = [(N''D - ND'')D - 2D'(N'D - ND')] / D^3
    let nd_prime = &(&n1 * den) - &(num * &d1);
    let second =
        &(&(&(&n2 * den) - &(num * &d2)) * den) - &(&d1 * &nd_prime).scale(&BigInt::from(2));
    let den2 = den.pow(2);
    let cubic = num.pow(3).scale(&BigInt::from(2));
    let linear = (num * &den2).shift_up(1);
    let constant = (&den2 * den).scale(&BigInt::from(w.n));
    &(&(&second - &cubic) - &linear) - &constant
}

/// The residual of `P_II(n)` at `w_n` vanishes identically.
pub fn pii_residual(w: &RationalSolution) -> VerificationReport {
    let res = pii_residual_numerator(w);
    let n = Some(w.n.unsigned_abs());
    if res.is_zero() {
        VerificationReport::pass("pii", n, format!("w_{} solves P_II({}) exactly", w.n, w.n))
    } else {
        VerificationReport::fail(
            "pii",
            n,
            format!("w_{} solves P_II({}) exactly", w.n, w.n),
            json!({ "residual_degree": res.degree(), "residual_low": res.coeff(res.lowest_degree().unwrap_or(0)).to_string() }),
        )
    }
}

/// Backlund step `w_{n+1} = -w_n - (2n+1) / (2w_n^2 + 2w_n' + z)`.
pub fn backlund_next(w: &RationalSolution) -> Result<RationalSolution, GenError> {
    let n = w.n;
    let (num, den) = (&w.numerator, &w.denominator);
    // 2w^2 + 2w' + z = E / D^2 with E = 2N^2 + 2(N'D - ND') + z D^2.
    let d2 = den.pow(2);
    let e = &(&num.pow(2).scale(&BigInt::from(2))
        + &(&(&num.derivative() * den) - &(num * &den.derivative())).scale(&BigInt::from(2)))
        + &d2.shift_up(1);
    if e.is_zero() {
        return Err(GenError::DegenerateDenominator { n });
    }
    // (2n+1) D^2 / E, reduced first to keep the final gcd small.
    let g = d2.gcd(&e);
    let a = d2.exact_div(&g).expect("gcd divides D^2");
    let b = e.exact_div(&g).expect("gcd divides E");
    // w_{n+1} = -(N B + (2n+1) A D) / (D B)
    let new_num = -&(&(num * &b) + &(&a * den).scale(&BigInt::from(2 * n + 1)));
    let new_den = den * &b;
    Ok(RationalSolution::reduced(n + 1, new_num, new_den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn first_members_match_table() {
        let recs = generate(4).unwrap();
        assert_eq!(recs[2].poly(), &p(&[4, 0, 0, 1]));
        assert_eq!(recs[3].poly(), &p(&[-80, 0, 0, 20, 0, 0, 1]));
        assert_eq!(recs[4].poly(), &p(&[0, 11200, 0, 0, 0, 0, 0, 60, 0, 0, 1]));
    }

    #[test]
    fn compression_examples() {
        let recs = generate(5).unwrap();
        assert_eq!(cube_compress(&recs[2]).unwrap(), vec![big("1"), big("4")]);
        assert_eq!(
            cube_compress(&recs[5]).unwrap(),
            ["1", "140", "2800", "78400", "-3136000", "-6272000"]
                .map(big)
                .to_vec()
        );
        assert_eq!(cube_compress(&recs[1]).unwrap(), vec![big("1")]);
    }

    #[test]
    fn structure_violation_is_detected() {
        // z^3 + z + 4 breaks the z^3 pattern expected of Q_2.
        let err = YvRecord::new(2, p(&[4, 1, 0, 1])).unwrap_err();
        assert!(matches!(err, GenError::StructureViolation { n: 2, .. }));
        assert!(matches!(
            YvRecord::new(2, p(&[4, 0, 0, 2])),
            Err(GenError::StructureViolation { .. })
        ));
    }

    #[test]
    fn divisibility_examples() {
        let recs = generate(6).unwrap();
        assert!(check_divisibility(&recs[5]).passed());
        assert_eq!(recs[6].compressed()[4], big("-17248000"));
        assert_eq!(big("-17248000") / 256, big("-67375"));
        assert!(check_divisibility(&recs[6]).passed());
        assert!(check_divisibility(&recs[0]).passed());
        let bad = YvRecord::new(2, p(&[2, 0, 0, 1])).unwrap();
        assert!(check_divisibility(&bad).failed());
    }

    #[test]
    fn valuation_examples() {
        let recs = generate(6).unwrap();
        assert_eq!(recs[2].x_n(), &big("4"));
        assert_eq!(recs[2].p_n(), 2);
        assert_eq!(recs[5].x_n(), &big("-6272000"));
        assert_eq!(recs[5].p_n(), 10);
        assert_eq!(big("-6272000"), big("-1024") * 6125);
        assert!(valuation_checks(&recs).passed());
    }

    #[test]
    fn wronskian_examples() {
        let recs = generate(4).unwrap();
        assert!(wronskian_check(&recs, 1).passed());
        assert!(wronskian_check(&recs, 2).passed());
        assert_eq!(wronskian_check(&recs, 0).status, crate::Status::Skipped);
        assert_eq!(wronskian_check(&recs, 4).status, crate::Status::Skipped);
    }

    #[test]
    fn mod4_and_irrationality() {
        let recs = generate(8).unwrap();
        assert!(mod4_reduction(&recs[3]).passed());
        assert!(mod4_reduction(&recs[4]).passed());
        assert!(mod4_reduction(&recs[1]).passed());
        assert!(verify_irrationality_premises(&recs[3]).passed());
        assert!(verify_irrationality_premises(&recs[0]).passed());
        assert!(verify_irrationality_premises(&recs[8]).passed());
        let bad = YvRecord::new(2, p(&[6, 0, 0, 1])).unwrap();
        assert!(mod4_reduction(&bad).failed());
        assert!(verify_irrationality_premises(&bad).failed());
    }

    #[test]
    fn rational_solution_examples() {
        let recs = generate(3).unwrap();
        let w1 = rational_solution(&recs, 1).unwrap();
        assert!(w1.same_function(&RationalSolution::reduced(1, p(&[-1]), p(&[0, 1]))));
        // w_2 = 1/z - 3z^2/(z^3+4) = (4 - 2z^3) / (z^4 + 4z)
        let w2 = rational_solution(&recs, 2).unwrap();
        assert!(w2.same_function(&RationalSolution::reduced(
            2,
            p(&[4, 0, 0, -2]),
            p(&[0, 4, 0, 0, 1])
        )));
        assert_eq!(w2.denominator(), &p(&[0, 4, 0, 0, 1]));
        assert!(rational_solution(&recs, 0).unwrap().numerator().is_zero());
        let wm2 = rational_solution(&recs, -2).unwrap();
        assert!(wm2.same_function(&w2.negated()));
        assert_eq!(wm2.n(), -2);
    }

    #[test]
    fn pii_residual_examples() {
        let recs = generate(4).unwrap();
        assert!(pii_residual(&RationalSolution::zero()).passed());
        for n in 1..=4 {
            assert!(
                pii_residual(&rational_solution(&recs, n).unwrap()).passed(),
                "n = {n}"
            );
            assert!(
                pii_residual(&rational_solution(&recs, -n).unwrap()).passed(),
                "n = -{n}"
            );
        }
        // w_2 is not a solution of P_II(3).
        let w2 = rational_solution(&recs, 2).unwrap();
        let wrong = RationalSolution::reduced(3, w2.numerator().clone(), w2.denominator().clone());
        assert!(pii_residual(&wrong).failed());
    }

    #[test]
    fn backlund_chain() {
        let recs = generate(6).unwrap();
        let mut w = RationalSolution::zero();
        for n in 1..=5 {
            w = backlund_next(&w).unwrap();
            let expected = rational_solution(&recs, n).unwrap();
            assert_eq!(w, expected, "n = {n}");
        }
        let w1 = backlund_next(&RationalSolution::zero()).unwrap();
        assert_eq!(w1.numerator(), &p(&[-1]));
        assert_eq!(w1.denominator(), &p(&[0, 1]));
    }

    #[test]
    fn documents_round_trip() {
        let recs = generate(8).unwrap();
        for r in &recs {
            let doc = r.to_document();
            let text = serde_json::to_string(&doc).unwrap();
            let back: YvDocument = serde_json::from_str(&text).unwrap();
            assert_eq!(&YvRecord::from_document(&back).unwrap(), r);
        }
    }

    #[test]
    fn stream_matches_generate() {
        let a: Vec<_> = YvStream::new().take(7).map(Result::unwrap).collect();
        assert_eq!(a, generate(6).unwrap());
    }
}
