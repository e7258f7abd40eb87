//! Sums over pairs of roots of consecutive `Q_n`, checked two ways.
//!
//! Exact mode works in `Q[a]/(host(a))`: with `C(t) = target(a + t)`, the
//! logarithmic derivative `C'/C` has `t^{p-1}` coefficient
//! `(-1)^{p-1} sum_k 1/(a - z_k)^p`. For sums over the host's own other roots,
//! `host(a + t) = t D(t)` and `D'/D` plays the same role. A relation holds at
//! every root simultaneously iff its residue is zero.
//!
//! Numeric mode sums the same quantities directly over certified root sets.

use num::{BigInt, BigRational, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::exactpoly::{IntPoly, PolyError, QuotientElement, QuotientRing};
use crate::gen::YvRecord;
use crate::mp::{self, Complex, Real};
use crate::report::{Status, VerificationReport};
use crate::roots::{par_map, RootSet};

#[derive(Debug, Clone, Error)]
pub enum RelationError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("numeric mode for n = {n} needs root sets of Q_{{n-1}} and Q_n")]
    MissingRoots { n: u32 },
    #[error("records are not consecutive: got Q_{prev} and Q_{cur}")]
    NotConsecutive { prev: u32, cur: u32 },
}

/// Which of the two consecutive polynomials is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Host {
    /// `Q_{n-1}`
    Previous,
    /// `Q_n`
    Current,
}

impl Host {
    fn other(self) -> Host {
        match self {
            Host::Previous => Host::Current,
            Host::Current => Host::Previous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumSpec {
    pub base: Host,
    pub target: Host,
    pub power: u32,
    pub exclude_self: bool,
}

impl SumSpec {
    /// `sum_k 1/(z_j - w_k)^p` with `z_j` a root of `base`, `w_k` the roots of the other polynomial.
    pub fn cross(base: Host, power: u32) -> Self {
        SumSpec {
            base,
            target: base.other(),
            power,
            exclude_self: false,
        }
    }

    /// `sum_{k != j} 1/(z_j - z_k)^p` over the roots of `base`.
    pub fn own(base: Host, power: u32) -> Self {
        SumSpec {
            base,
            target: base,
            power,
            exclude_self: true,
        }
    }
}

/// `sum_i sign_i * S_i = c + b * z_j` at every root `z_j` of the host.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub family: String,
    pub host: Host,
    pub terms: Vec<(i32, SumSpec)>,
    pub rhs_const: BigRational,
    pub rhs_root: BigRational,
}

impl Relation {
    fn max_power(&self) -> u32 {
        self.terms.iter().map(|(_, s)| s.power).max().unwrap_or(0)
    }
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn n_plus(n: u32, k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n as i64 + k))
}

/// Differences of own and cross sums, at roots of `Q_{n-1}` and of `Q_n`.
pub fn theorem_relations(n: u32) -> Vec<Relation> {
    let mut out = Vec::new();
    let zero = BigRational::zero;
    // host Q_{n-1}: own - cross
    let prev: [(u32, BigRational, BigRational); 4] = [
        (1, zero(), zero()),
        (2, zero(), q(1, 6)),
        (3, -n_plus(n, 1) / BigInt::from(4), zero()),
        (5, zero(), n_plus(n, 1) / BigInt::from(24) - q(1, 36)),
    ];
    for (p, c, b) in prev {
        out.push(Relation {
            family: format!("theorem.prev.p{p}"),
            host: Host::Previous,
            terms: vec![
                (1, SumSpec::own(Host::Previous, p)),
                (-1, SumSpec::cross(Host::Previous, p)),
            ],
            rhs_const: c,
            rhs_root: b,
        });
    }
    // host Q_n: cross - own
    let cur: [(u32, BigRational, BigRational); 4] = [
        (1, zero(), zero()),
        (2, zero(), q(-1, 6)),
        (3, -n_plus(n, -1) / BigInt::from(4), zero()),
        (5, zero(), n_plus(n, -1) / BigInt::from(24) + q(1, 36)),
    ];
    for (p, c, b) in cur {
        out.push(Relation {
            family: format!("theorem.cur.p{p}"),
            host: Host::Current,
            terms: vec![
                (1, SumSpec::cross(Host::Current, p)),
                (-1, SumSpec::own(Host::Current, p)),
            ],
            rhs_const: c,
            rhs_root: b,
        });
    }
    out
}

/// Own-root sums of `Q_n` for powers 2, 3 and 5.
pub fn self_sum_relations(_n: u32) -> Vec<Relation> {
    [(2, q(-1, 12)), (3, BigRational::zero()), (5, q(-1, 144))]
        .into_iter()
        .map(|(p, b)| Relation {
            family: format!("selfsum.p{p}"),
            host: Host::Current,
            terms: vec![(1, SumSpec::own(Host::Current, p))],
            rhs_const: BigRational::zero(),
            rhs_root: b,
        })
        .collect()
}

/// Cross sums alone, at roots of `Q_{n-1}` and of `Q_n`.
pub fn corollary_relations(n: u32) -> Vec<Relation> {
    let mut out = Vec::new();
    let prev = [
        (2, BigRational::zero(), q(-1, 4)),
        (3, n_plus(n, 1) / BigInt::from(4), BigRational::zero()),
        (
            5,
            BigRational::zero(),
            -(n_plus(n, 1) / BigInt::from(24) - q(1, 48)),
        ),
    ];
    for (p, c, b) in prev {
        out.push(Relation {
            family: format!("corollary.prev.p{p}"),
            host: Host::Previous,
            terms: vec![(1, SumSpec::cross(Host::Previous, p))],
            rhs_const: c,
            rhs_root: b,
        });
    }
    let cur = [
        (2, BigRational::zero(), q(-1, 4)),
        (3, -n_plus(n, -1) / BigInt::from(4), BigRational::zero()),
        (
            5,
            BigRational::zero(),
            n_plus(n, -1) / BigInt::from(24) + q(1, 48),
        ),
    ];
    for (p, c, b) in cur {
        out.push(Relation {
            family: format!("corollary.cur.p{p}"),
            host: Host::Current,
            terms: vec![(1, SumSpec::cross(Host::Current, p))],
            rhs_const: c,
            rhs_root: b,
        });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub n: u32,
    pub family: String,
    pub mode: Mode,
    pub status: Status,
    /// Worst relative deviation over all host roots, numeric mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<String>,
    /// Nonzero residue, exact mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
    pub detail: String,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// `t`-coefficients `0..=order` of `C'(t)/C(t)`; needs `c.len() >= order + 2`.
fn log_derivative(c: &[QuotientElement], order: usize) -> Result<Vec<QuotientElement>, PolyError> {
    let inv0 = c[0].inv()?;
    let mut out: Vec<QuotientElement> = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut acc = c[m + 1].scale(&BigRational::from_integer(BigInt::from(m as i64 + 1)));
        for i in 1..=m {
            acc = &acc - &(&c[i] * &out[m - i]);
        }
        out.push(&acc * &inv0);
    }
    Ok(out)
}

fn signed_sums(l: Vec<QuotientElement>) -> Vec<QuotientElement> {
    l.into_iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 0 { x } else { -&x })
        .collect()
}

/// `sum_k 1/(a - z_k)^p` for `p = 1..=p_max` in `ring`, `z_k` the roots of `target`.
fn cross_sums_in(
    ring: &QuotientRing,
    target: &IntPoly,
    p_max: usize,
) -> Result<Vec<QuotientElement>, PolyError> {
    let c: Vec<QuotientElement> = (0..=p_max)
        .map(|i| ring.reduce_int(&target.divided_derivative(i)))
        .collect();
    Ok(signed_sums(log_derivative(&c, p_max - 1)?))
}

/// `sum_{k != j} 1/(a - z_k)^p` for `p = 1..=p_max`, `a` a generic root of the ring's modulus.
fn own_sums_in(
    ring: &QuotientRing,
    host: &IntPoly,
    p_max: usize,
) -> Result<Vec<QuotientElement>, PolyError> {
    let d: Vec<QuotientElement> = (1..=p_max + 1)
        .map(|i| ring.reduce_int(&host.divided_derivative(i)))
        .collect();
    Ok(signed_sums(log_derivative(&d, p_max - 1)?))
}

pub fn cross_sum_residue(
    host: &IntPoly,
    target: &IntPoly,
    p: u32,
) -> Result<QuotientElement, PolyError> {
    let ring = QuotientRing::from_int(host)?;
    Ok(cross_sums_in(&ring, target, p as usize)?
        .pop()
        .expect("p >= 1"))
}

pub fn self_sum_residue(host: &IntPoly, p: u32) -> Result<QuotientElement, PolyError> {
    let ring = QuotientRing::from_int(host)?;
    Ok(own_sums_in(&ring, host, p as usize)?.pop().expect("p >= 1"))
}

/// Exact own and cross sums over one host, powers `1..=p_max`.
pub struct HostSums {
    ring: QuotientRing,
    own: Vec<QuotientElement>,
    cross: Vec<QuotientElement>,
}

impl HostSums {
    pub fn new(host: &IntPoly, other: &IntPoly, p_max: usize) -> Result<Self, PolyError> {
        let ring = QuotientRing::from_int(host)?;
        let own = own_sums_in(&ring, host, p_max)?;
        let cross = cross_sums_in(&ring, other, p_max)?;
        Ok(HostSums { ring, own, cross })
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn own(&self, p: u32) -> &QuotientElement {
        &self.own[p as usize - 1]
    }

    pub fn cross(&self, p: u32) -> &QuotientElement {
        &self.cross[p as usize - 1]
    }
}

/// Inputs for one `n`: records `Q_{n-1}`, `Q_n` and, for numeric mode, their roots.
#[derive(Clone, Copy)]
pub struct RelationInputs<'a> {
    pub prev: &'a YvRecord,
    pub cur: &'a YvRecord,
    pub prev_roots: Option<&'a RootSet>,
    pub cur_roots: Option<&'a RootSet>,
    /// Numeric pass threshold on the relative deviation, `10^{-tolerance_digits}`.
    pub tolerance_digits: f64,
}

impl<'a> RelationInputs<'a> {
    pub fn exact(prev: &'a YvRecord, cur: &'a YvRecord) -> Self {
        RelationInputs {
            prev,
            cur,
            prev_roots: None,
            cur_roots: None,
            tolerance_digits: 30.0,
        }
    }

    pub fn n(&self) -> u32 {
        self.cur.n()
    }

    fn check(&self) -> Result<(), RelationError> {
        if self.cur.n() == 0 || self.prev.n() + 1 != self.cur.n() {
            return Err(RelationError::NotConsecutive {
                prev: self.prev.n(),
                cur: self.cur.n(),
            });
        }
        Ok(())
    }

    fn poly(&self, h: Host) -> &IntPoly {
        match h {
            Host::Previous => self.prev.poly(),
            Host::Current => self.cur.poly(),
        }
    }

    fn roots(&self, h: Host) -> Option<&'a RootSet> {
        match h {
            Host::Previous => self.prev_roots,
            Host::Current => self.cur_roots,
        }
    }
}

fn max_power(relations: &[Relation]) -> usize {
    relations.iter().map(Relation::max_power).max().unwrap_or(1) as usize
}

fn verify_exact(
    inputs: &RelationInputs,
    relations: &[Relation],
) -> Result<Vec<RelationReport>, RelationError> {
    let n = inputs.n();
    let p_max = max_power(relations);
    let mut tables: [Option<HostSums>; 2] = [None, None];
    for (slot, h) in [Host::Previous, Host::Current].into_iter().enumerate() {
        if relations.iter().any(|r| r.host == h) && inputs.poly(h).degree().unwrap_or(0) > 0 {
            tables[slot] = Some(HostSums::new(
                inputs.poly(h),
                inputs.poly(h.other()),
                p_max,
            )?);
        }
    }
    let mut out = Vec::new();
    for rel in relations {
        let slot = if rel.host == Host::Previous { 0 } else { 1 };
        let Some(t) = &tables[slot] else {
            out.push(RelationReport {
                n,
                family: rel.family.clone(),
                mode: Mode::Exact,
                status: Status::Pass,
                deviation: None,
                residue: None,
                detail: "host has no roots".into(),
            });
            continue;
        };
        let ring = t.ring();
        let mut lhs = ring.zero();
        for (sign, spec) in &rel.terms {
            let s = if spec.exclude_self {
                t.own(spec.power)
            } else {
                t.cross(spec.power)
            };
            lhs = if *sign > 0 { &lhs + s } else { &lhs - s };
        }
        let rhs = &ring.constant(rel.rhs_const.clone()) + &ring.generator().scale(&rel.rhs_root);
        let residue = &lhs - &rhs;
        let ok = residue.is_zero();
        out.push(RelationReport {
            n,
            family: rel.family.clone(),
            mode: Mode::Exact,
            status: if ok { Status::Pass } else { Status::Fail },
            deviation: None,
            residue: (!ok).then(|| residue.residue().to_string()),
            detail: format!(
                "residue in Q[a]/(Q_{}(a)), degree {}",
                host_index(n, rel.host),
                ring.degree()
            ),
        });
    }
    Ok(out)
}

fn host_index(n: u32, h: Host) -> u32 {
    match h {
        Host::Previous => n - 1,
        Host::Current => n,
    }
}

/// Own and cross sums at one host root, powers `1..=p_max`, with magnitudes.
#[derive(Debug, Clone)]
pub struct RootSums {
    pub root: Complex,
    pub own: Vec<Complex>,
    pub cross: Vec<Complex>,
    pub own_mag: Vec<Real>,
    pub cross_mag: Vec<Real>,
}

fn accumulate(
    z: &Complex,
    others: &[Complex],
    skip: Option<usize>,
    p_max: usize,
) -> (Vec<Complex>, Vec<Real>) {
    let prec = z.precision();
    let mut sums = vec![Complex::zero(prec); p_max];
    let mut mags = vec![mp::zero(prec); p_max];
    for (k, w) in others.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        let r = (z - w).recip();
        let mut pw = r.clone();
        for p in 0..p_max {
            if p > 0 {
                pw = &pw * &r;
            }
            mags[p] = &mags[p] + &pw.abs();
            sums[p] = &sums[p] + &pw;
        }
    }
    (sums, mags)
}

/// Direct pairwise sums at every root of `host`.
pub fn numeric_root_sums(host: &RootSet, other: &RootSet, p_max: usize) -> Vec<RootSums> {
    par_map(host.len(), |j| {
        let z = &host.roots()[j];
        let (own, own_mag) = accumulate(z, host.roots(), Some(j), p_max);
        let (cross, cross_mag) = accumulate(z, other.roots(), None, p_max);
        RootSums {
            root: z.clone(),
            own,
            cross,
            own_mag,
            cross_mag,
        }
    })
}

/// Base-2 logarithm rendered as a decimal in scientific notation.
pub fn log2_to_decimal(l2: f64) -> String {
    if l2 == f64::NEG_INFINITY {
        return "0".into();
    }
    let l10 = l2 * std::f64::consts::LOG10_2;
    let e = l10.floor();
    let m = 10f64.powf(l10 - e);
    format!("{m:.3}e{}", e as i64)
}

fn verify_numeric(
    inputs: &RelationInputs,
    relations: &[Relation],
) -> Result<Vec<RelationReport>, RelationError> {
    let n = inputs.n();
    if inputs.prev_roots.is_none() || inputs.cur_roots.is_none() {
        return Err(RelationError::MissingRoots { n });
    }
    let p_max = max_power(relations);
    let tol = -inputs.tolerance_digits * std::f64::consts::LOG2_10;
    let mut tables: [Option<Vec<RootSums>>; 2] = [None, None];
    for (slot, h) in [Host::Previous, Host::Current].into_iter().enumerate() {
        if relations.iter().any(|r| r.host == h) {
            let host = inputs.roots(h).expect("checked above");
            let other = inputs.roots(h.other()).expect("checked above");
            tables[slot] = Some(numeric_root_sums(host, other, p_max));
        }
    }
    let mut out = Vec::new();
    for rel in relations {
        let slot = if rel.host == Host::Previous { 0 } else { 1 };
        let sums = tables[slot].as_ref().expect("table built above");
        let mut worst = f64::NEG_INFINITY;
        let mut worst_j = None;
        for (j, s) in sums.iter().enumerate() {
            let prec = s.root.precision();
            let mut lhs = Complex::zero(prec);
            let mut mag = mp::zero(prec);
            for (sign, spec) in &rel.terms {
                let i = spec.power as usize - 1;
                let (v, m) = if spec.exclude_self {
                    (&s.own[i], &s.own_mag[i])
                } else {
                    (&s.cross[i], &s.cross_mag[i])
                };
                lhs = if *sign > 0 { &lhs + v } else { &lhs - v };
                mag += m;
            }
            let rhs = &Complex::from_ratio(&rel.rhs_const, prec)
                + &s.root.scale(&mp::real_from_ratio(&rel.rhs_root, prec));
            let scale = mp::log2_abs(&mag).max(rhs.log2_abs()).max(0.0);
            let dev = (&lhs - &rhs).log2_abs() - scale;
            if dev > worst {
                worst = dev;
                worst_j = Some(j);
            }
        }
        let ok = worst <= tol;
        out.push(RelationReport {
            n,
            family: rel.family.clone(),
            mode: Mode::Numeric,
            status: if ok { Status::Pass } else { Status::Fail },
            deviation: Some(log2_to_decimal(worst)),
            residue: None,
            detail: match worst_j {
                Some(j) => format!("{} host roots, worst at index {j}", sums.len()),
                None => "host has no roots".into(),
            },
        });
    }
    Ok(out)
}

/// Check `relations` for one `n` in the given mode.
pub fn verify_relations(
    inputs: &RelationInputs,
    relations: &[Relation],
    mode: Mode,
) -> Result<Vec<RelationReport>, RelationError> {
    inputs.check()?;
    match mode {
        Mode::Exact => verify_exact(inputs, relations),
        Mode::Numeric => verify_numeric(inputs, relations),
    }
}

pub fn verify_theorem(
    inputs: &RelationInputs,
    mode: Mode,
) -> Result<Vec<RelationReport>, RelationError> {
    verify_relations(inputs, &theorem_relations(inputs.n()), mode)
}

pub fn verify_self_sums(
    inputs: &RelationInputs,
    mode: Mode,
) -> Result<Vec<RelationReport>, RelationError> {
    verify_relations(inputs, &self_sum_relations(inputs.n()), mode)
}

pub fn verify_corollary(
    inputs: &RelationInputs,
    mode: Mode,
) -> Result<Vec<RelationReport>, RelationError> {
    verify_relations(inputs, &corollary_relations(inputs.n()), mode)
}

/// Exact and numeric verdicts must coincide family by family.
pub fn modes_agree(exact: &[RelationReport], numeric: &[RelationReport]) -> VerificationReport {
    let n = exact.first().or(numeric.first()).map(|r| r.n as u64);
    let mut failures = Vec::new();
    for e in exact {
        match numeric.iter().find(|r| r.family == e.family) {
            Some(x) if x.status != e.status => failures.push(json!({
                "family": e.family, "exact": e.status, "numeric": x.status
            })),
            Some(_) => {}
            None => failures.push(json!({"family": e.family, "reason": "no numeric counterpart"})),
        }
    }
    VerificationReport::from_failures(
        "relations.agreement",
        n,
        format!("{} families compared", exact.len()),
        failures,
    )
}

/// Taylor coefficients `a_0..=a_m_max` of `w_n - 1/(z - w)` at each root `w` of `Q_{n-1}`,
/// checked against the closed forms for `a_0, a_1, a_2, a_4`. `a_3` is reported only.
pub fn pole_series_check(
    inputs: &RelationInputs,
    j: usize,
    m_max: usize,
) -> Result<VerificationReport, RelationError> {
    inputs.check()?;
    let n = inputs.n();
    let (Some(pr), Some(cr)) = (inputs.prev_roots, inputs.cur_roots) else {
        return Err(RelationError::MissingRoots { n });
    };
    let m_max = m_max.max(4);
    let omega = &pr.roots()[j];
    let (own, own_mag) = accumulate(omega, pr.roots(), Some(j), m_max + 1);
    let (cross, cross_mag) = accumulate(omega, cr.roots(), None, m_max + 1);
    let prec = omega.precision();
    let coeffs: Vec<(Complex, Real)> = (0..=m_max)
        .map(|m| {
            let d = &own[m] - &cross[m];
            let a = if m % 2 == 0 { d } else { -&d };
            (a, &own_mag[m] + &cross_mag[m])
        })
        .collect();
    let np1 = n_plus(n, 1);
    let expected: [(usize, BigRational, BigRational); 4] = [
        (0, BigRational::zero(), BigRational::zero()),
        (1, BigRational::zero(), q(-1, 6)),
        (2, -np1.clone() / BigInt::from(4), BigRational::zero()),
        (4, BigRational::zero(), np1 / BigInt::from(24) - q(1, 36)),
    ];
    let tol = -inputs.tolerance_digits * std::f64::consts::LOG2_10;
    let mut failures = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for (m, c, b) in expected {
        let want = &Complex::from_ratio(&c, prec) + &omega.scale(&mp::real_from_ratio(&b, prec));
        let (got, mag) = &coeffs[m];
        let scale = mp::log2_abs(mag).max(want.log2_abs()).max(0.0);
        let dev = (got - &want).log2_abs() - scale;
        worst = worst.max(dev);
        if dev > tol {
            failures.push(json!({"m": m, "log2_deviation": dev}));
        }
    }
    let digits = 25;
    let (a3re, a3im) = (&coeffs[3].0.re, &coeffs[3].0.im);
    let detail = format!(
        "root {j} of Q_{}: worst deviation {}, a_3 = {} + {}i",
        n - 1,
        log2_to_decimal(worst),
        mp::to_decimal_string(a3re, digits),
        mp::to_decimal_string(a3im, digits)
    );
    Ok(VerificationReport::from_failures(
        "poleseries",
        Some(n as u64),
        detail,
        failures,
    ))
}

/// [`pole_series_check`] at every root of `Q_{n-1}`.
pub fn pole_series_all(
    inputs: &RelationInputs,
    m_max: usize,
) -> Result<VerificationReport, RelationError> {
    inputs.check()?;
    let n = inputs.n();
    let pr = inputs.prev_roots.ok_or(RelationError::MissingRoots { n })?;
    let parts = par_map(pr.len(), |j| pole_series_check(inputs, j, m_max));
    let parts: Vec<VerificationReport> = parts.into_iter().collect::<Result<_, _>>()?;
    if parts.is_empty() {
        return Ok(VerificationReport::pass(
            "poleseries",
            Some(n as u64),
            "Q_{n-1} has no roots",
        ));
    }
    Ok(VerificationReport::aggregate(
        "poleseries",
        Some(n as u64),
        &parts,
    ))
}

fn log_derivative_at(p: &IntPoly, x: &Complex) -> Complex {
    let prec = x.precision();
    let mut v = Complex::zero(prec);
    let mut dv = Complex::zero(prec);
    for c in p.coeffs().iter().rev() {
        dv = &(&dv * x) + &v;
        v = &(&v * x) + &Complex::from_bigint(c, prec);
    }
    &dv / &v
}

/// Central difference of `Q_n'/Q_n` at a random root of `Q_{n-1}` against `-sum 1/(a - z_k)^2`.
pub fn finite_difference_check(
    inputs: &RelationInputs,
    seed: u64,
) -> Result<VerificationReport, RelationError> {
    inputs.check()?;
    let n = inputs.n();
    let (Some(pr), Some(cr)) = (inputs.prev_roots, inputs.cur_roots) else {
        return Err(RelationError::MissingRoots { n });
    };
    if pr.is_empty() {
        return Ok(VerificationReport::pass(
            "relations.fd",
            Some(n as u64),
            "Q_{n-1} has no roots",
        ));
    }
    let mut rng = StdRng::seed_from_u64(seed ^ n as u64);
    let j = rng.gen_range(0..pr.len());
    let a = &pr.roots()[j];
    let prec = a.precision();
    let h = Complex::from_real(mp::pow2(-(prec as isize) / 4, prec));
    let plus = log_derivative_at(inputs.cur.poly(), &(a + &h));
    let minus = log_derivative_at(inputs.cur.poly(), &(a - &h));
    let fd = (&plus - &minus).scale(&mp::pow2(prec as isize / 4 - 1, prec));
    let (sums, mags) = accumulate(a, cr.roots(), None, 2);
    let want = -&sums[1];
    let scale = mp::log2_abs(&mags[1]).max(0.0);
    let dev = (&fd - &want).log2_abs() - scale;
    let tol = -(prec as f64) / 2.0 + 24.0;
    let detail = format!(
        "root {j} of Q_{}, relative deviation {}",
        n - 1,
        log2_to_decimal(dev)
    );
    if dev <= tol {
        Ok(VerificationReport::pass(
            "relations.fd",
            Some(n as u64),
            detail,
        ))
    } else {
        Ok(VerificationReport::fail(
            "relations.fd",
            Some(n as u64),
            detail,
            json!({"log2_deviation": dev}),
        ))
    }
}
