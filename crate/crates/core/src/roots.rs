//! Multiprecision roots of `Q_n`, computed in the variable `y = z^3`.
//!
//! `Q_n(z) = z^eps R_n(z^3)` with `eps` in {0, 1}. Roots of `R_n` are found by
//! Aberth-Ehrlich iteration with a precision ramp, polished by Newton steps at
//! twice the working precision, and lifted to `z` by taking cube roots.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num::complex::Complex64 as C64;
use num::{BigInt, BigRational, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;
use thiserror::Error;

use crate::exactpoly::{inverse_power_sums, IntPoly};
use crate::gen::YvRecord;
use crate::mp::{self, Complex, Real};
use crate::report::VerificationReport;

#[derive(Debug, Clone, Error)]
pub enum RootError {
    #[error("Q_{n} is not of the form z^eps R(z^3): {reason}")]
    StructureViolation { n: u32, reason: String },
    #[error("no convergence after {iterations} sweeps (worst relative residual 2^{worst_log2_residual:.1})")]
    NoConvergence {
        iterations: usize,
        worst_log2_residual: f64,
    },
    #[error("certification failed for Q_{n}: {reason}")]
    CertificationFailure { n: u32, reason: String },
    #[error("precision {0} is below 53 bits")]
    PrecisionTooLow(usize),
    #[error("constant polynomial has no roots")]
    ConstantPolynomial,
}

/// `R_n(y)` together with the stripped factor `z^eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPoly {
    n: u32,
    y_coeffs: IntPoly,
    zero_root: bool,
}

impl ReducedPoly {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `R_n` with ascending coefficients in `y`.
    pub fn y_poly(&self) -> &IntPoly {
        &self.y_coeffs
    }

    pub fn zero_root(&self) -> bool {
        self.zero_root
    }

    pub fn degree(&self) -> usize {
        self.y_coeffs.degree().unwrap_or(0)
    }
}

pub fn default_precision(degree: usize) -> usize {
    128.max(4 * degree)
}

pub fn cube_reduce(r: &YvRecord) -> Result<ReducedPoly, RootError> {
    let n = r.n();
    let eps = r.degree() % 3;
    if eps > 1 {
        return Err(RootError::StructureViolation {
            n,
            reason: format!("degree {} is 2 mod 3", r.degree()),
        });
    }
    let mut asc = r.compressed().to_vec();
    asc.reverse();
    let y_coeffs = IntPoly::new(asc);
    if IntPoly::expand(y_coeffs.coeffs(), eps, 3) != *r.poly() {
        return Err(RootError::StructureViolation {
            n,
            reason: "compressed coefficients do not rebuild Q_n".into(),
        });
    }
    if y_coeffs.coeff(0).is_zero() {
        return Err(RootError::StructureViolation {
            n,
            reason: "R_n(0) = 0".into(),
        });
    }
    Ok(ReducedPoly {
        n,
        y_coeffs,
        zero_root: eps == 1,
    })
}

pub(crate) fn par_map<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Real-coefficient polynomial rounded once to a fixed precision.
struct NumPoly {
    coeffs: Vec<Real>,
    abs_coeffs: Vec<Real>,
}

struct Eval {
    value: Complex,
    derivative: Complex,
    scale: Real,
}

impl Eval {
    fn log2_rel_residual(&self) -> f64 {
        self.value.log2_abs() - mp::log2_abs(&self.scale)
    }
}

impl NumPoly {
    fn new(p: &IntPoly, precision: usize) -> Self {
        let coeffs: Vec<Real> = p
            .coeffs()
            .iter()
            .map(|c| mp::real_from_bigint(c, precision))
            .collect();
        let abs_coeffs = coeffs.iter().map(mp::abs).collect();
        NumPoly { coeffs, abs_coeffs }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn eval(&self, y: &Complex) -> Eval {
        let d = self.degree();
        let ay = y.abs();
        let mut value = Complex::from_real(self.coeffs[d].clone());
        let mut derivative = Complex::zero(y.precision());
        let mut scale = self.abs_coeffs[d].clone();
        for i in (0..d).rev() {
            derivative = &(&derivative * y) + &value;
            value = &value * y;
            value.re = &value.re + &self.coeffs[i];
            scale = scale * &ay + &self.abs_coeffs[i];
        }
        Eval {
            value,
            derivative,
            scale,
        }
    }
}

/// `2^log2_mag * e^{i angle}` without passing the magnitude through `f64`.
fn polar(log2_mag: f64, angle: f64, precision: usize) -> Complex {
    let e = log2_mag.floor();
    let m = (log2_mag - e).exp2();
    Complex::from_f64(m * angle.cos(), m * angle.sin(), precision)
        .scale(&mp::pow2(e as isize, precision))
}

fn arg(c: &Complex) -> f64 {
    let e = c.log2_abs().floor() as isize;
    let u = c.scale(&mp::pow2(-e, c.precision()));
    let (re, im) = u.to_f64();
    im.atan2(re)
}

/// Fujiwara's bound on the root moduli, as a base-2 logarithm.
fn fujiwara_log2(p: &IntPoly) -> f64 {
    let d = p.degree().unwrap_or(0);
    let lg = |c: &BigInt| mp::log2_abs(&mp::real_from_bigint(c, 64));
    let lead = lg(&p.coeff(d));
    let mut best = f64::NEG_INFINITY;
    for k in 1..=d {
        let c = p.coeff(d - k);
        if c.is_zero() {
            continue;
        }
        let mut t = lg(&c) - lead;
        if k == d {
            t -= 1.0;
        }
        best = best.max(t / k as f64);
    }
    1.0 + best
}

fn initial_guesses(p: &IntPoly, precision: usize, seed: u64) -> Vec<Complex> {
    let d = p.degree().unwrap_or(0);
    let r = fujiwara_log2(p);
    let mut rng = StdRng::seed_from_u64(seed);
    let offset: f64 = rng.gen_range(0.0..2.0 * PI / d as f64);
    (0..d)
        .map(|k| {
            let jitter_angle: f64 = rng.gen_range(-0.2..0.2) / d as f64;
            let jitter_radius: f64 = rng.gen_range(-0.05..0.05);
            let angle = offset + 2.0 * PI * k as f64 / d as f64 + jitter_angle;
            polar(r + jitter_radius, angle, precision)
        })
        .collect()
}

/// Hardware-float Aberth pass in the scaled variable `t = y / 2^s`.
///
/// Returns `None` if the scaled coefficients do not fit in `f64` or the
/// iteration does not settle; the multiprecision stages then start from scratch.
fn aberth_f64(p: &IntPoly, guesses: &[Complex]) -> Option<Vec<Complex>> {
    let d = guesses.len();
    let s = fujiwara_log2(p).round();
    let logs: Vec<f64> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| mp::log2_abs(&mp::real_from_bigint(c, 64)) + s * i as f64)
        .collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return None;
    }
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .zip(&logs)
        .map(|(c, &l)| {
            if l - top < -1000.0 {
                0.0
            } else {
                let sign = if c.is_negative() { -1.0 } else { 1.0 };
                sign * (l - top).exp2()
            }
        })
        .collect();
    let unscale = mp::pow2(-(s as isize), 64);
    let mut t: Vec<C64> = guesses
        .iter()
        .map(|g| {
            let (re, im) = g.with_precision(64).scale(&unscale).to_f64();
            C64::new(re, im)
        })
        .collect();
    let target = -53.0 + (d as f64).log2() + 6.0;
    let mut done = vec![false; d];
    for _ in 0..(400 + 20 * d) {
        let snapshot = t.clone();
        for i in 0..d {
            if done[i] {
                continue;
            }
            let y = snapshot[i];
            let ay = y.norm();
            let (mut v, mut dv, mut sc) = (
                C64::new(coeffs[d], 0.0),
                C64::new(0.0, 0.0),
                coeffs[d].abs(),
            );
            for k in (0..d).rev() {
                dv = dv * y + v;
                v = v * y + coeffs[k];
                sc = sc * ay + coeffs[k].abs();
            }
            if v.norm() == 0.0 || (v.norm() / sc).log2() <= target {
                done[i] = true;
                continue;
            }
            let newton = v / dv;
            let sum: C64 = snapshot
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &yj)| (y - yj).inv())
                .sum();
            let w = newton / (C64::new(1.0, 0.0) - newton * sum);
            if !w.is_finite() {
                return None;
            }
            t[i] = y - w;
            if w.norm() <= 1e-15 * t[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&x| x) {
            let scale = mp::pow2(s as isize, 64);
            return Some(
                t.iter()
                    .map(|c| Complex::from_f64(c.re, c.im, 64).scale(&scale))
                    .collect(),
            );
        }
    }
    None
}

enum StageOutcome {
    Converged,
    Stalled { iterations: usize, worst: f64 },
}

fn aberth_stage(
    poly: &NumPoly,
    roots: &mut [Complex],
    precision: usize,
    max_iter: usize,
) -> StageOutcome {
    let d = roots.len();
    let guard = (d as f64).log2() + 6.0;
    let target = -(precision as f64) + guard;
    let mut done = vec![false; d];
    let mut worst = f64::INFINITY;
    for iter in 0..max_iter {
        let snapshot: &[Complex] = roots;
        let steps: Vec<Option<(Complex, f64)>> = par_map(d, |i| {
            if done[i] {
                return None;
            }
            let y = &snapshot[i];
            let ev = poly.eval(y);
            let res = ev.log2_rel_residual();
            if res <= target || ev.value.is_zero() {
                return Some((Complex::zero(precision), res));
            }
            let one = Complex::one(precision);
            if ev.derivative.is_zero() {
                // Nudge off a critical point.
                let nudge = y.scale(&mp::pow2(-20, precision));
                return Some((&nudge + &one.scale(&mp::pow2(-40, precision)), res));
            }
            let newton = &ev.value / &ev.derivative;
            let mut s = Complex::zero(precision);
            for (j, yj) in snapshot.iter().enumerate() {
                if j != i {
                    let diff = y - yj;
                    if !diff.is_zero() {
                        s = &s + &diff.recip();
                    }
                }
            }
            let denom = &one - &(&newton * &s);
            let w = if denom.is_zero() {
                newton
            } else {
                &newton / &denom
            };
            Some((w, res))
        });
        worst = f64::NEG_INFINITY;
        for (i, step) in steps.into_iter().enumerate() {
            let Some((w, res)) = step else { continue };
            worst = worst.max(res);
            if w.is_zero() {
                done[i] = true;
                continue;
            }
            let small = w.log2_abs() <= roots[i].log2_abs() - (precision as f64 - 4.0);
            roots[i] = &roots[i] - &w;
            if small {
                done[i] = true;
            }
        }
        if done.iter().all(|&x| x) {
            return StageOutcome::Converged;
        }
        if iter + 1 == max_iter {
            break;
        }
    }
    StageOutcome::Stalled {
        iterations: max_iter,
        worst,
    }
}

fn newton_polish(poly: &NumPoly, roots: &mut [Complex], steps: usize) {
    let polished = par_map(roots.len(), |i| {
        let mut y = roots[i].clone();
        for _ in 0..steps {
            let ev = poly.eval(&y);
            if ev.value.is_zero() || ev.derivative.is_zero() {
                break;
            }
            y = &y - &(&ev.value / &ev.derivative);
        }
        y
    });
    roots.clone_from_slice(&polished);
}

pub const DEFAULT_SEED: u64 = 0x5eed;

/// All roots of `R_n(y)`, polished at `2 * precision_bits` and returned at that precision.
pub fn find_roots(p: &ReducedPoly, precision_bits: usize) -> Result<Vec<Complex>, RootError> {
    find_roots_seeded(p, precision_bits, DEFAULT_SEED)
}

pub fn find_roots_seeded(
    p: &ReducedPoly,
    precision_bits: usize,
    seed: u64,
) -> Result<Vec<Complex>, RootError> {
    if precision_bits < 53 {
        return Err(RootError::PrecisionTooLow(precision_bits));
    }
    let poly = &p.y_coeffs;
    let d = p.degree();
    if d == 0 {
        return Err(RootError::ConstantPolynomial);
    }
    let hi = 2 * precision_bits;
    if d == 1 {
        let root =
            -(mp::real_from_bigint(&poly.coeff(0), hi) / mp::real_from_bigint(&poly.coeff(1), hi));
        return Ok(vec![Complex::from_real(root)]);
    }
    let mut prec = 64.min(precision_bits);
    let guesses = initial_guesses(poly, prec, seed);
    let mut roots = aberth_f64(poly, &guesses).unwrap_or(guesses);
    loop {
        let num = NumPoly::new(poly, prec);
        let last = prec == precision_bits;
        let max_iter = if prec == 64 { 400 + 20 * d } else { 100 };
        if let StageOutcome::Stalled { iterations, worst } =
            aberth_stage(&num, &mut roots, prec, max_iter)
        {
            if last {
                return Err(RootError::NoConvergence {
                    iterations,
                    worst_log2_residual: worst,
                });
            }
        }
        if last {
            break;
        }
        prec = (2 * prec).min(precision_bits);
        roots = roots.iter().map(|r| r.with_precision(prec)).collect();
    }
    let num = NumPoly::new(poly, hi);
    roots = roots.iter().map(|r| r.with_precision(hi)).collect();
    newton_polish(&num, &mut roots, 2);
    Ok(roots)
}

/// Certified roots of one `Q_n`.
#[derive(Debug, Clone)]
pub struct RootSet {
    n: u32,
    roots: Vec<Complex>,
    residuals: Vec<Real>,
    precision_bits: usize,
    max_residual: Real,
    min_separation: Real,
    includes_zero: bool,
}

impl RootSet {
    /// Wrap arbitrary root values, measuring residuals against `Q_n`.
    pub fn from_roots(
        r: &YvRecord,
        roots: Vec<Complex>,
        precision_bits: usize,
    ) -> Result<Self, RootError> {
        let reduced = cube_reduce(r)?;
        let num = NumPoly::new(reduced.y_poly(), 2 * precision_bits);
        let residuals: Vec<Real> = par_map(roots.len(), |i| {
            let z = roots[i].with_precision(2 * precision_bits);
            if z.is_zero() {
                return if reduced.zero_root {
                    mp::zero(precision_bits)
                } else {
                    mp::real_from_i64(1, precision_bits)
                };
            }
            let y = &(&z * &z) * &z;
            let ev = num.eval(&y);
            (ev.value.abs() / ev.scale)
                .with_precision(precision_bits)
                .value()
        });
        let max_residual = residuals
            .iter()
            .cloned()
            .max_by(mp::cmp_real)
            .unwrap_or_else(|| mp::zero(precision_bits));
        let roots: Vec<Complex> = roots
            .iter()
            .map(|z| z.with_precision(precision_bits))
            .collect();
        let min_separation = min_separation(&roots, precision_bits);
        let includes_zero = roots.iter().any(Complex::is_zero);
        Ok(RootSet {
            n: r.n(),
            roots,
            residuals,
            precision_bits,
            max_residual,
            min_separation,
            includes_zero,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn roots(&self) -> &[Complex] {
        &self.roots
    }

    /// Relative residual `|Q_n(z)| / sum |a_i| |z|^i` per root.
    pub fn residuals(&self) -> &[Real] {
        &self.residuals
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    pub fn max_residual(&self) -> &Real {
        &self.max_residual
    }

    pub fn min_separation(&self) -> &Real {
        &self.min_separation
    }

    pub fn includes_zero(&self) -> bool {
        self.includes_zero
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn nonzero_roots(&self) -> impl Iterator<Item = &Complex> {
        self.roots.iter().filter(|z| !z.is_zero())
    }

    pub fn residual_threshold_log2(&self) -> f64 {
        residual_threshold_log2(self.precision_bits)
    }
}

pub fn residual_threshold_log2(precision_bits: usize) -> f64 {
    -(precision_bits as f64) + 32.0
}

fn closure_tolerance_log2(precision_bits: usize, z: &Complex) -> f64 {
    -(precision_bits as f64) / 2.0 + z.log2_abs().max(0.0)
}

fn min_separation(roots: &[Complex], precision: usize) -> Real {
    if roots.len() < 2 {
        // No pairs: report the separation as +infinity's stand-in, 2^precision.
        return mp::pow2(precision as isize, precision);
    }
    let rows = par_map(roots.len(), |i| {
        let mut best: Option<Real> = None;
        for zj in &roots[i + 1..] {
            let d = (&roots[i] - zj).norm_sqr();
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
        best
    });
    rows.into_iter()
        .flatten()
        .min_by(mp::cmp_real)
        .map(|d| d.sqrt())
        .unwrap_or_else(|| mp::zero(precision))
}

/// `Q_n`'s roots: reduce, solve in `y`, lift.
pub fn roots_of(r: &YvRecord, precision_bits: usize) -> Result<RootSet, RootError> {
    roots_of_seeded(r, precision_bits, DEFAULT_SEED)
}

pub fn roots_of_seeded(
    r: &YvRecord,
    precision_bits: usize,
    seed: u64,
) -> Result<RootSet, RootError> {
    let reduced = cube_reduce(r)?;
    if reduced.degree() == 0 {
        return lift_cube_roots(&[], &reduced, r, precision_bits);
    }
    let y_roots = match find_roots_seeded(&reduced, precision_bits, seed) {
        Ok(v) => v,
        Err(RootError::NoConvergence { .. }) => {
            find_roots_seeded(&reduced, 2 * precision_bits, seed.wrapping_add(1))?
                .into_iter()
                .map(|y| y.with_precision(2 * precision_bits))
                .collect()
        }
        Err(e) => return Err(e),
    };
    lift_cube_roots(&y_roots, &reduced, r, precision_bits)
}

/// Three cube roots per `y`-root, plus `0` when `z | Q_n`.
pub fn lift_cube_roots(
    y_roots: &[Complex],
    p: &ReducedPoly,
    r: &YvRecord,
    precision_bits: usize,
) -> Result<RootSet, RootError> {
    let hi = 2 * precision_bits;
    let omega = Complex::omega(hi);
    let omega2 = &omega * &omega;
    let lifted = par_map(y_roots.len(), |i| {
        let y = y_roots[i].with_precision(hi);
        let seed = polar(y.log2_abs() / 3.0, arg(&y) / 3.0, hi);
        let z = y.cbrt_near(&seed);
        let z1 = &z * &omega;
        let z2 = &z * &omega2;
        [z, z1, z2]
    });
    let mut roots: Vec<Complex> = lifted.into_iter().flatten().collect();
    if p.zero_root {
        roots.push(Complex::zero(hi));
    }
    let rs = RootSet::from_roots(r, roots, precision_bits)?;
    if rs.len() != r.degree() {
        return Err(RootError::CertificationFailure {
            n: r.n(),
            reason: format!("{} roots for degree {}", rs.len(), r.degree()),
        });
    }
    if mp::log2_abs(&rs.max_residual) > rs.residual_threshold_log2() {
        return Err(RootError::CertificationFailure {
            n: r.n(),
            reason: format!("relative residual 2^{:.1}", mp::log2_abs(&rs.max_residual)),
        });
    }
    if rs.len() > 1 && mp::is_zero(&rs.min_separation) {
        return Err(RootError::CertificationFailure {
            n: r.n(),
            reason: "coincident roots".into(),
        });
    }
    Ok(rs)
}

/// Match `map(z_k)` to some `z_j` for every `k`; the matching must be a permutation.
fn closure_failures(
    rs: &RootSet,
    map: impl Fn(&Complex) -> Complex + Sync,
    label: &str,
) -> Vec<serde_json::Value> {
    let coords: Vec<(f64, f64)> = rs.roots.iter().map(Complex::to_f64).collect();
    let matches = par_map(rs.len(), |k| {
        let target = map(&rs.roots[k]);
        let (tx, ty) = target.to_f64();
        let mut best = (f64::INFINITY, usize::MAX);
        let mut second = f64::INFINITY;
        for (j, &(x, y)) in coords.iter().enumerate() {
            let d = (x - tx).hypot(y - ty);
            if d < best.0 {
                second = best.0;
                best = (d, j);
            } else if d < second {
                second = d;
            }
        }
        let tol = closure_tolerance_log2(rs.precision_bits, &target);
        let j = best.1;
        let exact = (&target - &rs.roots[j]).log2_abs();
        let floor = (1e-12 * (1.0 + tx.hypot(ty))).max(tol.exp2());
        if exact > tol {
            Err(json!({"check": label, "root": k, "reason": "no partner", "log2_distance": exact}))
        } else if second <= floor {
            Err(json!({"check": label, "root": k, "reason": "ambiguous partner"}))
        } else {
            Ok(j)
        }
    });
    let mut failures = Vec::new();
    let mut hit = vec![false; rs.len()];
    for m in matches {
        match m {
            Ok(j) if hit[j] => {
                failures.push(json!({"check": label, "root": j, "reason": "matched twice"}))
            }
            Ok(j) => hit[j] = true,
            Err(e) => failures.push(e),
        }
    }
    failures
}

/// Indices of real nonzero roots lying within `2^{-P/2}` of `p/q` with `q <= 64`.
fn near_rational_failures(rs: &RootSet) -> Vec<serde_json::Value> {
    let p = rs.precision_bits;
    let mut out = Vec::new();
    for (k, z) in rs.roots.iter().enumerate() {
        let real = mp::is_zero(&z.im) || mp::log2_abs(&z.im) <= closure_tolerance_log2(p, z);
        if z.is_zero() || !real {
            continue;
        }
        let x = &z.re;
        let xf = mp::to_f64(x);
        for q in 1..=64i64 {
            let num = (xf * q as f64).round() as i64;
            let approx = mp::real_from_i64(num, p) / mp::real_from_i64(q, p);
            if mp::log2_abs(&(x - &approx)) <= -(p as f64) / 2.0 {
                out.push(json!({"check": "irrational", "root": k, "near": format!("{num}/{q}")}));
                break;
            }
        }
    }
    out
}

/// Count, residual, separation, closure under `omega` and conjugation, no near-rational real roots.
pub fn certify(rs: &RootSet, r: &YvRecord) -> VerificationReport {
    let n = Some(r.n() as u64);
    let mut failures = Vec::new();
    if rs.n != r.n() {
        failures.push(json!({"check": "n", "rootset": rs.n, "record": r.n()}));
    }
    if rs.len() != r.degree() {
        failures.push(json!({"check": "count", "found": rs.len(), "expected": r.degree()}));
    }
    let res = mp::log2_abs(&rs.max_residual);
    if res > rs.residual_threshold_log2() {
        failures.push(json!({"check": "residual", "log2_max_residual": res}));
    }
    if rs.len() > 1 && mp::is_zero(&rs.min_separation) {
        failures.push(json!({"check": "separation", "min_separation": "0"}));
    }
    if failures.is_empty() {
        let omega = Complex::omega(rs.precision_bits);
        failures.extend(closure_failures(rs, |z| z * &omega, "omega"));
        failures.extend(closure_failures(rs, Complex::conj, "conjugate"));
        failures.extend(near_rational_failures(rs));
    }
    let sep = if rs.len() > 1 {
        format!("{:.3e}", mp::to_f64(&rs.min_separation))
    } else {
        "n/a".to_string()
    };
    let residual = if res.is_finite() {
        format!("2^{res:.1}")
    } else {
        "0".to_string()
    };
    let detail = format!(
        "{} roots at {} bits, max residual {residual}, min separation {sep}",
        rs.len(),
        rs.precision_bits,
    );
    VerificationReport::from_failures("roots", n, detail, failures)
}

/// `sum z^{-m}` over the nonzero roots.
pub fn numeric_inverse_power_sum(rs: &RootSet, m: u32) -> (Complex, Real) {
    let p = rs.precision_bits;
    let mut sum = Complex::zero(p);
    let mut mag = mp::zero(p);
    for z in rs.nonzero_roots() {
        let t = z.recip().powi(m);
        mag += t.abs();
        sum = &sum + &t;
    }
    (sum, mag)
}

/// `|numeric - exact| / max(|exact|, sum |z|^{-m})`, as a base-2 logarithm.
pub fn relative_deviation_log2(numeric: &Complex, magnitude: &Real, exact: &BigRational) -> f64 {
    let p = numeric.precision();
    let e = Complex::from_ratio(exact, p);
    let dev = (numeric - &e).log2_abs();
    let denom = mp::log2_abs(&e.re).max(mp::log2_abs(magnitude));
    if denom == f64::NEG_INFINITY {
        return dev;
    }
    dev - denom
}

/// Numeric inverse power sums against Newton's identities, to `10^{-0.2 P}`.
pub fn newton_cross_check(rs: &RootSet, r: &YvRecord, ms: &[u32]) -> VerificationReport {
    let max_m = ms.iter().copied().max().unwrap_or(0) as usize;
    let exact = inverse_power_sums(r.poly(), max_m);
    let tol = -(rs.precision_bits as f64) * 0.2 * std::f64::consts::LOG2_10;
    let mut failures = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for &m in ms {
        let (num, mag) = numeric_inverse_power_sum(rs, m);
        let dev = relative_deviation_log2(&num, &mag, &exact[m as usize - 1]);
        worst = worst.max(dev);
        if dev > tol {
            failures.push(
                json!({"m": m, "exact": exact[m as usize - 1].to_string(), "log2_deviation": dev}),
            );
        }
    }
    let detail = format!("inverse power sums m = {ms:?}, worst relative deviation 2^{worst:.1}");
    VerificationReport::from_failures("roots.newton", Some(r.n() as u64), detail, failures)
}

/// The roots of `Q_n` sum to zero.
pub fn root_sum_check(rs: &RootSet) -> VerificationReport {
    let p = rs.precision_bits;
    let mut sum = Complex::zero(p);
    let mut mag = mp::zero(p);
    for z in &rs.roots {
        sum = &sum + z;
        mag += z.abs();
    }
    let dev = sum.log2_abs() - mp::log2_abs(&mag);
    let tol = -(p as f64) + 32.0;
    let detail = format!("sum of {} roots, relative size 2^{dev:.1}", rs.len());
    if rs.len() < 2 || dev <= tol {
        VerificationReport::pass("roots.sum", Some(rs.n as u64), detail)
    } else {
        VerificationReport::fail(
            "roots.sum",
            Some(rs.n as u64),
            detail,
            json!({"log2_relative_sum": dev}),
        )
    }
}

/// One row per root: `n,re,im,residual`.
pub fn to_csv(rs: &RootSet) -> String {
    let digits = mp::decimal_digits_for(rs.precision_bits);
    let mut out = String::from("n,re,im,residual\n");
    for (z, res) in rs.roots.iter().zip(&rs.residuals) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            rs.n,
            mp::to_decimal_string(&z.re, digits),
            mp::to_decimal_string(&z.im, digits),
            mp::to_decimal_string(res, 6)
        );
    }
    out
}

/// Scatter plot of the roots with equal-aspect axes.
pub fn to_svg(rs: &RootSet) -> String {
    let pts: Vec<(f64, f64)> = rs.roots.iter().map(Complex::to_f64).collect();
    let extent = pts
        .iter()
        .map(|&(x, y)| x.abs().max(y.abs()))
        .fold(1.0f64, f64::max)
        * 1.1;
    let size = 480.0;
    let half = size / 2.0;
    let k = half / extent;
    let radius = (size / 120.0).max(2.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        out,
        r#"<title>roots of Q_{} ({} points)</title>"#,
        rs.n,
        pts.len()
    );
    let _ = writeln!(
        out,
        r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        out,
        r##"<line x1="0" y1="{half}" x2="{size}" y2="{half}" stroke="#bbbbbb"/><line x1="{half}" y1="0" x2="{half}" y2="{size}" stroke="#bbbbbb"/>"##
    );
    for (x, y) in pts {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.3}" cy="{:.3}" r="{radius:.1}" fill="#1f4e9c"/>"##,
            half + k * x,
            half - k * y
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="6" y="16" font-family="sans-serif" font-size="12">n = {}, |Re|,|Im| &lt; {:.3}</text>"##,
        rs.n, extent
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::generate;

    fn reduced(n: u32) -> (YvRecord, ReducedPoly) {
        let r = generate(n).unwrap().pop().unwrap();
        let p = cube_reduce(&r).unwrap();
        (r, p)
    }

    #[test]
    fn reduction_table() {
        let (_, p) = reduced(2);
        assert_eq!(p.y_poly(), &IntPoly::from_i64s(&[4, 1]));
        assert!(!p.zero_root());
        let (_, p) = reduced(3);
        assert_eq!(p.y_poly(), &IntPoly::from_i64s(&[-80, 20, 1]));
        let (_, p) = reduced(4);
        assert_eq!(p.y_poly(), &IntPoly::from_i64s(&[11200, 0, 60, 1]));
        assert!(p.zero_root());
    }

    #[test]
    fn linear_and_quadratic() {
        let (_, p) = reduced(2);
        let y = find_roots(&p, 128).unwrap();
        assert_eq!(y.len(), 1);
        assert_eq!(y[0].to_f64(), (-4.0, 0.0));

        let (_, p) = reduced(3);
        let mut y: Vec<f64> = find_roots(&p, 128)
            .unwrap()
            .iter()
            .map(|c| c.to_f64().0)
            .collect();
        y.sort_by(f64::total_cmp);
        let s = 180f64.sqrt();
        assert!((y[0] - (-10.0 - s)).abs() < 1e-12);
        assert!((y[1] - (-10.0 + s)).abs() < 1e-12);
    }

    #[test]
    fn vieta_for_q4() {
        let (_, p) = reduced(4);
        let y = find_roots(&p, 128).unwrap();
        let sum = y.iter().fold(Complex::zero(256), |a, b| &a + b);
        let prod = y.iter().fold(Complex::one(256), |a, b| &a * b);
        let sixty = Complex::from_f64(-60.0, 0.0, 256);
        let prodx = Complex::from_f64(-11200.0, 0.0, 256);
        assert!((&sum - &sixty).log2_abs() < -200.0);
        assert!((&prod - &prodx).log2_abs() < -200.0);
    }

    #[test]
    fn small_root_sets() {
        let r0 = generate(0).unwrap().pop().unwrap();
        let rs = roots_of(&r0, 128).unwrap();
        assert!(rs.is_empty());
        assert!(certify(&rs, &r0).passed());

        let r1 = generate(1).unwrap().pop().unwrap();
        let rs = roots_of(&r1, 128).unwrap();
        assert_eq!(rs.len(), 1);
        assert!(rs.includes_zero());
        assert!(certify(&rs, &r1).passed());

        let (r2, _) = reduced(2);
        let rs = roots_of(&r2, 128).unwrap();
        let cbrt4 = 4f64.cbrt();
        for z in rs.roots() {
            assert!((mp::to_f64(&z.abs()) - cbrt4).abs() < 1e-14);
        }
        assert!(rs
            .roots()
            .iter()
            .any(|z| (z.to_f64().0 + 1.5874).abs() < 1e-4));
        assert!(certify(&rs, &r2).passed());

        let (r3, _) = reduced(3);
        assert_eq!(roots_of(&r3, 128).unwrap().len(), 6);
    }

    #[test]
    fn duplicated_root_fails_certification() {
        let (r2, _) = reduced(2);
        let rs = roots_of(&r2, 128).unwrap();
        let mut roots = rs.roots().to_vec();
        roots[1] = roots[0].clone();
        let bad = RootSet::from_roots(&r2, roots, 128).unwrap();
        assert!(mp::is_zero(bad.min_separation()));
        let rep = certify(&bad, &r2);
        assert!(rep.failed());
    }

    #[test]
    fn rational_root_is_flagged() {
        // z^3 - 8 is not a family member, so fake Q_2 roots by hand.
        let (r2, _) = reduced(2);
        let mut roots = roots_of(&r2, 128).unwrap().roots().to_vec();
        roots[0] = Complex::from_f64(-1.5, 0.0, 128);
        let rs = RootSet::from_roots(&r2, roots, 128).unwrap();
        assert!(!near_rational_failures(&rs).is_empty());
    }

    #[test]
    fn newton_sums_match_numeric_sums() {
        for n in [4, 5, 7] {
            let r = generate(n).unwrap().pop().unwrap();
            let rs = roots_of(&r, 160).unwrap();
            assert!(certify(&rs, &r).passed(), "n = {n}");
            assert!(newton_cross_check(&rs, &r, &[3, 6, 9]).passed(), "n = {n}");
            assert!(root_sum_check(&rs).passed());
        }
    }

    #[test]
    fn exports() {
        let (r2, _) = reduced(2);
        let rs = roots_of(&r2, 128).unwrap();
        let csv = to_csv(&rs);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,re,im,residual");
        assert_eq!(lines.len(), 4);
        assert!(lines
            .iter()
            .skip(1)
            .any(|l| l.starts_with("2,-1.5874010519681994747517056392723")));
        let svg = to_svg(&rs);
        assert_eq!(svg.matches("<circle").count(), 3);
    }
}
