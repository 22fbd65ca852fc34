//! Upper bounds on the dimension of asymmetric quantum codes.
//!
//! Every finite bound is produced by a [`KeyInequalityCertificate`]: a grid of
//! Krawtchouk coefficients `α_{i,j}` (of `P_i(y) P_j(x)`) together with the
//! values `f(r,s)` of `f(x,y) = Σ α_{i,j} P_i(y) P_j(x)`. The checker verifies
//! the sign conditions and returns `(1/2^n) max f(i,j)/α_{i,j}` over the box
//! `i < d_x`, `j < d_z`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::binom::{binomial_f64, binomial_half, pow2};
use crate::krawtchouk::{
    alpha_coefficients, bisect, eval_real_all, smallest_root, KrawtchoukError, KrawtchoukTable,
};

/// Relative half-width of the band treated as zero for float-valued grids.
pub const FLOAT_BAND: f64 = 1e-9;
pub const QUADRATURE_TOL: f64 = 1e-8;
pub const GRID_STEP: f64 = 1e-4;
pub const GOLDEN_TOL: f64 = 1e-7;
/// Slack on the non-strict validity windows of the asymptotic bounds.
pub const WINDOW_SLACK: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("argument {0} outside [0, 1]")]
    Domain(f64),
    #[error("delta = {delta} is outside the validity window (largest admissible {limit})")]
    OutsideWindow { delta: f64, limit: f64 },
    #[error("closed form and expansion of f disagree at x = {x}")]
    PathMismatch { x: usize },
    #[error("P_t + P_(t+1) has no sign change on ({lo}, {hi})")]
    NoBracket { lo: f64, hi: f64 },
    #[error(transparent)]
    Krawtchouk(#[from] KrawtchoukError),
}

/// Numbers a certificate can be written in.
pub trait CertValue: Clone + PartialOrd + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn ratio(&self, other: &Self) -> Self;
    fn div_pow2(&self, n: usize) -> Self;
    fn to_f64(&self) -> f64;
    fn abs_val(&self) -> Self;
    /// Values within this distance of 0 count as 0, given the grid's
    /// largest magnitude.
    fn band(scale: &Self) -> Self;
    fn neg(&self) -> Self;
    fn describe(&self) -> String;
}

impl CertValue for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn ratio(&self, other: &Self) -> Self {
        self / other
    }
    fn div_pow2(&self, n: usize) -> Self {
        self / BigRational::from_integer(pow2(n as u32))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn band(_: &Self) -> Self {
        Zero::zero()
    }
    fn neg(&self) -> Self {
        -self
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

impl CertValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn ratio(&self, other: &Self) -> Self {
        self / other
    }
    fn div_pow2(&self, n: usize) -> Self {
        self / 2f64.powi(n as i32)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn band(scale: &Self) -> Self {
        FLOAT_BAND * scale.max(1.0)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn describe(&self) -> String {
        format!("{self:.6}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateMode {
    /// Conditions 1-3 as stated for a general `f`.
    Strict,
    /// Product certificates vanishing at odd points: only cells with both
    /// coordinates even enter the maximum, and inside the box `f >= 0` with
    /// `f > 0` exactly at even-even cells.
    EvenFactored,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeyInequalityCertificate<T> {
    pub n: usize,
    pub d_x: usize,
    pub d_z: usize,
    /// `alpha[i][j]`, coefficient of `P_i(y) P_j(x)`.
    pub alpha: Vec<Vec<T>>,
    /// `f[r][s] = f(r, s)`, `r` the `x` coordinate.
    pub f: Vec<Vec<T>>,
    pub mode: CertificateMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// A coefficient is negative, or zero where the mode needs it positive.
    Coefficients,
    /// Sign of `f` inside the box `r < d_x`, `s < d_z`.
    InsideBox,
    /// `f > 0` at a cell with `r >= d_x` or `s >= d_z`.
    OutsideBox,
    /// `f(i,j) > 0` over `α_{i,j} = 0` inside the box.
    UnboundedRatio,
}

impl Condition {
    pub fn number(self) -> u8 {
        match self {
            Condition::Coefficients => 1,
            Condition::InsideBox => 2,
            Condition::OutsideBox => 3,
            Condition::UnboundedRatio => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    pub cell: (usize, usize),
    pub value: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.condition {
            Condition::Coefficients => "alpha",
            Condition::InsideBox | Condition::OutsideBox => "f",
            Condition::UnboundedRatio => "f/alpha with alpha = 0, f",
        };
        write!(
            f,
            "condition {} violated at ({}, {}): {} = {:e}",
            self.condition.number(),
            self.cell.0,
            self.cell.1,
            what,
            self.value
        )
    }
}

/// Outcome of a certificate check. `bound` is present whenever the box
/// maximum is finite, even if some condition failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation<T> {
    pub bound: Option<T>,
    pub argmax: Option<(usize, usize)>,
    pub violations: Vec<Violation>,
}

impl<T> Evaluation<T> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.bound.is_some()
    }
}

fn max_abs<T: CertValue>(grid: &[Vec<T>]) -> T {
    let mut m = T::zero();
    for v in grid.iter().flatten() {
        let a = v.abs_val();
        if a > m {
            m = a;
        }
    }
    m
}

/// Checks all conditions and computes the bound, collecting every violation.
pub fn evaluate_key_inequality<T: CertValue>(cert: &KeyInequalityCertificate<T>) -> Evaluation<T> {
    let n = cert.n;
    let even = cert.mode == CertificateMode::EvenFactored;
    let a_band = T::band(&max_abs(&cert.alpha));
    let f_band = T::band(&max_abs(&cert.f));
    let (a_neg, f_neg) = (a_band.neg(), f_band.neg());
    let in_box = |r: usize, s: usize| r < cert.d_x && s < cert.d_z;
    let both_even = |r: usize, s: usize| r % 2 == 0 && s % 2 == 0;
    let mut violations = Vec::new();
    let mut push = |condition, cell, v: &T| {
        violations.push(Violation {
            condition,
            cell,
            value: v.to_f64(),
        })
    };

    for i in 0..=n {
        for j in 0..=n {
            let a = &cert.alpha[i][j];
            let needs_positive = even && in_box(i, j) && both_even(i, j);
            if *a < a_neg || (needs_positive && *a <= a_band) {
                push(Condition::Coefficients, (i, j), a);
            }
        }
    }
    for r in 0..=n {
        for s in 0..=n {
            let v = &cert.f[r][s];
            if in_box(r, s) {
                let bad = match (even, both_even(r, s)) {
                    (false, _) | (true, true) => *v <= f_band,
                    (true, false) => *v > f_band || *v < f_neg,
                };
                if bad {
                    push(Condition::InsideBox, (r, s), v);
                }
            } else if *v > f_band {
                push(Condition::OutsideBox, (r, s), v);
            }
        }
    }

    let mut best: Option<(T, (usize, usize))> = None;
    let mut unbounded = false;
    for i in 0..cert.d_x.min(n + 1) {
        for j in 0..cert.d_z.min(n + 1) {
            if even && !both_even(i, j) {
                continue;
            }
            let (f, a) = (&cert.f[i][j], &cert.alpha[i][j]);
            if *f <= f_band {
                continue;
            }
            if *a <= a_band {
                push(Condition::UnboundedRatio, (i, j), f);
                unbounded = true;
                continue;
            }
            let q = f.ratio(a);
            if best.as_ref().is_none_or(|(b, _)| q > *b) {
                best = Some((q, (i, j)));
            }
        }
    }
    let (bound, argmax) = match best {
        Some((q, cell)) if !unbounded => (Some(q.div_pow2(n)), Some(cell)),
        _ => (None, None),
    };
    Evaluation {
        bound,
        argmax,
        violations,
    }
}

/// The bound, or every violated condition with its witnessing cell.
pub fn check_key_inequality<T: CertValue>(
    cert: &KeyInequalityCertificate<T>,
) -> Result<T, Vec<Violation>> {
    let ev = evaluate_key_inequality(cert);
    match (ev.bound, ev.violations.is_empty()) {
        (Some(b), true) => Ok(b),
        _ => Err(ev.violations),
    }
}

fn check_distances(n: usize, d_x: usize, d_z: usize) -> Result<(), BoundError> {
    if n == 0 || d_x == 0 || d_z == 0 || d_x > n + 1 || d_z > n + 1 {
        return Err(BoundError::InvalidParameters(format!(
            "need n >= 1 and 1 <= d_x, d_z <= n + 1 (got n = {n}, d_x = {d_x}, d_z = {d_z})"
        )));
    }
    Ok(())
}

fn outer<T: Clone + std::ops::Mul<Output = T>>(rows: &[T], cols: &[T]) -> Vec<Vec<T>> {
    rows.iter()
        .map(|r| cols.iter().map(|c| r.clone() * c.clone()).collect())
        .collect()
}

/// `α_{i,j} = α_i(d_z) α_j(d_x)` and
/// `f = 2^{2n-d_x-d_z+2} Π_{r=d_x}^n (1 - x/r) Π_{s=d_z}^n (1 - y/s)`.
pub fn singleton_certificate(
    n: usize,
    d_x: usize,
    d_z: usize,
) -> Result<KeyInequalityCertificate<BigRational>, BoundError> {
    check_distances(n, d_x, d_z)?;
    let ax = alpha_coefficients(n, d_x)?;
    let az = alpha_coefficients(n, d_z)?;
    let profile = |a: &crate::krawtchouk::AlphaCoefficients| -> Result<Vec<BigRational>, BoundError> {
        (0..=n)
            .map(|x| {
                let v = a.product_value(&BigRational::from_integer(BigInt::from(x)));
                if v != a.expansion_value(x as i64) {
                    return Err(BoundError::PathMismatch { x });
                }
                Ok(v)
            })
            .collect()
    };
    let fx = profile(&ax)?;
    let fz = profile(&az)?;
    Ok(KeyInequalityCertificate {
        n,
        d_x,
        d_z,
        alpha: outer(&az.alpha, &ax.alpha),
        f: outer(&fx, &fz),
        mode: CertificateMode::Strict,
    })
}

/// `2^{n-d_x-d_z+2}` when the certificate checks out.
pub fn singleton_bound(n: usize, d_x: usize, d_z: usize) -> Result<Evaluation<BigRational>, BoundError> {
    Ok(evaluate_key_inequality(&singleton_certificate(n, d_x, d_z)?))
}

/// `[[n,k,d_z/d_x]]` is admissible iff `n >= k + d_x + d_z - 2`.
pub fn singleton_check(n: usize, k: usize, d_x: usize, d_z: usize) -> bool {
    k + d_x + d_z <= n + 2
}

/// `g(i; d) = C(n-i, n-d+1) / C(n-i, d-1)`; `None` where the denominator vanishes.
pub fn singleton_g(n: usize, i: usize, d: usize) -> Option<BigRational> {
    let (n, i, d) = (n as i64, i as i64, d as i64);
    let den = crate::binom::binomial(n - i, d - 1);
    (!den.is_zero()).then(|| BigRational::new(crate::binom::binomial(n - i, n - d + 1), den))
}

/// `g(i; d) / g(i+1; d)`, with `None` standing for `+∞` (`g(i+1; d) = 0`).
pub fn singleton_g_ratio(n: usize, i: usize, d: usize) -> Option<BigRational> {
    let a = singleton_g(n, i, d)?;
    let b = singleton_g(n, i + 1, d)?;
    (!b.is_zero()).then(|| a / b)
}

/// `f_1(x) = Σ_j P_φ(j)^2 P_j(x)` at integer `x`, by the expansion and by
/// `2^n C(n-x, φ-x/2) C(x, x/2)`; errors if the two disagree.
pub fn hamming_profile(table: &KrawtchoukTable, phi: usize) -> Result<Vec<BigInt>, BoundError> {
    let n = table.n();
    let coeff: Vec<BigInt> = (0..=n).map(|j| table.get(phi, j).pow(2)).collect();
    (0..=n)
        .map(|x| {
            let expanded: BigInt = (0..=n).map(|j| &coeff[j] * table.get(j, x)).sum();
            let (ni, xi, pi) = (n as i64, x as i64, phi as i64);
            let closed = pow2(n as u32) * binomial_half(ni - xi, 2 * pi - xi) * binomial_half(xi, xi);
            if expanded != closed {
                return Err(BoundError::PathMismatch { x });
            }
            Ok(closed)
        })
        .collect()
}

/// `α_i = P_θ(i)^2`, `β_j = P_φ(j)^2` with `φ = ⌊(d_x-1)/2⌋`, `θ = ⌊(d_z-1)/2⌋`.
pub fn hamming_finite_certificate(
    n: usize,
    d_x: usize,
    d_z: usize,
) -> Result<KeyInequalityCertificate<BigRational>, BoundError> {
    check_distances(n, d_x, d_z)?;
    let (phi, theta) = ((d_x - 1) / 2, (d_z - 1) / 2);
    let table = KrawtchoukTable::new(n);
    let sq = |k: usize| -> Vec<BigRational> {
        (0..=n)
            .map(|i| BigRational::from_integer(table.get(k, i).pow(2)))
            .collect()
    };
    let to_rat = |v: Vec<BigInt>| -> Vec<BigRational> { v.into_iter().map(BigRational::from_integer).collect() };
    let f1 = to_rat(hamming_profile(&table, phi)?);
    let f2 = to_rat(hamming_profile(&table, theta)?);
    Ok(KeyInequalityCertificate {
        n,
        d_x,
        d_z,
        alpha: outer(&sq(theta), &sq(phi)),
        f: outer(&f1, &f2),
        mode: CertificateMode::EvenFactored,
    })
}

/// Choice of `t` and `a` for one axis of the linear programming certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpParameters {
    pub n: usize,
    pub t: usize,
    /// Root of `P_t + P_{t+1}` in `(r_{t+1}, r_t)`.
    pub a: f64,
    pub r_t: f64,
    pub r_t1: f64,
}

/// `t = round(n (1/2 - sqrt(δ(1-δ))))`.
pub fn lp_t(n: usize, delta: f64) -> i64 {
    (n as f64 * (0.5 - (delta * (1.0 - delta)).sqrt())).round() as i64
}

pub fn lp_parameters(n: usize, delta: f64) -> Result<LpParameters, BoundError> {
    let t = lp_t(n, delta);
    if t < 1 {
        return Err(BoundError::InvalidParameters(format!("t = {t} < 1")));
    }
    lp_parameters_with_t(n, t as usize)
}

pub fn lp_parameters_with_t(n: usize, t: usize) -> Result<LpParameters, BoundError> {
    if t < 1 || t >= n {
        return Err(BoundError::InvalidParameters(format!("need 1 <= t < n (t = {t}, n = {n})")));
    }
    let r_t = smallest_root(n, t)?;
    let r_t1 = smallest_root(n, t + 1)?;
    let g = |x: f64| {
        let v = eval_real_all(n, t + 1, x);
        v[t] + v[t + 1]
    };
    if g(r_t1).signum() == g(r_t).signum() {
        return Err(BoundError::NoBracket { lo: r_t1, hi: r_t });
    }
    let a = bisect(g, r_t1, r_t);
    Ok(LpParameters { n, t, a, r_t, r_t1 })
}

fn half_binom_f64(n: i64, num: i64) -> f64 {
    if num % 2 != 0 {
        0.0
    } else {
        binomial_f64(n, num / 2)
    }
}

impl LpParameters {
    /// `F(x) = {P_{t+1}(x) P_t(a) - P_t(x) P_{t+1}(a)}^2 / (a - x)`; next to
    /// `x = a` the Christoffel-Darboux form is used (it tends to 0 there).
    pub fn f_value(&self, x: f64) -> f64 {
        if (self.a - x).abs() > 1e-6 {
            let (num, _) = self.numerator_and_kernel(x);
            return num * num / (self.a - x);
        }
        self.f_value_kernel(x)
    }

    /// `F(x) = (2/(t+1)) C(n,t) {…} Σ_{i<=t} P_i(x) P_i(a) / C(n,i)`.
    pub fn f_value_kernel(&self, x: f64) -> f64 {
        let (num, kernel) = self.numerator_and_kernel(x);
        2.0 / (self.t as f64 + 1.0) * binomial_f64(self.n as i64, self.t as i64) * num * kernel
    }

    fn numerator_and_kernel(&self, x: f64) -> (f64, f64) {
        let (n, t) = (self.n, self.t);
        let px = eval_real_all(n, t + 1, x);
        let pa = eval_real_all(n, t + 1, self.a);
        let num = px[t + 1] * pa[t] - px[t] * pa[t + 1];
        let kernel = (0..=t)
            .map(|i| px[i] * pa[i] / binomial_f64(n as i64, i as i64))
            .sum();
        (num, kernel)
    }

    /// `F_j` from the double sum over `i <= t`.
    pub fn coefficients(&self) -> Vec<f64> {
        let (n, t) = (self.n as i64, self.t as i64);
        let pa = eval_real_all(self.n, self.t + 1, self.a);
        let lead = 2.0 / (t as f64 + 1.0) * binomial_f64(n, t) * pa[self.t];
        (0..=n)
            .map(|j| {
                let s: f64 = (0..=t)
                    .map(|i| {
                        let w = pa[i as usize] / binomial_f64(n, i);
                        let b1 = half_binom_f64(n - j, t + 1 + i - j) * half_binom_f64(j, t + 1 - i + j);
                        let b2 = half_binom_f64(n - j, t + i - j) * half_binom_f64(j, t - i + j);
                        w * (b1 + b2)
                    })
                    .sum();
                lead * s
            })
            .collect()
    }

    /// `(2/(t+1)) P_t(a)^2 C(n-x, t-x/2) C(x, x/2)`, the `i = t` term of `F_x`.
    pub fn coefficient_lower_bound(&self, x: usize) -> f64 {
        let (n, t, x) = (self.n as i64, self.t as i64, x as i64);
        let pt = eval_real_all(self.n, self.t, self.a)[self.t];
        2.0 / (t as f64 + 1.0) * pt * pt * half_binom_f64(n - x, 2 * t - x) * half_binom_f64(x, x)
    }
}

#[derive(Debug, Clone)]
pub struct FiniteLpResult {
    pub x_axis: LpParameters,
    pub z_axis: LpParameters,
    pub certificate: KeyInequalityCertificate<f64>,
    pub evaluation: Evaluation<f64>,
    /// The bound exceeds `2^{n-d_x-d_z+2}`.
    pub exceeds_singleton: bool,
}

fn lp_certificate_for(
    n: usize,
    d_x: usize,
    d_z: usize,
    px: LpParameters,
    pz: LpParameters,
) -> KeyInequalityCertificate<f64> {
    let fx: Vec<f64> = (0..=n).map(|x| px.f_value(x as f64)).collect();
    let gz: Vec<f64> = (0..=n).map(|y| pz.f_value(y as f64)).collect();
    KeyInequalityCertificate {
        n,
        d_x,
        d_z,
        alpha: outer(&pz.coefficients(), &px.coefficients()),
        f: outer(&fx, &gz),
        mode: CertificateMode::Strict,
    }
}

fn t_candidates(n: usize, d: usize) -> Vec<LpParameters> {
    let t0 = lp_t(n, d as f64 / n as f64);
    (t0 - 1..=t0 + 1)
        .filter(|&t| t >= 1)
        .filter_map(|t| lp_parameters_with_t(n, t as usize).ok())
        .collect()
}

/// `f(x,y) = F(x) G(y)` over the rounded `t` (and `s`) and their neighbours,
/// keeping the pair with the fewest violations, then the smallest bound.
/// The result is returned even when conditions fail; see
/// [`Evaluation::violations`].
pub fn finite_lp_certificate(n: usize, d_x: usize, d_z: usize) -> Result<FiniteLpResult, BoundError> {
    check_distances(n, d_x, d_z)?;
    let xs = t_candidates(n, d_x);
    let zs = t_candidates(n, d_z);
    if xs.is_empty() || zs.is_empty() {
        return Err(BoundError::InvalidParameters(format!(
            "no admissible t for n = {n}, d_x = {d_x}, d_z = {d_z}"
        )));
    }
    let mut best: Option<(KeyInequalityCertificate<f64>, Evaluation<f64>, LpParameters, LpParameters)> = None;
    let rank = |e: &Evaluation<f64>| (e.violations.len(), e.bound.unwrap_or(f64::INFINITY));
    for px in &xs {
        for pz in &zs {
            let cert = lp_certificate_for(n, d_x, d_z, *px, *pz);
            let ev = evaluate_key_inequality(&cert);
            let better = best.as_ref().is_none_or(|(_, b, _, _)| {
                let (r1, r2) = (rank(&ev), rank(b));
                r1.0 < r2.0 || (r1.0 == r2.0 && r1.1 < r2.1)
            });
            if better {
                best = Some((cert, ev, *px, *pz));
            }
        }
    }
    let (certificate, evaluation, x_axis, z_axis) = best.expect("nonempty candidates");
    let singleton = 2f64.powi(n as i32 + 2 - d_x as i32 - d_z as i32);
    let exceeds_singleton = evaluation.bound.is_some_and(|b| b > singleton * (1.0 + 1e-9));
    Ok(FiniteLpResult {
        x_axis,
        z_axis,
        certificate,
        evaluation,
        exceeds_singleton,
    })
}

// ---- asymptotics ----

/// Base-2 binary entropy.
pub fn binary_entropy(x: f64) -> Result<f64, BoundError> {
    if !(0.0..=1.0).contains(&x) {
        if x > -WINDOW_SLACK && x < 1.0 + WINDOW_SLACK {
            return binary_entropy(x.clamp(0.0, 1.0));
        }
        return Err(BoundError::Domain(x));
    }
    let h = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    Ok(h(x) + h(1.0 - x))
}

fn entropy(x: f64) -> f64 {
    binary_entropy(x).unwrap_or(f64::NAN)
}

/// `γ(τ) = 1/2 - sqrt(τ(1-τ))`, the limit of `r_t / n` for `t/n -> τ`.
pub fn root_fraction(tau: f64) -> f64 {
    0.5 - (tau * (1.0 - tau)).max(0.0).sqrt()
}

/// `h(x) = 2x + sqrt(x(1-x)) - 1/2`.
pub fn h_auxiliary(x: f64) -> f64 {
    2.0 * x + (x * (1.0 - x)).sqrt() - 0.5
}

/// `δ` lies in the range where the Hamming-type bound reduces to its
/// closed form.
pub fn hamming_closed_form_range(delta: f64) -> bool {
    (0.0..=0.2).contains(&delta)
}

/// `log2((1-2τ + sqrt((1-2τ)^2 - 4z(1-z))) / (2(1-z)))`, square root clamped at 0.
pub fn integrand(tau: f64, z: f64) -> f64 {
    let u = 1.0 - 2.0 * tau;
    let disc = (u * u - 4.0 * z * (1.0 - z)).max(0.0);
    ((u + disc.sqrt()) / (2.0 * (1.0 - z))).log2()
}

fn simpson_step(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson_step(fa, flm, fm, a, m);
    let right = simpson_step(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson_step(fa, fm, fb, a, b);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// `∫_0^ξ` of [`integrand`].
pub fn log_krawtchouk_integral(tau: f64, xi: f64, tol: f64) -> f64 {
    adaptive_simpson(&|z| integrand(tau, z), 0.0, xi, tol)
}

fn entropy_term(tau: f64, xi: f64) -> f64 {
    (1.0 - xi) * entropy(((tau - xi / 2.0) / (1.0 - xi)).max(0.0))
}

fn omega_from(tau: f64, xi: f64, integral: f64) -> f64 {
    xi + entropy_term(tau, xi) - 2.0 * entropy(tau) - 2.0 * integral
}

fn gamma_from(tau: f64, xi: f64, integral: f64) -> f64 {
    2.0 * entropy(tau) + 2.0 * integral - entropy_term(tau, xi) - xi
}

/// `Ω_τ(ξ) = ξ + (1-ξ) H((τ-ξ/2)/(1-ξ)) - 2H(τ) - 2∫_0^ξ (…) dz`.
pub fn omega(tau: f64, xi: f64) -> f64 {
    omega_from(tau, xi, log_krawtchouk_integral(tau, xi, QUADRATURE_TOL))
}

/// `Γ_τ(ξ) = 2H(τ) + 2∫_0^ξ (…) dz - (1-ξ) H((τ-ξ/2)/(1-ξ)) - ξ`.
pub fn gamma(tau: f64, xi: f64) -> f64 {
    gamma_from(tau, xi, log_krawtchouk_integral(tau, xi, QUADRATURE_TOL))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
}

/// Maximizes `objective(ξ, ∫_0^ξ)` over `[0, hi]`: dense grid with
/// cumulative quadrature, then golden-section search around the best node.
pub fn maximize_profile(tau: f64, hi: f64, objective: fn(f64, f64, f64) -> f64, tol: f64) -> Maximum {
    let steps = ((hi / GRID_STEP).ceil() as usize).max(1);
    let h = hi / steps as f64;
    let piece_tol = tol / steps as f64;
    let mut cumulative = Vec::with_capacity(steps + 1);
    cumulative.push(0.0);
    let f = |z: f64| integrand(tau, z);
    for k in 1..=steps {
        let (a, b) = ((k - 1) as f64 * h, k as f64 * h);
        cumulative.push(cumulative[k - 1] + adaptive_simpson(&f, a, b, piece_tol));
    }
    let mut best = Maximum {
        arg: 0.0,
        value: objective(tau, 0.0, 0.0),
    };
    let mut best_k = 0;
    for (k, &int) in cumulative.iter().enumerate().skip(1) {
        let xi = k as f64 * h;
        let v = objective(tau, xi, int);
        if v > best.value {
            best = Maximum { arg: xi, value: v };
            best_k = k;
        }
    }
    let lo_k = best_k.saturating_sub(1);
    let (mut lo, mut up) = (lo_k as f64 * h, ((best_k + 1).min(steps)) as f64 * h);
    let at = |xi: f64| {
        let int = cumulative[lo_k] + adaptive_simpson(&f, lo_k as f64 * h, xi, piece_tol);
        objective(tau, xi, int)
    };
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (up - phi * (up - lo), lo + phi * (up - lo));
    let (mut fc, mut fd) = (at(c), at(d));
    while up - lo > GOLDEN_TOL {
        if fc > fd {
            up = d;
            d = c;
            fd = fc;
            c = up - phi * (up - lo);
            fc = at(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (up - lo);
            fd = at(d);
        }
    }
    let mid = 0.5 * (lo + up);
    let v = at(mid);
    if v > best.value {
        best = Maximum { arg: mid, value: v };
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticKind {
    Hamming,
    LinearProgramming,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    pub delta_x: f64,
    pub delta_z: f64,
    pub tau: f64,
    pub sigma: f64,
}

impl AsymptoticParams {
    /// `τ = δ_x/2`, `σ = δ_z/2`.
    pub fn hamming(delta_x: f64, delta_z: f64) -> Self {
        Self {
            delta_x,
            delta_z,
            tau: delta_x / 2.0,
            sigma: delta_z / 2.0,
        }
    }

    /// `τ = 1/2 - sqrt(δ_x(1-δ_x))`, likewise `σ`.
    pub fn linear_programming(delta_x: f64, delta_z: f64) -> Self {
        Self {
            delta_x,
            delta_z,
            tau: root_fraction(delta_x),
            sigma: root_fraction(delta_z),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticBound {
    pub params: AsymptoticParams,
    pub value: f64,
    pub xi: Maximum,
    pub eta: Maximum,
}

fn check_delta(delta: f64) -> Result<(), BoundError> {
    if !(0.0..=0.5).contains(&delta) || delta.is_nan() {
        return Err(BoundError::OutsideWindow { delta, limit: 0.5 });
    }
    Ok(())
}

/// Largest `δ` with `2τ <= γ(τ)` at `τ = δ/2`, i.e. `1/5`.
pub const HAMMING_WINDOW: f64 = 0.2;

/// `1 + max_{[0,2τ]} Ω_τ + max_{[0,2σ]} Ω_σ` with `τ = δ_x/2`, `σ = δ_z/2`.
pub fn hamming_asymptotic_bound(delta_x: f64, delta_z: f64) -> Result<AsymptoticBound, BoundError> {
    hamming_asymptotic_bound_tol(delta_x, delta_z, QUADRATURE_TOL)
}

pub fn hamming_asymptotic_bound_tol(
    delta_x: f64,
    delta_z: f64,
    tol: f64,
) -> Result<AsymptoticBound, BoundError> {
    let params = AsymptoticParams::hamming(delta_x, delta_z);
    for (delta, tau) in [(delta_x, params.tau), (delta_z, params.sigma)] {
        check_delta(delta)?;
        if 2.0 * tau > root_fraction(tau) + WINDOW_SLACK {
            return Err(BoundError::OutsideWindow {
                delta,
                limit: HAMMING_WINDOW,
            });
        }
    }
    let xi = maximize_profile(params.tau, 2.0 * params.tau, omega_from, tol);
    let eta = maximize_profile(params.sigma, 2.0 * params.sigma, omega_from, tol);
    Ok(AsymptoticBound {
        params,
        value: 1.0 + xi.value + eta.value,
        xi,
        eta,
    })
}

/// `-1 + max Γ_τ + max Γ_σ` with `τ = 1/2 - sqrt(δ_x(1-δ_x))`. The
/// maximization runs over `[0, min(δ, 2τ)]`; past `2τ` the binomial behind
/// the entropy term vanishes.
pub fn lp_asymptotic_bound(delta_x: f64, delta_z: f64) -> Result<AsymptoticBound, BoundError> {
    lp_asymptotic_bound_tol(delta_x, delta_z, QUADRATURE_TOL)
}

pub fn lp_asymptotic_bound_tol(delta_x: f64, delta_z: f64, tol: f64) -> Result<AsymptoticBound, BoundError> {
    let params = AsymptoticParams::linear_programming(delta_x, delta_z);
    for (delta, tau) in [(delta_x, params.tau), (delta_z, params.sigma)] {
        check_delta(delta)?;
        // γ(τ) = δ identically; the window is δ <= γ up to rounding.
        if delta > root_fraction(tau) + WINDOW_SLACK {
            return Err(BoundError::OutsideWindow { delta, limit: 0.5 });
        }
    }
    let xi = maximize_profile(params.tau, delta_x.min(2.0 * params.tau), gamma_from, tol);
    let eta = maximize_profile(params.sigma, delta_z.min(2.0 * params.sigma), gamma_from, tol);
    Ok(AsymptoticBound {
        params,
        value: -1.0 + xi.value + eta.value,
        xi,
        eta,
    })
}

/// `1 - H(δ_x/2) - H(δ_z/2)`.
pub fn hamming_closed_form(delta_x: f64, delta_z: f64) -> Result<f64, BoundError> {
    Ok(1.0 - binary_entropy(delta_x / 2.0)? - binary_entropy(delta_z / 2.0)?)
}

/// `H(1/2 - sqrt(δ_x(1-δ_x))) + H(1/2 - sqrt(δ_z(1-δ_z))) - 1`.
pub fn lp_closed_form(delta_x: f64, delta_z: f64) -> Result<f64, BoundError> {
    Ok(binary_entropy(root_fraction(delta_x))? + binary_entropy(root_fraction(delta_z))? - 1.0)
}

/// `(δ, bound(δ, δ))` at step 0.005 across the validity window, as CSV.
pub fn asymptotic_curve_csv(kind: AsymptoticKind) -> String {
    let (limit, f): (f64, fn(f64, f64) -> Result<AsymptoticBound, BoundError>) = match kind {
        AsymptoticKind::Hamming => (HAMMING_WINDOW, hamming_asymptotic_bound),
        AsymptoticKind::LinearProgramming => (0.5, lp_asymptotic_bound),
    };
    let steps = (limit / 0.005).round() as usize;
    let rows: Vec<String> = (0..=steps)
        .into_par_iter()
        .filter_map(|k| {
            let delta = k as f64 * 0.005;
            f(delta, delta).ok().map(|b| format!("{delta:.3},{:.9}", b.value))
        })
        .collect();
    let mut out = String::from("delta,bound\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn singleton_small_cases() {
        let ev = singleton_bound(5, 3, 3).unwrap();
        assert!(ev.violations.is_empty(), "{:?}", ev.violations);
        assert_eq!(ev.bound, Some(rat(2)));
        assert_eq!(ev.argmax, Some((0, 0)));
        assert_eq!(singleton_bound(6, 1, 1).unwrap().bound, Some(rat(64)));
        assert_eq!(singleton_bound(8, 2, 5).unwrap().bound, Some(rat(8)));
        assert!(singleton_check(5, 1, 3, 3));
        assert!(!singleton_check(5, 2, 3, 3));
    }

    #[test]
    fn singleton_g_ratio_at_least_one() {
        for n in 2..=14 {
            for d in 1..=n / 2 + 1 {
                for i in 0..d {
                    if let Some(r) = singleton_g_ratio(n, i, d) {
                        assert!(r >= rat(1), "n={n} d={d} i={i}");
                    }
                }
            }
        }
        assert_eq!(singleton_g(10, 0, 4), Some(rat(1)));
    }

    #[test]
    fn mutated_certificates_are_rejected() {
        let base = singleton_certificate(6, 3, 3).unwrap();

        let mut c1 = base.clone();
        c1.alpha[2][5] = ratio(-1, 7);
        let v = check_key_inequality(&c1).unwrap_err();
        assert!(v.iter().any(|x| x.condition == Condition::Coefficients && x.cell == (2, 5)));

        let mut c2 = base.clone();
        c2.f[1][2] = rat(0);
        let v = check_key_inequality(&c2).unwrap_err();
        assert!(v.iter().any(|x| x.condition == Condition::InsideBox && x.cell == (1, 2)));

        let mut c3 = base;
        c3.f[3][0] = rat(1);
        let v = check_key_inequality(&c3).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].condition, v[0].cell), (Condition::OutsideBox, (3, 0)));
        assert!(v[0].to_string().starts_with("condition 3 violated at (3, 0)"));
    }

    #[test]
    fn zero_alpha_under_positive_f_is_unbounded() {
        let mut c = singleton_certificate(6, 3, 3).unwrap();
        c.alpha[1][1] = rat(0);
        let ev = evaluate_key_inequality(&c);
        assert_eq!(ev.bound, None);
        assert!(ev.violations.iter().any(|v| v.condition == Condition::UnboundedRatio));
    }

    #[test]
    fn hamming_certificate_five_qubits() {
        let c = hamming_finite_certificate(5, 3, 3).unwrap();
        assert_eq!(c.f[0][0], rat(25600));
        assert_eq!(c.f[1][0], rat(0));
        let b = check_key_inequality(&c).unwrap();
        assert_eq!(b, rat(128));
        assert!(b >= rat(2));
    }

    #[test]
    fn hamming_paths_agree() {
        for n in 1..=12 {
            for d in 1..=n + 1 {
                let t = KrawtchoukTable::new(n);
                hamming_profile(&t, (d - 1) / 2).unwrap();
            }
        }
    }

    #[test]
    fn lp_parameters_example() {
        assert_eq!(lp_t(14, 0.15), 2);
        let p = lp_parameters(14, 0.15).unwrap();
        assert_eq!(p.t, 2);
        assert!(p.r_t1 < p.a && p.a < p.r_t);
        let v = eval_real_all(14, 3, p.a);
        assert!((v[2] / v[3] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn lp_coefficients_reproduce_f() {
        for (n, t) in [(10, 1), (14, 2), (16, 3), (20, 4)] {
            let p = lp_parameters_with_t(n, t).unwrap();
            let fj = p.coefficients();
            for (j, v) in fj.iter().enumerate() {
                assert!(*v >= -1e-9 * v.abs().max(1.0), "F_{j} = {v}");
                if j % 2 == 0 {
                    assert!(*v >= p.coefficient_lower_bound(j) * (1.0 - 1e-9));
                }
            }
            for x in 0..=n {
                let direct = p.f_value(x as f64);
                let expanded: f64 = (0..=n)
                    .map(|j| fj[j] * crate::krawtchouk::eval_integer_f64(n, j, x as i64))
                    .sum();
                assert!(
                    (direct - expanded).abs() <= 1e-6 * direct.abs().max(1.0),
                    "n={n} x={x}: {direct} vs {expanded}"
                );
                if (x as f64) > p.a {
                    assert!(direct <= 0.0);
                }
            }
            for x in 0..=n {
                let (d, k) = (p.f_value(x as f64), p.f_value_kernel(x as f64));
                assert!((d - k).abs() <= 1e-9 * d.abs().max(1.0));
            }
            assert!(p.f_value(p.a).abs() < 1e-6 * p.f_value(0.0));
        }
    }

    #[test]
    fn finite_lp_reports_its_status() {
        let r = finite_lp_certificate(10, 3, 3).unwrap();
        assert!(r.evaluation.bound.is_some());
        assert!(!r.evaluation.violations.is_empty());
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.1).unwrap() - 0.468996).abs() < 1e-5);
        assert!((binary_entropy(0.3).unwrap() - binary_entropy(0.7).unwrap()).abs() < 1e-15);
        assert!(binary_entropy(1.5).is_err());
    }

    #[test]
    fn profiles_at_zero() {
        for tau in [0.02, 0.05, 0.11] {
            assert!((omega(tau, 0.0) + entropy(tau)).abs() < 1e-15);
            assert!((gamma(tau, 0.0) - entropy(tau)).abs() < 1e-15);
            assert!((omega(tau, 0.07) + gamma(tau, 0.07)).abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let v = adaptive_simpson(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-10);
        assert!((v - 2.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn hamming_asymptotic_matches_corollary() {
        for d in [0.05, 0.10, 0.15] {
            let b = hamming_asymptotic_bound(d, d).unwrap();
            assert!((b.value - hamming_closed_form(d, d).unwrap()).abs() < 1e-6);
            assert!(b.xi.arg < GRID_STEP && b.eta.arg < GRID_STEP);
        }
        assert!(hamming_asymptotic_bound(0.2, 0.2).is_ok());
        assert!(matches!(
            hamming_asymptotic_bound(0.25, 0.1),
            Err(BoundError::OutsideWindow { .. })
        ));
    }

    #[test]
    fn lp_asymptotic_matches_corollary() {
        let b = lp_asymptotic_bound(0.1865, 0.1865).unwrap();
        assert!((b.value - 0.0028).abs() < 5e-3);
        assert!((b.value - lp_closed_form(0.1865, 0.1865).unwrap()).abs() < 1e-6);
        assert!((lp_asymptotic_bound(0.0, 0.0).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn h_is_increasing() {
        let mut prev = h_auxiliary(0.0);
        for k in 1..=5000 {
            let v = h_auxiliary(k as f64 * 1e-4);
            assert!(v > prev);
            prev = v;
        }
        assert!(h_auxiliary(0.1).abs() < 1e-15);
    }
}
