//! Binary Krawtchouk polynomials
//! `P_i(x) = Σ_j (-1)^j C(x, j) C(n - x, i - j)` and the identities used by
//! the bound certificates.
//!
//! Integer-point values are exact (`BigInt`) and come from the defining sum;
//! the three-term recurrence is kept as an independent second route. Real
//! arguments go through the recurrence in double precision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::binom::{binomial, binomial_f64, binomial_half, pow2};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KrawtchoukError {
    #[error("index out of range: n = {n}, i = {i}, x = {x}")]
    IndexOutOfRange { n: usize, i: usize, x: i64 },
    #[error("no sign change found for P_{t} with n = {n}")]
    NoBracket { n: usize, t: usize },
}

fn check(n: usize, i: usize, x: i64) -> Result<(), KrawtchoukError> {
    if i > n || x < 0 || x > n as i64 {
        return Err(KrawtchoukError::IndexOutOfRange { n, i, x });
    }
    Ok(())
}

/// `P_i(x)` for integer `0 <= x <= n` by the defining alternating sum.
pub fn eval_integer(n: usize, i: usize, x: i64) -> Result<BigInt, KrawtchoukError> {
    check(n, i, x)?;
    Ok(direct_sum(n as i64, i as i64, x))
}

fn direct_sum(n: i64, i: i64, x: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=i {
        let term = binomial(x, j) * binomial(n - x, i - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `P_i(x)` at integer `x` through the three-term recurrence
/// `(i+1) P_{i+1} = (n - 2x) P_i - (n - i + 1) P_{i-1}`.
pub fn eval_integer_recurrence(n: usize, i: usize, x: i64) -> Result<BigInt, KrawtchoukError> {
    check(n, i, x)?;
    let n = n as i64;
    let mut prev = BigInt::one();
    if i == 0 {
        return Ok(prev);
    }
    let mut cur = BigInt::from(n - 2 * x);
    for k in 1..i as i64 {
        let next = (BigInt::from(n - 2 * x) * &cur - BigInt::from(n - k + 1) * &prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `P_0(x), …, P_upto(x)` at real `x` via the recurrence.
pub fn eval_real_all(n: usize, upto: usize, x: f64) -> Vec<f64> {
    let nf = n as f64;
    let mut vals = Vec::with_capacity(upto + 1);
    vals.push(1.0);
    if upto >= 1 {
        vals.push(nf - 2.0 * x);
    }
    for k in 1..upto {
        let next = ((nf - 2.0 * x) * vals[k] - (nf - k as f64 + 1.0) * vals[k - 1]) / (k as f64 + 1.0);
        vals.push(next);
    }
    vals
}

/// `P_i(x)` at real `x`.
pub fn eval_real(n: usize, i: usize, x: f64) -> Result<f64, KrawtchoukError> {
    if i > n {
        return Err(KrawtchoukError::IndexOutOfRange { n, i, x: x as i64 });
    }
    Ok(eval_real_all(n, i, x)[i])
}

/// `P_i(x)` at real `x` from the defining sum with `C(x, j)` expanded as the
/// falling factorial `x(x-1)…(x-j+1)/j!`. Accurate only for small `n`.
pub fn eval_real_direct(n: usize, i: usize, x: f64) -> f64 {
    let falling = |y: f64, k: usize| -> f64 {
        (0..k).fold(1.0, |acc, m| acc * (y - m as f64) / (m as f64 + 1.0))
    };
    (0..=i)
        .map(|j| {
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            s * falling(x, j) * falling(n as f64 - x, i - j)
        })
        .sum()
}

/// Smallest root `r_t` of `P_t`, located by an exact sign scan over the
/// integers followed by bisection on the real evaluation.
pub fn smallest_root(n: usize, t: usize) -> Result<f64, KrawtchoukError> {
    if t == 0 || t > n {
        return Err(KrawtchoukError::IndexOutOfRange { n, i: t, x: 0 });
    }
    let mut prev = direct_sum(n as i64, t as i64, 0);
    for k in 1..=n as i64 {
        let cur = direct_sum(n as i64, t as i64, k);
        if cur.is_zero() {
            return Ok(k as f64);
        }
        if cur.is_negative() != prev.is_negative() {
            let f = |x: f64| eval_real_all(n, t, x)[t];
            return Ok(bisect(f, (k - 1) as f64, k as f64));
        }
        prev = cur;
    }
    Err(KrawtchoukError::NoBracket { n, t })
}

/// Bisection to machine resolution on a bracket with a sign change.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Coefficients `c_k` with `P_i(x) P_j(x) = Σ_k c_k P_k(x)`,
/// `c_k = C(n-k, (i+j-k)/2) · C(k, (i-j+k)/2)`.
pub fn product_expansion(n: usize, i: usize, j: usize) -> Vec<BigInt> {
    let (n, i, j) = (n as i64, i as i64, j as i64);
    (0..=n)
        .map(|k| binomial_half(n - k, i + j - k) * binomial_half(k, i - j + k))
        .collect()
}

/// Expansion coefficients of `A(x) = 2^{n-d+1} Π_{r=d}^{n} (1 - x/r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaCoefficients {
    pub n: usize,
    pub d: usize,
    /// `α_i = C(n-i, d-1) / C(n, n-d+1)`.
    pub alpha: Vec<BigRational>,
}

impl AlphaCoefficients {
    /// `A(x)` evaluated from its product form.
    pub fn product_value(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::from_integer(pow2((self.n + 1 - self.d) as u32));
        for r in self.d.max(1)..=self.n {
            acc *= BigRational::one() - x / BigRational::from_integer(BigInt::from(r));
        }
        acc
    }

    /// `Σ_i α_i P_i(x)` at integer `x`.
    pub fn expansion_value(&self, x: i64) -> BigRational {
        self.alpha
            .iter()
            .enumerate()
            .map(|(i, a)| a * BigRational::from_integer(direct_sum(self.n as i64, i as i64, x)))
            .sum()
    }
}

pub fn alpha_coefficients(n: usize, d: usize) -> Result<AlphaCoefficients, KrawtchoukError> {
    if d == 0 || d > n + 1 {
        return Err(KrawtchoukError::IndexOutOfRange { n, i: d, x: 0 });
    }
    let (ni, di) = (n as i64, d as i64);
    let denom = binomial(ni, ni - di + 1);
    let alpha = (0..=ni)
        .map(|i| BigRational::new(binomial(ni - i, di - 1), denom.clone()))
        .collect();
    Ok(AlphaCoefficients { n, d, alpha })
}

/// Both sides of `Σ_i C(n-i, n-j) P_i(x) = 2^j C(n-x, j)` at integer `x`.
pub fn binomial_sum_identity(n: usize, j: usize, x: i64) -> Result<(BigInt, BigInt), KrawtchoukError> {
    check(n, j, x)?;
    let (ni, ji) = (n as i64, j as i64);
    let lhs = (0..=ni)
        .map(|i| binomial(ni - i, ni - ji) * direct_sum(ni, i, x))
        .sum();
    let rhs = pow2(j as u32) * binomial(ni - x, ji);
    Ok((lhs, rhs))
}

/// Both sides of the Christoffel–Darboux formula at integer points
/// `x != a`:
/// `P_{t+1}(x)P_t(a) - P_t(x)P_{t+1}(a) = 2(a-x)/(t+1) · C(n,t) · Σ_{i<=t} P_i(x)P_i(a)/C(n,i)`.
pub fn christoffel_darboux(
    n: usize,
    t: usize,
    x: i64,
    a: i64,
) -> Result<(BigRational, BigRational), KrawtchoukError> {
    if t + 1 > n {
        return Err(KrawtchoukError::IndexOutOfRange { n, i: t + 1, x });
    }
    check(n, t, x)?;
    check(n, t, a)?;
    let (ni, ti) = (n as i64, t as i64);
    let p = |i: i64, y: i64| direct_sum(ni, i, y);
    let lhs = BigRational::from_integer(p(ti + 1, x) * p(ti, a) - p(ti, x) * p(ti + 1, a));
    let kernel: BigRational = (0..=ti)
        .map(|i| BigRational::new(p(i, x) * p(i, a), binomial(ni, i)))
        .sum();
    let rhs = BigRational::new(BigInt::from(2 * (a - x)) * binomial(ni, ti), BigInt::from(t + 1)) * kernel;
    Ok((lhs, rhs))
}

/// Coefficients of `Y^i X^{n-i}` in `(X+Y)^{n-r} (X-Y)^r`, expanded
/// directly by polynomial multiplication.
pub fn generating_function_column(n: usize, r: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    let mul = |c: &[BigInt], sign: i64| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); c.len() + 1];
        for (k, v) in c.iter().enumerate() {
            out[k] += v;
            out[k + 1] += v * sign;
        }
        out
    };
    for _ in 0..n - r {
        coeffs = mul(&coeffs, 1);
    }
    for _ in 0..r {
        coeffs = mul(&coeffs, -1);
    }
    coeffs
}

/// Closed-form estimate of `P_t(x+1)/P_t(x)`:
/// `(n - 2t + sqrt((n-2t)² - 4x(n-x))) / (2(n-x))`.
pub fn ratio_estimate(n: usize, t: usize, x: usize) -> f64 {
    let (n, t, x) = (n as f64, t as f64, x as f64);
    let disc = ((n - 2.0 * t).powi(2) - 4.0 * x * (n - x)).max(0.0);
    (n - 2.0 * t + disc.sqrt()) / (2.0 * (n - x))
}

/// Exact values `P_i(j)` for `0 <= i, j <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrawtchoukTable {
    n: usize,
    values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn new(n: usize) -> Self {
        let ni = n as i64;
        let values = (0..=ni)
            .map(|i| (0..=ni).map(|j| direct_sum(ni, i, j)).collect())
            .collect();
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `P_i(j)`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.values[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    /// `Σ_i P_r(i) P_i(s)`; equals `2^n δ_{rs}`.
    pub fn orthogonality_sum(&self, r: usize, s: usize) -> BigInt {
        (0..=self.n)
            .map(|i| &self.values[r][i] * &self.values[i][s])
            .sum()
    }

    /// Whether `C(n,i) P_s(i) = C(n,s) P_i(s)` for all `i, s`.
    pub fn reciprocity_holds(&self) -> bool {
        let n = self.n as i64;
        (0..=self.n).all(|i| {
            (0..=self.n).all(|s| {
                binomial(n, i as i64) * &self.values[s][i] == binomial(n, s as i64) * &self.values[i][s]
            })
        })
    }

    /// Table as CSV, one row per `i`, columns `x = 0..n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i");
        for x in 0..=self.n {
            out.push_str(&format!(",x{x}"));
        }
        out.push('\n');
        for (i, row) in self.values.iter().enumerate() {
            out.push_str(&i.to_string());
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// `C(n,t)` as a float, for tolerance scaling.
pub fn binomial_scale(n: usize, t: usize) -> f64 {
    binomial_f64(n as i64, t as i64)
}

/// `P_i(x)` at an integer point as a float.
pub fn eval_integer_f64(n: usize, i: usize, x: i64) -> f64 {
    direct_sum(n as i64, i as i64, x).to_f64().unwrap_or(f64::NAN)
}
