//! Weight, double weight and complete weight enumerators of quantum codes.
//!
//! For a code with projector `P` of rank `K` the primal distributions are
//! `(1/K²) Σ Tr²(eP)` and the dual ones `(1/K) Σ Tr(ePeP)`, summed over the
//! error classes `E[i]`, `E[i,j]` (by `(w_X, w_Z)`) and `E[i,j,k]` (by
//! `(N_x, N_y, N_z)`). For stabilizer codes they reduce to codeword counts of
//! the additive code and its symplectic dual.
//!
//! Polynomial conventions:
//! - `B(X,Y) = Σ B_i X^{n-i} Y^i`
//! - `C(X,Y,Z,W) = Σ C_{i,j} X^{n-i} Y^i Z^{n-j} W^j`
//! - `D(X,Y,Z,W) = Σ D_{i,j,k} X^i Y^j Z^k W^{n-i-j-k}`

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf4::{AdditiveCode, CodeError};
use crate::krawtchouk::KrawtchoukTable;
use crate::pauli::{self, PauliError, PauliOperator, Projector};
use crate::poly::{rat, ratio, Monomial, Polynomial};

/// Default ceiling on `n` for the projector (brute-force) path.
pub const DEFAULT_PROJECTOR_MAX_N: usize = 6;

const ROUNDING_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("n = {n} exceeds the brute-force limit {limit}")]
    BudgetExceeded { n: usize, limit: usize },
    #[error("accumulated trace sum {value} is {residue:e} away from an integer")]
    RoundingResidue { value: f64, residue: f64 },
    #[error("negative coefficient {coeff} on monomial {monomial:?}")]
    NegativeCoefficient { monomial: Monomial, coeff: BigRational },
    #[error("tables have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("{g} independent generators on {n} qubits leave no code space (K = 2^(n-g) < 1)")]
    NoCodeSpace { n: usize, g: usize },
    #[error("invalid enumerator table: {0}")]
    InvalidTable(String),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// The distributions `B`, `C`, `D` of one side (primal or dual) of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTables {
    pub n: usize,
    pub k: u64,
    pub dual: bool,
    /// `B_i`, `i = 0..=n`.
    pub b: Vec<BigRational>,
    /// `C_{i,j}`, indexed `[w_X][w_Z]`.
    pub c: Vec<Vec<BigRational>>,
    /// Nonzero `D_{i,j,k}` keyed by `(N_x, N_y, N_z)`.
    pub d: BTreeMap<(usize, usize, usize), BigRational>,
}

impl DistributionTables {
    pub fn empty(n: usize, k: u64, dual: bool) -> Self {
        Self {
            n,
            k,
            dual,
            b: vec![BigRational::zero(); n + 1],
            c: vec![vec![BigRational::zero(); n + 1]; n + 1],
            d: BTreeMap::new(),
        }
    }

    pub fn d_value(&self, i: usize, j: usize, k: usize) -> BigRational {
        self.d.get(&(i, j, k)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn b_polynomial(&self) -> Polynomial {
        let n = self.n as u32;
        let mut p = Polynomial::zero(2);
        for (i, v) in self.b.iter().enumerate() {
            p.add_term(vec![n - i as u32, i as u32], v.clone());
        }
        p
    }

    pub fn c_polynomial(&self) -> Polynomial {
        c_table_to_polynomial(self.n, &self.c)
    }

    pub fn d_polynomial(&self) -> Polynomial {
        let n = self.n as u32;
        let mut p = Polynomial::zero(4);
        for (&(i, j, k), v) in &self.d {
            let (i, j, k) = (i as u32, j as u32, k as u32);
            p.add_term(vec![i, j, k, n - i - j - k], v.clone());
        }
        p
    }

    /// `B_m = Σ_{i+j+k=m} D_{i,j,k}`.
    pub fn b_from_d(&self) -> Vec<BigRational> {
        let mut b = vec![BigRational::zero(); self.n + 1];
        for (&(i, j, k), v) in &self.d {
            b[i + j + k] += v;
        }
        b
    }

    /// `C_{i,j} = Σ D_{N_x,N_y,N_z}` over `N_x + N_y = i`, `N_y + N_z = j`.
    pub fn c_from_d(&self) -> Vec<Vec<BigRational>> {
        let mut c = vec![vec![BigRational::zero(); self.n + 1]; self.n + 1];
        for (&(x, y, z), v) in &self.d {
            c[x + y][y + z] += v;
        }
        c
    }

    pub fn to_json_value(&self) -> TablesJson {
        TablesJson {
            n: self.n,
            k: self.k,
            b: self.b.iter().map(rational_to_string).collect(),
            c: self
                .c
                .iter()
                .map(|row| row.iter().map(rational_to_string).collect())
                .collect(),
            d: self
                .d
                .iter()
                .map(|(&(i, j, k), v)| DCell {
                    i,
                    j,
                    k,
                    v: rational_to_string(v),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(value: &TablesJson, dual: bool) -> Result<Self, EnumError> {
        let n = value.n;
        let bad = |m: &str| EnumError::InvalidTable(m.to_string());
        if value.b.len() != n + 1 || value.c.len() != n + 1 || value.c.iter().any(|r| r.len() != n + 1) {
            return Err(bad("table shape does not match n"));
        }
        let parse = |s: &String| parse_rational(s).ok_or_else(|| bad(&format!("bad rational {s:?}")));
        let b = value.b.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        let c = value
            .c
            .iter()
            .map(|row| row.iter().map(parse).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut d = BTreeMap::new();
        for cell in &value.d {
            if cell.i + cell.j + cell.k > n {
                return Err(bad("D cell outside the simplex"));
            }
            let v = parse(&cell.v)?;
            if !v.is_zero() {
                d.insert((cell.i, cell.j, cell.k), v);
            }
        }
        Ok(Self {
            n,
            k: value.k,
            dual,
            b,
            c,
            d,
        })
    }

    pub fn from_json(text: &str, dual: bool) -> Result<Self, EnumError> {
        let value: TablesJson =
            serde_json::from_str(text).map_err(|e| EnumError::InvalidTable(e.to_string()))?;
        Self::from_json_value(&value, dual)
    }
}

/// JSON schema `{"n", "K", "B", "C", "D"}` with rationals as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesJson {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: u64,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<String>>,
    #[serde(rename = "D")]
    pub d: Vec<DCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DCell {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub v: String,
}

pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn c_table_to_polynomial(n: usize, c: &[Vec<BigRational>]) -> Polynomial {
    let n32 = n as u32;
    let mut p = Polynomial::zero(4);
    for (i, row) in c.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let (i, j) = (i as u32, j as u32);
            p.add_term(vec![n32 - i, i, n32 - j, j], v.clone());
        }
    }
    p
}

/// Reads `B_i` back from an `n`-homogeneous `B(X,Y)`.
pub fn b_coefficients(poly: &Polynomial, n: usize) -> Vec<BigRational> {
    (0..=n)
        .map(|i| poly.coefficient(&[(n - i) as u32, i as u32]))
        .collect()
}

/// Reads `C_{i,j}` back from `C(X,Y,Z,W)`.
pub fn c_coefficients(poly: &Polynomial, n: usize) -> Vec<Vec<BigRational>> {
    (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| poly.coefficient(&[(n - i) as u32, i as u32, (n - j) as u32, j as u32]))
                .collect()
        })
        .collect()
}

fn snap(value: f64) -> Result<BigInt, EnumError> {
    let rounded = value.round();
    let residue = (value - rounded).abs();
    if residue >= ROUNDING_TOL {
        return Err(EnumError::RoundingResidue { value, residue });
    }
    Ok(BigInt::from(rounded as i64))
}

/// Primal and dual tables from a projector, by brute force over all `4^n`
/// canonical errors. Guarded by [`DEFAULT_PROJECTOR_MAX_N`].
pub fn enumerate_from_projector(
    p: &Projector,
) -> Result<(DistributionTables, DistributionTables), EnumError> {
    enumerate_from_projector_with_limit(p, DEFAULT_PROJECTOR_MAX_N)
}

pub fn enumerate_from_projector_with_limit(
    p: &Projector,
    max_n: usize,
) -> Result<(DistributionTables, DistributionTables), EnumError> {
    let n = p.num_qubits();
    if n > max_n || n > pauli::MAX_ERROR_STREAM_N {
        return Err(EnumError::BudgetExceeded {
            n,
            limit: max_n.min(pauli::MAX_ERROR_STREAM_N),
        });
    }
    let k = p.dimension() as u64;
    let side = 1u64 << n;
    let mask = side - 1;
    let per_error: Vec<(PauliOperator, f64, f64)> = (0..side * side)
        .into_par_iter()
        .map(|idx| {
            let e = PauliOperator::canonical(n, idx >> n, idx & mask);
            pauli::traces(&e, p).map(|(t1, t2)| (e, t1 * t1, t2))
        })
        .collect::<Result<_, _>>()?;

    // raw sums, accumulated separately per table
    let mut b_raw = vec![[0.0f64; 2]; n + 1];
    let mut c_raw = vec![vec![[0.0f64; 2]; n + 1]; n + 1];
    let mut d_raw: BTreeMap<(usize, usize, usize), [f64; 2]> = BTreeMap::new();
    for (e, sq, ee) in &per_error {
        for (slot, v) in [(0, *sq), (1, *ee)] {
            b_raw[e.w_q()][slot] += v;
            c_raw[e.w_x()][e.w_z()][slot] += v;
            d_raw.entry(e.counts()).or_insert([0.0; 2])[slot] += v;
        }
    }

    let k_sq = BigRational::from_integer(BigInt::from(k * k));
    let k_r = BigRational::from_integer(BigInt::from(k));
    let scale = |slot: usize| if slot == 0 { &k_sq } else { &k_r };
    let mut sides = [
        DistributionTables::empty(n, k, false),
        DistributionTables::empty(n, k, true),
    ];
    for (slot, t) in sides.iter_mut().enumerate() {
        let conv = |v: f64| -> Result<BigRational, EnumError> {
            Ok(BigRational::from_integer(snap(v)?) / scale(slot))
        };
        for i in 0..=n {
            t.b[i] = conv(b_raw[i][slot])?;
            for j in 0..=n {
                t.c[i][j] = conv(c_raw[i][j][slot])?;
            }
        }
        for (&cell, raw) in &d_raw {
            let v = conv(raw[slot])?;
            if !v.is_zero() {
                t.d.insert(cell, v);
            }
        }
    }
    let [primal, dual] = sides;
    Ok((primal, dual))
}

/// Result of the counting path.
#[derive(Debug, Clone)]
pub struct CodeEnumeration {
    pub primal: DistributionTables,
    pub dual: DistributionTables,
    /// `false` when the code is not symplectic self-orthogonal; the tables
    /// are then plain codeword counts, not a quantum code's enumerators.
    pub self_orthogonal: bool,
}

fn count_tables(code: &AdditiveCode, k: u64, dual: bool) -> Result<DistributionTables, EnumError> {
    let mut t = DistributionTables::empty(code.len(), k, dual);
    let one = BigRational::one();
    for w in code.codewords()? {
        t.b[w.hamming_weight()] += &one;
        let (sa, sb) = w.ab_weights();
        t.c[sa][sb] += &one;
        let cell = w.composition().pauli_counts();
        *t.d.entry(cell).or_insert_with(BigRational::zero) += &one;
    }
    Ok(t)
}

/// Exact counting: primal tables over `code`, dual tables over its
/// symplectic dual, with `K = 2^{n-g}`.
pub fn enumerate_from_additive_code(code: &AdditiveCode) -> Result<CodeEnumeration, EnumError> {
    let n = code.len();
    let g = code.dimension();
    if g > n {
        return Err(EnumError::NoCodeSpace { n, g });
    }
    let k = 1u64 << (n - g);
    let dual_code = code.symplectic_dual();
    Ok(CodeEnumeration {
        primal: count_tables(code, k, false)?,
        dual: count_tables(&dual_code, k, true)?,
        self_orthogonal: code.is_self_orthogonal(),
    })
}

fn vars4() -> [Polynomial; 4] {
    [0, 1, 2, 3].map(|i| Polynomial::var(4, i))
}

/// `B(X,Y) = D(Y,Y,Y,X)`.
pub fn specialize_d_to_b(d: &Polynomial) -> Polynomial {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    d.substitute(&[y.clone(), y.clone(), y, x])
}

/// `C(X,Y,Z,W) = D(YZ, YW, XW, XZ)`.
pub fn specialize_d_to_c(d: &Polynomial) -> Polynomial {
    let [x, y, z, w] = vars4();
    d.substitute(&[&y * &z, &y * &w, &x * &w, &x * &z])
}

fn reject_negative(p: Polynomial) -> Result<Polynomial, EnumError> {
    match p.negative_terms().into_iter().next() {
        Some((monomial, coeff)) => Err(EnumError::NegativeCoefficient { monomial, coeff }),
        None => Ok(p),
    }
}

fn inv_k(k: u64) -> BigRational {
    ratio(1, k as i64)
}

fn b_transform(p: &Polynomial) -> Polynomial {
    let a = Polynomial::linear(&[ratio(1, 2), ratio(3, 2)]);
    let b = Polynomial::linear(&[ratio(1, 2), ratio(-1, 2)]);
    p.substitute(&[a, b])
}

fn c_transform(p: &Polynomial) -> Polynomial {
    let h = ratio(1, 2);
    let zw_plus = Polynomial::linear(&[rat(0), rat(0), rat(1), rat(1)]);
    let zw_minus = Polynomial::linear(&[rat(0), rat(0), rat(1), rat(-1)]);
    let xy_plus = Polynomial::linear(&[h.clone(), h.clone(), rat(0), rat(0)]);
    let xy_minus = Polynomial::linear(&[h.clone(), -h, rat(0), rat(0)]);
    p.substitute(&[zw_plus, zw_minus, xy_plus, xy_minus])
}

fn d_transform(p: &Polynomial) -> Polynomial {
    let h = |s: [i64; 4]| Polynomial::linear(&s.map(|v| ratio(v, 2)));
    p.substitute(&[
        h([1, -1, -1, 1]),
        h([-1, 1, -1, 1]),
        h([-1, -1, 1, 1]),
        h([1, 1, 1, 1]),
    ])
}

/// `B(X,Y) = (1/K) B⊥((X+3Y)/2, (X-Y)/2)`.
pub fn macwilliams_b(b_dual: &Polynomial, k: u64) -> Result<Polynomial, EnumError> {
    reject_negative(b_transform(b_dual).scale(&inv_k(k)))
}

/// `B⊥(X,Y) = K · B((X+3Y)/2, (X-Y)/2)`.
pub fn macwilliams_b_inverse(b: &Polynomial, k: u64) -> Result<Polynomial, EnumError> {
    reject_negative(b_transform(b).scale(&rat(k as i64)))
}

/// `C(X,Y,Z,W) = (1/K) C⊥(Z+W, Z-W, (X+Y)/2, (X-Y)/2)`.
pub fn macwilliams_c(c_dual: &Polynomial, k: u64) -> Result<Polynomial, EnumError> {
    reject_negative(c_transform(c_dual).scale(&inv_k(k)))
}

/// `C⊥(X,Y,Z,W) = K · C(Z+W, Z-W, (X+Y)/2, (X-Y)/2)`.
pub fn macwilliams_c_inverse(c: &Polynomial, k: u64) -> Result<Polynomial, EnumError> {
    reject_negative(c_transform(c).scale(&rat(k as i64)))
}

/// `D(X,Y,Z,W) = (1/K) D⊥((X-Y-Z+W)/2, (-X+Y-Z+W)/2, (-X-Y+Z+W)/2, (X+Y+Z+W)/2)`.
pub fn macwilliams_d(d_dual: &Polynomial, k: u64) -> Result<Polynomial, EnumError> {
    reject_negative(d_transform(d_dual).scale(&inv_k(k)))
}

/// `D⊥ = K · D(…)` with the same (involutive) substitution.
pub fn macwilliams_d_inverse(d: &Polynomial, k: u64) -> Result<Polynomial, EnumError> {
    reject_negative(d_transform(d).scale(&rat(k as i64)))
}

fn check_square(table: &[Vec<BigRational>], n: usize) -> Result<(), EnumError> {
    if table.len() != n + 1 || table.iter().any(|r| r.len() != n + 1) {
        return Err(EnumError::LengthMismatch(table.len(), n + 1));
    }
    Ok(())
}

/// `C_{i,j} = (1/(2^n K)) Σ_{r,s} P_i(s) P_j(r) C⊥_{r,s}`.
pub fn krawtchouk_transform_c(
    c_dual: &[Vec<BigRational>],
    k: u64,
    table: &KrawtchoukTable,
) -> Result<Vec<Vec<BigRational>>, EnumError> {
    let n = table.n();
    check_square(c_dual, n)?;
    let p = |i: usize, x: usize| BigRational::from_integer(table.get(i, x).clone());
    let norm = BigRational::new(BigInt::one(), BigInt::from(k) << n);
    Ok((0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    let mut acc = BigRational::zero();
                    for (r, row) in c_dual.iter().enumerate() {
                        for (s, v) in row.iter().enumerate() {
                            if !v.is_zero() {
                                acc += p(i, s) * p(j, r) * v;
                            }
                        }
                    }
                    acc * &norm
                })
                .collect()
        })
        .collect())
}

/// `C⊥_{r,s} = (K/2^n) Σ_{i,j} P_r(j) P_s(i) C_{i,j}`.
pub fn inverse_krawtchouk_transform_c(
    c: &[Vec<BigRational>],
    k: u64,
    table: &KrawtchoukTable,
) -> Result<Vec<Vec<BigRational>>, EnumError> {
    let n = table.n();
    check_square(c, n)?;
    let p = |i: usize, x: usize| BigRational::from_integer(table.get(i, x).clone());
    let norm = BigRational::new(BigInt::from(k), BigInt::one() << n);
    Ok((0..=n)
        .map(|r| {
            (0..=n)
                .map(|s| {
                    let mut acc = BigRational::zero();
                    for (i, row) in c.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            if !v.is_zero() {
                                acc += p(r, j) * p(s, i) * v;
                            }
                        }
                    }
                    acc * &norm
                })
                .collect()
        })
        .collect())
}

/// Distances readable from a primal/dual pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distances {
    /// Largest `t` with `B_i = B⊥_i` for all `i < t` (`n + 1` if all agree).
    pub symmetric_d: usize,
    /// Pareto-maximal `(t_x, t_z)`, `t_x, t_z >= 1`, such that
    /// `C_{i,j} = C⊥_{i,j}` for all `i < t_x`, `j < t_z`; ascending in `t_x`.
    pub asymmetric_frontier: Vec<(usize, usize)>,
}

pub fn extract_distances(
    primal: &DistributionTables,
    dual: &DistributionTables,
) -> Result<Distances, EnumError> {
    let n = primal.n;
    if dual.n != n {
        return Err(EnumError::LengthMismatch(n, dual.n));
    }
    let symmetric_d = (0..=n)
        .find(|&i| primal.b[i] != dual.b[i])
        .unwrap_or(n + 1);

    // For each t_x, the largest admissible t_z is the smallest mismatch
    // column among rows i < t_x.
    let mut frontier: Vec<(usize, usize)> = Vec::new();
    let mut best_tz = n + 1;
    let mut candidates = Vec::new();
    for tx in 1..=n + 1 {
        let row = tx - 1;
        if let Some(j) = (0..=n).find(|&j| primal.c[row][j] != dual.c[row][j]) {
            best_tz = best_tz.min(j);
        }
        if best_tz == 0 {
            break;
        }
        candidates.push((tx, best_tz));
    }
    for (idx, &(tx, tz)) in candidates.iter().enumerate() {
        let dominated = candidates.get(idx + 1).is_some_and(|&(_, next)| next == tz);
        if !dominated {
            frontier.push((tx, tz));
        }
    }
    Ok(Distances {
        symmetric_d,
        asymmetric_frontier: frontier,
    })
}

/// One named identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Runs every exact identity relating a primal/dual pair: the four
/// specializations of `D`, the three MacWilliams transforms in both
/// directions, the Krawtchouk coefficient transforms, marginal
/// consistency, and the `C⊥ >= C >= 0`, `C_{0,0} = C⊥_{0,0} = 1` conditions.
pub fn verify_identities(primal: &DistributionTables, dual: &DistributionTables) -> Vec<IdentityCheck> {
    let n = primal.n;
    let k = primal.k;
    let (b, bd) = (primal.b_polynomial(), dual.b_polynomial());
    let (c, cd) = (primal.c_polynomial(), dual.c_polynomial());
    let (d, dd) = (primal.d_polynomial(), dual.d_polynomial());
    let table = KrawtchoukTable::new(n);
    let eq = |r: Result<Polynomial, EnumError>, want: &Polynomial| r.is_ok_and(|p| &p == want);
    let dominance = primal.c.iter().zip(&dual.c).all(|(r1, r2)| {
        r1.iter()
            .zip(r2)
            .all(|(x, y)| !x.is_negative() && x <= y)
    });
    vec![
        IdentityCheck { name: "B = D(Y,Y,Y,X)", holds: specialize_d_to_b(&d) == b },
        IdentityCheck { name: "B⊥ = D⊥(Y,Y,Y,X)", holds: specialize_d_to_b(&dd) == bd },
        IdentityCheck { name: "C = D(YZ,YW,XW,XZ)", holds: specialize_d_to_c(&d) == c },
        IdentityCheck { name: "C⊥ = D⊥(YZ,YW,XW,XZ)", holds: specialize_d_to_c(&dd) == cd },
        IdentityCheck { name: "MacWilliams B from B⊥", holds: eq(macwilliams_b(&bd, k), &b) },
        IdentityCheck { name: "MacWilliams B⊥ from B", holds: eq(macwilliams_b_inverse(&b, k), &bd) },
        IdentityCheck { name: "MacWilliams C from C⊥", holds: eq(macwilliams_c(&cd, k), &c) },
        IdentityCheck { name: "MacWilliams C⊥ from C", holds: eq(macwilliams_c_inverse(&c, k), &cd) },
        IdentityCheck { name: "MacWilliams D from D⊥", holds: eq(macwilliams_d(&dd, k), &d) },
        IdentityCheck { name: "MacWilliams D⊥ from D", holds: eq(macwilliams_d_inverse(&d, k), &dd) },
        IdentityCheck {
            name: "Krawtchouk C from C⊥",
            holds: krawtchouk_transform_c(&dual.c, k, &table).is_ok_and(|t| t == primal.c),
        },
        IdentityCheck {
            name: "Krawtchouk C⊥ from C",
            holds: inverse_krawtchouk_transform_c(&primal.c, k, &table).is_ok_and(|t| t == dual.c),
        },
        IdentityCheck {
            name: "marginals of D",
            holds: primal.b_from_d() == primal.b
                && dual.b_from_d() == dual.b
                && primal.c_from_d() == primal.c
                && dual.c_from_d() == dual.c,
        },
        IdentityCheck {
            name: "C⊥ >= C >= 0 and C_00 = C⊥_00 = 1",
            holds: dominance && primal.c[0][0].is_one() && dual.c[0][0].is_one(),
        },
    ]
}

/// Float view of a rational, for reporting.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::projector_from_code;

    const H2: &str = "n=5 format=f4\n1 0 1 w2 w2\n0 1 w2 w2 1\n";

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn full_space_projector() {
        let p = Projector::full_space(2);
        let (primal, dual) = enumerate_from_projector(&p).unwrap();
        assert_eq!(primal.b, ints(&[1, 0, 0]));
        assert_eq!(dual.b, ints(&[1, 6, 9]));
        assert_eq!(primal.k, 4);
    }

    #[test]
    fn zero_code_counts() {
        let e = enumerate_from_additive_code(&AdditiveCode::trivial(3)).unwrap();
        assert_eq!(e.primal.b, ints(&[1, 0, 0, 0]));
        assert_eq!(e.dual.b, ints(&[1, 9, 27, 27]));
        assert_eq!(e.primal.k, 8);
        assert!(e.self_orthogonal);
    }

    #[test]
    fn five_qubit_b_tables() {
        let e = enumerate_from_additive_code(&AdditiveCode::parse(H2).unwrap()).unwrap();
        assert_eq!(e.primal.b, ints(&[1, 0, 0, 0, 15, 0]));
        assert_eq!(e.dual.b, ints(&[1, 0, 0, 30, 15, 18]));
        assert_eq!(e.primal.k, 2);
    }

    #[test]
    fn projector_path_agrees_on_five_qubit_code() {
        let code = AdditiveCode::parse(H2).unwrap();
        let counted = enumerate_from_additive_code(&code).unwrap();
        let (primal, dual) = enumerate_from_projector(&projector_from_code(&code).unwrap()).unwrap();
        assert_eq!(primal, counted.primal);
        assert_eq!(dual, counted.dual);
    }

    #[test]
    fn projector_budget() {
        let p = Projector::full_space(7);
        assert!(matches!(
            enumerate_from_projector(&p),
            Err(EnumError::BudgetExceeded { n: 7, limit: 6 })
        ));
    }

    #[test]
    fn specializations_of_trivial_d() {
        let n = 4u32;
        let d = Polynomial::monomial(vec![0, 0, 0, n], rat(1));
        assert_eq!(specialize_d_to_b(&d), Polynomial::monomial(vec![n, 0], rat(1)));
        assert_eq!(specialize_d_to_c(&d), Polynomial::monomial(vec![n, 0, n, 0], rat(1)));
    }

    #[test]
    fn macwilliams_single_qubit_full_space() {
        let bd = Polynomial::parse("X + 3Y", &['X', 'Y']).unwrap();
        let b = macwilliams_b(&bd, 2).unwrap();
        assert_eq!(b, Polynomial::parse("X", &['X', 'Y']).unwrap());
    }

    #[test]
    fn macwilliams_flags_negative_output() {
        let bogus = Polynomial::parse("Y", &['X', 'Y']).unwrap();
        assert!(matches!(
            macwilliams_b(&bogus, 1),
            Err(EnumError::NegativeCoefficient { .. })
        ));
    }

    #[test]
    fn krawtchouk_transform_of_full_space() {
        let e = enumerate_from_additive_code(&AdditiveCode::trivial(3)).unwrap();
        let t = KrawtchoukTable::new(3);
        let c = krawtchouk_transform_c(&e.dual.c, e.primal.k, &t).unwrap();
        let mut want = vec![vec![rat(0); 4]; 4];
        want[0][0] = rat(1);
        assert_eq!(c, want);
    }

    #[test]
    fn distances_of_five_qubit_code() {
        let e = enumerate_from_additive_code(&AdditiveCode::parse(H2).unwrap()).unwrap();
        let d = extract_distances(&e.primal, &e.dual).unwrap();
        assert_eq!(d.symmetric_d, 3);
        // mismatch set of the two double weight tables, computed by brute force
        let n = 5;
        let mismatches: Vec<(usize, usize)> = (0..=n)
            .flat_map(|i| (0..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| e.primal.c[i][j] != e.dual.c[i][j])
            .collect();
        assert!(mismatches.contains(&(1, 2)));
        assert_eq!(e.dual.c[1][2], rat(5));
        let ok = |tx: usize, tz: usize| mismatches.iter().all(|&(i, j)| !(i < tx && j < tz));
        let mut brute = Vec::new();
        for tx in 1..=n + 1 {
            for tz in 1..=n + 1 {
                if ok(tx, tz) && !ok(tx + 1, tz) && !ok(tx, tz + 1)
                    || ok(tx, tz) && (tx == n + 1 || !ok(tx + 1, tz)) && (tz == n + 1 || !ok(tx, tz + 1))
                {
                    brute.push((tx, tz));
                }
            }
        }
        brute.sort();
        brute.dedup();
        assert_eq!(d.asymmetric_frontier, brute);
        assert_eq!(d.asymmetric_frontier, vec![(1, 5), (2, 2), (5, 1)]);
    }

    #[test]
    fn identical_tables_give_degenerate_frontier() {
        let e = enumerate_from_additive_code(&AdditiveCode::parse(H2).unwrap()).unwrap();
        let d = extract_distances(&e.dual, &e.dual).unwrap();
        assert_eq!(d.symmetric_d, 6);
        assert_eq!(d.asymmetric_frontier, vec![(6, 6)]);
    }

    #[test]
    fn json_round_trip() {
        let e = enumerate_from_additive_code(&AdditiveCode::parse(H2).unwrap()).unwrap();
        let text = e.dual.to_json();
        assert!(text.starts_with("{\"n\":5,\"K\":2,\"B\":[\"1/1\""));
        let back = DistributionTables::from_json(&text, true).unwrap();
        assert_eq!(back, e.dual);
        assert!(DistributionTables::from_json("{\"n\":1}", false).is_err());
        assert_eq!(parse_rational("3"), Some(rat(3)));
        assert_eq!(parse_rational("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn all_identities_hold_on_five_qubit_code() {
        let e = enumerate_from_additive_code(&AdditiveCode::parse(H2).unwrap()).unwrap();
        for check in verify_identities(&e.primal, &e.dual) {
            assert!(check.holds, "{}", check.name);
        }
    }

    #[test]
    fn identities_hold_on_asymmetric_codes() {
        for text in [
            "n=3 format=ab\n000|110\n",
            "n=4 format=ab\n0000|1111\n1100|0000\n",
            "n=4 format=ab\n0000|1100\n0000|0110\n1111|0000\n",
        ] {
            let code = AdditiveCode::parse(text).unwrap();
            let e = enumerate_from_additive_code(&code).unwrap();
            assert!(e.self_orthogonal);
            assert_ne!(e.primal.c, transpose(&e.primal.c));
            for check in verify_identities(&e.primal, &e.dual) {
                assert!(check.holds, "{text}: {}", check.name);
            }
            let (p, d) = enumerate_from_projector(&projector_from_code(&code).unwrap()).unwrap();
            assert_eq!(p, e.primal);
            assert_eq!(d, e.dual);
        }
    }

    fn transpose(t: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
        (0..t.len()).map(|j| t.iter().map(|r| r[j].clone()).collect()).collect()
    }
}
