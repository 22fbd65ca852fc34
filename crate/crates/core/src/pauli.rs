//! n-qubit Pauli errors, stabilizer projectors and the trace primitives
//! `Tr(eP)` and `Tr(ePeP)`.
//!
//! Basis states are indexed little-endian: `|j⟩ = |j_0⟩ ⊗ … ⊗ |j_{n-1}⟩`
//! with `j = Σ j_s 2^s`. Operators are never materialized as dense
//! `2^n × 2^n` matrices; everything goes through [`PauliOperator::apply_to_basis`].

use num_complex::Complex64;
use thiserror::Error;

use crate::gf4::{AdditiveCode, Gf4Vector};

/// Largest `n` for which all `4^n` errors may be streamed.
pub const MAX_ERROR_STREAM_N: usize = 10;

/// Largest `n` for which state vectors are built.
pub const MAX_STATE_N: usize = 20;

const ORTHO_TOL: f64 = 1e-10;
const REAL_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PauliError {
    #[error("n = {n} exceeds the budget of {limit}")]
    BudgetExceeded { n: usize, limit: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("operator of length {found} used on {expected} qubits")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("stabilizer generators are dependent")]
    DependentGenerators,
    #[error("generator {0} is not Hermitian")]
    NotHermitian(usize),
    #[error("joint +1 eigenspace has dimension {found}, expected {expected}")]
    EmptyEigenspace { expected: usize, found: usize },
    #[error("Tr(eP) has imaginary part {0:e}")]
    NonRealTrace(f64),
}

fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The operator `i^phase · X(a) Z(b)` on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    a: u64,
    b: u64,
    phase: u8,
}

impl PauliOperator {
    /// The canonical error `i^{a·b} X(a) Z(b)`, Hermitian and involutive.
    pub fn canonical(n: usize, a: u64, b: u64) -> Self {
        assert!(n <= 64);
        let m = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let (a, b) = (a & m, b & m);
        Self {
            n,
            a,
            b,
            phase: ((a & b).count_ones() % 4) as u8,
        }
    }

    pub fn with_phase(n: usize, a: u64, b: u64, phase: u8) -> Self {
        Self {
            phase: phase % 4,
            ..Self::canonical(n, a, b)
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::canonical(n, 0, 0)
    }

    pub fn from_gf4(v: &Gf4Vector) -> Self {
        Self::canonical(v.len(), v.a_mask(), v.b_mask())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_part(&self) -> u64 {
        self.a
    }

    pub fn z_part(&self) -> u64 {
        self.b
    }

    pub fn phase_exponent(&self) -> u8 {
        self.phase
    }

    pub fn n_x(&self) -> usize {
        (self.a & !self.b).count_ones() as usize
    }

    pub fn n_y(&self) -> usize {
        (self.a & self.b).count_ones() as usize
    }

    pub fn n_z(&self) -> usize {
        (!self.a & self.b).count_ones() as usize
    }

    /// `w_X = N_x + N_y`, the weight of the bit-flip part.
    pub fn w_x(&self) -> usize {
        self.a.count_ones() as usize
    }

    /// `w_Z = N_y + N_z`, the weight of the phase-flip part.
    pub fn w_z(&self) -> usize {
        self.b.count_ones() as usize
    }

    /// Number of non-identity tensor factors.
    pub fn w_q(&self) -> usize {
        (self.a | self.b).count_ones() as usize
    }

    /// `(N_x, N_y, N_z)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.n_x(), self.n_y(), self.n_z())
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as u32) % 2 == (self.a & self.b).count_ones() % 2
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.a & other.b).count_ones() + (other.a & self.b).count_ones()) % 2 == 0
    }

    /// `e|j⟩ = phase · |j'⟩` with `j' = j ⊕ a` and
    /// `phase = i^{phase_exponent} (-1)^{b·j}`.
    pub fn apply_to_basis(&self, j: usize) -> Result<(Complex64, usize), PauliError> {
        let dim = 1usize << self.n;
        if j >= dim {
            return Err(PauliError::IndexOutOfRange { index: j, dim });
        }
        Ok(self.apply_unchecked(j))
    }

    #[inline]
    fn apply_unchecked(&self, j: usize) -> (Complex64, usize) {
        let sign = ((self.b & j as u64).count_ones() % 2) as u8 * 2;
        (i_pow(self.phase + sign), j ^ self.a as usize)
    }

    /// `e|v⟩` for a dense state vector.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (j, &amp) in v.iter().enumerate() {
            let (ph, k) = self.apply_unchecked(j);
            out[k] += ph * amp;
        }
        out
    }
}

/// Streams all `4^n` canonical errors, enumerating `a` in the outer loop.
pub fn all_errors(n: usize) -> Result<impl Iterator<Item = PauliOperator>, PauliError> {
    if n > MAX_ERROR_STREAM_N {
        return Err(PauliError::BudgetExceeded {
            n,
            limit: MAX_ERROR_STREAM_N,
        });
    }
    Ok(all_errors_unchecked(n))
}

/// Like [`all_errors`] without the budget guard; callers enforce their own.
pub fn all_errors_unchecked(n: usize) -> impl Iterator<Item = PauliOperator> {
    let size = 1u64 << n;
    (0..size).flat_map(move |a| (0..size).map(move |b| PauliOperator::canonical(n, a, b)))
}

/// Orthonormal basis of a `K`-dimensional subspace of `C^{2^n}`.
#[derive(Debug, Clone)]
pub struct Projector {
    n: usize,
    basis: Vec<Vec<Complex64>>,
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
}

impl Projector {
    /// Validates orthonormality of the given basis.
    pub fn from_basis(n: usize, basis: Vec<Vec<Complex64>>) -> Result<Self, PauliError> {
        let dim = 1usize << n;
        for v in &basis {
            if v.len() != dim {
                return Err(PauliError::LengthMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        for (k, u) in basis.iter().enumerate() {
            for (l, v) in basis.iter().enumerate() {
                let expect = if k == l { 1.0 } else { 0.0 };
                if (inner(u, v) - expect).norm() > ORTHO_TOL {
                    return Err(PauliError::EmptyEigenspace {
                        expected: basis.len(),
                        found: k.min(l),
                    });
                }
            }
        }
        Ok(Self { n, basis })
    }

    /// Projector onto all of `C^{2^n}` (computational basis).
    pub fn full_space(n: usize) -> Self {
        let dim = 1usize << n;
        let basis = (0..dim)
            .map(|j| {
                let mut v = vec![Complex64::new(0.0, 0.0); dim];
                v[j] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        Self { n, basis }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Code dimension `K`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Complex64>] {
        &self.basis
    }

    /// `M_{kl} = ⟨ψ_k|e|ψ_l⟩`, row-major `K × K`.
    pub fn overlaps(&self, e: &PauliOperator) -> Vec<Complex64> {
        let k = self.basis.len();
        let mut m = vec![Complex64::new(0.0, 0.0); k * k];
        for (l, psi_l) in self.basis.iter().enumerate() {
            let e_psi = e.apply(psi_l);
            for (r, psi_k) in self.basis.iter().enumerate() {
                m[r * k + l] = inner(psi_k, &e_psi);
            }
        }
        m
    }
}

/// Joint +1 eigenspace of commuting, independent, Hermitian Pauli generators.
pub fn projector_from_stabilizers(
    n: usize,
    generators: &[PauliOperator],
) -> Result<Projector, PauliError> {
    if n > MAX_STATE_N {
        return Err(PauliError::BudgetExceeded {
            n,
            limit: MAX_STATE_N,
        });
    }
    for (i, g) in generators.iter().enumerate() {
        if g.num_qubits() != n {
            return Err(PauliError::LengthMismatch {
                expected: n,
                found: g.num_qubits(),
            });
        }
        if !g.is_hermitian() {
            return Err(PauliError::NotHermitian(i));
        }
    }
    for (i, g) in generators.iter().enumerate() {
        for (j, h) in generators.iter().enumerate().skip(i + 1) {
            if !g.commutes_with(h) {
                return Err(PauliError::NonCommuting(i, j));
            }
        }
    }
    let words: Vec<Gf4Vector> = generators
        .iter()
        .map(|g| Gf4Vector::new(n, g.x_part(), g.z_part()).expect("n <= 64"))
        .collect();
    if AdditiveCode::new(n, words).is_err() {
        return Err(PauliError::DependentGenerators);
    }

    let dim = 1usize << n;
    let expected = dim >> generators.len();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(expected);
    for j in 0..dim {
        if basis.len() == expected {
            break;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[j] = Complex64::new(1.0, 0.0);
        for g in generators {
            let gv = g.apply(&v);
            for (x, y) in v.iter_mut().zip(gv) {
                *x = (*x + y) * 0.5;
            }
        }
        for u in &basis {
            let c = inner(u, &v);
            for (x, y) in v.iter_mut().zip(u) {
                *x -= c * y;
            }
        }
        let norm = inner(&v, &v).re.sqrt();
        if norm > 1e-6 {
            v.iter_mut().for_each(|x| *x /= norm);
            basis.push(v);
        }
    }
    if basis.len() != expected {
        return Err(PauliError::EmptyEigenspace {
            expected,
            found: basis.len(),
        });
    }
    Ok(Projector { n, basis })
}

/// Stabilizer projector of a symplectic self-orthogonal additive code,
/// one canonical generator per basis vector.
pub fn projector_from_code(code: &AdditiveCode) -> Result<Projector, PauliError> {
    let gens: Vec<PauliOperator> = code.generators().iter().map(PauliOperator::from_gf4).collect();
    projector_from_stabilizers(code.len(), &gens)
}

fn check_operator(e: &PauliOperator, p: &Projector) -> Result<(), PauliError> {
    if e.num_qubits() != p.num_qubits() {
        return Err(PauliError::LengthMismatch {
            expected: p.num_qubits(),
            found: e.num_qubits(),
        });
    }
    if !e.is_hermitian() {
        return Err(PauliError::NotHermitian(0));
    }
    Ok(())
}

/// `(Tr(eP), Tr(ePeP))` from a single overlap matrix.
pub fn traces(e: &PauliOperator, p: &Projector) -> Result<(f64, f64), PauliError> {
    check_operator(e, p)?;
    let k = p.dimension();
    let m = p.overlaps(e);
    let tr: Complex64 = (0..k).map(|r| m[r * k + r]).sum();
    if tr.im.abs() > REAL_TOL {
        return Err(PauliError::NonRealTrace(tr.im));
    }
    let tr2: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    Ok((tr.re, tr2))
}

/// `Tr(eP) = Σ_k ⟨ψ_k|e|ψ_k⟩`.
pub fn trace_e_p(e: &PauliOperator, p: &Projector) -> Result<f64, PauliError> {
    check_operator(e, p)?;
    let tr: Complex64 = p
        .basis()
        .iter()
        .map(|psi| inner(psi, &e.apply(psi)))
        .sum();
    if tr.im.abs() > REAL_TOL {
        return Err(PauliError::NonRealTrace(tr.im));
    }
    Ok(tr.re)
}

/// `Tr(ePeP) = Σ_{k,l} |⟨ψ_k|e|ψ_l⟩|²`.
pub fn trace_e_p_e_p(e: &PauliOperator, p: &Projector) -> Result<f64, PauliError> {
    traces(e, p).map(|(_, t)| t)
}
