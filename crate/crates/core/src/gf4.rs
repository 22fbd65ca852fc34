//! GF(4) arithmetic and additive codes in the split `(a|b)` representation.
//!
//! An element is stored as a pair of bits `(a, b)` standing for `a·α + b·α²`,
//! so `0 = (0,0)`, `α = (1,0)`, `α² = (0,1)` and `1 = α + α² = (1,1)`.
//! Vectors of length `n <= 64` keep the `a` and `b` parts as bit masks with
//! coordinate `s` at bit `s`. Under the usual identification with Pauli
//! operators the `a` part is the bit-flip support and the `b` part the
//! phase-flip support, and the trace-Hermitian inner product becomes the
//! binary symplectic form `a·b' + a'·b`.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use thiserror::Error;

/// Longest supported word length (bit-mask width).
pub const MAX_LENGTH: usize = 64;

/// Largest `g` for which `2^g` codewords may be enumerated.
pub const MAX_ENUMERATION_DIM: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("malformed header {0:?}; expected \"n=<int> format=<f4|ab>\"")]
    MalformedHeader(String),
    #[error("line {line}: malformed symbol {symbol:?}")]
    MalformedSymbol { line: usize, symbol: String },
    #[error("line {line}: row has length {found}, expected {expected}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("length {0} exceeds the supported maximum of {MAX_LENGTH}")]
    LengthTooLarge(usize),
    #[error("vector of length {found} used with a code of length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generators are linearly dependent over F2")]
    DependentGenerators,
    #[error("enumerating 2^{dim} words exceeds the budget of 2^{limit}")]
    TooLarge { dim: usize, limit: usize },
}

/// An element `a·α + b·α²` of GF(4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf4Element {
    pub a: bool,
    pub b: bool,
}

impl Gf4Element {
    pub const ZERO: Self = Self { a: false, b: false };
    pub const ALPHA: Self = Self { a: true, b: false };
    pub const ALPHA_SQ: Self = Self { a: false, b: true };
    pub const ONE: Self = Self { a: true, b: true };

    pub const fn new(a: bool, b: bool) -> Self {
        Self { a, b }
    }

    /// Discrete log base α in `0..3` (α³ = 1 maps to 0); `None` for zero.
    fn log(self) -> Option<u8> {
        match (self.a, self.b) {
            (false, false) => None,
            (true, false) => Some(1),
            (false, true) => Some(2),
            (true, true) => Some(0),
        }
    }

    fn from_log(e: u8) -> Self {
        match e % 3 {
            0 => Self::ONE,
            1 => Self::ALPHA,
            _ => Self::ALPHA_SQ,
        }
    }

    /// Frobenius conjugate `x²`.
    pub fn conjugate(self) -> Self {
        self * self
    }

    /// Absolute trace `x + x²` as a bit.
    pub fn trace(self) -> bool {
        let t = self + self.conjugate();
        debug_assert!(t == Self::ZERO || t == Self::ONE);
        t == Self::ONE
    }
}

impl Add for Gf4Element {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a ^ rhs.a, self.b ^ rhs.b)
    }
}

impl Mul for Gf4Element {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        match (self.log(), rhs.log()) {
            (Some(x), Some(y)) => Self::from_log(x + y),
            _ => Self::ZERO,
        }
    }
}

impl fmt::Display for Gf4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match (self.a, self.b) {
            (false, false) => "0",
            (true, true) => "1",
            (true, false) => "w",
            (false, true) => "w2",
        };
        f.write_str(s)
    }
}

impl FromStr for Gf4Element {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => Ok(Self::ZERO),
            "1" => Ok(Self::ONE),
            "w" | "a" => Ok(Self::ALPHA),
            "w2" | "a2" => Ok(Self::ALPHA_SQ),
            other => Err(other.to_string()),
        }
    }
}

/// Counts of coordinates equal to α, α², α³ = 1 and 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub k0: usize,
}

impl Composition {
    /// `(N_x, N_y, N_z)` of the Pauli operator with the same `(a|b)` word:
    /// α carries only a bit flip, α² only a phase flip, 1 both.
    pub fn pauli_counts(&self) -> (usize, usize, usize) {
        (self.k1, self.k3, self.k2)
    }
}

/// A length-`n` word over GF(4) in split form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf4Vector {
    n: usize,
    a: u64,
    b: u64,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Gf4Vector {
    pub fn new(n: usize, a: u64, b: u64) -> Result<Self, CodeError> {
        if n > MAX_LENGTH {
            return Err(CodeError::LengthTooLarge(n));
        }
        Ok(Self {
            n,
            a: a & mask(n),
            b: b & mask(n),
        })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_LENGTH);
        Self { n, a: 0, b: 0 }
    }

    pub fn from_bits(a: &[bool], b: &[bool]) -> Result<Self, CodeError> {
        if a.len() != b.len() {
            return Err(CodeError::LengthMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let pack = |bits: &[bool]| {
            bits.iter()
                .enumerate()
                .fold(0u64, |acc, (s, &bit)| acc | ((bit as u64) << s))
        };
        Self::new(a.len(), pack(a), pack(b))
    }

    pub fn from_elements(elems: &[Gf4Element]) -> Result<Self, CodeError> {
        let a: Vec<bool> = elems.iter().map(|e| e.a).collect();
        let b: Vec<bool> = elems.iter().map(|e| e.b).collect();
        Self::from_bits(&a, &b)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn a_mask(&self) -> u64 {
        self.a
    }

    pub fn b_mask(&self) -> u64 {
        self.b
    }

    pub fn get(&self, s: usize) -> Gf4Element {
        assert!(s < self.n);
        Gf4Element::new((self.a >> s) & 1 == 1, (self.b >> s) & 1 == 1)
    }

    pub fn elements(&self) -> Vec<Gf4Element> {
        (0..self.n).map(|s| self.get(s)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Coordinatewise multiplication by a field scalar.
    pub fn scale(&self, c: Gf4Element) -> Self {
        let elems: Vec<Gf4Element> = self.elements().into_iter().map(|x| c * x).collect();
        Self::from_elements(&elems).expect("length preserved")
    }

    /// Binary symplectic form `a·b' + a'·b (mod 2)`.
    pub fn symplectic(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        ((self.a & other.b).count_ones() + (other.a & self.b).count_ones()) % 2 == 1
    }

    /// Trace-Hermitian form `Σ tr(c_s · conj(c'_s))`, computed in the field.
    pub fn trace_hermitian(&self, other: &Self) -> bool {
        let mut acc = Gf4Element::ZERO;
        for s in 0..self.n {
            acc = acc + self.get(s) * other.get(s).conjugate();
        }
        acc.trace()
    }

    pub fn composition(&self) -> Composition {
        let k1 = (self.a & !self.b).count_ones() as usize;
        let k2 = (!self.a & self.b).count_ones() as usize;
        let k3 = (self.a & self.b).count_ones() as usize;
        Composition {
            k1,
            k2,
            k3,
            k0: self.n - k1 - k2 - k3,
        }
    }

    pub fn hamming_weight(&self) -> usize {
        (self.a | self.b).count_ones() as usize
    }

    /// `(Σ a_s, Σ b_s)`.
    pub fn ab_weights(&self) -> (usize, usize) {
        (self.a.count_ones() as usize, self.b.count_ones() as usize)
    }

    /// Column-ordered packing `a_0 … a_{n-1} b_0 … b_{n-1}` with `a_0` most
    /// significant, used for row reduction.
    fn pack(&self) -> u128 {
        let mut w = 0u128;
        for s in 0..self.n {
            w |= (((self.a >> s) & 1) as u128) << (2 * self.n - 1 - s);
            w |= (((self.b >> s) & 1) as u128) << (self.n - 1 - s);
        }
        w
    }

    fn unpack(n: usize, w: u128) -> Self {
        let mut a = 0u64;
        let mut b = 0u64;
        for s in 0..n {
            a |= (((w >> (2 * n - 1 - s)) & 1) as u64) << s;
            b |= (((w >> (n - 1 - s)) & 1) as u64) << s;
        }
        Self { n, a, b }
    }

    /// The `(b|a)` swap: `symplectic(u, v)` equals the ordinary dot product
    /// of `u.swapped()` with `v`.
    fn swapped(&self) -> Self {
        Self {
            n: self.n,
            a: self.b,
            b: self.a,
        }
    }

    pub fn to_ab_string(&self) -> String {
        let bits = |m: u64| -> String {
            (0..self.n)
                .map(|s| if (m >> s) & 1 == 1 { '1' } else { '0' })
                .collect()
        };
        format!("{}|{}", bits(self.a), bits(self.b))
    }
}

impl Add for Gf4Vector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.n, rhs.n);
        Self {
            n: self.n,
            a: self.a ^ rhs.a,
            b: self.b ^ rhs.b,
        }
    }
}

impl fmt::Display for Gf4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

fn highest_bit(w: u128) -> u32 {
    127 - w.leading_zeros()
}

/// Reduced row echelon form over F2, pivots ordered most significant first.
/// Returns the basis and whether any input row was dependent.
fn rref(rows: impl IntoIterator<Item = u128>) -> (Vec<u128>, bool) {
    let mut basis: Vec<u128> = Vec::new();
    let mut dependent = false;
    for mut row in rows {
        for &b in &basis {
            if row >> highest_bit(b) & 1 == 1 {
                row ^= b;
            }
        }
        if row == 0 {
            dependent = true;
            continue;
        }
        let p = highest_bit(row);
        for b in basis.iter_mut() {
            if *b >> p & 1 == 1 {
                *b ^= row;
            }
        }
        basis.push(row);
        basis.sort_unstable_by(|x, y| y.cmp(x));
    }
    (basis, dependent)
}

/// An F2-linear subset of GF(4)^n, stored by a canonical (RREF) basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdditiveCode {
    n: usize,
    generators: Vec<Gf4Vector>,
}

impl AdditiveCode {
    /// Builds a code from F2-independent generators.
    pub fn new(n: usize, generators: Vec<Gf4Vector>) -> Result<Self, CodeError> {
        let (code, dependent) = Self::reduce(n, &generators)?;
        if dependent {
            return Err(CodeError::DependentGenerators);
        }
        Ok(code)
    }

    /// Builds the F2-span of an arbitrary generating set.
    pub fn span(n: usize, generators: &[Gf4Vector]) -> Result<Self, CodeError> {
        Self::reduce(n, generators).map(|(c, _)| c)
    }

    fn reduce(n: usize, generators: &[Gf4Vector]) -> Result<(Self, bool), CodeError> {
        if n > MAX_LENGTH {
            return Err(CodeError::LengthTooLarge(n));
        }
        for g in generators {
            if g.len() != n {
                return Err(CodeError::LengthMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
        }
        let (basis, dependent) = rref(generators.iter().map(Gf4Vector::pack));
        let generators = basis.into_iter().map(|w| Gf4Vector::unpack(n, w)).collect();
        Ok((Self { n, generators }, dependent))
    }

    /// The F4-linear code spanned by `rows`, ingested additively as
    /// `{r, α·r}` per row.
    pub fn from_f4_rows(n: usize, rows: &[Gf4Vector]) -> Result<Self, CodeError> {
        let gens: Vec<Gf4Vector> = rows
            .iter()
            .flat_map(|r| [*r, r.scale(Gf4Element::ALPHA)])
            .collect();
        Self::new(n, gens)
    }

    /// The zero code `{0}`.
    pub fn trivial(n: usize) -> Self {
        assert!(n <= MAX_LENGTH);
        Self {
            n,
            generators: Vec::new(),
        }
    }

    /// All of GF(4)^n.
    pub fn full_space(n: usize) -> Self {
        let gens: Vec<Gf4Vector> = (0..n)
            .flat_map(|s| {
                [
                    Gf4Vector::new(n, 1 << s, 0).unwrap(),
                    Gf4Vector::new(n, 0, 1 << s).unwrap(),
                ]
            })
            .collect();
        Self::new(n, gens).expect("unit vectors are independent")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number `g` of F2 generators; the code has `2^g` elements.
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Gf4Vector] {
        &self.generators
    }

    pub fn contains(&self, v: &Gf4Vector) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut w = v.pack();
        for g in &self.generators {
            let gw = g.pack();
            if w >> highest_bit(gw) & 1 == 1 {
                w ^= gw;
            }
        }
        w == 0
    }

    /// Iterates all `2^g` codewords (Gray-code order, zero word first).
    pub fn codewords(&self) -> Result<Codewords<'_>, CodeError> {
        let dim = self.dimension();
        if dim > MAX_ENUMERATION_DIM {
            return Err(CodeError::TooLarge {
                dim,
                limit: MAX_ENUMERATION_DIM,
            });
        }
        Ok(Codewords {
            generators: &self.generators,
            current: Gf4Vector::zero(self.n),
            index: 0,
            total: 1u64 << dim,
        })
    }

    /// Dual under the symplectic form; has `2^(2n - g)` elements.
    pub fn symplectic_dual(&self) -> Self {
        let n = self.n;
        let width = 2 * n as u32;
        let (rows, _) = rref(self.generators.iter().map(|g| g.swapped().pack()));
        let pivots: Vec<u32> = rows.iter().map(|&r| highest_bit(r)).collect();
        let mut kernel = Vec::new();
        for col in 0..width {
            if pivots.contains(&col) {
                continue;
            }
            let mut v = 1u128 << col;
            for (r, &p) in rows.iter().zip(&pivots) {
                if r >> col & 1 == 1 {
                    v |= 1u128 << p;
                }
            }
            kernel.push(Gf4Vector::unpack(n, v));
        }
        Self::new(n, kernel).expect("kernel basis is independent")
    }

    /// Whether every pair of codewords is symplectically orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            self.generators[i + 1..]
                .iter()
                .all(|h| !g.symplectic(h))
        })
    }

    /// Parses the text form: a header `n=<int> format=<f4|ab>` followed by
    /// one generator per line. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| CodeError::MalformedHeader(String::new()))?;
        let (n, format) = parse_header(header)?;
        let mut rows = Vec::new();
        for (line, body) in lines {
            rows.push(match format {
                TextFormat::F4 => parse_f4_row(n, line, body)?,
                TextFormat::Ab => parse_ab_row(n, line, body)?,
            });
        }
        match format {
            TextFormat::F4 => Self::from_f4_rows(n, &rows),
            TextFormat::Ab => Self::new(n, rows),
        }
    }

    /// Canonical text form (`ab` format, RREF rows).
    pub fn to_text(&self) -> String {
        let mut out = format!("n={} format=ab\n", self.n);
        for g in &self.generators {
            out.push_str(&g.to_ab_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TextFormat {
    F4,
    Ab,
}

fn parse_header(header: &str) -> Result<(usize, TextFormat), CodeError> {
    let bad = || CodeError::MalformedHeader(header.to_string());
    let mut n = None;
    let mut format = None;
    for tok in header.split_whitespace() {
        let (key, value) = tok.split_once('=').ok_or_else(bad)?;
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(|_| bad())?),
            "format" => {
                format = Some(match value {
                    "f4" => TextFormat::F4,
                    "ab" => TextFormat::Ab,
                    _ => return Err(bad()),
                })
            }
            _ => return Err(bad()),
        }
    }
    let n = n.ok_or_else(bad)?;
    if n > MAX_LENGTH {
        return Err(CodeError::LengthTooLarge(n));
    }
    Ok((n, format.ok_or_else(bad)?))
}

fn parse_f4_row(n: usize, line: usize, body: &str) -> Result<Gf4Vector, CodeError> {
    let elems = body
        .split_whitespace()
        .map(|tok| {
            tok.parse::<Gf4Element>()
                .map_err(|symbol| CodeError::MalformedSymbol { line, symbol })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if elems.len() != n {
        return Err(CodeError::RowLength {
            line,
            expected: n,
            found: elems.len(),
        });
    }
    Gf4Vector::from_elements(&elems)
}

fn parse_ab_row(n: usize, line: usize, body: &str) -> Result<Gf4Vector, CodeError> {
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let (a, b) = compact
        .split_once('|')
        .ok_or_else(|| CodeError::MalformedSymbol {
            line,
            symbol: body.to_string(),
        })?;
    let bits = |s: &str| -> Result<Vec<bool>, CodeError> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CodeError::MalformedSymbol {
                    line,
                    symbol: other.to_string(),
                }),
            })
            .collect()
    };
    let (a, b) = (bits(a)?, bits(b)?);
    for part in [&a, &b] {
        if part.len() != n {
            return Err(CodeError::RowLength {
                line,
                expected: n,
                found: part.len(),
            });
        }
    }
    Gf4Vector::from_bits(&a, &b)
}

/// Iterator over all codewords of an [`AdditiveCode`].
pub struct Codewords<'a> {
    generators: &'a [Gf4Vector],
    current: Gf4Vector,
    index: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Gf4Vector;

    fn next(&mut self) -> Option<Gf4Vector> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current = self.current + self.generators[flip];
        }
        self.index += 1;
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Codewords<'_> {}
