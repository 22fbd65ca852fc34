//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Monomial = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse polynomial at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, BigRational::one())
    }

    pub fn monomial(exponents: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// `Σ c_i x_i` for the given coefficients.
    pub fn linear(coeffs: &[BigRational]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; nvars];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exponents: Monomial, c: BigRational) {
        assert_eq!(exponents.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total degree of each monomial, if they all agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Replaces variable `i` by `subs[i]`; the result lives in the ring of
    /// the substitutes.
    pub fn substitute(&self, subs: &[Polynomial]) -> Polynomial {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable");
        let target = subs.first().map_or(0, |s| s.nvars);
        assert!(subs.iter().all(|s| s.nvars == target));
        let mut powers: Vec<Vec<Polynomial>> = subs.iter().map(|s| vec![Polynomial::one(s.nvars)]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = out + term;
        }
        out
    }

    /// Coefficients that are negative, if any.
    pub fn negative_terms(&self) -> Vec<(Monomial, BigRational)> {
        self.terms
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Renders terms in descending lexicographic order of the exponent
    /// vector taken in `order` (indices into `names`), e.g. `X^5 + 15XY^4`.
    pub fn render(&self, names: &[&str], order: &[usize]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let key = |m: &Monomial| -> Vec<u32> { order.iter().map(|&i| m[i]).collect() };
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|x, y| key(y.0).cmp(&key(x.0)));
        let mut out = String::new();
        for (idx, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_const = m.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                if abs.is_integer() {
                    let _ = write!(out, "{}", abs.numer());
                } else {
                    let _ = write!(out, "({}/{})", abs.numer(), abs.denom());
                }
            }
            for &i in order {
                match m[i] {
                    0 => {}
                    1 => out.push_str(names[i]),
                    e => {
                        let _ = write!(out, "{}^{}", names[i], e);
                    }
                }
            }
        }
        out
    }

    /// Parses the rendered notation: terms such as `5X^4YZ^3W^2`,
    /// `(1/2)XY`, `3/4 X*Y`, separated by `+`/`-`. Variable names are
    /// single characters.
    pub fn parse(text: &str, names: &[char]) -> Result<Self, PolyParseError> {
        let nvars = names.len();
        let bytes: Vec<char> = text.chars().collect();
        let mut pos = 0usize;
        let mut out = Polynomial::zero(nvars);
        let err = |pos: usize, msg: &str| PolyParseError {
            pos,
            msg: msg.to_string(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && (bytes[*pos].is_whitespace() || bytes[*pos] == '*') {
                *pos += 1;
            }
        };
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| bytes[start..*pos].iter().collect::<String>().parse().unwrap())
        };
        let mut first = true;
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(pos, "empty input"));
        }
        while pos < bytes.len() {
            skip_ws(&mut pos);
            let mut sign = BigRational::one();
            if pos < bytes.len() && (bytes[pos] == '+' || bytes[pos] == '-') {
                if bytes[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(err(pos, "expected + or -"));
            }
            first = false;
            let mut coeff = BigRational::one();
            let mut saw_coeff = false;
            let paren = pos < bytes.len() && bytes[pos] == '(';
            if paren {
                pos += 1;
            }
            if let Some(num) = read_int(&mut pos) {
                saw_coeff = true;
                coeff = BigRational::from_integer(num);
                if pos < bytes.len() && bytes[pos] == '/' {
                    pos += 1;
                    let den = read_int(&mut pos).ok_or_else(|| err(pos, "expected denominator"))?;
                    if den.is_zero() {
                        return Err(err(pos, "zero denominator"));
                    }
                    coeff /= BigRational::from_integer(den);
                }
            }
            if paren {
                if pos >= bytes.len() || bytes[pos] != ')' {
                    return Err(err(pos, "expected )"));
                }
                pos += 1;
            }
            let mut mono = vec![0u32; nvars];
            let mut saw_var = false;
            loop {
                skip_ws(&mut pos);
                let Some(&ch) = bytes.get(pos) else { break };
                let Some(i) = names.iter().position(|&n| n == ch) else { break };
                pos += 1;
                saw_var = true;
                let mut e = 1u32;
                if bytes.get(pos) == Some(&'^') {
                    pos += 1;
                    e = read_int(&mut pos)
                        .ok_or_else(|| err(pos, "expected exponent"))?
                        .try_into()
                        .map_err(|_| err(pos, "exponent too large"))?;
                }
                mono[i] += e;
            }
            if !saw_coeff && !saw_var {
                return Err(err(pos, "expected a term"));
            }
            out.add_term(mono, sign * coeff);
            skip_ws(&mut pos);
        }
        Ok(out)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const XY: [char; 2] = ['X', 'Y'];

    #[test]
    fn parse_and_render() {
        let p = Polynomial::parse("X^5 + 30X^2Y^3 + 15XY^4 + 18Y^5", &XY).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.coefficient(&[2, 3]), rat(30));
        assert_eq!(p.render(&["X", "Y"], &[0, 1]), "X^5 + 30X^2Y^3 + 15XY^4 + 18Y^5");
        let q = Polynomial::parse("-(1/2)X*Y + 3/4 Y - 2", &XY).unwrap();
        assert_eq!(q.coefficient(&[1, 1]), ratio(-1, 2));
        assert_eq!(q.coefficient(&[0, 1]), ratio(3, 4));
        assert_eq!(q.coefficient(&[0, 0]), rat(-2));
        assert_eq!(q.render(&["X", "Y"], &[0, 1]), "-(1/2)XY + (3/4)Y - 2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Polynomial::parse("", &XY).is_err());
        assert!(Polynomial::parse("X + Q", &XY).is_err());
        assert!(Polynomial::parse("X Y^", &XY).is_err());
        assert!(Polynomial::parse("1/0 X", &XY).is_err());
    }

    #[test]
    fn arithmetic_cancels() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = x.clone() + y.clone();
        let d = x.clone() - y.clone();
        let prod = &s * &d;
        let want = &x * &x - &y * &y;
        assert_eq!(prod, want);
        assert!((s.clone() - s).is_zero());
    }

    #[test]
    fn substitution_is_composition() {
        // (X+3Y)/2, (X-Y)/2 is an involution on linear forms
        let a = Polynomial::linear(&[ratio(1, 2), ratio(3, 2)]);
        let b = Polynomial::linear(&[ratio(1, 2), ratio(-1, 2)]);
        let p = Polynomial::parse("X^3 + 7XY^2 - 2Y^3", &XY).unwrap();
        let once = p.substitute(&[a.clone(), b.clone()]);
        let twice = once.substitute(&[a, b]);
        assert_eq!(twice, p);
        assert_eq!(p.homogeneous_degree(), Some(3));
    }
}
