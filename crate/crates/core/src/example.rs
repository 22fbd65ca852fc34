//! The [[5,1,3]] code as a built-in reference instance.
//!
//! The check matrix below generates the F₄-linear [5,3,3] code; its rows
//! span the [5,2,4] dual, whose additive expansion (four generators) is the
//! stabilizer of the five-qubit code.

use crate::enumerators::{
    enumerate_from_additive_code, verify_identities, CodeEnumeration, EnumError, IdentityCheck,
};
use crate::gf4::AdditiveCode;
use crate::poly::Polynomial;

pub const CHECK_MATRIX: &str = "n=5 format=f4\n1 0 1 w2 w2\n0 1 w2 w2 1\n";

pub const EXPECTED_B: &str = "X^5 + 15XY^4";
pub const EXPECTED_B_DUAL: &str = "X^5 + 30X^2Y^3 + 15XY^4 + 18Y^5";
pub const EXPECTED_C: &str = "X^5Z^5 + 5X^3Y^2Z^3W^2 + 5X^3Y^2ZW^4 + 5XY^4Z^3W^2";
pub const EXPECTED_C_DUAL: &str = "X^5Z^5 + X^5W^5 \
    + 5X^4YZ^3W^2 + 5X^4YZ^2W^3 + 5X^3Y^2Z^4W + 5X^3Y^2Z^3W^2 \
    + 5X^3Y^2Z^2W^3 + 5X^3Y^2ZW^4 + 5X^2Y^3Z^4W + 5X^2Y^3Z^3W^2 \
    + 5X^2Y^3Z^2W^3 + 5X^2Y^3ZW^4 + 5XY^4Z^3W^2 + 5XY^4Z^2W^3 \
    + Y^5Z^5 + Y^5W^5";
pub const EXPECTED_D: &str = "W^5 + 5WX^2Y^2 + 5WX^2Z^2 + 5WY^2Z^2";
pub const EXPECTED_D_DUAL: &str = "W^5 + X^5 + Y^5 + Z^5 \
    + 5W^2X^2Y + 5W^2X^2Z + 5W^2XY^2 + 5W^2XZ^2 + 5W^2Y^2Z + 5W^2YZ^2 \
    + 5WX^2Y^2 + 5WX^2Z^2 + 5WY^2Z^2 + 5X^2Y^2Z + 5X^2YZ^2 + 5XY^2Z^2";

const XY: [char; 2] = ['X', 'Y'];
const XYZW: [char; 4] = ['X', 'Y', 'Z', 'W'];

pub fn code() -> AdditiveCode {
    AdditiveCode::parse(CHECK_MATRIX).expect("built-in check matrix parses")
}

/// Renders `B` in `X, Y` order.
pub fn render_b(p: &Polynomial) -> String {
    p.render(&["X", "Y"], &[0, 1])
}

/// Renders `C` in `X, Y, Z, W` order.
pub fn render_c(p: &Polynomial) -> String {
    p.render(&["X", "Y", "Z", "W"], &[0, 1, 2, 3])
}

/// Renders `D` with `W` leading, as `W, X, Y, Z`.
pub fn render_d(p: &Polynomial) -> String {
    p.render(&["X", "Y", "Z", "W"], &[3, 0, 1, 2])
}

pub struct PolynomialComparison {
    pub name: &'static str,
    pub computed: Polynomial,
    pub expected: Polynomial,
    pub rendered: String,
}

impl PolynomialComparison {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }
}

pub struct ExampleReport {
    pub enumeration: CodeEnumeration,
    pub polynomials: Vec<PolynomialComparison>,
    pub identities: Vec<IdentityCheck>,
}

impl ExampleReport {
    pub fn all_match(&self) -> bool {
        self.polynomials.iter().all(PolynomialComparison::matches)
    }

    pub fn all_identities_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }
}

pub fn expected_polynomials() -> [(&'static str, Polynomial); 6] {
    let two = |s| Polynomial::parse(s, &XY).expect("embedded polynomial");
    let four = |s| Polynomial::parse(s, &XYZW).expect("embedded polynomial");
    [
        ("B", two(EXPECTED_B)),
        ("B⊥", two(EXPECTED_B_DUAL)),
        ("C", four(EXPECTED_C)),
        ("C⊥", four(EXPECTED_C_DUAL)),
        ("D", four(EXPECTED_D)),
        ("D⊥", four(EXPECTED_D_DUAL)),
    ]
}

pub fn run() -> Result<ExampleReport, EnumError> {
    let enumeration = enumerate_from_additive_code(&code())?;
    let (p, d) = (&enumeration.primal, &enumeration.dual);
    let computed = [
        (p.b_polynomial(), render_b as fn(&Polynomial) -> String),
        (d.b_polynomial(), render_b),
        (p.c_polynomial(), render_c),
        (d.c_polynomial(), render_c),
        (p.d_polynomial(), render_d),
        (d.d_polynomial(), render_d),
    ];
    let polynomials = computed
        .into_iter()
        .zip(expected_polynomials())
        .map(|((computed, render), (name, expected))| PolynomialComparison {
            name,
            rendered: render(&computed),
            computed,
            expected,
        })
        .collect();
    let identities = verify_identities(p, d);
    Ok(ExampleReport {
        enumeration,
        polynomials,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_all_six_polynomials() {
        let report = run().unwrap();
        for c in &report.polynomials {
            assert!(c.matches(), "{}: got {}", c.name, c.rendered);
        }
        assert!(report.all_identities_hold());
    }

    #[test]
    fn rendering_follows_listed_order() {
        let report = run().unwrap();
        let r: Vec<&str> = report.polynomials.iter().map(|c| c.rendered.as_str()).collect();
        assert_eq!(r[0], EXPECTED_B);
        assert_eq!(r[1], EXPECTED_B_DUAL);
        assert_eq!(r[2], EXPECTED_C);
        assert_eq!(r[4], EXPECTED_D);
    }

    #[test]
    fn dual_c_has_sixteen_terms() {
        assert_eq!(expected_polynomials()[3].1.len(), 16);
        assert_eq!(expected_polynomials()[5].1.len(), 16);
    }
}
