use std::fmt::{self, Write};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{GaussianRational, Monomial, Polynomial};

/// Canonical text of a polynomial: grevlex-descending terms joined by
/// ` + ` / ` - `, variables written `x1, x2, ...`.
pub fn print_canonical(p: &Polynomial) -> String {
    p.to_string()
}

fn write_monomial(out: &mut String, m: &Monomial) {
    let mut first = true;
    for (k, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        write!(out, "x{}", k + 1).unwrap();
        if e > 1 {
            write!(out, "^{}", e).unwrap();
        }
    }
}

/// Splits a coefficient into a sign and the text of its magnitude, or
/// returns `None` for the sign when the coefficient is parenthesized.
fn coefficient_text(c: &GaussianRational) -> (bool, Option<String>) {
    fn magnitude(v: &BigRational) -> (bool, BigRational) {
        (v.is_negative(), v.abs())
    }
    if c.is_real() {
        let (neg, mag) = magnitude(c.re());
        let text = (!mag.is_one()).then(|| mag.to_string());
        (neg, text)
    } else if c.re().is_zero() {
        let (neg, mag) = magnitude(c.im());
        let text = if mag.is_one() { "i".to_string() } else { format!("{}*i", mag) };
        (neg, Some(text))
    } else {
        (false, Some(c.to_string()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let (negative, coeff) = coefficient_text(c);
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            match coeff {
                Some(text) => {
                    out.push_str(&text);
                    if !m.is_constant() {
                        out.push('*');
                    }
                }
                // unit coefficient on a constant monomial still prints "1"
                None if m.is_constant() => out.push('1'),
                None => {}
            }
            write_monomial(&mut out, m);
        }
        f.write_str(&out)
    }
}
