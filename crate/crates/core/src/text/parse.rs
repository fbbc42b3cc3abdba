//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! poly     := ws term (ws ("+"|"-") ws term)* ws
//! term     := factor (ws "*"? ws factor)*
//! factor   := base ("^" nat)?
//! base     := var | imag | rational | "(" poly ")"
//! var      := "x" nat          imag := "i"
//! rational := int ("/" nat)?   int  := "-"? nat
//! ```
//!
//! A term may also start with a unary `-` that is not part of an integer
//! literal (`-x1`, `-i*x2`); the canonical printer relies on it for leading
//! negative terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{GaussianRational, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {}, found {found}", expected.join(" or "))]
    Syntax { position: usize, expected: Vec<String>, found: String },

    #[error("variable x{index} exceeds declared arity {arity}")]
    ArityViolation { index: usize, arity: usize },

    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },

    #[error("line {line}: {error}")]
    AtLine { line: usize, error: Box<ParseError> },

    #[error("{0}")]
    File(String),
}

/// Expression text with an optional declared arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpressionSource<'a> {
    pub text: &'a str,
    pub arity: Option<usize>,
}

impl<'a> PolyExpressionSource<'a> {
    pub fn new(text: &'a str) -> Self {
        Self { text, arity: None }
    }

    pub fn with_arity(text: &'a str, arity: usize) -> Self {
        Self { text, arity: Some(arity) }
    }
}

/// Parses an expression; the arity is the declared one or else the largest
/// variable index that appears (at least 1).
pub fn parse_polynomial(src: &PolyExpressionSource<'_>) -> Result<Polynomial, ParseError> {
    let expr = Parser::new(src.text).parse()?;
    let used = expr.max_variable();
    let arity = match src.arity {
        Some(a) => {
            if used > a {
                return Err(ParseError::ArityViolation { index: used, arity: a });
            }
            a
        }
        None => used.max(1),
    };
    Ok(expr.eval(arity))
}

/// Shorthand for [`parse_polynomial`] without a declared arity.
pub fn parse(text: &str) -> Result<Polynomial, ParseError> {
    parse_polynomial(&PolyExpressionSource::new(text))
}

#[derive(Debug)]
enum Expr {
    /// 1-based index
    Var(usize),
    Imag,
    Rational(BigRational),
    Neg(Box<Expr>),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn max_variable(&self) -> usize {
        match self {
            Expr::Var(k) => *k,
            Expr::Imag | Expr::Rational(_) => 0,
            Expr::Neg(e) | Expr::Pow(e, _) => e.max_variable(),
            Expr::Sum(terms) => terms.iter().map(|(_, e)| e.max_variable()).max().unwrap_or(0),
            Expr::Product(fs) => fs.iter().map(Expr::max_variable).max().unwrap_or(0),
        }
    }

    fn eval(&self, arity: usize) -> Polynomial {
        match self {
            Expr::Var(k) => Polynomial::variable(arity, k - 1),
            Expr::Imag => Polynomial::constant(arity, GaussianRational::i()),
            Expr::Rational(r) => Polynomial::constant(arity, r.clone().into()),
            Expr::Neg(e) => -e.eval(arity),
            Expr::Sum(terms) => terms.iter().fold(Polynomial::zero(arity), |acc, (neg, e)| {
                let v = e.eval(arity);
                if *neg {
                    &acc - &v
                } else {
                    &acc + &v
                }
            }),
            Expr::Product(fs) => fs
                .iter()
                .fold(Polynomial::one(arity), |acc, e| &acc * &e.eval(arity)),
            Expr::Pow(e, n) => e.eval(arity).pow(*n),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self { src: text.as_bytes(), pos: 0 }
    }

    fn parse(mut self) -> Result<Expr, ParseError> {
        let e = self.poly()?;
        self.ws();
        if self.pos < self.src.len() {
            return Err(self.error(&["\"+\"", "\"-\"", "\"*\"", "factor", "end of input"]));
        }
        Ok(e)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.src.get(self.pos + offset).copied()
    }

    fn ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.pos += 1;
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = std::str::from_utf8(&self.src[self.pos..]).unwrap_or("?");
                format!("{:?}", rest.chars().next().unwrap_or('?'))
            }
        };
        ParseError::Syntax {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn poly(&mut self) -> Result<Expr, ParseError> {
        self.ws();
        let mut terms = vec![(false, self.term()?)];
        loop {
            let save = self.pos;
            self.ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.ws();
                    terms.push((false, self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.ws();
                    terms.push((true, self.term()?));
                }
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 { terms.pop().unwrap().1 } else { Expr::Sum(terms) })
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(b'x' | b'i' | b'(') => true,
            Some(c) => c.is_ascii_digit(),
            None => false,
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        // unary minus that does not introduce an integer literal
        if self.peek() == Some(b'-') && !self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            self.ws();
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut factors = vec![self.factor()?];
        loop {
            let save = self.pos;
            self.ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.ws();
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                self.pos = save;
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(ParseError::NegativeExponent { position: self.pos });
            }
            let n = self.nat()?;
            let exp = u32::try_from(&n).map_err(|_| self.error(&["exponent below 2^32"]))?;
            return Ok(Expr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let n = self.nat()?;
                match usize::try_from(&n) {
                    Ok(k) if k >= 1 => Ok(Expr::Var(k)),
                    _ => {
                        self.pos = start;
                        Err(self.error(&["variable index >= 1"]))
                    }
                }
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Expr::Imag)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                self.ws();
                if self.peek() != Some(b')') {
                    return Err(self.error(&["\")\""]));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => self.rational(),
            Some(c) if c.is_ascii_digit() => self.rational(),
            _ => Err(self.error(&["variable", "\"i\"", "number", "\"(\""])),
        }
    }

    fn rational(&mut self) -> Result<Expr, ParseError> {
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let mut numer = self.nat()?;
        if negative {
            numer = -numer;
        }
        let mut denom = BigInt::from(1);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let start = self.pos;
            denom = self.nat()?;
            if denom.is_zero() {
                self.pos = start;
                return Err(self.error(&["nonzero denominator"]));
            }
        }
        Ok(Expr::Rational(BigRational::new(numer, denom)))
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["digit"]));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::print_canonical;

    fn x(n: usize, k: usize) -> Polynomial {
        Polynomial::variable(n, k)
    }

    #[test]
    fn simple_sum() {
        assert_eq!(parse("x1 + x2^3").unwrap(), &x(2, 0) + &x(2, 1).pow(3));
    }

    #[test]
    fn isotropic_quartic_expands() {
        let p = parse("(x1 + i*x2)^4").unwrap();
        let expected = parse("x1^4 + 4*i*x1^3*x2 - 6*x1^2*x2^2 - 4*i*x1*x2^3 + x2^4").unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.coefficient_of(&[1, 3]), GaussianRational::from_integers(0, -4));
        assert_eq!(p.coefficient_of(&[2, 2]), GaussianRational::from(-6));
    }

    #[test]
    fn repeated_variables_and_implicit_products() {
        assert_eq!(parse("x1 + x1*x1").unwrap(), &x(1, 0) + &x(1, 0).pow(2));
        assert_eq!(parse("2 x1 x2").unwrap(), parse("2*x1*x2").unwrap());
        assert_eq!(parse("2x1x2").unwrap(), parse("2*x1*x2").unwrap());
        assert_eq!(parse("i^2").unwrap(), Polynomial::constant(1, (-1).into()));
    }

    #[test]
    fn rationals_and_signs() {
        let p = parse("-3/4*x1 - -2").unwrap();
        assert_eq!(p.coefficient_of(&[1]), GaussianRational::from_ratio(-3, 4));
        assert_eq!(p.constant_term(), GaussianRational::from(2));
        assert_eq!(parse("-x1").unwrap(), -&x(1, 0));
        assert_eq!(parse("-i*x1").unwrap(), x(1, 0).scale(&-GaussianRational::i()));
        assert_eq!(parse("(-1-2*i)").unwrap().constant_term(), GaussianRational::from_integers(-1, -2));
        assert_eq!(parse("6/4").unwrap().constant_term(), GaussianRational::from_ratio(3, 2));
    }

    #[test]
    fn declared_arity() {
        let p = parse_polynomial(&PolyExpressionSource::with_arity("x1", 3)).unwrap();
        assert_eq!(p.arity(), 3);
        assert_eq!(
            parse_polynomial(&PolyExpressionSource::with_arity("x4", 3)),
            Err(ParseError::ArityViolation { index: 4, arity: 3 })
        );
        assert_eq!(parse("7").unwrap().arity(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("x1 +"), Err(ParseError::Syntax { position: 4, .. })));
        assert!(matches!(parse("x1^-2"), Err(ParseError::NegativeExponent { position: 3 })));
        assert!(matches!(parse("x0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("(x1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("1/0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("y1"), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x1 )"), Err(ParseError::Syntax { position: 3, .. })));
    }

    #[test]
    fn canonical_text_reparses() {
        for text in ["(x1 + i*x2)^4", "x1 - 1/2*x3^2 + (2-3*i)*x2", "-x1^3 - i", "0"] {
            let p = parse_polynomial(&PolyExpressionSource::with_arity(text, 3)).unwrap();
            let again =
                parse_polynomial(&PolyExpressionSource::with_arity(&print_canonical(&p), 3)).unwrap();
            assert_eq!(again, p);
        }
    }
}
