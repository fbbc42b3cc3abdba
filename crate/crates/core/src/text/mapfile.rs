//! Line-oriented polynomial files.
//!
//! One polynomial per line (line `k` of a map file is `F_k`), `#` starts a
//! comment, blank lines are ignored and a leading `arity: n` directive is
//! optional.

use super::parse::{parse_polynomial, ParseError, PolyExpressionSource};
use super::print_canonical;
use crate::poly::Polynomial;
use crate::yagzhev::PolyMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFile {
    pub arity: Option<usize>,
    /// `(1-based line number, expression text)`
    pub lines: Vec<(usize, String)>,
}

impl PolyFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut arity = None;
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("arity:") {
                if arity.is_some() || !lines.is_empty() {
                    return Err(at(line_no, ParseError::File(
                        "arity directive must precede all polynomials".into(),
                    )));
                }
                let n: usize = rest.trim().parse().map_err(|_| {
                    at(line_no, ParseError::File(format!("invalid arity {:?}", rest.trim())))
                })?;
                if n == 0 {
                    return Err(at(line_no, ParseError::File("arity must be positive".into())));
                }
                arity = Some(n);
                continue;
            }
            lines.push((line_no, content.to_string()));
        }
        Ok(Self { arity, lines })
    }

    fn parse_line(&self, (line, text): &(usize, String), arity: Option<usize>) -> Result<Polynomial, ParseError> {
        parse_polynomial(&PolyExpressionSource { text, arity }).map_err(|e| at(*line, e))
    }

    /// Reads the file as a map: the arity is the declared one or else the
    /// number of polynomial lines, and the two must agree.
    pub fn to_map(&self) -> Result<PolyMap, ParseError> {
        let n = self.arity.unwrap_or(self.lines.len());
        if self.lines.len() != n || n == 0 {
            return Err(ParseError::File(format!(
                "map file has {} polynomial lines for arity {}",
                self.lines.len(),
                n
            )));
        }
        let coords = self
            .lines
            .iter()
            .map(|l| self.parse_line(l, Some(n)))
            .collect::<Result<Vec<_>, _>>()?;
        PolyMap::new(coords).map_err(|e| ParseError::File(e.to_string()))
    }

    /// Reads the file as exactly one polynomial.
    pub fn to_polynomial(&self) -> Result<Polynomial, ParseError> {
        match self.lines.as_slice() {
            [line] => self.parse_line(line, self.arity),
            _ => Err(ParseError::File(format!(
                "expected exactly one polynomial, found {}",
                self.lines.len()
            ))),
        }
    }

    /// Every polynomial line, sharing the declared arity or else the
    /// largest variable index used anywhere in the file.
    pub fn to_polynomials(&self) -> Result<Vec<Polynomial>, ParseError> {
        let arity = match self.arity {
            Some(a) => a,
            None => {
                let mut arity = 1;
                for l in &self.lines {
                    arity = arity.max(self.parse_line(l, None)?.arity());
                }
                arity
            }
        };
        self.lines.iter().map(|l| self.parse_line(l, Some(arity))).collect()
    }
}

fn at(line: usize, error: ParseError) -> ParseError {
    ParseError::AtLine { line, error: Box::new(error) }
}

/// Writes a map in file form, with an `arity:` directive.
pub fn format_map(map: &PolyMap) -> String {
    let mut out = format!("arity: {}\n", map.arity());
    for f in map.coordinates() {
        out.push_str(&print_canonical(f));
        out.push('\n');
    }
    out
}

/// Writes one polynomial in file form, with an `arity:` directive.
pub fn format_polynomial(p: &Polynomial) -> String {
    format!("arity: {}\n{}\n", p.arity(), print_canonical(p))
}
