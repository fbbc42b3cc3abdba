//! Text form of polynomials: the expression grammar, the canonical printer
//! and the line-oriented file format.

mod mapfile;
mod parse;
mod print;

pub use mapfile::{format_map, format_polynomial, PolyFile};
pub use parse::{parse, parse_polynomial, ParseError, PolyExpressionSource};
pub use print::print_canonical;
