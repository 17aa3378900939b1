//! Recursive-descent parser for polynomial expressions in one variable.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor (['*'] factor)*          -- adjacency multiplies
//! factor  := primary ['^' uint]
//! primary := integer | 'x' | 'phi' '(' uint ')' | '(' expr ')'
//! ```
//!
//! `phi(d)` expands to the d-th cyclotomic polynomial.  Integer literals
//! may be arbitrarily large.  Errors carry the byte offset of the first
//! offending character, so `x^4 + y` reports the exact position of `y`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use cyclodiv_core::cyclotomic::cyclotomic;
use cyclodiv_core::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        message: message.into(),
    })
}

/// Parses an expression into an exact polynomial.
pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return err(0, "empty expression");
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return err(p.pos, format!("unexpected character '{}'", p.current_char()));
    }
    Ok(poly)
}

/// Parses the `--coeffs` form: comma-separated integers, ascending degree.
pub fn parse_coeff_list(text: &str) -> Result<IntPoly, ParseError> {
    let mut coeffs = Vec::new();
    let mut offset = 0usize;
    for piece in text.split(',') {
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            return err(offset, "empty coefficient entry");
        }
        match BigInt::from_str(trimmed) {
            Ok(c) => coeffs.push(c),
            Err(_) => {
                return err(offset, format!("invalid integer '{trimmed}'"));
            }
        }
        offset += piece.len() + 1;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn current_char(&self) -> char {
        std::str::from_utf8(&self.bytes[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn expr(&mut self) -> Result<IntPoly, ParseError> {
        self.skip_ws();
        let mut negated = false;
        if self.peek() == Some(b'-') {
            negated = true;
            self.bump();
        }
        let mut acc = self.term()?;
        if negated {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(b'-') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                // Adjacency multiplies: "2x", "2phi(3)", "(x-1)(x+1)".
                Some(b) if b.is_ascii_digit() || b == b'(' || b.is_ascii_alphabetic() => {
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<IntPoly, ParseError> {
        let base = self.primary()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.bump();
            let at = self.pos_after_ws();
            let e = self.uint()?;
            let e32 = u32::try_from(e)
                .map_err(|_| ParseError {
                    offset: at,
                    message: format!("exponent {e} too large"),
                })?;
            return Ok(base.pow(e32));
        }
        Ok(base)
    }

    fn pos_after_ws(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn primary(&mut self) -> Result<IntPoly, ParseError> {
        self.skip_ws();
        let Some(b) = self.peek() else {
            return err(self.pos, "expected a polynomial term, found end of input");
        };
        if b.is_ascii_digit() {
            let n = self.integer_literal()?;
            return Ok(IntPoly::from_coeffs(vec![n]));
        }
        if b == b'(' {
            self.bump();
            let inner = self.expr()?;
            self.skip_ws();
            if self.peek() != Some(b')') {
                return err(self.pos, "expected ')'");
            }
            self.bump();
            return Ok(inner);
        }
        if b.is_ascii_alphabetic() {
            let start = self.pos;
            while self
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
            {
                self.bump();
            }
            let word = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
            return match word {
                "x" => Ok(IntPoly::x()),
                "phi" => {
                    self.skip_ws();
                    if self.peek() != Some(b'(') {
                        return err(self.pos, "expected '(' after 'phi'");
                    }
                    self.bump();
                    let at = self.pos_after_ws();
                    let d = self.uint()?;
                    self.skip_ws();
                    if self.peek() != Some(b')') {
                        return err(self.pos, "expected ')' after the phi index");
                    }
                    self.bump();
                    cyclotomic(d).map_err(|e| ParseError {
                        offset: at,
                        message: format!("phi({d}): {e}"),
                    })
                }
                other => err(start, format!("unknown symbol '{other}'")),
            };
        }
        err(self.pos, format!("unexpected character '{}'", self.current_char()))
    }

    fn integer_literal(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        BigInt::from_str(digits).map_err(|_| ParseError {
            offset: start,
            message: format!("invalid integer '{digits}'"),
        })
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return err(start, "expected a nonnegative integer");
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits.parse::<u64>().map_err(|_| ParseError {
            offset: start,
            message: format!("integer '{digits}' out of range"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn worked_expressions() {
        assert_eq!(parse_poly("x^4 + x^3 - x - 1").unwrap(), ip(&[-1, -1, 0, 1, 1]));
        assert_eq!(parse_poly("phi(6)").unwrap(), ip(&[1, -1, 1]));
        assert_eq!(
            parse_poly("(x-1)*(x+1)*(x^2+x+1)").unwrap(),
            ip(&[-1, -1, 0, 1, 1])
        );
        assert_eq!(parse_poly("x").unwrap(), IntPoly::x());
        assert_eq!(parse_poly("42").unwrap(), ip(&[42]));
        assert_eq!(parse_poly("-x + 1").unwrap(), ip(&[1, -1]));
        assert_eq!(parse_poly("x^0").unwrap(), IntPoly::one());
    }

    #[test]
    fn multiplication_by_adjacency() {
        assert_eq!(parse_poly("2x^2 - x + 7").unwrap(), ip(&[7, -1, 2]));
        assert_eq!(parse_poly("(x-1)(x+1)").unwrap(), ip(&[-1, 0, 1]));
        assert_eq!(parse_poly("3phi(2)").unwrap(), ip(&[3, 3]));
        assert_eq!(parse_poly("x(x+1)").unwrap(), ip(&[0, 1, 1]));
        assert_eq!(parse_poly("2 x").unwrap(), ip(&[0, 2]));
    }

    #[test]
    fn parse_inverts_canonical_rendering() {
        let samples = [
            ip(&[-1, -1, 0, 1, 1]),
            ip(&[7, -1, 2]),
            ip(&[1, -1]),
            ip(&[0, 0, 0, 1]),
            ip(&[-5]),
            ip(&[0]),
            ip(&[1]),
            ip(&[2, 0, -3, 0, 0, 11]),
            cyclotomic(105).unwrap(),
        ];
        for f in &samples {
            let rendered = f.to_string();
            let back = parse_poly(&rendered).unwrap();
            assert_eq!(&back, f, "round-trip of '{rendered}'");
            // Rendering a parse of a rendering changes nothing.
            assert_eq!(back.to_string(), rendered);
        }
    }

    #[test]
    fn big_literals_are_exact() {
        let f = parse_poly("123456789012345678901234567890 + x").unwrap();
        assert_eq!(
            f.constant_term().to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn nested_negation_and_powers() {
        assert_eq!(parse_poly("-(x - 1)^2").unwrap(), ip(&[-1, 2, -1]));
        assert_eq!(parse_poly("(-x)^3").unwrap(), ip(&[0, 0, 0, -1]));
        assert_eq!(parse_poly("2^10").unwrap(), ip(&[1024]));
        assert_eq!(parse_poly("phi(4)^2").unwrap(), ip(&[1, 0, 2, 0, 1]));
    }

    #[test]
    fn error_offsets_are_exact() {
        assert_eq!(parse_poly("").unwrap_err().offset, 0);
        assert_eq!(parse_poly("   ").unwrap_err().offset, 0);
        assert_eq!(parse_poly("y").unwrap_err().offset, 0);
        assert_eq!(parse_poly("x^4 + y").unwrap_err().offset, 6);
        assert_eq!(parse_poly("x^").unwrap_err().offset, 2);
        assert_eq!(parse_poly("(x").unwrap_err().offset, 2);
        assert_eq!(parse_poly("x )").unwrap_err().offset, 2);
        assert_eq!(parse_poly("phi(x)").unwrap_err().offset, 4);
        assert_eq!(parse_poly("x^18446744073709551616").unwrap_err().offset, 2);
        assert_eq!(parse_poly("x^4294967296").unwrap_err().offset, 2);
        let e = parse_poly("phi(0)").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.message.contains("phi(0)"));
    }

    #[test]
    fn coeff_lists() {
        assert_eq!(parse_coeff_list("-1,-1,0,1,1").unwrap(), ip(&[-1, -1, 0, 1, 1]));
        assert_eq!(parse_coeff_list(" 7 , -1 , 2 ").unwrap(), ip(&[7, -1, 2]));
        assert_eq!(parse_coeff_list("0").unwrap(), IntPoly::zero());
        assert_eq!(parse_coeff_list("1,,2").unwrap_err().offset, 2);
        assert!(parse_coeff_list("1,a").unwrap_err().message.contains("'a'"));
    }
}
