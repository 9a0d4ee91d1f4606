//! Text syntax for polynomials: `3*x1^2*x2 - x3 + 5`, `(3/2)*x1 - x2^2`.
//!
//! Variables are `x1..xk`; when `k <= 4` the letters `x, y, z, w` name
//! `x1..x4` as well. Coefficients are rationals and are mapped into the base
//! ring later, when the presentation is built.

use hilbert_lambda::arith::Rational;
use hilbert_lambda::poly::Poly;
use hilbert_lambda::ring::RatField;
use num_traits::Zero;
use thiserror::Error;

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {column}: {msg}")]
pub struct PolyParseError {
    /// 1-based character column inside the polynomial text.
    pub column: usize,
    pub msg: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    k: usize,
}

pub fn parse_poly(src: &str, k: usize) -> Result<Poly<Rational>, PolyParseError> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        k,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty polynomial"));
    }
    let out = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(out),
        Some(c) => Err(p.error(format!("unexpected {c:?}"))),
    }
}

impl Parser {
    fn error(&self, msg: impl Into<String>) -> PolyParseError {
        PolyParseError {
            column: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly<Rational>, PolyParseError> {
        let q = RatField;
        let mut acc = Poly::zero(self.k);
        let mut first = true;
        loop {
            self.skip_ws();
            let neg = if self.eat('-') {
                true
            } else {
                // a leading '+' is accepted, later terms need a sign
                let plus = self.eat('+');
                if !first && !plus {
                    return Ok(acc);
                }
                false
            };
            let t = self.term()?;
            acc = if neg { acc.sub(&q, &t) } else { acc.add(&q, &t) };
            first = false;
        }
    }

    fn term(&mut self) -> Result<Poly<Rational>, PolyParseError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let f = self.power()?;
            acc = acc.mul(&RatField, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly<Rational>, PolyParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an exponent after '^'"));
        }
        let e: u32 = match digits.parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => {
                self.pos = start;
                return Err(self.error(format!("exponent {digits} is too large")));
            }
        };
        Ok(base.pow(&RatField, e))
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn atom(&mut self) -> Result<Poly<Rational>, PolyParseError> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            return self.number();
        }
        if c.is_ascii_alphabetic() {
            return self.variable();
        }
        Err(self.error(format!("unexpected {c:?}")))
    }

    fn number(&mut self) -> Result<Poly<Rational>, PolyParseError> {
        let num = self.digits();
        let mut q = Rational::from_integer(num.parse().expect("ascii digits"));
        // `a/b` only between two literals; division by polynomials is not a thing here
        let save = self.pos;
        if self.eat('/') {
            self.skip_ws();
            let den = self.digits();
            if den.is_empty() {
                return Err(self.error("expected a denominator after '/'"));
            }
            let d: num_bigint::BigInt = den.parse().expect("ascii digits");
            if d.is_zero() {
                self.pos = save;
                return Err(self.error("division by zero"));
            }
            q /= Rational::from_integer(d);
        }
        Ok(Poly::constant(&RatField, self.k, q))
    }

    fn variable(&mut self) -> Result<Poly<Rational>, PolyParseError> {
        let start = self.pos;
        let mut name = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_alphanumeric) {
            name.push(c);
            self.pos += 1;
        }
        let idx = match name.as_str() {
            "x" | "y" | "z" | "w" if self.k <= 4 => Some(match name.as_str() {
                "x" => 0,
                "y" => 1,
                "z" => 2,
                _ => 3,
            }),
            _ => name
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1 && !name[1..].starts_with('0'))
                .map(|i| i - 1),
        };
        match idx {
            Some(i) if i < self.k => Ok(Poly::var(&RatField, self.k, i)),
            _ => {
                self.pos = start;
                Err(self.error(format!(
                    "unknown variable {name:?} (ring has {} variable{})",
                    self.k,
                    if self.k == 1 { "" } else { "s" }
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_display() {
        for s in [
            "3*x1^2*x2 - x3 + 5",
            "x1^2 + 2*x1 + 1",
            "-x1 + (3/2)*x2",
            "(-1/2)*x1",
            "7",
            "0",
        ] {
            let p = parse_poly(s, 3).unwrap();
            let again = parse_poly(&p.to_string(), 3).unwrap();
            assert_eq!(p, again, "{s}");
        }
        assert_eq!(parse_poly("3*x1^2*x2 - x3 + 5", 3).unwrap().to_string(), "3*x1^2*x2 - x3 + 5");
    }

    #[test]
    fn letters_and_products() {
        let p = parse_poly("(x + y)^2 - x*y", 2).unwrap();
        assert_eq!(p.to_string(), "x1^2 + x1*x2 + x2^2");
        assert_eq!(parse_poly("2x1", 1).unwrap_err().column, 2);
    }

    #[test]
    fn error_columns() {
        let e = parse_poly("x1 + x4", 3).unwrap_err();
        assert_eq!(e.column, 6);
        assert!(e.msg.contains("x4"));
        assert_eq!(parse_poly("x1 +", 1).unwrap_err().column, 5);
        assert_eq!(parse_poly("x1^", 1).unwrap_err().column, 4);
        assert_eq!(parse_poly("(x1", 1).unwrap_err().column, 4);
        assert_eq!(parse_poly("1/0", 1).unwrap_err().column, 2);
        assert_eq!(parse_poly("", 1).unwrap_err().column, 1);
        assert_eq!(parse_poly("x01", 2).unwrap_err().column, 1);
    }
}
