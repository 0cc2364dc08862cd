//! Text syntax for cyclotomic values: sums of terms `a/b*z^k`.
//!
//! `z` stands for the primitive root of unity of the surrounding conductor.
//! Whitespace between tokens is ignored, a bare rational `a` means `a*z^0`,
//! a bare `z` or `z^k` has coefficient one, and exponents are read modulo the
//! conductor.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Cyclotomic;

/// Parse failure with a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for SyntaxError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Result<BigInt, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn rational(&mut self) -> Result<BigRational, SyntaxError> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(SyntaxError {
                    offset: at,
                    message: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn zpow(&mut self, conductor: u32) -> Result<usize, SyntaxError> {
        if !self.eat(b'z') {
            return self.err("expected `z`");
        }
        if !self.eat(b'^') {
            return Ok(1 % conductor as usize);
        }
        let neg = self.eat(b'-');
        let e = self.digits()?;
        let n = BigInt::from(conductor);
        let mut r = e % &n;
        if neg {
            r = (&n - r) % &n;
        }
        Ok(r.try_into().unwrap())
    }
}

/// Parses `text` as an element of `Q(ζ_conductor)`.
pub fn parse_cyclotomic(text: &str, conductor: u32) -> Result<Cyclotomic, SyntaxError> {
    if conductor == 0 {
        return Err(SyntaxError {
            offset: 0,
            message: "conductor must be positive".into(),
        });
    }
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut raw = vec![BigRational::zero(); conductor as usize];
    let mut first = true;
    loop {
        let mut negative = false;
        if !first {
            match lx.peek() {
                None => break,
                Some(b'+') => lx.pos += 1,
                Some(b'-') => {
                    lx.pos += 1;
                    negative = true;
                }
                Some(_) => return lx.err("expected `+` or `-`"),
            }
        }
        // Unary signs, e.g. `+ -1/2*z^3`.
        loop {
            if lx.eat(b'-') {
                negative = !negative;
            } else if !lx.eat(b'+') {
                break;
            }
        }
        let (coeff, exp) = match lx.peek() {
            Some(b'z') => (BigRational::one(), lx.zpow(conductor)?),
            Some(c) if c.is_ascii_digit() => {
                let q = lx.rational()?;
                if lx.eat(b'*') {
                    (q, lx.zpow(conductor)?)
                } else {
                    (q, 0)
                }
            }
            None => return lx.err("unexpected end of input"),
            Some(_) => return lx.err("expected a rational or `z`"),
        };
        raw[exp] += if negative { -coeff } else { coeff };
        first = false;
    }
    Ok(Cyclotomic::reduced(raw, conductor))
}

impl Cyclotomic {
    /// Text form at conductor `m` (a multiple of this value's conductor).
    pub fn to_syntax_at(&self, m: u32) -> String {
        self.lift(m).to_syntax()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn parses_documented_example() {
        let v = parse_cyclotomic("1/2*z^0 + -1/2*z^3", 4).unwrap();
        let expected = &Cyclotomic::from_rational(rat(1, 2))
            - &Cyclotomic::root_of_unity(4, 3).scale(&rat(1, 2));
        assert_eq!(v, expected);
    }

    #[test]
    fn bare_forms_and_whitespace() {
        assert_eq!(parse_cyclotomic("  3 ", 5).unwrap(), Cyclotomic::from_integer(3));
        assert_eq!(
            parse_cyclotomic("z", 3).unwrap(),
            Cyclotomic::root_of_unity(3, 1)
        );
        assert_eq!(
            parse_cyclotomic("- z ^ 2", 3).unwrap(),
            -Cyclotomic::root_of_unity(3, 2)
        );
        assert_eq!(
            parse_cyclotomic("z^-1", 4).unwrap(),
            Cyclotomic::root_of_unity(4, 3)
        );
        assert!(parse_cyclotomic("1+z+z^2", 3).unwrap().is_zero());
    }

    #[test]
    fn positioned_errors() {
        let e = parse_cyclotomic("z^", 3).unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(parse_cyclotomic("", 3).is_err());
        assert!(parse_cyclotomic("1/0", 3).is_err());
        assert!(parse_cyclotomic("1 z", 3).is_err());
        assert!(parse_cyclotomic("1", 0).is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "1/2 - 3*z^1", "-z^2 + 5/7*z^3", "z^1"] {
            let v = parse_cyclotomic(s, 12).unwrap();
            assert_eq!(parse_cyclotomic(&v.to_syntax(), 12).unwrap(), v);
        }
    }
}
