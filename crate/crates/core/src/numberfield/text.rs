//! Text form of field elements.
//!
//! Grammar (whitespace ignored, `a` is the field generator):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/')? factor)*      -- juxtaposition multiplies
//! factor := ('+' | '-') factor | power
//! power  := atom ('^' uint)?
//! atom   := uint | 'a' | '(' expr ')'
//! ```
//!
//! The canonical output of [`format_element`] lists powers of `a` from the
//! highest down, e.g. `-1/15*a + 1/15`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FieldElement, FieldSpec, Rational};
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 4096;

pub fn format_element(u: &FieldElement) -> String {
    let mut out = String::new();
    for (k, c) in u.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let term = if k == 0 {
            c.to_string()
        } else {
            let base = if k == 1 { "a".to_string() } else { format!("a^{k}") };
            if c.is_one() {
                base
            } else if *c == -Rational::one() {
                format!("-{base}")
            } else {
                format!("{c}*{base}")
            }
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn parse_element(text: &str, spec: &Arc<FieldSpec>) -> Result<FieldElement> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        spec,
        end: text.len(),
    };
    let value = parser.expr()?;
    if let Some(tok) = parser.tokens.get(parser.pos) {
        return Err(syntax(tok.offset, format!("unexpected {:?}", tok.kind)));
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Int(BigInt),
    Gen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

#[derive(Debug)]
struct Token {
    kind: Kind,
    offset: usize,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(offset, ch)) = chars.peek() {
        let kind = match ch {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '0'..='9' => {
                let mut end = offset;
                while let Some(&(i, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = i + d.len_utf8();
                    chars.next();
                }
                let value: BigInt = text[offset..end].parse().expect("ascii digits");
                tokens.push(Token {
                    kind: Kind::Int(value),
                    offset,
                });
                continue;
            }
            'a' => Kind::Gen,
            '+' => Kind::Plus,
            '-' | '\u{2212}' => Kind::Minus,
            '*' => Kind::Star,
            '/' => Kind::Slash,
            '^' => Kind::Caret,
            '(' => Kind::Open,
            ')' => Kind::Close,
            other => return Err(syntax(offset, format!("unexpected character {other:?}"))),
        };
        chars.next();
        tokens.push(Token { kind, offset });
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    spec: &'a Arc<FieldSpec>,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Kind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Kind::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Kind::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Kind::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Kind::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let divisor = self.factor()?;
                    let inv = divisor
                        .inv()
                        .map_err(|_| syntax(at, "division by zero"))?;
                    acc = &acc * &inv;
                }
                Some(Kind::Int(_) | Kind::Gen | Kind::Open) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement> {
        match self.peek() {
            Some(Kind::Minus) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Kind::Plus) => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if self.peek() != Some(&Kind::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        match self.peek() {
            Some(Kind::Int(e)) => {
                let exp = u32::try_from(e)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| syntax(at, format!("exponent overflow (max {MAX_EXPONENT})")))?;
                self.pos += 1;
                Ok(base.pow(exp))
            }
            _ => Err(syntax(at, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<FieldElement> {
        let at = self.offset();
        let Some(kind) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match kind {
            Kind::Int(v) => Ok(FieldElement::from_rational(
                self.spec,
                Rational::from_integer(v),
            )),
            Kind::Gen => Ok(FieldElement::generator(self.spec)),
            Kind::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Kind::Close) {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(syntax(at, format!("unexpected {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{cyclotomic_spec, rational};

    fn q6() -> Arc<FieldSpec> {
        cyclotomic_spec(6).unwrap()
    }

    fn pair(c0: Rational, c1: Rational) -> FieldElement {
        FieldElement::from_coeffs(&q6(), vec![c0, c1]).unwrap()
    }

    #[test]
    fn parses_reference_strings() {
        let k = q6();
        assert_eq!(
            parse_element("a^5", &k).unwrap(),
            pair(rational(1, 1), rational(-1, 1))
        );
        assert_eq!(
            parse_element("-3379/225", &k).unwrap(),
            FieldElement::from_rational(&k, rational(-3379, 225))
        );
        assert_eq!(
            parse_element("(-1/15)*a + 1/15", &k).unwrap(),
            pair(rational(1, 15), rational(-1, 15))
        );
        assert_eq!(
            parse_element("-(1/15)a + 1/15", &k).unwrap(),
            pair(rational(1, 15), rational(-1, 15))
        );
        assert_eq!(
            parse_element("15a", &k).unwrap(),
            pair(rational(0, 1), rational(15, 1))
        );
        assert_eq!(
            parse_element("−15a + 15", &k).unwrap(),
            pair(rational(15, 1), rational(-15, 1))
        );
        assert_eq!(
            parse_element("2a^2", &k).unwrap(),
            pair(rational(-2, 1), rational(2, 1))
        );
    }

    #[test]
    fn formats_canonically() {
        let k = q6();
        assert_eq!(format_element(&FieldElement::zero(&k)), "0");
        assert_eq!(format_element(&pair(rational(1, 1), rational(-1, 1))), "-a + 1");
        assert_eq!(
            format_element(&FieldElement::from_rational(&k, rational(-3379, 225))),
            "-3379/225"
        );
        assert_eq!(
            format_element(&pair(rational(1, 15), rational(-1, 15))),
            "-1/15*a + 1/15"
        );
        assert_eq!(format_element(&pair(rational(0, 1), rational(1, 1))), "a");
        assert_eq!(format_element(&pair(rational(-2, 1), rational(3, 7))), "3/7*a - 2");
    }

    #[test]
    fn reports_error_positions() {
        let k = q6();
        match parse_element("1 + * a", &k) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_element("(a + 1", &k) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_element("", &k).is_err());
        assert!(parse_element("b", &k).is_err());
        assert!(parse_element("a^-1", &k).is_err());
        assert!(parse_element("1/0", &k).is_err());
    }

    #[test]
    fn rejects_exponent_overflow() {
        let k = q6();
        assert!(parse_element("a^99999999999999999999", &k).is_err());
        assert!(parse_element("2^5000", &k).is_err());
        assert!(parse_element("a^4096", &k).is_ok());
    }
}
