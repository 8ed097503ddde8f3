//! Parser for class expressions such as `L^2 + L`, `1/(L-1)` or `(L^3 - L)/2`.

use std::str::FromStr;

use num_bigint::BigInt;

use super::MClass;
use crate::error::{MotiveError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    L,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Num(digits.parse().expect("ascii digits")));
            }
            'L' | 'l' | '𝕃' => {
                chars.next();
                out.push(Token::L);
            }
            '+' | '-' | '−' | '*' | '·' | '/' | '^' | '(' | ')' => {
                chars.next();
                out.push(match c {
                    '+' => Token::Plus,
                    '-' | '−' => Token::Minus,
                    '*' | '·' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::Open,
                    _ => Token::Close,
                });
            }
            other => {
                return Err(MotiveError::Parse(format!(
                    "unexpected character {other:?}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MClass> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MClass> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc = acc.div(&self.unary()?)?;
                }
                // juxtaposition: 2L, 3(L+1), L(L-1)
                Some(Token::Num(_) | Token::L | Token::Open) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MClass> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MClass> {
        let base = self.primary()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek() == Some(&Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let exp = match self.bump() {
            Some(Token::Num(n)) => {
                i64::try_from(n).map_err(|_| MotiveError::Parse("exponent too large".into()))?
            }
            other => {
                return Err(MotiveError::Parse(format!(
                    "expected exponent, found {other:?}"
                )))
            }
        };
        base.pow(if negative { -exp } else { exp })
    }

    fn primary(&mut self) -> Result<MClass> {
        match self.bump() {
            Some(Token::Num(n)) => Ok(MClass::from_bigint(n)),
            Some(Token::L) => Ok(MClass::lefschetz()),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(MotiveError::Parse("unbalanced parenthesis".into())),
                }
            }
            other => Err(MotiveError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl FromStr for MClass {
    type Err = MotiveError;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(MotiveError::Parse("empty expression".into()));
        }
        let mut parser = Parser { tokens, pos: 0 };
        let value = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(MotiveError::Parse(format!(
                "trailing input after token {}",
                parser.pos
            )));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lring::gl_class;

    #[test]
    fn parses_expressions() {
        let c: MClass = "L^4/((L^2-1)(L^2-L))".parse().unwrap();
        assert_eq!(c, MClass::l_pow(4).div(&gl_class(2)).unwrap());
        let d: MClass = "2L^-1 - 3".parse().unwrap();
        assert_eq!(d.to_string(), "(-3*L + 2)/L");
        assert_eq!("𝕃".parse::<MClass>().unwrap(), MClass::lefschetz());
        assert_eq!(c.to_string().parse::<MClass>().unwrap(), c);
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<MClass>().is_err());
        assert!("L +".parse::<MClass>().is_err());
        assert!("(L".parse::<MClass>().is_err());
        assert!("x".parse::<MClass>().is_err());
        assert!("1/(L-L)".parse::<MClass>().is_err());
    }
}
