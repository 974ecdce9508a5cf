//! Expression mini-language for algebra elements.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*"? unary)*          juxtaposition multiplies
//! unary  := "-" unary | atom ("^" int)?
//! atom   := q | p | q' | p' | i | rational | "(" expr ")"
//! ```
//!
//! Rationals are `n`, `n/d`, or finite decimals. Errors carry the byte
//! offset of the offending token.

use super::algebra::{AlgebraElement, Generator};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, CRational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Gen(Generator),
    I,
    Num(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut k = 0;
    let is_prime = |c: char| c == '\'' || c == '′';
    while k < chars.len() {
        let (pos, c) = chars[k];
        match c {
            c if c.is_whitespace() => k += 1,
            'q' | 'p' => {
                let primed = chars.get(k + 1).is_some_and(|&(_, n)| is_prime(n));
                let g = match (c, primed) {
                    ('q', false) => Generator::Q,
                    ('p', false) => Generator::P,
                    ('q', true) => Generator::QPrime,
                    _ => Generator::PPrime,
                };
                out.push((pos, Tok::Gen(g)));
                k += if primed { 2 } else { 1 };
            }
            'i' => {
                out.push((pos, Tok::I));
                k += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                k += 1;
            }
            '-' => {
                out.push((pos, Tok::Minus));
                k += 1;
            }
            '*' => {
                out.push((pos, Tok::Star));
                k += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                k += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                k += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                k += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = k;
                while k < chars.len() && (chars[k].1.is_ascii_digit() || chars[k].1 == '.' || chars[k].1 == '/') {
                    k += 1;
                }
                let text: String = chars[start..k].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Num(text)));
            }
            other => {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("unsupported token `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Gen(_) | Tok::I | Tok::Num(_) | Tok::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<AlgebraElement> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.err("expected an integer exponent");
            };
            let Ok(e) = n.parse::<u32>() else {
                return self.err(format!("invalid exponent `{n}`"));
            };
            self.at += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of expression");
        };
        let pos = self.pos();
        self.at += 1;
        match tok {
            Tok::Gen(g) => Ok(AlgebraElement::generator(g)),
            Tok::I => Ok(AlgebraElement::scalar(CRational::i())),
            Tok::Num(text) => {
                let r = parse_rational(&text).map_err(|_| Error::Parse {
                    position: pos,
                    message: format!("invalid rational `{text}`"),
                })?;
                Ok(AlgebraElement::scalar(CRational::real(r)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            other => {
                self.at -= 1;
                self.err(format!("unexpected token {other:?}"))
            }
        }
    }
}

/// Parses and normal-orders an expression.
pub fn parse_expr(src: &str) -> Result<AlgebraElement> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccr::algebra::{normal_order, Generator::*};
    use crate::scalar::rat;

    #[test]
    fn juxtaposition_multiplies() {
        assert_eq!(parse_expr("q p q p").unwrap(), normal_order(&[Q, P, Q, P]).unwrap());
        assert_eq!(parse_expr("q*p'").unwrap(), normal_order(&[Q, PPrime]).unwrap());
    }

    #[test]
    fn coefficients_and_groups() {
        let e = parse_expr("3/2 i (q + p) - 2").unwrap();
        let want = &(&AlgebraElement::q() + &AlgebraElement::p()).scale(&CRational::new(rat(0, 1), rat(3, 2)))
            - &AlgebraElement::scalar(CRational::from(2));
        assert_eq!(e, want);
        assert_eq!(parse_expr("q^3").unwrap(), normal_order(&[Q, Q, Q]).unwrap());
        assert_eq!(parse_expr("q′ p′").unwrap(), normal_order(&[QPrime, PPrime]).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("q + x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse_expr("(q p") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("q +").is_err());
        assert!(parse_expr("1/0").is_err());
    }
}
