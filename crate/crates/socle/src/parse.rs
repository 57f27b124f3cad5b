//! Text parser for polynomial expressions.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*')? factor)*          juxtaposition multiplies
//! factor := base ('^' uint)?
//! base   := literal | variable | '(' expr ')'
//! literal:= uint ('/' uint)?                 a fraction is one literal
//! ```
//!
//! A `/` anywhere else is rejected: the ring has no division. Errors carry
//! the byte position of the offending token.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(Tok, usize)>> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Tok::Num(text.parse().unwrap())
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Tok::Ident(text.to_string())
            }
            other => {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unexpected character {:?}", other as char),
                })
            }
        };
        Ok(Some((tok, start)))
    }
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<(Tok, usize)>,
    idx: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|t| t.1).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|t| t.0.clone());
        self.idx += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.bump();
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(Tok::Slash) => {
                    return Err(Error::Parse {
                        position: self.pos(),
                        message: "division is not supported".into(),
                    })
                }
                _ if self.starts_factor() => {
                    acc = acc.mul(&self.factor()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Parse {
                        position: pos,
                        message: "exponent out of range".into(),
                    })?;
                    return base.pow(e);
                }
                _ => {
                    return Err(Error::Parse {
                        position: pos,
                        message: "expected a nonnegative integer exponent".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => {
                // a fraction literal is Num '/' Num and nothing else
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Num(d)) => {
                            let c =
                                self.ring.field().from_ratio(&n, &d).map_err(|e| Error::Parse {
                                    position: dpos,
                                    message: e.to_string(),
                                })?;
                            Ok(Polynomial::constant(self.ring, c))
                        }
                        _ => Err(Error::Parse {
                            position: dpos,
                            message: "division is not supported".into(),
                        }),
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n)))
                }
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::variable(self.ring, i)),
                None => Err(Error::Parse {
                    position: pos,
                    message: format!("unknown variable name {name}"),
                }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse {
                        position: self.pos().min(self.len),
                        message: "expected closing parenthesis".into(),
                    }),
                }
            }
            Some(Tok::Slash) => Err(Error::Parse {
                position: pos,
                message: "division is not supported".into(),
            }),
            other => Err(Error::Parse {
                position: pos,
                message: match other {
                    Some(t) => format!("unexpected token {t:?}"),
                    None => "unexpected end of input".into(),
                },
            }),
        }
    }
}

/// Parses one polynomial in the given ring.
pub fn parse_polynomial(ring: &Arc<PolyRing>, input: &str) -> Result<Polynomial> {
    let toks = Lexer::tokens(input)?;
    if toks.is_empty() {
        return Err(Error::Parse { position: 0, message: "empty input".into() });
    }
    let mut p = Parser { ring, toks, idx: 0, len: input.len() };
    let poly = p.expr()?;
    if p.idx < p.toks.len() {
        return Err(Error::Parse {
            position: p.pos(),
            message: "trailing input after expression".into(),
        });
    }
    Ok(poly)
}

/// Parses a comma-separated generator list. Empty input (or only
/// whitespace) is the empty list, i.e. the zero ideal.
pub fn parse_generators(ring: &Arc<PolyRing>, input: &str) -> Result<Vec<Polynomial>> {
    if input.trim().is_empty() {
        return Ok(Vec::new());
    }
    input.split(',').map(|chunk| parse_polynomial(ring, chunk)).collect()
}

/// Collects the identifiers of an expression list in sorted order; the CLI
/// uses this to infer variable names when none are given.
pub fn infer_variables(input: &str) -> Result<Vec<String>> {
    let toks = Lexer::tokens(&input.replace(',', " "))?;
    let mut names: Vec<String> = toks
        .into_iter()
        .filter_map(|(t, _)| match t {
            Tok::Ident(name) => Some(name),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::monomial::MonomialOrder;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(
            vec!["x".into(), "y".into()],
            FieldSpec::Rationals,
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    #[test]
    fn parses_signs_parens_and_powers() {
        let r = ring2();
        let f = parse_polynomial(&r, "-(x - y)^2 + 2x*y").unwrap();
        assert_eq!(f.render(), "-x^2 + 4*x*y - y^2");
    }

    #[test]
    fn fraction_literal_is_one_token_chain() {
        let r = ring2();
        let f = parse_polynomial(&r, "3/4 x^2").unwrap();
        assert_eq!(f.render(), "3/4*x^2");
    }

    #[test]
    fn division_between_expressions_is_rejected_with_position() {
        let r = ring2();
        let err = parse_polynomial(&r, "x / 2").unwrap_err();
        match err {
            Error::Parse { position, message } => {
                assert_eq!(position, 2);
                assert!(message.contains("division"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_is_rejected_with_position() {
        let r = ring2();
        let err = parse_polynomial(&r, "x + z^2").unwrap_err();
        match err {
            Error::Parse { position, message } => {
                assert_eq!(position, 4);
                assert!(message.contains("unknown variable"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn round_trip_through_render() {
        let r = ring2();
        for src in ["x^2 - 3*x*y + 1/2", "y^3", "-x - y", "7"] {
            let f = parse_polynomial(&r, src).unwrap();
            let g = parse_polynomial(&r, &f.render()).unwrap();
            assert_eq!(f, g);
        }
    }

    #[test]
    fn generator_lists_split_on_commas() {
        let r = ring2();
        let gens = parse_generators(&r, "x^2, x*y + y^2").unwrap();
        assert_eq!(gens.len(), 2);
        assert!(parse_generators(&r, "  ").unwrap().is_empty());
    }

    #[test]
    fn infer_variables_sorts_and_dedups() {
        assert_eq!(infer_variables("y^2 + x*y, x^3").unwrap(), vec!["x", "y"]);
    }
}
