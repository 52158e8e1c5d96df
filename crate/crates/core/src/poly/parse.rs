use std::fmt;

use num_bigint::BigInt;

use crate::arith::{Field, Ring};

use super::{Poly, PolyRing};

/// A syntax or resolution error at a character offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                offset: i,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a PolyRing<F>,
    constants: &'a [(&'a str, F::Elem)],
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<F: Field> Parser<'_, F> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Sym(s))) if *s == c)
    }

    fn expr(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        let r = self.ring;
        let mut acc = if self.peek_sym('-') {
            self.pos += 1;
            r.neg(&self.term()?)
        } else {
            if self.peek_sym('+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            if self.peek_sym('+') {
                self.pos += 1;
                acc = r.add(&acc, &self.term()?);
            } else if self.peek_sym('-') {
                self.pos += 1;
                acc = r.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        let r = self.ring;
        let mut acc = self.unary()?;
        loop {
            if self.peek_sym('*') {
                self.pos += 1;
                acc = r.mul(&acc, &self.unary()?);
            } else if self.peek_sym('/') {
                self.pos += 1;
                let at = self.offset();
                let d = self.unary()?;
                let c = match r.as_constant(&d) {
                    Some(c) => c,
                    None => {
                        return Err(ParseError {
                            offset: at,
                            message: "division only by constants".into(),
                        })
                    }
                };
                let inv = r.field().inv(&c).map_err(|_| ParseError {
                    offset: at,
                    message: "division by zero".into(),
                })?;
                acc = r.scale(&inv, &acc);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        if self.peek_sym('-') {
            self.pos += 1;
            return Ok(self.ring.neg(&self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        let base = self.atom()?;
        if self.peek_sym('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some((_, Tok::Num(n))) => {
                    let e: u64 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    Ok(self.ring.pow(&base, e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        let r = self.ring;
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                Ok(r.constant(r.field().from_bigint(&n)))
            }
            Some((at, Tok::Ident(name))) => {
                self.pos += 1;
                if let Some(i) = r.var_index(&name) {
                    Ok(r.var(i))
                } else if let Some((_, c)) = self.constants.iter().find(|(n, _)| *n == name) {
                    Ok(r.constant(c.clone()))
                } else {
                    Err(ParseError {
                        offset: at,
                        message: format!("unknown name '{name}'"),
                    })
                }
            }
            Some((_, Tok::Sym('('))) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.peek_sym(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, a name or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `+ - * / ^ ( )` expressions over the ring's variables plus the
/// named constants (e.g. the generator `t` of an extension field). Division
/// is allowed by nonzero constants only.
pub fn parse_poly<F: Field>(ring: &PolyRing<F>, text: &str, constants: &[(&str, F::Elem)]) -> Result<Poly<F::Elem>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        ring,
        constants,
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{BaseField, ExtensionField};
    use crate::poly::MonomialOrder;

    #[test]
    fn parses_and_prints_back() {
        let r = PolyRing::new(BaseField::Rationals, vec!["x".into(), "y".into()], MonomialOrder::GrevLex);
        for s in ["x*y - 1", "x^2 + 2*x*y - (1/2)*y", "-x^3 + 7", "0", "-(3/4)"] {
            let p = parse_poly(&r, s, &[]).unwrap();
            assert_eq!(r.display(&p), s);
        }
        assert_eq!(parse_poly(&r, "(x+1)^2/2", &[]).unwrap(), parse_poly(&r, "x^2/2 + x + 1/2", &[]).unwrap());
    }

    #[test]
    fn extension_constants() {
        let f9 = ExtensionField::galois_field(3, 2).unwrap();
        let r = PolyRing::new(f9.clone(), vec!["x".into()], MonomialOrder::GrevLex);
        let c = [("t", f9.generator())];
        let p = parse_poly(&r, "(t + 1)*x + t^2", &c).unwrap();
        assert_eq!(r.display(&p), "(t + 1)*x + 2");
        assert_eq!(parse_poly(&r, &r.display(&p), &c).unwrap(), p);
    }

    #[test]
    fn errors_have_offsets() {
        let r = PolyRing::new(BaseField::Rationals, vec!["x".into()], MonomialOrder::GrevLex);
        assert_eq!(parse_poly(&r, "x + z", &[]).unwrap_err().offset, 4);
        assert_eq!(parse_poly(&r, "x / x", &[]).unwrap_err().offset, 4);
        assert_eq!(parse_poly(&r, "x / 0", &[]).unwrap_err().message, "division by zero");
        assert_eq!(parse_poly(&r, "(x + 1", &[]).unwrap_err().offset, 6);
        assert_eq!(parse_poly(&r, "x $", &[]).unwrap_err().offset, 2);
        assert!(parse_poly(&r, "x^y", &[]).is_err());
    }
}
