//! Polynomial text grammar: `3*x1^2*x2 + eta1*eta2 - (x + y)^2`.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer | name | '(' expr ')'
//! ```
//! Whitespace is ignored; integers are reduced mod p.

use super::groebner::{normalize, MonomialOrder, RawPoly};
use super::{raw_mul, Generator};
use crate::error::{Error, Result};
use crate::field::Field;

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Name(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
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
            let n = s.parse::<i64>().map_err(|_| {
                Error::Parse(format!("integer {s} out of range at column {}", start + 1))
            })?;
            out.push((Token::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Name(chars[start..i].iter().collect()), start));
        } else if "+-*^()".contains(c) {
            out.push((Token::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} at column {}",
                i + 1
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    gens: &'a [Generator],
    tokens: Vec<(Token, usize)>,
    pos: usize,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |t| t.1) + 1
    }

    fn constant(&self, c: i64) -> RawPoly {
        normalize(
            self.field,
            MonomialOrder::GrevLex,
            vec![(vec![0; self.gens.len()], self.field.from_int(c))],
        )
    }

    fn add(&self, a: RawPoly, b: RawPoly, negate: bool) -> RawPoly {
        let mut terms = a;
        for (m, c) in b {
            terms.push((m, if negate { self.field.neg(c) } else { c }));
        }
        normalize(self.field, MonomialOrder::GrevLex, terms)
    }

    fn expr(&mut self) -> Result<RawPoly> {
        let mut acc = if self.peek() == Some(&Token::Sym('-')) {
            self.pos += 1;
            let t = self.term()?;
            self.add(vec![], t, true)
        } else {
            self.term()?
        };
        while let Some(Token::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = self.add(acc, t, c == '-');
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RawPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Sym('*')) {
            self.pos += 1;
            let f = self.factor()?;
            acc = raw_mul(self.field, self.gens, &acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Sym('^')) {
            self.pos += 1;
            let col = self.column();
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    self.pos += 1;
                    let mut acc = self.constant(1);
                    for _ in 0..e {
                        acc = raw_mul(self.field, self.gens, &acc, &base);
                    }
                    Ok(acc)
                }
                _ => Err(Error::Parse(format!("expected exponent at column {col}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RawPoly> {
        let col = self.column();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(self.constant(n))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                let idx = self
                    .gens
                    .iter()
                    .position(|g| g.name == name)
                    .ok_or_else(|| {
                        Error::Parse(format!("unknown generator {name:?} at column {col}"))
                    })?;
                let mut m = vec![0; self.gens.len()];
                m[idx] = 1;
                Ok(vec![(m, 1)])
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Sym(')')) {
                    return Err(Error::Parse(format!(
                        "expected ')' at column {}",
                        self.column()
                    )));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(Error::Parse(format!("unexpected {t:?} at column {col}"))),
            None => Err(Error::Parse(format!(
                "unexpected end of input at column {col}"
            ))),
        }
    }
}

/// Parse into the free graded-commutative algebra on `gens` (no relation reduction).
pub(crate) fn parse_raw(field: &Field, gens: &[Generator], text: &str) -> Result<RawPoly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut parser = Parser {
        field,
        gens,
        tokens,
        pos: 0,
        len: text.chars().count(),
    };
    let out = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at column {}",
            parser.column()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(names: &[&str]) -> Vec<Generator> {
        names
            .iter()
            .map(|n| Generator {
                name: n.to_string(),
                degree: 1,
                odd: false,
            })
            .collect()
    }

    #[test]
    fn parses_spec_example() {
        let f = Field::prime(5).unwrap();
        let g = gens(&["x1", "x2", "eta1", "eta2"]);
        let p = parse_raw(&f, &g, "3*x1^2*x2 + eta1*eta2").unwrap();
        assert_eq!(p.len(), 2);
        let q = parse_raw(&f, &g, " eta2 * eta1+3 *x2*x1 ^2").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let f = Field::prime(3).unwrap();
        let g = gens(&["x"]);
        assert!(parse_raw(&f, &g, "3*x").unwrap().is_empty());
        assert_eq!(parse_raw(&f, &g, "-x").unwrap(), vec![(vec![1], 2)]);
        assert_eq!(
            parse_raw(&f, &g, "(x+1)^3").unwrap(),
            parse_raw(&f, &g, "x^3+1").unwrap()
        );
    }

    #[test]
    fn errors_carry_columns() {
        let f = Field::prime(2).unwrap();
        let g = gens(&["x"]);
        let err = parse_raw(&f, &g, "x + y").unwrap_err();
        assert!(err.to_string().contains("column 5"), "{err}");
        assert!(parse_raw(&f, &g, "x +").is_err());
        assert!(parse_raw(&f, &g, "x $").is_err());
        assert!(parse_raw(&f, &g, "(x").is_err());
    }
}
