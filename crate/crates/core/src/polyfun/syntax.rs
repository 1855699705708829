//! Recursive-descent parser for the expression syntax.

use std::str::FromStr;

use super::expr::{Expr, FunctorExpr, SymExpr};
use crate::combin::{Composition, Partition};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax { pos, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return if self.pos == self.src.len() {
                err(self.pos, "unexpected end of input")
            } else {
                err(self.pos, format!("unexpected character '{}'", self.src[self.pos] as char))
            };
        }
        Ok((start, std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(&x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            None => err(self.pos, format!("unbalanced parenthesis: expected '{}'", c as char)),
            Some(&x) => err(self.pos, format!("expected '{}', found '{}'", c as char, x as char)),
        }
    }

    fn peek_is(&mut self, c: u8) -> bool {
        self.skip_ws();
        self.src.get(self.pos) == Some(&c)
    }

    fn number_list(&mut self) -> Result<(usize, Vec<usize>)> {
        self.expect(b'(')?;
        let start = self.pos;
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let s = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if s == self.pos {
                return err(self.pos, "expected a non-negative integer");
            }
            let text = std::str::from_utf8(&self.src[s..self.pos]).expect("ascii");
            out.push(text.parse().or_else(|_| err(s, "integer out of range"))?);
            if self.peek_is(b',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(b')')?;
        Ok((start, out))
    }

    fn composition(&mut self) -> Result<Composition> {
        Ok(Composition(self.number_list()?.1))
    }

    fn partition(&mut self) -> Result<Partition> {
        let (start, parts) = self.number_list()?;
        Partition::new(parts).or_else(|e| err(start, e.to_string()))
    }

    fn expr(&mut self) -> Result<Expr> {
        let save = self.pos;
        let (_, id) = self.ident()?;
        self.pos = save;
        match id {
            "triv" | "sgn" | "reg" | "M" | "D" | "sdual" | "kron" | "F" => Ok(Expr::Sym(self.sym()?)),
            _ => Ok(Expr::Functor(self.functor()?)),
        }
    }

    fn functor(&mut self) -> Result<FunctorExpr> {
        let (start, id) = self.ident()?;
        let e = match id {
            "Gamma" => FunctorExpr::Gamma(self.composition()?),
            "S" => FunctorExpr::Sym(self.composition()?),
            "Lambda" => FunctorExpr::Ext(self.composition()?),
            "Weyl" => FunctorExpr::Weyl(self.partition()?),
            "L" => FunctorExpr::Simple(self.partition()?),
            "P" => FunctorExpr::ProjCover(self.partition()?),
            "Q" => FunctorExpr::TruncSym,
            "T" => FunctorExpr::TensorPower,
            "dual" | "mdual" | "Gt" | "Gh" => {
                self.expect(b'(')?;
                let e = match id {
                    "dual" => FunctorExpr::KuhnDual(Box::new(self.functor()?)),
                    "mdual" => FunctorExpr::MonDual(Box::new(self.functor()?)),
                    "Gt" => FunctorExpr::GTensor(Box::new(self.sym()?)),
                    _ => FunctorExpr::GHom(Box::new(self.sym()?)),
                };
                self.expect(b')')?;
                e
            }
            "tensor" | "ihom" => {
                self.expect(b'(')?;
                let a = self.functor()?;
                self.expect(b',')?;
                let b = self.functor()?;
                self.expect(b')')?;
                let e = if id == "tensor" {
                    FunctorExpr::ITensor(Box::new(a), Box::new(b))
                } else {
                    FunctorExpr::IHom(Box::new(a), Box::new(b))
                };
                e.degree().or_else(|e| err(start, e.to_string()))?;
                e
            }
            other => return err(start, format!("unknown functor '{other}'")),
        };
        Ok(e)
    }

    fn sym(&mut self) -> Result<SymExpr> {
        let (start, id) = self.ident()?;
        let s = match id {
            "triv" => SymExpr::Trivial,
            "sgn" => SymExpr::Sign,
            "reg" => SymExpr::Regular,
            "M" => SymExpr::Perm(self.composition()?),
            "D" => SymExpr::Simple(self.partition()?),
            "sdual" | "F" => {
                self.expect(b'(')?;
                let s = if id == "F" {
                    SymExpr::Schur(Box::new(self.functor()?))
                } else {
                    SymExpr::Dual(Box::new(self.sym()?))
                };
                self.expect(b')')?;
                s
            }
            "kron" => {
                self.expect(b'(')?;
                let a = self.sym()?;
                self.expect(b',')?;
                let b = self.sym()?;
                self.expect(b')')?;
                let s = SymExpr::Kron(Box::new(a), Box::new(b));
                s.degree().or_else(|e| err(start, e.to_string()))?;
                s
            }
            other => return err(start, format!("unknown module '{other}'")),
        };
        Ok(s)
    }
}

/// Parses a functor or symmetric-group module expression.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return err(p.pos, "trailing input");
    }
    Ok(e)
}

impl FromStr for FunctorExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse_expr(s)? {
            Expr::Functor(e) => Ok(e),
            Expr::Sym(_) => err(0, "expected a functor expression"),
        }
    }
}

impl FromStr for SymExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse_expr(s)? {
            Expr::Sym(e) => Ok(e),
            Expr::Functor(_) => err(0, "expected a symmetric-group module expression"),
        }
    }
}
