//! Construction expressions for strict polynomial functors and for
//! symmetric-group modules, with their surface syntax.

use std::fmt;

use crate::combin::{Composition, Partition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FunctorExpr {
    Gamma(Composition),
    Sym(Composition),
    Ext(Composition),
    TensorPower,
    TruncSym,
    Weyl(Partition),
    Simple(Partition),
    ProjCover(Partition),
    KuhnDual(Box<FunctorExpr>),
    ITensor(Box<FunctorExpr>, Box<FunctorExpr>),
    IHom(Box<FunctorExpr>, Box<FunctorExpr>),
    MonDual(Box<FunctorExpr>),
    GTensor(Box<SymExpr>),
    GHom(Box<SymExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SymExpr {
    Trivial,
    Sign,
    Regular,
    Perm(Composition),
    Simple(Partition),
    Dual(Box<SymExpr>),
    Kron(Box<SymExpr>, Box<SymExpr>),
    Schur(Box<FunctorExpr>),
}

/// Either kind of expression, as accepted at the top level of the syntax.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Functor(FunctorExpr),
    Sym(SymExpr),
}

fn merge(a: Option<usize>, b: Option<usize>) -> Result<Option<usize>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::DegreeMismatch(x, y)),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        _ => Ok(None),
    }
}

impl FunctorExpr {
    /// Degree fixed by the expression, `None` when every degree fits.
    pub fn degree(&self) -> Result<Option<usize>> {
        use FunctorExpr::*;
        match self {
            Gamma(c) | Sym(c) | Ext(c) => Ok(Some(c.degree())),
            Weyl(l) | Simple(l) | ProjCover(l) => Ok(Some(l.degree())),
            TensorPower | TruncSym => Ok(None),
            KuhnDual(e) | MonDual(e) => e.degree(),
            ITensor(a, b) | IHom(a, b) => merge(a.degree()?, b.degree()?),
            GTensor(s) | GHom(s) => s.degree(),
        }
    }
}

impl SymExpr {
    pub fn degree(&self) -> Result<Option<usize>> {
        use SymExpr::*;
        match self {
            Trivial | Sign | Regular => Ok(None),
            Perm(c) => Ok(Some(c.degree())),
            Simple(l) => Ok(Some(l.degree())),
            Dual(s) => s.degree(),
            Kron(a, b) => merge(a.degree()?, b.degree()?),
            Schur(e) => e.degree(),
        }
    }
}

impl Expr {
    pub fn degree(&self) -> Result<Option<usize>> {
        match self {
            Expr::Functor(e) => e.degree(),
            Expr::Sym(s) => s.degree(),
        }
    }
}

fn parts(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctorExpr::*;
        let (head, xs): (&str, &[usize]) = match self {
            Gamma(c) => ("Gamma", c.parts()),
            Sym(c) => ("S", c.parts()),
            Ext(c) => ("Lambda", c.parts()),
            Weyl(l) => ("Weyl", l.parts()),
            Simple(l) => ("L", l.parts()),
            ProjCover(l) => ("P", l.parts()),
            TensorPower => return write!(f, "T"),
            TruncSym => return write!(f, "Q"),
            KuhnDual(e) => return write!(f, "dual({e})"),
            MonDual(e) => return write!(f, "mdual({e})"),
            ITensor(a, b) => return write!(f, "tensor({a},{b})"),
            IHom(a, b) => return write!(f, "ihom({a},{b})"),
            GTensor(s) => return write!(f, "Gt({s})"),
            GHom(s) => return write!(f, "Gh({s})"),
        };
        write!(f, "{head}(")?;
        parts(f, xs)?;
        write!(f, ")")
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SymExpr::*;
        match self {
            Trivial => write!(f, "triv"),
            Sign => write!(f, "sgn"),
            Regular => write!(f, "reg"),
            Perm(c) => {
                write!(f, "M(")?;
                parts(f, c.parts())?;
                write!(f, ")")
            }
            Simple(l) => {
                write!(f, "D(")?;
                parts(f, l.parts())?;
                write!(f, ")")
            }
            Dual(s) => write!(f, "sdual({s})"),
            Kron(a, b) => write!(f, "kron({a},{b})"),
            Schur(e) => write!(f, "F({e})"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Functor(e) => e.fmt(f),
            Expr::Sym(s) => s.fmt(f),
        }
    }
}
