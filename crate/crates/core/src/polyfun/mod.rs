//! Strict polynomial functors as construction expressions, evaluated to
//! modules over Schur algebras.
//!
//! Every leaf is a natural subquotient of the tensor power built from place
//! permutations, so one construction evaluates at `k^m` and at the
//! multi-factor spaces `k^m ⊗ kⁿ` used by the internal tensor product.
//! `Γ^λ` is the summand `S(n,d)·1_λ`, so that `Hom(Γ^λ, X) ≅ 1_λ X`.

use std::collections::BTreeMap;

use crate::combin::{binomial, compositions, partitions, Partition};
use crate::error::{Error, Result};
use crate::ff::{Echelon, Mat};
use crate::modules::{hom_space, GenLabel, ModAction};

mod eval;
mod expr;
mod frame;
mod syntax;
mod tensor;

pub use eval::{clear_memo, eval_sym, evaluate, schur_functor};
pub use expr::{Expr, FunctorExpr, SymExpr};
pub use syntax::parse_expr;

/// A functor evaluated at `k^{m_1} ⊗ … ⊗ k^{m_r}`, with one commuting
/// `S(m_t, d)`-action per factor given on the standard generators.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub p: u32,
    pub d: usize,
    pub factors: Vec<usize>,
    pub dim: usize,
    pub actions: Vec<Vec<(GenLabel, Mat)>>,
}

/// An expression evaluated at `k^m`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub expr: FunctorExpr,
    pub m: usize,
    pub d: usize,
    pub module: ModAction,
}

impl Realization {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

fn predicted_dim(e: &FunctorExpr, m: usize) -> Option<usize> {
    let prod = |parts: &[usize], f: &dyn Fn(usize) -> usize| parts.iter().map(|&l| f(l)).product();
    match e {
        FunctorExpr::Gamma(c) | FunctorExpr::Sym(c) => {
            Some(prod(c.parts(), &|l| binomial(m + l - 1, l)))
        }
        FunctorExpr::Ext(c) => Some(prod(c.parts(), &|l| binomial(m, l))),
        _ => None,
    }
}

/// Evaluates `e` in degree `d` at `k^m` over `F_p`.
pub fn realize(e: &FunctorExpr, m: usize, d: usize, p: u32) -> Result<Realization> {
    let module = evaluate(e, &[m], d, p)?.to_module()?;
    if let Some(want) = predicted_dim(e, m) {
        if module.dim() != want {
            return Err(Error::DimensionMismatch(format!(
                "{e} at k^{m} has dim {}, expected {want}",
                module.dim()
            )));
        }
    }
    Ok(Realization {
        expr: e.clone(),
        m,
        d,
        module,
    })
}

fn wrap(e: FunctorExpr, r: &Realization) -> Result<Realization> {
    realize(&e, r.m, r.d, r.module.prime())
}

pub fn kuhn_dual(r: &Realization) -> Result<Realization> {
    wrap(FunctorExpr::KuhnDual(Box::new(r.expr.clone())), r)
}

/// Kuhn dual of a module over `S(m, d)`.
pub fn kuhn_dual_module(x: &ModAction) -> Result<ModAction> {
    let m = match x.algebra() {
        crate::modules::AlgebraId::Schur { n, .. } => *n,
        other => return Err(Error::AlgebraMismatch(other.to_string(), "S(n,d)".into())),
    };
    Evaluation::from_module(x, m).kuhn_dual().to_module()
}

pub fn internal_tensor(x: &Realization, y: &Realization) -> Result<Realization> {
    wrap(
        FunctorExpr::ITensor(Box::new(x.expr.clone()), Box::new(y.expr.clone())),
        x,
    )
}

pub fn internal_hom(x: &Realization, y: &Realization) -> Result<Realization> {
    wrap(FunctorExpr::IHom(Box::new(x.expr.clone()), Box::new(y.expr.clone())), x)
}

pub fn mon_dual(x: &Realization) -> Result<Realization> {
    wrap(FunctorExpr::MonDual(Box::new(x.expr.clone())), x)
}

fn check_parts(lambda: &Partition, m: usize) -> Result<()> {
    if lambda.len() > m {
        return Err(Error::InvalidPartition(format!("{lambda} has more than {m} parts")));
    }
    Ok(())
}

pub fn weyl_module(lambda: &Partition, m: usize, p: u32) -> Result<Realization> {
    check_parts(lambda, m)?;
    realize(&FunctorExpr::Weyl(lambda.clone()), m, lambda.degree(), p)
}

pub fn simple_module(lambda: &Partition, m: usize, p: u32) -> Result<Realization> {
    check_parts(lambda, m)?;
    realize(&FunctorExpr::Simple(lambda.clone()), m, lambda.degree(), p)
}

pub fn projective_cover(mu: &Partition, m: usize, p: u32) -> Result<Realization> {
    check_parts(mu, m)?;
    realize(&FunctorExpr::ProjCover(mu.clone()), m, mu.degree(), p)
}

/// Weight multiplicities keyed by composition.
pub type Character = BTreeMap<Vec<usize>, usize>;

pub fn character(x: &ModAction) -> Character {
    x.weight_multiplicities().into_iter().collect()
}

/// Characters of the simples `L_λ`, `λ ∈ Λ⁺(m, d)`, in lex-descending order
/// (a refinement of dominance).
pub struct SimpleTable {
    pub m: usize,
    pub d: usize,
    pub p: u32,
    pub simples: Vec<(Partition, Realization, Character)>,
}

impl SimpleTable {
    pub fn new(m: usize, d: usize, p: u32) -> Result<SimpleTable> {
        let mut simples = Vec::new();
        for lambda in partitions(m, d) {
            let r = simple_module(&lambda, m, p)?;
            let ch = character(&r.module);
            simples.push((lambda, r, ch));
        }
        Ok(SimpleTable { m, d, p, simples })
    }

    pub fn simple(&self, lambda: &Partition) -> Option<&Realization> {
        self.simples.iter().find(|(l, _, _)| l == lambda).map(|(_, r, _)| r)
    }

    pub fn modules(&self) -> Vec<ModAction> {
        self.simples.iter().map(|(_, r, _)| r.module.clone()).collect()
    }
}

/// Composition multiplicities `[x : L_λ]` by unitriangular elimination.
pub fn character_multiplicities(x: &ModAction, table: &SimpleTable) -> Result<(Character, Vec<(Partition, usize)>)> {
    let ch = character(x);
    let mut rest: BTreeMap<Vec<usize>, i64> = compositions(table.m, table.d)
        .into_iter()
        .map(|c| (c.0.clone(), *ch.get(&c.0).unwrap_or(&0) as i64))
        .collect();
    let mut out = Vec::new();
    for (lambda, _, chl) in &table.simples {
        let key = lambda
            .as_composition(table.m)
            .ok_or_else(|| Error::InvalidPartition(lambda.to_string()))?
            .0;
        let k = rest[&key];
        if k < 0 {
            return Err(Error::NegativeMultiplicity(lambda.to_string()));
        }
        if k == 0 {
            continue;
        }
        for (w, &c) in chl {
            *rest.get_mut(w).expect("weight") -= k * c as i64;
        }
        out.push((lambda.clone(), k as usize));
    }
    if let Some((w, _)) = rest.iter().find(|(_, &v)| v != 0) {
        return Err(Error::NegativeMultiplicity(format!("{w:?}")));
    }
    Ok((ch, out))
}

/// `dim Hom(rad P_μ, L_ν)`; `P_μ` has simple top, so its radical is the
/// joint kernel of the maps to `L_μ`.
pub fn ext1(mu: &Partition, nu: &Partition, m: usize, p: u32) -> Result<usize> {
    let pm = projective_cover(mu, m, p)?;
    let lm = simple_module(mu, m, p)?;
    let ln = simple_module(nu, m, p)?;
    let homs = hom_space(&pm.module, &lm.module)?;
    let rows: Vec<Vec<u32>> = homs.iter().flat_map(|f| f.row_vecs()).collect();
    let mut rad = Echelon::new(pm.dim(), p);
    for v in Mat::from_row_vecs(&rows, pm.dim(), p).kernel_basis() {
        rad.insert(&v);
    }
    let rad = pm.module.submodule(&rad)?;
    Ok(hom_space(&rad, &ln.module)?.len())
}

#[cfg(test)]
mod tests;
