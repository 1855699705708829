//! Recursive evaluation of functor expressions at `k^{m_1} ⊗ … ⊗ k^{m_r}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use super::expr::{FunctorExpr, SymExpr};
use super::frame::{evaluate_frame, FrameSpec, Relation};
use super::Evaluation;
use crate::combin::{Composition, Partition};
use crate::error::{Error, Result};
use crate::modules::{fitting_decompose, hom_space, AlgebraId, GenLabel, ModAction};
use crate::schur::transpose_partner;
use crate::symgrp::{internal_dual, kronecker, simple_d, standard_module, StandardKind};

type Key = (String, Vec<usize>, usize, u32);
type Slot = Arc<Mutex<Option<Arc<Evaluation>>>>;

fn memo() -> &'static RwLock<HashMap<Key, Slot>> {
    static MEMO: OnceLock<RwLock<HashMap<Key, Slot>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Drops all memoised evaluations.
pub fn clear_memo() {
    memo().write().expect("memo lock").clear();
}

fn blocks(parts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for &k in parts {
        if k > 0 {
            out.push((start..start + k).collect());
        }
        start += k;
    }
    out
}

/// Rows and columns of the row-reading tableau of `λ`.
fn rows_and_columns(lambda: &Partition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let rows = blocks(lambda.parts());
    let cols = (0..lambda.part(0))
        .map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect::<Vec<usize>>())
        .filter(|c| c.len() > 1)
        .collect();
    (rows, cols)
}

pub(crate) fn leaf_spec(e: &FunctorExpr, d: usize, p: u32) -> Option<FrameSpec> {
    use FunctorExpr::*;
    let spec = match e {
        Gamma(c) => FrameSpec {
            invariant_blocks: blocks(c.parts()),
            ..Default::default()
        },
        Sym(c) => FrameSpec {
            relations: blocks(c.parts()).into_iter().map(Relation::Sym).collect(),
            ..Default::default()
        },
        Ext(c) => FrameSpec {
            relations: blocks(c.parts()).into_iter().map(Relation::Alt).collect(),
            ..Default::default()
        },
        TensorPower => FrameSpec::default(),
        TruncSym => FrameSpec {
            relations: vec![Relation::Sym((0..d).collect()), Relation::Truncate(p as usize)],
            ..Default::default()
        },
        Weyl(l) => {
            let (rows, cols) = rows_and_columns(l);
            FrameSpec {
                invariant_blocks: rows,
                relations: cols.into_iter().map(Relation::Alt).collect(),
                ..Default::default()
            }
        }
        Simple(l) => {
            let (rows, cols) = rows_and_columns(l);
            FrameSpec {
                relations: rows.iter().cloned().map(Relation::Sym).collect(),
                invariant_blocks: rows,
                antisymmetrize: cols,
                extra: 1,
            }
        }
        _ => return None,
    };
    Some(spec)
}

/// The symmetric-group module named by `s`; `m` is the evaluation dimension
/// used for Schur-functor nodes.
pub fn eval_sym(s: &SymExpr, d: usize, p: u32, m: usize) -> Result<ModAction> {
    match s {
        SymExpr::Trivial => standard_module(&StandardKind::Trivial, d, p),
        SymExpr::Sign => standard_module(&StandardKind::Sign, d, p),
        SymExpr::Regular => standard_module(&StandardKind::Regular, d, p),
        SymExpr::Perm(c) => standard_module(&StandardKind::Perm(c.clone()), d, p),
        SymExpr::Simple(l) => simple_d(l, p),
        SymExpr::Dual(x) => internal_dual(&eval_sym(x, d, p, m)?),
        SymExpr::Kron(a, b) => kronecker(&eval_sym(a, d, p, m)?, &eval_sym(b, d, p, m)?),
        SymExpr::Schur(e) => {
            let x = evaluate(e, &[m], d, p)?;
            schur_functor(&x.to_module()?)
        }
    }
}

/// `e_ω X` with `s_i` acting as `E_i F_i − 1`, which is the corner element
/// of `s_i` on the `ω`-weight space.
pub fn schur_functor(x: &ModAction) -> Result<ModAction> {
    let (n, d) = match x.algebra() {
        AlgebraId::Schur { n, d } => (*n, *d),
        other => return Err(Error::AlgebraMismatch(other.to_string(), "S(n,d)".into())),
    };
    if n < d {
        return Err(Error::Unsupported(format!("Schur functor needs n ≥ d, got n={n} d={d}")));
    }
    let p = x.prime();
    let mut omega = vec![0; n];
    omega[..d].iter_mut().for_each(|w| *w = 1);
    let e = x
        .action(&GenLabel::Idem(omega))
        .ok_or_else(|| Error::Unsupported("module lacks weight idempotents".into()))?;
    let space = e.column_space();
    let k = space.cols();
    let mut gens = Vec::new();
    for i in 1..d {
        let ef = x
            .action(&GenLabel::E { a: i, r: 1 })
            .zip(x.action(&GenLabel::F { a: i, r: 1 }))
            .map(|(a, b)| a.mul(b))
            .ok_or_else(|| Error::Unsupported("module lacks divided powers".into()))?;
        let s = ef.sub(&crate::ff::Mat::identity(x.dim(), p));
        let img = s.mul(&space);
        let coords = space
            .solve(&img)?
            .ok_or_else(|| Error::NotStable("ω-weight space".into()))?;
        gens.push((GenLabel::S(i), coords));
    }
    ModAction::new(p, k, gens, AlgebraId::Symmetric { d })
}

fn tensor_cost(e: &FunctorExpr) -> usize {
    use FunctorExpr::*;
    match e {
        ITensor(a, b) | IHom(a, b) => 1 + tensor_cost(a) + tensor_cost(b),
        KuhnDual(a) => tensor_cost(a),
        MonDual(a) => 1 + tensor_cost(a),
        ProjCover(_) => 100,
        _ => 0,
    }
}

/// Memoised evaluation of `e` in degree `d` at the given factor dimensions.
pub fn evaluate(e: &FunctorExpr, factors: &[usize], d: usize, p: u32) -> Result<Arc<Evaluation>> {
    if let Some(k) = e.degree()? {
        if k != d {
            return Err(Error::DegreeMismatch(k, d));
        }
    }
    let key = (e.to_string(), factors.to_vec(), d, p);
    let slot = {
        let read = memo().read().expect("memo lock");
        read.get(&key).cloned()
    };
    let slot = match slot {
        Some(s) => s,
        None => memo().write().expect("memo lock").entry(key).or_default().clone(),
    };
    let mut guard = slot.lock().expect("slot lock");
    if let Some(v) = guard.as_ref() {
        return Ok(v.clone());
    }
    let v = Arc::new(build(e, factors, d, p)?);
    *guard = Some(v.clone());
    Ok(v)
}

fn build(e: &FunctorExpr, factors: &[usize], d: usize, p: u32) -> Result<Evaluation> {
    use FunctorExpr::*;
    if let Some(spec) = leaf_spec(e, d, p) {
        return evaluate_frame(&spec, factors, d, p);
    }
    match e {
        KuhnDual(x) => Ok(evaluate(x, factors, d, p)?.kuhn_dual()),
        ITensor(a, b) => {
            let (left, right) = if tensor_cost(b) <= tensor_cost(a) { (a, b) } else { (b, a) };
            let n = d.max(1);
            let mut wide = factors.to_vec();
            wide.push(n);
            let y = evaluate(right, &wide, d, p)?;
            let x = evaluate(left, &[n], d, p)?.to_module()?;
            super::tensor::coend(&y, &x)
        }
        IHom(a, b) => {
            let inner = ITensor(a.clone(), Box::new(KuhnDual(b.clone())));
            Ok(evaluate(&inner, factors, d, p)?.kuhn_dual())
        }
        MonDual(a) => {
            let gamma = Gamma(Composition(vec![d]));
            evaluate(&IHom(a.clone(), Box::new(gamma)), factors, d, p).map(|v| (*v).clone())
        }
        GTensor(s) => {
            let n = eval_sym(s, d, p, factors.iter().product::<usize>().max(d))?;
            let mats = n.gen_mats().cloned().collect();
            let spec = FrameSpec {
                relations: vec![Relation::Coinvariant(mats)],
                extra: n.dim(),
                ..Default::default()
            };
            evaluate_frame(&spec, factors, d, p)
        }
        GHom(s) => {
            let dual = GTensor(Box::new(SymExpr::Dual(s.clone())));
            Ok(evaluate(&dual, factors, d, p)?.kuhn_dual())
        }
        ProjCover(mu) => {
            let [m] = factors else {
                return Err(Error::Unsupported(format!(
                    "{e} is only evaluated at a single space"
                )));
            };
            let module = projective_cover_module(mu, *m, p)?;
            Ok(Evaluation::from_module(&module, *m))
        }
        _ => unreachable!("leaves handled above"),
    }
}

pub(crate) fn projective_cover_module(mu: &Partition, m: usize, p: u32) -> Result<ModAction> {
    let d = mu.degree();
    let comp = mu
        .as_composition(m)
        .ok_or_else(|| Error::InvalidPartition(format!("{mu} has more than {m} parts")))?;
    let gamma = evaluate(&FunctorExpr::Gamma(comp), &[m], d, p)?.to_module()?;
    let simple = evaluate(&FunctorExpr::Simple(mu.clone()), &[m], d, p)?.to_module()?;
    let dec = fitting_decompose(&gamma, 0)?;
    for s in dec.summands {
        if !hom_space(&s.module, &simple)?.is_empty() {
            return Ok(s.module);
        }
    }
    Err(Error::Identification(format!("no summand of Γ^{mu} has top L_{mu}")))
}

impl Evaluation {
    pub(crate) fn from_module(m: &ModAction, n: usize) -> Evaluation {
        let d = match m.algebra() {
            AlgebraId::Schur { d, .. } => *d,
            _ => 0,
        };
        Evaluation {
            p: m.prime(),
            d,
            factors: vec![n],
            dim: m.dim(),
            actions: vec![m.gens().to_vec()],
        }
    }

    /// Dual space with each factor acting through the transpose anti-automorphism.
    pub fn kuhn_dual(&self) -> Evaluation {
        let actions = self
            .actions
            .iter()
            .map(|gens| {
                let labels: Vec<GenLabel> = gens.iter().map(|(l, _)| l.clone()).collect();
                let j = transpose_partner(&labels);
                gens.iter()
                    .enumerate()
                    .map(|(i, (l, _))| (l.clone(), gens[j[i]].1.transpose()))
                    .collect()
            })
            .collect();
        Evaluation {
            actions,
            ..self.clone()
        }
    }

    /// The module over `S(m, d)` for a single-factor evaluation.
    pub fn to_module(&self) -> Result<ModAction> {
        let [m] = self.factors[..] else {
            return Err(Error::Unsupported(format!(
                "evaluation at {} factors is not a module over one Schur algebra",
                self.factors.len()
            )));
        };
        ModAction::new(
            self.p,
            self.dim,
            self.actions[0].clone(),
            AlgebraId::Schur { n: m, d: self.d },
        )
    }
}
