//! The Schur functor `F = Hom(Γ^ω, −)`, its left adjoint `G_⊗ = T ⊗_{kS_d} −`
//! and right adjoint `G_Hom = Hom_{kS_d}(Hom_{kS_d}(T, kS_d), −)`, computed
//! directly on the tensor space `T = (kⁿ)^{⊗d}`, and the verification suites
//! built on them.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::combin::Config;
use crate::error::{Error, Result};
use crate::ff::{Echelon, Mat};
use crate::modules::{hom_space, is_isomorphic, AlgebraId, GenLabel, IsoOutcome, ModAction};
use crate::polyfun::{eval_sym, realize, schur_functor, FunctorExpr, SymExpr};
use crate::schur::{build_schur_algebra, SchurAlg};
use crate::store::Witness;
use crate::symgrp::{all_perms, compose, right_place_permutation, transposition};

mod mullineux;
mod simples;
mod suite;

pub use mullineux::verify_mullineux;
pub use simples::{
    check_simplicity_criteria, classify_simple_tensor, composition_series_facts, verify_simples, CriteriaBundle, TensorCell,
};
pub use suite::{default_sample, module_set, verify_adjoint_theorems, verify_identity_suite, verify_monoidality};

/// `S(n, d)` with `n ≥ d` acting on `T`, together with the commuting right
/// place permutations and the corner embedding `kS_d ≅ e_ω S(n,d) e_ω`.
pub struct AdjointContext {
    pub config: Config,
    pub alg: SchurAlg,
    pub tensor: ModAction,
    /// Right action of `s_1, …, s_{d−1}` on columns.
    pub right: Vec<Mat>,
    pub corner: Vec<usize>,
    pub seed: u64,
}

impl AdjointContext {
    pub fn new(config: Config, seed: u64) -> Result<AdjointContext> {
        let Config { p, n, d } = config;
        if n < d {
            return Err(Error::Unsupported(format!("adjoint context needs n ≥ d, got n={n} d={d}")));
        }
        let alg = build_schur_algebra(n, d, p)?;
        let gens = crate::schur::standard_generators(n, d, p)
            .into_iter()
            .map(|(l, h)| (l, h.on_tensor_power()))
            .collect();
        let tensor = ModAction::new(p, n.pow(d as u32), gens, alg.algebra_id())?;
        let right: Vec<Mat> = (1..d)
            .map(|i| right_place_permutation(n, d, &transposition(d, i), p))
            .collect();
        for r in &right {
            for g in tensor.gen_mats() {
                if g.mul(r) != r.mul(g) {
                    return Err(Error::RelationViolated("place permutations do not commute with S(n,d)".into()));
                }
            }
        }
        let corner = alg.symgroup_corner()?;
        let perms = all_perms(d);
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let st = perms.iter().position(|u| *u == compose(s, t)).expect("closed");
                if alg.product(corner[i], corner[j]).as_slice() != [(corner[st], 1)] {
                    return Err(Error::RelationViolated(format!(
                        "corner products: c_{s:?} c_{t:?} ≠ c_{{στ}}"
                    )));
                }
            }
        }
        Ok(AdjointContext {
            config,
            alg,
            tensor,
            right,
            corner,
            seed,
        })
    }

    pub fn p(&self) -> u32 {
        self.config.p
    }

    pub fn n(&self) -> usize {
        self.config.n
    }

    pub fn d(&self) -> usize {
        self.config.d
    }

    /// A functor expression evaluated at `kⁿ`.
    pub fn realize(&self, e: &FunctorExpr) -> Result<ModAction> {
        Ok(realize(e, self.n(), self.d(), self.p())?.module)
    }

    pub fn sym(&self, s: &SymExpr) -> Result<ModAction> {
        eval_sym(s, self.d(), self.p(), self.n())
    }

    /// `F(x) = e_ω x` with the symmetric group acting through the corner.
    pub fn schur_f(&self, x: &ModAction) -> Result<ModAction> {
        schur_functor(x)
    }

    /// `T ⊗ N` modulo `tσ ⊗ v − t ⊗ σv`.
    pub fn g_tensor(&self, n: &ModAction) -> Result<ModAction> {
        self.check_symmetric(n)?;
        let p = self.p();
        let k = n.dim();
        let id_t = Mat::identity(self.tensor.dim(), p);
        let id_n = Mat::identity(k, p);
        let gens = self
            .tensor
            .gens()
            .iter()
            .map(|(l, g)| (l.clone(), g.kron(&id_n)))
            .collect();
        let big = ModAction::new(p, self.tensor.dim() * k, gens, self.alg.algebra_id())?;
        let mut rel = Echelon::new(big.dim(), p);
        for (r, s) in self.right.iter().zip(n.gen_mats()) {
            for c in r.kron(&id_n).sub(&id_t.kron(s)).columns() {
                rel.insert(&c);
            }
        }
        big.quotient(&rel)
    }

    /// `Hom_{kS_d}(H, N)` with `H = Hom_{kS_d}(T, kS_d)` (right-module maps),
    /// `kS_d` acting on `H` by left multiplication and `S(n,d)` acting on the
    /// result through precomposition on `T`.
    pub fn g_hom(&self, n: &ModAction) -> Result<ModAction> {
        self.check_symmetric(n)?;
        let (p, d) = (self.p(), self.d());
        let perms = all_perms(d);
        let index = |s: &[usize]| perms.iter().position(|u| u == s).expect("permutation");
        let regular = |left: bool| -> Vec<Mat> {
            (1..d)
                .map(|i| {
                    let s = transposition(d, i);
                    let mut m = Mat::zeros(perms.len(), perms.len(), p);
                    for (k, t) in perms.iter().enumerate() {
                        let img = if left { compose(&s, t) } else { compose(t, &s) };
                        m.set(index(&img), k, 1);
                    }
                    m
                })
                .collect()
        };
        let sym = |dim: usize, mats: Vec<Mat>| -> Result<ModAction> {
            let gens = mats.into_iter().enumerate().map(|(i, m)| (GenLabel::S(i + 1), m)).collect();
            ModAction::new(p, dim, gens, AlgebraId::Symmetric { d })
        };
        let group_dim = perms.len();
        // right modules become left modules through σ ↦ σ⁻¹, which fixes each s_i
        let t_right = sym(self.tensor.dim(), self.right.clone())?;
        let k_right = sym(group_dim, regular(false))?;
        let h = hom_space(&t_right, &k_right)?;
        if h.is_empty() {
            return Err(Error::ZeroModule);
        }
        let left = regular(true);
        let h_action: Vec<Mat> = left
            .iter()
            .map(|l| coordinates(&h, &h.iter().map(|f| l.mul(f)).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        let h_mod = sym(h.len(), h_action)?;
        let pre: Vec<Mat> = self
            .tensor
            .gen_mats()
            .map(|a| coordinates(&h, &h.iter().map(|f| f.mul(a)).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        let g = hom_space(&h_mod, n)?;
        if g.is_empty() {
            return ModAction::new(p, 0, zero_gens(&self.tensor, p), self.alg.algebra_id());
        }
        let mut gens = Vec::with_capacity(pre.len());
        for ((label, _), pa) in self.tensor.gens().iter().zip(&pre) {
            let img: Vec<Mat> = g.iter().map(|f| f.mul(pa)).collect();
            gens.push((label.clone(), coordinates(&g, &img)?));
        }
        ModAction::new(p, g.len(), gens, self.alg.algebra_id())
    }

    fn check_symmetric(&self, n: &ModAction) -> Result<()> {
        match n.algebra() {
            AlgebraId::Symmetric { d } if *d == self.d() => Ok(()),
            other => Err(Error::AlgebraMismatch(other.to_string(), format!("kS_{}", self.d()))),
        }
    }
}

fn zero_gens(template: &ModAction, p: u32) -> Vec<(GenLabel, Mat)> {
    template
        .gens()
        .iter()
        .map(|(l, _)| (l.clone(), Mat::zeros(0, 0, p)))
        .collect()
}

/// Columns: coordinates of each `targets[j]` in the basis `basis` of matrices.
fn coordinates(basis: &[Mat], targets: &[Mat]) -> Result<Mat> {
    let p = basis[0].prime();
    let len = basis[0].rows() * basis[0].cols();
    let b = Mat::from_columns(&basis.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>(), len, p);
    let t = Mat::from_columns(&targets.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>(), len, p);
    b.solve(&t)?
        .ok_or_else(|| Error::NotStable("image left the span of the basis".into()))
}

/// Outcome of a single claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
    /// Computation contradicts a stated closed form.
    Discrepancy,
}

/// One checked claim. `dims` are the dimensions of the two sides.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub dims: [usize; 2],
    pub witness_file: Option<String>,
    /// The discriminating invariant, or other evidence when no witness applies.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    pub seed: u64,
    pub ms: u64,
    #[serde(skip)]
    pub witness: Option<Witness>,
}

impl Report {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, status: Status, dims: [usize; 2], seed: u64) -> Report {
        Report {
            id: id.into(),
            anchor: anchor.into(),
            status,
            dims,
            witness_file: None,
            detail: None,
            seed,
            ms: 0,
            witness: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Report {
        self.detail = Some(detail.into());
        self
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.status, Status::Refuted | Status::Discrepancy)
    }

    /// The JSON line for this report; `ms` is omitted when `timing` is false.
    pub fn to_json_line(&self, timing: bool) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if !timing {
            v.as_object_mut().expect("object").remove("ms");
        }
        v.to_string()
    }
}

/// Whether a claim asserts or denies an isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Iso,
    NotIso,
}

/// Runs `sides` and compares the results. A positive claim is verified only
/// with an invertible intertwiner; a negative one only with an invariant.
pub fn iso_claim(
    id: &str,
    anchor: &str,
    expect: Expect,
    seed: u64,
    sides: impl FnOnce() -> Result<(ModAction, ModAction)>,
) -> Report {
    let start = Instant::now();
    let mut report = match sides() {
        Err(e) => Report::new(id, anchor, Status::Inconclusive, [0, 0], seed).with_detail(e.to_string()),
        Ok((lhs, rhs)) => {
            let dims = [lhs.dim(), rhs.dim()];
            match is_isomorphic(&lhs, &rhs, seed) {
                Err(e) => Report::new(id, anchor, Status::Inconclusive, dims, seed).with_detail(e.to_string()),
                Ok(IsoOutcome::Isomorphic(map)) => {
                    let status = if expect == Expect::Iso { Status::Verified } else { Status::Refuted };
                    let mut r = Report::new(id, anchor, status, dims, seed);
                    r.witness = Some(Witness { lhs, rhs, map });
                    r
                }
                Ok(IsoOutcome::NotIsomorphic(why)) => {
                    let status = if expect == Expect::NotIso { Status::Verified } else { Status::Refuted };
                    Report::new(id, anchor, status, dims, seed).with_detail(why)
                }
                Ok(IsoOutcome::Inconclusive(why)) => {
                    Report::new(id, anchor, Status::Inconclusive, dims, seed).with_detail(why)
                }
            }
        }
    };
    report.ms = start.elapsed().as_millis() as u64;
    report
}

/// A claim that two computed numbers agree.
pub fn equality_claim(
    id: &str,
    anchor: &str,
    seed: u64,
    sides: impl FnOnce() -> Result<(usize, usize)>,
) -> Report {
    let start = Instant::now();
    let mut report = match sides() {
        Err(e) => Report::new(id, anchor, Status::Inconclusive, [0, 0], seed).with_detail(e.to_string()),
        Ok((a, b)) => {
            let status = if a == b { Status::Verified } else { Status::Refuted };
            Report::new(id, anchor, status, [a, b], seed).with_detail(format!("{a} vs {b}"))
        }
    };
    report.ms = start.elapsed().as_millis() as u64;
    report
}

#[cfg(test)]
mod tests;
