//! Finite-dimensional modules given by matrices of algebra generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::ff::{Echelon, Mat};

mod decompose;
mod hom;
mod meataxe;
mod poly;

pub use decompose::{fitting_decompose, is_local_endomorphism_ring, Decomposition, Summand};
pub use hom::{hom_space, intertwines, is_isomorphic, IsoOutcome, ModMorphism};
pub use meataxe::{
    certify_simple, composition_factors, group_isomorphic, radical_top, RadicalTop, Simplicity,
};

/// Which algebra the generator labels refer to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraId {
    /// `kS_d`, generated by adjacent transpositions.
    Symmetric { d: usize },
    /// `S(n, d)`, generated by weight idempotents and divided powers.
    Schur { n: usize, d: usize },
    Other(String),
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraId::Symmetric { d } => write!(f, "kS_{d}"),
            AlgebraId::Schur { n, d } => write!(f, "S({n},{d})"),
            AlgebraId::Other(s) => write!(f, "{s}"),
        }
    }
}

/// Label of one generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenLabel {
    /// Adjacent transposition `s_i = (i, i+1)`, 1-based.
    S(usize),
    /// Weight idempotent `1_μ`.
    Idem(Vec<usize>),
    /// Divided power `E_a^{(r)}` raising weight `ε_a − ε_{a+1}` (1-based `a`).
    E { a: usize, r: usize },
    F { a: usize, r: usize },
    Named(String),
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::S(i) => write!(f, "s{i}"),
            GenLabel::Idem(mu) => {
                write!(f, "1_(")?;
                for (i, x) in mu.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GenLabel::E { a, r } => write!(f, "E{a}^({r})"),
            GenLabel::F { a, r } => write!(f, "F{a}^({r})"),
            GenLabel::Named(s) => write!(f, "{s}"),
        }
    }
}

/// A module: the matrices by which each generator acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModAction {
    p: u32,
    dim: usize,
    gens: Vec<(GenLabel, Mat)>,
    algebra: AlgebraId,
}

impl ModAction {
    /// Checks shapes, then the defining relations for symmetric-group and Schur tags.
    pub fn new(p: u32, dim: usize, gens: Vec<(GenLabel, Mat)>, algebra: AlgebraId) -> Result<Self> {
        let m = Self::new_unchecked(p, dim, gens, algebra)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Checks shapes only.
    pub fn new_unchecked(
        p: u32,
        dim: usize,
        gens: Vec<(GenLabel, Mat)>,
        algebra: AlgebraId,
    ) -> Result<Self> {
        for (l, g) in &gens {
            if g.rows() != dim || g.cols() != dim || g.prime() != p {
                return Err(Error::DimensionMismatch(format!(
                    "generator {l} is {}x{} over F_{}, module has dim {dim} over F_{p}",
                    g.rows(),
                    g.cols(),
                    g.prime()
                )));
            }
        }
        Ok(ModAction {
            p,
            dim,
            gens,
            algebra,
        })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[(GenLabel, Mat)] {
        &self.gens
    }

    pub fn gen_mats(&self) -> impl Iterator<Item = &Mat> {
        self.gens.iter().map(|(_, g)| g)
    }

    pub fn algebra(&self) -> &AlgebraId {
        &self.algebra
    }

    pub fn action(&self, label: &GenLabel) -> Option<&Mat> {
        self.gens.iter().find(|(l, _)| l == label).map(|(_, g)| g)
    }

    pub fn zero(p: u32, template: &ModAction) -> ModAction {
        ModAction {
            p,
            dim: 0,
            gens: template
                .gens
                .iter()
                .map(|(l, _)| (l.clone(), Mat::zeros(0, 0, p)))
                .collect(),
            algebra: template.algebra.clone(),
        }
    }

    pub fn same_algebra(&self, other: &ModAction) -> Result<()> {
        let labels = |m: &ModAction| m.gens.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>();
        if self.algebra != other.algebra || labels(self) != labels(other) || self.p != other.p {
            return Err(Error::AlgebraMismatch(
                self.algebra.to_string(),
                other.algebra.to_string(),
            ));
        }
        Ok(())
    }

    /// Module with every generator replaced by its transpose.
    pub fn transposed(&self) -> ModAction {
        ModAction {
            p: self.p,
            dim: self.dim,
            gens: self
                .gens
                .iter()
                .map(|(l, g)| (l.clone(), g.transpose()))
                .collect(),
            algebra: self.algebra.clone(),
        }
    }

    /// Same module with basis changed by `c`: new action `c⁻¹ ρ c`.
    pub fn conjugated(&self, c: &Mat) -> Result<ModAction> {
        let ci = c
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        Ok(ModAction {
            p: self.p,
            dim: self.dim,
            gens: self
                .gens
                .iter()
                .map(|(l, g)| (l.clone(), ci.mul(&g.mul(c))))
                .collect(),
            algebra: self.algebra.clone(),
        })
    }

    pub fn direct_sum(&self, other: &ModAction) -> Result<ModAction> {
        self.same_algebra(other)?;
        Ok(ModAction {
            p: self.p,
            dim: self.dim + other.dim,
            gens: self
                .gens
                .iter()
                .zip(&other.gens)
                .map(|((l, a), (_, b))| (l.clone(), a.direct_sum(b)))
                .collect(),
            algebra: self.algebra.clone(),
        })
    }

    /// Traces of all generators.
    pub fn character(&self) -> Vec<u32> {
        self.gens.iter().map(|(_, g)| g.trace()).collect()
    }

    /// Weight-space dimensions read off the idempotent generators.
    pub fn weight_multiplicities(&self) -> Vec<(Vec<usize>, usize)> {
        self.gens
            .iter()
            .filter_map(|(l, g)| match l {
                GenLabel::Idem(mu) => Some((mu.clone(), g.rank())),
                _ => None,
            })
            .collect()
    }

    /// Submodule on the row span of `basis` (echelon form), with action in
    /// echelon coordinates.
    pub fn submodule(&self, basis: &Echelon) -> Result<ModAction> {
        let k = basis.dim();
        let mut gens = Vec::with_capacity(self.gens.len());
        for (l, g) in &self.gens {
            let mut a = Mat::zeros(k, k, self.p);
            for (j, b) in basis.basis().iter().enumerate() {
                let img = g.mul_vec(b);
                let c = basis
                    .coordinates(&img)
                    .ok_or_else(|| Error::NotStable(format!("generator {l}")))?;
                for (i, x) in c.into_iter().enumerate() {
                    a.set(i, j, x);
                }
            }
            gens.push((l.clone(), a));
        }
        Ok(ModAction {
            p: self.p,
            dim: k,
            gens,
            algebra: self.algebra.clone(),
        })
    }

    /// Quotient by the row span of `basis`, with basis the images of the
    /// standard vectors at non-pivot positions.
    pub fn quotient(&self, basis: &Echelon) -> Result<ModAction> {
        let free = non_pivots(basis);
        let k = free.len();
        let mut gens = Vec::with_capacity(self.gens.len());
        for (l, g) in &self.gens {
            let mut a = Mat::zeros(k, k, self.p);
            for (j, &col) in free.iter().enumerate() {
                let mut img = g.column(col);
                basis.reduce(&mut img);
                for (i, &fc) in free.iter().enumerate() {
                    a.set(i, j, img[fc]);
                }
            }
            gens.push((l.clone(), a));
        }
        // stability of the kernel
        for (l, g) in &self.gens {
            for b in basis.basis() {
                if !basis.contains(&g.mul_vec(b)) {
                    return Err(Error::NotStable(format!("generator {l}")));
                }
            }
        }
        Ok(ModAction {
            p: self.p,
            dim: k,
            gens,
            algebra: self.algebra.clone(),
        })
    }

    fn check_relations(&self) -> Result<()> {
        match self.algebra.clone() {
            AlgebraId::Symmetric { d } => self.check_coxeter(d),
            AlgebraId::Schur { n, d } => self.check_schur(n, d),
            AlgebraId::Other(_) => Ok(()),
        }
    }

    fn check_coxeter(&self, d: usize) -> Result<()> {
        let id = Mat::identity(self.dim, self.p);
        let s = |i: usize| {
            self.action(&GenLabel::S(i))
                .ok_or_else(|| Error::RelationViolated(format!("missing generator s{i}")))
        };
        for i in 1..d {
            let a = s(i)?;
            if a.mul(a) != id {
                return Err(Error::RelationViolated(format!("s{i}^2 != 1")));
            }
            for j in i + 1..d {
                let b = s(j)?;
                let ok = if j == i + 1 {
                    a.mul(b).mul(a) == b.mul(a).mul(b)
                } else {
                    a.mul(b) == b.mul(a)
                };
                if !ok {
                    return Err(Error::RelationViolated(format!("s{i}, s{j}")));
                }
            }
        }
        Ok(())
    }

    fn check_schur(&self, n: usize, _d: usize) -> Result<()> {
        let idems: Vec<(&Vec<usize>, &Mat)> = self
            .gens
            .iter()
            .filter_map(|(l, g)| match l {
                GenLabel::Idem(mu) => Some((mu, g)),
                _ => None,
            })
            .collect();
        let mut sum = Mat::zeros(self.dim, self.dim, self.p);
        for (i, (mu, e)) in idems.iter().enumerate() {
            if e.mul(e) != **e {
                return Err(Error::RelationViolated(format!("1_{mu:?} not idempotent")));
            }
            for (nu, f) in &idems[i + 1..] {
                if !e.mul(f).is_zero() {
                    return Err(Error::RelationViolated(format!("1_{mu:?} 1_{nu:?} != 0")));
                }
            }
            sum = sum.add(e);
        }
        if sum != Mat::identity(self.dim, self.p) {
            return Err(Error::RelationViolated("weight idempotents do not sum to 1".into()));
        }
        for (l, g) in &self.gens {
            let (a, r, raise) = match l {
                GenLabel::E { a, r } => (*a, *r, true),
                GenLabel::F { a, r } => (*a, *r, false),
                _ => continue,
            };
            for (mu, e) in &idems {
                let ge = g.mul(e);
                if ge.is_zero() {
                    continue;
                }
                let target = shift_weight(mu, a, r, raise, n);
                let ok = match target.and_then(|t| idems.iter().find(|(nu, _)| **nu == t)) {
                    Some((_, f)) => f.mul(&ge) == ge,
                    None => false,
                };
                if !ok {
                    return Err(Error::RelationViolated(format!("{l} on weight {mu:?}")));
                }
            }
            // E^{(r)} E^{(s)} = C(r+s, r) E^{(r+s)}
            if r == 1 {
                continue;
            }
            let one = if raise {
                GenLabel::E { a, r: 1 }
            } else {
                GenLabel::F { a, r: 1 }
            };
            let prev = if raise {
                GenLabel::E { a, r: r - 1 }
            } else {
                GenLabel::F { a, r: r - 1 }
            };
            if let (Some(x), Some(y)) = (self.action(&one), self.action(&prev)) {
                let c = (binomial(r, 1) % self.p as usize) as u32;
                if x.mul(y) != g.scale(c) {
                    return Err(Error::RelationViolated(format!("divided powers at {l}")));
                }
            }
        }
        Ok(())
    }
}

/// Weight `μ ± r(ε_a − ε_{a+1})`, if it has no negative entry.
pub fn shift_weight(mu: &[usize], a: usize, r: usize, raise: bool, n: usize) -> Option<Vec<usize>> {
    if a == 0 || a >= n || mu.len() != n {
        return None;
    }
    let mut nu = mu.to_vec();
    let (up, down) = if raise { (a - 1, a) } else { (a, a - 1) };
    nu[down] = nu[down].checked_sub(r)?;
    nu[up] += r;
    Some(nu)
}

pub(crate) fn non_pivots(basis: &Echelon) -> Vec<usize> {
    let mut is_pivot = vec![false; basis.ambient()];
    for &c in basis.pivots() {
        is_pivot[c] = true;
    }
    (0..basis.ambient()).filter(|&c| !is_pivot[c]).collect()
}

/// Smallest generator-stable subspace containing `seeds`.
pub fn spin(m: &ModAction, seeds: &[Vec<u32>]) -> Echelon {
    spin_with(m.gens.iter().map(|(_, g)| g), m.dim, m.p, seeds)
}

pub(crate) fn spin_with<'a>(
    gens: impl Iterator<Item = &'a Mat> + Clone,
    dim: usize,
    p: u32,
    seeds: &[Vec<u32>],
) -> Echelon {
    let mut ech = Echelon::new(dim, p);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        if ech.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if ech.dim() == dim {
            break;
        }
        for g in gens.clone() {
            let w = g.mul_vec(&v);
            if ech.insert(&w) {
                queue.push(w);
            }
        }
    }
    ech
}

/// Basis vectors spanning a subspace, as columns of a `dim × k` matrix.
pub fn basis_matrix(ech: &Echelon) -> Mat {
    ech.to_rows().transpose()
}

#[cfg(test)]
mod tests;
