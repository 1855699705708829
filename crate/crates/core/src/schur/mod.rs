//! Schur algebras `S(n, d) = Γ^d End(kⁿ)` with the basis of orbit sums of
//! pair multisets, and modules over them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combin::{binomial, compositions, Composition};
use crate::error::{Error, Result};
use crate::ff::{self, Mat};
use crate::modules::{hom_space, AlgebraId, GenLabel, ModAction};

mod cache;

pub use cache::{read_structure_constants, write_structure_constants, StructureConstants};

/// Largest `n^d` accepted when building an algebra.
pub const SIZE_GUARD: usize = 1_000_000;

/// A multiset of `d` pairs `(target, source)`, sorted.
pub type Multiset = Vec<(u8, u8)>;

/// All multisets of size `d` over `[b] × [a]`, in lexicographic order.
pub fn multisets(b: usize, a: usize, d: usize) -> Vec<Multiset> {
    let pairs: Vec<(u8, u8)> = (0..b)
        .flat_map(|i| (0..a).map(move |j| (i as u8, j as u8)))
        .collect();
    let mut out = Vec::new();
    fn rec(pairs: &[(u8, u8)], start: usize, d: usize, cur: &mut Multiset, out: &mut Vec<Multiset>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for k in start..pairs.len() {
            cur.push(pairs[k]);
            rec(pairs, k, d, cur, out);
            cur.pop();
        }
    }
    rec(&pairs, 0, d, &mut Vec::new(), &mut out);
    out
}

fn counts(m: &[(u8, u8)]) -> Vec<((u8, u8), usize)> {
    let mut out: Vec<((u8, u8), usize)> = Vec::new();
    for &x in m {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// `ξ_A ∘ ξ_B = Σ_C c_C ξ_C`: `c_C` counts pairs of arrangements of `A` and
/// `B` that chain to the sorted arrangement of `C`.
pub fn compose_multisets(a: &[(u8, u8)], b: &[(u8, u8)]) -> Vec<(Multiset, u64)> {
    let d = a.len();
    debug_assert_eq!(d, b.len());
    let mut ca = counts(a);
    let mut cb = counts(b);
    let mut out: BTreeMap<Multiset, u64> = BTreeMap::new();
    let mut cur: Multiset = Vec::with_capacity(d);
    fn rec(
        ca: &mut [((u8, u8), usize)],
        cb: &mut [((u8, u8), usize)],
        d: usize,
        cur: &mut Multiset,
        out: &mut BTreeMap<Multiset, u64>,
    ) {
        if cur.len() == d {
            *out.entry(cur.clone()).or_insert(0) += 1;
            return;
        }
        for x in 0..ca.len() {
            if ca[x].1 == 0 {
                continue;
            }
            let (i, j) = ca[x].0;
            ca[x].1 -= 1;
            for y in 0..cb.len() {
                let ((j2, k), c) = cb[y];
                if c == 0 || j2 != j {
                    continue;
                }
                if cur.last().is_some_and(|&last| last > (i, k)) {
                    continue;
                }
                cb[y].1 -= 1;
                cur.push((i, k));
                rec(ca, cb, d, cur, out);
                cur.pop();
                cb[y].1 += 1;
            }
            ca[x].1 += 1;
        }
    }
    rec(&mut ca, &mut cb, d, &mut cur, &mut out);
    out.into_iter().collect()
}

/// An element of `Γ^d Hom(k^a, k^b)` in the orbit-sum basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedHom {
    pub a: usize,
    pub b: usize,
    pub d: usize,
    pub p: u32,
    pub terms: BTreeMap<Multiset, u32>,
}

impl DividedHom {
    pub fn zero(a: usize, b: usize, d: usize, p: u32) -> Self {
        DividedHom {
            a,
            b,
            d,
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(a: usize, b: usize, m: Multiset, p: u32) -> Self {
        let mut h = DividedHom::zero(a, b, m.len(), p);
        h.terms.insert(m, 1);
        h
    }

    pub fn add_term(&mut self, m: Multiset, c: u32) {
        let e = self.terms.entry(m).or_insert(0);
        *e = ff::add(*e, c, self.p);
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    /// Matrix on `(k^a)^{⊗d} → (k^b)^{⊗d}` in the word bases, words read as
    /// base-`a` (resp. base-`b`) numbers with the first letter most significant.
    pub fn on_tensor_power(&self) -> Mat {
        let (a, b, d) = (self.a, self.b, self.d);
        let mut m = Mat::zeros(b.pow(d as u32), a.pow(d as u32), self.p);
        for (ms, &c) in &self.terms {
            let mut arr = ms.clone();
            loop {
                let row = arr.iter().fold(0, |acc, &(i, _)| acc * b + i as usize);
                let col = arr.iter().fold(0, |acc, &(_, j)| acc * a + j as usize);
                m.add_at(row, col, c);
                if !next_permutation(&mut arr) {
                    break;
                }
            }
        }
        m
    }

    /// `f^{⊗d}` expressed in orbit sums: the coefficient of `ξ_A` is
    /// `∏ f_{ij}^{A_{ij}}`.
    pub fn pure_power(f: &Mat, d: usize) -> Self {
        let p = f.prime();
        let mut h = DividedHom::zero(f.cols(), f.rows(), d, p);
        for m in multisets(f.rows(), f.cols(), d) {
            let c = m
                .iter()
                .fold(1u32, |acc, &(i, j)| ff::mul(acc, f.get(i as usize, j as usize), p));
            if c != 0 {
                h.terms.insert(m, c);
            }
        }
        h
    }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `f ∘ g` for `g: U → V`, `f: V → W`.
pub fn compose_divided(f: &DividedHom, g: &DividedHom) -> Result<DividedHom> {
    if f.a != g.b || f.d != g.d || f.p != g.p {
        return Err(Error::DimensionMismatch(format!(
            "compose {}→{} after {}→{}",
            f.a, f.b, g.a, g.b
        )));
    }
    let p = f.p;
    let mut out = DividedHom::zero(g.a, f.b, f.d, p);
    for (ma, &ca) in &f.terms {
        for (mb, &cb) in &g.terms {
            let c = ff::mul(ca, cb, p);
            for (mc, k) in compose_multisets(ma, mb) {
                out.add_term(mc, ff::mul(c, (k % p as u64) as u32, p));
            }
        }
    }
    Ok(out)
}

/// How modules over `S(n, d)` are presented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GeneratorSet {
    /// Weight idempotents and divided powers `E_a^{(r)}`, `F_a^{(r)}`.
    #[default]
    Standard,
    /// Every basis element.
    FullBasis,
}

/// The multiset `{(l, l)^{μ_l}}`.
pub fn diagonal(mu: &[usize]) -> Multiset {
    let mut m = Vec::new();
    for (l, &k) in mu.iter().enumerate() {
        m.extend(std::iter::repeat_n((l as u8, l as u8), k));
    }
    m
}

/// `E_a^{(r)}` (or `F_a^{(r)}`): `r` copies of the elementary map
/// `e_{a+1} ↦ e_a` (resp. `e_a ↦ e_{a+1}`) beside the identity, summed over
/// all diagonal completions. `a` is 1-based.
pub fn divided_power(n: usize, d: usize, a: usize, r: usize, raise: bool, p: u32) -> DividedHom {
    let pair = if raise {
        ((a - 1) as u8, a as u8)
    } else {
        (a as u8, (a - 1) as u8)
    };
    let mut h = DividedHom::zero(n, n, d, p);
    for mu in compositions(n, d - r) {
        let mut m = diagonal(&mu.0);
        m.extend(std::iter::repeat_n(pair, r));
        m.sort_unstable();
        h.terms.insert(m, 1);
    }
    h
}

/// The standard generating family of `S(n, d)` with its labels.
pub fn standard_generators(n: usize, d: usize, p: u32) -> Vec<(GenLabel, DividedHom)> {
    let mut out = Vec::new();
    for mu in compositions(n, d) {
        out.push((
            GenLabel::Idem(mu.0.clone()),
            DividedHom::basis(n, n, diagonal(&mu.0), p),
        ));
    }
    for raise in [true, false] {
        for a in 1..n {
            for r in 1..=d {
                let label = if raise {
                    GenLabel::E { a, r }
                } else {
                    GenLabel::F { a, r }
                };
                out.push((label, divided_power(n, d, a, r, raise, p)));
            }
        }
    }
    out
}

/// Position of the transpose partner `J(g)` of each standard generator:
/// `E ↔ F`, idempotents fixed.
pub fn transpose_partner(labels: &[GenLabel]) -> Vec<usize> {
    labels
        .iter()
        .map(|l| {
            let t = match l {
                GenLabel::E { a, r } => GenLabel::F { a: *a, r: *r },
                GenLabel::F { a, r } => GenLabel::E { a: *a, r: *r },
                other => other.clone(),
            };
            labels.iter().position(|x| *x == t).expect("partner present")
        })
        .collect()
}

type ProductMemo = RwLock<HashMap<(usize, usize), Arc<Vec<(usize, u32)>>>>;

/// `S(n, d)` over `F_p`, with products computed on demand and memoised.
pub struct SchurAlg {
    pub n: usize,
    pub d: usize,
    pub p: u32,
    basis: Vec<Multiset>,
    index: HashMap<Multiset, usize>,
    memo: ProductMemo,
}

impl std::fmt::Debug for SchurAlg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S({},{}) over F_{}", self.n, self.d, self.p)
    }
}

pub fn build_schur_algebra(n: usize, d: usize, p: u32) -> Result<SchurAlg> {
    if !ff::is_prime(p) {
        return Err(Error::InvalidPartition(format!("{p} is not prime")));
    }
    if n == 0 || d == 0 || n > 255 {
        return Err(Error::InvalidPartition("n and d must be positive".into()));
    }
    if (n as f64).powi(d as i32) > SIZE_GUARD as f64 {
        return Err(Error::SizeGuard(format!("n^d = {n}^{d} exceeds {SIZE_GUARD}")));
    }
    let basis = multisets(n, n, d);
    debug_assert_eq!(basis.len(), binomial(n * n + d - 1, d));
    let index = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    Ok(SchurAlg {
        n,
        d,
        p,
        basis,
        index,
        memo: RwLock::new(HashMap::new()),
    })
}

impl SchurAlg {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Multiset] {
        &self.basis
    }

    pub fn index_of(&self, m: &[(u8, u8)]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn algebra_id(&self) -> AlgebraId {
        AlgebraId::Schur {
            n: self.n,
            d: self.d,
        }
    }

    /// Product of two basis elements as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> Arc<Vec<(usize, u32)>> {
        if let Some(v) = self.memo.read().expect("memo lock").get(&(i, j)) {
            return v.clone();
        }
        let p = self.p as u64;
        let v: Vec<(usize, u32)> = compose_multisets(&self.basis[i], &self.basis[j])
            .into_iter()
            .filter(|(_, c)| c % p != 0)
            .map(|(m, c)| (self.index[&m], (c % p) as u32))
            .collect();
        let v = Arc::new(v);
        self.memo
            .write()
            .expect("memo lock")
            .insert((i, j), v.clone());
        v
    }

    /// Product of dense coordinate vectors.
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.dim()];
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                let ab = ff::mul(a, b, p);
                for &(k, c) in self.product(i, j).iter() {
                    out[k] = ff::add(out[k], ff::mul(ab, c, p), p);
                }
            }
        }
        out
    }

    pub fn to_vector(&self, h: &DividedHom) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for (m, &c) in &h.terms {
            v[self.index[m]] = c;
        }
        v
    }

    pub fn unit(&self) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for (_, e) in self.weight_idempotents() {
            v[e] = 1;
        }
        v
    }

    /// `λ ↦` index of `e_λ` for every `λ ∈ Λ(n, d)`.
    pub fn weight_idempotents(&self) -> Vec<(Composition, usize)> {
        compositions(self.n, self.d)
            .into_iter()
            .map(|mu| {
                let k = self.index[&diagonal(&mu.0)];
                (mu, k)
            })
            .collect()
    }

    /// Checks `(ab)c = a(bc)` on seeded random basis triples.
    pub fn check_associativity(&self, trials: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = self.dim();
        (0..trials).all(|_| {
            let (a, b, c) = (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim));
            let unit = |k: usize| {
                let mut v = vec![0; dim];
                v[k] = 1;
                v
            };
            let (va, vb, vc) = (unit(a), unit(b), unit(c));
            self.mul(&self.mul(&va, &vb), &vc) == self.mul(&va, &self.mul(&vb, &vc))
        })
    }

    pub fn generators(&self, set: GeneratorSet) -> Vec<(GenLabel, DividedHom)> {
        match set {
            GeneratorSet::Standard => standard_generators(self.n, self.d, self.p),
            GeneratorSet::FullBasis => self
                .basis
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    (
                        GenLabel::Named(format!("b{k}")),
                        DividedHom::basis(self.n, self.n, m.clone(), self.p),
                    )
                })
                .collect(),
        }
    }

    /// `Γ^d Hom(k^m, kⁿ)` with `S(n, d)` acting by post-composition.
    pub fn representable(&self, m: usize, set: GeneratorSet) -> Result<ModAction> {
        let dim = binomial(m * self.n + self.d - 1, self.d);
        if dim > 2_000 {
            return Err(Error::SizeGuard(format!("representable of dim {dim}")));
        }
        let basis = multisets(self.n, m, self.d);
        let index: HashMap<&Multiset, usize> = basis.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let p = self.p;
        let mut gens = Vec::new();
        for (label, g) in self.generators(set) {
            let mut mat = Mat::zeros(dim, dim, p);
            for (col, b) in basis.iter().enumerate() {
                for (t, &c) in &g.terms {
                    for (mc, k) in compose_multisets(t, b) {
                        let v = ff::mul(c, (k % p as u64) as u32, p);
                        mat.add_at(index[&mc], col, v);
                    }
                }
            }
            gens.push((label, mat));
        }
        let check = set == GeneratorSet::Standard;
        if check {
            ModAction::new(p, dim, gens, self.algebra_id())
        } else {
            ModAction::new_unchecked(p, dim, gens, self.algebra_id())
        }
    }

    /// `Hom_{S(n,d)}(Γ^d Hom(k^m, kⁿ), y)` as a module over `S(m, d)` acting by
    /// pre-composition.
    pub fn yoneda_evaluate(&self, y: &ModAction, m: usize) -> Result<ModAction> {
        let rep_dim = binomial(m * self.n + self.d - 1, self.d);
        if rep_dim * y.dim() > SIZE_GUARD {
            return Err(Error::SizeGuard(format!(
                "Yoneda evaluation of size {rep_dim}·{}",
                y.dim()
            )));
        }
        let rep = self.representable(m, GeneratorSet::Standard)?;
        let homs = hom_space(&rep, y)?;
        let p = self.p;
        let basis = multisets(self.n, m, self.d);
        let index: HashMap<&Multiset, usize> = basis.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let k = homs.len();
        let vecs: Vec<Vec<u32>> = homs.iter().map(|h| h.entries().to_vec()).collect();
        let coords = Mat::from_columns(&vecs, y.dim() * rep_dim, p);
        let mut gens = Vec::new();
        for (label, x) in standard_generators(m, self.d, p) {
            // right multiplication h ↦ h ∘ x on the representable
            let mut r = Mat::zeros(rep_dim, rep_dim, p);
            for (col, b) in basis.iter().enumerate() {
                for (t, &c) in &x.terms {
                    for (mc, cnt) in compose_multisets(b, t) {
                        r.add_at(index[&mc], col, ff::mul(c, (cnt % p as u64) as u32, p));
                    }
                }
            }
            let images: Vec<Vec<u32>> = homs.iter().map(|h| h.mul(&r).entries().to_vec()).collect();
            let rhs = Mat::from_columns(&images, y.dim() * rep_dim, p);
            let a = if k == 0 {
                Mat::zeros(0, 0, p)
            } else {
                coords
                    .solve(&rhs)?
                    .ok_or_else(|| Error::NotStable("pre-composition left the hom space".into()))?
            };
            gens.push((label, a));
        }
        ModAction::new(p, k, gens, AlgebraId::Schur { n: m, d: self.d })
    }

    /// The corner element `{(σ(j), j)}` of a permutation (`n ≥ d`).
    pub fn corner_element(&self, sigma: &[usize]) -> Result<usize> {
        if self.n < self.d {
            return Err(Error::Unsupported(format!(
                "symmetric-group corner needs n ≥ d, got n={} d={}",
                self.n, self.d
            )));
        }
        let mut m: Multiset = sigma.iter().enumerate().map(|(j, &s)| (s as u8, j as u8)).collect();
        m.sort_unstable();
        Ok(self.index[&m])
    }

    /// Indices of the corner basis `c_σ` for all `σ ∈ S_d`, in the order of
    /// [`crate::symgrp::all_perms`].
    pub fn symgroup_corner(&self) -> Result<Vec<usize>> {
        crate::symgrp::all_perms(self.d)
            .iter()
            .map(|s| self.corner_element(s))
            .collect()
    }

    /// Index of `e_ω`, `ω = (1^d, 0^{n−d})`.
    pub fn omega(&self) -> Result<usize> {
        let id: Vec<usize> = (0..self.d).collect();
        self.corner_element(&id)
    }
}
