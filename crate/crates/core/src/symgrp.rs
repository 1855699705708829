//! Modules over the group algebra `kS_d`: permutation modules, tensor
//! powers, Kronecker products, duals, Specht modules and the simples `D^λ`.

use std::collections::HashMap;

use crate::combin::{p_regular_partitions, Composition, Partition};
use crate::error::{Error, Result};
use crate::ff::{Echelon, Mat};
use crate::modules::{certify_simple, hom_space, AlgebraId, GenLabel, ModAction, Simplicity};

/// Permutations are stored as image vectors on `0..d`; `(στ)(i) = σ(τ(i))`.
pub type Perm = Vec<usize>;

pub fn compose(s: &[usize], t: &[usize]) -> Perm {
    t.iter().map(|&i| s[i]).collect()
}

pub fn inverse(s: &[usize]) -> Perm {
    let mut out = vec![0; s.len()];
    for (i, &x) in s.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Adjacent transposition `s_i`, 1-based.
pub fn transposition(d: usize, i: usize) -> Perm {
    let mut s: Perm = (0..d).collect();
    s.swap(i - 1, i);
    s
}

pub fn sign(s: &[usize]) -> i64 {
    let mut seen = vec![false; s.len()];
    let mut parity = 0;
    for start in 0..s.len() {
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = s[j];
            len += 1;
        }
        if len > 0 {
            parity += len - 1;
        }
    }
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All permutations of `0..d` in lexicographic order.
pub fn all_perms(d: usize) -> Vec<Perm> {
    fn rec(d: usize, cur: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for x in 0..d {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(d, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(d, &mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// Standard constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Trivial,
    Sign,
    Regular,
    Perm(Composition),
    TensorPower(usize),
}

fn sym_module(d: usize, p: u32, dim: usize, mats: Vec<Mat>) -> Result<ModAction> {
    let gens = mats
        .into_iter()
        .enumerate()
        .map(|(i, m)| (GenLabel::S(i + 1), m))
        .collect();
    ModAction::new(p, dim, gens, AlgebraId::Symmetric { d })
}

/// Module on a set of words closed under place permutations, with
/// `σ·e_I = e_{I∘σ⁻¹}`.
fn word_module(d: usize, p: u32, words: &[Vec<usize>]) -> Result<ModAction> {
    let index: HashMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(k, w)| (w.as_slice(), k))
        .collect();
    let mut mats = Vec::with_capacity(d.saturating_sub(1));
    for i in 1..d {
        let mut m = Mat::zeros(words.len(), words.len(), p);
        for (k, w) in words.iter().enumerate() {
            let mut v = w.clone();
            v.swap(i - 1, i);
            m.set(index[v.as_slice()], k, 1);
        }
        mats.push(m);
    }
    sym_module(d, p, words.len(), mats)
}

/// Words of content `λ` (letter `a` appearing `λ_a` times), lexicographic.
pub fn words_of_content(lambda: &[usize]) -> Vec<Vec<usize>> {
    fn rec(left: &mut [usize], cur: &mut Vec<usize>, d: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for a in 0..left.len() {
            if left[a] > 0 {
                left[a] -= 1;
                cur.push(a);
                rec(left, cur, d, out);
                cur.pop();
                left[a] += 1;
            }
        }
    }
    let d = lambda.iter().sum();
    let mut out = Vec::new();
    rec(&mut lambda.to_vec(), &mut Vec::new(), d, &mut out);
    out
}

/// All words of length `d` over `0..n`, first letter most significant.
pub fn all_words(n: usize, d: usize) -> Vec<Vec<usize>> {
    let total = n.pow(d as u32);
    (0..total)
        .map(|mut c| {
            let mut w = vec![0; d];
            for j in (0..d).rev() {
                w[j] = c % n;
                c /= n;
            }
            w
        })
        .collect()
}

pub fn standard_module(kind: &StandardKind, d: usize, p: u32) -> Result<ModAction> {
    match kind {
        StandardKind::Trivial => sym_module(d, p, 1, vec![Mat::identity(1, p); d.saturating_sub(1)]),
        StandardKind::Sign => sym_module(
            d,
            p,
            1,
            vec![Mat::from_rows(&[vec![-1]], p); d.saturating_sub(1)],
        ),
        StandardKind::Regular => {
            let perms = all_perms(d);
            let index: HashMap<&[usize], usize> = perms
                .iter()
                .enumerate()
                .map(|(k, s)| (s.as_slice(), k))
                .collect();
            let mut mats = Vec::new();
            for i in 1..d {
                let t = transposition(d, i);
                let mut m = Mat::zeros(perms.len(), perms.len(), p);
                for (k, s) in perms.iter().enumerate() {
                    m.set(index[compose(&t, s).as_slice()], k, 1);
                }
                mats.push(m);
            }
            sym_module(d, p, perms.len(), mats)
        }
        StandardKind::Perm(lambda) => {
            if lambda.degree() != d {
                return Err(Error::InvalidPartition(format!(
                    "{lambda} is not a composition of {d}"
                )));
            }
            word_module(d, p, &words_of_content(lambda.parts()))
        }
        StandardKind::TensorPower(n) => {
            if *n == 0 {
                return Err(Error::InvalidPartition("tensor power of a zero space".into()));
            }
            word_module(d, p, &all_words(*n, d))
        }
    }
}

/// Matrix of `σ` on `(kⁿ)^{⊗d}` for the left action `σ·e_I = e_{I∘σ⁻¹}`.
pub fn place_permutation(n: usize, d: usize, sigma: &[usize], p: u32) -> Mat {
    let words = all_words(n, d);
    let si = inverse(sigma);
    let dim = words.len();
    let mut m = Mat::zeros(dim, dim, p);
    for (k, w) in words.iter().enumerate() {
        let target: usize = (0..d).fold(0, |acc, j| acc * n + w[si[j]]);
        m.set(target, k, 1);
    }
    m
}

/// The commuting right action `e_I·σ = e_{I∘σ}`, as a matrix acting on columns.
pub fn right_place_permutation(n: usize, d: usize, sigma: &[usize], p: u32) -> Mat {
    place_permutation(n, d, &inverse(sigma), p)
}

fn degree_of(m: &ModAction) -> Result<usize> {
    match m.algebra() {
        AlgebraId::Symmetric { d } => Ok(*d),
        other => Err(Error::AlgebraMismatch(other.to_string(), "kS_d".into())),
    }
}

pub fn kronecker(a: &ModAction, b: &ModAction) -> Result<ModAction> {
    let (da, db) = (degree_of(a)?, degree_of(b)?);
    if da != db {
        return Err(Error::DegreeMismatch(da, db));
    }
    let mats = a.gen_mats().zip(b.gen_mats()).map(|(x, y)| x.kron(y)).collect();
    sym_module(da, a.prime(), a.dim() * b.dim(), mats)
}

/// Dual with `σ ↦ ρ(σ⁻¹)ᵀ`; generators are involutions.
pub fn internal_dual(m: &ModAction) -> Result<ModAction> {
    let d = degree_of(m)?;
    sym_module(d, m.prime(), m.dim(), m.gen_mats().map(|g| g.transpose()).collect())
}

/// `Hom_k(a, b)` with `(σ·f) = ρ_b(σ) f ρ_a(σ⁻¹)`, basis `E_{ij}` row-major.
pub fn internal_hom(a: &ModAction, b: &ModAction) -> Result<ModAction> {
    let (da, db) = (degree_of(a)?, degree_of(b)?);
    if da != db {
        return Err(Error::DegreeMismatch(da, db));
    }
    let p = a.prime();
    let (na, nb) = (a.dim(), b.dim());
    let mut mats = Vec::new();
    for (ra, rb) in a.gen_mats().zip(b.gen_mats()) {
        let mut m = Mat::zeros(na * nb, na * nb, p);
        for i in 0..nb {
            for j in 0..na {
                let mut e = Mat::zeros(nb, na, p);
                e.set(i, j, 1);
                let img = rb.mul(&e).mul(ra);
                for (k, &x) in img.entries().iter().enumerate() {
                    m.set(k, i * na + j, x);
                }
            }
        }
        mats.push(m);
    }
    sym_module(da, p, na * nb, mats)
}

/// A Specht module inside `M^λ` with the restriction of the standard form.
#[derive(Clone, Debug)]
pub struct Specht {
    pub lambda: Partition,
    pub module: ModAction,
    /// Basis vectors (rows) in the tabloid basis of `M^λ`.
    pub basis: Mat,
    pub gram: Mat,
}

/// Standard tableaux of shape `λ` as rows of entries `0..d`.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        lambda: &Partition,
        next: usize,
        d: usize,
        t: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if next == d {
            out.push(t.clone());
            return;
        }
        for r in 0..lambda.len() {
            let len = t[r].len();
            if len < lambda.part(r) && (r == 0 || t[r - 1].len() > len) {
                t[r].push(next);
                rec(lambda, next + 1, d, t, out);
                t[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut t = vec![Vec::new(); lambda.len()];
    rec(lambda, 0, lambda.degree(), &mut t, &mut out);
    out
}

/// Polytabloid `Σ_{π ∈ C_t} sgn(π) {πt}` in the tabloid basis (tabloids are
/// words `I` with `I_x` the row of `x`).
fn polytabloid(t: &[Vec<usize>], index: &HashMap<Vec<usize>, usize>, dim: usize, p: u32) -> Vec<u32> {
    let d: usize = t.iter().map(|r| r.len()).sum();
    let mut row_of = vec![0; d];
    for (r, row) in t.iter().enumerate() {
        for &x in row {
            row_of[x] = r;
        }
    }
    let columns: Vec<Vec<usize>> = (0..t[0].len())
        .map(|j| t.iter().filter(|r| r.len() > j).map(|r| r[j]).collect())
        .collect();
    let mut v = vec![0u32; dim];
    // iterate over the product of column symmetric groups
    let col_perms: Vec<Vec<Perm>> = columns.iter().map(|c| all_perms(c.len())).collect();
    let mut choice = vec![0usize; columns.len()];
    loop {
        let mut pi: Perm = (0..d).collect();
        let mut sgn = 1;
        for (c, col) in columns.iter().enumerate() {
            let s = &col_perms[c][choice[c]];
            sgn *= sign(s);
            for (k, &x) in col.iter().enumerate() {
                pi[x] = col[s[k]];
            }
        }
        // I_{π(x)} = row_t(x)
        let mut word = vec![0; d];
        for x in 0..d {
            word[pi[x]] = row_of[x];
        }
        let k = index[&word];
        v[k] = if sgn > 0 {
            crate::ff::add(v[k], 1, p)
        } else {
            crate::ff::sub(v[k], 1, p)
        };
        let mut c = 0;
        loop {
            if c == columns.len() {
                return v;
            }
            choice[c] += 1;
            if choice[c] < col_perms[c].len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

pub fn specht(lambda: &Partition, p: u32) -> Result<Specht> {
    let d = lambda.degree();
    if d == 0 {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    let words = words_of_content(lambda.parts());
    let index: HashMap<Vec<usize>, usize> =
        words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    let perm = word_module(d, p, &words)?;
    let mut ech = Echelon::new(words.len(), p);
    for t in standard_tableaux(lambda) {
        ech.insert(&polytabloid(&t, &index, words.len(), p));
    }
    let module = perm.submodule(&ech)?;
    let basis = ech.to_rows();
    let gram = basis.mul(&basis.transpose());
    Ok(Specht {
        lambda: lambda.clone(),
        module,
        basis,
        gram,
    })
}

/// `D^λ = S^λ / (S^λ ∩ S^{λ⊥})` for `p`-regular `λ`, certified simple.
pub fn simple_d(lambda: &Partition, p: u32) -> Result<ModAction> {
    if !lambda.is_p_regular(p as usize) {
        return Err(Error::WrongClass(lambda.to_string(), "p-regular"));
    }
    let s = specht(lambda, p)?;
    let mut rad = Echelon::new(s.module.dim(), p);
    for v in s.gram.kernel_basis() {
        rad.insert(&v);
    }
    let d = s.module.quotient(&rad)?;
    match certify_simple(&d, 0)? {
        Simplicity::Simple => Ok(d),
        Simplicity::Proper(_) => Err(Error::Identification(format!(
            "D^{lambda} failed the simplicity certificate"
        ))),
    }
}

/// The unique `μ` with `D^λ ⊗ sgn ≅ D^μ`, found by testing all `p`-regular `μ`.
pub fn sign_twist_identify(lambda: &Partition, p: u32) -> Result<Partition> {
    let d = lambda.degree();
    let twisted = kronecker(&simple_d(lambda, p)?, &standard_module(&StandardKind::Sign, d, p)?)?;
    let mut hits = Vec::new();
    for mu in p_regular_partitions(d, p as usize) {
        let dm = simple_d(&mu, p)?;
        if dm.dim() != twisted.dim() {
            continue;
        }
        if !hom_space(&twisted, &dm)?.is_empty() {
            hits.push(mu);
        }
    }
    match hits.as_slice() {
        [mu] => Ok(mu.clone()),
        _ => Err(Error::Identification(format!(
            "sign twist of D^{lambda} matched {} candidates",
            hits.len()
        ))),
    }
}
