use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::{hom_space, invariant_mismatch};
use super::poly::{self, Poly};
use super::{spin, spin_with, ModAction};
use crate::error::{Error, Result};
use crate::ff::{self, Echelon, Mat};

const RANDOM_TRIALS: usize = 64;
const MAX_WORD: usize = 8;
/// Largest kernel projective space searched exhaustively.
const KERNEL_SWEEP: u64 = 512;
/// Largest prime for which eigenvalues are found by exhaustive evaluation.
const ROOT_SEARCH_LIMIT: u32 = 1 << 16;

/// Result of a simplicity test.
#[derive(Clone, Debug)]
pub enum Simplicity {
    Simple,
    /// A proper nonzero invariant subspace.
    Proper(Echelon),
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }
}

fn random_word(m: &ModAction, rng: &mut ChaCha8Rng) -> Mat {
    let gens = m.gens();
    let len = rng.gen_range(1..=MAX_WORD);
    let mut w = gens[rng.gen_range(0..gens.len())].1.clone();
    for _ in 1..len {
        w = w.mul(&gens[rng.gen_range(0..gens.len())].1);
    }
    w
}

fn random_element(m: &ModAction, rng: &mut ChaCha8Rng) -> Mat {
    let p = m.prime();
    let mut a = Mat::zeros(m.dim(), m.dim(), p);
    for _ in 0..3 {
        let w = random_word(m, rng);
        a.axpy(rng.gen_range(1..p.max(2)), &w);
    }
    a
}

/// Elements tried after the random budget: generators, pairwise sums and products.
fn sweep_elements(m: &ModAction) -> Vec<Mat> {
    let gens: Vec<&Mat> = m.gen_mats().collect();
    let mut out = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            out.push(a.add(b));
            out.push(a.mul(b));
            out.push(b.mul(a));
        }
    }
    out
}

/// Roots in `F_p` of the polynomial with coefficients `c` (constant term first).
fn poly_roots(c: &[u32], p: u32) -> Vec<u32> {
    if p > ROOT_SEARCH_LIMIT {
        return if c.first() == Some(&0) { vec![0] } else { Vec::new() };
    }
    (0..p)
        .filter(|&x| {
            c.iter()
                .rev()
                .fold(0u32, |acc, &k| ff::add(ff::mul(acc, x, p), k, p))
                == 0
        })
        .collect()
}

/// Minimal polynomial of `v` under `a` (monic, constant term first).
fn krylov_poly(a: &Mat, v: &[u32]) -> Vec<u32> {
    let p = a.prime();
    let n = a.rows();
    // rows: [a^i v | e_i] reduced together to record the dependency
    let width = n + n + 1;
    let mut ech = Echelon::new(width, p);
    let mut cur = v.to_vec();
    for i in 0..=n {
        let mut row = vec![0u32; width];
        row[..n].copy_from_slice(&cur);
        row[n + i] = 1;
        let mut r = row.clone();
        ech.reduce(&mut r);
        if r[..n].iter().all(|&x| x == 0) {
            // r[n..] gives coefficients of a vanishing combination
            let coeffs = &r[n..n + i + 1];
            let lead = coeffs[i];
            let il = ff::inv(lead, p);
            return coeffs.iter().map(|&x| ff::mul(x, il, p)).collect();
        }
        ech.insert(&row);
        cur = a.mul_vec(&cur);
    }
    unreachable!("Krylov sequence is dependent after n+1 steps")
}

/// Vectors of `span(basis)` up to scalars, if there are few enough.
fn projective_points(basis: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let k = basis.len() as u32;
    let count = (p as u64).checked_pow(k)?.saturating_sub(1) / (p as u64 - 1);
    if count > KERNEL_SWEEP {
        return None;
    }
    let len = basis[0].len();
    let mut out = Vec::new();
    // leading nonzero coefficient normalised to 1
    for lead in 0..basis.len() {
        let rest = basis.len() - lead - 1;
        let total = (p as u64).pow(rest as u32);
        for code in 0..total {
            let mut v = basis[lead].clone();
            let mut c = code;
            for b in &basis[lead + 1..] {
                let coef = (c % p as u64) as u32;
                c /= p as u64;
                if coef != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = ff::add(*x, ff::mul(coef, y, p), p);
                    }
                }
            }
            debug_assert_eq!(v.len(), len);
            out.push(v);
        }
    }
    Some(out)
}

enum NortonStep {
    Decided(Simplicity),
    Skip,
}

/// Norton's criterion on the singular element `b`. When the kernel is a
/// single vector over the residue field of an irreducible factor of degree
/// `factor_degree`, one kernel vector suffices; otherwise every kernel vector
/// up to scalars is spun, if there are few enough.
fn norton(m: &ModAction, b: &Mat, factor_degree: usize, rng: &mut ChaCha8Rng) -> NortonStep {
    let n = m.dim();
    let p = m.prime();
    let kernel = b.kernel_basis();
    if kernel.is_empty() {
        return NortonStep::Skip;
    }
    let mut v = vec![0u32; n];
    for k in &kernel {
        let c = rng.gen_range(1..p.max(2));
        for (x, &y) in v.iter_mut().zip(k) {
            *x = ff::add(*x, ff::mul(c, y, p), p);
        }
    }
    if v.iter().any(|&x| x != 0) {
        let s = spin(m, &[v]);
        if s.dim() < n {
            return NortonStep::Decided(Simplicity::Proper(s));
        }
    }
    if kernel.len() != factor_degree {
        let Some(points) = projective_points(&kernel, p) else {
            return NortonStep::Skip;
        };
        for v in points {
            let s = spin(m, &[v]);
            if s.dim() < n {
                return NortonStep::Decided(Simplicity::Proper(s));
            }
        }
    }
    let dual_kernel = b.transpose().kernel_basis();
    let w = dual_kernel[0].clone();
    let t: Vec<Mat> = m.gen_mats().map(|g| g.transpose()).collect();
    let s = spin_with(t.iter(), n, p, &[w]);
    if s.dim() < n {
        // the annihilator of a proper submodule of the dual
        let ann = s.to_rows().kernel_basis();
        let mut ech = Echelon::new(n, p);
        for v in ann {
            ech.insert(&v);
        }
        return NortonStep::Decided(Simplicity::Proper(ech));
    }
    NortonStep::Decided(Simplicity::Simple)
}

fn try_element(m: &ModAction, a: &Mat, rng: &mut ChaCha8Rng) -> Option<Simplicity> {
    let n = m.dim();
    let p = m.prime();
    let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    let f = krylov_poly(a, &v);
    let mut candidates: Vec<(usize, Poly)> = Vec::new();
    for (deg, g) in poly::distinct_degree(&f, p) {
        if deg == 1 && p <= ROOT_SEARCH_LIMIT {
            for r in poly_roots(&g, p) {
                candidates.push((1, vec![ff::neg(r, p), 1]));
            }
        } else {
            candidates.push((deg, g));
        }
    }
    if candidates.is_empty() {
        for r in poly_roots(&f, p) {
            candidates.push((1, vec![ff::neg(r, p), 1]));
        }
    }
    for (deg, h) in candidates {
        let b = poly::eval_at(&h, a);
        if let NortonStep::Decided(s) = norton(m, &b, deg, rng) {
            return Some(s);
        }
    }
    None
}

/// Decides simplicity with the Meataxe; a `Simple` answer is always backed by
/// Norton's criterion.
pub fn certify_simple(m: &ModAction, seed: u64) -> Result<Simplicity> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::ZeroModule);
    }
    if n == 1 {
        return Ok(Simplicity::Simple);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if m.gens().is_empty() {
        let mut ech = Echelon::new(n, m.prime());
        let mut e = vec![0; n];
        e[0] = 1;
        ech.insert(&e);
        return Ok(Simplicity::Proper(ech));
    }
    for (_, g) in m.gens() {
        if let Some(s) = try_element(m, g, &mut rng) {
            return Ok(s);
        }
    }
    for _ in 0..RANDOM_TRIALS {
        let a = random_element(m, &mut rng);
        if let Some(s) = try_element(m, &a, &mut rng) {
            return Ok(s);
        }
    }
    for a in sweep_elements(m) {
        if let Some(s) = try_element(m, &a, &mut rng) {
            return Ok(s);
        }
    }
    Err(Error::Budget(format!(
        "no element with a small enough kernel found for a module of dim {n}"
    )))
}

/// Composition factors, bottom of a composition series first.
pub fn composition_factors(m: &ModAction, seed: u64) -> Result<Vec<ModAction>> {
    let mut out = Vec::new();
    if m.dim() == 0 {
        return Ok(out);
    }
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        match certify_simple(&x, seed)? {
            Simplicity::Simple => out.push(x),
            Simplicity::Proper(u) => {
                // top pushed first so the submodule is processed first
                stack.push(x.quotient(&u)?);
                stack.push(x.submodule(&u)?);
            }
        }
    }
    Ok(out)
}

/// Isomorphism between two simple modules: any nonzero homomorphism.
pub fn simple_isomorphism(a: &ModAction, b: &ModAction) -> Result<Option<Mat>> {
    if invariant_mismatch(a, b).is_some() {
        return Ok(None);
    }
    Ok(hom_space(a, b)?
        .into_iter()
        .next()
        .filter(|f| f.is_invertible()))
}

/// Groups simple modules into isomorphism classes with multiplicities, in
/// order of first appearance.
pub fn group_isomorphic(factors: &[ModAction], _seed: u64) -> Result<Vec<(ModAction, usize)>> {
    let mut classes: Vec<(ModAction, usize)> = Vec::new();
    'outer: for f in factors {
        for (rep, count) in classes.iter_mut() {
            if simple_isomorphism(rep, f)?.is_some() {
                *count += 1;
                continue 'outer;
            }
        }
        classes.push((f.clone(), 1));
    }
    Ok(classes)
}

/// Radical and top of a module relative to a list of simple modules.
#[derive(Clone, Debug)]
pub struct RadicalTop {
    pub rad: Echelon,
    pub top: ModAction,
    /// Multiplicity of each listed simple in the top.
    pub multiplicities: Vec<usize>,
}

/// `rad m` is the joint kernel of all homomorphisms to the listed simples.
pub fn radical_top(m: &ModAction, simples: &[ModAction]) -> Result<RadicalTop> {
    let p = m.prime();
    let n = m.dim();
    let mut stacked: Vec<Vec<u32>> = Vec::new();
    let mut multiplicities = Vec::with_capacity(simples.len());
    let mut expected = 0;
    for l in simples {
        let homs = hom_space(m, l)?;
        let end = hom_space(l, l)?.len().max(1);
        multiplicities.push(homs.len() / end);
        expected += homs.len() / end * l.dim();
        for f in &homs {
            for i in 0..f.rows() {
                stacked.push(f.row(i).to_vec());
            }
        }
    }
    let mut rad = Echelon::new(n, p);
    let kernel = if stacked.is_empty() {
        (0..n)
            .map(|j| {
                let mut v = vec![0; n];
                v[j] = 1;
                v
            })
            .collect()
    } else {
        Mat::from_row_vecs(&stacked, n, p).kernel_basis()
    };
    for v in kernel {
        rad.insert(&v);
    }
    if n > 0 && rad.dim() == n {
        return Err(Error::IncompleteSimples(
            "module has no simple quotient among those listed".into(),
        ));
    }
    let seed = 0;
    for f in composition_factors(&m.submodule(&rad)?, seed)? {
        let mut found = false;
        for l in simples {
            if simple_isomorphism(l, &f)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::IncompleteSimples(format!(
                "the radical has a composition factor of dim {} not in the list",
                f.dim()
            )));
        }
    }
    let top = m.quotient(&rad)?;
    if top.dim() != expected {
        return Err(Error::IncompleteSimples(format!(
            "top has dim {} but the listed simples account for {expected}",
            top.dim()
        )));
    }
    Ok(RadicalTop {
        rad,
        top,
        multiplicities,
    })
}
