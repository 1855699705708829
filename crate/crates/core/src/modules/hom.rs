use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{composition_factors, group_isomorphic, spin, GenLabel, ModAction};
use crate::error::{Error, Result};
use crate::ff::{Echelon, Mat};

const RANDOM_TRIALS: usize = 64;

/// A module homomorphism `mat: source → target`.
#[derive(Clone, Debug)]
pub struct ModMorphism {
    pub source: ModAction,
    pub target: ModAction,
    pub mat: Mat,
}

impl ModMorphism {
    /// Checks that `mat` intertwines every generator.
    pub fn new(source: ModAction, target: ModAction, mat: Mat) -> Result<Self> {
        source.same_algebra(&target)?;
        if mat.rows() != target.dim() || mat.cols() != source.dim() {
            return Err(Error::DimensionMismatch("morphism shape".into()));
        }
        if !intertwines(&source, &target, &mat) {
            return Err(Error::RelationViolated("matrix does not intertwine".into()));
        }
        Ok(ModMorphism {
            source,
            target,
            mat,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.mat.is_invertible()
    }
}

pub fn intertwines(m: &ModAction, n: &ModAction, f: &Mat) -> bool {
    m.gen_mats()
        .zip(n.gen_mats())
        .all(|(a, b)| f.mul(a) == b.mul(f))
}

/// Candidate seed vectors: images of standard vectors under each weight
/// idempotent (weight vectors), then the standard basis.
fn seed_candidates(m: &ModAction) -> Vec<(Vec<u32>, Option<usize>)> {
    let mut out = Vec::new();
    for (gi, (l, e)) in m.gens().iter().enumerate() {
        if let GenLabel::Idem(_) = l {
            let mut ech = Echelon::new(m.dim(), m.prime());
            for c in e.columns() {
                if ech.insert(&c) {
                    out.push((c, Some(gi)));
                }
            }
        }
    }
    if out.is_empty() {
        for j in 0..m.dim() {
            let mut v = vec![0; m.dim()];
            v[j] = 1;
            out.push((v, None));
        }
    }
    out
}

/// Basis of `Hom(m, n)` as `n.dim × m.dim` matrices.
///
/// Spins a generating set of `m` while carrying, for every vector, its image
/// as a linear function of the unknown images of the seeds; every linear
/// dependency found in `m` yields equations on those unknowns.
pub fn hom_space(m: &ModAction, n: &ModAction) -> Result<Vec<Mat>> {
    m.same_algebra(n)?;
    let p = m.prime();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    // choose seeds generating m
    let mut seeds: Vec<(Vec<u32>, Mat)> = Vec::new();
    let mut covered = Echelon::new(dm, p);
    for (v, idem) in seed_candidates(m) {
        if covered.dim() == dm {
            break;
        }
        if covered.contains(&v) {
            continue;
        }
        let image_space = match idem {
            Some(gi) => n.gens()[gi].1.column_space(),
            None => Mat::identity(dn, p),
        };
        seeds.push((v.clone(), image_space));
        let mut all: Vec<Vec<u32>> = covered.basis().to_vec();
        all.push(v);
        covered = spin(m, &all);
    }
    let unknowns: usize = seeds.iter().map(|(_, c)| c.cols()).sum();
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let width = dm + dn * unknowns;
    let mut aug = Echelon::new(width, p);
    let mut constraints = Echelon::new(unknowns, p);
    let mut queue: Vec<Vec<u32>> = Vec::new();

    let mut offset = 0;
    for (v, c) in &seeds {
        let mut row = vec![0u32; width];
        row[..dm].copy_from_slice(v);
        for i in 0..dn {
            for j in 0..c.cols() {
                row[dm + i * unknowns + offset + j] = c.get(i, j);
            }
        }
        offset += c.cols();
        absorb(&mut aug, &mut constraints, &mut queue, row, dm, dn, unknowns);
    }
    while let Some(row) = queue.pop() {
        if constraints.dim() == unknowns {
            return Ok(Vec::new());
        }
        let v = &row[..dm];
        let img = Mat::from_vec(dn, unknowns, p, row[dm..].to_vec())?;
        for (a, b) in m.gen_mats().zip(n.gen_mats()) {
            let mut next = a.mul_vec(v);
            next.extend_from_slice(b.mul(&img).entries());
            absorb(&mut aug, &mut constraints, &mut queue, next, dm, dn, unknowns);
        }
    }
    debug_assert_eq!(aug.dim(), dm);
    let sol = constraints.to_rows();
    let kernel = if constraints.dim() == 0 {
        (0..unknowns)
            .map(|j| {
                let mut v = vec![0; unknowns];
                v[j] = 1;
                v
            })
            .collect()
    } else {
        sol.kernel_basis()
    };
    let mut out = Vec::with_capacity(kernel.len());
    for x in kernel {
        let mut f = Mat::zeros(dn, dm, p);
        for (row, &piv) in aug.basis().iter().zip(aug.pivots()) {
            let img = Mat::from_vec(dn, unknowns, p, row[dm..].to_vec())?;
            for (i, val) in img.mul_vec(&x).into_iter().enumerate() {
                f.set(i, piv, val);
            }
        }
        debug_assert!(intertwines(m, n, &f));
        out.push(f);
    }
    Ok(out)
}

fn absorb(
    aug: &mut Echelon,
    constraints: &mut Echelon,
    queue: &mut Vec<Vec<u32>>,
    mut row: Vec<u32>,
    dm: usize,
    dn: usize,
    unknowns: usize,
) {
    aug.reduce(&mut row);
    if row[..dm].iter().any(|&x| x != 0) {
        aug.insert(&row);
        queue.push(row);
    } else {
        for i in 0..dn {
            let eq = &row[dm + i * unknowns..dm + (i + 1) * unknowns];
            if eq.iter().any(|&x| x != 0) {
                constraints.insert(eq);
            }
        }
    }
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoOutcome {
    /// An invertible intertwiner `m → n`.
    Isomorphic(Mat),
    /// Refuted by the named invariant.
    NotIsomorphic(String),
    /// Search exhausted without a discriminating invariant.
    Inconclusive(String),
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&Mat> {
        match self {
            IsoOutcome::Isomorphic(w) => Some(w),
            _ => None,
        }
    }
}

pub(crate) fn random_combination(basis: &[Mat], rng: &mut ChaCha8Rng) -> Mat {
    let p = basis[0].prime();
    let mut acc = Mat::zeros(basis[0].rows(), basis[0].cols(), p);
    for b in basis {
        acc.axpy(rng.gen_range(0..p), b);
    }
    acc
}

const EXHAUSTIVE_LIMIT: u64 = 1 << 14;

/// Tries every element of `span(basis)` up to scalars when there are few
/// enough; `None` means the space is too large to enumerate.
fn exhaustive_invertible(basis: &[Mat]) -> Option<Option<Mat>> {
    let p = basis[0].prime() as u64;
    let mut total: u64 = 1;
    for _ in basis {
        total = total.checked_mul(p)?;
        if total > EXHAUSTIVE_LIMIT {
            return None;
        }
    }
    let k = basis.len();
    // leading coefficient fixed to 1
    for lead in 0..k {
        let rest = k - lead - 1;
        let count = p.pow(rest as u32);
        for idx in 0..count {
            let mut acc = basis[lead].clone();
            let mut t = idx;
            for b in &basis[lead + 1..] {
                let c = (t % p) as u32;
                t /= p;
                if c != 0 {
                    acc.axpy(c, b);
                }
            }
            if acc.is_invertible() {
                return Some(Some(acc));
            }
        }
    }
    Some(None)
}

/// Cheap invariants that already refute isomorphism.
pub(crate) fn invariant_mismatch(m: &ModAction, n: &ModAction) -> Option<String> {
    if m.dim() != n.dim() {
        return Some(format!("dimensions differ: {} vs {}", m.dim(), n.dim()));
    }
    if m.weight_multiplicities() != n.weight_multiplicities() {
        return Some("weight multiplicities differ".into());
    }
    for ((l, a), (_, b)) in m.gens().iter().zip(n.gens()) {
        if a.trace() != b.trace() {
            return Some(format!(
                "character differs on {l}: {} vs {}",
                a.trace(),
                b.trace()
            ));
        }
        if a.rank() != b.rank() {
            return Some(format!("rank of {l} differs"));
        }
    }
    None
}

/// Searches `Hom(m, n)` for an invertible element. Non-isomorphism is only
/// reported together with an invariant that tells the modules apart, or after
/// every element of a small `Hom(m, n)` has been tried.
pub fn is_isomorphic(m: &ModAction, n: &ModAction, seed: u64) -> Result<IsoOutcome> {
    m.same_algebra(n)?;
    if let Some(reason) = invariant_mismatch(m, n) {
        return Ok(IsoOutcome::NotIsomorphic(reason));
    }
    if m.dim() == 0 {
        return Ok(IsoOutcome::Isomorphic(Mat::zeros(0, 0, m.prime())));
    }
    let hom = hom_space(m, n)?;
    if hom.is_empty() {
        return Ok(IsoOutcome::NotIsomorphic("Hom(M, N) = 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let f = random_combination(&hom, &mut rng);
        if f.is_invertible() {
            return Ok(IsoOutcome::Isomorphic(f));
        }
    }
    for (i, a) in hom.iter().enumerate() {
        if a.is_invertible() {
            return Ok(IsoOutcome::Isomorphic(a.clone()));
        }
        for b in &hom[i + 1..] {
            let s = a.add(b);
            if s.is_invertible() {
                return Ok(IsoOutcome::Isomorphic(s));
            }
        }
    }
    if let Some(found) = exhaustive_invertible(&hom) {
        return Ok(match found {
            Some(f) => IsoOutcome::Isomorphic(f),
            None => IsoOutcome::NotIsomorphic(format!(
                "no element of Hom(M, N) (dim {}) is invertible",
                hom.len()
            )),
        });
    }
    let end = hom_space(m, m)?;
    if end.len() != hom.len() {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "dim Hom(M, N) = {} but dim End(M) = {}",
            hom.len(),
            end.len()
        )));
    }
    let back = hom_space(n, m)?;
    if back.len() != end.len() {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "dim Hom(N, M) = {} but dim End(M) = {}",
            back.len(),
            end.len()
        )));
    }
    let fm = composition_factors(m, seed)?;
    let fn_ = composition_factors(n, seed)?;
    let gm = group_isomorphic(&fm, seed)?;
    let gn = group_isomorphic(&fn_, seed)?;
    let mut counts_m: Vec<(usize, usize)> = gm.iter().map(|(f, c)| (f.dim(), *c)).collect();
    let mut counts_n: Vec<(usize, usize)> = gn.iter().map(|(f, c)| (f.dim(), *c)).collect();
    counts_m.sort_unstable();
    counts_n.sort_unstable();
    if counts_m != counts_n {
        return Ok(IsoOutcome::NotIsomorphic(
            "composition multisets differ".into(),
        ));
    }
    Ok(IsoOutcome::Inconclusive(
        "no invertible element found and no invariant separates the modules".into(),
    ))
}
