use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hom::{hom_space, random_combination};
use super::{basis_matrix, composition_factors, group_isomorphic, AlgebraId, GenLabel, ModAction};
use crate::error::Result;
use crate::ff::{Echelon, Mat};

const SPLIT_TRIALS: usize = 24;

/// One direct summand: its basis inside the original module, its action and
/// the projection onto it along the other summands.
#[derive(Clone, Debug)]
pub struct Summand {
    /// `dim m × dim summand`, columns spanning the summand.
    pub basis: Mat,
    pub module: ModAction,
    pub projection: Mat,
    /// Endomorphism ring certified local.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Set when some summand could be neither split nor certified indecomposable.
    pub may_be_decomposable: bool,
}

/// Left regular representation of the algebra spanned by `basis` (closed
/// under multiplication).
fn regular_representation(basis: &[Mat]) -> Result<ModAction> {
    let p = basis[0].prime();
    let e = basis.len();
    let vecs: Vec<Vec<u32>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let len = vecs[0].len();
    let coords = Mat::from_columns(&vecs, len, p);
    let mut gens = Vec::with_capacity(e);
    for (i, bi) in basis.iter().enumerate() {
        let rhs: Vec<Vec<u32>> = basis.iter().map(|bj| bi.mul(bj).entries().to_vec()).collect();
        let rhs = Mat::from_columns(&rhs, len, p);
        let l = coords
            .solve(&rhs)?
            .expect("endomorphisms are closed under composition");
        gens.push((GenLabel::Named(format!("b{i}")), l));
    }
    ModAction::new_unchecked(p, e, gens, AlgebraId::Other("End".into()))
}

/// Whether the algebra spanned by `basis` is local: its regular module has a
/// single simple factor `S` up to isomorphism, with `dim S = dim End(S)`.
pub fn is_local_endomorphism_ring(basis: &[Mat], seed: u64) -> Result<bool> {
    if basis.len() <= 1 {
        return Ok(true);
    }
    let reg = regular_representation(basis)?;
    let factors = composition_factors(&reg, seed)?;
    let classes = group_isomorphic(&factors, seed)?;
    if classes.len() != 1 {
        return Ok(false);
    }
    let s = &classes[0].0;
    Ok(hom_space(s, s)?.len() == s.dim())
}

/// Splits `m` into indecomposable summands by Fitting's lemma: for an
/// endomorphism `φ`, `m = ker φᴺ ⊕ im φᴺ` with `N = dim m`.
pub fn fitting_decompose(m: &ModAction, seed: u64) -> Result<Decomposition> {
    let p = m.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done: Vec<(Mat, ModAction, bool)> = Vec::new();
    let mut work = vec![(Mat::identity(m.dim(), p), m.clone())];
    while let Some((basis, x)) = work.pop() {
        if x.dim() == 0 {
            continue;
        }
        let end = hom_space(&x, &x)?;
        if end.len() <= 1 {
            done.push((basis, x, true));
            continue;
        }
        let mut split = None;
        let candidates = (0..SPLIT_TRIALS)
            .map(|_| random_combination(&end, &mut rng))
            .chain(end.iter().cloned());
        for phi in candidates {
            let psi = phi.pow(x.dim());
            let r = psi.rank();
            if r > 0 && r < x.dim() {
                split = Some(psi);
                break;
            }
        }
        match split {
            Some(psi) => {
                for part in [psi.kernel_basis(), psi.column_space().columns()] {
                    let mut ech = Echelon::new(x.dim(), p);
                    for v in &part {
                        ech.insert(v);
                    }
                    let sub = x.submodule(&ech)?;
                    work.push((basis.mul(&basis_matrix(&ech)), sub));
                }
            }
            None => {
                let local = is_local_endomorphism_ring(&end, seed)?;
                done.push((basis, x, local));
            }
        }
    }
    if done.is_empty() {
        return Ok(Decomposition {
            summands: Vec::new(),
            may_be_decomposable: false,
        });
    }
    // largest summands first, ties by first basis column
    done.sort_by(|a, b| b.1.dim().cmp(&a.1.dim()).then_with(|| a.0.column(0).cmp(&b.0.column(0))));
    let all = done
        .iter()
        .skip(1)
        .fold(done[0].0.clone(), |acc, (b, _, _)| acc.hstack(b));
    let inv = all.inverse().expect("summands span the module");
    let mut offset = 0;
    let mut summands = Vec::with_capacity(done.len());
    let may_be_decomposable = done.iter().any(|(_, _, c)| !c);
    for (basis, module, certified) in done {
        let k = module.dim();
        let mut d = Mat::zeros(m.dim(), m.dim(), p);
        for i in offset..offset + k {
            d.set(i, i, 1);
        }
        offset += k;
        summands.push(Summand {
            projection: all.mul(&d).mul(&inv),
            basis,
            module,
            certified,
        });
    }
    Ok(Decomposition {
        summands,
        may_be_decomposable,
    })
}
