//! Internal tensor product as the coend `Y(− ⊗ kⁿ) ⊗_{S(n,d)} X(kⁿ)`,
//! assembled weight by weight.

use super::Evaluation;
use crate::error::{Error, Result};
use crate::ff::{Echelon, Mat};
use crate::modules::{non_pivots, shift_weight, GenLabel, ModAction};
use crate::schur::transpose_partner;

fn image_basis(e: &Mat) -> Echelon {
    let mut ech = Echelon::new(e.rows(), e.prime());
    for c in e.columns() {
        ech.insert(&c);
    }
    ech
}

/// `y` is evaluated with a last factor `kⁿ`; the right `S(n,d)`-action on it
/// is `b·a = ρ(J(a)) b`.
pub(crate) fn coend(y: &Evaluation, x: &ModAction) -> Result<Evaluation> {
    let last = y.factors.len() - 1;
    let n = y.factors[last];
    let p = y.p;
    let right = &y.actions[last];
    let labels: Vec<GenLabel> = right.iter().map(|(l, _)| l.clone()).collect();
    let xlabels: Vec<GenLabel> = x.gens().iter().map(|(l, _)| l.clone()).collect();
    if labels != xlabels {
        return Err(Error::AlgebraMismatch(
            format!("S({n},{}) generators", y.d),
            x.algebra().to_string(),
        ));
    }
    let j = transpose_partner(&labels);

    let weights: Vec<(Vec<usize>, usize)> = labels
        .iter()
        .enumerate()
        .filter_map(|(k, l)| match l {
            GenLabel::Idem(mu) => Some((mu.clone(), k)),
            _ => None,
        })
        .collect();
    let bs: Vec<Echelon> = weights.iter().map(|(_, k)| image_basis(&right[*k].1)).collect();
    let xs: Vec<Echelon> = weights.iter().map(|(_, k)| image_basis(&x.gens()[*k].1)).collect();
    let mut offsets = Vec::with_capacity(weights.len());
    let mut total = 0;
    for (b, xe) in bs.iter().zip(&xs) {
        offsets.push(total);
        total += b.dim() * xe.dim();
    }
    let mut owner = Vec::with_capacity(total);
    for (li, (b, xe)) in bs.iter().zip(&xs).enumerate() {
        for i in 0..b.dim() {
            for jj in 0..xe.dim() {
                owner.push((li, i, jj));
            }
        }
    }
    let index_of = |mu: &[usize]| weights.iter().position(|(w, _)| w == mu);

    let mut rel = Echelon::new(total, p);
    for (gi, label) in labels.iter().enumerate() {
        let (a, r, raise) = match label {
            GenLabel::E { a, r } => (*a, *r, true),
            GenLabel::F { a, r } => (*a, *r, false),
            _ => continue,
        };
        let g_x = &x.gens()[gi].1;
        let g_y = &right[j[gi]].1;
        for (li, (lambda, _)) in weights.iter().enumerate() {
            let Some(mi) = shift_weight(lambda, a, r, raise, n).and_then(|mu| index_of(&mu)) else {
                continue;
            };
            let (bl, bm, xl, xm) = (&bs[li], &bs[mi], &xs[li], &xs[mi]);
            for (i, b) in bm.basis().iter().enumerate() {
                let bg = bl
                    .coordinates(&g_y.mul_vec(b))
                    .ok_or_else(|| Error::NotStable("right action on a weight space".into()))?;
                for (jj, xv) in xl.basis().iter().enumerate() {
                    let gx = xm
                        .coordinates(&g_x.mul_vec(xv))
                        .ok_or_else(|| Error::NotStable("action on a weight space".into()))?;
                    let mut v = vec![0; total];
                    for (k, &c) in bg.iter().enumerate() {
                        v[offsets[li] + k * xl.dim() + jj] = c;
                    }
                    for (l, &c) in gx.iter().enumerate() {
                        let at = offsets[mi] + i * xm.dim() + l;
                        v[at] = crate::ff::sub(v[at], c, p);
                    }
                    rel.insert(&v);
                }
            }
        }
    }
    let free = non_pivots(&rel);
    let dim = free.len();

    let mut actions = Vec::with_capacity(last);
    for gens in &y.actions[..last] {
        let mut mats = Vec::with_capacity(gens.len());
        for (label, h) in gens {
            let mut mat = Mat::zeros(dim, dim, p);
            for (col, &f) in free.iter().enumerate() {
                let (li, i, jj) = owner[f];
                let hb = bs[li]
                    .coordinates(&h.mul_vec(&bs[li].basis()[i]))
                    .ok_or_else(|| Error::NotStable(format!("{label} on a right weight space")))?;
                let mut v = vec![0; total];
                for (k, &c) in hb.iter().enumerate() {
                    v[offsets[li] + k * xs[li].dim() + jj] = c;
                }
                rel.reduce(&mut v);
                for (row, &fr) in free.iter().enumerate() {
                    mat.set(row, col, v[fr]);
                }
            }
            mats.push((label.clone(), mat));
        }
        actions.push(mats);
    }
    Ok(Evaluation {
        p,
        d: y.d,
        factors: y.factors[..last].to_vec(),
        dim,
        actions,
    })
}
