//! Natural subquotients of `T(W) = W^{⊗d}` for `W = k^{m_1} ⊗ … ⊗ k^{m_r}`,
//! built from place permutations and computed one content block at a time.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::ff::{self, Echelon, Mat};
use crate::modules::non_pivots;
use crate::schur::{standard_generators, DividedHom};

use super::Evaluation;

const MAX_AMBIENT: usize = 250_000;

/// Relations spanning the kernel of the quotient step.
#[derive(Clone, Debug)]
pub(crate) enum Relation {
    /// `e_w − τ·e_w` for transpositions `τ` inside the block.
    Sym(Vec<usize>),
    /// `e_w + τ·e_w`, and `e_w` when `w` repeats a letter inside the block.
    Alt(Vec<usize>),
    /// `e_w` whenever some letter occurs at least this often.
    Truncate(usize),
    /// `(s_i·e_w) ⊗ v − e_w ⊗ ρ(s_i) v` for the extra tensor factor.
    Coinvariant(Vec<Mat>),
}

/// `image(U → T ⊗ k^e → (T ⊗ k^e)/K)` where `U` is the invariants of the
/// Young subgroup on `invariant_blocks` and the middle map is the signed sum
/// over the column group on `antisymmetrize`.
#[derive(Clone, Debug, Default)]
pub(crate) struct FrameSpec {
    pub invariant_blocks: Vec<Vec<usize>>,
    pub antisymmetrize: Vec<Vec<usize>>,
    pub relations: Vec<Relation>,
    pub extra: usize,
}

struct Block {
    words: Vec<usize>,
    kernel: Echelon,
    free: Vec<usize>,
    image: Echelon,
    offset: usize,
}

/// Mixed-radix word codec: letter `Σ digit_t·stride_t`, word index with the
/// first position most significant.
struct Words {
    factors: Vec<usize>,
    letters: usize,
    d: usize,
}

impl Words {
    fn decode(&self, mut w: usize) -> Vec<usize> {
        let mut out = vec![0; self.d];
        for k in (0..self.d).rev() {
            out[k] = w % self.letters;
            w /= self.letters;
        }
        out
    }

    fn encode(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &l| acc * self.letters + l)
    }

    fn digit(&self, letter: usize, t: usize) -> usize {
        let stride: usize = self.factors[t + 1..].iter().product();
        (letter / stride) % self.factors[t]
    }

    fn with_digit(&self, letter: usize, t: usize, v: usize) -> usize {
        let stride: usize = self.factors[t + 1..].iter().product();
        letter - self.digit(letter, t) * stride + v * stride
    }
}

fn contents(letters: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, letters: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for l in start..letters {
            cur.push(l);
            rec(l, letters, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, letters, d, &mut Vec::new(), &mut out);
    out
}

fn distinct_arrangements(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `σ·w` for the place action `(σ·w)[σ(k)] = w[k]`.
fn permute(word: &[usize], sigma: &[usize]) -> Vec<usize> {
    let mut out = vec![0; word.len()];
    for (k, &l) in word.iter().enumerate() {
        out[sigma[k]] = l;
    }
    out
}

fn transposition_on(d: usize, a: usize, b: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..d).collect();
    s.swap(a, b);
    s
}

/// Elements of the product of symmetric groups on `blocks`, with signs.
fn block_group(d: usize, blocks: &[Vec<usize>]) -> Vec<(Vec<usize>, bool)> {
    let mut group = vec![((0..d).collect::<Vec<usize>>(), true)];
    for b in blocks {
        let mut next = Vec::new();
        for sub in crate::symgrp::all_perms(b.len()) {
            let even = crate::symgrp::sign(&sub) == 1;
            let mut local: Vec<usize> = (0..d).collect();
            for (i, &j) in sub.iter().enumerate() {
                local[b[i]] = b[j];
            }
            for (g, s) in &group {
                next.push((crate::symgrp::compose(&local, g), *s == even));
            }
        }
        group = next;
    }
    group
}

/// Sparse action of a divided-power element on `[m]^d`, indexed by word.
fn embed_sparse(g: &DividedHom, m: usize, d: usize) -> Vec<Vec<(usize, u32)>> {
    let total = m.pow(d as u32);
    let mut out = vec![Vec::new(); total];
    for (src_idx, slot) in out.iter_mut().enumerate() {
        let mut s = vec![0; d];
        let mut x = src_idx;
        for k in (0..d).rev() {
            s[k] = x % m;
            x /= m;
        }
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for (term, &c) in &g.terms {
            let mut counts: BTreeMap<(u8, u8), usize> = BTreeMap::new();
            for &pair in term {
                *counts.entry(pair).or_insert(0) += 1;
            }
            let mut cur = Vec::with_capacity(d);
            assign(&s, &mut counts, &mut cur, &mut |tgt: &[usize]| {
                let idx = tgt.iter().fold(0, |a, &l| a * m + l);
                let e = acc.entry(idx).or_insert(0);
                *e = ff::add(*e, c, g.p);
            });
        }
        *slot = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    }
    out
}

fn assign(
    s: &[usize],
    counts: &mut BTreeMap<(u8, u8), usize>,
    cur: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let k = cur.len();
    if k == s.len() {
        emit(cur);
        return;
    }
    let keys: Vec<(u8, u8)> = counts
        .iter()
        .filter(|(&(_, j), &n)| j as usize == s[k] && n > 0)
        .map(|(&key, _)| key)
        .collect();
    for key in keys {
        *counts.get_mut(&key).expect("present") -= 1;
        cur.push(key.0 as usize);
        assign(s, counts, cur, emit);
        cur.pop();
        *counts.get_mut(&key).expect("present") += 1;
    }
}

pub(crate) fn evaluate_frame(spec: &FrameSpec, factors: &[usize], d: usize, p: u32) -> Result<Evaluation> {
    let letters: usize = factors.iter().product();
    let e = spec.extra.max(1);
    let total = letters
        .checked_pow(d as u32)
        .filter(|t| t.saturating_mul(e) <= MAX_AMBIENT)
        .ok_or_else(|| Error::SizeGuard(format!("tensor space of {letters} letters in degree {d}")))?;
    let codec = Words {
        factors: factors.to_vec(),
        letters,
        d,
    };
    let group = block_group(d, &spec.antisymmetrize);
    let minus_one = p - 1;
    let mut locate = vec![(usize::MAX, 0usize); total];
    let mut blocks = Vec::new();
    let mut offset = 0;
    for content in contents(letters, d) {
        let words: Vec<usize> = distinct_arrangements(&content).iter().map(|w| codec.encode(w)).collect();
        let bi = blocks.len();
        for (pos, &w) in words.iter().enumerate() {
            locate[w] = (bi, pos);
        }
        let amb = words.len() * e;
        let coord = |w: usize, x: usize| locate[w].1 * e + x;

        let mut kernel = Echelon::new(amb, p);
        for rel in &spec.relations {
            for &w in &words {
                let word = codec.decode(w);
                match rel {
                    Relation::Sym(b) | Relation::Alt(b) => {
                        let alt = matches!(rel, Relation::Alt(_));
                        for (i, &a) in b.iter().enumerate() {
                            for &c in &b[i + 1..] {
                                if alt && word[a] == word[c] {
                                    for x in 0..e {
                                        let mut v = vec![0; amb];
                                        v[coord(w, x)] = 1;
                                        kernel.insert(&v);
                                    }
                                    continue;
                                }
                                let tw = codec.encode(&permute(&word, &transposition_on(d, a, c)));
                                for x in 0..e {
                                    let mut v = vec![0; amb];
                                    v[coord(w, x)] = 1;
                                    let y = coord(tw, x);
                                    v[y] = ff::add(v[y], if alt { 1 } else { minus_one }, p);
                                    kernel.insert(&v);
                                }
                            }
                        }
                    }
                    Relation::Truncate(limit) => {
                        let heavy = content.windows(*limit).any(|win| win[0] == win[limit - 1]);
                        if heavy {
                            for x in 0..e {
                                let mut v = vec![0; amb];
                                v[coord(w, x)] = 1;
                                kernel.insert(&v);
                            }
                        }
                    }
                    Relation::Coinvariant(mats) => {
                        for (i, s) in mats.iter().enumerate() {
                            let tw = codec.encode(&permute(&word, &transposition_on(d, i, i + 1)));
                            for x in 0..e {
                                let mut v = vec![0; amb];
                                v[coord(tw, x)] = 1;
                                for y in 0..e {
                                    let c = s.get(y, x);
                                    if c != 0 {
                                        let k = coord(w, y);
                                        v[k] = ff::sub(v[k], c, p);
                                    }
                                }
                                kernel.insert(&v);
                            }
                        }
                    }
                }
            }
        }
        let free = non_pivots(&kernel);

        let mut sources: Vec<Vec<u32>> = Vec::new();
        if spec.invariant_blocks.is_empty() {
            for k in 0..amb {
                let mut v = vec![0; amb];
                v[k] = 1;
                sources.push(v);
            }
        } else {
            let row_group = block_group(d, &spec.invariant_blocks);
            let mut seen = HashSet::new();
            for &w in &words {
                if seen.contains(&w) {
                    continue;
                }
                let word = codec.decode(w);
                let orbit: HashSet<usize> = row_group.iter().map(|(g, _)| codec.encode(&permute(&word, g))).collect();
                for x in 0..e {
                    let mut v = vec![0; amb];
                    for &o in &orbit {
                        v[coord(o, x)] = 1;
                    }
                    sources.push(v);
                }
                seen.extend(orbit);
            }
        }

        let mut image = Echelon::new(free.len(), p);
        for src in sources {
            let mut v = if spec.antisymmetrize.is_empty() {
                src
            } else {
                let mut out = vec![0; amb];
                for (k, &c) in src.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let (w, x) = (words[k / e], k % e);
                    let word = codec.decode(w);
                    for (g, even) in &group {
                        let y = coord(codec.encode(&permute(&word, g)), x);
                        let c = if *even { c } else { ff::neg(c, p) };
                        out[y] = ff::add(out[y], c, p);
                    }
                }
                out
            };
            kernel.reduce(&mut v);
            let q: Vec<u32> = free.iter().map(|&k| v[k]).collect();
            image.insert(&q);
        }
        let dim = image.dim();
        blocks.push(Block {
            words,
            kernel,
            free,
            image,
            offset,
        });
        offset += dim;
    }
    let dim = offset;

    let mut actions = Vec::with_capacity(factors.len());
    for (t, &m) in factors.iter().enumerate() {
        let mut mats = Vec::new();
        for (label, g) in standard_generators(m, d, p) {
            let sparse = embed_sparse(&g, m, d);
            let mut mat = Mat::zeros(dim, dim, p);
            for b in &blocks {
                for (j, row) in b.image.basis().iter().enumerate() {
                    let mut targets: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
                    for (fi, &c) in row.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let k = b.free[fi];
                        let (w, x) = (b.words[k / e], k % e);
                        let word = codec.decode(w);
                        let src = word.iter().fold(0, |a, &l| a * m + codec.digit(l, t));
                        for &(tgt, gc) in &sparse[src] {
                            let mut new = word.clone();
                            let mut r = tgt;
                            for kk in (0..d).rev() {
                                new[kk] = codec.with_digit(word[kk], t, r % m);
                                r /= m;
                            }
                            let (tb, pos) = locate[codec.encode(&new)];
                            let v = targets
                                .entry(tb)
                                .or_insert_with(|| vec![0; blocks[tb].words.len() * e]);
                            v[pos * e + x] = ff::add(v[pos * e + x], ff::mul(c, gc, p), p);
                        }
                    }
                    for (tb, mut v) in targets {
                        let target = &blocks[tb];
                        target.kernel.reduce(&mut v);
                        let q: Vec<u32> = target.free.iter().map(|&k| v[k]).collect();
                        let coords = target
                            .image
                            .coordinates(&q)
                            .ok_or_else(|| Error::NotStable(format!("{label} on factor {t}")))?;
                        for (i, x) in coords.into_iter().enumerate() {
                            if x != 0 {
                                mat.add_at(target.offset + i, b.offset + j, x);
                            }
                        }
                    }
                }
            }
            mats.push((label, mat));
        }
        actions.push(mats);
    }
    Ok(Evaluation {
        p,
        d,
        factors: factors.to_vec(),
        dim,
        actions,
    })
}
