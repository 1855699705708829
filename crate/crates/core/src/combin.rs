//! Compositions, partitions, their orders and `p`-classes, `p`-cores and the
//! Mullineux map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::is_prime;

/// A composition of `d`: a finite sequence of non-negative parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Composition with `n` parts obtained by padding with zeros.
    pub fn padded(&self, n: usize) -> Option<Composition> {
        if self.0.iter().skip(n).any(|&x| x != 0) {
            return None;
        }
        let mut v: Vec<usize> = self.0.iter().copied().take(n).collect();
        v.resize(n, 0);
        Some(Composition(v))
    }

    /// The partition obtained by sorting the parts.
    pub fn sorted(&self) -> Partition {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).expect("sorted parts form a partition")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A partition in canonical form: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates weak decrease and strips trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// `(1, …, 1)` with `d` entries.
    pub fn column(d: usize) -> Partition {
        Partition(vec![1; d])
    }

    pub fn row(d: usize) -> Partition {
        if d == 0 {
            Partition::empty()
        } else {
            Partition(vec![d])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn as_composition(&self, n: usize) -> Option<Composition> {
        Composition(self.0.clone()).padded(n)
    }

    pub fn contains_cell(&self, i: usize, j: usize) -> bool {
        j < self.part(i)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition(
            (0..first)
                .map(|j| self.0.iter().filter(|&&x| x > j).count())
                .collect(),
        )
    }

    /// Hook lengths, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let c = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j - 1) + (c.part(j) - i - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// Number of standard Young tableaux (hook length formula).
    pub fn standard_tableaux_count(&self) -> u128 {
        let d = self.degree() as u128;
        let fact: u128 = (1..=d).product();
        let hooks: u128 = self
            .hook_lengths()
            .iter()
            .flatten()
            .map(|&h| h as u128)
            .product();
        fact / hooks
    }

    pub fn is_p_restricted(&self, p: usize) -> bool {
        (0..self.len()).all(|i| self.part(i) - self.part(i + 1) < p)
    }

    pub fn is_p_regular(&self, p: usize) -> bool {
        let mut counts = BTreeMap::new();
        for &x in &self.0 {
            *counts.entry(x).or_insert(0usize) += 1;
        }
        counts.values().all(|&c| c < p)
    }

    pub fn is_p_core(&self, p: usize) -> bool {
        self.hook_lengths().iter().flatten().all(|&h| h % p != 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"a,b,c"` (optionally parenthesised); parts must weakly decrease.
    fn from_str(s: &str) -> Result<Partition> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {x:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Parameters `(p, n, d)` of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Config {
    pub p: u32,
    pub n: usize,
    pub d: usize,
}

impl Config {
    pub fn new(p: u32, n: usize, d: usize) -> Result<Config> {
        if !is_prime(p) {
            return Err(Error::InvalidPartition(format!("{p} is not prime")));
        }
        if n == 0 || d == 0 {
            return Err(Error::InvalidPartition("n and d must be positive".into()));
        }
        Ok(Config { p, n, d })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaKind {
    All,
    Dominant,
    PRestricted(usize),
}

/// All compositions of `d` into `n` parts, lexicographically descending.
pub fn compositions(n: usize, d: usize) -> Vec<Composition> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if n == 1 {
            prefix.push(d);
            out.push(Composition(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            rec(n - 1, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Elements of `Λ(n,d)` of the requested class as `n`-part compositions,
/// lexicographically descending.
pub fn enumerate_lambda(n: usize, d: usize, kind: LambdaKind) -> Vec<Composition> {
    compositions(n, d)
        .into_iter()
        .filter(|c| match kind {
            LambdaKind::All => true,
            LambdaKind::Dominant => c.is_dominant(),
            LambdaKind::PRestricted(p) => c.is_dominant() && c.sorted().is_p_restricted(p),
        })
        .collect()
}

/// Partitions of `d` with at most `n` parts, lexicographically descending.
pub fn partitions(n: usize, d: usize) -> Vec<Partition> {
    enumerate_lambda(n, d, LambdaKind::Dominant)
        .into_iter()
        .map(|c| c.sorted())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFlags {
    pub p_restricted: bool,
    pub p_regular: bool,
    pub p_core: bool,
}

pub fn classify(lambda: &Partition, p: usize) -> ClassFlags {
    ClassFlags {
        p_restricted: lambda.is_p_restricted(p),
        p_regular: lambda.is_p_regular(p),
        p_core: lambda.is_p_core(p),
    }
}

/// Removes rim `p`-hooks until none is left, using beta-numbers.
pub fn p_core_of(lambda: &Partition, p: usize) -> Partition {
    let k = lambda.len();
    let mut beta: Vec<usize> = (0..k).map(|i| lambda.part(i) + (k - 1 - i)).collect();
    loop {
        let mut moved = false;
        for i in 0..beta.len() {
            let b = beta[i];
            if b >= p && !beta.contains(&(b - p)) {
                beta[i] = b - p;
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let parts = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (k - 1 - i))
        .collect();
    Partition::new(parts).expect("beta-set decodes to a partition")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Less,
    Greater,
    Equal,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Dominance,
    Lex,
}

pub fn compare(a: &Partition, b: &Partition, order: Order) -> Result<Relation> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    if a == b {
        return Ok(Relation::Equal);
    }
    let len = a.len().max(b.len());
    match order {
        Order::Lex => Ok(match (0..len).map(|i| a.part(i).cmp(&b.part(i))).find(|o| *o != Ordering::Equal) {
            Some(Ordering::Less) => Relation::Less,
            _ => Relation::Greater,
        }),
        Order::Dominance => {
            let (mut sa, mut sb) = (0, 0);
            let (mut le, mut ge) = (true, true);
            for i in 0..len {
                sa += a.part(i);
                sb += b.part(i);
                le &= sa <= sb;
                ge &= sa >= sb;
            }
            Ok(match (le, ge) {
                (true, false) => Relation::Less,
                (false, true) => Relation::Greater,
                (true, true) => Relation::Equal,
                _ => Relation::Incomparable,
            })
        }
    }
}

/// Dominance test `a ⊴ b` for compositions of the same degree (after sorting `a`
/// is not applied: partial sums are taken in the given order).
pub fn dominated_by(a: &[usize], b: &[usize]) -> bool {
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0usize, 0usize);
    for i in 0..len {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa > sb {
            return false;
        }
    }
    sa == sb
}

/// Cells of the `p`-rim, listed segment by segment.
fn p_rim(lambda: &Partition, p: usize) -> Vec<(usize, usize)> {
    let rows = lambda.len();
    let mut cells = Vec::new();
    let mut start_row = 0;
    while start_row < rows {
        let (mut i, mut j) = (start_row, lambda.part(start_row) - 1);
        let mut taken = 0;
        loop {
            cells.push((i, j));
            taken += 1;
            if taken == p {
                break;
            }
            if lambda.contains_cell(i + 1, j) {
                i += 1;
            } else if j > 0 {
                j -= 1;
            } else {
                break;
            }
        }
        if taken < p {
            break;
        }
        start_row = i + 1;
    }
    cells
}

/// The Mullineux symbol: columns `(rim size, number of rows)` of successive
/// `p`-rim removals.
pub fn mullineux_symbol(lambda: &Partition, p: usize) -> Vec<(usize, usize)> {
    let mut cur = lambda.clone();
    let mut symbol = Vec::new();
    while !cur.is_empty() {
        let rim = p_rim(&cur, p);
        let mut parts = cur.parts().to_vec();
        for &(i, _) in &rim {
            parts[i] -= 1;
        }
        symbol.push((rim.len(), cur.len()));
        cur = Partition::new(parts).expect("removing the p-rim leaves a partition");
    }
    symbol
}

/// All `p`-regular partitions of `d`, lexicographically descending.
pub fn p_regular_partitions(d: usize, p: usize) -> Vec<Partition> {
    partitions(d.max(1), d)
        .into_iter()
        .filter(|l| l.is_p_regular(p))
        .collect()
}

/// The Mullineux map on `p`-regular partitions: transforms the symbol column-wise
/// `(a, r) ↦ (a, a − r + [p ∤ a])` and decodes by matching symbols of all
/// `p`-regular partitions of the same degree.
pub fn mullineux(lambda: &Partition, p: usize) -> Result<Partition> {
    if !lambda.is_p_regular(p) {
        return Err(Error::WrongClass(lambda.to_string(), "p-regular"));
    }
    let target: Vec<(usize, usize)> = mullineux_symbol(lambda, p)
        .into_iter()
        .map(|(a, r)| (a, a + usize::from(a % p != 0) - r))
        .collect();
    let mut hits = p_regular_partitions(lambda.degree(), p)
        .into_iter()
        .filter(|mu| mullineux_symbol(mu, p) == target);
    match (hits.next(), hits.next()) {
        (Some(mu), None) => Ok(mu),
        _ => Err(Error::Identification(format!(
            "no unique partition with Mullineux symbol {target:?}"
        ))),
    }
}

/// The Mullineux map transported to `p`-restricted labels: `λ ↦ m(λ′)′`.
pub fn mullineux_restricted(lambda: &Partition, p: usize) -> Result<Partition> {
    if !lambda.is_p_restricted(p) {
        return Err(Error::WrongClass(lambda.to_string(), "p-restricted"));
    }
    Ok(mullineux(&lambda.conjugate(), p)?.conjugate())
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let all = enumerate_lambda(2, 2, LambdaKind::All);
        assert_eq!(
            all,
            vec![Composition(vec![2, 0]), Composition(vec![1, 1]), Composition(vec![0, 2])]
        );
        let dom: Vec<Partition> = partitions(3, 3);
        assert_eq!(dom, vec![part("3"), part("2,1"), part("1,1,1")]);
        let res: Vec<Partition> = enumerate_lambda(3, 3, LambdaKind::PRestricted(3))
            .iter()
            .map(|c| c.sorted())
            .collect();
        assert_eq!(res, vec![part("2,1"), part("1,1,1")]);
    }

    #[test]
    fn composition_counts_match_binomials() {
        for n in 1..=6 {
            for d in 1..=6 {
                let c = compositions(n, d);
                assert_eq!(c.len(), binomial(n + d - 1, n - 1));
                let mut s = c.clone();
                s.dedup();
                assert_eq!(s.len(), c.len());
                assert!(c.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part("3,1").conjugate(), part("2,1,1"));
        assert_eq!(part("1,1,1").conjugate(), part("3"));
        for d in 1..=8 {
            for l in partitions(d, d) {
                assert_eq!(l.conjugate().conjugate(), l);
            }
        }
    }

    /// Brute-force hook scan, independent of `hook_lengths`.
    fn has_hook_divisible(l: &Partition, p: usize) -> bool {
        for i in 0..l.len() {
            for j in 0..l.part(i) {
                let arm = l.part(i) - j - 1;
                let leg = (i + 1..l.len()).filter(|&k| l.part(k) > j).count();
                if (arm + leg + 1).is_multiple_of(p) {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn classify_examples_and_brute_force() {
        let f = classify(&part("3"), 3);
        assert!(!f.p_restricted && f.p_regular);
        let f = classify(&part("1,1,1"), 3);
        assert!(f.p_restricted && !f.p_regular);
        assert!(classify(&part("3,1"), 3).p_core);
        assert_eq!(part("3,1").hook_lengths(), vec![vec![4, 2, 1], vec![1]]);
        for p in [2, 3, 5] {
            for d in 1..=8 {
                for l in partitions(d, d) {
                    let f = classify(&l, p);
                    let parts = l.parts();
                    let gaps = (0..parts.len())
                        .all(|i| parts[i] - parts.get(i + 1).copied().unwrap_or(0) < p);
                    let mult = parts.iter().all(|x| parts.iter().filter(|y| *y == x).count() < p);
                    assert_eq!(f.p_restricted, gaps);
                    assert_eq!(f.p_regular, mult);
                    assert_eq!(f.p_core, !has_hook_divisible(&l, p));
                }
            }
        }
    }

    #[test]
    fn p_core_examples() {
        assert_eq!(p_core_of(&part("3"), 3), Partition::empty());
        assert_eq!(p_core_of(&part("3,1"), 3), part("3,1"));
        for d in 1..=8 {
            for l in partitions(d, d) {
                let c = p_core_of(&l, 3);
                assert!(c.is_p_core(3));
                assert_eq!((l.degree() - c.degree()) % 3, 0);
                if l.is_p_core(3) {
                    assert_eq!(c, l);
                }
            }
        }
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            compare(&part("2,1"), &part("3"), Order::Dominance).unwrap(),
            Relation::Less
        );
        assert_eq!(
            compare(&part("3,3"), &part("4,1,1"), Order::Dominance).unwrap(),
            Relation::Incomparable
        );
        assert_eq!(
            compare(&part("3"), &part("2,1"), Order::Lex).unwrap(),
            Relation::Greater
        );
        assert_eq!(
            compare(&part("2,1"), &part("1,1,1"), Order::Lex).unwrap(),
            Relation::Greater
        );
        assert!(compare(&part("2"), &part("2,1"), Order::Lex).is_err());
    }

    #[test]
    fn dominance_refines_into_lex() {
        for d in 1..=7 {
            let ps = partitions(d, d);
            for a in &ps {
                for b in &ps {
                    if compare(a, b, Order::Dominance).unwrap() == Relation::Greater {
                        assert_eq!(compare(a, b, Order::Lex).unwrap(), Relation::Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn mullineux_examples() {
        assert_eq!(mullineux(&part("2,1"), 3).unwrap(), part("3"));
        assert_eq!(mullineux(&part("4,1"), 5).unwrap(), part("3,1,1"));
        assert!(mullineux(&part("1,1,1"), 3).is_err());
        for p in [3, 5] {
            for d in 1..=8 {
                for l in p_regular_partitions(d, p) {
                    let m = mullineux(&l, p).unwrap();
                    assert!(m.is_p_regular(p));
                    assert_eq!(m.degree(), d);
                    assert_eq!(mullineux(&m, p).unwrap(), l, "p={p} l={l}");
                }
            }
        }
    }

    #[test]
    fn restricted_wrapper_is_an_involution() {
        for p in [3, 5] {
            for d in 1..=7 {
                for l in partitions(d, d).into_iter().filter(|l| l.is_p_restricted(p)) {
                    let m = mullineux_restricted(&l, p).unwrap();
                    assert!(m.is_p_restricted(p));
                    assert_eq!(mullineux_restricted(&m, p).unwrap(), l);
                }
            }
        }
    }

    #[test]
    fn parse_partitions() {
        assert_eq!(part("3,1,1").parts(), &[3, 1, 1]);
        assert_eq!(part("(2,1)"), part("2,1"));
        assert!("1,2".parse::<Partition>().is_err());
        assert!("1,x".parse::<Partition>().is_err());
    }

    #[test]
    fn standard_tableaux() {
        assert_eq!(part("2,1").standard_tableaux_count(), 2);
        assert_eq!(part("3,2").standard_tableaux_count(), 5);
    }
}
