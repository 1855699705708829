use proptest::prelude::*;

use super::*;

fn swap4(p: u32) -> Mat {
    // s·(e_i ⊗ e_j) = e_j ⊗ e_i on (k²)^{⊗2}, index 2i + j
    let mut s = Mat::zeros(4, 4, p);
    for i in 0..2 {
        for j in 0..2 {
            s.set(2 * j + i, 2 * i + j, 1);
        }
    }
    s
}

fn sym(d: usize, p: u32, mats: Vec<Mat>) -> ModAction {
    let dim = mats[0].rows();
    let gens = mats
        .into_iter()
        .enumerate()
        .map(|(i, m)| (GenLabel::S(i + 1), m))
        .collect();
    ModAction::new(p, dim, gens, AlgebraId::Symmetric { d }).unwrap()
}

fn scalar(d: usize, p: u32, c: i64) -> ModAction {
    sym(d, p, (1..d).map(|_| Mat::from_rows(&[vec![c]], p)).collect())
}

fn other(p: u32, mats: Vec<Mat>) -> ModAction {
    let dim = mats[0].rows();
    let gens = mats
        .into_iter()
        .enumerate()
        .map(|(i, m)| (GenLabel::Named(format!("g{i}")), m))
        .collect();
    ModAction::new(p, dim, gens, AlgebraId::Other("test".into())).unwrap()
}

/// Hom space by solving all intertwining equations at once.
fn naive_hom_dim(m: &ModAction, n: &ModAction) -> usize {
    let (a, b) = (m.dim(), n.dim());
    let p = m.prime();
    let mut rows = Vec::new();
    for (x, y) in m.gen_mats().zip(n.gen_mats()) {
        // (F x − y F)_{ij} for unknown F_{kl} at index k*a + l
        for i in 0..b {
            for j in 0..a {
                let mut eq = vec![0u32; a * b];
                for l in 0..a {
                    let c = &mut eq[i * a + l];
                    *c = crate::ff::add(*c, x.get(l, j), p);
                }
                for k in 0..b {
                    let c = &mut eq[k * a + j];
                    *c = crate::ff::sub(*c, y.get(i, k), p);
                }
                rows.push(eq);
            }
        }
    }
    a * b - Mat::from_row_vecs(&rows, a * b, p).rank()
}

fn all_vectors(n: usize, p: u32) -> Vec<Vec<u32>> {
    let total = (p as usize).pow(n as u32);
    (1..total)
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let x = (c % p as usize) as u32;
                    c /= p as usize;
                    x
                })
                .collect()
        })
        .collect()
}

#[test]
fn spin_examples() {
    let m = sym(2, 5, vec![swap4(5)]);
    assert_eq!(spin(&m, &[vec![0; 4]]).dim(), 0);
    let alt = vec![0, 1, 4, 0];
    let s = spin(&m, &[alt]);
    assert_eq!(s.dim(), 1);
    let sub = m.submodule(&s).unwrap();
    assert_eq!(sub.gens()[0].1, Mat::from_rows(&[vec![-1]], 5));
}

#[test]
fn hom_examples() {
    let triv = scalar(2, 3, 1);
    let sign = scalar(2, 3, -1);
    assert!(hom_space(&triv, &sign).unwrap().is_empty());
    let m = sym(2, 3, vec![swap4(3)]);
    let end = hom_space(&m, &m).unwrap();
    assert_eq!(end.len(), naive_hom_dim(&m, &m));
    let id = Mat::identity(4, 3);
    let mut span = crate::ff::Echelon::new(16, 3);
    for f in &end {
        span.insert(f.entries());
    }
    assert!(span.contains(id.entries()));
    // regular module of S_2 is free of rank one
    let reg = sym(2, 3, vec![Mat::from_rows(&[vec![0, 1], vec![1, 0]], 3)]);
    assert_eq!(hom_space(&reg, &m).unwrap().len(), m.dim());
}

#[test]
fn algebra_mismatch_is_an_error() {
    let a = scalar(2, 3, 1);
    let b = scalar(3, 3, 1);
    assert!(hom_space(&a, &b).is_err());
}

#[test]
fn isomorphism_examples() {
    let triv = scalar(3, 5, 1);
    let sign = scalar(3, 5, -1);
    match is_isomorphic(&triv, &sign, 0).unwrap() {
        IsoOutcome::NotIsomorphic(r) => assert!(r.contains("character")),
        o => panic!("{o:?}"),
    }
    let m = sym(2, 5, vec![swap4(5)]);
    assert!(is_isomorphic(&m, &m, 0).unwrap().is_isomorphic());
    let perm = Mat::from_rows(
        &[vec![0, 0, 1, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 1, 0, 0]],
        5,
    );
    let copy = m.conjugated(&perm).unwrap();
    let w = is_isomorphic(&copy, &m, 3).unwrap();
    let f = w.witness().unwrap();
    assert!(ModMorphism::new(copy.clone(), m.clone(), f.clone()).unwrap().is_isomorphism());
}

#[test]
fn relations_are_checked() {
    let bad = Mat::from_rows(&[vec![2]], 5);
    let gens = vec![(GenLabel::S(1), bad)];
    assert!(ModAction::new(5, 1, gens, AlgebraId::Symmetric { d: 2 }).is_err());
}

#[test]
fn meataxe_examples() {
    let triv = scalar(3, 5, 1);
    assert!(certify_simple(&triv, 0).unwrap().is_simple());
    let m = sym(2, 5, vec![swap4(5)]);
    let s = m.direct_sum(&m).unwrap();
    assert!(!certify_simple(&s, 0).unwrap().is_simple());
    let zero = ModAction::zero(5, &triv);
    assert!(certify_simple(&zero, 0).is_err());
}

#[test]
fn composition_factors_against_eigenspaces() {
    let p = 3;
    let m = sym(2, p, vec![swap4(p)]);
    let factors = composition_factors(&m, 0).unwrap();
    assert_eq!(factors.len(), 4);
    let classes = group_isomorphic(&factors, 0).unwrap();
    // brute force: vectors fixed by s and negated by s
    let fixed = all_vectors(4, p)
        .into_iter()
        .filter(|v| swap4(p).mul_vec(v) == *v)
        .count()
        + 1;
    let trivial_count = classes
        .iter()
        .find(|(f, _)| f.gens()[0].1.get(0, 0) == 1)
        .map(|(_, c)| *c)
        .unwrap();
    assert_eq!(3usize.pow(trivial_count as u32), fixed);
    assert_eq!(classes.iter().map(|(_, c)| c).sum::<usize>(), 4);
}

#[test]
fn modular_regular_module() {
    let reg = sym(2, 2, vec![Mat::from_rows(&[vec![0, 1], vec![1, 0]], 2)]);
    assert!(!certify_simple(&reg, 0).unwrap().is_simple());
    let f = composition_factors(&reg, 0).unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|x| x.dim() == 1));
    let d = fitting_decompose(&reg, 0).unwrap();
    assert_eq!(d.summands.len(), 1);
    assert!(d.summands[0].certified);
    assert!(!d.may_be_decomposable);
    let triv = scalar(2, 2, 1);
    let rt = radical_top(&reg, &[triv]).unwrap();
    assert_eq!(rt.rad.dim(), 1);
    assert_eq!(rt.top.dim(), 1);
    assert_eq!(rt.multiplicities, vec![1]);
}

#[test]
fn radical_top_detects_missing_simples() {
    let p = 5;
    let s = Mat::from_rows(&[vec![0, 1], vec![1, 0]], p);
    let reg = sym(2, p, vec![s]);
    let triv = scalar(2, p, 1);
    assert!(radical_top(&reg, std::slice::from_ref(&triv)).is_err());
    let sign = scalar(2, p, -1);
    let rt = radical_top(&reg, &[triv, sign]).unwrap();
    assert_eq!(rt.rad.dim(), 0);
}

#[test]
fn fitting_splits_semisimple_module() {
    let p = 3;
    let m = sym(2, p, vec![swap4(p)]);
    let d = fitting_decompose(&m, 0).unwrap();
    assert_eq!(d.summands.len(), 4);
    let mut sum = Mat::zeros(4, 4, p);
    for (i, a) in d.summands.iter().enumerate() {
        assert_eq!(a.projection.mul(&a.projection), a.projection);
        for (j, b) in d.summands.iter().enumerate() {
            if i != j {
                assert!(a.projection.mul(&b.projection).is_zero());
            }
        }
        sum = sum.add(&a.projection);
    }
    assert_eq!(sum, Mat::identity(4, p));
}

fn small_module() -> impl Strategy<Value = ModAction> {
    (1usize..=4, 1usize..=2, prop::sample::select(vec![2u32, 3])).prop_flat_map(|(n, k, p)| {
        prop::collection::vec(prop::collection::vec(0..p, n * n), k).prop_map(move |ms| {
            other(
                p,
                ms.into_iter()
                    .map(|e| Mat::from_vec(n, n, p, e).unwrap())
                    .collect(),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_space_matches_naive_solve(m in small_module(), seed in 0u64..4) {
        let n = m.direct_sum(&m).unwrap();
        let homs = hom_space(&m, &n).unwrap();
        prop_assert_eq!(homs.len(), naive_hom_dim(&m, &n));
        for f in &homs {
            prop_assert!(super::hom::intertwines(&m, &n, f));
        }
        prop_assert!(is_isomorphic(&m, &m, seed).unwrap().is_isomorphic());
    }

    #[test]
    fn meataxe_matches_brute_force(m in small_module(), seed in 0u64..4) {
        let brute_simple = all_vectors(m.dim(), m.prime())
            .into_iter()
            .all(|v| spin(&m, &[v]).dim() == m.dim());
        match certify_simple(&m, seed).unwrap() {
            Simplicity::Simple => prop_assert!(brute_simple),
            Simplicity::Proper(u) => {
                prop_assert!(u.dim() > 0 && u.dim() < m.dim());
                prop_assert!(m.submodule(&u).is_ok());
            }
        }
        let f = composition_factors(&m, seed).unwrap();
        prop_assert_eq!(f.iter().map(|x| x.dim()).sum::<usize>(), m.dim());
        prop_assert_eq!(f.len() == 1, brute_simple);
    }

    #[test]
    fn fitting_reassembles(m in small_module(), seed in 0u64..4) {
        let d = fitting_decompose(&m, seed).unwrap();
        prop_assert_eq!(d.summands.iter().map(|s| s.module.dim()).sum::<usize>(), m.dim());
        let mut sum = Mat::zeros(m.dim(), m.dim(), m.prime());
        for s in &d.summands {
            prop_assert!(super::hom::intertwines(&m, &m, &s.projection));
            sum = sum.add(&s.projection);
        }
        prop_assert_eq!(sum, Mat::identity(m.dim(), m.prime()));
    }
}
