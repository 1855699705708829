use proptest::prelude::*;

use super::*;
use crate::combin::{dominated_by, Composition};
use crate::modules::{certify_simple, composition_factors, hom_space, is_isomorphic, spin, IsoOutcome};
use crate::schur::{build_schur_algebra, transpose_partner, GeneratorSet};

fn e(s: &str) -> FunctorExpr {
    s.parse().unwrap()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn r(s: &str, m: usize, p: u32) -> ModAction {
    let x = e(s);
    let d = x.degree().unwrap().unwrap_or(3);
    realize(&x, m, d, p).unwrap().module
}

fn iso(a: &ModAction, b: &ModAction) -> bool {
    match is_isomorphic(a, b, 0).unwrap() {
        IsoOutcome::Isomorphic(_) => true,
        IsoOutcome::NotIsomorphic(_) => false,
        IsoOutcome::Inconclusive(why) => panic!("inconclusive: {why}"),
    }
}

/// Semistandard tableaux of shape `λ` in `m` letters, by brute force over fillings.
fn ssyt_count(lambda: &Partition, m: usize) -> usize {
    let cells: Vec<(usize, usize)> = (0..lambda.len())
        .flat_map(|i| (0..lambda.part(i)).map(move |j| (i, j)))
        .collect();
    let total = m.pow(cells.len() as u32);
    (0..total)
        .filter(|&code| {
            let mut x = code;
            let mut fill = std::collections::HashMap::new();
            for c in &cells {
                fill.insert(*c, x % m);
                x /= m;
            }
            cells.iter().all(|&(i, j)| {
                let v = fill[&(i, j)];
                (j == 0 || fill[&(i, j - 1)] <= v) && (i == 0 || fill[&(i - 1, j)] < v)
            })
        })
        .count()
}

#[test]
fn realize_examples() {
    assert_eq!(r("Lambda(3)", 3, 3).dim(), 1);
    assert_eq!(r("Lambda(1,1,1)", 3, 3).dim(), 27);
    assert_eq!(r("Gamma(3)", 3, 3).dim(), 10);
    assert_eq!(r("S(2,1)", 2, 3).dim(), 6);
    assert_eq!(r("T", 2, 3).dim(), 8);
    assert!(realize(&e("Gamma(2,1)"), 3, 4, 3).is_err());
}

#[test]
fn gamma_is_the_idempotent_summand_of_the_regular_module() {
    let p = 3;
    let alg = build_schur_algebra(3, 3, p).unwrap();
    let reg = alg.representable(3, GeneratorSet::Standard).unwrap();
    for (mu, idx) in alg.weight_idempotents() {
        let mut v = vec![0; alg.dim()];
        v[idx] = 1;
        let sub = reg.submodule(&spin(&reg, &[v])).unwrap();
        let gamma = realize(&FunctorExpr::Gamma(mu.clone()), 3, 3, p).unwrap().module;
        assert!(iso(&gamma, &sub), "{mu}");
    }
}

#[test]
fn hom_from_gamma_is_weight_space() {
    let p = 3;
    let xs = ["S(2,1)", "Lambda(3)", "L(2,1)", "Weyl(2,1)", "Q", "dual(Gamma(1,2))"];
    for x in xs {
        let x = r(x, 3, p);
        let ch = character(&x);
        for mu in compositions(3, 3) {
            let g = realize(&FunctorExpr::Gamma(mu.clone()), 3, 3, p).unwrap().module;
            assert_eq!(hom_space(&g, &x).unwrap().len(), ch[&mu.0]);
        }
    }
}

#[test]
fn tensor_power_form_is_contravariant() {
    let t = r("T", 3, 3);
    let labels: Vec<GenLabel> = t.gens().iter().map(|(l, _)| l.clone()).collect();
    let j = transpose_partner(&labels);
    for (i, (_, g)) in t.gens().iter().enumerate() {
        assert_eq!(t.gens()[j[i]].1, g.transpose());
    }
}

#[test]
fn kuhn_duals() {
    let p = 3;
    for mu in compositions(3, 3) {
        let g = realize(&FunctorExpr::Gamma(mu.clone()), 3, 3, p).unwrap();
        let s = realize(&FunctorExpr::Sym(mu.clone()), 3, 3, p).unwrap();
        let l = realize(&FunctorExpr::Ext(mu.clone()), 3, 3, p).unwrap();
        assert!(iso(&kuhn_dual(&g).unwrap().module, &s.module), "{mu}");
        assert!(iso(&kuhn_dual(&l).unwrap().module, &l.module), "{mu}");
        let dd = kuhn_dual(&kuhn_dual(&g).unwrap()).unwrap();
        assert!(iso(&dd.module, &g.module));
    }
    for lambda in partitions(3, 3) {
        let l = simple_module(&lambda, 3, p).unwrap();
        assert!(iso(&kuhn_dual(&l).unwrap().module, &l.module), "{lambda}");
    }
}

#[test]
fn weyl_modules() {
    let p = 3;
    for d in 1..=3 {
        let col = weyl_module(&Partition::column(d), 3, p).unwrap();
        assert_eq!(col.dim(), binomial(3, d));
        let row = weyl_module(&Partition::row(d), 3, p).unwrap();
        assert!(iso(&row.module, &r(&format!("Gamma({d})"), 3, p)));
    }
    for lambda in partitions(3, 3).into_iter().chain(partitions(3, 4)) {
        let m = 3;
        let w = weyl_module(&lambda, m, p).unwrap();
        assert_eq!(w.dim(), ssyt_count(&lambda, m), "{lambda}");
        let ch = character(&w.module);
        let top = lambda.as_composition(m).unwrap().0;
        assert_eq!(ch[&top], 1);
        for (mu, k) in &ch {
            if *k > 0 {
                assert!(dominated_by(&Composition(mu.clone()).sorted().as_composition(m).unwrap().0, &top));
            }
        }
        // spin of the highest weight vector inside the exterior powers
        let conj = lambda.conjugate();
        let ext = realize(&FunctorExpr::Ext(Composition(conj.parts().to_vec())), m, lambda.degree(), p)
            .unwrap()
            .module;
        let idem = ext.action(&GenLabel::Idem(top.clone())).unwrap();
        let v = idem.column_space().column(0);
        let sub = ext.submodule(&spin(&ext, &[v])).unwrap();
        assert!(iso(&sub, &w.module), "{lambda}");
    }
    assert!(weyl_module(&part("1,1,1,1"), 3, p).is_err());
}

#[test]
fn simple_modules() {
    let p = 3;
    assert!(iso(&simple_module(&part("1,1,1"), 3, p).unwrap().module, &r("Lambda(3)", 3, p)));
    assert_eq!(simple_module(&part("3"), 3, p).unwrap().dim(), 3);
    assert_eq!(simple_module(&part("2,1"), 3, p).unwrap().dim(), 7);
    for lambda in partitions(3, 3).into_iter().chain(partitions(3, 4)) {
        let l = simple_module(&lambda, 3, p).unwrap();
        assert!(certify_simple(&l.module, 0).unwrap().is_simple(), "{lambda}");
    }
    for lambda in partitions(3, 3) {
        let l = simple_module(&lambda, 3, 5).unwrap();
        let w = weyl_module(&lambda, 3, 5).unwrap();
        assert!(iso(&l.module, &w.module));
    }
    let table = SimpleTable::new(3, 3, p).unwrap();
    let ms = table.modules();
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            assert!(!iso(&ms[i], &ms[j]));
        }
    }
}

#[test]
fn truncated_symmetric_power() {
    let p = 3;
    assert!(iso(&r("Q", 3, p), &simple_module(&part("2,1"), 3, p).unwrap().module));
    let table = SimpleTable::new(3, 3, p).unwrap();
    let (_, mult) = character_multiplicities(&r("S(3)", 3, p), &table).unwrap();
    assert_eq!(mult, vec![(part("3"), 1), (part("2,1"), 1)]);
}

#[test]
fn characters_agree_with_meataxe() {
    let p = 3;
    let table = SimpleTable::new(3, 3, p).unwrap();
    for x in ["Gamma(2,1)", "S(3)", "T", "Weyl(2,1)", "dual(Weyl(2,1))"] {
        let x = r(x, 3, p);
        let (_, mult) = character_multiplicities(&x, &table).unwrap();
        let factors = composition_factors(&x, 0).unwrap();
        assert_eq!(factors.iter().map(|f| f.dim()).sum::<usize>(), x.dim());
        let mut counted: Vec<(Partition, usize)> = Vec::new();
        for (lambda, l, _) in &table.simples {
            let k = factors.iter().filter(|f| f.dim() == l.dim() && iso(f, &l.module)).count();
            if k > 0 {
                counted.push((lambda.clone(), k));
            }
        }
        assert_eq!(counted, mult);
    }
    let l = simple_module(&part("2,1"), 3, p).unwrap();
    assert_eq!(
        character_multiplicities(&l.module, &table).unwrap().1,
        vec![(part("2,1"), 1)]
    );
}

#[test]
fn internal_tensor_identities() {
    let p = 3;
    for x in ["S(2,1)", "Lambda(3)", "Lambda(1,1,1)", "L(2,1)"] {
        let t = r(&format!("tensor({x},Gamma(3))"), 3, p);
        assert!(iso(&t, &r(x, 3, p)), "{x}");
    }
    for mu in compositions(3, 3) {
        let g = FunctorExpr::Gamma(mu.clone());
        let s3 = e("S(3)");
        let t = realize(&FunctorExpr::ITensor(Box::new(g), Box::new(s3)), 3, 3, p).unwrap();
        let s = realize(&FunctorExpr::Sym(mu.clone()), 3, 3, p).unwrap();
        assert!(iso(&t.module, &s.module), "{mu}");
    }
    assert!(iso(&r("tensor(Lambda(3),Lambda(3))", 3, p), &r("S(3)", 3, p)));
    assert!(iso(&r("tensor(S(3),S(3))", 3, p), &r("S(3)", 3, p)));
}

#[test]
fn internal_tensor_is_symmetric() {
    let p = 3;
    for (a, b) in [("S(2,1)", "Lambda(2,1)"), ("L(2,1)", "Weyl(2,1)"), ("Gamma(2,1)", "Q")] {
        let ab = r(&format!("tensor({a},{b})"), 3, p);
        let ba = r(&format!("tensor({b},{a})"), 3, p);
        assert!(iso(&ab, &ba), "{a} {b}");
    }
}

#[test]
fn internal_hom_identities() {
    let p = 3;
    for mu in compositions(3, 3) {
        let s = FunctorExpr::Sym(mu.clone());
        let h = FunctorExpr::IHom(Box::new(e("S(3)")), Box::new(s.clone()));
        let h = realize(&h, 3, 3, p).unwrap().module;
        let gamma = realize(&FunctorExpr::Gamma(mu.clone()), 3, 3, p).unwrap().module;
        assert!(iso(&h, &gamma), "{mu}");
        let big_part = mu.parts().iter().any(|&k| k >= p as usize);
        let sym = realize(&s, 3, 3, p).unwrap().module;
        assert_eq!(iso(&h, &sym), !big_part, "{mu}");
    }
    assert!(iso(&r("mdual(Gamma(3))", 3, p), &r("Gamma(3)", 3, p)));
    let lhs = r("ihom(Gamma(2,1),dual(Lambda(3)))", 3, p);
    let rhs = r("ihom(Lambda(3),dual(Gamma(2,1)))", 3, p);
    assert!(iso(&lhs, &rhs));
}

#[test]
fn tensor_hom_adjunction_dimensions() {
    let p = 3;
    for (x, y, z) in [
        ("Gamma(2,1)", "Lambda(2,1)", "S(2,1)"),
        ("L(2,1)", "S(3)", "Q"),
        ("Lambda(3)", "Weyl(2,1)", "T"),
    ] {
        let xy = r(&format!("tensor({x},{y})"), 3, p);
        let hyz = r(&format!("ihom({y},{z})"), 3, p);
        let lhs = hom_space(&xy, &r(z, 3, p)).unwrap().len();
        let rhs = hom_space(&r(x, 3, p), &hyz).unwrap().len();
        assert_eq!(lhs, rhs, "{x} {y} {z}");
    }
}

#[test]
fn projective_covers_and_ext() {
    let p = 3;
    let s3 = r("S(3)", 3, p);
    let table = SimpleTable::new(3, 3, p).unwrap();
    for (lambda, l, _) in &table.simples {
        let pc = projective_cover(lambda, 3, p).unwrap();
        let homs: usize = table
            .simples
            .iter()
            .map(|(_, s, _)| hom_space(&pc.module, &s.module).unwrap().len())
            .sum();
        assert_eq!(homs, 1, "{lambda}");
        assert_eq!(hom_space(&pc.module, &l.module).unwrap().len(), 1);
        assert_eq!(ext1(lambda, lambda, 3, p).unwrap(), 0, "{lambda}");
    }
    let p21 = projective_cover(&part("2,1"), 3, p).unwrap();
    assert!(!hom_space(&p21.module, &s3).unwrap().is_empty());
    assert!(ext1(&part("2,1"), &part("3"), 3, p).unwrap() >= 1);
    for lambda in partitions(3, 3) {
        let pc = projective_cover(&lambda, 3, 5).unwrap();
        assert!(iso(&pc.module, &simple_module(&lambda, 3, 5).unwrap().module));
        for nu in partitions(3, 3) {
            assert_eq!(ext1(&lambda, &nu, 3, 5).unwrap(), 0);
        }
    }
}

#[test]
fn yoneda_recovery_agrees_with_evaluation() {
    let p = 3;
    let alg = build_schur_algebra(2, 2, p).unwrap();
    for x in ["Gamma(2)", "S(1,1)", "Lambda(2)", "L(2)"] {
        let at2 = r(x, 2, p);
        for m in 1..=3 {
            let y = alg.yoneda_evaluate(&at2, m).unwrap();
            assert!(iso(&y, &r(x, m, p)), "{x} at {m}");
        }
    }
}

#[test]
fn parse_examples() {
    assert_eq!(
        parse_expr("tensor(L(2,1),L(1,1,1))").unwrap(),
        Expr::Functor(FunctorExpr::ITensor(
            Box::new(FunctorExpr::Simple(part("2,1"))),
            Box::new(FunctorExpr::Simple(part("1,1,1")))
        ))
    );
    assert_eq!(
        parse_expr("ihom(S(3),dual(Gamma(3)))").unwrap(),
        Expr::Functor(FunctorExpr::IHom(
            Box::new(FunctorExpr::Sym(Composition(vec![3]))),
            Box::new(FunctorExpr::KuhnDual(Box::new(FunctorExpr::Gamma(Composition(vec![3])))))
        ))
    );
    match parse_expr("tensor(L(2,1)") {
        Err(Error::Syntax { pos, msg }) => {
            assert_eq!(pos, 13);
            assert!(msg.contains("unbalanced"));
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_expr("tensor(L(2,1),S(2))"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expr("Foo(1)"), Err(Error::Syntax { pos: 0, .. })));
    assert!(matches!(parse_expr("L(1,2)"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expr("Q x"), Err(Error::Syntax { pos: 2, .. })));
    assert_eq!(parse_expr("Gt(F(S(2,1)))").unwrap().to_string(), "Gt(F(S(2,1)))");
}

fn arb_functor() -> impl Strategy<Value = FunctorExpr> {
    let leaf = prop_oneof![
        Just(FunctorExpr::TensorPower),
        Just(FunctorExpr::TruncSym),
        prop::collection::vec(0usize..3, 1..4).prop_map(|v| FunctorExpr::Gamma(Composition(v))),
        prop::collection::vec(0usize..3, 1..4).prop_map(|v| FunctorExpr::Ext(Composition(v))),
        Just(FunctorExpr::Simple(Partition::new(vec![2, 1]).unwrap())),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| FunctorExpr::KuhnDual(Box::new(a))),
            inner.clone().prop_map(|a| FunctorExpr::MonDual(Box::new(a))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| FunctorExpr::ITensor(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| FunctorExpr::IHom(Box::new(a), Box::new(b))),
            Just(FunctorExpr::GTensor(Box::new(SymExpr::Kron(
                Box::new(SymExpr::Sign),
                Box::new(SymExpr::Perm(Composition(vec![2, 1])))
            )))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_roundtrip(x in arb_functor()) {
        let text = x.to_string();
        match x.degree() {
            Ok(_) => prop_assert_eq!(parse_expr(&text).unwrap(), Expr::Functor(x)),
            Err(_) => prop_assert!(parse_expr(&text).is_err()),
        }
    }

    #[test]
    fn gamma_and_sym_dimensions(v in prop::collection::vec(0usize..3, 1..4), m in 1usize..4) {
        let d: usize = v.iter().sum();
        prop_assume!(d > 0);
        let c = Composition(v);
        let g = realize(&FunctorExpr::Gamma(c.clone()), m, d, 5).unwrap();
        let s = realize(&FunctorExpr::Sym(c.clone()), m, d, 5).unwrap();
        prop_assert_eq!(g.dim(), s.dim());
        prop_assert!(iso(&kuhn_dual(&g).unwrap().module, &s.module));
    }
}

#[test]
fn gamma_lambda_represents_weight_spaces() {
    let p = 3;
    let xs: Vec<ModAction> = ["S(2,1)", "Lambda(3)", "L(2,1)", "Weyl(2,1)", "Q", "dual(S(1,2))", "T"]
        .iter()
        .map(|s| r(s, 3, p))
        .collect();
    for lambda in crate::combin::compositions(3, 3) {
        let g = realize(&FunctorExpr::Gamma(lambda.clone()), 3, 3, p).unwrap().module;
        for x in &xs {
            let weight = x
                .weight_multiplicities()
                .into_iter()
                .find(|(mu, _)| mu.as_slice() == lambda.parts())
                .map_or(0, |(_, k)| k);
            assert_eq!(hom_space(&g, x).unwrap().len(), weight, "Γ^{lambda} into dim {}", x.dim());
        }
    }
}
