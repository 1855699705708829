use proptest::prelude::*;
use spf_core::combin::{mullineux, partitions, Partition};
use spf_core::polyfun::{parse_expr, realize, FunctorExpr};
use spf_core::store::{read_module, write_module};

fn partition() -> impl Strategy<Value = Partition> {
    (1usize..=8)
        .prop_flat_map(|d| {
            let all = partitions(d, d);
            (0..all.len()).prop_map(move |k| all[k].clone())
        })
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[test]
fn standard_tableaux_square_sum_is_factorial() {
    for d in 1..=7 {
        let sum: u128 = partitions(d, d).iter().map(|l| l.standard_tableaux_count().pow(2)).sum();
        assert_eq!(sum, factorial(d), "d = {d}");
    }
}

#[test]
fn expressions_print_and_parse_back() {
    for text in [
        "Gamma(2,1)",
        "S(0,3)",
        "Lambda(1,1,1)",
        "L(2,1)",
        "dual(mdual(Weyl(2,1)))",
        "tensor(L(2,1), Q)",
        "ihom(S(3), Gamma(1,2))",
        "Gt(kron(sgn, M(2,1)))",
        "Gh(sdual(D(2,1)))",
        "Gt(F(S(2,1)))",
    ] {
        let e = parse_expr(text).unwrap();
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{text}");
    }
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(l in partition()) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().degree(), l.degree());
        prop_assert_eq!(l.conjugate().standard_tableaux_count(), l.standard_tableaux_count());
    }

    #[test]
    fn mullineux_is_an_involution_on_p_regular(l in partition(), p in prop::sample::select(vec![2usize, 3, 5])) {
        prop_assume!(l.is_p_regular(p));
        let m = mullineux(&l, p).unwrap();
        prop_assert!(m.is_p_regular(p));
        prop_assert_eq!(m.degree(), l.degree());
        prop_assert_eq!(mullineux(&m, p).unwrap(), l);
    }

    #[test]
    fn restricted_is_conjugate_of_regular(l in partition(), p in 2usize..6) {
        prop_assert_eq!(l.is_p_restricted(p), l.conjugate().is_p_regular(p));
    }

    #[test]
    fn stored_modules_round_trip(k in 0usize..6, p in prop::sample::select(vec![2u32, 3, 5])) {
        let text = ["Gamma(2,1)", "S(1,2)", "Lambda(3)", "L(2,1)", "Q", "dual(S(2,1))"][k];
        let e: FunctorExpr = text.parse().unwrap();
        let m = realize(&e, 3, 3, p).unwrap().module;
        let mut buf = Vec::new();
        write_module(&m, &mut buf).unwrap();
        let back = read_module(&mut buf.as_slice()).unwrap();
        prop_assert_eq!(back.dim(), m.dim());
        prop_assert_eq!(back.gens(), m.gens());
        let last = buf.len() - 5;
        buf[last] ^= 1;
        prop_assert!(read_module(&mut buf.as_slice()).is_err());
    }
}
