use super::*;
use crate::combin::Partition;
use crate::modules::IsoOutcome;
use crate::store::{read_witness, write_witness};

fn ctx(p: u32, n: usize, d: usize) -> AdjointContext {
    AdjointContext::new(Config::new(p, n, d).unwrap(), 0).unwrap()
}

fn iso(a: &ModAction, b: &ModAction) -> bool {
    match is_isomorphic(a, b, 0).unwrap() {
        IsoOutcome::Isomorphic(_) => true,
        IsoOutcome::NotIsomorphic(_) => false,
        IsoOutcome::Inconclusive(why) => panic!("inconclusive: {why}"),
    }
}

fn fx(s: &str) -> FunctorExpr {
    s.parse().unwrap()
}

fn sx(s: &str) -> SymExpr {
    s.parse().unwrap()
}

#[test]
fn context_requires_n_at_least_d() {
    assert!(AdjointContext::new(Config::new(3, 2, 3).unwrap(), 0).is_err());
    let c = ctx(3, 3, 3);
    assert_eq!(c.tensor.dim(), 27);
    assert_eq!(c.corner.len(), 6);
}

#[test]
fn adjoint_examples() {
    let c = ctx(3, 3, 3);
    let triv = c.sym(&sx("triv")).unwrap();
    let sgn = c.sym(&sx("sgn")).unwrap();
    assert!(iso(&c.g_tensor(&triv).unwrap(), &c.realize(&fx("S(3)")).unwrap()));
    assert!(iso(&c.g_tensor(&c.sym(&sx("reg")).unwrap()).unwrap(), &c.realize(&fx("T")).unwrap()));
    assert!(iso(&c.g_tensor(&sgn).unwrap(), &c.realize(&fx("Lambda(3)")).unwrap()));
    assert!(iso(&c.g_hom(&triv).unwrap(), &c.realize(&fx("Gamma(3)")).unwrap()));
    assert!(iso(&c.g_hom(&sgn).unwrap(), &c.realize(&fx("Lambda(3)")).unwrap()));
    let f = c.schur_f(&c.realize(&fx("S(3)")).unwrap()).unwrap();
    assert!(iso(&f, &triv));
}

#[test]
fn direct_and_expression_routes_agree() {
    let c = ctx(3, 3, 3);
    for s in ["triv", "sgn", "M(2,1)", "D(2,1)", "reg"] {
        let n = c.sym(&sx(s)).unwrap();
        let gt = c.realize(&FunctorExpr::GTensor(Box::new(sx(s)))).unwrap();
        let gh = c.realize(&FunctorExpr::GHom(Box::new(sx(s)))).unwrap();
        assert!(iso(&c.g_tensor(&n).unwrap(), &gt), "{s}");
        assert!(iso(&c.g_hom(&n).unwrap(), &gh), "{s}");
    }
}

#[test]
fn gtensor_is_right_exact_on_a_quotient() {
    // M^{(2,1)} → 𝟙 is onto, hence so is G_⊗ of it; compare dimensions only
    let c = ctx(5, 3, 3);
    let m = c.g_tensor(&c.sym(&sx("M(2,1)")).unwrap()).unwrap();
    let t = c.g_tensor(&c.sym(&sx("triv")).unwrap()).unwrap();
    assert!(!hom_space(&m, &t).unwrap().is_empty());
    assert!(m.dim() >= t.dim());
}

#[test]
fn identity_suite_at_p3() {
    let c = ctx(3, 3, 3);
    let reports = verify_identity_suite(&c);
    assert!(reports.len() >= 20);
    for r in &reports {
        if r.id.starts_with("identity/hom-sym-as-stated/") {
            let lambda: Vec<usize> = r.id.rsplit('/').next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
            let big = lambda.iter().any(|&k| k >= 3);
            let want = if big { Status::Discrepancy } else { Status::Verified };
            assert_eq!(r.status, want, "{}", r.id);
        } else {
            assert_eq!(r.status, Status::Verified, "{} {:?}", r.id, r.detail);
        }
        if r.status == Status::Verified && r.detail.is_none() {
            assert!(r.witness.as_ref().unwrap().validate(), "{}", r.id);
        }
    }
}

#[test]
fn theorems_and_monoidality_at_p3() {
    let c = ctx(3, 3, 3);
    let mut reports = verify_adjoint_theorems(&c, &default_sample(3));
    reports.extend(verify_monoidality(&c));
    for r in &reports {
        assert_eq!(r.status, Status::Verified, "{} {:?}", r.id, r.detail);
    }
    let unit = reports.iter().find(|r| r.id == "monoidal/gamma-vs-sym").unwrap();
    assert!(unit.witness.is_none() && unit.detail.is_some());
}

#[test]
fn theorems_at_d2() {
    for p in [3, 5] {
        let c = ctx(p, 2, 2);
        let mut reports = verify_identity_suite(&c);
        reports.extend(verify_adjoint_theorems(&c, &default_sample(2)));
        for r in &reports {
            assert!(!matches!(r.status, Status::Refuted | Status::Inconclusive), "{} {:?}", r.id, r.detail);
        }
    }
}

#[test]
fn classification_at_p3() {
    let c = ctx(3, 3, 3);
    let cells = classify_simple_tensor(&c).unwrap();
    assert_eq!(cells.len(), 3);
    let find = |a: &[usize], b: &[usize]| {
        let (a, b) = (Partition::new(a.to_vec()).unwrap(), Partition::new(b.to_vec()).unwrap());
        cells.iter().find(|c| (c.lambda == a && c.mu == b) || (c.lambda == b && c.mu == a)).unwrap()
    };
    let hh = find(&[2, 1], &[2, 1]);
    assert!(!hh.simple);
    let ch = find(&[1, 1, 1], &[2, 1]);
    assert!(ch.simple);
    assert_eq!(ch.identified, Some(Partition::column(3)));
    let cc = find(&[1, 1, 1], &[1, 1, 1]);
    assert!(!cc.simple);
    for cell in &cells {
        for r in &cell.reports {
            let expected = if r.id == "closed-form/(1,1,1)/(1,1,1)" { Status::Discrepancy } else { Status::Verified };
            assert_eq!(r.status, expected, "{} {:?}", r.id, r.detail);
        }
    }
    let facts = composition_series_facts(&c).unwrap();
    assert_eq!(facts.len(), 2);
    assert!(facts.iter().all(|r| r.status == Status::Verified));
}

#[test]
fn criteria_at_p3_and_p5() {
    let c = ctx(3, 3, 3);
    let b = check_simplicity_criteria(&c, &Partition::new(vec![2, 1]).unwrap()).unwrap();
    assert!(!b.ext_criterion && !b.direct);
    let b = check_simplicity_criteria(&c, &Partition::column(3)).unwrap();
    assert!(b.direct);
    let c = ctx(5, 3, 3);
    for mu in crate::combin::partitions(3, 3) {
        let b = check_simplicity_criteria(&c, &mu).unwrap();
        assert!(b.direct && b.ext_criterion && b.p_core, "{mu}");
        assert!(b.reports.iter().all(|r| r.status == Status::Verified));
    }
}

#[test]
fn witnesses_round_trip() {
    let c = ctx(3, 3, 3);
    let r = iso_claim("x", "x", Expect::Iso, 0, || {
        Ok((c.realize(&fx("tensor(S(2,1),Gamma(3))"))?, c.realize(&fx("S(2,1)"))?))
    });
    let w = r.witness.unwrap();
    let mut buf = Vec::new();
    write_witness(&w, &mut buf).unwrap();
    let back = read_witness(&mut buf.as_slice()).unwrap();
    assert_eq!(back.map, w.map);
    let mid = buf.len() / 2;
    buf[mid] ^= 1;
    assert!(read_witness(&mut buf.as_slice()).is_err());
}

#[test]
fn report_json_shape() {
    let r = Report::new("a/b", "X ≅ Y", Status::Discrepancy, [3, 4], 7);
    let line = r.to_json_line(false);
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["status"], "discrepancy");
    assert_eq!(v["dims"], serde_json::json!([3, 4]));
    assert!(v.get("ms").is_none());
    assert!(v["witness_file"].is_null());
}

#[test]
fn p_core_shortcut_at_d4() {
    let c = ctx(3, 4, 4);
    let mu = Partition::new(vec![3, 1]).unwrap();
    assert!(mu.is_p_core(3));
    let l = crate::polyfun::simple_module(&mu, 4, 3).unwrap().module;
    let gf = c.g_tensor(&c.schur_f(&l).unwrap()).unwrap();
    assert!(iso(&gf, &l));
    let b = check_simplicity_criteria(&c, &mu).unwrap();
    assert!(b.direct && b.p_core);
    assert!(b.reports.iter().all(|r| r.status == Status::Verified), "{:?}", b.reports);
}

#[test]
fn mullineux_suite() {
    for p in [3, 5] {
        let reports = verify_mullineux(p, 4, 8, 0);
        assert!(reports.iter().all(|r| r.status == Status::Verified), "{p}");
        assert_eq!(reports.iter().filter(|r| r.id.contains("/value/")).count(), 2);
    }
}
