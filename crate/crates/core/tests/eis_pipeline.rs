use eiscomp::eis::*;
use eiscomp::hodge::extension_certificate_types;
use eiscomp::lfun::EvalConfig;
use eiscomp::weyl::{TorusCharGL, WeylElt};

#[test]
fn numeric_reports_for_the_family() {
    let cfg = EvalConfig::default();
    for (d, k, class) in [(-4, 0, PhiClass::P), (-4, 1, PhiClass::Np), (-4, 2, PhiClass::Np), (-3, 1, PhiClass::Np), (-3, 2, PhiClass::P)] {
        let phi = family_character(d, k).unwrap();
        let rep = build_report(&phi, k, None, &cfg).unwrap();
        assert_eq!(rep.class, class, "d={d} k={k}");
        assert_eq!(rep.class, PhiClass::from_order(rep.c_order_at_zero));
        let h = &rep.hypotheses;
        assert_eq!(h.shape, Some(true));
        let np = class == PhiClass::Np;
        assert_eq!(h.sign, Some(np));
        assert_eq!(h.first_order, Some(np));
        assert_eq!(rep.character.w, WeylElt::C123);
        assert_eq!(rep.half_planes.hecke, "-1/2");
        assert_eq!(rep.half_planes.restriction, "-2");
        let t = extension_certificate_types(k);
        assert_eq!(rep.certificate.iphi, t.iphi.hodge_type());
        assert_eq!(rep.certificate.hphi, (k, -(k + 3)));
    }
}

#[test]
fn c_order_matches_central_order() {
    let cfg = EvalConfig::default();
    for (d, k) in [(-4, 1), (-4, 3)] {
        let phi = family_character(d, k).unwrap();
        let oracle = NumericOracle::new(&phi, &cfg).unwrap();
        let co = c_order_at_zero(&phi, TorusCharGL::new(k, 0), &oracle).unwrap();
        let m = oracle.order_at(-1).unwrap().order;
        assert_eq!(co.order, m - 1);
        let dir = co.slots.iter().find(|s| s.slot == "L(phi_Q eps, 2s-2)").unwrap();
        assert_eq!((dir.argument, dir.order), (-2, -1));
    }
}

#[test]
fn reports_are_deterministic() {
    let cfg = EvalConfig::default();
    let phi = family_character(-4, 2).unwrap();
    let th = theta_character(-4, 2).unwrap();
    let a = build_report(&phi, 2, Some(&th), &cfg).unwrap().to_json();
    let b = build_report(&phi, 2, Some(&th), &cfg).unwrap().to_json();
    assert_eq!(a, b);
    assert_eq!(EisReport::from_json(&a).unwrap().to_json(), a);
}

#[test]
fn local_product_converges() {
    let cfg = EvalConfig::default();
    for (d, k) in [(-4, 1), (-3, 1)] {
        let c = CFactor::new(&family_character(d, k).unwrap()).unwrap();
        let g = c.global(3.0, &cfg).unwrap();
        let errs: Vec<f64> = [50, 500, 5000]
            .iter()
            .map(|&p| (c.partial_product(3.0, p).unwrap() - g).norm() / g.norm())
            .collect();
        assert!(errs[2] < errs[0] && errs[2] < 1e-7, "{errs:?}");
    }
}
