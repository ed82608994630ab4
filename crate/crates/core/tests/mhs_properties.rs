mod common;

use common::*;
use eiscomp::mhs::criteria::Verdict;
use eiscomp::mhs::linalg::{CMat, CVec};
use eiscomp::mhs::scholl::pairing_from_sections;
use eiscomp::mhs::*;
use num_complex::Complex64;
use rand::Rng;

#[test]
fn carlson_section_independence() {
    let mut rng = rng(seed());
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let c = cz(&mut rng) * 3.0;
        let g = real_basis2(&mut rng);
        let e = tate_extension(n, c, &g).unwrap();
        let base = carlson_class(&e).unwrap();
        assert!(base.equivalent(&TateExtClass::new(n, c), 1e-10), "{base:?} vs {c}");
        for _ in 0..3 {
            let t = rng.gen_range(-5.0..5.0);
            let other = carlson_class_with_section(&e, t).unwrap();
            assert!(base.equivalent(&other, 1e-10));
        }
    }
}

#[test]
fn carlson_split_is_zero() {
    let mut rng = rng(seed());
    for n in 1..=3 {
        let e = tate_extension(n, Complex64::new(0.0, 0.0), &real_basis2(&mut rng)).unwrap();
        assert_eq!(carlson_class(&e).unwrap().value, Complex64::new(0.0, 0.0));
    }
}

#[test]
fn pm_pairing_properties() {
    let mut rng = rng(seed() ^ 0x5eed);
    for i in 0..50 {
        let split = i % 3 == 0;
        let m = pm_model(&mut rng, split);
        let h = m.to_mhs(None).unwrap();
        let ws = split_weight_minus1(&h).unwrap();
        let labels = PairingLabels::default_for(&ws.w);
        let secs = filtration_sections(&ws.w, &labels).unwrap();
        let b = pairing_from_sections(&secs);
        assert!((&b - m.expected_pairing()).norm() < 1e-10);

        let (r, s) = (m.r(), m.s());
        let (x1, x2, y) = (cvec(&mut rng, r), cvec(&mut rng, r), cvec(&mut rng, s));
        let (al, be) = (cz(&mut rng), cz(&mut rng));
        let lhs = pairing_value(&b, &(&x1 * al + &x2 * be), &y);
        let rhs = al * pairing_value(&b, &x1, &y) + be * pairing_value(&b, &x2, &y);
        assert!((lhs - rhs).norm() < 1e-10);

        let oracle = splits_by_solve(&ws.w);
        assert_eq!(oracle, split);
        assert_eq!(w_splits(&ws.w), oracle);
        assert_eq!(b.norm() < 1e-10, oracle);

        let bxy = pairing_value(&b, &x1, &y);
        let zero = bxy.norm() < 1e-9;
        let sigma_a = cmat(&mut rng, s, r);
        let d = prop78_from_sections(&secs, &sigma_a, &x1, &y, cz(&mut rng) + 1.5, cz(&mut rng) + 1.5);
        let nv = nonvanishing_check(&d).unwrap();
        assert_eq!(nv.vanishes, Some(zero), "instance {i}: b = {bxy}, {nv:?}");

        let t = (cz(&mut rng), cz(&mut rng));
        let e = pm_extension_from_sections(&secs, &x1, &y, t);
        let tr = triviality_pm(&e).unwrap();
        assert_eq!(tr.plus, tr.minus);
        assert_eq!(tr.plus == Verdict::Conjugate, zero);
        assert!((tr.class_plus * Complex64::new(0.0, std::f64::consts::PI) - bxy).norm() < 1e-10);
    }
}

#[test]
fn pm_pairing_is_basis_independent() {
    let mut rng = rng(seed() ^ 0xba5e);
    for _ in 0..10 {
        let m = pm_model(&mut rng, false);
        let n = 2 * (m.s() + 1 + m.r());
        let g = CMat::identity(n, n) + cmat(&mut rng, n, n) * Complex64::new(0.2, 0.0);
        let h = m.to_mhs(Some(&g)).unwrap();
        let b = scholl_pairing(&h, None).unwrap();
        assert!((&b - m.expected_pairing()).norm() < 1e-8, "{b} vs {}", m.expected_pairing());
    }
}

#[test]
fn real_pairing_is_carlson_class() {
    let mut rng = rng(seed() ^ 0xca71);
    for i in 0..50 {
        let split = i % 4 == 0;
        let m = real_model(&mut rng, split);
        let h = m.to_mhs().unwrap();
        let w = split_weight_minus1(&h).unwrap().w;
        let b = scholl_pairing(&h, None).unwrap();
        assert!((&b - m.expected_pairing()).norm() < 1e-10);
        assert_eq!(splits_by_solve(&w), split);
        assert_eq!(b.norm() < 1e-10, split);

        let (s, r) = m.a.shape();
        let (x1, x2, y) = (rvec(&mut rng, r), rvec(&mut rng, r), rvec(&mut rng, s));
        let (al, be) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let cls = |x: &[f64]| carlson_along(&w, x, &y).unwrap().reduced();
        let mix: Vec<f64> = x1.iter().zip(&x2).map(|(a, b)| al * a + be * b).collect();
        assert!((cls(&mix) - (cls(&x1) * al + cls(&x2) * be)).norm() < 1e-10);
        let xc = CVec::from_iterator(r, x1.iter().map(|&t| Complex64::new(t, 0.0)));
        let yc = CVec::from_iterator(s, y.iter().map(|&t| Complex64::new(t, 0.0)));
        assert!((cls(&x1) - pairing_value(&b, &xc, &yc)).norm() < 1e-10);
    }
}
