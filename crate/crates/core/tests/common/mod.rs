//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use eiscomp::mhs::linalg::{CMat, CVec};
use eiscomp::mhs::synthetic::{PmModel, RealModel};
use eiscomp::mhs::MixedHSC;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20240611;

/// Seed from `EISCOMP_SEED`, else the fixed default.
pub fn seed() -> u64 {
    std::env::var("EISCOMP_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cz(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn cvec(rng: &mut ChaCha8Rng, n: usize) -> CVec {
    CVec::from_fn(n, |_, _| cz(rng))
}

pub fn cmat(rng: &mut ChaCha8Rng, r: usize, c: usize) -> CMat {
    CMat::from_fn(r, c, |_, _| cz(rng))
}

pub fn rvec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Real 2×2 basis with determinant bounded away from zero.
pub fn real_basis2(rng: &mut ChaCha8Rng) -> CMat {
    loop {
        let m: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let det = m[0] * m[3] - m[1] * m[2];
        if det.abs() > 0.5 {
            return CMat::from_row_slice(2, 2, &m.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());
        }
    }
}

pub fn pm_model(rng: &mut ChaCha8Rng, split: bool) -> PmModel {
    let s = rng.gen_range(1..=4);
    let r = rng.gen_range(1..=4);
    let a = cmat(rng, s, r);
    let a_prime = if split { a.map(|z| z.conj()) } else { cmat(rng, s, r) };
    PmModel {
        k: rng.gen_range(0..6),
        alpha_h: cvec(rng, s),
        a,
        a_prime,
        c: cvec(rng, r),
    }
}

/// Real-coefficient model; when `split`, `a` is chosen so that `ζ` is real.
pub fn real_model(rng: &mut ChaCha8Rng, split: bool) -> RealModel {
    let s = rng.gen_range(1..=4);
    let r = rng.gen_range(1..=4);
    let alpha_h = cvec(rng, s);
    let c = cvec(rng, r);
    let d = cvec(rng, r);
    let a = if split {
        CMat::from_fn(s, r, |i, j| {
            Complex64::new(rng.gen_range(-1.0..1.0), 0.0) - (d[j].conj() - c[j]) * alpha_h[i]
        })
    } else {
        cmat(rng, s, r)
    };
    RealModel {
        k: rng.gen_range(0..6),
        alpha_h,
        a,
        c,
        d,
    }
}

/// Splitting oracle by least squares: does `conj F^0 ⊂ F^0`?
pub fn splits_by_solve(w: &MixedHSC) -> bool {
    let f0 = w.hodge_space(0).basis().clone();
    let r = w.real_basis().clone();
    let ri = r.clone().try_inverse().expect("real basis invertible");
    let cf = &r * (&ri * &f0).map(|z| z.conj());
    let svd = f0.clone().svd(true, true);
    let x = svd.solve(&cf, 1e-12).expect("least squares");
    (&f0 * x - &cf).norm() < 1e-8 * (1.0 + cf.norm())
}
