//! Synthetic three-step structures with known pairing, for round-trip tests.
//!
//! Layout per block: `[A (s, weight −2) | H (weight −1) | B (r, weight 0)]`. The
//! weight −1 part has type `(k+1, −k−2)` and its conjugate.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::linalg::{c, unit, CMat, CVec};
use super::structure::MixedHSC;
use super::MhsError;

/// Two-sided model with coefficient idempotent: ambient `V⁺ ⊕ V⁻`, conjugation
/// `(p, q) ↦ (q̄, p̄)`, projector onto `V⁺`.
#[derive(Debug, Clone)]
pub struct PmModel {
    pub k: i64,
    /// Weight −2 part of the lift of the `H⁺` generator, length `s`.
    pub alpha_h: CVec,
    /// `s × r`: weight −2 part of the `F^0` lifts of the `B⁺` generators.
    pub a: CMat,
    /// `s × r`: same on the `−` side; the structure splits iff `a_prime = conj(a)`.
    pub a_prime: CMat,
    /// `H⁺` coefficients of the `B⁺` lifts, length `r`.
    pub c: CVec,
}

impl PmModel {
    pub fn s(&self) -> usize {
        self.a.nrows()
    }

    pub fn r(&self) -> usize {
        self.a.ncols()
    }

    fn block(&self) -> usize {
        self.s() + 1 + self.r()
    }

    /// `b_{ji} = πi(a_{ij} − conj a′_{ij})`.
    pub fn expected_pairing(&self) -> CMat {
        (&self.a - self.a_prime.map(|z| z.conj())).transpose() * c(0.0, PI)
    }

    fn embed(&self, plus: &CVec, minus: &CVec) -> CVec {
        let m = self.block();
        let mut v = CVec::zeros(2 * m);
        v.rows_mut(0, m).copy_from(plus);
        v.rows_mut(m, m).copy_from(minus);
        v
    }

    fn side(&self, a: &[Complex64], h: Complex64, b: &[Complex64]) -> CVec {
        let mut v: Vec<Complex64> = a.to_vec();
        v.push(h);
        v.extend_from_slice(b);
        CVec::from_vec(v)
    }

    /// The structure, optionally in the ambient basis `g` (vectors `x ↦ g x`).
    pub fn to_mhs(&self, g: Option<&CMat>) -> Result<MixedHSC, MhsError> {
        let (s, r, m) = (self.s(), self.r(), self.block());
        if self.a_prime.shape() != (s, r) || self.alpha_h.len() != s || self.c.len() != r {
            return Err(MhsError::Shape("inconsistent synthetic block sizes".into()));
        }
        let z = CVec::zeros(m);
        let one = c(1.0, 0.0);
        let real_pair = |k: usize| -> [CVec; 2] {
            let e = unit(m, k, one);
            [
                self.embed(&e, &e),
                self.embed(&(&e * c(0.0, 1.0)), &(&e * c(0.0, -1.0))),
            ]
        };
        let pairs = |range: std::ops::Range<usize>| -> Vec<CVec> {
            let ps: Vec<[CVec; 2]> = range.map(real_pair).collect();
            ps.iter().map(|p| p[0].clone()).chain(ps.iter().map(|p| p[1].clone())).collect()
        };
        let zeros_r = vec![c(0.0, 0.0); r];
        let hp = self.embed(&self.side(self.alpha_h.as_slice(), one, &zeros_r), &z);
        let alpha_bar: Vec<Complex64> = self.alpha_h.iter().map(|x| x.conj()).collect();
        let hm = self.embed(&z, &self.side(&alpha_bar, one, &zeros_r));
        let mut weights = BTreeMap::new();
        weights.insert(-2, pairs(0..s));
        weights.insert(-1, vec![&hp + &hm, (&hp - &hm) * c(0.0, 1.0)]);
        weights.insert(0, pairs(s + 1..m));
        let mut f0 = vec![hp.clone()];
        for j in 0..r {
            let e = unit(r, j, one);
            let col: Vec<Complex64> = self.a.column(j).iter().copied().collect();
            let colp: Vec<Complex64> = self.a_prime.column(j).iter().copied().collect();
            f0.push(self.embed(&self.side(&col, self.c[j], e.as_slice()), &z));
            f0.push(self.embed(&z, &self.side(&colp, self.c[j].conj(), e.as_slice())));
        }
        let mut fm1 = f0.clone();
        for i in 0..s {
            let e = unit(m, i, one);
            fm1.push(self.embed(&e, &z));
            fm1.push(self.embed(&z, &e));
        }
        let all: Vec<CVec> = (0..2 * m).map(|i| unit(2 * m, i, one)).collect();
        let mut hodge = BTreeMap::new();
        hodge.insert(self.k + 1, vec![hp]);
        hodge.insert(0, f0);
        hodge.insert(-1, fm1);
        hodge.insert(-self.k - 2, all);
        let mut p = CMat::zeros(2 * m, 2 * m);
        for i in 0..m {
            p[(i, i)] = one;
        }
        match g {
            None => MixedHSC::new(2 * m, weights, hodge, Some(p)),
            Some(g) => {
                let gi = g
                    .clone()
                    .try_inverse()
                    .ok_or_else(|| MhsError::Invalid("change of basis is singular".into()))?;
                let tr = |m: BTreeMap<i64, Vec<CVec>>| -> BTreeMap<i64, Vec<CVec>> {
                    m.into_iter().map(|(k, v)| (k, v.iter().map(|x| g * x).collect())).collect()
                };
                MixedHSC::new(2 * m, tr(weights), tr(hodge), Some(g * p * gi))
            }
        }
    }
}

/// Real-coefficient model: `H` is two-dimensional with `H^{k+1,−k−2}` spanned by
/// `(1, i)` in its coordinates, conjugation is coordinatewise.
#[derive(Debug, Clone)]
pub struct RealModel {
    pub k: i64,
    pub alpha_h: CVec,
    /// `s × r`.
    pub a: CMat,
    /// `H` coefficients of the `B` lifts along `(1, i)` and `(1, −i)`.
    pub c: CVec,
    pub d: CVec,
}

impl RealModel {
    /// `ζ_{ij} = a_{ij} + (d̄_j − c_j) α_i`: the real complement of `H` inside
    /// `F^0 + conj F^0` is cut out by `g_j + (d̄_j − c_j) h`.
    pub fn zeta(&self) -> CMat {
        let mut z = self.a.clone();
        for i in 0..self.a.nrows() {
            for j in 0..self.a.ncols() {
                z[(i, j)] += (self.d[j].conj() - self.c[j]) * self.alpha_h[i];
            }
        }
        z
    }

    /// `b_{ji} = −2π Im ζ_{ij}`.
    pub fn expected_pairing(&self) -> CMat {
        self.zeta().transpose().map(|z| c(-2.0 * PI * z.im, 0.0))
    }

    pub fn to_mhs(&self) -> Result<MixedHSC, MhsError> {
        let (s, r) = self.a.shape();
        if self.alpha_h.len() != s || self.c.len() != r || self.d.len() != r {
            return Err(MhsError::Shape("inconsistent synthetic block sizes".into()));
        }
        let n = s + 2 + r;
        let one = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        let mut h = CVec::zeros(n);
        h.rows_mut(0, s).copy_from(&self.alpha_h);
        h[s] = one;
        h[s + 1] = i;
        let hb = h.map(|z| z.conj());
        let mut weights = BTreeMap::new();
        weights.insert(-2, (0..s).map(|k| unit(n, k, one)).collect());
        weights.insert(-1, vec![&h + &hb, (&h - &hb) * i]);
        weights.insert(0, (0..r).map(|k| unit(n, s + 2 + k, one)).collect());
        let mut f0 = vec![h.clone()];
        for j in 0..r {
            let mut g = CVec::zeros(n);
            g.rows_mut(0, s).copy_from(&self.a.column(j));
            g[s] = self.c[j] + self.d[j];
            g[s + 1] = (self.c[j] - self.d[j]) * i;
            g[s + 2 + j] = one;
            f0.push(g);
        }
        let mut fm1 = f0.clone();
        fm1.extend((0..s).map(|k| unit(n, k, one)));
        let mut hodge = BTreeMap::new();
        hodge.insert(self.k + 1, vec![h]);
        hodge.insert(0, f0);
        hodge.insert(-1, fm1);
        hodge.insert(-self.k - 2, (0..n).map(|k| unit(n, k, one)).collect());
        MixedHSC::new(n, weights, hodge, None)
    }
}
