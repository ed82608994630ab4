//! Exact arithmetic in `Z[ζ_M] = Z[x]/Φ_M(x)` with overflow-checked i128 coefficients.
//!
//! Used to compare Hecke coefficients exactly: the ring is a domain embedding
//! into C, so equal reduced representatives mean equal complex numbers.

use thiserror::Error;

use crate::field::{FieldElement, QuadField};
use crate::numtheory::kronecker;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("coefficient overflow in cyclotomic arithmetic")]
    Overflow,
    #[error("order {m} is not divisible by |d| = {d}")]
    BadOrder { m: u64, d: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycElem(pub Vec<i128>);

#[derive(Debug, Clone)]
pub struct CyclotomicRing {
    m: u64,
    /// Φ_M, monic, lowest degree first.
    phi: Vec<i128>,
    powers: Vec<CycElem>,
}

fn poly_divexact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut q = vec![0i128; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd] / lead;
        q[i] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn cyclotomic_poly(m: u64) -> Vec<i128> {
    // x^m - 1 divided by Φ_e for all proper divisors e
    let mut p = vec![0i128; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for e in 1..m {
        if m.is_multiple_of(e) {
            p = poly_divexact(&p, &cyclotomic_poly(e));
        }
    }
    p
}

impl CyclotomicRing {
    pub fn new(m: u64) -> Self {
        let phi = cyclotomic_poly(m);
        let deg = phi.len() - 1;
        let mut ring = CyclotomicRing {
            m,
            phi,
            powers: Vec::new(),
        };
        let mut x = vec![0i128; deg.max(1)];
        x[0] = 1;
        let mut cur = CycElem(x);
        let mut zeta = vec![0i128; deg.max(1)];
        if deg > 1 {
            zeta[1] = 1;
        } else {
            // Φ_1 = x - 1, Φ_2 = x + 1: ζ is the constant root
            zeta[0] = -ring.phi[0];
        }
        let zeta = CycElem(zeta);
        for _ in 0..m {
            ring.powers.push(cur.clone());
            cur = ring.mul(&cur, &zeta).expect("small");
        }
        ring
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        (self.phi.len() - 1).max(1)
    }

    pub fn zero(&self) -> CycElem {
        CycElem(vec![0; self.degree()])
    }

    pub fn one(&self) -> CycElem {
        self.powers[0].clone()
    }

    pub fn from_int(&self, n: i128) -> CycElem {
        let mut v = vec![0; self.degree()];
        v[0] = n;
        CycElem(v)
    }

    pub fn zeta_pow(&self, j: i64) -> CycElem {
        self.powers[j.rem_euclid(self.m as i64) as usize].clone()
    }

    pub fn add(&self, x: &CycElem, y: &CycElem) -> Result<CycElem, CycError> {
        x.0.iter()
            .zip(&y.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(CycError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(CycElem)
    }

    pub fn sub(&self, x: &CycElem, y: &CycElem) -> Result<CycElem, CycError> {
        x.0.iter()
            .zip(&y.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(CycError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(CycElem)
    }

    pub fn scale(&self, x: &CycElem, c: i128) -> Result<CycElem, CycError> {
        x.0.iter()
            .map(|a| a.checked_mul(c).ok_or(CycError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(CycElem)
    }

    pub fn mul(&self, x: &CycElem, y: &CycElem) -> Result<CycElem, CycError> {
        let n = self.degree();
        let mut prod = vec![0i128; 2 * n];
        for (i, a) in x.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in y.0.iter().enumerate() {
                let t = a.checked_mul(*b).ok_or(CycError::Overflow)?;
                prod[i + j] = prod[i + j].checked_add(t).ok_or(CycError::Overflow)?;
            }
        }
        let deg = self.phi.len() - 1;
        if deg >= 1 && n == deg {
            for k in (deg..2 * n).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                for (j, pj) in self.phi.iter().enumerate() {
                    let t = c.checked_mul(*pj).ok_or(CycError::Overflow)?;
                    prod[k - deg + j] = prod[k - deg + j].checked_sub(t).ok_or(CycError::Overflow)?;
                }
            }
        }
        prod.truncate(n);
        Ok(CycElem(prod))
    }

    pub fn pow(&self, x: &CycElem, e: u32) -> Result<CycElem, CycError> {
        let mut r = self.one();
        let mut b = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b)?;
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b)?;
            }
        }
        Ok(r)
    }

    /// Gauss sum `Σ χ_d(a) ζ_{|d|}^a = √d` (positive imaginary part).
    pub fn sqrt_disc(&self, d: i64) -> Result<CycElem, CycError> {
        let ad = d.unsigned_abs();
        if !self.m.is_multiple_of(ad) {
            return Err(CycError::BadOrder { m: self.m, d: ad });
        }
        let step = (self.m / ad) as i64;
        let mut acc = self.zero();
        for a in 1..ad {
            let k = kronecker(d, a) as i128;
            if k != 0 {
                acc = self.add(&acc, &self.scale(&self.zeta_pow(step * a as i64), k)?)?;
            }
        }
        Ok(acc)
    }

    /// Embeds `a + bω` using `ω = (d + √d)/2`.
    pub fn embedding(&self, field: QuadField) -> Result<Embedding, CycError> {
        let g = self.sqrt_disc(field.disc())?;
        let two_omega = self.add(&self.from_int(field.disc() as i128), &g)?;
        let omega = CycElem(two_omega.0.iter().map(|c| c / 2).collect());
        debug_assert!(two_omega.0.iter().all(|c| c % 2 == 0));
        Ok(Embedding { omega })
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    omega: CycElem,
}

impl Embedding {
    pub fn apply(&self, ring: &CyclotomicRing, x: &FieldElement) -> Result<CycElem, CycError> {
        let bw = ring.scale(&self.omega, x.b)?;
        ring.add(&ring.from_int(x.a), &bw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_has_order_m() {
        for m in [3u64, 4, 6, 8, 12, 28] {
            let r = CyclotomicRing::new(m);
            assert_eq!(r.zeta_pow(m as i64), r.one());
            assert_ne!(r.zeta_pow(1), r.one());
            assert_eq!(r.mul(&r.zeta_pow(3), &r.zeta_pow(5)).unwrap(), r.zeta_pow(8));
        }
    }

    #[test]
    fn gauss_sum_squares_to_d() {
        for (d, m) in [(-3i64, 3u64), (-4, 4), (-7, 7), (-8, 8), (-3, 12), (-4, 12), (-11, 11)] {
            let r = CyclotomicRing::new(m);
            let g = r.sqrt_disc(d).unwrap();
            assert_eq!(r.mul(&g, &g).unwrap(), r.from_int(d as i128), "d={d} m={m}");
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        for (d, m) in [(-3i64, 6u64), (-4, 4), (-7, 28)] {
            let f = QuadField::new(d).unwrap();
            let r = CyclotomicRing::new(m);
            let e = r.embedding(f).unwrap();
            for (a, b, c, dd) in [(1, 2, -3, 1), (5, -1, 0, 2), (-2, 3, 4, -4)] {
                let x = f.elem(a, b);
                let y = f.elem(c, dd);
                let lhs = e.apply(&r, &(x * y)).unwrap();
                let rhs = r.mul(&e.apply(&r, &x).unwrap(), &e.apply(&r, &y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
