//! Exact Hecke coefficients in a cyclotomic ring.
//!
//! For `φ` of type `(p, q)` the value on `(α)` is `ψ(α)·N(α)^{min(p,q)}` with
//! `ψ(α) = χ(α)·α^{p−q}` (or `χ(α)·ᾱ^{q−p}`), an element of `Z[ζ_M]`. Since the
//! norm power is completely multiplicative, comparing the ψ-sums compares the
//! coefficients.

use crate::characters::{CharError, HeckeChar};
use crate::cyclotomic::{CycElem, CycError, CyclotomicRing, Embedding};
use crate::field::{FieldElement, Splitting};
use crate::numtheory::{lcm_u64, primes_up_to, spf_table};

use super::LError;

impl From<CycError> for LError {
    fn from(e: CycError) -> Self {
        LError::Domain(e.to_string())
    }
}

pub struct ExactSeries {
    pub ring: CyclotomicRing,
    /// ψ-sums indexed by n; index 0 unused.
    pub coeffs: Vec<CycElem>,
}

struct Psi<'a> {
    phi: &'a HeckeChar,
    ring: CyclotomicRing,
    emb: Embedding,
}

impl<'a> Psi<'a> {
    fn new(phi: &'a HeckeChar) -> Result<Self, LError> {
        let m = lcm_u64(phi.twist_order() as u64, phi.field().disc().unsigned_abs());
        let ring = CyclotomicRing::new(m);
        let emb = ring.embedding(phi.field())?;
        Ok(Psi { phi, ring, emb })
    }

    fn value(&self, g: &FieldElement) -> Result<CycElem, LError> {
        let ang = self.phi.twist_angle(g)?;
        let m = self.ring.order() as i64;
        let k = ang * m;
        debug_assert!(k.is_integer());
        let inf = self.phi.infinity();
        let (base, e) = if inf.p >= inf.q {
            (*g, inf.p - inf.q)
        } else {
            (g.conj(), inf.q - inf.p)
        };
        let b = self.emb.apply(&self.ring, &base)?;
        let pw = self.ring.pow(&b, e as u32)?;
        Ok(self.ring.mul(&self.ring.zeta_pow(k.to_integer()), &pw)?)
    }
}

/// ψ-sums over ideals of each norm `n ≤ bound`, coprime to the conductor.
pub fn direct_coefficients(phi: &HeckeChar, bound: usize) -> Result<ExactSeries, LError> {
    let psi = Psi::new(phi)?;
    let mut coeffs = vec![psi.ring.zero(); bound + 1];
    for (n, id) in phi.field().enumerate_ideals(bound as u64) {
        if phi.is_coprime_ideal(&id) {
            let v = psi.value(&id.generator())?;
            coeffs[n as usize] = psi.ring.add(&coeffs[n as usize], &v)?;
        }
    }
    Ok(ExactSeries {
        ring: psi.ring,
        coeffs,
    })
}

/// ψ-coefficients from the Euler product: local series inverted prime by prime,
/// then assembled multiplicatively.
pub fn euler_coefficients(phi: &HeckeChar, bound: usize) -> Result<ExactSeries, LError> {
    let psi = Psi::new(phi)?;
    let ring = &psi.ring;
    let field = phi.field();
    let spf = spf_table(bound);
    // local[p] = coefficients of 1/E_p(X) up to X^{max e with p^e ≤ bound}
    let mut local: Vec<Vec<CycElem>> = vec![Vec::new(); bound + 1];
    for p in primes_up_to(bound) {
        let mut emax = 0usize;
        let mut pe = 1u64;
        while pe * p <= bound as u64 {
            pe *= p;
            emax += 1;
        }
        let deg = match field.splitting_type(p).map_err(CharError::from)? {
            Splitting::Inert => 2,
            _ => 1,
        };
        // E_p(X) = Π (1 − ψ(𝔭) X^deg)
        let mut e = vec![ring.zero(); emax + 1];
        e[0] = ring.one();
        for q in field.primes_above(p).map_err(CharError::from)? {
            if !phi.is_coprime_ideal(&q) {
                continue;
            }
            let v = psi.value(&q.generator())?;
            let mut next = e.clone();
            for i in 0..=emax {
                if i + deg <= emax {
                    let t = ring.mul(&e[i], &v)?;
                    next[i + deg] = ring.sub(&next[i + deg], &t)?;
                }
            }
            e = next;
        }
        // invert the monic power series
        let mut inv = vec![ring.zero(); emax + 1];
        inv[0] = ring.one();
        for k in 1..=emax {
            let mut acc = ring.zero();
            for j in 1..=k {
                let t = ring.mul(&e[j], &inv[k - j])?;
                acc = ring.sub(&acc, &t)?;
            }
            inv[k] = acc;
        }
        local[p as usize] = inv;
    }
    let mut coeffs = vec![ring.zero(); bound + 1];
    if bound >= 1 {
        coeffs[1] = ring.one();
    }
    for n in 2..=bound {
        let p = spf[n] as usize;
        let mut m = n;
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        coeffs[n] = ring.mul(&local[p][e], &coeffs[m])?;
    }
    Ok(ExactSeries {
        ring: psi.ring,
        coeffs,
    })
}
