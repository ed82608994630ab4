//! Imaginary quadratic fields of class number one.
//!
//! Elements are written `a + b·ω` with `ω = (d + √d)/2`, so `ω² = d·ω − (d² − d)/4`.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{factorize, is_prime, kronecker};

pub const ADMISSIBLE_DISCRIMINANTS: [i64; 9] = [-3, -4, -7, -8, -11, -19, -43, -67, -163];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error(
        "discriminant {0} is not admissible; expected one of -3, -4, -7, -8, -11, -19, -43, -67, -163"
    )]
    Inadmissible(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the zero element does not generate an ideal")]
    ZeroIdeal,
    #[error("integer overflow in field arithmetic")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct QuadField {
    d: i64,
}

impl TryFrom<i64> for QuadField {
    type Error = FieldError;
    fn try_from(d: i64) -> Result<Self, FieldError> {
        QuadField::new(d)
    }
}

impl From<QuadField> for i64 {
    fn from(f: QuadField) -> i64 {
        f.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self, FieldError> {
        if ADMISSIBLE_DISCRIMINANTS.contains(&d) {
            Ok(QuadField { d })
        } else {
            Err(FieldError::Inadmissible(d))
        }
    }

    pub fn disc(&self) -> i64 {
        self.d
    }

    pub fn class_number(&self) -> u32 {
        1
    }

    /// `n0` in `ω² = dω − n0`; equals the norm of ω.
    pub fn omega_norm(&self) -> i128 {
        ((self.d * self.d - self.d) / 4) as i128
    }

    pub fn unit_count(&self) -> u32 {
        match self.d {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }

    pub fn elem(&self, a: i128, b: i128) -> FieldElement {
        FieldElement { a, b, field: *self }
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1, 0)
    }

    pub fn omega(&self) -> FieldElement {
        self.elem(0, 1)
    }

    /// Primitive root of unity `e^{2πi/w}` generating the unit group.
    pub fn unit_generator(&self) -> FieldElement {
        match self.d {
            // ω = -2 + i, so i = ω + 2; for d = -3, ω + 2 = (1 + √-3)/2
            -4 | -3 => self.elem(2, 1),
            _ => self.elem(-1, 0),
        }
    }

    /// Units `ζ^k`, k = 0..w, with ζ the unit generator.
    pub fn units(&self) -> Vec<FieldElement> {
        let z = self.unit_generator();
        let mut u = self.one();
        let mut out = Vec::new();
        for _ in 0..self.unit_count() {
            out.push(u);
            u = u * z;
        }
        out
    }

    /// Index k with `u = ζ^k`, or None when `u` is not a unit.
    pub fn unit_index(&self, u: &FieldElement) -> Option<u32> {
        self.units().iter().position(|v| v == u).map(|k| k as u32)
    }

    pub fn kronecker(&self, n: u64) -> i32 {
        kronecker(self.d, n)
    }

    pub fn splitting_type(&self, p: u64) -> Result<Splitting, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(match self.kronecker(p) {
            1 => Splitting::Split,
            -1 => Splitting::Inert,
            _ => Splitting::Ramified,
        })
    }

    /// Canonical elements of norm at most `bound`, sorted by (norm, a, b).
    fn canonical_elements_up_to(&self, bound: u64) -> Vec<FieldElement> {
        let ad = self.d.unsigned_abs() as i128;
        let m4 = 4 * bound as i128;
        let mut out = Vec::new();
        let mut y: i128 = 0;
        while ad * y * y <= m4 {
            for ys in if y == 0 { vec![0] } else { vec![y, -y] } {
                let rem = m4 - ad * ys * ys;
                let xmax = isqrt(rem);
                let mut x = -xmax;
                while x <= xmax {
                    if (x - ys * self.d as i128).rem_euclid(2) == 0 {
                        let a = (x - ys * self.d as i128) / 2;
                        let e = self.elem(a, ys);
                        if !e.is_zero() && e.is_canonical() {
                            out.push(e);
                        }
                    }
                    x += 1;
                }
            }
            y += 1;
        }
        out.sort_by(|u, v| u.norm().cmp(&v.norm()).then(u.a.cmp(&v.a)).then(u.b.cmp(&v.b)));
        out
    }

    pub fn ideals_of_norm(&self, n: u64) -> Vec<PrincipalIdeal> {
        let ad = self.d.unsigned_abs() as i128;
        let m4 = 4 * n as i128;
        let mut out = Vec::new();
        let mut y: i128 = 0;
        while ad * y * y <= m4 {
            for ys in if y == 0 { vec![0] } else { vec![y, -y] } {
                let rem = m4 - ad * ys * ys;
                let x0 = isqrt(rem);
                if x0 * x0 != rem {
                    continue;
                }
                for x in if x0 == 0 { vec![0] } else { vec![x0, -x0] } {
                    if (x - ys * self.d as i128).rem_euclid(2) != 0 {
                        continue;
                    }
                    let e = self.elem((x - ys * self.d as i128) / 2, ys);
                    if e.is_canonical() {
                        out.push(PrincipalIdeal {
                            generator: e,
                            norm: n,
                        });
                    }
                }
            }
            y += 1;
        }
        out.sort_by(|u, v| u.generator.cmp_ab(&v.generator));
        out
    }

    /// All ideals of norm at most `bound`, by norm then canonical generator.
    pub fn enumerate_ideals(&self, bound: u64) -> Vec<(u64, PrincipalIdeal)> {
        self.canonical_elements_up_to(bound)
            .into_iter()
            .map(|g| {
                let n = g.norm() as u64;
                (n, PrincipalIdeal { generator: g, norm: n })
            })
            .collect()
    }

    /// Prime ideals above the rational prime `p`.
    pub fn primes_above(&self, p: u64) -> Result<Vec<PrincipalIdeal>, FieldError> {
        Ok(match self.splitting_type(p)? {
            Splitting::Inert => vec![PrincipalIdeal::new(self.elem(p as i128, 0))?],
            Splitting::Split | Splitting::Ramified => self.ideals_of_norm(p),
        })
    }
}

fn isqrt(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub a: i128,
    pub b: i128,
    pub field: QuadField,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `(X, Y)` with `self = (X + Y√d)/2`.
    pub fn xy(&self) -> (i128, i128) {
        (2 * self.a + self.b * self.field.d as i128, self.b)
    }

    pub fn conj(&self) -> FieldElement {
        self.field.elem(self.a + self.b * self.field.d as i128, -self.b)
    }

    pub fn norm(&self) -> i128 {
        let d = self.field.d as i128;
        self.a * self.a + self.a * self.b * d + self.b * self.b * self.field.omega_norm()
    }

    pub fn trace(&self) -> i128 {
        2 * self.a + self.b * self.field.d as i128
    }

    pub fn checked_mul(&self, o: &FieldElement) -> Option<FieldElement> {
        debug_assert_eq!(self.field, o.field);
        let d = self.field.d as i128;
        let n0 = self.field.omega_norm();
        let be = self.b.checked_mul(o.b)?;
        let a = self.a.checked_mul(o.a)?.checked_sub(be.checked_mul(n0)?)?;
        let b = self
            .a
            .checked_mul(o.b)?
            .checked_add(self.b.checked_mul(o.a)?)?
            .checked_add(be.checked_mul(d)?)?;
        Some(self.field.elem(a, b))
    }

    pub fn checked_pow(&self, e: u32) -> Option<FieldElement> {
        let mut r = self.field.one();
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Some(r)
    }

    /// Exact quotient `self / o` when it lies in O.
    pub fn div_exact(&self, o: &FieldElement) -> Option<FieldElement> {
        let n = o.norm();
        if n == 0 {
            return None;
        }
        let num = self.checked_mul(&o.conj())?;
        if num.a % n == 0 && num.b % n == 0 {
            Some(self.field.elem(num.a / n, num.b / n))
        } else {
            None
        }
    }

    pub fn divides(&self, o: &FieldElement) -> bool {
        o.div_exact(self).is_some()
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub fn content(&self) -> i128 {
        self.a.gcd(&self.b)
    }

    pub fn to_complex(&self) -> Complex64 {
        let d = self.field.d as f64;
        Complex64::new(
            self.a as f64 + self.b as f64 * d / 2.0,
            self.b as f64 * (-d).sqrt() / 2.0,
        )
    }

    /// Argument in [0, 2π/w) among associates.
    pub fn is_canonical(&self) -> bool {
        let (x, y) = self.xy();
        match self.field.unit_count() {
            4 => x > 0 && y >= 0,
            6 => y >= 0 && y < x,
            _ => y > 0 || (y == 0 && x > 0),
        }
    }

    /// The canonical associate and the unit index k with `self = ζ^k · canonical`.
    pub fn canonical(&self) -> (FieldElement, u32) {
        if self.is_zero() {
            return (*self, 0);
        }
        let units = self.field.units();
        let w = units.len() as u32;
        for (k, u) in units.iter().enumerate() {
            let c = *self * *u;
            if c.is_canonical() {
                // self = ζ^{-k} c
                return (c, (w - k as u32) % w);
            }
        }
        unreachable!("every nonzero element has a canonical associate")
    }

    pub(crate) fn cmp_ab(&self, o: &FieldElement) -> Ordering {
        self.a.cmp(&o.a).then(self.b.cmp(&o.b))
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, o: FieldElement) -> FieldElement {
        self.field.elem(self.a + o.a, self.b + o.b)
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, o: FieldElement) -> FieldElement {
        self.field.elem(self.a - o.a, self.b - o.b)
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.elem(-self.a, -self.b)
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, o: FieldElement) -> FieldElement {
        self.checked_mul(&o).expect("overflow in field multiplication")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}w"),
            (a, b) if b < 0 => write!(f, "{a}-{}w", -b),
            (a, b) => write!(f, "{a}+{b}w"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrincipalIdeal {
    generator: FieldElement,
    norm: u64,
}

impl PrincipalIdeal {
    pub fn new(g: FieldElement) -> Result<Self, FieldError> {
        if g.is_zero() {
            return Err(FieldError::ZeroIdeal);
        }
        let (c, _) = g.canonical();
        Ok(PrincipalIdeal {
            generator: c,
            norm: c.norm() as u64,
        })
    }

    pub fn unit(field: QuadField) -> Self {
        PrincipalIdeal {
            generator: field.one(),
            norm: 1,
        }
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn field(&self) -> QuadField {
        self.generator.field
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.generator.divides(x)
    }

    pub fn mul(&self, o: &PrincipalIdeal) -> Result<PrincipalIdeal, FieldError> {
        let g = self
            .generator
            .checked_mul(&o.generator)
            .ok_or(FieldError::Overflow)?;
        PrincipalIdeal::new(g)
    }

    /// Exact quotient by a divisor ideal.
    pub fn div(&self, o: &PrincipalIdeal) -> Option<PrincipalIdeal> {
        self.generator
            .div_exact(&o.generator)
            .and_then(|g| PrincipalIdeal::new(g).ok())
    }

    /// Prime ideal factorization, ordered by norm then generator.
    pub fn factor(&self) -> Vec<(PrincipalIdeal, u32)> {
        let f = self.field();
        let mut out = Vec::new();
        let mut rest = self.generator;
        for (p, _) in factorize(self.norm) {
            for pi in f.primes_above(p).expect("prime from factorization") {
                let mut e = 0;
                while let Some(q) = rest.div_exact(&pi.generator) {
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    out.push((pi, e));
                }
            }
        }
        debug_assert!(rest.is_unit());
        out
    }
}

impl fmt::Display for PrincipalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> QuadField {
        QuadField::new(-4).unwrap()
    }

    #[test]
    fn rejects_bad_discriminants() {
        for d in [-1, -2, -5, -15, -20, 5, 0] {
            assert_eq!(QuadField::new(d), Err(FieldError::Inadmissible(d)));
        }
        for d in ADMISSIBLE_DISCRIMINANTS {
            let f = QuadField::new(d).unwrap();
            assert!(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1);
            assert_eq!(f.class_number(), 1);
        }
    }

    #[test]
    fn omega_squared() {
        for d in ADMISSIBLE_DISCRIMINANTS {
            let f = QuadField::new(d).unwrap();
            let w = f.omega();
            let lhs = w * w;
            let rhs = f.elem(-f.omega_norm(), d as i128);
            assert_eq!(lhs, rhs);
            let c = w.to_complex();
            let c2 = lhs.to_complex();
            assert!((c * c - c2).norm() < 1e-9);
        }
    }

    #[test]
    fn gaussian_units_and_i() {
        let f = gauss();
        let i = f.unit_generator();
        assert!((i.to_complex() - Complex64::i()).norm() < 1e-12);
        assert_eq!(i * i, f.elem(-1, 0));
        assert_eq!(f.units().len(), 4);
        let e = QuadField::new(-3).unwrap();
        let z = e.unit_generator();
        assert_eq!(z.checked_pow(6).unwrap(), e.one());
        assert_ne!(z.checked_pow(3).unwrap(), e.one());
    }

    #[test]
    fn splitting_examples() {
        let f = gauss();
        assert_eq!(f.splitting_type(2).unwrap(), Splitting::Ramified);
        assert_eq!(f.splitting_type(5).unwrap(), Splitting::Split);
        assert_eq!(f.splitting_type(3).unwrap(), Splitting::Inert);
        assert_eq!(f.splitting_type(9), Err(FieldError::NotPrime(9)));
        // 5 = (2+i)(2-i) by exact multiplication
        let i = f.unit_generator();
        let two = f.elem(2, 0);
        assert_eq!((two + i) * (two - i), f.elem(5, 0));
    }

    #[test]
    fn ideals_of_small_norm() {
        let f = gauss();
        assert_eq!(f.ideals_of_norm(1), vec![PrincipalIdeal::unit(f)]);
        assert!(f.ideals_of_norm(3).is_empty());
        let five = f.ideals_of_norm(5);
        assert_eq!(five.len(), 2);
        let i = f.unit_generator();
        let two = f.elem(2, 0);
        let expect = [
            PrincipalIdeal::new(two + i).unwrap(),
            PrincipalIdeal::new(two - i).unwrap(),
        ];
        for e in expect {
            assert!(five.contains(&e));
        }
        let norms: Vec<u64> = f.enumerate_ideals(5).iter().map(|x| x.0).collect();
        assert_eq!(norms, vec![1, 2, 4, 5, 5]);
    }

    #[test]
    fn canonical_is_idempotent_and_unique() {
        for d in ADMISSIBLE_DISCRIMINANTS {
            let f = QuadField::new(d).unwrap();
            for a in -6..=6 {
                for b in -6..=6 {
                    let x = f.elem(a, b);
                    if x.is_zero() {
                        continue;
                    }
                    let (c, k) = x.canonical();
                    assert_eq!(c.canonical().0, c);
                    let zk = f.unit_generator().checked_pow(k).unwrap();
                    assert_eq!(zk * c, x);
                    let n = f.units().iter().filter(|u| (**u * x).is_canonical()).count();
                    assert_eq!(n, 1);
                }
            }
        }
    }

    #[test]
    fn factor_reconstructs() {
        for d in [-3, -4, -7] {
            let f = QuadField::new(d).unwrap();
            for (_, id) in f.enumerate_ideals(300) {
                let mut acc = PrincipalIdeal::unit(f);
                for (p, e) in id.factor() {
                    for _ in 0..e {
                        acc = acc.mul(&p).unwrap();
                    }
                }
                assert_eq!(acc, id);
            }
        }
    }
}
