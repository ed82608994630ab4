//! A₂ Weyl group, the Kostant star action `w ⋆ λ = w(λ + δ) − δ`, lifted
//! characters, Delorme dimension counts and Wigner D-functions.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("inadmissible Wigner indices: {0}")]
    Index(String),
    #[error("unknown Weyl element {0:?}")]
    UnknownElement(String),
}

/// Elements of S₃ in cycle notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeylElt {
    Id,
    S12,
    S23,
    C123,
    C132,
    S13,
}

impl WeylElt {
    pub const ALL: [WeylElt; 6] = [
        WeylElt::Id,
        WeylElt::S12,
        WeylElt::S23,
        WeylElt::C123,
        WeylElt::C132,
        WeylElt::S13,
    ];

    pub fn length(self) -> u32 {
        match self {
            WeylElt::Id => 0,
            WeylElt::S12 | WeylElt::S23 => 1,
            WeylElt::C123 | WeylElt::C132 => 2,
            WeylElt::S13 => 3,
        }
    }

    /// The permutation as images of 0, 1, 2.
    pub fn perm(self) -> [usize; 3] {
        match self {
            WeylElt::Id => [0, 1, 2],
            WeylElt::S12 => [1, 0, 2],
            WeylElt::S23 => [0, 2, 1],
            WeylElt::C123 => [1, 2, 0],
            WeylElt::C132 => [2, 0, 1],
            WeylElt::S13 => [2, 1, 0],
        }
    }

    pub fn inverse(self) -> WeylElt {
        match self {
            WeylElt::C123 => WeylElt::C132,
            WeylElt::C132 => WeylElt::C123,
            w => w,
        }
    }

    pub fn compose(self, o: WeylElt) -> WeylElt {
        let (a, b) = (self.perm(), o.perm());
        let c = [a[b[0]], a[b[1]], a[b[2]]];
        WeylElt::ALL.into_iter().find(|w| w.perm() == c).expect("S3 closed")
    }

    pub fn of_length(q: u32) -> Vec<WeylElt> {
        WeylElt::ALL.into_iter().filter(|w| w.length() == q).collect()
    }

    pub fn label(self) -> &'static str {
        match self {
            WeylElt::Id => "id",
            WeylElt::S12 => "(1 2)",
            WeylElt::S23 => "(2 3)",
            WeylElt::C123 => "(1 2 3)",
            WeylElt::C132 => "(1 3 2)",
            WeylElt::S13 => "(1 3)",
        }
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for WeylElt {
    type Err = WeylError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Ok(match compact.as_str() {
            "id" | "e" => WeylElt::Id,
            "(12)" | "12" => WeylElt::S12,
            "(23)" | "23" => WeylElt::S23,
            "(123)" | "123" => WeylElt::C123,
            "(132)" | "132" => WeylElt::C132,
            "(13)" | "13" => WeylElt::S13,
            _ => return Err(WeylError::UnknownElement(s.into())),
        })
    }
}

/// A character `(k₁, k₂)` of the maximal torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusCharGL {
    pub k1: i64,
    pub k2: i64,
}

impl TorusCharGL {
    pub fn new(k1: i64, k2: i64) -> Self {
        TorusCharGL { k1, k2 }
    }

    pub fn is_dominant(&self) -> bool {
        self.k1 >= self.k2 && self.k2 >= 0
    }
}

impl fmt::Display for TorusCharGL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k1, self.k2)
    }
}

pub const DELTA: TorusCharGL = TorusCharGL { k1: 2, k2: 1 };

/// `w ⋆ λ` from the closed-form table.
pub fn star(w: WeylElt, l: TorusCharGL) -> TorusCharGL {
    let (k1, k2) = (l.k1, l.k2);
    let (a, b) = match w {
        WeylElt::Id => (k1, k2),
        WeylElt::S12 => (k2 - 1, k1 + 1),
        WeylElt::S23 => (k1 - k2 - 1, -k2 - 2),
        WeylElt::C123 => (-k2 - 3, k1 - k2),
        WeylElt::C132 => (k2 - k1 - 3, -k1 - 3),
        WeylElt::S13 => (-k1 - 4, k2 - k1 - 2),
    };
    TorusCharGL::new(a, b)
}

/// `w ⋆ λ` recomputed by permuting coordinates of `λ + δ` in the three-coordinate
/// lattice `(k₁, k₂, 0)` modulo the diagonal.
pub fn star_ambient(w: WeylElt, l: TorusCharGL) -> TorusCharGL {
    let x = [l.k1 + DELTA.k1, l.k2 + DELTA.k2, 0];
    let inv = w.inverse().perm();
    let y = [x[inv[0]], x[inv[1]], x[inv[2]]];
    TorusCharGL::new(y[0] - y[2] - DELTA.k1, y[1] - y[2] - DELTA.k2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiftedChar {
    pub k1: i64,
    pub k2: i64,
    pub c: i64,
    pub r: i64,
}

impl LiftedChar {
    pub fn new(k1: i64, k2: i64, c: i64, r: i64) -> Self {
        LiftedChar { k1, k2, c, r }
    }

    /// `c ≡ k₁ + k₂ (mod 2)`.
    pub fn is_consistent(&self) -> bool {
        (self.c - self.k1 - self.k2).rem_euclid(2) == 0
    }

    pub fn project(&self) -> TorusCharGL {
        TorusCharGL::new(self.k1, self.k2)
    }
}

impl fmt::Display for LiftedChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.k1, self.k2, self.c, self.r)
    }
}

pub fn star_lifted(w: WeylElt, m: LiftedChar) -> LiftedChar {
    let (k1, k2, g, r) = (m.k1, m.k2, m.c, m.r);
    let (a, b, c) = match w {
        WeylElt::Id => (k1, k2, g),
        WeylElt::S12 => (k2 - 1, k1 + 1, g),
        WeylElt::S23 => (k1 - k2 - 1, -k2 - 2, g - k2 - 1),
        WeylElt::C123 => (-k2 - 3, k1 - k2, g - k2 - 1),
        WeylElt::C132 => (k2 - k1 - 3, -k1 - 3, g - k1 - 2),
        WeylElt::S13 => (-k1 - 4, k2 - k1 - 2, g - k1 - 2),
    };
    LiftedChar::new(a, b, c, r)
}

/// `λ̃ = (k₁, k₂, k₁ + k₂, k₁ + k₂)`.
pub fn lift(l: TorusCharGL) -> LiftedChar {
    LiftedChar::new(l.k1, l.k2, l.k1 + l.k2, l.k1 + l.k2)
}

/// `λ̃⁻ = (k₁, k₁ − k₂, −k₂, k₁ + k₂)`, from the lift of `(k₁, k₂)`.
pub fn conj_lift(m: LiftedChar) -> LiftedChar {
    LiftedChar::new(m.k1, m.k1 - m.k2, -m.k2, m.k1 + m.k2)
}

pub fn kostant_decomposition(l: TorusCharGL, q: i64) -> Vec<(WeylElt, TorusCharGL)> {
    if !(0..=3).contains(&q) {
        return Vec::new();
    }
    WeylElt::of_length(q as u32)
        .into_iter()
        .map(|w| (w, star(w, l)))
        .collect()
}

/// Degree-wise dimensions of `Hom(Λ^•(𝔱/𝔱^K), (H^•(𝔲, V_λ) ⊗ C_φ)(0))` with
/// `dim 𝔱/𝔱^K = 1`: each w with `w ⋆ λ = type(φ)` contributes in degrees ℓ(w), ℓ(w)+1.
pub fn delorme_dims(phi_type: TorusCharGL, l: TorusCharGL) -> BTreeMap<u32, u32> {
    let mut dims: BTreeMap<u32, u32> = (0..=3).map(|n| (n, 0)).collect();
    for w in WeylElt::ALL {
        if star(w, l) == phi_type {
            for a in 0..=1 {
                let n = w.length() + a;
                if n <= 3 {
                    *dims.entry(n).or_default() += 1;
                }
            }
        }
    }
    dims
}

/// A half-integer stored as its double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn half(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

fn factorial(n: i64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Little Wigner `d^j_{m1 m2}(β)` by the explicit binomial sum.
pub fn wigner_small_d(j: HalfInt, m1: HalfInt, m2: HalfInt, beta: f64) -> Result<f64, WeylError> {
    check_indices(j, m1, m2)?;
    // all of j ± m are integers here
    let jp1 = (j.0 + m1.0) / 2;
    let jm1 = (j.0 - m1.0) / 2;
    let jp2 = (j.0 + m2.0) / 2;
    let jm2 = (j.0 - m2.0) / 2;
    let dm = (m1.0 - m2.0) / 2;
    let pre = (factorial(jp1) * factorial(jm1) * factorial(jp2) * factorial(jm2)).sqrt();
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let mut total = 0.0;
    let smin = 0.max(-dm);
    let smax = jp2.min(jm1);
    for k in smin..=smax {
        let den = factorial(jp2 - k) * factorial(k) * factorial(dm + k) * factorial(jm1 - k);
        let sign = if (dm + k) % 2 == 0 { 1.0 } else { -1.0 };
        // cos^{2j + m2 − m1 − 2k} sin^{m1 − m2 + 2k}
        let ec = j.0 - dm - 2 * k;
        let es = dm + 2 * k;
        total += sign * c.powi(ec as i32) * s.powi(es as i32) / den;
    }
    Ok(pre * total)
}

fn check_indices(j: HalfInt, m1: HalfInt, m2: HalfInt) -> Result<(), WeylError> {
    let ok = j.0 >= 0
        && m1.0.abs() <= j.0
        && m2.0.abs() <= j.0
        && (j.0 - m1.0) % 2 == 0
        && (j.0 - m2.0) % 2 == 0;
    if ok {
        Ok(())
    } else {
        Err(WeylError::Index(format!("j={j}, m1={m1}, m2={m2}")))
    }
}

/// `W^{j,n}_{m1,m2}(α, β, γ) = e^{−i(m1 α + m2 γ)} d^j_{m1 m2}(β) e^{−i n (α + γ)}`.
pub fn wigner_d(
    j: HalfInt,
    n: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    angles: (f64, f64, f64),
) -> Result<Complex64, WeylError> {
    let (alpha, beta, gamma) = angles;
    let d = wigner_small_d(j, m1, m2, beta)?;
    let phase = -(m1.to_f64() * alpha + m2.to_f64() * gamma) - n.to_f64() * (alpha + gamma);
    Ok(Complex64::from_polar(d, phase))
}
