//! Conjugacy criteria for triviality of extensions with coefficients.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::{CMat, CVec};
use super::scholl::FiltrationSections;
use super::MhsError;

pub const CONJ_TOL: f64 = 1e-8;
pub const INDETERMINATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Conjugate,
    NotConjugate,
    Indeterminate,
}

impl Verdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Conjugate => Some(true),
            Verdict::NotConjugate => Some(false),
            Verdict::Indeterminate => None,
        }
    }
}

/// Compare `|d|` against the tolerances at `scale`.
pub fn classify_gap(d: f64, scale: f64) -> Verdict {
    if d < CONJ_TOL * (1.0 + scale) {
        Verdict::Conjugate
    } else if d < INDETERMINATE_TOL * (1.0 + scale) {
        Verdict::Indeterminate
    } else {
        Verdict::NotConjugate
    }
}

/// Whether `z₁ ≈ conj(z₂)`, scaled by the larger modulus so the test is symmetric.
pub fn conjugacy(z1: Complex64, z2: Complex64) -> Verdict {
    classify_gap((z1 - z2.conj()).norm(), z1.norm().max(z2.norm()))
}

/// Extension data in the basis `[v, w, ũ, ω̃]` with conjugation `(z₁, z₂, z₃, z₄) ↦
/// (z̄₂, z̄₁, z̄₄, z̄₃)`. Columns of `sigma` and `sigma_f` are the images of `u` and `ω`.
#[derive(Debug, Clone)]
pub struct PmExtension {
    pub sigma: CMat,
    pub sigma_f: CMat,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PmTriviality {
    pub plus: Verdict,
    pub minus: Verdict,
    /// `σ_F(u)` along `v` and `σ_F(ω)` along `w`.
    pub coefficients: (Complex64, Complex64),
    pub class_plus: Complex64,
    pub class_minus: Complex64,
}

fn kappa(z: &CVec) -> CVec {
    CVec::from_vec(vec![z[1].conj(), z[0].conj(), z[3].conj(), z[2].conj()])
}

fn check_section(m: &CMat, name: &str) -> Result<(), MhsError> {
    if m.shape() != (4, 2) {
        return Err(MhsError::Section(format!("{name} must be 4 x 2")));
    }
    let lower = m.rows(2, 2);
    let id = CMat::identity(2, 2);
    if (lower - id).norm() > 1e-12 {
        return Err(MhsError::Section(format!("{name} is not a section of the projection")));
    }
    Ok(())
}

pub fn triviality_pm(e: &PmExtension) -> Result<PmTriviality, MhsError> {
    check_section(&e.sigma, "sigma")?;
    check_section(&e.sigma_f, "sigma_F")?;
    let su = e.sigma.column(0).into_owned();
    let sw = e.sigma.column(1).into_owned();
    if (kappa(&su) - &sw).norm() > 1e-12 * (1.0 + su.norm()) {
        return Err(MhsError::Section("sigma is not defined over R".into()));
    }
    let d = &e.sigma_f - &e.sigma;
    let z1 = e.sigma_f[(0, 0)];
    let z2 = e.sigma_f[(1, 1)];
    let class_plus = d[(0, 0)] - d[(1, 1)].conj();
    let class_minus = d[(1, 1)] - d[(0, 0)].conj();
    let scale = z1.norm().max(z2.norm());
    Ok(PmTriviality {
        plus: classify_gap(class_plus.norm(), scale),
        minus: classify_gap(class_minus.norm(), scale),
        coefficients: (z1, z2),
        class_plus,
        class_minus,
    })
}

/// Builds [`PmExtension`] for the `(x, y)` entry: `σ_F(u)[v] = yᵀζ⁺x`,
/// `σ_F(ω)[w] = ȳᵀζ⁻x̄`, with a real section `σ(u) = (t₁, t₂, 1, 0)`.
pub fn pm_extension_from_sections(
    s: &FiltrationSections,
    x: &CVec,
    y: &CVec,
    t: (Complex64, Complex64),
) -> PmExtension {
    let conj = |v: &CVec| v.map(|z| z.conj());
    let zp = (y.transpose() * &s.zeta_plus * x)[(0, 0)];
    let zm = (conj(y).transpose() * &s.zeta_minus * conj(x))[(0, 0)];
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let su = CVec::from_vec(vec![t.0, t.1, one, zero]);
    let sw = kappa(&su);
    let sigma = CMat::from_columns(&[su, sw]);
    // σ_F keeps the complementary coordinates of σ
    let mut sigma_f = sigma.clone();
    sigma_f[(0, 0)] = zp;
    sigma_f[(1, 1)] = zm;
    PmExtension { sigma, sigma_f }
}

/// Inputs in coordinates `[A (s) | B (r)]` of the two-step structure, each side.
#[derive(Debug, Clone)]
pub struct Prop78Data {
    /// `(s + r) × r` real section of the weight-0 projection.
    pub sigma: CMat,
    /// `(s + r) × r` Hodge-filtration sections on the `+` and `−` sides.
    pub sigma_f_plus: CMat,
    pub sigma_f_minus: CMat,
    pub x: CVec,
    pub y: CVec,
    pub u: Complex64,
    pub v: Complex64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NonvanishingResult {
    /// The functional `(y/v, conj(y/v))` on the two difference vectors.
    pub n1: Complex64,
    pub n2: Complex64,
    pub z_plus: Complex64,
    pub z_minus: Complex64,
    pub verdict: Verdict,
    /// `Some(true)` when `b(x, y) = 0`.
    pub vanishes: Option<bool>,
}

pub fn nonvanishing_check(d: &Prop78Data) -> Result<NonvanishingResult, MhsError> {
    let r = d.x.len();
    let s = d.y.len();
    for (m, name) in [(&d.sigma, "sigma"), (&d.sigma_f_plus, "sigma_F+"), (&d.sigma_f_minus, "sigma_F-")] {
        if m.shape() != (s + r, r) {
            return Err(MhsError::Section(format!("{name} must be {} x {r}", s + r)));
        }
        if (m.rows(s, r) - CMat::identity(r, r)).norm() > 1e-12 {
            return Err(MhsError::Section(format!("{name} is not a section of the projection")));
        }
    }
    if d.u.norm() == 0.0 || d.v.norm() == 0.0 {
        return Err(MhsError::Section("generators u, v must be nonzero".into()));
    }
    let mp = (&d.sigma_f_plus - &d.sigma).rows(0, s).into_owned();
    let mm = (&d.sigma_f_minus - d.sigma.map(|z| z.conj())).rows(0, s).into_owned();
    let yv = &d.y / d.v;
    let yvb = yv.map(|z| z.conj());
    let i = Complex64::i();
    let eval = |xu: &CVec| -> Complex64 {
        let eps = &mp * xu;
        let eta = &mm * xu.map(|z| z.conj());
        (yv.transpose() * eps)[(0, 0)] + (yvb.transpose() * eta)[(0, 0)]
    };
    let xu = &d.x * d.u;
    let n1 = eval(&xu);
    let n2 = eval(&(&xu * i));
    let z_plus = (n1 - i * n2) / 2.0;
    let z_minus = (n1 + i * n2) / 2.0;
    let verdict = conjugacy(z_plus, z_minus);
    Ok(NonvanishingResult {
        n1,
        n2,
        z_plus,
        z_minus,
        verdict,
        vanishes: verdict.as_bool(),
    })
}

/// [`Prop78Data`] from computed filtration sections; `sigma_a` is the `A`-block of an
/// arbitrary section `σ` on the `+` side.
pub fn prop78_from_sections(
    s: &FiltrationSections,
    sigma_a: &CMat,
    x: &CVec,
    y: &CVec,
    u: Complex64,
    v: Complex64,
) -> Prop78Data {
    let (sd, r) = s.zeta_plus.shape();
    let stack = |top: &CMat| -> CMat {
        let mut m = CMat::zeros(sd + r, r);
        m.rows_mut(0, sd).copy_from(top);
        m.rows_mut(sd, r).copy_from(&CMat::identity(r, r));
        m
    };
    Prop78Data {
        sigma: stack(sigma_a),
        sigma_f_plus: stack(&s.zeta_plus),
        sigma_f_minus: stack(&s.zeta_minus),
        x: x.clone(),
        y: y.clone(),
        u,
        v,
    }
}
