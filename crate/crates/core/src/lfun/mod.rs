//! Numerical L-functions of Hecke characters and Dirichlet characters.
//!
//! All analytic work is done in the unitary normalization, where the completed
//! function `Λ(s) = B^s Γ(σs + μ) L(s)` satisfies `Λ(s) = ε Λ^∨(1 − s)`.
//! Values are evaluated with the smoothed (incomplete Gamma) approximate
//! functional equation split at a parameter `t`.

pub mod exact;
pub mod gamma;

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{CharError, ExactValue, HeckeChar};
use crate::field::Splitting;
use crate::numtheory::{is_prime, kronecker};

use gamma::{gamma as cgamma, upper_gamma};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LError {
    #[error("pole at s = {at}, residue {residue}")]
    Pole { at: f64, residue: f64 },
    #[error("precision failure: {0}")]
    Precision(String),
    #[error("order of vanishing indeterminate: {0}")]
    IndeterminateOrder(String),
    #[error("coefficient bound {have} too small, need {needed}")]
    InsufficientTerms { needed: usize, have: usize },
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("invalid input: {0}")]
    Domain(String),
}

impl LError {
    /// True for errors meaning "the numerics could not decide".
    pub fn is_indeterminate(&self) -> bool {
        matches!(
            self,
            LError::Precision(_) | LError::IndeterminateOrder(_) | LError::InsufficientTerms { .. }
        )
    }
}

pub const DEFAULT_DIGITS: u32 = 15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Coefficient bound; `None` picks the minimum for the design region.
    pub coeff_bound: Option<usize>,
    pub digits: u32,
    /// Override for the derivative step of order one.
    pub deriv_step: Option<f64>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            coeff_bound: None,
            digits: DEFAULT_DIGITS,
            deriv_step: None,
        }
    }
}

impl EvalConfig {
    pub fn with_digits(digits: u32) -> Self {
        EvalConfig {
            digits,
            ..Default::default()
        }
    }

    /// Digits are clamped to what double precision can deliver.
    pub fn effective_digits(&self) -> u32 {
        self.digits.clamp(10, 15)
    }

    pub fn tolerance(&self) -> f64 {
        10f64.powi(-(self.effective_digits() as i32))
    }

    pub fn zero_threshold(&self) -> f64 {
        10f64.powf(-(self.effective_digits() as f64) / 2.0)
    }

    /// Step for the k-th derivative: `10^{-digits/(k+2)}`, so k = 1 gives `10^{-digits/3}`.
    pub fn step(&self, k: u32) -> f64 {
        let base = 10f64.powf(-(self.effective_digits() as f64) / (k as f64 + 2.0));
        match self.deriv_step {
            Some(h) if k == 1 => h,
            Some(h) => h.powf(3.0 / (k as f64 + 2.0)),
            None => base,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DirichletChar {
    Trivial,
    /// The Kronecker symbol `(d/·)` of a fundamental discriminant.
    Kronecker(i64),
}

impl DirichletChar {
    pub fn value(&self, n: u64) -> i32 {
        match self {
            DirichletChar::Trivial => 1,
            DirichletChar::Kronecker(d) => kronecker(*d, n),
        }
    }

    pub fn conductor(&self) -> u64 {
        match self {
            DirichletChar::Trivial => 1,
            DirichletChar::Kronecker(d) => d.unsigned_abs(),
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, DirichletChar::Kronecker(d) if *d < 0)
    }
}

/// `L(χ·|·|^t, s) = L(χ, s + t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirichletSource {
    pub chi: DirichletChar,
    pub t: i64,
}

#[derive(Debug, Clone)]
pub enum Source {
    Hecke(Box<HeckeChar>),
    Dirichlet(DirichletSource),
}

/// `Λ(s) = B^s Γ(σs + μ) L(s)` in the unitary normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Archimedean {
    pub sigma: f64,
    pub mu: f64,
    pub b: f64,
}

/// Euler factor `Π (1 − v·X^f)` at one rational prime, arithmetic normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerFactor {
    pub p: u64,
    pub roots: Vec<(ExactValue, u32)>,
}

impl EulerFactor {
    /// Coefficients of the polynomial in `X`, lowest degree first.
    pub fn poly(&self) -> Vec<Complex64> {
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        for (v, f) in &self.roots {
            let v = v.to_complex();
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + *f as usize];
            for (i, c) in poly.iter().enumerate() {
                next[i] += c;
                next[i + *f as usize] -= c * v;
            }
            poly = next;
        }
        poly
    }
}

pub fn euler_factor(phi: &HeckeChar, p: u64) -> Result<EulerFactor, LError> {
    if !is_prime(p) {
        return Err(LError::Domain(format!("{p} is not prime")));
    }
    let f = phi.field();
    let degree = match f.splitting_type(p).map_err(CharError::from)? {
        Splitting::Inert => 2,
        _ => 1,
    };
    let mut roots = Vec::new();
    for q in f.primes_above(p).map_err(CharError::from)? {
        if phi.is_coprime_ideal(&q) {
            roots.push((phi.value_on_ideal(&q)?, degree));
        }
    }
    Ok(EulerFactor { p, roots })
}

/// Arithmetic coefficients `a_n = Σ_{N a = n} φ(a)`, index 0 unused.
pub fn coefficients(phi: &HeckeChar, n: usize) -> Result<Vec<Complex64>, LError> {
    let mut a = vec![Complex64::new(0.0, 0.0); n + 1];
    for (norm, id) in phi.field().enumerate_ideals(n as u64) {
        if phi.is_coprime_ideal(&id) {
            a[norm as usize] += phi.value_complex(&id)?;
        }
    }
    Ok(a)
}

fn unitary_coefficients(phi: &HeckeChar, n: usize) -> Result<Vec<Complex64>, LError> {
    let mut a = vec![Complex64::new(0.0, 0.0); n + 1];
    for (norm, id) in phi.field().enumerate_ideals(n as u64) {
        if phi.is_coprime_ideal(&id) {
            a[norm as usize] += phi.unitary_value(&id)?;
        }
    }
    Ok(a)
}

/// Compensated summation in a fixed order.
fn neumaier(terms: &[Complex64]) -> Complex64 {
    fn sum(xs: impl Iterator<Item = f64>) -> f64 {
        let mut s = 0.0f64;
        let mut c = 0.0f64;
        for x in xs {
            let t = s + x;
            if s.abs() >= x.abs() {
                c += (s - t) + x;
            } else {
                c += (x - t) + s;
            }
            s = t;
        }
        s + c
    }
    Complex64::new(sum(terms.iter().map(|z| z.re)), sum(terms.iter().map(|z| z.im)))
}

/// Smallest x with `x − (Re a − 1) ln x ≥ ln(1/tol) + 7` and `x ≥ 2|a| + 10`.
fn x_cut(a: Complex64, tol: f64) -> f64 {
    let target = (1.0 / tol).ln() + 7.0;
    let e = a.re - 1.0;
    let mut x = target.max(1.0);
    for _ in 0..60 {
        let nx = target + e * x.ln();
        if nx <= 1.0 {
            break;
        }
        if (nx - x).abs() < 1e-9 {
            x = nx;
            break;
        }
        x = nx;
    }
    x.max(2.0 * a.norm() + 10.0)
}

const T_REF: [f64; 2] = [1.0, 1.25];
const T_DUAL: f64 = 1.15;
/// Design region for the automatic coefficient bound.
const DESIGN_RADIUS: f64 = 5.0;
const DESIGN_T: f64 = 1.3;

#[derive(Debug)]
pub struct LSeries {
    source: Source,
    /// Unitary coefficients; index 0 unused.
    coeffs: Vec<Complex64>,
    dual: Vec<Complex64>,
    weight: i64,
    conductor_norm: u64,
    arch: Archimedean,
    /// Residue of `Λ` at `s = 1` in the degenerate case.
    residue: Option<f64>,
    /// `s_unit = s_arith + offset`.
    offset: f64,
    tol: f64,
    sign: OnceLock<Result<Complex64, LError>>,
}

impl LSeries {
    /// The L-series of a primitive Hecke character.
    pub fn hecke(phi: &HeckeChar, cfg: &EvalConfig) -> Result<Self, LError> {
        phi.require_primitive()?;
        let f = phi.field();
        let inf = phi.infinity();
        let cond = phi.conductor().norm();
        let qn = f.disc().unsigned_abs() * cond;
        let arch = Archimedean {
            sigma: 1.0,
            mu: (inf.p - inf.q).abs() as f64 / 2.0,
            b: (qn as f64).sqrt() / (2.0 * PI),
        };
        let degenerate = cond == 1 && inf.p == inf.q;
        let residue = degenerate.then(|| 1.0 / f.unit_count() as f64);
        let n = Self::bound_for(&arch, cfg)?;
        let coeffs = unitary_coefficients(phi, n)?;
        let dual = coeffs.iter().map(|z| z.conj()).collect();
        Ok(LSeries {
            source: Source::Hecke(Box::new(phi.clone())),
            coeffs,
            dual,
            weight: phi.weight(),
            conductor_norm: qn,
            arch,
            residue,
            offset: -(phi.weight() as f64) / 2.0,
            tol: cfg.tolerance(),
            sign: OnceLock::new(),
        })
    }

    pub fn dirichlet(src: DirichletSource, cfg: &EvalConfig) -> Result<Self, LError> {
        if let DirichletChar::Kronecker(d) = src.chi {
            crate::field::QuadField::new(d).map_err(CharError::from)?;
        }
        let q = src.chi.conductor();
        let arch = Archimedean {
            sigma: 0.5,
            mu: if src.chi.is_odd() { 0.5 } else { 0.0 },
            b: (q as f64 / PI).sqrt(),
        };
        let residue = matches!(src.chi, DirichletChar::Trivial).then_some(1.0);
        let n = Self::bound_for(&arch, cfg)?;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c = Complex64::new(src.chi.value(k as u64) as f64, 0.0);
        }
        Ok(LSeries {
            source: Source::Dirichlet(src),
            dual: coeffs.clone(),
            coeffs,
            weight: -2 * src.t,
            conductor_norm: q,
            arch,
            residue,
            offset: src.t as f64,
            tol: cfg.tolerance(),
            sign: OnceLock::new(),
        })
    }

    /// Minimum coefficient bound for `|s| ≤ 5` and split parameters in `[1/1.3, 1.3]`.
    pub fn minimum_bound(arch: &Archimedean, tol: f64) -> usize {
        let a = Complex64::new(arch.sigma * (DESIGN_RADIUS + 1.0) + arch.mu, 0.0);
        let x = x_cut(a, tol);
        (arch.b * (x * DESIGN_T).powf(arch.sigma)).ceil() as usize + 2
    }

    fn bound_for(arch: &Archimedean, cfg: &EvalConfig) -> Result<usize, LError> {
        let min = Self::minimum_bound(arch, cfg.tolerance()).max(10);
        match cfg.coeff_bound {
            None => Ok(min),
            Some(n) if n >= min => Ok(n),
            Some(n) => Err(LError::InsufficientTerms {
                needed: min,
                have: n,
            }),
        }
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn archimedean(&self) -> Archimedean {
        self.arch
    }

    pub fn motivic_weight(&self) -> i64 {
        self.weight
    }

    pub fn conductor_norm(&self) -> u64 {
        self.conductor_norm
    }

    pub fn coeff_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Unitary coefficient `a_n`.
    pub fn unitary_coefficient(&self, n: usize) -> Complex64 {
        self.coeffs[n]
    }

    /// Coefficient in the arithmetic normalization, `a_n · n^{w/2}`.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coeffs[n] * (n as f64).powf(self.weight as f64 / 2.0)
    }

    pub fn is_degenerate(&self) -> bool {
        self.residue.is_some()
    }

    pub fn to_unitary(&self, s_arith: Complex64) -> Complex64 {
        s_arith + self.offset
    }

    pub fn to_arith(&self, s_unit: Complex64) -> Complex64 {
        s_unit - self.offset
    }

    fn n_needed(&self, s: Complex64, t: f64) -> usize {
        let Archimedean { sigma, mu, b } = self.arch;
        let a1 = s * sigma + mu;
        let a2 = (Complex64::new(1.0, 0.0) - s) * sigma + mu;
        let n1 = b * (x_cut(a1, self.tol) / t).powf(sigma);
        let n2 = b * (x_cut(a2, self.tol) * t).powf(sigma);
        n1.max(n2).ceil() as usize + 1
    }

    /// `Σ c_n (B/n)^s Γ(σs + μ, (n/B)^{1/σ}·x)` over the needed range, ascending n.
    fn smoothed(&self, c: &[Complex64], s: Complex64, x: f64, nmax: usize) -> Complex64 {
        let Archimedean { sigma, mu, b } = self.arch;
        let a = s * sigma + mu;
        let terms: Vec<Complex64> = (1..=nmax)
            .into_par_iter()
            .map(|n| {
                let cn = c[n];
                if cn == Complex64::new(0.0, 0.0) {
                    return cn;
                }
                let lr = (b / n as f64).ln();
                let arg = (n as f64 / b).powf(1.0 / sigma) * x;
                cn * (s * lr).exp() * upper_gamma(a, arg)
            })
            .collect();
        neumaier(&terms)
    }

    fn pole_terms(&self, s: Complex64, t: f64) -> Complex64 {
        let Some(r) = self.residue else {
            return Complex64::new(0.0, 0.0);
        };
        let sig = self.arch.sigma;
        let one = Complex64::new(1.0, 0.0);
        let lt = t.ln();
        r * (((s - 1.0) * sig * lt).exp() / (s - one) - (s * sig * lt).exp() / s)
    }

    fn check_pole(&self, s: Complex64) -> Result<(), LError> {
        if let Some(r) = self.residue {
            if (s - 1.0).norm() < 1e-12 {
                return Err(LError::Pole { at: 1.0, residue: r });
            }
            if s.norm() < 1e-12 {
                return Err(LError::Pole { at: 0.0, residue: -r });
            }
        }
        Ok(())
    }

    /// Pieces `(S1, S2, P)` with `Λ = S1 + ε S2 + P`.
    fn parts(&self, s: Complex64, t: f64, dual: bool) -> Result<[Complex64; 3], LError> {
        let nmax = self.n_needed(s, t);
        if nmax > self.coeff_bound() {
            return Err(LError::InsufficientTerms {
                needed: nmax,
                have: self.coeff_bound(),
            });
        }
        let (c1, c2) = if dual {
            (&self.dual, &self.coeffs)
        } else {
            (&self.coeffs, &self.dual)
        };
        let one = Complex64::new(1.0, 0.0);
        let s1 = self.smoothed(c1, s, t, nmax);
        let s2 = self.smoothed(c2, one - s, 1.0 / t, nmax);
        Ok([s1, s2, self.pole_terms(s, t)])
    }

    fn completed_at(&self, s: Complex64, t: f64, dual: bool) -> Result<Complex64, LError> {
        self.check_pole(s)?;
        let eps = self.sign()?;
        let eps = if dual { eps.conj() } else { eps };
        let [s1, s2, p] = self.parts(s, t, dual)?;
        Ok(s1 + eps * s2 + p)
    }

    /// `Λ(s)` in the unitary normalization.
    pub fn evaluate_completed(&self, s: Complex64) -> Result<Complex64, LError> {
        self.completed_at(s, 1.0, false)
    }

    /// `Λ^∨(s)`, the completed function of the dual series.
    pub fn evaluate_dual(&self, s: Complex64) -> Result<Complex64, LError> {
        self.completed_at(s, 1.0, true)
    }

    /// Root number from independence of the split parameter at two reference points.
    pub fn sign(&self) -> Result<Complex64, LError> {
        self.sign
            .get_or_init(|| self.compute_sign())
            .clone()
    }

    /// Root-number estimates from the two reference points, before any consistency check.
    pub fn sign_estimates(&self) -> Result<[Complex64; 2], LError> {
        let refs = [Complex64::new(0.6, 0.13), Complex64::new(0.35, 0.41)];
        let mut eps = [Complex64::new(0.0, 0.0); 2];
        for (e, s) in eps.iter_mut().zip(refs) {
            let [a1, b1, p1] = self.parts(s, T_REF[0], false)?;
            let [a2, b2, p2] = self.parts(s, T_REF[1], false)?;
            let den = b1 - b2;
            if den.norm() < 1e-8 {
                return Err(LError::Precision(
                    "sign reference point is degenerate".into(),
                ));
            }
            *e = (a2 - a1 + p2 - p1) / den;
        }
        Ok(eps)
    }

    fn compute_sign(&self) -> Result<Complex64, LError> {
        let [e1, e2] = self.sign_estimates()?;
        if (e1 - e2).norm() > 1e-6 {
            return Err(LError::Precision(format!(
                "root numbers at two reference points differ: {e1} vs {e2}"
            )));
        }
        if (e1.norm() - 1.0).abs() > 1e-6 {
            return Err(LError::Precision(format!("|ε| = {} is not 1", e1.norm())));
        }
        Ok(e1)
    }

    /// `|Λ(s) − ε Λ^∨(1 − s)| / |Λ(s)|`, the two sides evaluated with different splits.
    pub fn fe_residual(&self, s: Complex64) -> Result<f64, LError> {
        let lhs = self.completed_at(s, 1.0, false)?;
        let one = Complex64::new(1.0, 0.0);
        let rhs = self.sign()? * self.completed_at(one - s, T_DUAL, true)?;
        Ok((lhs - rhs).norm() / lhs.norm())
    }

    /// `L(s)` in the arithmetic normalization.
    pub fn l_value(&self, s_arith: Complex64) -> Result<Complex64, LError> {
        let s = self.to_unitary(s_arith);
        let Archimedean { sigma, mu, b } = self.arch;
        if let Some(r) = self.residue {
            if (s - 1.0).norm() < 1e-12 {
                let res = r / (b * cgamma(Complex64::new(sigma + mu, 0.0)).re);
                return Err(LError::Pole {
                    at: self.to_arith(Complex64::new(1.0, 0.0)).re,
                    residue: res,
                });
            }
            if s.norm() < 1e-12 && mu == 0.0 {
                // pole of Λ cancels against the pole of Γ(σs)
                return Ok(Complex64::new(-r * sigma, 0.0));
            }
        }
        let lam = self.evaluate_completed(s)?;
        Ok(lam * rgamma(s * sigma + mu) * (-s * b.ln()).exp())
    }
}

/// `1/Γ(z)`, entire.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        (z * PI).sin() * cgamma(one - z) / PI
    } else {
        Complex64::new(1.0, 0.0) / cgamma(z)
    }
}

/// `L(χ, s + t)`, with the pole of the trivial character reported as an error.
pub fn dirichlet_l(src: DirichletSource, s: Complex64, cfg: &EvalConfig) -> Result<Complex64, LError> {
    LSeries::dirichlet(src, cfg)?.l_value(s)
}

/// Result of [`order_and_derivatives`]: `values[k] = f^{(k)}(s0)` for `k ≤ order`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderResult {
    pub order: u32,
    pub values: Vec<Complex64>,
    pub threshold: f64,
}

fn difference(f: &dyn Fn(Complex64) -> Result<Complex64, LError>, s: Complex64, h: f64, k: u32) -> Result<Complex64, LError> {
    let hc = Complex64::new(h, 0.0);
    Ok(match k {
        1 => (f(s + hc)? - f(s - hc)?) / (2.0 * h),
        2 => (f(s + hc)? - 2.0 * f(s)? + f(s - hc)?) / (h * h),
        3 => {
            let h2 = hc * 2.0;
            (f(s + h2)? - 2.0 * f(s + hc)? + 2.0 * f(s - hc)? - f(s - h2)?) / (2.0 * h * h * h)
        }
        _ => return Err(LError::Domain(format!("derivative order {k} unsupported"))),
    })
}

/// k-th derivative by central differences with four-level Richardson extrapolation.
pub fn derivative(
    f: &dyn Fn(Complex64) -> Result<Complex64, LError>,
    s: Complex64,
    k: u32,
    h: f64,
) -> Result<Complex64, LError> {
    if k == 0 {
        return f(s);
    }
    let mut table: Vec<Complex64> = (0..4)
        .map(|j| difference(f, s, h * (1 << j) as f64, k))
        .collect::<Result<_, _>>()?;
    // error expansion in even powers of h
    let mut factor = 4.0;
    for level in 1..4 {
        for j in 0..4 - level {
            table[j] = (table[j] * factor - table[j + 1]) / (factor - 1.0);
        }
        factor *= 4.0;
    }
    Ok(table[0])
}

/// Smallest k ≤ max_order with `|f^{(k)}(s0)|` clearly above the zero threshold.
pub fn order_and_derivatives(
    f: &dyn Fn(Complex64) -> Result<Complex64, LError>,
    s0: Complex64,
    max_order: u32,
    cfg: &EvalConfig,
) -> Result<OrderResult, LError> {
    let thr = cfg.zero_threshold();
    let mut values = Vec::new();
    for k in 0..=max_order.min(3) {
        let v = derivative(f, s0, k, cfg.step(k))?;
        values.push(v);
        let m = v.norm();
        if m > 100.0 * thr {
            return Ok(OrderResult {
                order: k,
                values,
                threshold: thr,
            });
        }
        if m >= thr {
            return Err(LError::IndeterminateOrder(format!(
                "|f^({k})| = {m:.3e} lies between {thr:.1e} and {:.1e}",
                100.0 * thr
            )));
        }
    }
    Err(LError::IndeterminateOrder(format!(
        "all derivatives up to order {} are below {thr:.1e}",
        max_order.min(3)
    )))
}

impl LSeries {
    /// Order of vanishing of the arithmetic L-function at `s0` and its derivatives.
    pub fn order_and_derivative(
        &self,
        s0: Complex64,
        max_order: u32,
        cfg: &EvalConfig,
    ) -> Result<OrderResult, LError> {
        let f = |s: Complex64| self.l_value(s);
        order_and_derivatives(&f, s0, max_order, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{InfinityType, TwistGen};
    use crate::field::QuadField;
    use num_rational::Ratio;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_values() {
        let cfg = EvalConfig::default();
        let z = LSeries::dirichlet(DirichletSource { chi: DirichletChar::Trivial, t: 0 }, &cfg).unwrap();
        assert!((z.l_value(c(2.0, 0.0)).unwrap() - c(PI * PI / 6.0, 0.0)).norm() < 1e-12);
        assert!((z.l_value(c(0.0, 0.0)).unwrap() - c(-0.5, 0.0)).norm() < 1e-12);
        assert!((z.l_value(c(-1.0, 0.0)).unwrap() - c(-1.0 / 12.0, 0.0)).norm() < 1e-12);
        assert!(z.l_value(c(-2.0, 0.0)).unwrap().norm() < 1e-13);
        assert!(matches!(z.l_value(c(1.0, 0.0)), Err(LError::Pole { residue, .. }) if (residue - 1.0).abs() < 1e-12));
        assert!((z.sign().unwrap() - c(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn shifted_zeta_pole() {
        let cfg = EvalConfig::default();
        let src = DirichletSource { chi: DirichletChar::Trivial, t: 3 };
        match dirichlet_l(src, c(-2.0, 0.0), &cfg) {
            Err(LError::Pole { at, residue }) => {
                assert_eq!(at, -2.0);
                assert!((residue - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        // ζ(4) = π⁴/90 at s = 1
        let v = dirichlet_l(src, c(1.0, 0.0), &cfg).unwrap();
        assert!((v.re - PI.powi(4) / 90.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_zeta() {
        let cfg = EvalConfig::default();
        let f = QuadField::new(-4).unwrap();
        let l = LSeries::hecke(&HeckeChar::trivial(f), &cfg).unwrap();
        assert!((l.sign().unwrap() - c(1.0, 0.0)).norm() < 1e-9);
        // ζ_F(0) = -1/4, residue at 1 is π/4
        assert!((l.l_value(c(0.0, 0.0)).unwrap() - c(-0.25, 0.0)).norm() < 1e-12);
        assert!(matches!(l.l_value(c(1.0, 0.0)), Err(LError::Pole { residue, .. }) if (residue - PI / 4.0).abs() < 1e-12));
        for s in [c(0.3, 0.0), c(0.7, 0.2)] {
            assert!(l.fe_residual(s).unwrap() < 1e-9);
        }
        assert!(l.evaluate_completed(c(0.4, 0.0)).unwrap().im.abs() < 1e-12);
    }

    #[test]
    fn cm_weight_one() {
        // ψ of conductor (2+2i), twist i ↦ i^{-1}: the CM form of level 32
        let f = QuadField::new(-4).unwrap();
        let psi = HeckeChar::new(
            f,
            f.elem(6, 2),
            InfinityType::new(1, 0),
            vec![TwistGen { gen: f.unit_generator(), angle: Ratio::new(3, 4) }],
        )
        .unwrap();
        let cfg = EvalConfig::default();
        let l = LSeries::hecke(&psi, &cfg).unwrap();
        assert_eq!(l.conductor_norm(), 32);
        let eps = l.sign().unwrap();
        assert!((eps - c(1.0, 0.0)).norm() < 1e-8, "{eps}");
        for s in [c(0.3, 0.0), c(0.7, 0.2), c(0.5, 1.0)] {
            assert!(l.fe_residual(s).unwrap() < 1e-8);
        }
        // L(E, 1) for y² = x³ − x is Γ(1/4)²/(4√(2π)) · ... checked via its known value 0.6555143885...
        let v = l.l_value(c(1.0, 0.0)).unwrap();
        assert!((v.re - 0.655_514_388_573_029_6).abs() < 1e-10, "{v}");
    }

    #[test]
    fn coefficients_match_ideal_counts() {
        let f = QuadField::new(-4).unwrap();
        let a = coefficients(&HeckeChar::trivial(f), 10).unwrap();
        assert_eq!(a[1], c(1.0, 0.0));
        assert_eq!(a[2], c(1.0, 0.0));
        assert_eq!(a[3], c(0.0, 0.0));
        assert_eq!(a[5], c(2.0, 0.0));
    }

    #[test]
    fn euler_factor_shapes() {
        let f = QuadField::new(-4).unwrap();
        let t = HeckeChar::trivial(f);
        let p3 = euler_factor(&t, 3).unwrap().poly();
        assert_eq!(p3, vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        let p5 = euler_factor(&t, 5).unwrap().poly();
        assert_eq!(p5, vec![c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)]);
        assert!(euler_factor(&t, 4).is_err());
    }

    #[test]
    fn double_zero_stub() {
        let s0 = c(-1.0, 0.0);
        let f = |s: Complex64| Ok((s - s0) * (s - s0) * (s * 0.3).exp());
        let r = order_and_derivatives(&f, s0, 3, &EvalConfig::default()).unwrap();
        assert_eq!(r.order, 2);
        assert!((r.values[2] - c(2.0 * (-0.3f64).exp(), 0.0)).norm() < 1e-5);
    }

    #[test]
    fn all_zero_is_indeterminate() {
        let f = |_s: Complex64| Ok(c(0.0, 0.0));
        assert!(matches!(
            order_and_derivatives(&f, c(0.0, 0.0), 2, &EvalConfig::default()),
            Err(LError::IndeterminateOrder(_))
        ));
    }

    #[test]
    fn insufficient_bound_is_reported() {
        let cfg = EvalConfig { coeff_bound: Some(3), ..Default::default() };
        let f = QuadField::new(-4).unwrap();
        assert!(matches!(
            LSeries::hecke(&HeckeChar::trivial(f), &cfg),
            Err(LError::InsufficientTerms { .. })
        ));
    }
}
