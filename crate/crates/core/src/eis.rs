//! Pole analysis of `c(φ, s)` at `s = 0`, the Φ_np/Φ_p classification, the
//! hypotheses on the weight −3 family and the report tying everything together.
//!
//! `c(φ, s) = L(φ, s−1)·L(φ_Q ε, 2s−2) / (L(φ, s)·L(φ_Q ε, 2s−1))` where `φ_Q ε` is
//! the restriction of `φ` to Q times the quadratic character of the field.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{CharError, CharSpec, ExactValue, HeckeChar, InfinityType, TorusType, TwistGen};
use crate::field::QuadField;
use crate::hodge::{boundary_table, extension_certificate_types, BoundaryTable, HodgeError, Side};
use crate::lfun::{euler_factor, EvalConfig, LError, LSeries, DirichletChar, DirichletSource};
use crate::numtheory::primes_up_to;
use crate::weyl::{star, TorusCharGL, WeylElt};

/// Primes used to test the restriction shape and identify `φ_Q ε`.
pub const SHAPE_BOUND: u64 = 500;
/// `|ε + 1|` below this counts as sign −1.
pub const SIGN_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EisError {
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    L(#[from] LError),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("type mismatch: expected {expected}, got {got}")]
    TypeMismatch { expected: String, got: String },
    #[error("cannot resolve slot {slot}: {reason}")]
    Unresolved { slot: String, reason: String },
}

impl EisError {
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, EisError::L(e) if e.is_indeterminate())
    }
}

/// `1 + κ₁/2`: the L-series of a character of this type converges beyond it.
pub fn half_plane(t: TorusType) -> Ratio<i64> {
    Ratio::new(2 + t.kappa1, 2)
}

/// `1 + κ₁` for the restriction to Q, whose weight is twice the weight of `φ`.
pub fn half_plane_restricted(t: TorusType) -> Ratio<i64> {
    Ratio::from_integer(1 + t.kappa1)
}

fn torus(l: TorusCharGL) -> TorusType {
    TorusType::new(l.k1, l.k2)
}

/// The weight −3 character of infinity type `(k, −(k+3))` with the standard twist
/// on `d = −4` (conductor `2(3+i)`) or `d = −3` (conductor `3`).
pub fn family_character(disc: i64, k: i64) -> Result<HeckeChar, EisError> {
    family_with_infinity(disc, InfinityType::new(k, -(k + 3)))
}

/// Companion of [`family_character`] of type `(1 2) ⋆ (k, 0)`, infinity type `(k+1, −k−2)`.
pub fn theta_character(disc: i64, k: i64) -> Result<HeckeChar, EisError> {
    family_with_infinity(disc, InfinityType::new(k + 1, -(k + 2)))
}

fn family_with_infinity(disc: i64, inf: InfinityType) -> Result<HeckeChar, EisError> {
    let f = QuadField::new(disc).map_err(CharError::from)?;
    let (cond, gen, den) = match disc {
        -4 => (f.elem(6, 2), f.elem(2, 1), 4),
        -3 => (f.elem(3, 0), f.elem(2, 1), 6),
        _ => {
            return Err(EisError::Precondition(format!(
                "family characters are tabulated for d = -4 and d = -3, not {disc}"
            )))
        }
    };
    let e = inf.p - inf.q;
    Ok(HeckeChar::new(
        f,
        cond,
        inf,
        vec![TwistGen {
            gen,
            angle: Ratio::new(-e, den),
        }],
    )?)
}

/// Weyl element `w` of length at least 2 with `w ⋆ λ` equal to the type of `φ`.
pub fn locate_weyl(phi: &HeckeChar, l: TorusCharGL) -> Result<WeylElt, EisError> {
    let t = phi.torus_type();
    WeylElt::ALL
        .into_iter()
        .filter(|w| w.length() >= 2)
        .find(|w| torus(star(*w, l)) == t)
        .ok_or_else(|| {
            EisError::Precondition(format!("type {t} is not w ⋆ {l} for any w of length 2 or 3"))
        })
}

/// Identifies `φ_Q ε` as `χ·|·|^t` with `t = −κ₁` and `χ` trivial or `ε`, from the
/// restriction values at good primes up to `bound`.
pub fn restriction_source(phi: &HeckeChar, bound: u64) -> Result<Option<DirichletSource>, EisError> {
    let f = phi.field();
    let t = -phi.weight();
    let candidates = [DirichletChar::Trivial, DirichletChar::Kronecker(f.disc())];
    let mut alive = [true, true];
    for p in primes_up_to(bound as usize) {
        let Some(v) = phi.restriction_value(p)? else {
            continue;
        };
        let Some(pt) = (p as i128).checked_pow(t.unsigned_abs() as u32) else {
            break;
        };
        let scale = if t >= 0 { Ratio::new(1, pt) } else { Ratio::from_integer(pt) };
        let eps = f.kronecker(p);
        for (i, chi) in candidates.iter().enumerate() {
            let sign = chi.value(p) * eps;
            let target = ExactValue::new(Ratio::new(if sign == 1 { 0 } else { 1 }, 2), scale, f.one())?;
            if v != target {
                alive[i] = false;
            }
        }
    }
    Ok(candidates
        .into_iter()
        .zip(alive)
        .find(|(_, a)| *a)
        .map(|(chi, _)| DirichletSource { chi, t }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotKind {
    Hecke,
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Numerator,
    Denominator,
}

/// One L-factor of `c(φ, s)` evaluated at `a·s + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub kind: SlotKind,
    pub role: Role,
    pub a: i64,
    pub b: i64,
}

impl Slot {
    pub fn argument(&self, s: i64) -> i64 {
        self.a * s + self.b
    }

    pub fn label(&self) -> String {
        let arg = slot_arg(self);
        match self.kind {
            SlotKind::Hecke => format!("L(phi, {arg})"),
            SlotKind::Dirichlet => format!("L(phi_Q eps, {arg})"),
        }
    }
}

pub const SLOTS: [Slot; 4] = [
    Slot { kind: SlotKind::Hecke, role: Role::Numerator, a: 1, b: -1 },
    Slot { kind: SlotKind::Dirichlet, role: Role::Numerator, a: 2, b: -2 },
    Slot { kind: SlotKind::Hecke, role: Role::Denominator, a: 1, b: 0 },
    Slot { kind: SlotKind::Dirichlet, role: Role::Denominator, a: 2, b: -1 },
];

/// `c(φ, s)` with the restriction identified.
#[derive(Debug, Clone)]
pub struct CFactor {
    pub phi: HeckeChar,
    pub restriction: Option<DirichletSource>,
    pub slots: [Slot; 4],
}

impl CFactor {
    pub fn new(phi: &HeckeChar) -> Result<Self, EisError> {
        Ok(CFactor {
            phi: phi.clone(),
            restriction: restriction_source(phi, SHAPE_BOUND)?,
            slots: SLOTS,
        })
    }

    fn restriction_or(&self, what: &str) -> Result<DirichletSource, EisError> {
        self.restriction.ok_or_else(|| EisError::Unresolved {
            slot: what.into(),
            reason: "restriction to Q is neither |.|^t nor eps|.|^t".into(),
        })
    }

    /// `c_p(φ, s)`, the ratio of local Euler factors at `p`.
    pub fn local(&self, p: u64, s: f64) -> Result<Complex64, EisError> {
        let src = self.restriction_or("local factor")?;
        let pf = p as f64;
        let ef = euler_factor(&self.phi, p)?.poly();
        let hecke = |z: f64| -> Complex64 {
            let x = pf.powf(-z);
            let den = ef.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
            den.inv()
        };
        let dir = |z: f64| -> Complex64 {
            let chi = src.chi.value(p) as f64;
            Complex64::new(1.0 / (1.0 - chi * pf.powf(-(z + src.t as f64))), 0.0)
        };
        let mut c = Complex64::new(1.0, 0.0);
        for sl in &self.slots {
            let z = sl.a as f64 * s + sl.b as f64;
            let v = match sl.kind {
                SlotKind::Hecke => hecke(z),
                SlotKind::Dirichlet => dir(z),
            };
            c = match sl.role {
                Role::Numerator => c * v,
                Role::Denominator => c / v,
            };
        }
        Ok(c)
    }

    /// `Π_{p ≤ bound} c_p(φ, s)`.
    pub fn partial_product(&self, s: f64, bound: u64) -> Result<Complex64, EisError> {
        primes_up_to(bound as usize)
            .into_iter()
            .try_fold(Complex64::new(1.0, 0.0), |acc, p| Ok(acc * self.local(p, s)?))
    }

    /// `c(φ, s)` from the analytically continued L-functions.
    pub fn global(&self, s: f64, cfg: &EvalConfig) -> Result<Complex64, EisError> {
        let src = self.restriction_or("global value")?;
        let lh = LSeries::hecke(&self.phi, cfg)?;
        let ld = LSeries::dirichlet(src, cfg)?;
        let mut c = Complex64::new(1.0, 0.0);
        for sl in &self.slots {
            let z = Complex64::new(sl.a as f64 * s + sl.b as f64, 0.0);
            let v = match sl.kind {
                SlotKind::Hecke => lh.l_value(z)?,
                SlotKind::Dirichlet => ld.l_value(z)?,
            };
            c = match sl.role {
                Role::Numerator => c * v,
                Role::Denominator => c / v,
            };
        }
        Ok(c)
    }
}

/// Order of vanishing of an L-function at an integer point, with the
/// derivatives that decided it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderEvidence {
    /// Negative for a pole.
    pub order: i32,
    pub values: Vec<Complex64>,
}

/// Evaluator for `L(φ, s)` in the arithmetic normalization.
pub trait LOracle: Sync {
    fn order_at(&self, s: i64) -> Result<OrderEvidence, LError>;
    fn sign(&self) -> Result<Complex64, LError>;
    /// `[L(s), L′(s)]`.
    fn value_and_derivative(&self, s: i64) -> Result<[Complex64; 2], LError>;
}

/// Oracle backed by the analytic continuation in [`crate::lfun`].
#[derive(Debug)]
pub struct NumericOracle {
    series: LSeries,
    cfg: EvalConfig,
}

impl NumericOracle {
    pub fn new(phi: &HeckeChar, cfg: &EvalConfig) -> Result<Self, LError> {
        Ok(NumericOracle {
            series: LSeries::hecke(phi, cfg)?,
            cfg: *cfg,
        })
    }

    pub fn series(&self) -> &LSeries {
        &self.series
    }
}

impl LOracle for NumericOracle {
    fn order_at(&self, s: i64) -> Result<OrderEvidence, LError> {
        let s0 = Complex64::new(s as f64, 0.0);
        match self.series.order_and_derivative(s0, 3, &self.cfg) {
            Ok(r) => Ok(OrderEvidence {
                order: r.order as i32,
                values: r.values,
            }),
            Err(LError::Pole { residue, .. }) => Ok(OrderEvidence {
                order: -1,
                values: vec![Complex64::new(residue, 0.0)],
            }),
            Err(e) => Err(e),
        }
    }

    fn sign(&self) -> Result<Complex64, LError> {
        self.series.sign()
    }

    fn value_and_derivative(&self, s: i64) -> Result<[Complex64; 2], LError> {
        let s0 = Complex64::new(s as f64, 0.0);
        let f = |z: Complex64| self.series.l_value(z);
        Ok([
            f(s0)?,
            crate::lfun::derivative(&f, s0, 1, self.cfg.step(1))?,
        ])
    }
}

/// Oracle with prescribed sign and derivatives at a single point.
#[derive(Debug, Clone, PartialEq)]
pub struct StubOracle {
    pub at: i64,
    pub sign: Complex64,
    /// `derivatives[j] = L^{(j)}(at)`.
    pub derivatives: Vec<Complex64>,
}

impl StubOracle {
    /// Vanishing to exactly `order` at `s = −1`, with leading derivative `1`.
    pub fn with_order(order: usize, sign: f64) -> Self {
        let mut derivatives = vec![Complex64::new(0.0, 0.0); order + 2];
        derivatives[order] = Complex64::new(1.0, 0.0);
        derivatives[order + 1] = Complex64::new(0.5, 0.0);
        StubOracle {
            at: -1,
            sign: Complex64::new(sign, 0.0),
            derivatives,
        }
    }
}

impl LOracle for StubOracle {
    fn order_at(&self, s: i64) -> Result<OrderEvidence, LError> {
        if s != self.at {
            return Err(LError::Domain(format!("stub oracle only knows s = {}", self.at)));
        }
        let k = self
            .derivatives
            .iter()
            .position(|z| z.norm() > 0.0)
            .ok_or_else(|| LError::IndeterminateOrder("all stub derivatives vanish".into()))?;
        Ok(OrderEvidence {
            order: k as i32,
            values: self.derivatives[..=k].to_vec(),
        })
    }

    fn sign(&self) -> Result<Complex64, LError> {
        Ok(self.sign)
    }

    fn value_and_derivative(&self, s: i64) -> Result<[Complex64; 2], LError> {
        if s != self.at {
            return Err(LError::Domain(format!("stub oracle only knows s = {}", self.at)));
        }
        let get = |j: usize| self.derivatives.get(j).copied().unwrap_or_default();
        Ok([get(0), get(1)])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiClass {
    /// No pole of `c(φ, s)` at `s = 0`.
    Np,
    P,
}

impl PhiClass {
    pub fn from_order(order: i32) -> Self {
        if order < 0 {
            PhiClass::P
        } else {
            PhiClass::Np
        }
    }
}

impl fmt::Display for PhiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhiClass::Np => "np",
            PhiClass::P => "p",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotOrder {
    pub slot: String,
    pub kind: SlotKind,
    pub role: Role,
    pub argument: i64,
    /// Convergence bound for the slot's L-series, as a fraction.
    pub bound: String,
    pub order: i32,
    pub reason: String,
    /// Archimedean factor of the slot in `c̃`; not used for the decision at `s = 0`.
    pub gamma_factor: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct COrder {
    pub w: WeylElt,
    pub order: i32,
    pub class: PhiClass,
    pub slots: Vec<SlotOrder>,
}

fn slot_arg(sl: &Slot) -> String {
    match (sl.a, sl.b) {
        (1, 0) => "s".into(),
        (1, b) => format!("s{b:+}"),
        (a, 0) => format!("{a}s"),
        (a, b) => format!("{a}s{b:+}"),
    }
}

fn shifted(sl: &Slot, x: i64) -> String {
    match x {
        0 => slot_arg(sl),
        x => format!("{} {} {}", slot_arg(sl), if x > 0 { '+' } else { '-' }, x.abs()),
    }
}

fn hecke_gamma(phi: &HeckeChar, sl: &Slot) -> String {
    let inf = phi.infinity();
    format!("Gamma_C({})", shifted(sl, -inf.p.min(inf.q)))
}

fn dirichlet_gamma(src: Option<DirichletSource>, sl: &Slot) -> String {
    match src {
        Some(src) => format!("Gamma_R({})", shifted(sl, src.t + src.chi.is_odd() as i64)),
        None => "unidentified".into(),
    }
}

fn dirichlet_order(src: DirichletSource, u: i64) -> (i32, String) {
    match src.chi {
        DirichletChar::Trivial if u == 1 => (-1, "first-order pole of zeta at 1".into()),
        DirichletChar::Trivial if u <= -2 && u % 2 == 0 => (1, format!("trivial zero of zeta at {u}")),
        DirichletChar::Trivial => (0, format!("zeta({u}) is nonzero")),
        DirichletChar::Kronecker(_) if u < 0 && u % 2 != 0 => {
            (1, format!("trivial zero of the odd L(eps, s) at {u}"))
        }
        DirichletChar::Kronecker(_) => (0, format!("L(eps, {u}) is nonzero")),
    }
}

/// Order of `c(φ, s)` at `s = 0` (negative for a pole) as a sum over the four slots.
pub fn c_order_at_zero(
    phi: &HeckeChar,
    l: TorusCharGL,
    oracle: &dyn LOracle,
) -> Result<COrder, EisError> {
    let w = locate_weyl(phi, l)?;
    let t = phi.torus_type();
    let hb = half_plane(t);
    let rb = half_plane_restricted(t);
    let src = restriction_source(phi, SHAPE_BOUND)?;
    let mut slots = Vec::new();
    let mut total = 0;
    for sl in SLOTS {
        let z = sl.argument(0);
        let bound = match sl.kind {
            SlotKind::Hecke => hb,
            SlotKind::Dirichlet => rb,
        };
        let (order, reason) = if Ratio::from_integer(z) > bound {
            (0, format!("{z} lies in the convergence half-plane Re s > {bound}"))
        } else {
            match sl.kind {
                SlotKind::Hecke => {
                    let ev = oracle.order_at(z)?;
                    let lead = ev.values.last().copied().unwrap_or_default();
                    (ev.order, format!("order {} at {z}, leading coefficient {}", ev.order, complex_decimal(lead)))
                }
                SlotKind::Dirichlet => {
                    let src = src.ok_or_else(|| EisError::Unresolved {
                        slot: sl.label(),
                        reason: "restriction to Q is neither |.|^t nor eps|.|^t".into(),
                    })?;
                    dirichlet_order(src, z + src.t)
                }
            }
        };
        total += match sl.role {
            Role::Numerator => order,
            Role::Denominator => -order,
        };
        slots.push(SlotOrder {
            slot: sl.label(),
            kind: sl.kind,
            role: sl.role,
            argument: z,
            bound: bound.to_string(),
            order,
            reason,
            gamma_factor: match sl.kind {
                SlotKind::Hecke => hecke_gamma(phi, &sl),
                SlotKind::Dirichlet => dirichlet_gamma(src, &sl),
            },
        });
    }
    Ok(COrder {
        w,
        order: total,
        class: PhiClass::from_order(total),
        slots,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisEvidence {
    pub shape: String,
    pub sign: String,
    pub first_order: String,
}

/// `None` means the numerics could not decide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub shape: Option<bool>,
    pub sign: Option<bool>,
    pub first_order: Option<bool>,
    pub evidence: HypothesisEvidence,
}

fn require_family(phi: &HeckeChar, k: i64) -> Result<(), EisError> {
    let want = InfinityType::new(k, -(k + 3));
    if phi.infinity() != want {
        return Err(EisError::Precondition(format!(
            "expected infinity type {want}, character has {}",
            phi.infinity()
        )));
    }
    Ok(())
}

fn indeterminate<T>(r: Result<T, LError>) -> Result<Result<T, String>, EisError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e) if e.is_indeterminate() => Ok(Err(format!("indeterminate: {e}"))),
        Err(e) => Err(e.into()),
    }
}

/// Checks the restriction shape, sign −1 and first-order vanishing at `s = −1`.
pub fn check_hypotheses(phi: &HeckeChar, k: i64, oracle: &dyn LOracle) -> Result<Hypotheses, EisError> {
    require_family(phi, k)?;
    let rc = phi.restriction_shape_check(SHAPE_BOUND)?;
    let shape_ev = match rc.witness {
        None => format!("holds at {} primes up to {SHAPE_BOUND}", rc.primes_checked),
        Some(p) => format!("fails at p = {p}"),
    };
    let (sign, sign_ev) = match indeterminate(oracle.sign())? {
        Ok(e) => (Some((e + 1.0).norm() < SIGN_TOL), format!("epsilon = {}", complex_decimal(e))),
        Err(msg) => (None, msg),
    };
    let (first, first_ev) = match indeterminate(oracle.order_at(-1))? {
        Ok(ev) => (
            Some(ev.order == 1),
            format!(
                "order {} at -1, derivatives [{}]",
                ev.order,
                ev.values.iter().map(|v| complex_decimal(*v)).collect::<Vec<_>>().join(", ")
            ),
        ),
        Err(msg) => (None, msg),
    };
    Ok(Hypotheses {
        shape: Some(rc.holds),
        sign,
        first_order: first,
        evidence: HypothesisEvidence {
            shape: shape_ev,
            sign: sign_ev,
            first_order: first_ev,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterSummary {
    pub spec: CharSpec,
    pub display: String,
    pub torus_type: [i64; 2],
    pub lambda: TorusCharGL,
    pub w: WeylElt,
    pub primitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryTables {
    pub plus: BoundaryTable,
    pub minus: BoundaryTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPlanes {
    pub hecke: String,
    pub restriction: String,
}

/// Hodge types `[p, q]` of the certificate slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "H2pi")]
    pub h2pi: (i64, i64),
    #[serde(rename = "H2piDual")]
    pub h2pi_dual: (i64, i64),
    #[serde(rename = "Iphi")]
    pub iphi: (i64, i64),
    #[serde(rename = "Ithetaphi")]
    pub ithetaphi: (i64, i64),
    #[serde(rename = "Hphi")]
    pub hphi: (i64, i64),
    #[serde(rename = "HphiTwist")]
    pub hphi_twist: (i64, i64),
}

impl Certificate {
    pub fn for_k(k: i64) -> Self {
        let t = extension_certificate_types(k);
        Certificate {
            h2pi: t.h2pi.hodge_type(),
            h2pi_dual: t.h2pi_dual.hodge_type(),
            iphi: t.iphi.hodge_type(),
            ithetaphi: t.ithetaphi.hodge_type(),
            hphi: t.hphi.hodge_type(),
            hphi_twist: t.hphi_twist.hodge_type(),
        }
    }
}

/// The dual datum: a character of type `(1 2) ⋆ λ`; the morphisms are labels only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSlot {
    pub character: CharSpec,
    pub torus_type: [i64; 2],
    pub ithetaphi: (i64, i64),
    pub labels: [String; 2],
}

/// Decimal strings with 17 significant digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericBlock {
    pub l_value: [String; 2],
    pub l_derivative: [String; 2],
    pub sign: [String; 2],
}

/// `(re, im)` with both parts in [`decimal`] form.
pub fn complex_decimal(z: Complex64) -> String {
    format!("({}, {})", decimal(z.re), decimal(z.im))
}

pub fn decimal(x: f64) -> String {
    format!("{x:.16e}")
}

fn cstr(z: Complex64) -> [String; 2] {
    [decimal(z.re), decimal(z.im)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EisReport {
    pub character: CharacterSummary,
    pub boundary_tables: BoundaryTables,
    pub half_planes: HalfPlanes,
    pub c_order_at_zero: i32,
    pub class: PhiClass,
    pub c_factor: Vec<SlotOrder>,
    pub hypotheses: Hypotheses,
    pub certificate: Certificate,
    pub dual_extension: Option<DualSlot>,
    pub numeric: Option<NumericBlock>,
}

impl EisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Eisenstein report\n\ncharacter: {}\n\n", self.character.display);
        let t = self.character.torus_type;
        s.push_str(&format!(
            "type: ({}, {}) = {} ⋆ {}\n\n",
            t[0], t[1], self.character.w, self.character.lambda
        ));
        s.push_str("## Boundary table (plus)\n\n");
        s.push_str(&self.boundary_tables.plus.to_markdown());
        s.push_str("\n## Boundary table (minus)\n\n");
        s.push_str(&self.boundary_tables.minus.to_markdown());
        s.push_str(&format!(
            "\n## Half-planes\n\nL(phi, s): Re s > {}\nrestriction: Re s > {}\n\n",
            self.half_planes.hecke, self.half_planes.restriction
        ));
        s.push_str("## c(phi, s) at s = 0\n\n| slot | role | argument | order | reason | gamma |\n|---|---|---|---|---|---|\n");
        for sl in &self.c_factor {
            s.push_str(&format!(
                "| {} | {:?} | {} | {} | {} | {} |\n",
                sl.slot, sl.role, sl.argument, sl.order, sl.reason, sl.gamma_factor
            ));
        }
        s.push_str(&format!("\nc_order_at_zero: {}\nclass: {}\n\n", self.c_order_at_zero, self.class));
        let fl = |b: Option<bool>| b.map_or("null".to_string(), |b| b.to_string());
        let h = &self.hypotheses;
        s.push_str(&format!(
            "## Hypotheses\n\nshape: {} ({})\nsign: {} ({})\nfirst_order: {} ({})\n\n",
            fl(h.shape),
            h.evidence.shape,
            fl(h.sign),
            h.evidence.sign,
            fl(h.first_order),
            h.evidence.first_order
        ));
        s.push_str(&certificate_markdown(&self.certificate));
        if let Some(d) = &self.dual_extension {
            s.push_str(&format!(
                "\n## Dual extension\n\ntheta type: ({}, {}), I_thetaphi: {:?}, labels: {}, {}\n",
                d.torus_type[0], d.torus_type[1], d.ithetaphi, d.labels[0], d.labels[1]
            ));
        }
        if let Some(n) = &self.numeric {
            s.push_str(&format!(
                "\n## Numerics\n\nL(-1): {} {}\nL'(-1): {} {}\nsign: {} {}\n",
                n.l_value[0], n.l_value[1], n.l_derivative[0], n.l_derivative[1], n.sign[0], n.sign[1]
            ));
        }
        s
    }
}

pub fn certificate_markdown(c: &Certificate) -> String {
    let mut s = String::from("## Certificate\n\n| slot | type |\n|---|---|\n");
    for (name, t) in [
        ("H2pi", c.h2pi),
        ("H2piDual", c.h2pi_dual),
        ("Iphi", c.iphi),
        ("Ithetaphi", c.ithetaphi),
        ("Hphi", c.hphi),
        ("HphiTwist", c.hphi_twist),
    ] {
        s.push_str(&format!("| {name} | ({}, {}) |\n", t.0, t.1));
    }
    s
}

/// Report with the numeric oracle for `L(φ, s)`.
pub fn build_report(
    phi: &HeckeChar,
    k: i64,
    theta: Option<&HeckeChar>,
    cfg: &EvalConfig,
) -> Result<EisReport, EisError> {
    require_family(phi, k)?;
    let oracle = NumericOracle::new(phi, cfg)?;
    build_report_with(phi, k, theta, &oracle)
}

pub fn build_report_with(
    phi: &HeckeChar,
    k: i64,
    theta: Option<&HeckeChar>,
    oracle: &dyn LOracle,
) -> Result<EisReport, EisError> {
    require_family(phi, k)?;
    let l = TorusCharGL::new(k, 0);
    let dual_extension = match theta {
        None => None,
        Some(th) => {
            let want = torus(star(WeylElt::S12, l));
            if th.torus_type() != want {
                return Err(EisError::TypeMismatch {
                    expected: format!("(1 2) ⋆ {l} = {want}"),
                    got: th.torus_type().to_string(),
                });
            }
            Some(DualSlot {
                character: th.to_spec(),
                torus_type: [want.kappa1, want.kappa2],
                ithetaphi: extension_certificate_types(k).ithetaphi.hodge_type(),
                labels: ["Theta".into(), "Sigma".into()],
            })
        }
    };
    let boundary_tables = BoundaryTables {
        plus: boundary_table(l, Side::Plus)?,
        minus: boundary_table(l, Side::Minus)?,
    };
    let t = phi.torus_type();
    let co = c_order_at_zero(phi, l, oracle)?;
    let hypotheses = check_hypotheses(phi, k, oracle)?;
    let numeric = match (indeterminate(oracle.value_and_derivative(-1))?, indeterminate(oracle.sign())?) {
        (Ok([v, d]), Ok(e)) => Some(NumericBlock {
            l_value: cstr(v),
            l_derivative: cstr(d),
            sign: cstr(e),
        }),
        _ => None,
    };
    let report = EisReport {
        character: CharacterSummary {
            spec: phi.to_spec(),
            display: phi.to_string(),
            torus_type: [t.kappa1, t.kappa2],
            lambda: l,
            w: co.w,
            primitive: phi.is_primitive(),
        },
        boundary_tables,
        half_planes: HalfPlanes {
            hecke: half_plane(t).to_string(),
            restriction: half_plane_restricted(t).to_string(),
        },
        c_order_at_zero: co.order,
        class: co.class,
        c_factor: co.slots,
        hypotheses,
        certificate: Certificate::for_k(k),
        dual_extension,
        numeric,
    };
    debug_assert_eq!(report.class, PhiClass::from_order(report.c_order_at_zero));
    Ok(report)
}
