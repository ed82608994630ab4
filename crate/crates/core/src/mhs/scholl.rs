//! Weight −1 splitting of three-step structures and the pairing on the remaining
//! two-step extension `0 → 𝟙(1)^s → W → 𝟙^r → 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::carlson::{carlson_class, TateExtClass};
use super::linalg::{coordinates, CMat, CVec, Subspace};
use super::structure::MixedHSC;
use super::MhsError;

/// Deligne's `I^{p,q}`.
pub fn deligne_piece(h: &MixedHSC, p: i64, q: i64) -> Subspace {
    let w = p + q;
    let ww = h.weight_space(w);
    let mut rhs = h.conj_space(&h.hodge_space(q)).intersect(&ww);
    let lowest = h.weight_keys().first().copied().unwrap_or(w);
    let mut j = 2;
    while w - j >= lowest {
        let piece = h
            .conj_space(&h.hodge_space(q - j + 1))
            .intersect(&h.weight_space(w - j));
        rhs = rhs.sum(&piece);
        j += 1;
    }
    h.hodge_space(p).intersect(&ww).intersect(&rhs)
}

fn weight_part(h: &MixedHSC, w: i64) -> Subspace {
    let keys = h.hodge_keys();
    let lo = keys.first().copied().unwrap_or(0).min(w - keys.last().copied().unwrap_or(0)) - 1;
    let hi = keys.last().copied().unwrap_or(0).max(w - keys.first().copied().unwrap_or(0)) + 1;
    let mut s = Subspace::zero(h.dim());
    for p in lo..=hi {
        s = s.sum(&deligne_piece(h, p, w - p));
    }
    s
}

#[derive(Debug, Clone)]
pub struct WeightSplit {
    /// The weight −1 summand, in coordinates of its real generators.
    pub pure: MixedHSC,
    /// The two-step summand, basis `[weight −2 generators | weight 0 generators]`.
    pub w: MixedHSC,
    pub pure_span: Subspace,
    pub w_span: Subspace,
}

pub fn split_weight_minus1(h: &MixedHSC) -> Result<WeightSplit, MhsError> {
    let keys = h.weight_keys();
    if keys.iter().any(|k| ![-2, -1, 0].contains(k)) {
        return Err(MhsError::Shape(format!(
            "expected weights within -2, -1, 0, got {keys:?}"
        )));
    }
    let n = h.dim();
    let g = |k: i64| h.real_generators(k).len();
    let pure = weight_part(h, -1);
    let wsp = weight_part(h, -2).sum(&weight_part(h, 0));
    if pure.dim() != g(-1) || wsp.dim() != g(-2) + g(0) || pure.sum(&wsp).dim() != n {
        return Err(MhsError::Precision(format!(
            "Deligne splitting has dimensions {} + {}, expected {} + {}",
            pure.dim(),
            wsp.dim(),
            g(-1),
            g(-2) + g(0)
        )));
    }
    let both = CMat::from_columns(&[wsp.vectors(), pure.vectors()].concat());
    let nw = wsp.dim();
    // component of x along W' (first block) or along the pure part (second block)
    let split = |x: &CVec, first: bool| -> CVec {
        let (c, _) = coordinates(&both, x);
        if first {
            wsp.basis() * c.rows(0, nw)
        } else {
            pure.basis() * c.rows(nw, n - nw)
        }
    };
    let mut wgens: Vec<(i64, CVec)> = h.real_generators(-2).iter().map(|v| (-2, v.clone())).collect();
    wgens.extend(h.real_generators(0).iter().map(|v| (0, split(v, true))));
    let pgens: Vec<(i64, CVec)> = h.real_generators(-1).iter().map(|v| (-1, split(v, false))).collect();
    Ok(WeightSplit {
        pure: h.restrict(&pgens)?,
        w: h.restrict(&wgens)?,
        pure_span: pure,
        w_span: wsp,
    })
}

/// Coefficients of the Hodge-filtration sections `σ_F` against the chosen generators of
/// the two-step structure: `σ_F(ξ_j) = ξ_j + Σ_i ζ_{ij} a_i` (columns `j`), per
/// idempotent side.
#[derive(Debug, Clone)]
pub struct FiltrationSections {
    /// `s × r`.
    pub zeta_plus: CMat,
    /// `s × r`; equals `zeta_plus` without an idempotent.
    pub zeta_minus: CMat,
    pub has_idempotent: bool,
}

#[derive(Debug, Clone)]
pub struct PairingLabels {
    /// Indices into the weight 0 real generators.
    pub x: Vec<usize>,
    /// Indices into the weight −2 real generators.
    pub y: Vec<usize>,
}

impl PairingLabels {
    /// First `r` (weight 0) and first `s` (weight −2) generators, halved when an
    /// idempotent is present.
    pub fn default_for(w: &MixedHSC) -> Self {
        let half = if w.idempotent().is_some() { 2 } else { 1 };
        PairingLabels {
            x: (0..w.real_generators(0).len() / half).collect(),
            y: (0..w.real_generators(-2).len() / half).collect(),
        }
    }
}

fn two_step_shape(w: &MixedHSC) -> Result<(), MhsError> {
    let keys = w.weight_keys();
    if keys.iter().any(|k| *k != -2 && *k != 0) || w.hodge_space(0).dim() != w.real_generators(0).len() {
        return Err(MhsError::Shape(format!(
            "expected a two-step structure of weights -2, 0 with F^0 complementary to W_-2, got weights {keys:?}"
        )));
    }
    Ok(())
}

pub fn filtration_sections(w: &MixedHSC, labels: &PairingLabels) -> Result<FiltrationSections, MhsError> {
    two_step_shape(w)?;
    let n = w.dim();
    let ys = w.real_generators(-2);
    let xs = w.real_generators(0);
    if labels.x.iter().any(|&j| j >= xs.len()) || labels.y.iter().any(|&i| i >= ys.len()) {
        return Err(MhsError::Shape("pairing label out of range".into()));
    }
    let f0 = w.hodge_space(0);
    let id = CMat::identity(n, n);
    let sides: Vec<CMat> = match w.idempotent() {
        None => vec![id.clone()],
        Some(p) => vec![p.clone(), &id - p],
    };
    let mut out = Vec::new();
    for pm in &sides {
        let a = CMat::from_columns(&labels.y.iter().map(|&i| pm * &ys[i]).collect::<Vec<_>>());
        let m = CMat::from_columns(&[f0.vectors(), a.column_iter().map(|c| -c.into_owned()).collect()].concat());
        let mut z = CMat::zeros(labels.y.len(), labels.x.len());
        for (col, &j) in labels.x.iter().enumerate() {
            let target = pm * &xs[j];
            let (sol, res) = coordinates(&m, &target);
            if res > 1e-8 * (1.0 + target.norm()) {
                return Err(MhsError::Shape(format!(
                    "no Hodge-filtration lift of weight 0 generator {j} within the labeled span"
                )));
            }
            let k = f0.dim();
            for r in 0..labels.y.len() {
                z[(r, col)] = sol[k + r];
            }
        }
        out.push(z);
    }
    let has = out.len() == 2;
    let zeta_plus = out[0].clone();
    let zeta_minus = if has { out[1].clone() } else { out[0].clone() };
    Ok(FiltrationSections {
        zeta_plus,
        zeta_minus,
        has_idempotent: has,
    })
}

/// `b_{ji} = πi(ζ⁺_{ij} − conj ζ⁻_{ij})`, an `r × s` matrix. Without an idempotent this
/// is the reduced Carlson number `−2π Im ζ_{ij}`.
pub fn pairing_from_sections(s: &FiltrationSections) -> CMat {
    let pii = Complex64::new(0.0, PI);
    (&s.zeta_plus - s.zeta_minus.map(|z| z.conj())).transpose() * pii
}

/// Pairing matrix of a three-step structure (or of an already split two-step one).
pub fn scholl_pairing(h: &MixedHSC, labels: Option<&PairingLabels>) -> Result<CMat, MhsError> {
    let w = split_weight_minus1(h)?.w;
    let l = labels.cloned().unwrap_or_else(|| PairingLabels::default_for(&w));
    Ok(pairing_from_sections(&filtration_sections(&w, &l)?))
}

/// `b(x, y) = xᵀ b y`.
pub fn pairing_value(b: &CMat, x: &CVec, y: &CVec) -> Complex64 {
    (x.transpose() * b * y)[(0, 0)]
}

/// Whether `F^0` of the two-step structure is stable under conjugation, i.e. the
/// extension splits in the category.
pub fn w_splits(w: &MixedHSC) -> bool {
    let f0 = w.hodge_space(0);
    f0.same_as(&w.conj_space(&f0))
}

/// Real-coefficient case: the extension of `𝟙` by `𝟙(1)` pulled back along `x` (weight 0
/// generator coordinates) and pushed out along `y` (weight −2 coordinates).
pub fn extension_along(w: &MixedHSC, x: &[f64], y: &[f64]) -> Result<MixedHSC, MhsError> {
    two_step_shape(w)?;
    if w.idempotent().is_some() {
        return Err(MhsError::Shape("extension_along expects real coefficients".into()));
    }
    let n = w.dim();
    let ys = w.real_generators(-2);
    let xs = w.real_generators(0);
    if x.len() > xs.len() || y.len() > ys.len() {
        return Err(MhsError::Shape("pullback/pushout vector too long".into()));
    }
    let c = |t: f64| Complex64::new(t, 0.0);
    let xi: CVec = x.iter().zip(xs).fold(CVec::zeros(n), |acc, (t, v)| acc + v * c(*t));
    let nx2: f64 = x.iter().map(|t| t * t).sum();
    if nx2 == 0.0 {
        return Err(MhsError::Shape("pullback along zero".into()));
    }
    let mut pull: Vec<CVec> = ys.to_vec();
    pull.push(xi);
    let pull_space = Subspace::span(n, &pull);
    // L: W_-2 + span(ξ_x) → C², (Σ t_i a_i + t ξ_x) ↦ (Σ y_i t_i, t)
    let real = CMat::from_columns(&[ys.to_vec(), xs.to_vec()].concat());
    let real_inv = real.try_inverse().ok_or_else(|| MhsError::Shape("singular real basis".into()))?;
    let s = ys.len();
    let map = |v: &CVec| -> CVec {
        let co = &real_inv * v;
        let lo: Complex64 = y.iter().enumerate().map(|(i, t)| co[i] * c(*t)).sum();
        let hi: Complex64 = x.iter().enumerate().map(|(j, t)| co[s + j] * c(*t)).sum::<Complex64>() / c(nx2);
        CVec::from_vec(vec![lo, hi])
    };
    let f0 = w.hodge_space(0).intersect(&pull_space);
    let f0e: Vec<CVec> = f0.vectors().iter().map(map).collect();
    use std::collections::BTreeMap;
    let e0 = CVec::from_vec(vec![c(1.0), c(0.0)]);
    let e1 = CVec::from_vec(vec![c(0.0), c(1.0)]);
    let mut wt = BTreeMap::new();
    wt.insert(-2, vec![e0.clone()]);
    wt.insert(0, vec![e1.clone()]);
    let mut hd = BTreeMap::new();
    hd.insert(0, f0e);
    hd.insert(-1, vec![e0, e1]);
    MixedHSC::new(2, wt, hd, None)
}

/// Carlson class of [`extension_along`].
pub fn carlson_along(w: &MixedHSC, x: &[f64], y: &[f64]) -> Result<TateExtClass, MhsError> {
    carlson_class(&extension_along(w, x, y)?)
}
