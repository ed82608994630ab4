//! Bifiltered spaces with a real structure.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::{conj_vec, coordinates, CMat, CVec, Subspace};
use super::MhsError;

/// A finite-dimensional mixed Hodge structure over `R` in coordinates.
///
/// `weights[k]` holds the real generators added at weight `k`, so `W_k` is spanned by all
/// generators with key `≤ k`. `hodge[p]` spans `F^p` for `p` in `(previous key, p]`; above
/// the largest key `F^p = 0`, below the smallest `F^p = V`.
#[derive(Debug, Clone)]
pub struct MixedHSC {
    n: usize,
    weights: BTreeMap<i64, Vec<CVec>>,
    hodge: BTreeMap<i64, Vec<CVec>>,
    idempotent: Option<CMat>,
    real: CMat,
    real_inv: CMat,
}

impl MixedHSC {
    pub fn new(
        n: usize,
        weights: BTreeMap<i64, Vec<CVec>>,
        hodge: BTreeMap<i64, Vec<CVec>>,
        idempotent: Option<CMat>,
    ) -> Result<Self, MhsError> {
        let gens: Vec<CVec> = weights.values().flatten().cloned().collect();
        if gens.len() != n || gens.iter().chain(hodge.values().flatten()).any(|v| v.len() != n) {
            return Err(MhsError::Invalid(format!(
                "expected {n} real generators of length {n}, got {}",
                gens.len()
            )));
        }
        if let Some(p) = &idempotent {
            if p.nrows() != n || p.ncols() != n {
                return Err(MhsError::Invalid("idempotent has wrong size".into()));
            }
        }
        let real = if n == 0 { CMat::zeros(0, 0) } else { CMat::from_columns(&gens) };
        let real_inv = real
            .clone()
            .try_inverse()
            .ok_or_else(|| MhsError::Invalid("real generators are dependent".into()))?;
        let m = MixedHSC {
            n,
            weights,
            hodge,
            idempotent,
            real,
            real_inv,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn weight_keys(&self) -> Vec<i64> {
        self.weights
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, _)| *k)
            .collect()
    }

    /// The spanning vectors stored for the step containing `F^p`, if any.
    pub fn hodge_generators(&self, p: i64) -> Option<&[CVec]> {
        let lo = *self.hodge.keys().next()?;
        if p < lo {
            return None;
        }
        self.hodge.range(p..).next().map(|(_, v)| v.as_slice())
    }

    pub fn hodge_keys(&self) -> Vec<i64> {
        self.hodge.keys().copied().collect()
    }

    pub fn real_generators(&self, k: i64) -> &[CVec] {
        self.weights.get(&k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn idempotent(&self) -> Option<&CMat> {
        self.idempotent.as_ref()
    }

    /// Columns are the real generators in weight order.
    pub fn real_basis(&self) -> &CMat {
        &self.real
    }

    pub fn conj(&self, v: &CVec) -> CVec {
        &self.real * conj_vec(&(&self.real_inv * v))
    }

    pub fn conj_space(&self, s: &Subspace) -> Subspace {
        Subspace::span(self.n, &s.vectors().iter().map(|v| self.conj(v)).collect::<Vec<_>>())
    }

    pub fn weight_space(&self, k: i64) -> Subspace {
        let v: Vec<CVec> = self.weights.range(..=k).flat_map(|(_, g)| g.iter().cloned()).collect();
        Subspace::span(self.n, &v)
    }

    pub fn hodge_space(&self, p: i64) -> Subspace {
        match self.hodge.range(p..).next() {
            None => Subspace::zero(self.n),
            Some((_, v)) => {
                if self.hodge.keys().next().is_some_and(|&lo| p < lo) {
                    Subspace::full(self.n)
                } else {
                    Subspace::span(self.n, v)
                }
            }
        }
    }

    fn hodge_range(&self) -> (i64, i64) {
        let lo = self.hodge.keys().next().copied().unwrap_or(0);
        let hi = self.hodge.keys().last().copied().unwrap_or(0);
        (lo, hi)
    }

    pub fn validate(&self) -> Result<(), MhsError> {
        let (lo, hi) = self.hodge_range();
        // Hodge filtration decreasing
        let mut prev: Option<Subspace> = None;
        for (&p, v) in self.hodge.iter().rev() {
            let s = Subspace::span(self.n, v);
            if let Some(q) = &prev {
                if !s.contains_space(q) {
                    return Err(MhsError::Invalid(format!("F^{p} does not contain the next step")));
                }
            }
            prev = Some(s);
        }
        // purity of each graded piece
        for k in self.weight_keys() {
            let below = self.weight_space(k - 1);
            let wk = self.weight_space(k);
            let g = self.real_generators(k).len();
            let base = below.dim();
            let p_lo = lo.min(k + 1 - hi) - 1;
            let p_hi = hi.max(k + 1 - lo) + 1;
            for p in p_lo..=p_hi {
                let fp = self.hodge_space(p).intersect(&wk);
                let cq = self.conj_space(&self.hodge_space(k + 1 - p)).intersect(&wk);
                let a = fp.sum(&below).dim() - base;
                let b = cq.sum(&below).dim() - base;
                let c = fp.sum(&cq).sum(&below).dim() - base;
                if a + b != g || c != g {
                    return Err(MhsError::Invalid(format!(
                        "graded piece of weight {k} is not pure (p = {p}: {a} + {b}, span {c}, expected {g})"
                    )));
                }
            }
        }
        if let Some(pm) = &self.idempotent {
            if (pm * pm - pm).norm() > 1e-9 * (1.0 + pm.norm()) {
                return Err(MhsError::Invalid("coefficient projector is not idempotent".into()));
            }
            if (self.conj_matrix(pm) - pm).norm() > 1e-9 * (1.0 + pm.norm())
                && (self.conj_matrix(pm) - (CMat::identity(self.n, self.n) - pm)).norm()
                    > 1e-9 * (1.0 + pm.norm())
            {
                return Err(MhsError::Invalid(
                    "conjugation neither fixes nor swaps the coefficient projector".into(),
                ));
            }
            let mut spaces: Vec<(String, Subspace)> = self
                .weight_keys()
                .into_iter()
                .map(|k| (format!("W_{k}"), self.weight_space(k)))
                .collect();
            spaces.extend(self.hodge.keys().map(|&p| (format!("F^{p}"), self.hodge_space(p))));
            for (name, s) in spaces {
                if !s.contains_space(&s.image(pm)) {
                    return Err(MhsError::Invalid(format!("projector does not preserve {name}")));
                }
            }
        }
        Ok(())
    }

    /// `x ↦ conj(M conj(x))`, the matrix of the conjugate map.
    pub fn conj_matrix(&self, m: &CMat) -> CMat {
        let r = &self.real;
        let ri = &self.real_inv;
        // conj∘M∘conj = R·conj(R⁻¹ M R)·R⁻¹
        let inner = ri * m * r;
        r * inner.map(|z| z.conj()) * ri
    }

    /// Sub-structure on the span of `gens` (weight-labeled real vectors), in the
    /// coordinates given by those vectors.
    pub fn restrict(&self, gens: &[(i64, CVec)]) -> Result<MixedHSC, MhsError> {
        let m = gens.len();
        let b = if m == 0 {
            CMat::zeros(self.n, 0)
        } else {
            CMat::from_columns(&gens.iter().map(|g| g.1.clone()).collect::<Vec<_>>())
        };
        let span = Subspace::from_columns(&b);
        if span.dim() != m {
            return Err(MhsError::Shape("restriction generators are dependent".into()));
        }
        let coord = |v: &CVec| -> Result<CVec, MhsError> {
            let (x, r) = coordinates(&b, v);
            if r > 1e-8 * (1.0 + v.norm()) {
                return Err(MhsError::Shape(format!("vector outside the restricted span (residual {r:.2e})")));
            }
            Ok(x)
        };
        let mut weights: BTreeMap<i64, Vec<CVec>> = BTreeMap::new();
        for (i, (k, _)) in gens.iter().enumerate() {
            weights.entry(*k).or_default().push(super::linalg::unit(m, i, Complex64::new(1.0, 0.0)));
        }
        let mut hodge = BTreeMap::new();
        for &p in self.hodge.keys() {
            let f = self.hodge_space(p).intersect(&span);
            let v = f.vectors().iter().map(coord).collect::<Result<Vec<_>, _>>()?;
            hodge.insert(p, v);
        }
        let idem = match &self.idempotent {
            None => None,
            Some(pm) => {
                let cols = (0..m)
                    .map(|i| coord(&(pm * b.column(i))))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(if m == 0 { CMat::zeros(0, 0) } else { CMat::from_columns(&cols) })
            }
        };
        // reorder generators by weight so the real basis follows weight order
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| gens[i].0);
        if order.iter().enumerate().any(|(a, &b)| a != b) {
            return Err(MhsError::Shape("restriction generators must be listed in weight order".into()));
        }
        MixedHSC::new(m, weights, hodge, idem)
    }

    pub fn to_fixture(&self) -> MhsFixture {
        let fmt = |v: &CVec| -> Vec<[String; 2]> {
            v.iter().map(|z| [format!("{:.17e}", z.re), format!("{:.17e}", z.im)]).collect()
        };
        MhsFixture {
            dim: self.n,
            weights: self
                .weights
                .iter()
                .map(|(k, v)| {
                    let vs = v.iter().map(|x| fmt(x).into_iter().map(Entry::Complex).collect()).collect();
                    (k.to_string(), vs)
                })
                .collect(),
            hodge: self
                .hodge
                .iter()
                .map(|(k, v)| (k.to_string(), v.iter().map(fmt).collect()))
                .collect(),
            idempotent: self.idempotent.as_ref().map(|p| {
                p.row_iter()
                    .map(|r| r.iter().map(|z| [format!("{:.17e}", z.re), format!("{:.17e}", z.im)]).collect())
                    .collect()
            }),
        }
    }
}

/// JSON fixture: weight vectors carry rational entries (`"3/2"`, `"-1"`) or `[re, im]`
/// pairs, Hodge vectors carry `[re, im]` decimal string pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MhsFixture {
    pub dim: usize,
    pub weights: BTreeMap<String, Vec<Vec<Entry>>>,
    pub hodge: BTreeMap<String, Vec<Vec<[String; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent: Option<Vec<Vec<[String; 2]>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Rational(String),
    Complex([String; 2]),
}

fn parse_rational(s: &str) -> Result<f64, MhsError> {
    let bad = || MhsError::Fixture(format!("bad rational entry {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(n as f64 / d as f64)
        }
        None => s.trim().parse::<i64>().map(|n| n as f64).map_err(|_| bad()),
    }
}

fn parse_pair(p: &[String; 2]) -> Result<Complex64, MhsError> {
    let f = |s: &str| s.trim().parse::<f64>().map_err(|_| MhsError::Fixture(format!("bad decimal {s:?}")));
    Ok(Complex64::new(f(&p[0])?, f(&p[1])?))
}

fn parse_key(k: &str) -> Result<i64, MhsError> {
    k.trim().parse().map_err(|_| MhsError::Fixture(format!("bad filtration index {k:?}")))
}

impl MhsFixture {
    pub fn to_mhs(&self) -> Result<MixedHSC, MhsError> {
        let mut weights = BTreeMap::new();
        for (k, vs) in &self.weights {
            let vecs = vs
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|e| match e {
                            Entry::Rational(s) => parse_rational(s).map(|x| Complex64::new(x, 0.0)),
                            Entry::Complex(p) => parse_pair(p),
                        })
                        .collect::<Result<Vec<_>, _>>()
                        .map(CVec::from_vec)
                })
                .collect::<Result<Vec<_>, _>>()?;
            weights.insert(parse_key(k)?, vecs);
        }
        let mut hodge = BTreeMap::new();
        for (k, vs) in &self.hodge {
            let vecs = vs
                .iter()
                .map(|v| v.iter().map(parse_pair).collect::<Result<Vec<_>, _>>().map(CVec::from_vec))
                .collect::<Result<Vec<_>, _>>()?;
            hodge.insert(parse_key(k)?, vecs);
        }
        let idem = match &self.idempotent {
            None => None,
            Some(rows) => {
                let n = self.dim;
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(MhsError::Fixture("idempotent must be dim x dim".into()));
                }
                let mut m = CMat::zeros(n, n);
                for (i, r) in rows.iter().enumerate() {
                    for (j, e) in r.iter().enumerate() {
                        m[(i, j)] = parse_pair(e)?;
                    }
                }
                Some(m)
            }
        };
        MixedHSC::new(self.dim, weights, hodge, idem)
    }

    pub fn from_json(s: &str) -> Result<MixedHSC, MhsError> {
        let f: MhsFixture = serde_json::from_str(s).map_err(|e| MhsError::Fixture(e.to_string()))?;
        f.to_mhs()
    }
}
