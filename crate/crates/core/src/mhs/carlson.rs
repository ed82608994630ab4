//! Extensions of `𝟙` by `𝟙(n)` and their classes in `C/(2πi)^n R`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::structure::MixedHSC;
use super::MhsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TateExtClass {
    pub n: i64,
    pub value: Complex64,
}

impl TateExtClass {
    pub fn new(n: i64, value: Complex64) -> Self {
        TateExtClass { n, value }
    }

    /// Generator direction `i^n` of the lattice `(2πi)^n R`.
    pub fn lattice_direction(&self) -> Complex64 {
        Complex64::i().powi(self.n.rem_euclid(4) as i32)
    }

    pub fn lattice_generator(&self) -> Complex64 {
        Complex64::new(0.0, 2.0 * PI).powi(self.n as i32)
    }

    /// Canonical representative: the component orthogonal to the lattice line.
    pub fn reduced(&self) -> Complex64 {
        let d = self.lattice_direction();
        self.value - d * (self.value * d.conj()).re
    }

    /// Real coordinate of the reduced value along `i^{n−1}`.
    pub fn invariant(&self) -> f64 {
        let d = self.lattice_direction() * Complex64::new(0.0, -1.0);
        (self.value * d.conj()).re
    }

    pub fn equivalent(&self, o: &TateExtClass, tol: f64) -> bool {
        self.n == o.n && (self.reduced() - o.reduced()).norm() <= tol * (1.0 + self.value.norm())
    }

    pub fn is_trivial(&self, tol: f64) -> bool {
        self.reduced().norm() <= tol * (1.0 + self.value.norm())
    }
}

struct TateShape {
    n: i64,
    v: nalgebra::DVector<Complex64>,
    u: nalgebra::DVector<Complex64>,
}

fn tate_shape(e: &MixedHSC) -> Result<TateShape, MhsError> {
    let keys = e.weight_keys();
    let shape_err = || MhsError::Shape(format!("expected graded pieces 1(n), 1 with n >= 1, weights {keys:?}"));
    if e.dim() != 2 || keys.len() != 2 || keys[1] != 0 || keys[0] >= 0 || keys[0] % 2 != 0 {
        return Err(shape_err());
    }
    let (lo, hi) = (e.real_generators(keys[0]), e.real_generators(0));
    if lo.len() != 1 || hi.len() != 1 {
        return Err(shape_err());
    }
    Ok(TateShape {
        n: -keys[0] / 2,
        v: lo[0].clone(),
        u: hi[0].clone(),
    })
}

/// `s_F(1) − s_W(1)` in units of the `𝟙(n)` generator `(2πi)^n`, where `s_W(1) = u`.
pub fn carlson_class(e: &MixedHSC) -> Result<TateExtClass, MhsError> {
    carlson_class_with_section(e, 0.0)
}

/// As [`carlson_class`] with the real lift `s_W(1) = u + t·v`.
pub fn carlson_class_with_section(e: &MixedHSC, t: f64) -> Result<TateExtClass, MhsError> {
    let sh = tate_shape(e)?;
    let f0 = e.hodge_space(0);
    if f0.dim() != 1 {
        return Err(MhsError::Shape(format!("F^0 has dimension {}, expected 1", f0.dim())));
    }
    // prefer a stored generator so exact inputs give exact classes
    let f = match e.hodge_generators(0) {
        Some([g]) => g.clone(),
        _ => f0.vectors().remove(0),
    };
    let det = |a: &nalgebra::DVector<Complex64>, b: &nalgebra::DVector<Complex64>| a[0] * b[1] - a[1] * b[0];
    let d = det(&sh.v, &sh.u);
    let beta = det(&f, &sh.u) / d;
    let alpha = det(&sh.v, &f) / d;
    if alpha.norm() < 1e-12 * (alpha.norm() + beta.norm()) {
        return Err(MhsError::Shape("F^0 does not surject onto the weight 0 piece".into()));
    }
    // s_F(1) = f/α = u + (β/α) v; s_W(1) = u + t v
    let coeff = beta / alpha - Complex64::new(t, 0.0);
    let gen = TateExtClass::new(sh.n, Complex64::new(0.0, 0.0)).lattice_generator();
    Ok(TateExtClass::new(sh.n, coeff * gen))
}

/// Extension of `𝟙` by `𝟙(n)` with class `c`, written in the real basis `gens` (columns
/// `[v, u]`). Ambient coordinates are `gens` applied to `(x_v, x_u)`.
pub fn tate_extension(
    n: i64,
    c: Complex64,
    gens: &nalgebra::DMatrix<Complex64>,
) -> Result<MixedHSC, MhsError> {
    use std::collections::BTreeMap;
    if n < 1 {
        return Err(MhsError::Shape(format!("Tate twist {n} must be positive")));
    }
    let gen = TateExtClass::new(n, c).lattice_generator();
    let v = gens.column(0).into_owned();
    let u = gens.column(1).into_owned();
    let f = &u + &v * (c / gen);
    let mut w = BTreeMap::new();
    w.insert(-2 * n, vec![v.clone()]);
    w.insert(0, vec![u.clone()]);
    let mut h = BTreeMap::new();
    h.insert(0, vec![f.clone()]);
    h.insert(-n, vec![u, v]);
    MixedHSC::new(2, w, h, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    #[test]
    fn split_and_lattice() {
        let id = DMatrix::<Complex64>::identity(2, 2);
        let e = tate_extension(1, Complex64::new(0.0, 0.0), &id).unwrap();
        let c = carlson_class(&e).unwrap();
        assert_eq!(c.value, Complex64::new(0.0, 0.0));
        let e = tate_extension(1, Complex64::new(0.0, 2.0 * PI * 0.37), &id).unwrap();
        assert!(carlson_class(&e).unwrap().is_trivial(1e-12));
        let e = tate_extension(2, Complex64::new(1.5, 0.0), &id).unwrap();
        // (2πi)^2 is real, so real values are trivial for n = 2
        assert!(carlson_class(&e).unwrap().is_trivial(1e-12));
    }

    #[test]
    fn section_independence() {
        let g = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(1.0, 0.3), Complex64::new(-0.2, 1.0),
            Complex64::new(0.5, -0.7), Complex64::new(2.0, 0.1),
        ]);
        let c = Complex64::new(0.4, -1.3);
        let e = tate_extension(1, c, &g).unwrap();
        let a = carlson_class_with_section(&e, 0.0).unwrap();
        let b = carlson_class_with_section(&e, 0.77).unwrap();
        assert!(a.equivalent(&b, 1e-10));
        assert!(a.equivalent(&TateExtClass::new(1, c), 1e-10));
        assert!((a.invariant() - 0.4).abs() < 1e-10);
    }

    #[test]
    fn wrong_shape() {
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert!(matches!(tate_extension(0, Complex64::new(1.0, 0.0), &id), Err(MhsError::Shape(_))));
    }
}
