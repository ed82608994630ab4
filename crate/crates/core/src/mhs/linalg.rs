//! Subspaces of `C^n` held by orthonormal bases.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Rank tolerance on singular values of unit-normalized spanning sets.
pub const RANK_TOL: f64 = 1e-10;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Column space of `m` as an orthonormal basis, dropping directions below the tolerance.
fn orthonormal_columns(m: &CMat) -> CMat {
    let n = m.nrows();
    let cols: Vec<CVec> = m
        .column_iter()
        .filter_map(|col| {
            let nrm = col.norm();
            (nrm > 1e-300).then(|| col.into_owned() / c(nrm, 0.0))
        })
        .collect();
    if cols.is_empty() {
        return CMat::zeros(n, 0);
    }
    range_basis(CMat::from_columns(&cols))
}

/// Orthonormal basis of the column space by pivoted modified Gram-Schmidt with
/// reorthogonalization; directions whose residual falls below the tolerance (relative to
/// the largest column) are dropped.
fn range_basis(a: CMat) -> CMat {
    let n = a.nrows();
    let mut cols: Vec<CVec> = a.column_iter().map(|c| c.into_owned()).collect();
    let scale = cols.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let mut q: Vec<CVec> = Vec::new();
    while !cols.is_empty() && q.len() < n {
        let (imax, nmax) = cols
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if nmax <= RANK_TOL * scale {
            break;
        }
        let mut v = cols.swap_remove(imax);
        for _ in 0..2 {
            for b in &q {
                let proj = b.dotc(&v);
                v -= b * proj;
            }
        }
        let nv = v.norm();
        if nv <= RANK_TOL * scale {
            continue;
        }
        let v = v / c(nv, 0.0);
        for col in cols.iter_mut() {
            let proj = v.dotc(col);
            *col -= &v * proj;
        }
        q.push(v);
    }
    if q.is_empty() {
        return CMat::zeros(n, 0);
    }
    CMat::from_columns(&q)
}

#[derive(Debug, Clone)]
pub struct Subspace {
    basis: CMat,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            basis: CMat::zeros(n, 0),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            basis: CMat::identity(n, n),
        }
    }

    pub fn from_columns(m: &CMat) -> Self {
        Subspace {
            basis: orthonormal_columns(m),
        }
    }

    pub fn span(n: usize, vecs: &[CVec]) -> Self {
        if vecs.is_empty() {
            return Subspace::zero(n);
        }
        Subspace::from_columns(&CMat::from_columns(vecs))
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<CVec> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let n = self.ambient();
        let mut cols = self.vectors();
        cols.extend(o.vectors());
        Subspace::span(n, &cols)
    }

    pub fn projector(&self) -> CMat {
        &self.basis * self.basis.adjoint()
    }

    /// Orthogonal complement.
    pub fn complement(&self) -> Subspace {
        let n = self.ambient();
        if self.dim() == 0 {
            return Subspace::full(n);
        }
        if self.dim() == n {
            return Subspace::zero(n);
        }
        // no column normalization here: roundoff columns of the projector must stay small
        let q = CMat::identity(n, n) - self.projector();
        Subspace { basis: range_basis(q) }
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        self.complement().sum(&o.complement()).complement()
    }

    /// Distance of `v` from the subspace relative to `|v|`.
    pub fn residual(&self, v: &CVec) -> f64 {
        let nv = v.norm();
        if nv == 0.0 {
            return 0.0;
        }
        let r = v - self.projector() * v;
        r.norm() / nv
    }

    pub fn contains(&self, v: &CVec) -> bool {
        self.residual(v) < 1e-8
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.vectors().iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, o: &Subspace) -> bool {
        self.dim() == o.dim() && self.contains_space(o)
    }

    pub fn image(&self, m: &CMat) -> Subspace {
        if self.dim() == 0 {
            return Subspace::zero(m.nrows());
        }
        Subspace { basis: range_basis(m * &self.basis) }
    }
}

/// Least-squares coordinates of `v` in the columns of `b`, with the residual.
pub fn coordinates(b: &CMat, v: &CVec) -> (CVec, f64) {
    if b.ncols() == 0 {
        return (CVec::zeros(0), v.norm());
    }
    let k = b.ncols();
    if b.nrows() < k {
        let svd = b.clone().svd(true, true);
        let x = svd.solve(v, 1e-13).expect("svd solve");
        let r = (b * &x - v).norm();
        return (x, r);
    }
    let qr = b.clone().qr();
    let qty = qr.q().adjoint() * v;
    let x = qr
        .r()
        .solve_upper_triangular(&qty)
        .unwrap_or_else(|| CVec::zeros(k));
    let r = (b * &x - v).norm();
    (x, r)
}

pub fn conj_mat(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

pub fn conj_vec(v: &CVec) -> CVec {
    v.map(|z| z.conj())
}

pub fn unit(n: usize, k: usize, z: Complex64) -> CVec {
    let mut v = CVec::zeros(n);
    v[k] = z;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_and_sum() {
        let n = 4;
        let a = Subspace::span(n, &[unit(n, 0, c(1.0, 0.0)), unit(n, 1, c(0.0, 1.0))]);
        let mut v = unit(n, 1, c(2.0, 0.0));
        v[2] = c(1.0, -1.0);
        let b = Subspace::span(n, &[v, unit(n, 0, c(3.0, 0.0)) + unit(n, 3, c(0.0, 0.0))]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&unit(n, 0, c(1.0, 0.0))));
        assert_eq!(a.sum(&b).dim(), 3);
        assert_eq!(a.complement().dim(), 2);
        assert!(Subspace::zero(n).intersect(&a).dim() == 0);
        assert!(a.same_as(&a.sum(&Subspace::zero(n))));
    }

    #[test]
    fn dependent_vectors_collapse() {
        let n = 3;
        let v = CVec::from_vec(vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0)]);
        let s = Subspace::span(n, &[v.clone(), v.clone() * c(0.0, 3.0)]);
        assert_eq!(s.dim(), 1);
        let (x, r) = coordinates(&CMat::from_columns(std::slice::from_ref(&v)), &(v * c(2.0, -1.0)));
        assert!(r < 1e-12);
        assert!((x[0] - c(2.0, -1.0)).norm() < 1e-12);
    }
}
