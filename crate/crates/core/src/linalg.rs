//! Small dense linear algebra helpers. Matrices are `nalgebra` types; the
//! decompositions are computed by `faer`.

use faer::{Mat, MatRef, Side};
use nalgebra::{DMatrix, DVector};

use crate::field::Scalar;

/// Singular value decomposition `m = U diag(sigma) V†` with `sigma` sorted
/// non-increasing and the columns of `U`, `V` permuted accordingly.
#[derive(Debug, Clone)]
pub struct SortedSvd<T: Scalar> {
    pub u: DMatrix<T>,
    pub sigma: Vec<f64>,
    pub v: DMatrix<T>,
}

fn finite<T: Scalar>(m: &DMatrix<T>) -> bool {
    m.iter().all(|z| {
        let (re, im) = z.parts();
        re.is_finite() && im.is_finite()
    })
}

fn to_faer<T: Scalar>(m: &DMatrix<T>) -> Mat<T> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer<T: Scalar>(m: MatRef<'_, T>, order: &[usize]) -> DMatrix<T> {
    DMatrix::from_fn(m.nrows(), order.len(), |i, j| m[(i, order[j])])
}

fn descending(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    order
}

pub fn sorted_svd<T: Scalar>(m: &DMatrix<T>) -> Option<SortedSvd<T>> {
    if !finite(m) {
        return None;
    }
    let svd = to_faer(m).svd().ok()?;
    let s = svd.S().column_vector();
    let values: Vec<f64> = (0..s.nrows()).map(|i| s[i].parts().0).collect();
    let order = descending(&values);
    Some(SortedSvd {
        u: from_faer(svd.U(), &order),
        sigma: order.iter().map(|&i| values[i]).collect(),
        v: from_faer(svd.V(), &order),
    })
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted
/// non-increasing. Only the lower triangle is read.
pub fn hermitian_eigen<T: Scalar>(m: &DMatrix<T>) -> Option<(Vec<f64>, DMatrix<T>)> {
    if !finite(m) {
        return None;
    }
    let eig = to_faer(m).self_adjoint_eigen(Side::Lower).ok()?;
    let s = eig.S().column_vector();
    let values: Vec<f64> = (0..s.nrows()).map(|i| s[i].parts().0).collect();
    let order = descending(&values);
    Some((
        order.iter().map(|&i| values[i]).collect(),
        from_faer(eig.U(), &order),
    ))
}

/// `U diag(s) U†`.
pub fn spectral_product<T: Scalar>(u: &DMatrix<T>, s: &[f64]) -> DMatrix<T> {
    let mut scaled = u.clone();
    for (j, &sj) in s.iter().enumerate() {
        let mut col = scaled.column_mut(j);
        col *= T::from_real(sj);
    }
    let mut out = &scaled * u.adjoint();
    hermitianize(&mut out);
    out
}

/// Replaces `m` by `(m + m†) / 2`.
pub fn hermitianize<T: Scalar>(m: &mut DMatrix<T>) {
    let n = m.nrows();
    let half = T::from_real(0.5);
    for i in 0..n {
        m[(i, i)] = T::from_real(m[(i, i)].real());
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conjugate()) * half;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conjugate();
        }
    }
}

/// Largest entry modulus, counting real and imaginary parts separately.
pub fn max_abs_part<T: Scalar>(m: &DMatrix<T>) -> f64 {
    m.iter()
        .map(|z| {
            let (re, im) = z.parts();
            re.abs().max(im.abs())
        })
        .fold(0.0, f64::max)
}

/// Normalizes `v` to unit length and fixes its phase so that the first
/// largest-modulus entry is real and positive. Returns `None` for a zero vector.
pub fn normalize_phase<T: Scalar>(v: &DVector<T>) -> Option<DVector<T>> {
    let norm = v.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return None;
    }
    let mut best = 0;
    let mut best_mod = -1.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.modulus();
        if m > best_mod * (1.0 + 1e-12) {
            best = i;
            best_mod = m;
        }
    }
    let pivot = v[best];
    let phase = pivot.conjugate() * T::from_real(1.0 / (pivot.modulus() * norm));
    Some(v * phase)
}

/// `|a† b|`.
pub fn abs_inner<T: Scalar>(a: &DVector<T>, b: &DVector<T>) -> f64 {
    a.dotc(b).modulus()
}

/// A unitary matrix whose first column is `v / |v|`, completed by Gram-Schmidt
/// against the standard basis.
pub fn unitary_with_first_column<T: Scalar>(v: &DVector<T>) -> DMatrix<T> {
    let n = v.len();
    let mut cols: Vec<DVector<T>> = Vec::with_capacity(n);
    cols.push(v.unscale(v.norm()));
    // Visit basis vectors in order of least overlap with v.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| v[i].modulus().total_cmp(&v[j].modulus()));
    for &i in &order {
        if cols.len() == n {
            break;
        }
        let mut e = DVector::<T>::zeros(n);
        e[i] = T::one();
        for _ in 0..2 {
            for c in &cols {
                let proj = c.dotc(&e);
                e -= c * proj;
            }
        }
        let norm = e.norm();
        if norm > 1e-8 {
            cols.push(e.unscale(norm));
        }
    }
    DMatrix::from_columns(&cols)
}

/// Scales `m` by a positive real so that `det(m)` has modulus one.
pub fn unimodular_scale<T: Scalar>(m: &DMatrix<T>) -> DMatrix<T> {
    let n = m.nrows() as f64;
    let det = m.determinant().modulus();
    m.unscale(det.powf(1.0 / n))
}
