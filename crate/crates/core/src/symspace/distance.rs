use nalgebra::{DMatrix, DVector};

use super::{
    check_dims, CartanVector, GeometryError, GroupElement, HyperplaneFlag, LineFlag, Point,
    REGULARITY_FLOOR,
};
use crate::field::Scalar;
use crate::linalg::sorted_svd;

/// Congruence data of the segment `pq`: the vector-valued distance and the
/// eigenvectors of `p^{-1/2} q p^{-1/2}` ordered by decreasing eigenvalue.
pub(crate) struct Congruence<T: Scalar> {
    pub a: CartanVector,
    pub w: DMatrix<T>,
    pub v: DMatrix<T>,
    pub sigma: Vec<f64>,
}

pub(crate) fn congruence<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
) -> Result<Congruence<T>, GeometryError> {
    check_dims(p.dim(), q.dim())?;
    let b = p.inv_sqrt() * q.sqrt();
    let svd = sorted_svd(&b).ok_or(GeometryError::Decomposition("svd"))?;
    if svd.sigma.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
        return Err(GeometryError::Decomposition("svd"));
    }
    // Eigenvalues of B B† are σ², so a = ½ log σ² = log σ.
    let a = CartanVector::from_sorted(svd.sigma.iter().map(|s| s.ln()).collect());
    Ok(Congruence {
        a,
        w: svd.u,
        v: svd.v,
        sigma: svd.sigma,
    })
}

/// `g.p = g p g†`, renormalized to determinant one.
pub fn act<T: Scalar>(g: &GroupElement<T>, p: &Point<T>) -> Result<Point<T>, GeometryError> {
    check_dims(g.dim(), p.dim())?;
    Point::from_factor(&(g.matrix() * p.sqrt()))
}

/// Vector-valued distance `d⃗(p, q)`: half the sorted logarithms of the
/// eigenvalues of `p^{-1/2} q p^{-1/2}`.
pub fn vec_distance<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Result<CartanVector, GeometryError> {
    Ok(congruence(p, q)?.a)
}

pub fn riem_distance<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Result<f64, GeometryError> {
    Ok(vec_distance(p, q)?.length())
}

/// Root pseudometric `d_α(p, q) = a₁ − a₂`.
pub fn d_alpha<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Result<f64, GeometryError> {
    Ok(vec_distance(p, q)?.first_gap())
}

/// Geodesic midpoint `p^{1/2} (p^{-1/2} q p^{-1/2})^{1/2} p^{1/2}`.
pub fn midpoint<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Result<Point<T>, GeometryError> {
    let c = congruence(p, q)?;
    // (p^{-1/2} q p^{-1/2})^{1/2} = W Σ W†, so the midpoint is F F† with F = p^{1/2} W Σ^{1/2}.
    let mut f = p.sqrt() * &c.w;
    for (j, s) in c.sigma.iter().enumerate() {
        let mut col = f.column_mut(j);
        col *= T::from_real(s.sqrt());
    }
    Point::from_factor(&f)
}

pub fn zeta_flag<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Result<LineFlag<T>, GeometryError> {
    zeta_flag_with(p, q, REGULARITY_FLOOR)
}

/// Attracting line `ζ(pq)`: `p^{1/2}` applied to the top eigenvector of
/// `p^{-1/2} q p^{-1/2}`.
pub fn zeta_flag_with<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
    floor: f64,
) -> Result<LineFlag<T>, GeometryError> {
    let c = congruence(p, q)?;
    zeta_from(p, &c, floor)
}

pub(crate) fn zeta_from<T: Scalar>(
    p: &Point<T>,
    c: &Congruence<T>,
    floor: f64,
) -> Result<LineFlag<T>, GeometryError> {
    let gap = c.a.first_gap();
    if !(gap > floor) {
        return Err(GeometryError::NotRegular { gap, floor });
    }
    let w: DVector<T> = c.w.column(0).into_owned();
    LineFlag::new(p.sqrt() * w)
}

pub fn iota_zeta_flag<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
) -> Result<HyperplaneFlag<T>, GeometryError> {
    iota_zeta_flag_with(p, q, REGULARITY_FLOOR)
}

/// Repelling hyperplane `ιζ(pq)`: the covector `w† p^{-1/2}` for the bottom
/// eigenvector `w` of `p^{-1/2} q p^{-1/2}`.
pub fn iota_zeta_flag_with<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
    floor: f64,
) -> Result<HyperplaneFlag<T>, GeometryError> {
    let c = congruence(p, q)?;
    iota_zeta_from(p, &c, floor)
}

pub(crate) fn iota_zeta_from<T: Scalar>(
    p: &Point<T>,
    c: &Congruence<T>,
    floor: f64,
) -> Result<HyperplaneFlag<T>, GeometryError> {
    let gap = c.a.last_gap();
    if !(gap > floor) {
        return Err(GeometryError::NotRegular { gap, floor });
    }
    let last = c.w.ncols() - 1;
    let w: DVector<T> = c.w.column(last).into_owned();
    // Row vector w† P as a column: Pᵀ conj(w).
    HyperplaneFlag::new(p.inv_sqrt().transpose() * w.conjugate())
}

/// `ιζ(qp)` at `q` from the congruence data of `pq`. With `B = p^{-1/2} q^{1/2}`,
/// `q^{-1/2} p^{1/2} = B⁻¹`, whose bottom left singular vector is the top right
/// singular vector of `B`.
pub(crate) fn reverse_iota_zeta_from<T: Scalar>(
    q: &Point<T>,
    c: &Congruence<T>,
    floor: f64,
) -> Result<HyperplaneFlag<T>, GeometryError> {
    let gap = c.a.first_gap();
    if !(gap > floor) {
        return Err(GeometryError::NotRegular { gap, floor });
    }
    let w: DVector<T> = c.v.column(0).into_owned();
    HyperplaneFlag::new(q.inv_sqrt().transpose() * w.conjugate())
}
