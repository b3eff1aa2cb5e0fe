use nalgebra::DVector;

use super::distance::{congruence, iota_zeta_from, zeta_from};
use super::{
    check_dims, Flag, FlagType, GeometryError, HyperplaneFlag, LineFlag, Point, REGULARITY_FLOOR,
};
use crate::field::Scalar;
use crate::linalg::abs_inner;

/// `ζ₀ = d_α(Z) = √(d / (2(d−1)))`.
pub fn zeta0(dim: usize) -> f64 {
    let d = dim as f64;
    (d / (2.0 * (d - 1.0))).sqrt()
}

/// Unit direction at the basepoint of a flag seen from `p` (translated by
/// `p^{-1/2}`), together with the sign of its model vector: `+1` for a line
/// (type ζ), `−1` for a hyperplane (type ιζ, represented by its unit normal).
fn translated<T: Scalar>(p: &Point<T>, flag: &Flag<T>) -> Result<(DVector<T>, f64), GeometryError> {
    let v = match flag {
        Flag::Line(l) => {
            check_dims(p.dim(), l.dim())?;
            (p.inv_sqrt() * l.vector(), 1.0)
        }
        Flag::Hyperplane(h) => {
            check_dims(p.dim(), h.dim())?;
            // The covector u ↦ u p^{1/2}; its dual vector is p^{1/2} conj(u).
            (p.sqrt() * h.covector().conjugate(), -1.0)
        }
    };
    let norm = v.0.norm();
    if !(norm > 0.0) {
        return Err(GeometryError::Invalid("degenerate flag".into()));
    }
    Ok((v.0.unscale(norm), v.1))
}

/// Cosine of the Riemannian angle at `p` between the ideal points of two flags.
///
/// With unit translated directions `x, y` and `c = |⟨x, y⟩|²`, the model vectors are
/// `±(d xx† − I)`; their normalized trace pairing is `±(d c − 1)/(d − 1)`, with the
/// sign negative exactly when one flag is a line and the other a hyperplane.
pub fn cos_angle<T: Scalar>(
    p: &Point<T>,
    f1: &Flag<T>,
    f2: &Flag<T>,
) -> Result<f64, GeometryError> {
    let (x, sx) = translated(p, f1)?;
    let (y, sy) = translated(p, f2)?;
    let d = p.dim() as f64;
    let c = abs_inner(&x, &y).powi(2).min(1.0);
    Ok((sx * sy * (d * c - 1.0) / (d - 1.0)).clamp(-1.0, 1.0))
}

/// The angle whose cosine is [`cos_angle`], in radians.
///
/// Evaluated as `2 atan2(√(1 − cos), √(1 + cos))` with `1 − |⟨x, y⟩|²` taken from
/// the residual of `y` against `x`, so angles near `0` and `π` keep full relative
/// accuracy.
pub fn angle<T: Scalar>(p: &Point<T>, f1: &Flag<T>, f2: &Flag<T>) -> Result<f64, GeometryError> {
    let (x, sx) = translated(p, f1)?;
    let (y, sy) = translated(p, f2)?;
    let d = p.dim() as f64;
    let residual = (&y - &x * x.dotc(&y)).norm_squared().min(1.0);
    let near = (d * residual / (d - 1.0)).min(2.0);
    let (one_minus, one_plus) = if sx * sy > 0.0 {
        (near, 2.0 - near)
    } else {
        (2.0 - near, near)
    };
    Ok(2.0 * one_minus.sqrt().atan2(one_plus.sqrt()))
}

fn flag_of<T: Scalar>(
    x: &Point<T>,
    to: &Point<T>,
    kind: FlagType,
    floor: f64,
) -> Result<Flag<T>, GeometryError> {
    let c = congruence(x, to)?;
    Ok(match kind {
        FlagType::Zeta => Flag::Line(zeta_from(x, &c, floor)?),
        FlagType::IotaZeta => Flag::Hyperplane(iota_zeta_from(x, &c, floor)?),
    })
}

/// `∠_x(type_a(xa), type_b(xb))` in radians.
pub fn segment_zeta_angle<T: Scalar>(
    x: &Point<T>,
    a: &Point<T>,
    b: &Point<T>,
    type_a: FlagType,
    type_b: FlagType,
) -> Result<f64, GeometryError> {
    segment_zeta_angle_with(x, a, b, type_a, type_b, REGULARITY_FLOOR)
}

pub fn segment_zeta_angle_with<T: Scalar>(
    x: &Point<T>,
    a: &Point<T>,
    b: &Point<T>,
    type_a: FlagType,
    type_b: FlagType,
    floor: f64,
) -> Result<f64, GeometryError> {
    let fa = flag_of(x, a, type_a, floor)?;
    let fb = flag_of(x, b, type_b, floor)?;
    angle(x, &fa, &fb)
}

pub fn is_transverse<T: Scalar>(
    p: &Point<T>,
    hyp: &HyperplaneFlag<T>,
    line: &LineFlag<T>,
) -> Result<bool, GeometryError> {
    is_transverse_with(p, hyp, line, 0.0)
}

/// Transverse iff `cos ∠_p(hyp, line) < 1/(d−1) − margin`.
pub fn is_transverse_with<T: Scalar>(
    p: &Point<T>,
    hyp: &HyperplaneFlag<T>,
    line: &LineFlag<T>,
    margin: f64,
) -> Result<bool, GeometryError> {
    let cos = cos_angle(p, &Flag::Hyperplane(hyp.clone()), &Flag::Line(line.clone()))?;
    Ok(cos < 1.0 / (p.dim() as f64 - 1.0) - margin)
}

fn asech(x: f64) -> f64 {
    // asech(x) = atanh(√(1 − x²)) for 0 < x ≤ 1.
    (1.0 - x * x).max(0.0).sqrt().atanh()
}

/// Distance from `q` to the parallel set `P(hyp, line)`, by inverting
/// `(d−1) cos θ + d sech²(dist) = 1`.
pub fn dist_to_parallel_set<T: Scalar>(
    q: &Point<T>,
    hyp: &HyperplaneFlag<T>,
    line: &LineFlag<T>,
) -> Result<f64, GeometryError> {
    let d = q.dim() as f64;
    let cos = cos_angle(q, &Flag::Hyperplane(hyp.clone()), &Flag::Line(line.clone()))?;
    let threshold = 1.0 / (d - 1.0);
    if !(cos < threshold) {
        return Err(GeometryError::NotTransverse { cos, threshold });
    }
    let sech_sq = ((1.0 - (d - 1.0) * cos) / d).min(1.0);
    Ok(asech(sech_sq.sqrt()))
}

/// Upper bound `min{D, (e^D − 1) e^{−S}}` on the distance to a parallel set after
/// moving `d_α`-distance `S` towards its line.
pub fn ray_to_parallel_bound(d: f64, s: f64) -> f64 {
    d.min(d.exp_m1() * (-s).exp())
}

/// Lipschitz bound `ζ₀ D / sinh(S − D)` on ζ-angles seen from a point.
pub fn zeta_angle_bound(s: f64, d: f64, dim: usize) -> Result<f64, GeometryError> {
    if !(d >= 0.0) || !(s > d) {
        return Err(GeometryError::InvalidRange(format!(
            "need S > D >= 0, got S = {s}, D = {d}"
        )));
    }
    Ok(zeta0(dim) * d / (s - d).sinh())
}

/// `−½ log(|e₁|_{y⁻¹} |e²|_y)` with `|v|_M = v† M v`: the Busemann difference
/// `b(I) − b(y)` for the flag `([e₁], ker e²)`.
pub fn busemann_gap_standard<T: Scalar>(y: &Point<T>) -> f64 {
    let inv = y.inverse_matrix();
    -0.5 * (inv[(0, 0)].real() * y.matrix()[(1, 1)].real()).ln()
}

/// The same Busemann difference for the flag `([line], ker covector)` based at `I`.
pub fn busemann_gap<T: Scalar>(
    y: &Point<T>,
    line: &LineFlag<T>,
    covector: &HyperplaneFlag<T>,
) -> f64 {
    let v = line.vector();
    let u = covector.covector();
    let inv = y.inverse_matrix();
    let line_term = v.dotc(&(&inv * v)).real();
    let co_term = (u.transpose() * y.matrix() * u.conjugate())[(0, 0)].real();
    -0.5 * (line_term * co_term).ln()
}
