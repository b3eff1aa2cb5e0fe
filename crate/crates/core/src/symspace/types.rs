use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{GeometryError, Tolerances};
use crate::field::Scalar;
use crate::linalg::{self, hermitian_eigen, sorted_svd, spectral_product};

/// An element of `SL(d, K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<T: Scalar> {
    m: DMatrix<T>,
}

impl<T: Scalar> GroupElement<T> {
    pub fn new(m: DMatrix<T>, tol_det: f64) -> Result<Self, GeometryError> {
        if !m.is_square() || m.nrows() < 2 {
            return Err(GeometryError::Shape(format!(
                "group element must be square of size >= 2, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| !z.is_finite()) {
            return Err(GeometryError::Invalid("non-finite matrix entry".into()));
        }
        let det = m.determinant();
        let dev = (det - T::one()).modulus();
        if !(dev <= tol_det) {
            return Err(GeometryError::Determinant {
                deviation: dev,
                tolerance: tol_det,
            });
        }
        Ok(Self { m })
    }

    /// Wraps a product of validated elements without re-checking the determinant.
    pub(crate) fn from_product(m: DMatrix<T>) -> Self {
        Self { m }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.m
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            m: &self.m * &other.m,
        }
    }

    /// Inverse through the singular value decomposition `g = U Σ V†`, so
    /// `g⁻¹ = V Σ⁻¹ U†`.
    pub fn inverse(&self) -> Result<Self, GeometryError> {
        let svd = sorted_svd(&self.m).ok_or(GeometryError::Decomposition("svd"))?;
        if svd.sigma.iter().any(|&s| !(s > 0.0)) {
            return Err(GeometryError::Invalid("singular group element".into()));
        }
        let inv: Vec<f64> = svd.sigma.iter().map(|s| 1.0 / s).collect();
        let mut v = svd.v.clone();
        for (j, &sj) in inv.iter().enumerate() {
            let mut col = v.column_mut(j);
            col *= T::from_real(sj);
        }
        Ok(Self {
            m: v * svd.u.adjoint(),
        })
    }
}

/// A point of the symmetric space: a positive-definite Hermitian matrix of
/// determinant one.
///
/// The point is stored through its spectral decomposition `p = U diag(s²) U†`, which
/// makes `p^{1/2}` and `p^{-1/2}` exact products instead of further eigensolves.
#[derive(Debug, Clone)]
pub struct Point<T: Scalar> {
    u: DMatrix<T>,
    s: Vec<f64>,
    mat: DMatrix<T>,
    sqrt: DMatrix<T>,
    inv_sqrt: DMatrix<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(mat: DMatrix<T>, tol: &Tolerances) -> Result<Self, GeometryError> {
        if !mat.is_square() || mat.nrows() < 2 {
            return Err(GeometryError::Shape(format!(
                "point must be square of size >= 2, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|z| !z.is_finite()) {
            return Err(GeometryError::Invalid("non-finite matrix entry".into()));
        }
        let scale = linalg::max_abs_part(&mat).max(1.0);
        let asym = (&mat - mat.adjoint())
            .iter()
            .map(|z| z.modulus())
            .fold(0.0, f64::max);
        if asym > tol.sym * scale {
            return Err(GeometryError::NotHermitian { deviation: asym });
        }
        let mut herm = mat;
        linalg::hermitianize(&mut herm);
        let (values, vectors) =
            hermitian_eigen(&herm).ok_or(GeometryError::Decomposition("eigen"))?;
        let min = values.last().copied().unwrap_or(0.0);
        if !(min > 0.0) {
            return Err(GeometryError::NotPositive {
                min_eigenvalue: min,
            });
        }
        let det: f64 = values.iter().product();
        if !((det - 1.0).abs() <= tol.det) {
            return Err(GeometryError::Determinant {
                deviation: (det - 1.0).abs(),
                tolerance: tol.det,
            });
        }
        let s = values.iter().map(|l| l.sqrt()).collect();
        Ok(Self::from_spectrum(vectors, s))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_spectrum(DMatrix::identity(dim, dim), vec![1.0; dim])
    }

    /// The point `F F†`, renormalized to determinant one.
    pub fn from_factor(f: &DMatrix<T>) -> Result<Self, GeometryError> {
        let svd = sorted_svd(f).ok_or(GeometryError::Decomposition("svd"))?;
        if svd.sigma.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return Err(GeometryError::NotPositive {
                min_eigenvalue: svd.sigma.last().copied().unwrap_or(0.0),
            });
        }
        Ok(Self::from_spectrum(svd.u, svd.sigma))
    }

    /// The orbit point `g.I = g g†`.
    pub fn orbit(g: &GroupElement<T>) -> Result<Self, GeometryError> {
        Self::from_factor(g.matrix())
    }

    /// `s` are the square roots of the eigenvalues; they are rescaled so that their
    /// product is one.
    fn from_spectrum(u: DMatrix<T>, mut s: Vec<f64>) -> Self {
        let n = s.len() as f64;
        let log_mean = s.iter().map(|x| x.ln()).sum::<f64>() / n;
        for x in &mut s {
            *x = (x.ln() - log_mean).exp();
        }
        let sq: Vec<f64> = s.iter().map(|x| x * x).collect();
        let inv: Vec<f64> = s.iter().map(|x| 1.0 / x).collect();
        let mat = spectral_product(&u, &sq);
        let sqrt = spectral_product(&u, &s);
        let inv_sqrt = spectral_product(&u, &inv);
        Self {
            u,
            s,
            mat,
            sqrt,
            inv_sqrt,
        }
    }

    pub fn dim(&self) -> usize {
        self.s.len()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.mat
    }

    pub fn sqrt(&self) -> &DMatrix<T> {
        &self.sqrt
    }

    pub fn inv_sqrt(&self) -> &DMatrix<T> {
        &self.inv_sqrt
    }

    pub fn inverse_matrix(&self) -> DMatrix<T> {
        let inv: Vec<f64> = self.s.iter().map(|x| 1.0 / (x * x)).collect();
        spectral_product(&self.u, &inv)
    }

    /// Eigenvalues of the matrix, non-increasing.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.s.iter().map(|x| x * x).collect()
    }
}

/// A vector-valued distance: a trace-zero real diagonal with non-increasing
/// entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CartanVector(Vec<f64>);

impl CartanVector {
    pub fn new(a: Vec<f64>, tol: f64) -> Result<Self, GeometryError> {
        if a.len() < 2 {
            return Err(GeometryError::Shape(
                "Cartan vector needs length >= 2".into(),
            ));
        }
        if a.windows(2).any(|w| w[0] < w[1] - tol) {
            return Err(GeometryError::Invalid(
                "Cartan vector is not non-increasing".into(),
            ));
        }
        let trace: f64 = a.iter().sum();
        if trace.abs() > tol {
            return Err(GeometryError::Invalid(format!(
                "Cartan vector has trace {trace}"
            )));
        }
        Ok(Self(a))
    }

    /// Builds a vector from sorted entries, projecting onto trace zero.
    pub(crate) fn from_sorted(mut a: Vec<f64>) -> Self {
        let mean = a.iter().sum::<f64>() / a.len() as f64;
        for x in &mut a {
            *x -= mean;
        }
        Self(a)
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a₁ − a₂`.
    pub fn first_gap(&self) -> f64 {
        self.0[0] - self.0[1]
    }

    /// `a_{d−1} − a_d`.
    pub fn last_gap(&self) -> f64 {
        let n = self.0.len();
        self.0[n - 2] - self.0[n - 1]
    }

    /// Riemannian length `√(2 Σ aᵢ²)`.
    pub fn length(&self) -> f64 {
        (2.0 * self.0.iter().map(|x| x * x).sum::<f64>()).sqrt()
    }

    /// The vector of the reversed segment: `−reverse(a)`.
    pub fn flipped(&self) -> Self {
        Self(self.0.iter().rev().map(|x| -x).collect())
    }
}

/// A point of `KP^{d−1}`: a unit vector up to phase.
#[derive(Debug, Clone, PartialEq)]
pub struct LineFlag<T: Scalar> {
    v: DVector<T>,
}

impl<T: Scalar> LineFlag<T> {
    pub fn new(v: DVector<T>) -> Result<Self, GeometryError> {
        let v = linalg::normalize_phase(&v)
            .ok_or_else(|| GeometryError::Invalid("zero line vector".into()))?;
        Ok(Self { v })
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[i] = T::one();
        Self { v }
    }

    pub fn vector(&self) -> &DVector<T> {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// The line `g·[v]`.
    pub fn transform(&self, g: &GroupElement<T>) -> Result<Self, GeometryError> {
        Self::new(g.matrix() * &self.v)
    }
}

/// A point of the dual projective space: a unit covector `u` up to phase,
/// representing the hyperplane `ker(u)`.
///
/// The covector acts bilinearly: `u(x) = Σ uᵢ xᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneFlag<T: Scalar> {
    u: DVector<T>,
}

impl<T: Scalar> HyperplaneFlag<T> {
    pub fn new(u: DVector<T>) -> Result<Self, GeometryError> {
        let u = linalg::normalize_phase(&u)
            .ok_or_else(|| GeometryError::Invalid("zero covector".into()))?;
        Ok(Self { u })
    }

    /// The hyperplane `ker(eⁱ)`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut u = DVector::zeros(dim);
        u[i] = T::one();
        Self { u }
    }

    pub fn covector(&self) -> &DVector<T> {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// `u(x)`.
    pub fn evaluate(&self, x: &DVector<T>) -> T {
        self.u.dot(x)
    }

    /// The hyperplane `g·ker(u) = ker(u g⁻¹)`.
    pub fn transform(&self, g: &GroupElement<T>) -> Result<Self, GeometryError> {
        let g_inv = g.inverse()?;
        Self::new(g_inv.matrix().transpose() * &self.u)
    }
}

/// Either kind of flag, for angle computations.
#[derive(Debug, Clone, PartialEq)]
pub enum Flag<T: Scalar> {
    Line(LineFlag<T>),
    Hyperplane(HyperplaneFlag<T>),
}

impl<T: Scalar> From<LineFlag<T>> for Flag<T> {
    fn from(f: LineFlag<T>) -> Self {
        Flag::Line(f)
    }
}

impl<T: Scalar> From<HyperplaneFlag<T>> for Flag<T> {
    fn from(f: HyperplaneFlag<T>) -> Self {
        Flag::Hyperplane(f)
    }
}

/// The two boundary types used for angles: `ζ` (attracting line) and `ιζ`
/// (repelling hyperplane).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagType {
    Zeta,
    IotaZeta,
}
