#![allow(dead_code)]

use anosov_cert::symspace::{GroupElement, Point};
use anosov_cert::{FieldTag, Scalar};
use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar<T: Scalar>(rng: &mut impl Rng) -> T {
    let re = rng.random_range(-1.0..1.0);
    let im = if T::FIELD == FieldTag::Complex {
        rng.random_range(-1.0..1.0)
    } else {
        0.0
    };
    T::from_parts(re, im).unwrap()
}

pub fn random_matrix<T: Scalar>(rng: &mut impl Rng, d: usize) -> DMatrix<T> {
    DMatrix::from_fn(d, d, |_, _| scalar(rng))
}

pub fn random_vector<T: Scalar>(rng: &mut impl Rng, d: usize) -> DVector<T> {
    let v = DVector::from_fn(d, |_, _| scalar::<T>(rng));
    let n = v.norm();
    v.unscale(n)
}

/// Divides by a `d`-th root of the determinant.
pub fn to_special<T: Scalar>(mut m: DMatrix<T>) -> DMatrix<T> {
    let d = m.nrows();
    let (re, im) = m.determinant().parts();
    if T::FIELD == FieldTag::Real && re < 0.0 {
        m.row_mut(0).neg_mut();
        return to_special(m);
    }
    let r = (re * re + im * im).sqrt().powf(1.0 / d as f64);
    let phi = im.atan2(re) / d as f64;
    let root = T::from_parts(r * phi.cos(), r * phi.sin()).unwrap();
    m.map(|z| z / root)
}

/// `exp(X)` for Hermitian `X`.
pub fn herm_exp<T: Scalar>(x: &DMatrix<T>) -> DMatrix<T> {
    let eig = x.clone().symmetric_eigen();
    let e = eig.eigenvalues.map(|l| l.exp());
    let u = &eig.eigenvectors;
    u * DMatrix::from_diagonal(&e.map(|l| T::from_parts(l, 0.0).unwrap())) * u.adjoint()
}

/// `f` applied to the spectrum of a Hermitian matrix.
pub fn herm_fn<T: Scalar>(x: &DMatrix<T>, f: impl Fn(f64) -> f64) -> DMatrix<T> {
    let eig = x.clone().symmetric_eigen();
    let u = &eig.eigenvectors;
    let e = eig.eigenvalues.map(|l| T::from_parts(f(l), 0.0).unwrap());
    u * DMatrix::from_diagonal(&e) * u.adjoint()
}

/// Random Hermitian matrix with trace zero.
pub fn random_traceless<T: Scalar>(rng: &mut impl Rng, d: usize) -> DMatrix<T> {
    let m = random_matrix::<T>(rng, d);
    let h = (&m + m.adjoint()).map(|z| z * T::from_parts(0.5, 0.0).unwrap());
    let tr = h.trace().parts().0 / d as f64;
    &h - DMatrix::identity(d, d).map(|z: T| z * T::from_parts(tr, 0.0).unwrap())
}

/// Random element of `SL(d)` whose orbit point lies at distance of order `spread`.
pub fn random_sl<T: Scalar>(rng: &mut impl Rng, d: usize, spread: f64) -> GroupElement<T> {
    let m = random_matrix::<T>(rng, d).map(|z| z * T::from_parts(spread, 0.0).unwrap())
        + DMatrix::identity(d, d);
    GroupElement::new(to_special(m), 1e-9).unwrap()
}

pub fn random_point<T: Scalar>(rng: &mut impl Rng, d: usize, spread: f64) -> Point<T> {
    Point::orbit(&random_sl(rng, d, spread)).unwrap()
}

/// Random element of `SU(d)` (or `SO(d)`).
pub fn random_unitary<T: Scalar>(rng: &mut impl Rng, d: usize) -> DMatrix<T> {
    let q = random_matrix::<T>(rng, d).qr().q();
    to_special(q)
}

pub fn point<T: Scalar>(m: DMatrix<T>) -> Point<T> {
    Point::new(m, &Default::default()).unwrap()
}

pub fn diag(values: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_row_slice(values))
}

pub fn complexify(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

/// `|⟨a, b⟩|` for unit vectors; one when they span the same line.
pub fn overlap<T: Scalar>(a: &DVector<T>, b: &DVector<T>) -> f64 {
    a.dotc(b).modulus() / (a.norm() * b.norm())
}

/// Riemannian distance from the generalized eigenvalues of the pencil `(q, p)`,
/// computed through a Cholesky factor of `p`.
pub fn pencil_distance<T: Scalar>(p: &DMatrix<T>, q: &DMatrix<T>) -> f64 {
    let l = p.clone().cholesky().unwrap();
    let linv = l.l().try_inverse().unwrap();
    let c = &linv * q * linv.adjoint();
    let c = (&c + c.adjoint()).map(|z| z * T::from_parts(0.5, 0.0).unwrap());
    let eig = c.symmetric_eigen();
    (0.5 * eig.eigenvalues.iter().map(|l| l.ln().powi(2)).sum::<f64>()).sqrt()
}
