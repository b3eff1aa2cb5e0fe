//! Acceptance run: one `PASS`/`FAIL` line per criterion, non-zero exit on any
//! failure. Optional arguments select criteria by number.

mod common;

use std::f64::consts::PI;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::sync::OnceLock;

use anosov_cert::cayley::{build_ball, geodesic_pairs, GeneratorSet, DEFAULT_GRID};
use anosov_cert::certifier::{builtin_example, run, run_with_words, Certificate, Verdict};
use anosov_cert::criteria::{
    derive_aux, eps_max, verify_assumptions, AuxParams, StraightSpacedStats,
};
use anosov_cert::symspace::{
    angle, busemann_gap, busemann_gap_standard, cos_angle, d_alpha, dist_to_parallel_set,
    is_transverse, midpoint, ray_to_parallel_bound, riem_distance, vec_distance, zeta_angle_bound,
    zeta_flag, Flag, GroupElement, HyperplaneFlag, LineFlag, Point,
};
use anosov_cert::{FieldTag, Scalar};
use common::*;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

/// Collects named comparisons; any miss fails the criterion.
#[derive(Default)]
struct Checks {
    notes: Vec<String>,
    misses: Vec<String>,
}

impl Checks {
    fn close(&mut self, name: &str, got: f64, want: f64, tol: f64) {
        let line = if tol < 1e-6 {
            format!("{name} = {got:.1e} (want {want} ± {tol:e})")
        } else {
            format!("{name} = {got:.6} (want {want} ± {tol})")
        };
        if (got - want).abs() <= tol {
            self.notes.push(line);
        } else {
            self.misses.push(line);
        }
    }

    fn ensure(&mut self, ok: bool, line: String) {
        if ok {
            self.notes.push(line);
        } else {
            self.misses.push(line);
        }
    }

    fn finish(self) -> Outcome {
        if self.misses.is_empty() {
            Ok(self.notes.join(", "))
        } else {
            Err(self.misses.join("; "))
        }
    }
}

fn example_certificate() -> &'static Certificate {
    static CERT: OnceLock<Certificate> = OnceLock::new();
    CERT.get_or_init(|| run(&builtin_example()).expect("example run"))
}

fn worked_example() -> Outcome {
    let cert = example_certificate();
    let s = cert.survey.as_ref().ok_or("no survey")?;
    let aux = cert.aux.as_ref().ok_or("no auxiliary constants")?;
    let mut c = Checks::default();
    c.ensure(
        cert.verdict == Verdict::Certified,
        format!("verdict {:?} over {} pairs", cert.verdict, s.pair_count),
    );
    c.close("min cos eps+", s.min_cos_eps_plus, 0.87, 0.005);
    c.close("min cos eps-", s.min_cos_eps_minus, 0.87, 0.005);
    c.close("eps", s.eps, 1.03, 0.03);
    c.close("S", s.spacing, 3.08, 0.02);
    let p = aux.params;
    for (name, got, want) in [
        ("delta1", p.delta1, 0.92),
        ("delta2", p.delta2, 0.18),
        ("delta3", p.delta3, 1.29),
        ("delta4", p.delta4, 1.41),
    ] {
        c.close(name, got, want, 0.02);
    }
    c.finish()
}

/// Hermitian part `(M + M†)/2`.
fn hermitize<T: Scalar>(m: &DMatrix<T>) -> DMatrix<T> {
    (m + m.adjoint()).map(|z| z * T::from_parts(0.5, 0.0).unwrap())
}

/// `log(F⁻¹ T F⁻†)`, with eigenvalues above one taken from that matrix and
/// the rest from the inverse `F† T⁻¹ F`, so both ends of the spectrum keep
/// relative accuracy. Also returns the distance `√(½ Σ log² λ)`.
fn whitened_log<T: Scalar>(
    f: &DMatrix<T>,
    f_inv: &DMatrix<T>,
    target: &DMatrix<T>,
    target_inv: &DMatrix<T>,
) -> (DMatrix<T>, f64) {
    let d = f.nrows();
    let top = hermitize(&(f_inv * target * f_inv.adjoint())).symmetric_eigen();
    let bottom = hermitize(&(f.adjoint() * target_inv * f)).symmetric_eigen();
    let order = |values: &DVector<f64>| {
        let mut idx: Vec<usize> = (0..d).collect();
        idx.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
        idx
    };
    let large = top.eigenvalues.iter().filter(|&&l| l >= 1.0).count();
    let mut log = DMatrix::<T>::zeros(d, d);
    let mut sq = 0.0;
    let pieces = order(&top.eigenvalues)
        .into_iter()
        .take(large)
        .map(|i| {
            (
                top.eigenvectors.column(i).into_owned(),
                top.eigenvalues[i].ln(),
            )
        })
        .chain(
            order(&bottom.eigenvalues)
                .into_iter()
                .take(d - large)
                .map(|i| {
                    (
                        bottom.eigenvectors.column(i).into_owned(),
                        -bottom.eigenvalues[i].ln(),
                    )
                }),
        );
    for (w, l) in pieces {
        log += &w * w.adjoint() * T::from_parts(l, 0.0).unwrap();
        sq += l * l;
    }
    (hermitize(&log), (0.5 * sq).sqrt())
}

/// Distance from `q` to `P(ker u, [v])` by Riemannian gradient descent over the
/// block-diagonal points `diag(λ, A)` in the basis `(v, ker u)`.
fn parallel_set_distance_oracle<T: Scalar>(
    rng: &mut impl Rng,
    q: &Point<T>,
    u: &DVector<T>,
    v: &DVector<T>,
) -> f64 {
    let d = q.dim();
    let mut seed = random_matrix::<T>(rng, d);
    seed.set_column(0, &u.conjugate());
    let mut g = seed.qr().q();
    g.set_column(0, v);
    let (re, im) = g.determinant().parts();
    let scale = T::from_parts((re * re + im * im).powf(1.0 / d as f64), 0.0).unwrap();
    let g_inv = g.clone().try_inverse().unwrap();
    let target = hermitize(&(&g_inv * q.matrix() * g_inv.adjoint())).map(|z| z * scale);
    let target_inv = hermitize(&(g.adjoint() * q.inverse_matrix() * &g)).map(|z| z / scale);

    let mut f = DMatrix::<T>::identity(d, d);
    let mut f_inv = f.clone();
    let (mut log, mut value) = whitened_log(&f, &f_inv, &target, &target_inv);
    for _ in 0..20_000 {
        let mut step = log.clone();
        for i in 1..d {
            step[(0, i)] = T::zero();
            step[(i, 0)] = T::zero();
        }
        let tr = step.trace().parts().0 / d as f64;
        for i in 0..d {
            step[(i, i)] -= T::from_parts(tr, 0.0).unwrap();
        }
        if step.norm() < 1e-13 {
            break;
        }
        let mut t = 1.0;
        let mut moved = false;
        while t > 1e-12 {
            let next_f = &f * herm_fn(&step, |x| (0.5 * t * x).exp());
            let next_inv = herm_fn(&step, |x| (-0.5 * t * x).exp()) * &f_inv;
            let (next_log, next_value) = whitened_log(&next_f, &next_inv, &target, &target_inv);
            if next_value < value {
                (f, f_inv, log, value) = (next_f, next_inv, next_log, next_value);
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
    }
    value
}

fn angle_to_distance_for<T: Scalar>(rng: &mut impl Rng, dim: usize, c: &mut Checks) {
    let mut worst: f64 = 0.0;
    let mut worst_identity: f64 = 0.0;
    for _ in 0..100 {
        let spread = rng.random_range(0.2..1.2);
        let q = random_point::<T>(rng, dim, spread);
        let u = random_vector::<T>(rng, dim);
        let v = random_vector::<T>(rng, dim);
        let hyp = HyperplaneFlag::new(u.clone()).unwrap();
        let line = LineFlag::new(v.clone()).unwrap();
        let formula = dist_to_parallel_set(&q, &hyp, &line).unwrap();
        let oracle = parallel_set_distance_oracle(rng, &q, &u, &v);
        worst = worst.max((formula - oracle).abs() / oracle.max(1e-300));
        let cos = cos_angle(&q, &Flag::Hyperplane(hyp), &Flag::Line(line)).unwrap();
        let sech = 1.0 / oracle.cosh();
        let d = dim as f64;
        worst_identity = worst_identity.max(((d - 1.0) * cos + d * sech * sech - 1.0).abs());
    }
    let field = if T::FIELD == FieldTag::Real { "R" } else { "C" };
    c.ensure(
        worst <= 1e-6,
        format!("d={dim}/{field}: max rel err {worst:.1e}"),
    );
    c.ensure(
        worst_identity <= 1e-6,
        format!("d={dim}/{field}: identity residual {worst_identity:.1e}"),
    );
}

fn angle_to_distance() -> Outcome {
    let mut rng = rng(2);
    let mut c = Checks::default();
    for dim in [2, 3, 4] {
        angle_to_distance_for::<f64>(&mut rng, dim, &mut c);
        angle_to_distance_for::<C64>(&mut rng, dim, &mut c);
    }
    c.finish()
}

/// Upper half-plane coordinates of a point of the d = 2 model.
fn half_plane(p: &Point<f64>) -> (f64, f64) {
    let m = p.matrix();
    (m[(0, 1)] / m[(1, 1)], 1.0 / m[(1, 1)])
}

fn hyperbolic_distance(z: (f64, f64), w: (f64, f64)) -> f64 {
    let sq = (z.0 - w.0).powi(2) + (z.1 - w.1).powi(2);
    (1.0 + sq / (2.0 * z.1 * w.1)).acosh()
}

/// Distance from `z` to the geodesic with real endpoints `a`, `b`.
fn distance_to_geodesic(z: (f64, f64), a: f64, b: f64) -> f64 {
    let (center, radius) = ((a + b) / 2.0, (a - b).abs() / 2.0);
    let power = (z.0 - center).powi(2) + z.1 * z.1 - radius * radius;
    (power.abs() / (2.0 * radius * z.1)).asinh()
}

fn hyperbolic_reduction() -> Outcome {
    let mut rng = rng(3);
    let (mut dist_err, mut riem_err, mut complex_err, mut cos_err) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..200 {
        let p = random_point::<f64>(&mut rng, 2, 1.0);
        let q = random_point::<f64>(&mut rng, 2, 1.0);
        let oracle = hyperbolic_distance(half_plane(&p), half_plane(&q));
        dist_err = dist_err.max((d_alpha(&p, &q).unwrap() - oracle).abs());
        riem_err = riem_err.max((riem_distance(&p, &q).unwrap() - oracle).abs());

        let pc = random_point::<C64>(&mut rng, 2, 1.0);
        let qc = random_point::<C64>(&mut rng, 2, 1.0);
        let oracle = pencil_distance(pc.matrix(), qc.matrix());
        complex_err = complex_err.max((d_alpha(&pc, &qc).unwrap() - oracle).abs());

        let u = random_vector::<f64>(&mut rng, 2);
        let v = random_vector::<f64>(&mut rng, 2);
        let rho = distance_to_geodesic(half_plane(&p), v[0] / v[1], -u[1] / u[0]);
        let hyp = Flag::Hyperplane(HyperplaneFlag::new(u).unwrap());
        let cos = cos_angle(&p, &hyp, &Flag::Line(LineFlag::new(v).unwrap())).unwrap();
        let sech = 1.0 / rho.cosh();
        cos_err = cos_err.max((cos - (1.0 - 2.0 * sech * sech)).abs());
    }
    let mut c = Checks::default();
    c.ensure(
        dist_err <= 1e-9,
        format!("d_alpha vs H2 distance {dist_err:.1e}"),
    );
    c.ensure(
        riem_err <= 1e-9,
        format!("riem vs H2 distance {riem_err:.1e}"),
    );
    c.ensure(
        complex_err <= 1e-9,
        format!("d_alpha vs complex pencil distance {complex_err:.1e}"),
    );
    c.ensure(
        cos_err <= 1e-9,
        format!("cos vs 1 - 2 sech^2 {cos_err:.1e}"),
    );
    c.finish()
}

fn flip_and_midpoint_for<T: Scalar>(rng: &mut impl Rng, dim: usize) -> (f64, f64) {
    let p = random_point::<T>(rng, dim, 1.0);
    let q = random_point::<T>(rng, dim, 1.0);
    let pq = vec_distance(&p, &q).unwrap();
    let qp = vec_distance(&q, &p).unwrap();
    let flip = pq
        .entries()
        .iter()
        .zip(qp.entries().iter().rev())
        .map(|(a, b)| (a + b).abs())
        .fold(0.0, f64::max);
    let half = vec_distance(&p, &midpoint(&p, &q).unwrap()).unwrap();
    let mid = pq
        .entries()
        .iter()
        .zip(half.entries())
        .map(|(a, b)| (0.5 * a - b).abs())
        .fold(0.0, f64::max);
    (flip, mid)
}

fn flip_and_midpoint() -> Outcome {
    let mut rng = rng(4);
    let (mut flip, mut mid) = (0.0f64, 0.0f64);
    for i in 0..200 {
        let dim = 2 + i % 4;
        let (f, m) = if i % 2 == 0 {
            flip_and_midpoint_for::<f64>(&mut rng, dim)
        } else {
            flip_and_midpoint_for::<C64>(&mut rng, dim)
        };
        flip = flip.max(f);
        mid = mid.max(m);
    }
    let mut c = Checks::default();
    c.ensure(flip <= 1e-9, format!("flip residual {flip:.1e}"));
    c.ensure(mid <= 1e-9, format!("midpoint residual {mid:.1e}"));
    c.finish()
}

/// `diag(λ₁, K Λ' K†)` with `λ₁` above the spectrum of the block: a point of the
/// Weyl cone over the star of `[e₁]`. Also returns the top eigenvector of the block.
fn weyl_cone_point<T: Scalar>(
    rng: &mut impl Rng,
    dim: usize,
    diagonal: bool,
) -> (Point<T>, DVector<T>) {
    let mut logs: Vec<f64> = (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect();
    logs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    logs[0] += rng.random_range(0.01..2.0);
    let mean = logs.iter().sum::<f64>() / dim as f64;
    let values: Vec<T> = logs
        .iter()
        .map(|l| T::from_parts((l - mean).exp(), 0.0).unwrap())
        .collect();
    let k = if diagonal {
        DMatrix::<T>::identity(dim - 1, dim - 1)
    } else {
        random_unitary::<T>(rng, dim - 1)
    };
    let block = &k * DMatrix::from_diagonal(&DVector::from_row_slice(&values[1..])) * k.adjoint();
    let mut y = DMatrix::<T>::zeros(dim, dim);
    y[(0, 0)] = values[0];
    y.view_mut((1, 1), (dim - 1, dim - 1))
        .copy_from(&hermitize(&block));
    let mut top = DVector::<T>::zeros(dim);
    top.rows_mut(1, dim - 1).copy_from(&k.column(0));
    (point(y), top)
}

fn busemann_for<T: Scalar>(rng: &mut impl Rng, dim: usize, diagonal: bool) -> (f64, f64, f64) {
    let (y, top) = weyl_cone_point::<T>(rng, dim, diagonal);
    let o = Point::<T>::identity(dim);
    let da = d_alpha(&o, &y).unwrap();
    let gap = busemann_gap_standard(&y);
    let e1 = LineFlag::basis(dim, 0);
    let mut below: f64 = 0.0;
    for _ in 0..20 {
        let mut u = random_vector::<T>(rng, dim);
        u[0] = T::zero();
        let b = busemann_gap(&y, &e1, &HyperplaneFlag::new(u).unwrap());
        below = below.max(da - b);
    }
    let best = busemann_gap(&y, &e1, &HyperplaneFlag::new(top.conjugate()).unwrap());
    (da - gap, below, (best - da).abs())
}

fn busemann_oracle() -> Outcome {
    let mut rng = rng(5);
    let (mut below, mut family_below, mut attained, mut diag_eq) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..100 {
        let dim = 2 + i % 4;
        let (gap, fam, best) = if i % 2 == 0 {
            busemann_for::<f64>(&mut rng, dim, false)
        } else {
            busemann_for::<C64>(&mut rng, dim, false)
        };
        below = below.max(gap);
        family_below = family_below.max(fam);
        attained = attained.max(best);
        let (gap, _, _) = busemann_for::<f64>(&mut rng, dim, true);
        diag_eq = diag_eq.max(gap.abs());
    }
    let mut c = Checks::default();
    c.ensure(below <= 1e-9, format!("max d_alpha - gap {below:.1e}"));
    c.ensure(
        diag_eq <= 1e-9,
        format!("diagonal |gap - d_alpha| {diag_eq:.1e}"),
    );
    c.ensure(
        family_below <= 1e-9,
        format!("covector family max d_alpha - gap {family_below:.1e}"),
    );
    c.ensure(
        attained <= 1e-9,
        format!("minimum attained to {attained:.1e}"),
    );
    c.finish()
}

/// `p^{1/2} exp(s X) p^{1/2}` for a random unit-size traceless `X`.
fn push<T: Scalar>(rng: &mut impl Rng, p: &Point<T>, size: f64) -> Point<T> {
    let x = random_traceless::<T>(rng, p.dim());
    let n = x.norm();
    let x = x.map(|z| z * T::from_parts(size / n, 0.0).unwrap());
    point(hermitize(&(p.sqrt() * herm_exp(&x) * p.sqrt())))
}

fn bounds_for<T: Scalar>(rng: &mut impl Rng, dim: usize, stats: &mut [f64; 4]) -> bool {
    let o = random_point::<T>(rng, dim, 0.5);
    let (far, near) = (rng.random_range(0.5..5.0), rng.random_range(0.01..1.5));
    let x = push(rng, &o, far);
    let y = push(rng, &x, near);
    let (s, d) = (d_alpha(&o, &x).unwrap(), riem_distance(&x, &y).unwrap());
    if s <= d {
        return false;
    }
    let (Ok(zx), Ok(zy)) = (zeta_flag(&o, &x), zeta_flag(&o, &y)) else {
        return false;
    };
    let a = angle(&o, &Flag::Line(zx.clone()), &Flag::Line(zy)).unwrap();
    let bound = zeta_angle_bound(s, d, dim).unwrap();
    if a > bound * (1.0 + 1e-9) + 1e-12 {
        stats[0] += 1.0;
    }
    stats[1] = stats[1].max(a / bound);

    // The ray bound, for the pair (o, x) and a random hyperplane.
    let hyp = HyperplaneFlag::new(random_vector::<T>(rng, dim)).unwrap();
    let big_d = dist_to_parallel_set(&o, &hyp, &zx).unwrap();
    let far = dist_to_parallel_set(&x, &hyp, &zx).unwrap();
    let bound = ray_to_parallel_bound(big_d, s);
    if far > bound * (1.0 + 1e-9) + 1e-12 {
        stats[2] += 1.0;
    }
    stats[3] = stats[3].max(far / bound);
    true
}

fn lipschitz_and_decay() -> Outcome {
    let mut rng = rng(6);
    let mut stats = [0.0; 4];
    let (mut accepted, mut attempts) = (0, 0);
    while accepted < 1000 && attempts < 100_000 {
        attempts += 1;
        let dim = 2 + attempts % 3;
        let ok = if attempts % 2 == 0 {
            bounds_for::<f64>(&mut rng, dim, &mut stats)
        } else {
            bounds_for::<C64>(&mut rng, dim, &mut stats)
        };
        accepted += ok as usize;
    }
    let mut c = Checks::default();
    c.ensure(
        accepted == 1000,
        format!("{accepted} samples from {attempts} draws"),
    );
    c.ensure(
        stats[0] == 0.0,
        format!(
            "zeta angle: {} violations, max ratio {:.3}",
            stats[0], stats[1]
        ),
    );
    c.ensure(
        stats[2] == 0.0,
        format!(
            "ray decay: {} violations, max ratio {:.3}",
            stats[2], stats[3]
        ),
    );
    c.finish()
}

fn transversality_for<T: Scalar>(rng: &mut impl Rng, dim: usize, incident: bool) -> bool {
    let p = random_point::<T>(rng, dim, 1.0);
    let u = random_vector::<T>(rng, dim);
    let mut v = random_vector::<T>(rng, dim);
    if incident {
        let w = u.conjugate();
        v -= &w * w.dotc(&v);
    }
    let algebraic = u.dot(&v).modulus() > 1e-12;
    let geometric = is_transverse(
        &p,
        &HyperplaneFlag::new(u).unwrap(),
        &LineFlag::new(v).unwrap(),
    )
    .unwrap();
    algebraic == geometric && algebraic != incident
}

fn transversality() -> Outcome {
    let mut rng = rng(7);
    let mut disagreements = 0;
    for i in 0..1000 {
        let dim = 2 + i % 4;
        let incident = i % 10 == 0;
        let agree = if i % 2 == 0 {
            transversality_for::<f64>(&mut rng, dim, incident)
        } else {
            transversality_for::<C64>(&mut rng, dim, incident)
        };
        disagreements += !agree as usize;
    }
    let mut c = Checks::default();
    c.ensure(
        disagreements == 0,
        format!("{disagreements} disagreements on 1000 pairs (100 incident)"),
    );
    c.finish()
}

fn failing(stats: &StraightSpacedStats, aux: &AuxParams) -> Vec<usize> {
    let report = verify_assumptions(stats, aux).unwrap();
    report
        .passes()
        .iter()
        .enumerate()
        .filter(|(_, p)| !**p)
        .map(|(i, _)| i + 1)
        .collect()
}

fn criteria_soundness() -> Outcome {
    let stats = StraightSpacedStats::new(3, 1.03, 3.08, 1).unwrap();
    let aux = derive_aux(&stats, 0.3).unwrap();
    let s = stats.spacing;
    let mut c = Checks::default();
    c.close(
        "eps_aux - (0.7 eps + 0.3 eps_max)",
        aux.eps_aux - (0.7 * 1.03 + 0.3 * eps_max(3)),
        0.0,
        1e-15,
    );
    c.ensure(
        failing(&stats, &aux).is_empty(),
        "paper parameters pass all five".into(),
    );

    // δ₄ at which A1 starts failing.
    let (mut lo, mut hi) = (aux.delta4, s);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let trial = AuxParams { delta4: mid, ..aux };
        if verify_assumptions(&stats, &trial).unwrap().assumptions[0].pass {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let injections = [
        (
            1,
            AuxParams {
                delta4: hi + 0.01,
                ..aux
            },
        ),
        (
            2,
            AuxParams {
                delta1: aux.delta1 - 0.05,
                ..aux
            },
        ),
        (
            3,
            AuxParams {
                delta2: aux.delta2 - 0.05,
                ..aux
            },
        ),
        (
            4,
            AuxParams {
                delta1: ((aux.delta2 + 0.01) * s.exp()).ln_1p(),
                ..aux
            },
        ),
        (
            5,
            AuxParams {
                delta4: aux.delta4 - 0.05,
                ..aux
            },
        ),
    ];
    for (target, params) in injections {
        let failed = failing(&stats, &params);
        c.ensure(
            failed == vec![target],
            format!("A{target} injection fails {failed:?}"),
        );
    }
    if !c.misses.is_empty() {
        c.misses.push(format!(
            "A1 first fails at delta4 = {hi:.4} while A5 needs delta4 < S/2 = {:.4}",
            s / 2.0
        ));
    }

    let lowered = AuxParams {
        delta2: aux.delta1.exp_m1() * (-s).exp() - 0.01,
        ..aux
    };
    let a4 = &verify_assumptions(&stats, &lowered).unwrap().assumptions[3];
    c.ensure(
        !a4.pass && a4.margin < 0.0,
        format!("A4 margin after lowering delta2 {:.4}", a4.margin),
    );
    // 2π/3 rounded to the nearest double.
    let two_thirds_pi = 2.094_395_102_393_195_7;
    c.ensure(
        eps_max(3) == two_thirds_pi && (two_thirds_pi - 2.0 * PI / 3.0).abs() < 1e-15,
        format!("eps_max(3) = {}", eps_max(3)),
    );
    c.finish()
}

fn free_group(named: Vec<(char, DMatrix<f64>)>) -> GeneratorSet<f64> {
    let named = named
        .into_iter()
        .map(|(c, m)| (c, GroupElement::new(m, 1e-9).unwrap()))
        .collect();
    GeneratorSet::new(named, Vec::new()).unwrap()
}

fn enumeration_cross_check() -> Outcome {
    let mut c = Checks::default();
    let config = builtin_example();
    let words = {
        let gens = config.generator_set::<f64>().unwrap();
        let table = build_ball(&gens, 2 * config.half_length, config.dedup_grid).unwrap();
        let pairs = geodesic_pairs(&table, config.half_length).unwrap();
        let mut text = String::with_capacity(pairs.len() * (2 * config.half_length + 1));
        for &(a, b) in &pairs {
            text.push_str(&table.word(a as usize));
            text.push_str(&table.word(b as usize));
            text.push('\n');
        }
        text
    };
    let from_words = run_with_words(&config, Some(&words)).map_err(|e| e.to_string())?;
    drop(words);
    let ball = example_certificate().survey.as_ref().ok_or("no survey")?;
    let listed = from_words.survey.as_ref().ok_or("no word-list survey")?;
    c.ensure(
        ball.pair_count == listed.pair_count,
        format!("{} pairs vs {}", ball.pair_count, listed.pair_count),
    );
    c.close("S difference", listed.spacing - ball.spacing, 0.0, 1e-9);
    c.close("eps difference", listed.eps - ball.eps, 0.0, 1e-9);

    let sanov = free_group(vec![
        ('a', DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0])),
        ('b', DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 2.0, 1.0])),
    ]);
    let mut rng = rng(9);
    let random = free_group(
        ['a', 'b', 'c']
            .into_iter()
            .map(|l| (l, random_sl::<f64>(&mut rng, 3, 1.0).into_matrix()))
            .collect(),
    );
    for (gens, m, radius) in [(sanov, 2usize, 6usize), (random, 3, 4)] {
        let got = build_ball(&gens, radius, DEFAULT_GRID)
            .unwrap()
            .sphere_sizes();
        let want: Vec<usize> = (0..=radius)
            .map(|n| {
                if n == 0 {
                    1
                } else {
                    2 * m * (2 * m - 1).pow(n as u32 - 1)
                }
            })
            .collect();
        c.ensure(got == want, format!("rank {m} spheres {got:?}"));
    }
    c.finish()
}

fn main() {
    let selected: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let criteria: [Criterion; 9] = [
        (1, "worked example", worked_example),
        (2, "angle-to-distance identity", angle_to_distance),
        (3, "d=2 hyperbolic reduction", hyperbolic_reduction),
        (4, "vector distance flip and midpoint", flip_and_midpoint),
        (5, "Busemann oracle", busemann_oracle),
        (6, "Lipschitz and decay bounds", lipschitz_and_decay),
        (7, "transversality agreement", transversality),
        (8, "criteria soundness", criteria_soundness),
        (9, "enumeration cross-validation", enumeration_cross_check),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (n, name, check) in criteria {
        if !selected.is_empty() && !selected.contains(&n) {
            continue;
        }
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {n} ({name}): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {n} ({name}): {detail}");
            }
        }
        std::io::stdout().flush().unwrap();
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
