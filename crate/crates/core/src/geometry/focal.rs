use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use super::shape::{spectrum, SpectrumReport};
use super::{FamilyField, LevelPoint, Sampler, SpherePoint};
use crate::error::{Error, Result};
use crate::tolerance;

/// Focal map data for one principal-curvature cluster.
#[derive(Debug, Clone, Serialize)]
pub struct FocalReport {
    pub base: LevelPoint,
    /// Cluster index, 0-based in ascending angle.
    pub cluster: usize,
    pub theta: f64,
    pub focal_point: SpherePoint,
    /// `V` at the focal point; `±1`.
    pub focal_value: f64,
    /// Singular values of `df_θ` on the tangent space, descending.
    pub singular_values: Vec<f64>,
    pub rank_observed: usize,
    pub rank_expected: usize,
    /// `η = −sin θ·x + cos θ·ξ`.
    pub normal: Vec<f64>,
    /// Eigenvalues of `A_η`, descending.
    pub shape_eigenvalues: Vec<f64>,
    /// `cot(θ_j − θ_i)` with multiplicities, descending.
    pub expected_eigenvalues: Vec<f64>,
    pub eigenvalue_residual: f64,
    pub trace: f64,
    /// `trace A_{−η}`.
    pub trace_opposite: f64,
}

impl FocalReport {
    pub fn rank_ok(&self) -> bool {
        self.rank_observed == self.rank_expected
    }
}

/// Analyses the focal map `f_θ` for cluster `i` of the spectrum at `pt`.
///
/// The differential of `f_θ` and of the normal field `η` are taken by central
/// differences along great circles leaving `x` in each principal direction.
/// On the nondegenerate directions `A_η df(X) = −dη(X)`, which determines the
/// shape operator of the focal submanifold.
pub fn focal_map(pt: &LevelPoint, i: usize) -> Result<FocalReport> {
    let base = spectrum(pt)?;
    focal_map_from(&base, i)
}

pub(crate) fn focal_map_from(base: &SpectrumReport, i: usize) -> Result<FocalReport> {
    let count = base.clusters.len();
    if i >= count {
        return Err(Error::ClusterIndexOutOfRange { index: i, count });
    }
    let pt = &base.point;
    let field = pt.field();
    let n = field.n();
    let theta = base.clusters[i].theta;
    let (sin_t, cos_t) = theta.sin_cos();
    let x = pt.point().to_vector();
    let h = tolerance::FINITE_DIFFERENCE_STEP;

    // (f_θ(y), η(y)) for y near x on the sphere
    let maps = |y: &DVector<f64>| -> Result<(DVector<f64>, DVector<f64>)> {
        let xi = field
            .unit_normal(y.as_slice())
            .ok_or_else(|| Error::NearFocalSet(field.sphere_gradient(y.as_slice()).norm()))?;
        Ok((y * cos_t + &xi * sin_t, y * (-sin_t) + &xi * cos_t))
    };

    let mut df = DMatrix::zeros(n + 2, n);
    let mut deta = DMatrix::zeros(n + 2, n);
    for k in 0..n {
        let dir = base.principal_directions.column(k).into_owned();
        let (sh, ch) = h.sin_cos();
        let plus = &x * ch + &dir * sh;
        let minus = &x * ch - &dir * sh;
        let (fp, ep) = maps(&plus)?;
        let (fm, em) = maps(&minus)?;
        df.set_column(k, &((fp - fm) / (2.0 * h)));
        deta.set_column(k, &((ep - em) / (2.0 * h)));
    }

    let mut singular_values: Vec<f64> = df.clone().svd(false, false).singular_values.iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    // absolute floor so a map collapsing every direction reads as rank 0
    let smax = singular_values.first().copied().unwrap_or(0.0).max(1.0);
    let rank_observed = singular_values.iter().filter(|&&s| s > tolerance::RANK_RELATIVE * smax).count();
    let rank_expected = n - base.clusters[i].multiplicity as usize;

    let keep: Vec<usize> = (0..n).filter(|k| !base.cluster_ranges[i].contains(k)).collect();
    let (shape_eigenvalues, trace, trace_opposite) = if keep.is_empty() {
        (Vec::new(), 0.0, 0.0)
    } else {
        let d = DMatrix::from_columns(&keep.iter().map(|&k| df.column(k)).collect::<Vec<_>>());
        let neg_deta =
            -DMatrix::from_columns(&keep.iter().map(|&k| deta.column(k)).collect::<Vec<_>>());
        let a = focal_shape_matrix(&d, &neg_deta)?;
        let a_opp = focal_shape_matrix(&d, &(-&neg_deta))?;
        let mut ev: Vec<f64> = SymmetricEigen::new(a.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        (ev, a.trace(), a_opp.trace())
    };

    let mut expected_eigenvalues: Vec<f64> = base
        .clusters
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .flat_map(|(_, c)| {
            std::iter::repeat_n(1.0 / (c.theta - theta).tan(), c.multiplicity as usize)
        })
        .collect();
    expected_eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let eigenvalue_residual = if expected_eigenvalues.len() == shape_eigenvalues.len() {
        shape_eigenvalues
            .iter()
            .zip(&expected_eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };

    let focal = &x * cos_t + pt.normal() * sin_t;
    let focal_point = SpherePoint::normalized(focal.as_slice())?;
    let normal = &x * (-sin_t) + pt.normal() * cos_t;

    Ok(FocalReport {
        base: pt.clone(),
        cluster: i,
        theta,
        focal_value: field.value(focal_point.coords()),
        focal_point,
        singular_values,
        rank_observed,
        rank_expected,
        normal: normal.as_slice().to_vec(),
        shape_eigenvalues,
        expected_eigenvalues,
        eigenvalue_residual,
        trace,
        trace_opposite,
    })
}

/// Matrix of the operator sending each column of `d` to the matching column
/// of `image`, written in an orthonormal basis of the column span of `d` and
/// symmetrized.
fn focal_shape_matrix(d: &DMatrix<f64>, image: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let q = d.clone().qr().q();
    let qd = q.transpose() * d;
    let qn = q.transpose() * image;
    let inv = qd.try_inverse().ok_or(Error::NearFocalSet(0.0))?;
    let s = qn * inv;
    Ok((&s + s.transpose()) * 0.5)
}

/// Scalar law and focal structure along normal great circles.
#[derive(Debug, Clone, Serialize)]
pub struct FocalIdentityReport {
    pub family: String,
    pub seed: u64,
    pub samples: usize,
    /// `max |V(f_t(x)) − cos(g(τ₀ − t))|`.
    pub max_scalar_residual: f64,
    pub mean_scalar_residual: f64,
    /// Circles where the number of focal parameters differed from `2g`.
    pub count_mismatches: usize,
    /// Circles whose focal values did not alternate between `+1` and `−1`.
    pub alternation_failures: usize,
    /// `max | |V| − 1 |` at the located focal parameters.
    pub max_focal_value_residual: f64,
    /// `max |Δt − π/g|` between consecutive focal parameters.
    pub max_spacing_residual: f64,
    /// `max |t₊ − τ₀|` for the first forward parameter with `V = +1`.
    pub max_first_focal_residual: f64,
}

impl FocalIdentityReport {
    pub fn passed(&self, identity_tol: f64) -> bool {
        self.max_scalar_residual < identity_tol
            && self.count_mismatches == 0
            && self.alternation_failures == 0
            && self.max_focal_value_residual < identity_tol
            && self.max_spacing_residual < tolerance::SPECTRAL
    }
}

/// Samples random `(x, t)` pairs, with `x` on a random level, and checks
/// `V(f_t(x)) = cos(g(τ₀ − t))` where `τ₀ = arccos(V(x))/g` is the distance to
/// the first focal point along `ξ`. Each normal circle is also scanned for the
/// critical points of `t ↦ V(f_t(x))`, which must be `2g` focal parameters
/// spaced `π/g` with alternating values `±1`.
pub fn focal_identity_checks(
    field: &Arc<FamilyField>,
    samples: usize,
    seed: u64,
) -> Result<FocalIdentityReport> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let g = field.g() as f64;
    let mut sampler = Sampler::new(seed);
    let mut report = FocalIdentityReport {
        family: field.spec().name.clone(),
        seed,
        samples,
        max_scalar_residual: 0.0,
        mean_scalar_residual: 0.0,
        count_mismatches: 0,
        alternation_failures: 0,
        max_focal_value_residual: 0.0,
        max_spacing_residual: 0.0,
        max_first_focal_residual: 0.0,
    };
    let mut total = 0.0;
    for _ in 0..samples {
        let s = sampler.uniform(-0.95, 0.95);
        let pt = sampler.level_point(field, s)?;
        let t = sampler.uniform(0.0, 2.0 * PI);
        let tau0 = pt.level().clamp(-1.0, 1.0).acos() / g;
        let y = super::parallel_point(&pt, t);
        let r = (field.value(y.coords()) - (g * (tau0 - t)).cos()).abs();
        report.max_scalar_residual = report.max_scalar_residual.max(r);
        total += r;

        let roots = circle_focal_parameters(field, &pt);
        if roots.len() != 2 * field.g() as usize {
            report.count_mismatches += 1;
            continue;
        }
        let values: Vec<f64> = roots
            .iter()
            .map(|&t| field.value(super::parallel_point(&pt, t).coords()))
            .collect();
        let alternates = values.windows(2).all(|w| w[0].signum() != w[1].signum());
        if !alternates {
            report.alternation_failures += 1;
        }
        for v in &values {
            report.max_focal_value_residual = report.max_focal_value_residual.max((v.abs() - 1.0).abs());
        }
        let mut cyclic: Vec<f64> = roots.clone();
        cyclic.push(roots[0] + 2.0 * PI);
        for w in cyclic.windows(2) {
            report.max_spacing_residual = report.max_spacing_residual.max((w[1] - w[0] - PI / g).abs());
        }
        if let Some((t_plus, _)) = roots.iter().zip(&values).find(|(_, v)| **v > 0.0) {
            report.max_first_focal_residual = report.max_first_focal_residual.max((t_plus - tau0).abs());
        }
    }
    report.mean_scalar_residual = total / samples as f64;
    Ok(report)
}

/// Zeros of `d/dt V(f_t(x))` on `[0, 2π)`, located by a sign scan followed by
/// bisection.
fn circle_focal_parameters(field: &FamilyField, pt: &LevelPoint) -> Vec<f64> {
    let x = pt.point().to_vector();
    let xi = pt.normal().clone();
    let derivative = |t: f64| {
        let (s, c) = t.sin_cos();
        let y = &x * c + &xi * s;
        let dy = &x * (-s) + &xi * c;
        field.euclidean_gradient(y.as_slice()).dot(&dy)
    };
    let steps = 64 * field.g() as usize;
    let dt = 2.0 * PI / steps as f64;
    let mut roots = Vec::new();
    let mut a = 0.0;
    let mut fa = derivative(a);
    for k in 1..=steps {
        let b = k as f64 * dt;
        let fb = derivative(b);
        if fa == 0.0 {
            roots.push(a);
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = derivative(mid);
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    roots
}
