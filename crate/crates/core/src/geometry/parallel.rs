use std::f64::consts::PI;

use serde::Serialize;

use super::shape::{spectrum, SpectrumReport};
use super::{LevelPoint, SpherePoint};
use crate::error::{Error, Result};
use crate::tolerance;

/// `f_t(x) = cos t·x + sin t·ξ(x)`.
pub fn parallel_point(pt: &LevelPoint, t: f64) -> SpherePoint {
    let (sin, cos) = t.sin_cos();
    let y = pt.point().to_vector() * cos + pt.normal() * sin;
    SpherePoint::normalized(y.as_slice()).expect("cos t·x + sin t·ξ is a unit vector")
}

/// Outcome of comparing the spectrum at `f_t(x)` with `cot(θ_i − t)`.
#[derive(Debug, Clone, Serialize)]
pub struct ParallelCheck {
    pub t: f64,
    /// `max_i |cot(θ_i − t) − λ̃_i|`, infinite when the cluster structure differs.
    pub residual: f64,
    pub multiplicities_match: bool,
    /// `(cot(θ_i − t), m_i)` in descending curvature order.
    pub expected: Vec<(f64, u32)>,
    pub observed: Vec<(f64, u32)>,
}

fn angle_gap(t: f64, theta: f64) -> f64 {
    let r = (t - theta).rem_euclid(PI);
    r.min(PI - r)
}

/// Checks the parallel-hypersurface law at distance `t`.
///
/// The spectrum at `f_t(x)` is computed from scratch on its own level set,
/// then expressed with respect to the transported normal
/// `−sin t·x + cos t·ξ` before comparison.
pub fn parallel_spectrum_check(pt: &LevelPoint, t: f64) -> Result<ParallelCheck> {
    let base = spectrum(pt)?;
    parallel_check_from(&base, t)
}

pub(crate) fn parallel_check_from(base: &SpectrumReport, t: f64) -> Result<ParallelCheck> {
    let pt = &base.point;
    for c in &base.clusters {
        let gap = angle_gap(t, c.theta);
        if gap < tolerance::FOCAL_MARGIN {
            return Err(Error::FocalAngleTooClose { t, theta: c.theta, gap });
        }
    }
    let field = pt.field();
    let y = parallel_point(pt, t);
    let moved = LevelPoint::at(field, y)?;
    let transported = pt.point().to_vector() * (-t.sin()) + pt.normal() * t.cos();
    let flip = if moved.normal().dot(&transported) < 0.0 { -1.0 } else { 1.0 };
    let there = spectrum(&moved)?;

    let mut observed: Vec<(f64, u32)> =
        there.clusters.iter().map(|c| (flip * c.lambda, c.multiplicity)).collect();
    let mut expected: Vec<(f64, u32)> = base
        .clusters
        .iter()
        .map(|c| (1.0 / (c.theta - t).tan(), c.multiplicity))
        .collect();
    observed.sort_by(|a, b| b.0.total_cmp(&a.0));
    expected.sort_by(|a, b| b.0.total_cmp(&a.0));

    let multiplicities_match = observed.len() == expected.len()
        && observed.iter().zip(&expected).all(|(o, e)| o.1 == e.1);
    let residual = if multiplicities_match {
        observed.iter().zip(&expected).map(|(o, e)| (o.0 - e.0).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(ParallelCheck { t, residual, multiplicities_match, expected, observed })
}

/// `count` distances in `(−π/2, π/2)` that keep the focal margin from every
/// principal angle of `base`.
pub fn admissible_parallel_distances(base: &SpectrumReport, count: usize) -> Vec<f64> {
    let margin = 2.0 * tolerance::FOCAL_MARGIN;
    let mut out = Vec::with_capacity(count);
    // golden-ratio stride spreads the candidates over the interval
    let stride = PI * 0.618_033_988_749_895;
    let mut k = 0;
    while out.len() < count && k < 10_000 {
        let t = (0.1 + k as f64 * stride).rem_euclid(PI) - PI / 2.0;
        k += 1;
        if base.clusters.iter().all(|c| angle_gap(t, c.theta) >= margin) {
            out.push(t);
        }
    }
    out
}
