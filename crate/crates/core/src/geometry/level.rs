use std::f64::consts::PI;
use std::sync::Arc;

use super::{FamilyField, LevelPoint, SpherePoint};
use crate::error::{Error, Result};
use crate::tolerance;

/// Moves `x0` onto the level set `V = s`.
///
/// After normalizing to the sphere, each iteration takes a Newton step of
/// length `(s − V)/|grad^S V|` along the great circle through `x` in the
/// direction `ξ`; integral curves of `ξ` are such great circles, so the
/// iteration follows the gradient flow exactly. Steps are capped at `π/(4g)`.
pub fn project_to_level(field: &Arc<FamilyField>, x0: &[f64], s: f64) -> Result<LevelPoint> {
    if !(s > -1.0 && s < 1.0) {
        return Err(Error::LevelOutOfRange(s));
    }
    if x0.len() != field.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: field.ambient_dim(), got: x0.len() });
    }
    let mut x = SpherePoint::normalized(x0)?.coords().to_vec();
    let max_step = PI / (4.0 * field.g() as f64);
    let mut residual = f64::INFINITY;

    for iteration in 0..=tolerance::MAX_PROJECTION_ITERATIONS {
        let v = field.value(&x);
        residual = v - s;
        let gs = field.sphere_gradient(&x);
        let gn = gs.norm();
        if gn <= tolerance::MIN_SPHERE_GRADIENT {
            if iteration == 0 && (1.0 - v.abs()).abs() < 1e-12 {
                return Err(Error::StartedAtFocalSet);
            }
            break;
        }
        if residual.abs() <= tolerance::LEVEL {
            let point = SpherePoint::new(x)?;
            return Ok(LevelPoint { field: field.clone(), point, level: s, normal: gs / gn });
        }
        if iteration == tolerance::MAX_PROJECTION_ITERATIONS {
            break;
        }
        let h = (-residual / gn).clamp(-max_step, max_step);
        let (sin, cos) = h.sin_cos();
        for (xi, gi) in x.iter_mut().zip(gs.iter()) {
            *xi = cos * *xi + sin * gi / gn;
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
    }
    Err(Error::NoConvergence {
        iterations: tolerance::MAX_PROJECTION_ITERATIONS,
        residual: residual.abs(),
    })
}
