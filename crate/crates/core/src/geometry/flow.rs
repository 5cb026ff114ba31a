use nalgebra::DVector;
use serde::Serialize;

use super::{FamilyField, LevelPoint};
use crate::error::{Error, Result};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// `ξ = +grad^S V / |grad^S V|`.
    Gradient,
    /// `−ξ`.
    Reversed,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Gradient => 1.0,
            Orientation::Reversed => -1.0,
        }
    }
}

/// Integrates `x' = ξ(x)` from `pt` for arc length `arc` and returns the
/// largest angular distance between the trajectory and the great circle
/// through `x₀` tangent to `ξ₀`.
pub fn gradient_flow_geodesy(pt: &LevelPoint, arc: f64) -> Result<f64> {
    gradient_flow_geodesy_oriented(pt, arc, Orientation::Gradient)
}

/// As [`gradient_flow_geodesy`] with a choice of normal orientation.
///
/// Classical RK4 with a fixed step of `RK4_STEP`, renormalized onto the sphere
/// after every step. Fails once the trajectory comes within `FOCAL_MARGIN` of
/// a focal point.
pub fn gradient_flow_geodesy_oriented(
    pt: &LevelPoint,
    arc: f64,
    orientation: Orientation,
) -> Result<f64> {
    let field = pt.field();
    let sign = orientation.sign();
    let x0 = pt.point().to_vector();
    let xi0 = pt.normal() * sign;

    let velocity = |y: &DVector<f64>, reached: f64| -> Result<DVector<f64>> {
        field
            .unit_normal(y.as_slice())
            .map(|xi| xi * sign)
            .ok_or(Error::FlowEnteredFocalNeighborhood { arc_reached: reached })
    };
    let deviation = |y: &DVector<f64>| {
        let inplane = &x0 * y.dot(&x0) + &xi0 * y.dot(&xi0);
        (y - inplane).norm().min(1.0).asin()
    };

    let mut y = x0.clone();
    let mut s = 0.0;
    let mut worst: f64 = 0.0;
    while s < arc {
        check_margin(field, &y, s)?;
        let h = tolerance::RK4_STEP.min(arc - s);
        let k1 = velocity(&y, s)?;
        let k2 = velocity(&(&y + &k1 * (h / 2.0)), s)?;
        let k3 = velocity(&(&y + &k2 * (h / 2.0)), s)?;
        let k4 = velocity(&(&y + &k3 * h), s)?;
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        y /= y.norm();
        s += h;
        worst = worst.max(deviation(&y));
    }
    check_margin(field, &y, s)?;
    Ok(worst)
}

fn check_margin(field: &FamilyField, y: &DVector<f64>, reached: f64) -> Result<()> {
    if field.focal_distance(y.as_slice()) < tolerance::FOCAL_MARGIN {
        return Err(Error::FlowEnteredFocalNeighborhood { arc_reached: reached });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraKind;
    use crate::families::{family_g1, family_g3};
    use crate::geometry::Sampler;
    use std::f64::consts::PI;

    #[test]
    fn meridians_of_small_spheres() {
        let field = FamilyField::new(family_g1(2).unwrap());
        let p = Sampler::new(2).level_point(&field, -0.2).unwrap();
        assert!(gradient_flow_geodesy(&p, PI / 4.0).unwrap() < 1e-9);
    }

    #[test]
    fn cubic_flow_lines() {
        let field = FamilyField::new(family_g3(AlgebraKind::Real));
        let p = Sampler::new(2).level_point(&field, 0.0).unwrap();
        let forward = gradient_flow_geodesy(&p, PI / 8.0).unwrap();
        let backward = gradient_flow_geodesy_oriented(&p, PI / 8.0, Orientation::Reversed).unwrap();
        assert!(forward < 1e-6 && backward < 1e-6);
    }

    #[test]
    fn flow_stops_near_focal_set() {
        // τ₀ = π/6 on the zero level; the focal point is reached after π/6.
        let field = FamilyField::new(family_g3(AlgebraKind::Real));
        let p = Sampler::new(2).level_point(&field, 0.0).unwrap();
        match gradient_flow_geodesy(&p, PI / 6.0) {
            Err(Error::FlowEnteredFocalNeighborhood { arc_reached }) => {
                assert!((arc_reached - (PI / 6.0 - 0.05)).abs() < 2e-3, "{arc_reached}");
            }
            other => panic!("{other:?}"),
        }
    }
}
