use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use super::{LevelPoint, Orientation};
use crate::error::{Error, Result};
use crate::families::signed_c;
use crate::tolerance;

/// Orthonormal basis (as matrix columns) of `{x, ξ}^⊥`, both inputs assumed
/// orthonormal. Standard basis vectors are added greedily, always taking the
/// one with the largest component outside the current span.
pub fn tangent_basis(x: &DVector<f64>, xi: &DVector<f64>) -> DMatrix<f64> {
    let d = x.len();
    let mut span: Vec<DVector<f64>> = vec![x.clone(), xi.clone()];
    let mut used = vec![false; d];
    let project_out = |v: &mut DVector<f64>, span: &[DVector<f64>]| {
        for _ in 0..2 {
            for b in span {
                let c = b.dot(v);
                v.axpy(-c, b, 1.0);
            }
        }
    };
    while span.len() < d {
        let mut best: Option<(usize, DVector<f64>)> = None;
        for k in (0..d).filter(|&k| !used[k]) {
            let mut v = DVector::zeros(d);
            v[k] = 1.0;
            project_out(&mut v, &span);
            if best.as_ref().is_none_or(|(_, b)| v.norm() > b.norm()) {
                best = Some((k, v));
            }
        }
        let (k, v) = best.expect("a candidate remains while the span is incomplete");
        used[k] = true;
        let n = v.norm();
        span.push(v / n);
    }
    DMatrix::from_columns(&span[2..])
}

/// Ambient matrix of the spherical Hessian `Hess^S V(X, Y) = Hess^E F(X, Y) − gF⟨X, Y⟩`,
/// valid for vectors tangent to the sphere at `pt`.
pub fn spherical_hessian(pt: &LevelPoint) -> DMatrix<f64> {
    let field = pt.field();
    let x = pt.coords();
    let d = x.len();
    let gf = field.g() as f64 * field.value(x);
    field.euclidean_hessian(x) - DMatrix::identity(d, d) * gf
}

/// Shape operator in an orthonormal tangent basis.
#[derive(Debug, Clone)]
pub struct ShapeOperator {
    /// `(n+2) × n`, columns span the tangent space of the level set.
    pub basis: DMatrix<f64>,
    /// Symmetric `n × n`.
    pub matrix: DMatrix<f64>,
    /// `|grad^S V|` at the point.
    pub grad_norm: f64,
    /// `‖A − Aᵀ‖_max` before symmetrization.
    pub asymmetry: f64,
}

/// `⟨AX, Y⟩ = −Hess^S V(X, Y) / |grad^S V|` on the tangent space of the level set.
pub fn shape_operator(pt: &LevelPoint) -> Result<ShapeOperator> {
    let field = pt.field();
    let x = pt.point().to_vector();
    let gn = field.sphere_gradient(pt.coords()).norm();
    if gn <= tolerance::MIN_SPHERE_GRADIENT {
        return Err(Error::NearFocalSet(gn));
    }
    let basis = tangent_basis(&x, pt.normal());
    let raw = -(basis.transpose() * spherical_hessian(pt) * &basis) / gn;
    let asymmetry = (&raw - raw.transpose()).amax();
    let matrix = (&raw + raw.transpose()) * 0.5;
    Ok(ShapeOperator { basis, matrix, grad_norm: gn, asymmetry })
}

/// Groups eigenvalues sorted in descending order into clusters of equal value.
///
/// A gap separates clusters when it exceeds
/// `max(CLUSTER_GAP_FLOOR, CLUSTER_GAP_FACTOR · median intra-cluster gap)`,
/// where intra-cluster gaps are those below the floor.
pub fn cluster_eigenvalues(sorted_desc: &[f64]) -> Vec<std::ops::Range<usize>> {
    if sorted_desc.is_empty() {
        return Vec::new();
    }
    let gaps: Vec<f64> = sorted_desc.windows(2).map(|w| (w[0] - w[1]).abs()).collect();
    let mut small: Vec<f64> =
        gaps.iter().copied().filter(|&g| g <= tolerance::CLUSTER_GAP_FLOOR).collect();
    small.sort_by(f64::total_cmp);
    let median = if small.is_empty() { 0.0 } else { small[small.len() / 2] };
    let threshold = tolerance::CLUSTER_GAP_FLOOR.max(tolerance::CLUSTER_GAP_FACTOR * median);

    let mut out = Vec::new();
    let mut start = 0;
    for (i, gap) in gaps.iter().enumerate() {
        if *gap > threshold {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    out.push(start..sorted_desc.len());
    out
}

/// `θ = arccot λ ∈ (0, π)`.
pub(crate) fn arccot(lambda: f64) -> f64 {
    1f64.atan2(lambda)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cluster {
    pub theta: f64,
    pub multiplicity: u32,
    /// Mean principal curvature of the cluster.
    pub lambda: f64,
}

/// Principal-curvature spectrum at one point with the residual of every
/// pointwise identity.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub point: LevelPoint,
    /// Principal curvatures in descending order (ascending angle).
    pub eigenvalues: Vec<f64>,
    pub clusters: Vec<Cluster>,
    pub g_observed: usize,
    /// Whether `g_observed ∈ {1, 2, 3, 4, 6}`.
    pub g_allowed: bool,
    /// `cartan_identity`, `theta_spacing`, `mult_periodicity`, `mean_curvature`,
    /// `beltrami_1`, `beltrami_2`.
    pub residuals: BTreeMap<String, f64>,
    /// Sign of `c` that fit `Δ^S V = ±c − g(n+g)V` best.
    pub c_sign: i8,
    pub asymmetry: f64,
    /// Always `+grad`; the opposite normal negates every principal curvature.
    pub orientation: &'static str,
    #[serde(skip)]
    pub(crate) principal_directions: DMatrix<f64>,
    #[serde(skip)]
    pub(crate) cluster_ranges: Vec<std::ops::Range<usize>>,
}

impl SpectrumReport {
    pub fn residual(&self, name: &str) -> f64 {
        self.residuals.get(name).copied().unwrap_or(f64::NAN)
    }

    /// Ambient principal directions of cluster `i` as matrix columns.
    pub fn cluster_directions(&self, i: usize) -> DMatrix<f64> {
        let r = self.cluster_ranges[i].clone();
        self.principal_directions.columns(r.start, r.len()).into_owned()
    }

    /// Compares the clusters against expected `(θ, m)` pairs in ascending θ.
    /// Returns the orientation under which they agree to `tol`: the reversed
    /// orientation maps `θ` to `π − θ`.
    pub fn orientation_match(&self, expected: &[(f64, u32)], tol: f64) -> Option<Orientation> {
        if self.clusters.len() != expected.len() {
            return None;
        }
        let ok = |pairs: &mut dyn Iterator<Item = (f64, u32)>| {
            pairs
                .zip(expected)
                .all(|((t, m), (te, me))| (t - te).abs() <= tol && m == *me)
        };
        if ok(&mut self.clusters.iter().map(|c| (c.theta, c.multiplicity))) {
            return Some(Orientation::Gradient);
        }
        if ok(&mut self.clusters.iter().rev().map(|c| (PI - c.theta, c.multiplicity))) {
            return Some(Orientation::Reversed);
        }
        None
    }

    pub fn within(&self, spectral: f64, identity: f64) -> bool {
        self.residual("theta_spacing") < spectral
            && self.residual("mult_periodicity") == 0.0
            && self.residual("cartan_identity") < spectral
            && self.residual("mean_curvature") < tolerance::MEAN_CURVATURE_RELATIVE
            && self.residual("beltrami_1") < identity
            && self.residual("beltrami_2") < identity
            && self.asymmetry < tolerance::SYMMETRY
            && self.g_allowed
    }
}

/// Principal curvatures, angles, multiplicities and identity residuals at `pt`.
pub fn spectrum(pt: &LevelPoint) -> Result<SpectrumReport> {
    let shape = shape_operator(pt)?;
    let field = pt.field();
    let n = field.n();
    let x = pt.coords();

    let eig = SymmetricEigen::new(shape.matrix.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let directions = DMatrix::from_columns(
        &order.iter().map(|&k| &shape.basis * eig.eigenvectors.column(k)).collect::<Vec<_>>(),
    );

    let ranges = cluster_eigenvalues(&eigenvalues);
    let clusters: Vec<Cluster> = ranges
        .iter()
        .map(|r| {
            let lambda = eigenvalues[r.clone()].iter().sum::<f64>() / r.len() as f64;
            Cluster { theta: arccot(lambda), multiplicity: r.len() as u32, lambda }
        })
        .collect();
    let g_obs = clusters.len();

    let mut residuals = BTreeMap::new();

    let spacing = PI / g_obs.max(1) as f64;
    let theta_spacing = clusters
        .iter()
        .enumerate()
        .map(|(i, c)| (c.theta - clusters[0].theta - i as f64 * spacing).abs())
        .fold(0.0, f64::max);
    residuals.insert("theta_spacing".to_string(), theta_spacing);

    let violations = (0..g_obs)
        .filter(|&i| clusters[i].multiplicity != clusters[(i + 2) % g_obs].multiplicity)
        .count();
    residuals.insert("mult_periodicity".to_string(), violations as f64);

    // Σ_{j≠i} m_j (1 + λ_i λ_j)/(λ_i − λ_j) for the unit sphere.
    let cartan = (0..g_obs)
        .map(|i| {
            let li = clusters[i].lambda;
            clusters
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, cj)| cj.multiplicity as f64 * (1.0 + li * cj.lambda) / (li - cj.lambda))
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max);
    residuals.insert("cartan_identity".to_string(), cartan);

    // Mean curvature from the level-set formula with spherical quantities.
    let g = field.g() as f64;
    let v = field.value(x);
    let grad_s = field.sphere_gradient(x);
    let rho_sq = field.sphere_grad_norm_sq(x);
    let rho = rho_sq.max(0.0).sqrt();
    let defect_grad = field.grad_norm_defect_gradient(x);
    let xv = pt.point().to_vector();
    let defect_grad_s = &defect_grad - &xv * defect_grad.dot(&xv);
    let grad_dot_grad_rho = grad_s.dot(&defect_grad_s) / (2.0 * rho);
    let lap_s = field.sphere_laplacian(x);
    let h_formula = (grad_dot_grad_rho - rho * lap_s) / (n as f64 * rho_sq);
    let h_trace = shape.matrix.trace() / n as f64;
    residuals.insert(
        "mean_curvature".to_string(),
        (h_trace - h_formula).abs() / h_formula.abs().max(1.0),
    );

    residuals.insert("beltrami_1".to_string(), (rho_sq - g * g * (1.0 - v * v)).abs());
    let n_f = n as f64;
    let fit = |sign: i8| (lap_s - (signed_c(field.spec(), sign) - g * (n_f + g) * v)).abs();
    let (c_sign, b2) = if fit(1) <= fit(-1) { (1, fit(1)) } else { (-1, fit(-1)) };
    residuals.insert("beltrami_2".to_string(), b2);

    Ok(SpectrumReport {
        point: pt.clone(),
        eigenvalues,
        g_allowed: matches!(g_obs, 1 | 2 | 3 | 4 | 6),
        g_observed: g_obs,
        clusters,
        residuals,
        c_sign,
        asymmetry: shape.asymmetry,
        orientation: "+grad",
        principal_directions: directions,
        cluster_ranges: ranges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraKind;
    use crate::families::{family_g1, family_g2, family_g3};
    use crate::geometry::{project_to_level, FamilyField, Sampler};

    #[test]
    fn clustering_rules() {
        assert_eq!(cluster_eigenvalues(&[1.0, -1.0]), vec![0..1, 1..2]);
        assert_eq!(cluster_eigenvalues(&[2.0, 2.0 + 1e-12, 2.0]), vec![0..3]);
        let r = cluster_eigenvalues(&[1.7320508, 1.7320508, 1e-13, -1e-13, -1.7320508, -1.7320508]);
        assert_eq!(r, vec![0..2, 2..4, 4..6]);
        assert!(cluster_eigenvalues(&[]).is_empty());
        // 1e-5 apart stays together (below the floor)
        assert_eq!(cluster_eigenvalues(&[1.0, 1.0 - 1e-5]).len(), 1);
    }

    #[test]
    fn arccot_branch() {
        assert!((arccot(0.0) - PI / 2.0).abs() < 1e-15);
        assert!((arccot(1.0) - PI / 4.0).abs() < 1e-15);
        assert!((arccot(-1.0) - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!(arccot(-1e12) < PI && arccot(1e12) > 0.0);
    }

    #[test]
    fn tangent_basis_is_orthonormal_complement() {
        let mut s = Sampler::new(1);
        let x = s.sphere_point(6).to_vector();
        let mut xi = s.sphere_point(6).to_vector();
        xi -= &x * xi.dot(&x);
        xi /= xi.norm();
        let b = tangent_basis(&x, &xi);
        assert_eq!(b.shape(), (6, 4));
        let gram = b.transpose() * &b;
        assert!((gram - DMatrix::identity(4, 4)).amax() < 1e-14);
        assert!((b.transpose() * &x).amax() < 1e-14);
        assert!((b.transpose() * &xi).amax() < 1e-14);
    }

    #[test]
    fn great_sphere_is_totally_geodesic() {
        let field = FamilyField::new(family_g1(3).unwrap());
        let p = project_to_level(&field, &[0.1, 0.4, -0.3, 0.2, 0.5], 0.0).unwrap();
        let a = shape_operator(&p).unwrap();
        assert!(a.matrix.amax() < 1e-14);
    }

    #[test]
    fn small_spheres_are_umbilic() {
        // F = x₁ at level s: every principal curvature has modulus s/√(1−s²).
        let field = FamilyField::new(family_g1(2).unwrap());
        let s = 0.6;
        let p = project_to_level(&field, &[0.3, 0.5, 0.1, -0.2], s).unwrap();
        let s = field.value(p.coords());
        let r = spectrum(&p).unwrap();
        assert_eq!(r.g_observed, 1);
        assert_eq!(r.clusters[0].multiplicity, 2);
        assert!((r.clusters[0].lambda.abs() - s / (1.0 - s * s).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn product_family_spectrum_at_zero() {
        let field = FamilyField::new(family_g2(1, 2).unwrap());
        let p = Sampler::new(2).level_point(&field, 0.0).unwrap();
        let r = spectrum(&p).unwrap();
        let mut ev = r.eigenvalues.clone();
        ev.iter_mut().for_each(|v| *v = v.abs());
        assert!(ev.iter().all(|v| (v - 1.0).abs() < 1e-10));
        assert!(r.orientation_match(&[(PI / 4.0, 1), (3.0 * PI / 4.0, 2)], 1e-9).is_some());
        assert_eq!(r.c_sign, -1);
    }

    #[test]
    fn cubic_spectrum_at_zero() {
        let field = FamilyField::new(family_g3(AlgebraKind::Real));
        let p = Sampler::new(4).level_point(&field, 0.0).unwrap();
        let r = spectrum(&p).unwrap();
        let s3 = 3f64.sqrt();
        for (got, want) in r.eigenvalues.iter().zip([s3, 0.0, -s3]) {
            assert!((got - want).abs() < 1e-9, "{:?}", r.eigenvalues);
        }
        assert!(r.within(1e-7, 1e-9), "{:?}", r.residuals);
    }

    #[test]
    fn analytic_cartan_cancellation() {
        // m[1/√3 − 2/(2√3)] = 0 for θ₁ = π/6 in the g = 3 family
        let l: Vec<f64> = [PI / 6.0, PI / 2.0, 5.0 * PI / 6.0].iter().map(|t| 1.0 / t.tan()).collect();
        let s: f64 = [1, 2].iter().map(|&j| (1.0 + l[0] * l[j]) / (l[0] - l[j])).sum();
        assert!(s.abs() < 1e-15);
    }
}
