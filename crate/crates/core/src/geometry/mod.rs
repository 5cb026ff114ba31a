//! Differential geometry of the level sets `V⁻¹(s) ⊂ S^{n+1}`, where `V` is the
//! restriction of a Cartan–Münzner polynomial to the unit sphere.
//!
//! Everything here is binary64. Polynomials are compiled once into a
//! [`FamilyField`] holding `F`, its gradient, Hessian and Laplacian.

mod flow;
mod focal;
mod level;
mod parallel;
mod shape;

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::polynomial::{sphere_grad_norm_sq_from, sphere_laplacian_from, FloatPoly};
use crate::tolerance;

pub use flow::{gradient_flow_geodesy, gradient_flow_geodesy_oriented, Orientation};
pub use focal::{focal_identity_checks, focal_map, FocalIdentityReport, FocalReport};
pub use level::project_to_level;
pub use parallel::{admissible_parallel_distances, parallel_point, parallel_spectrum_check, ParallelCheck};
pub use shape::{
    cluster_eigenvalues, shape_operator, spectrum, spherical_hessian, tangent_basis, Cluster,
    ShapeOperator, SpectrumReport,
};

/// A Cartan–Münzner polynomial compiled for fast float evaluation.
pub struct FamilyField {
    spec: FamilySpec,
    value: FloatPoly,
    grad: Vec<FloatPoly>,
    /// Nonzero upper-triangular Hessian entries.
    hess: Vec<(usize, usize, FloatPoly)>,
    laplacian: FloatPoly,
    /// Euclidean gradient of `|grad^E F|²`.
    grad_norm_sq_grad: Vec<FloatPoly>,
}

impl fmt::Debug for FamilyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilyField").field("family", &self.spec.name).finish()
    }
}

impl FamilyField {
    pub fn new(spec: FamilySpec) -> Arc<Self> {
        let f = &spec.f;
        let grad = f.grad();
        let mut hess = Vec::new();
        for (i, gi) in grad.components.iter().enumerate() {
            for j in i..spec.ambient_dim {
                let d = gi.derivative(j);
                if !d.is_zero() {
                    hess.push((i, j, d.compile()));
                }
            }
        }
        let gns = grad.dot(&grad);
        Arc::new(Self {
            value: f.compile(),
            grad: grad.components.iter().map(|p| p.compile()).collect(),
            hess,
            laplacian: f.laplacian().compile(),
            grad_norm_sq_grad: gns.grad().components.iter().map(|p| p.compile()).collect(),
            spec,
        })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn g(&self) -> u32 {
        self.spec.g
    }

    /// Hypersurface dimension `n`.
    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn ambient_dim(&self) -> usize {
        self.spec.ambient_dim
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.value.eval(x)
    }

    pub fn euclidean_gradient(&self, x: &[f64]) -> DVector<f64> {
        DVector::from_iterator(x.len(), self.grad.iter().map(|p| p.eval(x)))
    }

    pub fn euclidean_hessian(&self, x: &[f64]) -> DMatrix<f64> {
        let d = x.len();
        let mut h = DMatrix::zeros(d, d);
        for (i, j, p) in &self.hess {
            let v = p.eval(x);
            h[(*i, *j)] = v;
            h[(*j, *i)] = v;
        }
        h
    }

    pub fn euclidean_laplacian(&self, x: &[f64]) -> f64 {
        self.laplacian.eval(x)
    }

    /// Tangential projection of the Euclidean gradient at a unit vector.
    pub fn sphere_gradient(&self, x: &[f64]) -> DVector<f64> {
        let xv = DVector::from_column_slice(x);
        let ge = self.euclidean_gradient(x);
        let radial = ge.dot(&xv);
        ge - xv * radial
    }

    /// `ξ = grad^S V / |grad^S V|`, or `None` on the focal set.
    pub fn unit_normal(&self, x: &[f64]) -> Option<DVector<f64>> {
        let gs = self.sphere_gradient(x);
        let norm = gs.norm();
        (norm > tolerance::MIN_SPHERE_GRADIENT).then(|| gs / norm)
    }

    /// `|grad^S V|² = |grad^E F|² − g²F²`.
    pub fn sphere_grad_norm_sq(&self, x: &[f64]) -> f64 {
        let grad: Vec<f64> = self.grad.iter().map(|p| p.eval(x)).collect();
        sphere_grad_norm_sq_from(&grad, self.value(x), self.g())
    }

    /// `Δ^S V = Δ^E F − g(g−1)F − g(n+1)F`.
    pub fn sphere_laplacian(&self, x: &[f64]) -> f64 {
        sphere_laplacian_from(self.euclidean_laplacian(x), self.value(x), self.g(), self.n())
    }

    /// Euclidean gradient of `|grad^E F|² − g²F²`.
    pub(crate) fn grad_norm_defect_gradient(&self, x: &[f64]) -> DVector<f64> {
        let g2 = (self.g() * self.g()) as f64;
        let f = self.value(x);
        let ge = self.euclidean_gradient(x);
        let gg = DVector::from_iterator(x.len(), self.grad_norm_sq_grad.iter().map(|p| p.eval(x)));
        gg - ge * (2.0 * g2 * f)
    }

    /// Angular distance from `x` to the nearer focal submanifold, read off
    /// from `V = cos(gτ)`.
    pub fn focal_distance(&self, x: &[f64]) -> f64 {
        let g = self.g() as f64;
        let tau = self.value(x).clamp(-1.0, 1.0).acos() / g;
        tau.min(std::f64::consts::PI / g - tau)
    }
}

/// A unit vector in `ℝ^{n+2}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SpherePoint(Vec<f64>);

impl SpherePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let norm = coords.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tolerance::SPHERE_NORM {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self(coords))
    }

    /// Normalizes `coords`; fails only for the zero vector.
    pub fn normalized(coords: &[f64]) -> Result<Self> {
        let norm = coords.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self(coords.iter().map(|v| v / norm).collect()))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// A point on a regular level set together with its unit normal
/// `ξ = +grad^S V / |grad^S V|`.
#[derive(Debug, Clone)]
pub struct LevelPoint {
    field: Arc<FamilyField>,
    point: SpherePoint,
    level: f64,
    normal: DVector<f64>,
}

impl LevelPoint {
    /// Wraps a sphere point, taking its own `V` value as the level.
    pub fn at(field: &Arc<FamilyField>, point: SpherePoint) -> Result<Self> {
        if point.dim() != field.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: field.ambient_dim(), got: point.dim() });
        }
        let x = point.coords();
        let gs = field.sphere_gradient(x);
        let norm = gs.norm();
        if norm <= tolerance::MIN_SPHERE_GRADIENT {
            return Err(Error::NearFocalSet(norm));
        }
        Ok(Self { field: field.clone(), level: field.value(x), normal: gs / norm, point })
    }

    pub fn field(&self) -> &Arc<FamilyField> {
        &self.field
    }

    pub fn point(&self) -> &SpherePoint {
        &self.point
    }

    pub fn coords(&self) -> &[f64] {
        self.point.coords()
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn normal(&self) -> &DVector<f64> {
        &self.normal
    }

    /// Residuals of the invariants `V(x) = s`, `⟨ξ, x⟩ = 0`, `|ξ| = 1`.
    pub fn invariant_residuals(&self) -> (f64, f64, f64) {
        let x = self.point.to_vector();
        (
            (self.field.value(self.coords()) - self.level).abs(),
            self.normal.dot(&x).abs(),
            (self.normal.norm() - 1.0).abs(),
        )
    }
}

impl Serialize for LevelPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LevelPoint", 3)?;
        st.serialize_field("coords", self.point.coords())?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("normal", self.normal.as_slice())?;
        st.end()
    }
}

/// Seeded source of uniform sphere points (normalized Gaussian draws).
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sphere_point(&mut self, dim: usize) -> SpherePoint {
        loop {
            let v: Vec<f64> = (0..dim).map(|_| self.rng.sample(StandardNormal)).collect();
            if let Ok(p) = SpherePoint::normalized(&v) {
                return p;
            }
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// A random point on the level `s`, retrying from fresh seeds when the
    /// projection fails.
    pub fn level_point(&mut self, field: &Arc<FamilyField>, s: f64) -> Result<LevelPoint> {
        let mut last = Error::NoSamples;
        for _ in 0..16 {
            let x0 = self.sphere_point(field.ambient_dim());
            match project_to_level(field, x0.coords(), s) {
                Ok(p) => return Ok(p),
                Err(e @ Error::LevelOutOfRange(_)) => return Err(e),
                Err(e) => last = e,
            }
        }
        Err(last)
    }
}
