//! Default numerical thresholds.

/// `| |x| − 1 |` accepted for a point on the unit sphere.
pub const SPHERE_NORM: f64 = 1e-12;
/// `|V(x) − s|` accepted for a point on the level set `V = s`.
pub const LEVEL: f64 = 1e-10;
/// Deviation of the unit normal from unit length / tangency.
pub const NORMAL: f64 = 1e-10;
/// Iteration cap of the level projection.
pub const MAX_PROJECTION_ITERATIONS: usize = 200;
/// Below this `|grad^S V|` a point counts as focal.
pub const MIN_SPHERE_GRADIENT: f64 = 1e-8;

/// Absolute floor for the eigenvalue cluster gap.
pub const CLUSTER_GAP_FLOOR: f64 = 1e-4;
/// Gaps larger than this multiple of the median intra-cluster gap split clusters.
pub const CLUSTER_GAP_FACTOR: f64 = 10.0;

/// Singular values below this fraction of the largest one count as zero.
pub const RANK_RELATIVE: f64 = 1e-7;
/// Central-difference step on unit-scale inputs.
pub const FINITE_DIFFERENCE_STEP: f64 = 1e-5;
/// RK4 step in arc length.
pub const RK4_STEP: f64 = 1e-3;
/// Minimum angular distance kept from focal points by parallel and flow checks.
pub const FOCAL_MARGIN: f64 = 0.05;

/// Principal angles, Cartan identity, parallel law, spectrum stability.
pub const SPECTRAL: f64 = 1e-7;
/// Beltrami equations and the scalar law along normal circles.
pub const IDENTITY: f64 = 1e-9;
/// Relative tolerance of the mean-curvature comparison.
pub const MEAN_CURVATURE_RELATIVE: f64 = 1e-6;
/// Focal shape-operator eigenvalues (finite-difference limited).
pub const FOCAL_EIGENVALUE: f64 = 1e-5;
/// `|trace A_η|` on focal submanifolds.
pub const FOCAL_TRACE: f64 = 1e-6;
/// Distance of a gradient-flow line from its great circle.
pub const FLOW_DEVIATION: f64 = 1e-6;
/// `‖A − Aᵀ‖_max`.
pub const SYMMETRY: f64 = 1e-10;

pub const DEFAULT_SEED: u64 = 20_240_611;

/// Tunable subset used by the command-line front end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub spectral: f64,
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { spectral: SPECTRAL, identity: IDENTITY }
    }
}
