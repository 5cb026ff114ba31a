//! Cartan–Münzner polynomials of the classical isoparametric families.
//!
//! Every family is stored with coefficients in `ℚ[√3]`; the `g = 1` and `g = 2`
//! polynomials simply have no `√3` part.
//!
//! Variable order for `g = 3` over an algebra of dimension `m` is
//! `(x, y, X₀…X_{m−1}, Y₀…Y_{m−1}, Z₀…Z_{m−1})`, so the ambient space has
//! `3m + 2` coordinates.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AlgElem, AlgebraKind};
use crate::error::{Error, Result};
use crate::polynomial::{JsonCoefficient, Poly};
use crate::scalar::{int, rat, QSqrt3, Rational};

pub type FamilyPoly = Poly<QSqrt3>;

/// Which construction a family comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Small spheres `x₁ = const`, hypersurface dimension `n`.
    G1 { n: u32 },
    /// Products `S^p(cos t) × S^q(sin t)`.
    G2 { p: u32, q: u32 },
    /// Cartan's cubic over ℝ, ℂ, ℍ or 𝕆.
    G3(AlgebraKind),
}

impl FamilyKind {
    pub fn name(&self) -> String {
        match self {
            FamilyKind::G1 { n } => format!("g1-{n}"),
            FamilyKind::G2 { p, q } => format!("g2-{p}-{q}"),
            FamilyKind::G3(kind) => format!("g3-{}", kind.letter()),
        }
    }

    pub fn build(&self) -> Result<FamilySpec> {
        match *self {
            FamilyKind::G1 { n } => family_g1(n),
            FamilyKind::G2 { p, q } => family_g2(p, q),
            FamilyKind::G3(kind) => Ok(family_g3(kind)),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Parses the selector grammar `g1-<n>`, `g2-<p>-<q>`, `g3-<r|c|h|o>`. The
/// algebra may also be spelled out, as in `g3-octonion`.
impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(format!("unknown family selector `{s}`"));
        let parts: Vec<&str> = s.split('-').collect();
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        match parts.as_slice() {
            ["g1", n] => Ok(FamilyKind::G1 { n: num(n)? }),
            ["g2", p, q] => Ok(FamilyKind::G2 { p: num(p)?, q: num(q)? }),
            ["g3", a] => {
                let by_letter = || {
                    let mut cs = a.chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) => AlgebraKind::from_letter(c),
                        _ => None,
                    }
                };
                AlgebraKind::ALL
                    .into_iter()
                    .find(|k| k.name() == *a)
                    .or_else(by_letter)
                    .map(FamilyKind::G3)
                    .ok_or_else(bad)
            }
            _ => Err(bad()),
        }
    }
}

/// A named isoparametric family together with its Cartan–Münzner polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub name: String,
    /// Number of distinct principal curvatures.
    pub g: u32,
    /// `n + 2`.
    pub ambient_dim: usize,
    /// `(m₁, m₂)`; further multiplicities repeat with period two.
    pub multiplicities: [u32; 2],
    pub f: FamilyPoly,
    /// `g²(m₂ − m₁)/2`.
    pub c_expected: Rational,
}

impl FamilySpec {
    /// Dimension of the hypersurfaces.
    pub fn n(&self) -> usize {
        self.ambient_dim - 2
    }

    /// Multiplicity of the i-th principal curvature (0-based).
    pub fn multiplicity(&self, i: usize) -> u32 {
        self.multiplicities[i % 2]
    }

    pub fn to_json(&self) -> Value {
        let mut c = serde_json::Map::new();
        self.c_expected.write_json(&mut c);
        json!({
            "name": self.name,
            "g": self.g,
            "ambient_dim": self.ambient_dim,
            "n": self.n(),
            "multiplicities": self.multiplicities,
            "c_expected": c,
            "polynomial": self.f.to_json(),
        })
    }
}

fn c_for(g: u32, m: [u32; 2]) -> Rational {
    let g = int(g as i64);
    &g * &g * (int(m[1] as i64) - int(m[0] as i64)) / int(2)
}

pub fn family_g1(n: u32) -> Result<FamilySpec> {
    if n < 1 {
        return Err(Error::InvalidFamily("g = 1 family needs n ≥ 1".into()));
    }
    let dim = n as usize + 2;
    let multiplicities = [n, n];
    Ok(FamilySpec {
        kind: FamilyKind::G1 { n },
        name: FamilyKind::G1 { n }.name(),
        g: 1,
        ambient_dim: dim,
        multiplicities,
        f: FamilyPoly::var(dim, 0),
        c_expected: c_for(1, multiplicities),
    })
}

/// `F = Σ_{i ≤ p+1} x_i² − Σ_{j > p+1} x_j²` on `ℝ^{p+q+2}`.
pub fn family_g2(p: u32, q: u32) -> Result<FamilySpec> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidFamily(format!("g = 2 family needs p, q ≥ 1 (got {p}, {q})")));
    }
    let dim = (p + q + 2) as usize;
    let first = p as usize + 1;
    let terms = (0..dim).map(|i| {
        let mut e = vec![0; dim];
        e[i] = 2;
        let sign = if i < first { 1 } else { -1 };
        (e, QSqrt3::from(int(sign)))
    });
    let multiplicities = [p, q];
    Ok(FamilySpec {
        kind: FamilyKind::G2 { p, q },
        name: FamilyKind::G2 { p, q }.name(),
        g: 2,
        ambient_dim: dim,
        multiplicities,
        f: FamilyPoly::from_terms(dim, terms)?,
        c_expected: c_for(2, multiplicities),
    })
}

/// Product of algebra elements whose coordinates are polynomials.
fn alg_mul(table: &[Vec<(i8, usize)>], a: &[FamilyPoly], b: &[FamilyPoly]) -> Vec<FamilyPoly> {
    let nvars = a[0].nvars();
    let mut out = vec![FamilyPoly::zero(nvars); a.len()];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let (sign, k) = table[i][j];
            let prod = ai * bj;
            out[k] = if sign > 0 { &out[k] + &prod } else { &out[k] - &prod };
        }
    }
    out
}

fn alg_conj(a: &[FamilyPoly]) -> Vec<FamilyPoly> {
    a.iter().enumerate().map(|(i, p)| if i == 0 { p.clone() } else { -p }).collect()
}

fn alg_add(a: &[FamilyPoly], b: &[FamilyPoly]) -> Vec<FamilyPoly> {
    a.iter().zip(b).map(|(p, q)| p + q).collect()
}

/// Cartan's cubic on `ℝ^{3m+2}`:
///
/// ```text
/// x³ − 3xy² + (3/2)x(XX̄ + YȲ − 2ZZ̄) + (3√3/2)y(XX̄ − YȲ) + (3√3/2)(XYZ + Z̄ȲX̄)
/// ```
///
/// The products are expanded with the structure constants of `kind`.
pub fn family_g3(kind: AlgebraKind) -> FamilySpec {
    let m = kind.dim();
    let dim = 3 * m + 2;
    let table = kind.multiplication_table();
    let var = |i| FamilyPoly::var(dim, i);
    let block = |start: usize| (0..m).map(|a| var(start + a)).collect::<Vec<_>>();
    let (x, y) = (var(0), var(1));
    let (big_x, big_y, big_z) = (block(2), block(2 + m), block(2 + 2 * m));

    let re_of = |v: Vec<FamilyPoly>| v.into_iter().next().unwrap();
    let xx = re_of(alg_mul(&table, &big_x, &alg_conj(&big_x)));
    let yy = re_of(alg_mul(&table, &big_y, &alg_conj(&big_y)));
    let zz = re_of(alg_mul(&table, &big_z, &alg_conj(&big_z)));
    let xyz = alg_mul(&table, &alg_mul(&table, &big_x, &big_y), &big_z);
    let zyx = alg_mul(
        &table,
        &alg_mul(&table, &alg_conj(&big_z), &alg_conj(&big_y)),
        &alg_conj(&big_x),
    );
    let triple = re_of(alg_add(&xyz, &zyx));

    let q = |r: Rational| QSqrt3::from(r);
    let three_halves = q(rat(3, 2));
    let three_sqrt3_halves = QSqrt3::sqrt3_multiple(rat(3, 2));

    let cubic = &(&(&x * &x) * &x) - &(&(&x * &y) * &y).scale(&q(int(3)));
    let mixed = &(&xx + &yy) - &zz.scale(&q(int(2)));
    let t2 = (&x * &mixed).scale(&three_halves);
    let t3 = (&y * &(&xx - &yy)).scale(&three_sqrt3_halves);
    let t4 = triple.scale(&three_sqrt3_halves);
    let f = &(&(&cubic + &t2) + &t3) + &t4;

    let multiplicities = [m as u32, m as u32];
    FamilySpec {
        kind: FamilyKind::G3(kind),
        name: FamilyKind::G3(kind).name(),
        g: 3,
        ambient_dim: dim,
        multiplicities,
        f,
        c_expected: c_for(3, multiplicities),
    }
}

/// All built-in families.
pub fn catalog() -> Vec<FamilySpec> {
    let mut out = vec![family_g1(2).unwrap(), family_g1(3).unwrap()];
    for (p, q) in [(1, 1), (1, 2), (2, 2)] {
        out.push(family_g2(p, q).unwrap());
    }
    out.extend(AlgebraKind::ALL.into_iter().map(family_g3));
    out
}

pub fn catalog_names() -> Vec<String> {
    catalog().into_iter().map(|f| f.name).collect()
}

/// Parametrization of the focal submanifold `F = 1` of the cubic family for
/// `m ∈ {1, 2, 4}`. The map is invariant under `(u, v, w) ↦ (uλ, vλ, wλ)` for
/// unit `λ`, so it descends to the projective plane over the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FocalChart {
    kind: AlgebraKind,
}

impl FocalChart {
    pub fn new(kind: AlgebraKind) -> Result<Self> {
        if kind == AlgebraKind::Octonion {
            return Err(Error::NoOctonionChart);
        }
        Ok(Self { kind })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// Image point `(x, y, X, Y, Z)` with
    ///
    /// ```text
    /// X = √3 v w̄,  Y = √3 w ū,  Z = √3 u v̄,
    /// x = |w|² − (|u|² + |v|²)/2,  y = (√3/2)(|v|² − |u|²)
    /// ```
    ///
    /// where `|u|² + |v|² + |w|² = 1`.
    pub fn map(&self, u: &AlgElem, v: &AlgElem, w: &AlgElem) -> Result<Vec<QSqrt3>> {
        for e in [u, v, w] {
            if e.kind() != self.kind {
                return Err(Error::AlgebraMismatch { left: self.kind, right: e.kind() });
            }
        }
        let (nu, nv, nw) = (u.norm_sq(), v.norm_sq(), w.norm_sq());
        let total = &nu + &nv + &nw;
        if !total.is_one() {
            return Err(Error::NotUnitTriple(total.to_string()));
        }
        let x = &nw - (&nu + &nv) / int(2);
        let y = QSqrt3::sqrt3_multiple((&nv - &nu) / int(2));
        let sqrt3_times = |a: AlgElem| {
            a.coords().iter().map(|c| QSqrt3::sqrt3_multiple(c.clone())).collect::<Vec<_>>()
        };
        let big_x = sqrt3_times(v.mul(&w.conj())?);
        let big_y = sqrt3_times(w.mul(&u.conj())?);
        let big_z = sqrt3_times(u.mul(&v.conj())?);

        let mut point = Vec::with_capacity(3 * self.kind.dim() + 2);
        point.push(QSqrt3::from(x));
        point.push(y);
        point.extend(big_x);
        point.extend(big_y);
        point.extend(big_z);
        Ok(point)
    }
}

pub fn focal_parametrization(u: &AlgElem, v: &AlgElem, w: &AlgElem) -> Result<Vec<QSqrt3>> {
    FocalChart::new(u.kind())?.map(u, v, w)
}

/// Outcome of the exact Cartan–Münzner checks for one family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactIdentityReport {
    pub family: String,
    pub g: u32,
    pub homogeneous_degree: Option<u32>,
    /// `⟨grad F, x⟩ − gF ≡ 0`.
    pub euler_zero: bool,
    /// `|grad F|² − g² r^{2g−2} ≡ 0`.
    pub grad_norm_zero: bool,
    pub grad_norm_residual_terms: usize,
    /// `ΔF ∓ c r^{g−2} ≡ 0` for one of the signs; always true when the check
    /// is skipped.
    pub laplacian_zero: bool,
    pub laplacian_residual_terms: usize,
    /// `+1` or `−1` for the sign of `c` that matched, `0` when `c = 0`, absent
    /// when no sign matched or the check was skipped.
    pub c_sign: Option<i8>,
    /// The `g = 1` equation `ΔF = c r^{−1}` is replaced by `ΔF ≡ 0`.
    pub c_equation_skipped: bool,
}

impl ExactIdentityReport {
    pub fn passed(&self) -> bool {
        self.homogeneous_degree == Some(self.g)
            && self.euler_zero
            && self.grad_norm_zero
            && self.laplacian_zero
    }
}

/// Checks the Cartan–Münzner equations as exact polynomial identities.
pub fn verify_exact(spec: &FamilySpec) -> ExactIdentityReport {
    let f = &spec.f;
    let dim = spec.ambient_dim;
    let g = spec.g;
    let r2 = FamilyPoly::radius_sq(dim);
    let g_sq = QSqrt3::from(int((g * g) as i64));

    let euler = f.euler_residual(g);
    let grad_norm_residual = &f.grad_norm_sq() - &r2.pow(g - 1).scale(&g_sq);
    let lap = f.laplacian();

    let (laplacian_zero, laplacian_residual_terms, c_sign, skipped) = if g == 1 {
        (lap.is_zero(), lap.num_terms(), None, true)
    } else {
        let base = r2.pow(g - 2).scale(&QSqrt3::from(spec.c_expected.clone()));
        let plus = &lap - &base;
        let minus = &lap + &base;
        if spec.c_expected.is_zero() {
            (plus.is_zero(), plus.num_terms(), plus.is_zero().then_some(0), false)
        } else if plus.is_zero() {
            (true, 0, Some(1), false)
        } else if minus.is_zero() {
            (true, 0, Some(-1), false)
        } else {
            (false, plus.num_terms().min(minus.num_terms()), None, false)
        }
    };

    ExactIdentityReport {
        family: spec.name.clone(),
        g,
        homogeneous_degree: f.is_homogeneous(),
        euler_zero: euler.is_zero(),
        grad_norm_zero: grad_norm_residual.is_zero(),
        grad_norm_residual_terms: grad_norm_residual.num_terms(),
        laplacian_zero,
        laplacian_residual_terms,
        c_sign,
        c_equation_skipped: skipped,
    }
}

/// `sign · c_expected` as an `f64`, with `sign` from [`ExactIdentityReport::c_sign`].
pub fn signed_c(spec: &FamilySpec, sign: i8) -> f64 {
    sign as f64 * crate::scalar::rational_to_f64(&spec.c_expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> QSqrt3 {
        QSqrt3::from(int(v))
    }

    #[test]
    fn g1_examples() {
        let f = family_g1(2).unwrap();
        assert_eq!(f.ambient_dim, 4);
        assert_eq!(f.f, FamilyPoly::var(4, 0));
        assert_eq!(f.f.grad_norm_sq(), FamilyPoly::constant(4, q(1)));
        assert!(f.f.laplacian().is_zero());
        assert!(family_g1(0).is_err());
    }

    #[test]
    fn g2_examples() {
        let f = family_g2(1, 1).unwrap();
        assert_eq!(f.f.grad_norm_sq(), FamilyPoly::radius_sq(4).scale(&q(4)));
        for (p, qq) in [(1, 1), (1, 2), (2, 2), (3, 1)] {
            let s = family_g2(p, qq).unwrap();
            let expected = 2 * (p as i64 - qq as i64);
            assert_eq!(s.f.laplacian(), FamilyPoly::constant(s.ambient_dim, q(expected)));
            assert_eq!(s.c_expected, int(2 * (qq as i64 - p as i64)));
        }
        assert!(family_g2(0, 1).is_err());
        assert!(family_g2(1, 0).is_err());
    }

    #[test]
    fn g2_is_constant_on_sphere_products() {
        // V on S^1(cos t) × S^2(sin t) equals cos 2t.
        let s = family_g2(1, 2).unwrap();
        for (k, t) in [0.1f64, 0.4, 0.7, 1.2].into_iter().enumerate() {
            let a = 0.3 + k as f64;
            let b = 1.1 * k as f64;
            let pt = [
                t.cos() * a.cos(),
                t.cos() * a.sin(),
                t.sin() * b.cos(),
                t.sin() * b.sin() * 0.6,
                t.sin() * b.sin() * 0.8,
            ];
            let v = s.f.eval_f64(&pt).unwrap();
            assert!((v - (2.0 * t).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn g3_real_matches_direct_expansion() {
        let s = family_g3(AlgebraKind::Real);
        assert_eq!(s.ambient_dim, 5);
        assert_eq!(s.f.is_homogeneous(), Some(3));
        // Independent evaluation of the five-term formula at a rational point
        // on S^4: (x, y, X, Y, Z) = (2, 3, 6, 0, 0)/7.
        let pt = [rat(2, 7), rat(3, 7), rat(6, 7), rat(0, 1), rat(0, 1)];
        let (x, y, xx, yy, zz) = (&pt[0], &pt[1], &pt[2], &pt[3], &pt[4]);
        let rational_part = x * x * x - int(3) * x * y * y
            + rat(3, 2) * x * (xx * xx + yy * yy - int(2) * zz * zz);
        let sqrt3_part = rat(3, 2) * y * (xx * xx - yy * yy) + rat(3, 2) * int(2) * xx * yy * zz;
        let expected = QSqrt3::new(rational_part, sqrt3_part);
        let at: Vec<QSqrt3> = pt.iter().cloned().map(QSqrt3::from).collect();
        assert_eq!(s.f.eval(&at).unwrap(), expected);
    }

    #[test]
    fn g3_value_at_pole() {
        for kind in AlgebraKind::ALL {
            let s = family_g3(kind);
            let mut pt = vec![QSqrt3::zero(); s.ambient_dim];
            pt[0] = QSqrt3::one();
            assert_eq!(s.f.eval(&pt).unwrap(), QSqrt3::one());
        }
    }

    #[test]
    fn g3_term_counts_are_stable() {
        // x³, xy², 3m x|·|² terms, 2m y|·|² terms and the triple-product terms.
        let counts: Vec<usize> =
            AlgebraKind::ALL.iter().map(|&k| family_g3(k).f.num_terms()).collect();
        assert_eq!(counts, vec![2 + 3 + 2 + 1, 2 + 6 + 4 + 4, 2 + 12 + 8 + 16, 2 + 24 + 16 + 64]);
    }

    #[test]
    fn catalog_contents() {
        let cat = catalog();
        assert_eq!(cat.len(), 9);
        for s in &cat {
            assert_eq!(s.f.is_homogeneous(), Some(s.g), "{}", s.name);
            if s.g >= 2 {
                assert_eq!(s.n() as u32 * 2, s.g * (s.multiplicities[0] + s.multiplicities[1]));
            }
        }
        assert_eq!(
            catalog_names(),
            vec!["g1-2", "g1-3", "g2-1-1", "g2-1-2", "g2-2-2", "g3-r", "g3-c", "g3-h", "g3-o"]
        );
    }

    #[test]
    fn selectors_round_trip() {
        for s in catalog() {
            let kind: FamilyKind = s.name.parse().unwrap();
            assert_eq!(kind, s.kind);
        }
        assert_eq!("g3-octonion".parse::<FamilyKind>().unwrap(), FamilyKind::G3(AlgebraKind::Octonion));
        for bad in ["g4-1", "g3-x", "g2-1", "g1", "nonsense", "g3-oo", "g1-a"] {
            assert!(bad.parse::<FamilyKind>().is_err(), "{bad}");
        }
    }

    #[test]
    fn small_family_identities() {
        for s in catalog().into_iter().filter(|s| s.ambient_dim <= 8) {
            let r = verify_exact(&s);
            assert!(r.passed(), "{r:?}");
        }
        let r = verify_exact(&family_g2(1, 2).unwrap());
        assert_eq!(r.c_sign, Some(-1));
        assert_eq!(verify_exact(&family_g2(2, 2).unwrap()).c_sign, Some(0));
        assert!(verify_exact(&family_g1(3).unwrap()).c_equation_skipped);
    }

    #[test]
    fn broken_polynomial_fails_verification() {
        let mut s = family_g3(AlgebraKind::Real);
        s.f = &s.f + &FamilyPoly::var(5, 0).pow(3);
        let r = verify_exact(&s);
        assert!(!r.grad_norm_zero);
        assert!(!r.passed());
    }

    #[test]
    fn focal_chart_basic_points() {
        let k = AlgebraKind::Real;
        let s = family_g3(k);
        let e = |c: i64| AlgElem::from_i64(k, &[c]).unwrap();
        let p = focal_parametrization(&e(1), &e(0), &e(0)).unwrap();
        assert_eq!(p[0], QSqrt3::from(rat(-1, 2)));
        assert_eq!(p[1], QSqrt3::sqrt3_multiple(rat(-1, 2)));
        assert!(p[2..].iter().all(Zero::is_zero));
        assert_eq!(s.f.eval(&p).unwrap(), QSqrt3::one());

        let p = focal_parametrization(&e(0), &e(0), &e(1)).unwrap();
        assert_eq!(p[0], q(1));
        assert!(p[1..].iter().all(Zero::is_zero));
        assert_eq!(s.f.eval(&p).unwrap(), QSqrt3::one());
    }

    #[test]
    fn focal_chart_errors() {
        let o = |c: i64| AlgElem::from_i64(AlgebraKind::Octonion, &[c, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let err = focal_parametrization(&o(1), &o(0), &o(0)).unwrap_err();
        assert_eq!(err.to_string(), "no parametrization for m = 8");
        let r = |c: i64| AlgElem::from_i64(AlgebraKind::Real, &[c]).unwrap();
        assert!(matches!(
            focal_parametrization(&r(1), &r(1), &r(0)),
            Err(Error::NotUnitTriple(_))
        ));
        let c = AlgElem::from_i64(AlgebraKind::Complex, &[0, 0]).unwrap();
        assert!(matches!(
            focal_parametrization(&r(1), &c, &r(0)),
            Err(Error::AlgebraMismatch { .. })
        ));
    }

    #[test]
    fn focal_points_lie_on_unit_sphere() {
        let k = AlgebraKind::Quaternion;
        let u = AlgElem::new(k, vec![rat(1, 3), rat(0, 1), rat(1, 3), rat(0, 1)]).unwrap();
        let v = AlgElem::new(k, vec![rat(0, 1), rat(2, 3), rat(0, 1), rat(0, 1)]).unwrap();
        let w = AlgElem::new(k, vec![rat(1, 3), rat(1, 3), rat(0, 1), rat(1, 3)]).unwrap();
        let p = focal_parametrization(&u, &v, &w).unwrap();
        let norm = p.iter().fold(QSqrt3::zero(), |acc, c| acc + c.clone() * c.clone());
        assert_eq!(norm, QSqrt3::one());
        assert_eq!(family_g3(k).f.eval(&p).unwrap(), QSqrt3::one());
        assert!(p[0].is_zero());
    }

    #[test]
    fn signed_c_convention() {
        let s = family_g2(1, 2).unwrap();
        assert_eq!(signed_c(&s, 1), 2.0);
        assert_eq!(signed_c(&s, -1), -2.0);
        assert_eq!(signed_c(&family_g2(2, 2).unwrap(), 1), 0.0);
    }
}
