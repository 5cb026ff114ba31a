//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors ordered graded
//! lexicographically, and zero coefficients are never stored. Two polynomials
//! are therefore equal exactly when their term maps are equal, which is what the
//! identity checks rely on.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, QSqrt3, Rational};

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    // graded lexicographic
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with coefficients in `C`.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial with plain rational coefficients.
pub type MultiPoly = Poly<Rational>;

impl<C: Coefficient> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), C::one());
        p
    }

    /// `Σ x_i²` in `nvars` variables.
    pub fn radius_sq(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = 2;
            p.add_term(Monomial(e), C::one());
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: exps.len() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a.clone() * c.clone());
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, C::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Converts coefficients into another ring.
    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            p.add_term(Monomial(exps), c.clone() * C::from_i64(e as i64));
        }
        p
    }

    pub fn grad(&self) -> PolyVec<C> {
        PolyVec { components: (0..self.nvars).map(|i| self.derivative(i)).collect() }
    }

    /// Symmetric matrix of second partials; `hessian()[i][j] = ∂_i ∂_j p`.
    pub fn hessian(&self) -> Vec<Vec<Self>> {
        let grad = self.grad();
        let n = self.nvars;
        let mut h = vec![vec![Self::zero(n); n]; n];
        for i in 0..n {
            for j in i..n {
                let d = grad.components[i].derivative(j);
                h[j][i] = d.clone();
                h[i][j] = d;
            }
        }
        h
    }

    pub fn laplacian(&self) -> Self {
        (0..self.nvars).fold(Self::zero(self.nvars), |acc, i| {
            &acc + &self.derivative(i).derivative(i)
        })
    }

    /// `Σ (∂p/∂x_i)²`.
    pub fn grad_norm_sq(&self) -> Self {
        let g = self.grad();
        g.dot(&g)
    }

    /// The common total degree of every term, if there is one. The zero
    /// polynomial has no degree.
    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// `⟨grad p, x⟩ − g·p`; the zero polynomial iff `p` is homogeneous of
    /// degree `g` (Euler).
    pub fn euler_residual(&self, g: u32) -> Self {
        let n = self.nvars;
        let radial = (0..n).fold(Self::zero(n), |acc, i| {
            &acc + &(&Self::var(n, i) * &self.derivative(i))
        });
        &radial - &self.scale(&C::from_i64(g as i64))
    }

    /// Exact evaluation at a point whose coordinates live in the coefficient ring.
    pub fn eval(&self, x: &[C]) -> Result<C> {
        self.check_dim(x.len())?;
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * xi.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// binary64 evaluation with compensated summation over terms.
    pub fn eval_f64(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        let mut sum = CompensatedSum::default();
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (xi, &e) in x.iter().zip(&m.0) {
                if e > 0 {
                    t *= xi.powi(e as i32);
                }
            }
            sum.add(t);
        }
        Ok(sum.value())
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got });
        }
        Ok(())
    }

    /// Precomputed float form for repeated evaluation.
    pub fn compile(&self) -> FloatPoly {
        FloatPoly::from_poly(self)
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                p.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        p
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.scale(&-C::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A vector of polynomials in the same variables, e.g. a gradient.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyVec<C> {
    pub components: Vec<Poly<C>>,
}

impl<C: Coefficient> PolyVec<C> {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn dot(&self, other: &PolyVec<C>) -> Poly<C> {
        let n = self.components.first().map_or(0, Poly::nvars);
        self.components
            .iter()
            .zip(&other.components)
            .fold(Poly::zero(n), |acc, (a, b)| &acc + &(a * b))
    }

    /// `⟨v, x⟩` with `x` the vector of coordinate functions.
    pub fn dot_position(&self) -> Poly<C> {
        let n = self.components.first().map_or(0, Poly::nvars);
        self.components
            .iter()
            .enumerate()
            .fold(Poly::zero(n), |acc, (i, a)| &acc + &(&Poly::var(n, i) * a))
    }

    pub fn eval_f64(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.components.iter().map(|p| p.eval_f64(x)).collect()
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Default, Clone, Copy, Debug)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// A polynomial flattened for fast binary64 evaluation: each term keeps only
/// its nonzero `(variable, exponent)` pairs.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    nvars: usize,
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl FloatPoly {
    pub fn from_poly<C: Coefficient>(p: &Poly<C>) -> Self {
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                let factors = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e as i32))
                    .collect();
                (c.to_f64(), factors)
            })
            .collect();
        Self { nvars: p.nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Evaluates without a dimension check; `x.len()` must equal `nvars`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        let mut sum = CompensatedSum::default();
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(i, e) in factors {
                t *= if e == 1 { x[i] } else { x[i].powi(e) };
            }
            sum.add(t);
        }
        sum.value()
    }
}

/// Value of `|grad^S V|² = |grad^E F|² − g²F²` at a unit vector `x`, where `V`
/// is the restriction of the degree-`g` homogeneous polynomial `F` to the sphere.
pub fn sphere_grad_norm_sq_value<C: Coefficient>(f: &Poly<C>, g: u32, x: &[f64]) -> Result<f64> {
    check_sphere_input(f, g, x)?;
    let grad = f.grad().eval_f64(x)?;
    let value = f.eval_f64(x)?;
    Ok(sphere_grad_norm_sq_from(&grad, value, g))
}

/// Value of `Δ^S V = Δ^E F − g(g−1)F − g(n+1)F` at a unit vector `x`.
pub fn sphere_laplacian_value<C: Coefficient>(
    f: &Poly<C>,
    g: u32,
    n: usize,
    x: &[f64],
) -> Result<f64> {
    check_sphere_input(f, g, x)?;
    let lap = f.laplacian().eval_f64(x)?;
    let value = f.eval_f64(x)?;
    Ok(sphere_laplacian_from(lap, value, g, n))
}

pub(crate) fn sphere_grad_norm_sq_from(grad: &[f64], value: f64, g: u32) -> f64 {
    let mut s = CompensatedSum::default();
    for d in grad {
        s.add(d * d);
    }
    let g = g as f64;
    s.add(-g * g * value * value);
    s.value()
}

pub(crate) fn sphere_laplacian_from(euclidean_laplacian: f64, value: f64, g: u32, n: usize) -> f64 {
    let g = g as f64;
    euclidean_laplacian - g * (g - 1.0) * value - g * (n as f64 + 1.0) * value
}

fn check_sphere_input<C: Coefficient>(f: &Poly<C>, g: u32, x: &[f64]) -> Result<()> {
    if x.len() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), got: x.len() });
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit { norm });
    }
    match f.is_homogeneous() {
        Some(d) if d == g => Ok(()),
        _ => Err(Error::NotHomogeneous(g)),
    }
}

// ---------------------------------------------------------------------------
// JSON

/// Coefficients that can be written into the `{exps, num, den}` term layout.
pub trait JsonCoefficient: Coefficient {
    fn write_json(&self, term: &mut Map<String, Value>);
    fn read_json(term: &Map<String, Value>) -> Result<Self>;
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn read_int(v: Option<&Value>, what: &str) -> Result<BigInt> {
    let bad = || Error::InvalidFamily(format!("bad polynomial JSON field `{what}`"));
    match v {
        Some(Value::Number(n)) => n.as_i64().map(BigInt::from).ok_or_else(bad),
        Some(Value::String(s)) => s.parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn read_rational(obj: &Map<String, Value>) -> Result<Rational> {
    let num = read_int(obj.get("num"), "num")?;
    let den = read_int(obj.get("den"), "den")?;
    if den.is_zero() {
        return Err(Error::InvalidFamily("zero denominator in polynomial JSON".into()));
    }
    Ok(Rational::new(num, den))
}

impl JsonCoefficient for Rational {
    fn write_json(&self, term: &mut Map<String, Value>) {
        term.insert("num".into(), int_json(self.numer()));
        term.insert("den".into(), int_json(self.denom()));
    }

    fn read_json(term: &Map<String, Value>) -> Result<Self> {
        read_rational(term)
    }
}

/// `a + b√3` is written as `num/den = a` plus an optional
/// `sqrt3: {num, den} = b` that is omitted when `b = 0`.
impl JsonCoefficient for QSqrt3 {
    fn write_json(&self, term: &mut Map<String, Value>) {
        self.rational.write_json(term);
        if !self.sqrt3.is_zero() {
            let mut inner = Map::new();
            self.sqrt3.write_json(&mut inner);
            term.insert("sqrt3".into(), Value::Object(inner));
        }
    }

    fn read_json(term: &Map<String, Value>) -> Result<Self> {
        let a = read_rational(term)?;
        let b = match term.get("sqrt3") {
            Some(Value::Object(inner)) => read_rational(inner)?,
            Some(_) => return Err(Error::InvalidFamily("bad `sqrt3` field".into())),
            None => Rational::zero(),
        };
        Ok(QSqrt3::new(a, b))
    }
}

impl<C: JsonCoefficient> Poly<C> {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut t = Map::new();
                t.insert("exps".into(), json!(m.0));
                c.write_json(&mut t);
                Value::Object(t)
            })
            .collect();
        json!({ "nvars": self.nvars, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidFamily(format!("bad polynomial JSON: {what}"));
        let nvars = v.get("nvars").and_then(Value::as_u64).ok_or_else(|| bad("nvars"))? as usize;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let obj = t.as_object().ok_or_else(|| bad("term"))?;
            let exps = obj
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("exps"))?
                .iter()
                .map(|e| e.as_u64().map(|e| e as u32).ok_or_else(|| bad("exponent")))
                .collect::<Result<Vec<_>>>()?;
            parsed.push((exps, C::read_json(obj)?));
        }
        Self::from_terms(nvars, parsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, int(v))
    }

    #[test]
    fn eval_examples() {
        let p = &x(1, 0) * &x(1, 0);
        assert_eq!(p.eval(&[int(3)]).unwrap(), int(9));
        assert_eq!(p.eval_f64(&[3.0]).unwrap(), 9.0);
        assert_eq!(MultiPoly::zero(3).eval(&[int(1), int(2), int(5)]).unwrap(), int(0));
        assert!(p.eval(&[int(1), int(2)]).is_err());
    }

    #[test]
    fn gradient_examples() {
        let p = MultiPoly::radius_sq(2);
        let g = p.grad();
        assert_eq!(g.components[0], &c(2, 2) * &x(2, 0));
        assert_eq!(g.components[1], &c(2, 2) * &x(2, 1));
        assert!(c(3, 7).grad().is_zero());
    }

    #[test]
    fn hessian_examples() {
        let h = (&x(2, 0) * &x(2, 1)).hessian();
        assert_eq!(h[0][1], c(2, 1));
        assert_eq!(h[1][0], c(2, 1));
        assert!(h[0][0].is_zero() && h[1][1].is_zero());
        let linear = &x(3, 0) + &(&c(3, 2) * &x(3, 2));
        assert!(linear.hessian().iter().flatten().all(Poly::is_zero));
    }

    #[test]
    fn laplacian_examples() {
        for n in 1..6 {
            assert_eq!(MultiPoly::radius_sq(n).laplacian(), c(n, 2 * n as i64));
        }
        assert!((&x(2, 0) * &x(2, 1)).laplacian().is_zero());
    }

    #[test]
    fn grad_norm_sq_examples() {
        assert_eq!(x(3, 0).grad_norm_sq(), c(3, 1));
        let r2 = MultiPoly::radius_sq(3);
        assert_eq!(r2.grad_norm_sq(), r2.scale(&int(4)));
    }

    #[test]
    fn homogeneity() {
        assert_eq!(MultiPoly::radius_sq(4).is_homogeneous(), Some(2));
        let p = &x(1, 0) + &(&x(1, 0) * &x(1, 0));
        assert_eq!(p.is_homogeneous(), None);
        assert_eq!(MultiPoly::zero(2).is_homogeneous(), None);
    }

    #[test]
    fn canonical_order_is_graded() {
        let p = MultiPoly::from_terms(
            2,
            vec![(vec![0, 2], int(1)), (vec![1, 0], int(1)), (vec![2, 0], int(1)), (vec![0, 0], int(1))],
        )
        .unwrap();
        let order: Vec<Vec<u32>> = p.terms().map(|(m, _)| m.exps().to_vec()).collect();
        assert_eq!(order, vec![vec![0, 0], vec![1, 0], vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &x(2, 0) - &x(2, 0);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn sphere_values_for_linear_function() {
        // F = x1 on R^4, g = 1; x orthogonal to e1.
        let f = x(4, 0);
        let p = [0.0, 0.6, 0.8, 0.0];
        assert!((sphere_grad_norm_sq_value(&f, 1, &p).unwrap() - 1.0).abs() < 1e-15);
        // Δ^S V = -(n+1)V at e1 with n = 2
        let e1 = [1.0, 0.0, 0.0, 0.0];
        assert!((sphere_laplacian_value(&f, 1, 2, &e1).unwrap() + 3.0).abs() < 1e-15);
        // maximum of V on the sphere is a critical point
        assert!(sphere_grad_norm_sq_value(&f, 1, &e1).unwrap().abs() < 1e-15);
    }

    #[test]
    fn sphere_values_reject_bad_input() {
        let f = x(3, 0);
        assert!(matches!(
            sphere_grad_norm_sq_value(&f, 1, &[1.0, 1.0, 0.0]),
            Err(Error::NotUnit { .. })
        ));
        assert!(matches!(
            sphere_grad_norm_sq_value(&f, 2, &[1.0, 0.0, 0.0]),
            Err(Error::NotHomogeneous(2))
        ));
    }

    #[test]
    fn json_layout() {
        let p = MultiPoly::from_terms(2, vec![(vec![1, 0], crate::scalar::rat(-3, 2))]).unwrap();
        let v = p.to_json();
        assert_eq!(v, json!({"nvars": 2, "terms": [{"exps": [1, 0], "num": -3, "den": 2}]}));
        let q = Poly::<QSqrt3>::constant(1, QSqrt3::new(int(1), crate::scalar::rat(3, 2)));
        let v = q.to_json();
        assert_eq!(v["terms"][0]["sqrt3"], json!({"num": 3, "den": 2}));
        assert_eq!(Poly::<QSqrt3>::from_json(&v).unwrap(), q);
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut s = CompensatedSum::default();
        for v in [1e16, 1.0, -1e16] {
            s.add(v);
        }
        assert_eq!(s.value(), 1.0);
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..4, nvars), -20i64..20, 1i64..6), 0..8)
            .prop_map(move |ts| {
                MultiPoly::from_terms(
                    nvars,
                    ts.into_iter().map(|(e, a, b)| (e, crate::scalar::rat(a, b))),
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn mixed_partials_commute(p in arb_poly(3), i in 0usize..3, j in 0usize..3) {
            prop_assert_eq!(p.derivative(i).derivative(j), p.derivative(j).derivative(i));
        }

        #[test]
        fn derivative_is_linear(p in arb_poly(3), q in arb_poly(3), i in 0usize..3) {
            prop_assert_eq!((&p + &q).derivative(i), &p.derivative(i) + &q.derivative(i));
        }

        #[test]
        fn product_rule(p in arb_poly(2), q in arb_poly(2), i in 0usize..2) {
            let lhs = (&p * &q).derivative(i);
            let rhs = &(&p.derivative(i) * &q) + &(&p * &q.derivative(i));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn json_round_trip(p in arb_poly(4)) {
            prop_assert_eq!(MultiPoly::from_json(&p.to_json()).unwrap(), p);
        }

        #[test]
        fn exact_and_float_eval_agree(p in arb_poly(3), pt in prop::collection::vec(-4i64..5, 3)) {
            let exact = p.eval(&pt.iter().map(|&v| int(v)).collect::<Vec<_>>()).unwrap();
            let fl = p.eval_f64(&pt.iter().map(|&v| v as f64).collect::<Vec<_>>()).unwrap();
            let compiled = p.compile().eval(&pt.iter().map(|&v| v as f64).collect::<Vec<_>>());
            let e = Coefficient::to_f64(&exact);
            prop_assert!((e - fl).abs() <= 1e-9 * e.abs().max(1.0));
            prop_assert!((e - compiled).abs() <= 1e-9 * e.abs().max(1.0));
        }

        #[test]
        fn euler_identity_for_homogeneous_parts(p in arb_poly(3), d in 0u32..4) {
            // keep only degree-d terms
            let h = MultiPoly::from_terms(
                3,
                p.terms().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.exps().to_vec(), c.clone())),
            ).unwrap();
            prop_assert!(h.euler_residual(d).is_zero());
        }
    }
}
