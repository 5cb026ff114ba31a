//! Exact arithmetic in the normed division algebras ℝ, ℂ, ℍ and 𝕆.
//!
//! Every algebra is obtained from ℝ by Cayley–Dickson doubling with the rule
//!
//! ```text
//! (a, b)(c, d) = (ac − d̄b, da + bc̄),      conj(a, b) = (ā, −b)
//! ```
//!
//! so the basis element `e_k` of a doubled algebra is `e_k` of the lower half
//! for `k < dim/2` and `(0, e_{k − dim/2})` otherwise. With this convention
//! `e_a·e_b = ±e_{a ⊕ b}` (bitwise xor). The signs for the octonions are
//!
//! ```text
//!        e0  e1  e2  e3  e4  e5  e6  e7
//!   e0 [ +   +   +   +   +   +   +   + ]
//!   e1 [ +   −   +   −   +   −   −   + ]
//!   e2 [ +   −   −   +   +   +   −   − ]
//!   e3 [ +   +   −   −   +   −   +   − ]
//!   e4 [ +   −   −   −   −   +   +   + ]
//!   e5 [ +   +   −   +   −   −   −   + ]
//!   e6 [ +   +   +   −   −   +   −   − ]
//!   e7 [ +   −   +   +   −   −   +   − ]
//! ```
//!
//! and the quaternion table is the upper-left 4×4 block (`e1 = i`, `e2 = j`,
//! `e3 = k`).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 4] = [
        AlgebraKind::Real,
        AlgebraKind::Complex,
        AlgebraKind::Quaternion,
        AlgebraKind::Octonion,
    ];

    pub fn dim(self) -> usize {
        match self {
            AlgebraKind::Real => 1,
            AlgebraKind::Complex => 2,
            AlgebraKind::Quaternion => 4,
            AlgebraKind::Octonion => 8,
        }
    }

    pub fn from_dim(dim: usize) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.dim() == dim)
    }

    /// One-letter code used in family selectors (`r`, `c`, `h`, `o`).
    pub fn letter(self) -> char {
        match self {
            AlgebraKind::Real => 'r',
            AlgebraKind::Complex => 'c',
            AlgebraKind::Quaternion => 'h',
            AlgebraKind::Octonion => 'o',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.letter() == c)
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Real => "real",
            AlgebraKind::Complex => "complex",
            AlgebraKind::Quaternion => "quaternion",
            AlgebraKind::Octonion => "octonion",
        }
    }

    /// Structure constants: `e_a·e_b = table[a][b].0 · e_{table[a][b].1}`.
    pub fn multiplication_table(self) -> Vec<Vec<(i8, usize)>> {
        let d = self.dim();
        (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| {
                        let p = AlgElem::basis(self, a).mul(&AlgElem::basis(self, b)).unwrap();
                        let (idx, c) = p
                            .coords
                            .iter()
                            .enumerate()
                            .find(|(_, c)| !c.is_zero())
                            .expect("basis products are nonzero");
                        let sign = if *c == Rational::one() { 1 } else { -1 };
                        (sign, idx)
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An element of a composition algebra with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgElem {
    kind: AlgebraKind,
    coords: Vec<Rational>,
}

impl AlgElem {
    pub fn new(kind: AlgebraKind, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != kind.dim() {
            return Err(Error::DimensionMismatch {
                expected: kind.dim(),
                got: coords.len(),
            });
        }
        Ok(Self { kind, coords })
    }

    pub fn from_i64(kind: AlgebraKind, coords: &[i64]) -> Result<Self> {
        Self::new(kind, coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        Self { kind, coords: vec![Rational::zero(); kind.dim()] }
    }

    pub fn one(kind: AlgebraKind) -> Self {
        Self::basis(kind, 0)
    }

    /// Basis element `e_index`; panics when `index >= kind.dim()`.
    pub fn basis(kind: AlgebraKind, index: usize) -> Self {
        let mut e = Self::zero(kind);
        e.coords[index] = Rational::one();
        e
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn mul(&self, other: &AlgElem) -> Result<AlgElem> {
        if self.kind != other.kind {
            return Err(Error::AlgebraMismatch { left: self.kind, right: other.kind });
        }
        Ok(AlgElem { kind: self.kind, coords: cd_mul(&self.coords, &other.coords) })
    }

    pub fn conj(&self) -> AlgElem {
        AlgElem { kind: self.kind, coords: cd_conj(&self.coords) }
    }

    pub fn re(&self) -> Rational {
        self.coords[0].clone()
    }

    pub fn norm_sq(&self) -> Rational {
        self.coords.iter().fold(Rational::zero(), |acc, c| acc + c * c)
    }

    pub fn add(&self, other: &AlgElem) -> Result<AlgElem> {
        if self.kind != other.kind {
            return Err(Error::AlgebraMismatch { left: self.kind, right: other.kind });
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(AlgElem { kind: self.kind, coords })
    }

    pub fn scale(&self, s: &Rational) -> AlgElem {
        AlgElem { kind: self.kind, coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Explicit float view of the coordinates.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rational_to_f64).collect()
    }
}

fn cd_conj(a: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = a.iter().map(|c| -c.clone()).collect();
    out[0] = a[0].clone();
    out
}

fn cd_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn cd_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cd_mul(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    if n == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let first = cd_sub(&cd_mul(a, c), &cd_mul(&cd_conj(d), b));
    let second = cd_add(&cd_mul(d, a), &cd_mul(b, &cd_conj(c)));
    let mut out = first;
    out.extend(second);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn q(c: &[i64]) -> AlgElem {
        AlgElem::from_i64(AlgebraKind::Quaternion, c).unwrap()
    }

    const OCTONION_SIGNS: [[i8; 8]; 8] = [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, -1, 1, -1, 1, -1, -1, 1],
        [1, -1, -1, 1, 1, 1, -1, -1],
        [1, 1, -1, -1, 1, -1, 1, -1],
        [1, -1, -1, -1, -1, 1, 1, 1],
        [1, 1, -1, 1, -1, -1, -1, 1],
        [1, 1, 1, -1, -1, 1, -1, -1],
        [1, -1, 1, 1, -1, -1, 1, -1],
    ];

    #[test]
    fn octonion_table_is_frozen() {
        let table = AlgebraKind::Octonion.multiplication_table();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(table[a][b], (OCTONION_SIGNS[a][b], a ^ b), "e{a}·e{b}");
            }
        }
    }

    #[test]
    fn quaternion_relations() {
        let (i, j, k) = (q(&[0, 1, 0, 0]), q(&[0, 0, 1, 0]), q(&[0, 0, 0, 1]));
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.scale(&int(-1)));
        assert_eq!(k.mul(&k).unwrap(), q(&[-1, 0, 0, 0]));
    }

    #[test]
    fn unit_is_neutral() {
        for kind in AlgebraKind::ALL {
            let x = AlgElem::new(kind, (1..=kind.dim() as i64).map(int).collect()).unwrap();
            assert_eq!(AlgElem::one(kind).mul(&x).unwrap(), x);
            assert_eq!(x.mul(&AlgElem::one(kind)).unwrap(), x);
        }
    }

    #[test]
    fn octonions_are_not_associative() {
        let e = |i| AlgElem::basis(AlgebraKind::Octonion, i);
        let left = e(1).mul(&e(2)).unwrap().mul(&e(4)).unwrap();
        let right = e(1).mul(&e(2).mul(&e(4)).unwrap()).unwrap();
        assert_eq!(left, e(7));
        assert_eq!(right, e(7).scale(&int(-1)));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(AlgElem::one(AlgebraKind::Real).conj(), AlgElem::one(AlgebraKind::Real));
        let i = AlgElem::from_i64(AlgebraKind::Complex, &[0, 1]).unwrap();
        assert_eq!(i.conj(), AlgElem::from_i64(AlgebraKind::Complex, &[0, -1]).unwrap());
        let a = q(&[1, 2, 3, 4]);
        assert_eq!(a.conj(), q(&[1, -2, -3, -4]));
        assert_eq!(a.mul(&a.conj()).unwrap(), q(&[30, 0, 0, 0]));
    }

    #[test]
    fn real_part_of_triple() {
        let (i, j, k) = (q(&[0, 1, 0, 0]), q(&[0, 0, 1, 0]), q(&[0, 0, 0, 1]));
        assert_eq!(AlgElem::one(AlgebraKind::Real).re(), int(1));
        assert_eq!(i.re(), int(0));
        assert_eq!(i.mul(&j).unwrap().mul(&k).unwrap().re(), int(-1));
    }

    #[test]
    fn norms() {
        assert_eq!(AlgElem::zero(AlgebraKind::Octonion).norm_sq(), int(0));
        assert_eq!(AlgElem::one(AlgebraKind::Octonion).norm_sq(), int(1));
    }

    #[test]
    fn mismatched_kinds_are_rejected() {
        let a = AlgElem::one(AlgebraKind::Complex);
        let b = AlgElem::one(AlgebraKind::Quaternion);
        let err = a.mul(&b).unwrap_err();
        assert!(err.to_string().contains("algebra mismatch"));
        assert!(AlgElem::from_i64(AlgebraKind::Complex, &[1, 2, 3]).is_err());
    }
}
