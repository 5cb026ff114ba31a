//! Exact coefficient rings.
//!
//! Polynomials are generic over [`Coefficient`]. Two rings are provided:
//! plain [`Rational`] and [`QSqrt3`], the quadratic extension `ℚ[√3]` that the
//! degree-three Cartan polynomial needs for its `3√3/2` coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Shorthand for building a rational from small integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // BigRational::to_f64 handles huge numerators/denominators without overflow.
    ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Ring operations every polynomial coefficient must support.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_rational(r: Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    fn to_f64(&self) -> f64;
}

impl Coefficient for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// An element `a + b·√3` of `ℚ[√3]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSqrt3 {
    pub rational: Rational,
    pub sqrt3: Rational,
}

impl QSqrt3 {
    pub fn new(rational: Rational, sqrt3: Rational) -> Self {
        Self { rational, sqrt3 }
    }

    /// `b·√3`.
    pub fn sqrt3_multiple(b: Rational) -> Self {
        Self::new(Rational::zero(), b)
    }

    pub fn sqrt3() -> Self {
        Self::sqrt3_multiple(Rational::one())
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt3.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.rational * r, &self.sqrt3 * r)
    }

    /// Sign of `a + b√3`, decided exactly.
    pub fn signum(&self) -> i32 {
        let a = &self.rational;
        let b = &self.sqrt3;
        let sa = sign_of(a);
        let sb = sign_of(b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with 3b²
        let lhs = a * a;
        let rhs = b * b * int(3);
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl From<Rational> for QSqrt3 {
    fn from(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.sqrt3.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}√3", self.sqrt3),
            (false, false) => write!(f, "{} + {}√3", self.rational, self.sqrt3),
        }
    }
}

impl Add for QSqrt3 {
    type Output = QSqrt3;
    fn add(self, rhs: QSqrt3) -> QSqrt3 {
        QSqrt3::new(self.rational + rhs.rational, self.sqrt3 + rhs.sqrt3)
    }
}

impl Sub for QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, rhs: QSqrt3) -> QSqrt3 {
        QSqrt3::new(self.rational - rhs.rational, self.sqrt3 - rhs.sqrt3)
    }
}

impl Mul for QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, rhs: QSqrt3) -> QSqrt3 {
        let a = &self.rational * &rhs.rational + &self.sqrt3 * &rhs.sqrt3 * int(3);
        let b = &self.rational * &rhs.sqrt3 + &self.sqrt3 * &rhs.rational;
        QSqrt3::new(a, b)
    }
}

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3::new(-self.rational, -self.sqrt3)
    }
}

impl Zero for QSqrt3 {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt3.is_zero()
    }
}

impl One for QSqrt3 {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl Coefficient for QSqrt3 {
    fn from_rational(r: Rational) -> Self {
        r.into()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational) + rational_to_f64(&self.sqrt3) * 3f64.sqrt()
    }
}
