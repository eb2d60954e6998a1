//! Exact scalars: rationals, square classes of rationals and elements of a
//! quadratic extension `Q(√d)`.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Arbitrary-precision rationals.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The rational `n/d`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("parameter a must be nonzero")]
    ZeroParameter,
    #[error("index out of range: {0}")]
    Index(String),
    #[error("matrix is not a similitude of the antidiagonal form")]
    NotSimilitude,
}

/// A commutative field with exact equality.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_q(x: Q) -> Self;
    /// The value as a rational, if it is one.
    fn to_q(&self) -> Option<Q>;

    fn from_i64(n: i64) -> Self {
        Self::from_q(q(n))
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_q(x: Q) -> Self {
        x
    }
    fn to_q(&self) -> Option<Q> {
        Some(self.clone())
    }
}

/// Signed squarefree part of a nonzero integer: `n = s * k^2` with `s` squarefree.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "squarefree_part of zero");
    let mut rest = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    out *= rest;
    if n.is_negative() {
        -out
    } else {
        out
    }
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Q::new(rn, rd))
    } else {
        None
    }
}

/// Coset of a nonzero rational modulo nonzero squares, represented by a
/// squarefree integer. The class of 1 is [`SquareClass::square`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn square() -> Self {
        SquareClass(BigInt::one())
    }

    pub fn rep(&self) -> &BigInt {
        &self.0
    }

    pub fn is_square(&self) -> bool {
        self.0.is_one()
    }

    pub fn multiply(&self, other: &SquareClass) -> SquareClass {
        SquareClass(squarefree_part(&(&self.0 * &other.0)))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_square() {
            write!(f, "square")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Square class of a nonzero rational.
pub fn square_class_of(x: &Q) -> Result<SquareClass, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroSquareClass);
    }
    Ok(SquareClass(squarefree_part(&(x.numer() * x.denom()))))
}

/// `x + y√d` with `d` a squarefree integer different from 1.
///
/// Rational values are stored with `y = 0` and `d = 1`, so they combine with
/// elements of any extension. Mixing two irrational elements of different
/// extensions is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    x: Q,
    y: Q,
    d: BigInt,
}

impl QuadElem {
    pub fn rational(x: Q) -> Self {
        QuadElem {
            x,
            y: Q::zero(),
            d: BigInt::one(),
        }
    }

    /// The positive square root of a nonzero rational `a` (for `a < 0`, the
    /// root with positive imaginary coefficient).
    pub fn sqrt(a: &Q) -> Result<Self, ArithError> {
        let class = square_class_of(a).map_err(|_| ArithError::ZeroParameter)?;
        let d = class.rep().clone();
        let s = sqrt_exact(&(a / Q::from_integer(d.clone()))).expect("a/d is a square");
        Ok(QuadElem::from_parts(Q::zero(), s, d))
    }

    /// `x + y√a` for a nonzero rational `a`.
    pub fn new(x: Q, y: Q, a: &Q) -> Result<Self, ArithError> {
        let r = QuadElem::sqrt(a)?;
        Ok(QuadElem::rational(x) + QuadElem::rational(y) * r)
    }

    fn from_parts(x: Q, y: Q, d: BigInt) -> Self {
        if y.is_zero() || d.is_one() {
            let x = if d.is_one() { x + y } else { x };
            QuadElem::rational(x)
        } else {
            QuadElem { x, y, d }
        }
    }

    pub fn x(&self) -> &Q {
        &self.x
    }

    pub fn y(&self) -> &Q {
        &self.y
    }

    /// The squarefree radicand, 1 for rational values.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem::from_parts(self.x.clone(), -self.y.clone(), self.d.clone())
    }

    /// `x² − d·y²`.
    pub fn norm(&self) -> Q {
        &self.x * &self.x - Q::from_integer(self.d.clone()) * &self.y * &self.y
    }

    fn common_radicand(&self, other: &Self) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "mixed quadratic extensions");
                self.d.clone()
            }
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "{}+{}*sqrt({})", self.x, self.y, self.d)
        }
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, o: QuadElem) -> QuadElem {
        let d = self.common_radicand(&o);
        QuadElem::from_parts(self.x + o.x, self.y + o.y, d)
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, o: QuadElem) -> QuadElem {
        let d = self.common_radicand(&o);
        QuadElem::from_parts(self.x - o.x, self.y - o.y, d)
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, o: QuadElem) -> QuadElem {
        let d = self.common_radicand(&o);
        let dq = Q::from_integer(d.clone());
        let x = &self.x * &o.x + dq * &self.y * &o.y;
        let y = &self.x * &o.y + &self.y * &o.x;
        QuadElem::from_parts(x, y, d)
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::from_parts(-self.x, -self.y, self.d)
    }
}

impl Zero for QuadElem {
    fn zero() -> Self {
        QuadElem::rational(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl One for QuadElem {
    fn one() -> Self {
        QuadElem::rational(Q::one())
    }
}

impl Field for QuadElem {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        let ni = n.recip();
        Some(QuadElem::from_parts(c.x * &ni, c.y * ni, c.d))
    }
    fn from_q(x: Q) -> Self {
        QuadElem::rational(x)
    }
    fn to_q(&self) -> Option<Q> {
        if self.is_rational() {
            Some(self.x.clone())
        } else {
            None
        }
    }
}

/// Parse `n` or `n/d` as a rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Whether a rational is an integer.
pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_class_examples() {
        assert!(square_class_of(&q(1)).unwrap().is_square());
        assert!(square_class_of(&qf(4, 9)).unwrap().is_square());
        assert_eq!(square_class_of(&q(18)).unwrap().rep(), &BigInt::from(2));
        assert_eq!(square_class_of(&qf(-3, 12)).unwrap().rep(), &BigInt::from(-1));
        assert_eq!(square_class_of(&q(0)), Err(ArithError::ZeroSquareClass));
    }

    #[test]
    fn squarefree_against_factoring_oracle() {
        for n in 1i64..400 {
            let mut s = 1i64;
            let mut r = n;
            let mut p = 2;
            while r > 1 {
                let mut e = 0;
                while r % p == 0 {
                    r /= p;
                    e += 1;
                }
                if e % 2 == 1 {
                    s *= p;
                }
                p += 1;
            }
            assert_eq!(squarefree_part(&BigInt::from(n)), BigInt::from(s));
            assert_eq!(squarefree_part(&BigInt::from(-n)), BigInt::from(-s));
        }
    }

    #[test]
    fn sqrt_of_square_is_rational() {
        let r = QuadElem::sqrt(&qf(9, 4)).unwrap();
        assert_eq!(r, QuadElem::rational(qf(3, 2)));
        let s = QuadElem::sqrt(&q(8)).unwrap();
        assert_eq!(s.y(), &q(2));
        assert_eq!(s.radicand(), &BigInt::from(2));
        assert_eq!(s.clone() * s, QuadElem::rational(q(8)));
    }

    #[test]
    fn inverse_and_norm() {
        let u = QuadElem::new(q(3), q(-2), &q(5)).unwrap();
        assert_eq!(u.norm(), q(9 - 20));
        assert_eq!(u.clone() * u.inv().unwrap(), QuadElem::one());
        assert_eq!(u.conj().conj(), u);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("-3/6"), Some(qf(-1, 2)));
        assert_eq!(parse_q("7"), Some(q(7)));
        assert_eq!(parse_q("1/0"), None);
    }
}
