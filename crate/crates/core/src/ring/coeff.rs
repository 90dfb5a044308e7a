use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational numbers. `BigRational` keeps numerator and denominator
/// coprime with a positive denominator, and zero as `0/1`.
pub type Rational = BigRational;

/// Builds the rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Coefficient ring of a module element.
///
/// Two instances ship: [`Rational`] for computations and
/// [`ParamPoly`](super::ParamPoly) for generic marked sets whose tails carry
/// free parameters. The reduction machinery only needs ring operations and a
/// zero test.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(value: Rational) -> Self;

    /// Multiplicative inverse, if the element is a unit.
    fn inverse(&self) -> Option<Self>;

    /// `true` when the coefficient depends on parameters.
    fn is_parametric(&self) -> bool;

    /// Splits the coefficient for printing in front of a term.
    ///
    /// Returns the sign and the factor text; the factor is empty for `±1`.
    /// Composite factors come back parenthesised.
    fn factor_text(&self) -> (bool, String);

    fn add_assign(&mut self, other: &Self) {
        *self = Coefficient::add(self, other);
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn from_rational(value: Rational) -> Self {
        value
    }

    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_parametric(&self) -> bool {
        false
    }

    fn factor_text(&self) -> (bool, String) {
        let negative = self.is_negative();
        let magnitude = self.abs();
        if One::is_one(&magnitude) {
            (negative, String::new())
        } else {
            (negative, magnitude.to_string())
        }
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}
