//! Forward-mode dual numbers.
//!
//! The characteristic functions are built from `√`, `tanh` and `tan` pieces;
//! evaluating them on `Dual` carries exact partial derivatives through the
//! same code path as the plain `f64` evaluation, so the value and its
//! derivative can never drift apart. Finite differences stay available as an
//! independent cross-check in the test suites.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic shared by `f64` and [`Dual`], enough to express the four
/// characteristic functions.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn lift(x: f64) -> Self;
    fn sqrt(self) -> Self;
    fn tanh(self) -> Self;
    fn tan(self) -> Self;
}

impl Scalar for f64 {
    fn lift(x: f64) -> Self {
        x
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn tan(self) -> Self {
        f64::tan(self)
    }
}

/// Value plus derivative with respect to one seed variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn seed(v: f64) -> Self {
        Dual { v, d: 1.0 }
    }

    pub fn constant(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual { v: self.v + rhs.v, d: self.d + rhs.d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual { v: self.v - rhs.v, d: self.d - rhs.d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual { v: self.v * rhs.v, d: self.d * rhs.v + self.v * rhs.d }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, rhs: Dual) -> Dual {
        Dual {
            v: self.v / rhs.v,
            d: (self.d * rhs.v - self.v * rhs.d) / (rhs.v * rhs.v),
        }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

impl Scalar for Dual {
    fn lift(x: f64) -> Self {
        Dual::constant(x)
    }

    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        Dual { v: r, d: self.d / (2.0 * r) }
    }

    fn tanh(self) -> Self {
        let t = self.v.tanh();
        Dual { v: t, d: self.d * (1.0 - t * t) }
    }

    fn tan(self) -> Self {
        let t = self.v.tan();
        Dual { v: t, d: self.d * (1.0 + t * t) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f<T: Scalar>(x: T) -> T {
        // x·tanh(√x) + tan(x)/(x + lift(2))
        x * x.sqrt().tanh() + x.tan() / (x + T::lift(2.0))
    }

    #[test]
    fn derivative_matches_central_difference() {
        let x = 0.8;
        let d = f(Dual::seed(x)).d;
        let h = 1e-6;
        let fd = (f(x + h) - f(x - h)) / (2.0 * h);
        assert!((d - fd).abs() < 1e-8, "dual {d} vs fd {fd}");
    }

    #[test]
    fn constant_has_zero_derivative() {
        let c = Dual::constant(3.0);
        assert_eq!((c * c).d, 0.0);
        assert_eq!(c.sqrt().d, 0.0);
    }
}
