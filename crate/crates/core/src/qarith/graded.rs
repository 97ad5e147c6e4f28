use num_complex::Complex64;
use std::f64::consts::PI;

use super::logcx::LogComplex;
use crate::error::{Error, Result};

/// Root-of-unity evaluation point `A0 = exp(i*pi/2n)` together with the
/// working-precision request.
///
/// The numeric backend works in IEEE doubles with log-domain magnitudes;
/// `precision_bits` is capped at the 53 effective mantissa bits when deriving
/// tolerances (cancellation thresholds, series depths) but is kept in the API
/// so callers can scale tolerances consistently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    n: u32,
    precision_bits: u32,
}

impl EvalPoint {
    pub fn new(n: u32, precision_bits: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("evaluation order n={n} must be >= 2")));
        }
        if precision_bits < 64 {
            return Err(Error::domain(format!(
                "precision_bits={precision_bits} must be >= 64"
            )));
        }
        Ok(EvalPoint { n, precision_bits })
    }

    /// Default 128-bit precision request.
    pub fn with_order(n: u32) -> Result<Self> {
        EvalPoint::new(n, 128)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// `A0 = exp(i*pi/2n)`.
    pub fn a0(&self) -> Complex64 {
        Complex64::from_polar(1.0, PI / (2.0 * self.n as f64))
    }

    /// Argument of `q = A^2` at the evaluation point: `pi/n`.
    pub fn theta_q(&self) -> f64 {
        PI / self.n as f64
    }

    /// Relative cancellation threshold `10^(-0.15 * bits)` for graded addition,
    /// floored at half the effective (hardware) mantissa.
    pub fn cancel_tol(&self) -> f64 {
        let eff = self.precision_bits.min(53) as f64;
        10f64.powf(-0.15 * eff)
    }
}

/// Leading Laurent datum of a meromorphic-square function at `A0`.
///
/// A value of order `m` with coefficient `c` stands for `c * w^m + O(w^(m+1))`
/// in the local variable `w = 2(A - A0)`. The variable is normalized so that
/// the evaluation of `{n} = A^(2n) - A^(-2n)` at `A0 = exp(i*pi/2n)` has
/// order 1 and coefficient exactly `-2n*exp(-i*pi/2n)`; growth-rate limits do
/// not depend on this choice. Orders are half-integers (stored doubled)
/// because square roots of simple zeros occur.
#[derive(Clone, Copy, Debug)]
pub struct GradedComplex {
    order_twice: i64,
    coeff: LogComplex,
    is_zero: bool,
}

impl GradedComplex {
    pub const ZERO: GradedComplex = GradedComplex {
        order_twice: 0,
        coeff: LogComplex::one(),
        is_zero: true,
    };

    pub fn new(order_twice: i64, coeff: LogComplex) -> Self {
        if coeff.is_zero() {
            return Self::ZERO;
        }
        GradedComplex {
            order_twice,
            coeff,
            is_zero: false,
        }
    }

    pub fn one() -> Self {
        Self::new(0, LogComplex::one())
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(0, LogComplex::from_complex(z))
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    /// Twice the Laurent order. Meaningless for the exact zero.
    pub fn order_twice(&self) -> i64 {
        self.order_twice
    }

    pub fn order(&self) -> f64 {
        self.order_twice as f64 / 2.0
    }

    pub fn coeff(&self) -> LogComplex {
        self.coeff
    }

    /// Natural log of the leading-coefficient modulus.
    pub fn ln_modulus(&self) -> f64 {
        if self.is_zero {
            f64::NEG_INFINITY
        } else {
            self.coeff.ln_mag
        }
    }

    pub fn mul(&self, rhs: &GradedComplex) -> GradedComplex {
        if self.is_zero || rhs.is_zero {
            return Self::ZERO;
        }
        Self::new(self.order_twice + rhs.order_twice, self.coeff * rhs.coeff)
    }

    pub fn div(&self, rhs: &GradedComplex) -> Result<GradedComplex> {
        if rhs.is_zero {
            return Err(Error::domain("graded division by exact zero"));
        }
        if self.is_zero {
            return Ok(Self::ZERO);
        }
        Ok(Self::new(
            self.order_twice - rhs.order_twice,
            self.coeff / rhs.coeff,
        ))
    }

    pub fn neg(&self) -> GradedComplex {
        if self.is_zero {
            return *self;
        }
        Self::new(self.order_twice, -self.coeff)
    }

    /// Principal square root. An order-`m` input yields order `m/2`, so `m`
    /// must be an integer (doubled order even); half-integer orders arise only
    /// as outputs, never as square-root inputs.
    pub fn sqrt(&self) -> Result<GradedComplex> {
        if self.is_zero {
            return Ok(*self);
        }
        if self.order_twice % 2 != 0 {
            return Err(Error::domain(
                "square root of a half-integer-order graded value",
            ));
        }
        Ok(GradedComplex {
            order_twice: self.order_twice / 2,
            coeff: self.coeff.sqrt(),
            is_zero: false,
        })
    }

    /// Graded addition: the strictly smaller order dominates; equal orders add
    /// coefficients. When leading coefficients cancel below `cancel_tol`
    /// relative to the addends, the result cannot be trusted (the next Laurent
    /// coefficient is invisible) and an error is returned.
    pub fn add(&self, rhs: &GradedComplex, cancel_tol: f64) -> Result<GradedComplex> {
        if self.is_zero {
            return Ok(*rhs);
        }
        if rhs.is_zero {
            return Ok(*self);
        }
        if self.order_twice < rhs.order_twice {
            return Ok(*self);
        }
        if rhs.order_twice < self.order_twice {
            return Ok(*rhs);
        }
        let sum = self.coeff + rhs.coeff;
        let max_in = self.coeff.ln_mag.max(rhs.coeff.ln_mag);
        if sum.is_zero() || sum.ln_mag - max_in < cancel_tol.ln() {
            return Err(Error::Cancellation {
                relative: if sum.is_zero() {
                    0.0
                } else {
                    (sum.ln_mag - max_in).exp()
                },
            });
        }
        Ok(Self::new(self.order_twice, sum))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_point_guards() {
        assert!(EvalPoint::new(1, 128).is_err());
        assert!(EvalPoint::new(5, 32).is_err());
        let pt = EvalPoint::new(5, 128).unwrap();
        assert!((pt.a0() - Complex64::from_polar(1.0, PI / 10.0)).norm() < 1e-15);
    }

    #[test]
    fn add_smaller_order_dominates() {
        let a = GradedComplex::new(0, LogComplex::from_real(3.0));
        let b = GradedComplex::new(2, LogComplex::from_real(100.0));
        let s = a.add(&b, 1e-8).unwrap();
        assert_eq!(s.order_twice(), 0);
        assert!((s.coeff().to_complex().re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn add_detects_cancellation() {
        let a = GradedComplex::new(0, LogComplex::from_real(1.0));
        let b = GradedComplex::new(0, LogComplex::from_real(-1.0 + 1e-12));
        assert!(matches!(
            a.add(&b, 1e-8),
            Err(Error::Cancellation { .. })
        ));
        // Well-separated coefficients add fine.
        let c = GradedComplex::new(0, LogComplex::from_real(-0.5));
        let s = a.add(&c, 1e-8).unwrap();
        assert!((s.coeff().to_complex().re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn mul_adds_orders_exactly() {
        let a = GradedComplex::new(-1, LogComplex::from_real(2.0));
        let b = GradedComplex::new(3, LogComplex::from_real(5.0));
        let p = a.mul(&b);
        assert_eq!(p.order_twice(), 2);
        assert!((p.coeff().to_complex().re - 10.0).abs() < 1e-12);
    }
}
