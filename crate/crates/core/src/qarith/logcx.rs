use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg};

/// A nonzero complex number stored as `exp(ln_mag) * phase` with `|phase| = 1`.
///
/// Quantum-factorial products reach magnitudes around `exp(c*n)` for colors of
/// size `n`, far past the range of an IEEE double, so all state-sum arithmetic
/// keeps the magnitude in log form. Exact zero is encoded as `ln_mag = -inf`.
#[derive(Clone, Copy, Debug)]
pub struct LogComplex {
    pub ln_mag: f64,
    pub phase: Complex64,
}

impl LogComplex {
    pub const fn one() -> Self {
        LogComplex {
            ln_mag: 0.0,
            phase: Complex64::new(1.0, 0.0),
        }
    }

    pub const fn zero() -> Self {
        LogComplex {
            ln_mag: f64::NEG_INFINITY,
            phase: Complex64::new(1.0, 0.0),
        }
    }

    pub fn new(ln_mag: f64, phase: Complex64) -> Self {
        let n = phase.norm();
        if n == 0.0 || ln_mag == f64::NEG_INFINITY {
            return Self::zero();
        }
        LogComplex {
            ln_mag,
            phase: phase / n,
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        let n = z.norm();
        if n == 0.0 {
            return Self::zero();
        }
        LogComplex {
            ln_mag: n.ln(),
            phase: z / n,
        }
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    /// Overflows to infinity when `ln_mag` exceeds ~709.
    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        self.phase * self.ln_mag.exp()
    }

    pub fn is_zero(self) -> bool {
        self.ln_mag == f64::NEG_INFINITY
    }

    pub fn norm_ln(self) -> f64 {
        self.ln_mag
    }

    /// Principal square root: halves the log-magnitude, principal root of the phase.
    pub fn sqrt(self) -> Self {
        if self.is_zero() {
            return self;
        }
        LogComplex::new(self.ln_mag / 2.0, self.phase.sqrt())
    }

    pub fn conj(self) -> Self {
        LogComplex {
            ln_mag: self.ln_mag,
            phase: self.phase.conj(),
        }
    }

    pub fn powi(self, k: i32) -> Self {
        if self.is_zero() {
            return if k == 0 { Self::one() } else { self };
        }
        LogComplex::new(self.ln_mag * k as f64, self.phase.powi(k))
    }

    /// Relative distance `|a-b| / max(|a|,|b|)`; 0 when both are zero.
    pub fn rel_distance(self, other: Self) -> f64 {
        if self.is_zero() && other.is_zero() {
            return 0.0;
        }
        let m = self.ln_mag.max(other.ln_mag);
        let a = (self.ln_mag - m).exp() * self.phase;
        let b = (other.ln_mag - m).exp() * other.phase;
        let a = Complex64::new(nan_to_zero(a.re), nan_to_zero(a.im));
        let b = Complex64::new(nan_to_zero(b.re), nan_to_zero(b.im));
        (a - b).norm() / a.norm().max(b.norm())
    }
}

fn nan_to_zero(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return LogComplex::zero();
        }
        LogComplex::new(self.ln_mag + rhs.ln_mag, self.phase * rhs.phase)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;
    fn div(self, rhs: LogComplex) -> LogComplex {
        debug_assert!(!rhs.is_zero(), "division of LogComplex by exact zero");
        if self.is_zero() {
            return LogComplex::zero();
        }
        LogComplex::new(self.ln_mag - rhs.ln_mag, self.phase / rhs.phase)
    }
}

impl Add for LogComplex {
    type Output = LogComplex;
    fn add(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.ln_mag >= rhs.ln_mag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let d = small.ln_mag - big.ln_mag;
        if d < -745.0 {
            return big;
        }
        let z = big.phase + small.phase * d.exp();
        let n = z.norm();
        if n == 0.0 {
            return LogComplex::zero();
        }
        LogComplex {
            ln_mag: big.ln_mag + n.ln(),
            phase: z / n,
        }
    }
}

impl Neg for LogComplex {
    type Output = LogComplex;
    fn neg(self) -> LogComplex {
        LogComplex {
            ln_mag: self.ln_mag,
            phase: -self.phase,
        }
    }
}

impl Mul<Complex64> for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: Complex64) -> LogComplex {
        self * LogComplex::from_complex(rhs)
    }
}

impl Mul<f64> for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: f64) -> LogComplex {
        self * LogComplex::from_real(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-12 * (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn roundtrip_and_ops() {
        let a = Complex64::new(3.0, -4.0);
        let b = Complex64::new(-0.25, 1.5);
        let la = LogComplex::from_complex(a);
        let lb = LogComplex::from_complex(b);
        assert!(close((la * lb).to_complex(), a * b));
        assert!(close((la / lb).to_complex(), a / b));
        assert!(close((la + lb).to_complex(), a + b));
        assert!(close((-la).to_complex(), -a));
        assert!(close(la.sqrt().to_complex(), a.sqrt()));
    }

    #[test]
    fn huge_magnitudes_survive() {
        let a = LogComplex::new(5000.0, Complex64::new(0.0, 1.0));
        let b = LogComplex::new(4999.0, Complex64::new(1.0, 0.0));
        let p = a * b;
        assert!((p.ln_mag - 9999.0).abs() < 1e-9);
        let s = a + b;
        // |i*e^5000 + e^4999| = e^5000 * |i + 1/e|
        let expected = 5000.0 + Complex64::new(1.0 / std::f64::consts::E, 1.0).norm().ln();
        assert!((s.ln_mag - expected).abs() < 1e-12);
    }

    #[test]
    fn exact_cancellation_gives_zero() {
        let a = LogComplex::from_real(2.5);
        let s = a + (-a);
        assert!(s.is_zero());
    }
}
