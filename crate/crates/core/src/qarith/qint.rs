//! Quantum integers `[k] = (A^2k - A^-2k)/(A^2 - A^-2)`, their factorials,
//! graded evaluations at roots of unity, and the branch-tracked square roots
//! `sqrt([k])` fixed by continuation from `sqrt(k)` at `A = 1`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::graded::{EvalPoint, GradedComplex};
use super::logcx::LogComplex;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `[k]` at an arbitrary nonzero `A`; returns the classical limit `k` when
/// `A^4 = 1` within rounding.
pub fn qint(k: u32, a: Complex64) -> Result<Complex64> {
    if a.norm() == 0.0 {
        return Err(Error::domain("qint at A = 0"));
    }
    if (a.powi(4) - 1.0).norm() < 1e-12 {
        return Ok(Complex64::new(k as f64, 0.0));
    }
    // On the unit circle use the exact sine quotient; it is far better
    // conditioned than powers for large k.
    if (a.norm() - 1.0).abs() < 1e-13 {
        let th = a.arg();
        return Ok(Complex64::new(
            (2.0 * k as f64 * th).sin() / (2.0 * th).sin(),
            0.0,
        ));
    }
    let a2k = a.powi(2 * k as i32);
    let a2 = a.powi(2);
    Ok((a2k - 1.0 / a2k) / (a2 - 1.0 / a2))
}

/// `[k]! = prod_{j=1..k} [j]`; `[0]! = 1`.
pub fn qfact(k: u32, a: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 1..=k {
        acc *= qint(j, a)?;
    }
    Ok(acc)
}

/// Graded evaluation of `{k} = A^2k - A^-2k` at `A0 = exp(i*pi/2n)`.
///
/// `{0}` is the exact zero; `{n}` has a simple zero with coefficient
/// `-2n*exp(-i*pi/2n)` in the local variable `w = 2(A - A0)`; otherwise the
/// value is `2i*sin(pi*k/n)` at order 0. Only `0 <= k < 2n` is supported.
pub fn ev_brace(k: u32, pt: &EvalPoint) -> Result<GradedComplex> {
    let n = pt.n();
    if k >= 2 * n {
        return Err(Error::out_of_range(format!(
            "ev_brace: k={k} must satisfy k < 2n = {}",
            2 * n
        )));
    }
    if k == 0 {
        return Ok(GradedComplex::ZERO);
    }
    if k == n {
        let coeff = -2.0 * n as f64 * Complex64::from_polar(1.0, -PI / (2.0 * n as f64));
        return Ok(GradedComplex::new(2, LogComplex::from_complex(coeff)));
    }
    let s = (PI * k as f64 / n as f64).sin();
    Ok(GradedComplex::new(
        0,
        LogComplex::from_complex(2.0 * s * I),
    ))
}

/// Graded `{a}! = prod_{j=1..a} {j}` at `A0`; order is 1 exactly when `a >= n`.
pub fn ev_brace_fact(a: u32, pt: &EvalPoint) -> Result<GradedComplex> {
    let mut acc = GradedComplex::one();
    for j in 1..=a {
        acc = acc.mul(&ev_brace(j, pt)?);
    }
    Ok(acc)
}

/// Branch-correct `sqrt([k])` at `A0 = exp(i*pi/2n)`.
///
/// The branch is the one reaching `sqrt(k)` at `A = 1`: positive real for
/// `0 < k < n`, a positive real multiple of `-i` for `n < k < 2n`. At `k = n`
/// the value has a half-order zero; its coefficient is the principal root of
/// the order-1 coefficient of `[n]` (only the modulus is contract-relevant).
pub fn sqrt_qint_circle(k: u32, pt: &EvalPoint) -> Result<GradedComplex> {
    let n = pt.n();
    if k >= 2 * n {
        return Err(Error::out_of_range(format!(
            "sqrt_qint_circle: k={k} must satisfy k < 2n = {}",
            2 * n
        )));
    }
    if k == 0 {
        return Ok(GradedComplex::ZERO);
    }
    let sin1 = (PI / n as f64).sin();
    if k == n {
        let ev_n = ev_brace(n, pt)?.div(&ev_brace(1, pt)?)?;
        return ev_n.sqrt();
    }
    let val = (PI * k as f64 / n as f64).sin() / sin1;
    if k < n {
        Ok(GradedComplex::new(0, LogComplex::from_real(val.sqrt())))
    } else {
        Ok(GradedComplex::new(
            0,
            LogComplex::from_complex(-I * (-val).sqrt()),
        ))
    }
}

/// Branch-correct `sqrt([k])` at a generic unit-circle point `A = exp(i*theta_q/2)`
/// (`theta_q` is the argument of `q = A^2`). Continuation from `A = 1` along
/// the circle crosses one simple zero of `[k]` per multiple of `pi` in
/// `k*theta_q`, each contributing a factor `-i` (`+i` for negative angles).
pub fn sqrt_qint_at_unit(k: u32, theta_q: f64) -> Result<LogComplex> {
    if k == 0 {
        return Ok(LogComplex::zero());
    }
    let x = k as f64 * theta_q / PI;
    let m = x.abs().floor() as i64;
    if (x - x.round()).abs() < 1e-9 && x.round() != 0.0 {
        return Err(Error::Branch(format!(
            "sqrt([{k}]) at a circle zero (k*theta_q = {m} pi)"
        )));
    }
    let val = (k as f64 * theta_q).sin() / theta_q.sin();
    let root = LogComplex::from_real(val.abs().sqrt());
    let turn = if theta_q >= 0.0 { -I } else { I };
    let mut phase = Complex64::new(1.0, 0.0);
    for _ in 0..(m % 4) {
        phase *= turn;
    }
    Ok(root * phase)
}

/// `P_k(A) = sum_{i<k} A^{4i} = (A^{4k}-1)/(A^4-1)`; all roots lie on the unit
/// circle, so `sqrt(P_k)` is single-valued on the open disk.
fn poly_p(k: u32, a: Complex64) -> Complex64 {
    let a4 = a.powi(4);
    if (a4 - 1.0).norm() < 1e-6 {
        // Near A^4 = 1 the closed form loses digits; sum directly.
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..k {
            acc += p;
            p *= a4;
        }
        return acc;
    }
    let (r, th) = a.to_polar();
    let a4k = Complex64::from_polar((4.0 * k as f64 * r.ln()).exp(), 4.0 * k as f64 * th);
    (a4k - 1.0) / (a4 - 1.0)
}

/// Branch-correct `sqrt([k])` at any point of the closed unit disk, via
/// `sqrt([k]) = A^{1-k} * sqrt(P_k(A))` with the polynomial root continued
/// from `sqrt(k)` at `A = 1` along a radial-then-circular path. Targets on
/// the circle are reached by a final outward radial leg; the path dips to
/// radius `1 - 1e-7` so it never touches the circle zeros of `P_k`.
pub fn sqrt_qint_continued(k: u32, target: Complex64) -> Result<LogComplex> {
    if k == 0 {
        return Ok(LogComplex::zero());
    }
    let (rt, tht) = target.to_polar();
    if rt > 1.0 + 1e-12 {
        return Err(Error::domain(
            "sqrt_qint_continued: target outside the closed unit disk",
        ));
    }
    let r_dip = rt.min(1.0 - 1e-7);
    let mut w = Complex64::new((k as f64).sqrt(), 0.0);
    let mut p_old = Complex64::new(k as f64, 0.0);

    let mut advance = |p_new: Complex64, w0: &mut Complex64, p0: &mut Complex64| -> Result<()> {
        let s = p_new.sqrt();
        let pick = if (s - *w0).norm() <= (-s - *w0).norm() { s } else { -s };
        *w0 = pick;
        *p0 = p_new;
        Ok(())
    };

    // Each leg is stepped adaptively: a step is accepted only when P moved by
    // less than half its magnitude, which keeps the square-root sign choice
    // unambiguous.
    let mut walk = |from: f64,
                    to: f64,
                    point: &dyn Fn(f64) -> Complex64,
                    w0: &mut Complex64,
                    p0: &mut Complex64|
     -> Result<()> {
        let mut t = from;
        let mut dt: f64 = (to - from) / 8.0;
        if dt == 0.0 {
            return Ok(());
        }
        let min_step = (to - from).abs() * 1e-12 + 1e-300;
        while (to - t) * dt.signum() > 0.0 {
            let t_next = if ((to - t).abs()) < dt.abs() { to } else { t + dt };
            let p_new = poly_p(k, point(t_next));
            if (p_new - *p0).norm() > 0.5 * p0.norm().max(1e-280) {
                dt /= 2.0;
                if dt.abs() < min_step {
                    return Err(Error::Branch(format!(
                        "sqrt continuation stalled for [{k}] near t={t}"
                    )));
                }
                continue;
            }
            advance(p_new, w0, p0)?;
            t = t_next;
            dt *= 1.3;
        }
        Ok(())
    };

    // Leg 1: radial 1 -> r_dip at angle 0 (P stays real positive there, but
    // walk anyway for uniformity).
    walk(1.0, r_dip, &|r| Complex64::new(r, 0.0), &mut w, &mut p_old)?;
    // Leg 2: arc at radius r_dip from angle 0 to the target angle.
    walk(
        0.0,
        tht,
        &|th| Complex64::from_polar(r_dip, th),
        &mut w,
        &mut p_old,
    )?;
    // Leg 3: radial from r_dip out (or in) to the target radius.
    walk(
        r_dip,
        rt,
        &|r| Complex64::from_polar(r, tht),
        &mut w,
        &mut p_old,
    )?;

    if p_old.norm() == 0.0 {
        return Err(Error::Branch(format!("sqrt([{k}]) target is a zero of P_{k}")));
    }
    // sqrt([k]) = A^(1-k) sqrt(P_k(A)); log-domain for the large power.
    let e = 1.0 - k as f64;
    let a_pow = LogComplex::new(e * rt.ln(), Complex64::from_polar(1.0, e * tht));
    Ok(a_pow * LogComplex::from_complex(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_of_n(n: u32) -> Complex64 {
        Complex64::from_polar(1.0, PI / (2.0 * n as f64))
    }

    #[test]
    fn qint_basics() {
        // [1] = 1 for any valid A
        let a = Complex64::new(0.3, 0.4);
        assert!((qint(1, a).unwrap() - 1.0).norm() < 1e-15);
        // classical limit [k] -> k
        assert!((qint(7, Complex64::new(1.0, 0.0)).unwrap() - 7.0).norm() < 1e-12);
        assert!(qint(3, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn qint_sine_quotient() {
        // [5] at A = exp(i*pi/20) (n = 10): sin(pi/2)/sin(pi/10)
        let v = qint(5, a_of_n(10)).unwrap();
        let expected = 1.0 / (PI / 10.0).sin();
        assert!((v.re - expected).abs() < 1e-12, "{v} vs {expected}");
        assert!((expected - 3.2360680).abs() < 1e-7);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn qfact_values() {
        let a = a_of_n(8);
        assert!((qfact(0, a).unwrap() - 1.0).norm() < 1e-15);
        assert!((qfact(3, Complex64::new(1.0, 0.0)).unwrap() - 6.0).norm() < 1e-12);
        // n = 8: product of sin(j*pi/8)/sin(pi/8), j = 1..4
        let s1 = (PI / 8.0).sin();
        let expected: f64 = (1..=4).map(|j| (PI * j as f64 / 8.0).sin() / s1).product();
        let v = qfact(4, a).unwrap();
        assert!((v.re - expected).abs() < 1e-12);
        let factors = [1.0, 1.8477590, 2.4142136, 2.6131259];
        let by_hand: f64 = factors.iter().product();
        assert!((expected - by_hand).abs() < 1e-6);
    }

    #[test]
    fn ev_brace_values() {
        let pt = EvalPoint::with_order(3).unwrap();
        assert!(ev_brace(0, &EvalPoint::with_order(5).unwrap())
            .unwrap()
            .is_zero());
        // {2} at n=3: 2i sin(2pi/3) = i*sqrt(3)
        let v = ev_brace(2, &pt).unwrap();
        assert_eq!(v.order_twice(), 0);
        let z = v.coeff().to_complex();
        assert!((z - I * 3f64.sqrt()).norm() < 1e-14);
        // {3} at n=3: order 1, coeff -6 exp(-i*pi/6)
        let v = ev_brace(3, &pt).unwrap();
        assert_eq!(v.order_twice(), 2);
        let z = v.coeff().to_complex();
        assert!((z - (-6.0) * Complex64::from_polar(1.0, -PI / 6.0)).norm() < 1e-13);
        assert!(ev_brace(6, &pt).is_err());
    }

    #[test]
    fn ev_brace_fact_values() {
        let pt = EvalPoint::with_order(3).unwrap();
        // {2}! at n=3: (2i sin(pi/3))(2i sin(2pi/3)) = -3
        let v = ev_brace_fact(2, &pt).unwrap();
        assert_eq!(v.order_twice(), 0);
        assert!((v.coeff().to_complex() - Complex64::new(-3.0, 0.0)).norm() < 1e-13);
        // {3}! = -3 * (-6 e^{-i pi/6}) = 18 e^{-i pi/6}, order 1
        let v = ev_brace_fact(3, &pt).unwrap();
        assert_eq!(v.order_twice(), 2);
        let z = v.coeff().to_complex();
        assert!((z - 18.0 * Complex64::from_polar(1.0, -PI / 6.0)).norm() < 1e-12);
        // empty product
        let v = ev_brace_fact(0, &pt).unwrap();
        assert_eq!(v.order_twice(), 0);
        assert!((v.coeff().to_complex() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn sqrt_qint_circle_branches() {
        let pt = EvalPoint::with_order(8).unwrap();
        // k = 2 < n: positive real sqrt(sin(pi/4)/sin(pi/8))
        let v = sqrt_qint_circle(2, &pt).unwrap();
        assert_eq!(v.order_twice(), 0);
        let z = v.coeff().to_complex();
        let expected = ((PI / 4.0).sin() / (PI / 8.0).sin()).sqrt();
        assert!((z.re - expected).abs() < 1e-12 && z.im.abs() < 1e-15);
        assert!((expected - 1.3593072).abs() < 1e-7);
        // k = 10 in (n, 2n): -i times the same magnitude (sine periodicity)
        let v = sqrt_qint_circle(10, &pt).unwrap();
        let z = v.coeff().to_complex();
        assert!((z + I * expected).norm() < 1e-12);
        assert!(sqrt_qint_circle(16, &pt).is_err());
    }

    #[test]
    fn sqrt_squares_back_to_ev() {
        // For all 0 < k < 2n: sqrt([k])^2 = ev([k]) exactly in order, 1e-12 in coeff.
        for n in [2u32, 3, 5, 8, 11] {
            let pt = EvalPoint::with_order(n).unwrap();
            for k in 1..(2 * n) {
                let s = sqrt_qint_circle(k, &pt).unwrap();
                let sq = s.mul(&s);
                let ev = ev_brace(k, &pt).unwrap().div(&ev_brace(1, &pt).unwrap()).unwrap();
                assert_eq!(sq.order_twice(), ev.order_twice(), "n={n} k={k}");
                assert!(
                    sq.coeff().rel_distance(ev.coeff()) < 1e-12,
                    "n={n} k={k}: {:?} vs {:?}",
                    sq.coeff().to_complex(),
                    ev.coeff().to_complex()
                );
            }
        }
    }

    #[test]
    fn continued_sqrt_matches_circle_rule() {
        for n in [5u32, 8, 13] {
            let pt = EvalPoint::with_order(n).unwrap();
            let a0 = a_of_n(n);
            for k in 1..(2 * n) {
                if k == n {
                    continue;
                }
                let rule = sqrt_qint_circle(k, &pt).unwrap().coeff().to_complex();
                let cont = sqrt_qint_continued(k, a0).unwrap().to_complex();
                assert!(
                    (rule - cont).norm() < 1e-6 * (1.0 + rule.norm()),
                    "n={n} k={k}: rule {rule} vs continued {cont}"
                );
            }
        }
    }

    #[test]
    fn continued_sqrt_interior_squares_to_qint() {
        let a = Complex64::from_polar(0.999, PI / 16.0);
        for k in [1u32, 3, 7, 12, 20] {
            let s = sqrt_qint_continued(k, a).unwrap().to_complex();
            let v = qint(k, a).unwrap();
            assert!((s * s - v).norm() < 1e-9 * (1.0 + v.norm()), "k={k}");
        }
    }

    #[test]
    fn unit_rule_matches_continuation_generic_angle() {
        // Generic circle point not of the form exp(i*pi/2n).
        let theta_q = 0.37;
        let a = Complex64::from_polar(1.0, theta_q / 2.0);
        for k in [2u32, 5, 9, 14, 23] {
            let rule = sqrt_qint_at_unit(k, theta_q).unwrap().to_complex();
            let cont = sqrt_qint_continued(k, a).unwrap().to_complex();
            assert!(
                (rule - cont).norm() < 1e-6 * (1.0 + rule.norm()),
                "k={k}: {rule} vs {cont}"
            );
        }
    }
}
