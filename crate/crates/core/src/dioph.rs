//! Diophantine analysis of the damper location a ∈ (0, 1): continued-fraction
//! expansion, a bounded-partial-quotient estimate, accurately reduced
//! sin²(nπa) sequences, and empirical Liouville-type lower-bound constants.
//!
//! The one piece of real numerics here is argument reduction. For n ~ 10⁶ the
//! naive `(n as f64 * PI * a).sin()` loses every significant digit because the
//! rounding error of the product is amplified by the derivative of sine at a
//! large argument. `sin_pi_multiple` instead splits n·a into integer and
//! fractional parts with an FMA (the product's rounding residual is recovered
//! exactly), so the reduced phase is accurate to a few ulps regardless of n;
//! the only irreducible uncertainty is the representation error of a itself,
//! which is reported as `accuracy_bound`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Whether sequences are indexed by sin(nπa) or sin((n+1/2)πa).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftMode {
    IntegerMode,
    HalfIntegerMode,
}

/// Named locations generated at working precision from their defining
/// algebraic identities rather than parsed from decimal literals.
pub fn named_constant<T: Real>(tag: &str) -> Option<T> {
    match tag {
        "golden" => Some((T::c(5.0).sqrt() - T::one()) / T::c(2.0)),
        "sqrt2m1" => Some(T::c(2.0).sqrt() - T::one()),
        _ => None,
    }
}

/// sin((n + σ)πa) with σ ∈ {0, ½}, computed with exact splitting of the
/// product (n + σ)·a so the phase is reduced without cancellation error.
pub fn sin_pi_multiple<T: Real>(a: T, n: u32, shift: ShiftMode) -> T {
    let c = match shift {
        ShiftMode::IntegerMode => T::from_u32(n).unwrap(),
        ShiftMode::HalfIntegerMode => T::from_u32(n).unwrap() + T::c(0.5),
    };
    let hi = c * a;
    // FMA recovers the product's rounding residual exactly: hi + lo = c·a
    let lo = c.mul_add(a, -hi);
    let m = hi.round();
    let frac = (hi - m) + lo; // |frac| ≤ 1/2 + |lo|, exact to an ulp
    let s = (frac * T::PI()).sin();
    let odd = m.to_i64().map(|v| v & 1 != 0).unwrap_or(false);
    if odd {
        -s
    } else {
        s
    }
}

/// Finite continued-fraction expansion [a₀; a₁, a₂, …] with its convergents.
///
/// `terminated` marks a detected rational: the fractional remainder dropped
/// below the requested tolerance before `max_terms` quotients were produced.
/// Convergents satisfy pₖ = aₖpₖ₋₁ + pₖ₋₂ (same for q) and are stored one per
/// quotient; the expansion also stops early if a convergent would overflow
/// 64-bit integers, since quotients past that point are noise at double
/// precision anyway.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub a0: u64,
    pub quotients: Vec<u64>,
    pub convergents: Vec<(i64, i64)>,
    pub terminated: bool,
}

pub fn continued_fraction<T: Real>(
    a: T,
    max_terms: usize,
    rational_tol: f64,
) -> Result<ContinuedFraction> {
    if !(a > T::zero() && a < T::one()) {
        return Err(Error::InvalidInput(format!("location must lie in (0, 1), got {a}")));
    }
    if !(rational_tol > 0.0) {
        return Err(Error::InvalidInput("rational_tol must be positive".into()));
    }
    let tol = T::c(rational_tol);
    let mut quotients = Vec::new();
    let mut convergents = Vec::new();
    // recurrence state: (h, k) for the current convergent, seeded for a0 = 0
    let (mut h_prev, mut k_prev) = (1i64, 0i64);
    let (mut h, mut k) = (0i64, 1i64);
    let mut frac = a;
    let mut terminated = false;
    for _ in 0..max_terms {
        if frac < tol {
            terminated = true;
            break;
        }
        let x = frac.recip();
        let q = x.floor();
        let qi = match q.to_i64() {
            // a quotient too large for i64 means the remainder was noise
            Some(v) if v >= 1 => v,
            _ => {
                terminated = true;
                break;
            }
        };
        let (h_new, k_new) = match (
            qi.checked_mul(h).and_then(|v| v.checked_add(h_prev)),
            qi.checked_mul(k).and_then(|v| v.checked_add(k_prev)),
        ) {
            (Some(hn), Some(kn)) => (hn, kn),
            _ => break, // convergents exceed 64 bits; stop without a verdict
        };
        quotients.push(qi as u64);
        convergents.push((h_new, k_new));
        h_prev = h;
        h = h_new;
        k_prev = k;
        k = k_new;
        frac = x - q;
    }
    Ok(ContinuedFraction { a0: 0, quotients, convergents, terminated })
}

/// Report the maximum partial quotient over `horizon` terms and estimate
/// whether the quotient sequence looks bounded. Finite prefixes cannot
/// certify boundedness; the estimate compares the maxima of the two halves
/// of the window and is exactly that, an estimate.
pub fn bounded_quotients(cf: &ContinuedFraction, horizon: usize) -> Result<(bool, u64)> {
    if cf.terminated {
        return Err(Error::RationalLocation(
            "bounded-quotient analysis applies to irrational locations only".into(),
        ));
    }
    if horizon == 0 {
        return Err(Error::InvalidInput("horizon must be positive".into()));
    }
    if cf.quotients.len() < horizon {
        return Err(Error::InvalidInput(format!(
            "expansion has {} quotients, horizon needs {horizon}",
            cf.quotients.len()
        )));
    }
    let window = &cf.quotients[..horizon];
    let max_quotient = *window.iter().max().unwrap();
    let split = horizon / 2;
    let first_max = window[..split].iter().max().copied().unwrap_or(0);
    let second_max = *window[split..].iter().max().unwrap();
    Ok((split == 0 || second_max <= first_max, max_quotient))
}

/// The sequence sin²((n+σ)πa) for n = 1..N with its phase-accuracy bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SineSequence<T> {
    pub a: T,
    pub shift: ShiftMode,
    pub values: Vec<(u32, T)>,
    /// Phase uncertainty N·π·ulp(a) inherited from the representation of a.
    pub accuracy_bound: T,
}

pub fn sine_sequence<T: Real>(a: T, n_max: u32, shift: ShiftMode) -> Result<SineSequence<T>> {
    if !(a > T::zero() && a < T::one()) {
        return Err(Error::InvalidInput(format!("location must lie in (0, 1), got {a}")));
    }
    if n_max == 0 {
        return Err(Error::InvalidInput("sequence length must be at least 1".into()));
    }
    let values = (1..=n_max)
        .map(|n| {
            let s = sin_pi_multiple(a, n, shift);
            (n, s * s)
        })
        .collect();
    Ok(SineSequence {
        a,
        shift,
        values,
        accuracy_bound: T::from_u32(n_max).unwrap() * T::PI() * a.ulp(),
    })
}

/// Empirical Liouville-type constant: the minimum over n ≤ N of
/// n^{d−1}·|sin(nπa)| (or (2n+1)^{d−1}·|sin((n+½)πa)| in half-integer mode),
/// together with the minimizing n. This is a lower envelope over a finite
/// range, not the true infimum.
pub fn liouville_constant<T: Real>(
    a: T,
    n_max: u32,
    d: T,
    shift: ShiftMode,
) -> Result<(T, u32)> {
    if !(d >= T::c(2.0)) {
        return Err(Error::InvalidInput(format!("exponent d must be at least 2, got {d}")));
    }
    if n_max == 0 {
        return Err(Error::InvalidInput("scan range must be at least 1".into()));
    }
    let cf = continued_fraction(a, 48, 1e-12)?;
    if cf.terminated {
        return Err(Error::RationalLocation(format!(
            "location {a} is rational within 1e-12; no Liouville bound exists"
        )));
    }
    let mut best = T::infinity();
    let mut argmin = 1u32;
    for n in 1..=n_max {
        let factor = match shift {
            ShiftMode::IntegerMode => T::from_u32(n).unwrap(),
            ShiftMode::HalfIntegerMode => T::from_u32(2 * n + 1).unwrap(),
        };
        let v = factor.powf(d - T::one()) * sin_pi_multiple(a, n, shift).abs();
        if v < best {
            best = v;
            argmin = n;
        }
    }
    Ok((best, argmin))
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn gcd(mut a: i64, mut b: i64) -> i64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a.abs()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn convergents_obey_recurrence_and_bound(a in 0.001f64..0.999) {
            let cf = continued_fraction(a, 12, 1e-12).unwrap();
            let n = cf.convergents.len();
            for k in 2..n {
                let q = cf.quotients[k] as i64;
                let (p2, q2) = cf.convergents[k - 2];
                let (p1, q1) = cf.convergents[k - 1];
                prop_assert_eq!(cf.convergents[k], (q * p1 + p2, q * q1 + q2));
            }
            // the classical bound is exact for the value the computed
            // quotients represent (the last convergent); a itself may sit a
            // float-drift away from that value
            let (pl, ql) = *cf.convergents.last().unwrap();
            let drift = (a - pl as f64 / ql as f64).abs();
            for k in 0..n.saturating_sub(1) {
                let (p, qd) = cf.convergents[k];
                let (_, q_next) = cf.convergents[k + 1];
                let err = (a - p as f64 / qd as f64).abs();
                // the p/q division rounds, so err saturates near ulp(a)
                let bound =
                    (1.0 + 1e-12) / (qd as f64 * q_next as f64) + drift + f64::EPSILON * a;
                prop_assert!(err <= bound, "k = {}: {} > {}", k, err, bound);
                prop_assert!(q_next >= qd);
            }
        }

        #[test]
        fn rationals_are_detected_and_reconstructed(p in 1i64..40, q in 41i64..200) {
            let a = p as f64 / q as f64;
            let cf = continued_fraction(a, 64, 1e-9).unwrap();
            prop_assert!(cf.terminated, "p/q = {}/{} not flagged rational", p, q);
            let (pk, qk) = *cf.convergents.last().unwrap();
            let g = gcd(p, q);
            prop_assert_eq!((pk, qk), (p / g, q / g));
        }

        #[test]
        fn sine_values_stay_in_the_unit_interval(
            a in 0.001f64..0.999,
            n_max in 1u32..300,
            half in proptest::bool::ANY,
        ) {
            let mode = if half { ShiftMode::HalfIntegerMode } else { ShiftMode::IntegerMode };
            let seq = sine_sequence(a, n_max, mode).unwrap();
            for &(n, v) in &seq.values {
                prop_assert!((0.0..=1.0).contains(&v), "n = {}: {}", n, v);
            }
        }

        #[test]
        fn reduction_agrees_with_naive_evaluation_at_small_n(
            a in 0.001f64..0.999,
            n in 1u32..50,
        ) {
            let accurate = sin_pi_multiple(a, n, ShiftMode::IntegerMode);
            let naive = (n as f64 * std::f64::consts::PI * a).sin();
            prop_assert!((accurate - naive).abs() < 1e-10);
        }
    }
}
