//! Weight functions and the lower convex envelope of a positive sequence.
//!
//! Two kinds of weight appear. Closed-form profiles (`WeightProfile`) model
//! the monotone convex weights the inequality machinery is built from: a
//! decreasing one that vanishes at infinity and an increasing one that
//! diverges. Envelope weights (`EnvelopeResult`) are piecewise linear
//! minorants computed from sampled sequence data; they fill the decreasing
//! role when no closed form is available.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Monotonicity contract a profile commits to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    DecreasingToZero,
    IncreasingToInfinity,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightFamily<T> {
    /// e^(-rate * t)
    ExpDecay { rate: T },
    /// scale / t^exponent
    PowerDecay { scale: T, exponent: T },
    /// (t + shift)^exponent
    PowerGrowth { shift: T, exponent: T },
    /// Linear interpolation through strictly increasing breakpoints.
    PiecewiseLinear { breakpoints: Vec<(T, T)> },
}

/// A closed-form (or piecewise linear) weight on `(domain_left, ∞)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightProfile<T> {
    pub family: WeightFamily<T>,
    pub domain_left: T,
    pub direction: Direction,
}

impl<T: Real> WeightProfile<T> {
    pub fn exp_decay(rate: T) -> Result<Self> {
        if !(rate > T::zero()) {
            return Err(Error::InvalidInput("exp_decay rate must be positive".into()));
        }
        Ok(WeightProfile {
            family: WeightFamily::ExpDecay { rate },
            domain_left: T::zero(),
            direction: Direction::DecreasingToZero,
        })
    }

    pub fn power_decay(scale: T, exponent: T) -> Result<Self> {
        if !(scale > T::zero()) || !(exponent > T::zero()) {
            return Err(Error::InvalidInput(
                "power_decay needs positive scale and exponent".into(),
            ));
        }
        Ok(WeightProfile {
            family: WeightFamily::PowerDecay { scale, exponent },
            domain_left: T::zero(),
            direction: Direction::DecreasingToZero,
        })
    }

    pub fn power_growth(shift: T, exponent: T) -> Result<Self> {
        if shift < T::zero() || shift > T::one() {
            return Err(Error::InvalidInput("power_growth shift must lie in [0, 1]".into()));
        }
        if exponent < T::one() {
            return Err(Error::InvalidInput("power_growth exponent must be >= 1".into()));
        }
        Ok(WeightProfile {
            family: WeightFamily::PowerGrowth { shift, exponent },
            domain_left: T::zero(),
            direction: Direction::IncreasingToInfinity,
        })
    }

    pub fn piecewise_linear(breakpoints: Vec<(T, T)>, direction: Direction) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidInput("piecewise weight needs at least 2 breakpoints".into()));
        }
        for w in breakpoints.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidInput("breakpoint abscissae must strictly increase".into()));
            }
        }
        if breakpoints.iter().any(|&(_, v)| !(v > T::zero())) {
            return Err(Error::InvalidInput("breakpoint values must be positive".into()));
        }
        let domain_left = breakpoints[0].0;
        Ok(WeightProfile {
            family: WeightFamily::PiecewiseLinear { breakpoints },
            domain_left,
            direction,
        })
    }

    pub fn with_domain_left(mut self, m: T) -> Result<Self> {
        if m < T::zero() {
            return Err(Error::InvalidInput("domain_left must be nonnegative".into()));
        }
        if matches!(self.family, WeightFamily::PiecewiseLinear { .. }) {
            return Err(Error::InvalidInput(
                "piecewise weights take their domain from the breakpoints".into(),
            ));
        }
        self.domain_left = m;
        Ok(self)
    }

    /// Right end of the evaluation domain (`None` = unbounded).
    pub fn domain_right(&self) -> Option<T> {
        match &self.family {
            WeightFamily::PiecewiseLinear { breakpoints } => Some(breakpoints.last().unwrap().0),
            _ => None,
        }
    }

    /// Evaluate at `t`. Closed forms accept any `t >= domain_left` where the
    /// value is finite; the piecewise family is confined to its breakpoints.
    pub fn eval(&self, t: T) -> Result<T> {
        match &self.family {
            WeightFamily::ExpDecay { rate } => {
                self.require_left(t)?;
                Ok((-*rate * t).exp())
            }
            WeightFamily::PowerDecay { scale, exponent } => {
                self.require_left(t)?;
                let v = *scale / t.powf(*exponent);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Domain(format!("power_decay undefined at t = {t}")))
                }
            }
            WeightFamily::PowerGrowth { shift, exponent } => {
                self.require_left(t)?;
                Ok((t + *shift).powf(*exponent))
            }
            WeightFamily::PiecewiseLinear { breakpoints } => {
                let first = breakpoints[0].0;
                let last = breakpoints.last().unwrap().0;
                if t < first || t > last {
                    return Err(Error::Domain(format!(
                        "piecewise weight defined on [{first}, {last}], got {t}"
                    )));
                }
                Ok(lerp_in(breakpoints, t))
            }
        }
    }

    /// Inverse of a strictly monotone profile.
    pub fn eval_inverse(&self, y: T) -> Result<T> {
        if !(y.is_finite()) {
            return Err(Error::Domain("inverse argument must be finite".into()));
        }
        match &self.family {
            WeightFamily::ExpDecay { rate } => {
                if !(y > T::zero()) {
                    return Err(Error::Domain("exp_decay inverse needs y > 0".into()));
                }
                let t = -y.ln() / *rate;
                self.require_left(t)?;
                Ok(t)
            }
            WeightFamily::PowerDecay { scale, exponent } => {
                if !(y > T::zero()) {
                    return Err(Error::Domain("power_decay inverse needs y > 0".into()));
                }
                let t = (*scale / y).powf(exponent.recip());
                self.require_left(t)?;
                Ok(t)
            }
            WeightFamily::PowerGrowth { shift, exponent } => {
                if !(y >= T::zero()) {
                    return Err(Error::Domain("power_growth inverse needs y >= 0".into()));
                }
                let t = y.powf(exponent.recip()) - *shift;
                if t < self.domain_left - self.domain_left.ulp() {
                    return Err(Error::Domain(format!("value {y} below weight range")));
                }
                Ok(t.max(self.domain_left))
            }
            WeightFamily::PiecewiseLinear { breakpoints } => invert_piecewise(breakpoints, y),
        }
    }

    fn require_left(&self, t: T) -> Result<()> {
        if t < self.domain_left {
            Err(Error::Domain(format!(
                "weight defined on [{}, ∞), got {t}",
                self.domain_left
            )))
        } else {
            Ok(())
        }
    }

    /// Assert the declared-direction invariants on a finite grid: positivity,
    /// strict monotonicity, discrete convexity. Trailing values that have
    /// underflowed to zero on a decreasing profile are tolerated; the
    /// analytic value there is positive but below the float range.
    pub fn validate_on(&self, grid: &[T]) -> Result<()> {
        if grid.len() < 3 {
            return Err(Error::InvalidInput("validation grid needs at least 3 points".into()));
        }
        for w in grid.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidInput("validation grid must strictly increase".into()));
            }
        }
        let vals: Vec<T> = grid.iter().map(|&t| self.eval(t)).collect::<Result<_>>()?;
        for (i, &v) in vals.iter().enumerate() {
            let underflow_tail =
                self.direction == Direction::DecreasingToZero && i > 0 && v == T::zero();
            if !(v > T::zero()) && !underflow_tail {
                return Err(Error::InvalidWeight(format!("nonpositive value at t = {}", grid[i])));
            }
        }
        for i in 1..vals.len() {
            let (prev, cur) = (vals[i - 1], vals[i]);
            let ok = match self.direction {
                Direction::DecreasingToZero => cur < prev || (cur == T::zero() && prev >= T::zero()),
                Direction::IncreasingToInfinity => cur > prev,
            };
            if !ok {
                return Err(Error::InvalidWeight(format!(
                    "monotonicity fails between t = {} and t = {}",
                    grid[i - 1],
                    grid[i]
                )));
            }
        }
        let slack = T::effective_tol(1e-12);
        for i in 1..vals.len() - 1 {
            let (t1, t2, t3) = (grid[i - 1], grid[i], grid[i + 1]);
            let chord = vals[i - 1] + (vals[i + 1] - vals[i - 1]) * (t2 - t1) / (t3 - t1);
            let scale = vals[i - 1].abs().max(vals[i + 1].abs()).max(T::one());
            if vals[i] > chord + slack * scale {
                return Err(Error::InvalidWeight(format!("convexity fails near t = {t2}")));
            }
        }
        Ok(())
    }

    /// Log-spaced grid over `[lo, hi]` suitable for `validate_on`.
    pub fn log_grid(lo: T, hi: T, points: usize) -> Vec<T> {
        debug_assert!(lo > T::zero() && hi > lo && points >= 2);
        let (llo, lhi) = (lo.ln(), hi.ln());
        (0..points)
            .map(|i| {
                let f = T::from_usize(i).unwrap() / T::from_usize(points - 1).unwrap();
                (llo + (lhi - llo) * f).exp()
            })
            .collect()
    }
}

fn lerp_in<T: Real>(breakpoints: &[(T, T)], t: T) -> T {
    let mut lo = 0;
    let mut hi = breakpoints.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if breakpoints[mid].0 <= t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (t0, v0) = breakpoints[lo];
    let (t1, v1) = breakpoints[hi];
    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
}

fn invert_piecewise<T: Real>(breakpoints: &[(T, T)], y: T) -> Result<T> {
    let increasing = breakpoints.last().unwrap().1 > breakpoints[0].1;
    let (min_v, max_v) = if increasing {
        (breakpoints[0].1, breakpoints.last().unwrap().1)
    } else {
        (breakpoints.last().unwrap().1, breakpoints[0].1)
    };
    if y < min_v || y > max_v {
        return Err(Error::Domain(format!(
            "value {y} outside piecewise range [{min_v}, {max_v}]"
        )));
    }
    for w in breakpoints.windows(2) {
        let ((t0, v0), (t1, v1)) = (w[0], w[1]);
        let inside = if increasing { v0 <= y && y <= v1 } else { v1 <= y && y <= v0 };
        if inside {
            if v1 == v0 {
                return Ok(t0);
            }
            return Ok(t0 + (t1 - t0) * (y - v0) / (v1 - v0));
        }
    }
    Err(Error::Internal("piecewise inversion fell through".into()))
}

/// Lower convex envelope of a sampled positive sequence, restricted to its
/// nonincreasing part and extended linearly down to 0.
///
/// `vertices` are the hull vertices `(n, value)`; evaluation is defined on
/// `[0, n*]` where `n*` closes `reliable_window`. Left of the first vertex
/// the envelope continues with `extension_slope` (the first hull slope,
/// clamped to be nonpositive), which keeps it convex, nonincreasing and
/// finite at 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnvelopeResult<T> {
    pub vertices: Vec<(u32, T)>,
    pub reliable_window: (u32, u32),
    pub extension_slope: T,
}

impl<T: Real> EnvelopeResult<T> {
    pub fn n_star(&self) -> u32 {
        self.reliable_window.1
    }

    pub fn value_at_zero(&self) -> T {
        let (n0, v0) = self.vertices[0];
        v0 - self.extension_slope * T::from_u32(n0).unwrap()
    }

    pub fn eval(&self, t: T) -> Result<T> {
        let n_star = T::from_u32(self.n_star()).unwrap();
        if !(t >= T::zero()) || t > n_star {
            return Err(Error::Domain(format!(
                "envelope defined on [0, {}], got {t}",
                self.n_star()
            )));
        }
        let (n0, v0) = self.vertices[0];
        let t0 = T::from_u32(n0).unwrap();
        if t <= t0 {
            return Ok(v0 + self.extension_slope * (t - t0));
        }
        // binary search for the hull segment containing t
        let mut lo = 0;
        let mut hi = self.vertices.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if T::from_u32(self.vertices[mid].0).unwrap() <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (na, va) = self.vertices[lo];
        let (nb, vb) = self.vertices[hi];
        let (ta, tb) = (T::from_u32(na).unwrap(), T::from_u32(nb).unwrap());
        Ok(va + (vb - va) * (t - ta) / (tb - ta))
    }

    /// Inverse on the strictly decreasing part (values between the ends).
    pub fn eval_inverse(&self, y: T) -> Result<T> {
        let top = self.value_at_zero();
        let bottom = self.vertices.last().unwrap().1;
        if y < bottom || y > top {
            return Err(Error::Domain(format!(
                "envelope inverse needs y in [{bottom}, {top}], got {y}"
            )));
        }
        // walk segments from the left; values are nonincreasing
        let (n0, v0) = self.vertices[0];
        let t0 = T::from_u32(n0).unwrap();
        if y >= v0 {
            if self.extension_slope == T::zero() {
                return Ok(t0);
            }
            return Ok(t0 + (y - v0) / self.extension_slope);
        }
        for w in self.vertices.windows(2) {
            let ((na, va), (nb, vb)) = (w[0], w[1]);
            if y <= va && y >= vb {
                let (ta, tb) = (T::from_u32(na).unwrap(), T::from_u32(nb).unwrap());
                if va == vb {
                    return Ok(ta);
                }
                return Ok(ta + (tb - ta) * (y - va) / (vb - va));
            }
        }
        Err(Error::Internal("envelope inversion fell through".into()))
    }
}

/// Lower convex envelope of `(n, u_n)` samples.
///
/// Monotone-chain lower hull, then truncation to the nonincreasing prefix:
/// the hull is convex, so once a segment slope turns positive every later
/// slope is positive too, and the trusted window ends at the last vertex a
/// nonpositive-slope segment reaches.
pub fn lower_convex_envelope<T: Real>(points: &[(u32, T)]) -> Result<EnvelopeResult<T>> {
    if points.len() < 2 {
        return Err(Error::InvalidInput("envelope needs at least 2 points".into()));
    }
    for w in points.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::InvalidInput("point indices must strictly increase".into()));
        }
    }
    if points.iter().any(|&(_, v)| !(v > T::zero()) || !v.is_finite()) {
        return Err(Error::InvalidInput("point values must be positive and finite".into()));
    }

    let mut hull: Vec<(u32, T)> = Vec::new();
    for &(n, v) in points {
        while hull.len() >= 2 {
            let (n1, v1) = hull[hull.len() - 2];
            let (n2, v2) = hull[hull.len() - 1];
            // cross <= 0 means (n2, v2) lies on or above the chord and is not
            // a lower-hull vertex
            let cross = T::from_u32(n2 - n1).unwrap() * (v - v1)
                - (v2 - v1) * T::from_u32(n - n1).unwrap();
            if cross <= T::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((n, v));
    }

    let mut last = 0;
    for i in 1..hull.len() {
        if hull[i].1 <= hull[i - 1].1 {
            last = i;
        } else {
            break;
        }
    }
    hull.truncate(last + 1);

    let extension_slope = if hull.len() >= 2 {
        let (n0, v0) = hull[0];
        let (n1, v1) = hull[1];
        let s = (v1 - v0) / T::from_u32(n1 - n0).unwrap();
        s.min(T::zero())
    } else {
        T::zero()
    };
    let n_star = hull.last().unwrap().0;
    Ok(EnvelopeResult {
        vertices: hull,
        reliable_window: (1, n_star),
        extension_slope,
    })
}

/// Either kind of weight, so interpolants can be built from closed forms and
/// envelopes through one interface.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "weight", rename_all = "snake_case")]
pub enum Weight<T> {
    Profile(WeightProfile<T>),
    Envelope(EnvelopeResult<T>),
}

impl<T: Real> Weight<T> {
    pub fn eval(&self, t: T) -> Result<T> {
        match self {
            Weight::Profile(p) => p.eval(t),
            Weight::Envelope(e) => e.eval(t),
        }
    }

    pub fn eval_inverse(&self, y: T) -> Result<T> {
        match self {
            Weight::Profile(p) => p.eval_inverse(y),
            Weight::Envelope(e) => e.eval_inverse(y),
        }
    }

    pub fn domain_left(&self) -> T {
        match self {
            Weight::Profile(p) => p.domain_left,
            Weight::Envelope(_) => T::zero(),
        }
    }

    pub fn domain_right(&self) -> Option<T> {
        match self {
            Weight::Profile(p) => p.domain_right(),
            Weight::Envelope(e) => Some(T::from_u32(e.n_star()).unwrap()),
        }
    }

    pub fn is_decreasing(&self) -> bool {
        match self {
            Weight::Profile(p) => p.direction == Direction::DecreasingToZero,
            Weight::Envelope(_) => true,
        }
    }
}

/// Tail thresholds for `check_weight_hypotheses`: the decreasing weight must
/// fall below `vanish` and the increasing one must exceed `diverge` by the
/// end of the grid.
#[derive(Debug, Clone, Copy)]
pub struct HypothesisThresholds<T> {
    pub vanish: T,
    pub diverge: T,
}

impl<T: Real> Default for HypothesisThresholds<T> {
    fn default() -> Self {
        HypothesisThresholds {
            vanish: T::c(1e-3),
            diverge: T::c(1e3),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisReport {
    pub w1_positive: bool,
    pub w1_decreasing: bool,
    pub w1_convex: bool,
    pub w1_vanishes: bool,
    pub w2_positive: bool,
    pub w2_increasing: bool,
    pub w2_convex: bool,
    pub w2_diverges: bool,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.w1_positive
            && self.w1_decreasing
            && self.w1_convex
            && self.w1_vanishes
            && self.w2_positive
            && self.w2_increasing
            && self.w2_convex
            && self.w2_diverges
    }
}

/// Per-hypothesis booleans for a candidate weight pair on a grid. Unlike
/// `validate_on` this never errors on a failed hypothesis; it reports.
pub fn check_weight_hypotheses<T: Real>(
    w1: &WeightProfile<T>,
    w2: &WeightProfile<T>,
    grid: &[T],
    thresholds: HypothesisThresholds<T>,
) -> Result<HypothesisReport> {
    if grid.len() < 3 {
        return Err(Error::InvalidInput("hypothesis grid needs at least 3 points".into()));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidInput("hypothesis grid must strictly increase".into()));
        }
    }
    let v1: Vec<T> = grid.iter().map(|&t| w1.eval(t)).collect::<Result<_>>()?;
    let v2: Vec<T> = grid.iter().map(|&t| w2.eval(t)).collect::<Result<_>>()?;

    let positive = |vals: &[T], allow_underflow: bool| {
        vals.iter()
            .enumerate()
            .all(|(i, &v)| v > T::zero() || (allow_underflow && i > 0 && v == T::zero()))
    };
    let monotone = |vals: &[T], decreasing: bool| {
        vals.windows(2).all(|w| {
            if decreasing {
                w[1] < w[0] || (w[1] == T::zero() && w[0] >= T::zero())
            } else {
                w[1] > w[0]
            }
        })
    };
    let convex = |vals: &[T]| {
        let slack = T::effective_tol(1e-12);
        (1..vals.len() - 1).all(|i| {
            let (t1, t2, t3) = (grid[i - 1], grid[i], grid[i + 1]);
            let chord = vals[i - 1] + (vals[i + 1] - vals[i - 1]) * (t2 - t1) / (t3 - t1);
            let scale = vals[i - 1].abs().max(vals[i + 1].abs()).max(T::one());
            vals[i] <= chord + slack * scale
        })
    };

    Ok(HypothesisReport {
        w1_positive: positive(&v1, true),
        w1_decreasing: monotone(&v1, true),
        w1_convex: convex(&v1),
        w1_vanishes: *v1.last().unwrap() < thresholds.vanish,
        w2_positive: positive(&v2, false),
        w2_increasing: monotone(&v2, false),
        w2_convex: convex(&v2),
        w2_diverges: *v2.last().unwrap() > thresholds.diverge,
    })
}
