//! Concave interpolant pairs (Φ, Ψ), the rate function H and its inverse,
//! and the checks built on them: the generalized Hölder inequality, the
//! inverse Jensen inequality, admissibility and optimality of a pair.
//!
//! The construction takes a decreasing weight ω₁ and an increasing weight
//! ω₂ and produces concave increasing Φ, Ψ with Φ(ω₁(t))·Ψ(ω₂(t)) ≥ 1 on
//! (1, ∞). The rate function H(t) = 1/Ψ⁻¹(1/Φ(t)) then converts the pair
//! into a quantitative interpolation statement; its inverse
//! H⁻¹(t) = Φ⁻¹(1/Ψ(1/t)) is closed-form for every kind built here, which
//! keeps downstream energy estimates free of root-finding error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::weights::{Direction, Weight, WeightFamily, WeightProfile};

/// Interval of valid inputs. `hi = None` means unbounded above. Endpoints
/// are metadata; evaluation applies the exact per-kind guards.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Domain<T> {
    pub lo: T,
    pub hi: Option<T>,
}

impl<T: Real> Domain<T> {
    fn clip_message(&self, t: T, what: &str) -> Error {
        match self.hi {
            Some(hi) => Error::Domain(format!("{what} defined on ({}, {hi}], got {t}", self.lo)),
            None => Error::Domain(format!("{what} defined on ({}, ∞), got {t}", self.lo)),
        }
    }
}

/// How functional inversions inside evaluation are carried out. Closed-form
/// kinds never iterate; `Bisection` applies to forward evaluation of
/// weight-derived Φ where φ(t) = ω₁(t)/tᵖ has no algebraic inverse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum InverseMethod {
    ClosedForm,
    Bisection { tolerance: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InterpolantKind<T> {
    /// Φ(s) = 1/φ⁻¹(s) with φ(t) = ω₁(t)/tᵖ, for a decreasing weight ω₁.
    PhiFromWeight { weight: Weight<T>, p: T },
    /// Ψ = ω₂⁻¹ for an increasing weight ω₂.
    PsiFromWeight { weight: WeightProfile<T> },
    /// C·t^e with C > 0 and e ∈ (0, 1].
    Power { coeff: T, exponent: T },
    /// 2a/(a − ln t) on (0, e^{a−2}]; concave there, with range (0, a].
    RecipLog { a: T },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Interpolant<T> {
    pub kind: InterpolantKind<T>,
    pub domain: Domain<T>,
    pub inverse_method: InverseMethod,
}

/// φ(t) = ω₁(t)/tᵖ with positivity and finiteness guards.
fn phi_value<T: Real>(weight: &Weight<T>, p: T, t: T) -> Result<T> {
    if !(t > T::zero()) {
        return Err(Error::Domain(format!("phi needs t > 0, got {t}")));
    }
    let v = weight.eval(t)? / t.powf(p);
    if v.is_finite() && v > T::zero() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("phi not positive-finite at t = {t}")))
    }
}

/// Starting bracket in t for inverting φ; `invert_monotone` expands it.
fn phi_bracket<T: Real>(weight: &Weight<T>) -> (T, T) {
    let m = weight.domain_left();
    match weight.domain_right() {
        Some(r) => {
            let q = T::c(0.25);
            (m + (r - m) * q, m + (r - m) * (T::one() - q))
        }
        None => (m.max(T::c(0.5)), (m + m).max(T::c(2.0))),
    }
}

/// Verification grid in t for a φ-route weight: stays clear of the region
/// where an exponential underflows to zero.
fn phi_grid<T: Real>(weight: &Weight<T>, points: usize) -> Vec<T> {
    match weight {
        Weight::Envelope(env) => {
            let n_star = T::from_u32(env.n_star()).unwrap();
            let n = T::from_usize(points).unwrap();
            (1..=points)
                .map(|i| n_star * T::from_usize(i).unwrap() / n)
                .collect()
        }
        Weight::Profile(p) => {
            let lo = if p.domain_left > T::zero() {
                p.domain_left
            } else {
                T::c(1e-3)
            };
            let hi = match &p.family {
                WeightFamily::ExpDecay { rate } => (T::c(600.0) / *rate).min(T::c(1e3)),
                WeightFamily::PiecewiseLinear { breakpoints } => breakpoints.last().unwrap().0,
                _ => T::c(1e3),
            };
            WeightProfile::log_grid(lo, hi.max(lo + lo), points)
        }
    }
}

/// Discrete concavity-and-monotonicity check on (xs, ys) samples with
/// strictly increasing xs.
fn verify_concave_increasing<T: Real>(xs: &[T], ys: &[T], what: &str) -> Result<()> {
    let slack = T::c(1e-9);
    for i in 1..ys.len() {
        if !(ys[i] > ys[i - 1]) {
            return Err(Error::InvalidFunction(format!(
                "{what} is not increasing near x = {}",
                xs[i]
            )));
        }
    }
    for i in 1..ys.len().saturating_sub(1) {
        let (x1, x2, x3) = (xs[i - 1], xs[i], xs[i + 1]);
        let chord = ys[i - 1] + (ys[i + 1] - ys[i - 1]) * (x2 - x1) / (x3 - x1);
        let scale = ys[i - 1].abs().max(ys[i + 1].abs()).max(T::one());
        if ys[i] < chord - slack * scale {
            return Err(Error::InvalidFunction(format!(
                "{what} is not concave near x = {x2}"
            )));
        }
    }
    Ok(())
}

impl<T: Real> Interpolant<T> {
    /// Power interpolant C·t^e; `exponent` must lie in (0, 1] so the result
    /// is concave.
    pub fn power(coeff: T, exponent: T) -> Result<Self> {
        if !(coeff > T::zero()) {
            return Err(Error::InvalidInput("power coefficient must be positive".into()));
        }
        if !(exponent > T::zero()) || exponent > T::one() {
            return Err(Error::InvalidInput(
                "power exponent must lie in (0, 1] for concavity".into(),
            ));
        }
        Ok(Interpolant {
            kind: InterpolantKind::Power { coeff, exponent },
            domain: Domain { lo: T::zero(), hi: None },
            inverse_method: InverseMethod::ClosedForm,
        })
    }

    /// Φ(t) = 2a/(a − ln t) on (0, e^{a−2}].
    pub fn recip_log(a: T) -> Result<Self> {
        if !(a > T::zero()) {
            return Err(Error::InvalidInput("recip_log parameter must be positive".into()));
        }
        Ok(Interpolant {
            kind: InterpolantKind::RecipLog { a },
            domain: Domain {
                lo: T::zero(),
                hi: Some((a - T::c(2.0)).exp()),
            },
            inverse_method: InverseMethod::ClosedForm,
        })
    }

    pub fn eval(&self, t: T) -> Result<T> {
        match &self.kind {
            InterpolantKind::Power { coeff, exponent } => {
                if !(t >= T::zero()) {
                    return Err(self.domain.clip_message(t, "power interpolant"));
                }
                Ok(*coeff * t.powf(*exponent))
            }
            InterpolantKind::RecipLog { a } => {
                let hi = self.domain.hi.unwrap();
                if !(t > T::zero()) || t > hi * (T::one() + T::tol_floor()) {
                    return Err(self.domain.clip_message(t, "recip_log interpolant"));
                }
                Ok(T::c(2.0) * *a / (*a - t.ln()))
            }
            InterpolantKind::PsiFromWeight { weight } => weight.eval_inverse(t),
            InterpolantKind::PhiFromWeight { weight, p } => {
                if !(t > T::zero()) {
                    return Err(self.domain.clip_message(t, "phi interpolant"));
                }
                if t < self.domain.lo * (T::one() - T::c(1e-12)) {
                    return Err(self.domain.clip_message(t, "phi interpolant"));
                }
                if let Weight::Profile(prof) = weight {
                    if let WeightFamily::PowerDecay { scale, exponent } = prof.family {
                        // φ(u) = c·u^{−(r+p)} inverts algebraically
                        return Ok((t / scale).powf((exponent + *p).recip()));
                    }
                }
                let tol = match self.inverse_method {
                    InverseMethod::Bisection { tolerance } => tolerance,
                    InverseMethod::ClosedForm => 1e-12,
                };
                let root = invert_monotone(
                    |u| phi_value(weight, *p, u),
                    t,
                    phi_bracket(weight),
                    tol,
                )
                .map_err(|e| match e {
                    Error::NoBracket(_) => self.domain.clip_message(t, "phi interpolant"),
                    other => other,
                })?;
                Ok(root.recip())
            }
        }
    }

    pub fn eval_inverse(&self, y: T) -> Result<T> {
        match &self.kind {
            InterpolantKind::Power { coeff, exponent } => {
                if !(y >= T::zero()) {
                    return Err(Error::Domain(format!("power inverse needs y >= 0, got {y}")));
                }
                Ok((y / *coeff).powf(exponent.recip()))
            }
            InterpolantKind::RecipLog { a } => {
                if !(y > T::zero()) || y > *a * (T::one() + T::tol_floor()) {
                    return Err(Error::Domain(format!(
                        "recip_log inverse defined on (0, {a}], got {y}"
                    )));
                }
                Ok((*a - T::c(2.0) * *a / y).exp())
            }
            InterpolantKind::PsiFromWeight { weight } => weight.eval(y),
            InterpolantKind::PhiFromWeight { weight, p } => {
                if !(y > T::zero()) {
                    return Err(Error::Domain(format!("phi inverse needs y > 0, got {y}")));
                }
                // Φ(s) = 1/φ⁻¹(s) gives Φ⁻¹(y) = φ(1/y) exactly
                phi_value(weight, *p, y.recip())
            }
        }
    }
}

/// Build Φ(s) = 1/φ⁻¹(s), φ(t) = ω₁(t)/tᵖ, from a decreasing weight.
///
/// The weight hypotheses and the concavity/monotonicity of the resulting Φ
/// are verified on a 512-point grid before the interpolant is returned.
pub fn build_phi<T: Real>(w1: &Weight<T>, p: T) -> Result<Interpolant<T>> {
    if !(p >= T::one()) {
        return Err(Error::Unsupported(format!(
            "phi construction requires p >= 1, got {p}"
        )));
    }
    if !w1.is_decreasing() {
        return Err(Error::InvalidWeight("phi construction needs a decreasing weight".into()));
    }
    let grid = phi_grid(w1, 512);
    if let Weight::Profile(prof) = w1 {
        prof.validate_on(&grid)?;
    }

    // φ samples, truncated where an exponential tail underflows to zero
    let mut ts: Vec<T> = Vec::with_capacity(grid.len());
    let mut phis: Vec<T> = Vec::with_capacity(grid.len());
    for &t in &grid {
        match phi_value(w1, p, t) {
            Ok(v) => {
                ts.push(t);
                phis.push(v);
            }
            Err(Error::Domain(_)) if !ts.is_empty() => break,
            Err(e) => return Err(e),
        }
    }
    if ts.len() < 8 {
        return Err(Error::InvalidWeight("weight leaves too few evaluable phi samples".into()));
    }
    for i in 1..phis.len() {
        if !(phis[i] < phis[i - 1]) {
            return Err(Error::InvalidWeight(format!(
                "phi is not strictly decreasing near t = {}",
                ts[i]
            )));
        }
    }
    // Φ seen through its graph: s_i = φ(t_i) ascending, values 1/t_i
    let ss: Vec<T> = phis.iter().rev().copied().collect();
    let ys: Vec<T> = ts.iter().rev().map(|t| t.recip()).collect();
    verify_concave_increasing(&ss, &ys, "phi interpolant")?;

    let domain_lo = match w1.domain_right() {
        Some(r) => phi_value(w1, p, r)?,
        None => T::zero(),
    };
    let m = w1.domain_left();
    let domain_hi = if m > T::zero() {
        Some(phi_value(w1, p, m)?)
    } else {
        None
    };
    let closed = matches!(
        w1,
        Weight::Profile(WeightProfile { family: WeightFamily::PowerDecay { .. }, .. })
    );
    Ok(Interpolant {
        kind: InterpolantKind::PhiFromWeight { weight: w1.clone(), p },
        domain: Domain { lo: domain_lo, hi: domain_hi },
        inverse_method: if closed {
            InverseMethod::ClosedForm
        } else {
            InverseMethod::Bisection { tolerance: 1e-12 }
        },
    })
}

/// Build Ψ = ω₂⁻¹ from an increasing weight.
pub fn build_psi<T: Real>(w2: &WeightProfile<T>) -> Result<Interpolant<T>> {
    if w2.direction != Direction::IncreasingToInfinity {
        return Err(Error::InvalidWeight("psi construction needs an increasing weight".into()));
    }
    let grid = match &w2.family {
        WeightFamily::PiecewiseLinear { breakpoints } => {
            let (a, b) = (breakpoints[0].0, breakpoints.last().unwrap().0);
            (0..512)
                .map(|i| a + (b - a) * T::from_usize(i).unwrap() / T::c(511.0))
                .collect::<Vec<_>>()
        }
        _ => WeightProfile::log_grid(w2.domain_left.max(T::c(1e-3)), T::c(1e3), 512),
    };
    w2.validate_on(&grid)?;
    // Ψ through its graph: s_i = ω₂(t_i) ascending, values t_i
    let ss: Vec<T> = grid.iter().map(|&t| w2.eval(t)).collect::<Result<_>>()?;
    verify_concave_increasing(&ss, &grid, "psi interpolant")?;

    let lo = w2.eval(w2.domain_left)?;
    let hi = match w2.domain_right() {
        Some(r) => Some(w2.eval(r)?),
        None => None,
    };
    Ok(Interpolant {
        kind: InterpolantKind::PsiFromWeight { weight: w2.clone() },
        domain: Domain { lo, hi },
        inverse_method: InverseMethod::ClosedForm,
    })
}

/// Invert a strictly monotone scalar function by bisection.
///
/// The initial bracket is expanded (step doubling, at most 60 expansions per
/// side) until it straddles `target`. A `Domain` error from `f` during
/// expansion is treated as a boundary: the step is halved and the search
/// approaches the evaluable edge. Returns `t` with
/// |f(t) − target| ≤ tol·|target| (the scaling must be relative: targets far
/// below 1 would otherwise accept any point in the function's tail); an
/// interval narrower than a few ulps is accepted as converged for functions
/// too steep to meet the residual. Samples inconsistent with a monotone
/// function raise `InvalidFunction`.
pub fn invert_monotone<T: Real>(
    f: impl Fn(T) -> Result<T>,
    target: T,
    bracket: (T, T),
    tol: f64,
) -> Result<T> {
    let tol = T::effective_tol(tol);
    let resid_scale = if target == T::zero() { T::one() } else { target.abs() };
    let ok = |v: T| (v - target).abs() <= tol * resid_scale;

    let (lo0, hi0) = bracket;
    if !(hi0 > lo0) || !lo0.is_finite() || !hi0.is_finite() {
        return Err(Error::InvalidInput(format!("invalid bracket ({lo0}, {hi0})")));
    }
    let first_evaluable = |from: T, toward: T| -> Result<(T, T)> {
        let mut x = from;
        for _ in 0..60 {
            match f(x) {
                Ok(v) => return Ok((x, v)),
                Err(Error::Domain(_)) => x = (x + toward) * T::c(0.5),
                Err(e) => return Err(e),
            }
        }
        Err(Error::NoBracket("no evaluable point in bracket".into()))
    };
    let (mut a, mut fa) = first_evaluable(lo0, hi0)?;
    let (mut b, mut fb) = first_evaluable(hi0, lo0)?;
    if ok(fa) {
        return Ok(a);
    }
    if ok(fb) {
        return Ok(b);
    }
    if a >= b {
        return Err(Error::NoBracket("bracket collapsed to a point".into()));
    }
    let increasing = fb > fa;
    let mono_slack = |x: T, y: T| (x.abs().max(y.abs()).max(T::one())) * T::c(1e-9);

    // Expand right if target lies beyond f(b).
    let mut step = b - a;
    for i in 0..=60 {
        let needs = if increasing { target > fb } else { target < fb };
        if !needs {
            break;
        }
        if i == 60 {
            return Err(Error::NoBracket(format!("target {target} beyond expandable range")));
        }
        match f(b + step) {
            Ok(v) => {
                let regressed = if increasing { v < fb - mono_slack(v, fb) } else { v > fb + mono_slack(v, fb) };
                if regressed {
                    return Err(Error::InvalidFunction("non-monotone samples during expansion".into()));
                }
                a = b;
                fa = fb;
                b = b + step;
                fb = v;
                if ok(fb) {
                    return Ok(b);
                }
                step = step + step;
            }
            Err(Error::Domain(_)) => {
                step = step * T::c(0.5);
                if step <= b.ulp() * T::c(4.0) {
                    return Err(Error::NoBracket(format!(
                        "target {target} out of range at the domain boundary"
                    )));
                }
            }
            Err(e) => return Err(e),
        }
    }
    // Expand left if target lies beyond f(a).
    let mut step = b - a;
    for i in 0..=60 {
        let needs = if increasing { target < fa } else { target > fa };
        if !needs {
            break;
        }
        if i == 60 {
            return Err(Error::NoBracket(format!("target {target} beyond expandable range")));
        }
        match f(a - step) {
            Ok(v) => {
                let regressed = if increasing { v > fa + mono_slack(v, fa) } else { v < fa - mono_slack(v, fa) };
                if regressed {
                    return Err(Error::InvalidFunction("non-monotone samples during expansion".into()));
                }
                b = a;
                fb = fa;
                a = a - step;
                fa = v;
                if ok(fa) {
                    return Ok(a);
                }
                step = step + step;
            }
            Err(Error::Domain(_)) => {
                step = step * T::c(0.5);
                if step <= a.abs().max(T::one()).ulp() * T::c(4.0) {
                    return Err(Error::NoBracket(format!(
                        "target {target} out of range at the domain boundary"
                    )));
                }
            }
            Err(e) => return Err(e),
        }
    }

    for _ in 0..200 {
        let mid = (a + b) * T::c(0.5);
        if mid <= a || mid >= b {
            return Ok(mid.max(a).min(b));
        }
        let fm = f(mid)?;
        let lo_f = fa.min(fb);
        let hi_f = fa.max(fb);
        if fm < lo_f - mono_slack(lo_f, fm) || fm > hi_f + mono_slack(hi_f, fm) {
            return Err(Error::InvalidFunction(format!(
                "non-monotone sample at t = {mid}"
            )));
        }
        if ok(fm) {
            return Ok(mid);
        }
        let go_left = if increasing { fm > target } else { fm < target };
        if go_left {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
        if b - a <= mid.abs().ulp() * T::c(2.0) {
            return Ok(mid);
        }
    }
    Err(Error::Internal("bisection failed to converge in 200 iterations".into()))
}

/// A concave pair with its rate function H(t) = 1/Ψ⁻¹(1/Φ(t)).
///
/// `delta` is the right end of H's interval of definition: the point where
/// 1/Φ(t) leaves Ψ⁻¹'s domain, capped by Φ's own domain end (`None` when
/// unbounded). `h_closed_form` holds (C, e) with H(t) = C·t^e when both
/// interpolants are powers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterpolationPair<T> {
    pub phi: Interpolant<T>,
    pub psi: Interpolant<T>,
    pub p_exponent: T,
    pub h_closed_form: Option<(T, T)>,
    pub delta: Option<T>,
}

fn compute_delta<T: Real>(phi: &Interpolant<T>, psi: &Interpolant<T>) -> Option<T> {
    let mut delta = phi.domain.hi;
    // H needs 1/Φ(t) inside Ψ⁻¹'s domain; the constraint binds only when
    // Ψ at its left end is positive.
    let lo = psi.domain.lo.max(T::zero());
    if let Ok(u) = psi.eval(lo) {
        if u > T::zero() {
            if let Ok(d2) = phi.eval_inverse(u.recip()) {
                delta = Some(match delta {
                    Some(d) => d.min(d2),
                    None => d2,
                });
            }
        }
    }
    delta
}

fn power_params<T: Real>(interp: &Interpolant<T>) -> Option<(T, T)> {
    match interp.kind {
        InterpolantKind::Power { coeff, exponent } => Some((coeff, exponent)),
        _ => None,
    }
}

impl<T: Real> InterpolationPair<T> {
    fn assemble(phi: Interpolant<T>, psi: Interpolant<T>, p_exponent: T) -> Self {
        let h_closed_form = match (power_params(&phi), power_params(&psi)) {
            // H(t) = 1/Ψ⁻¹(1/Φ(t)) = (C₁C₂)^{1/e₂} t^{e₁/e₂}
            (Some((c1, e1)), Some((c2, e2))) => Some(((c1 * c2).powf(e2.recip()), e1 / e2)),
            _ => None,
        };
        let delta = compute_delta(&phi, &psi);
        InterpolationPair { phi, psi, p_exponent, h_closed_form, delta }
    }

    /// φ-route pair: Φ from ω₁ via φ(t) = ω₁(t)/tᵖ, Ψ = ω₂⁻¹. The pointwise
    /// bound Φ(ω₁(n))·Ψ(ω₂(n)) ≥ 1 is verified on integers n ∈ [1, 64]
    /// (clipped to the weights' domains) before returning.
    pub fn from_weights(w1: &Weight<T>, w2: &WeightProfile<T>, p: T) -> Result<Self> {
        let phi = build_phi(w1, p)?;
        let psi = build_psi(w2)?;
        let pair = Self::assemble(phi, psi, p);
        let mut checked = 0usize;
        for n in 1..=64u32 {
            let t = T::from_u32(n).unwrap();
            let product = match (w1.eval(t), w2.eval(t)) {
                (Ok(v1), Ok(v2)) => match (pair.phi.eval(v1), pair.psi.eval(v2)) {
                    (Ok(a), Ok(b)) => a * b,
                    _ => continue,
                },
                _ => continue,
            };
            checked += 1;
            if product < T::one() - T::c(1e-9) {
                return Err(Error::Internal(format!(
                    "pointwise bound fails at n = {n}: product = {product}"
                )));
            }
        }
        if checked == 0 {
            return Err(Error::InvalidWeight("weights leave no integer point to verify".into()));
        }
        Ok(pair)
    }

    /// Power pair Φ = c₁t^{e₁}, Ψ = c₂t^{e₂}.
    pub fn power(c1: T, e1: T, c2: T, e2: T) -> Result<Self> {
        let phi = Interpolant::power(c1, e1)?;
        let psi = Interpolant::power(c2, e2)?;
        Ok(Self::assemble(phi, psi, T::one()))
    }

    /// Optimal pair Φ = 1/(ω₁⁻¹)^{1/p}, Ψ = (ω₂⁻¹)^{1/p}, for weight
    /// families where the construction reduces to closed-form kinds:
    /// power-decay ω₁ and power-growth ω₂ (shift 0, or any shift when
    /// p = 1). By construction H(t) = 1/ω₂(ω₁⁻¹(t)).
    pub fn optimal_from_weights(
        w1: &WeightProfile<T>,
        w2: &WeightProfile<T>,
        p: T,
    ) -> Result<Self> {
        if !(p >= T::one()) {
            return Err(Error::Unsupported(format!(
                "optimal pair construction requires p >= 1, got {p}"
            )));
        }
        let phi = match w1.family {
            WeightFamily::PowerDecay { scale, exponent } => {
                // (ω₁⁻¹(s))^{−1/p} = (s/c)^{1/(rp)}
                let e = (exponent * p).recip();
                if e > T::one() {
                    return Err(Error::InvalidWeight(format!(
                        "1/(ω₁⁻¹)^(1/p) is convex for r·p = {} < 1; concavity hypothesis fails",
                        exponent * p
                    )));
                }
                Interpolant::power(scale.powf(-e), e)?
            }
            _ => {
                return Err(Error::Unsupported(
                    "optimal pair construction implemented for power-decay ω₁ only".into(),
                ))
            }
        };
        let psi = match w2.family {
            WeightFamily::PowerGrowth { shift, exponent } if shift == T::zero() => {
                Interpolant::power(T::one(), (exponent * p).recip())?
            }
            WeightFamily::PowerGrowth { .. } if p == T::one() => build_psi(w2)?,
            _ => {
                return Err(Error::Unsupported(
                    "optimal pair construction needs power-growth ω₂ (shift 0, or p = 1)".into(),
                ))
            }
        };
        Ok(Self::assemble(phi, psi, p))
    }

    /// Assemble a pair from prebuilt interpolants, re-verifying that each is
    /// increasing and discretely concave on a sample of its domain.
    pub fn from_parts(phi: Interpolant<T>, psi: Interpolant<T>, p_exponent: T) -> Result<Self> {
        for (interp, what) in [(&phi, "phi"), (&psi, "psi")] {
            let lo = interp.domain.lo;
            let hi = interp.domain.hi;
            let (glo, ghi) = match (lo > T::zero(), hi) {
                (true, Some(h)) => (lo, h),
                (true, None) => (lo, lo * T::c(1e6)),
                (false, Some(h)) => (h * T::c(1e-9), h),
                (false, None) => (T::c(1e-6), T::c(1e3)),
            };
            let grid = WeightProfile::log_grid(glo, ghi, 64);
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for &x in &grid {
                match interp.eval(x) {
                    Ok(y) => {
                        xs.push(x);
                        ys.push(y);
                    }
                    Err(Error::Domain(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            if xs.len() < 8 {
                return Err(Error::InvalidFunction(format!(
                    "{what} leaves too few evaluable samples on its domain"
                )));
            }
            verify_concave_increasing(&xs, &ys, what)?;
        }
        Ok(Self::assemble(phi, psi, p_exponent))
    }

    /// H(t) = 1/Ψ⁻¹(1/Φ(t)) on (0, δ).
    pub fn h(&self, t: T) -> Result<T> {
        if !(t > T::zero()) {
            return Err(Error::Domain(format!("H needs t > 0, got {t}")));
        }
        if let Some(d) = self.delta {
            if t >= d {
                return Err(Error::Domain(format!("H defined on (0, {d}), got {t}")));
            }
        }
        if let Some((c, e)) = self.h_closed_form {
            return Ok(c * t.powf(e));
        }
        let u = self.phi.eval(t)?;
        if !(u > T::zero()) {
            return Err(Error::Domain(format!("Φ({t}) is not positive")));
        }
        let v = self.psi.eval_inverse(u.recip())?;
        if !(v > T::zero()) {
            return Err(Error::Domain(format!("Ψ⁻¹(1/Φ({t})) is not positive")));
        }
        Ok(v.recip())
    }

    /// H⁻¹(t) = Φ⁻¹(1/Ψ(1/t)); closed-form for every kind built here.
    pub fn h_inv(&self, t: T) -> Result<T> {
        if !(t > T::zero()) {
            return Err(Error::Domain(format!("H⁻¹ needs t > 0, got {t}")));
        }
        if let Some((c, e)) = self.h_closed_form {
            return Ok((t / c).powf(e.recip()));
        }
        let s = self.psi.eval(t.recip())?;
        if !(s > T::zero()) {
            return Err(Error::Domain(format!("Ψ(1/{t}) is not positive")));
        }
        self.phi.eval_inverse(s.recip())
    }

    /// H of the powered pair (Φ^q, Ψ^q), evaluated the way that pair would
    /// be: (Ψ^q)⁻¹(y) = Ψ⁻¹(y^{1/q}). Mathematically equal to `h` for every
    /// q > 0; the difference is floating-point only.
    pub fn h_powered(&self, t: T, q: T) -> Result<T> {
        if !(q > T::zero()) {
            return Err(Error::InvalidInput(format!("power must be positive, got {q}")));
        }
        if !(t > T::zero()) {
            return Err(Error::Domain(format!("H needs t > 0, got {t}")));
        }
        if let Some(d) = self.delta {
            if t >= d {
                return Err(Error::Domain(format!("H defined on (0, {d}), got {t}")));
            }
        }
        let u = self.phi.eval(t)?.powf(q);
        let v = self.psi.eval_inverse(u.recip().powf(q.recip()))?;
        if !(v > T::zero()) {
            return Err(Error::Domain(format!("powered Ψ⁻¹ not positive at t = {t}")));
        }
        Ok(v.recip())
    }
}

/// Max over `grid` of |H_{Φ,Ψ}(t) − H_{Φ^q,Ψ^q}(t)| / (1 + |H(t)|).
pub fn power_invariance_check<T: Real>(
    pair: &InterpolationPair<T>,
    q: T,
    grid: &[T],
) -> Result<T> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("power invariance needs a nonempty grid".into()));
    }
    let mut worst = T::zero();
    for &t in grid {
        let base = pair.h(t)?;
        let powered = pair.h_powered(t, q)?;
        let dev = (base - powered).abs() / (T::one() + base.abs());
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// Inverse Jensen residual φ(Σ mᵢvᵢ) − Σ mᵢφ(vᵢ); nonnegative (within
/// roundoff) for concave φ and a probability vector m.
pub fn jensen_upper_check<T: Real>(
    phi: impl Fn(T) -> Result<T>,
    masses: &[T],
    values: &[T],
) -> Result<T> {
    if masses.len() != values.len() || masses.is_empty() {
        return Err(Error::InvalidInput("masses and values must have equal nonzero length".into()));
    }
    if masses.iter().any(|&m| !(m >= T::zero())) {
        return Err(Error::InvalidInput("masses must be nonnegative".into()));
    }
    let total: T = masses.iter().fold(T::zero(), |acc, &m| acc + m);
    if (total - T::one()).abs() > T::c(1e-12) {
        return Err(Error::InvalidInput(format!(
            "masses must sum to 1 within 1e-12, got {total}"
        )));
    }
    let mean = masses
        .iter()
        .zip(values)
        .fold(T::zero(), |acc, (&m, &v)| acc + m * v);
    let lhs = phi(mean)?;
    let mut rhs = T::zero();
    for (&m, &v) in masses.iter().zip(values) {
        rhs = rhs + m * phi(v)?;
    }
    Ok(lhs - rhs)
}

/// Generalized Hölder residual Φ(A₁)·Ψ(A₂) − 1 with
/// Aⱼ = Σ|fᵢ|ᵖ wⱼᵢ μᵢ / Σ|fᵢ|ᵖ μᵢ. Nonnegative (within roundoff) when the
/// pair's hypotheses hold on the sample support.
pub fn holder_check<T: Real>(
    f: &[T],
    mu: &[T],
    w1_vals: &[T],
    w2_vals: &[T],
    p: T,
    pair: &InterpolationPair<T>,
) -> Result<T> {
    let n = f.len();
    if n == 0 || mu.len() != n || w1_vals.len() != n || w2_vals.len() != n {
        return Err(Error::InvalidInput("holder check needs equal-length nonempty inputs".into()));
    }
    if !(p > T::zero()) {
        return Err(Error::InvalidInput(format!("p must be positive, got {p}")));
    }
    if mu.iter().any(|&m| !(m > T::zero())) {
        return Err(Error::InvalidInput("measure masses must be positive".into()));
    }
    let mut norm = T::zero();
    let mut a1 = T::zero();
    let mut a2 = T::zero();
    for i in 0..n {
        let fp = f[i].abs().powf(p) * mu[i];
        norm = norm + fp;
        a1 = a1 + fp * w1_vals[i];
        a2 = a2 + fp * w2_vals[i];
    }
    if !(norm > T::zero()) {
        return Err(Error::InvalidInput("f must not be identically zero".into()));
    }
    let phi_val = pair.phi.eval(a1 / norm)?;
    let psi_val = pair.psi.eval(a2 / norm)?;
    Ok(phi_val * psi_val - T::one())
}

/// Which admissibility conditions a quadruplet satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    /// Φ(ω₁(n))·Ψ(ω₂(n)) ≥ 1 − 1e−9 on evaluable integers n ∈ [1, 64].
    pub pointwise_bound_ok: bool,
    /// t ↦ H⁻¹(t)/t nondecreasing on the supplied grid and H reaches 1.
    pub condition_a: bool,
    /// Both interpolants are power kind.
    pub condition_b: bool,
    pub admissible: bool,
}

/// Check the pair against the admissibility conditions. `grid` must lie in
/// (0, 1) and is used for the monotonicity samples of condition (a).
/// A failed condition is reported, not raised.
pub fn check_admissible<T: Real>(
    w1: &Weight<T>,
    w2: &WeightProfile<T>,
    pair: &InterpolationPair<T>,
    grid: &[T],
) -> Result<AdmissibilityReport> {
    if grid.iter().any(|&t| !(t > T::zero()) || t >= T::one()) {
        return Err(Error::InvalidInput("admissibility grid must lie in (0, 1)".into()));
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut pointwise_ok = true;
    let mut checked = 0usize;
    for n in 1..=64u32 {
        let t = T::from_u32(n).unwrap();
        let product = match (w1.eval(t), w2.eval(t)) {
            (Ok(v1), Ok(v2)) => match (pair.phi.eval(v1), pair.psi.eval(v2)) {
                (Ok(a), Ok(b)) => a * b,
                _ => continue,
            },
            _ => continue,
        };
        checked += 1;
        if product < T::one() - T::c(1e-9) {
            pointwise_ok = false;
        }
    }
    if checked == 0 {
        pointwise_ok = false;
    }

    let mut ratios: Vec<T> = Vec::new();
    for &t in &sorted {
        match pair.h_inv(t) {
            Ok(v) => ratios.push(v / t),
            Err(Error::Domain(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut condition_a = ratios.len() >= 3;
    for w in ratios.windows(2) {
        let slack = T::c(1e-10) * (T::one() + w[0].abs());
        if w[1] < w[0] - slack {
            condition_a = false;
            break;
        }
    }
    if condition_a {
        // H((0,δ)) must cover (0,1): equivalent to H reaching 1 before δ
        condition_a = match pair.h_inv(T::one()) {
            Ok(t1) => pair.delta.map_or(true, |d| t1 <= d),
            Err(_) => false,
        };
    }

    let condition_b =
        power_params(&pair.phi).is_some() && power_params(&pair.psi).is_some();
    Ok(AdmissibilityReport {
        pointwise_bound_ok: pointwise_ok,
        condition_a,
        condition_b,
        admissible: pointwise_ok && (condition_a || condition_b),
    })
}

/// Optimality measurement: C(t) = H(t)·ω₂(ω₁⁻¹(t)) over a grid in (0, δ).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OptimalityReport<T> {
    pub c_min: T,
    pub c_sup: T,
    /// sup of C over the small-t (finer) half of the grid.
    pub c_sup_small_t: T,
    /// sup of C over the large-t (coarser) half of the grid.
    pub c_sup_large_t: T,
    pub valid_samples: usize,
    pub optimal: bool,
}

/// Measure C(t) = H(t)·ω₂(ω₁⁻¹(t)) on `eps_grid` (ascending, inside (0, δ)).
/// The lower bound C ≥ 1 must hold; a violation beyond 1e−9 is an internal
/// error. The pair is reported optimal when the supremum shows no growth
/// toward 0⁺: sup over the small-t half ≤ 1.05 × sup over the large-t half.
pub fn check_optimality<T: Real>(
    pair: &InterpolationPair<T>,
    w1: &Weight<T>,
    w2: &WeightProfile<T>,
    eps_grid: &[T],
) -> Result<OptimalityReport<T>> {
    let mut sorted = eps_grid.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted.is_empty() || !(sorted[0] > T::zero()) {
        return Err(Error::InvalidInput("optimality grid must be positive".into()));
    }
    let mut small: Vec<T> = Vec::new();
    let mut large: Vec<T> = Vec::new();
    let half = sorted.len() / 2;
    for (i, &t) in sorted.iter().enumerate() {
        let h = match pair.h(t) {
            Ok(v) => v,
            Err(Error::Domain(_)) => continue,
            Err(e) => return Err(e),
        };
        let u = match w1.eval_inverse(t) {
            Ok(v) => v,
            Err(Error::Domain(_)) => continue,
            Err(e) => return Err(e),
        };
        let c = h * w2.eval(u)?;
        if c < T::one() - T::c(1e-9) {
            return Err(Error::Internal(format!(
                "optimality lower bound violated: C({t}) = {c} < 1"
            )));
        }
        if i < half {
            small.push(c);
        } else {
            large.push(c);
        }
    }
    if small.len() < 4 || large.len() < 4 {
        return Err(Error::InvalidInput(
            "optimality grid leaves too few valid samples in a half".into(),
        ));
    }
    let sup = |v: &[T]| v.iter().fold(T::zero(), |a, &b| a.max(b));
    let min = |v: &[T]| v.iter().fold(T::infinity(), |a, &b| a.min(b));
    let c_sup_small_t = sup(&small);
    let c_sup_large_t = sup(&large);
    Ok(OptimalityReport {
        c_min: min(&small).min(min(&large)),
        c_sup: c_sup_small_t.max(c_sup_large_t),
        c_sup_small_t,
        c_sup_large_t,
        valid_samples: small.len() + large.len(),
        optimal: c_sup_small_t <= T::c(1.05) * c_sup_large_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::lower_convex_envelope;

    fn wgt(p: WeightProfile<f64>) -> Weight<f64> {
        Weight::Profile(p)
    }

    #[test]
    fn phi_closed_form_for_power_decay() {
        let phi = build_phi(&wgt(WeightProfile::power_decay(1.0, 2.0).unwrap()), 1.0).unwrap();
        // φ(t) = t⁻³, Φ(s) = s^{1/3}
        assert!((phi.eval(0.001).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(phi.inverse_method, InverseMethod::ClosedForm);
    }

    #[test]
    fn phi_round_trip_through_its_defining_quotient() {
        let w = wgt(WeightProfile::exp_decay(1.0).unwrap());
        let phi = build_phi(&w, 2.0).unwrap();
        for &t0 in &[0.5, 1.0, 2.0, 5.0] {
            let s = phi_value(&w, 2.0, t0).unwrap();
            let got = phi.eval(s).unwrap();
            assert!((got - 1.0 / t0).abs() < 1e-9 * (1.0 + 1.0 / t0), "t0 = {t0}");
        }
    }

    #[test]
    fn phi_rejects_bad_inputs() {
        let w = wgt(WeightProfile::exp_decay(1.0).unwrap());
        assert!(matches!(build_phi(&w, 0.5), Err(Error::Unsupported(_))));
        let inc = wgt(WeightProfile::power_growth(0.0, 2.0).unwrap());
        assert!(matches!(build_phi(&inc, 2.0), Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn psi_closed_forms() {
        let psi: Interpolant<f64> =
            build_psi(&WeightProfile::power_growth(0.0, 2.0).unwrap()).unwrap();
        assert!((psi.eval(4.0).unwrap() - 2.0).abs() < 1e-15);
        let shifted = build_psi(&WeightProfile::power_growth(0.5, 2.0).unwrap()).unwrap();
        let w2: WeightProfile<f64> = WeightProfile::power_growth(0.5, 2.0).unwrap();
        assert!((shifted.eval(w2.eval(3.0).unwrap()).unwrap() - 3.0).abs() < 1e-12);
        let pw: Interpolant<f64> = build_psi(
            &WeightProfile::piecewise_linear(
                vec![(1.0, 1.0), (2.0, 4.0), (3.0, 9.0)],
                Direction::IncreasingToInfinity,
            )
            .unwrap(),
        )
        .unwrap();
        assert!((pw.eval(4.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(
            build_psi(&WeightProfile::exp_decay(1.0).unwrap()),
            Err(Error::InvalidWeight(_))
        ));
    }

    #[test]
    fn invert_monotone_examples() {
        let cube = invert_monotone(|t: f64| Ok(t * t * t), 8.0, (0.0, 10.0), 1e-12).unwrap();
        assert!((cube - 2.0).abs() < 1e-9);

        let f = |t: f64| {
            if t <= 0.0 {
                return Err(Error::Domain("t must be positive".into()));
            }
            Ok((-t).exp() / (t * t))
        };
        let y = f(2.0).unwrap();
        let got = invert_monotone(f, y, (0.5, 1.0), 1e-12).unwrap();
        assert!((got - 2.0).abs() < 1e-8);

        let env = lower_convex_envelope(&[(1, 0.5), (2, 0.9), (3, 0.2), (4, 0.7), (5, 0.1)])
            .unwrap();
        let w: Weight<f64> = Weight::Envelope(env);
        let target = phi_value(&w, 2.0, 2.5).unwrap();
        let got = invert_monotone(|t| phi_value(&w, 2.0, t), target, (1.0, 4.0), 1e-12).unwrap();
        assert!((got - 2.5).abs() < 1e-8);
    }

    #[test]
    fn invert_monotone_failure_modes() {
        // bounded function, unreachable target
        let r = invert_monotone(|t: f64| Ok(t.atan()), 2.0, (0.0, 1.0), 1e-12);
        assert!(matches!(r, Err(Error::NoBracket(_))));
        // a clearly non-monotone sample set
        let r2 = invert_monotone(
            |t: f64| Ok(t.sin()),
            -0.5,
            (0.0, 4.71238898038469),
            1e-12,
        );
        assert!(matches!(r2, Err(Error::InvalidFunction(_))));
    }

    #[test]
    fn power_pair_closed_form_h() {
        // Φ = 2t^{1/2}, Ψ = t^{1/2}: H(t) = 4t
        let pair: InterpolationPair<f64> = InterpolationPair::power(2.0, 0.5, 1.0, 0.5).unwrap();
        assert!((pair.h(0.25).unwrap() - 1.0).abs() < 1e-14);
        assert!((pair.h_inv(1.0).unwrap() - 0.25).abs() < 1e-14);
        // Φ = 2t^{1/2}, Ψ = 3t^{1/3}: H(t) = (C₁C₂)^{1/e₂} t^{e₁/e₂} = 216 t^{3/2}
        let pair2: InterpolationPair<f64> =
            InterpolationPair::power(2.0, 0.5, 3.0, 1.0 / 3.0).unwrap();
        assert!((pair2.h(4.0).unwrap() - 1728.0).abs() < 1e-9);
        // the closed form must agree with the generic route
        let (c, e) = pair2.h_closed_form.unwrap();
        let generic = 1.0 / pair2.psi.eval_inverse(1.0 / pair2.phi.eval(4.0).unwrap()).unwrap();
        assert!((c * 4.0f64.powf(e) - generic).abs() < 1e-9 * generic);
    }

    #[test]
    fn phi_route_h_matches_hand_formula() {
        // ω₁ = e^{−t}, ω₂ = t², p = 2: H⁻¹(y) = φ(y^{−1/2}) = y·e^{−1/√y}
        let pair = InterpolationPair::from_weights(
            &wgt(WeightProfile::exp_decay(1.0).unwrap()),
            &WeightProfile::power_growth(0.0, 2.0).unwrap(),
            2.0,
        )
        .unwrap();
        let y: f64 = 0.25;
        let expect = y * (-1.0 / y.sqrt()).exp();
        assert!((pair.h_inv(y).unwrap() - expect).abs() < 1e-15);
        let back = pair.h(pair.h_inv(y).unwrap()).unwrap();
        assert!((back - y).abs() < 1e-9 * (1.0 + y));
    }

    #[test]
    fn envelope_pair_h_at_the_window_end() {
        let env = lower_convex_envelope(&[(1, 0.5), (2, 0.9), (3, 0.2), (4, 0.7), (5, 0.1)])
            .unwrap();
        let pair = InterpolationPair::from_weights(
            &Weight::Envelope(env),
            &WeightProfile::power_growth(0.0, 2.0).unwrap(),
            2.0,
        )
        .unwrap();
        // φ(5) = 0.1/25; H there is 1/ω₂(5) = 1/25
        let t: f64 = 0.1 / 25.0;
        assert!((pair.h(t).unwrap() - 1.0 / 25.0).abs() < 1e-10);
    }

    #[test]
    fn delta_caps_the_h_domain() {
        // ω₂ restricted to [2, ∞): Ψ(ω₂(2)) = 2 > 0 forces δ = Φ⁻¹(1/2)
        let w2 = WeightProfile::power_growth(0.0, 2.0)
            .unwrap()
            .with_domain_left(2.0)
            .unwrap();
        let pair = InterpolationPair::from_weights(
            &wgt(WeightProfile::power_decay(1.0, 2.0).unwrap()),
            &w2,
            1.0,
        )
        .unwrap();
        // Φ(s) = s^{1/3} so Φ⁻¹(1/2) = 1/8
        let d = pair.delta.unwrap();
        assert!((d - 0.125).abs() < 1e-12);
        assert!(pair.h(0.1).is_ok());
        assert!(matches!(pair.h(0.2), Err(Error::Domain(_))));
    }

    #[test]
    fn optimal_pair_reaches_the_lower_bound() {
        let w1: WeightProfile<f64> = WeightProfile::power_decay(4.0, 2.0).unwrap(); // c² with c = 2
        let w2 = WeightProfile::power_growth(0.0, 2.0).unwrap();
        let pair = InterpolationPair::optimal_from_weights(&w1, &w2, 2.0).unwrap();
        // H(t) = 1/ω₂(ω₁⁻¹(t)) = t/4
        assert!((pair.h(0.3).unwrap() - 0.075).abs() < 1e-14);
        let grid: Vec<f64> = WeightProfile::log_grid(1e-8, 0.5, 64);
        let report = check_optimality(&pair, &wgt(w1.clone()), &w2, &grid).unwrap();
        assert!(report.optimal, "{report:?}");
        assert!((report.c_sup - 1.0).abs() < 1e-8);
        assert!((report.c_min - 1.0).abs() < 1e-8);

        // the φ-route pair from the same weights is not optimal
        let sub = InterpolationPair::from_weights(&wgt(w1.clone()), &w2, 2.0).unwrap();
        let report2 = check_optimality(&sub, &wgt(w1), &w2, &grid).unwrap();
        assert!(!report2.optimal, "{report2:?}");
        assert!(report2.c_sup_small_t > report2.c_sup_large_t);
    }

    #[test]
    fn optimal_pair_rejects_convex_construction() {
        // r·p = 0.5 < 1 makes 1/(ω₁⁻¹)^{1/p} convex
        let w1 = WeightProfile::power_decay(1.0, 0.5).unwrap();
        let w2 = WeightProfile::power_growth(0.0, 2.0).unwrap();
        assert!(matches!(
            InterpolationPair::optimal_from_weights(&w1, &w2, 1.0),
            Err(Error::InvalidWeight(_))
        ));
    }

    #[test]
    fn jensen_examples() {
        let sqrt = |t: f64| {
            if t < 0.0 {
                Err(Error::Domain("sqrt needs t >= 0".into()))
            } else {
                Ok(t.sqrt())
            }
        };
        let r0 = jensen_upper_check(sqrt, &[0.5, 0.5], &[4.0, 4.0]).unwrap();
        assert_eq!(r0, 0.0);
        let r1 = jensen_upper_check(sqrt, &[0.5, 0.5], &[1.0, 9.0]).unwrap();
        assert!((r1 - (5.0f64.sqrt() - 2.0)).abs() < 1e-14);
        let linear = |t: f64| Ok(3.0 * t + 1.0);
        let r2 = jensen_upper_check(linear, &[0.25, 0.75], &[2.0, 10.0]).unwrap();
        assert!(r2.abs() < 1e-12);
        assert!(matches!(
            jensen_upper_check(sqrt, &[0.5, 0.4], &[1.0, 2.0]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn holder_equality_case() {
        // single atom at t = 1 with ω₁ = e^{−t}: averages (e^{−1}, 1);
        // Φ = 2a/(a − ln t) with a = 1 gives Φ(e^{−1}) = 1, Ψ(1) = 1
        let pair = InterpolationPair::from_parts(
            Interpolant::recip_log(1.0).unwrap(),
            Interpolant::power(1.0, 0.5).unwrap(),
            1.0,
        )
        .unwrap();
        let resid = holder_check(
            &[1.0],
            &[1.0],
            &[(-1.0f64).exp()],
            &[1.0],
            2.0,
            &pair,
        )
        .unwrap();
        assert!(resid.abs() < 1e-12, "residual {resid}");
    }

    #[test]
    fn holder_identity_weights() {
        // ω₁ = ω₂ = 1 with Φ = Ψ = t¹ gives product exactly 1
        let pair = InterpolationPair::power(1.0, 1.0, 1.0, 1.0).unwrap();
        let f = [0.3, 1.7, 0.2];
        let mu = [1.0, 2.0, 0.5];
        let ones = [1.0, 1.0, 1.0];
        let resid: f64 = holder_check(&f, &mu, &ones, &ones, 2.0, &pair).unwrap();
        assert!(resid.abs() < 1e-12);
    }

    #[test]
    fn holder_classical_case() {
        // ω₁ = t^α, ω₂ = t^{−β} with Φ = t^{β/(α+β)}, Ψ = t^{α/(α+β)}
        let (alpha, beta): (f64, f64) = (1.0, 2.0);
        let pair = InterpolationPair::power(
            1.0,
            beta / (alpha + beta),
            1.0,
            alpha / (alpha + beta),
        )
        .unwrap();
        let f = [0.5, 1.2, 2.0, 0.1];
        let mu = [1.0, 1.0, 2.0, 0.3];
        let ts: [f64; 4] = [0.7, 1.3, 2.9, 4.2];
        let w1: Vec<f64> = ts.iter().map(|t| t.powf(alpha)).collect();
        let w2: Vec<f64> = ts.iter().map(|t| t.powf(-beta)).collect();
        let resid = holder_check(&f, &mu, &w1, &w2, 1.0, &pair).unwrap();
        assert!(resid >= -1e-12, "residual {resid}");
    }

    #[test]
    fn holder_rejects_zero_f() {
        let pair = InterpolationPair::power(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            holder_check(&[0.0, 0.0], &[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0], 2.0, &pair),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn admissibility_routes() {
        let grid: Vec<f64> = WeightProfile::log_grid(1e-6, 0.999, 64);
        // shifted Prop-style pair: condition (a)
        let w1 = wgt(WeightProfile::exp_decay(1.0).unwrap());
        let w2 = WeightProfile::power_growth(0.5, 2.0).unwrap();
        let pair = InterpolationPair::from_weights(&w1, &w2, 2.0).unwrap();
        let rep = check_admissible(&w1, &w2, &pair, &grid).unwrap();
        assert!(rep.pointwise_bound_ok && rep.condition_a && rep.admissible, "{rep:?}");
        assert!(!rep.condition_b);

        // power pair: condition (b)
        let w1p = WeightProfile::power_decay(1.0, 2.0).unwrap();
        let w2p = WeightProfile::power_growth(0.0, 2.0).unwrap();
        let popt = InterpolationPair::optimal_from_weights(&w1p, &w2p, 2.0).unwrap();
        let rep2 = check_admissible(&wgt(w1p), &w2p, &popt, &grid).unwrap();
        assert!(rep2.condition_b && rep2.admissible, "{rep2:?}");
    }

    #[test]
    fn power_invariance_is_tight() {
        let pair = InterpolationPair::power(2.0, 0.5, 1.0, 0.5).unwrap();
        let grid: Vec<f64> = WeightProfile::log_grid(1e-4, 1.0, 32);
        for q in [0.5, 2.0, 3.0] {
            let dev = power_invariance_check(&pair, q, &grid).unwrap();
            assert!(dev <= 1e-12, "q = {q}: deviation {dev}");
        }
        let envp = InterpolationPair::from_weights(
            &wgt(WeightProfile::exp_decay(0.5).unwrap()),
            &WeightProfile::power_growth(0.0, 2.0).unwrap(),
            2.0,
        )
        .unwrap();
        let grid2: Vec<f64> = WeightProfile::log_grid(1e-3, 0.3, 16);
        let dev = power_invariance_check(&envp, 3.0, &grid2).unwrap();
        assert!(dev <= 1e-10, "deviation {dev}");
    }

    #[test]
    fn h_vanishes_at_zero_and_increases() {
        let pair = InterpolationPair::from_weights(
            &wgt(WeightProfile::exp_decay(1.0).unwrap()),
            &WeightProfile::power_growth(0.0, 2.0).unwrap(),
            2.0,
        )
        .unwrap();
        let mut prev = 0.0;
        for &t in &[1e-10, 1e-6, 1e-3, 0.05, 0.2] {
            let h = pair.h(t).unwrap();
            assert!(h > prev, "H not increasing at t = {t}");
            prev = h;
        }
        // H vanishes only logarithmically here: y·e^{−1/√y} = 1e-10 at y ≈ 3.4e-3
        assert!(pair.h(1e-10).unwrap() < 1e-2);
    }

    #[test]
    fn pair_serializes() {
        let pair = InterpolationPair::<f64>::power(2.0, 0.5, 1.0, 0.5).unwrap();
        let js = serde_json::to_string(&pair).unwrap();
        let back: InterpolationPair<f64> = serde_json::from_str(&js).unwrap();
        assert!((back.h(0.25).unwrap() - 1.0).abs() < 1e-14);
        assert!(js.contains("\"kind\":\"power\""));
    }

    #[test]
    fn recip_log_round_trip() {
        let phi: Interpolant<f64> = Interpolant::recip_log(1.5).unwrap();
        for &t in &[1e-6f64, 1e-3, 0.1, 0.3] {
            let y = phi.eval(t).unwrap();
            let back = phi.eval_inverse(y).unwrap();
            assert!((back - t).abs() < 1e-12 * (1.0 + t), "t = {t}");
        }
        assert!(phi.eval((1.5f64 - 2.0).exp() * 1.001).is_err());
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn decreasing_weight() -> impl Strategy<Value = WeightProfile<f64>> {
        prop_oneof![
            (0.2f64..3.0).prop_map(|r| WeightProfile::exp_decay(r).unwrap()),
            ((0.2f64..5.0), (0.5f64..3.0))
                .prop_map(|(c, r)| WeightProfile::power_decay(c, r).unwrap()),
        ]
    }

    fn increasing_weight() -> impl Strategy<Value = WeightProfile<f64>> {
        ((0.0f64..=1.0), (1.0f64..3.0))
            .prop_map(|(a, g)| WeightProfile::power_growth(a, g).unwrap())
    }

    fn p_exponent() -> impl Strategy<Value = f64> {
        prop_oneof![Just(1.0), Just(2.0), Just(4.0), (1.0f64..4.0)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn holder_residual_is_nonnegative(
            w1 in decreasing_weight(),
            w2 in increasing_weight(),
            p in p_exponent(),
            atoms in prop::collection::vec(
                ((1.001f64..50.0), (0.01f64..1.0), (0.05f64..10.0)),
                1..12,
            ),
        ) {
            let pair = InterpolationPair::from_weights(&Weight::Profile(w1.clone()), &w2, p)
                .unwrap();
            let ts: Vec<f64> = atoms.iter().map(|a| a.0).collect();
            let mu: Vec<f64> = atoms.iter().map(|a| a.1).collect();
            let f: Vec<f64> = atoms.iter().map(|a| a.2).collect();
            let w1v: Vec<f64> = ts.iter().map(|&t| w1.eval(t).unwrap()).collect();
            let w2v: Vec<f64> = ts.iter().map(|&t| w2.eval(t).unwrap()).collect();
            let resid = holder_check(&f, &mu, &w1v, &w2v, p, &pair).unwrap();
            prop_assert!(resid >= -1e-9, "residual {resid}");
        }

        #[test]
        fn jensen_residual_is_nonnegative_for_concave_power(
            exponent in 0.05f64..1.0,
            pairs in prop::collection::vec(((0.01f64..1.0), (0.01f64..20.0)), 2..10),
        ) {
            let total: f64 = pairs.iter().map(|p| p.0).sum();
            let masses: Vec<f64> = pairs.iter().map(|p| p.0 / total).collect();
            let values: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let phi = |t: f64| Ok(t.powf(exponent));
            let resid = jensen_upper_check(phi, &masses, &values).unwrap();
            prop_assert!(resid >= -1e-12, "residual {resid}");
        }

        #[test]
        fn interpolant_round_trips(
            w1 in decreasing_weight(),
            w2 in increasing_weight(),
            p in p_exponent(),
            t in 0.2f64..10.0,
        ) {
            let w = Weight::Profile(w1);
            let phi = build_phi(&w, p).unwrap();
            let s = phi_value(&w, p, t).unwrap();
            let y = phi.eval(s).unwrap();
            let back = phi.eval_inverse(y).unwrap();
            prop_assert!((back - s).abs() <= 1e-10 * (1.0 + s.abs()),
                "phi round trip: s = {s}, back = {back}");

            let psi = build_psi(&w2).unwrap();
            let s2 = w2.eval(t).unwrap();
            let y2 = psi.eval(s2).unwrap();
            let back2 = psi.eval_inverse(y2).unwrap();
            prop_assert!((back2 - s2).abs() <= 1e-10 * (1.0 + s2.abs()));
        }

        #[test]
        fn h_round_trips_and_lower_bound(
            w1 in decreasing_weight(),
            w2 in increasing_weight(),
            p in p_exponent(),
            t in 1.5f64..40.0,
        ) {
            let pair = InterpolationPair::from_weights(&Weight::Profile(w1.clone()), &w2, p)
                .unwrap();
            // pick an argument guaranteed inside H's domain: s = φ(t)
            let s = phi_value(&Weight::Profile(w1.clone()), p, t).unwrap();
            let h = pair.h(s).unwrap();
            let back = pair.h_inv(h).unwrap();
            prop_assert!((back - s).abs() <= 1e-9 * (1.0 + s.abs()),
                "h round trip: s = {s}, back = {back}");
            // Lemma lower bound H(s) ≥ 1/ω₂(ω₁⁻¹(s))
            let bound = 1.0 / w2.eval(w1.eval_inverse(s).unwrap()).unwrap();
            prop_assert!(h >= bound * (1.0 - 1e-9), "H = {h} < bound {bound}");
        }

        #[test]
        fn phi_dominates_inverse_weight(
            w1 in decreasing_weight(),
            p in p_exponent(),
            t in 1.0f64..30.0,
        ) {
            // Φ(ω₁(t))·t ≥ 1 on t ≥ 1
            let w = Weight::Profile(w1.clone());
            let phi = build_phi(&w, p).unwrap();
            let s = w1.eval(t).unwrap();
            let v = phi.eval(s).unwrap();
            prop_assert!(v * t >= 1.0 - 1e-9, "Φ(ω₁({t}))·{t} = {}", v * t);
        }

        #[test]
        fn invert_monotone_recovers_roots(
            b in 0.0f64..5.0,
            c in -10.0f64..10.0,
            root in -5.0f64..5.0,
        ) {
            let f = move |t: f64| Ok(t * t * t + b * t + c);
            let y = f(root).unwrap();
            let got = invert_monotone(f, y, (-1.0, 1.0), 1e-12).unwrap();
            // strictly increasing cubic: the preimage is unique
            let fy = f(got).unwrap();
            prop_assert!((fy - y).abs() <= 1e-10 * (1.0 + y.abs()));
        }
    }
}
