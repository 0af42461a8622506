//! Uniform-grid curves with the quadrature, extremum and root-finding
//! machinery everything else is built on.
//!
//! Curves are piecewise linear between uniformly spaced samples. Integration
//! against an integrator function is a Riemann–Stieltjes sum over increments,
//! which picks up jump mass of steep (step-like) integrators without any
//! special-casing of their derivative.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::real::Real;
use crate::tolerances;

/// Default number of samples per frame: a power of two plus one, so halving
/// studies land on shared abscissae.
pub const DEFAULT_GRID_SIZE: usize = 4097;

/// Minimum admissible grid size.
pub const MIN_GRID_SIZE: usize = 33;

const MAX_BISECT_ITERS: usize = 200;

/// The frame of discernment: a closed interval `[lo, hi]` of states, plus
/// the sampling resolution used by every curve defined over it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame<R: Real> {
    lo: R,
    hi: R,
    grid_size: usize,
}

impl<R: Real> Frame<R> {
    /// Frame with the default grid size.
    pub fn new(lo: R, hi: R) -> Result<Self> {
        Self::with_grid(lo, hi, DEFAULT_GRID_SIZE)
    }

    pub fn with_grid(lo: R, hi: R, grid_size: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "frame bounds must be finite, got [{lo}, {hi}]"
            )));
        }
        if lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "frame must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        if grid_size < MIN_GRID_SIZE {
            return Err(Error::InvalidArgument(format!(
                "grid size {grid_size} below minimum {MIN_GRID_SIZE}"
            )));
        }
        Ok(Self { lo, hi, grid_size })
    }

    pub fn lo(&self) -> R {
        self.lo
    }

    pub fn hi(&self) -> R {
        self.hi
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn width(&self) -> R {
        self.hi - self.lo
    }

    pub fn step(&self) -> R {
        self.width() / R::of_usize(self.grid_size - 1)
    }

    /// Abscissa of sample `i`; the endpoints are reproduced exactly.
    pub fn x_at(&self, i: usize) -> R {
        debug_assert!(i < self.grid_size);
        if i == 0 {
            self.lo
        } else if i == self.grid_size - 1 {
            self.hi
        } else {
            self.lo + self.step() * R::of_usize(i)
        }
    }

    pub fn contains(&self, x: R) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn as_interval(&self) -> Interval<R> {
        Interval::new(self.lo, self.hi).expect("frame is a valid interval")
    }

    pub(crate) fn domain_error(&self, x: R) -> Error {
        Error::OutOfDomain {
            x: x.to_f64().unwrap_or(f64::NAN),
            lo: self.lo.to_f64().unwrap_or(f64::NAN),
            hi: self.hi.to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Function samples at the uniform abscissae of a frame, interpreted as a
/// piecewise-linear interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve<R: Real> {
    frame: Frame<R>,
    values: Vec<R>,
}

impl<R: Real> SampledCurve<R> {
    pub fn new(frame: Frame<R>, values: Vec<R>) -> Result<Self> {
        if values.len() != frame.grid_size() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples for the frame, got {}",
                frame.grid_size(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "curve samples must be finite, got {bad}"
            )));
        }
        Ok(Self { frame, values })
    }

    pub fn from_fn(frame: Frame<R>, f: impl Fn(R) -> R) -> Result<Self> {
        let values = (0..frame.grid_size()).map(|i| f(frame.x_at(i))).collect();
        Self::new(frame, values)
    }

    pub fn frame(&self) -> &Frame<R> {
        &self.frame
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Linear interpolation between the bracketing samples; exact at sample
    /// abscissae.
    pub fn eval(&self, x: R) -> Result<R> {
        if !self.frame.contains(x) {
            return Err(self.frame.domain_error(x));
        }
        Ok(self.eval_raw(x))
    }

    /// Interpolation without the domain check; `x` is clamped to the frame.
    pub(crate) fn eval_raw(&self, x: R) -> R {
        let frame = &self.frame;
        let m = self.values.len();
        if x <= frame.lo() {
            return self.values[0];
        }
        if x >= frame.hi() {
            return self.values[m - 1];
        }
        let u = (x - frame.lo()) / frame.step();
        let mut i = match u.floor().to_usize() {
            Some(i) => i.min(m - 2),
            None => 0,
        };
        // Floating floor may land one cell off; fix up against exact abscissae.
        while i > 0 && x < frame.x_at(i) {
            i -= 1;
        }
        while i + 2 < m && x > frame.x_at(i + 1) {
            i += 1;
        }
        let (xl, xr) = (frame.x_at(i), frame.x_at(i + 1));
        if x == xl {
            return self.values[i];
        }
        if x == xr {
            return self.values[i + 1];
        }
        let t = (x - xl) / (xr - xl);
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }

    /// First maximal sample (ties broken toward the smallest abscissa).
    pub fn max_sample(&self) -> (usize, R) {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate().skip(1) {
            if *v > self.values[best] {
                best = i;
            }
        }
        (best, self.values[best])
    }
}

/// Riemann–Stieltjes integral of `integrand` against `integrator` over
/// `[a, b]`: the sum of midpoint values times integrator increments over the
/// grid restricted to `[a, b]`. Exact for constant integrands, and step
/// discontinuities of the integrator contribute their jump mass exactly.
pub fn integrate_stieltjes<R: Real>(
    integrand: &SampledCurve<R>,
    integrator: &SampledCurve<R>,
    a: R,
    b: R,
) -> Result<R> {
    if integrand.frame() != integrator.frame() {
        return Err(Error::InvalidArgument(
            "integrand and integrator must share frame and grid size".into(),
        ));
    }
    let frame = integrand.frame();
    if !frame.contains(a) {
        return Err(frame.domain_error(a));
    }
    if !frame.contains(b) {
        return Err(frame.domain_error(b));
    }
    if a > b {
        return Err(Error::InvalidArgument(format!(
            "integration bounds out of order: [{a}, {b}]"
        )));
    }
    let cuts = grid_breakpoints(frame, a, b);
    Ok(stieltjes_over(
        |x| integrand.eval_raw(x),
        |x| integrator.eval_raw(x),
        &cuts,
    ))
}

/// Grid abscissae strictly inside `(a, b)`, bracketed by `a` and `b`.
pub(crate) fn grid_breakpoints<R: Real>(frame: &Frame<R>, a: R, b: R) -> Vec<R> {
    let mut cuts = Vec::with_capacity(frame.grid_size() + 2);
    cuts.push(a);
    if b > a {
        let step = frame.step();
        let start = ((a - frame.lo()) / step)
            .ceil()
            .to_usize()
            .unwrap_or(0)
            .min(frame.grid_size() - 1);
        let mut i = start.saturating_sub(1);
        while i < frame.grid_size() {
            let x = frame.x_at(i);
            if x >= b {
                break;
            }
            if x > a {
                cuts.push(x);
            }
            i += 1;
        }
        cuts.push(b);
    }
    cuts
}

/// Midpoint Stieltjes sum of `f` against `g` over consecutive breakpoints.
pub(crate) fn stieltjes_over<R: Real>(
    f: impl Fn(R) -> R,
    g: impl Fn(R) -> R,
    cuts: &[R],
) -> R {
    let half = R::of(0.5);
    let mut sum = R::zero();
    let mut comp = R::zero();
    for w in cuts.windows(2) {
        let (s, t) = (w[0], w[1]);
        if t <= s {
            continue;
        }
        let mid = (s + t) * half;
        let term = f(mid) * (g(t) - g(s));
        // Neumaier compensation keeps the sum deterministic to ~1 ulp.
        let fresh = sum + term;
        comp = comp
            + if sum.abs() >= term.abs() {
                (sum - fresh) + term
            } else {
                (term - fresh) + sum
            };
        sum = fresh;
    }
    sum + comp
}

/// Location and value of the curve's maximum: a grid scan for the maximal
/// sample followed by golden-section refinement on the bracketing cells.
/// Ties are broken toward the smallest abscissa.
pub fn argmax<R: Real>(curve: &SampledCurve<R>) -> (R, R) {
    let (k, vk) = curve.max_sample();
    let frame = curve.frame();
    let lo = frame.x_at(k.saturating_sub(1));
    let hi = frame.x_at((k + 1).min(frame.grid_size() - 1));
    let (gx, gv) = golden_section_max(|x| curve.eval_raw(x), lo, hi);
    // Refinement only wins when it strictly beats the sample, so exact ties
    // keep the deterministic grid answer.
    if gv > vk {
        (gx, gv)
    } else {
        (frame.x_at(k), vk)
    }
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Returns `(x_max, f_max)` among the probed points and the bracket ends.
pub fn golden_section_max<R: Real>(f: impl Fn(R) -> R, mut a: R, mut b: R) -> (R, R) {
    const INV_PHI2: f64 = 0.381_966_011_250_105_1; // 2 - phi
    if b < a {
        std::mem::swap(&mut a, &mut b);
    }
    let resp = R::of(INV_PHI2);
    let scale = R::one().max(a.abs()).max(b.abs());
    let tol = R::epsilon() * scale * R::of(4.0);

    let mut x1 = a + resp * (b - a);
    let mut x2 = b - resp * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let (fa, fb) = (f(a), f(b));
    let mut iters = 0usize;
    while (b - a) > tol && iters < 160 {
        if f1 > f2 || (f1 == f2 && x1 < x2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + resp * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - resp * (b - a);
            f2 = f(x2);
        }
        iters += 1;
    }
    let mut best = (a, fa);
    for cand in [(x1, f1), (x2, f2), (b, fb)] {
        if cand.1 > best.1 || (cand.1 == best.1 && cand.0 < best.0) {
            best = cand;
        }
    }
    best
}

/// All abscissae where the interpolated curve crosses `level`, i.e. the
/// boundary of the strict superlevel region `{x : f(x) > level}`. Each
/// crossing is refined by bisection until `|f(x) - level| <= 1e-9`; results
/// are sorted ascending. Plateau edges show up as two crossings (entry and
/// exit). Levels above the maximum produce an empty list.
pub fn level_crossings<R: Real>(curve: &SampledCurve<R>, level: R) -> Vec<R> {
    let frame = curve.frame();
    let vals = curve.values();
    let mut out = Vec::new();
    for i in 0..vals.len() - 1 {
        let above_l = vals[i] > level;
        let above_r = vals[i + 1] > level;
        if above_l == above_r {
            continue;
        }
        let x = bisect_to_level(
            |x| curve.eval_raw(x),
            frame.x_at(i),
            frame.x_at(i + 1),
            level,
            above_l,
        );
        out.push(x);
    }
    out
}

/// Bisection inside `[a, b]` for the boundary of `{f > level}`, where the
/// predicate differs at the two ends; converges until the curve value is
/// within [`tolerances::LEVEL_REFINE`] of the level.
fn bisect_to_level<R: Real>(
    f: impl Fn(R) -> R,
    mut a: R,
    mut b: R,
    level: R,
    above_at_a: bool,
) -> R {
    let tol = R::of(tolerances::LEVEL_REFINE);
    let half = R::of(0.5);
    let mut mid = (a + b) * half;
    for _ in 0..MAX_BISECT_ITERS {
        mid = (a + b) * half;
        let v = f(mid);
        if (v - level).abs() <= tol {
            return mid;
        }
        if (v > level) == above_at_a {
            a = mid;
        } else {
            b = mid;
        }
        if b - a <= R::epsilon() * (a.abs() + b.abs() + R::one()) {
            break;
        }
    }
    mid
}

/// Bisection on a monotone segment for `f(x) = target`.
///
/// `increasing` states the direction of `f` on `[a, b]`; the target must be
/// bracketed by `f(a)` and `f(b)`. Converges until the value is within
/// [`tolerances::LEVEL_REFINE`] of the target (continuous `f`), falling back
/// to the midpoint once the bracket has collapsed.
pub(crate) fn bisect_monotone<R: Real>(
    f: impl Fn(R) -> R,
    mut a: R,
    mut b: R,
    target: R,
    increasing: bool,
) -> R {
    let tol = R::of(tolerances::LEVEL_REFINE);
    let half = R::of(0.5);
    let mut mid = (a + b) * half;
    for _ in 0..MAX_BISECT_ITERS {
        mid = (a + b) * half;
        let v = f(mid);
        if (v - target).abs() <= tol {
            return mid;
        }
        let go_right = if increasing { v < target } else { v > target };
        if go_right {
            a = mid;
        } else {
            b = mid;
        }
        if b - a <= R::epsilon() * (a.abs() + b.abs() + R::one()) {
            break;
        }
    }
    mid
}
