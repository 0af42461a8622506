//! Possibility functions: normalized evidence curves over a frame.
//!
//! A possibility function takes values in [0, 1] with maximum 1. It is
//! derived from a likelihood curve by dividing through by the maximum, or
//! built directly from one of the analytic families. The analytic families
//! keep their closed form alongside the sample grid, so peak and support
//! queries are exact even when the peak falls between grid abscissae.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::numerics::{bisect_monotone, Frame, SampledCurve};
use crate::real::Real;
use crate::tolerances;

/// Structural class of a possibility function, detected on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Nondecreasing up to the mode, nonincreasing after it.
    Unimodal,
    /// Exactly the two values `{1, c}` with a single plateau of ones.
    SimpleSupport,
    /// Anything else (products of conflicting evidence, vacuous curves, ...).
    General,
}

/// Closed-form backbone of a possibility function, when one exists.
#[derive(Debug, Clone, PartialEq)]
enum Profile<R: Real> {
    Triangular { peak: R, half_width: R },
    CosineTaper { peak: R, half_width: R },
    Step { plateau: Interval<R>, residual: R },
    Sampled,
}

/// A nonnegative likelihood curve θ ↦ p(f|θ) for an already-made
/// observation; the raw material possibility functions are derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodCurve<R: Real> {
    curve: SampledCurve<R>,
}

impl<R: Real> LikelihoodCurve<R> {
    pub fn new(curve: SampledCurve<R>) -> Result<Self> {
        if let Some(bad) = curve.values().iter().find(|v| **v < R::zero()) {
            return Err(Error::InvalidArgument(format!(
                "likelihood values must be nonnegative, got {bad}"
            )));
        }
        if curve.values().iter().all(|v| *v == R::zero()) {
            return Err(Error::DegenerateEvidence);
        }
        Ok(Self { curve })
    }

    pub fn from_fn(frame: Frame<R>, f: impl Fn(R) -> R) -> Result<Self> {
        Self::new(SampledCurve::from_fn(frame, f)?)
    }

    /// Piecewise-linear likelihood through `(x, value)` knots, zero outside
    /// the knot range. Knot abscissae must be strictly increasing.
    pub fn from_points(frame: Frame<R>, points: &[(R, R)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(
                "piecewise-linear likelihood needs at least two points".into(),
            ));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidArgument(
                    "piecewise-linear abscissae must be strictly increasing".into(),
                ));
            }
        }
        for (x, _) in points {
            if !frame.contains(*x) {
                return Err(frame.domain_error(*x));
            }
        }
        let eval = |x: R| -> R {
            if x < points[0].0 || x > points[points.len() - 1].0 {
                return R::zero();
            }
            let mut seg = 0;
            while seg + 2 < points.len() && points[seg + 1].0 < x {
                seg += 1;
            }
            let (x0, y0) = points[seg];
            let (x1, y1) = points[seg + 1];
            if x <= x0 {
                return y0;
            }
            if x >= x1 {
                return y1;
            }
            y0 + (x - x0) / (x1 - x0) * (y1 - y0)
        };
        Self::from_fn(frame, eval)
    }

    pub fn curve(&self) -> &SampledCurve<R> {
        &self.curve
    }

    pub fn frame(&self) -> &Frame<R> {
        self.curve.frame()
    }
}

/// A normalized possibility function: values in [0, 1], maximum 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PossFn<R: Real> {
    curve: SampledCurve<R>,
    profile: Profile<R>,
    shape: Shape,
    mode_x: R,
    support: Interval<R>,
}

impl<R: Real> PossFn<R> {
    /// Normalize a likelihood curve: pointwise division by its maximum,
    /// then clamping of values below [`tolerances::SUPPORT_CLAMP`] to zero
    /// so the support is a genuine zero set. The shape is classified from
    /// the resulting grid, not from any declared family.
    pub fn from_likelihood(lik: &LikelihoodCurve<R>) -> Result<Self> {
        let (_, max) = lik.curve.max_sample();
        if max <= R::zero() {
            return Err(Error::DegenerateEvidence);
        }
        let clamp = R::of(tolerances::SUPPORT_CLAMP);
        let values = lik
            .curve
            .values()
            .iter()
            .map(|v| {
                let p = *v / max;
                if p < clamp {
                    R::zero()
                } else {
                    p
                }
            })
            .collect();
        let curve = SampledCurve::new(*lik.curve.frame(), values)?;
        Self::from_samples(curve)
    }

    /// Wrap already-normalized samples (maximum must be 1 within
    /// [`tolerances::NORMALIZATION`]); the shape is classified on the grid.
    pub fn from_samples(curve: SampledCurve<R>) -> Result<Self> {
        if let Some(bad) = curve
            .values()
            .iter()
            .find(|v| **v < R::zero() || **v > R::one())
        {
            return Err(Error::InvalidArgument(format!(
                "possibility values must lie in [0, 1], got {bad}"
            )));
        }
        let (max_idx, max) = curve.max_sample();
        if (max - R::one()).abs() > R::of(tolerances::NORMALIZATION) {
            return Err(Error::InvalidArgument(format!(
                "possibility maximum must be 1, got {max}"
            )));
        }
        let shape = classify(&curve, max_idx);
        let mode_x = curve.frame().x_at(max_idx);
        let support = sampled_support(&curve);
        Ok(Self {
            curve,
            profile: Profile::Sampled,
            shape,
            mode_x,
            support,
        })
    }

    /// `poss(x) = max(0, 1 - |x - peak| / half_width)`.
    pub fn triangular(frame: Frame<R>, peak: R, half_width: R) -> Result<Self> {
        check_bump(&frame, peak, half_width)?;
        let profile = Profile::Triangular { peak, half_width };
        Self::from_profile(frame, profile, peak, peak - half_width, peak + half_width)
    }

    /// `poss(x) = (1 + cos(pi (x - peak) / half_width)) / 2` on the support,
    /// zero outside.
    pub fn cosine_taper(frame: Frame<R>, peak: R, half_width: R) -> Result<Self> {
        check_bump(&frame, peak, half_width)?;
        let profile = Profile::CosineTaper { peak, half_width };
        Self::from_profile(frame, profile, peak, peak - half_width, peak + half_width)
    }

    /// 1 on `interval`, `residual` elsewhere: the contour of a simple
    /// support function with masses `1 - residual` on the interval and
    /// `residual` on the whole frame.
    pub fn simple_support(frame: Frame<R>, interval: Interval<R>, residual: R) -> Result<Self> {
        if !interval.is_subset_of(&frame.as_interval()) {
            return Err(Error::InvalidArgument(format!(
                "support interval [{}, {}] exceeds the frame",
                interval.lo(),
                interval.hi()
            )));
        }
        if residual < R::zero() || residual >= R::one() {
            return Err(Error::InvalidArgument(format!(
                "residual must lie in [0, 1), got {residual}"
            )));
        }
        let profile = Profile::Step {
            plateau: interval,
            residual,
        };
        let support = if residual > R::zero() {
            frame.as_interval()
        } else {
            interval
        };
        let curve = SampledCurve::from_fn(frame, |x| profile_eval(&profile, x))?;
        Ok(Self {
            curve,
            profile,
            shape: Shape::SimpleSupport,
            mode_x: interval.lo(),
            support,
        })
    }

    fn from_profile(
        frame: Frame<R>,
        profile: Profile<R>,
        mode_x: R,
        sup_lo: R,
        sup_hi: R,
    ) -> Result<Self> {
        let curve = SampledCurve::from_fn(frame, |x| profile_eval(&profile, x))?;
        Ok(Self {
            curve,
            profile,
            shape: Shape::Unimodal,
            mode_x,
            support: Interval::new(sup_lo, sup_hi)?,
        })
    }

    pub fn frame(&self) -> &Frame<R> {
        self.curve.frame()
    }

    pub fn curve(&self) -> &SampledCurve<R> {
        &self.curve
    }

    pub fn values(&self) -> &[R] {
        self.curve.values()
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn mode_x(&self) -> R {
        self.mode_x
    }

    /// Smallest interval outside which the function is zero. For shapes
    /// with a positive residual this is the whole frame.
    pub fn support(&self) -> Interval<R> {
        self.support
    }

    /// True when the function is identically 1 (carries no information;
    /// the identity of every combination rule).
    pub fn is_vacuous(&self) -> bool {
        self.curve.values().iter().all(|v| *v == R::one())
    }

    pub fn eval(&self, x: R) -> Result<R> {
        if !self.frame().contains(x) {
            return Err(self.frame().domain_error(x));
        }
        Ok(self.eval_raw(x))
    }

    /// Evaluation through the closed form when one exists, else through the
    /// grid interpolant. No domain check.
    pub(crate) fn eval_raw(&self, x: R) -> R {
        match &self.profile {
            Profile::Sampled => self.curve.eval_raw(x),
            p => profile_eval(p, x),
        }
    }

    /// The plateau interval and residual of a simple-support shape.
    pub fn simple_support_params(&self) -> Option<(Interval<R>, R)> {
        if let Profile::Step { plateau, residual } = &self.profile {
            return Some((*plateau, *residual));
        }
        if self.shape != Shape::SimpleSupport {
            return None;
        }
        let vals = self.curve.values();
        let first = vals.iter().position(|v| *v == R::one())?;
        let last = vals.iter().rposition(|v| *v == R::one())?;
        let residual = vals
            .iter()
            .copied()
            .fold(R::one(), |acc, v| if v < acc { v } else { acc });
        let frame = self.frame();
        Some((
            Interval::new(frame.x_at(first), frame.x_at(last)).ok()?,
            residual,
        ))
    }

    /// Maximum of the function over a closed subinterval of the frame.
    pub fn max_on(&self, query: &Interval<R>) -> R {
        match &self.profile {
            Profile::Step { plateau, residual } => {
                if plateau.intersects(query) {
                    R::one()
                } else {
                    *residual
                }
            }
            Profile::Triangular { peak, .. } | Profile::CosineTaper { peak, .. } => {
                if query.contains(*peak) {
                    R::one()
                } else {
                    self.eval_raw(query.lo()).max(self.eval_raw(query.hi()))
                }
            }
            Profile::Sampled => {
                let frame = self.frame();
                let mut best = self.eval_raw(query.lo()).max(self.eval_raw(query.hi()));
                let step = frame.step();
                let mut i = ((query.lo() - frame.lo()) / step)
                    .ceil()
                    .to_usize()
                    .unwrap_or(0)
                    .saturating_sub(1);
                while i < frame.grid_size() && frame.x_at(i) < query.lo() {
                    i += 1;
                }
                while i < frame.grid_size() && frame.x_at(i) <= query.hi() {
                    if self.curve.values()[i] > best {
                        best = self.curve.values()[i];
                    }
                    i += 1;
                }
                best
            }
        }
    }

    /// Supremum of the function over the frame strictly outside `query`.
    /// Step plateaus touching the query boundary do not leak in: the
    /// supremum is over the open complement.
    pub(crate) fn sup_outside(&self, query: &Interval<R>) -> R {
        let frame = self.frame();
        let left_nonempty = frame.lo() < query.lo();
        let right_nonempty = query.hi() < frame.hi();
        if let Profile::Step { plateau, residual } = &self.profile {
            let mut best = R::zero();
            if left_nonempty {
                best = best.max(if plateau.lo() < query.lo() {
                    R::one()
                } else {
                    *residual
                });
            }
            if right_nonempty {
                best = best.max(if plateau.hi() > query.hi() {
                    R::one()
                } else {
                    *residual
                });
            }
            return best;
        }
        // Continuous representations: the open supremum equals the closed max.
        let mut best = R::zero();
        if left_nonempty {
            let piece = Interval::new(frame.lo(), query.lo()).expect("ordered");
            best = best.max(self.max_on(&piece));
        }
        if right_nonempty {
            let piece = Interval::new(query.hi(), frame.hi()).expect("ordered");
            best = best.max(self.max_on(&piece));
        }
        best
    }

    /// The right-flank point with the same possibility as `l` on the left
    /// flank of a unimodal function: `poss(companion(l)) = poss(l)` within
    /// [`tolerances::LEVEL_REFINE`].
    pub fn companion(&self, l: R) -> Result<R> {
        if self.shape != Shape::Unimodal {
            return Err(Error::UnsupportedShape {
                shape: self.shape,
                context: "companion",
            });
        }
        if l > self.mode_x || l < self.support.lo() {
            return Err(Error::InvalidArgument(format!(
                "companion point {l} must lie in [{}, {}]",
                self.support.lo(),
                self.mode_x
            )));
        }
        let level = self.eval_raw(l);
        let tol = R::of(tolerances::LEVEL_REFINE);
        if (level - R::one()).abs() <= tol {
            return Ok(self.mode_x);
        }
        let hi = self.support.hi();
        let tail = self.eval_raw(hi);
        if (tail - level).abs() <= tol {
            return Ok(hi);
        }
        if tail > level {
            return Err(Error::InvalidArgument(format!(
                "level {level} is below the right-flank minimum {tail}; no companion point"
            )));
        }
        Ok(bisect_monotone(
            |x| self.eval_raw(x),
            self.mode_x,
            hi,
            level,
            false,
        ))
    }

    /// The α-cut `{x : poss(x) >= alpha}` as a closed interval.
    ///
    /// Unimodal shapes get their flank crossings (endpoints reproduce the
    /// level within [`tolerances::ALPHA_ENDPOINT`]); simple-support shapes
    /// get the plateau when `alpha > residual` and the whole frame
    /// otherwise. A general shape whose superlevel set is not a single
    /// interval is a consonance failure and errors.
    pub fn alpha_cut(&self, alpha: R) -> Result<Interval<R>> {
        if alpha.is_nan() || alpha <= R::zero() || alpha > R::one() {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in (0, 1], got {alpha}"
            )));
        }
        match self.shape {
            Shape::SimpleSupport => {
                let (plateau, residual) = self
                    .simple_support_params()
                    .expect("simple-support shape carries its parameters");
                if alpha > residual {
                    Ok(plateau)
                } else {
                    Ok(self.frame().as_interval())
                }
            }
            Shape::Unimodal => {
                let lo = self.flank_crossing(alpha, true);
                let hi = self.flank_crossing(alpha, false);
                Interval::new(lo.min(hi), hi.max(lo))
            }
            Shape::General => self.general_cut(alpha),
        }
    }

    /// Crossing of level `alpha` on one monotone flank of a unimodal shape.
    fn flank_crossing(&self, alpha: R, left: bool) -> R {
        if left {
            let a = self.support.lo();
            if self.eval_raw(a) >= alpha {
                return a;
            }
            bisect_monotone(|x| self.eval_raw(x), a, self.mode_x, alpha, true)
        } else {
            let b = self.support.hi();
            if self.eval_raw(b) >= alpha {
                return b;
            }
            bisect_monotone(|x| self.eval_raw(x), self.mode_x, b, alpha, false)
        }
    }

    fn general_cut(&self, alpha: R) -> Result<Interval<R>> {
        let frame = self.frame();
        let vals = self.curve.values();
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        let mut open: Option<usize> = None;
        for (i, v) in vals.iter().enumerate() {
            if *v >= alpha {
                if open.is_none() {
                    open = Some(i);
                }
            } else if let Some(s) = open.take() {
                blocks.push((s, i - 1));
            }
        }
        if let Some(s) = open {
            blocks.push((s, vals.len() - 1));
        }
        match blocks.len() {
            1 => {
                let (i0, i1) = blocks[0];
                let lo = if i0 == 0 {
                    frame.lo()
                } else {
                    bisect_monotone(
                        |x| self.curve.eval_raw(x),
                        frame.x_at(i0 - 1),
                        frame.x_at(i0),
                        alpha,
                        true,
                    )
                };
                let hi = if i1 == vals.len() - 1 {
                    frame.hi()
                } else {
                    bisect_monotone(
                        |x| self.curve.eval_raw(x),
                        frame.x_at(i1),
                        frame.x_at(i1 + 1),
                        alpha,
                        false,
                    )
                };
                Interval::new(lo.min(hi), hi.max(lo))
            }
            0 => Err(Error::NonConsonant {
                alpha: alpha.to_f64().unwrap_or(f64::NAN),
            }),
            _ => Err(Error::NonConsonant {
                alpha: alpha.to_f64().unwrap_or(f64::NAN),
            }),
        }
    }
}

fn check_bump<R: Real>(frame: &Frame<R>, peak: R, half_width: R) -> Result<()> {
    if half_width.is_nan() || half_width <= R::zero() || !peak.is_finite() || !half_width.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "need a finite peak and positive half-width, got peak {peak}, half-width {half_width}"
        )));
    }
    if peak - half_width < frame.lo() || peak + half_width > frame.hi() {
        return Err(Error::InvalidArgument(format!(
            "support [{}, {}] exceeds the frame [{}, {}]",
            peak - half_width,
            peak + half_width,
            frame.lo(),
            frame.hi()
        )));
    }
    Ok(())
}

fn profile_eval<R: Real>(profile: &Profile<R>, x: R) -> R {
    match profile {
        Profile::Triangular { peak, half_width } => {
            (R::one() - (x - *peak).abs() / *half_width).max(R::zero())
        }
        Profile::CosineTaper { peak, half_width } => {
            let d = (x - *peak).abs();
            if d >= *half_width {
                R::zero()
            } else {
                let pi = R::of(std::f64::consts::PI);
                (R::one() + (pi * (x - *peak) / *half_width).cos()) * R::of(0.5)
            }
        }
        Profile::Step { plateau, residual } => {
            if plateau.contains(x) {
                R::one()
            } else {
                *residual
            }
        }
        Profile::Sampled => unreachable!("sampled profiles evaluate through the grid"),
    }
}

/// Shape detection on the grid. The vacuous curve (identically 1) is
/// `General`: it has no peak and no two-value structure, and callers treat
/// it as the combination identity instead.
fn classify<R: Real>(curve: &SampledCurve<R>, max_idx: usize) -> Shape {
    let vals = curve.values();
    if vals.iter().all(|v| *v == R::one()) {
        return Shape::General;
    }
    if let Some(shape) = detect_simple_support(vals) {
        return shape;
    }
    let slack = R::of(tolerances::MONOTONE_SLACK);
    let rising = vals[..=max_idx]
        .windows(2)
        .all(|w| w[0] <= w[1] + slack);
    let falling = vals[max_idx..]
        .windows(2)
        .all(|w| w[0] >= w[1] - slack);
    if rising && falling {
        Shape::Unimodal
    } else {
        Shape::General
    }
}

fn detect_simple_support<R: Real>(vals: &[R]) -> Option<Shape> {
    let mut low: Option<R> = None;
    for v in vals {
        if *v == R::one() {
            continue;
        }
        match low {
            None => low = Some(*v),
            Some(c) if c == *v => {}
            Some(_) => return None,
        }
    }
    let _c = low?; // all-ones is vacuous, not simple support
    let first = vals.iter().position(|v| *v == R::one())?;
    let last = vals.iter().rposition(|v| *v == R::one())?;
    if vals[first..=last].iter().all(|v| *v == R::one()) {
        Some(Shape::SimpleSupport)
    } else {
        None
    }
}

fn sampled_support<R: Real>(curve: &SampledCurve<R>) -> Interval<R> {
    let frame = curve.frame();
    let vals = curve.values();
    let first = vals.iter().position(|v| *v > R::zero());
    let last = vals.iter().rposition(|v| *v > R::zero());
    match (first, last) {
        (Some(f), Some(l)) => {
            let lo = if f == 0 { frame.lo() } else { frame.x_at(f - 1) };
            let hi = if l == vals.len() - 1 {
                frame.hi()
            } else {
                frame.x_at(l + 1)
            };
            Interval::new(lo, hi).expect("ordered support")
        }
        _ => frame.as_interval(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame10() -> Frame<f64> {
        Frame::new(0.0, 10.0).unwrap()
    }

    #[test]
    fn triangular_trivial_values() {
        let p = PossFn::triangular(frame10(), 5.0, 5.0).unwrap();
        assert_eq!(p.eval(5.0).unwrap(), 1.0);
        assert_eq!(p.eval(0.0).unwrap(), 0.0);
        assert_eq!(p.eval(2.5).unwrap(), 0.5);
        assert_eq!(p.shape(), Shape::Unimodal);
        let q = PossFn::triangular(frame10(), 4.0, 4.0).unwrap();
        assert_eq!(q.eval(6.0).unwrap(), 0.5);
    }

    #[test]
    fn triangular_support_must_fit_frame() {
        assert!(matches!(
            PossFn::triangular(frame10(), 5.0, 6.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(PossFn::triangular(frame10(), 5.0, 5.0).is_ok());
    }

    #[test]
    fn cosine_taper_values() {
        let p = PossFn::cosine_taper(frame10(), 5.0, 4.0).unwrap();
        assert_eq!(p.eval(5.0).unwrap(), 1.0);
        assert_eq!(p.eval(1.0).unwrap(), 0.0);
        assert_eq!(p.eval(9.0).unwrap(), 0.0);
        assert!((p.eval(7.0).unwrap() - 0.5).abs() <= 1e-9);
    }

    #[test]
    fn simple_support_step_values() {
        let frame: Frame<f64> = Frame::new(40.0, 100.0).unwrap();
        let iv = Interval::new(55.0, 62.0).unwrap();
        let p = PossFn::simple_support(frame, iv, 0.3).unwrap();
        assert_eq!(p.shape(), Shape::SimpleSupport);
        assert_eq!(p.eval(58.0).unwrap(), 1.0);
        assert_eq!(p.eval(70.0).unwrap(), 0.3);
        assert_eq!(p.mode_x(), 55.0);

        let crisp = PossFn::simple_support(frame, iv, 0.0).unwrap();
        assert_eq!(crisp.eval(70.0).unwrap(), 0.0);
        assert_eq!(crisp.support(), iv);

        assert!(PossFn::simple_support(frame, iv, 1.0).is_err());
        assert!(PossFn::simple_support(frame, iv, -0.1).is_err());
        let outside = Interval::new(30.0, 62.0).unwrap();
        assert!(PossFn::simple_support(frame, outside, 0.3).is_err());
    }

    #[test]
    fn near_vacuous_simple_support_covers_frame() {
        let frame: Frame<f64> = Frame::new(40.0, 100.0).unwrap();
        let iv = frame.as_interval();
        let p = PossFn::simple_support(frame, iv, 0.999).unwrap();
        assert!(p.is_vacuous());
    }

    #[test]
    fn likelihood_normalization_is_scale_invariant() {
        let frame = frame10();
        let tri = |x: f64| (1.0 - (x - 5.0).abs() / 5.0).max(0.0);
        let a = PossFn::from_likelihood(&LikelihoodCurve::from_fn(frame, tri).unwrap()).unwrap();
        let b =
            PossFn::from_likelihood(&LikelihoodCurve::from_fn(frame, |x| 0.3 * tri(x)).unwrap())
                .unwrap();
        assert_eq!(a.mode_x(), 5.0);
        assert_eq!(b.mode_x(), 5.0);
        for (va, vb) in a.values().iter().zip(b.values()) {
            assert!((va - vb).abs() <= 1e-15, "{va} vs {vb}");
        }
    }

    #[test]
    fn constant_likelihood_is_vacuous_general() {
        let p =
            PossFn::from_likelihood(&LikelihoodCurve::from_fn(frame10(), |_| 0.4).unwrap())
                .unwrap();
        assert_eq!(p.shape(), Shape::General);
        assert!(p.is_vacuous());
        assert!(p.values().iter().all(|v| *v == 1.0));
    }

    #[test]
    fn truncated_gaussian_ratio() {
        let frame: Frame<f64> = Frame::new(40.0, 100.0).unwrap();
        let lik = LikelihoodCurve::from_fn(frame, |x: f64| {
            (-(x - 70.0).powi(2) / (2.0 * 25.0)).exp()
        })
        .unwrap();
        let p = PossFn::from_likelihood(&lik).unwrap();
        assert_eq!(p.shape(), Shape::Unimodal);
        assert_eq!(p.mode_x(), 70.0);
        assert_eq!(p.eval(70.0).unwrap(), 1.0);
        let expected = (-0.5f64).exp();
        assert!((p.eval(65.0).unwrap() - expected).abs() <= 1e-4);
        // Clamped tails give a genuine zero set at the support edges.
        assert_eq!(p.eval(40.0).unwrap(), 0.0);
        assert!(p.support().lo() > 40.0);
    }

    #[test]
    fn all_zero_likelihood_is_degenerate() {
        let curve = SampledCurve::from_fn(frame10(), |_| 0.0).unwrap();
        assert!(matches!(
            LikelihoodCurve::new(curve),
            Err(Error::DegenerateEvidence)
        ));
        let negative = SampledCurve::from_fn(frame10(), |x| x - 5.0).unwrap();
        assert!(matches!(
            LikelihoodCurve::new(negative),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn normalization_invariant_holds_for_all_constructors() {
        let frame = frame10();
        let ps = [
            PossFn::triangular(frame, 4.0, 4.0).unwrap(),
            PossFn::cosine_taper(frame, 6.0, 3.0).unwrap(),
            PossFn::simple_support(frame, Interval::new(2.0, 4.0).unwrap(), 0.5).unwrap(),
            PossFn::from_likelihood(
                &LikelihoodCurve::from_fn(frame, |x: f64| (-(x - 6.3).powi(2)).exp()).unwrap(),
            )
            .unwrap(),
        ];
        for p in &ps {
            let peak = p.eval(p.mode_x()).unwrap();
            assert!((peak - 1.0).abs() <= 1e-9);
            assert!(p.values().iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }

    #[test]
    fn companion_of_symmetric_triangular() {
        let p = PossFn::triangular(frame10(), 5.0, 5.0).unwrap();
        let u = p.companion(2.5).unwrap();
        assert!((u - 7.5).abs() <= 1e-6, "u = {u}");
        assert_eq!(p.companion(5.0).unwrap(), 5.0);
    }

    #[test]
    fn companion_of_asymmetric_flanks() {
        // Rising on [0,4], falling on [4,10] at half the slope.
        let lik =
            LikelihoodCurve::from_points(frame10(), &[(0.0, 0.0), (4.0, 1.0), (10.0, 0.25)])
                .unwrap();
        let p = PossFn::from_likelihood(&lik).unwrap();
        assert_eq!(p.shape(), Shape::Unimodal);
        let u = p.companion(2.0).unwrap();
        assert!((u - 8.0).abs() <= 1e-6, "u = {u}");
        // Levels below the right-flank minimum have no companion.
        assert!(p.companion(0.5).is_err());
    }

    #[test]
    fn companion_rejects_bad_arguments() {
        let p = PossFn::triangular(frame10(), 5.0, 5.0).unwrap();
        assert!(matches!(
            p.companion(6.0),
            Err(Error::InvalidArgument(_))
        ));
        let frame = frame10();
        let ss =
            PossFn::simple_support(frame, Interval::new(2.0, 4.0).unwrap(), 0.2).unwrap();
        assert!(matches!(
            ss.companion(2.0),
            Err(Error::UnsupportedShape { .. })
        ));
    }

    #[test]
    fn companion_is_an_involution_pair_and_nonincreasing() {
        let p = PossFn::cosine_taper(frame10(), 6.0, 3.5).unwrap();
        let mut prev_u = f64::INFINITY;
        for k in 1..40 {
            let l = p.support().lo() + (p.mode_x() - p.support().lo()) * k as f64 / 40.0;
            let u = p.companion(l).unwrap();
            assert!((p.eval(u).unwrap() - p.eval(l).unwrap()).abs() <= 1e-9);
            assert!(u <= prev_u + 1e-9, "companion must be nonincreasing in l");
            prev_u = u;
        }
    }

    #[test]
    fn alpha_cut_triangular() {
        let p = PossFn::triangular(frame10(), 5.0, 5.0).unwrap();
        let cut = p.alpha_cut(0.5).unwrap();
        assert!((cut.lo() - 2.5).abs() <= 1e-6);
        assert!((cut.hi() - 7.5).abs() <= 1e-6);
        assert!((p.eval(cut.lo()).unwrap() - 0.5).abs() <= 1e-6);
        assert!((p.eval(cut.hi()).unwrap() - 0.5).abs() <= 1e-6);
    }

    #[test]
    fn alpha_cut_simple_support_geometry() {
        let frame: Frame<f64> = Frame::new(40.0, 100.0).unwrap();
        let iv = Interval::new(55.0, 62.0).unwrap();
        let p = PossFn::simple_support(frame, iv, 0.3).unwrap();
        let high = p.alpha_cut(0.5).unwrap();
        assert_eq!((high.lo(), high.hi()), (55.0, 62.0));
        let low = p.alpha_cut(0.2).unwrap();
        assert_eq!((low.lo(), low.hi()), (40.0, 100.0));
        // At alpha exactly the residual the whole frame still qualifies.
        let at = p.alpha_cut(0.3).unwrap();
        assert_eq!((at.lo(), at.hi()), (40.0, 100.0));
    }

    #[test]
    fn alpha_cut_rejects_bad_levels() {
        let p = PossFn::triangular(frame10(), 5.0, 5.0).unwrap();
        assert!(p.alpha_cut(0.0).is_err());
        assert!(p.alpha_cut(1.1).is_err());
        assert!(p.alpha_cut(1.0).is_ok());
    }

    #[test]
    fn alpha_cuts_nest() {
        for p in [
            PossFn::triangular(frame10(), 4.0, 4.0).unwrap(),
            PossFn::cosine_taper(frame10(), 6.0, 3.0).unwrap(),
        ] {
            let mut prev = p.alpha_cut(0.05).unwrap();
            for k in 1..20 {
                let alpha = 0.05 + 0.9 * k as f64 / 20.0;
                let cut = p.alpha_cut(alpha).unwrap();
                assert!(
                    cut.lo() >= prev.lo() - 1e-9 && cut.hi() <= prev.hi() + 1e-9,
                    "cuts must shrink as alpha grows"
                );
                prev = cut;
            }
        }
    }

    #[test]
    fn bimodal_superlevel_splits() {
        // Peaks at 2.5 and 7.5 sit on grid abscissae so the max sample is
        // exactly 1.
        let frame = frame10();
        let t1 = |x: f64| (1.0 - (x - 2.5).abs() / 3.0).max(0.0);
        let t2 = |x: f64| (1.0 - (x - 7.5).abs() / 3.0).max(0.0);
        let curve = SampledCurve::from_fn(frame, |x| t1(x).max(0.7 * t2(x))).unwrap();
        let p = PossFn::from_samples(curve).unwrap();
        assert_eq!(p.shape(), Shape::General);
        assert!(matches!(
            p.alpha_cut(0.5),
            Err(Error::NonConsonant { .. })
        ));
        let joined = p.alpha_cut(0.1).unwrap();
        assert!(joined.lo() < 1.0 && joined.hi() > 9.0);
    }

    #[test]
    fn max_on_and_sup_outside() {
        let p = PossFn::triangular(frame10(), 5.0, 5.0).unwrap();
        assert_eq!(p.max_on(&Interval::new(0.0, 2.0).unwrap()), 0.4);
        assert_eq!(p.max_on(&Interval::new(4.0, 6.0).unwrap()), 1.0);
        assert_eq!(p.sup_outside(&Interval::new(2.5, 7.5).unwrap()), 0.5);
        assert_eq!(p.sup_outside(&frame10().as_interval()), 0.0);

        let frame: Frame<f64> = Frame::new(40.0, 100.0).unwrap();
        let ss = PossFn::simple_support(frame, Interval::new(55.0, 62.0).unwrap(), 0.3).unwrap();
        // The open complement of the plateau only sees the residual.
        assert_eq!(
            ss.sup_outside(&Interval::new(55.0, 62.0).unwrap()),
            0.3
        );
        assert_eq!(ss.sup_outside(&Interval::new(58.0, 60.0).unwrap()), 1.0);
    }

    #[test]
    fn simple_support_detected_from_raw_samples() {
        let frame = frame10();
        let lik = LikelihoodCurve::from_fn(frame, |x| if (2.0..=4.0).contains(&x) { 0.8 } else { 0.2 })
            .unwrap();
        let p = PossFn::from_likelihood(&lik).unwrap();
        assert_eq!(p.shape(), Shape::SimpleSupport);
        let (plateau, residual) = p.simple_support_params().unwrap();
        assert!((residual - 0.25).abs() <= 1e-15);
        assert!(plateau.lo() >= 2.0 - 1e-9 && plateau.hi() <= 4.0 + 1e-9);
    }
}
