//! Numeric tolerances used across the crate, with their rationale.
//!
//! All values are stated in `f64`; generic code lifts them with
//! [`Real::of`](crate::Real::of). Nothing here is tuned per test — these are
//! the contracts the operations promise.

/// Root refinement: level crossings, α-cut endpoints and companion points are
/// bisected until the curve value is within this of the target level.
pub const LEVEL_REFINE: f64 = 1e-9;

/// A possibility function's represented maximum must equal 1 within this.
pub const NORMALIZATION: f64 = 1e-9;

/// Slack allowed when testing monotonicity of sampled flanks; absorbs
/// rounding in sampled analytic families.
pub const MONOTONE_SLACK: f64 = 1e-9;

/// α-cut endpoints reproduce their level within this on unimodal shapes
/// (looser than [`LEVEL_REFINE`] to absorb interpolation of sampled curves).
pub const ALPHA_ENDPOINT: f64 = 1e-6;

/// Normalized likelihood values below this are clamped to zero so that the
/// support is a genuine zero set; keeps families that never reach zero
/// (truncated Gaussians) compatible with the consonant construction.
pub const SUPPORT_CLAMP: f64 = 1e-6;

/// A pointwise product whose maximum falls at or below this is total
/// conflict: the combination rule is undefined there, mirroring Dempster's
/// rule at k = 1.
pub const TOTAL_CONFLICT: f64 = 1e-12;

/// Finite mass functions must have masses summing to 1 within this.
pub const MASS_SUM: f64 = 1e-12;

/// Focal interval endpoints are rounded to this grid before merging, so that
/// repeated combinations cannot blow up the focal count with near-duplicate
/// intervals.
pub const FOCAL_ROUND: f64 = 1e-12;

/// The two integral forms of the agreement are computed independently and
/// must match within this; a larger gap flags insufficient grid resolution.
pub const DUAL_FORM_AGREEMENT: f64 = 1e-4;

/// Two sums over the same focal products (agreement identity) must match
/// within this.
pub const DISCRETE_IDENTITY: f64 = 1e-9;

/// Samples within this of the maximum count as tied argmax candidates.
pub const TIE_DETECT: f64 = 1e-9;

/// Agreement must dominate the product norm at least up to this slack.
pub const NORM_BOUND_SLACK: f64 = 1e-6;
