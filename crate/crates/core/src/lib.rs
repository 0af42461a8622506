//! Evidence fusion over continuous frames via possibility functions.
//!
//! A likelihood curve θ ↦ p(f|θ) over a real interval is normalized into a
//! possibility function (max 1). Each possibility function induces a
//! consonant belief structure whose focal elements are its α-superlevel
//! intervals. Independent pieces of evidence are pooled by multiplying the
//! possibility functions pointwise and renormalizing; the agreement between
//! two sources (one minus Dempster's contradiction factor) comes out in
//! closed form from the curves themselves, without ever materializing the
//! combined mass function.
//!
//! The [`dempster`] module holds an exact combiner for finite interval-focal
//! mass functions. It is deliberately the slow O(|m1|·|m2|) enumeration and
//! serves as the ground truth the fast multiplicative rule is validated
//! against.
//!
//! All numerics are generic over the scalar type through [`Real`]
//! (`f32`/`f64`); concrete `f64` and `f32` aliases live at the crate root.

pub mod consonant;
pub mod dempster;
pub mod error;
pub mod fusion;
pub mod interval;
pub mod numerics;
pub mod possibility;
pub mod real;
pub mod tolerances;

pub use error::{Error, Result};
pub use interval::Interval;
pub use numerics::{Frame, SampledCurve};
pub use possibility::{LikelihoodCurve, PossFn, Shape};
pub use real::Real;

pub type Frame64 = Frame<f64>;
pub type Interval64 = Interval<f64>;
pub type SampledCurve64 = SampledCurve<f64>;
pub type PossFn64 = PossFn<f64>;
pub type LikelihoodCurve64 = LikelihoodCurve<f64>;
pub type FiniteMass64 = dempster::FiniteMass<f64>;
pub type FusionReport64 = fusion::FusionReport<f64>;

pub type Frame32 = Frame<f32>;
pub type Interval32 = Interval<f32>;
pub type SampledCurve32 = SampledCurve<f32>;
pub type PossFn32 = PossFn<f32>;
pub type LikelihoodCurve32 = LikelihoodCurve<f32>;
pub type FiniteMass32 = dempster::FiniteMass<f32>;
pub type FusionReport32 = fusion::FusionReport<f32>;
