//! Scenario files: a frame, a grid size and an ordered list of evidence
//! sources. JSON with a required `"version": 1`; unknown keys are rejected
//! so parameter typos fail fast instead of silently defaulting.

use crate::commands::CliError;
use evifuse::{Frame, Interval, LikelihoodCurve, PossFn};
use serde::{Deserialize, Serialize};

pub const SCENARIO_VERSION: u32 = 1;

/// The frame plus every built source, in scenario order.
pub type BuiltSources = (Frame<f64>, Vec<(String, PossFn<f64>)>);

fn default_grid_size() -> usize {
    evifuse::numerics::DEFAULT_GRID_SIZE
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    pub frame: FrameSpec,
    #[serde(default = "default_grid_size")]
    pub grid_size: usize,
    pub sources: Vec<SourceSpec>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSpec {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalSpec {
    pub lo: f64,
    pub hi: f64,
}

/// One evidence source. `kind` selects the family; exactly the parameters
/// of that family may be present.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSpec {
    pub kind: String,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peak: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<(f64, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<IntervalSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl SourceSpec {
    pub fn bump(kind: &str, label: &str, peak: f64, half_width: f64) -> Self {
        Self {
            kind: kind.into(),
            label: label.into(),
            peak: Some(peak),
            half_width: Some(half_width),
            mean: None,
            sd: None,
            points: None,
            interval: None,
            residual: None,
        }
    }

    pub fn simple_support(label: &str, lo: f64, hi: f64, residual: f64) -> Self {
        Self {
            kind: "simple_support".into(),
            label: label.into(),
            peak: None,
            half_width: None,
            mean: None,
            sd: None,
            points: None,
            interval: Some(IntervalSpec { lo, hi }),
            residual: Some(residual),
        }
    }

    /// Reject parameters that do not belong to the declared kind.
    fn check_parameters(&self, allowed: &[&str]) -> Result<(), CliError> {
        let present: [(&str, bool); 7] = [
            ("peak", self.peak.is_some()),
            ("half_width", self.half_width.is_some()),
            ("mean", self.mean.is_some()),
            ("sd", self.sd.is_some()),
            ("points", self.points.is_some()),
            ("interval", self.interval.is_some()),
            ("residual", self.residual.is_some()),
        ];
        for (name, is_some) in present {
            let should = allowed.contains(&name);
            if is_some && !should {
                return Err(CliError::Malformed(format!(
                    "source '{}': parameter '{name}' does not apply to kind '{}'",
                    self.label, self.kind
                )));
            }
            if !is_some && should {
                return Err(CliError::Malformed(format!(
                    "source '{}': kind '{}' requires parameter '{name}'",
                    self.label, self.kind
                )));
            }
        }
        Ok(())
    }

    pub fn build(&self, frame: Frame<f64>) -> Result<PossFn<f64>, CliError> {
        let wrap = |e: evifuse::Error| {
            CliError::Malformed(format!("source '{}': {e}", self.label))
        };
        match self.kind.as_str() {
            "triangular" => {
                self.check_parameters(&["peak", "half_width"])?;
                PossFn::triangular(frame, self.peak.unwrap(), self.half_width.unwrap())
                    .map_err(wrap)
            }
            "cosine_taper" => {
                self.check_parameters(&["peak", "half_width"])?;
                PossFn::cosine_taper(frame, self.peak.unwrap(), self.half_width.unwrap())
                    .map_err(wrap)
            }
            "gaussian_likelihood" => {
                self.check_parameters(&["mean", "sd"])?;
                let (mean, sd) = (self.mean.unwrap(), self.sd.unwrap());
                if sd.is_nan() || sd <= 0.0 || !sd.is_finite() {
                    return Err(CliError::Malformed(format!(
                        "source '{}': sd must be positive, got {sd}",
                        self.label
                    )));
                }
                if !frame.contains(mean) {
                    return Err(CliError::Malformed(format!(
                        "source '{}': mean {mean} lies outside the frame",
                        self.label
                    )));
                }
                let lik = LikelihoodCurve::from_fn(frame, |x: f64| {
                    (-(x - mean) * (x - mean) / (2.0 * sd * sd)).exp()
                })
                .map_err(wrap)?;
                PossFn::from_likelihood(&lik).map_err(wrap)
            }
            "piecewise_linear_likelihood" => {
                self.check_parameters(&["points"])?;
                let lik = LikelihoodCurve::from_points(frame, self.points.as_ref().unwrap())
                    .map_err(wrap)?;
                PossFn::from_likelihood(&lik).map_err(wrap)
            }
            "simple_support" => {
                self.check_parameters(&["interval", "residual"])?;
                let iv = self.interval.unwrap();
                let iv = Interval::new(iv.lo, iv.hi).map_err(wrap)?;
                PossFn::simple_support(frame, iv, self.residual.unwrap()).map_err(wrap)
            }
            other => Err(CliError::Malformed(format!(
                "source '{}': unknown evidence kind '{other}'",
                self.label
            ))),
        }
    }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let scenario: ScenarioFile = serde_json::from_str(text)
            .map_err(|e| CliError::Malformed(format!("scenario parse error: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.version != SCENARIO_VERSION {
            return Err(CliError::Malformed(format!(
                "unsupported scenario version {}; expected {SCENARIO_VERSION}",
                self.version
            )));
        }
        if self.sources.is_empty() {
            return Err(CliError::Malformed("scenario has no sources".into()));
        }
        for s in &self.sources {
            if s.label.trim().is_empty() {
                return Err(CliError::Malformed("source labels must be nonempty".into()));
            }
        }
        Ok(())
    }

    pub fn frame(&self) -> Result<Frame<f64>, CliError> {
        Frame::with_grid(self.frame.lo, self.frame.hi, self.grid_size)
            .map_err(|e| CliError::Malformed(e.to_string()))
    }

    /// Build every source in order.
    pub fn build_sources(&self) -> Result<BuiltSources, CliError> {
        let frame = self.frame()?;
        let mut out = Vec::with_capacity(self.sources.len());
        for s in &self.sources {
            out.push((s.label.clone(), s.build(frame)?));
        }
        Ok((frame, out))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("scenario serializes");
        text.push('\n');
        text
    }
}
