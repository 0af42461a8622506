//! Built-in scenarios: a radar measurement fused with an eyewitness
//! interval report, in its three qualitative regimes.

use crate::scenario::{FrameSpec, ScenarioFile, SourceSpec};

pub const PRESET_NAMES: [&str; 3] = ["speeding", "speeding-agree", "speeding-conflict"];

/// A named built-in scenario, or `None` for an unknown name.
pub fn preset(name: &str) -> Option<ScenarioFile> {
    let frame = FrameSpec { lo: 40.0, hi: 100.0 };
    let scenario = |sources: Vec<SourceSpec>| ScenarioFile {
        version: crate::scenario::SCENARIO_VERSION,
        frame,
        grid_size: evifuse::numerics::DEFAULT_GRID_SIZE,
        sources,
    };
    match name {
        // Witness brackets 55-62 mph, below the radar peak at 70: the
        // reports conflict and the fused estimate loses support.
        "speeding" => Some(scenario(vec![
            SourceSpec::bump("triangular", "radar", 70.0, 10.0),
            SourceSpec::simple_support("witness", 55.0, 62.0, 0.3),
        ])),
        // Witness interval covers the radar peak: full agreement, no
        // evidence against the maximum-likelihood estimate.
        "speeding-agree" => Some(scenario(vec![
            SourceSpec::bump("triangular", "radar", 70.0, 10.0),
            SourceSpec::simple_support("witness", 65.0, 80.0, 0.3),
        ])),
        // Two sensors with disjoint supports: total conflict, combination
        // undefined.
        "speeding-conflict" => Some(scenario(vec![
            SourceSpec::bump("triangular", "radar-a", 50.0, 5.0),
            SourceSpec::bump("triangular", "radar-b", 80.0, 5.0),
        ])),
        _ => None,
    }
}
