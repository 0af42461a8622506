//! Command implementations and the exit-code discipline:
//! 0 success, 2 malformed scenario/arguments, 3 total conflict,
//! 4 agreement unavailable under --strict, 5 oracle tolerance breach.

use crate::report::{self, OracleLine, PairLine, ReportDoc, SourceLine};
use crate::scenario::ScenarioFile;
use evifuse::consonant::ConsonantView;
use evifuse::dempster::{contour, dempster_combine, FiniteMass};
use evifuse::fusion::{self, FusionReport};
use evifuse::{Error as CoreError, Frame, PossFn, Shape};
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Malformed(String),
    Conflict(String),
    Unsupported(String),
    Breach(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Malformed(_) => 2,
            CliError::Conflict(_) => 3,
            CliError::Unsupported(_) => 4,
            CliError::Breach(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m)
            | CliError::Malformed(m)
            | CliError::Conflict(m)
            | CliError::Unsupported(m)
            | CliError::Breach(m) => write!(f, "{m}"),
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<ScenarioFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    ScenarioFile::parse(&text)
}

/// Name the shortest conflicting prefix by label for the exit-3 message.
fn conflict_prefix(inputs: &[(String, PossFn<f64>)]) -> String {
    for end in 1..=inputs.len() {
        if fusion::chain_combine(inputs[..end].iter().map(|(_, p)| p)).is_err() {
            let labels: Vec<&str> = inputs[..end].iter().map(|(l, _)| l.as_str()).collect();
            return labels.join(" x ");
        }
    }
    inputs
        .iter()
        .map(|(l, _)| l.as_str())
        .collect::<Vec<_>>()
        .join(" x ")
}

pub fn run_fuse(
    scenario: &ScenarioFile,
    name: &str,
    out_dir: &Path,
    oracle_n: Option<usize>,
    strict: bool,
    write_scenario: bool,
) -> Result<(), CliError> {
    if let Some(0) = oracle_n {
        return Err(CliError::Malformed(
            "--oracle needs at least one discretization level".into(),
        ));
    }
    let (frame, inputs) = scenario.build_sources()?;
    let report = match fusion::chain_combine(inputs.iter().map(|(_, p)| p)) {
        Ok(r) => r,
        Err(CoreError::TotalConflict(msg)) => {
            return Err(CliError::Conflict(format!(
                "total conflict in prefix [{}]: {msg}",
                conflict_prefix(&inputs)
            )));
        }
        Err(e) => return Err(CliError::Malformed(e.to_string())),
    };

    let oracle = match oracle_n {
        Some(n) => Some(oracle_section(&frame, &inputs, &report, n)?),
        None => None,
    };

    let doc = ReportDoc {
        scenario: name.to_string(),
        frame: [frame.lo(), frame.hi()],
        grid_size: frame.grid_size(),
        sources: scenario
            .sources
            .iter()
            .zip(&inputs)
            .map(|(spec, (_, poss))| SourceLine {
                label: spec.label.clone(),
                kind: spec.kind.clone(),
                shape: report::shape_name(poss.shape()).to_string(),
            })
            .collect(),
        pairs: inputs
            .windows(2)
            .zip(&report.pairwise)
            .map(|(w, stats)| PairLine {
                pair: [w[0].0.clone(), w[1].0.clone()],
                stats: report::stats_line(stats),
            })
            .collect(),
        overall: report::stats_line(&report.stats),
        oracle,
    };

    report::write_outputs(out_dir, &doc, &inputs, &report)
        .map_err(|e| CliError::Io(format!("cannot write outputs: {e}")))?;
    if write_scenario {
        std::fs::write(out_dir.join("scenario.json"), scenario.to_json())
            .map_err(|e| CliError::Io(format!("cannot write scenario: {e}")))?;
    }
    println!("{}", report::render_text(&doc));
    println!("outputs written to {}", out_dir.display());

    if strict && doc.overall.agreement_a.is_none() {
        return Err(CliError::Unsupported(
            "agreement not derivable for these shapes (strict mode)".into(),
        ));
    }
    Ok(())
}

/// Discretize every source, push them through the exact combiner and
/// compare against the fused curve.
fn oracle_section(
    frame: &Frame<f64>,
    inputs: &[(String, PossFn<f64>)],
    report: &FusionReport<f64>,
    n: usize,
) -> Result<OracleLine, CliError> {
    let mut masses: Vec<FiniteMass<f64>> = Vec::with_capacity(inputs.len());
    for (label, poss) in inputs {
        if poss.is_vacuous() {
            masses.push(FiniteMass::vacuous(*frame));
            continue;
        }
        if poss.shape() == Shape::General {
            return Err(CliError::Malformed(format!(
                "source '{label}' has a general shape; the oracle needs consonant sources"
            )));
        }
        let mass = ConsonantView::new(poss)
            .and_then(|v| v.discretize(n))
            .map_err(|e| CliError::Malformed(format!("source '{label}': {e}")))?;
        masses.push(mass);
    }

    let mut combined = masses[0].clone();
    let mut agreement_product = 1.0f64;
    for m in &masses[1..] {
        let (next, k) = dempster_combine(&combined, m)
            .map_err(|e| CliError::Conflict(format!("oracle combination failed: {e}")))?;
        combined = next;
        agreement_product *= 1.0 - k;
    }
    let k_n = 1.0 - agreement_product;

    let xs: Vec<f64> = (0..frame.grid_size()).map(|i| frame.x_at(i)).collect();
    let pl_oracle = contour(&combined, &xs)
        .map_err(|e| CliError::Malformed(format!("oracle contour failed: {e}")))?;
    let fused = report.fused.values();
    let mut max_gap = f64::MIN;
    let mut max_gap_x = xs[0];
    let mut ratios: Vec<f64> = Vec::new();
    for i in 0..xs.len() {
        let gap = pl_oracle[i] - fused[i];
        if gap > max_gap {
            max_gap = gap;
            max_gap_x = xs[i];
        }
        if fused[i] > 0.05 {
            ratios.push(pl_oracle[i] / fused[i]);
        }
    }
    let proportionality_spread = if ratios.is_empty() {
        None
    } else {
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        Some(
            ratios
                .iter()
                .map(|r| (r / mean - 1.0).abs())
                .fold(0.0, f64::max),
        )
    };

    Ok(OracleLine {
        n,
        k_n,
        one_minus_k_n: 1.0 - k_n,
        agreement_abs_diff: report
            .stats
            .agreement
            .map(|a| (a.agreement_a - (1.0 - k_n)).abs()),
        max_dominance_gap: max_gap,
        max_dominance_x: max_gap_x,
        dominance_tolerance: 2.0 / n as f64 + 1e-4,
        proportionality_spread,
    })
}

pub fn run_oracle_check(
    scenario: &ScenarioFile,
    n: usize,
    tol: f64,
) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Malformed(
            "--n needs at least one discretization level".into(),
        ));
    }
    if tol.is_nan() || tol <= 0.0 || !tol.is_finite() {
        return Err(CliError::Malformed(format!(
            "--tol must be a positive number, got {tol}"
        )));
    }
    let (frame, inputs) = scenario.build_sources()?;
    if inputs.len() != 2 {
        return Err(CliError::Malformed(format!(
            "oracle-check needs exactly two sources, got {}",
            inputs.len()
        )));
    }
    for (label, poss) in &inputs {
        if poss.shape() == Shape::General && !poss.is_vacuous() {
            return Err(CliError::Malformed(format!(
                "source '{label}' has a general shape; oracle-check needs consonant sources"
            )));
        }
    }
    let (p1, p2) = (&inputs[0].1, &inputs[1].1);
    let a = fusion::agreement(p1, p2).map_err(|e| CliError::Malformed(e.to_string()))?;

    let report = match fusion::combine(p1, p2) {
        Ok(r) => r,
        Err(CoreError::TotalConflict(msg)) => {
            return Err(CliError::Conflict(format!(
                "total conflict in prefix [{}]: {msg}",
                conflict_prefix(&inputs)
            )));
        }
        Err(e) => return Err(CliError::Malformed(e.to_string())),
    };
    let oracle = oracle_section(&frame, &inputs, &report, n)?;

    println!("agreement (curves)        = {a:.9}");
    println!("1 - k_n   (oracle)        = {:.9}  (n = {n})", oracle.one_minus_k_n);
    let diff = (a - oracle.one_minus_k_n).abs();
    println!("|difference|              = {diff:.9}  (tolerance {tol:.9})");
    println!(
        "max (pl_oracle - fused)   = {:.9} at x = {:.6}  (tolerance {:.9})",
        oracle.max_dominance_gap, oracle.max_dominance_x, oracle.dominance_tolerance
    );

    if diff > tol {
        return Err(CliError::Breach(format!(
            "agreement mismatch: |{a:.9} - {:.9}| = {diff:.9} exceeds {tol:.9}",
            oracle.one_minus_k_n
        )));
    }
    if oracle.max_dominance_gap > oracle.dominance_tolerance {
        return Err(CliError::Breach(format!(
            "singleton dominance violated: gap {:.9} at x = {:.6} exceeds {:.9}",
            oracle.max_dominance_gap, oracle.max_dominance_x, oracle.dominance_tolerance
        )));
    }
    println!("ok");
    Ok(())
}
