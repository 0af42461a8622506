//! Report documents and file emission. Everything written is a pure
//! function of the scenario, so repeated runs produce byte-identical files.

use evifuse::fusion::{FusionReport, FusionStats};
use evifuse::{PossFn, Shape};
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub scenario: String,
    pub frame: [f64; 2],
    pub grid_size: usize,
    pub sources: Vec<SourceLine>,
    pub pairs: Vec<PairLine>,
    pub overall: StatsLine,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleLine>,
}

#[derive(Debug, Serialize)]
pub struct SourceLine {
    pub label: String,
    pub kind: String,
    pub shape: String,
}

#[derive(Debug, Serialize)]
pub struct StatsLine {
    pub norm: f64,
    pub mle_x: f64,
    pub mle_tied: bool,
    pub agreement_a: Option<f64>,
    pub contradiction_k: Option<f64>,
    pub support_against_mle: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct PairLine {
    pub pair: [String; 2],
    #[serde(flatten)]
    pub stats: StatsLine,
}

#[derive(Debug, Serialize)]
pub struct OracleLine {
    pub n: usize,
    pub k_n: f64,
    pub one_minus_k_n: f64,
    /// |agreement - (1 - k_n)|, when an overall agreement exists.
    pub agreement_abs_diff: Option<f64>,
    pub max_dominance_gap: f64,
    /// State at which the worst dominance gap occurs.
    pub max_dominance_x: f64,
    pub dominance_tolerance: f64,
    /// Largest relative deviation of pl_oracle/pl_fused from its mean over
    /// the region pl_fused > 0.05.
    pub proportionality_spread: Option<f64>,
}

pub fn shape_name(shape: Shape) -> &'static str {
    match shape {
        Shape::Unimodal => "unimodal",
        Shape::SimpleSupport => "simple support",
        Shape::General => "general",
    }
}

pub fn stats_line(stats: &FusionStats<f64>) -> StatsLine {
    StatsLine {
        norm: stats.norm,
        mle_x: stats.mle_x,
        mle_tied: stats.mle_tied,
        agreement_a: stats.agreement.map(|a| a.agreement_a),
        contradiction_k: stats.agreement.map(|a| a.contradiction_k),
        support_against_mle: stats.agreement.map(|a| a.support_against_mle),
    }
}

fn opt(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.6}"),
        None => "n/a".into(),
    }
}

fn stats_block(out: &mut String, indent: &str, s: &StatsLine) {
    let tied = if s.mle_tied { "tied" } else { "unique" };
    out.push_str(&format!("{indent}norm                 {:.6}\n", s.norm));
    out.push_str(&format!("{indent}agreement a          {}\n", opt(s.agreement_a)));
    out.push_str(&format!("{indent}contradiction k      {}\n", opt(s.contradiction_k)));
    out.push_str(&format!("{indent}mle                  {:.6}  ({tied})\n", s.mle_x));
    out.push_str(&format!(
        "{indent}support against mle  {}\n",
        opt(s.support_against_mle)
    ));
}

pub fn render_text(doc: &ReportDoc) -> String {
    let mut out = String::new();
    out.push_str("evidence fusion report\n");
    out.push_str(&format!("scenario: {}\n", doc.scenario));
    out.push_str(&format!(
        "frame: [{}, {}]  grid: {}\n",
        doc.frame[0], doc.frame[1], doc.grid_size
    ));
    out.push_str("sources:\n");
    for (i, s) in doc.sources.iter().enumerate() {
        out.push_str(&format!(
            "  {}. {}  ({}, {})\n",
            i + 1,
            s.label,
            s.kind,
            s.shape
        ));
    }
    if !doc.pairs.is_empty() {
        out.push_str("\nconsecutive pairs:\n");
        for p in &doc.pairs {
            out.push_str(&format!("  {} x {}:\n", p.pair[0], p.pair[1]));
            stats_block(&mut out, "    ", &p.stats);
        }
    }
    out.push_str("\noverall:\n");
    stats_block(&mut out, "  ", &doc.overall);
    if let Some(o) = &doc.oracle {
        out.push_str(&format!("\noracle (n = {}):\n", o.n));
        out.push_str(&format!("  k_n                        {:.6}\n", o.k_n));
        out.push_str(&format!("  1 - k_n                    {:.6}\n", o.one_minus_k_n));
        out.push_str(&format!(
            "  |agreement - (1 - k_n)|    {}\n",
            opt(o.agreement_abs_diff)
        ));
        out.push_str(&format!(
            "  max (pl_oracle - fused)    {:.6} at x = {:.6}  (tolerance {:.6})\n",
            o.max_dominance_gap, o.max_dominance_x, o.dominance_tolerance
        ));
        out.push_str(&format!(
            "  proportionality spread     {}  (over fused > 0.05)\n",
            opt(o.proportionality_spread)
        ));
    }
    out
}

fn slug(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect()
}

fn write_curve_csv(path: &Path, poss: &PossFn<f64>) -> std::io::Result<()> {
    let frame = poss.frame();
    let mut buf = String::with_capacity(frame.grid_size() * 24);
    buf.push_str("x,poss\n");
    for (i, v) in poss.values().iter().enumerate() {
        buf.push_str(&format!("{},{}\n", frame.x_at(i), v));
    }
    fs::write(path, buf)
}

/// Write the per-curve CSVs plus the twin text/JSON reports into `dir`.
pub fn write_outputs(
    dir: &Path,
    doc: &ReportDoc,
    inputs: &[(String, PossFn<f64>)],
    report: &FusionReport<f64>,
) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    for (i, (label, poss)) in inputs.iter().enumerate() {
        let name = format!("{:02}_{}.csv", i + 1, slug(label));
        write_curve_csv(&dir.join(name), poss)?;
    }
    write_curve_csv(&dir.join("fused.csv"), &report.fused)?;

    let mut json = serde_json::to_string_pretty(doc).expect("report serializes");
    json.push('\n');
    fs::write(dir.join("report.json"), json)?;

    let mut txt = fs::File::create(dir.join("report.txt"))?;
    txt.write_all(render_text(doc).as_bytes())?;
    Ok(())
}
