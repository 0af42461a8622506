//! Acceptance suite, command-surface half: the worked-example regimes and
//! output determinism. One pass/fail line per criterion.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn criterion<F>(name: &str, body: F)
where
    F: FnOnce() -> String + std::panic::UnwindSafe,
{
    match std::panic::catch_unwind(body) {
        Ok(details) => println!("[PASS] {name}: {details}"),
        Err(e) => {
            println!("[FAIL] {name}");
            std::panic::resume_unwind(e);
        }
    }
}

fn evifuse(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evifuse"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn report_json(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn criterion_7_speeding_regimes() {
    criterion("criterion 7: witness-report regimes", || {
        let dir = tempfile::tempdir().unwrap();

        // Conflicting regime: witness tops out below the radar peak.
        let out = evifuse(
            &["preset", "speeding", "--out", "conflicting", "--oracle", "2000"],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let report = report_json(&dir.path().join("conflicting"));
        let a = report["overall"]["agreement_a"].as_f64().unwrap();
        // Direct closed form: a = (1 - p_w) * poss_r(v2) + p_w with the
        // radar ramp value poss_r(62) = 1 - |62 - 70| / 10.
        let poss_r_v2 = 1.0 - (62.0f64 - 70.0).abs() / 10.0;
        let direct = (1.0 - 0.3) * poss_r_v2 + 0.3;
        assert!((a - direct).abs() <= 1e-6, "a = {a}, direct = {direct}");
        assert!((a - 0.44).abs() <= 1e-6);
        let norm = report["overall"]["norm"].as_f64().unwrap();
        assert!((norm - 0.30).abs() <= 1e-9, "norm = {norm}");
        let mle = report["overall"]["mle_x"].as_f64().unwrap();
        assert_eq!(mle, 70.0);
        let support = report["overall"]["support_against_mle"].as_f64().unwrap();
        assert!((support - (1.0 - 0.30 / 0.44)).abs() <= 1e-9);
        // Against the exact combiner at n = 2000.
        let diff = report["oracle"]["agreement_abs_diff"].as_f64().unwrap();
        assert!(diff <= 2.0 / 2000.0, "|a - (1 - k_n)| = {diff}");

        // Agreeing regime: the witness interval covers the radar peak.
        let out = evifuse(&["preset", "speeding-agree", "--out", "agreeing"], dir.path());
        assert_eq!(out.status.code(), Some(0));
        let report = report_json(&dir.path().join("agreeing"));
        let a = report["overall"]["agreement_a"].as_f64().unwrap();
        let support = report["overall"]["support_against_mle"].as_f64().unwrap();
        assert_eq!(a, 1.0, "agreeing regime must have a = 1 exactly");
        assert_eq!(support, 0.0, "no evidence against the estimate");

        format!(
            "speeding: a = {:.6} (= direct form, = 1 - k_2000 within {:.1e}); speeding-agree: a = 1, support = 0 exactly",
            direct, diff
        )
    });
}

#[test]
fn criterion_9_determinism() {
    criterion("criterion 9: byte-identical reruns", || {
        let dir = tempfile::tempdir().unwrap();
        // Materialize the preset scenario, then run `fuse` on it twice.
        let out = evifuse(&["preset", "speeding", "--out", "seed"], dir.path());
        assert_eq!(out.status.code(), Some(0));
        let scenario = dir.path().join("seed/scenario.json");
        for run in ["one", "two"] {
            let out = evifuse(
                &[
                    "fuse",
                    scenario.to_str().unwrap(),
                    "--out",
                    run,
                    "--oracle",
                    "500",
                ],
                dir.path(),
            );
            assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        }
        let mut names: Vec<String> = fs::read_dir(dir.path().join("one"))
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .collect();
        names.sort();
        assert!(names.contains(&"report.json".to_string()));
        assert!(names.contains(&"fused.csv".to_string()));
        let mut compared = 0usize;
        for name in &names {
            let a = fs::read(dir.path().join("one").join(name)).unwrap();
            let b = fs::read(dir.path().join("two").join(name)).unwrap();
            assert_eq!(a, b, "{name} differs between runs");
            compared += 1;
        }
        format!("{compared} files byte-identical across repeated fuse runs")
    });
}
