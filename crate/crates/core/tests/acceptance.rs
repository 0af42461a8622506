//! Acceptance suite: each test checks one release criterion end to end and
//! prints a single pass/fail line. Randomness is seeded, so runs are
//! reproducible.

use evifuse::consonant::ConsonantView;
use evifuse::dempster::{contour, dempster_combine, discrete_agreement, FiniteMass};
use evifuse::fusion::{agreement, chain_combine, combine};
use evifuse::{Frame, Interval, LikelihoodCurve, PossFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

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

fn frame10() -> Frame<f64> {
    Frame::new(0.0, 10.0).unwrap()
}

/// A random analytic family member whose support fits the frame.
fn random_unimodal(rng: &mut ChaCha8Rng, frame: Frame<f64>, peak: f64, hw: f64) -> PossFn<f64> {
    if rng.gen_bool(0.5) {
        PossFn::triangular(frame, peak, hw).unwrap()
    } else {
        PossFn::cosine_taper(frame, peak, hw).unwrap()
    }
}

/// Twenty seeded unimodal pairs with strong overlap; shared by the
/// convergence and dominance criteria.
fn overlapping_pairs() -> Vec<(PossFn<f64>, PossFn<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let frame = frame10();
    (0..20)
        .map(|_| {
            let mid = rng.gen_range(4.0..6.0);
            let delta = rng.gen_range(0.1..0.4);
            let hw1 = rng.gen_range(2.5..3.5);
            let hw2 = rng.gen_range(2.5..3.5);
            (
                random_unimodal(&mut rng, frame, mid - delta, hw1),
                random_unimodal(&mut rng, frame, mid + delta, hw2),
            )
        })
        .collect()
}

#[test]
fn criterion_1_singleton_recovery() {
    criterion("criterion 1: singleton recovery", || {
        let t0 = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let frame = frame10();
        let n = 500usize;
        let tol = 2.0 / n as f64 + 1e-4;
        let mut worst: f64 = 0.0;
        for family in 0..3 {
            for _ in 0..50 {
                let poss = match family {
                    0 | 1 => {
                        let peak: f64 = rng.gen_range(2.5..7.5);
                        let hw = rng.gen_range(1.0..(peak.min(10.0 - peak) - 0.05));
                        if family == 0 {
                            PossFn::triangular(frame, peak, hw).unwrap()
                        } else {
                            PossFn::cosine_taper(frame, peak, hw).unwrap()
                        }
                    }
                    _ => {
                        let lo = rng.gen_range(0.5..8.0);
                        let hi = rng.gen_range((lo + 0.2)..9.5);
                        let residual = rng.gen_range(0.0..0.95);
                        PossFn::simple_support(
                            frame,
                            Interval::new(lo, hi).unwrap(),
                            residual,
                        )
                        .unwrap()
                    }
                };
                let mass = ConsonantView::new(&poss).unwrap().discretize(n).unwrap();
                let thetas: Vec<f64> = (0..100).map(|k| 10.0 * k as f64 / 99.0).collect();
                let pls = contour(&mass, &thetas).unwrap();
                for (theta, pl) in thetas.iter().zip(pls) {
                    let err = (pl - poss.eval(*theta).unwrap()).abs();
                    worst = worst.max(err);
                    assert!(
                        err <= tol,
                        "family {family}: |pl - poss| = {err} at theta = {theta}"
                    );
                }
            }
        }
        let elapsed = t0.elapsed().as_secs_f64();
        assert!(elapsed < 10.0, "runtime {elapsed:.1}s exceeds 10s");
        format!("150 sources x 100 points, worst |pl - poss| = {worst:.2e} (tol {tol:.2e}), {elapsed:.1}s")
    });
}

#[test]
fn criterion_2_agreement_identity() {
    criterion("criterion 2: discrete agreement identity", || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let frame = frame10();
        let whole = frame.as_interval();
        let mut random_mass = |force_frame_focal: bool| {
            let count = rng.gen_range(1..=8usize);
            let mut focals: Vec<(Interval<f64>, f64)> = (0..count)
                .map(|_| {
                    let lo = rng.gen_range(0.0..9.5);
                    let hi = rng.gen_range(lo..10.0);
                    (Interval::new(lo, hi).unwrap(), rng.gen_range(0.1..1.0))
                })
                .collect();
            if force_frame_focal {
                focals.push((whole, rng.gen_range(0.1..1.0)));
            }
            let total: f64 = focals.iter().map(|(_, w)| w).sum();
            let focals = focals.into_iter().map(|(iv, w)| (iv, w / total)).collect();
            FiniteMass::new(frame, focals).unwrap()
        };
        let mut worst: f64 = 0.0;
        for i in 0..200 {
            let m1 = random_mass(false);
            let m2 = random_mass(true); // frame focal keeps k < 1
            let a = discrete_agreement(&m1, &m2).unwrap();
            let (_, k) = dempster_combine(&m1, &m2).unwrap();
            let err = (a - (1.0 - k)).abs();
            worst = worst.max(err);
            assert!(err <= 1e-9, "pair {i}: |a - (1 - k)| = {err}");
        }
        format!("200 pairs, worst |a - (1-k)| = {worst:.2e}")
    });
}

#[test]
fn criterion_3_continuous_discrete_convergence() {
    criterion("criterion 3: continuous/discrete convergence", || {
        let t0 = Instant::now();
        let pairs = overlapping_pairs();
        let ns = [100usize, 400, 1600];
        let mut mean_err = [0.0f64; 3];
        let mut worst: f64 = 0.0;
        for (p1, p2) in &pairs {
            let a = agreement(p1, p2).unwrap();
            let v1 = ConsonantView::new(p1).unwrap();
            let v2 = ConsonantView::new(p2).unwrap();
            for (slot, &n) in ns.iter().enumerate() {
                let m1 = v1.discretize(n).unwrap();
                let m2 = v2.discretize(n).unwrap();
                let (_, k) = dempster_combine(&m1, &m2).unwrap();
                let err = (a - (1.0 - k)).abs();
                let bound = 5.0 / n as f64 + 1e-4;
                assert!(err <= bound, "n = {n}: |a - (1 - k_n)| = {err} > {bound}");
                mean_err[slot] += err / pairs.len() as f64;
                worst = worst.max(err / bound);
            }
        }
        assert!(
            mean_err[0] > mean_err[1] && mean_err[1] > mean_err[2],
            "mean error must decrease in n: {mean_err:?}"
        );
        let elapsed = t0.elapsed().as_secs_f64();
        assert!(elapsed < 60.0, "runtime {elapsed:.1}s exceeds 60s");
        format!(
            "20 pairs, mean |a - (1-k_n)| = {:.2e}/{:.2e}/{:.2e} at n = 100/400/1600, {elapsed:.1}s",
            mean_err[0], mean_err[1], mean_err[2]
        )
    });
}

#[test]
fn criterion_4_dominance_and_proportionality() {
    criterion("criterion 4: dominance and proportionality", || {
        let pairs = overlapping_pairs();
        let n = 1000usize;
        let dominance_tol = 2.0 / n as f64 + 1e-4;
        let mut worst_dom = f64::MIN;
        let mut worst_spread: f64 = 0.0;
        for (p1, p2) in &pairs {
            let report = combine(p1, p2).unwrap();
            let stats = report.stats;
            let agr = stats.agreement.expect("unimodal pair");
            assert!(
                agr.agreement_a >= stats.norm - 1e-6,
                "a = {} < norm = {}",
                agr.agreement_a,
                stats.norm
            );
            let m1 = ConsonantView::new(p1).unwrap().discretize(n).unwrap();
            let m2 = ConsonantView::new(p2).unwrap().discretize(n).unwrap();
            let (combined, k_n) = dempster_combine(&m1, &m2).unwrap();
            let frame = p1.frame();
            let xs: Vec<f64> = (0..frame.grid_size()).map(|i| frame.x_at(i)).collect();
            let pl_dempster = contour(&combined, &xs).unwrap();
            let fused = report.fused.values();
            let expected_ratio = stats.norm / (1.0 - k_n);
            for i in 0..xs.len() {
                let diff = pl_dempster[i] - fused[i];
                worst_dom = worst_dom.max(diff);
                assert!(
                    diff <= dominance_tol,
                    "dominance violated at x = {}: pl_D - pl_poss = {diff}",
                    xs[i]
                );
                if fused[i] > 0.05 {
                    let ratio = pl_dempster[i] / fused[i];
                    let dev = (ratio / expected_ratio - 1.0).abs();
                    worst_spread = worst_spread.max(dev);
                    assert!(
                        dev <= 0.02,
                        "ratio {ratio} strays {dev:.3} from {expected_ratio} at x = {}",
                        xs[i]
                    );
                }
            }
        }
        format!(
            "20 pairs at n = {n}: worst dominance gap = {worst_dom:.2e} (tol {dominance_tol:.2e}), worst ratio deviation = {worst_spread:.3}"
        )
    });
}

#[test]
fn criterion_5_coincident_mode_equivalence() {
    criterion("criterion 5: coincident-mode equivalence", || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let frame = frame10();
        let n = 400usize;
        let mut worst_a: f64 = 0.0;
        let mut worst_k: f64 = 0.0;
        for _ in 0..10 {
            // Mode on a shared grid abscissa so the product peak is sampled.
            let idx = rng.gen_range(1024..3073usize);
            let peak: f64 = frame.x_at(idx);
            let hw1 = rng.gen_range(1.5..(peak.min(10.0 - peak) - 0.05));
            let hw2 = rng.gen_range(1.5..(peak.min(10.0 - peak) - 0.05));
            let p1 = random_unimodal(&mut rng, frame, peak, hw1);
            let p2 = random_unimodal(&mut rng, frame, peak, hw2);
            let report = combine(&p1, &p2).unwrap();
            let a = report.stats.agreement.unwrap().agreement_a;
            worst_a = worst_a.max((a - 1.0).abs());
            assert!((a - 1.0).abs() <= 1e-4, "a = {a}");
            assert!(
                (report.stats.norm - 1.0).abs() <= 1e-9,
                "norm = {}",
                report.stats.norm
            );
            let m1 = ConsonantView::new(&p1).unwrap().discretize(n).unwrap();
            let m2 = ConsonantView::new(&p2).unwrap().discretize(n).unwrap();
            let (_, k_n) = dempster_combine(&m1, &m2).unwrap();
            worst_k = worst_k.max(k_n);
            assert!(k_n <= 2.0 / n as f64, "k_n = {k_n}");
        }
        format!("10 shared-mode pairs: worst |a - 1| = {worst_a:.2e}, worst k_n = {worst_k:.2e}")
    });
}

#[test]
fn criterion_6_triangular_closed_form() {
    criterion("criterion 6: triangular closed form", || {
        // Frozen by exact piecewise-polynomial integration:
        // a = 1/2 + 3/8, norm = (3/4)^2, peak of (8-x)(x-2)/16 at x = 5.
        let expected_a = 0.875;
        let expected_norm = 0.5625;
        let expected_mle = 5.0;
        let p1 = PossFn::triangular(frame10(), 4.0, 4.0).unwrap();
        let p2 = PossFn::triangular(frame10(), 6.0, 4.0).unwrap();
        let report = combine(&p1, &p2).unwrap();
        let a = report.stats.agreement.unwrap().agreement_a;
        assert!((a - expected_a).abs() <= 1e-4, "a = {a}");
        assert!(
            (report.stats.norm - expected_norm).abs() <= 1e-4,
            "norm = {}",
            report.stats.norm
        );
        assert!(
            (report.stats.mle_x - expected_mle).abs() <= 1e-3,
            "mle = {}",
            report.stats.mle_x
        );
        format!(
            "a = {a:.6} (want 0.875), norm = {:.6} (want 0.5625), mle = {:.4}",
            report.stats.norm, report.stats.mle_x
        )
    });
}

#[test]
fn criterion_8_rule_algebra() {
    criterion("criterion 8: rule algebra", || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let frame = frame10();
        let vacuous =
            PossFn::from_likelihood(&LikelihoodCurve::from_fn(frame, |_| 1.0).unwrap()).unwrap();
        let mut worst_nested: f64 = 0.0;
        for _ in 0..50 {
            let sources: Vec<PossFn<f64>> = (0..3)
                .map(|_| {
                    let peak = rng.gen_range(3.5..6.5);
                    let hw = rng.gen_range(2.0..3.4);
                    random_unimodal(&mut rng, frame, peak, hw)
                })
                .collect();
            let (p, q, r) = (&sources[0], &sources[1], &sources[2]);
            let base = chain_combine([p, q, r]).unwrap();
            // Commutativity/associativity of the rule: any input order gives
            // bit-identical fused samples and norm.
            for perm in [
                vec![p, r, q],
                vec![q, p, r],
                vec![q, r, p],
                vec![r, p, q],
                vec![r, q, p],
            ] {
                let other = chain_combine(perm).unwrap();
                assert_eq!(base.fused.values(), other.fused.values());
                assert_eq!(base.stats.norm, other.stats.norm);
                assert_eq!(base.stats.mle_x, other.stats.mle_x);
            }
            // Regrouping through an intermediate normalized product agrees
            // to floating-point reassociation error.
            let nested = combine(&combine(p, q).unwrap().fused, r).unwrap();
            for (a, b) in base.fused.values().iter().zip(nested.fused.values()) {
                let d = (a - b).abs();
                worst_nested = worst_nested.max(d);
                assert!(d <= 1e-12, "nested regrouping drifted by {d}");
            }
            // Vacuous identity: exact pass-through.
            let with_vac = chain_combine([p, &vacuous, q]).unwrap();
            let without = chain_combine([p, q]).unwrap();
            assert_eq!(with_vac.fused.values(), without.fused.values());
            let ident = combine(p, &vacuous).unwrap();
            assert_eq!(ident.fused.values(), p.values());
            assert_eq!(ident.stats.norm, 1.0);
            assert_eq!(ident.stats.agreement.unwrap().agreement_a, 1.0);
        }
        format!("50 triples: permutations bit-identical, nested regrouping within {worst_nested:.1e}")
    });
}
