//! The multiplicative combination rule and its conflict accounting.
//!
//! Independent evidence is pooled by multiplying possibility functions
//! pointwise and renormalizing by the product maximum (`norm`). The
//! agreement `a` between two sources — one minus Dempster's contradiction
//! factor — is computed directly from the curves: as a Stieltjes integral
//! between the two modes for unimodal pairs, and as an exact two-term sum
//! when a simple-support function is involved. `1 - norm/a` is the support
//! for "the true state differs from the maximum-likelihood estimate" and
//! scores how much the fused estimate can be trusted.

use crate::consonant::ConsonantView;
use crate::error::{Error, Result};
use crate::numerics::{grid_breakpoints, stieltjes_over, SampledCurve};
use crate::possibility::{PossFn, Shape};
use crate::real::Real;
use crate::tolerances;

/// Conflict figures for a combination step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgreementStats<R: Real> {
    /// `a = 1 - k`, in (0, 1].
    pub agreement_a: R,
    /// Dempster's contradiction factor `k = 1 - a`.
    pub contradiction_k: R,
    /// `1 - norm/a`: support for the event that the true state differs
    /// from the maximum-likelihood estimate.
    pub support_against_mle: R,
}

/// Norm, estimate and conflict figures of one combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionStats<R: Real> {
    /// Maximum of the raw pointwise product; the rule's normalizer.
    pub norm: R,
    /// An argmax of the fused function.
    pub mle_x: R,
    /// Set when the maximum is attained (within 1e-9) at points separated
    /// by more than one grid step.
    pub mle_tied: bool,
    /// `None` when a shape without nested focal structure makes the
    /// agreement underivable; fusion itself still goes through.
    pub agreement: Option<AgreementStats<R>>,
}

/// Result of combining evidence: the fused possibility function plus its
/// conflict accounting. For chains, `pairwise` holds the figures for each
/// consecutive input pair; the overall agreement is only derivable for one
/// or two sources.
#[derive(Debug, Clone)]
pub struct FusionReport<R: Real> {
    pub fused: PossFn<R>,
    pub stats: FusionStats<R>,
    pub pairwise: Vec<FusionStats<R>>,
}

/// Combine two possibility functions: fused = (p1 · p2) / norm, with the
/// agreement computed from the curves. Disjoint supports are total
/// conflict and an error, mirroring Dempster's rule at k = 1.
pub fn combine<R: Real>(p1: &PossFn<R>, p2: &PossFn<R>) -> Result<FusionReport<R>> {
    chain_combine([p1, p2])
}

/// Agreement `a = 1 - k` between two sources, computed without building any
/// mass function.
///
/// For unimodal pairs both integral forms
/// `a = poss2(x1) + ∫ poss1 d(poss2)` and `a = poss1(x2) - ∫ poss2 d(poss1)`
/// (modes ordered `x1 <= x2`) are evaluated as midpoint Stieltjes sums and
/// must agree within [`tolerances::DUAL_FORM_AGREEMENT`]; their mean is
/// returned. Pairs involving a simple-support function go through the exact
/// two-term sum instead, which handles the step's jump mass without any
/// derivative. A vacuous input agrees with anything: `a = 1`.
pub fn agreement<R: Real>(p1: &PossFn<R>, p2: &PossFn<R>) -> Result<R> {
    if p1.frame() != p2.frame() {
        return Err(Error::InvalidArgument(
            "agreement needs a shared frame and grid".into(),
        ));
    }
    if p1.is_vacuous() || p2.is_vacuous() {
        // The vacuous source has all mass on the frame: nothing conflicts.
        return Ok(R::one());
    }
    match (p1.shape(), p2.shape()) {
        (Shape::General, _) => Err(Error::UnsupportedShape {
            shape: Shape::General,
            context: "agreement",
        }),
        (_, Shape::General) => Err(Error::UnsupportedShape {
            shape: Shape::General,
            context: "agreement",
        }),
        (Shape::SimpleSupport, Shape::SimpleSupport) => simple_simple_agreement(p1, p2),
        (Shape::Unimodal, Shape::SimpleSupport) => agreement_vs_simple_support(p1, p2),
        (Shape::SimpleSupport, Shape::Unimodal) => agreement_vs_simple_support(p2, p1),
        (Shape::Unimodal, Shape::Unimodal) => unimodal_agreement(p1, p2),
    }
}

/// Agreement between a unimodal source and a simple-support witness with
/// plateau `[v1, v2]` and residual `p_w`:
/// `a = (1 - p_w) · pl([v1, v2]) + p_w`, the two-term focal sum. Equals 1
/// exactly when the plateau reaches the unimodal mode.
pub fn agreement_vs_simple_support<R: Real>(
    pr: &PossFn<R>,
    witness: &PossFn<R>,
) -> Result<R> {
    if pr.frame() != witness.frame() {
        return Err(Error::InvalidArgument(
            "agreement needs a shared frame and grid".into(),
        ));
    }
    if pr.shape() != Shape::Unimodal || witness.shape() != Shape::SimpleSupport {
        return Err(Error::InvalidArgument(format!(
            "expected a unimodal source and a simple-support witness, got {:?} and {:?}",
            pr.shape(),
            witness.shape()
        )));
    }
    let (plateau, residual) = witness
        .simple_support_params()
        .expect("simple-support shape carries its parameters");
    let pl = ConsonantView::new(pr)?.plausibility(&plateau)?;
    if pl == R::one() {
        // Every focal of the witness meets the source: the sum collapses to
        // the witness's total mass.
        return Ok(R::one());
    }
    Ok((R::one() - residual) * pl + residual)
}

fn simple_simple_agreement<R: Real>(p1: &PossFn<R>, p2: &PossFn<R>) -> Result<R> {
    let (i1, c1) = p1.simple_support_params().expect("simple support");
    let (i2, c2) = p2.simple_support_params().expect("simple support");
    let pl2_of_i1 = if i1.intersects(&i2) { R::one() } else { c2 };
    let pl1_of_i2 = if i1.intersects(&i2) { R::one() } else { c1 };
    let a12 = (R::one() - c1) * pl2_of_i1 + c1;
    let a21 = (R::one() - c2) * pl1_of_i2 + c2;
    if (a12 - a21).abs() > R::of(tolerances::DISCRETE_IDENTITY) {
        return Err(Error::SelfCheck(format!(
            "two-focal agreement forms disagree: {a12} vs {a21}"
        )));
    }
    Ok((a12 + a21) * R::of(0.5))
}

fn unimodal_agreement<R: Real>(p1: &PossFn<R>, p2: &PossFn<R>) -> Result<R> {
    // Order the operands so the integration runs mode-to-mode left to right.
    let (lo, hi) = if p1.mode_x() <= p2.mode_x() {
        (p1, p2)
    } else {
        (p2, p1)
    };
    let (x1, x2) = (lo.mode_x(), hi.mode_x());
    let cuts = grid_breakpoints(lo.frame(), x1, x2);
    let rising = stieltjes_over(|x| lo.eval_raw(x), |x| hi.eval_raw(x), &cuts);
    let falling = stieltjes_over(|x| hi.eval_raw(x), |x| lo.eval_raw(x), &cuts);
    let form_a = hi.eval_raw(x1) + rising;
    let form_b = lo.eval_raw(x2) - falling;
    if (form_a - form_b).abs() > R::of(tolerances::DUAL_FORM_AGREEMENT) {
        return Err(Error::SelfCheck(format!(
            "agreement integral forms disagree: {form_a} vs {form_b}; grid too coarse"
        )));
    }
    let mean = (form_a + form_b) * R::of(0.5);
    Ok(mean.max(R::zero()).min(R::one()))
}

/// Combine any number of sources: fused = normalized pointwise product.
///
/// The product is accumulated per grid point over sorted factors, so any
/// permutation of the inputs produces bit-identical fused samples.
/// Vacuous inputs are identities and are dropped before normalization. If
/// the running product collapses below [`tolerances::TOTAL_CONFLICT`], the
/// error names the first offending prefix.
pub fn chain_combine<'a, R, I>(inputs: I) -> Result<FusionReport<R>>
where
    R: Real,
    I: IntoIterator<Item = &'a PossFn<R>>,
{
    let inputs: Vec<&PossFn<R>> = inputs.into_iter().collect();
    let first = *inputs
        .first()
        .ok_or_else(|| Error::InvalidArgument("need at least one source".into()))?;
    for p in &inputs {
        if p.frame() != first.frame() {
            return Err(Error::InvalidArgument(
                "all sources must share a frame and grid".into(),
            ));
        }
    }

    check_prefixes(&inputs)?;

    let survivors: Vec<&PossFn<R>> = inputs.iter().copied().filter(|p| !p.is_vacuous()).collect();
    let (fused, norm, mle_x, mle_tied) = match survivors.len() {
        0 => {
            let p = inputs[0];
            (p.clone(), R::one(), p.mode_x(), tie_detect(p.values()))
        }
        1 => {
            // A lone source passes through untouched; its represented
            // maximum is already 1.
            let p = survivors[0];
            (p.clone(), R::one(), p.mode_x(), tie_detect(p.values()))
        }
        _ => {
            let raw = canonical_product(&survivors);
            let frame = *first.frame();
            let (norm_idx, norm) = max_index(&raw);
            if norm <= R::of(tolerances::TOTAL_CONFLICT) {
                return Err(Error::TotalConflict(format!(
                    "product maximum {norm} is indistinguishable from zero"
                )));
            }
            let mle_x = frame.x_at(norm_idx);
            let mle_tied = tie_detect(&raw);
            let values: Vec<R> = raw.iter().map(|v| *v / norm).collect();
            let fused = PossFn::from_samples(SampledCurve::new(frame, values)?)?;
            (fused, norm, mle_x, mle_tied)
        }
    };

    let pairwise: Vec<FusionStats<R>> = inputs
        .windows(2)
        .map(|w| pair_stats(w[0], w[1]))
        .collect::<Result<_>>()?;

    let overall_agreement = match inputs.len() {
        1 => Some(AgreementStats {
            agreement_a: R::one(),
            contradiction_k: R::zero(),
            support_against_mle: R::zero(),
        }),
        2 => pairwise[0]
            .agreement
            .map(|pair| agreement_stats(pair.agreement_a, norm)),
        _ => None,
    };

    Ok(FusionReport {
        fused,
        stats: FusionStats {
            norm,
            mle_x,
            mle_tied,
            agreement: overall_agreement,
        },
        pairwise,
    })
}

fn agreement_stats<R: Real>(a: R, norm: R) -> AgreementStats<R> {
    AgreementStats {
        agreement_a: a,
        contradiction_k: R::one() - a,
        support_against_mle: R::one() - norm / a,
    }
}

/// Norm/estimate/agreement for one input pair.
fn pair_stats<R: Real>(p: &PossFn<R>, q: &PossFn<R>) -> Result<FusionStats<R>> {
    let (norm, mle_x, mle_tied) = if p.is_vacuous() || q.is_vacuous() {
        let lead = if p.is_vacuous() { q } else { p };
        (R::one(), lead.mode_x(), tie_detect(lead.values()))
    } else {
        let raw = canonical_product(&[p, q]);
        let (idx, norm) = max_index(&raw);
        (norm, p.frame().x_at(idx), tie_detect(&raw))
    };
    let agreement = match agreement(p, q) {
        Ok(a) => Some(agreement_stats(a, norm)),
        Err(Error::UnsupportedShape { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(FusionStats {
        norm,
        mle_x,
        mle_tied,
        agreement,
    })
}

/// Error on the first prefix whose running product maximum collapses.
fn check_prefixes<R: Real>(inputs: &[&PossFn<R>]) -> Result<()> {
    let mut running = inputs[0].values().to_vec();
    let conflict = R::of(tolerances::TOTAL_CONFLICT);
    for (i, p) in inputs.iter().enumerate() {
        if i > 0 {
            for (r, v) in running.iter_mut().zip(p.values()) {
                *r = *r * *v;
            }
        }
        let max = running.iter().copied().fold(R::zero(), R::max);
        if max <= conflict {
            return Err(Error::TotalConflict(format!(
                "running product maximum fell to {max} after source {} of {}",
                i + 1,
                inputs.len()
            )));
        }
    }
    Ok(())
}

/// Pointwise product with per-sample factors sorted before multiplying, so
/// the result is independent of input order.
fn canonical_product<R: Real>(inputs: &[&PossFn<R>]) -> Vec<R> {
    let m = inputs[0].values().len();
    let mut factors: Vec<R> = Vec::with_capacity(inputs.len());
    let mut raw = Vec::with_capacity(m);
    for i in 0..m {
        factors.clear();
        factors.extend(inputs.iter().map(|p| p.values()[i]));
        factors.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
        raw.push(factors.iter().fold(R::one(), |acc, f| acc * *f));
    }
    raw
}

fn max_index<R: Real>(values: &[R]) -> (usize, R) {
    let mut best = 0usize;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    (best, values[best])
}

/// Tie detection over grid samples: true when values within 1e-9 of the
/// maximum occur more than one grid step apart.
fn tie_detect<R: Real>(values: &[R]) -> bool {
    let (_, max) = max_index(values);
    let tol = R::of(tolerances::TIE_DETECT);
    let mut first = None;
    let mut last = 0usize;
    for (i, v) in values.iter().enumerate() {
        if *v >= max - tol {
            if first.is_none() {
                first = Some(i);
            }
            last = i;
        }
    }
    match first {
        Some(f) => last - f > 1,
        None => false,
    }
}
