//! The consonant belief structure induced by a possibility function.
//!
//! Mass lives uniformly on the possibility level α ∈ (0, 1]; the focal
//! element at level α is the α-cut, so the focal family is nested and the
//! plausibility of a singleton reproduces the contour value. Discretization
//! turns the structure into a finite interval-focal mass function for the
//! exact combiner.

use crate::dempster::FiniteMass;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::possibility::{PossFn, Shape};
use crate::real::Real;

/// A possibility function viewed as a consonant mass assignment. Only
/// unimodal and simple-support shapes have the nested α-cut family the
/// construction needs.
#[derive(Debug, Clone, Copy)]
pub struct ConsonantView<'a, R: Real> {
    poss: &'a PossFn<R>,
}

impl<'a, R: Real> ConsonantView<'a, R> {
    pub fn new(poss: &'a PossFn<R>) -> Result<Self> {
        match poss.shape() {
            Shape::Unimodal | Shape::SimpleSupport => Ok(Self { poss }),
            shape => Err(Error::UnsupportedShape {
                shape,
                context: "consonant view",
            }),
        }
    }

    pub fn poss(&self) -> &PossFn<R> {
        self.poss
    }

    /// The focal interval at level `alpha` together with the mass density
    /// there. Mass is uniform in α, so the density is identically 1 and the
    /// total mass `∫ dα` over (0, 1] is 1.
    pub fn mass_density_alpha(&self, alpha: R) -> Result<(Interval<R>, R)> {
        Ok((self.poss.alpha_cut(alpha)?, R::one()))
    }

    /// Plausibility of an interval query: the maximum of the contour over
    /// the query (a focal α-cut meets the query exactly when α is below
    /// that maximum).
    pub fn plausibility(&self, query: &Interval<R>) -> Result<R> {
        let frame = self.poss.frame().as_interval();
        if !query.is_subset_of(&frame) {
            return Err(self.poss.frame().domain_error(if query.lo() < frame.lo() {
                query.lo()
            } else {
                query.hi()
            }));
        }
        Ok(self.poss.max_on(query))
    }

    /// Belief of an interval query: one minus the contour supremum outside
    /// it (the mass forced inside the query).
    pub fn belief(&self, query: &Interval<R>) -> Result<R> {
        let frame = self.poss.frame().as_interval();
        if !query.is_subset_of(&frame) {
            return Err(self.poss.frame().domain_error(if query.lo() < frame.lo() {
                query.lo()
            } else {
                query.hi()
            }));
        }
        Ok(R::one() - self.poss.sup_outside(query))
    }

    /// `n` nested focal intervals at the midpoint levels `(i - 1/2) / n`,
    /// each carrying mass `1/n`; identical cuts are merged with mass
    /// `count/n`. Midpoint levels avoid the degenerate α = 0 cut.
    pub fn discretize(&self, n: usize) -> Result<FiniteMass<R>> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "discretization needs at least one level".into(),
            ));
        }
        let n_r = R::of_usize(n);
        let half = R::of(0.5);
        let mut groups: Vec<(Interval<R>, usize)> = Vec::new();
        for i in 1..=n {
            let alpha = (R::of_usize(i) - half) / n_r;
            let cut = self.poss.alpha_cut(alpha)?;
            match groups.last_mut() {
                Some((prev, count)) if prev == &cut => *count += 1,
                _ => groups.push((cut, 1)),
            }
        }
        let focals = groups
            .into_iter()
            .map(|(iv, count)| (iv, R::of_usize(count) / n_r))
            .collect();
        FiniteMass::new(*self.poss.frame(), focals)
    }
}
