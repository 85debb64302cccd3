//! Ideals of Tambara functors and objectwise quotients.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::axioms::{describe, probe_elements, select, AxiomOptions};
use super::pointwise::{self, PointwiseFamily};
use super::transform::Transformed;
use super::TambaraFunctor;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::gset::{GMap, GSet, Universe};
use crate::report::Report;
use crate::ring::TabRing;

/// A family of subsets `I(X) ⊆ T(X)`, with a canonical representative for every coset.
pub trait IdealFamily<T: TambaraFunctor> {
    fn contains(&self, t: &T, x: &GSet, a: &T::Elem) -> bool;
    /// All of `I(X)`, or `None` beyond `cap`.
    fn members(&self, t: &T, x: &GSet, cap: usize) -> Option<Vec<T::Elem>>;
    fn sample_member(&self, t: &T, x: &GSet, rng: &mut ChaCha8Rng) -> T::Elem;
    /// The representative of `a + I(X)`. Only meaningful once the family is known to be an ideal.
    fn reduce(&self, t: &T, x: &GSet, a: &T::Elem) -> T::Elem;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroIdeal;

impl<T: TambaraFunctor> IdealFamily<T> for ZeroIdeal {
    fn contains(&self, t: &T, x: &GSet, a: &T::Elem) -> bool {
        *a == t.zero(x)
    }
    fn members(&self, t: &T, x: &GSet, _cap: usize) -> Option<Vec<T::Elem>> {
        Some(vec![t.zero(x)])
    }
    fn sample_member(&self, t: &T, x: &GSet, _rng: &mut ChaCha8Rng) -> T::Elem {
        t.zero(x)
    }
    fn reduce(&self, _t: &T, _x: &GSet, a: &T::Elem) -> T::Elem {
        a.clone()
    }
}

/// The improper ideal `I(X) = T(X)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct WholeIdeal;

impl<T: TambaraFunctor> IdealFamily<T> for WholeIdeal {
    fn contains(&self, _t: &T, _x: &GSet, _a: &T::Elem) -> bool {
        true
    }
    fn members(&self, t: &T, x: &GSet, cap: usize) -> Option<Vec<T::Elem>> {
        t.elements(x, cap)
    }
    fn sample_member(&self, t: &T, x: &GSet, rng: &mut ChaCha8Rng) -> T::Elem {
        t.sample(x, rng)
    }
    fn reduce(&self, t: &T, x: &GSet, _a: &T::Elem) -> T::Elem {
        t.zero(x)
    }
}

/// Functions with every value in a fixed subset `J` of the coefficient ring.
#[derive(Clone, Debug)]
pub struct PointwiseIdeal {
    values: Vec<usize>,
    /// `least[r]` is the least element of `r + J`
    least: Vec<usize>,
}

impl PointwiseIdeal {
    /// `values` need not be an ideal of `ring`; [`check_ideal`] reports on it.
    pub fn new(ring: &TabRing, values: &[usize]) -> Result<PointwiseIdeal> {
        if let Some(&v) = values.iter().find(|&&v| v >= ring.size()) {
            return Err(Error::OutOfRange { index: v, size: ring.size() });
        }
        let mut vals = values.to_vec();
        vals.sort_unstable();
        vals.dedup();
        let least = (0..ring.size())
            .map(|r| vals.iter().map(|&j| ring.add(r, j)).min().unwrap_or(r))
            .collect();
        Ok(PointwiseIdeal { values: vals, least })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

impl<T: PointwiseFamily> IdealFamily<T> for PointwiseIdeal {
    fn contains(&self, _t: &T, _x: &GSet, a: &Vec<usize>) -> bool {
        a.iter().all(|v| self.values.binary_search(v).is_ok())
    }
    fn members(&self, t: &T, x: &GSet, cap: usize) -> Option<Vec<Vec<usize>>> {
        pointwise::enumerate_from(&self.values, &t.carrier(x), cap)
    }
    fn sample_member(&self, t: &T, x: &GSet, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let values = if self.values.is_empty() { vec![t.coefficients().zero()] } else { self.values.clone() };
        pointwise::sample_from(&values, &t.carrier(x), rng)
    }
    fn reduce(&self, _t: &T, _x: &GSet, a: &Vec<usize>) -> Vec<usize> {
        a.iter().map(|&v| self.least[v]).collect()
    }
}

/// `I∘U`: the ideal `X ↦ I(U∘X)` of `T∘U`.
#[derive(Clone, Debug)]
pub struct TransformedIdeal<I> {
    pub inner: I,
}

impl<T: TambaraFunctor, I: IdealFamily<T>> IdealFamily<Transformed<T>> for TransformedIdeal<I> {
    fn contains(&self, t: &Transformed<T>, x: &GSet, a: &T::Elem) -> bool {
        self.inner.contains(t.inner(), &t.composite(x).hset, a)
    }
    fn members(&self, t: &Transformed<T>, x: &GSet, cap: usize) -> Option<Vec<T::Elem>> {
        self.inner.members(t.inner(), &t.composite(x).hset, cap)
    }
    fn sample_member(&self, t: &Transformed<T>, x: &GSet, rng: &mut ChaCha8Rng) -> T::Elem {
        self.inner.sample_member(t.inner(), &t.composite(x).hset, rng)
    }
    fn reduce(&self, t: &Transformed<T>, x: &GSet, a: &T::Elem) -> T::Elem {
        self.inner.reduce(t.inner(), &t.composite(x).hset, a)
    }
}

impl<T: TambaraFunctor, I: IdealFamily<T>> IdealFamily<T> for Arc<I> {
    fn contains(&self, t: &T, x: &GSet, a: &T::Elem) -> bool {
        (**self).contains(t, x, a)
    }
    fn members(&self, t: &T, x: &GSet, cap: usize) -> Option<Vec<T::Elem>> {
        (**self).members(t, x, cap)
    }
    fn sample_member(&self, t: &T, x: &GSet, rng: &mut ChaCha8Rng) -> T::Elem {
        (**self).sample_member(t, x, rng)
    }
    fn reduce(&self, t: &T, x: &GSet, a: &T::Elem) -> T::Elem {
        (**self).reduce(t, x, a)
    }
}

const ZERO: &str = "ideal_contains_zero";
const ADD: &str = "ideal_additive";
const ABSORB: &str = "ideal_absorbs";
const RESTRICT: &str = "ideal_restriction";
const TRANSFER: &str = "ideal_transfer";
const NORM: &str = "ideal_norm";

fn probe_members<T: TambaraFunctor, I: IdealFamily<T>>(
    t: &T,
    ideal: &I,
    x: &GSet,
    opts: &AxiomOptions,
    rng: &mut ChaCha8Rng,
) -> Vec<T::Elem> {
    if let Some(all) = ideal.members(t, x, opts.enumerate_limit) {
        return all;
    }
    let mut out: Vec<T::Elem> = (0..opts.samples).map(|_| ideal.sample_member(t, x, rng)).collect();
    out.push(t.zero(x));
    out.sort();
    out.dedup();
    out
}

/// Checks that `I` is objectwise a ring ideal and closed under restriction, transfer, and norm up
/// to the `f_•(0)` correction: `f_•(a) - f_•(0) ∈ I(Y)` for `a ∈ I(X)`.
pub fn check_ideal<T: TambaraFunctor, I: IdealFamily<T>>(
    t: &T,
    ideal: &I,
    universe: &Universe,
    opts: &AxiomOptions,
) -> Report {
    let mut report = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let members: Vec<Vec<T::Elem>> = universe
        .objects
        .iter()
        .map(|x| probe_members(t, ideal, x, opts, &mut rng))
        .collect();
    for (x, mem) in universe.objects.iter().zip(&members) {
        let zero = t.zero(x);
        report.record(ZERO, if ideal.contains(t, x, &zero) { Ok(()) } else { Err(format!("0 over {} points", x.size())) });
        let ring_elems = probe_elements(t, x, opts, &mut rng);
        for a in mem {
            let mut additive = mem.iter().all(|b| ideal.contains(t, x, &t.add(x, a, b)));
            if let Some(n) = t.neg(x, a) {
                additive &= ideal.contains(t, x, &n);
            }
            report.record(ADD, if additive { Ok(()) } else { Err(format!("a = {a:?}")) });
            let absorbs = ring_elems.iter().all(|r| ideal.contains(t, x, &t.mul(x, r, a)));
            report.record(ABSORB, if absorbs { Ok(()) } else { Err(format!("a = {a:?}")) });
        }
    }
    let pos = |x: &GSet| universe.objects.iter().position(|o| o == x).expect("universe object");
    for k in select(universe.maps.len(), opts.max_cases, &mut rng) {
        let f = &universe.maps[k];
        let (x, y) = (f.source(), f.target());
        let (mx, my) = (&members[pos(x)], &members[pos(y)]);
        for b in my {
            let ok = ideal.contains(t, x, &t.restrict(f, b));
            report.record(RESTRICT, if ok { Ok(()) } else { Err(format!("f = {}, b = {b:?}", describe(f))) });
        }
        let norm_zero = t.norm(f, &t.zero(x));
        for a in mx {
            let ok = ideal.contains(t, y, &t.transfer(f, a));
            report.record(TRANSFER, if ok { Ok(()) } else { Err(format!("f = {}, a = {a:?}", describe(f))) });
            let outcome = match t.neg(y, &norm_zero) {
                Some(n) => {
                    let diff = t.add(y, &t.norm(f, a), &n);
                    if ideal.contains(t, y, &diff) {
                        Ok(())
                    } else {
                        Err(format!("f = {}, a = {a:?}", describe(f)))
                    }
                }
                None => Err("the norm condition needs additive inverses".into()),
            };
            report.record(NORM, outcome);
        }
    }
    report
}

/// [`check_ideal`] as a validation: the first violated condition becomes the error.
pub fn validate_ideal<T: TambaraFunctor, I: IdealFamily<T>>(
    t: &T,
    ideal: &I,
    universe: &Universe,
    opts: &AxiomOptions,
) -> Result<()> {
    let report = check_ideal(t, ideal, universe, opts);
    for name in [ZERO, ADD, ABSORB, RESTRICT, TRANSFER, NORM] {
        if let Some(c) = report.get(name).filter(|c| !c.passed) {
            return Err(Error::NotAnIdeal {
                condition: name,
                witness: c.witness.clone().unwrap_or_default(),
            });
        }
    }
    Ok(())
}

/// `T/I`, with each coset stored as its canonical representative.
#[derive(Clone, Debug)]
pub struct Quotient<T, I> {
    inner: T,
    ideal: I,
}

impl<T: TambaraFunctor, I: IdealFamily<T>> Quotient<T, I> {
    /// Assumes `ideal` has been validated; [`Quotient::check_well_defined`] re-examines the
    /// induced maps.
    pub fn new(inner: T, ideal: I) -> Quotient<T, I> {
        Quotient { inner, ideal }
    }

    pub fn inner(&self) -> &T {
        &self.inner
    }

    pub fn ideal(&self) -> &I {
        &self.ideal
    }

    fn reduce(&self, x: &GSet, a: &T::Elem) -> T::Elem {
        self.ideal.reduce(&self.inner, x, a)
    }

    /// Every ring operation and structure map gives the same coset on `a` and on `a + i`.
    pub fn check_well_defined(&self, universe: &Universe, opts: &AxiomOptions) -> Report {
        let mut report = Report::new();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let t = &self.inner;
        let shifted = |x: &GSet, rng: &mut ChaCha8Rng| -> Vec<(T::Elem, T::Elem)> {
            let elems = probe_elements(self, x, opts, rng);
            let mem = probe_members(t, &self.ideal, x, opts, rng);
            elems
                .iter()
                .flat_map(|a| mem.iter().take(opts.samples).map(move |i| (a.clone(), t.add(x, a, i))))
                .collect()
        };
        for x in &universe.objects {
            let pairs = shifted(x, &mut rng);
            for (a, b) in &pairs {
                let ok = self.reduce(x, b) == *a
                    && pairs.iter().take(opts.samples).all(|(c, d)| {
                        self.reduce(x, &t.add(x, b, d)) == self.add(x, a, c)
                            && self.reduce(x, &t.mul(x, b, d)) == self.mul(x, a, c)
                    });
                report.record("quotient_ring_well_defined", if ok { Ok(()) } else { Err(format!("a = {a:?}, a + i = {b:?}")) });
            }
        }
        for k in select(universe.maps.len(), opts.max_cases, &mut rng) {
            let f = &universe.maps[k];
            let (x, y) = (f.source(), f.target());
            for (a, b) in shifted(y, &mut rng) {
                let ok = self.reduce(x, &t.restrict(f, &b)) == self.restrict(f, &a);
                report.record("quotient_restriction_well_defined", if ok { Ok(()) } else { Err(format!("f = {}, b = {b:?}", describe(f))) });
            }
            for (a, b) in shifted(x, &mut rng) {
                let ok = self.reduce(y, &t.transfer(f, &b)) == self.transfer(f, &a);
                report.record("quotient_transfer_well_defined", if ok { Ok(()) } else { Err(format!("f = {}, a = {b:?}", describe(f))) });
                let ok = self.reduce(y, &t.norm(f, &b)) == self.norm(f, &a);
                report.record("quotient_norm_well_defined", if ok { Ok(()) } else { Err(format!("f = {}, a = {b:?}", describe(f))) });
            }
        }
        report
    }
}

impl<T: TambaraFunctor, I: IdealFamily<T>> TambaraFunctor for Quotient<T, I> {
    type Elem = T::Elem;

    fn group(&self) -> &Arc<Group> {
        self.inner.group()
    }

    fn has_negation(&self) -> bool {
        self.inner.has_negation()
    }

    fn elements(&self, x: &GSet, cap: usize) -> Option<Vec<T::Elem>> {
        let all = self.inner.elements(x, cap.saturating_mul(cap))?;
        let mut reps: Vec<T::Elem> = all.iter().map(|a| self.reduce(x, a)).collect();
        reps.sort();
        reps.dedup();
        (reps.len() <= cap).then_some(reps)
    }

    fn sample(&self, x: &GSet, rng: &mut ChaCha8Rng) -> T::Elem {
        self.reduce(x, &self.inner.sample(x, rng))
    }

    fn zero(&self, x: &GSet) -> T::Elem {
        self.reduce(x, &self.inner.zero(x))
    }

    fn one(&self, x: &GSet) -> T::Elem {
        self.reduce(x, &self.inner.one(x))
    }

    fn add(&self, x: &GSet, a: &T::Elem, b: &T::Elem) -> T::Elem {
        self.reduce(x, &self.inner.add(x, a, b))
    }

    fn mul(&self, x: &GSet, a: &T::Elem, b: &T::Elem) -> T::Elem {
        self.reduce(x, &self.inner.mul(x, a, b))
    }

    fn neg(&self, x: &GSet, a: &T::Elem) -> Option<T::Elem> {
        self.inner.neg(x, a).map(|n| self.reduce(x, &n))
    }

    fn restrict(&self, f: &GMap, b: &T::Elem) -> T::Elem {
        self.reduce(f.source(), &self.inner.restrict(f, b))
    }

    fn transfer(&self, f: &GMap, a: &T::Elem) -> T::Elem {
        self.reduce(f.target(), &self.inner.transfer(f, a))
    }

    fn norm(&self, f: &GMap, a: &T::Elem) -> T::Elem {
        self.reduce(f.target(), &self.inner.norm(f, a))
    }
}
