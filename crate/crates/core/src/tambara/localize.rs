//! Multiplicative subfunctors and objectwise rings of fractions.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::axioms::{describe, select, AxiomOptions};
use super::pointwise::{self, PointwiseFamily};
use super::transform::Transformed;
use super::TambaraFunctor;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::gset::{GMap, GSet, Universe};
use crate::report::Report;
use crate::ring::{Localization, TabRing};

/// A family of subsets `S(X) ⊆ T(X)` meant to be multiplicative submonoids closed under
/// restriction and norm.
pub trait MultiplicativeFamily<T: TambaraFunctor> {
    fn contains(&self, t: &T, x: &GSet, a: &T::Elem) -> bool;
    fn members(&self, t: &T, x: &GSet, cap: usize) -> Option<Vec<T::Elem>>;
    fn sample_member(&self, t: &T, x: &GSet, rng: &mut ChaCha8Rng) -> T::Elem;
    /// `Some(M)` when `S(X)` is exactly the invariant functions with values in `M`.
    fn pointwise_values(&self) -> Option<&[usize]>;
}

/// Functions with every value in a fixed submonoid `M` of the coefficient ring.
#[derive(Clone, Debug)]
pub struct PointwiseSubmonoid {
    values: Vec<usize>,
}

impl PointwiseSubmonoid {
    pub fn new(ring: &TabRing, values: &[usize]) -> Result<PointwiseSubmonoid> {
        if let Some(&v) = values.iter().find(|&&v| v >= ring.size()) {
            return Err(Error::OutOfRange { index: v, size: ring.size() });
        }
        let mut v = values.to_vec();
        v.sort_unstable();
        v.dedup();
        Ok(PointwiseSubmonoid { values: v })
    }

    /// `{1, a, a², ...}` in `ring`.
    pub fn powers(ring: &TabRing, a: usize) -> Result<PointwiseSubmonoid> {
        if a >= ring.size() {
            return Err(Error::OutOfRange { index: a, size: ring.size() });
        }
        let mut values = vec![ring.one()];
        let mut p = a;
        while !values.contains(&p) {
            values.push(p);
            p = ring.mul(p, a);
        }
        PointwiseSubmonoid::new(ring, &values)
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

impl<T: PointwiseFamily> MultiplicativeFamily<T> for PointwiseSubmonoid {
    fn contains(&self, _t: &T, _x: &GSet, a: &Vec<usize>) -> bool {
        a.iter().all(|v| self.values.binary_search(v).is_ok())
    }
    fn members(&self, t: &T, x: &GSet, cap: usize) -> Option<Vec<Vec<usize>>> {
        pointwise::enumerate_from(&self.values, &t.carrier(x), cap)
    }
    fn sample_member(&self, t: &T, x: &GSet, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let values = if self.values.is_empty() { vec![t.coefficients().one()] } else { self.values.clone() };
        pointwise::sample_from(&values, &t.carrier(x), rng)
    }
    fn pointwise_values(&self) -> Option<&[usize]> {
        Some(&self.values)
    }
}

/// `S∘U`: the family `X ↦ S(U∘X)` inside `T∘U`.
#[derive(Clone, Debug)]
pub struct TransformedSubfunctor<S> {
    pub inner: S,
}

impl<T: TambaraFunctor, S: MultiplicativeFamily<T>> MultiplicativeFamily<Transformed<T>> for TransformedSubfunctor<S> {
    fn contains(&self, t: &Transformed<T>, x: &GSet, a: &T::Elem) -> bool {
        self.inner.contains(t.inner(), &t.composite(x).hset, a)
    }
    fn members(&self, t: &Transformed<T>, x: &GSet, cap: usize) -> Option<Vec<T::Elem>> {
        self.inner.members(t.inner(), &t.composite(x).hset, cap)
    }
    fn sample_member(&self, t: &Transformed<T>, x: &GSet, rng: &mut ChaCha8Rng) -> T::Elem {
        self.inner.sample_member(t.inner(), &t.composite(x).hset, rng)
    }
    fn pointwise_values(&self) -> Option<&[usize]> {
        self.inner.pointwise_values()
    }
}

const ONE: &str = "subfunctor_contains_one";
const MUL: &str = "subfunctor_multiplicative";
const RESTRICT: &str = "subfunctor_restriction";
const NORM: &str = "subfunctor_norm";

fn probe_members<T: TambaraFunctor, S: MultiplicativeFamily<T>>(
    t: &T,
    s: &S,
    x: &GSet,
    opts: &AxiomOptions,
    rng: &mut ChaCha8Rng,
) -> Vec<T::Elem> {
    if let Some(all) = s.members(t, x, opts.enumerate_limit) {
        return all;
    }
    let mut out: Vec<T::Elem> = (0..opts.samples).map(|_| s.sample_member(t, x, rng)).collect();
    out.push(t.one(x));
    out.sort();
    out.dedup();
    out
}

/// Checks that `S` is objectwise a submonoid containing `1` and closed under restriction and norm.
pub fn check_subfunctor<T: TambaraFunctor, S: MultiplicativeFamily<T>>(
    t: &T,
    s: &S,
    universe: &Universe,
    opts: &AxiomOptions,
) -> Report {
    let mut report = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let members: Vec<Vec<T::Elem>> = universe
        .objects
        .iter()
        .map(|x| probe_members(t, s, x, opts, &mut rng))
        .collect();
    for (x, mem) in universe.objects.iter().zip(&members) {
        let one = s.contains(t, x, &t.one(x));
        report.record(ONE, if one { Ok(()) } else { Err(format!("1 over {} points", x.size())) });
        for a in mem {
            let ok = mem.iter().all(|b| s.contains(t, x, &t.mul(x, a, b)));
            report.record(MUL, if ok { Ok(()) } else { Err(format!("a = {a:?}")) });
        }
    }
    let pos = |x: &GSet| universe.objects.iter().position(|o| o == x).expect("universe object");
    for k in select(universe.maps.len(), opts.max_cases, &mut rng) {
        let f = &universe.maps[k];
        for b in &members[pos(f.target())] {
            let ok = s.contains(t, f.source(), &t.restrict(f, b));
            report.record(RESTRICT, if ok { Ok(()) } else { Err(format!("f = {}, b = {b:?}", describe(f))) });
        }
        for a in &members[pos(f.source())] {
            let ok = s.contains(t, f.target(), &t.norm(f, a));
            report.record(NORM, if ok { Ok(()) } else { Err(format!("f = {}, a = {a:?}", describe(f))) });
        }
    }
    report
}

pub fn validate_subfunctor<T: TambaraFunctor, S: MultiplicativeFamily<T>>(
    t: &T,
    s: &S,
    universe: &Universe,
    opts: &AxiomOptions,
) -> Result<()> {
    let report = check_subfunctor(t, s, universe, opts);
    for name in [ONE, MUL, RESTRICT, NORM] {
        if let Some(c) = report.get(name).filter(|c| !c.passed) {
            return Err(Error::NotASubfunctor {
                condition: name,
                witness: c.witness.clone().unwrap_or_default(),
            });
        }
    }
    Ok(())
}

/// `S⁻¹T` for a pointwise functor `T` and a pointwise submonoid family `S`.
///
/// An element is a function on the carrier with values in `M⁻¹R`. Restriction and norm act on
/// numerator and denominator separately; transfer clears denominators along each fiber,
/// `f_+(t/s) = f_+(t·r) / f_•(s)` with `r(x)` the product of `s` over the rest of the fiber of `x`.
#[derive(Clone, Debug)]
pub struct Localized<T> {
    inner: T,
    loc: Arc<Localization>,
}

impl<T: PointwiseFamily> Localized<T> {
    pub fn new<S: MultiplicativeFamily<T>>(inner: T, s: &S) -> Result<Localized<T>> {
        let values = s.pointwise_values().ok_or_else(|| {
            Error::UnsupportedFunctorShape("localization needs a pointwise submonoid family".into())
        })?;
        let loc = inner.coefficients().localization(values)?;
        Ok(Localized {
            inner,
            loc: Arc::new(loc),
        })
    }

    pub fn inner(&self) -> &T {
        &self.inner
    }

    pub fn localization(&self) -> &Localization {
        &self.loc
    }

    /// `t ↦ t/1`
    pub fn canonical(&self, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&v| self.loc.canonical(v)).collect()
    }

    fn split(&self, a: &[usize]) -> (Vec<usize>, Vec<usize>) {
        a.iter().map(|&c| self.loc.reps[c]).unzip()
    }

    fn frac(&self, num: &[usize], den: &[usize]) -> Vec<usize> {
        num.iter()
            .zip(den)
            .map(|(&t, &s)| self.loc.fraction(t, s).expect("denominator in the monoid"))
            .collect()
    }
}

impl<T: PointwiseFamily> TambaraFunctor for Localized<T> {
    type Elem = Vec<usize>;

    fn group(&self) -> &Arc<Group> {
        self.inner.group()
    }

    fn has_negation(&self) -> bool {
        true
    }

    fn elements(&self, x: &GSet, cap: usize) -> Option<Vec<Vec<usize>>> {
        pointwise::enumerate(&self.loc.ring, &self.inner.carrier(x), cap)
    }

    fn sample(&self, x: &GSet, rng: &mut ChaCha8Rng) -> Vec<usize> {
        pointwise::sample(&self.loc.ring, &self.inner.carrier(x), rng)
    }

    fn zero(&self, x: &GSet) -> Vec<usize> {
        vec![self.loc.ring.zero(); self.inner.carrier(x).size()]
    }

    fn one(&self, x: &GSet) -> Vec<usize> {
        vec![self.loc.ring.one(); self.inner.carrier(x).size()]
    }

    fn add(&self, _x: &GSet, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        pointwise::zip(a, b, |p, q| self.loc.ring.add(p, q))
    }

    fn mul(&self, _x: &GSet, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        pointwise::zip(a, b, |p, q| self.loc.ring.mul(p, q))
    }

    fn neg(&self, _x: &GSet, a: &Vec<usize>) -> Option<Vec<usize>> {
        Some(a.iter().map(|&p| self.loc.ring.neg(p)).collect())
    }

    fn restrict(&self, f: &GMap, b: &Vec<usize>) -> Vec<usize> {
        pointwise::restrict(&self.inner.carrier_map(f), b)
    }

    fn transfer(&self, f: &GMap, a: &Vec<usize>) -> Vec<usize> {
        let fc = self.inner.carrier_map(f);
        let ring = self.inner.coefficients();
        let (t, s) = self.split(a);
        let fibers = fc.fibers();
        let cofactor: Vec<usize> = (0..t.len())
            .map(|x| ring.product(fibers[fc.apply(x)].iter().filter(|&&x2| x2 != x).map(|&x2| s[x2])))
            .collect();
        let num = pointwise::transfer(ring, &fc, &pointwise::zip(&t, &cofactor, |p, q| ring.mul(p, q)));
        let den = pointwise::norm(ring, &fc, &s);
        self.frac(&num, &den)
    }

    fn norm(&self, f: &GMap, a: &Vec<usize>) -> Vec<usize> {
        let fc = self.inner.carrier_map(f);
        let ring = self.inner.coefficients();
        let (t, s) = self.split(a);
        self.frac(&pointwise::norm(ring, &fc, &t), &pointwise::norm(ring, &fc, &s))
    }
}

impl<T: PointwiseFamily> PointwiseFamily for Localized<T> {
    fn coefficients(&self) -> &TabRing {
        &self.loc.ring
    }

    fn carrier(&self, x: &GSet) -> GSet {
        self.inner.carrier(x)
    }

    fn carrier_map(&self, f: &GMap) -> GMap {
        self.inner.carrier_map(f)
    }
}
