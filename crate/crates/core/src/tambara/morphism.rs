use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::axioms::{describe, probe_elements, select, AxiomOptions};
use super::pointwise::PointwiseFamily;
use super::transform::Transformed;
use super::TambaraFunctor;
use crate::biset::Biset;
use crate::error::{Error, Result};
use crate::gset::{GSet, Universe};
use crate::report::Report;

type ElemOf<T> = <T as TambaraFunctor>::Elem;

/// A family of maps `T(X) -> T'(X)` meant to commute with all structure maps.
pub trait TambaraMorphism {
    type Source: TambaraFunctor;
    type Target: TambaraFunctor;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn apply(&self, x: &GSet, a: &ElemOf<Self::Source>) -> ElemOf<Self::Target>;
}

/// A ring homomorphism of coefficients applied pointwise between functors on the same carriers.
#[derive(Clone, Debug)]
pub struct PointwiseRingHom<S, T> {
    source: S,
    target: T,
    map: Vec<usize>,
}

impl<S: PointwiseFamily, T: PointwiseFamily> PointwiseRingHom<S, T> {
    pub fn new(source: S, target: T, map: Vec<usize>) -> Result<PointwiseRingHom<S, T>> {
        let (r, r2) = (source.coefficients(), target.coefficients());
        if source.group() != target.group() {
            return Err(Error::GroupMismatch);
        }
        if map.len() != r.size() {
            return Err(Error::ShapeMismatch("one image per coefficient".into()));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= r2.size()) {
            return Err(Error::OutOfRange { index: v, size: r2.size() });
        }
        if map[r.one()] != r2.one() {
            return Err(Error::NotARing {
                law: "homomorphism preserves one",
                witness: vec![r.one()],
            });
        }
        for a in 0..r.size() {
            for b in 0..r.size() {
                if map[r.add(a, b)] != r2.add(map[a], map[b]) || map[r.mul(a, b)] != r2.mul(map[a], map[b]) {
                    return Err(Error::NotARing {
                        law: "homomorphism",
                        witness: vec![a, b],
                    });
                }
            }
        }
        Ok(PointwiseRingHom { source, target, map })
    }
}

impl<S: PointwiseFamily, T: PointwiseFamily> TambaraMorphism for PointwiseRingHom<S, T> {
    type Source = S;
    type Target = T;

    fn source(&self) -> &S {
        &self.source
    }

    fn target(&self) -> &T {
        &self.target
    }

    fn apply(&self, _x: &GSet, a: &Vec<usize>) -> Vec<usize> {
        a.iter().map(|&v| self.map[v]).collect()
    }
}

/// `φ∘U: S∘U -> T∘U`, with components `φ_{U∘X}`.
pub struct TransformedMorphism<M: TambaraMorphism> {
    inner: M,
    source: Transformed<M::Source>,
    target: Transformed<M::Target>,
}

impl<M: TambaraMorphism> TransformedMorphism<M>
where
    M::Source: Clone,
    M::Target: Clone,
{
    pub fn new(inner: M, biset: &Biset) -> Result<TransformedMorphism<M>> {
        let source = Transformed::new(inner.source().clone(), biset)?;
        let target = Transformed::new(inner.target().clone(), biset)?;
        Ok(TransformedMorphism { inner, source, target })
    }
}

impl<M: TambaraMorphism> TambaraMorphism for TransformedMorphism<M> {
    type Source = Transformed<M::Source>;
    type Target = Transformed<M::Target>;

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &Self::Target {
        &self.target
    }

    fn apply(&self, x: &GSet, a: &ElemOf<M::Source>) -> ElemOf<M::Target> {
        self.inner.apply(&self.source.composite(x).hset, a)
    }
}

/// Checks that `φ` is objectwise a ring map and natural for restriction, transfer and norm.
pub fn check_morphism<M: TambaraMorphism>(phi: &M, universe: &Universe, opts: &AxiomOptions) -> Report {
    let mut report = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (s, t) = (phi.source(), phi.target());
    let probes: Vec<_> = universe
        .objects
        .iter()
        .map(|x| probe_elements(s, x, opts, &mut rng))
        .collect();
    for (x, px) in universe.objects.iter().zip(&probes) {
        let mut ok = phi.apply(x, &s.zero(x)) == t.zero(x) && phi.apply(x, &s.one(x)) == t.one(x);
        ok &= px.iter().all(|a| {
            px.iter().all(|b| {
                phi.apply(x, &s.add(x, a, b)) == t.add(x, &phi.apply(x, a), &phi.apply(x, b))
                    && phi.apply(x, &s.mul(x, a, b)) == t.mul(x, &phi.apply(x, a), &phi.apply(x, b))
            })
        });
        report.record("morphism_ring_hom", if ok { Ok(()) } else { Err(format!("over {} points", x.size())) });
    }
    let pos = |x: &GSet| universe.objects.iter().position(|o| o == x).expect("universe object");
    for k in select(universe.maps.len(), opts.max_cases, &mut rng) {
        let f = &universe.maps[k];
        let (x, y) = (f.source(), f.target());
        let w = || describe(f);
        let ok = probes[pos(y)]
            .iter()
            .all(|b| phi.apply(x, &s.restrict(f, b)) == t.restrict(f, &phi.apply(y, b)));
        report.record("morphism_restriction", if ok { Ok(()) } else { Err(w()) });
        let ok = probes[pos(x)]
            .iter()
            .all(|a| phi.apply(y, &s.transfer(f, a)) == t.transfer(f, &phi.apply(x, a)));
        report.record("morphism_transfer", if ok { Ok(()) } else { Err(w()) });
        let ok = probes[pos(x)]
            .iter()
            .all(|a| phi.apply(y, &s.norm(f, a)) == t.norm(f, &phi.apply(x, a)));
        report.record("morphism_norm", if ok { Ok(()) } else { Err(w()) });
    }
    report
}
