//! The semi-Tambara axiom suite, run over an explicit finite universe.

use std::collections::HashMap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::TambaraFunctor;
use crate::exponential::dependent_product;
use crate::gset::{pullback, GMap, GSet, Universe};
use crate::report::Report;

/// How hard [`check_axioms`] and the related suites look.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomOptions {
    pub seed: u64,
    /// Value rings with at most this many elements are enumerated; larger ones are sampled.
    pub enumerate_limit: usize,
    /// Random elements drawn from a value ring that is not enumerated.
    pub samples: usize,
    /// Upper bound on the map pairs examined per check; larger families are subsampled.
    pub max_cases: usize,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions {
            seed: 0,
            enumerate_limit: 16,
            samples: 6,
            max_cases: 1500,
        }
    }
}

/// Every element of `T(X)` if there are few, otherwise `0`, `1` and a seeded sample.
pub fn probe_elements<T: TambaraFunctor>(
    t: &T,
    x: &GSet,
    opts: &AxiomOptions,
    rng: &mut ChaCha8Rng,
) -> Vec<T::Elem> {
    if let Some(all) = t.elements(x, opts.enumerate_limit) {
        return all;
    }
    let mut out = vec![t.zero(x), t.one(x)];
    out.extend((0..opts.samples).map(|_| t.sample(x, rng)));
    out.sort();
    out.dedup();
    out
}

/// Indices into a family of `total` cases: all of them, or a seeded subset of `max`.
pub(crate) fn select(total: usize, max: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    if total <= max {
        (0..total).collect()
    } else {
        let mut v = index::sample(rng, total, max).into_vec();
        v.sort_unstable();
        v
    }
}

/// Map indices grouped by source and target object.
pub(crate) struct MapIndex<'a> {
    pub universe: &'a Universe,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

impl<'a> MapIndex<'a> {
    pub fn new(universe: &'a Universe) -> MapIndex<'a> {
        let pos: HashMap<&GSet, usize> = universe.objects.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let source = universe.maps.iter().map(|m| pos[m.source()]).collect();
        let target = universe.maps.iter().map(|m| pos[m.target()]).collect();
        MapIndex {
            universe,
            source,
            target,
        }
    }

    /// Pairs `(i, j)` with `maps[i]: X -> Y` and `maps[j]: Y -> Z`.
    pub fn composable(&self) -> Vec<(usize, usize)> {
        let n = self.universe.maps.len();
        let mut by_source: HashMap<usize, Vec<usize>> = HashMap::new();
        for j in 0..n {
            by_source.entry(self.source[j]).or_default().push(j);
        }
        (0..n)
            .flat_map(|i| {
                by_source
                    .get(&self.target[i])
                    .into_iter()
                    .flatten()
                    .map(move |&j| (i, j))
            })
            .collect()
    }

    /// Pairs `(i, j)` of maps with a common target.
    pub fn cospans(&self) -> Vec<(usize, usize)> {
        let n = self.universe.maps.len();
        let mut by_target: HashMap<usize, Vec<usize>> = HashMap::new();
        for j in 0..n {
            by_target.entry(self.target[j]).or_default().push(j);
        }
        (0..n)
            .flat_map(|i| by_target[&self.target[i]].iter().map(move |&j| (i, j)))
            .collect()
    }
}

pub(crate) fn describe(f: &GMap) -> String {
    format!("{:?} ({} -> {})", f.values(), f.source().size(), f.target().size())
}

fn verdict(ok: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

/// Runs every axiom of a (semi-)Tambara functor over `universe` and reports one aggregated
/// entry per axiom.
pub fn check_axioms<T: TambaraFunctor>(t: &T, universe: &Universe, opts: &AxiomOptions) -> Report {
    let mut report = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let idx = MapIndex::new(universe);
    let group = &universe.group;
    let probes: Vec<Vec<T::Elem>> = universe
        .objects
        .iter()
        .map(|x| probe_elements(t, x, opts, &mut rng))
        .collect();

    // value rings
    for (x, elems) in universe.objects.iter().zip(&probes) {
        ring_axioms(t, x, elems, opts, &mut rng, &mut report);
    }
    let empty = GSet::empty(group);
    let single = match t.elements(&empty, 2) {
        Some(all) => all.len() == 1,
        None => false,
    } && t.zero(&empty) == t.one(&empty);
    report.record("empty_value", verdict(single, || "T(∅) is not a single point".into()));

    // additivity along coproduct injections
    let n = universe.objects.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    for k in select(pairs.len(), opts.max_cases, &mut rng) {
        let (i, j) = pairs[k];
        let (x, y) = (&universe.objects[i], &universe.objects[j]);
        if x.size() + y.size() > universe.objects.iter().map(GSet::size).max().unwrap_or(0) {
            continue;
        }
        let cp = x.coproduct(y).expect("same group");
        let s = &cp.set;
        let c_probe = probe_elements(t, s, opts, &mut rng);
        for a in probes[i].iter().take(opts.samples.max(4)) {
            for b in probes[j].iter().take(opts.samples.max(4)) {
                let c = t.add(s, &t.transfer(&cp.left, a), &t.transfer(&cp.right, b));
                let d = t.mul(s, &t.norm(&cp.left, a), &t.norm(&cp.right, b));
                let ok = t.restrict(&cp.left, &c) == *a
                    && t.restrict(&cp.right, &c) == *b
                    && t.restrict(&cp.left, &d) == *a
                    && t.restrict(&cp.right, &d) == *b;
                report.record(
                    "additivity",
                    verdict(ok, || format!("X ⊔ Y with |X| = {}, |Y| = {}: a = {a:?}, b = {b:?}", x.size(), y.size())),
                );
            }
        }
        for c in &c_probe {
            let back = t.add(
                s,
                &t.transfer(&cp.left, &t.restrict(&cp.left, c)),
                &t.transfer(&cp.right, &t.restrict(&cp.right, c)),
            );
            report.record(
                "additivity",
                verdict(back == *c, || format!("element {c:?} of T(X ⊔ Y) is not determined by its restrictions")),
            );
        }
    }

    // single maps
    for k in select(universe.maps.len(), opts.max_cases, &mut rng) {
        let f = &universe.maps[k];
        let (x, y) = (f.source(), f.target());
        let (px, py) = (&probes[idx.source[k]], &probes[idx.target[k]]);
        let w = || describe(f);
        let hom = t.restrict(f, &t.one(y)) == t.one(x)
            && t.restrict(f, &t.zero(y)) == t.zero(x)
            && py.iter().all(|a| {
                py.iter().all(|b| {
                    t.restrict(f, &t.add(y, a, b)) == t.add(x, &t.restrict(f, a), &t.restrict(f, b))
                        && t.restrict(f, &t.mul(y, a, b)) == t.mul(x, &t.restrict(f, a), &t.restrict(f, b))
                })
            });
        report.record("restriction_ring_hom", verdict(hom, w));
        let additive = t.transfer(f, &t.zero(x)) == t.zero(y)
            && px.iter().all(|a| {
                px.iter()
                    .all(|b| t.transfer(f, &t.add(x, a, b)) == t.add(y, &t.transfer(f, a), &t.transfer(f, b)))
            });
        report.record("transfer_additive", verdict(additive, w));
        let multiplicative = t.norm(f, &t.one(x)) == t.one(y)
            && px.iter().all(|a| {
                px.iter()
                    .all(|b| t.norm(f, &t.mul(x, a, b)) == t.mul(y, &t.norm(f, a), &t.norm(f, b)))
            });
        report.record("norm_multiplicative", verdict(multiplicative, w));
    }

    // identities and composites
    for (x, px) in universe.objects.iter().zip(&probes) {
        let id = GMap::identity(x);
        let ok = px
            .iter()
            .all(|a| t.restrict(&id, a) == *a && t.transfer(&id, a) == *a && t.norm(&id, a) == *a);
        report.record("functoriality", verdict(ok, || format!("identity of a {}-element set", x.size())));
    }
    let comp = idx.composable();
    for k in select(comp.len(), opts.max_cases, &mut rng) {
        let (i, j) = comp[k];
        let (f, g) = (&universe.maps[i], &universe.maps[j]);
        let gf = g.after(f).expect("composable");
        let w = || format!("f = {}, g = {}", describe(f), describe(g));
        let ok = probes[idx.target[j]]
            .iter()
            .all(|c| t.restrict(&gf, c) == t.restrict(f, &t.restrict(g, c)))
            && probes[idx.source[i]].iter().all(|a| {
                t.transfer(&gf, a) == t.transfer(g, &t.transfer(f, a)) && t.norm(&gf, a) == t.norm(g, &t.norm(f, a))
            });
        report.record("functoriality", verdict(ok, w));
    }

    // exchange along pullback squares
    let cos = idx.cospans();
    for k in select(cos.len(), opts.max_cases, &mut rng) {
        let (i, j) = cos[k];
        let (f, g) = (&universe.maps[i], &universe.maps[j]);
        let pb = pullback(f, g).expect("common target");
        // g* f_+ = f'_+ g'*, with g' = pb.left: P -> X and f' = pb.right: P -> Y'
        let w = || format!("f = {}, g = {}", describe(f), describe(g));
        let add_ok = probes[idx.source[i]]
            .iter()
            .all(|a| t.restrict(g, &t.transfer(f, a)) == t.transfer(&pb.right, &t.restrict(&pb.left, a)));
        report.record("mackey_transfer", verdict(add_ok, w));
        let mul_ok = probes[idx.source[i]]
            .iter()
            .all(|a| t.restrict(g, &t.norm(f, a)) == t.norm(&pb.right, &t.restrict(&pb.left, a)));
        report.record("mackey_norm", verdict(mul_ok, w));
    }

    // distributive law over canonical exponential diagrams
    for k in select(comp.len(), opts.max_cases, &mut rng) {
        let (i, j) = comp[k];
        let (p, f) = (&universe.maps[i], &universe.maps[j]);
        let w = || format!("p = {}, f = {}", describe(p), describe(f));
        match dependent_product(f, p) {
            Ok(d) => {
                let ok = probes[idx.source[i]].iter().all(|a| {
                    t.norm(f, &t.transfer(p, a)) == t.transfer(&d.pi, &t.norm(&d.rho, &t.restrict(&d.lam, a)))
                });
                report.record("distributive_law", verdict(ok, w));
            }
            Err(e) => report.record("distributive_law", Err(format!("{}: {e}", w()))),
        }
    }
    report
}

fn ring_axioms<T: TambaraFunctor>(
    t: &T,
    x: &GSet,
    elems: &[T::Elem],
    opts: &AxiomOptions,
    rng: &mut ChaCha8Rng,
    report: &mut Report,
) {
    let (zero, one) = (t.zero(x), t.one(x));
    let n = elems.len();
    for a in elems {
        let mut ok = t.add(x, a, &zero) == *a && t.mul(x, a, &one) == *a && t.mul(x, a, &zero) == zero;
        if t.has_negation() {
            ok &= t.neg(x, a).is_some_and(|b| t.add(x, a, &b) == zero);
        }
        report.record(
            "ring_axioms",
            verdict(ok, || format!("units or inverse fail at {a:?} over a {}-element set", x.size())),
        );
    }
    let triples = n.saturating_mul(n).saturating_mul(n);
    for k in select(triples, opts.max_cases, rng) {
        let (a, b, c) = (&elems[k / (n * n)], &elems[(k / n) % n], &elems[k % n]);
        let ok = t.add(x, a, b) == t.add(x, b, a)
            && t.mul(x, a, b) == t.mul(x, b, a)
            && t.add(x, &t.add(x, a, b), c) == t.add(x, a, &t.add(x, b, c))
            && t.mul(x, &t.mul(x, a, b), c) == t.mul(x, a, &t.mul(x, b, c))
            && t.mul(x, a, &t.add(x, b, c)) == t.add(x, &t.mul(x, a, b), &t.mul(x, a, c));
        report.record(
            "ring_axioms",
            verdict(ok, || format!("({a:?}, {b:?}, {c:?}) over a {}-element set", x.size())),
        );
    }
}
