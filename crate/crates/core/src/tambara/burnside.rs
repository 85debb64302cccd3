//! The Burnside semi-Tambara functor: `T(X)` is the semi-ring of isomorphism classes of G-sets
//! over `X`, with `⊔`, `×_X`, pullback, postcomposition and dependent product.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::TambaraFunctor;
use crate::exponential::dependent_product;
use crate::group::{Group, Subgroup};
use crate::gset::{pullback, GMap, GSet};

/// Transitive G-sets over `X`: one entry per class of pairs `(x, K ≤ G_x)` modulo
/// `(x, K) ~ (gx, gKg⁻¹)`. Each entry is stored with `x` the least point of its orbit.
#[derive(Debug)]
struct Basis {
    entries: Vec<(usize, Subgroup)>,
    /// `by_point[x0]`: entries over the orbit representative `x0`
    by_point: HashMap<usize, Vec<usize>>,
}

/// Elements are count vectors over the transitive objects over `X`.
#[derive(Debug)]
pub struct BurnsideSemiTambara {
    group: Arc<Group>,
    bases: Mutex<HashMap<GSet, Arc<Basis>>>,
    /// Sampled elements use at most this many transitive summands.
    max_terms: usize,
}

impl BurnsideSemiTambara {
    pub fn new(group: &Arc<Group>) -> BurnsideSemiTambara {
        BurnsideSemiTambara {
            group: Arc::clone(group),
            bases: Mutex::default(),
            max_terms: 2,
        }
    }

    /// Number of transitive objects over `X`.
    pub fn rank(&self, x: &GSet) -> usize {
        self.basis(x).entries.len()
    }

    fn basis(&self, x: &GSet) -> Arc<Basis> {
        assert!(x.group() == &self.group, "G-set over the wrong group");
        if let Some(b) = self.bases.lock().expect("cache lock").get(x) {
            return Arc::clone(b);
        }
        let mut entries = Vec::new();
        let mut by_point: HashMap<usize, Vec<usize>> = HashMap::new();
        for orbit in x.orbits() {
            let x0 = orbit[0];
            let stab = x.stabilizer(x0).expect("in range");
            let mut reps: Vec<Subgroup> = Vec::new();
            for k in self.group.subgroups() {
                if k.is_subgroup_of(&stab) && !reps.iter().any(|r| conjugate_within(&stab, r, &k)) {
                    reps.push(k);
                }
            }
            for k in reps {
                by_point.entry(x0).or_default().push(entries.len());
                entries.push((x0, k));
            }
        }
        let b = Arc::new(Basis { entries, by_point });
        self.bases
            .lock()
            .expect("cache lock")
            .entry(x.clone())
            .or_insert(b)
            .clone()
    }

    /// A G-set over `X` whose class is `counts`.
    pub fn realize(&self, x: &GSet, counts: &[usize]) -> GMap {
        let basis = self.basis(x);
        assert_eq!(counts.len(), basis.entries.len(), "count vector of the wrong rank");
        let mut parts = Vec::new();
        let mut values = Vec::new();
        for ((x0, k), &c) in basis.entries.iter().zip(counts) {
            let orbit = GSet::transitive(&self.group, k).expect("subgroup");
            let mut local = vec![0; orbit.size()];
            for g in self.group.elements() {
                local[orbit.act(g, 0)] = x.act(g, *x0);
            }
            for _ in 0..c {
                parts.push(orbit.clone());
                values.extend_from_slice(&local);
            }
        }
        let a = GSet::coproduct_all(&self.group, &parts).expect("same group");
        GMap::new_unchecked(a, x.clone(), values)
    }

    /// The count vector of `q: A -> X`.
    pub fn classify(&self, q: &GMap) -> Vec<usize> {
        let x = q.target();
        let basis = self.basis(x);
        let index = x.orbit_index();
        let orbits = x.orbits();
        let mut counts = vec![0; basis.entries.len()];
        for ao in q.source().orbits() {
            let a = ao[0];
            let k = q.source().stabilizer(a).expect("in range");
            let xa = q.apply(a);
            let x0 = orbits[index[xa]][0];
            let g = self
                .group
                .elements()
                .find(|&g| x.act(g, xa) == x0)
                .expect("same orbit");
            let moved = k.conjugate(g);
            let stab = x.stabilizer(x0).expect("in range");
            let slot = basis.by_point[&x0]
                .iter()
                .copied()
                .find(|&e| conjugate_within(&stab, &basis.entries[e].1, &moved))
                .expect("every subgroup of the stabilizer has a class");
            counts[slot] += 1;
        }
        counts
    }
}

/// `a` and `b` are conjugate by an element of `within`.
fn conjugate_within(within: &Subgroup, a: &Subgroup, b: &Subgroup) -> bool {
    a.order() == b.order() && within.members().iter().any(|&g| a.conjugate(g) == *b)
}

impl TambaraFunctor for BurnsideSemiTambara {
    type Elem = Vec<usize>;

    fn group(&self) -> &Arc<Group> {
        &self.group
    }

    fn has_negation(&self) -> bool {
        false
    }

    fn elements(&self, x: &GSet, cap: usize) -> Option<Vec<Vec<usize>>> {
        // the monoid is free on the basis, hence infinite unless the basis is empty
        (self.rank(x) == 0 && cap >= 1).then(|| vec![Vec::new()])
    }

    fn sample(&self, x: &GSet, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let n = self.rank(x);
        let mut counts = vec![0; n];
        if n > 0 {
            for _ in 0..rng.gen_range(0..=self.max_terms) {
                counts[rng.gen_range(0..n)] += 1;
            }
        }
        counts
    }

    fn zero(&self, x: &GSet) -> Vec<usize> {
        vec![0; self.rank(x)]
    }

    fn one(&self, x: &GSet) -> Vec<usize> {
        self.classify(&GMap::identity(x))
    }

    fn add(&self, _x: &GSet, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        a.iter().zip(b).map(|(p, q)| p + q).collect()
    }

    fn mul(&self, x: &GSet, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        let (qa, qb) = (self.realize(x, a), self.realize(x, b));
        let pb = pullback(&qa, &qb).expect("common target");
        self.classify(&qa.after(&pb.left).expect("composable"))
    }

    fn neg(&self, _x: &GSet, _a: &Vec<usize>) -> Option<Vec<usize>> {
        None
    }

    fn restrict(&self, f: &GMap, b: &Vec<usize>) -> Vec<usize> {
        let qb = self.realize(f.target(), b);
        let pb = pullback(f, &qb).expect("common target");
        self.classify(&pb.left)
    }

    fn transfer(&self, f: &GMap, a: &Vec<usize>) -> Vec<usize> {
        let qa = self.realize(f.source(), a);
        self.classify(&f.after(&qa).expect("composable"))
    }

    fn norm(&self, f: &GMap, a: &Vec<usize>) -> Vec<usize> {
        let qa = self.realize(f.source(), a);
        let d = dependent_product(f, &qa).expect("dependent product within the size limit");
        self.classify(&d.pi)
    }
}
