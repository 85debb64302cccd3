use std::sync::Arc;

use proptest::prelude::*;
use tambara_core::exponential::{dependent_product_with_limit, Pentagon};
use tambara_core::gset::{all_gmaps, Universe};
use tambara_core::{dependent_product, is_exponential_diagram, GMap, GSet, Group};

fn fold(g: &Arc<Group>) -> (GMap, GMap) {
    let r = GSet::regular(g);
    let two = r.coproduct(&r).unwrap().set;
    let p = GMap::new(two, r.clone(), vec![0, 1, 0, 1]).unwrap();
    (GMap::to_point(&r), p)
}

/// All lift tuples over a fiber, enumerated by nested iteration.
fn brute_sections(f: &GMap, p: &GMap, y: usize) -> usize {
    let fiber: Vec<usize> = (0..f.source().size()).filter(|&x| f.apply(x) == y).collect();
    let mut count = 1;
    for x in fiber {
        count *= (0..p.source().size()).filter(|&a| p.apply(a) == x).count();
    }
    count
}

#[test]
fn regular_c2_over_fold_has_four_sections() {
    let c2 = Arc::new(Group::cyclic(2));
    let (f, p) = fold(&c2);
    let d = dependent_product(&f, &p).unwrap();
    assert_eq!(d.pi_set().size(), brute_sections(&f, &p, 0));
    assert_eq!(d.pi_set().size(), 4);
    // e(x, (y, σ)) = σ(x) and π(y, σ) = y
    for (s, sec) in d.sections.iter().enumerate() {
        assert_eq!(d.pi.apply(s), sec.base);
        for (i, &x) in d.fiber(sec.base).iter().enumerate() {
            let z = d.z_index(x, s).unwrap();
            assert_eq!(d.lam.apply(z), sec.assignment[i]);
            assert_eq!(d.rho.apply(z), s);
        }
    }
}

#[test]
fn group_action_on_sections() {
    let s3 = Arc::new(Group::named("s3").unwrap());
    let c2 = s3.subgroups().into_iter().find(|k| k.order() == 2).unwrap();
    let x = GSet::transitive(&s3, &c2).unwrap();
    let a = x.coproduct(&x).unwrap();
    let p = GMap::new(a.set.clone(), x.clone(), (0..6).map(|i| i % 3).collect()).unwrap();
    let f = GMap::to_point(&x);
    let d = dependent_product(&f, &p).unwrap();
    let pi = d.pi_set();
    for g in s3.elements() {
        let ginv = s3.inv(g);
        for (s, sec) in d.sections.iter().enumerate() {
            let moved = &d.sections[pi.act(g, s)];
            assert_eq!(moved.base, f.target().act(g, sec.base));
            for (i, &xp) in d.fiber(moved.base).iter().enumerate() {
                let back = x.act(ginv, xp);
                let pos = d.fiber(sec.base).iter().position(|&q| q == back).unwrap();
                assert_eq!(moved.assignment[i], a.set.act(g, sec.assignment[pos]));
            }
        }
    }
}

#[test]
fn relabeled_pi_is_still_exponential() {
    let c2 = Arc::new(Group::cyclic(2));
    let (f, p) = fold(&c2);
    let d = dependent_product(&f, &p).unwrap();
    let n = d.pi_set().size();
    let perm: Vec<usize> = (0..n).rev().collect();
    let (pi2, rel) = d.pi_set().relabel(&perm).unwrap();
    let inv = rel.inverse().unwrap();
    let candidate = Pentagon {
        f: d.f.clone(),
        p: d.p.clone(),
        lam: d.lam.clone(),
        rho: rel.after(&d.rho).unwrap(),
        pi: d.pi.after(&inv).unwrap(),
    };
    assert_eq!(candidate.pi.source(), &pi2);
    let w = is_exponential_diagram(&candidate).unwrap().unwrap();
    assert_eq!(w.pi_iso.target(), d.pi_set());
}

#[test]
fn size_guard_is_configurable() {
    let g = Arc::new(Group::trivial());
    let x = GSet::trivial(&g, 3);
    let a = GSet::trivial(&g, 6);
    let p = GMap::new(a, x.clone(), vec![0, 0, 1, 1, 2, 2]).unwrap();
    let f = GMap::to_point(&x);
    assert!(dependent_product_with_limit(&f, &p, 7).is_err());
    assert_eq!(dependent_product_with_limit(&f, &p, 8).unwrap().pi_set().size(), 8);
}

fn universe_pairs(name: &str, n: usize) -> Vec<(GMap, GMap)> {
    let g = Arc::new(Group::named(name).unwrap());
    let u = Universe::standard(&g, n);
    let mut out = Vec::new();
    for f in &u.maps {
        for p in u.maps_to(f.source()) {
            out.push((f.clone(), p.clone()));
        }
    }
    out
}

#[test]
fn fiber_counts_over_small_universes() {
    for name in ["c2", "c3", "s3"] {
        for (f, p) in universe_pairs(name, 3) {
            let d = dependent_product(&f, &p).unwrap();
            for y in 0..f.target().size() {
                assert_eq!(d.pi.fiber(y).len(), brute_sections(&f, &p, y));
            }
        }
    }
}

proptest! {
    #[test]
    fn fiber_sizes_add_under_coproduct(seed in 0usize..10_000) {
        // Π_f(A ⊔ A') has fiber sizes ∏ (|p⁻¹(x)| + |p'⁻¹(x)|)
        let pairs = universe_pairs("c2", 3);
        let (f, p) = &pairs[seed % pairs.len()];
        let others: Vec<GMap> = pairs.iter().map(|(_, q)| q.clone()).filter(|q| q.target() == f.source()).collect();
        let q = &others[(seed / pairs.len()) % others.len()];
        let sum = p.source().coproduct(q.source()).unwrap();
        let values: Vec<usize> = p.values().iter().chain(q.values()).copied().collect();
        let pq = GMap::new(sum.set, f.source().clone(), values).unwrap();
        let d = dependent_product(f, &pq).unwrap();
        for y in 0..f.target().size() {
            let expected: usize = (0..f.source().size())
                .filter(|&x| f.apply(x) == y)
                .map(|x| p.fiber(x).len() + q.fiber(x).len())
                .product();
            prop_assert_eq!(d.pi.fiber(y).len(), expected);
        }
    }

    #[test]
    fn canonical_diagrams_are_recognized(seed in 0usize..10_000) {
        let pairs = universe_pairs("s3", 3);
        let (f, p) = &pairs[seed % pairs.len()];
        let d = dependent_product(f, p).unwrap();
        let w = is_exponential_diagram(&Pentagon::from(&d)).unwrap().unwrap();
        prop_assert_eq!(w.pi_iso, GMap::identity(d.pi_set()));
        prop_assert_eq!(w.z_iso, GMap::identity(d.z_set()));
    }
}

#[test]
fn swapped_rho_is_rejected() {
    let c2 = Arc::new(Group::cyclic(2));
    let (f, p) = fold(&c2);
    let d = dependent_product(&f, &p).unwrap();
    let mut pent = Pentagon::from(&d);
    let alternatives = all_gmaps(d.z_set(), d.pi_set());
    let other = alternatives.into_iter().find(|m| m != &d.rho && d.pi.after(m).unwrap() == f.after(&d.zx).unwrap()).unwrap();
    pent.rho = other;
    assert!(is_exponential_diagram(&pent).unwrap().is_none());
}
