use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use tambara_core::gset::{all_gmaps, gset_isomorphism, iso_class_representatives, orbit_types};
use tambara_core::{pullback, GMap, GSet, Group};

fn s3() -> Arc<Group> {
    Arc::new(Group::named("s3").unwrap())
}

/// Closure of a set of permutations by repeated composition, written independently of the
/// library's breadth-first search.
fn closure(gens: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let mut set: BTreeSet<Vec<usize>> = [(0..n).collect()].into();
    loop {
        let before = set.len();
        let current: Vec<_> = set.iter().cloned().collect();
        for a in &current {
            for g in gens {
                set.insert((0..n).map(|i| g[a[i]]).collect());
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

#[test]
fn s3_from_generators() {
    let gens = vec![vec![1, 0, 2], vec![1, 2, 0]];
    let pg = Group::from_permutations(&gens, 3).unwrap();
    assert_eq!(pg.group.order(), closure(&gens, 3).len());
    assert_eq!(pg.group.order(), 6);
    assert_eq!(pg.perms[0], vec![0, 1, 2]);
    assert_eq!(Group::from_permutations(&[], 3).unwrap().group.order(), 1);
    assert_eq!(Group::from_permutations(&[vec![1, 0]], 2).unwrap().group.order(), 2);
}

#[test]
fn non_group_table_reports_witness() {
    // identity at 0 but 1·1 = 1 breaks inverses
    let err = Group::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
    assert!(matches!(err, tambara_core::Error::NotAGroup { .. }));
}

#[test]
fn natural_action_stabilizer() {
    let pg = Group::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap();
    let g = pg.group.clone();
    let rows: Vec<Vec<usize>> = pg.perms.clone();
    let x = GSet::new(&g, &rows).unwrap();
    let stab = x.stabilizer(2).unwrap();
    assert_eq!(stab.order(), 2);
    let swap = pg.perms.iter().position(|p| p == &vec![1, 0, 2]).unwrap();
    assert!(stab.contains(swap));
    assert_eq!(x.orbits().len(), 1);
}

#[test]
fn orbit_sizes_of_a_mixed_set() {
    let g = s3();
    let c2 = g.subgroups().into_iter().find(|k| k.order() == 2).unwrap();
    let x = GSet::transitive(&g, &c2).unwrap().coproduct(&GSet::point(&g)).unwrap().set;
    let mut sizes: Vec<usize> = x.orbits().iter().map(Vec::len).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 3]);
}

#[test]
fn equivariance_check_on_regular_c2() {
    let c2 = Arc::new(Group::cyclic(2));
    let r = GSet::regular(&c2);
    // right translation by the generator commutes with left translation
    assert!(GMap::new(r.clone(), r.clone(), vec![1, 0]).is_ok());
    assert!(GMap::new(r.clone(), GSet::trivial(&c2, 2), vec![0, 1]).is_err());
    assert!(GMap::new(r.clone(), GSet::point(&c2), vec![0, 0]).is_ok());
}

#[test]
fn pullback_of_fold_with_itself() {
    let c2 = Arc::new(Group::cyclic(2));
    let r = GSet::regular(&c2);
    let two = r.coproduct(&r).unwrap().set;
    let fold = GMap::new(two.clone(), r.clone(), vec![0, 1, 0, 1]).unwrap();
    let pb = pullback(&fold, &fold).unwrap();
    // oracle: count pairs with equal images, then count orbits of the diagonal action
    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|a| (0..4).map(move |b| (a, b)))
        .filter(|&(a, b)| fold.apply(a) == fold.apply(b))
        .collect();
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for &(a, b) in &pairs {
        if seen.insert((a, b)) {
            orbits += 1;
            seen.insert((two.act(1, a), two.act(1, b)));
        }
    }
    assert_eq!(pb.set.size(), pairs.len());
    assert_eq!(pb.set.orbits().len(), orbits);
    assert_eq!((pairs.len(), orbits), (8, 4));
}

#[test]
fn subgroup_conjugacy_and_embeddings() {
    let g = s3();
    let subs = g.subgroups();
    assert_eq!(subs.len(), 6);
    assert_eq!(g.subgroup_class_reps().len(), 4);
    let c2 = Arc::new(Group::cyclic(2));
    let c3 = Arc::new(Group::cyclic(3));
    assert!(c2.find_embedding(&g).is_some());
    assert!(c3.find_embedding(&g).is_some());
    assert!(c3.find_embedding(&Group::cyclic(2)).is_none());
    let c6 = Group::named("c6").unwrap();
    assert!(g.find_embedding(&c6).is_none());
}

/// Number of multisets of orbit types with total size at most `n`: coefficients of
/// `∏_K 1/(1 - t^{[G:K]})` summed up to degree `n`.
fn multiset_count(indices: &[usize], n: usize) -> usize {
    let mut coeff = vec![0usize; n + 1];
    coeff[0] = 1;
    for &d in indices {
        for k in d..=n {
            coeff[k] += coeff[k - d];
        }
    }
    coeff.iter().sum()
}

#[test]
fn universe_counts_match_partition_oracle() {
    for (name, expected) in [("c2", 9), ("s3", 11), ("c3", 7), ("trivial", 5)] {
        let g = Arc::new(Group::named(name).unwrap());
        let idx: Vec<usize> = g.subgroup_class_reps().iter().map(|k| k.index()).collect();
        let reps = iso_class_representatives(&g, 4);
        assert_eq!(reps.len(), multiset_count(&idx, 4), "{name}");
        assert_eq!(reps.len(), expected, "{name}");
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(gset_isomorphism(a, b).is_none());
            }
        }
    }
}

#[test]
fn relabeled_coset_spaces_are_isomorphic() {
    let g = s3();
    let c2 = g.subgroups().into_iter().find(|k| k.order() == 2).unwrap();
    let x = GSet::transitive(&g, &c2).unwrap();
    let (y, _) = x.relabel(&[2, 0, 1]).unwrap();
    let iso = gset_isomorphism(&x, &y).unwrap();
    assert!(iso.is_bijective());
    assert!(gset_isomorphism(&GSet::regular(&Arc::new(Group::cyclic(2))), &GSet::trivial(&Arc::new(Group::cyclic(2)), 2)).is_none());
}

fn arb_gset() -> impl Strategy<Value = GSet> {
    (prop::sample::select(vec!["c2", "c3", "s3", "v4"]), prop::collection::vec(0usize..8, 0..4)).prop_map(
        |(name, picks)| {
            let g = Arc::new(Group::named(name).unwrap());
            let subs = g.subgroups();
            let parts: Vec<GSet> = picks
                .iter()
                .map(|&i| GSet::transitive(&g, &subs[i % subs.len()]).unwrap())
                .collect();
            GSet::coproduct_all(&g, &parts).unwrap()
        },
    )
}

fn arb_pair() -> impl Strategy<Value = (GSet, GSet)> {
    (prop::collection::vec(0usize..8, 0..3), prop::collection::vec(0usize..8, 0..3)).prop_map(|(p, q)| {
        let g = s3();
        let subs = g.subgroups();
        let build = |picks: &[usize]| {
            let parts: Vec<GSet> = picks
                .iter()
                .map(|&i| GSet::transitive(&g, &subs[i % subs.len()]).unwrap())
                .collect();
            GSet::coproduct_all(&g, &parts).unwrap()
        };
        (build(&p), build(&q))
    })
}

proptest! {
    #[test]
    fn action_laws_hold(x in arb_gset()) {
        let g = x.group().clone();
        for e in 0..x.size() {
            prop_assert_eq!(x.act(0, e), e);
            for a in g.elements() {
                for b in g.elements() {
                    prop_assert_eq!(x.act(a, x.act(b, e)), x.act(g.mul(a, b), e));
                }
            }
        }
    }

    #[test]
    fn orbit_stabilizer(x in arb_gset()) {
        let index = x.orbit_index();
        let orbits = x.orbits();
        for e in 0..x.size() {
            let orbit = orbits[index[e]].len();
            prop_assert_eq!(orbit * x.stabilizer(e).unwrap().order(), x.group().order());
        }
    }

    #[test]
    fn coproduct_orbits((x, y) in arb_pair()) {
        let cp = x.coproduct(&y).unwrap();
        let shifted: Vec<Vec<usize>> = x
            .orbits()
            .into_iter()
            .chain(y.orbits().into_iter().map(|o| o.into_iter().map(|e| e + x.size()).collect()))
            .collect();
        let mut left: Vec<Vec<usize>> = cp.set.orbits();
        let mut right = shifted;
        left.sort();
        right.sort();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pullback_is_symmetric((x, y) in arb_pair(), z in 0usize..3) {
        let g = s3();
        let target = match z {
            0 => GSet::point(&g),
            1 => GSet::trivial(&g, 2),
            _ => GSet::transitive(&g, &g.subgroups().into_iter().find(|k| k.order() == 3).unwrap()).unwrap(),
        };
        let fs = all_gmaps(&x, &target);
        let gs = all_gmaps(&y, &target);
        if let (Some(f), Some(h)) = (fs.first(), gs.last()) {
            let p = pullback(f, h).unwrap();
            let q = pullback(h, f).unwrap();
            prop_assert!(gset_isomorphism(&p.set, &q.set).is_some());
            for i in 0..p.set.size() {
                prop_assert_eq!(f.apply(p.left.apply(i)), h.apply(p.right.apply(i)));
            }
        }
    }

    #[test]
    fn isomorphic_iff_same_orbit_types((x, y) in arb_pair()) {
        prop_assert_eq!(gset_isomorphism(&x, &y).is_some(), orbit_types(&x) == orbit_types(&y));
    }
}

#[test]
fn pullback_universal_property_small() {
    // every pair of maps from a test cone factors uniquely through the pullback
    let c2 = Arc::new(Group::cyclic(2));
    let r = GSet::regular(&c2);
    let pt = GSet::point(&c2);
    let x = r.coproduct(&pt).unwrap().set;
    let f = GMap::to_point(&x);
    let g = GMap::to_point(&r);
    let p = pullback(&f, &g).unwrap();
    for cone in [GSet::point(&c2), r.clone(), GSet::trivial(&c2, 2)] {
        for a in all_gmaps(&cone, &x) {
            for b in all_gmaps(&cone, &r) {
                let factorizations = all_gmaps(&cone, &p.set)
                    .into_iter()
                    .filter(|m| p.left.after(m).unwrap() == a && p.right.after(m).unwrap() == b)
                    .count();
                assert_eq!(factorizations, 1);
            }
        }
    }
}
