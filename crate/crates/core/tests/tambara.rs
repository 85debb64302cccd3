use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use tambara_core::biset::{identity_counit, u_apply_object};
use tambara_core::gset::Universe;
use tambara_core::tambara::*;
use tambara_core::{Biset, GMap, GSet, Group, TabRing, Verify};

fn group(name: &str) -> Arc<Group> {
    Arc::new(Group::named(name).unwrap())
}

fn fp(g: &Arc<Group>, n: usize) -> FixedPointFunctor {
    FixedPointFunctor::new(g, TabRing::zmod(n).unwrap())
}

fn induction(h: &Arc<Group>, g: &Arc<Group>) -> Biset {
    Biset::induction(h, g, &g.find_embedding(h).unwrap()).unwrap()
}

fn exhaustive() -> AxiomOptions {
    AxiomOptions { max_cases: usize::MAX, ..AxiomOptions::default() }
}

fn fold() -> GMap {
    let r = GSet::regular(&group("c2"));
    GMap::new(r.coproduct(&r).unwrap().set, r, vec![0, 1, 0, 1]).unwrap()
}

/// The fixed-point functor with its norm replaced by transfer.
struct NormIsTransfer(FixedPointFunctor);

impl TambaraFunctor for NormIsTransfer {
    type Elem = Vec<usize>;
    fn group(&self) -> &Arc<Group> {
        self.0.group()
    }
    fn has_negation(&self) -> bool {
        true
    }
    fn elements(&self, x: &GSet, cap: usize) -> Option<Vec<Vec<usize>>> {
        self.0.elements(x, cap)
    }
    fn sample(&self, x: &GSet, rng: &mut ChaCha8Rng) -> Vec<usize> {
        self.0.sample(x, rng)
    }
    fn zero(&self, x: &GSet) -> Vec<usize> {
        self.0.zero(x)
    }
    fn one(&self, x: &GSet) -> Vec<usize> {
        self.0.one(x)
    }
    fn add(&self, x: &GSet, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        self.0.add(x, a, b)
    }
    fn mul(&self, x: &GSet, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        self.0.mul(x, a, b)
    }
    fn neg(&self, x: &GSet, a: &Vec<usize>) -> Option<Vec<usize>> {
        self.0.neg(x, a)
    }
    fn restrict(&self, f: &GMap, b: &Vec<usize>) -> Vec<usize> {
        self.0.restrict(f, b)
    }
    fn transfer(&self, f: &GMap, a: &Vec<usize>) -> Vec<usize> {
        self.0.transfer(f, a)
    }
    fn norm(&self, f: &GMap, a: &Vec<usize>) -> Vec<usize> {
        self.0.transfer(f, a)
    }
}

#[test]
fn fixed_points_satisfy_the_axioms() {
    for (name, n) in [("c2", 4), ("c3", 6), ("s3", 4)] {
        let g = group(name);
        let report = check_axioms(&fp(&g, n), &Universe::standard(&g, 3), &exhaustive());
        assert!(report.passed(), "{name}: {:?}", report.failures().collect::<Vec<_>>());
        assert!(report.checks().all(|c| c.cases > 0), "{name}: empty check");
    }
}

#[test]
fn distributive_instance_by_hand() {
    // a = (r, s), constant on the two free orbits. Then f_•(p_+ a) = (r + s)² on the point.
    let g = group("c2");
    let ring = TabRing::zmod(4).unwrap();
    let t = fp(&g, 4);
    let p = fold();
    let f = GMap::to_point(p.target());
    let elems = t.elements(p.source(), 64).unwrap();
    assert_eq!(elems.len(), 16);
    for a in &elems {
        let (r, s) = (a[0], a[2]);
        let lhs = t.norm(&f, &t.transfer(&p, a));
        assert_eq!(lhs, vec![ring.mul(ring.add(r, s), ring.add(r, s))]);
        let d = tambara_core::dependent_product(&f, &p).unwrap();
        let rhs = t.transfer(&d.pi, &t.norm(&d.rho, &t.restrict(&d.lam, a)));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn corrupted_norm_breaks_distributivity() {
    let g = group("c2");
    let broken = NormIsTransfer(fp(&g, 4));
    let report = check_axioms(&broken, &Universe::standard(&g, 3), &exhaustive());
    let d = report.get("distributive_law").unwrap();
    assert!(!d.passed && d.witness.is_some());
    assert!(report.get("restriction_ring_hom").unwrap().passed);
}

#[test]
fn burnside_semi_tambara_on_c2() {
    let g = group("c2");
    let b = BurnsideSemiTambara::new(&g);
    assert!(!b.has_negation());
    let report = check_axioms(&b, &Universe::standard(&g, 2), &AxiomOptions::default());
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    // pt has the two transitive C2-sets as basis; the free orbit squares to two copies of itself
    let pt = GSet::point(&g);
    assert_eq!(b.rank(&pt), 2);
    let free: Vec<usize> = if b.realize(&pt, &[0, 1]).source().size() == 2 { vec![0, 1] } else { vec![1, 0] };
    let sq = b.mul(&pt, &free, &free);
    assert_eq!(sq, free.iter().map(|c| 2 * c).collect::<Vec<_>>());
    assert_eq!(b.classify(&b.realize(&pt, &sq)), sq);
    // norm along C2 -> pt of the point over C2 is the set of sections: a single fixed point
    let to_pt = GMap::to_point(&GSet::regular(&g));
    let n = b.norm(&to_pt, &b.one(&GSet::regular(&g)));
    assert_eq!(n, b.one(&pt));
}

#[test]
fn identity_transform_matches_after_relabeling() {
    let g = group("s3");
    let t = fp(&g, 4);
    let id = Biset::identity(&g);
    let tu = Transformed::new(t.clone(), &id).unwrap();
    let universe = Universe::standard(&g, 3);
    let counit = |x: &GSet| identity_counit(&u_apply_object(&id, x, Verify::Eager).unwrap());
    let carry = |x: &GSet, a: &Vec<usize>| -> Vec<usize> {
        let e = counit(x);
        (0..e.source().size()).map(|c| a[e.apply(c)]).collect()
    };
    for x in &universe.objects {
        let mut ours: Vec<_> = t.elements(x, 1 << 12).unwrap().iter().map(|a| carry(x, a)).collect();
        ours.sort();
        assert_eq!(ours, tu.elements(x, 1 << 12).unwrap());
    }
    for f in &universe.maps {
        let (x, y) = (f.source(), f.target());
        for a in t.elements(x, 1 << 12).unwrap() {
            assert_eq!(tu.transfer(f, &carry(x, &a)), carry(y, &t.transfer(f, &a)));
            assert_eq!(tu.norm(f, &carry(x, &a)), carry(y, &t.norm(f, &a)));
        }
        for b in t.elements(y, 1 << 12).unwrap() {
            assert_eq!(tu.restrict(f, &carry(y, &b)), carry(x, &t.restrict(f, &b)));
        }
    }
}

#[test]
fn induced_functor_on_a_point_is_the_coefficient_ring() {
    let (c2, s3) = (group("c2"), group("s3"));
    let tu = Transformed::new(fp(&s3, 4), &induction(&s3, &c2)).unwrap();
    let pt = GSet::point(&c2);
    assert_eq!(tu.composite(&pt).size(), 3);
    let elems = tu.elements(&pt, 100).unwrap();
    assert_eq!(elems.len(), 4);
    // additive order of one is four
    let one = tu.one(&pt);
    let mut acc = tu.zero(&pt);
    let mut order = 0;
    loop {
        acc = tu.add(&pt, &acc, &one);
        order += 1;
        if acc == tu.zero(&pt) {
            break;
        }
    }
    assert_eq!(order, 4);
    let report = check_axioms(&tu, &Universe::standard(&c2, 3), &exhaustive());
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn quotient_by_even_residues_is_the_z2_functor() {
    let g = group("s3");
    let z4 = TabRing::zmod(4).unwrap();
    let even = PointwiseIdeal::new(&z4, &[0, 2]).unwrap();
    let q = Quotient::new(fp(&g, 4), even.clone());
    let universe = Universe::standard(&g, 3);
    assert!(q.check_well_defined(&universe, &exhaustive()).passed());
    assert!(check_ideal(q.inner(), &even, &universe, &exhaustive()).passed());
    let report = compare_tables(&q, &fp(&g, 2), &universe, &exhaustive());
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    let hom = PointwiseRingHom::new(fp(&g, 4), fp(&g, 2), vec![0, 1, 0, 1]).unwrap();
    assert!(check_morphism(&hom, &universe, &exhaustive()).passed());
}

#[test]
fn non_ideals_and_non_submonoids_are_rejected() {
    let g = group("c2");
    let z4 = TabRing::zmod(4).unwrap();
    let odd = PointwiseIdeal::new(&z4, &[0, 1]).unwrap();
    assert!(validate_ideal(&fp(&g, 4), &odd, &Universe::standard(&g, 2), &AxiomOptions::default()).is_err());
    let z6 = TabRing::zmod(6).unwrap();
    let small = Universe::standard(&g, 2);
    for bad in [vec![3], vec![1, 2]] {
        let s = PointwiseSubmonoid::new(&z6, &bad).unwrap();
        assert!(validate_subfunctor(&fp(&g, 6), &s, &small, &AxiomOptions::default()).is_err());
        assert!(Localized::new(fp(&g, 6), &s).is_err());
    }
    assert!(PointwiseRingHom::new(fp(&g, 4), fp(&g, 2), vec![0, 1, 1, 1]).is_err());
    assert!(validate_ideal(&fp(&g, 4), &WholeIdeal, &Universe::standard(&g, 2), &AxiomOptions::default()).is_ok());
}

/// `Z6[1/3]` by the pair relation `(r, s) ~ (r', s')` iff `t(r s' - r' s) = 0` for some `t ∈ S`.
fn fraction_classes(n: usize, s: &[usize]) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|r| s.iter().map(move |&m| (r, m))).collect();
    let same = |(r, m): (usize, usize), (r2, m2): (usize, usize)| {
        let d = (r * m2 + n * n - r2 * m) % n;
        s.iter().any(|&t| t * d % n == 0)
    };
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for p in pairs {
        if !reps.iter().any(|&q| same(p, q)) {
            reps.push(p);
        }
    }
    reps.len()
}

#[test]
fn localization_at_powers_of_three() {
    let g = group("s3");
    let z6 = TabRing::zmod(6).unwrap();
    let s = PointwiseSubmonoid::powers(&z6, 3).unwrap();
    assert_eq!(s.values(), &[1, 3]);
    let loc = Localized::new(fp(&g, 6), &s).unwrap();
    assert_eq!(loc.localization().ring.size(), fraction_classes(6, &[1, 3]));
    assert_eq!(fraction_classes(6, &[1, 3]), 2);
    let universe = Universe::standard(&g, 3);
    let report = check_axioms(&loc, &universe, &exhaustive());
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    let canon: Vec<usize> = (0..6).map(|r| loc.canonical(&[r])[0]).collect();
    let hom = PointwiseRingHom::new(fp(&g, 6), loc.clone(), canon).unwrap();
    assert!(check_morphism(&hom, &universe, &exhaustive()).passed());
    let sub = check_subfunctor(&fp(&g, 6), &s, &universe, &exhaustive());
    assert!(sub.passed());
}

#[test]
fn localization_with_units_changes_nothing() {
    let g = group("c2");
    let z6 = TabRing::zmod(6).unwrap();
    let units = PointwiseSubmonoid::new(&z6, &[1, 5]).unwrap();
    let loc = Localized::new(fp(&g, 6), &units).unwrap();
    assert_eq!(loc.localization().ring.size(), 6);
    assert_eq!(fraction_classes(6, &[1, 5]), 6);
}

#[test]
fn ideals_and_fractions_commute_with_transformation() {
    let (c2, s3) = (group("c2"), group("s3"));
    let u = induction(&s3, &c2);
    let universe = Universe::standard(&c2, 3);
    let opts = exhaustive();
    let z4 = TabRing::zmod(4).unwrap();
    let t4 = fp(&s3, 4);
    let even = PointwiseIdeal::new(&z4, &[0, 2]).unwrap();
    for report in [
        check_cor27(&t4, &even, &u, &universe, &opts),
        check_cor27(&t4, &ZeroIdeal, &u, &universe, &opts),
        check_cor27(&t4, &WholeIdeal, &u, &universe, &opts),
    ] {
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.get("tables_norm").unwrap().cases > 0);
    }
    let z6 = TabRing::zmod(6).unwrap();
    let t6 = fp(&s3, 6);
    for s in [
        PointwiseSubmonoid::powers(&z6, 3).unwrap(),
        PointwiseSubmonoid::new(&z6, &[1]).unwrap(),
        PointwiseSubmonoid::new(&z6, &[1, 5]).unwrap(),
    ] {
        let report = check_cor28(&t6, &s, &u, &universe, &opts);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn transformed_morphisms_stay_natural() {
    let (c2, s3) = (group("c2"), group("s3"));
    let u = induction(&s3, &c2);
    let hom = PointwiseRingHom::new(fp(&s3, 4), fp(&s3, 2), vec![0, 1, 0, 1]).unwrap();
    let tm = TransformedMorphism::new(hom, &u).unwrap();
    let report = check_morphism(&tm, &Universe::standard(&c2, 3), &exhaustive());
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn transformation_needs_matching_groups() {
    let (c2, s3) = (group("c2"), group("s3"));
    assert!(Transformed::new(fp(&c2, 4), &induction(&s3, &c2)).is_err());
}
