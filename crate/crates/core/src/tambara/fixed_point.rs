use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use super::pointwise::{self, PointwiseFamily};
use super::TambaraFunctor;
use crate::group::Group;
use crate::gset::{GMap, GSet};
use crate::ring::TabRing;

/// `X ↦` invariant functions `X -> R`, with `f*` precomposition, `f_+` fiber sums and `f_•`
/// fiber products.
#[derive(Clone, Debug)]
pub struct FixedPointFunctor {
    group: Arc<Group>,
    ring: Arc<TabRing>,
}

impl FixedPointFunctor {
    pub fn new(group: &Arc<Group>, ring: TabRing) -> FixedPointFunctor {
        FixedPointFunctor {
            group: Arc::clone(group),
            ring: Arc::new(ring),
        }
    }

    pub fn ring(&self) -> &TabRing {
        &self.ring
    }

    fn check(&self, x: &GSet) {
        assert!(x.group() == &self.group, "G-set over the wrong group");
    }
}

impl TambaraFunctor for FixedPointFunctor {
    type Elem = Vec<usize>;

    fn group(&self) -> &Arc<Group> {
        &self.group
    }

    fn has_negation(&self) -> bool {
        true
    }

    fn elements(&self, x: &GSet, cap: usize) -> Option<Vec<Vec<usize>>> {
        self.check(x);
        pointwise::enumerate(&self.ring, x, cap)
    }

    fn sample(&self, x: &GSet, rng: &mut ChaCha8Rng) -> Vec<usize> {
        self.check(x);
        pointwise::sample(&self.ring, x, rng)
    }

    fn zero(&self, x: &GSet) -> Vec<usize> {
        vec![self.ring.zero(); x.size()]
    }

    fn one(&self, x: &GSet) -> Vec<usize> {
        vec![self.ring.one(); x.size()]
    }

    fn add(&self, _x: &GSet, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        pointwise::zip(a, b, |p, q| self.ring.add(p, q))
    }

    fn mul(&self, _x: &GSet, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        pointwise::zip(a, b, |p, q| self.ring.mul(p, q))
    }

    fn neg(&self, _x: &GSet, a: &Vec<usize>) -> Option<Vec<usize>> {
        Some(a.iter().map(|&p| self.ring.neg(p)).collect())
    }

    fn restrict(&self, f: &GMap, b: &Vec<usize>) -> Vec<usize> {
        self.check(f.source());
        pointwise::restrict(f, b)
    }

    fn transfer(&self, f: &GMap, a: &Vec<usize>) -> Vec<usize> {
        self.check(f.source());
        pointwise::transfer(&self.ring, f, a)
    }

    fn norm(&self, f: &GMap, a: &Vec<usize>) -> Vec<usize> {
        self.check(f.source());
        pointwise::norm(&self.ring, f, a)
    }
}

impl PointwiseFamily for FixedPointFunctor {
    fn coefficients(&self) -> &TabRing {
        &self.ring
    }

    fn carrier(&self, x: &GSet) -> GSet {
        x.clone()
    }

    fn carrier_map(&self, f: &GMap) -> GMap {
        f.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_c2_over_z4() {
        let c2 = Arc::new(Group::cyclic(2));
        let t = FixedPointFunctor::new(&c2, TabRing::zmod(4).unwrap());
        let x = GSet::regular(&c2);
        let f = GMap::to_point(&x);
        let elems = t.elements(&x, 100).unwrap();
        assert_eq!(elems.len(), 4);
        for a in &elems {
            assert_eq!(a[0], a[1]);
            assert_eq!(t.transfer(&f, a), vec![(a[0] + a[1]) % 4]);
            assert_eq!(t.norm(&f, a), vec![(a[0] * a[1]) % 4]);
        }
        assert_eq!(t.elements(&GSet::point(&c2), 100).unwrap().len(), 4);
        assert!(t.elements(&GSet::trivial(&c2, 4), 100).is_none());
    }
}
