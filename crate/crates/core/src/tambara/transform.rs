use std::sync::{Arc, Mutex};

use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::pointwise::PointwiseFamily;
use super::TambaraFunctor;
use crate::biset::{u_apply_map_between, u_apply_object, Biset, UComposite, Verify};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::gset::{GMap, GSet};
use crate::ring::TabRing;

/// `T∘U` for an `H`-functor `T` and an H-G-biset `U`: `(T∘U)(X) = T(U∘X)` and every structure
/// map of `f` is the structure map of `U∘f`.
///
/// Composites `U∘X` and `U∘f` are memoized per input; the cache only ever stores the value a
/// fresh computation would produce.
pub struct Transformed<T> {
    inner: T,
    biset: Arc<Biset>,
    verify: Verify,
    objects: Mutex<FxHashMap<GSet, Arc<UComposite>>>,
    maps: Mutex<FxHashMap<GMap, Arc<GMap>>>,
}

impl<T: TambaraFunctor> Transformed<T> {
    pub fn new(inner: T, biset: &Biset) -> Result<Transformed<T>> {
        Transformed::with_verify(inner, biset, Verify::Eager)
    }

    pub fn with_verify(inner: T, biset: &Biset, verify: Verify) -> Result<Transformed<T>> {
        if inner.group() != biset.left_group() {
            return Err(Error::GroupMismatch);
        }
        Ok(Transformed {
            inner,
            biset: Arc::new(biset.clone()),
            verify,
            objects: Mutex::default(),
            maps: Mutex::default(),
        })
    }

    pub fn inner(&self) -> &T {
        &self.inner
    }

    pub fn biset(&self) -> &Biset {
        &self.biset
    }

    /// `U∘X`
    pub fn composite(&self, x: &GSet) -> Arc<UComposite> {
        if let Some(c) = self.objects.lock().expect("cache lock").get(x) {
            return Arc::clone(c);
        }
        let c = Arc::new(u_apply_object(&self.biset, x, self.verify).expect("G-set over the biset's right group"));
        self.objects
            .lock()
            .expect("cache lock")
            .entry(x.clone())
            .or_insert(c)
            .clone()
    }

    /// `U∘f`
    pub fn map(&self, f: &GMap) -> Arc<GMap> {
        if let Some(m) = self.maps.lock().expect("cache lock").get(f) {
            return Arc::clone(m);
        }
        let src = self.composite(f.source());
        let tgt = self.composite(f.target());
        let m = Arc::new(u_apply_map_between(&src, &tgt, f, self.verify).expect("valid composite map"));
        self.maps
            .lock()
            .expect("cache lock")
            .entry(f.clone())
            .or_insert(m)
            .clone()
    }

    fn with_hset<R>(&self, x: &GSet, k: impl FnOnce(&GSet) -> R) -> R {
        k(&self.composite(x).hset)
    }
}

impl<T: TambaraFunctor> TambaraFunctor for Transformed<T> {
    type Elem = T::Elem;

    fn group(&self) -> &Arc<Group> {
        self.biset.right_group()
    }

    fn has_negation(&self) -> bool {
        self.inner.has_negation()
    }

    fn elements(&self, x: &GSet, cap: usize) -> Option<Vec<T::Elem>> {
        self.with_hset(x, |h| self.inner.elements(h, cap))
    }

    fn sample(&self, x: &GSet, rng: &mut ChaCha8Rng) -> T::Elem {
        self.with_hset(x, |h| self.inner.sample(h, rng))
    }

    fn zero(&self, x: &GSet) -> T::Elem {
        self.with_hset(x, |h| self.inner.zero(h))
    }

    fn one(&self, x: &GSet) -> T::Elem {
        self.with_hset(x, |h| self.inner.one(h))
    }

    fn add(&self, x: &GSet, a: &T::Elem, b: &T::Elem) -> T::Elem {
        self.with_hset(x, |h| self.inner.add(h, a, b))
    }

    fn mul(&self, x: &GSet, a: &T::Elem, b: &T::Elem) -> T::Elem {
        self.with_hset(x, |h| self.inner.mul(h, a, b))
    }

    fn neg(&self, x: &GSet, a: &T::Elem) -> Option<T::Elem> {
        self.with_hset(x, |h| self.inner.neg(h, a))
    }

    fn restrict(&self, f: &GMap, b: &T::Elem) -> T::Elem {
        self.inner.restrict(&self.map(f), b)
    }

    fn transfer(&self, f: &GMap, a: &T::Elem) -> T::Elem {
        self.inner.transfer(&self.map(f), a)
    }

    fn norm(&self, f: &GMap, a: &T::Elem) -> T::Elem {
        self.inner.norm(&self.map(f), a)
    }
}

impl<T: PointwiseFamily> PointwiseFamily for Transformed<T> {
    fn coefficients(&self) -> &TabRing {
        self.inner.coefficients()
    }

    fn carrier(&self, x: &GSet) -> GSet {
        self.with_hset(x, |h| self.inner.carrier(h))
    }

    fn carrier_map(&self, f: &GMap) -> GMap {
        self.inner.carrier_map(&self.map(f))
    }
}
