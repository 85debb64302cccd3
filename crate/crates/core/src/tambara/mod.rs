//! Tambara functors evaluated element by element.
//!
//! A functor is a procedure: it never tabulates `T(X)` as a whole. Elements of `T(X)` are
//! values of [`TambaraFunctor::Elem`] interpreted relative to `X`, and the structure maps act on
//! single elements. Enumeration is offered when the value ring is small enough.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::group::Group;
use crate::gset::{GMap, GSet};

mod axioms;
mod burnside;
mod corollaries;
mod fixed_point;
mod localize;
mod morphism;
mod pointwise;
mod quotient;
mod transform;

pub use axioms::{check_axioms, probe_elements, AxiomOptions};
pub(crate) use axioms::MapIndex;
pub use burnside::BurnsideSemiTambara;
pub use corollaries::{check_cor27, check_cor28, compare_tables};
pub use fixed_point::FixedPointFunctor;
pub use localize::{
    check_subfunctor, validate_subfunctor, Localized, MultiplicativeFamily, PointwiseSubmonoid,
    TransformedSubfunctor,
};
pub use morphism::{check_morphism, PointwiseRingHom, TambaraMorphism, TransformedMorphism};
pub use pointwise::PointwiseFamily;
pub use quotient::{
    check_ideal, validate_ideal, IdealFamily, PointwiseIdeal, Quotient, TransformedIdeal, WholeIdeal,
    ZeroIdeal,
};
pub use transform::Transformed;

/// A (semi-)Tambara functor on finite `G`-sets.
///
/// Structure maps panic when handed maps over the wrong group or elements of the wrong shape;
/// callers validate inputs at the boundary.
pub trait TambaraFunctor {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn group(&self) -> &Arc<Group>;

    /// Whether every `T(X)` is a ring rather than a semi-ring.
    fn has_negation(&self) -> bool;

    /// All elements of `T(X)` in a fixed order, or `None` if there are more than `cap`.
    fn elements(&self, x: &GSet, cap: usize) -> Option<Vec<Self::Elem>>;

    fn sample(&self, x: &GSet, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn zero(&self, x: &GSet) -> Self::Elem;
    fn one(&self, x: &GSet) -> Self::Elem;
    fn add(&self, x: &GSet, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &GSet, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for semi-Tambara functors.
    fn neg(&self, x: &GSet, a: &Self::Elem) -> Option<Self::Elem>;

    /// `f*: T(Y) -> T(X)` for `f: X -> Y`.
    fn restrict(&self, f: &GMap, b: &Self::Elem) -> Self::Elem;
    /// `f_+: T(X) -> T(Y)`
    fn transfer(&self, f: &GMap, a: &Self::Elem) -> Self::Elem;
    /// `f_•: T(X) -> T(Y)`
    fn norm(&self, f: &GMap, a: &Self::Elem) -> Self::Elem;
}

impl<T: TambaraFunctor + ?Sized> TambaraFunctor for Arc<T> {
    type Elem = T::Elem;

    fn group(&self) -> &Arc<Group> {
        (**self).group()
    }
    fn has_negation(&self) -> bool {
        (**self).has_negation()
    }
    fn elements(&self, x: &GSet, cap: usize) -> Option<Vec<Self::Elem>> {
        (**self).elements(x, cap)
    }
    fn sample(&self, x: &GSet, rng: &mut ChaCha8Rng) -> Self::Elem {
        (**self).sample(x, rng)
    }
    fn zero(&self, x: &GSet) -> Self::Elem {
        (**self).zero(x)
    }
    fn one(&self, x: &GSet) -> Self::Elem {
        (**self).one(x)
    }
    fn add(&self, x: &GSet, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).add(x, a, b)
    }
    fn mul(&self, x: &GSet, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).mul(x, a, b)
    }
    fn neg(&self, x: &GSet, a: &Self::Elem) -> Option<Self::Elem> {
        (**self).neg(x, a)
    }
    fn restrict(&self, f: &GMap, b: &Self::Elem) -> Self::Elem {
        (**self).restrict(f, b)
    }
    fn transfer(&self, f: &GMap, a: &Self::Elem) -> Self::Elem {
        (**self).transfer(f, a)
    }
    fn norm(&self, f: &GMap, a: &Self::Elem) -> Self::Elem {
        (**self).norm(f, a)
    }
}
