//! Functors whose values are invariant functions on a carrier set with values in a fixed ring.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::TambaraFunctor;
use crate::gset::{GMap, GSet};
use crate::ring::TabRing;

/// `T(X)` is the ring of invariant functions `carrier(X) -> R`, with restriction, transfer and
/// norm given by precomposition, fiber sums and fiber products along `carrier_map(f)`.
pub trait PointwiseFamily: TambaraFunctor<Elem = Vec<usize>> {
    fn coefficients(&self) -> &TabRing;
    fn carrier(&self, x: &GSet) -> GSet;
    fn carrier_map(&self, f: &GMap) -> GMap;
}

/// Invariant functions in lexicographic order of their values on orbit representatives
/// (orbits ordered by least element).
pub(crate) fn enumerate(ring: &TabRing, carrier: &GSet, cap: usize) -> Option<Vec<Vec<usize>>> {
    let orbits = carrier.orbits();
    let count = u32::try_from(orbits.len())
        .ok()
        .and_then(|k| ring.size().checked_pow(k))
        .filter(|&c| c <= cap)?;
    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0usize; orbits.len()];
    for _ in 0..count {
        out.push(spread(carrier.size(), &orbits, &digits));
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < ring.size() {
                break;
            }
            *d = 0;
        }
    }
    Some(out)
}

pub(crate) fn sample(ring: &TabRing, carrier: &GSet, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let orbits = carrier.orbits();
    let digits: Vec<usize> = orbits.iter().map(|_| rng.gen_range(0..ring.size())).collect();
    spread(carrier.size(), &orbits, &digits)
}

/// Samples with every orbit value drawn from `values`.
pub(crate) fn sample_from(values: &[usize], carrier: &GSet, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let orbits = carrier.orbits();
    let digits: Vec<usize> = orbits.iter().map(|_| values[rng.gen_range(0..values.len())]).collect();
    let mut out = vec![0; carrier.size()];
    for (o, &v) in orbits.iter().zip(&digits) {
        for &p in o {
            out[p] = v;
        }
    }
    out
}

/// All invariant functions with values in `values`, or `None` beyond `cap`.
pub(crate) fn enumerate_from(values: &[usize], carrier: &GSet, cap: usize) -> Option<Vec<Vec<usize>>> {
    let orbits = carrier.orbits();
    let count = u32::try_from(orbits.len())
        .ok()
        .and_then(|k| values.len().checked_pow(k))
        .filter(|&c| c <= cap)?;
    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0usize; orbits.len()];
    for _ in 0..count {
        let mut f = vec![0; carrier.size()];
        for (o, &d) in orbits.iter().zip(&digits) {
            for &p in o {
                f[p] = values[d];
            }
        }
        out.push(f);
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < values.len() {
                break;
            }
            *d = 0;
        }
    }
    Some(out)
}

fn spread(size: usize, orbits: &[Vec<usize>], digits: &[usize]) -> Vec<usize> {
    let mut out = vec![0; size];
    for (o, &v) in orbits.iter().zip(digits) {
        for &p in o {
            out[p] = v;
        }
    }
    out
}

pub(crate) fn zip(a: &[usize], b: &[usize], op: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    assert_eq!(a.len(), b.len(), "elements live over different carriers");
    a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect()
}

pub(crate) fn restrict(f: &GMap, b: &[usize]) -> Vec<usize> {
    assert_eq!(b.len(), f.target().size(), "element does not live over the target");
    f.values().iter().map(|&y| b[y]).collect()
}

pub(crate) fn transfer(ring: &TabRing, f: &GMap, a: &[usize]) -> Vec<usize> {
    assert_eq!(a.len(), f.source().size(), "element does not live over the source");
    let mut out = vec![ring.zero(); f.target().size()];
    for (x, &y) in f.values().iter().enumerate() {
        out[y] = ring.add(out[y], a[x]);
    }
    out
}

pub(crate) fn norm(ring: &TabRing, f: &GMap, a: &[usize]) -> Vec<usize> {
    assert_eq!(a.len(), f.source().size(), "element does not live over the source");
    let mut out = vec![ring.one(); f.target().size()];
    for (x, &y) in f.values().iter().enumerate() {
        out[y] = ring.mul(out[y], a[x]);
    }
    out
}
