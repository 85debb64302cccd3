//! Dependent products `Π_f(A)` and canonical exponential diagrams.
//!
//! For `f: X -> Y` and `p: A -> X`, an element of `Π_f(A)` is a pair `(y, σ)` where `σ` picks a
//! lift along `p` for every point of the fiber `f⁻¹(y)`. The group acts by
//! `g(y, σ) = (gy, x' ↦ g σ(g⁻¹ x'))`.

use crate::error::{Error, Result};
use crate::gset::{pullback, GMap, GSet, Pullback};

/// Default bound on the number of sections materialized by [`dependent_product`].
pub const DEFAULT_MAX_SECTIONS: usize = 1_000_000;

/// A point of `Π_f(A)`: a base point `y` and one lift per element of `f⁻¹(y)` (ascending order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Section {
    pub base: usize,
    pub assignment: Vec<usize>,
}

/// The canonical exponential diagram generated by `f: X -> Y` and `p: A -> X`.
///
/// `Z = X ×_Y Π_f(A)`; `rho: Z -> Π_f(A)` is the pulled-back `f`, `lam: Z -> A` is evaluation
/// `(x, (y, σ)) ↦ σ(x)`, and `zx: Z -> X` is the other pullback projection (equal to `p ∘ lam`).
#[derive(Clone, Debug)]
pub struct ExponentialDiagram {
    pub f: GMap,
    pub p: GMap,
    pub pi: GMap,
    pub lam: GMap,
    pub rho: GMap,
    pub zx: GMap,
    pub sections: Vec<Section>,
    index: SectionIndex,
    z_pairs: Pullback,
}

/// Mixed-radix addressing of sections: sections over `y` occupy a contiguous block starting at
/// `offset[y]`, ordered lexicographically by the positions of their lifts.
#[derive(Clone, Debug)]
struct SectionIndex {
    offset: Vec<usize>,
    fibers: Vec<Vec<usize>>,
    lifts: Vec<Vec<usize>>,
}

impl SectionIndex {
    fn locate(&self, base: usize, assignment: &[usize]) -> Option<usize> {
        let fiber = self.fibers.get(base)?;
        if fiber.len() != assignment.len() {
            return None;
        }
        let mut idx = 0usize;
        for (&x, &a) in fiber.iter().zip(assignment) {
            let lifts = &self.lifts[x];
            let pos = lifts.binary_search(&a).ok()?;
            idx = idx * lifts.len() + pos;
        }
        Some(self.offset[base] + idx)
    }
}

impl ExponentialDiagram {
    pub fn pi_set(&self) -> &GSet {
        self.pi.source()
    }

    pub fn z_set(&self) -> &GSet {
        self.rho.source()
    }

    /// Index of the section `(base, assignment)` in `Π_f(A)`.
    pub fn index_of(&self, base: usize, assignment: &[usize]) -> Option<usize> {
        self.index.locate(base, assignment)
    }

    /// The fiber `f⁻¹(y)` in the order used by section assignments.
    pub fn fiber(&self, y: usize) -> &[usize] {
        &self.index.fibers[y]
    }

    /// `σ(x)` for the section with index `s`; `None` if `x` is not in its fiber.
    pub fn evaluate(&self, s: usize, x: usize) -> Option<usize> {
        let sec = &self.sections[s];
        let pos = self.index.fibers[sec.base].binary_search(&x).ok()?;
        Some(sec.assignment[pos])
    }

    /// Index in `Z` of the pair `(x, s)`.
    pub fn z_index(&self, x: usize, s: usize) -> Option<usize> {
        self.z_pairs.index_of(x, s)
    }
}

/// Builds `Π_f(A)` and its canonical exponential diagram, refusing more than
/// [`DEFAULT_MAX_SECTIONS`] sections.
pub fn dependent_product(f: &GMap, p: &GMap) -> Result<ExponentialDiagram> {
    dependent_product_with_limit(f, p, DEFAULT_MAX_SECTIONS)
}

pub fn dependent_product_with_limit(f: &GMap, p: &GMap, max_sections: usize) -> Result<ExponentialDiagram> {
    if p.target() != f.source() {
        return Err(Error::ShapeMismatch(
            "dependent product: p must land in the source of f".into(),
        ));
    }
    let group = f.group();
    let fibers = f.fibers();
    let lifts = p.fibers();

    let mut offset = Vec::with_capacity(fibers.len() + 1);
    let mut total: u128 = 0;
    for fiber in &fibers {
        offset.push(total as usize);
        let count = fiber
            .iter()
            .try_fold(1u128, |acc, &x| acc.checked_mul(lifts[x].len() as u128))
            .unwrap_or(u128::MAX);
        total = total.saturating_add(count);
        if total > max_sections as u128 {
            return Err(Error::SizeLimit {
                needed: total,
                limit: max_sections,
            });
        }
    }
    offset.push(total as usize);
    let total = total as usize;

    let mut sections = Vec::with_capacity(total);
    for (y, fiber) in fibers.iter().enumerate() {
        if fiber.iter().any(|&x| lifts[x].is_empty()) {
            continue;
        }
        let mut digits = vec![0usize; fiber.len()];
        loop {
            let assignment = fiber.iter().zip(&digits).map(|(&x, &d)| lifts[x][d]).collect();
            sections.push(Section { base: y, assignment });
            let mut i = fiber.len();
            let mut done = true;
            while i > 0 {
                i -= 1;
                digits[i] += 1;
                if digits[i] < lifts[fiber[i]].len() {
                    done = false;
                    break;
                }
                digits[i] = 0;
            }
            if done {
                break;
            }
        }
    }
    debug_assert_eq!(sections.len(), total);

    let index = SectionIndex {
        offset,
        fibers,
        lifts,
    };
    let x_set = f.source();
    let a_set = p.source();
    let mut act = Vec::with_capacity(total * group.order());
    let mut moved = Vec::new();
    for g in group.elements() {
        let ginv = group.inv(g);
        for sec in &sections {
            let gy = f.target().act(g, sec.base);
            // (gσ)(x') = g σ(g⁻¹ x') for x' in f⁻¹(gy)
            moved.clear();
            for &xp in &index.fibers[gy] {
                let x = x_set.act(ginv, xp);
                let pos = index.fibers[sec.base]
                    .binary_search(&x)
                    .expect("g⁻¹ maps f⁻¹(gy) onto f⁻¹(y)");
                moved.push(a_set.act(g, sec.assignment[pos]));
            }
            act.push(index.locate(gy, &moved).expect("translated section is a section"));
        }
    }
    let pi_set = GSet::from_flat_unchecked(group, total, act);
    let pi = GMap::new_unchecked(pi_set.clone(), f.target().clone(), sections.iter().map(|s| s.base).collect());
    let z = pullback(f, &pi)?;
    let lam_values = z
        .pairs
        .iter()
        .map(|&(x, s)| {
            let sec = &sections[s];
            let pos = index.fibers[sec.base].binary_search(&x).expect("x lies over the base");
            sec.assignment[pos]
        })
        .collect();
    let lam = GMap::new_unchecked(z.set.clone(), a_set.clone(), lam_values);
    Ok(ExponentialDiagram {
        f: f.clone(),
        p: p.clone(),
        pi,
        lam,
        rho: z.right.clone(),
        zx: z.left.clone(),
        sections,
        index,
        z_pairs: z,
    })
}

/// A commuting pentagon `A <-lam- Z -rho-> P -pi-> Y` over `f: X -> Y`, `p: A -> X`.
#[derive(Clone, Debug)]
pub struct Pentagon {
    pub f: GMap,
    pub p: GMap,
    pub lam: GMap,
    pub rho: GMap,
    pub pi: GMap,
}

impl From<&ExponentialDiagram> for Pentagon {
    fn from(d: &ExponentialDiagram) -> Pentagon {
        Pentagon {
            f: d.f.clone(),
            p: d.p.clone(),
            lam: d.lam.clone(),
            rho: d.rho.clone(),
            pi: d.pi.clone(),
        }
    }
}

/// Isomorphisms from a candidate pentagon onto the canonical exponential diagram of its `f, p`.
#[derive(Clone, Debug)]
pub struct ExponentialWitness {
    /// `P -> Π_f(A)` over `Y`.
    pub pi_iso: GMap,
    /// `Z -> X ×_Y Π_f(A)`.
    pub z_iso: GMap,
    pub canonical: ExponentialDiagram,
}

/// Decides whether a pentagon is isomorphic to the canonical exponential diagram of its `f` and
/// `p`, matching all five maps.
///
/// Such an isomorphism, when it exists, is forced: `Z` must be the pullback of `f` along `pi` via
/// `(p ∘ lam, rho)`, and a point `q` of `P` must go to the section `x ↦ lam(z)` where `z` is the
/// point over `(x, q)`. Both comparison maps are computed and checked for bijectivity.
pub fn is_exponential_diagram(candidate: &Pentagon) -> Result<Option<ExponentialWitness>> {
    let Pentagon { f, p, lam, rho, pi } = candidate;
    if p.target() != f.source()
        || lam.target() != p.source()
        || lam.source() != rho.source()
        || rho.target() != pi.source()
        || pi.target() != f.target()
    {
        return Err(Error::ShapeMismatch("pentagon maps do not align".into()));
    }
    let z = lam.source();
    for q in 0..z.size() {
        if f.apply(p.apply(lam.apply(q))) != pi.apply(rho.apply(q)) {
            return Ok(None);
        }
    }
    let canonical = dependent_product(f, p)?;

    // Z must be X ×_Y P through (p∘lam, rho).
    let pb = pullback(f, pi)?;
    let mut z_to_pb = Vec::with_capacity(z.size());
    for q in 0..z.size() {
        let pair_idx = pb
            .index_of(p.apply(lam.apply(q)), rho.apply(q))
            .expect("commuting square lands in the pullback");
        z_to_pb.push(pair_idx);
    }
    let comparison = GMap::new_unchecked(z.clone(), pb.set.clone(), z_to_pb);
    let Some(pb_to_z) = comparison.inverse() else {
        return Ok(None);
    };

    // classifying map P -> Π_f(A)
    let pset = pi.source();
    let mut classify = Vec::with_capacity(pset.size());
    for q in 0..pset.size() {
        let y = pi.apply(q);
        let assignment: Vec<usize> = canonical
            .fiber(y)
            .iter()
            .map(|&x| {
                let pair = pb.index_of(x, q).expect("(x, q) lies in the pullback");
                lam.apply(pb_to_z.apply(pair))
            })
            .collect();
        let s = canonical
            .index_of(y, &assignment)
            .expect("lam is a section of p over each fiber");
        classify.push(s);
    }
    let pi_iso = GMap::new(pset.clone(), canonical.pi_set().clone(), classify)?;
    if !pi_iso.is_bijective() {
        return Ok(None);
    }
    let z_values = (0..z.size())
        .map(|q| {
            canonical
                .z_index(p.apply(lam.apply(q)), pi_iso.apply(rho.apply(q)))
                .expect("image lies in the canonical pullback")
        })
        .collect();
    let z_iso = GMap::new(z.clone(), canonical.z_set().clone(), z_values)?;
    debug_assert!(z_iso.is_bijective());
    Ok(Some(ExponentialWitness {
        pi_iso,
        z_iso,
        canonical,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use std::sync::Arc;

    fn c2() -> Arc<Group> {
        Arc::new(Group::cyclic(2))
    }

    fn fold(x: &GSet) -> GMap {
        let cp = x.coproduct(x).unwrap();
        let n = x.size();
        GMap::new(cp.set, x.clone(), (0..2 * n).map(|i| i % n).collect()).unwrap()
    }

    #[test]
    fn identity_lift_gives_one_section_per_base() {
        let g = c2();
        let x = GSet::regular(&g);
        let y = GSet::point(&g);
        let d = dependent_product(&GMap::to_point(&x), &GMap::identity(&x)).unwrap();
        assert_eq!(d.pi_set().size(), y.size());
    }

    #[test]
    fn empty_fiber_gives_empty_section() {
        let g = c2();
        let x = GSet::empty(&g);
        let y = GSet::trivial(&g, 2);
        let f = GMap::new(x.clone(), y, vec![]).unwrap();
        let d = dependent_product(&f, &GMap::identity(&x)).unwrap();
        assert_eq!(d.sections.len(), 2);
        assert!(d.sections.iter().all(|s| s.assignment.is_empty()));
        assert_eq!(d.z_set().size(), 0);
    }

    #[test]
    fn no_lift_means_no_section() {
        let g = c2();
        let x = GSet::point(&g);
        let a = GSet::empty(&g);
        let p = GMap::new(a, x.clone(), vec![]).unwrap();
        let d = dependent_product(&GMap::identity(&x), &p).unwrap();
        assert_eq!(d.sections.len(), 0);
    }

    #[test]
    fn size_limit_is_enforced() {
        let g = c2();
        let x = GSet::trivial(&g, 4);
        let a = x.coproduct(&x).unwrap().set;
        let p = GMap::new(a, x.clone(), (0..8).map(|i| i % 4).collect()).unwrap();
        let f = GMap::to_point(&x);
        assert!(matches!(
            dependent_product_with_limit(&f, &p, 15),
            Err(Error::SizeLimit { needed: 16, limit: 15 })
        ));
        assert!(dependent_product_with_limit(&f, &p, 16).is_ok());
    }

    #[test]
    fn shape_mismatch() {
        let g = c2();
        let x = GSet::regular(&g);
        let f = GMap::to_point(&x);
        assert!(matches!(
            dependent_product(&f, &GMap::identity(&GSet::point(&g))),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn canonical_diagram_is_exponential_with_identity_witness() {
        let g = c2();
        let x = GSet::regular(&g);
        let d = dependent_product(&GMap::to_point(&x), &fold(&x)).unwrap();
        let w = is_exponential_diagram(&Pentagon::from(&d)).unwrap().unwrap();
        assert_eq!(w.pi_iso, GMap::identity(d.pi_set()));
        assert_eq!(w.z_iso, GMap::identity(d.z_set()));
    }

    #[test]
    fn broken_rho_is_rejected() {
        let g = c2();
        let x = GSet::regular(&g);
        let d = dependent_product(&GMap::to_point(&x), &fold(&x)).unwrap();
        // collapse rho onto a single fixed section: still commutes (Y is a point) but Z is no
        // longer the pullback
        let fixed = (0..d.pi_set().size())
            .find(|&s| d.pi_set().act(1, s) == s)
            .unwrap();
        let mut pent = Pentagon::from(&d);
        pent.rho = GMap::new(d.z_set().clone(), d.pi_set().clone(), vec![fixed; d.z_set().size()]).unwrap();
        assert!(is_exponential_diagram(&pent).unwrap().is_none());
    }
}
