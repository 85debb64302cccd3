//! Bispans `[X ← A → B → Y]`: morphisms `X -> Y` of the category whose functors to rings are
//! the semi-Tambara functors.
//!
//! A bispan `(w, v, u)` acts on a functor as `u_+ ∘ v_• ∘ w*`. Bispans are kept as concrete
//! representatives; equality is always decided by [`bispans_equivalent`].

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::biset::{u_apply_map_between, u_apply_object, Biset, Verify};
use crate::error::{Error, Result};
use crate::exponential::{dependent_product_with_limit, DEFAULT_MAX_SECTIONS};
use crate::gset::{isomorphism_over, pullback, GMap, GSet, Universe};
use crate::tambara::TambaraFunctor;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bispan {
    w: GMap,
    v: GMap,
    u: GMap,
}

impl Bispan {
    /// `w: A -> X`, `v: A -> B`, `u: B -> Y`.
    pub fn new(w: GMap, v: GMap, u: GMap) -> Result<Bispan> {
        if w.source() != v.source() {
            return Err(Error::ShapeMismatch("w and v must share their source A".into()));
        }
        if v.target() != u.source() {
            return Err(Error::ShapeMismatch("u must start where v ends".into()));
        }
        if w.group() != u.group() {
            return Err(Error::GroupMismatch);
        }
        Ok(Bispan { w, v, u })
    }

    pub fn identity(x: &GSet) -> Bispan {
        let id = GMap::identity(x);
        Bispan {
            w: id.clone(),
            v: id.clone(),
            u: id,
        }
    }

    /// `T_u = [X ← X → X → Y]`
    pub fn gen_t(u: &GMap) -> Bispan {
        let id = GMap::identity(u.source());
        Bispan {
            w: id.clone(),
            v: id,
            u: u.clone(),
        }
    }

    /// `N_v = [X ← X → Y → Y]`
    pub fn gen_n(v: &GMap) -> Bispan {
        Bispan {
            w: GMap::identity(v.source()),
            v: v.clone(),
            u: GMap::identity(v.target()),
        }
    }

    /// `R_w = [X ← Y → Y → Y]` for `w: Y -> X`, a morphism `X -> Y`.
    pub fn gen_r(w: &GMap) -> Bispan {
        let id = GMap::identity(w.source());
        Bispan {
            w: w.clone(),
            v: id.clone(),
            u: id,
        }
    }

    pub fn x(&self) -> &GSet {
        self.w.target()
    }

    pub fn a(&self) -> &GSet {
        self.w.source()
    }

    pub fn b(&self) -> &GSet {
        self.v.target()
    }

    pub fn y(&self) -> &GSet {
        self.u.target()
    }

    pub fn w(&self) -> &GMap {
        &self.w
    }

    pub fn v(&self) -> &GMap {
        &self.v
    }

    pub fn u(&self) -> &GMap {
        &self.u
    }
}

/// `second ∘ first`.
pub fn compose(second: &Bispan, first: &Bispan) -> Result<Bispan> {
    compose_with_limit(second, first, DEFAULT_MAX_SECTIONS)
}

/// `second ∘ first`, refusing when the intermediate dependent product would exceed
/// `max_sections` elements.
///
/// With `first = [X ← A → B → Y]` and `second = [Y ← C → D → Z]`: `B' = B ×_Y C`,
/// `A' = A ×_B B'`, `D̃ = Π_{C→D}(B')` with `C̃ = C ×_D D̃` and evaluation `C̃ -> B'`, and
/// `A'' = A' ×_{B'} C̃`. The composite is `[X ← A'' → D̃ → Z]`.
pub fn compose_with_limit(second: &Bispan, first: &Bispan, max_sections: usize) -> Result<Bispan> {
    if first.y() != second.x() {
        return Err(Error::ShapeMismatch("the first bispan must end where the second starts".into()));
    }
    let b1 = pullback(&first.u, &second.w)?;
    let a1 = pullback(&first.v, &b1.left)?;
    let exp = dependent_product_with_limit(&second.v, &b1.right, max_sections)?;
    let a2 = pullback(&a1.right, &exp.lam)?;
    let w = first.w.after(&a1.left)?.after(&a2.left)?;
    let v = exp.rho.after(&a2.right)?;
    let u = second.u.after(&exp.pi)?;
    Bispan::new(w, v, u)
}

/// Isomorphisms `a: A -> A'` and `b: B -> B'` witnessing `φ ≡ φ'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub a: GMap,
    pub b: GMap,
}

/// Searches for `a`, `b` with `u = u'∘b`, `b∘v = v'∘a` and `w = w'∘a`.
///
/// The search matches `B`-orbits one at a time. Whether an orbit of `B` together with the part
/// of `A` over it can be carried onto a given orbit of `B'` does not depend on the other orbits,
/// and it is an isomorphism relation, so greedy matching finds a witness whenever one exists.
pub fn bispans_equivalent(phi: &Bispan, psi: &Bispan) -> Result<Option<Equivalence>> {
    if phi.x() != psi.x() || phi.y() != psi.y() {
        return Err(Error::ObjectMismatch("bispans must have the same source and target".into()));
    }
    let (b, b2) = (phi.b(), psi.b());
    if b.size() != b2.size() || phi.a().size() != psi.a().size() {
        return Ok(None);
    }
    let group = b.group();
    let orbits = b.orbits();
    let orbits2 = b2.orbits();
    if orbits.len() != orbits2.len() {
        return Ok(None);
    }
    let block = |sp: &Bispan, orbit_of: &[usize], o: usize| -> Vec<usize> {
        (0..sp.a().size()).filter(|&a| orbit_of[sp.v.apply(a)] == o).collect()
    };
    let (oi, oi2) = (b.orbit_index(), b2.orbit_index());
    let mut used = vec![false; orbits2.len()];
    let mut bmap = vec![usize::MAX; b.size()];
    let mut amap = vec![usize::MAX; phi.a().size()];
    for (o, orbit) in orbits.iter().enumerate() {
        let r = orbit[0];
        let stab: Vec<usize> = group.elements().filter(|&g| b.act(g, r) == r).collect();
        let ablock = block(phi, &oi, o);
        let asub = phi.a().restrict_to(&ablock)?;
        let mut found = false;
        'candidates: for (o2, orbit2) in orbits2.iter().enumerate() {
            if used[o2] || orbit2.len() != orbit.len() {
                continue;
            }
            let ablock2 = block(psi, &oi2, o2);
            if ablock2.len() != ablock.len() {
                continue;
            }
            let asub2 = psi.a().restrict_to(&ablock2)?;
            for &t in orbit2 {
                if psi.u.apply(t) != phi.u.apply(r) || stab.iter().any(|&g| b2.act(g, t) != t) {
                    continue;
                }
                if group.elements().any(|g| b2.act(g, t) == t && b.act(g, r) != r) {
                    continue;
                }
                for g in group.elements() {
                    bmap[b.act(g, r)] = b2.act(g, t);
                }
                let wl: Vec<usize> = ablock.iter().map(|&a| phi.w.apply(a)).collect();
                let bl: Vec<usize> = ablock.iter().map(|&a| bmap[phi.v.apply(a)]).collect();
                let wl2: Vec<usize> = ablock2.iter().map(|&a| psi.w.apply(a)).collect();
                let vl2: Vec<usize> = ablock2.iter().map(|&a| psi.v.apply(a)).collect();
                if let Some(iso) = isomorphism_over(&asub, &asub2, &[&wl, &bl], &[&wl2, &vl2]) {
                    for (i, &a) in ablock.iter().enumerate() {
                        amap[a] = ablock2[iso[i]];
                    }
                    used[o2] = true;
                    found = true;
                    break 'candidates;
                }
            }
        }
        if !found {
            return Ok(None);
        }
    }
    let a = GMap::new(phi.a().clone(), psi.a().clone(), amap)?;
    let b = GMap::new(b.clone(), b2.clone(), bmap)?;
    debug_assert!(phi.u == psi.u.after(&b)? && b.after(&phi.v)? == psi.v.after(&a)? && phi.w == psi.w.after(&a)?);
    Ok(Some(Equivalence { a, b }))
}

/// `X ⊔ Y` with the projections `R_{ι_X}: X ⊔ Y -> X` and `R_{ι_Y}: X ⊔ Y -> Y`.
pub fn product_pair(x: &GSet, y: &GSet) -> Result<(GSet, Bispan, Bispan)> {
    let cp = x.coproduct(y)?;
    Ok((cp.set, Bispan::gen_r(&cp.left), Bispan::gen_r(&cp.right)))
}

/// `F_U[X ← A → B → Y] = [U∘X ← U∘A → U∘B → U∘Y]`.
pub fn apply_f_u(biset: &Biset, phi: &Bispan, verify: Verify) -> Result<Bispan> {
    let ux = u_apply_object(biset, phi.x(), verify)?;
    let ua = u_apply_object(biset, phi.a(), verify)?;
    let ub = u_apply_object(biset, phi.b(), verify)?;
    let uy = u_apply_object(biset, phi.y(), verify)?;
    Bispan::new(
        u_apply_map_between(&ua, &ux, &phi.w, verify)?,
        u_apply_map_between(&ua, &ub, &phi.v, verify)?,
        u_apply_map_between(&ub, &uy, &phi.u, verify)?,
    )
}

/// `u_+ v_• w*(a)` for `a ∈ T(X)`.
pub fn eval_bispan<T: TambaraFunctor>(t: &T, phi: &Bispan, a: &T::Elem) -> T::Elem {
    t.transfer(&phi.u, &t.norm(&phi.v, &t.restrict(&phi.w, a)))
}

/// The graph of [`eval_bispan`] on all of `T(X)`, or `None` if `T(X)` has more than `cap` elements.
pub fn eval_table<T: TambaraFunctor>(t: &T, phi: &Bispan, cap: usize) -> Option<Vec<(T::Elem, T::Elem)>> {
    let elems = t.elements(phi.x(), cap)?;
    Some(elems.into_iter().map(|a| {
        let b = eval_bispan(t, phi, &a);
        (a, b)
    }).collect())
}

/// Draws bispans whose four objects come from a universe.
pub struct BispanSampler<'a> {
    universe: &'a Universe,
    between: HashMap<(usize, usize), Vec<usize>>,
}

impl<'a> BispanSampler<'a> {
    pub fn new(universe: &'a Universe) -> BispanSampler<'a> {
        let pos: HashMap<&GSet, usize> = universe.objects.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, m) in universe.maps.iter().enumerate() {
            between.entry((pos[m.source()], pos[m.target()])).or_default().push(k);
        }
        BispanSampler { universe, between }
    }

    fn pick<R: Rng>(&self, from: usize, to: usize, rng: &mut R) -> Option<GMap> {
        let k = *self.between.get(&(from, to))?.choose(rng)?;
        Some(self.universe.maps[k].clone())
    }

    /// A bispan `x -> y` (universe indices), choosing `A`, `B` and all legs at random. Gives up
    /// after a bounded number of attempts if no legs exist.
    pub fn sample<R: Rng>(&self, x: usize, y: usize, rng: &mut R) -> Option<Bispan> {
        let n = self.universe.objects.len();
        for _ in 0..64 {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let legs = (self.pick(a, x, rng), self.pick(a, b, rng), self.pick(b, y, rng));
            if let (Some(w), Some(v), Some(u)) = legs {
                return Some(Bispan::new(w, v, u).expect("legs fit by construction"));
            }
        }
        None
    }

    /// A bispan between random universe objects, with its endpoints.
    pub fn sample_any<R: Rng>(&self, rng: &mut R) -> (usize, usize, Bispan) {
        let n = self.universe.objects.len();
        loop {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if let Some(phi) = self.sample(x, y, rng) {
                return (x, y, phi);
            }
        }
    }
}
