//! Finite left G-sets, equivariant maps, and the finite limits and colimits used throughout.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// A finite left G-set. `act[g * size + x]` is `g . x`.
#[derive(Clone, Debug)]
pub struct GSet {
    group: Arc<Group>,
    size: usize,
    act: Arc<[usize]>,
    fingerprint: u64,
}

impl PartialEq for GSet {
    fn eq(&self, other: &GSet) -> bool {
        self.size == other.size
            && self.fingerprint == other.fingerprint
            && (Arc::ptr_eq(&self.act, &other.act) || self.act == other.act)
            && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl Eq for GSet {}

// The group is left out of the hash; equal G-sets still hash alike.
impl std::hash::Hash for GSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        state.write_u64(self.fingerprint);
    }
}

fn fingerprint(size: usize, act: &[usize]) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = rustc_hash::FxHasher::default();
    size.hash(&mut h);
    act.hash(&mut h);
    h.finish()
}

impl GSet {
    /// Validates an action table given as one row per group element.
    pub fn new(group: &Arc<Group>, rows: &[Vec<usize>]) -> Result<GSet> {
        if rows.len() != group.order() {
            return Err(Error::Malformed(format!(
                "action table has {} rows, group has order {}",
                rows.len(),
                group.order()
            )));
        }
        let size = rows[0].len();
        let mut act = Vec::with_capacity(size * group.order());
        for row in rows {
            if row.len() != size {
                return Err(Error::Malformed("action rows have different lengths".into()));
            }
            act.extend_from_slice(row);
        }
        GSet::from_flat(group, size, act)
    }

    pub fn from_flat(group: &Arc<Group>, size: usize, act: Vec<usize>) -> Result<GSet> {
        if act.len() != size * group.order() {
            return Err(Error::Malformed("action table has the wrong size".into()));
        }
        if let Some(&v) = act.iter().find(|&&v| v >= size) {
            return Err(Error::OutOfRange { index: v, size });
        }
        let set = GSet::from_flat_unchecked(group, size, act);
        for x in 0..size {
            if set.act(0, x) != x {
                return Err(Error::NotAnAction {
                    law: "identity acts trivially",
                    witness: vec![x],
                });
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for x in 0..size {
                    if set.act(g, set.act(h, x)) != set.act(gh, x) {
                        return Err(Error::NotAnAction {
                            law: "compatibility g(hx) = (gh)x",
                            witness: vec![g, h, x],
                        });
                    }
                }
            }
        }
        Ok(set)
    }

    pub(crate) fn from_flat_unchecked(group: &Arc<Group>, size: usize, act: Vec<usize>) -> GSet {
        debug_assert_eq!(act.len(), size * group.order());
        GSet {
            group: Arc::clone(group),
            size,
            fingerprint: fingerprint(size, &act),
            act: act.into(),
        }
    }

    pub fn empty(group: &Arc<Group>) -> GSet {
        GSet::trivial(group, 0)
    }

    pub fn point(group: &Arc<Group>) -> GSet {
        GSet::trivial(group, 1)
    }

    /// `n` points, all fixed.
    pub fn trivial(group: &Arc<Group>, n: usize) -> GSet {
        let act = group.elements().flat_map(|_| 0..n).collect();
        GSet::from_flat_unchecked(group, n, act)
    }

    /// The group acting on itself by left translation.
    pub fn regular(group: &Arc<Group>) -> GSet {
        let n = group.order();
        let act = group
            .elements()
            .flat_map(|g| (0..n).map(move |x| (g, x)))
            .map(|(g, x)| group.mul(g, x))
            .collect();
        GSet::from_flat_unchecked(group, n, act)
    }

    /// The coset space `G/K` with left translation. Coset 0 is `K`; cosets are ordered by least member.
    pub fn transitive(group: &Arc<Group>, k: &Subgroup) -> Result<GSet> {
        if k.parent() != group {
            return Err(Error::GroupMismatch);
        }
        Subgroup::new(group, k.members())?;
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in group.elements() {
            if coset_of[g] == usize::MAX {
                let c = reps.len();
                reps.push(g);
                for &m in k.members() {
                    coset_of[group.mul(g, m)] = c;
                }
            }
        }
        let size = reps.len();
        let mut act = Vec::with_capacity(n * size);
        for g in group.elements() {
            for &r in &reps {
                act.push(coset_of[group.mul(g, r)]);
            }
        }
        Ok(GSet::from_flat_unchecked(group, size, act))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.size + x]
    }

    /// The action table as one row per group element.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        if self.size == 0 {
            return vec![Vec::new(); self.group.order()];
        }
        self.act.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn stabilizer(&self, x: usize) -> Result<Subgroup> {
        if x >= self.size {
            return Err(Error::OutOfRange {
                index: x,
                size: self.size,
            });
        }
        Ok(Subgroup::from_sorted(&self.group, self.stabilizer_members(x)))
    }

    pub(crate) fn stabilizer_members(&self, x: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act(g, x) == x).collect()
    }

    /// Orbits as sorted lists, ordered by their least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Orbit index of every element, numbering orbits as in [`GSet::orbits`].
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.size];
        for (i, orbit) in self.orbits().iter().enumerate() {
            for &x in orbit {
                idx[x] = i;
            }
        }
        idx
    }

    pub fn coproduct(&self, other: &GSet) -> Result<Coproduct> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let (n, m) = (self.size, other.size);
        let mut act = Vec::with_capacity((n + m) * self.group.order());
        for g in self.group.elements() {
            act.extend((0..n).map(|x| self.act(g, x)));
            act.extend((0..m).map(|y| other.act(g, y) + n));
        }
        let set = GSet::from_flat_unchecked(&self.group, n + m, act);
        let left = GMap::new_unchecked(self.clone(), set.clone(), (0..n).collect());
        let right = GMap::new_unchecked(other.clone(), set.clone(), (n..n + m).collect());
        Ok(Coproduct { set, left, right })
    }

    /// Coproduct of a list of G-sets over `group`.
    pub fn coproduct_all(group: &Arc<Group>, parts: &[GSet]) -> Result<GSet> {
        parts
            .iter()
            .try_fold(GSet::empty(group), |acc, p| Ok(acc.coproduct(p)?.set))
    }

    /// The sub-G-set on `elems`, which must be a sorted union of orbits; element `i` of the result
    /// is `elems[i]`.
    pub fn restrict_to(&self, elems: &[usize]) -> Result<GSet> {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &e) in elems.iter().enumerate() {
            if e >= self.size {
                return Err(Error::OutOfRange { index: e, size: self.size });
            }
            pos[e] = i;
        }
        let mut act = Vec::with_capacity(elems.len() * self.group.order());
        for g in self.group.elements() {
            for &e in elems {
                let image = pos[self.act(g, e)];
                if image == usize::MAX {
                    return Err(Error::Malformed("subset is not closed under the action".into()));
                }
                act.push(image);
            }
        }
        Ok(GSet::from_flat_unchecked(&self.group, elems.len(), act))
    }

    /// The same G-set with elements renamed by `perm` (old index `x` becomes `perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<(GSet, GMap)> {
        if perm.len() != self.size {
            return Err(Error::ShapeMismatch("relabeling has the wrong length".into()));
        }
        let mut inverse = vec![usize::MAX; self.size];
        for (x, &p) in perm.iter().enumerate() {
            if p >= self.size || inverse[p] != usize::MAX {
                return Err(Error::Malformed("relabeling is not a bijection".into()));
            }
            inverse[p] = x;
        }
        let mut act = Vec::with_capacity(self.act.len());
        for g in self.group.elements() {
            act.extend((0..self.size).map(|y| perm[self.act(g, inverse[y])]));
        }
        let set = GSet::from_flat_unchecked(&self.group, self.size, act);
        let map = GMap::new_unchecked(self.clone(), set.clone(), perm.to_vec());
        Ok((set, map))
    }
}

/// `X ⊔ Y` with its two injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub set: GSet,
    pub left: GMap,
    pub right: GMap,
}

/// An equivariant map between two G-sets over the same group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GMap {
    source: GSet,
    target: GSet,
    values: Vec<usize>,
}

impl GMap {
    pub fn new(source: GSet, target: GSet, values: Vec<usize>) -> Result<GMap> {
        if source.group != target.group {
            return Err(Error::GroupMismatch);
        }
        if values.len() != source.size {
            return Err(Error::ShapeMismatch(format!(
                "map has {} values, source has {} elements",
                values.len(),
                source.size
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= target.size) {
            return Err(Error::OutOfRange {
                index: v,
                size: target.size,
            });
        }
        for g in source.group.elements() {
            for x in 0..source.size {
                if values[source.act(g, x)] != target.act(g, values[x]) {
                    return Err(Error::NotEquivariant { g, x });
                }
            }
        }
        Ok(GMap {
            source,
            target,
            values,
        })
    }

    pub(crate) fn new_unchecked(source: GSet, target: GSet, values: Vec<usize>) -> GMap {
        debug_assert!(GMap::new(source.clone(), target.clone(), values.clone()).is_ok());
        GMap {
            source,
            target,
            values,
        }
    }

    pub fn identity(x: &GSet) -> GMap {
        GMap::new_unchecked(x.clone(), x.clone(), (0..x.size).collect())
    }

    /// The unique map to the one-point G-set.
    pub fn to_point(x: &GSet) -> GMap {
        GMap::new_unchecked(x.clone(), GSet::point(&x.group), vec![0; x.size])
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.source.group
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `self ∘ first`
    pub fn after(&self, first: &GMap) -> Result<GMap> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch(
                "composition: target of the first map is not the source of the second".into(),
            ));
        }
        let values = first.values.iter().map(|&y| self.values[y]).collect();
        Ok(GMap::new_unchecked(first.source.clone(), self.target.clone(), values))
    }

    /// Fiber over `y`, ascending.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.source.size).filter(|&x| self.values[x] == y).collect()
    }

    /// All fibers at once, indexed by target element.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.target.size];
        for (x, &y) in self.values.iter().enumerate() {
            out[y].push(x);
        }
        out
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size != self.target.size {
            return false;
        }
        let mut seen = vec![false; self.target.size];
        self.values.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut values = vec![0; self.target.size];
        for (x, &y) in self.values.iter().enumerate() {
            values[y] = x;
        }
        Some(GMap::new_unchecked(self.target.clone(), self.source.clone(), values))
    }
}

/// `P = X ×_Z Y` with projections. Elements are the pairs `(x, y)` with `f(x) = g(y)` in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: GSet,
    pub left: GMap,
    pub right: GMap,
    pub pairs: Vec<(usize, usize)>,
}

impl Pullback {
    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.pairs.binary_search(&(x, y)).ok()
    }
}

pub fn pullback(f: &GMap, g: &GMap) -> Result<Pullback> {
    if f.target != g.target {
        return Err(Error::ShapeMismatch("pullback: maps have different targets".into()));
    }
    let group = f.group();
    let gfibers = g.fibers();
    let mut pairs = Vec::new();
    for x in 0..f.source.size {
        for &y in &gfibers[f.values[x]] {
            pairs.push((x, y));
        }
    }
    // Row offsets let us locate (x, y) without a hash map.
    let mut offset = vec![0usize; f.source.size + 1];
    for x in 0..f.source.size {
        offset[x + 1] = offset[x] + gfibers[f.values[x]].len();
    }
    let locate = |x: usize, y: usize| {
        let fib = &gfibers[f.values[x]];
        offset[x] + fib.binary_search(&y).expect("pair lies in the pullback")
    };
    let size = pairs.len();
    let mut act = Vec::with_capacity(size * group.order());
    for h in group.elements() {
        for &(x, y) in &pairs {
            act.push(locate(f.source.act(h, x), g.source.act(h, y)));
        }
    }
    let set = GSet::from_flat_unchecked(group, size, act);
    let left = GMap::new_unchecked(set.clone(), f.source.clone(), pairs.iter().map(|p| p.0).collect());
    let right = GMap::new_unchecked(set.clone(), g.source.clone(), pairs.iter().map(|p| p.1).collect());
    Ok(Pullback {
        set,
        left,
        right,
        pairs,
    })
}

/// Finds an isomorphism `X -> Y` that preserves the given labelings: `labels_y[i][iso(x)] ==
/// labels_x[i][x]` for every `i` and `x`.
///
/// Each labeling must be an equivariant map to a common G-set, so that orbit compatibility is an
/// equivalence relation and a greedy orbit-by-orbit matching is complete.
pub fn isomorphism_over(
    x: &GSet,
    y: &GSet,
    labels_x: &[&[usize]],
    labels_y: &[&[usize]],
) -> Option<Vec<usize>> {
    if x.group != y.group || x.size != y.size || labels_x.len() != labels_y.len() {
        return None;
    }
    let xorbits = x.orbits();
    let yorbits = y.orbits();
    if xorbits.len() != yorbits.len() {
        return None;
    }
    let mut used = vec![false; yorbits.len()];
    let mut map = vec![usize::MAX; x.size];
    for xo in &xorbits {
        let rep = xo[0];
        let stab = x.stabilizer_members(rep);
        let found = yorbits.iter().enumerate().find_map(|(j, yo)| {
            if used[j] || yo.len() != xo.len() {
                return None;
            }
            yo.iter()
                .copied()
                .find(|&t| {
                    labels_x.iter().zip(labels_y).all(|(lx, ly)| lx[rep] == ly[t])
                        && y.stabilizer_members(t) == stab
                })
                .map(|t| (j, t))
        });
        let (j, t) = found?;
        used[j] = true;
        for g in x.group.elements() {
            map[x.act(g, rep)] = y.act(g, t);
        }
    }
    Some(map)
}

/// An equivariant bijection `X -> Y`, if one exists.
pub fn gset_isomorphism(x: &GSet, y: &GSet) -> Option<GMap> {
    isomorphism_over(x, y, &[], &[]).map(|v| GMap::new_unchecked(x.clone(), y.clone(), v))
}

/// Every equivariant map `X -> Y`, in lexicographic order of the images of orbit representatives.
pub fn all_gmaps(x: &GSet, y: &GSet) -> Vec<GMap> {
    let group = x.group();
    let reps: Vec<usize> = x.orbits().iter().map(|o| o[0]).collect();
    let choices: Vec<Vec<usize>> = reps
        .iter()
        .map(|&r| {
            let stab = x.stabilizer_members(r);
            (0..y.size)
                .filter(|&t| stab.iter().all(|&g| y.act(g, t) == t))
                .collect()
        })
        .collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; reps.len()];
    loop {
        let mut values = vec![0; x.size];
        for (i, &r) in reps.iter().enumerate() {
            let t = choices[i][digits[i]];
            for g in group.elements() {
                values[x.act(g, r)] = y.act(g, t);
            }
        }
        out.push(GMap::new_unchecked(x.clone(), y.clone(), values));
        // odometer, last digit fastest
        let mut i = reps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < choices[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Orbit type of a transitive G-set: a conjugacy class of subgroups, identified by its
/// representative's position in [`Group::subgroup_class_reps`].
pub fn orbit_types(x: &GSet) -> Vec<usize> {
    let reps = x.group().subgroup_class_reps();
    let mut types: Vec<usize> = x
        .orbits()
        .iter()
        .map(|o| {
            let stab = Subgroup::from_sorted(x.group(), x.stabilizer_members(o[0]));
            reps.iter()
                .position(|r| r.is_conjugate_to(&stab))
                .expect("every stabilizer is conjugate to a class representative")
        })
        .collect();
    types.sort_unstable();
    types
}

/// One representative per isomorphism class of G-sets with at most `max_size` elements.
///
/// Representatives are coproducts of coset spaces `G/K` over conjugacy class representatives
/// `K`, ordered by size and then by the multiset of orbit types.
pub fn iso_class_representatives(group: &Arc<Group>, max_size: usize) -> Vec<GSet> {
    let types: Vec<GSet> = group
        .subgroup_class_reps()
        .iter()
        .map(|k| GSet::transitive(group, k).expect("class representatives are subgroups"))
        .collect();
    let mut by_size: Vec<(usize, Vec<usize>)> = Vec::new();
    fn extend(
        types: &[GSet],
        start: usize,
        remaining: usize,
        current: &mut Vec<usize>,
        total: usize,
        out: &mut Vec<(usize, Vec<usize>)>,
    ) {
        out.push((total, current.clone()));
        for t in start..types.len() {
            let s = types[t].size();
            if s <= remaining {
                current.push(t);
                extend(types, t, remaining - s, current, total + s, out);
                current.pop();
            }
        }
    }
    extend(&types, 0, max_size, &mut Vec::new(), 0, &mut by_size);
    by_size.sort();
    by_size
        .into_iter()
        .map(|(_, combo)| {
            let parts: Vec<GSet> = combo.iter().map(|&t| types[t].clone()).collect();
            GSet::coproduct_all(group, &parts).expect("same group")
        })
        .collect()
}

/// A finite collection of G-sets and all equivariant maps between them.
#[derive(Clone, Debug)]
pub struct Universe {
    pub group: Arc<Group>,
    pub objects: Vec<GSet>,
    pub maps: Vec<GMap>,
}

impl Universe {
    /// All isomorphism class representatives of size at most `max_size`, and all maps among them.
    pub fn standard(group: &Arc<Group>, max_size: usize) -> Universe {
        Universe::from_objects(group, iso_class_representatives(group, max_size))
    }

    pub fn from_objects(group: &Arc<Group>, objects: Vec<GSet>) -> Universe {
        let maps = objects
            .iter()
            .flat_map(|x| objects.iter().flat_map(move |y| all_gmaps(x, y)))
            .collect();
        Universe {
            group: Arc::clone(group),
            objects,
            maps,
        }
    }

    /// Maps out of `x`.
    pub fn maps_from<'a>(&'a self, x: &'a GSet) -> impl Iterator<Item = &'a GMap> + 'a {
        self.maps.iter().filter(move |m| m.source() == x)
    }

    /// Maps into `y`.
    pub fn maps_to<'a>(&'a self, y: &'a GSet) -> impl Iterator<Item = &'a GMap> + 'a {
        self.maps.iter().filter(move |m| m.target() == y)
    }
}
