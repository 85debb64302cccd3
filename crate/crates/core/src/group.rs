//! Finite groups given by their multiplication tables, and their subgroups.
//!
//! Elements are dense indices `0..order`; the identity is always index 0.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite group stored as a flat multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl Group {
    /// Validates a raw multiplication table. Row `i`, column `j` holds the index of `i * j`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Group> {
        let order = table.len();
        if order == 0 {
            return Err(Error::Malformed("empty multiplication table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Malformed(format!(
                    "row {i} has length {}, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::OutOfRange { index: v, size: order });
                }
                mul.push(v);
            }
        }
        let m = |a: usize, b: usize| mul[a * order + b];
        for i in 0..order {
            if m(0, i) != i || m(i, 0) != i {
                return Err(Error::NotAGroup {
                    law: "identity at index 0",
                    witness: vec![i],
                });
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::NotAGroup {
                            law: "associativity",
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; order];
        for i in 0..order {
            match (0..order).find(|&j| m(i, j) == 0 && m(j, i) == 0) {
                Some(j) => inv[i] = j,
                None => {
                    return Err(Error::NotAGroup {
                        law: "inverse",
                        witness: vec![i],
                    })
                }
            }
        }
        Ok(Group { order, mul, inv })
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    pub fn from_permutations(generators: &[Vec<usize>], degree: usize) -> Result<PermutationGroup> {
        for (k, gen) in generators.iter().enumerate() {
            if gen.len() != degree {
                return Err(Error::Malformed(format!(
                    "generator {k} has length {}, expected degree {degree}",
                    gen.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &v in gen {
                if v >= degree || seen[v] {
                    return Err(Error::Malformed(format!("generator {k} is not a bijection")));
                }
                seen[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut perms = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for gen in generators {
                let next: Vec<usize> = perms[i].iter().map(|&k| gen[k]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(next);
                }
            }
        }
        let order = perms.len();
        let mut mul = Vec::with_capacity(order * order);
        for a in &perms {
            for b in &perms {
                // (a * b)(k) = a(b(k))
                let ab: Vec<usize> = b.iter().map(|&k| a[k]).collect();
                mul.push(index[&ab]);
            }
        }
        let inv = (0..order)
            .map(|i| (0..order).find(|&j| mul[i * order + j] == 0).expect("closure is a group"))
            .collect();
        Ok(PermutationGroup {
            group: Arc::new(Group { order, mul, inv }),
            perms,
        })
    }

    pub fn trivial() -> Group {
        Group {
            order: 1,
            mul: vec![0],
            inv: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Group {
        assert!(n > 0, "cyclic group of order 0");
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        Group { order: n, mul, inv }
    }

    /// Built-in groups: `trivial`, `c2`, `c3`, `c4`, `v4`, `s3`, `c6`.
    pub fn named(name: &str) -> Option<Group> {
        let perm = |gens: &[&[usize]], degree: usize| {
            let gens: Vec<Vec<usize>> = gens.iter().map(|g| g.to_vec()).collect();
            let pg = Group::from_permutations(&gens, degree).expect("built-in generators are valid");
            Arc::try_unwrap(pg.group).unwrap_or_else(|g| (*g).clone())
        };
        match name {
            "trivial" | "c1" => Some(Group::trivial()),
            "c2" => Some(Group::cyclic(2)),
            "c3" => Some(Group::cyclic(3)),
            "c4" => Some(Group::cyclic(4)),
            "c6" => Some(Group::cyclic(6)),
            "v4" => Some(perm(&[&[1, 0, 3, 2], &[2, 3, 0, 1]], 4)),
            "s3" => Some(perm(&[&[1, 0, 2], &[1, 2, 0]], 3)),
            _ => None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// The multiplication table as rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `g a g^-1`
    pub fn conjugate_elem(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(self),
            members: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(self),
            members: vec![0],
        }
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        Subgroup {
            parent: Arc::clone(self),
            members: seen.into_iter().collect(),
        }
    }

    /// Every subgroup, sorted by order and then by member list.
    pub fn subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![0usize]];
        found.insert(vec![0]);
        while let Some(members) = frontier.pop() {
            for g in self.elements() {
                if members.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = members.clone();
                gens.push(g);
                let next = self.generated(&gens).members;
                if found.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found
            .into_iter()
            .map(|members| Subgroup {
                parent: Arc::clone(self),
                members,
            })
            .collect();
        subs.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        subs
    }

    /// One representative per conjugacy class of subgroups, in the order of [`Group::subgroups`].
    pub fn subgroup_class_reps(self: &Arc<Self>) -> Vec<Subgroup> {
        let mut reps: Vec<Subgroup> = Vec::new();
        for k in self.subgroups() {
            if !reps.iter().any(|r| r.is_conjugate_to(&k)) {
                reps.push(k);
            }
        }
        reps
    }

    /// Finds an injective homomorphism `self -> target`, returned as the image of each element.
    pub fn find_embedding(&self, target: &Group) -> Option<Vec<usize>> {
        if target.order() % self.order() != 0 {
            return None;
        }
        // greedy generating set
        let me = Arc::new(self.clone());
        let mut gens: Vec<usize> = Vec::new();
        let mut span = me.generated(&[]);
        for g in self.elements() {
            if !span.contains(g) {
                gens.push(g);
                span = me.generated(&gens);
            }
        }
        let mut images = vec![0usize; gens.len()];
        self.embed_search(target, &gens, &mut images, 0)
    }

    fn embed_search(
        &self,
        target: &Group,
        gens: &[usize],
        images: &mut Vec<usize>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            return self.extend_hom(target, gens, images);
        }
        for h in target.elements() {
            images[depth] = h;
            if let Some(hom) = self.embed_search(target, gens, images, depth + 1) {
                return Some(hom);
            }
        }
        None
    }

    /// Extends generator images to a homomorphism, if consistent and injective.
    fn extend_hom(&self, target: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut hom = vec![usize::MAX; self.order];
        hom[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let b = self.mul(a, g);
                let hb = target.mul(hom[a], img);
                if hom[b] == usize::MAX {
                    hom[b] = hb;
                    queue.push_back(b);
                } else if hom[b] != hb {
                    return None;
                }
            }
        }
        let mut seen = vec![false; target.order()];
        for &h in &hom {
            if h == usize::MAX || seen[h] {
                return None;
            }
            seen[h] = true;
        }
        for a in self.elements() {
            for b in self.elements() {
                if hom[self.mul(a, b)] != target.mul(hom[a], hom[b]) {
                    return None;
                }
            }
        }
        Some(hom)
    }
}

/// A group produced by closing a set of permutations, together with the permutation of each element.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    pub group: Arc<Group>,
    pub perms: Vec<Vec<usize>>,
}

/// A subgroup, stored as the sorted list of its member indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: Arc<Group>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &Arc<Group>, members: &[usize]) -> Result<Subgroup> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.iter().find(|&&m| m >= parent.order()) {
            return Err(Error::OutOfRange {
                index: m,
                size: parent.order(),
            });
        }
        let sub = Subgroup {
            parent: Arc::clone(parent),
            members,
        };
        if !sub.contains(0) {
            return Err(Error::NotASubgroup("missing the identity".into()));
        }
        for &a in &sub.members {
            if !sub.contains(parent.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &sub.members {
                if !sub.contains(parent.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("{a} * {b} missing")));
                }
            }
        }
        Ok(sub)
    }

    pub(crate) fn from_sorted(parent: &Arc<Group>, members: Vec<usize>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(parent),
            members,
        }
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }

    /// `g K g^-1`
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut members: Vec<usize> = self
            .members
            .iter()
            .map(|&k| self.parent.conjugate_elem(g, k))
            .collect();
        members.sort_unstable();
        Subgroup {
            parent: Arc::clone(&self.parent),
            members,
        }
    }

    pub fn is_conjugate_to(&self, other: &Subgroup) -> bool {
        self.order() == other.order()
            && self
                .parent
                .elements()
                .any(|g| self.conjugate(g).members == other.members)
    }
}
