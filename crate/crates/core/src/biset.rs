//! H-G-bisets, the composite functor `U∘-` from G-sets to H-sets, and the comparison maps
//! `Φ: U∘Π_f(A) -> Π_{U∘f}(U∘A)` and `Ψ` in the other direction.
//!
//! `U∘X` is the set of pairs `(u, x)` with `{g : ug = u} ≤ G_x`, modulo the right-translation
//! relation `(u, x) ~ (ug, g⁻¹x)`. `H` acts by `h[u, x] = [hu, x]`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exponential::{dependent_product, ExponentialDiagram};
use crate::gset::{pullback, GMap, GSet};
use crate::group::Group;
use crate::report::Report;

/// Whether well-definedness assertions run during construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Verify {
    /// Recompute every value from every representative and every admissible witness.
    #[default]
    Eager,
    /// Use the canonical representative and the first witness only.
    Fast,
}

/// A finite set with a left `H`-action and a right `G`-action satisfying `(hu)g = h(ug)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Biset {
    left: Arc<Group>,
    right: Arc<Group>,
    size: usize,
    /// `lact[h * size + u] = h u`
    lact: Vec<usize>,
    /// `ract[u * |G| + g] = u g`
    ract: Vec<usize>,
}

impl Biset {
    /// `lact` has one row per element of `left`; `ract` has one row per element of the biset.
    pub fn new(left: &Arc<Group>, right: &Arc<Group>, lact: &[Vec<usize>], ract: &[Vec<usize>]) -> Result<Biset> {
        if lact.len() != left.order() {
            return Err(Error::Malformed(format!(
                "left action has {} rows, expected {}",
                lact.len(),
                left.order()
            )));
        }
        let size = ract.len();
        let mut l = Vec::with_capacity(size * left.order());
        for row in lact {
            if row.len() != size {
                return Err(Error::Malformed("left action rows must have one entry per element".into()));
            }
            l.extend_from_slice(row);
        }
        let mut r = Vec::with_capacity(size * right.order());
        for row in ract {
            if row.len() != right.order() {
                return Err(Error::Malformed("right action rows must have one entry per group element".into()));
            }
            r.extend_from_slice(row);
        }
        Biset::from_flat(left, right, size, l, r)
    }

    fn from_flat(left: &Arc<Group>, right: &Arc<Group>, size: usize, lact: Vec<usize>, ract: Vec<usize>) -> Result<Biset> {
        if let Some(&v) = lact.iter().chain(&ract).find(|&&v| v >= size) {
            return Err(Error::OutOfRange { index: v, size });
        }
        let b = Biset {
            left: Arc::clone(left),
            right: Arc::clone(right),
            size,
            lact,
            ract,
        };
        // left action
        for u in 0..size {
            if b.lmul(0, u) != u {
                return Err(Error::NotAnAction {
                    law: "left identity",
                    witness: vec![u],
                });
            }
            if b.rmul(u, 0) != u {
                return Err(Error::NotAnAction {
                    law: "right identity",
                    witness: vec![u],
                });
            }
        }
        for h in left.elements() {
            for k in left.elements() {
                let hk = left.mul(h, k);
                for u in 0..size {
                    if b.lmul(h, b.lmul(k, u)) != b.lmul(hk, u) {
                        return Err(Error::NotAnAction {
                            law: "left compatibility",
                            witness: vec![h, k, u],
                        });
                    }
                }
            }
        }
        for g in right.elements() {
            for k in right.elements() {
                let gk = right.mul(g, k);
                for u in 0..size {
                    if b.rmul(b.rmul(u, g), k) != b.rmul(u, gk) {
                        return Err(Error::NotAnAction {
                            law: "right compatibility",
                            witness: vec![u, g, k],
                        });
                    }
                }
            }
        }
        for h in left.elements() {
            for u in 0..size {
                for g in right.elements() {
                    if b.rmul(b.lmul(h, u), g) != b.lmul(h, b.rmul(u, g)) {
                        return Err(Error::IncompatibleActions { h, u, g });
                    }
                }
            }
        }
        Ok(b)
    }

    /// `G` as a G-G-biset by left and right translation.
    pub fn identity(group: &Arc<Group>) -> Biset {
        Biset::induction(group, group, &group.elements().collect::<Vec<_>>())
            .expect("identity embedding")
    }

    /// `U = H` as an H-G-biset, `G` acting on the right through `embedding: G -> H`.
    pub fn induction(h: &Arc<Group>, g: &Arc<Group>, embedding: &[usize]) -> Result<Biset> {
        check_embedding(g, h, embedding)?;
        let n = h.order();
        let lact = h.elements().flat_map(|a| (0..n).map(move |u| (a, u))).map(|(a, u)| h.mul(a, u)).collect();
        let ract = (0..n)
            .flat_map(|u| g.elements().map(move |x| (u, x)))
            .map(|(u, x)| h.mul(u, embedding[x]))
            .collect();
        Biset::from_flat(h, g, n, lact, ract)
    }

    /// `U = H` as a G-H-biset, `G` acting on the left through `embedding: G -> H`.
    pub fn restriction(h: &Arc<Group>, g: &Arc<Group>, embedding: &[usize]) -> Result<Biset> {
        check_embedding(g, h, embedding)?;
        let n = h.order();
        let lact = g
            .elements()
            .flat_map(|a| (0..n).map(move |u| (a, u)))
            .map(|(a, u)| h.mul(embedding[a], u))
            .collect();
        let ract = (0..n)
            .flat_map(|u| h.elements().map(move |x| (u, x)))
            .map(|(u, x)| h.mul(u, x))
            .collect();
        Biset::from_flat(g, h, n, lact, ract)
    }

    /// A left `H`-set viewed as an H-G-biset with trivial right `G`-action.
    pub fn with_trivial_right(hset: &GSet, right: &Arc<Group>) -> Biset {
        let n = hset.size();
        let lact = hset.rows().concat();
        let ract = (0..n).flat_map(|u| right.elements().map(move |_| u)).collect();
        Biset::from_flat(hset.group(), right, n, lact, ract).expect("trivial right action commutes")
    }

    pub fn left_group(&self) -> &Arc<Group> {
        &self.left
    }

    pub fn right_group(&self) -> &Arc<Group> {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn lmul(&self, h: usize, u: usize) -> usize {
        self.lact[h * self.size + u]
    }

    #[inline]
    pub fn rmul(&self, u: usize, g: usize) -> usize {
        self.ract[u * self.right.order() + g]
    }

    pub fn left_rows(&self) -> Vec<Vec<usize>> {
        self.left.elements().map(|h| (0..self.size).map(|u| self.lmul(h, u)).collect()).collect()
    }

    pub fn right_rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|u| self.right.elements().map(|g| self.rmul(u, g)).collect()).collect()
    }

    /// `{g : ug = u}`
    pub fn right_stabilizer(&self, u: usize) -> Vec<usize> {
        self.right.elements().filter(|&g| self.rmul(u, g) == u).collect()
    }

    pub fn is_right_free(&self) -> bool {
        (0..self.size).all(|u| self.right_stabilizer(u).len() == 1)
    }
}

fn check_embedding(g: &Group, h: &Group, embedding: &[usize]) -> Result<()> {
    if embedding.len() != g.order() {
        return Err(Error::ShapeMismatch("embedding must list one image per element".into()));
    }
    if let Some(&v) = embedding.iter().find(|&&v| v >= h.order()) {
        return Err(Error::OutOfRange {
            index: v,
            size: h.order(),
        });
    }
    for a in g.elements() {
        for b in g.elements() {
            if embedding[g.mul(a, b)] != h.mul(embedding[a], embedding[b]) {
                return Err(Error::Malformed(format!("embedding is not a homomorphism at ({a}, {b})")));
            }
        }
    }
    Ok(())
}

/// `U∘X` together with its class bookkeeping.
#[derive(Clone, Debug)]
pub struct UComposite {
    pub source: GSet,
    pub hset: GSet,
    /// `class_of[u * |X| + x]` is the class of an admissible pair, `None` otherwise.
    class_of: Vec<Option<usize>>,
    /// The lexicographically least pair of each class.
    pub reps: Vec<(usize, usize)>,
    /// All pairs of each class, ascending.
    pub members: Vec<Vec<(usize, usize)>>,
}

impl UComposite {
    #[inline]
    pub fn class(&self, u: usize, x: usize) -> Option<usize> {
        self.class_of[u * self.source.size() + x]
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }
}

/// Builds `U∘X` as an H-set.
pub fn u_apply_object(biset: &Biset, x: &GSet, verify: Verify) -> Result<UComposite> {
    if x.group() != biset.right_group() {
        return Err(Error::GroupMismatch);
    }
    let g = biset.right_group();
    let n = x.size();
    let admissible = |u: usize, xx: usize| {
        g.elements().all(|k| biset.rmul(u, k) != u || x.act(k, xx) == xx)
    };
    let mut class_of = vec![None; biset.size() * n];
    let mut reps = Vec::new();
    let mut members = Vec::new();
    for u in 0..biset.size() {
        for xx in 0..n {
            if class_of[u * n + xx].is_some() || !admissible(u, xx) {
                continue;
            }
            let c = reps.len();
            let mut orbit: Vec<(usize, usize)> = g
                .elements()
                .map(|k| (biset.rmul(u, k), x.act(g.inv(k), xx)))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &(u2, x2) in &orbit {
                if verify == Verify::Eager && !admissible(u2, x2) {
                    return Err(Error::WellDefinedness(format!(
                        "admissibility is not class-invariant at ({u2}, {x2})"
                    )));
                }
                class_of[u2 * n + x2] = Some(c);
            }
            reps.push((u, xx));
            members.push(orbit);
        }
    }
    let h = biset.left_group();
    let size = reps.len();
    let mut act = Vec::with_capacity(size * h.order());
    for a in h.elements() {
        for (c, &(u, xx)) in reps.iter().enumerate() {
            let target = class_of[biset.lmul(a, u) * n + xx].expect("hu has the same right stabilizer as u");
            if verify == Verify::Eager {
                for &(u2, x2) in &members[c] {
                    if class_of[biset.lmul(a, u2) * n + x2] != Some(target) {
                        return Err(Error::WellDefinedness(format!(
                            "H-action depends on the representative of class {c}"
                        )));
                    }
                }
            }
            act.push(target);
        }
    }
    let hset = if verify == Verify::Eager {
        GSet::from_flat(h, size, act)?
    } else {
        GSet::from_flat_unchecked(h, size, act)
    };
    Ok(UComposite {
        source: x.clone(),
        hset,
        class_of,
        reps,
        members,
    })
}

/// `U∘f: [u, x] ↦ [u, f(x)]` between precomputed composites.
pub fn u_apply_map_between(src: &UComposite, tgt: &UComposite, f: &GMap, verify: Verify) -> Result<GMap> {
    if f.source() != &src.source || f.target() != &tgt.source {
        return Err(Error::ShapeMismatch("composites do not match the map".into()));
    }
    let mut values = Vec::with_capacity(src.size());
    for (c, &(u, x)) in src.reps.iter().enumerate() {
        let image = tgt
            .class(u, f.apply(x))
            .ok_or_else(|| Error::WellDefinedness(format!("[u, f(x)] is not admissible for class {c}")))?;
        if verify == Verify::Eager {
            for &(u2, x2) in &src.members[c] {
                if tgt.class(u2, f.apply(x2)) != Some(image) {
                    return Err(Error::WellDefinedness(format!(
                        "U∘f depends on the representative of class {c}"
                    )));
                }
            }
        }
        values.push(image);
    }
    if verify == Verify::Eager {
        GMap::new(src.hset.clone(), tgt.hset.clone(), values)
    } else {
        Ok(GMap::new_unchecked(src.hset.clone(), tgt.hset.clone(), values))
    }
}

pub fn u_apply_map(biset: &Biset, f: &GMap, verify: Verify) -> Result<GMap> {
    let src = u_apply_object(biset, f.source(), verify)?;
    let tgt = u_apply_object(biset, f.target(), verify)?;
    u_apply_map_between(&src, &tgt, f, verify)
}

/// The isomorphism `U∘X -> X`, `[u, x] ↦ u x`, for the identity biset.
pub fn identity_counit(comp: &UComposite) -> GMap {
    let x = &comp.source;
    let values = comp.reps.iter().map(|&(u, xx)| x.act(u, xx)).collect();
    GMap::new_unchecked(comp.hset.clone(), x.clone(), values)
}

/// Everything needed to compare `U∘Π_f(A)` with `Π_{U∘f}(U∘A)`.
#[derive(Clone, Debug)]
pub struct Transport {
    pub biset: Biset,
    /// Canonical diagram of `(f, p)` over `G`.
    pub diagram: ExponentialDiagram,
    pub ux: UComposite,
    pub uy: UComposite,
    pub ua: UComposite,
    pub upi: UComposite,
    pub uf: GMap,
    pub up: GMap,
    /// Canonical diagram of `(U∘f, U∘p)` over `H`.
    pub image_diagram: ExponentialDiagram,
    verify: Verify,
}

impl Transport {
    pub fn new(biset: &Biset, f: &GMap, p: &GMap, verify: Verify) -> Result<Transport> {
        if f.group() != biset.right_group() {
            return Err(Error::GroupMismatch);
        }
        let diagram = dependent_product(f, p)?;
        let ux = u_apply_object(biset, f.source(), verify)?;
        let uy = u_apply_object(biset, f.target(), verify)?;
        let ua = u_apply_object(biset, p.source(), verify)?;
        let upi = u_apply_object(biset, diagram.pi_set(), verify)?;
        let uf = u_apply_map_between(&ux, &uy, f, verify)?;
        let up = u_apply_map_between(&ua, &ux, p, verify)?;
        let image_diagram = dependent_product(&uf, &up)?;
        Ok(Transport {
            biset: biset.clone(),
            diagram,
            ux,
            uy,
            ua,
            upi,
            uf,
            up,
            image_diagram,
            verify,
        })
    }

    /// `Φ([u, (y, σ)]) = ([u, y], τ)` with `τ([u₀, x₀]) = [u, σ(g₀⁻¹ x₀)]` for any `g₀` with
    /// `u = u₀ g₀` and `g₀ y = f(x₀)`.
    pub fn phi(&self) -> Result<GMap> {
        let mut values = Vec::with_capacity(self.upi.size());
        for c in 0..self.upi.size() {
            let (u, s) = self.upi.reps[c];
            let value = self.phi_at(c, u, s)?;
            if self.verify == Verify::Eager {
                for &(u2, s2) in &self.upi.members[c] {
                    if self.phi_at(c, u2, s2)? != value {
                        return Err(Error::WellDefinedness(format!(
                            "Φ depends on the representative of class {c}"
                        )));
                    }
                }
            }
            values.push(value);
        }
        let source = self.upi.hset.clone();
        let target = self.image_diagram.pi_set().clone();
        match self.verify {
            Verify::Eager => GMap::new(source, target, values),
            Verify::Fast => Ok(GMap::new_unchecked(source, target, values)),
        }
    }

    fn phi_at(&self, class: usize, u: usize, s: usize) -> Result<usize> {
        let g = self.biset.right_group();
        let f = &self.diagram.f;
        let x_set = f.source();
        let y = self.diagram.sections[s].base;
        let base = self
            .uy
            .class(u, y)
            .ok_or_else(|| Error::WellDefinedness(format!("[u, y] is not admissible for class {class}")))?;
        let fiber = self.image_diagram.fiber(base);
        let mut assignment = Vec::with_capacity(fiber.len());
        for &c0 in fiber {
            let witnesses: Vec<usize> = self.ux.members[c0]
                .iter()
                .take(if self.verify == Verify::Eager { usize::MAX } else { 1 })
                .flat_map(|&(u0, x0)| {
                    g.elements()
                        .filter(move |&g0| self.biset.rmul(u0, g0) == u && f.target().act(g0, y) == f.apply(x0))
                        .map(move |g0| x_set.act(g.inv(g0), x0))
                })
                .collect();
            let Some(&xp) = witnesses.first() else {
                return Err(Error::NoWitnessG0 { class });
            };
            if witnesses.iter().any(|&w| w != xp) {
                return Err(Error::WellDefinedness(format!(
                    "σ(g₀⁻¹x₀) depends on the choice of g₀ for class {class}"
                )));
            }
            let a = self.diagram.evaluate(s, xp).expect("g₀⁻¹x₀ lies in f⁻¹(y)");
            let value = self
                .ua
                .class(u, a)
                .ok_or_else(|| Error::WellDefinedness(format!("[u, σ(x)] is not admissible for class {class}")))?;
            assignment.push(value);
        }
        Ok(self
            .image_diagram
            .index_of(base, &assignment)
            .expect("τ is a section of U∘p"))
    }

    /// `Ψ([u, y], τ) = [u, (y, σ)]` where `σ` is the unique map with `[u, σ(x)] = τ([u, x])`.
    pub fn psi(&self) -> Result<GMap> {
        let target_pi = self.image_diagram.pi_set();
        let mut values = Vec::with_capacity(target_pi.size());
        for q in 0..target_pi.size() {
            let base = self.image_diagram.sections[q].base;
            let (u, y) = self.uy.reps[base];
            let value = self.psi_at(q, u, y)?;
            if self.verify == Verify::Eager {
                for &(u2, y2) in &self.uy.members[base] {
                    if self.psi_at(q, u2, y2)? != value {
                        return Err(Error::WellDefinedness(format!(
                            "Ψ depends on the representative of the base of section {q}"
                        )));
                    }
                }
            }
            values.push(value);
        }
        let source = target_pi.clone();
        let target = self.upi.hset.clone();
        match self.verify {
            Verify::Eager => GMap::new(source, target, values),
            Verify::Fast => Ok(GMap::new_unchecked(source, target, values)),
        }
    }

    fn psi_at(&self, q: usize, u: usize, y: usize) -> Result<usize> {
        let p = &self.diagram.p;
        let lifts_of = |x: usize| p.fiber(x);
        let mut sigma = Vec::new();
        for &xd in self.diagram.fiber(y) {
            let cx = self.ux.class(u, xd).ok_or_else(|| {
                Error::NoSolution(format!("[u, x] is not admissible for u = {u}, x = {xd} (section {q})"))
            })?;
            let wanted = self
                .image_diagram
                .evaluate(q, cx)
                .expect("[u, x] lies over [u, y]");
            let solutions: Vec<usize> = lifts_of(xd)
                .into_iter()
                .filter(|&a| self.ua.class(u, a) == Some(wanted))
                .collect();
            match solutions.as_slice() {
                [a] => sigma.push(*a),
                [] => {
                    return Err(Error::NoSolution(format!(
                        "no lift a of x = {xd} with [u, a] = τ([u, x]) (section {q})"
                    )))
                }
                _ => {
                    return Err(Error::WellDefinedness(format!(
                        "[u, a] = [u, a'] with a != a' over x = {xd}"
                    )))
                }
            }
        }
        let s = self.diagram.index_of(y, &sigma).expect("σ is a section of p");
        self.upi
            .class(u, s)
            .ok_or_else(|| Error::NoSolution(format!("[u, (y, σ)] is not admissible (section {q})")))
    }
}

pub fn phi_map(biset: &Biset, f: &GMap, p: &GMap, verify: Verify) -> Result<GMap> {
    Transport::new(biset, f, p, verify)?.phi()
}

pub fn psi_map(biset: &Biset, f: &GMap, p: &GMap, verify: Verify) -> Result<GMap> {
    Transport::new(biset, f, p, verify)?.psi()
}

/// Checks that `U∘-` carries the exponential diagram of `(f, p)` to an exponential diagram
/// (with `Φ` as the comparison map), and that it preserves the coproduct `X ⊔ A` and the
/// pullback square inside the diagram.
pub fn check_preservation(biset: &Biset, f: &GMap, p: &GMap, verify: Verify) -> Report {
    let mut report = Report::new();
    let label = |m: &GMap| format!("{:?}", m.values());
    let case = format!("f = {}, p = {}", label(f), label(p));
    let t = match Transport::new(biset, f, p, verify) {
        Ok(t) => t,
        Err(e) => {
            report.record("transport", Err(format!("{case}: {e}")));
            return report;
        }
    };
    report.record("fiber_count", fiber_count(&t.diagram).and(fiber_count(&t.image_diagram)).map_err(|e| format!("{case}: {e}")));

    let phi = t.phi();
    let psi = t.psi();
    match (&phi, &psi) {
        (Ok(phi), Ok(psi)) => {
            let pp = psi.after(phi).map(|m| m == GMap::identity(phi.source()));
            report.record(
                "psi_after_phi_is_identity",
                if pp == Ok(true) { Ok(()) } else { Err(case.clone()) },
            );
            let qq = phi.after(psi).map(|m| m == GMap::identity(psi.source()));
            report.record(
                "phi_after_psi_is_identity",
                if qq == Ok(true) { Ok(()) } else { Err(case.clone()) },
            );
        }
        _ => {
            let why = [phi.as_ref().err(), psi.as_ref().err()]
                .into_iter()
                .flatten()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            report.record(
                "phi_is_bijection",
                match &phi {
                    Ok(m) if m.is_bijective() => Ok(()),
                    Ok(m) => Err(format!(
                        "{case}: |U∘Π_f(A)| = {}, |Π_(U∘f)(U∘A)| = {}",
                        m.source().size(),
                        m.target().size()
                    )),
                    Err(e) => Err(format!("{case}: {e}")),
                },
            );
            report.record("psi_after_phi_is_identity", Err(format!("{case}: {why}")));
            report.record("phi_after_psi_is_identity", Err(format!("{case}: {why}")));
        }
    }

    // U∘- applied to the canonical pentagon
    let image = (|| -> Result<Option<bool>> {
        let uz = u_apply_object(biset, t.diagram.z_set(), verify)?;
        let pent = crate::exponential::Pentagon {
            f: t.uf.clone(),
            p: t.up.clone(),
            lam: u_apply_map_between(&uz, &t.ua, &t.diagram.lam, verify)?,
            rho: u_apply_map_between(&uz, &t.upi, &t.diagram.rho, verify)?,
            pi: u_apply_map_between(&t.upi, &t.uy, &t.diagram.pi, verify)?,
        };
        let witness = crate::exponential::is_exponential_diagram(&pent)?;
        Ok(witness.map(|w| phi.as_ref().map(|phi| *phi == w.pi_iso).unwrap_or(false)))
    })();
    match image {
        Ok(Some(matches_phi)) => {
            report.record("image_is_exponential", Ok(()));
            report.record(
                "witness_is_phi",
                if matches_phi { Ok(()) } else { Err(case.clone()) },
            );
        }
        Ok(None) => {
            report.record("image_is_exponential", Err(case.clone()));
            report.record("witness_is_phi", Err(format!("{case}: no witness")));
        }
        Err(e) => {
            report.record("image_is_exponential", Err(format!("{case}: {e}")));
            report.record("witness_is_phi", Err(format!("{case}: {e}")));
        }
    }

    report.record(
        "preserves_coproduct",
        preserves_coproduct(biset, f.source(), p.source(), verify).map_err(|e| format!("{case}: {e}")),
    );
    report.record(
        "preserves_pullback",
        preserves_pullback(biset, f, &t.diagram.pi, verify).map_err(|e| format!("{case}: {e}")),
    );
    report
}

/// `|π⁻¹(y)| = ∏_{x ∈ f⁻¹(y)} |p⁻¹(x)|` for every `y`.
pub fn fiber_count(d: &ExponentialDiagram) -> std::result::Result<(), String> {
    let pfib = d.p.fibers();
    for (y, over) in d.pi.fibers().iter().enumerate() {
        let expected: usize = d.f.fiber(y).iter().map(|&x| pfib[x].len()).product();
        if over.len() != expected {
            return Err(format!("y = {y}: |π⁻¹(y)| = {}, product = {expected}", over.len()));
        }
    }
    Ok(())
}

/// The canonical map `U∘X ⊔ U∘Y -> U∘(X ⊔ Y)` is a bijection.
pub fn preserves_coproduct(biset: &Biset, x: &GSet, y: &GSet, verify: Verify) -> Result<()> {
    let cp = x.coproduct(y)?;
    let ucp = u_apply_object(biset, &cp.set, verify)?;
    let ux = u_apply_object(biset, x, verify)?;
    let uy = u_apply_object(biset, y, verify)?;
    let left = u_apply_map_between(&ux, &ucp, &cp.left, verify)?;
    let right = u_apply_map_between(&uy, &ucp, &cp.right, verify)?;
    let sum = ux.hset.coproduct(&uy.hset)?;
    let values: Vec<usize> = left.values().iter().chain(right.values()).copied().collect();
    let kappa = GMap::new(sum.set, ucp.hset, values)?;
    if kappa.is_bijective() {
        Ok(())
    } else {
        Err(Error::WellDefinedness(format!(
            "U∘(X ⊔ Y) has {} elements, U∘X ⊔ U∘Y has {}",
            kappa.target().size(),
            kappa.source().size()
        )))
    }
}

/// `U∘(X ×_Z Y) -> U∘X ×_{U∘Z} U∘Y` is a bijection.
pub fn preserves_pullback(biset: &Biset, f: &GMap, g: &GMap, verify: Verify) -> Result<()> {
    let pb = pullback(f, g)?;
    let ux = u_apply_object(biset, f.source(), verify)?;
    let uy = u_apply_object(biset, g.source(), verify)?;
    let uz = u_apply_object(biset, f.target(), verify)?;
    let up = u_apply_object(biset, &pb.set, verify)?;
    let uf = u_apply_map_between(&ux, &uz, f, verify)?;
    let ug = u_apply_map_between(&uy, &uz, g, verify)?;
    let ul = u_apply_map_between(&up, &ux, &pb.left, verify)?;
    let ur = u_apply_map_between(&up, &uy, &pb.right, verify)?;
    let image_pb = pullback(&uf, &ug)?;
    let values = (0..up.size())
        .map(|c| {
            image_pb
                .index_of(ul.apply(c), ur.apply(c))
                .ok_or_else(|| Error::WellDefinedness("image square does not commute".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let comparison = GMap::new(up.hset.clone(), image_pb.set.clone(), values)?;
    if comparison.is_bijective() {
        Ok(())
    } else {
        Err(Error::WellDefinedness(format!(
            "U∘P has {} elements, the pullback of the images has {}",
            up.size(),
            image_pb.set.size()
        )))
    }
}
