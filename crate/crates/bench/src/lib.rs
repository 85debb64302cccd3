//! Shared inputs for the benchmarks.

use std::sync::Arc;

use tambara_core::{Biset, GMap, GSet, Group};

pub fn group(name: &str) -> Arc<Group> {
    Arc::new(Group::named(name).expect("built-in group"))
}

/// `p : 2·G/e → G/e` over the fold `f : G/e → *`.
pub fn fold_pair(g: &Arc<Group>) -> (GMap, GMap) {
    let reg = GSet::regular(g);
    let two = reg.coproduct(&reg).expect("same group");
    let n = reg.size();
    let p = GMap::new(two.set.clone(), reg.clone(), (0..2 * n).map(|x| x % n).collect()).expect("equivariant");
    (GMap::to_point(&reg), p)
}

pub fn induction(h: &str, g: &str) -> Biset {
    let (hg, gg) = (group(h), group(g));
    let e = gg.find_embedding(&hg).expect("subgroup");
    Biset::induction(&hg, &gg, &e).expect("valid embedding")
}
