//! JSON input formats and the short spellings accepted on the command line.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};
use tambara_core::bispan::Bispan;
use tambara_core::{Biset, GMap, GSet, Group, TabRing};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Name(String),
    Table { mul: Vec<Vec<usize>> },
    Perms { perm_gens: Vec<Vec<usize>>, degree: usize },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetJson {
    pub act: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GMapJson {
    pub values: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BispanJson {
    pub w: GMapJson,
    pub v: GMapJson,
    pub u: GMapJson,
}

/// A document naming G-sets by position in `gsets` and maps and bispans between them.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub group: Option<GroupJson>,
    #[serde(default)]
    pub gsets: Vec<GSetJson>,
    pub gset: Option<GSetJson>,
    pub f: Option<GMapJson>,
    pub p: Option<GMapJson>,
    pub lam: Option<GMapJson>,
    pub rho: Option<GMapJson>,
    pub pi: Option<GMapJson>,
    pub bispan: Option<BispanJson>,
    pub first: Option<BispanJson>,
    pub second: Option<BispanJson>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    group: GroupJson,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BisetJson {
    left: GroupJson,
    right: GroupJson,
    lact: Vec<Vec<usize>>,
    ract: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BisetFile {
    biset: BisetJson,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingJson {
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    ring: RingJson,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValuesJson {
    values: Vec<usize>,
}

#[derive(Debug, Deserialize)]
struct IdealFile {
    ideal: ValuesJson,
}

#[derive(Debug, Deserialize)]
struct SubfunctorFile {
    subfunctor: ValuesJson,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

pub fn read_document(path: &Path) -> Result<Document> {
    read_json(path)
}

pub fn group_from_json(g: &GroupJson) -> Result<Arc<Group>> {
    match g {
        GroupJson::Name(name) => {
            Group::named(name).map(Arc::new).ok_or_else(|| anyhow!("unknown group name `{name}`"))
        }
        GroupJson::Table { mul } => Ok(Arc::new(Group::from_table(mul)?)),
        GroupJson::Perms { perm_gens, degree } => Ok(Group::from_permutations(perm_gens, *degree)?.group),
    }
}

/// A built-in group name or a file holding `{"group": ...}`.
pub fn parse_group(spec: &str) -> Result<Arc<Group>> {
    if let Some(g) = Group::named(spec) {
        return Ok(Arc::new(g));
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("`{spec}` is neither a built-in group nor a readable file");
    }
    let file: GroupFile = read_json(path)?;
    group_from_json(&file.group)
}

/// The group of a document: its own `group` entry, else the one given on the command line. Both
/// must agree when both are present.
pub fn document_group(doc: &Document, flag: Option<&Arc<Group>>) -> Result<Arc<Group>> {
    match (&doc.group, flag) {
        (Some(g), Some(f)) => {
            let g = group_from_json(g)?;
            if &g != f {
                bail!("the document's group differs from --group");
            }
            Ok(g)
        }
        (Some(g), None) => group_from_json(g),
        (None, Some(f)) => Ok(f.clone()),
        (None, None) => bail!("no group: pass --group or put one in the document"),
    }
}

pub fn gset_from_json(group: &Arc<Group>, g: &GSetJson) -> Result<GSet> {
    Ok(GSet::new(group, &g.act)?)
}

pub fn gsets_of(group: &Arc<Group>, doc: &Document) -> Result<Vec<GSet>> {
    doc.gsets
        .iter()
        .enumerate()
        .map(|(i, g)| gset_from_json(group, g).with_context(|| format!("gsets[{i}]")))
        .collect()
}

pub fn gmap_from_json(objects: &[GSet], m: &GMapJson) -> Result<GMap> {
    let get = |i: usize| objects.get(i).cloned().ok_or_else(|| anyhow!("no G-set with id {i}"));
    Ok(GMap::new(get(m.source)?, get(m.target)?, m.values.clone())?)
}

pub fn bispan_from_json(objects: &[GSet], b: &BispanJson) -> Result<Bispan> {
    let w = gmap_from_json(objects, &b.w).context("leg w")?;
    let v = gmap_from_json(objects, &b.v).context("leg v")?;
    let u = gmap_from_json(objects, &b.u).context("leg u")?;
    Ok(Bispan::new(w, v, u)?)
}

/// `point`, `regular`, `trivial:n`, or a file holding a document with a `gset` entry.
pub fn parse_gset(spec: &str, group: &Arc<Group>) -> Result<GSet> {
    if spec == "point" {
        return Ok(GSet::point(group));
    }
    if spec == "regular" {
        return Ok(GSet::regular(group));
    }
    if let Some(n) = spec.strip_prefix("trivial:") {
        return Ok(GSet::trivial(group, n.parse().context("trivial:n needs a number")?));
    }
    let doc = read_document(Path::new(spec))?;
    let group = document_group(&doc, Some(group))?;
    let g = doc.gset.as_ref().ok_or_else(|| anyhow!("{spec} has no `gset` entry"))?;
    gset_from_json(&group, g)
}

/// `identity` (on `group`), `ind:H:G` (`H` as an H-G-biset, `G ≤ H`), `res:G:H` (`H` as a
/// G-H-biset), or a file holding `{"biset": {left, right, lact, ract}}`.
pub fn parse_biset(spec: &str, group: Option<&Arc<Group>>) -> Result<Biset> {
    let named = |n: &str| Group::named(n).map(Arc::new).ok_or_else(|| anyhow!("unknown group name `{n}`"));
    let embed = |small: &Arc<Group>, big: &Arc<Group>| {
        small.find_embedding(big).ok_or_else(|| anyhow!("no embedding of a group of order {} into one of order {}", small.order(), big.order()))
    };
    if spec == "identity" {
        let g = group.ok_or_else(|| anyhow!("the identity biset needs --group"))?;
        return Ok(Biset::identity(g));
    }
    if let Some(rest) = spec.strip_prefix("ind:") {
        let (h, g) = rest.split_once(':').ok_or_else(|| anyhow!("expected ind:H:G"))?;
        let (h, g) = (named(h)?, named(g)?);
        let e = embed(&g, &h)?;
        return Ok(Biset::induction(&h, &g, &e)?);
    }
    if let Some(rest) = spec.strip_prefix("res:") {
        let (g, h) = rest.split_once(':').ok_or_else(|| anyhow!("expected res:G:H"))?;
        let (g, h) = (named(g)?, named(h)?);
        let e = embed(&g, &h)?;
        return Ok(Biset::restriction(&h, &g, &e)?);
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("`{spec}` is not a biset spelling or a readable file");
    }
    let file: BisetFile = read_json(path)?;
    let left = group_from_json(&file.biset.left)?;
    let right = group_from_json(&file.biset.right)?;
    Ok(Biset::new(&left, &right, &file.biset.lact, &file.biset.ract)?)
}

/// `zmod:n` or a file holding `{"ring": {add, mul}}`.
pub fn parse_ring(spec: &str) -> Result<TabRing> {
    if let Some(n) = spec.strip_prefix("zmod:") {
        let n: usize = n.parse().context("zmod:n needs a positive number")?;
        if n == 0 {
            bail!("zmod:0 is not a finite ring");
        }
        return Ok(TabRing::zmod(n)?);
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("`{spec}` is not a ring spelling or a readable file");
    }
    let file: RingFile = read_json(path)?;
    Ok(TabRing::from_tables(&file.ring.add, &file.ring.mul)?)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("`{t}` is not an index")))
        .collect()
}

/// Ideal spellings: `zero`, `whole`, `values:a,b,...`, or a file holding `{"ideal": {values}}`.
pub enum IdealSpec {
    Zero,
    Whole,
    Values(Vec<usize>),
}

pub fn parse_ideal(spec: &str) -> Result<IdealSpec> {
    match spec {
        "zero" => return Ok(IdealSpec::Zero),
        "whole" => return Ok(IdealSpec::Whole),
        _ => {}
    }
    if let Some(v) = spec.strip_prefix("values:") {
        return Ok(IdealSpec::Values(parse_list(v)?));
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("`{spec}` is not an ideal spelling or a readable file");
    }
    let file: IdealFile = read_json(path)?;
    Ok(IdealSpec::Values(file.ideal.values))
}

/// Subfunctor spellings: `powers:a`, `values:a,b,...`, or a file holding `{"subfunctor": {values}}`.
pub enum SubfunctorSpec {
    Powers(usize),
    Values(Vec<usize>),
}

pub fn parse_subfunctor(spec: &str) -> Result<SubfunctorSpec> {
    if let Some(a) = spec.strip_prefix("powers:") {
        return Ok(SubfunctorSpec::Powers(a.parse().context("powers:a needs an index")?));
    }
    if let Some(v) = spec.strip_prefix("values:") {
        return Ok(SubfunctorSpec::Values(parse_list(v)?));
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("`{spec}` is not a subfunctor spelling or a readable file");
    }
    let file: SubfunctorFile = read_json(path)?;
    Ok(SubfunctorSpec::Values(file.subfunctor.values))
}

pub fn gset_json(x: &GSet) -> Value {
    json!({ "act": x.rows() })
}

/// Serializes maps over a shared list of objects, in first-seen order.
#[derive(Default)]
pub struct ObjectTable {
    objects: Vec<GSet>,
}

impl ObjectTable {
    pub fn id(&mut self, x: &GSet) -> usize {
        match self.objects.iter().position(|o| o == x) {
            Some(i) => i,
            None => {
                self.objects.push(x.clone());
                self.objects.len() - 1
            }
        }
    }

    pub fn gmap(&mut self, f: &GMap) -> Value {
        let (s, t) = (self.id(f.source()), self.id(f.target()));
        json!({ "values": f.values(), "source": s, "target": t })
    }

    pub fn bispan(&mut self, phi: &Bispan) -> Value {
        self.id(phi.x());
        self.id(phi.a());
        self.id(phi.b());
        self.id(phi.y());
        json!({ "w": self.gmap(phi.w()), "v": self.gmap(phi.v()), "u": self.gmap(phi.u()) })
    }

    pub fn gsets(&self) -> Value {
        Value::Array(self.objects.iter().map(gset_json).collect())
    }
}
