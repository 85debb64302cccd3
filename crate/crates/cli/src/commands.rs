//! One function per subcommand. Each returns a report, or an error for bad input.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use serde_json::{json, Value};
use tambara_core::biset::{check_preservation, fiber_count, u_apply_object};
use tambara_core::bispan::{bispans_equivalent, compose_with_limit, eval_table};
use tambara_core::exponential::dependent_product_with_limit;
use tambara_core::gset::orbit_types;
use tambara_core::tambara::{
    check_axioms, check_cor27, check_cor28, check_ideal, check_subfunctor, AxiomOptions, BurnsideSemiTambara,
    FixedPointFunctor, IdealFamily, Localized, PointwiseIdeal, PointwiseSubmonoid, Quotient, TambaraFunctor,
    Transformed, WholeIdeal, ZeroIdeal,
};
use tambara_core::{is_exponential_diagram, Biset, Group, Pentagon, Report, Universe, Verify};

use crate::input::{
    bispan_from_json, document_group, gmap_from_json, gset_json, gsets_of, parse_biset, parse_group, parse_gset,
    parse_ideal, parse_ring, parse_subfunctor, read_document, IdealSpec, ObjectTable, SubfunctorSpec,
};
use crate::output::RunReport;
use crate::{FunctorArgs, FunctorKind, SuiteArgs};

pub struct Context {
    pub verify: Verify,
    pub seed: u64,
}

fn axiom_options(ctx: &Context, suite: &SuiteArgs) -> AxiomOptions {
    AxiomOptions {
        seed: ctx.seed,
        enumerate_limit: suite.enumerate_limit,
        samples: suite.samples,
        max_cases: suite.max_cases.unwrap_or(usize::MAX),
    }
}

fn optional_group(spec: Option<&str>) -> Result<Option<Arc<Group>>> {
    spec.map(parse_group).transpose()
}

/// The group a functor lives on: the biset's left group if there is a biset, else `--group`.
fn functor_group(functor: &FunctorArgs, biset: Option<&Biset>) -> Result<Arc<Group>> {
    let flag = optional_group(functor.group.as_deref())?;
    match (biset, flag) {
        (Some(b), Some(g)) if b.left_group() != &g => bail!("--group is not the left group of the biset"),
        (Some(b), _) => Ok(b.left_group().clone()),
        (None, Some(g)) => Ok(g),
        (None, None) => bail!("no group: pass --group"),
    }
}

fn with_biset(functor: &FunctorArgs, spec: &str) -> Result<Biset> {
    let flag = optional_group(functor.group.as_deref())?;
    parse_biset(spec, flag.as_ref())
}

fn need_fp(functor: &FunctorArgs, what: &str) -> Result<()> {
    if functor.functor != FunctorKind::Fp {
        bail!("{what} is only available for --functor fp");
    }
    Ok(())
}

pub fn exp_diagram(_ctx: &Context, input: &Path, group: Option<&str>, max_sections: usize) -> Result<RunReport> {
    let doc = read_document(input)?;
    let group = document_group(&doc, optional_group(group)?.as_ref())?;
    let objects = gsets_of(&group, &doc)?;
    let f = gmap_from_json(&objects, doc.f.as_ref().ok_or_else(|| anyhow!("the document needs `f`"))?).context("f")?;
    let p = gmap_from_json(&objects, doc.p.as_ref().ok_or_else(|| anyhow!("the document needs `p`"))?).context("p")?;
    let d = dependent_product_with_limit(&f, &p, max_sections)?;
    let mut report = Report::new();
    report.record("fiber_count", fiber_count(&d));
    let canonical = is_exponential_diagram(&Pentagon::from(&d))?;
    report.record(
        "canonical_is_exponential",
        canonical.map(|_| ()).ok_or_else(|| "canonical diagram rejected".to_string()),
    );
    if let (Some(lam), Some(rho), Some(pi)) = (&doc.lam, &doc.rho, &doc.pi) {
        let candidate = Pentagon {
            f: f.clone(),
            p: p.clone(),
            lam: gmap_from_json(&objects, lam).context("lam")?,
            rho: gmap_from_json(&objects, rho).context("rho")?,
            pi: gmap_from_json(&objects, pi).context("pi")?,
        };
        let verdict = is_exponential_diagram(&candidate)?;
        report.record(
            "candidate_is_exponential",
            verdict.map(|_| ()).ok_or_else(|| "no isomorphism onto the canonical diagram".to_string()),
        );
    }
    let sections: Vec<Value> = d.sections.iter().map(|s| json!({ "y": s.base, "assignment": s.assignment })).collect();
    let result = json!({
        "pi": gset_json(d.pi_set()),
        "z": gset_json(d.z_set()),
        "pi_map": d.pi.values(),
        "lam": d.lam.values(),
        "rho": d.rho.values(),
        "zx": d.zx.values(),
        "sections": sections,
    });
    Ok(RunReport::new("exp-diagram", report, Some(result)))
}

pub fn biset_apply(ctx: &Context, biset: &str, group: Option<&str>, gset: &str) -> Result<RunReport> {
    let biset = parse_biset(biset, optional_group(group)?.as_ref())?;
    let x = parse_gset(gset, biset.right_group())?;
    let comp = u_apply_object(&biset, &x, ctx.verify)?;
    let classes: Vec<Value> = comp
        .reps
        .iter()
        .zip(&comp.members)
        .map(|(&(u, e), members)| {
            let members: Vec<[usize; 2]> = members.iter().map(|&(a, b)| [a, b]).collect();
            json!({ "rep": [u, e], "members": members })
        })
        .collect();
    let mut report = Report::new();
    report.record("construction", Ok(()));
    let result = json!({ "classes": classes, "hact": comp.hset.rows() });
    Ok(RunReport::new("biset-apply", report, Some(result)))
}

pub fn verify_phi(ctx: &Context, biset: &str, group: Option<&str>, max_size: usize, input: Option<&Path>) -> Result<RunReport> {
    let biset = parse_biset(biset, optional_group(group)?.as_ref())?;
    let mut report = Report::new();
    match input {
        Some(path) => {
            let doc = read_document(path)?;
            let g = document_group(&doc, Some(biset.right_group()))?;
            let objects = gsets_of(&g, &doc)?;
            let f = gmap_from_json(&objects, doc.f.as_ref().ok_or_else(|| anyhow!("the document needs `f`"))?)?;
            let p = gmap_from_json(&objects, doc.p.as_ref().ok_or_else(|| anyhow!("the document needs `p`"))?)?;
            if p.target() != f.source() {
                bail!("p must land in the source of f");
            }
            report.merge(check_preservation(&biset, &f, &p, ctx.verify));
        }
        None => {
            let universe = Universe::standard(biset.right_group(), max_size);
            for f in &universe.maps {
                for p in universe.maps_to(f.source()) {
                    report.merge(check_preservation(&biset, f, p, ctx.verify));
                }
            }
        }
    }
    let result = json!({ "right_free": biset.is_right_free() });
    Ok(RunReport::new("verify-phi", report, Some(result)))
}

pub fn compose(_ctx: &Context, input: &Path, group: Option<&str>, check: Option<&Path>, max_sections: usize) -> Result<RunReport> {
    let flag = optional_group(group)?;
    let doc = read_document(input)?;
    let g = document_group(&doc, flag.as_ref())?;
    let objects = gsets_of(&g, &doc)?;
    let first = bispan_from_json(&objects, doc.first.as_ref().ok_or_else(|| anyhow!("the document needs `first`"))?)
        .context("first")?;
    let second = bispan_from_json(&objects, doc.second.as_ref().ok_or_else(|| anyhow!("the document needs `second`"))?)
        .context("second")?;
    let composite = compose_with_limit(&second, &first, max_sections)?;
    let mut table = ObjectTable::default();
    let bispan = table.bispan(&composite);
    let mut result = json!({ "gsets": table.gsets(), "bispan": bispan });
    let mut report = Report::new();
    report.record("composed", Ok(()));
    if let Some(path) = check {
        let expected_doc = read_document(path)?;
        let eg = document_group(&expected_doc, Some(&g))?;
        let eobjects = gsets_of(&eg, &expected_doc)?;
        let expected = bispan_from_json(&eobjects, expected_doc.bispan.as_ref().ok_or_else(|| anyhow!("{} needs `bispan`", path.display()))?)?;
        match bispans_equivalent(&composite, &expected) {
            Ok(Some(w)) => {
                report.record("equivalent", Ok(()));
                result["certificate"] = json!({ "a": w.a.values(), "b": w.b.values() });
            }
            Ok(None) => report.record("equivalent", Err("no pair of isomorphisms exists".into())),
            Err(e) => report.record("equivalent", Err(e.to_string())),
        }
    }
    Ok(RunReport::new("compose", report, Some(result)))
}

fn table_json<T: TambaraFunctor<Elem = Vec<usize>>>(t: &T, phi: &tambara_core::bispan::Bispan, cap: usize) -> Result<Value> {
    let rows = eval_table(t, phi, cap).ok_or_else(|| anyhow!("T(X) has more than {cap} elements"))?;
    Ok(Value::Array(rows.into_iter().map(|(a, b)| json!({ "input": a, "output": b })).collect()))
}

pub fn eval(_ctx: &Context, input: &Path, functor: &FunctorArgs, max_elements: usize) -> Result<RunReport> {
    let doc = read_document(input)?;
    let g = document_group(&doc, optional_group(functor.group.as_deref())?.as_ref())?;
    let objects = gsets_of(&g, &doc)?;
    let phi = bispan_from_json(&objects, doc.bispan.as_ref().ok_or_else(|| anyhow!("the document needs `bispan`"))?)?;
    let table = match functor.functor {
        FunctorKind::Fp => table_json(&FixedPointFunctor::new(&g, parse_ring(&functor.ring)?), &phi, max_elements)?,
        FunctorKind::Burnside => table_json(&BurnsideSemiTambara::new(&g), &phi, max_elements)?,
    };
    let mut report = Report::new();
    report.record("evaluated", Ok(()));
    Ok(RunReport::new("eval", report, Some(json!({ "table": table }))))
}

pub fn check_tambara(ctx: &Context, functor: &FunctorArgs, suite: &SuiteArgs) -> Result<RunReport> {
    let g = functor_group(functor, None)?;
    let universe = Universe::standard(&g, suite.max_size);
    let opts = axiom_options(ctx, suite);
    let report = match functor.functor {
        FunctorKind::Fp => check_axioms(&FixedPointFunctor::new(&g, parse_ring(&functor.ring)?), &universe, &opts),
        FunctorKind::Burnside => check_axioms(&BurnsideSemiTambara::new(&g), &universe, &opts),
    };
    Ok(RunReport::new("check-tambara", report, Some(universe_summary(&universe))))
}

pub fn transform(ctx: &Context, functor: &FunctorArgs, biset: &str, suite: &SuiteArgs) -> Result<RunReport> {
    let biset = with_biset(functor, biset)?;
    let h = functor_group(functor, Some(&biset))?;
    let universe = Universe::standard(biset.right_group(), suite.max_size);
    let opts = axiom_options(ctx, suite);
    let report = match functor.functor {
        FunctorKind::Fp => {
            let t = FixedPointFunctor::new(&h, parse_ring(&functor.ring)?);
            check_axioms(&Transformed::with_verify(t, &biset, ctx.verify)?, &universe, &opts)
        }
        FunctorKind::Burnside => {
            check_axioms(&Transformed::with_verify(BurnsideSemiTambara::new(&h), &biset, ctx.verify)?, &universe, &opts)
        }
    };
    Ok(RunReport::new("transform", report, Some(universe_summary(&universe))))
}

fn quotient_suite<I: IdealFamily<FixedPointFunctor> + Clone>(
    t: &FixedPointFunctor,
    ideal: I,
    universe: &Universe,
    opts: &AxiomOptions,
) -> Report {
    let mut report = check_ideal(t, &ideal, universe, opts);
    if !report.passed() {
        return report;
    }
    let q = Quotient::new(t.clone(), ideal);
    report.merge(q.check_well_defined(universe, opts));
    report.merge(check_axioms(&q, universe, opts));
    report
}

pub fn quotient(ctx: &Context, functor: &FunctorArgs, ideal: &str, suite: &SuiteArgs) -> Result<RunReport> {
    need_fp(functor, "quotient")?;
    let g = functor_group(functor, None)?;
    let ring = parse_ring(&functor.ring)?;
    let t = FixedPointFunctor::new(&g, ring.clone());
    let universe = Universe::standard(&g, suite.max_size);
    let opts = axiom_options(ctx, suite);
    let report = match parse_ideal(ideal)? {
        IdealSpec::Zero => quotient_suite(&t, ZeroIdeal, &universe, &opts),
        IdealSpec::Whole => quotient_suite(&t, WholeIdeal, &universe, &opts),
        IdealSpec::Values(v) => quotient_suite(&t, PointwiseIdeal::new(&ring, &v)?, &universe, &opts),
    };
    Ok(RunReport::new("quotient", report, Some(universe_summary(&universe))))
}

fn submonoid(ring: &tambara_core::TabRing, spec: &str) -> Result<PointwiseSubmonoid> {
    Ok(match parse_subfunctor(spec)? {
        SubfunctorSpec::Powers(a) => PointwiseSubmonoid::powers(ring, a)?,
        SubfunctorSpec::Values(v) => PointwiseSubmonoid::new(ring, &v)?,
    })
}

pub fn localize(ctx: &Context, functor: &FunctorArgs, subfunctor: &str, suite: &SuiteArgs) -> Result<RunReport> {
    need_fp(functor, "localize")?;
    let g = functor_group(functor, None)?;
    let ring = parse_ring(&functor.ring)?;
    let s = submonoid(&ring, subfunctor)?;
    let t = FixedPointFunctor::new(&g, ring.clone());
    let universe = Universe::standard(&g, suite.max_size);
    let opts = axiom_options(ctx, suite);
    let mut report = check_subfunctor(&t, &s, &universe, &opts);
    let mut result = universe_summary(&universe);
    if report.passed() {
        match Localized::new(t, &s) {
            Ok(loc) => {
                result["localized_ring_size"] = json!(loc.localization().ring.size());
                report.merge(check_axioms(&loc, &universe, &opts));
            }
            Err(e) => report.record("localize", Err(e.to_string())),
        }
    }
    Ok(RunReport::new("localize", report, Some(result)))
}

pub fn cor27(ctx: &Context, functor: &FunctorArgs, biset: &str, ideal: &str, suite: &SuiteArgs) -> Result<RunReport> {
    need_fp(functor, "check-cor27")?;
    let biset = with_biset(functor, biset)?;
    let h = functor_group(functor, Some(&biset))?;
    let ring = parse_ring(&functor.ring)?;
    let t = FixedPointFunctor::new(&h, ring.clone());
    let universe = Universe::standard(biset.right_group(), suite.max_size);
    let opts = axiom_options(ctx, suite);
    let report = match parse_ideal(ideal)? {
        IdealSpec::Zero => check_cor27(&t, &ZeroIdeal, &biset, &universe, &opts),
        IdealSpec::Whole => check_cor27(&t, &WholeIdeal, &biset, &universe, &opts),
        IdealSpec::Values(v) => check_cor27(&t, &PointwiseIdeal::new(&ring, &v)?, &biset, &universe, &opts),
    };
    Ok(RunReport::new("check-cor27", report, Some(universe_summary(&universe))))
}

pub fn cor28(ctx: &Context, functor: &FunctorArgs, biset: &str, subfunctor: &str, suite: &SuiteArgs) -> Result<RunReport> {
    need_fp(functor, "check-cor28")?;
    let biset = with_biset(functor, biset)?;
    let h = functor_group(functor, Some(&biset))?;
    let ring = parse_ring(&functor.ring)?;
    let s = submonoid(&ring, subfunctor)?;
    let t = FixedPointFunctor::new(&h, ring);
    let universe = Universe::standard(biset.right_group(), suite.max_size);
    let report = check_cor28(&t, &s, &biset, &universe, &axiom_options(ctx, suite));
    Ok(RunReport::new("check-cor28", report, Some(universe_summary(&universe))))
}

fn universe_summary(universe: &Universe) -> Value {
    json!({ "objects": universe.objects.len(), "maps": universe.maps.len() })
}

/// Multisets of transitive types (one per conjugacy class of subgroups, weighted by index) with
/// total size at most `n`.
fn count_by_orbit_types(indices: &[usize], n: usize) -> usize {
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for &k in indices {
        for s in k..=n {
            ways[s] += ways[s - k];
        }
    }
    ways.iter().sum()
}

pub fn universe(group: &str, max_size: usize) -> Result<RunReport> {
    let g = parse_group(group)?;
    let universe = Universe::standard(&g, max_size);
    let indices: Vec<usize> = g.subgroup_class_reps().iter().map(|k| k.index()).collect();
    let expected = count_by_orbit_types(&indices, max_size);
    let mut report = Report::new();
    report.record(
        "iso_class_count",
        if expected == universe.objects.len() {
            Ok(())
        } else {
            Err(format!("{} representatives, orbit-type count {expected}", universe.objects.len()))
        },
    );
    let objects: Vec<Value> = universe
        .objects
        .iter()
        .map(|x| json!({ "size": x.size(), "orbit_types": orbit_types(x), "act": x.rows() }))
        .collect();
    let result = json!({ "group_order": g.order(), "count": objects.len(), "objects": objects });
    Ok(RunReport::new("universe", report, Some(result)))
}
