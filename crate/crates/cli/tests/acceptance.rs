//! Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use tambara_core::biset::{check_preservation, fiber_count, identity_counit, u_apply_object};
use tambara_core::laws::{check_category_laws, check_eval_consistency, check_functor_laws, LawOptions};
use tambara_core::tambara::{
    check_axioms, check_cor27, check_cor28, AxiomOptions, FixedPointFunctor, PointwiseIdeal, PointwiseSubmonoid,
    TambaraFunctor, Transformed,
};
use tambara_core::{dependent_product, Biset, GSet, Group, Report, TabRing, Universe, Verify};

struct Outcome {
    passed: bool,
    detail: String,
}

fn group(name: &str) -> Arc<Group> {
    Arc::new(Group::named(name).unwrap())
}

fn exhaustive() -> AxiomOptions {
    AxiomOptions { max_cases: usize::MAX, ..AxiomOptions::default() }
}

fn first_failure(report: &Report) -> String {
    report
        .failures()
        .next()
        .map(|c| format!("; first failure {}: {}", c.name, c.witness.clone().unwrap_or_default()))
        .unwrap_or_default()
}

/// Identity, induction and restriction bisets for the groups of the preservation sweep.
fn sweep_bisets() -> Vec<(String, Biset)> {
    let mut out = Vec::new();
    for name in ["c2", "c3", "s3", "c6"] {
        out.push((format!("identity {name}"), Biset::identity(&group(name))));
    }
    for h in ["c2", "s3", "c6"] {
        for g in ["c2", "c3"] {
            let (hg, gg) = (group(h), group(g));
            if let Some(e) = gg.find_embedding(&hg) {
                out.push((format!("ind {h}<-{g}"), Biset::induction(&hg, &gg, &e).unwrap()));
                out.push((format!("res {g}<-{h}"), Biset::restriction(&hg, &gg, &e).unwrap()));
            }
        }
    }
    out
}

fn preservation_sweep() -> (Outcome, Outcome) {
    let mut pairs = 0usize;
    let mut failed: Vec<String> = Vec::new();
    let mut diagrams = 0usize;
    let mut fiber_failures: Vec<String> = Vec::new();
    for (name, u) in sweep_bisets() {
        let universe = Universe::standard(u.right_group(), 3);
        for f in &universe.maps {
            for p in universe.maps_to(f.source()) {
                let report = check_preservation(&u, f, p, Verify::Eager);
                pairs += 1;
                if !report.passed() {
                    failed.push(format!("{name}{}", first_failure(&report)));
                }
                let d = dependent_product(f, p).expect("small dependent products fit");
                diagrams += 1;
                if let Err(w) = fiber_count(&d) {
                    fiber_failures.push(format!("{name}: {w}"));
                }
            }
        }
    }
    let bisets = sweep_bisets().len();
    (
        Outcome {
            passed: failed.is_empty(),
            detail: format!("{bisets} bisets, {pairs} pairs (f, p), {} failing{}", failed.len(), failed.first().map(|w| format!("; {w}")).unwrap_or_default()),
        },
        Outcome {
            passed: fiber_failures.is_empty(),
            detail: format!("{diagrams} dependent products, {} failing", fiber_failures.len()),
        },
    )
}

fn fixed_point_suite() -> Outcome {
    let mut runs = 0;
    let mut cases = 0;
    let mut failed = Vec::new();
    for g in ["c2", "c3", "s3"] {
        let g = group(g);
        let universe = Universe::standard(&g, 4);
        for n in [4, 6] {
            let t = FixedPointFunctor::new(&g, TabRing::zmod(n).unwrap());
            let report = check_axioms(&t, &universe, &exhaustive());
            runs += 1;
            cases += report.total_cases();
            if !report.passed() {
                failed.push(format!("order {} Z/{n}{}", g.order(), first_failure(&report)));
            }
        }
    }
    Outcome {
        passed: failed.is_empty(),
        detail: format!("{runs} functors, {cases} cases{}", failed.first().map(|w| format!("; {w}")).unwrap_or_default()),
    }
}

fn identity_relabeling_matches<T: TambaraFunctor<Elem = Vec<usize>> + Clone>(t: &T, universe: &Universe) -> Result<usize, String> {
    let id = Biset::identity(t.group());
    let tu = Transformed::new(t.clone(), &id).map_err(|e| e.to_string())?;
    let carry = |x: &GSet, a: &Vec<usize>| -> Vec<usize> {
        let e = identity_counit(&u_apply_object(&id, x, Verify::Eager).unwrap());
        (0..e.source().size()).map(|c| a[e.apply(c)]).collect()
    };
    let mut checked = 0;
    for x in &universe.objects {
        let mut ours: Vec<_> = t.elements(x, usize::MAX).unwrap().iter().map(|a| carry(x, a)).collect();
        ours.sort();
        if Some(ours) != tu.elements(x, usize::MAX) {
            return Err(format!("value sets differ on a G-set of size {}", x.size()));
        }
        for y in &universe.objects {
            if !(tu.add(y, &tu.one(y), &tu.one(y)) == carry(y, &t.add(y, &t.one(y), &t.one(y)))) {
                return Err("ring structure differs".into());
            }
        }
    }
    for f in &universe.maps {
        let (x, y) = (f.source(), f.target());
        for a in t.elements(x, usize::MAX).unwrap() {
            let ok = tu.transfer(f, &carry(x, &a)) == carry(y, &t.transfer(f, &a))
                && tu.norm(f, &carry(x, &a)) == carry(y, &t.norm(f, &a));
            if !ok {
                return Err(format!("transfer or norm differs along {:?}", f.values()));
            }
            checked += 1;
        }
        for b in t.elements(y, usize::MAX).unwrap() {
            if tu.restrict(f, &carry(y, &b)) != carry(x, &t.restrict(f, &b)) {
                return Err(format!("restriction differs along {:?}", f.values()));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn transform_suite() -> Outcome {
    let mut runs = 0;
    let mut failed = Vec::new();
    let mut relabel_cases = 0;
    // T ranges over the fixed-point functors of the axiom suite, so U's left group must be one of its groups.
    let t_groups: Vec<_> = ["c2", "c3", "s3"].into_iter().map(group).collect();
    for (name, u) in sweep_bisets() {
        if !t_groups.iter().any(|g| **g == **u.left_group()) {
            continue;
        }
        let universe = Universe::standard(u.right_group(), 4);
        for n in [4, 6] {
            let t = FixedPointFunctor::new(u.left_group(), TabRing::zmod(n).unwrap());
            let tu = Transformed::with_verify(t.clone(), &u, Verify::Fast).unwrap();
            let report = check_axioms(&tu, &universe, &exhaustive());
            runs += 1;
            if !report.passed() {
                failed.push(format!("{name} Z/{n}{}", first_failure(&report)));
            }
            if name.starts_with("identity") {
                match identity_relabeling_matches(&t, &Universe::standard(u.right_group(), 3)) {
                    Ok(k) => relabel_cases += k,
                    Err(w) => failed.push(format!("{name} Z/{n} relabeling: {w}")),
                }
            }
        }
    }
    Outcome {
        passed: failed.is_empty(),
        detail: format!(
            "{runs} transformed functors, {relabel_cases} identity relabeling cases{}",
            failed.first().map(|w| format!("; {w}")).unwrap_or_default()
        ),
    }
}

fn induction_s3_c2() -> Biset {
    let (s3, c2) = (group("s3"), group("c2"));
    Biset::induction(&s3, &c2, &c2.find_embedding(&s3).unwrap()).unwrap()
}

fn summarize(report: &Report) -> Outcome {
    Outcome {
        passed: report.passed() && report.checks().all(|c| c.cases > 0),
        detail: format!("{} checks, {} cases{}", report.checks().count(), report.total_cases(), first_failure(report)),
    }
}

fn quotient_criterion() -> Outcome {
    let t = FixedPointFunctor::new(&group("s3"), TabRing::zmod(4).unwrap());
    let even = PointwiseIdeal::new(t.ring(), &[0, 2]).unwrap();
    let universe = Universe::standard(&group("c2"), 4);
    summarize(&check_cor27(&t, &even, &induction_s3_c2(), &universe, &exhaustive()))
}

fn fraction_criterion() -> Outcome {
    let t = FixedPointFunctor::new(&group("s3"), TabRing::zmod(6).unwrap());
    let s = PointwiseSubmonoid::powers(t.ring(), 3).unwrap();
    let universe = Universe::standard(&group("c2"), 4);
    summarize(&check_cor28(&t, &s, &induction_s3_c2(), &universe, &exhaustive()))
}

fn category_and_eval() -> (Outcome, Outcome) {
    let opts = LawOptions::default();
    let (mut laws, mut evals) = (Report::new(), Report::new());
    let mut pair_count = 0;
    for g in ["c2", "c3", "s3"] {
        let g = group(g);
        let universe = Universe::standard(&g, 3);
        let (report, pairs) = check_category_laws(&universe, &opts);
        laws.merge(report);
        pair_count += pairs.len();
        let t = FixedPointFunctor::new(&g, TabRing::zmod(4).unwrap());
        evals.merge(check_eval_consistency(&t, &pairs, &exhaustive()));
    }
    let mut e = summarize(&evals);
    e.detail = format!("{pair_count} composed pairs, {}", e.detail);
    (summarize(&laws), e)
}

fn functor_criterion() -> Outcome {
    let opts = LawOptions::default();
    let mut report = Report::new();
    let (s3, c2) = (group("s3"), group("c2"));
    let res = Biset::restriction(&s3, &c2, &c2.find_embedding(&s3).unwrap()).unwrap();
    for u in [induction_s3_c2(), res, Biset::identity(&c2)] {
        let universe = Universe::standard(u.right_group(), 3);
        report.merge(check_functor_laws(&u, &universe, &opts, Verify::Eager));
    }
    summarize(&report)
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn determinism() -> Outcome {
    let fold = data("fold.json");
    let compose = data("transfer_then_norm.json");
    let norm = data("norm_to_point.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["verify-phi", "--biset", "ind:s3:c2", "--max-size", "3"],
        vec!["verify-phi", "--biset", "res:c3:c6", "--max-size", "3", "--verify", "fast"],
        vec!["exp-diagram", "--input", &fold],
        vec!["biset-apply", "--biset", "ind:s3:c3", "--gset", "regular"],
        vec!["compose", "--input", &compose],
        vec!["eval", "--input", &norm, "--ring", "zmod:6"],
        vec!["check-tambara", "--group", "s3", "--ring", "zmod:6", "--max-size", "3"],
        vec!["check-tambara", "--functor", "burnside", "--group", "c2", "--max-size", "2", "--max-cases", "300"],
        vec!["transform", "--biset", "ind:s3:c2", "--ring", "zmod:4", "--max-size", "3"],
        vec!["quotient", "--group", "s3", "--ring", "zmod:4", "--ideal", "values:0,2", "--max-size", "3"],
        vec!["localize", "--group", "s3", "--ring", "zmod:6", "--subfunctor", "powers:3", "--max-size", "3"],
        vec!["check-cor27", "--biset", "ind:s3:c2", "--ring", "zmod:4", "--ideal", "values:0,2", "--max-size", "3"],
        vec!["check-cor28", "--biset", "ind:s3:c2", "--ring", "zmod:6", "--subfunctor", "powers:3", "--max-size", "3"],
        vec!["universe", "--group", "s3", "--max-size", "4", "--format", "text"],
    ];
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_tambara")).args(args).output().expect("binary runs");
    let mut unstable = Vec::new();
    for args in &commands {
        let (a, b) = (run(args), run(args));
        if a.stdout != b.stdout || a.status != b.status || a.status.code() != Some(0) {
            unstable.push(args[0].to_string());
        }
    }
    Outcome {
        passed: unstable.is_empty(),
        detail: format!("{} commands run twice, {} unstable or failing {:?}", commands.len(), unstable.len(), unstable),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() {
    let mut lines: Vec<(usize, &str, Outcome, Duration, Option<Duration>)> = Vec::new();

    let ((c1, c2), t) = timed(preservation_sweep);
    lines.push((1, "biset composites preserve exponential diagrams; Φ, Ψ mutually inverse", c1, t, Some(Duration::from_secs(60))));
    lines.push((2, "fiber count of every dependent product in the sweep", c2, t, None));
    let (c3, t) = timed(fixed_point_suite);
    lines.push((3, "fixed-point functors satisfy the Tambara axioms", c3, t, Some(Duration::from_secs(120))));
    let (c4, t) = timed(transform_suite);
    lines.push((4, "T∘U satisfies the axioms; identity transform matches T", c4, t, None));
    let (c5, t) = timed(quotient_criterion);
    lines.push((5, "(T/I)∘U = (T∘U)/(I∘U) for even residues in Z/4 over S3", c5, t, None));
    let (c6, t) = timed(fraction_criterion);
    lines.push((6, "(S⁻¹T)∘U = (S∘U)⁻¹(T∘U) for powers of 3 in Z/6 over S3", c6, t, None));
    let ((c7, c8), t) = timed(category_and_eval);
    lines.push((7, "bispan category laws up to equivalence", c7, t, None));
    lines.push((8, "evaluation respects bispan composition", c8, t, None));
    let (c9, t) = timed(functor_criterion);
    lines.push((9, "F_U preserves identities, composition and products", c9, t, None));
    let (c10, t) = timed(determinism);
    lines.push((10, "CLI output is byte-identical across reruns", c10, t, None));

    let mut all = true;
    for (n, title, outcome, elapsed, budget) in lines {
        let within = budget.map_or(true, |b| elapsed <= b);
        let passed = outcome.passed && within;
        all &= passed;
        let budget_note = budget.map(|b| format!(", budget {} s", b.as_secs())).unwrap_or_default();
        println!(
            "criterion {n:>2} {}: {title} ({}; {:.2} s{budget_note})",
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
