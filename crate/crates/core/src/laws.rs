//! Law suites for the bispan category: unit and associativity laws, generator relations,
//! exchange and distributivity, agreement with functor evaluation, and the induced functor `F_U`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::biset::{u_apply_map, Biset, Verify};
use crate::bispan::{
    apply_f_u, bispans_equivalent, compose_with_limit, eval_bispan, product_pair, Bispan, BispanSampler,
};
use crate::error::Error;
use crate::exponential::dependent_product;
use crate::gset::{pullback, GMap, Universe};
use crate::report::Report;
use crate::tambara::{probe_elements, AxiomOptions, MapIndex, TambaraFunctor};

#[derive(Clone, Debug)]
pub struct LawOptions {
    pub seed: u64,
    /// Bispans sampled for the unit laws.
    pub unit_samples: usize,
    /// Composable triples sampled for associativity.
    pub triples: usize,
    /// Composable pairs sampled for the `F_U` composition check.
    pub functor_pairs: usize,
    /// Compositions whose intermediate dependent product is larger than this are resampled.
    pub max_sections: usize,
    /// Cap on generator, exchange and distributivity instances taken from the universe.
    pub max_cases: usize,
}

impl Default for LawOptions {
    fn default() -> LawOptions {
        LawOptions { seed: 0, unit_samples: 200, triples: 100, functor_pairs: 50, max_sections: 4096, max_cases: usize::MAX }
    }
}

/// A pair `(second, first)` with `first.y = second.x`.
pub type ComposablePair = (Bispan, Bispan);

fn equivalent(name: &str, lhs: &Bispan, rhs: &Bispan) -> Result<(), String> {
    match bispans_equivalent(lhs, rhs) {
        Ok(Some(_)) => Ok(()),
        Ok(None) => Err(format!("{name}: no pair of isomorphisms between {} and {}", shape(lhs), shape(rhs))),
        Err(e) => Err(format!("{name}: {e}")),
    }
}

fn shape(phi: &Bispan) -> String {
    format!("[{} <- {} -> {} -> {}]", phi.x().size(), phi.a().size(), phi.b().size(), phi.y().size())
}

fn compose_checked(second: &Bispan, first: &Bispan, opts: &LawOptions) -> Result<Bispan, Error> {
    compose_with_limit(second, first, opts.max_sections)
}

/// Picks up to `max` evenly spread entries of `items`.
fn spread<T: Clone>(items: &[T], max: usize) -> Vec<T> {
    if items.len() <= max {
        return items.to_vec();
    }
    (0..max).map(|i| items[i * items.len() / max].clone()).collect()
}

/// The category laws over `universe`. Returns the report and every composable pair that was
/// composed along the way, for reuse by [`check_eval_consistency`].
pub fn check_category_laws(universe: &Universe, opts: &LawOptions) -> (Report, Vec<ComposablePair>) {
    let mut report = Report::new();
    let mut pairs = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sampler = BispanSampler::new(universe);
    for name in [
        "left_unit",
        "right_unit",
        "associativity",
        "transfer_composition",
        "restriction_composition",
        "norm_composition",
        "generator_decomposition",
        "exchange",
        "distributivity",
    ] {
        report.declare(name);
    }

    let mut resampled = 0usize;
    for _ in 0..opts.unit_samples {
        let (_, _, phi) = sampler.sample_any(&mut rng);
        let left = Bispan::identity(phi.y());
        let right = Bispan::identity(phi.x());
        let outcome = compose_checked(&left, &phi, opts)
            .map_err(|e| e.to_string())
            .and_then(|c| equivalent("identity ∘ φ", &c, &phi));
        report.record("left_unit", outcome);
        let outcome = compose_checked(&phi, &right, opts)
            .map_err(|e| e.to_string())
            .and_then(|c| equivalent("φ ∘ identity", &c, &phi));
        report.record("right_unit", outcome);
        pairs.push((left, phi.clone()));
        pairs.push((phi.clone(), right));

        let decomposed = compose_checked(&Bispan::gen_n(phi.v()), &Bispan::gen_r(phi.w()), opts)
            .and_then(|nr| compose_checked(&Bispan::gen_t(phi.u()), &nr, opts));
        report.record(
            "generator_decomposition",
            decomposed.map_err(|e| e.to_string()).and_then(|c| equivalent("T_u ∘ N_v ∘ R_w", &c, &phi)),
        );
    }

    let n = universe.objects.len();
    let mut done = 0;
    while done < opts.triples {
        let ids: Vec<usize> = (0..4).map(|_| rand::Rng::gen_range(&mut rng, 0..n)).collect();
        let drawn = (
            sampler.sample(ids[0], ids[1], &mut rng),
            sampler.sample(ids[1], ids[2], &mut rng),
            sampler.sample(ids[2], ids[3], &mut rng),
        );
        let (Some(p1), Some(p2), Some(p3)) = drawn else { continue };
        let lhs = compose_checked(&p2, &p1, opts).and_then(|c| compose_checked(&p3, &c, opts).map(|d| (c, d)));
        let rhs = compose_checked(&p3, &p2, opts).and_then(|c| compose_checked(&c, &p1, opts).map(|d| (c, d)));
        match (lhs, rhs) {
            (Ok((c21, l)), Ok((c32, r))) => {
                report.record("associativity", equivalent("(φ3 ∘ φ2) ∘ φ1 vs φ3 ∘ (φ2 ∘ φ1)", &r, &l));
                pairs.push((p2.clone(), p1.clone()));
                pairs.push((p3.clone(), c21));
                pairs.push((c32, p1));
                pairs.push((p3, p2));
                done += 1;
            }
            (Err(Error::SizeLimit { .. }), _) | (_, Err(Error::SizeLimit { .. })) => resampled += 1,
            (Err(e), _) | (_, Err(e)) => {
                report.record("associativity", Err(e.to_string()));
                done += 1;
            }
        }
        if resampled > 100 * opts.triples.max(1) {
            report.record("associativity", Err("size budget too small to draw triples".into()));
            break;
        }
    }

    let index = MapIndex::new(universe);
    let composable = spread(&index.composable(), opts.max_cases);
    for &(i, j) in &composable {
        let (f, g) = (&universe.maps[i], &universe.maps[j]);
        let gf = g.after(f).expect("composable");
        let t = compose_checked(&Bispan::gen_t(g), &Bispan::gen_t(f), opts);
        report.record("transfer_composition", t.map_err(|e| e.to_string()).and_then(|c| equivalent("T_g ∘ T_f", &c, &Bispan::gen_t(&gf))));
        let nn = compose_checked(&Bispan::gen_n(g), &Bispan::gen_n(f), opts);
        report.record("norm_composition", nn.map_err(|e| e.to_string()).and_then(|c| equivalent("N_g ∘ N_f", &c, &Bispan::gen_n(&gf))));
        // R_f: Y -> X and R_g: Z -> Y, so R_f ∘ R_g = R_{g∘f}
        let rr = compose_checked(&Bispan::gen_r(f), &Bispan::gen_r(g), opts);
        report.record("restriction_composition", rr.map_err(|e| e.to_string()).and_then(|c| equivalent("R_f ∘ R_g", &c, &Bispan::gen_r(&gf))));
        pairs.push((Bispan::gen_t(g), Bispan::gen_t(f)));
        pairs.push((Bispan::gen_n(g), Bispan::gen_n(f)));
        pairs.push((Bispan::gen_r(f), Bispan::gen_r(g)));
    }

    for &(i, j) in &spread(&index.cospans(), opts.max_cases) {
        let (f, g) = (&universe.maps[i], &universe.maps[j]);
        let outcome = pullback(f, g).map_err(|e| e.to_string()).and_then(|pb| {
            // pb.left: P -> X over f, pb.right: P -> Y' over g
            let lhs = compose_checked(&Bispan::gen_r(g), &Bispan::gen_t(f), opts).map_err(|e| e.to_string())?;
            let rhs = compose_checked(&Bispan::gen_t(&pb.right), &Bispan::gen_r(&pb.left), opts).map_err(|e| e.to_string())?;
            equivalent("R_g ∘ T_f vs T_f' ∘ R_g'", &lhs, &rhs)
        });
        report.record("exchange", outcome);
        pairs.push((Bispan::gen_r(g), Bispan::gen_t(f)));
    }

    for &(pi, fi) in &spread(&index.composable(), opts.max_cases) {
        let (p, f) = (&universe.maps[pi], &universe.maps[fi]);
        let outcome = dependent_product(f, p).map_err(|e| e.to_string()).and_then(|d| {
            let lhs = compose_checked(&Bispan::gen_n(f), &Bispan::gen_t(p), opts).map_err(|e| e.to_string())?;
            let rhs = Bispan::new(d.lam.clone(), d.rho.clone(), d.pi.clone()).map_err(|e| e.to_string())?;
            let staged = compose_checked(&Bispan::gen_n(&d.rho), &Bispan::gen_r(&d.lam), opts)
                .and_then(|nr| compose_checked(&Bispan::gen_t(&d.pi), &nr, opts))
                .map_err(|e| e.to_string())?;
            equivalent("T_π ∘ N_ρ ∘ R_λ", &staged, &rhs)?;
            equivalent("N_f ∘ T_p vs T_π ∘ N_ρ ∘ R_λ", &lhs, &rhs)
        });
        report.record("distributivity", outcome);
        pairs.push((Bispan::gen_n(f), Bispan::gen_t(p)));
    }
    (report, pairs)
}

/// `eval(φ2 ∘ φ1) = eval(φ2) ∘ eval(φ1)` on probe elements of `T(X)` for every pair.
pub fn check_eval_consistency<T: TambaraFunctor>(t: &T, pairs: &[ComposablePair], opts: &AxiomOptions) -> Report {
    let mut report = Report::new();
    report.declare("eval_composition");
    report.declare("eval_identity");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for (k, (second, first)) in pairs.iter().enumerate() {
        let composite = match compose_with_limit(second, first, usize::MAX) {
            Ok(c) => c,
            Err(e) => {
                report.record("eval_composition", Err(format!("pair {k}: {e}")));
                continue;
            }
        };
        for a in probe_elements(t, first.x(), opts, &mut rng) {
            let direct = eval_bispan(t, &composite, &a);
            let staged = eval_bispan(t, second, &eval_bispan(t, first, &a));
            let outcome = if direct == staged {
                Ok(())
            } else {
                Err(format!("pair {k} {} then {} at {a:?}: {direct:?} vs {staged:?}", shape(first), shape(second)))
            };
            report.record("eval_composition", outcome);
        }
        for a in probe_elements(t, first.x(), opts, &mut rng) {
            let id = eval_bispan(t, &Bispan::identity(first.x()), &a);
            report.record("eval_identity", if id == a { Ok(()) } else { Err(format!("identity moved {a:?}")) });
        }
    }
    report
}

/// `F_U` on identities, generators, sampled composites and the product spans.
pub fn check_functor_laws(biset: &Biset, universe: &Universe, opts: &LawOptions, verify: Verify) -> Report {
    let mut report = Report::new();
    for name in ["fu_identity", "fu_generators", "fu_composition", "fu_products"] {
        report.declare(name);
    }
    if biset.right_group() != &universe.group {
        report.record("fu_identity", Err(Error::GroupMismatch.to_string()));
        return report;
    }
    let fu = |phi: &Bispan| apply_f_u(biset, phi, verify).map_err(|e| e.to_string());
    let ua = |f: &GMap| u_apply_map(biset, f, verify).map_err(|e| e.to_string());

    for x in &universe.objects {
        let outcome = fu(&Bispan::identity(x)).and_then(|image| {
            let id = Bispan::identity(image.x());
            equivalent("F_U(id)", &image, &id)
        });
        report.record("fu_identity", outcome);
    }
    for f in spread(&universe.maps, opts.max_cases) {
        let outcome = ua(&f).and_then(|uf| {
            equivalent("F_U(T_f)", &fu(&Bispan::gen_t(&f))?, &Bispan::gen_t(&uf))?;
            equivalent("F_U(N_f)", &fu(&Bispan::gen_n(&f))?, &Bispan::gen_n(&uf))?;
            equivalent("F_U(R_f)", &fu(&Bispan::gen_r(&f))?, &Bispan::gen_r(&uf))
        });
        report.record("fu_generators", outcome);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sampler = BispanSampler::new(universe);
    let n = universe.objects.len();
    let mut done = 0;
    let mut attempts = 0;
    while done < opts.functor_pairs && attempts < 100 * opts.functor_pairs.max(1) {
        attempts += 1;
        let ids: Vec<usize> = (0..3).map(|_| rand::Rng::gen_range(&mut rng, 0..n)).collect();
        let (Some(p1), Some(p2)) = (sampler.sample(ids[0], ids[1], &mut rng), sampler.sample(ids[1], ids[2], &mut rng)) else {
            continue;
        };
        let composite = match compose_with_limit(&p2, &p1, opts.max_sections) {
            Ok(c) => c,
            Err(Error::SizeLimit { .. }) => continue,
            Err(e) => {
                report.record("fu_composition", Err(e.to_string()));
                done += 1;
                continue;
            }
        };
        let outcome = (|| {
            let lhs = fu(&composite)?;
            let rhs = compose_with_limit(&fu(&p2)?, &fu(&p1)?, usize::MAX).map_err(|e| e.to_string())?;
            equivalent("F_U(φ2 ∘ φ1) vs F_U(φ2) ∘ F_U(φ1)", &lhs, &rhs)
        })();
        report.record("fu_composition", outcome);
        done += 1;
    }
    if done < opts.functor_pairs {
        report.record("fu_composition", Err(format!("only {done} composable pairs fit the size budget")));
    }

    for x in &universe.objects {
        for y in &universe.objects {
            report.record("fu_products", product_image(biset, x, y, verify));
        }
    }
    report
}

/// With `k = [U∘ι_X, U∘ι_Y]: U∘X ⊔ U∘Y -> U∘(X ⊔ Y)`, checks that `k` is an isomorphism and that
/// `F_U(R_{ι_X}) ∘ T_k` and `F_U(R_{ι_Y}) ∘ T_k` are the projections of the product of images.
fn product_image(biset: &Biset, x: &crate::gset::GSet, y: &crate::gset::GSet, verify: Verify) -> Result<(), String> {
    let err = |e: Error| e.to_string();
    let (_, rx, ry) = product_pair(x, y).map_err(err)?;
    let ux = u_apply_map(biset, &GMap::identity(x), verify).map_err(err)?;
    let uy = u_apply_map(biset, &GMap::identity(y), verify).map_err(err)?;
    let (_, px, py) = product_pair(ux.source(), uy.source()).map_err(err)?;
    let fx = apply_f_u(biset, &rx, verify).map_err(err)?;
    let fy = apply_f_u(biset, &ry, verify).map_err(err)?;
    let (gx, gy) = (fx.w(), fy.w());
    let values: Vec<usize> = gx.values().iter().chain(gy.values()).copied().collect();
    let k = GMap::new(px.x().clone(), gx.target().clone(), values).map_err(err)?;
    if !k.is_bijective() {
        return Err(format!("U∘X ⊔ U∘Y -> U∘(X ⊔ Y) is not bijective for |X| = {}, |Y| = {}", x.size(), y.size()));
    }
    let tk = Bispan::gen_t(&k);
    equivalent("F_U(R_ιX) ∘ T_k", &compose_with_limit(&fx, &tk, usize::MAX).map_err(err)?, &px)?;
    equivalent("F_U(R_ιY) ∘ T_k", &compose_with_limit(&fy, &tk, usize::MAX).map_err(err)?, &py)
}
