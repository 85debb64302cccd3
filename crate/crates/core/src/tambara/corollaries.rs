//! Compatibility of quotients and fractions with biset transformation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::axioms::{describe, probe_elements, select, AxiomOptions};
use super::localize::{check_subfunctor, Localized, MultiplicativeFamily, TransformedSubfunctor};
use super::pointwise::PointwiseFamily;
use super::quotient::{check_ideal, IdealFamily, Quotient, TransformedIdeal};
use super::transform::Transformed;
use super::TambaraFunctor;
use crate::biset::Biset;
use crate::gset::Universe;
use crate::report::Report;

/// For `T` over `H`, an ideal `I` and an H-G-biset `U`: `I∘U` is an ideal of `T∘U`, and
/// `(T/I)∘U` and `(T∘U)/(I∘U)` have identical values and structure maps on `universe`.
pub fn check_cor27<T, I>(t: &T, ideal: &I, biset: &Biset, universe: &Universe, opts: &AxiomOptions) -> Report
where
    T: TambaraFunctor + Clone,
    I: IdealFamily<T> + Clone,
{
    let mut report = Report::new();
    let (tu, lhs) = match (
        Transformed::new(t.clone(), biset),
        Transformed::new(Quotient::new(t.clone(), ideal.clone()), biset),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            report.record("transform", Err(e.to_string()));
            return report;
        }
    };
    let iu = TransformedIdeal { inner: ideal.clone() };
    report.merge(check_ideal(&tu, &iu, universe, opts));
    let rhs = Quotient::new(tu, iu);
    report.merge(compare_tables(&lhs, &rhs, universe, opts));
    report
}

/// For a pointwise `T` over `H`, a multiplicative family `S` and an H-G-biset `U`: `S∘U` is a
/// multiplicative subfunctor of `T∘U`, and `(S⁻¹T)∘U` and `(S∘U)⁻¹(T∘U)` have identical class
/// tables and structure maps on `universe`.
pub fn check_cor28<T, S>(t: &T, s: &S, biset: &Biset, universe: &Universe, opts: &AxiomOptions) -> Report
where
    T: PointwiseFamily + Clone,
    S: MultiplicativeFamily<T> + Clone,
{
    let mut report = Report::new();
    let built = Transformed::new(t.clone(), biset).and_then(|tu| {
        let su = TransformedSubfunctor { inner: s.clone() };
        let lhs = Transformed::new(Localized::new(t.clone(), s)?, biset)?;
        Ok((tu, su, lhs))
    });
    let (tu, su, lhs) = match built {
        Ok(v) => v,
        Err(e) => {
            report.record("localize", Err(e.to_string()));
            return report;
        }
    };
    report.merge(check_subfunctor(&tu, &su, universe, opts));
    match Localized::new(tu, &su) {
        Ok(rhs) => report.merge(compare_tables(&lhs, &rhs, universe, opts)),
        Err(e) => report.record("localize", Err(e.to_string())),
    }
    report
}

/// Two functors with the same element type agree on every value set, ring operation and
/// structure map examined.
pub fn compare_tables<A, B>(a: &A, b: &B, universe: &Universe, opts: &AxiomOptions) -> Report
where
    A: TambaraFunctor,
    B: TambaraFunctor<Elem = A::Elem>,
{
    let mut report = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let probes: Vec<_> = universe
        .objects
        .iter()
        .map(|x| probe_elements(a, x, opts, &mut rng))
        .collect();
    for (x, px) in universe.objects.iter().zip(&probes) {
        let same = a.elements(x, opts.enumerate_limit) == b.elements(x, opts.enumerate_limit)
            && a.zero(x) == b.zero(x)
            && a.one(x) == b.one(x);
        report.record("tables_values", if same { Ok(()) } else { Err(format!("over {} points", x.size())) });
        let ops = px.iter().all(|p| {
            a.neg(x, p) == b.neg(x, p)
                && px
                    .iter()
                    .all(|q| a.add(x, p, q) == b.add(x, p, q) && a.mul(x, p, q) == b.mul(x, p, q))
        });
        report.record("tables_ring_ops", if ops { Ok(()) } else { Err(format!("over {} points", x.size())) });
    }
    let pos = |x: &crate::gset::GSet| universe.objects.iter().position(|o| o == x).expect("universe object");
    for k in select(universe.maps.len(), opts.max_cases, &mut rng) {
        let f = &universe.maps[k];
        let w = || describe(f);
        let ok = probes[pos(f.target())].iter().all(|c| a.restrict(f, c) == b.restrict(f, c));
        report.record("tables_restriction", if ok { Ok(()) } else { Err(w()) });
        let src = &probes[pos(f.source())];
        let ok = src.iter().all(|c| a.transfer(f, c) == b.transfer(f, c));
        report.record("tables_transfer", if ok { Ok(()) } else { Err(w()) });
        let ok = src.iter().all(|c| a.norm(f, c) == b.norm(f, c));
        report.record("tables_norm", if ok { Ok(()) } else { Err(w()) });
    }
    report
}
