//! Named corpus sweeps: exhaustive desk-scale verification of the
//! calculus lemmas, Birkhoff and covering-theory properties, discrete
//! fibration closure, centralisation minimality, and the main-theorem
//! comparison. Every suite returns a serialisable report and is
//! deterministic regardless of thread count (parallel iteration merges
//! in corpus order).

use crate::algebra::{
    coequalizer, enumerate_congruences, is_homomorphism, is_isomorphic, kernel_congruence,
    kernel_pair, pullback, quotient, Alg, Congruence, Hom, Variety,
};
use crate::catalog::{enumerate_algebras, enumerate_extension_cubes, enumerate_surjections};
use crate::diagram::CubeDiagram;
use crate::extension::{cube_pullback, is_nfold_extension, kernel_pair_cube};
use crate::fibration::{df_pullback, is_df_recursive, is_discrete_fibration};
use crate::galois::{
    centralization_congruence, covering_oracle0, is_strongly_birkhoff, is_trivial_covering,
    reflect_ext, CoveringVerdict, Structure,
};
use crate::report::{CheckSummary, SuiteReport};
use crate::symmetric::{main_theorem_sweep, SweepReport};
use crate::{input_err, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// All surjective homomorphisms between catalog algebras up to the given
/// order, in catalog order.
pub fn surjection_corpus(variety: Variety, max_order: usize) -> Result<Vec<Hom>> {
    let cat = enumerate_algebras(variety, max_order)?;
    let mut out = Vec::new();
    for a in &cat.entries {
        for b in &cat.entries {
            if b.size() <= a.size() {
                out.extend(enumerate_surjections(a, b));
            }
        }
    }
    Ok(out)
}

/// All homomorphisms (not only surjections) between two small algebras,
/// by brute-force value enumeration.
fn all_homs(a: &Alg, b: &Alg) -> Vec<Hom> {
    let n = a.size();
    let m = b.size();
    let mut out = Vec::new();
    let mut values = vec![0usize; n];
    loop {
        if is_homomorphism(a, b, &values).unwrap_or(false) {
            out.push(Hom::new(a.clone(), b.clone(), values.clone()).unwrap());
        }
        let mut i = 0;
        loop {
            values[i] += 1;
            if values[i] < m {
                break;
            }
            values[i] = 0;
            i += 1;
            if i == n {
                return out;
            }
        }
    }
}

/// The discrete congruence on an algebra.
fn discrete(a: &Alg) -> Congruence {
    Congruence::new(a.clone(), (0..a.size()).collect()).unwrap()
}

/// The induced map A/c1 → A/c2 for c1 ⊆ c2.
fn quotient_hom(a: &Alg, c1: &Congruence, c2: &Congruence) -> Result<Hom> {
    let (q1, p1) = quotient(c1);
    let (q2, p2) = quotient(c2);
    let mut values = vec![0usize; q1.size()];
    for x in 0..a.size() {
        values[p1.apply(x)] = p2.apply(x);
    }
    Hom::new(q1, q2, values)
}

/// The square of quotients A/c₀₀ → A/c₀₁, A/c₁₀ → A/c₁₁ for a
/// containment-compatible 4-tuple of congruences (index = vertex bits).
fn square_of(a: &Alg, cs: [&Congruence; 4]) -> Result<CubeDiagram> {
    let vertices: Vec<Alg> = cs.iter().map(|c| quotient(c).0).collect();
    let mut edges: Vec<BTreeMap<usize, Hom>> = vec![Default::default(); 4];
    for s in 0..4usize {
        for d in 0..2 {
            if s & (1 << d) == 0 {
                edges[s].insert(d, quotient_hom(a, cs[s], cs[s | (1 << d)])?);
            }
        }
    }
    CubeDiagram::build(2, vertices, edges)
}

fn pullback_square_test(square: &CubeDiagram) -> Result<bool> {
    let (cmp, _, _, _) = crate::extension::comparison_hom(square, 1)?;
    Ok(cmp.is_bijective())
}

/// The calculus-lemma suite: weak right cancellation, Barr–Kock in both
/// forms, the composite-pullback lemma, and reflection of extensions by
/// pullbacks, all over composable quotient-square configurations drawn
/// from the catalog.
pub fn calculus_lemmas_suite(variety: Variety, max_order: usize) -> Result<SuiteReport> {
    let cat = enumerate_algebras(variety, max_order)?;
    let names = [
        "weak-right-cancellation",
        "barr-kock-extension",
        "barr-kock-pullback",
        "composite-pullback",
        "pullbacks-reflect-extensions",
        "coequalizer-recovers-quotient",
        "surjectivity-reflected-by-pullback",
    ];
    let per_algebra: Vec<Vec<CheckSummary>> = cat
        .entries
        .par_iter()
        .map(|a| calculus_on_algebra(a, &names))
        .collect::<Result<_>>()?;
    let mut checks: Vec<CheckSummary> = names.iter().map(|n| CheckSummary::new(n)).collect();
    for partial in per_algebra {
        for (acc, part) in checks.iter_mut().zip(partial) {
            acc.absorb(part);
        }
    }
    // Coequalizer recovery over the surjection corpus.
    for f in surjection_corpus(variety, max_order)? {
        checks[5].case();
        let (_, p1, p2) = kernel_pair(&f)?;
        let (q, _) = coequalizer(&p1, &p2)?;
        if !is_isomorphic(&q, f.cod()) {
            checks[5].fail(format!(
                "coequalizer of the kernel pair of {:?} does not recover the codomain",
                f.values()
            ));
        }
    }
    // Dimension-0 instance of reflection: pullback along a surjection
    // reflects surjectivity, over all homs between algebras of order ≤ 3.
    let small: Vec<&Alg> = cat.entries.iter().filter(|a| a.size() <= 3).collect();
    for a in &small {
        for b in &small {
            for f in all_homs(a, b) {
                for e_dom in &small {
                    for e in enumerate_surjections(e_dom, b) {
                        checks[6].case();
                        let (_, _, pi_e) = pullback(&f, &e)?;
                        if pi_e.is_surjection() && !f.is_surjection() {
                            checks[6].fail(format!(
                                "pullback of non-surjection {:?} along {:?} is surjective",
                                f.values(),
                                e.values()
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut report = SuiteReport::new("calculus-lemmas", None);
    report.param("variety", format!("{:?}", variety).to_lowercase());
    report.param("max_order", max_order);
    report.checks = checks;
    Ok(report)
}

fn calculus_on_algebra(a: &Alg, names: &[&str; 7]) -> Result<Vec<CheckSummary>> {
    let mut checks: Vec<CheckSummary> = names.iter().map(|n| CheckSummary::new(n)).collect();
    let congs = enumerate_congruences(a);
    let disc = discrete(a);
    let ctx = |r: usize, s: usize| format!("|A|={} congruences ({r},{s})", a.size());
    for (ri, r) in congs.iter().enumerate() {
        for (si, s) in congs.iter().enumerate() {
            let rs = r.join(s);
            let alpha = square_of(a, [&disc, r, s, &rs])?;
            let ext_a = is_nfold_extension(&alpha)?.is_extension;
            // Barr–Kock, extension form: α is a double extension iff
            // either kernel-pair projection square is.
            checks[1].case();
            let (_, proj1, proj2) = kernel_pair_cube(&alpha, 1)?;
            let e1 = is_nfold_extension(&proj1)?.is_extension;
            let e2 = is_nfold_extension(&proj2)?.is_extension;
            if e1 != ext_a || e2 != ext_a {
                checks[1].fail(format!("Barr–Kock extension mismatch at {}", ctx(ri, si)));
            }
            // Barr–Kock, pullback form.
            checks[2].case();
            let pb_a = pullback_square_test(&alpha)?;
            if pullback_square_test(&proj1)? != pb_a {
                checks[2].fail(format!("Barr–Kock pullback mismatch at {}", ctx(ri, si)));
            }
            // Reflection of extensions by pullbacks along extension arrows
            // with an identical codomain face.
            for (r2i, r2) in congs.iter().enumerate() {
                if r2.join(s).class_of() != rs.class_of() {
                    continue;
                }
                let alpha2 = square_of(a, [&disc, r2, s, &rs])?;
                if !is_nfold_extension(&alpha2)?.is_extension {
                    continue;
                }
                checks[4].case();
                let w = cube_pullback(&alpha, 1, &alpha2, 1)?;
                let pulled = w.face(1, false)?;
                if is_nfold_extension(&pulled)?.is_extension && !ext_a {
                    checks[4].fail(format!(
                        "pullback along extension is an extension but the original is not at {} vs {r2i}",
                        ctx(ri, si)
                    ));
                }
            }
            for t in congs.iter() {
                let st = s.join(t);
                let rst = rs.join(t);
                let beta = square_of(a, [s, &rs, &st, &rst])?;
                let gamma = alpha.compose(&beta, 1)?;
                let ext_b = is_nfold_extension(&beta)?.is_extension;
                let ext_g = is_nfold_extension(&gamma)?.is_extension;
                // Weak right cancellation: γ = β∘α a double extension
                // with α component-wise extensions forces β one too.
                checks[0].case();
                if ext_g && !ext_b {
                    checks[0].fail(format!("right cancellation fails at {}", ctx(ri, si)));
                }
                // Composite-pullback lemma.
                checks[3].case();
                if ext_a && ext_b && pullback_square_test(&gamma)? {
                    if !pullback_square_test(&alpha)? || !pullback_square_test(&beta)? {
                        checks[3].fail(format!("composite-pullback fails at {}", ctx(ri, si)));
                    }
                }
            }
        }
    }
    Ok(checks)
}

/// Strong Birkhoff over the surjection corpus: every reflection square is
/// a double extension.
pub fn birkhoff_suite(structure: Structure, max_order: usize) -> Result<SuiteReport> {
    let corpus = surjection_corpus(structure.variety(), max_order)?;
    let failures = is_strongly_birkhoff(structure, &corpus)?;
    let mut check = CheckSummary::new("reflection-square-is-double-extension");
    check.cases = corpus.len();
    for f in failures {
        check.fail(format!(
            "reflection square of {:?} ({} → {}) is not a double extension",
            f.values, f.dom_size, f.cod_size
        ));
    }
    let mut report = SuiteReport::new("birkhoff", Some(structure.name()));
    report.param("max_order", max_order);
    report.checks = vec![check];
    Ok(report)
}

/// Covering-theory factorisation properties at level 0: trivial ⟹
/// covering, both factorisation lemmas, and oracle invariance under
/// pullback along extensions.
pub fn factorisation_suite(structure: Structure, max_order: usize) -> Result<SuiteReport> {
    let variety = structure.variety();
    let cat = enumerate_algebras(variety, max_order)?;
    let corpus = surjection_corpus(variety, max_order)?;
    let mut trivial_implies = CheckSummary::new("trivial-implies-covering");
    let mut trivial_fact = CheckSummary::new("trivial-covering-factorisation");
    let mut covering_fact = CheckSummary::new("covering-factorisation");
    let mut pb_invariance = CheckSummary::new("oracle-invariant-under-pullback");
    for f in &corpus {
        trivial_implies.case();
        if is_trivial_covering(structure, f)?.is_yes() {
            match covering_oracle0(structure, f)? {
                CoveringVerdict::Yes { .. } => {}
                CoveringVerdict::Unknown { .. } => trivial_implies.unknown(),
                CoveringVerdict::No { .. } => trivial_implies.fail(format!(
                    "trivial covering {:?} rejected by the oracle",
                    f.values()
                )),
            }
        }
    }
    // Factorisation over quotient chains A → A/R → A/S with R ⊆ S.
    for a in &cat.entries {
        let congs = enumerate_congruences(a);
        for r in &congs {
            for s in &congs {
                if !r.is_contained_in(s) {
                    continue;
                }
                let t = quotient(r).1;
                let s_hom = quotient_hom(a, r, s)?;
                let st = quotient(s).1;
                trivial_fact.case();
                if is_trivial_covering(structure, &st)?.is_yes()
                    && (!is_trivial_covering(structure, &t)?.is_yes()
                        || !is_trivial_covering(structure, &s_hom)?.is_yes())
                {
                    trivial_fact.fail(format!(
                        "trivial composite with non-trivial factor on |A|={}",
                        a.size()
                    ));
                }
                covering_fact.case();
                if covering_oracle0(structure, &st)?.is_yes()
                    && (!covering_oracle0(structure, &t)?.is_yes()
                        || !covering_oracle0(structure, &s_hom)?.is_yes())
                {
                    covering_fact.fail(format!(
                        "covering composite with non-covering factor on |A|={}",
                        a.size()
                    ));
                }
            }
        }
    }
    // Oracle verdicts preserved and reflected by pullback along extensions.
    for f in &corpus {
        for e in &corpus {
            if e.cod() != f.cod() {
                continue;
            }
            pb_invariance.case();
            let (_, _, pi_e) = pullback(f, e)?;
            let before = covering_oracle0(structure, f)?.is_yes();
            let after = covering_oracle0(structure, &pi_e)?.is_yes();
            if before != after {
                pb_invariance.fail(format!(
                    "oracle verdict changed under pullback of {:?} along {:?}",
                    f.values(),
                    e.values()
                ));
            }
        }
    }
    let mut report = SuiteReport::new("factorisation", Some(structure.name()));
    report.param("max_order", max_order);
    report.checks = vec![trivial_implies, trivial_fact, covering_fact, pb_invariance];
    Ok(report)
}

/// Quotient stability: along every corpus double extension, a covering
/// domain arrow forces a covering codomain arrow.
pub fn quotient_stability_suite(
    structure: Structure,
    max_order: usize,
    budget: usize,
) -> Result<SuiteReport> {
    let cat = enumerate_algebras(structure.variety(), max_order)?;
    let squares = enumerate_extension_cubes(&cat, 2, budget)?;
    let mut check = CheckSummary::new("covering-stable-under-quotients");
    for (i, sq) in squares.iter().enumerate() {
        for d in 0..2 {
            check.case();
            let dom_arrow = sq.face(d, false)?.as_hom()?;
            let cod_arrow = sq.face(d, true)?.as_hom()?;
            if covering_oracle0(structure, &dom_arrow)?.is_yes()
                && !covering_oracle0(structure, &cod_arrow)?.is_yes()
            {
                check.fail(format!(
                    "double extension {i} direction {d}: covering domain, non-covering codomain"
                ));
            }
        }
    }
    let mut report = SuiteReport::new("quotient-stability", Some(structure.name()));
    report.param("max_order", max_order);
    report.param("budget", budget);
    report.checks = vec![check];
    Ok(report)
}

/// Discrete-fibration suite: direct/recursive equivalence on every
/// corpus square and 3-cube, DF-ness of pullbacks of extension pairs,
/// composition closure, and pullback stability.
pub fn df_closure_suite(variety: Variety, max_order: usize, budget: usize) -> Result<SuiteReport> {
    let cat = enumerate_algebras(variety, max_order)?;
    let squares = enumerate_extension_cubes(&cat, 2, budget)?;
    let cubes3 = enumerate_extension_cubes(&cat, 3, budget)?;
    let corpus = surjection_corpus(variety, max_order)?;

    // Equivalence of the limit-cone test with the recursive
    // characterisation, every viewing direction (disagreement raises a
    // property error inside is_df_recursive).
    let mut equivalence = CheckSummary::new("direct-vs-recursive");
    let square_results: Vec<Result<()>> = squares
        .par_iter()
        .map(|sq| {
            is_df_recursive(sq, 0, 1)?;
            is_df_recursive(sq, 1, 0)?;
            Ok(())
        })
        .collect();
    for r in square_results {
        r?;
        equivalence.case();
    }
    let cube_results: Vec<Result<()>> = cubes3
        .par_iter()
        .map(|c| {
            for d in 0..3 {
                for e in 0..3 {
                    if d != e {
                        is_df_recursive(c, d, e)?;
                    }
                }
            }
            Ok(())
        })
        .collect();
    for r in cube_results {
        r?;
        equivalence.case();
    }

    // Pullback squares of extension pairs are discrete fibrations, and
    // stacking them composes to a discrete fibration; pulling one back
    // along another is again one.
    let mut pullback_df = CheckSummary::new("extension-pullback-is-df");
    let mut composition = CheckSummary::new("df-composition");
    let mut stability = CheckSummary::new("df-pullback-stability");
    for f in &corpus {
        for e in &corpus {
            if e.cod() != f.cod() {
                continue;
            }
            pullback_df.case();
            let sq1 = pullback_square(f, e)?;
            if !is_discrete_fibration(&sq1)?.is_df {
                pullback_df.fail(format!(
                    "pullback of {:?} along {:?} is not a DF",
                    f.values(),
                    e.values()
                ));
                continue;
            }
            // Stack a second pullback square on top and compose.
            let pi_e = sq1.face(1, false)?.as_hom()?;
            for e2 in &corpus {
                if e2.cod() != pi_e.cod() || e2.dom().size() > max_order {
                    continue;
                }
                composition.case();
                let sq2 = pullback_square(&pi_e, e2)?;
                let composite = sq2.compose(&sq1, 1)?;
                if !is_discrete_fibration(&composite)?.is_df {
                    composition.fail(format!(
                        "composite of stacked pullback squares of {:?} is not a DF",
                        f.values()
                    ));
                }
                // Transposed composition exercises the other direction.
                let transposed = composite.move_direction(0, 1)?;
                if !is_discrete_fibration(&transposed)?.is_df {
                    composition
                        .fail("transposed composite of pullback squares is not a DF".into());
                }
                break; // one stacking per (f, e) keeps the corpus desk-scale
            }
            // Pullback stability: pull sq1 back along another pullback
            // square over the same arrow f (df_pullback asserts DF-ness).
            for e3 in &corpus {
                if e3.cod() != f.cod() || e3.values() == e.values() {
                    continue;
                }
                stability.case();
                let along = pullback_square(f, e3)?;
                df_pullback(&sq1, 1, &along, 1)?;
                break;
            }
        }
    }
    let mut report = SuiteReport::new("df-closure", None);
    report.param("variety", format!("{:?}", variety).to_lowercase());
    report.param("max_order", max_order);
    report.param("budget", budget);
    report.checks = vec![equivalence, pullback_df, composition, stability];
    Ok(report)
}

/// The pullback square of `f` along `e` viewed as an arrow from the
/// pulled-back extension to `f` in direction 1.
fn pullback_square(f: &Hom, e: &Hom) -> Result<CubeDiagram> {
    let (_, pi_f, pi_e) = pullback(f, e)?;
    CubeDiagram::from_arrow(
        &CubeDiagram::arrow(pi_e),
        &CubeDiagram::arrow(f.clone()),
        &[pi_f, e.clone()],
    )
}

/// Centralisation suite: for every corpus surjection, the reflected
/// extension passes the covering oracle (asserted inside reflect_ext) and
/// the centralisation congruence is minimal among covering-inducing
/// congruences below the kernel.
pub fn centralisation_suite(structure: Structure, max_dom: usize) -> Result<SuiteReport> {
    let corpus = surjection_corpus(structure.variety(), max_dom)?;
    let outcomes: Vec<(usize, usize, Vec<String>)> = corpus
        .par_iter()
        .map(|f| -> Result<(usize, usize, Vec<String>)> {
            let mut reflect_cases = 0;
            let mut minimal_cases = 0;
            let mut failures = Vec::new();
            reflect_cases += 1;
            reflect_ext(structure, f)?; // oracle pass and C ⊆ ker f asserted
            let c = centralization_congruence(structure, f)?;
            let ker = kernel_congruence(f);
            for d in enumerate_congruences(f.dom()) {
                if !d.is_contained_in(&ker) {
                    continue;
                }
                minimal_cases += 1;
                let (qd, pd) = quotient(&d);
                let mut values = vec![0usize; qd.size()];
                for x in 0..f.dom().size() {
                    values[pd.apply(x)] = f.apply(x);
                }
                let induced = Hom::new(qd, f.cod().clone(), values)?;
                if covering_oracle0(structure, &induced)?.is_yes() && !c.is_contained_in(&d) {
                    failures.push(format!(
                        "congruence below ker {:?} induces a covering but does not contain the centralisation congruence",
                        f.values()
                    ));
                }
            }
            Ok((reflect_cases, minimal_cases, failures))
        })
        .collect::<Result<_>>()?;
    let mut reflect = CheckSummary::new("reflected-extension-is-covering");
    let mut minimal = CheckSummary::new("centralisation-minimality");
    for (rc, mc, failures) in outcomes {
        reflect.cases += rc;
        minimal.cases += mc;
        for f in failures {
            minimal.fail(f);
        }
    }
    let mut report = SuiteReport::new("centralisation", Some(structure.name()));
    report.param("max_dom", max_dom);
    report.checks = vec![reflect, minimal];
    Ok(report)
}

/// The symmetry suite: accepted symmetrically trivial squares are
/// trivial Γ₁-coverings in both views, and the level-1 oracle verdict is
/// invariant under transposition.
pub fn symmetry_suite(structure: Structure, max_order: usize, budget: usize) -> Result<SuiteReport> {
    use crate::galois::{covering_oracle1, is_trivial_covering_level1};
    use crate::symmetric::{is_symmetrically_trivial, Strategy};
    let cat = enumerate_algebras(structure.variety(), max_order)?;
    let squares = enumerate_extension_cubes(&cat, 2, budget)?;
    let mut both_views = CheckSummary::new("symmetrically-trivial-implies-trivial-both-views");
    let mut transpose = CheckSummary::new("oracle-invariant-under-transpose");
    for (i, sq) in squares.iter().enumerate() {
        both_views.case();
        if is_symmetrically_trivial(structure, sq, Strategy::Canonical)?.is_yes() {
            for d in 0..2 {
                let (v, _) = is_trivial_covering_level1(structure, sq, d)?;
                if !v.is_yes() {
                    both_views.fail(format!(
                        "square {i} is symmetrically trivial but not trivial in view {d}"
                    ));
                }
            }
        }
        transpose.case();
        let flipped = sq.move_direction(0, 1)?;
        let v1 = covering_oracle1(structure, sq)?;
        let v2 = covering_oracle1(structure, &flipped)?;
        match (&v1, &v2) {
            (CoveringVerdict::Unknown { .. }, _) | (_, CoveringVerdict::Unknown { .. }) => {
                transpose.unknown()
            }
            _ => {
                if v1.is_yes() != v2.is_yes() {
                    transpose.fail(format!("square {i}: oracle verdict changes under transpose"));
                }
            }
        }
    }
    let mut report = SuiteReport::new("symmetry", Some(structure.name()));
    report.param("max_order", max_order);
    report.param("budget", budget);
    report.checks = vec![both_views, transpose];
    Ok(report)
}

/// Main-theorem sweep over a generated corpus: dimension 1 uses all
/// catalog surjections as extensions; dimension 2 uses the double
/// extension corpus.
pub fn main_theorem_suite(
    structure: Structure,
    dim: usize,
    max_order: usize,
    bound: usize,
    budget: usize,
) -> Result<SweepReport> {
    let cat = enumerate_algebras(structure.variety(), max_order)?;
    let corpus: Vec<CubeDiagram> = match dim {
        1 => surjection_corpus(structure.variety(), max_order)?
            .into_iter()
            .map(CubeDiagram::arrow)
            .collect(),
        2 => enumerate_extension_cubes(&cat, 2, budget)?,
        _ => return input_err("main-theorem sweep supports dimensions 1 and 2"),
    };
    main_theorem_sweep(structure, &corpus, bound, &cat.entries, false)
}
