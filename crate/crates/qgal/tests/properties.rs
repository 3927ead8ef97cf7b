//! Randomised law checks: invariance of the canonical form under
//! relabelling, serialisation round-trips, congruence-lattice laws, and
//! covering-theory implications on randomly drawn corpus surjections.

use proptest::prelude::*;
use qgal::algebra::{
    canonical_form, congruence_closure, coequalizer, enumerate_congruences, is_isomorphic,
    kernel_pair, parse_alg, pullback, quotient, relabelled, render_alg, Alg, Variety,
};
use qgal::catalog::{enumerate_algebras, enumerate_surjections};
use qgal::diagram::{cube_from_json, cube_to_json};
use qgal::galois::{covering_oracle0, is_trivial_covering, reflection_square, Structure};
use std::sync::OnceLock;

fn quandles() -> &'static Vec<Alg> {
    static CACHE: OnceLock<Vec<Alg>> = OnceLock::new();
    CACHE.get_or_init(|| enumerate_algebras(Variety::Quandle, 4).unwrap().entries)
}

fn surjections() -> &'static Vec<qgal::algebra::Hom> {
    static CACHE: OnceLock<Vec<qgal::algebra::Hom>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let cat = quandles();
        let mut out = Vec::new();
        for a in cat {
            for b in cat {
                if b.size() <= a.size() {
                    out.extend(enumerate_surjections(a, b));
                }
            }
        }
        out
    })
}

fn arb_algebra() -> impl Strategy<Value = Alg> {
    (0..quandles().len()).prop_map(|i| quandles()[i].clone())
}

/// Deterministic permutation of 0..n derived from a seed (Fisher–Yates
/// driven by a small LCG).
fn permutation_from_seed(n: usize, mut seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = (seed >> 33) as usize % (i + 1);
        perm.swap(i, j);
    }
    perm
}

proptest! {
    #[test]
    fn canonical_form_is_relabelling_invariant(a in arb_algebra(), seed in any::<u64>()) {
        let perm = permutation_from_seed(a.size(), seed);
        let b = relabelled(&a, &perm);
        prop_assert_eq!(canonical_form(&a), canonical_form(&b));
        prop_assert!(is_isomorphic(&a, &b));
    }

    #[test]
    fn alg_text_round_trips(a in arb_algebra(), noise in "[ \t]{0,3}") {
        let mut text = String::new();
        text.push_str("# generated fixture\n");
        for line in render_alg(&a).lines() {
            text.push_str(line);
            text.push_str(&noise);
            text.push('\n');
        }
        let back = parse_alg(&text).unwrap();
        prop_assert_eq!(&back, &a);
    }

    #[test]
    fn congruence_closure_laws(a in arb_algebra(), pairs in proptest::collection::vec((0usize..4, 0usize..4), 0..4)) {
        let n = a.size();
        let seed: Vec<(usize, usize)> =
            pairs.into_iter().map(|(x, y)| (x % n, y % n)).collect();
        let c = congruence_closure(&a, &seed);
        for &(x, y) in &seed {
            prop_assert!(c.related(x, y));
        }
        // Idempotence: closing the closure's relation changes nothing.
        let all: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| c.related(x, y))
            .collect();
        let c2 = congruence_closure(&a, &all);
        prop_assert_eq!(c.class_of(), c2.class_of());
        // The quotient has one element per class.
        let (q, proj) = quotient(&c);
        prop_assert_eq!(q.size(), c.num_classes());
        prop_assert!(proj.is_surjection());
    }

    #[test]
    fn join_is_commutative(a in arb_algebra(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let congs = enumerate_congruences(&a);
        let r = i.get(&congs);
        let s = j.get(&congs);
        let rs = r.join(s);
        let sr = s.join(r);
        prop_assert_eq!(rs.class_of(), sr.class_of());
        prop_assert!(r.is_contained_in(&r.join(s)));
    }

    #[test]
    fn pullback_is_symmetric_up_to_iso(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let corpus = surjections();
        let f = i.get(corpus);
        let g = j.get(corpus);
        if f.cod() == g.cod() {
            let (p, _, _) = pullback(f, g).unwrap();
            let (q, _, _) = pullback(g, f).unwrap();
            prop_assert!(is_isomorphic(&p, &q));
        }
    }

    #[test]
    fn coequalizer_of_kernel_pair_recovers_codomain(i in any::<prop::sample::Index>()) {
        let f = i.get(surjections());
        let (_, p1, p2) = kernel_pair(f).unwrap();
        let (q, _) = coequalizer(&p1, &p2).unwrap();
        prop_assert!(is_isomorphic(&q, f.cod()));
    }

    #[test]
    fn trivial_coverings_pass_the_oracle(i in any::<prop::sample::Index>()) {
        let f = i.get(surjections());
        if is_trivial_covering(Structure::QuandlePi0, f).unwrap().is_yes() {
            prop_assert!(covering_oracle0(Structure::QuandlePi0, f).unwrap().is_yes());
        }
    }

    #[test]
    fn reflection_square_json_round_trips(i in any::<prop::sample::Index>()) {
        let f = i.get(surjections());
        let sq = reflection_square(Structure::QuandlePi0, f).unwrap();
        let back = cube_from_json(&cube_to_json(&sq)).unwrap();
        prop_assert_eq!(back, sq);
    }
}
