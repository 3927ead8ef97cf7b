//! The symmetric characterisation of coverings: spans of discrete
//! fibrations into the base subcategory, witness construction from
//! splittings, and the sweep comparing the two characterisations.
//!
//! A symmetric witness for an n-cubical extension α is a span of
//! discrete fibrations β ← τ → α whose far end β lies (vertex-wise) in
//! the base subcategory. At n = 1 such a witness exists exactly when the
//! extension is a covering; at n = 2 the same holds for double
//! extensions, and the constructive route goes through the extension
//! being split by itself.

use crate::algebra::Hom;
use crate::diagram::CubeDiagram;
use crate::extension::{cube_pullback, is_nfold_extension};
use crate::fibration::{is_discrete_fibration, limit_comparison};
use crate::galois::{
    covering_by_search, covering_oracle0, covering_oracle1, in_b0, is_trivial_covering,
    is_trivial_covering_level1, reflect0, CoveringVerdict, Structure,
};
use crate::{input_err, Error, Result};

/// A span of discrete fibrations β ← τ → α. In both legs the final
/// direction is the leg direction: `leg.face(n, false) = τ` and
/// `leg.face(n, true)` is β (left) or α (right).
#[derive(Debug, Clone)]
pub struct SymmetricWitness {
    pub alpha: CubeDiagram,
    pub tau: CubeDiagram,
    pub beta: CubeDiagram,
    pub left: CubeDiagram,
    pub right: CubeDiagram,
}

/// Which membership condition β must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessForm {
    /// Every vertex of β lies in 𝓑₀ (the Main Theorem form).
    Base,
    /// β is a primitive covering of the appropriate level.
    Level,
}

/// Strategy for the symmetrically-trivial test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Canonical,
    Search,
}

/// The pointwise base reflection of a cube: every vertex is reflected
/// into 𝓑₀ and the units form the connecting (n+1)-cube (new direction
/// last).
pub fn pointwise_reflection_cube(
    structure: Structure,
    cube: &CubeDiagram,
) -> Result<(CubeDiagram, CubeDiagram)> {
    let units: Vec<Hom> = (0..1usize << cube.dim())
        .map(|s| reflect0(structure, cube.vertex(s)).1)
        .collect();
    cube.map_vertices(&units)
}

/// Verifies a symmetric witness: the legs must frame τ against α and β,
/// both must be discrete fibrations, and β must meet the form's
/// membership condition. On acceptance, τ is re-derived to be a trivial
/// covering in every arrow view; a failure there is a property violation,
/// not a rejection.
pub fn verify_symmetric_witness(
    structure: Structure,
    w: &SymmetricWitness,
    form: WitnessForm,
) -> Result<bool> {
    let n = w.alpha.dim();
    if w.tau.dim() != n || w.beta.dim() != n || w.left.dim() != n + 1 || w.right.dim() != n + 1 {
        return input_err("witness shapes are inconsistent");
    }
    if w.left.face(n, false)? != w.tau
        || w.right.face(n, false)? != w.tau
        || w.left.face(n, true)? != w.beta
        || w.right.face(n, true)? != w.alpha
    {
        return Ok(false);
    }
    for leg in [&w.left, &w.right] {
        if !is_nfold_extension(leg)?.is_extension {
            return Ok(false);
        }
        if !is_discrete_fibration(leg)?.is_df {
            return Ok(false);
        }
    }
    let beta_ok = match form {
        WitnessForm::Base => (0..1usize << n).all(|s| in_b0(structure, w.beta.vertex(s))),
        WitnessForm::Level => match n {
            1 => covering_oracle0(structure, &w.beta.as_hom()?)?.is_yes(),
            2 => covering_oracle1(structure, &w.beta)?.is_yes(),
            _ => false,
        },
    };
    if !beta_ok {
        return Ok(false);
    }
    // The accepted τ must be a trivial covering in every way of viewing
    // it; anything else would falsify the symmetry lemma.
    if form == WitnessForm::Base {
        match n {
            1 => {
                if !is_trivial_covering(structure, &w.tau.as_hom()?)?.is_yes() {
                    return Err(Error::Property(
                        "accepted symmetric witness has a non-trivial τ at order 1".into(),
                    ));
                }
            }
            2 => {
                for d in 0..2 {
                    let (v, _) = is_trivial_covering_level1(structure, &w.tau, d)?;
                    if !v.is_yes() {
                        return Err(Error::Property(format!(
                            "accepted symmetric witness has τ non-trivial in view {d}"
                        )));
                    }
                }
            }
            _ => {}
        }
    }
    Ok(true)
}

/// Builds the order-1 witness from a splitting `e` of the covering `c`:
/// τ is the pullback of `c` along `e`, the right leg is the pullback
/// square and the left leg is the reflection square of τ.
pub fn construct_witness_from_splitting(
    structure: Structure,
    c: &Hom,
    e: &Hom,
) -> Result<Option<SymmetricWitness>> {
    if !crate::galois::verify_splitting(structure, c, e)? {
        return Ok(None);
    }
    let (_, pi_c, pi_e) = crate::algebra::pullback(c, e)?;
    let tau = CubeDiagram::arrow(pi_e.clone());
    let alpha = CubeDiagram::arrow(c.clone());
    let right = CubeDiagram::from_arrow(&tau, &alpha, &[pi_c, e.clone()])?;
    let left = crate::galois::reflection_square(structure, &pi_e)?;
    let beta = left.face(1, true)?;
    let w = SymmetricWitness { alpha, tau, beta, left, right };
    Ok(if verify_symmetric_witness(structure, &w, WitnessForm::Base)? { Some(w) } else { None })
}

/// Builds the order-2 witness for a double extension split by itself
/// (the Mal'tsev route used for groups): the kernel-pair 3-cube gives a
/// discrete fibration τ₂ → α, the level-1 reflection gives τ₂ → β₂,
/// the same two steps repeated at level 0 give τ₁ → β₂ and τ₁ → β₁
/// with β₁ vertex-wise in 𝓑₀, and the span is closed by a pullback of
/// cubes and composition of discrete fibrations. Returns `None` as soon
/// as any leg fails its discrete-fibration check (e.g. when α is not a
/// double covering).
pub fn construct_witness_split_by_itself(
    structure: Structure,
    alpha: &CubeDiagram,
) -> Result<Option<SymmetricWitness>> {
    if alpha.dim() != 2 || !is_nfold_extension(alpha)?.is_extension {
        return input_err("the order-2 construction expects a double extension");
    }
    // Step A: pull α back along itself in the square direction 1; the
    // resulting 3-cube is the right leg τ₂ → α.
    let k = cube_pullback(alpha, 1, alpha, 1)?;
    if !is_discrete_fibration(&k)?.is_df {
        return Ok(None);
    }
    let tau2 = k.face(2, false)?;
    // Level-1 reflection of τ₂: a discrete fibration τ₂ → β₂ exactly
    // when τ₂ is a trivial Γ₁-covering, i.e. when α was split by itself.
    let (_, l) = is_trivial_covering_level1(structure, &tau2, 0)?;
    if !is_nfold_extension(&l)?.is_extension || !is_discrete_fibration(&l)?.is_df {
        return Ok(None);
    }
    let beta2 = l.face(2, true)?;
    if !is_nfold_extension(&beta2)?.is_extension {
        return Ok(None);
    }
    // Step B, same pattern one level down: pull β₂ back along itself in
    // direction 0 (the direction of its primitive-covering edges).
    let kp = cube_pullback(&beta2, 0, &beta2, 0)?;
    if !is_discrete_fibration(&kp)?.is_df {
        return Ok(None);
    }
    // Transpose so its codomain face is β₂ on the nose.
    let kp_t = kp.move_direction(0, 1)?;
    let tau1 = kp_t.face(2, false)?;
    // Pointwise base reflection of τ₁: its edges in the covering
    // direction are kernel-pair projections of primitive coverings,
    // hence trivial, so the connecting cube is a discrete fibration.
    let (beta1, m) = pointwise_reflection_cube(structure, &tau1)?;
    if !is_nfold_extension(&m)?.is_extension || !is_discrete_fibration(&m)?.is_df {
        return Ok(None);
    }
    // Close the span: pull the two discrete fibrations over β₂ against
    // each other, project, and compose.
    let w4 = cube_pullback(&l, 2, &kp_t, 2)?;
    let to_tau2 = w4.face(3, false)?;
    let to_tau1 = w4.face(2, false)?;
    for leg in [&to_tau2, &to_tau1] {
        if !is_discrete_fibration(leg)?.is_df {
            return Ok(None);
        }
    }
    let right = to_tau2.compose(&k, 2)?;
    let left = to_tau1.compose(&m, 2)?;
    let tau = w4.face(2, false)?.face(2, false)?;
    let w = SymmetricWitness {
        alpha: alpha.clone(),
        tau,
        beta: beta1,
        left,
        right,
    };
    Ok(if verify_symmetric_witness(structure, &w, WitnessForm::Base)? { Some(w) } else { None })
}

/// Searches for a symmetric witness for an n-cubical extension,
/// n ∈ {1, 2}. Returns `Yes` with a verified witness or `Unknown`; never
/// `No`.
pub fn find_symmetric_witness(
    structure: Structure,
    alpha: &CubeDiagram,
    bound: usize,
    catalog: &[crate::algebra::Alg],
) -> Result<(CoveringVerdict, Option<SymmetricWitness>)> {
    if !is_nfold_extension(alpha)?.is_extension {
        return input_err("witness search expects an n-fold extension");
    }
    match alpha.dim() {
        1 => {
            let c = alpha.as_hom()?;
            let out = covering_by_search(structure, &c, bound, catalog)?;
            if let Some(e) = out.splitting {
                if let Some(w) = construct_witness_from_splitting(structure, &c, &e)? {
                    return Ok((
                        CoveringVerdict::Yes {
                            certificate: "symmetric witness constructed from a splitting".into(),
                        },
                        Some(w),
                    ));
                }
            }
            Ok((CoveringVerdict::Unknown { bound }, None))
        }
        2 => {
            if let Some(w) = construct_witness_split_by_itself(structure, alpha)? {
                return Ok((
                    CoveringVerdict::Yes {
                        certificate: "symmetric witness constructed via split-by-itself".into(),
                    },
                    Some(w),
                ));
            }
            Ok((CoveringVerdict::Unknown { bound }, None))
        }
        _ => input_err("witness search supports dimensions 1 and 2"),
    }
}

/// Symmetrically-trivial test: does a discrete fibration from τ into a
/// 𝓑₀-cube exist? The canonical candidate is the pointwise-reflection
/// cube, exact at order 1. At higher orders a canonical No downgrades to
/// `Unknown` under the `Canonical` strategy; the `Search` strategy also
/// enumerates all pointwise 𝓑₀-quotient cubes before giving up.
pub fn is_symmetrically_trivial(
    structure: Structure,
    tau: &CubeDiagram,
    strategy: Strategy,
) -> Result<CoveringVerdict> {
    if !is_nfold_extension(tau)?.is_extension {
        return input_err("symmetrically-trivial test expects an extension");
    }
    let (_, connecting) = pointwise_reflection_cube(structure, tau)?;
    let canonical_yes = is_nfold_extension(&connecting)?.is_extension && {
        let (_, cmp) = limit_comparison(&connecting)?;
        cmp.is_bijective()
    };
    if canonical_yes {
        return Ok(CoveringVerdict::Yes {
            certificate: "pointwise-reflection cube is a discrete fibration".into(),
        });
    }
    if tau.dim() == 1 {
        return Ok(CoveringVerdict::No {
            counterexample: "reflection square is not a pullback".into(),
        });
    }
    if strategy == Strategy::Search {
        if let Some(()) = search_b0_quotient_df(structure, tau)? {
            return Ok(CoveringVerdict::Yes {
                certificate: "discrete fibration onto a non-canonical 𝓑₀-quotient cube".into(),
            });
        }
    }
    Ok(CoveringVerdict::Unknown { bound: 0 })
}

/// Exhaustive search over pointwise 𝓑₀-quotient cubes of τ: any
/// discrete fibration τ → β with β in 𝓑₀ has surjective components, so
/// each β-vertex is a quotient of the τ-vertex by a congruence above the
/// orbit congruence and the edges are forced. Returns Some(()) if some
/// candidate yields a discrete fibration.
fn search_b0_quotient_df(structure: Structure, tau: &CubeDiagram) -> Result<Option<()>> {
    let count = 1usize << tau.dim();
    // Congruences above the orbit congruence at each vertex, found as
    // congruences on the reflected vertex pulled back along the unit.
    let mut unit_of = Vec::with_capacity(count);
    let mut choices: Vec<Vec<Hom>> = Vec::with_capacity(count);
    for s in 0..count {
        let (q, unit) = reflect0(structure, tau.vertex(s));
        let mut local = Vec::new();
        for c in crate::algebra::enumerate_congruences(&q) {
            let (_, proj) = crate::algebra::quotient(&c);
            local.push(unit.then(&proj)?);
        }
        unit_of.push(unit);
        choices.push(local);
    }
    let mut pick = vec![0usize; count];
    loop {
        let units: Vec<Hom> = (0..count).map(|s| choices[s][pick[s]].clone()).collect();
        if let Ok((beta, connecting)) = tau.map_vertices(&units) {
            let all_b0 = (0..count).all(|s| in_b0(structure, beta.vertex(s)));
            if all_b0 && is_nfold_extension(&connecting)?.is_extension {
                let (_, cmp) = limit_comparison(&connecting)?;
                if cmp.is_bijective() {
                    return Ok(Some(()));
                }
            }
        }
        let mut d = 0;
        loop {
            pick[d] += 1;
            if pick[d] < choices[d].len() {
                break;
            }
            pick[d] = 0;
            d += 1;
            if d == count {
                return Ok(None);
            }
        }
    }
}

/// Classification of one sweep instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepClass {
    AgreeYes,
    AgreeNo,
    OracleYesBoundExhausted,
    WitnessYesOracleNo,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepInstance {
    pub index: usize,
    pub initial_vertex_size: usize,
    pub oracle: CoveringVerdict,
    pub witness: CoveringVerdict,
    pub class: SweepClass,
    /// Full witness serialisation for accepted instances.
    pub witness_span: Option<WitnessJson>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct WitnessJson {
    pub tau: String,
    pub beta: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepReport {
    pub structure: Structure,
    pub dim: usize,
    pub bound: usize,
    pub total: usize,
    pub agree_yes: usize,
    pub agree_no: usize,
    pub oracle_yes_bound_exhausted: usize,
    pub witness_yes_oracle_no: usize,
    pub failures: Vec<SweepInstance>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.oracle_yes_bound_exhausted == 0 && self.witness_yes_oracle_no == 0
    }
}

/// Compares the covering oracle with the symmetric-witness search over a
/// corpus of n-cubical extensions (n ∈ {1, 2}).
pub fn main_theorem_sweep(
    structure: Structure,
    corpus: &[CubeDiagram],
    bound: usize,
    catalog: &[crate::algebra::Alg],
    record_witnesses: bool,
) -> Result<SweepReport> {
    use rayon::prelude::*;
    let instances: Vec<SweepInstance> = corpus
        .par_iter()
        .enumerate()
        .map(|(index, alpha)| -> Result<SweepInstance> {
            let oracle = match alpha.dim() {
                1 => covering_oracle0(structure, &alpha.as_hom()?)?,
                2 => covering_oracle1(structure, alpha)?,
                _ => return input_err("sweep supports dimensions 1 and 2"),
            };
            let (witness_verdict, witness) =
                find_symmetric_witness(structure, alpha, bound, catalog)?;
            let class = match (&oracle, &witness_verdict) {
                (CoveringVerdict::Yes { .. }, CoveringVerdict::Yes { .. }) => SweepClass::AgreeYes,
                (CoveringVerdict::No { .. }, CoveringVerdict::Yes { .. }) => {
                    SweepClass::WitnessYesOracleNo
                }
                (CoveringVerdict::Yes { .. }, _) => SweepClass::OracleYesBoundExhausted,
                (_, _) => SweepClass::AgreeNo,
            };
            let witness_span = match (&witness, record_witnesses) {
                (Some(w), true) => Some(WitnessJson {
                    tau: crate::diagram::cube_to_json(&w.tau),
                    beta: crate::diagram::cube_to_json(&w.beta),
                    left: crate::diagram::cube_to_json(&w.left),
                    right: crate::diagram::cube_to_json(&w.right),
                }),
                _ => None,
            };
            Ok(SweepInstance {
                index,
                initial_vertex_size: alpha.initial().size(),
                oracle,
                witness: witness_verdict,
                class,
                witness_span,
            })
        })
        .collect::<Result<_>>()?;
    let count = |c: SweepClass| instances.iter().filter(|i| i.class == c).count();
    let failures = instances
        .iter()
        .filter(|i| {
            matches!(
                i.class,
                SweepClass::OracleYesBoundExhausted | SweepClass::WitnessYesOracleNo
            )
        })
        .cloned()
        .collect();
    Ok(SweepReport {
        structure,
        dim: corpus.first().map_or(0, |c| c.dim()),
        bound,
        total: instances.len(),
        agree_yes: count(SweepClass::AgreeYes),
        agree_no: count(SweepClass::AgreeNo),
        oracle_yes_bound_exhausted: count(SweepClass::OracleYesBoundExhausted),
        witness_yes_oracle_no: count(SweepClass::WitnessYesOracleNo),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Alg, FiniteAlgebra};
    use crate::catalog::groups::q8;

    fn r3() -> Alg {
        FiniteAlgebra::dihedral_quandle(3)
    }
    fn t1() -> Alg {
        FiniteAlgebra::trivial_quandle(1)
    }
    fn t2() -> Alg {
        FiniteAlgebra::trivial_quandle(2)
    }
    fn p_hom() -> Hom {
        let p_alg = FiniteAlgebra::product(&r3(), &t2()).unwrap();
        let values = p_alg.pair_decoding().unwrap().iter().map(|&(x, _)| x).collect();
        Hom::new(p_alg, r3(), values).unwrap()
    }
    fn q8_mod_center() -> Hom {
        let g = q8();
        let (_, unit) = reflect0(Structure::GroupAb, &g);
        unit
    }

    #[test]
    fn identity_splitting_gives_a_witness_for_p() {
        let w = construct_witness_from_splitting(
            Structure::QuandlePi0,
            &p_hom(),
            &Hom::identity(p_hom().cod()),
        )
        .unwrap()
        .expect("p is trivial, identity splits it");
        assert!(verify_symmetric_witness(Structure::QuandlePi0, &w, WitnessForm::Base).unwrap());
        // β is the arrow T2 → T1.
        assert_eq!(w.beta.initial().size(), 2);
        assert_eq!(w.beta.terminal().size(), 1);
    }

    #[test]
    fn self_splitting_gives_a_witness_for_q8_to_v4() {
        let c = q8_mod_center();
        let w = construct_witness_from_splitting(Structure::GroupAb, &c, &c)
            .unwrap()
            .expect("central extensions are split by themselves");
        assert!(verify_symmetric_witness(Structure::GroupAb, &w, WitnessForm::Base).unwrap());
        assert_eq!(w.tau.as_hom().unwrap().dom().size(), 16); // Eq(c): four fibres of size 2, squared
    }

    #[test]
    fn corrupted_witness_is_rejected() {
        let c = p_hom();
        let w = construct_witness_from_splitting(
            Structure::QuandlePi0,
            &c,
            &Hom::identity(c.cod()),
        )
        .unwrap()
        .unwrap();
        // Swap the legs: faces no longer match α and β.
        let bad = SymmetricWitness {
            alpha: w.alpha.clone(),
            tau: w.tau.clone(),
            beta: w.beta.clone(),
            left: w.right.clone(),
            right: w.left.clone(),
        };
        assert!(!verify_symmetric_witness(Structure::QuandlePi0, &bad, WitnessForm::Base).unwrap());
    }

    #[test]
    fn no_witness_found_for_r3_to_t1() {
        let alpha = CubeDiagram::arrow(Hom::new(r3(), t1(), vec![0, 0, 0]).unwrap());
        let (v, w) = find_symmetric_witness(Structure::QuandlePi0, &alpha, 6, &[]).unwrap();
        assert!(matches!(v, CoveringVerdict::Unknown { .. }));
        assert!(w.is_none());
    }

    #[test]
    fn symmetrically_trivial_cases() {
        // The arrow p is a trivial covering: canonical Yes.
        let tau = CubeDiagram::arrow(p_hom());
        assert!(is_symmetrically_trivial(Structure::QuandlePi0, &tau, Strategy::Canonical)
            .unwrap()
            .is_yes());
        // R3 → T1 is not: canonical No at order 1 stays No.
        let bang = CubeDiagram::arrow(Hom::new(r3(), t1(), vec![0, 0, 0]).unwrap());
        assert!(is_symmetrically_trivial(Structure::QuandlePi0, &bang, Strategy::Canonical)
            .unwrap()
            .is_no());
    }

    #[test]
    fn order2_witness_for_a_central_double_extension() {
        let g = q8();
        let center = crate::algebra::kernel_congruence(&q8_mod_center());
        let sq = crate::catalog::square_from_congruence_pair(&g, &center, &center).unwrap();
        let w = construct_witness_split_by_itself(Structure::GroupAb, &sq)
            .unwrap()
            .expect("central double extension has a symmetric witness");
        assert!(verify_symmetric_witness(Structure::GroupAb, &w, WitnessForm::Base).unwrap());
        for s in 0..4 {
            assert!(in_b0(Structure::GroupAb, w.beta.vertex(s)));
        }
    }

    #[test]
    fn order2_construction_fails_for_a_non_covering() {
        let g = q8();
        let congruences = crate::algebra::enumerate_congruences(&g);
        let index2: Vec<_> = congruences.iter().filter(|c| c.num_classes() == 2).collect();
        let sq = crate::catalog::square_from_congruence_pair(&g, index2[0], index2[1]).unwrap();
        assert!(covering_oracle1(Structure::GroupAb, &sq).unwrap().is_no());
        assert!(construct_witness_split_by_itself(Structure::GroupAb, &sq).unwrap().is_none());
    }

    #[test]
    fn small_sweep_is_clean() {
        let corpus = vec![
            CubeDiagram::arrow(p_hom()),
            CubeDiagram::arrow(Hom::new(r3(), t1(), vec![0, 0, 0]).unwrap()),
            CubeDiagram::arrow(Hom::identity(&r3())),
        ];
        let report =
            main_theorem_sweep(Structure::QuandlePi0, &corpus, 6, &[], false).unwrap();
        assert_eq!(report.total, 3);
        assert_eq!(report.agree_yes, 2);
        assert_eq!(report.agree_no, 1);
        assert!(report.is_clean());
    }
}
