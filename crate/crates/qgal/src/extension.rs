//! The extension calculus: double and n-fold extension predicates,
//! comparison maps and cubes, component-wise pullbacks of cube arrows,
//! kernel-pair cubes, and the initial-square pushout reduction.
//!
//! An n-cube is an n-fold extension when, viewed as a square of
//! (n−2)-cubes in any two directions, all four faces are (n−1)-fold
//! extensions and so is the comparison cube into the component-wise
//! pullback. The verdict is direction-independent; the checker verifies
//! every direction pair and raises a property violation if two ever
//! disagree, since a disagreement would falsify the theory it implements.

use crate::algebra::{pullback, Alg, Hom};
use crate::diagram::CubeDiagram;
use crate::{input_err, Error, Result};

/// Outcome of an extension check, with a witness on failure.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ExtensionVerdict {
    pub is_extension: bool,
    /// On failure: the viewing directions and what failed there.
    pub witness: Option<ExtensionFailure>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ExtensionFailure {
    pub directions: Vec<usize>,
    pub detail: String,
}

impl ExtensionVerdict {
    fn pass() -> Self {
        Self { is_extension: true, witness: None }
    }

    fn fail(directions: Vec<usize>, detail: impl Into<String>) -> Self {
        Self {
            is_extension: false,
            witness: Some(ExtensionFailure { directions, detail: detail.into() }),
        }
    }
}

/// The comparison map of a square: the induced hom from the initial
/// vertex into the pullback of the two edges meeting at the terminal
/// vertex. `d` picks which projection comes first; the verdict-relevant
/// content (surjectivity) does not depend on it.
pub fn comparison_hom(square: &CubeDiagram, d: usize) -> Result<(Hom, Alg, Hom, Hom)> {
    if square.dim() != 2 {
        return input_err("comparison_hom requires a 2-cube");
    }
    if d > 1 {
        return input_err("direction out of range for a square");
    }
    let e = 1 - d;
    let f = square.edge(1 << d, e); // vertex{d} → terminal
    let g = square.edge(1 << e, d); // vertex{e} → terminal
    let (p, pi_f, pi_g) = pullback(f, g)?;
    let pairs = p.pair_decoding().expect("pullback carries pair metadata");
    let index: std::collections::HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
    let values = (0..square.initial().size())
        .map(|x| index[&(square.edge(0, d).apply(x), square.edge(0, e).apply(x))])
        .collect();
    let cmp = Hom::new(square.initial().clone(), p.clone(), values)?;
    Ok((cmp, p, pi_f, pi_g))
}

/// A square of extensions with surjective comparison map.
pub fn is_double_extension(square: &CubeDiagram) -> Result<ExtensionVerdict> {
    is_nfold_extension(square)
}

/// The comparison (n−1)-cube of an n-cube viewed as a square in
/// directions `d`, `e`: source layer = the initial (n−2)-cube, target
/// layer = the component-wise pullback of the two codomain-side
/// (n−1)-cubes, connected by the pointwise comparison maps (the new
/// direction is placed last).
pub fn comparison_cube(cube: &CubeDiagram, d: usize, e: usize) -> Result<CubeDiagram> {
    let n = cube.dim();
    if n < 2 || d == e || d >= n || e >= n {
        return input_err("comparison_cube needs an n ≥ 2 cube and two distinct directions");
    }
    // Work over the base index space of the remaining n−2 directions.
    let base_dirs: Vec<usize> = (0..n).filter(|&x| x != d && x != e).collect();
    let base_count = 1usize << base_dirs.len();
    let expand = |t: usize| -> usize {
        let mut s = 0;
        for (i, &dir) in base_dirs.iter().enumerate() {
            if t & (1 << i) != 0 {
                s |= 1 << dir;
            }
        }
        s
    };
    // Pointwise pullbacks P_t with their comparison maps.
    let mut apexes: Vec<Alg> = Vec::with_capacity(base_count);
    let mut comps: Vec<Hom> = Vec::with_capacity(base_count);
    let mut projections: Vec<(Hom, Hom)> = Vec::with_capacity(base_count);
    for t in 0..base_count {
        let s = expand(t);
        let f = cube.edge(s | (1 << d), e);
        let g = cube.edge(s | (1 << e), d);
        let (p, pi_f, pi_g) = pullback(f, g)?;
        let pairs = p.pair_decoding().expect("pullback carries pair metadata");
        let index: std::collections::HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
        let values = (0..cube.vertex(s).size())
            .map(|x| index[&(cube.edge(s, d).apply(x), cube.edge(s, e).apply(x))])
            .collect();
        comps.push(Hom::new(cube.vertex(s).clone(), p.clone(), values)?);
        apexes.push(p);
        projections.push((pi_f, pi_g));
    }
    // Source layer: the sub-cube on the base directions at the initial side.
    let mut src = cube.clone();
    src = src.face(d.max(e), false)?;
    src = src.face(d.min(e), false)?;
    // Target layer: induced edges between the pullbacks.
    let mut tgt_edges: Vec<std::collections::BTreeMap<usize, Hom>> =
        vec![Default::default(); base_count];
    for t in 0..base_count {
        for (i, &dir) in base_dirs.iter().enumerate() {
            if t & (1 << i) != 0 {
                continue;
            }
            let t2 = t | (1 << i);
            let s = expand(t);
            let hd = cube.edge(s | (1 << d), dir); // between the d-side vertices
            let he = cube.edge(s | (1 << e), dir); // between the e-side vertices
            let src_pairs = apexes[t].pair_decoding().unwrap();
            let dst_pairs = apexes[t2].pair_decoding().unwrap();
            let index: std::collections::HashMap<(usize, usize), usize> =
                dst_pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
            let values = src_pairs
                .iter()
                .map(|&(x, y)| index[&(hd.apply(x), he.apply(y))])
                .collect();
            tgt_edges[t].insert(i, Hom::new(apexes[t].clone(), apexes[t2].clone(), values)?);
        }
    }
    let tgt = CubeDiagram::build(base_dirs.len(), apexes, tgt_edges)?;
    let _ = projections;
    CubeDiagram::from_arrow(&src, &tgt, &comps)
}

/// Decides the n-fold extension property for a cube of any dimension,
/// verifying agreement over every pair of viewing directions.
pub fn is_nfold_extension(cube: &CubeDiagram) -> Result<ExtensionVerdict> {
    let n = cube.dim();
    if n == 0 {
        return Ok(ExtensionVerdict::pass()); // objects count as extensions
    }
    if n == 1 {
        let h = cube.edge(0, 0);
        return Ok(if h.is_surjection() {
            ExtensionVerdict::pass()
        } else {
            ExtensionVerdict::fail(vec![0], "edge is not surjective")
        });
    }
    let mut verdict: Option<ExtensionVerdict> = None;
    for d in 0..n {
        for e in (d + 1)..n {
            let v = check_in_directions(cube, d, e)?;
            match &verdict {
                None => verdict = Some(v),
                Some(prev) => {
                    if prev.is_extension != v.is_extension {
                        return Err(Error::Property(format!(
                            "extension verdict depends on viewing directions: \
                             ({d},{e}) says {} but an earlier pair said {}",
                            v.is_extension, prev.is_extension
                        )));
                    }
                }
            }
        }
    }
    Ok(verdict.expect("n ≥ 2 has at least one direction pair"))
}

fn check_in_directions(cube: &CubeDiagram, d: usize, e: usize) -> Result<ExtensionVerdict> {
    for (dir, side) in [(d, false), (d, true), (e, false), (e, true)] {
        let face = cube.face(dir, side)?;
        let v = is_nfold_extension(&face)?;
        if !v.is_extension {
            return Ok(ExtensionVerdict::fail(
                vec![d, e],
                format!("face (direction {dir}, side {}) is not an extension", side as u8),
            ));
        }
    }
    let cmp = comparison_cube(cube, d, e)?;
    let v = is_nfold_extension(&cmp)?;
    Ok(if v.is_extension {
        ExtensionVerdict::pass()
    } else {
        ExtensionVerdict::fail(vec![d, e], "comparison cube is not an extension")
    })
}

/// Component-wise pullback of two m-cubes viewed as arrows with a common
/// codomain face: `f` in direction `df`, `g` in direction `dg`.
///
/// The result is an (m+1)-cube: base directions `0..m−1` follow `f`'s
/// domain face, direction `m−1` moves toward `f`'s side (projection
/// `P → dom f`, then `f`), direction `m` toward `g`'s side. When one of
/// the inputs is an extension the projection against it is asserted to be
/// one too.
pub fn cube_pullback(f: &CubeDiagram, df: usize, g: &CubeDiagram, dg: usize) -> Result<CubeDiagram> {
    if f.dim() != g.dim() || f.dim() == 0 {
        return input_err("cube_pullback needs two arrows of equal positive dimension");
    }
    let m = f.dim();
    let (fx, fz, fcomps) = f.as_arrow(df)?;
    let (gy, gz, gcomps) = g.as_arrow(dg)?;
    if fz != gz {
        return input_err("cube_pullback: codomain faces differ");
    }
    let base = m - 1;
    let base_count = 1usize << base;
    let mut apexes: Vec<Alg> = Vec::with_capacity(base_count);
    let mut pi_f: Vec<Hom> = Vec::with_capacity(base_count);
    let mut pi_g: Vec<Hom> = Vec::with_capacity(base_count);
    for t in 0..base_count {
        let (p, pf, pg) = pullback(&fcomps[t], &gcomps[t])?;
        apexes.push(p);
        pi_f.push(pf);
        pi_g.push(pg);
    }
    let mut p_edges: Vec<std::collections::BTreeMap<usize, Hom>> =
        vec![Default::default(); base_count];
    for t in 0..base_count {
        for b in 0..base {
            if t & (1 << b) != 0 {
                continue;
            }
            let t2 = t | (1 << b);
            let hx = fx.edge(t, b);
            let hy = gy.edge(t, b);
            let src_pairs = apexes[t].pair_decoding().unwrap();
            let dst_pairs = apexes[t2].pair_decoding().unwrap();
            let index: std::collections::HashMap<(usize, usize), usize> =
                dst_pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
            let values = src_pairs
                .iter()
                .map(|&(x, y)| index[&(hx.apply(x), hy.apply(y))])
                .collect();
            p_edges[t].insert(b, Hom::new(apexes[t].clone(), apexes[t2].clone(), values)?);
        }
    }
    let p_cube = CubeDiagram::build(base, apexes, p_edges)?;
    // P → X with new direction base (= m−1).
    let px = CubeDiagram::from_arrow(&p_cube, &fx, &pi_f)?;
    // Y → Z with the same direction layout.
    let yz = CubeDiagram::from_arrow(&gy, &fz, &gcomps)?;
    // Glue along the final direction m: components are π_g on the P layer
    // and f's components on the X layer.
    let mut comps = Vec::with_capacity(1 << m);
    for s in 0..1usize << m {
        let t = s & (base_count - 1);
        comps.push(if s & (1 << base) == 0 { pi_g[t].clone() } else { fcomps[t].clone() });
    }
    let result = CubeDiagram::from_arrow(&px, &yz, &comps)?;
    // Pullback-stability assertions.
    if is_nfold_extension(g)?.is_extension {
        let pulled = result.face(m, false)?; // P → X, the pullback of g
        if !is_nfold_extension(&pulled)?.is_extension {
            return Err(Error::Property(
                "pullback of an extension along a cube arrow failed to be an extension".into(),
            ));
        }
    }
    if is_nfold_extension(f)?.is_extension {
        let pulled = result.face(m - 1, false)?; // P → Y, the pullback of f
        if !is_nfold_extension(&pulled)?.is_extension {
            return Err(Error::Property(
                "pullback of an extension along a cube arrow failed to be an extension".into(),
            ));
        }
    }
    Ok(result)
}

/// Kernel pair of a cube viewed as an arrow in direction `d`: the
/// (m+1)-cube `cube_pullback(σ, σ)` together with the two projection
/// m-cubes (faces of the result).
pub fn kernel_pair_cube(sigma: &CubeDiagram, d: usize) -> Result<(CubeDiagram, CubeDiagram, CubeDiagram)> {
    let res = cube_pullback(sigma, d, sigma, d)?;
    let m = sigma.dim();
    let first = res.face(m, false)?; // Eq → dom via first projection
    let second = res.face(m - 1, false)?; // Eq → dom via second projection
    Ok((res, first, second))
}

/// Pushout of the span `C ← A → B` read off a square's initial corner,
/// with the comparison to the square's terminal vertex.
///
/// The pushout of a span of surjections is the quotient of `B` by the
/// congruence generated by identifying the images of each fibre of
/// `A → C`; the comparison map is induced by the square.
pub fn initial_pushout(square: &CubeDiagram) -> Result<(Alg, Hom)> {
    if square.dim() != 2 {
        return input_err("initial_pushout requires a 2-cube");
    }
    let top = square.edge(0, 0); // A → B
    let left = square.edge(0, 1); // A → C
    let right = square.edge(1, 1); // B → D
    if !top.is_surjection() || !left.is_surjection() {
        return input_err("initial_pushout needs a span of surjections");
    }
    let a = square.initial();
    let mut seed = Vec::new();
    for x in 0..a.size() {
        for y in (x + 1)..a.size() {
            if left.apply(x) == left.apply(y) {
                seed.push((top.apply(x), top.apply(y)));
            }
        }
    }
    let c = crate::algebra::congruence_closure(top.cod(), &seed);
    let (q, proj) = crate::algebra::quotient(&c);
    // Comparison Q → D: constant on classes because D coequalises the span.
    let mut values = vec![usize::MAX; q.size()];
    for b in 0..top.cod().size() {
        values[proj.apply(b)] = right.apply(b);
    }
    let cmp = Hom::new(q.clone(), square.terminal().clone(), values)?;
    Ok((q, cmp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_isomorphic, FiniteAlgebra, Hom};
    use std::collections::BTreeMap;

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

    fn reflection_square() -> CubeDiagram {
        let p = p_hom();
        let p_alg = p.dom().clone();
        let pairs = p_alg.pair_decoding().unwrap().to_vec();
        let q = Hom::new(p_alg.clone(), t2(), pairs.iter().map(|&(_, y)| y).collect()).unwrap();
        let bang_r3 = Hom::new(r3(), t1(), vec![0, 0, 0]).unwrap();
        let bang_t2 = Hom::new(t2(), t1(), vec![0, 0]).unwrap();
        CubeDiagram::build(
            2,
            vec![p_alg, r3(), t2(), t1()],
            vec![
                BTreeMap::from([(0, p), (1, q)]),
                BTreeMap::from([(1, bang_r3)]),
                BTreeMap::from([(0, bang_t2)]),
                BTreeMap::new(),
            ],
        )
        .unwrap()
    }

    /// The square with identity span (id_R3, id_R3) and cospan (!, !):
    /// its comparison is the diagonal R3 → R3×R3.
    fn diagonal_square() -> CubeDiagram {
        let bang = Hom::new(r3(), t1(), vec![0, 0, 0]).unwrap();
        CubeDiagram::build(
            2,
            vec![r3(), r3(), r3(), t1()],
            vec![
                BTreeMap::from([(0, Hom::identity(&r3())), (1, Hom::identity(&r3()))]),
                BTreeMap::from([(1, bang.clone())]),
                BTreeMap::from([(0, bang)]),
                BTreeMap::new(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn comparison_of_reflection_square_is_iso() {
        let (cmp, p, _, _) = comparison_hom(&reflection_square(), 0).unwrap();
        assert_eq!(p.size(), 6);
        assert!(cmp.is_bijective());
    }

    #[test]
    fn comparison_of_diagonal_square_is_not_surjective() {
        let (cmp, p, _, _) = comparison_hom(&diagonal_square(), 0).unwrap();
        assert_eq!(p.size(), 9);
        assert!(!cmp.is_surjection());
    }

    #[test]
    fn comparison_with_identity_verticals_is_identity() {
        let bang = Hom::new(r3(), t1(), vec![0, 0, 0]).unwrap();
        let sq = CubeDiagram::build(
            2,
            vec![r3(), t1(), r3(), t1()],
            vec![
                BTreeMap::from([(0, bang.clone()), (1, Hom::identity(&r3()))]),
                BTreeMap::from([(1, Hom::identity(&t1()))]),
                BTreeMap::from([(0, bang)]),
                BTreeMap::new(),
            ],
        )
        .unwrap();
        let (cmp, _, _, _) = comparison_hom(&sq, 0).unwrap();
        assert!(cmp.is_bijective());
    }

    #[test]
    fn reflection_square_is_a_double_extension() {
        assert!(is_double_extension(&reflection_square()).unwrap().is_extension);
    }

    #[test]
    fn diagonal_square_is_not() {
        let v = is_double_extension(&diagonal_square()).unwrap();
        assert!(!v.is_extension);
        assert!(v.witness.unwrap().detail.contains("comparison"));
    }

    #[test]
    fn identity_square_is_a_double_extension() {
        let sq = CubeDiagram::build(
            2,
            vec![r3(), r3(), r3(), r3()],
            vec![
                BTreeMap::from([(0, Hom::identity(&r3())), (1, Hom::identity(&r3()))]),
                BTreeMap::from([(1, Hom::identity(&r3()))]),
                BTreeMap::from([(0, Hom::identity(&r3()))]),
                BTreeMap::new(),
            ],
        )
        .unwrap();
        assert!(is_double_extension(&sq).unwrap().is_extension);
    }

    #[test]
    fn surjection_as_one_cube_is_an_extension() {
        let arrow = CubeDiagram::arrow(p_hom());
        assert!(is_nfold_extension(&arrow).unwrap().is_extension);
        let non = CubeDiagram::arrow(Hom::new(r3(), t2(), vec![0, 0, 0]).unwrap());
        assert!(!is_nfold_extension(&non).unwrap().is_extension);
    }

    #[test]
    fn pullback_of_p_along_itself_is_a_kernel_pair_square() {
        let arrow = CubeDiagram::arrow(p_hom());
        let res = cube_pullback(&arrow, 0, &arrow, 0).unwrap();
        assert_eq!(res.dim(), 2);
        assert_eq!(res.initial().size(), 12);
        assert!(is_double_extension(&res).unwrap().is_extension);
    }

    #[test]
    fn pullback_along_identity_recovers_the_arrow() {
        let arrow = CubeDiagram::arrow(p_hom());
        let id = CubeDiagram::arrow(Hom::identity(&r3()));
        let res = cube_pullback(&arrow, 0, &id, 0).unwrap();
        // The face P → Y is p again up to iso.
        let pulled = res.face(0, false).unwrap();
        assert!(is_isomorphic(pulled.initial(), p_hom().dom()));
    }

    #[test]
    fn pullback_of_reflection_square_along_itself_is_a_threefold_extension() {
        let sq = reflection_square();
        let res = cube_pullback(&sq, 1, &sq, 1).unwrap();
        assert_eq!(res.dim(), 3);
        assert!(is_nfold_extension(&res).unwrap().is_extension);
    }

    #[test]
    fn kernel_pair_cube_of_p() {
        let arrow = CubeDiagram::arrow(p_hom());
        let (eq, pr1, pr2) = kernel_pair_cube(&arrow, 0).unwrap();
        assert_eq!(eq.initial().size(), 12);
        assert!(is_nfold_extension(&pr1).unwrap().is_extension);
        assert!(is_nfold_extension(&pr2).unwrap().is_extension);
    }

    #[test]
    fn kernel_pair_of_iso_has_iso_projections() {
        let arrow = CubeDiagram::arrow(Hom::identity(&r3()));
        let (_, pr1, pr2) = kernel_pair_cube(&arrow, 0).unwrap();
        assert!(pr1.as_hom().unwrap().is_bijective());
        assert!(pr2.as_hom().unwrap().is_bijective());
    }

    #[test]
    fn initial_pushout_of_identity_square() {
        let sq = CubeDiagram::build(
            2,
            vec![r3(), r3(), r3(), r3()],
            vec![
                BTreeMap::from([(0, Hom::identity(&r3())), (1, Hom::identity(&r3()))]),
                BTreeMap::from([(1, Hom::identity(&r3()))]),
                BTreeMap::from([(0, Hom::identity(&r3()))]),
                BTreeMap::new(),
            ],
        )
        .unwrap();
        let (q, cmp) = initial_pushout(&sq).unwrap();
        assert_eq!(q.size(), 3);
        assert!(cmp.is_bijective());
    }

    #[test]
    fn initial_pushout_of_r3_span_collapses() {
        // Span R3 ← R3 → T1 pushed out along R3 → T1: corner T1.
        let bang = Hom::new(r3(), t1(), vec![0, 0, 0]).unwrap();
        let sq = CubeDiagram::build(
            2,
            vec![r3(), t1(), r3(), t1()],
            vec![
                BTreeMap::from([(0, bang.clone()), (1, Hom::identity(&r3()))]),
                BTreeMap::from([(1, Hom::identity(&t1()))]),
                BTreeMap::from([(0, bang)]),
                BTreeMap::new(),
            ],
        )
        .unwrap();
        let (q, cmp) = initial_pushout(&sq).unwrap();
        assert_eq!(q.size(), 1);
        assert!(cmp.is_bijective());
    }

    #[test]
    fn direction_choice_does_not_change_the_verdict() {
        for cube in [reflection_square(), diagonal_square()] {
            let v01 = super::check_in_directions(&cube, 0, 1).unwrap().is_extension;
            let v10 = super::check_in_directions(&cube, 1, 0).unwrap().is_extension;
            assert_eq!(v01, v10);
        }
    }
}
