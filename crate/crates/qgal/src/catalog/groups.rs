//! Finite groups of order ≤ 16 up to isomorphism, built from
//! classification-backed combinators: cyclic groups, direct products,
//! dicyclic groups, semidirect products H ⋊ C_k over enumerated
//! automorphisms, and central products. The per-order counts are
//! asserted against the classical classification, so a missing
//! construction fails loudly.

use crate::algebra::{
    automorphisms, congruence_closure, find_isomorphism, quotient, Alg, FiniteAlgebra, Hom,
    Variety,
};

/// Number of groups of each order 1..16 up to isomorphism.
pub const GROUP_COUNTS: [usize; 16] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];

pub fn cyclic(n: usize) -> Alg {
    FiniteAlgebra::cyclic_group(n)
}

/// Dihedral group of order 2n.
pub fn dihedral(n: usize) -> Alg {
    if n <= 1 {
        return cyclic(2);
    }
    let c = cyclic(n);
    let inv = Hom::new(c.clone(), c.clone(), (0..n).map(|x| (n - x) % n).collect()).unwrap();
    semidirect(&c, &inv, 2)
}

/// H ⋊ C_k along an automorphism φ of H with φᵏ = id. Elements are
/// pairs (h, j) encoded as h·k + j, multiplied by
/// (h₁, j₁)(h₂, j₂) = (h₁ · φʲ¹(h₂), j₁ + j₂).
pub fn semidirect(h: &Alg, phi: &Hom, k: usize) -> Alg {
    let m = h.size();
    let n = m * k;
    // φ^j precomputed as value tables.
    let mut powers: Vec<Vec<usize>> = vec![(0..m).collect()];
    for j in 1..k {
        let prev = &powers[j - 1];
        powers.push((0..m).map(|x| phi.apply(prev[x])).collect());
    }
    let code = |x: usize, j: usize| x * k + j;
    let mut table = vec![0; n * n];
    for x1 in 0..m {
        for j1 in 0..k {
            for x2 in 0..m {
                for j2 in 0..k {
                    let x = h.op(x1, powers[j1][x2]);
                    let j = (j1 + j2) % k;
                    table[code(x1, j1) * n + code(x2, j2)] = code(x, j);
                }
            }
        }
    }
    FiniteAlgebra::new(Variety::Group, n, table).expect("semidirect product is a group")
}

/// Dicyclic group Dic_n of order 4n: ⟨a, b | a²ⁿ = 1, b² = aⁿ,
/// b⁻¹ab = a⁻¹⟩. Dic_2 = Q8.
pub fn dicyclic(n: usize) -> Alg {
    let m = 2 * n;
    let size = 4 * n;
    let code = |x: usize, j: usize| x * 2 + j;
    let mut table = vec![0; size * size];
    for x1 in 0..m {
        for j1 in 0..2 {
            for x2 in 0..m {
                for j2 in 0..2 {
                    let (x, j) = if j1 == 0 {
                        ((x1 + x2) % m, j2)
                    } else if j2 == 0 {
                        ((x1 + m - x2 % m) % m, 1)
                    } else {
                        ((x1 + m - x2 % m + n) % m, 0)
                    };
                    table[code(x1, j1) * size + code(x2, j2)] = code(x, j);
                }
            }
        }
    }
    FiniteAlgebra::new(Variety::Group, size, table).expect("dicyclic group")
}

/// The quaternion group Q8 = Dic_2.
pub fn q8() -> Alg {
    dicyclic(2)
}

pub fn v4() -> Alg {
    FiniteAlgebra::product(&cyclic(2), &cyclic(2)).unwrap()
}

pub fn s3() -> Alg {
    dihedral(3)
}

/// Central product G ∘ H identifying the given central involutions: the
/// quotient of G × H by the diagonal central subgroup {(1,1), (z_g, z_h)}.
pub fn central_product(g: &Alg, h: &Alg, z_g: usize, z_h: usize) -> Alg {
    let prod = FiniteAlgebra::product(g, h).unwrap();
    let pairs = prod.pair_decoding().unwrap();
    let find = |x: usize, y: usize| pairs.iter().position(|&p| p == (x, y)).unwrap();
    let c = congruence_closure(&prod, &[(find(z_g, h.identity()), find(g.identity(), z_h))]);
    quotient(&c).0
}

/// Central elements of order exactly 2.
pub fn central_involutions(g: &Alg) -> Vec<usize> {
    let e = g.identity();
    (0..g.size())
        .filter(|&z| z != e && g.op(z, z) == e && (0..g.size()).all(|x| g.op(z, x) == g.op(x, z)))
        .collect()
}

/// Catalogs for all orders 1..=max, built bottom-up so each order can
/// reuse the smaller ones. `result[n-1]` holds the groups of order n.
fn catalogs_up_to(max: usize) -> Vec<Vec<Alg>> {
    let mut cats: Vec<Vec<Alg>> = Vec::with_capacity(max);
    for n in 1..=max {
        let mut out: Vec<Alg> = Vec::new();
        let add = |candidate: Alg, out: &mut Vec<Alg>| {
            debug_assert_eq!(candidate.size(), n);
            if !out.iter().any(|g| find_isomorphism(g, &candidate).is_some()) {
                out.push(candidate);
            }
        };
        add(cyclic(n), &mut out);
        // Direct products of smaller groups.
        for d in 2..n {
            if n % d != 0 || d > n / d {
                continue;
            }
            for g in cats[d - 1].clone() {
                for h in cats[n / d - 1].clone() {
                    add(FiniteAlgebra::product(&g, &h).unwrap(), &mut out);
                }
            }
        }
        // Semidirect products H ⋊ C_k over involutive-enough automorphisms.
        for k in 2..n {
            if n % k != 0 {
                continue;
            }
            let m = n / k;
            if m < 2 {
                continue;
            }
            for h in cats[m - 1].clone() {
                for phi in automorphisms(&h) {
                    // Require φ^k = id.
                    let mut cur: Vec<usize> = (0..m).collect();
                    for _ in 0..k {
                        cur = cur.iter().map(|&x| phi.apply(x)).collect();
                    }
                    if cur.iter().enumerate().all(|(i, &v)| i == v) {
                        add(semidirect(&h, &phi, k), &mut out);
                    }
                }
            }
        }
        // Dicyclic groups.
        if n % 4 == 0 {
            add(dicyclic(n / 4), &mut out);
        }
        // Central products of smaller groups along central involutions.
        let double = 2 * n;
        for a in 4..=n.min(16) {
            if double % a != 0 {
                continue;
            }
            let b = double / a;
            if b < a || b >= n {
                continue;
            }
            for g in cats[a - 1].clone() {
                let zg = central_involutions(&g);
                for h in cats[b - 1].clone() {
                    let zh = central_involutions(&h);
                    for &z1 in &zg {
                        for &z2 in &zh {
                            add(central_product(&g, &h, z1, z2), &mut out);
                        }
                    }
                }
            }
        }
        if n <= 16 {
            assert_eq!(
                out.len(),
                GROUP_COUNTS[n - 1],
                "group catalog for order {n} does not match the classification"
            );
        }
        cats.push(out);
    }
    cats
}

/// All groups of one order up to isomorphism, in deterministic
/// construction order. The count is asserted against the classification.
pub fn groups_of_order(n: usize) -> Vec<Alg> {
    assert!((1..=16).contains(&n));
    catalogs_up_to(n).pop().unwrap()
}

/// All groups of every order up to `max` (≤ 16).
pub fn groups_up_to(max: usize) -> Vec<Alg> {
    assert!((1..=16).contains(&max));
    catalogs_up_to(max).into_iter().flatten().collect()
}
