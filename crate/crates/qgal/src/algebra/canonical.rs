//! Canonical forms and isomorphism search.
//!
//! The canonical form of an algebra is the lexicographically smallest
//! operation table obtainable by relabelling the carrier. For small
//! carriers (≤ 7) we simply minimise over all permutations; above that a
//! branch-and-bound search prunes prefixes that already exceed the best
//! table found so far.

use super::{Alg, FiniteAlgebra, Hom};

/// Lexicographically minimal operation table over all relabellings.
/// Two algebras of the same variety are isomorphic iff their canonical
/// tables are equal.
pub fn canonical_form(a: &Alg) -> Vec<usize> {
    let n = a.size();
    if n <= 1 {
        return a.table().to_vec();
    }
    if n <= 7 {
        let mut best: Option<Vec<usize>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, 0, &mut |p| {
            let t = relabel(a, p);
            if best.as_ref().map_or(true, |b| t < *b) {
                best = Some(t);
            }
        });
        best.unwrap()
    } else {
        canonical_form_pruned(a)
    }
}

fn relabel(a: &Alg, perm: &[usize]) -> Vec<usize> {
    // perm maps old labels to new labels; build the table in new labels.
    let n = a.size();
    let mut inv = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut t = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            t[x * n + y] = perm[a.op(inv[x], inv[y])];
        }
    }
    t
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Branch-and-bound minimisation: assign new labels to old elements one at
/// a time, comparing the completed prefix of the relabelled table against
/// the incumbent and cutting off as soon as the prefix is larger.
fn canonical_form_pruned(a: &Alg) -> Vec<usize> {
    let n = a.size();
    let mut best: Option<Vec<usize>> = None;
    // inv[new] = old element assigned the new label, filled left to right.
    let mut inv = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(a, n, &mut inv, &mut used, &mut best);
    best.unwrap()
}

fn search(
    a: &Alg,
    n: usize,
    inv: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut Option<Vec<usize>>,
) {
    let k = inv.len();
    if k == n {
        let t = prefix_table(a, inv, n);
        if best.as_ref().map_or(true, |b| t < *b) {
            *best = Some(t);
        }
        return;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        inv.push(cand);
        used[cand] = true;
        // Compare the fully-determined top-left (k+1)×(k+1) block.
        if beats_incumbent(a, inv, n, best) {
            search(a, n, inv, used, best);
        }
        used[cand] = false;
        inv.pop();
    }
}

/// Relabelled table with unknown entries marked as `n` (sorts after all
/// real entries, so prefix comparison is sound).
fn prefix_table(a: &Alg, inv: &[usize], n: usize) -> Vec<usize> {
    let k = inv.len();
    let mut perm = vec![usize::MAX; n];
    for (new, &old) in inv.iter().enumerate() {
        perm[old] = new;
    }
    let mut t = vec![n; n * n];
    for x in 0..k {
        for y in 0..k {
            let v = a.op(inv[x], inv[y]);
            if perm[v] != usize::MAX {
                t[x * n + y] = perm[v];
            }
        }
    }
    t
}

fn beats_incumbent(a: &Alg, inv: &[usize], n: usize, best: &Option<Vec<usize>>) -> bool {
    let Some(b) = best else { return true };
    let t = prefix_table(a, inv, n);
    // Compare only positions where t is determined; an undetermined slot
    // could still become anything, so stop comparing at the first one.
    for (i, (&tv, &bv)) in t.iter().zip(b.iter()).enumerate() {
        let _ = i;
        if tv == n {
            return true;
        }
        if tv < bv {
            return true;
        }
        if tv > bv {
            return false;
        }
    }
    true
}

/// Finds an isomorphism (as a `Hom`) by backtracking with closure
/// propagation, or `None` if the algebras are not isomorphic.
pub fn find_isomorphism(a: &Alg, b: &Alg) -> Option<Hom> {
    if a.variety() != b.variety() || a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if iso_search(a, b, &mut map, &mut used, n) {
        let values = map;
        Some(Hom::new(a.clone(), b.clone(), values).expect("verified isomorphism"))
    } else {
        None
    }
}

fn iso_search(a: &Alg, b: &Alg, map: &mut Vec<usize>, used: &mut Vec<bool>, n: usize) -> bool {
    let Some(x) = map.iter().position(|&v| v == usize::MAX) else {
        return true;
    };
    for y in 0..n {
        if used[y] {
            continue;
        }
        let saved_map = map.clone();
        let saved_used = used.clone();
        map[x] = y;
        used[y] = true;
        if propagate(a, b, map, used, n) && iso_search(a, b, map, used, n) {
            return true;
        }
        *map = saved_map;
        *used = saved_used;
    }
    false
}

/// Closes a partial map under the operation: if both arguments of an op
/// are mapped, the result's image is forced. Returns false on conflict.
fn propagate(a: &Alg, b: &Alg, map: &mut Vec<usize>, used: &mut Vec<bool>, n: usize) -> bool {
    loop {
        let mut changed = false;
        for x in 0..n {
            if map[x] == usize::MAX {
                continue;
            }
            for y in 0..n {
                if map[y] == usize::MAX {
                    continue;
                }
                let src = a.op(x, y);
                let dst = b.op(map[x], map[y]);
                if map[src] == usize::MAX {
                    if used[dst] {
                        return false;
                    }
                    map[src] = dst;
                    used[dst] = true;
                    changed = true;
                } else if map[src] != dst {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

pub fn is_isomorphic(a: &Alg, b: &Alg) -> bool {
    find_isomorphism(a, b).is_some()
}

/// All automorphisms of an algebra, in lexicographic order of value array.
pub fn automorphisms(a: &Alg) -> Vec<Hom> {
    let n = a.size();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    aut_search(a, &mut map, &mut used, n, &mut out);
    out
}

fn aut_search(a: &Alg, map: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Hom>) {
    let Some(x) = map.iter().position(|&v| v == usize::MAX) else {
        out.push(Hom::new(a.clone(), a.clone(), map.clone()).expect("verified automorphism"));
        return;
    };
    for y in 0..n {
        if used[y] {
            continue;
        }
        let saved_map = map.clone();
        let saved_used = used.clone();
        map[x] = y;
        used[y] = true;
        if propagate(a, a, map, used, n) {
            aut_search(a, map, used, n, out);
        }
        *map = saved_map;
        *used = saved_used;
    }
}

/// A [`FiniteAlgebra`] relabelled along a permutation (old → new labels).
pub fn relabelled(a: &Alg, perm: &[usize]) -> Alg {
    let t = relabel(a, perm);
    FiniteAlgebra::new(a.variety(), a.size(), t).expect("relabelling preserves axioms")
}
