//! Finite universal-algebra kernel: algebras, homomorphisms, congruences,
//! quotients, and the limits/colimits everything else is built from.
//!
//! Carriers are always `0..n`. A binary operation is an `n x n` row-major
//! table. For racks and quandles the table is `x ◁ y` and the inverse
//! operation `◁⁻¹` is derived by inverting each right translation; for
//! groups the table is multiplication and identity/inverses are derived.

mod canonical;
mod parse;

pub use canonical::{automorphisms, canonical_form, find_isomorphism, is_isomorphic, relabelled};
pub use parse::{parse_alg, render_alg};

use crate::{input_err, Result};
use std::fmt;
use std::sync::Arc;

/// Shared handle to an immutable validated algebra.
pub type Alg = Arc<FiniteAlgebra>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variety {
    Quandle,
    Rack,
    Group,
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::Quandle => write!(f, "quandle"),
            Variety::Rack => write!(f, "rack"),
            Variety::Group => write!(f, "group"),
        }
    }
}

/// A finite algebra of one of the three supported varieties.
///
/// Constructed through [`FiniteAlgebra::new`], which enforces the variety
/// axioms, so a value of this type is always a valid algebra.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    variety: Variety,
    size: usize,
    table: Vec<usize>,
    /// Rack/quandle only: table of `x ◁⁻¹ y`.
    inverse_table: Option<Vec<usize>>,
    /// Group only: identity element and per-element inverses.
    identity: Option<usize>,
    element_inverse: Option<Vec<usize>>,
    /// Pair-decoding metadata for algebras built as fibre products.
    pairs: Option<Vec<(usize, usize)>>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.variety == other.variety && self.size == other.size && self.table == other.table
    }
}
impl Eq for FiniteAlgebra {}

/// One failed axiom together with a witness triple.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AxiomViolation {
    pub axiom: String,
    pub witness: (usize, usize, usize),
}

/// Outcome of `validate_algebra`: either ok or the list of violated axioms.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<AxiomViolation>,
}

/// Checks the variety axioms of a raw operation table without building an
/// algebra. Size mismatches and out-of-range entries are input errors,
/// axiom failures are reported with witnesses.
pub fn validate_algebra(table: &[Vec<usize>], variety: Variety) -> Result<ValidationReport> {
    let n = table.len();
    if variety == Variety::Group && n == 0 {
        return input_err("a group must have at least one element");
    }
    let mut flat = Vec::with_capacity(n * n);
    for row in table {
        if row.len() != n {
            return input_err(format!("table row has length {}, expected {}", row.len(), n));
        }
        for &v in row {
            if v >= n {
                return input_err(format!("table entry {v} out of range for size {n}"));
            }
            flat.push(v);
        }
    }
    let violations = axiom_violations(&flat, n, variety);
    Ok(ValidationReport { ok: violations.is_empty(), violations })
}

fn axiom_violations(table: &[usize], n: usize, variety: Variety) -> Vec<AxiomViolation> {
    let op = |x: usize, y: usize| table[x * n + y];
    let mut out = Vec::new();
    match variety {
        Variety::Rack | Variety::Quandle => {
            // Each right translation x ↦ x ◁ y must be a bijection.
            for y in 0..n {
                let mut seen = vec![false; n];
                for x in 0..n {
                    seen[op(x, y)] = true;
                }
                if let Some(missing) = seen.iter().position(|&s| !s) {
                    out.push(AxiomViolation {
                        axiom: format!("right translation by {y} not bijective"),
                        witness: (missing, y, 0),
                    });
                }
            }
            'sd: for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if op(op(x, y), z) != op(op(x, z), op(y, z)) {
                            out.push(AxiomViolation {
                                axiom: "self-distributivity (x◁y)◁z = (x◁z)◁(y◁z)".into(),
                                witness: (x, y, z),
                            });
                            break 'sd;
                        }
                    }
                }
            }
            if variety == Variety::Quandle {
                for x in 0..n {
                    if op(x, x) != x {
                        out.push(AxiomViolation {
                            axiom: "idempotency x◁x = x".into(),
                            witness: (x, x, 0),
                        });
                        break;
                    }
                }
            }
        }
        Variety::Group => {
            'assoc: for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if op(op(x, y), z) != op(x, op(y, z)) {
                            out.push(AxiomViolation {
                                axiom: "associativity".into(),
                                witness: (x, y, z),
                            });
                            break 'assoc;
                        }
                    }
                }
            }
            match find_identity(table, n) {
                Some(e) => {
                    for x in 0..n {
                        if !(0..n).any(|y| op(x, y) == e && op(y, x) == e) {
                            out.push(AxiomViolation {
                                axiom: format!("element {x} has no inverse"),
                                witness: (x, 0, 0),
                            });
                        }
                    }
                }
                None => out.push(AxiomViolation {
                    axiom: "no two-sided identity".into(),
                    witness: (0, 0, 0),
                }),
            }
        }
    }
    out
}

fn find_identity(table: &[usize], n: usize) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
}

impl FiniteAlgebra {
    /// Builds a validated algebra from a flat row-major table.
    pub fn new(variety: Variety, size: usize, table: Vec<usize>) -> Result<Alg> {
        if table.len() != size * size {
            return input_err(format!(
                "table has {} entries, expected {}",
                table.len(),
                size * size
            ));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= size) {
            return input_err(format!("table entry {v} out of range for size {size}"));
        }
        if variety == Variety::Group && size == 0 {
            return input_err("a group must have at least one element");
        }
        let violations = axiom_violations(&table, size, variety);
        if let Some(v) = violations.first() {
            return input_err(format!("{} axiom violated: {} at {:?}", variety, v.axiom, v.witness));
        }
        Ok(Arc::new(Self::new_unchecked(variety, size, table)))
    }

    /// Builds from nested rows, as read from an `.alg` file.
    pub fn from_rows(variety: Variety, rows: &[Vec<usize>]) -> Result<Alg> {
        let n = rows.len();
        let report = validate_algebra(rows, variety)?;
        if let Some(v) = report.violations.first() {
            return input_err(format!("{} axiom violated: {} at {:?}", variety, v.axiom, v.witness));
        }
        let flat = rows.iter().flatten().copied().collect();
        Ok(Arc::new(Self::new_unchecked(variety, n, flat)))
    }

    /// Constructor for algebras arising from closed constructions
    /// (subalgebras of products, quotients by congruences): the axioms
    /// are inherited, so only the cheap range check is repeated. The
    /// public entry points stay fully validated.
    pub(crate) fn new_derived(variety: Variety, size: usize, table: Vec<usize>) -> Result<Alg> {
        if table.len() != size * size || table.iter().any(|&v| v >= size) {
            return input_err("derived table is malformed");
        }
        if variety == Variety::Group && size == 0 {
            return input_err("a group must have at least one element");
        }
        if variety != Variety::Group && size > 0 {
            // Racks and quandles need bijective right translations for
            // the derived inverse table; closed constructions preserve
            // this, so this is a debug-only safety net.
            debug_assert!((0..size).all(|y| {
                let mut seen = vec![false; size];
                (0..size).all(|x| !std::mem::replace(&mut seen[table[x * size + y]], true))
            }));
        }
        Ok(Arc::new(Self::new_unchecked(variety, size, table)))
    }

    fn new_unchecked(variety: Variety, size: usize, table: Vec<usize>) -> Self {
        let n = size;
        let inverse_table = match variety {
            Variety::Rack | Variety::Quandle => {
                // Invert each right translation: x ◁⁻¹ y is the unique z
                // with z ◁ y = x.
                let mut inv = vec![0; n * n];
                for y in 0..n {
                    for z in 0..n {
                        inv[table[z * n + y] * n + y] = z;
                    }
                }
                Some(inv)
            }
            Variety::Group => None,
        };
        let (identity, element_inverse) = match variety {
            Variety::Group => {
                let e = find_identity(&table, n).expect("validated group has an identity");
                let inv = (0..n)
                    .map(|x| (0..n).find(|&y| table[x * n + y] == e).expect("inverse"))
                    .collect();
                (Some(e), Some(inv))
            }
            _ => (None, None),
        };
        Self { variety, size, table, inverse_table, identity, element_inverse, pairs: None }
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The primary binary operation: `x ◁ y` or `x · y`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// Rack/quandle inverse operation `x ◁⁻¹ y`; panics for groups.
    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inverse_table.as_ref().expect("inv_op on a group")[x * self.size + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| self.table[x * self.size..(x + 1) * self.size].to_vec())
            .collect()
    }

    /// Group identity; panics for racks/quandles.
    pub fn identity(&self) -> usize {
        self.identity.expect("identity on a non-group")
    }

    /// Group inverse of an element; panics for racks/quandles.
    pub fn element_inverse(&self, x: usize) -> usize {
        self.element_inverse.as_ref().expect("inverse on a non-group")[x]
    }

    /// All binary operation tables a congruence must respect.
    pub(crate) fn op_tables(&self) -> Vec<&[usize]> {
        let mut ops = vec![self.table.as_slice()];
        if let Some(inv) = &self.inverse_table {
            ops.push(inv.as_slice());
        }
        ops
    }

    /// For fibre products: the (left, right) pair each element decodes to.
    pub fn pair_decoding(&self) -> Option<&[(usize, usize)]> {
        self.pairs.as_deref()
    }

    /// Trivial quandle of the given order (`x ◁ y = x`).
    pub fn trivial_quandle(n: usize) -> Alg {
        let table = (0..n).flat_map(|x| std::iter::repeat(x).take(n)).collect();
        Arc::new(Self::new_unchecked(Variety::Quandle, n, table))
    }

    /// Dihedral quandle on `Z/n`: `x ◁ y = 2y − x (mod n)`.
    pub fn dihedral_quandle(n: usize) -> Alg {
        let table = (0..n)
            .flat_map(|x| (0..n).map(move |y| (2 * y + n - x % n) % n))
            .collect();
        Arc::new(Self::new_unchecked(Variety::Quandle, n, table))
    }

    /// Cyclic group `Z/n`.
    pub fn cyclic_group(n: usize) -> Alg {
        assert!(n >= 1);
        let table = (0..n).flat_map(|x| (0..n).map(move |y| (x + y) % n)).collect();
        Arc::new(Self::new_unchecked(Variety::Group, n, table))
    }

    /// Direct product, with pair-decoding metadata attached.
    pub fn product(a: &Alg, b: &Alg) -> Result<Alg> {
        if a.variety != b.variety {
            return input_err("product of algebras from different varieties");
        }
        let pairs: Vec<(usize, usize)> =
            (0..a.size).flat_map(|x| (0..b.size).map(move |y| (x, y))).collect();
        let n = pairs.len();
        let code = |x: usize, y: usize| x * b.size + y;
        let table = pairs
            .iter()
            .flat_map(|&(x1, y1)| {
                pairs.iter().map(move |&(x2, y2)| code(a.op(x1, x2), b.op(y1, y2)))
            })
            .collect();
        let mut alg = Self::new_unchecked(a.variety, n, table);
        alg.pairs = Some(pairs);
        Ok(Arc::new(alg))
    }
}

/// A homomorphism between two finite algebras of the same variety.
///
/// Validated on construction: the value array must commute with every
/// operation of the variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    dom: Alg,
    cod: Alg,
    values: Vec<usize>,
}

/// Checks the homomorphism law for a candidate value array.
pub fn is_homomorphism(dom: &Alg, cod: &Alg, values: &[usize]) -> Result<bool> {
    if dom.variety() != cod.variety() {
        return input_err("homomorphism between different varieties");
    }
    if values.len() != dom.size() {
        return input_err(format!(
            "value array has length {}, expected {}",
            values.len(),
            dom.size()
        ));
    }
    if let Some(&v) = values.iter().find(|&&v| v >= cod.size()) {
        return input_err(format!("value {v} out of range for codomain size {}", cod.size()));
    }
    // The primary operation determines the derived ones, so checking it
    // suffices; ◁⁻¹ and group inverses commute automatically.
    for x in 0..dom.size() {
        for y in 0..dom.size() {
            if values[dom.op(x, y)] != cod.op(values[x], values[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl Hom {
    pub fn new(dom: Alg, cod: Alg, values: Vec<usize>) -> Result<Self> {
        if !is_homomorphism(&dom, &cod, &values)? {
            return input_err("value array is not a homomorphism");
        }
        Ok(Self { dom, cod, values })
    }

    pub fn identity(a: &Alg) -> Self {
        Self { dom: a.clone(), cod: a.clone(), values: (0..a.size()).collect() }
    }

    pub fn dom(&self) -> &Alg {
        &self.dom
    }

    pub fn cod(&self) -> &Alg {
        &self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_surjection(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &v in &self.values {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    /// `other ∘ self`; an input error if the middle objects differ.
    pub fn then(&self, other: &Hom) -> Result<Hom> {
        if self.cod != other.dom {
            return input_err("composition mismatch: codomain differs from domain");
        }
        Ok(Hom {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            values: self.values.iter().map(|&v| other.values[v]).collect(),
        })
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<Hom> {
        if !self.is_bijective() {
            return input_err("inverse of a non-bijective homomorphism");
        }
        let mut values = vec![0; self.cod.size()];
        for (x, &v) in self.values.iter().enumerate() {
            values[v] = x;
        }
        Ok(Hom { dom: self.cod.clone(), cod: self.dom.clone(), values })
    }
}

/// A congruence on a finite algebra, stored as a class index per element,
/// normalised so class ids appear in first-occurrence order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    algebra: Alg,
    class_of: Vec<usize>,
    num_classes: usize,
}

impl Congruence {
    /// Validates that the partition is compatible with every operation.
    pub fn new(algebra: Alg, class_of: Vec<usize>) -> Result<Self> {
        if class_of.len() != algebra.size() {
            return input_err("partition length differs from carrier size");
        }
        let c = Self::normalise(algebra, class_of);
        let n = c.algebra.size();
        for op in c.algebra.op_tables() {
            for a in 0..n {
                for b in 0..n {
                    if c.class_of[a] != c.class_of[b] {
                        continue;
                    }
                    for x in 0..n {
                        if c.class_of[op[a * n + x]] != c.class_of[op[b * n + x]]
                            || c.class_of[op[x * n + a]] != c.class_of[op[x * n + b]]
                        {
                            return input_err(format!(
                                "partition is not a congruence: fails at ({a},{b}) with {x}"
                            ));
                        }
                    }
                }
            }
        }
        Ok(c)
    }

    fn normalise(algebra: Alg, class_of: Vec<usize>) -> Self {
        let mut rename = std::collections::HashMap::new();
        let mut normal = Vec::with_capacity(class_of.len());
        for c in class_of {
            let next = rename.len();
            normal.push(*rename.entry(c).or_insert(next));
        }
        let num_classes = rename.len();
        Self { algebra, class_of: normal, num_classes }
    }

    pub fn algebra(&self) -> &Alg {
        &self.algebra
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.num_classes == self.algebra.size()
    }

    pub fn is_full(&self) -> bool {
        self.num_classes <= 1
    }

    /// Containment as relations: every pair related here is related in `other`.
    pub fn is_contained_in(&self, other: &Congruence) -> bool {
        let n = self.algebra.size();
        (0..n).all(|a| (0..n).all(|b| !self.related(a, b) || other.related(a, b)))
    }

    /// Join in the congruence lattice.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut seed = Vec::new();
        let n = self.algebra.size();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.related(a, b) || other.related(a, b) {
                    seed.push((a, b));
                }
            }
        }
        congruence_closure(&self.algebra, &seed)
    }

    /// Whether the relational composite `self ∘ other` already contains the
    /// join (i.e. the two congruences permute up to the join). This is the
    /// comparison-surjectivity condition for the induced quotient square.
    pub fn composite_covers_join(&self, other: &Congruence) -> bool {
        let join = self.join(other);
        let n = self.algebra.size();
        for a in 0..n {
            for b in 0..n {
                if join.related(a, b)
                    && !(0..n).any(|m| self.related(a, m) && other.related(m, b))
                {
                    return false;
                }
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            self.parent[i] = self.find(self.parent[i]);
        }
        self.parent[i]
    }

    /// Returns true if the two elements were in different sets.
    fn union(&mut self, i: usize, j: usize) -> bool {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri == rj {
            return false;
        }
        self.parent[ri] = rj;
        true
    }
}

/// Smallest congruence containing the seed pairs: union-find plus a
/// worklist closing under every operation in both arguments.
pub fn congruence_closure(a: &Alg, seed: &[(usize, usize)]) -> Congruence {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    let ops = a.op_tables();
    let mut work: Vec<(usize, usize)> = seed.to_vec();
    while let Some((x, y)) = work.pop() {
        if !uf.union(x, y) {
            continue;
        }
        for op in &ops {
            for c in 0..n {
                work.push((op[x * n + c], op[y * n + c]));
                work.push((op[c * n + x], op[c * n + y]));
            }
        }
    }
    let class_of = (0..n).map(|i| uf.find(i)).collect();
    Congruence::normalise(a.clone(), class_of)
}

/// Quotient algebra together with the projection homomorphism.
pub fn quotient(c: &Congruence) -> (Alg, Hom) {
    let a = c.algebra();
    let k = c.num_classes();
    // Representative per class, first occurrence.
    let mut rep = vec![usize::MAX; k];
    for (x, &cls) in c.class_of().iter().enumerate() {
        if rep[cls] == usize::MAX {
            rep[cls] = x;
        }
    }
    let table = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| c.class_of()[a.op(rep[i], rep[j])])
        .collect();
    let q = Arc::new(FiniteAlgebra::new_unchecked(a.variety(), k, table));
    let proj = Hom { dom: a.clone(), cod: q.clone(), values: c.class_of().to_vec() };
    (q, proj)
}

/// Kernel congruence of a homomorphism: the partition by fibres.
pub fn kernel_congruence(f: &Hom) -> Congruence {
    Congruence::normalise(f.dom().clone(), f.values().to_vec())
}

/// Pullback `P = {(a,b) : f(a) = g(b)}` as a subalgebra of the product,
/// with projections `π_f : P → dom f` and `π_g : P → dom g`.
pub fn pullback(f: &Hom, g: &Hom) -> Result<(Alg, Hom, Hom)> {
    if f.cod() != g.cod() {
        return input_err("pullback of homomorphisms with different codomains");
    }
    let (a, b) = (f.dom(), g.dom());
    let pairs: Vec<(usize, usize)> = (0..a.size())
        .flat_map(|x| (0..b.size()).map(move |y| (x, y)))
        .filter(|&(x, y)| f.apply(x) == g.apply(y))
        .collect();
    let index: std::collections::HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = pairs.len();
    let table = pairs
        .iter()
        .flat_map(|&(x1, y1)| {
            pairs.iter().map(move |&(x2, y2)| (a.op(x1, x2), b.op(y1, y2)))
        })
        .map(|p| index[&p])
        .collect();
    if a.variety() == Variety::Group && n == 0 {
        return input_err("empty pullback of groups");
    }
    let mut alg = FiniteAlgebra::new_unchecked(a.variety(), n, table);
    alg.pairs = Some(pairs.clone());
    let p = Arc::new(alg);
    let proj_f = Hom { dom: p.clone(), cod: a.clone(), values: pairs.iter().map(|&(x, _)| x).collect() };
    let proj_g = Hom { dom: p.clone(), cod: b.clone(), values: pairs.iter().map(|&(_, y)| y).collect() };
    Ok((p, proj_f, proj_g))
}

/// Kernel pair `Eq(f)` with its two projections.
pub fn kernel_pair(f: &Hom) -> Result<(Alg, Hom, Hom)> {
    pullback(f, f)
}

/// Coequaliser of a parallel pair: the quotient of the codomain by the
/// congruence generated by `(f(x), g(x))`.
pub fn coequalizer(f: &Hom, g: &Hom) -> Result<(Alg, Hom)> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return input_err("coequaliser of a non-parallel pair");
    }
    let seed: Vec<(usize, usize)> =
        (0..f.dom().size()).map(|x| (f.apply(x), g.apply(x))).collect();
    let c = congruence_closure(f.cod(), &seed);
    Ok(quotient(&c))
}

/// All congruences on an algebra, by refinement search over partitions.
/// Intended for carriers of size ≤ 6 or so.
pub fn enumerate_congruences(a: &Alg) -> Vec<Congruence> {
    let n = a.size();
    let mut out = Vec::new();
    // Enumerate set partitions in restricted-growth form, filter.
    let mut rg = vec![0usize; n];
    fn rec(a: &Alg, rg: &mut Vec<usize>, pos: usize, max: usize, out: &mut Vec<Congruence>) {
        if pos == rg.len() {
            if let Ok(c) = Congruence::new(a.clone(), rg.clone()) {
                out.push(c);
            }
            return;
        }
        for c in 0..=max.min(pos) {
            rg[pos] = c;
            let new_max = max.max(c + 1);
            rec(a, rg, pos + 1, new_max, out);
        }
    }
    if n == 0 {
        out.push(Congruence { algebra: a.clone(), class_of: vec![], num_classes: 0 });
        return out;
    }
    rec(a, &mut rg, 1, 1, &mut out);
    out
}
