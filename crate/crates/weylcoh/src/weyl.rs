//! Marked lattices, root systems and finite reflection groups.
//!
//! The geometric side of the crate lives in the Picard lattice of a blown-up
//! plane: `Z l + Z e_1 + ... + Z e_r` with intersection form
//! `diag(1, -1, ..., -1)` and canonical class `k = -3l + e_1 + ... + e_r`.
//! Roots are norm `-2` vectors orthogonal to `k`; reflection groups are
//! represented as permutation groups on the full (sorted) root list, with
//! ambient integer matrices reconstructed on demand.

use crate::intlin::{self, IMat};
use std::collections::HashMap;

/// An integral lattice `Z^rank` with a fixed symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub rank: usize,
    pub gram: IMat,
}

impl Lattice {
    pub fn new(gram: IMat) -> Lattice {
        assert_eq!(gram.rows, gram.cols);
        assert_eq!(gram, gram.transpose(), "gram matrix must be symmetric");
        Lattice { rank: gram.rows, gram }
    }

    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s: i128 = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] as i128 * self.gram[(i, j)] as i128 * b[j] as i128;
            }
        }
        i64::try_from(s).expect("overflow")
    }

    pub fn norm(&self, a: &[i64]) -> i64 {
        self.dot(a, a)
    }
}

/// Picard lattice of the plane blown up in `r` points: basis `l, e_1..e_r`.
pub fn picard_lattice(r: usize) -> Lattice {
    let mut gram = IMat::zero(r + 1, r + 1);
    gram[(0, 0)] = 1;
    for i in 1..=r {
        gram[(i, i)] = -1;
    }
    Lattice::new(gram)
}

/// Canonical class of [`picard_lattice`]: `-3l + e_1 + ... + e_r`.
pub fn canonical_class(r: usize) -> Vec<i64> {
    let mut k = vec![1i64; r + 1];
    k[0] = -3;
    k
}

/// `Z^n` with form `-I`, hosting the `A_{n-1}` system `e_i - e_j`
/// (so that "reflection groups" of symmetric type fit the same sign
/// conventions as the Picard-lattice systems).
pub fn a_type_lattice(n: usize) -> Lattice {
    let mut gram = IMat::zero(n, n);
    for i in 0..n {
        gram[(i, i)] = -1;
    }
    Lattice::new(gram)
}

/// A finite root system inside an ambient lattice.
///
/// `torus_basis` rows span the saturated sublattice supporting the system:
/// the orthogonal complement of the defining classes (for the Picard
/// systems, of the canonical class). Toric and linear arrangements, as well
/// as reflection representations, live in these local coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: String,
    pub lattice: Lattice,
    pub torus_basis: IMat,
    pub local_gram: IMat,
    /// All roots in ambient coordinates, sorted lexicographically.
    pub roots_amb: Vec<Vec<i64>>,
    /// The same roots in `torus_basis` coordinates.
    pub roots_loc: Vec<Vec<i64>>,
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
}

impl RootSystem {
    pub fn num_roots(&self) -> usize {
        self.roots_amb.len()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn root_index(&self, amb: &[i64]) -> Option<usize> {
        self.roots_amb.binary_search_by(|r| r.as_slice().cmp(amb)).ok()
    }

    /// Reflection in root `alpha` (ambient coordinates) as an ambient matrix:
    /// `v -> v - 2 (v.alpha)/(alpha.alpha) alpha`. Integral for norm -2 roots
    /// always, and for norm -4 roots exactly on sublattices with even pairing
    /// (asserted).
    pub fn reflection_amb(&self, alpha: &[i64]) -> IMat {
        let n = self.lattice.rank;
        let aa = self.lattice.norm(alpha);
        let mut m = IMat::identity(n);
        for j in 0..n {
            let mut basis = vec![0i64; n];
            basis[j] = 1;
            let va = self.lattice.dot(&basis, alpha);
            let num = -2 * va;
            assert_eq!(num % aa, 0, "non-integral reflection");
            let c = num / aa;
            for i in 0..n {
                m[(i, j)] += c * alpha[i];
            }
        }
        m
    }

    pub(crate) fn finish(
        label: &str,
        lattice: Lattice,
        torus_basis: IMat,
        mut roots_amb: Vec<Vec<i64>>,
    ) -> RootSystem {
        roots_amb.sort();
        roots_amb.dedup();
        let roots_loc: Vec<Vec<i64>> = roots_amb
            .iter()
            .map(|r| {
                intlin::solve_in_hnf(&torus_basis, r)
                    .expect("root outside its supporting sublattice")
            })
            .collect();
        // Local gram.
        let r = torus_basis.rows;
        let mut local_gram = IMat::zero(r, r);
        for i in 0..r {
            for j in 0..r {
                local_gram[(i, j)] = lattice.dot(torus_basis.row(i), torus_basis.row(j));
            }
        }
        // Positivity via a generic functional in local coordinates.
        let phi = |loc: &[i64]| -> i64 {
            let mut s = 0i64;
            let mut w = 1i64;
            for &c in loc {
                s += c * w;
                w *= 331; // larger than any coordinate spread in these systems
            }
            s
        };
        for loc in &roots_loc {
            assert!(phi(loc) != 0, "positivity functional degenerate");
        }
        let positive: Vec<usize> =
            (0..roots_amb.len()).filter(|&i| phi(&roots_loc[i]) > 0).collect();
        assert_eq!(positive.len() * 2, roots_amb.len());
        // Simple roots: positive roots that are not sums of two positive roots.
        let pos_set: std::collections::HashSet<&[i64]> =
            positive.iter().map(|&i| roots_amb[i].as_slice()).collect();
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&i| {
                !positive.iter().any(|&j| {
                    let diff: Vec<i64> = roots_amb[i]
                        .iter()
                        .zip(&roots_amb[j])
                        .map(|(a, b)| a - b)
                        .collect();
                    j != i && pos_set.contains(diff.as_slice())
                })
            })
            .collect();
        RootSystem {
            label: label.to_string(),
            lattice,
            torus_basis,
            local_gram,
            roots_amb,
            roots_loc,
            positive,
            simple,
        }
    }
}

impl RootSystem {
    /// Re-root the system on its own supporting sublattice: the result has
    /// ambient lattice `Z^rank` with the restricted form and trivial torus
    /// basis. Needed when reflections (e.g. in long `F4` roots) are integral
    /// on the sublattice but not on the original ambient lattice.
    pub fn localize(&self) -> RootSystem {
        let lat = Lattice::new(self.local_gram.clone());
        let basis = IMat::identity(lat.rank);
        RootSystem::finish(&self.label, lat, basis, self.roots_loc.clone())
    }
}

/// Orthogonal complement (saturated, canonical HNF basis) of the given
/// vectors inside `lat`, with respect to its bilinear form.
pub fn orthogonal_complement(lat: &Lattice, constraints: &[Vec<i64>]) -> IMat {
    let rows: Vec<Vec<i64>> = constraints
        .iter()
        .map(|c| (0..lat.rank).map(|j| {
            let mut basis = vec![0i64; lat.rank];
            basis[j] = 1;
            lat.dot(c, &basis)
        }).collect())
        .collect();
    intlin::kernel(&IMat::from_rows(&rows))
}

/// The `E6` system of norm `-2` roots orthogonal to `k` in `Pic(dP3)`.
pub fn root_system_e6() -> RootSystem {
    let lat = picard_lattice(6);
    let k = canonical_class(6);
    let basis = orthogonal_complement(&lat, &[k]);
    let roots = enumerate_roots(&lat, &basis, -2);
    assert_eq!(roots.len(), 72);
    RootSystem::finish("E6", lat, basis, roots)
}

/// The `D5` system of norm `-2` roots orthogonal to `k` in `Pic(dP4)`.
pub fn root_system_d5_quartic() -> RootSystem {
    let lat = picard_lattice(5);
    let k = canonical_class(5);
    let basis = orthogonal_complement(&lat, &[k]);
    let roots = enumerate_roots(&lat, &basis, -2);
    assert_eq!(roots.len(), 40);
    RootSystem::finish("D5", lat, basis, roots)
}

/// `A_{n-1}` inside `Z^n`: roots `e_i - e_j`, Weyl group `S_n`.
pub fn root_system_a(n: usize) -> RootSystem {
    let lat = a_type_lattice(n);
    let ones = vec![1i64; n];
    let basis = orthogonal_complement(&lat, &[ones]);
    let roots = enumerate_roots(&lat, &basis, -2);
    assert_eq!(roots.len(), n * (n - 1));
    RootSystem::finish(&format!("A{}", n - 1), lat, basis, roots)
}

/// Subsystem supported on the orthogonal complement of `constraints` inside
/// the ambient lattice of `parent`.
///
/// Roots are the norm `-2` vectors of the complement. With `with_long` also
/// the primitive norm `-4` vectors with even pairing against the complement
/// are adjoined (this upgrades the `D4` system in a tritangent-trio
/// complement to the full `F4` system of 24 positive roots).
pub fn orthogonal_subsystem(
    parent: &RootSystem,
    constraints: &[Vec<i64>],
    with_long: bool,
    label: &str,
) -> RootSystem {
    let lat = parent.lattice.clone();
    let mut all = constraints.to_vec();
    if let Some(k) = implied_canonical(&lat) {
        all.push(k);
    }
    let basis = orthogonal_complement(&lat, &all);
    let mut roots = enumerate_roots(&lat, &basis, -2);
    if with_long {
        let long = enumerate_roots(&lat, &basis, -4);
        for v in long {
            if is_primitive_in(&basis, &v) && even_pairing(&lat, &basis, &v) {
                roots.push(v);
            }
        }
    }
    RootSystem::finish(label, lat, basis, roots)
}

fn implied_canonical(lat: &Lattice) -> Option<Vec<i64>> {
    // Picard lattices carry the anticanonical marking; detect by signature
    // shape (single +1 on the first basis vector).
    if lat.gram[(0, 0)] == 1 && (1..lat.rank).all(|i| lat.gram[(i, i)] == -1) {
        Some(canonical_class(lat.rank - 1))
    } else {
        None
    }
}

fn is_primitive_in(basis: &IMat, v: &[i64]) -> bool {
    let c = intlin::solve_in_hnf(basis, v).expect("vector outside sublattice");
    let g = c.iter().fold(0i64, |g, &x| num_integer::gcd(g, x.abs()));
    g == 1
}

fn even_pairing(lat: &Lattice, basis: &IMat, v: &[i64]) -> bool {
    (0..basis.rows).all(|r| lat.dot(basis.row(r), v) % 2 == 0)
}

/// All vectors of the given norm in the sublattice spanned by `basis`
/// (negative definite there), by bounded box search in local coordinates.
fn enumerate_roots(lat: &Lattice, basis: &IMat, norm: i64) -> Vec<Vec<i64>> {
    let r = basis.rows;
    assert!(r > 0);
    // Coefficient bound: in these small negative-definite lattices every
    // vector of norm >= -4 has local coordinates bounded by 6.
    const B: i64 = 6;
    let mut out = Vec::new();
    let mut coeff = vec![-B; r];
    'outer: loop {
        let mut amb = vec![0i64; lat.rank];
        for (i, &c) in coeff.iter().enumerate() {
            if c != 0 {
                for j in 0..lat.rank {
                    amb[j] += c * basis[(i, j)];
                }
            }
        }
        if lat.norm(&amb) == norm {
            out.push(amb);
        }
        for i in 0..r {
            coeff[i] += 1;
            if coeff[i] <= B {
                continue 'outer;
            }
            coeff[i] = -B;
        }
        break;
    }
    // Guard against the box being too small: every root plus any simple
    // combination stays well within the bound for the systems used here;
    // verify no root sits on the boundary.
    for v in &out {
        let c = intlin::solve_in_hnf(basis, v).unwrap();
        assert!(c.iter().all(|&x| x.abs() < B), "root enumeration box too small");
    }
    out
}

/// Permutation of the root list (by index), the internal element
/// representation of [`Group`].
pub type RootPerm = Vec<u8>;

#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Index of the representative element.
    pub rep: u32,
    pub size: u32,
    pub elem_order: u32,
}

/// A finite group of isometries of a root system, stored as permutations of
/// the (sorted) root list. Includes subgroups of Weyl groups (stabilizers),
/// which permute the same root list.
pub struct Group {
    pub rs: RootSystem,
    pub elements: Vec<RootPerm>,
    pub index: HashMap<RootPerm, u32>,
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<u32>,
    /// Indices of roots forming a basis of the root span (for matrix
    /// reconstruction), plus the inverse data of that base.
    base_roots: Vec<usize>,
    /// `inv_base * det_base = adjugate of base matrix` acting on local coords.
    base_mat: IMat,
}

impl Group {
    /// Generate the closure of `gen_mats` (ambient matrices preserving the
    /// root set) under multiplication. Deterministic BFS order: the element
    /// list depends only on the abstract multiplication table and generator
    /// order, so parallel generation of isomorphic groups yields matching
    /// element indices.
    pub fn generate(rs: RootSystem, gen_mats: &[IMat]) -> Group {
        let gens: Vec<RootPerm> =
            gen_mats.iter().map(|m| perm_of_matrix(&rs, m).expect("generator must permute roots")).collect();
        let n = rs.num_roots();
        let id: RootPerm = (0..n as u8).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut head = 0usize;
        while head < elements.len() {
            for g in &gens {
                let prod = compose(g, &elements[head]);
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elements.len() as u32);
                    elements.push(prod);
                }
            }
            head += 1;
        }
        Self::finish(rs, elements, index, gens)
    }

    /// Build a group from an explicit element list (e.g. a stabilizer
    /// filtered out of a larger group). Elements must form a group.
    pub fn from_elements(rs: RootSystem, mut elements: Vec<RootPerm>) -> Group {
        elements.sort();
        elements.dedup();
        // Put the identity first for convenience.
        let n = rs.num_roots();
        let id: RootPerm = (0..n as u8).collect();
        let pos = elements.iter().position(|e| *e == id).expect("missing identity");
        elements.swap(0, pos);
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.clone(), i as u32);
        }
        // Greedy small generating set.
        let mut gens: Vec<RootPerm> = Vec::new();
        let mut closure: std::collections::HashSet<RootPerm> = [id].into_iter().collect();
        for e in &elements {
            if !closure.contains(e) {
                gens.push(e.clone());
                // Re-close.
                let mut frontier: Vec<RootPerm> = closure.iter().cloned().collect();
                while let Some(x) = frontier.pop() {
                    for g in &gens {
                        let p = compose(g, &x);
                        if closure.insert(p.clone()) {
                            frontier.push(p);
                        }
                    }
                }
            }
        }
        assert_eq!(closure.len(), elements.len(), "element list is not closed");
        Self::finish(rs, elements, index, gens)
    }

    fn finish(
        rs: RootSystem,
        elements: Vec<RootPerm>,
        index: HashMap<RootPerm, u32>,
        gens: Vec<RootPerm>,
    ) -> Group {
        // Conjugacy classes: orbit closure under conjugation by generators.
        let m = elements.len();
        let mut class_of = vec![u32::MAX; m];
        let mut classes: Vec<ConjClass> = Vec::new();
        let gen_inv: Vec<RootPerm> = gens.iter().map(|g| invert(g)).collect();
        for start in 0..m {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            let mut orbit = vec![start as u32];
            class_of[start] = cid;
            let mut head = 0;
            while head < orbit.len() {
                let x = &elements[orbit[head] as usize];
                for (g, gi) in gens.iter().zip(&gen_inv) {
                    let y = compose(g, &compose(x, gi));
                    let yi = *index.get(&y).expect("not closed under conjugation");
                    if class_of[yi as usize] == u32::MAX {
                        class_of[yi as usize] = cid;
                        orbit.push(yi);
                    }
                }
                head += 1;
            }
            classes.push(ConjClass {
                rep: start as u32,
                size: orbit.len() as u32,
                elem_order: perm_order(&elements[start]),
            });
        }
        // Sort classes deterministically by (element order, size, rep index).
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&i| (classes[i].elem_order, classes[i].size, classes[i].rep));
        let mut remap = vec![0u32; classes.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as u32;
        }
        let classes: Vec<ConjClass> = order.iter().map(|&i| classes[i].clone()).collect();
        for c in class_of.iter_mut() {
            *c = remap[*c as usize];
        }
        // Base roots for matrix reconstruction: greedily pick roots spanning
        // the torus sublattice rationally.
        let rank = rs.torus_basis.rows;
        let mut base_roots = Vec::new();
        let mut picked: Vec<Vec<i64>> = Vec::new();
        for (i, loc) in rs.roots_loc.iter().enumerate() {
            let mut trial = picked.clone();
            trial.push(loc.clone());
            if rank_of(&trial, rank) == trial.len() {
                picked.push(loc.clone());
                base_roots.push(i);
                if picked.len() == rank {
                    break;
                }
            }
        }
        assert_eq!(base_roots.len(), rank, "roots do not span");
        let base_mat = IMat::from_rows(&picked);
        Group {
            rs,
            elements,
            index,
            classes,
            class_of,
            base_roots,
            base_mat,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = compose(&self.elements[a as usize], &self.elements[b as usize]);
        *self.index.get(&p).expect("closed")
    }

    pub fn inv(&self, a: u32) -> u32 {
        *self.index.get(&invert(&self.elements[a as usize])).expect("closed")
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut r = 0u32; // identity has index 0 by construction
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        r
    }

    pub fn contains_matrix(&self, m: &IMat) -> bool {
        self.element_of_matrix(m).is_some()
    }

    pub fn element_of_matrix(&self, m: &IMat) -> Option<u32> {
        let p = perm_of_matrix(&self.rs, m)?;
        self.index.get(&p).copied()
    }

    /// Matrix of element `e` in local (torus-basis) coordinates.
    pub fn matrix_loc(&self, e: u32) -> IMat {
        self.matrix_loc_of_perm(&self.elements[e as usize])
    }

    /// Local matrix of an arbitrary root permutation (used for extended
    /// elements too). The permutation determines the matrix because the
    /// roots span the local lattice rationally.
    pub fn matrix_loc_of_perm(&self, p: &RootPerm) -> IMat {
        // Solve M * base_mat^T = image^T over Q and assert integrality:
        // column i of M*B^T is image of base root i.
        let images: Vec<Vec<i64>> =
            self.base_roots.iter().map(|&ri| self.rs.roots_loc[p[ri] as usize].clone()).collect();
        let img = IMat::from_rows(&images);
        // Column convention `v -> M v`: M * base^T = img^T.
        rational_solve(&self.base_mat.transpose(), &img.transpose())
    }

    /// Ambient matrix of element `e` (acts as identity on the orthogonal
    /// complement of the root span, e.g. fixes the canonical class).
    pub fn matrix_amb(&self, e: u32) -> IMat {
        let loc = self.matrix_loc(e);
        let n = self.rs.lattice.rank;
        let tb = &self.rs.torus_basis;
        // Complement basis: kernel of pairings against torus basis rows.
        let comp = orthogonal_complement(&self.rs.lattice, &(0..tb.rows).map(|r| tb.row(r).to_vec()).collect::<Vec<_>>());
        // Full basis rows: torus basis then complement.
        let mut rows: Vec<Vec<i64>> = (0..tb.rows).map(|r| tb.row(r).to_vec()).collect();
        for r in 0..comp.rows {
            rows.push(comp.row(r).to_vec());
        }
        let full = IMat::from_rows(&rows);
        assert_eq!(full.rows, n);
        // Images in the same row convention.
        let mut img_rows: Vec<Vec<i64>> = Vec::new();
        for r in 0..tb.rows {
            // image of torus basis row r = sum_j loc[j][r]? Careful: column convention.
            // matrix_loc columns are images of local basis vectors, so image of
            // basis row r (local coord e_r) has local coords = column r of loc.
            let mut amb = vec![0i64; n];
            for j in 0..tb.rows {
                let c = loc[(j, r)];
                if c != 0 {
                    for x in 0..n {
                        amb[x] += c * tb[(j, x)];
                    }
                }
            }
            img_rows.push(amb);
        }
        for r in 0..comp.rows {
            img_rows.push(comp.row(r).to_vec());
        }
        let img = IMat::from_rows(&img_rows);
        rational_solve(&full.transpose(), &img.transpose())
    }

    /// Class index of the power `g^k` for a representative of class `c`.
    pub fn power_class(&self, c: usize, k: u64) -> usize {
        let g = self.classes[c].rep;
        self.class_of[self.pow(g, k) as usize] as usize
    }

    /// Class index of the inverse of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of[self.inv(self.classes[c].rep) as usize] as usize
    }

    /// Image of an ambient vector under element `e`, computed from the root
    /// permutation (so it works without reconstructing the full matrix).
    pub fn apply_amb(&self, e: u32, v: &[i64]) -> Vec<i64> {
        let m = self.matrix_amb(e);
        m.apply(v)
    }
}

/// Compose permutations: `(a.b)[i] = a[b[i]]`.
pub fn compose(a: &RootPerm, b: &RootPerm) -> RootPerm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn invert(p: &RootPerm) -> RootPerm {
    let mut inv = vec![0u8; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j as usize] = i as u8;
    }
    inv
}

pub fn perm_order(p: &RootPerm) -> u32 {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut ord: u64 = 1;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut len = 0u64;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j] as usize;
            len += 1;
        }
        ord = num_integer::lcm(ord, len);
    }
    ord as u32
}

/// Root permutation induced by an ambient matrix, if it preserves the set.
pub fn perm_of_matrix(rs: &RootSystem, m: &IMat) -> Option<RootPerm> {
    let mut p = Vec::with_capacity(rs.num_roots());
    for r in &rs.roots_amb {
        let img = m.apply(r);
        p.push(rs.root_index(&img)? as u8);
    }
    // Injectivity is automatic for a bijection of a finite set to itself.
    let mut seen = vec![false; p.len()];
    for &i in &p {
        if seen[i as usize] {
            return None;
        }
        seen[i as usize] = true;
    }
    Some(p)
}

fn rank_of(rows: &[Vec<i64>], cols: usize) -> usize {
    intlin::hnf(&IMat::from_rows(rows)).rows.min(cols)
}

/// Solve `X * a = b` over the rationals for square `a` (rows are basis
/// vectors) asserting the result is integral; returns `X = b * a^{-1}`.
fn rational_solve(a: &IMat, b: &IMat) -> IMat {
    let n = a.rows;
    assert_eq!(a.cols, n);
    assert_eq!(b.cols, n);
    let det = a.det();
    assert!(det != 0);
    // Adjugate via cofactors (n <= 7, fine).
    let mut adj = IMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            // Minor deleting row j, col i.
            let mut sub = IMat::zero(n - 1, n - 1);
            let mut rr = 0;
            for r in 0..n {
                if r == j {
                    continue;
                }
                let mut cc = 0;
                for c in 0..n {
                    if c == i {
                        continue;
                    }
                    sub[(rr, cc)] = a[(r, c)];
                    cc += 1;
                }
                rr += 1;
            }
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[(i, j)] = sign * sub.det();
        }
    }
    let prod = b.mul(&adj);
    let mut out = IMat::zero(b.rows, n);
    for r in 0..b.rows {
        for c in 0..n {
            assert_eq!(prod[(r, c)] % det, 0, "non-integral solution");
            out[(r, c)] = prod[(r, c)] / det;
        }
    }
    out
}

/// Generate the full reflection group of a root system (reflections in all
/// positive roots; for mixed-length systems this includes the long roots).
pub fn weyl_group(rs: RootSystem) -> Group {
    let gens: Vec<IMat> = rs.positive.iter().map(|&i| rs.reflection_amb(&rs.roots_amb[i])).collect();
    Group::generate(rs, &gens)
}

/// Search the group for a given ambient matrix action; used e.g. to certify
/// that `-id` is NOT inner before using it as an extended (twisting) element.
pub fn contains_local_matrix(g: &Group, loc: &IMat) -> bool {
    // Compare by induced root permutation in local coordinates.
    let mut image: Vec<Vec<i64>> = Vec::with_capacity(g.rs.num_roots());
    for r in &g.rs.roots_loc {
        image.push(loc.apply(r));
    }
    let mut p = Vec::with_capacity(image.len());
    for v in &image {
        match g.rs.roots_loc.iter().position(|w| w == v) {
            Some(i) => p.push(i as u8),
            None => return false,
        }
    }
    g.index.contains_key(&p)
}

/// Root permutation of a local-coordinates matrix preserving the root set.
pub fn perm_of_local_matrix(rs: &RootSystem, loc: &IMat) -> Option<RootPerm> {
    let mut p = Vec::with_capacity(rs.num_roots());
    for r in &rs.roots_loc {
        let img = loc.apply(r);
        p.push(rs.roots_loc.iter().position(|w| *w == img)? as u8);
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e6_system_has_36_positive_roots_and_spans_k_perp() {
        let rs = root_system_e6();
        assert_eq!(rs.num_positive(), 36);
        assert_eq!(rs.torus_basis.rows, 6);
        assert_eq!(rs.simple.len(), 6);
        let k = canonical_class(6);
        for r in &rs.roots_amb {
            assert_eq!(rs.lattice.dot(r, &k), 0);
            assert_eq!(rs.lattice.norm(r), -2);
        }
    }

    #[test]
    fn d5_quartic_system_has_20_positive_roots() {
        let rs = root_system_d5_quartic();
        assert_eq!(rs.num_positive(), 20);
        assert_eq!(rs.simple.len(), 5);
    }

    #[test]
    fn weyl_group_orders() {
        let w_a2 = weyl_group(root_system_a(3));
        assert_eq!(w_a2.order(), 6);
        assert_eq!(w_a2.classes.len(), 3);
        let w_d5 = weyl_group(root_system_d5_quartic());
        assert_eq!(w_d5.order(), 1920);
        assert_eq!(w_d5.classes.len(), 18);
    }

    #[test]
    fn matrix_reconstruction_roundtrip() {
        let g = weyl_group(root_system_a(4));
        assert_eq!(g.order(), 24);
        for e in 0..g.order() as u32 {
            let m = g.matrix_amb(e);
            let p = perm_of_matrix(&g.rs, &m).unwrap();
            assert_eq!(p, g.elements[e as usize]);
            // Permutation matrices of S4 fix the all-ones vector.
            assert_eq!(m.apply(&[1, 1, 1, 1]), vec![1, 1, 1, 1]);
        }
    }

    #[test]
    fn trio_complement_is_f4_with_24_positive_roots() {
        let e6 = root_system_e6();
        // Tritangent trio: 2l-e1-..-e5, l-e5-e6, e5.
        let f1 = vec![2, -1, -1, -1, -1, -1, 0];
        let f2 = vec![1, 0, 0, 0, 0, -1, -1];
        let f3 = vec![0, 0, 0, 0, 0, 1, 0];
        let short = orthogonal_subsystem(&e6, &[f1.clone(), f2.clone(), f3.clone()], false, "D4");
        assert_eq!(short.num_positive(), 12);
        let f4 = orthogonal_subsystem(&e6, &[f1, f2, f3], true, "F4");
        assert_eq!(f4.num_positive(), 24);
        let w = weyl_group(f4.localize());
        assert_eq!(w.order(), 1152);
        assert_eq!(w.classes.len(), 25);
    }
}
