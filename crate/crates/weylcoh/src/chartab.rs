//! Character tables of the finite reflection groups, exactly.
//!
//! The main entry point is [`character_table`], a Dixon–Schneider
//! implementation: class-multiplication matrices are simultaneously
//! diagonalized over a prime field `F_p` with `p = 1 (mod exp G)`, the
//! eigenvalue vectors are converted to character values and lifted to the
//! integers, and full row/column orthogonality is re-verified exactly.
//! Symmetric-group tables are additionally available through the independent
//! Murnaghan–Nakayama recursion ([`sn_character`]) for cross-checks.
//!
//! Irreducibles of Weyl groups are labelled `phi{d,e}` where `d` is the
//! degree and `e` the minimal symmetric power of the reflection character
//! containing the irreducible.

use crate::frac::Frac;
use crate::intlin::IMat;
use crate::weyl::Group;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CharTabError {
    #[error("no suitable prime found for exponent {0}")]
    NoPrime(u64),
    #[error("eigenspace refinement did not separate all characters")]
    NotSeparated,
    #[error("character lifting failed: {0}")]
    Lift(String),
    #[error("orthogonality verification failed: {0}")]
    Orthogonality(String),
}

/// An exact character table. `values[i][c]` is the value of irreducible `i`
/// on conjugacy class `c` (classes in the group's canonical order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharTable {
    pub group_order: i64,
    pub class_sizes: Vec<i64>,
    pub class_orders: Vec<u32>,
    pub inverse_class: Vec<usize>,
    pub values: Vec<Vec<i64>>,
    pub labels: Vec<String>,
}

impl CharTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn degree(&self, irrep: usize) -> i64 {
        // Identity class is the one of order 1.
        let id = self.class_orders.iter().position(|&o| o == 1).unwrap();
        self.values[irrep][id]
    }

    pub fn irrep_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `(1/|G|) sum_C |C| f(C) g(C^{-1})`, exact; panics on non-integrality.
    pub fn inner_product(&self, f: &[i64], g: &[i64]) -> i64 {
        let mut s: i128 = 0;
        for c in 0..self.num_classes() {
            s += self.class_sizes[c] as i128 * f[c] as i128 * g[self.inverse_class[c]] as i128;
        }
        assert_eq!(s % self.group_order as i128, 0, "non-integral inner product");
        i64::try_from(s / self.group_order as i128).expect("overflow")
    }

    /// Decompose a virtual character into irreducible multiplicities.
    pub fn decompose(&self, f: &[i64]) -> Vec<i64> {
        let mults: Vec<i64> = (0..self.values.len()).map(|i| self.inner_product(f, &self.values[i])).collect();
        // Verify reconstruction (catches non-class-functions).
        for c in 0..self.num_classes() {
            let v: i64 = (0..self.values.len()).map(|i| mults[i] * self.values[i][c]).sum();
            assert_eq!(v, f[c], "decomposition does not reconstruct input");
        }
        mults
    }

    /// Verify first and second orthogonality relations exactly.
    pub fn verify_orthogonality(&self) -> Result<(), CharTabError> {
        let k = self.num_classes();
        if self.values.len() != k {
            return Err(CharTabError::Orthogonality(format!(
                "{} irreducibles for {} classes",
                self.values.len(),
                k
            )));
        }
        let sum_sq: i64 = (0..k).map(|i| self.degree(i) * self.degree(i)).sum();
        if sum_sq != self.group_order {
            return Err(CharTabError::Orthogonality(format!(
                "sum of squared degrees {} != |G| = {}",
                sum_sq, self.group_order
            )));
        }
        for a in 0..k {
            for b in 0..k {
                let mut s: i128 = 0;
                for c in 0..k {
                    s += self.class_sizes[c] as i128
                        * self.values[a][c] as i128
                        * self.values[b][self.inverse_class[c]] as i128;
                }
                let expect = if a == b { self.group_order as i128 } else { 0 };
                if s != expect {
                    return Err(CharTabError::Orthogonality(format!("row orthogonality ({a},{b})")));
                }
            }
        }
        // Column orthogonality.
        for c in 0..k {
            for d in 0..k {
                let mut s: i128 = 0;
                for i in 0..k {
                    s += self.values[i][c] as i128 * self.values[i][self.inverse_class[d]] as i128;
                }
                let expect =
                    if c == d { self.group_order as i128 / self.class_sizes[c] as i128 } else { 0 };
                if s != expect {
                    return Err(CharTabError::Orthogonality(format!("column orthogonality ({c},{d})")));
                }
            }
        }
        Ok(())
    }
}

/// Cohomology of a space as a graded representation: `rows[i]` lists the
/// multiplicity of each irreducible (named in `irrep_labels`) in `H^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    pub irrep_labels: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

impl CohomologyTable {
    /// Multiplicity of the named irreducible in `H^i`.
    pub fn multiplicity(&self, i: usize, label: &str) -> i64 {
        let col = self
            .irrep_labels
            .iter()
            .position(|l| l == label)
            .unwrap_or_else(|| panic!("no irreducible labelled {label}"));
        self.rows[i][col]
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Compute the character table of `g` by Dixon–Schneider.
pub fn character_table(g: &Group) -> Result<CharTable, CharTabError> {
    let k = g.classes.len();
    let n = g.order();
    let exponent: u64 = g
        .classes
        .iter()
        .fold(1u64, |l, c| num_integer::lcm(l, c.elem_order as u64));
    // p = 1 (mod exp), large enough to lift degrees (<= sqrt|G|) and values.
    let mut p = 0u64;
    let lower = 2 * (n as f64).sqrt() as u64 + 3;
    let mut cand = exponent + 1;
    loop {
        if cand > lower && is_prime(cand) {
            p = cand;
            break;
        }
        cand += exponent;
        if cand > 100_000_000 {
            break;
        }
    }
    if p == 0 {
        return Err(CharTabError::NoPrime(exponent));
    }

    // Element inverses and class data.
    let inv_of: Vec<u32> = (0..n as u32).map(|e| g.inv(e)).collect();
    let class_sizes: Vec<i64> = g.classes.iter().map(|c| c.size as i64).collect();
    let class_orders: Vec<u32> = g.classes.iter().map(|c| c.elem_order).collect();
    let inverse_class: Vec<usize> = (0..k).map(|c| g.inverse_class(c)).collect();

    // Class multiplication constants: m[i][j][l] = #{(x,y) in C_i x C_j : xy = g_l}.
    let mut cmats = vec![vec![vec![0u64; k]; k]; k];
    for (l, cl) in g.classes.iter().enumerate() {
        let gl = cl.rep;
        for x in 0..n as u32 {
            let i = g.class_of[x as usize] as usize;
            let y = g.mul(inv_of[x as usize], gl);
            let j = g.class_of[y as usize] as usize;
            cmats[i][j][l] += 1;
        }
    }

    // Simultaneous eigenspace refinement over F_p. Subspaces are lists of
    // basis vectors in F_p^k ("column" space on which M_i acts by
    // (M_i v)_j = sum_l m[i][j][l] v_l).
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|r| {
            let mut v = vec![0u64; k];
            v[r] = 1;
            v
        })
        .collect()];
    for i in 0..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let apply = |v: &[u64]| -> Vec<u64> {
            (0..k)
                .map(|j| {
                    let mut s: u128 = 0;
                    for l in 0..k {
                        if v[l] != 0 {
                            s += cmats[i][j][l] as u128 * v[l] as u128;
                        }
                    }
                    (s % p as u128) as u64
                })
                .collect()
        };
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let d = space.len();
            // Restriction matrix R: M_i b_t = sum_s R[s][t] b_s.
            let images: Vec<Vec<u64>> = space.iter().map(|b| apply(b)).collect();
            let r = express_in_basis(&space, &images, p);
            // Roots of char poly by scanning F_p.
            let cp = char_poly_mod(&r, p);
            let mut eigvals = Vec::new();
            for x in 0..p {
                if eval_poly_mod(&cp, x, p) == 0 {
                    eigvals.push(x);
                }
            }
            for ev in eigvals {
                // Kernel of (R - ev I) within the subspace.
                let mut m = r.clone();
                for t in 0..d {
                    m[t][t] = (m[t][t] + p - ev) % p;
                }
                let ker = kernel_mod(&m, p);
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|coef| {
                        let mut v = vec![0u64; k];
                        for (t, &c) in coef.iter().enumerate() {
                            if c != 0 {
                                for idx in 0..k {
                                    v[idx] = (v[idx] + c as u128 as u64 * 0
                                        + ((c as u128 * space[t][idx] as u128) % p as u128) as u64)
                                        % p;
                                }
                            }
                        }
                        v
                    })
                    .collect();
                if !sub.is_empty() {
                    next.push(sub);
                }
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(CharTabError::NotSeparated);
    }

    // Convert eigenvectors to characters.
    let id_class = class_orders.iter().position(|&o| o == 1).unwrap();
    let mut values: Vec<Vec<i64>> = Vec::with_capacity(k);
    for space in &spaces {
        let v = &space[0];
        if v[id_class] == 0 {
            return Err(CharTabError::Lift("eigenvector vanishes at identity".into()));
        }
        let scale = inv_mod(v[id_class], p);
        let omega: Vec<u64> = v.iter().map(|&x| x as u128 as u64 * 0 + ((x as u128 * scale as u128) % p as u128) as u64).collect();
        // d^2 = |G| / sum_l omega_l omega_{l*} / |C_l|.
        let mut s: u64 = 0;
        for l in 0..k {
            let t = omega[l] as u128 * omega[inverse_class[l]] as u128 % p as u128;
            let t = t * inv_mod(class_sizes[l] as u64 % p, p) as u128 % p as u128;
            s = ((s as u128 + t) % p as u128) as u64;
        }
        if s == 0 {
            return Err(CharTabError::Lift("degree denominator is zero".into()));
        }
        let d2 = (n as u128 % p as u128) as u64 * inv_mod(s, p) % p;
        let mut deg = 0i64;
        let bound = (n as f64).sqrt() as u64 + 1;
        for d in 1..=bound {
            if d * d % p == d2 {
                deg = d as i64;
                break;
            }
        }
        if deg == 0 {
            return Err(CharTabError::Lift(format!("no degree with d^2 = {d2} mod {p}")));
        }
        let mut row = vec![0i64; k];
        for l in 0..k {
            let val = omega[l] as u128 * (deg as u64 % p) as u128 % p as u128;
            let val = val * inv_mod(class_sizes[l] as u64 % p, p) as u128 % p as u128;
            let val = val as u64;
            // Lift to (-p/2, p/2]; character values are bounded by the degree.
            let lifted = if val > p / 2 { val as i64 - p as i64 } else { val as i64 };
            if lifted.abs() > deg {
                return Err(CharTabError::Lift(format!("value {lifted} exceeds degree {deg}")));
            }
            row[l] = lifted;
        }
        values.push(row);
    }
    // Canonical irrep order: by degree, then values lexicographically.
    values.sort_by(|a, b| a[id_class].cmp(&b[id_class]).then_with(|| a.cmp(b)));

    let table = CharTable {
        group_order: n as i64,
        class_sizes,
        class_orders,
        inverse_class,
        values,
        labels: vec![String::new(); k],
    };
    table.verify_orthogonality()?;
    Ok(table)
}

/// Express each of `images` in terms of `basis` modulo p; returns R with
/// column t the coordinates of images[t].
fn express_in_basis(basis: &[Vec<u64>], images: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = basis.len();
    let k = basis[0].len();
    // Solve basis_matrix * coords = image for each image (basis vectors as columns).
    // Gaussian elimination on the k x (d + images) augmented system.
    let m = images.len();
    let mut aug = vec![vec![0u64; d + m]; k];
    for (t, b) in basis.iter().enumerate() {
        for r in 0..k {
            aug[r][t] = b[r];
        }
    }
    for (t, im) in images.iter().enumerate() {
        for r in 0..k {
            aug[r][d + t] = im[r];
        }
    }
    // Eliminate.
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..d {
        let piv = (row..k).find(|&r| aug[r][col] != 0);
        let Some(piv) = piv else { continue };
        aug.swap(row, piv);
        let inv = inv_mod(aug[row][col], p);
        for c in col..d + m {
            aug[row][c] = (aug[row][c] as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..k {
            if r != row && aug[r][col] != 0 {
                let f = aug[r][col];
                for c in col..d + m {
                    let sub = f as u128 * aug[row][c] as u128 % p as u128;
                    aug[r][c] = ((aug[r][c] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == k {
            break;
        }
    }
    assert_eq!(pivots.len(), d, "basis not independent");
    let mut result = vec![vec![0u64; d]; d];
    for t in 0..m {
        for (rr, &col) in pivots.iter().enumerate() {
            result[col][t] = aug[rr][d + t];
        }
    }
    result
}

fn char_poly_mod(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    // Interpolate det(xI - M) at d+1 points.
    let d = m.len();
    let xs: Vec<u64> = (0..=d as u64).collect();
    let ys: Vec<u64> = xs.iter().map(|&x| det_mod_shift(m, x, p)).collect();
    // Lagrange interpolation mod p.
    let mut coeffs = vec![0u64; d + 1];
    for i in 0..xs.len() {
        // basis polynomial prod_{j!=i} (X - x_j)/(x_i - x_j)
        let mut numer = vec![0u64; d + 1];
        numer[0] = 1;
        let mut deg = 0;
        let mut denom = 1u64;
        for j in 0..xs.len() {
            if j == i {
                continue;
            }
            // numer *= (X - x_j)
            let mut next = vec![0u64; d + 1];
            for t in 0..=deg {
                next[t + 1] = (next[t + 1] + numer[t]) % p;
                next[t] = (next[t] + (p - xs[j] % p) % p * numer[t] % p) % p;
            }
            numer = next;
            deg += 1;
            denom = denom as u128 as u64 * 0
                + ((denom as u128 * ((xs[i] + p - xs[j]) % p) as u128) % p as u128) as u64;
        }
        let f = ys[i] as u128 * inv_mod(denom, p) as u128 % p as u128;
        for t in 0..=d {
            coeffs[t] = ((coeffs[t] as u128 + f * numer[t] as u128) % p as u128) as u64;
        }
    }
    coeffs
}

fn det_mod_shift(m: &[Vec<u64>], x: u64, p: u64) -> u64 {
    // det(xI - M) mod p by Gaussian elimination.
    let d = m.len();
    let mut a: Vec<Vec<u64>> = (0..d)
        .map(|r| (0..d).map(|c| {
            let diag = if r == c { x % p } else { 0 };
            (diag + p - m[r][c] % p) % p
        }).collect())
        .collect();
    let mut det = 1u64;
    for col in 0..d {
        let piv = (col..d).find(|&r| a[r][col] != 0);
        let Some(piv) = piv else { return 0 };
        if piv != col {
            a.swap(col, piv);
            det = p - det;
        }
        det = (det as u128 * a[col][col] as u128 % p as u128) as u64;
        let inv = inv_mod(a[col][col], p);
        for r in col + 1..d {
            if a[r][col] != 0 {
                let f = a[r][col] as u128 * inv as u128 % p as u128;
                for c in col..d {
                    let sub = f * a[col][c] as u128 % p as u128;
                    a[r][c] = ((a[r][c] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
    }
    det % p
}

fn eval_poly_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u128;
    for &c in coeffs.iter().rev() {
        acc = (acc * x as u128 + c as u128) % p as u128;
    }
    acc as u64
}

fn kernel_mod(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = m.len();
    let mut a = m.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let piv = (row..d).find(|&r| a[r][col] != 0);
        let Some(piv) = piv else { continue };
        a.swap(row, piv);
        let inv = inv_mod(a[row][col], p);
        for c in 0..d {
            a[row][c] = (a[row][c] as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..d {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..d {
                    let sub = f as u128 * a[row][c] as u128 % p as u128;
                    a[r][c] = ((a[r][c] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
    }
    let pivot_cols: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..d {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; d];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = (p - a[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Symmetric groups: partitions and Murnaghan–Nakayama.
// ---------------------------------------------------------------------------

/// Partitions of `n` in descending lexicographic order (biggest part first).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Size of the `S_n` conjugacy class with cycle type `mu`: `n!/z_mu`.
pub fn sn_class_size(n: usize, mu: &[usize]) -> i64 {
    let mut z: i64 = 1;
    let mut counts = std::collections::HashMap::new();
    for &m in mu {
        z *= m as i64;
        *counts.entry(m).or_insert(0i64) += 1;
    }
    for (_, c) in counts {
        for i in 1..=c {
            z *= i;
        }
    }
    let mut fact = 1i64;
    for i in 1..=n as i64 {
        fact *= i;
    }
    fact / z
}

/// Murnaghan–Nakayama: character of the irreducible of `S_n` labelled by
/// partition `lambda` on the class of cycle type `mu`.
pub fn sn_character(lambda: &[usize], mu: &[usize]) -> i64 {
    if lambda.is_empty() {
        return 1;
    }
    let mu: Vec<usize> = mu.to_vec();
    mn_rec(lambda, &mu)
}

fn mn_rec(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() || lambda.iter().all(|&x| x == 0) { 1 } else { 0 };
    }
    let k = mu[0];
    let rest = &mu[1..];
    let rows = lambda.len();
    let mut total = 0i64;
    // Remove a border strip of size k ending in each possible row.
    // Border strips correspond to pairs (i, j) with beta-set arithmetic; use
    // the direct characterization: for each row r, try removing a strip that
    // starts in row r.
    // Standard beta-set formulation: first-column hook lengths.
    let beta: Vec<i64> = (0..rows).map(|i| lambda[i] as i64 + (rows - 1 - i) as i64).collect();
    for i in 0..rows {
        let target = beta[i] - k as i64;
        if target < 0 {
            continue;
        }
        if beta.iter().any(|&b| b == target) {
            continue; // collision: no strip here
        }
        // Height of the strip = number of beta entries strictly between
        // target and beta[i].
        let height = beta.iter().filter(|&&b| b > target && b < beta[i]).count();
        let mut new_beta = beta.clone();
        new_beta[i] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        // Convert back to a partition.
        let m = new_beta.len();
        let mut new_lambda: Vec<usize> = (0..m)
            .map(|t| (new_beta[t] - (m - 1 - t) as i64) as usize)
            .collect();
        while new_lambda.last() == Some(&0) {
            new_lambda.pop();
        }
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&new_lambda, rest);
    }
    total
}

/// Full `S_n` character table via Murnaghan–Nakayama. Rows and columns are
/// both indexed by [`partitions`]`(n)` (rows: irreducibles, columns: cycle
/// types).
pub fn sn_character_table_mn(n: usize) -> (Vec<Vec<usize>>, Vec<Vec<i64>>) {
    let parts = partitions(n);
    let table = parts
        .iter()
        .map(|lam| parts.iter().map(|mu| sn_character(lam, mu)).collect())
        .collect();
    (parts, table)
}

// ---------------------------------------------------------------------------
// Reflection character, symmetric powers and Carter-style labels.
// ---------------------------------------------------------------------------

/// Trace of each class representative on the reflection representation
/// (local/torus coordinates).
pub fn reflection_character(g: &Group) -> Vec<i64> {
    g.classes.iter().map(|c| g.matrix_loc(c.rep).trace()).collect()
}

/// Values of `Sym^k` of the reflection character for `k = 0..=max_k`,
/// via the Newton-type recurrence `h_k = (1/k) sum_i p_i h_{k-i}` with
/// power sums `p_i(g) = chi_refl(g^i)`.
pub fn sym_power_characters(g: &Group, max_k: usize) -> Vec<Vec<i64>> {
    let k_classes = g.classes.len();
    // Power sums p_i per class.
    let mut p = vec![vec![0i64; k_classes]; max_k + 1];
    for c in 0..k_classes {
        let m = g.matrix_loc(g.classes[c].rep);
        let mut acc = IMat::identity(m.rows);
        for i in 1..=max_k {
            acc = acc.mul(&m);
            p[i][c] = acc.trace();
        }
    }
    let mut h: Vec<Vec<Frac>> = vec![vec![Frac::ONE; k_classes]];
    for k in 1..=max_k {
        let mut row = Vec::with_capacity(k_classes);
        for c in 0..k_classes {
            let mut s = Frac::ZERO;
            for i in 1..=k {
                s += Frac::from_int(p[i][c]) * h[k - i][c];
            }
            row.push(s / Frac::from_int(k as i64));
        }
        h.push(row);
    }
    h.iter()
        .map(|row| row.iter().map(|f| f.as_integer().expect("sym power not integral")).collect())
        .collect()
}

/// Assign `phi{d,e}` labels: `e` is the minimal symmetric power of the
/// reflection character containing each irreducible. Panics if `(d, e)`
/// collide (they do not for the groups used here).
pub fn assign_carter_labels(g: &Group, table: &mut CharTable) {
    let max_k = g.rs.num_positive();
    let sym = sym_power_characters(g, max_k);
    let mut labels = Vec::with_capacity(table.values.len());
    for i in 0..table.values.len() {
        let d = table.degree(i);
        let mut e = None;
        for (k, row) in sym.iter().enumerate() {
            if table.inner_product(row, &table.values[i]) > 0 {
                e = Some(k);
                break;
            }
        }
        let e = e.unwrap_or_else(|| panic!("irrep of degree {d} not found in any Sym^k"));
        labels.push(format!("phi{{{},{}}}", d, e));
    }
    let mut sorted = labels.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), labels.len(), "(d, e) labels collide");
    table.labels = labels;
}

// ---------------------------------------------------------------------------
// Fusion, induction, restriction.
// ---------------------------------------------------------------------------

/// Class fusion of a subgroup into its ambient group. Both groups must
/// permute the same root list (the subgroup built by filtering/generation
/// inside the ambient group's root system).
pub fn fusion(sub: &Group, amb: &Group) -> Vec<usize> {
    sub.classes
        .iter()
        .map(|c| {
            let perm = &sub.elements[c.rep as usize];
            let idx = *amb.index.get(perm).expect("subgroup element not in ambient group");
            amb.class_of[idx as usize] as usize
        })
        .collect()
}

/// Induce a class function from `sub` to `amb` given the class [`fusion`].
pub fn induce(
    f: &[i64],
    sub_sizes: &[i64],
    sub_order: i64,
    fus: &[usize],
    amb_sizes: &[i64],
    amb_order: i64,
) -> Vec<i64> {
    let mut out = vec![0i128; amb_sizes.len()];
    for (d, &c) in fus.iter().enumerate() {
        out[c] += sub_sizes[d] as i128 * f[d] as i128;
    }
    (0..amb_sizes.len())
        .map(|c| {
            let num = out[c] * amb_order as i128;
            let den = sub_order as i128 * amb_sizes[c] as i128;
            assert_eq!(num % den, 0, "induced character not integral");
            i64::try_from(num / den).expect("overflow")
        })
        .collect()
}

/// Restrict a class function along the fusion map.
pub fn restrict(f: &[i64], fus: &[usize]) -> Vec<i64> {
    fus.iter().map(|&c| f[c]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{root_system_a, weyl_group};

    #[test]
    fn s4_table_matches_murnaghan_nakayama() {
        let g = weyl_group(root_system_a(4));
        let table = character_table(&g).unwrap();
        table.verify_orthogonality().unwrap();
        let (parts, mn) = sn_character_table_mn(4);
        // Compare as multisets of rows after aligning columns by cycle type.
        // Class of cycle type mu has element order lcm(mu) and size n!/z_mu.
        let mut col_of_mu = Vec::new();
        for mu in &parts {
            let ord = mu.iter().fold(1u32, |l, &m| num_integer::lcm(l, m as u32));
            let size = sn_class_size(4, mu);
            let col = (0..table.num_classes())
                .find(|&c| table.class_orders[c] == ord && table.class_sizes[c] == size)
                .expect("unique class per cycle type in S4");
            col_of_mu.push(col);
        }
        let mut ds_rows: Vec<Vec<i64>> = table.values.clone();
        let mut mn_rows: Vec<Vec<i64>> = mn
            .iter()
            .map(|row| {
                let mut v = vec![0i64; row.len()];
                for (j, &col) in col_of_mu.iter().enumerate() {
                    v[col] = row[j];
                }
                v
            })
            .collect();
        ds_rows.sort();
        mn_rows.sort();
        assert_eq!(ds_rows, mn_rows);
    }

    #[test]
    fn mn_known_values() {
        // chi^{(2,2)} of S4: degree 2; on (2,1,1) it is 0; on (2,2) it is 2.
        assert_eq!(sn_character(&[2, 2], &[1, 1, 1, 1]), 2);
        assert_eq!(sn_character(&[2, 2], &[2, 1, 1]), 0);
        assert_eq!(sn_character(&[2, 2], &[2, 2]), 2);
        assert_eq!(sn_character(&[2, 2], &[3, 1]), -1);
        assert_eq!(sn_character(&[2, 2], &[4]), 0);
        // Sign character.
        assert_eq!(sn_character(&[1, 1, 1, 1], &[4]), -1);
        assert_eq!(sn_character(&[1, 1, 1, 1], &[2, 2]), 1);
    }

    #[test]
    fn carter_labels_for_s3() {
        let g = weyl_group(root_system_a(3));
        let mut table = character_table(&g).unwrap();
        assign_carter_labels(&g, &mut table);
        let mut labels = table.labels.clone();
        labels.sort();
        assert_eq!(labels, vec!["phi{1,0}", "phi{1,3}", "phi{2,1}"]);
    }
}
