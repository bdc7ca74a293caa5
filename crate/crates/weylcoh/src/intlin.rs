//! Exact integer linear algebra: Hermite and Smith normal forms, kernels,
//! saturations and membership tests for sublattices of `Z^n`.
//!
//! Matrices are dense, row-major `i64`. All computations are exact; overflow
//! is a bug, so entries are kept small by construction (the lattices in this
//! crate have rank at most seven and tiny discriminants).

use std::fmt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<i64>,
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.a[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut a = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            a.extend_from_slice(row);
        }
        IMat { rows: r, cols: c, a }
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.a[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [i64] {
        &mut self.a[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(r, k)];
                if v == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] = out[(r, c)]
                        .checked_add(v.checked_mul(other[(k, c)]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        out
    }

    /// Matrix-vector product (vector as column).
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a.checked_mul(*b).expect("overflow"))
                    .fold(0i64, |s, t| s.checked_add(t).expect("overflow"))
            })
            .collect()
    }

    pub fn trace(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IMat::identity(self.rows)
    }

    pub fn neg(&self) -> IMat {
        IMat { rows: self.rows, cols: self.cols, a: self.a.iter().map(|x| -x).collect() }
    }

    /// `self^k` for a square matrix, `k >= 0`.
    pub fn pow(&self, mut k: u64) -> IMat {
        assert_eq!(self.rows, self.cols);
        let mut result = IMat::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<i128> = self.a.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k * n + k] == 0 {
                let swap = (k + 1..n).find(|&r| m[r * n + k] != 0);
                match swap {
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
                    m[i * n + j] = v / prev;
                }
                m[i * n + k] = 0;
            }
            prev = m[k * n + k];
        }
        let d = sign * m[n * n - 1];
        i64::try_from(d).expect("determinant overflow")
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.a[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.a[r * self.cols + c]
    }
}

/// Row-style Hermite normal form of the row span of `m`.
///
/// Returns a matrix whose rows are a canonical basis of the lattice generated
/// by the rows of `m` (zero rows dropped): row-echelon, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IMat) -> IMat {
    let mut rows: Vec<Vec<i64>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    hnf_rows(&mut rows, m.cols);
    IMat::from_rows(&rows)
}

fn hnf_rows(rows: &mut Vec<Vec<i64>>, cols: usize) {
    let mut pivot_row = 0;
    for col in 0..cols {
        // Eliminate column `col` below pivot_row by gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if rows[r][col] != 0 {
                    best = match best {
                        None => Some(r),
                        Some(b) => {
                            if rows[r][col].unsigned_abs() < rows[b][col].unsigned_abs() {
                                Some(r)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            let p = rows[pivot_row][col];
            for r in pivot_row + 1..rows.len() {
                let q = rows[r][col].div_euclid(p);
                if q != 0 {
                    for c in 0..cols {
                        rows[r][c] -= q.checked_mul(rows[pivot_row][c]).expect("overflow");
                    }
                }
                if rows[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && rows[pivot_row][col] != 0 {
            if rows[pivot_row][col] < 0 {
                for c in 0..cols {
                    rows[pivot_row][c] = -rows[pivot_row][c];
                }
            }
            // Reduce entries above the pivot.
            let p = rows[pivot_row][col];
            for r in 0..pivot_row {
                let q = rows[r][col].div_euclid(p);
                if q != 0 {
                    for c in 0..cols {
                        rows[r][c] -= q.checked_mul(rows[pivot_row][c]).expect("overflow");
                    }
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
}

/// Smith normal form: returns `(u, d, v)` with `u * m * v = d`, `u`, `v`
/// unimodular and `d` diagonal with `d[i] | d[i+1]`.
pub fn snf(m: &IMat) -> (IMat, IMat, IMat) {
    let mut d = m.clone();
    let mut u = IMat::identity(m.rows);
    let mut v = IMat::identity(m.cols);
    let rank_bound = m.rows.min(m.cols);
    let mut t = 0;
    while t < rank_bound {
        // Find a nonzero pivot in the remaining block.
        let mut pivot = None;
        'search: for r in t..m.rows {
            for c in t..m.cols {
                if d[(r, c)] != 0 {
                    pivot = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        swap_rows(&mut d, &mut u, t, pr);
        swap_cols(&mut d, &mut v, t, pc);
        loop {
            // Clear column t.
            let mut changed = false;
            for r in t + 1..m.rows {
                while d[(r, t)] != 0 {
                    let q = d[(r, t)].div_euclid(d[(t, t)]);
                    row_sub(&mut d, &mut u, r, t, q);
                    if d[(r, t)] != 0 {
                        swap_rows(&mut d, &mut u, r, t);
                        changed = true;
                    }
                }
            }
            // Clear row t.
            for c in t + 1..m.cols {
                while d[(t, c)] != 0 {
                    let q = d[(t, c)].div_euclid(d[(t, t)]);
                    col_sub(&mut d, &mut v, c, t, q);
                    if d[(t, c)] != 0 {
                        swap_cols(&mut d, &mut v, c, t);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // Ensure divisibility d[t] | all remaining entries.
        let mut fixed = true;
        'div: for r in t + 1..m.rows {
            for c in t + 1..m.cols {
                if d[(r, c)] % d[(t, t)] != 0 {
                    // Add row r to row t and restart this pivot.
                    row_sub(&mut d, &mut u, t, r, -1);
                    fixed = false;
                    break 'div;
                }
            }
        }
        if fixed {
            if d[(t, t)] < 0 {
                for c in 0..m.cols {
                    d[(t, c)] = -d[(t, c)];
                }
                for c in 0..m.rows {
                    u[(t, c)] = -u[(t, c)];
                }
            }
            t += 1;
        }
    }
    (u, d, v)
}

fn swap_rows(d: &mut IMat, u: &mut IMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..d.cols {
        let t = d[(a, c)];
        d[(a, c)] = d[(b, c)];
        d[(b, c)] = t;
    }
    for c in 0..u.cols {
        let t = u[(a, c)];
        u[(a, c)] = u[(b, c)];
        u[(b, c)] = t;
    }
}

fn swap_cols(d: &mut IMat, v: &mut IMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..d.rows {
        let t = d[(r, a)];
        d[(r, a)] = d[(r, b)];
        d[(r, b)] = t;
    }
    for r in 0..v.rows {
        let t = v[(r, a)];
        v[(r, a)] = v[(r, b)];
        v[(r, b)] = t;
    }
}

/// row[a] -= q * row[b]
fn row_sub(d: &mut IMat, u: &mut IMat, a: usize, b: usize, q: i64) {
    for c in 0..d.cols {
        d[(a, c)] -= q.checked_mul(d[(b, c)]).expect("overflow");
    }
    for c in 0..u.cols {
        u[(a, c)] -= q.checked_mul(u[(b, c)]).expect("overflow");
    }
}

/// col[a] -= q * col[b]
fn col_sub(d: &mut IMat, v: &mut IMat, a: usize, b: usize, q: i64) {
    for r in 0..d.rows {
        d[(r, a)] -= q.checked_mul(d[(r, b)]).expect("overflow");
    }
    for r in 0..v.rows {
        v[(r, a)] -= q.checked_mul(v[(r, b)]).expect("overflow");
    }
}

/// Canonical basis (HNF rows) of the saturation of the row span of `m` in
/// `Z^cols`: the largest sublattice with the same rational span.
pub fn saturation(m: &IMat) -> IMat {
    let h = hnf(m);
    if h.rows == 0 {
        return h;
    }
    // Saturation = double orthogonal complement (standard dot product):
    // kernel(h) are the vectors orthogonal to the row span, and the kernel of
    // those constraints is the largest sublattice with the same span.
    let k = kernel(&h);
    if k.rows == 0 {
        // Full rank: saturation is all of Z^cols.
        return IMat::identity(h.cols);
    }
    kernel(&k)
}

/// Canonical basis (HNF rows) of `{x in Z^cols(m) : m_row_i . x = 0}` where
/// the constraints are the ROWS of `m`; i.e. integer kernel of the linear map
/// `x -> m * x`.
pub fn kernel(m: &IMat) -> IMat {
    // Kernel of x -> m x: column operations on m tracked in v: m*v has zero
    // columns exactly where v columns are kernel vectors. Use SNF.
    let (_, d, v) = snf(m);
    let rank = (0..d.rows.min(d.cols)).take_while(|&i| d[(i, i)] != 0).count();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for c in rank..m.cols {
        rows.push((0..m.cols).map(|r| v[(r, c)]).collect());
    }
    let mut rows = rows;
    hnf_rows(&mut rows, m.cols);
    IMat::from_rows(&rows)
}

/// Solve `x * basis = target` over the integers where `basis` rows are
/// echelonized (HNF). Returns the coefficient vector if it exists.
///
/// `basis` need not be square; it must be in row HNF (as produced by [`hnf`]).
pub fn solve_in_hnf(basis: &IMat, target: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(basis.cols, target.len());
    let mut t = target.to_vec();
    let mut coeffs = vec![0i64; basis.rows];
    for r in 0..basis.rows {
        // Pivot column of row r.
        let pc = basis.row(r).iter().position(|&x| x != 0)?;
        let p = basis[(r, pc)];
        if t[pc] % p != 0 {
            // Try continuing: entries before pivot must already be zero.
            return None;
        }
        let q = t[pc] / p;
        coeffs[r] = q;
        if q != 0 {
            for c in 0..basis.cols {
                t[c] -= q.checked_mul(basis[(r, c)]).expect("overflow");
            }
        }
    }
    if t.iter().all(|&x| x == 0) {
        Some(coeffs)
    } else {
        None
    }
}

/// True if `v` lies in the lattice spanned by the HNF `basis` rows.
pub fn in_lattice(basis: &IMat, v: &[i64]) -> bool {
    solve_in_hnf(basis, v).is_some()
}

/// True if every row of `sub` lies in the lattice spanned by HNF `basis`.
pub fn lattice_contains(basis: &IMat, sub: &IMat) -> bool {
    (0..sub.rows).all(|r| in_lattice(basis, sub.row(r)))
}

/// True if `v` lies in the rational span of the HNF `basis` rows.
pub fn in_span(basis: &IMat, v: &[i64]) -> bool {
    // v in span iff rank does not grow.
    let mut rows: Vec<Vec<i64>> = (0..basis.rows).map(|r| basis.row(r).to_vec()).collect();
    rows.push(v.to_vec());
    let mut rows2 = rows.clone();
    hnf_rows(&mut rows2, basis.cols);
    rows2.len() == basis.rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_canonicalizes_row_span() {
        let a = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let h = hnf(&a);
        // Same lattice regardless of generator order/scaling by unimodular ops.
        let b = IMat::from_rows(&[vec![10, 4, 16], vec![2, 4, 4], vec![-6, 6, 12]]);
        assert_eq!(h, hnf(&b));
        for r in 0..a.rows {
            assert!(in_lattice(&h, a.row(r)));
        }
    }

    #[test]
    fn snf_diagonalizes_with_unimodular_transforms() {
        let m = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let (u, d, v) = snf(&m);
        assert_eq!(u.mul(&m).mul(&v), d);
        assert_eq!(u.det().abs(), 1);
        assert_eq!(v.det().abs(), 1);
        let mut prev = d[(0, 0)];
        for i in 1..3 {
            if d[(i, i)] != 0 {
                assert_eq!(d[(i, i)] % prev, 0);
                prev = d[(i, i)];
            }
        }
    }

    #[test]
    fn kernel_and_saturation() {
        // Kernel of (1, 2, 3) in Z^3 has rank 2.
        let m = IMat::from_rows(&[vec![1, 2, 3]]);
        let k = kernel(&m);
        assert_eq!(k.rows, 2);
        for r in 0..2 {
            let dot: i64 = k.row(r).iter().zip([1, 2, 3]).map(|(a, b)| a * b).sum();
            assert_eq!(dot, 0);
        }
        // Saturation of 2*Z x 4*Z diag embedding.
        let m = IMat::from_rows(&[vec![2, 0, 0], vec![0, 4, 0]]);
        let s = saturation(&m);
        assert_eq!(s, IMat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]]));
    }

    #[test]
    fn det_matches_diagonal_product() {
        let m = IMat::from_rows(&[vec![3, 1, 0], vec![0, 2, 5], vec![1, 0, 4]]);
        // Expansion: 3*(8-0) - 1*(0-5) + 0 = 29.
        assert_eq!(m.det(), 29);
    }
}
