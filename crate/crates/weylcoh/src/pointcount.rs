//! Frobenius-twisted point counts of configurations of 5 or 6 points in the
//! projective plane in general position, interpolation to counting
//! polynomials, and conversion to equivariant cohomology via minimal purity.
//!
//! For a permutation σ of the marked points with cycle type λ, a tuple fixed
//! by `F∘σ` decomposes into Frobenius orbits, one per cycle: a cycle of
//! length d contributes a point of `P²(F_{q^d})` of exact degree d whose d
//! Frobenius iterates fill the cycle's slots. The count therefore depends
//! only on the cycle type (which also makes the two possible composition
//! conventions for `Fσ` agree). Two strategies are used:
//!
//! * when at least four slots are rational (fixed by σ), those four points
//!   are normalized to the standard frame, which kills the free `PGL_3(F_q)`
//!   action exactly once per orbit, and completions are enumerated directly;
//! * otherwise ordered tuples are enumerated — one canonical generator per
//!   Frobenius orbit, multiplied back by the orbit length — and the total is
//!   divided by `|PGL_3(F_q)|` with exact divisibility asserted.

use crate::chartab::{partitions, sn_class_size, sn_character, CohomologyTable};
use crate::finitegeom::{
    det3, on_common_conic, pgl3_order, FieldTower, Fel, FiniteGeomError, ProjectivePoint, F_ZERO,
};
use crate::frac::Frac;
use crate::poly::IPoly;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PointCountError {
    #[error("cycle type {0:?} is not a partition of {1}")]
    BadCycleType(Vec<usize>, usize),
    #[error("n must be 5 or 6, got {0}")]
    BadN(usize),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(transparent)]
    Field(#[from] FiniteGeomError),
    #[error("raw count {0} not divisible by |PGL3| = {1}")]
    Divisibility(i64, i64),
    #[error("interpolation needs {0} samples, got {1}")]
    TooFewSamples(usize, usize),
    #[error("interpolated polynomial has a non-integer coefficient")]
    NonIntegerCoefficient,
    #[error("verification sample (q={0}) disagrees: polynomial gives {1}, count is {2}")]
    VerificationMismatch(u64, i64, i64),
    #[error("H^{0} decomposes with a negative or fractional multiplicity")]
    BadMultiplicity(usize),
}

/// One twisted counting problem: `n` marked points, σ of the given cycle
/// type, base field `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedCountTask {
    pub n: usize,
    pub cycle_type: Vec<usize>,
    pub q: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountResult {
    /// Ordered tuples in general position with `P_{σ(i)} = F(P_i)`.
    pub raw: i64,
    /// `PGL_3(F_q)`-orbits of such tuples: `raw / |PGL_3(F_q)|`.
    pub orbits: i64,
}

pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut k = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
    }
    None
}

/// Lexicographically minimal representatives of the cyclic-shift classes of
/// 3-element subsets of `Z/d` (shifting indices modulo d). Collinearity of a
/// Frobenius orbit is shift-invariant, so only these triples need testing.
fn cyclic_triple_reps(d: usize) -> Vec<[usize; 3]> {
    let mut reps = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            for c in b + 1..d {
                let mut minimal = true;
                'shift: for s in 1..d {
                    let mut t = [(a + s) % d, (b + s) % d, (c + s) % d];
                    t.sort_unstable();
                    if t < [a, b, c] {
                        minimal = false;
                        break 'shift;
                    }
                }
                if minimal {
                    reps.push([a, b, c]);
                }
            }
        }
    }
    reps
}

/// Visit every point of `P²` with coordinates in the degree-`d` subfield
/// `F_{q^d}` of the tower, normalized (first nonzero coordinate 1).
fn for_each_subfield_point(f: &FieldTower, d: usize, mut visit: impl FnMut(ProjectivePoint)) {
    let sub_n = f.q.pow(d as u32) - 1;
    let step = f.nn() / sub_n;
    let elem = |k: u64| -> Fel {
        if k == 0 {
            F_ZERO
        } else {
            ((k - 1) * step) as Fel
        }
    };
    let one = f.one();
    for ky in 0..=sub_n {
        let y = elem(ky);
        for kz in 0..=sub_n {
            visit([one, y, elem(kz)]);
        }
    }
    for kz in 0..=sub_n {
        visit([F_ZERO, one, elem(kz)]);
    }
    visit([F_ZERO, F_ZERO, one]);
}

/// Frobenius iterates of a candidate generator. Returns `None` unless the
/// point has exact degree `d` and is the lexicographic minimum of its orbit
/// (the canonical generator).
fn canonical_orbit(f: &FieldTower, pt: ProjectivePoint, d: usize) -> Option<Vec<ProjectivePoint>> {
    let mut orbit = Vec::with_capacity(d);
    orbit.push(pt);
    let mut cur = pt;
    for _ in 1..d {
        cur = [f.frobenius_q(cur[0]), f.frobenius_q(cur[1]), f.frobenius_q(cur[2])];
        if cur == pt || cur < pt {
            return None; // degree < d, or not the canonical generator
        }
        orbit.push(cur);
    }
    Some(orbit)
}

/// Check the incremental general-position constraints when the block `news`
/// is appended to `olds`: distinctness and absence of collinear triples
/// with at least one new point. When `olds` is empty and the block is one
/// Frobenius orbit, only cyclic-shift representative triples are tested.
fn block_in_general_position(
    f: &FieldTower,
    olds: &[ProjectivePoint],
    news: &[ProjectivePoint],
    first_block_reps: Option<&[[usize; 3]]>,
) -> bool {
    let o = olds.len();
    for n1 in news {
        for old in olds {
            if n1 == old {
                return false;
            }
        }
    }
    if o == 0 {
        if let Some(reps) = first_block_reps {
            for &[a, b, c] in reps {
                if det3(f, &news[a], &news[b], &news[c]) == F_ZERO {
                    return false;
                }
            }
            return true;
        }
    }
    // Distinctness inside the block (only needed for multi-point rational
    // blocks; orbit blocks are distinct by exact degree).
    for i in 0..news.len() {
        for j in i + 1..news.len() {
            if news[i] == news[j] {
                return false;
            }
        }
    }
    let all: Vec<&ProjectivePoint> = olds.iter().chain(news.iter()).collect();
    let total = all.len();
    for i in 0..total {
        for j in i + 1..total {
            for k in (j + 1).max(o) ..total {
                if det3(f, all[i], all[j], all[k]) == F_ZERO {
                    return false;
                }
            }
        }
    }
    true
}

/// Sum, over all ways to extend `pts` by one Frobenius orbit per entry of
/// `cycles` (canonical generators only), of 1 per extension in general
/// position; the conic test is applied when the tuple is complete and
/// `check_conic` is set.
fn backtrack(
    f: &FieldTower,
    pts: &mut Vec<ProjectivePoint>,
    cycles: &[usize],
    check_conic: bool,
    total_points: usize,
) -> i64 {
    let Some((&d, rest)) = cycles.split_first() else {
        if check_conic {
            debug_assert_eq!(pts.len(), 6);
            let arr: [ProjectivePoint; 6] = pts[..6].try_into().unwrap();
            return if on_common_conic(f, &arr) { 0 } else { 1 };
        }
        return 1;
    };
    let reps = if pts.is_empty() && d >= 3 { Some(cyclic_triple_reps(d)) } else { None };
    let mut sum = 0i64;
    for_each_subfield_point(f, d, |pt| {
        let news: Vec<ProjectivePoint> = if d == 1 {
            vec![pt]
        } else {
            match canonical_orbit(f, pt, d) {
                Some(orbit) => orbit,
                None => return,
            }
        };
        if !block_in_general_position(f, pts, &news, reps.as_deref()) {
            return;
        }
        let base = pts.len();
        pts.extend_from_slice(&news);
        sum += backtrack(f, pts, rest, check_conic, total_points);
        pts.truncate(base);
    });
    sum
}

/// Count tuples fixed by `F∘σ` in general position. See module docs for the
/// two strategies; both return the raw ordered count and its `PGL_3` orbit
/// count.
pub fn count_fixed(task: &TwistedCountTask) -> Result<CountResult, PointCountError> {
    if task.n != 5 && task.n != 6 {
        return Err(PointCountError::BadN(task.n));
    }
    let mut parts = task.cycle_type.clone();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    if parts.iter().sum::<usize>() != task.n || parts.iter().any(|&d| d == 0) {
        return Err(PointCountError::BadCycleType(task.cycle_type.clone(), task.n));
    }
    let (p, n0) = prime_power(task.q).ok_or(PointCountError::NotPrimePower(task.q))?;
    let l = parts.iter().fold(1usize, |a, &d| num_integer::lcm(a, d));
    let f = FieldTower::make_field(p, n0, l)?;
    let pgl = pgl3_order(task.q);
    let check_conic = task.n == 6;
    let multiplier: i64 = parts.iter().filter(|&&d| d > 1).map(|&d| d as i64).product();
    let ones = parts.iter().filter(|&&d| d == 1).count();

    if ones >= 4 {
        // Normalize four rational slots to the standard frame.
        let one = f.one();
        let frame = [
            [one, F_ZERO, F_ZERO],
            [F_ZERO, one, F_ZERO],
            [F_ZERO, F_ZERO, one],
            [one, one, one],
        ];
        let rest: Vec<usize> = {
            let mut r = parts.clone();
            for _ in 0..4 {
                let pos = r.iter().rposition(|&d| d == 1).unwrap();
                r.remove(pos);
            }
            r
        };
        let mut pts = frame.to_vec();
        let completions = backtrack(&f, &mut pts, &rest, check_conic, task.n);
        let orbits = completions * multiplier;
        Ok(CountResult { raw: orbits.checked_mul(pgl).expect("raw overflow"), orbits })
    } else {
        let mut pts = Vec::new();
        let canonical_sum = backtrack(&f, &mut pts, &parts, check_conic, task.n);
        let raw = canonical_sum.checked_mul(multiplier).expect("raw overflow");
        if raw % pgl != 0 {
            return Err(PointCountError::Divisibility(raw, pgl));
        }
        Ok(CountResult { raw, orbits: raw / pgl })
    }
}

/// The unique monic integer polynomial of degree `dim` through the samples;
/// each sample beyond the first `dim` is used for verification only.
pub fn interpolate(samples: &[(u64, i64)], dim: usize) -> Result<IPoly, PointCountError> {
    if samples.len() < dim.max(1) {
        return Err(PointCountError::TooFewSamples(dim.max(1), samples.len()));
    }
    if dim == 0 {
        // Degenerate case: a constant; the monic convention does not apply.
        let poly = IPoly::constant(samples[0].1);
        for &(q, count) in samples {
            if count != samples[0].1 {
                return Err(PointCountError::VerificationMismatch(q, samples[0].1, count));
            }
        }
        return Ok(poly);
    }
    // Solve for c_0..c_{dim-1} with leading coefficient fixed to 1.
    let mut aug: Vec<Vec<Frac>> = Vec::with_capacity(dim);
    for &(q, count) in samples.iter().take(dim) {
        let mut row: Vec<Frac> = Vec::with_capacity(dim + 1);
        let mut pw = 1i64;
        for _ in 0..dim {
            row.push(Frac::from_int(pw));
            pw = pw.checked_mul(q as i64).expect("overflow");
        }
        // pw is now q^dim.
        row.push(Frac::from_int(count - pw));
        aug.push(row);
    }
    // Gaussian elimination over Q.
    for col in 0..dim {
        let piv = (col..dim)
            .find(|&r| aug[r][col] != Frac::ZERO)
            .expect("degenerate interpolation system (duplicate q?)");
        aug.swap(col, piv);
        let inv = Frac::ONE / aug[col][col];
        for c in col..=dim {
            aug[col][c] = aug[col][c] * inv;
        }
        for r in 0..dim {
            if r != col && aug[r][col] != Frac::ZERO {
                let factor = aug[r][col];
                for c in col..=dim {
                    let sub = factor * aug[col][c];
                    aug[r][c] = aug[r][c] - sub;
                }
            }
        }
    }
    let mut coeffs = Vec::with_capacity(dim + 1);
    for r in 0..dim {
        coeffs.push(aug[r][dim].as_integer().ok_or(PointCountError::NonIntegerCoefficient)?);
    }
    coeffs.push(1);
    let poly = IPoly::from_coeffs(coeffs);
    for &(q, count) in samples {
        let v = poly.eval(q as i64);
        if v != count {
            return Err(PointCountError::VerificationMismatch(q, v, count));
        }
    }
    Ok(poly)
}

/// Counting polynomials for every cycle type of `S_n`, indexed like
/// [`partitions`]`(n)`. Mandatory samples `q ∈ {2,3,4,5}`; a `q = 7`
/// verification sample is added for the cheap frame-normalized types.
pub fn counting_polynomials(n: usize) -> Result<Vec<IPoly>, PointCountError> {
    let dim = if n == 5 { 2 } else { 4 };
    let mut out = Vec::new();
    for mu in partitions(n) {
        let ones = mu.iter().filter(|&&d| d == 1).count();
        let mut qs: Vec<u64> = vec![2, 3, 4, 5];
        if ones >= 4 {
            qs.push(7);
        }
        let mut samples = Vec::new();
        for q in qs {
            let r = count_fixed(&TwistedCountTask { n, cycle_type: mu.clone(), q })?;
            samples.push((q, r.orbits));
        }
        out.push(interpolate(&samples, dim)?);
    }
    Ok(out)
}

/// Convert counting polynomials (one per cycle type, indexed like
/// [`partitions`]`(n)`) into the table of `H^0..H^dim` as `S_n`
/// representations, using minimal purity:
/// `Tr(σ, H^i) = (−1)^{dim−i} · [q^{dim−i}]`.
pub fn counts_to_cohomology(
    n: usize,
    polys: &[IPoly],
    dim: usize,
) -> Result<CohomologyTable, PointCountError> {
    let parts = partitions(n);
    assert_eq!(polys.len(), parts.len());
    let sizes: Vec<i64> = parts.iter().map(|mu| sn_class_size(n, mu)).collect();
    let order: i64 = (1..=n as i64).product();
    let labels: Vec<String> = parts.iter().map(|lam| partition_label(lam)).collect();
    let mut rows = Vec::with_capacity(dim + 1);
    for i in 0..=dim {
        let sign = if (dim - i) % 2 == 0 { 1 } else { -1 };
        let traces: Vec<i64> = polys.iter().map(|p| sign * p.coeff(dim - i)).collect();
        // Multiplicity of s_lambda: (1/n!) sum_mu |C_mu| tr(mu) chi_lambda(mu)
        // (S_n classes are self-inverse).
        let mut mults = Vec::with_capacity(parts.len());
        for lam in &parts {
            let mut s: i128 = 0;
            for (j, mu) in parts.iter().enumerate() {
                s += sizes[j] as i128 * traces[j] as i128 * sn_character(lam, mu) as i128;
            }
            if s % order as i128 != 0 || s < 0 {
                return Err(PointCountError::BadMultiplicity(i));
            }
            mults.push((s / order as i128) as i64);
        }
        rows.push(mults);
    }
    Ok(CohomologyTable { irrep_labels: labels, rows })
}

/// Label like `s_{3,2,1}` for the irreducible of `S_n` attached to a
/// partition.
pub fn partition_label(lambda: &[usize]) -> String {
    let parts: Vec<String> = lambda.iter().map(|p| p.to_string()).collect();
    format!("s_{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, ct: &[usize], q: u64) -> i64 {
        count_fixed(&TwistedCountTask { n, cycle_type: ct.to_vec(), q }).unwrap().orbits
    }

    #[test]
    fn five_point_counts_small_q() {
        // Against the S5 counting polynomials at q = 2 and 3.
        for q in [2u64, 3] {
            let qi = q as i64;
            assert_eq!(count(5, &[5], q), qi * qi + 1);
            assert_eq!(count(5, &[4, 1], q), qi * qi + qi);
            assert_eq!(count(5, &[3, 2], q), qi * qi - qi);
            assert_eq!(count(5, &[3, 1, 1], q), qi * qi + qi);
            assert_eq!(count(5, &[2, 2, 1], q), qi * qi - qi - 2);
            assert_eq!(count(5, &[2, 1, 1, 1], q), qi * qi - qi);
            assert_eq!(count(5, &[1, 1, 1, 1, 1], q), qi * qi - 5 * qi + 6);
        }
    }

    #[test]
    fn six_point_counts_q2() {
        assert_eq!(count(6, &[6], 2), 8);
        assert_eq!(count(6, &[5, 1], 2), 20);
        assert_eq!(count(6, &[2, 2, 1, 1], 2), 0);
        assert_eq!(count(6, &[1; 6], 2), 16 - 15 * 8 + 81 * 4 - 185 * 2 + 150);
        assert_eq!(count(6, &[3, 3], 2), 16 - 3 * 8 - 2 * 2 + 12);
        assert_eq!(count(6, &[2, 1, 1, 1, 1], 2), 16 - 5 * 8 + 9 * 4 - 5 * 2);
    }

    #[test]
    fn raw_counts_divisible_by_pgl3() {
        for ct in [vec![3, 2], vec![2, 2, 1], vec![5]] {
            for q in [2u64, 3] {
                let r = count_fixed(&TwistedCountTask { n: 5, cycle_type: ct.clone(), q }).unwrap();
                assert_eq!(r.raw, r.orbits * pgl3_order(q));
            }
        }
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        // 5-cycle: q² + 1 from three samples.
        let p = interpolate(&[(2, 5), (3, 10), (4, 17)], 2).unwrap();
        assert_eq!(p, IPoly::from_coeffs(vec![1, 0, 1]));
        // Constant case.
        let c = interpolate(&[(2, 9), (3, 9)], 0).unwrap();
        assert_eq!(c, IPoly::from_coeffs(vec![9]));
        // Verification sample mismatch is an error.
        assert!(matches!(
            interpolate(&[(2, 5), (3, 10), (4, 18)], 2),
            Err(PointCountError::VerificationMismatch(4, 17, 18))
        ));
    }

    #[test]
    fn s5_cohomology_table() {
        // Full S5 pipeline: counts at q ∈ {2,3,4,5(,7)} → polynomials → Table
        // of H^i as S5 representations.
        let polys = counting_polynomials(5).unwrap();
        let parts = partitions(5);
        // Counting polynomials match the published S5 table.
        let expect: Vec<(Vec<usize>, Vec<i64>)> = vec![
            (vec![5], vec![1, 0, 1]),
            (vec![4, 1], vec![0, 1, 1]),
            (vec![3, 2], vec![0, -1, 1]),
            (vec![3, 1, 1], vec![0, 1, 1]),
            (vec![2, 2, 1], vec![-2, -1, 1]),
            (vec![2, 1, 1, 1], vec![0, -1, 1]),
            (vec![1, 1, 1, 1, 1], vec![6, -5, 1]),
        ];
        for (mu, coeffs) in expect {
            let idx = parts.iter().position(|m| *m == mu).unwrap();
            assert_eq!(polys[idx], IPoly::from_coeffs(coeffs), "cycle type {mu:?}");
        }
        let table = counts_to_cohomology(5, &polys, 2).unwrap();
        // H^0 = trivial, H^1 = s_{3,2}, H^2 = s_{3,1,1}.
        let col = |lab: &str| table.irrep_labels.iter().position(|l| l == lab).unwrap();
        let unit = |lab: &str| {
            let mut v = vec![0i64; table.irrep_labels.len()];
            v[col(lab)] = 1;
            v
        };
        assert_eq!(table.rows[0], unit("s_{5}"));
        assert_eq!(table.rows[1], unit("s_{3,2}"));
        assert_eq!(table.rows[2], unit("s_{3,1,1}"));
    }

    #[test]
    fn cyclic_triple_reps_cover_all_triples() {
        for d in 3..=6 {
            let reps = cyclic_triple_reps(d);
            // Every 3-subset is a shift of exactly one representative.
            let mut seen = std::collections::HashSet::new();
            for &[a, b, c] in &reps {
                for s in 0..d {
                    let mut t = [(a + s) % d, (b + s) % d, (c + s) % d];
                    t.sort_unstable();
                    seen.insert(t);
                }
            }
            let total = d * (d - 1) * (d - 2) / 6;
            assert_eq!(seen.len(), total);
        }
    }
}
