//! Finite fields, the projective plane, and general-position predicates.
//!
//! A [`FieldTower`] models `F_p ⊂ F_q ⊂ F_{q^m}` with `q = p^n`; one tower is
//! alive per counting task. Elements of the top field are stored as discrete
//! logarithms with respect to a fixed primitive element (zero is a sentinel),
//! so multiplication is exponent addition and addition goes through a
//! precomputed Zech-logarithm table. All arithmetic is exact.

use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FiniteGeomError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {0} exceeds the configured bound {1}")]
    TooLarge(u64, u64),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("general position is defined for at most 6 points, got {0}")]
    TooManyPoints(usize),
}

/// Element of the top field: `F_ZERO` for zero, otherwise the discrete log
/// (exponent of the primitive element), in `0..order-1`.
pub type Fel = u32;
pub const F_ZERO: Fel = u32::MAX;

/// Largest supported top-field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// `F_p ⊂ F_q ⊂ F_{q^m}` with `q = p^n`, top field of size `p^{nm}`.
#[derive(Debug, Clone)]
pub struct FieldTower {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    /// Monic irreducible modulus of degree `n·m` over `F_p` (coefficients
    /// from constant term up, leading 1 included).
    pub modulus: Vec<u64>,
    /// `q = p^n`: the base field of the counting problem.
    pub q: u64,
    /// `p^{nm}`: size of the top field.
    pub order: u64,
    /// `zech[k] = log(1 + g^k)`, `F_ZERO` when `1 + g^k = 0`.
    zech: Vec<Fel>,
    /// `coords[k]` = coefficients of `g^k` in the polynomial basis
    /// `1, x, …, x^{nm-1}` (little-endian, padded to length `nm`).
    coords: Vec<Vec<u64>>,
    /// Discrete log keyed by the packed polynomial coordinates.
    log: HashMap<u64, Fel>,
}

// --- dense polynomial helpers over F_p (little-endian coefficients) -------

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, f, p);
    prod
}

fn poly_rem(a: &mut Vec<u64>, f: &[u64], p: u64) {
    let d = f.len() - 1; // f monic of degree d
    while a.len() > d {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - d;
        if lead != 0 {
            for i in 0..=d {
                let sub = lead * f[i] % p;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
        a.pop();
    }
    poly_trim(a);
}

fn poly_powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = a.to_vec();
    poly_trim(&mut base);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // a mod b with b made monic on the fly.
        let lead_inv = mod_inv(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| c * lead_inv % p).collect();
        poly_rem(&mut a, &monic, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat.
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    // x^{p^k} mod f computed iteratively.
    let x = vec![0, 1];
    let mut t = x.clone();
    let mut frobs = vec![t.clone()]; // frobs[k] = x^{p^k} for k = 0..
    for _ in 0..d {
        t = poly_powmod(&t, p, f, p);
        frobs.push(t.clone());
    }
    let mut top = frobs[d].clone();
    // x^{p^d} - x must be 0 mod f.
    if top.len() < 2 {
        top.resize(2, 0);
    }
    top[1] = (top[1] + p - 1) % p;
    poly_trim(&mut top);
    if !top.is_empty() {
        return false;
    }
    for r in prime_factors(d as u64) {
        let k = d / r as usize;
        let mut g = frobs[k].clone();
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        poly_trim(&mut g);
        let gcd = poly_gcd(g, f.to_vec(), p);
        if gcd.len() != 1 {
            return false;
        }
    }
    true
}

fn pack(a: &[u64], p: u64, deg: usize) -> u64 {
    let mut key = 0u64;
    for i in (0..deg).rev() {
        key = key * p + a.get(i).copied().unwrap_or(0);
    }
    key
}

impl FieldTower {
    pub fn make_field(p: u64, n: usize, m: usize) -> Result<FieldTower, FiniteGeomError> {
        if p < 2 || prime_factors(p) != vec![p] {
            return Err(FiniteGeomError::NotPrime(p));
        }
        if n * m == 0 {
            return Err(FiniteGeomError::ZeroDegree);
        }
        let d = n * m;
        let mut order = 1u64;
        for _ in 0..d {
            order = order.saturating_mul(p);
            if order > MAX_FIELD_SIZE {
                return Err(FiniteGeomError::TooLarge(order, MAX_FIELD_SIZE));
            }
        }
        // First irreducible monic polynomial of degree d in counting order.
        let modulus = 'search: {
            if d == 1 {
                break 'search vec![0, 1]; // x itself
            }
            let mut lower = vec![0u64; d];
            loop {
                let mut f: Vec<u64> = lower.clone();
                f.push(1);
                if is_irreducible(&f, p) {
                    break 'search f;
                }
                // increment the lower coefficients in base p
                let mut i = 0;
                loop {
                    lower[i] += 1;
                    if lower[i] < p {
                        break;
                    }
                    lower[i] = 0;
                    i += 1;
                    assert!(i < d, "no irreducible polynomial found");
                }
            }
        };

        // Primitive element: first polynomial (in counting order) of full
        // multiplicative order.
        let nn = order - 1;
        let factors = prime_factors(nn);
        let mut g = vec![0u64; d.max(1)];
        let generator = 'outer: loop {
            // increment g in base p
            let mut i = 0;
            loop {
                g[i] += 1;
                if g[i] < p {
                    break;
                }
                g[i] = 0;
                i += 1;
                assert!(i < d.max(1), "no primitive element found");
            }
            for &r in &factors {
                let pw = poly_powmod(&g, nn / r, &modulus, p);
                if pw == vec![1] {
                    continue 'outer;
                }
            }
            break g.clone();
        };

        // exp table and discrete logs, then the Zech table.
        let mut log = HashMap::with_capacity(nn as usize);
        let mut exp_packed = Vec::with_capacity(nn as usize);
        let mut cur = vec![1u64];
        for k in 0..nn {
            let key = pack(&cur, p, d);
            exp_packed.push(cur.clone());
            let prev = log.insert(key, k as Fel);
            assert!(prev.is_none(), "generator order too small");
            cur = poly_mulmod(&cur, &generator, &modulus, p);
        }
        assert_eq!(cur, vec![1], "generator order mismatch");
        let mut zech = vec![F_ZERO; nn as usize];
        for k in 0..nn as usize {
            let mut s = exp_packed[k].clone();
            if s.is_empty() {
                s.push(0);
            }
            s[0] = (s[0] + 1) % p;
            poly_trim(&mut s);
            if s.is_empty() {
                zech[k] = F_ZERO;
            } else {
                zech[k] = log[&pack(&s, p, d)];
            }
        }

        let q = p.pow(n as u32);
        let coords: Vec<Vec<u64>> = exp_packed
            .into_iter()
            .map(|mut c| {
                c.resize(d, 0);
                c
            })
            .collect();
        Ok(FieldTower { p, n, m, modulus, q, order, zech, coords, log })
    }

    /// Coefficients of `a` in the polynomial basis `1, x, …, x^{nm-1}`.
    pub fn coords_of(&self, a: Fel) -> Vec<u64> {
        if a == F_ZERO {
            vec![0; self.n * self.m]
        } else {
            self.coords[a as usize].clone()
        }
    }

    /// Inverse of [`coords_of`](Self::coords_of).
    pub fn element_from_coords(&self, c: &[u64]) -> Fel {
        if c.iter().all(|&x| x == 0) {
            return F_ZERO;
        }
        self.log[&pack(c, self.p, self.n * self.m)]
    }

    /// Multiplicative group order of the top field.
    #[inline]
    pub fn nn(&self) -> u64 {
        self.order - 1
    }

    #[inline]
    pub fn zero(&self) -> Fel {
        F_ZERO
    }

    #[inline]
    pub fn one(&self) -> Fel {
        0
    }

    /// The fixed primitive element.
    #[inline]
    pub fn generator(&self) -> Fel {
        1 % self.nn() as Fel
    }

    #[inline]
    pub fn is_zero(&self, a: Fel) -> bool {
        a == F_ZERO
    }

    #[inline]
    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        if a == F_ZERO || b == F_ZERO {
            return F_ZERO;
        }
        let s = a as u64 + b as u64;
        let n = self.nn();
        (if s >= n { s - n } else { s }) as Fel
    }

    #[inline]
    pub fn inv(&self, a: Fel) -> Fel {
        assert_ne!(a, F_ZERO, "inverse of zero");
        if a == 0 {
            0
        } else {
            (self.nn() - a as u64) as Fel
        }
    }

    #[inline]
    pub fn div(&self, a: Fel, b: Fel) -> Fel {
        self.mul(a, self.inv(b))
    }

    #[inline]
    pub fn neg(&self, a: Fel) -> Fel {
        if a == F_ZERO || self.p == 2 {
            return a;
        }
        // -1 = g^{N/2} for odd characteristic.
        self.mul(a, (self.nn() / 2) as Fel)
    }

    #[inline]
    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        if a == F_ZERO {
            return b;
        }
        if b == F_ZERO {
            return a;
        }
        // g^a + g^b = g^a (1 + g^{b-a}).
        let n = self.nn();
        let d = (b as u64 + n - a as u64) % n;
        let z = self.zech[d as usize];
        if z == F_ZERO {
            F_ZERO
        } else {
            self.mul(a, z)
        }
    }

    #[inline]
    pub fn sub(&self, a: Fel, b: Fel) -> Fel {
        self.add(a, self.neg(b))
    }

    /// `x ↦ x^q`, the Frobenius of the base field `F_q`.
    #[inline]
    pub fn frobenius_q(&self, a: Fel) -> Fel {
        if a == F_ZERO {
            return F_ZERO;
        }
        ((a as u64 * self.q) % self.nn()) as Fel
    }

    /// Does `a` lie in the intermediate field `F_{q^d}`?
    #[inline]
    pub fn in_subfield(&self, a: Fel, d: usize) -> bool {
        if a == F_ZERO {
            return true;
        }
        let sub = self.q.pow(d as u32) - 1;
        (a as u64 * sub) % self.nn() == 0
    }

    /// All elements of the top field (zero first, then powers of `g`).
    pub fn elements(&self) -> impl Iterator<Item = Fel> + '_ {
        std::iter::once(F_ZERO).chain(0..self.nn() as Fel)
    }

    pub fn pow(&self, a: Fel, e: u64) -> Fel {
        if a == F_ZERO {
            return if e == 0 { 0 } else { F_ZERO };
        }
        ((a as u64 % self.nn()) * (e % self.nn()) % self.nn()) as Fel
    }
}

/// A point of `P²` over the top field, normalized so the first nonzero
/// coordinate is 1.
pub type ProjectivePoint = [Fel; 3];

/// Normalize a coordinate triple; panics on the zero triple.
pub fn normalize(f: &FieldTower, v: [Fel; 3]) -> ProjectivePoint {
    let lead = v.iter().position(|&c| c != F_ZERO).expect("zero vector has no projective class");
    let inv = f.inv(v[lead]);
    [f.mul(v[0], inv), f.mul(v[1], inv), f.mul(v[2], inv)]
}

/// Coordinate-wise Frobenius; preserves normalization.
pub fn frobenius_point(f: &FieldTower, pt: &ProjectivePoint) -> ProjectivePoint {
    [f.frobenius_q(pt[0]), f.frobenius_q(pt[1]), f.frobenius_q(pt[2])]
}

/// All points of `P²` over the top field, normalized.
pub fn all_projective_points(f: &FieldTower) -> Vec<ProjectivePoint> {
    let mut out = Vec::new();
    let els: Vec<Fel> = f.elements().collect();
    for &y in &els {
        for &z in &els {
            out.push([0, y, z]);
        }
    }
    for &z in &els {
        out.push([F_ZERO, 0, z]);
    }
    out.push([F_ZERO, F_ZERO, 0]);
    out
}

/// 3×3 determinant over the tower.
pub fn det3(f: &FieldTower, a: &ProjectivePoint, b: &ProjectivePoint, c: &ProjectivePoint) -> Fel {
    let m01 = f.sub(f.mul(b[1], c[2]), f.mul(b[2], c[1]));
    let m11 = f.sub(f.mul(b[0], c[2]), f.mul(b[2], c[0]));
    let m21 = f.sub(f.mul(b[0], c[1]), f.mul(b[1], c[0]));
    f.add(f.sub(f.mul(a[0], m01), f.mul(a[1], m11)), f.mul(a[2], m21))
}

/// Are three points collinear?
#[inline]
pub fn collinear(f: &FieldTower, a: &ProjectivePoint, b: &ProjectivePoint, c: &ProjectivePoint) -> bool {
    det3(f, a, b, c) == F_ZERO
}

/// 6×6 determinant of the quadric monomial vectors (x², y², z², xy, xz, yz):
/// zero iff the six points lie on a common conic.
pub fn on_common_conic(f: &FieldTower, pts: &[ProjectivePoint; 6]) -> bool {
    let mut m = [[F_ZERO; 6]; 6];
    for (r, p) in pts.iter().enumerate() {
        let (x, y, z) = (p[0], p[1], p[2]);
        m[r] = [
            f.mul(x, x),
            f.mul(y, y),
            f.mul(z, z),
            f.mul(x, y),
            f.mul(x, z),
            f.mul(y, z),
        ];
    }
    det_n(f, &mut m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()) == F_ZERO
}

/// Determinant by Gaussian elimination over the tower.
pub fn det_n(f: &FieldTower, m: &mut [Vec<Fel>]) -> Fel {
    let n = m.len();
    let mut det = f.one();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != F_ZERO);
        let Some(piv) = piv else { return F_ZERO };
        if piv != col {
            m.swap(col, piv);
            det = f.neg(det);
        }
        det = f.mul(det, m[col][col]);
        let inv = f.inv(m[col][col]);
        for r in col + 1..n {
            if m[r][col] != F_ZERO {
                let factor = f.mul(m[r][col], inv);
                for c in col..n {
                    let sub = f.mul(factor, m[col][c]);
                    m[r][c] = f.sub(m[r][c], sub);
                }
            }
        }
    }
    det
}

/// General position: pairwise distinct, no three collinear, and — with
/// `check_conic` and exactly six points — not all on one conic.
pub fn general_position(
    f: &FieldTower,
    points: &[ProjectivePoint],
    check_conic: bool,
) -> Result<bool, FiniteGeomError> {
    let n = points.len();
    if n > 6 {
        return Err(FiniteGeomError::TooManyPoints(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Ok(false);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear(f, &points[i], &points[j], &points[k]) {
                    return Ok(false);
                }
            }
        }
    }
    if check_conic && n == 6 {
        let arr: [ProjectivePoint; 6] = points.try_into().unwrap();
        if on_common_conic(f, &arr) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|PGL3(F_q)| = (q²+q+1)(q³−q)(q³−q²)`.
pub fn pgl3_order(q: u64) -> i64 {
    assert!(q >= 2, "q must be a prime power >= 2");
    let q = q as i64;
    (q * q + q + 1) * (q * q * q - q) * (q * q * q - q * q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_field_structure() {
        // F_4: every nonzero x has x^3 = 1.
        let f = FieldTower::make_field(2, 2, 1).unwrap();
        assert_eq!(f.order, 4);
        for a in 0..f.nn() as Fel {
            let cube = f.mul(f.mul(a, a), a);
            assert_eq!(cube, f.one());
        }
    }

    #[test]
    fn field_axioms_sampled() {
        for (p, n, m) in [(2, 1, 6), (3, 1, 4), (2, 2, 3), (5, 1, 4), (7, 1, 2)] {
            let f = FieldTower::make_field(p, n, m).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let sample = |rng: &mut ChaCha8Rng| -> Fel {
                let k = rng.gen_range(0..f.order);
                if k == 0 {
                    F_ZERO
                } else {
                    (k - 1) as Fel
                }
            };
            for _ in 0..200 {
                let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.sub(a, a), F_ZERO);
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, f.inv(a)), f.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_has_order_m() {
        let f = FieldTower::make_field(2, 2, 3).unwrap(); // F_4 ⊂ F_64
        let g = f.generator();
        let mut x = g;
        for _ in 0..f.m {
            x = f.frobenius_q(x);
        }
        assert_eq!(x, g);
        let mut y = g;
        for step in 1..f.m {
            y = f.frobenius_q(y);
            assert_ne!(y, g, "frobenius had order {step} < m on a generator");
        }
    }

    #[test]
    fn projective_plane_sizes() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FieldTower::make_field(p, n, 1).unwrap();
            let q = f.q as usize;
            let pts = all_projective_points(&f);
            assert_eq!(pts.len(), q * q + q + 1);
            let mut uniq = pts.clone();
            uniq.sort();
            uniq.dedup();
            assert_eq!(uniq.len(), pts.len());
        }
    }

    #[test]
    fn standard_frame_in_general_position() {
        let f = FieldTower::make_field(5, 1, 1).unwrap();
        let one = f.one();
        let frame: Vec<ProjectivePoint> = vec![
            [one, F_ZERO, F_ZERO],
            [F_ZERO, one, F_ZERO],
            [F_ZERO, F_ZERO, one],
            [one, one, one],
        ];
        assert!(general_position(&f, &frame, false).unwrap());
        let collinear_trio: Vec<ProjectivePoint> = vec![
            [one, F_ZERO, F_ZERO],
            [F_ZERO, one, F_ZERO],
            [one, one, F_ZERO],
        ];
        assert!(!general_position(&f, &collinear_trio, false).unwrap());
    }

    #[test]
    fn conic_detection_over_f7() {
        // Parametrize the conic xz = y² by t ↦ [1 : t : t²].
        let f = FieldTower::make_field(7, 1, 1).unwrap();
        let ts: Vec<Fel> = (0..6).collect();
        let pts: Vec<ProjectivePoint> =
            ts.iter().map(|&t| normalize(&f, [f.one(), t, f.mul(t, t)])).collect();
        assert!(!general_position(&f, &pts, true).unwrap());
        assert!(general_position(&f, &pts, false).unwrap());
    }

    #[test]
    fn general_position_pgl_and_frobenius_invariant() {
        let f = FieldTower::make_field(3, 1, 2).unwrap();
        let pts = all_projective_points(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            // Random 5-point configuration over F_9.
            let config: Vec<ProjectivePoint> =
                (0..5).map(|_| pts[rng.gen_range(0..pts.len())]).collect();
            let gp = general_position(&f, &config, false).unwrap();
            // Frobenius image.
            let frob: Vec<ProjectivePoint> = config.iter().map(|p| frobenius_point(&f, p)).collect();
            assert_eq!(general_position(&f, &frob, false).unwrap(), gp);
            // Random invertible matrix over the base field F_3.
            loop {
                let m: Vec<Vec<Fel>> = (0..3)
                    .map(|_| {
                        (0..3)
                            .map(|_| {
                                let k = rng.gen_range(0..3u64);
                                if k == 0 {
                                    F_ZERO
                                } else {
                                    // elements of F_3 inside F_9: exponents multiple of (9-1)/(3-1)=4
                                    ((k - 1) * 4) as Fel
                                }
                            })
                            .collect()
                    })
                    .collect();
                if det_n(&f, &mut m.clone()) == F_ZERO {
                    continue;
                }
                let moved: Vec<ProjectivePoint> = config
                    .iter()
                    .map(|p| {
                        let v: Vec<Fel> = (0..3)
                            .map(|r| {
                                let mut s = F_ZERO;
                                for c in 0..3 {
                                    s = f.add(s, f.mul(m[r][c], p[c]));
                                }
                                s
                            })
                            .collect();
                        normalize(&f, [v[0], v[1], v[2]])
                    })
                    .collect();
                assert_eq!(general_position(&f, &moved, false).unwrap(), gp);
                break;
            }
        }
    }

    #[test]
    fn pgl3_orders() {
        assert_eq!(pgl3_order(2), 168);
        assert_eq!(pgl3_order(3), 5616);
        assert_eq!(pgl3_order(5), (25 + 5 + 1) * (125 - 5) * (125 - 25));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldTower::make_field(4, 1, 1), Err(FiniteGeomError::NotPrime(4))));
        assert!(matches!(FieldTower::make_field(2, 0, 3), Err(FiniteGeomError::ZeroDegree)));
        assert!(matches!(FieldTower::make_field(2, 21, 1), Err(FiniteGeomError::TooLarge(_, _))));
        assert!(matches!(
            general_position(&FieldTower::make_field(2, 1, 1).unwrap(), &[[0, 0, 0]; 7], false),
            Err(FiniteGeomError::TooManyPoints(7))
        ));
    }
}
