//! Integer polynomials in one variable, used both for point-count
//! polynomials in `q` and for (compactly supported) Poincaré polynomials
//! in `t`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Dense integer polynomial; `coeffs[i]` is the coefficient of `x^i`.
/// Invariant: no trailing zero coefficient (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IPoly {
    coeffs: Vec<i64>,
}

impl IPoly {
    pub fn zero() -> IPoly {
        IPoly { coeffs: vec![] }
    }

    pub fn constant(c: i64) -> IPoly {
        IPoly::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: i64, k: usize) -> IPoly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        IPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> IPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> i64 {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x as i128).and_then(|a| a.checked_add(c as i128)).expect("overflow");
        }
        i64::try_from(acc).expect("overflow")
    }

    /// Exact division, panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &IPoly) -> IPoly {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = div.coeffs.len() - 1;
        let lead = div.coeffs[dd];
        if rem.len() < div.coeffs.len() {
            assert!(self.is_zero(), "inexact polynomial division");
            return IPoly::zero();
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd];
            assert_eq!(c % lead, 0, "inexact polynomial division");
            let q = c / lead;
            quot[k] = q;
            if q != 0 {
                for (i, &dc) in div.coeffs.iter().enumerate() {
                    rem[k + i] -= q.checked_mul(dc).expect("overflow");
                }
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
        IPoly::from_coeffs(quot)
    }

    /// Exact division returning `None` on a nonzero remainder.
    pub fn try_div_exact(&self, div: &IPoly) -> Option<IPoly> {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IPoly::zero());
        }
        let dd = div.coeffs.len() - 1;
        let lead = div.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() < div.coeffs.len() {
            return None;
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd];
            if c % lead != 0 {
                return None;
            }
            let q = c / lead;
            quot[k] = q;
            if q != 0 {
                for (i, &dc) in div.coeffs.iter().enumerate() {
                    rem[k + i] -= q.checked_mul(dc).expect("overflow");
                }
            }
        }
        rem.iter().all(|&c| c == 0).then(|| IPoly::from_coeffs(quot))
    }

    /// Evaluate `sum_k (-1)^k c_k q^(k - shift)`, asserting exact division by
    /// `q^shift`. This is the signed (Lefschetz) specialization of a
    /// compact-support Poincaré polynomial.
    pub fn signed_eval_shifted(&self, q: i64, shift: usize) -> i64 {
        let mut acc: i128 = 0;
        let mut qe: i128 = 1;
        let qq = q as i128;
        // Terms below the shift must vanish identically.
        for k in 0..self.coeffs.len() {
            let c = self.coeff(k) as i128;
            if k < shift {
                assert_eq!(c, 0, "nonzero coefficient below shift");
                continue;
            }
            let signed = if k % 2 == 0 { c } else { -c };
            acc += signed * qe;
            qe = qe.checked_mul(qq).expect("overflow");
        }
        i64::try_from(acc).expect("overflow")
    }
}

impl fmt::Debug for IPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &IPoly {
    type Output = IPoly;
    fn add(self, o: &IPoly) -> IPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IPoly::from_coeffs((0..n).map(|k| self.coeff(k).checked_add(o.coeff(k)).expect("overflow")).collect())
    }
}

impl AddAssign<&IPoly> for IPoly {
    fn add_assign(&mut self, o: &IPoly) {
        *self = &*self + o;
    }
}

impl AddAssign<IPoly> for IPoly {
    fn add_assign(&mut self, o: IPoly) {
        *self = &*self + &o;
    }
}

impl Sub for &IPoly {
    type Output = IPoly;
    fn sub(self, o: &IPoly) -> IPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IPoly::from_coeffs((0..n).map(|k| self.coeff(k).checked_sub(o.coeff(k)).expect("overflow")).collect())
    }
}

impl Neg for &IPoly {
    type Output = IPoly;
    fn neg(self) -> IPoly {
        IPoly::from_coeffs(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &IPoly {
    type Output = IPoly;
    fn mul(self, o: &IPoly) -> IPoly {
        if self.is_zero() || o.is_zero() {
            return IPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].checked_add(a.checked_mul(b).expect("overflow")).expect("overflow");
            }
        }
        IPoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_recovers_factor() {
        // t^4 + 3t^3 + 2t^2 divided by t^2 + t (projectivization divisor).
        let p = IPoly::from_coeffs(vec![0, 0, 2, 3, 1]);
        let d = IPoly::from_coeffs(vec![0, 1, 1]);
        let q = p.div_exact(&d);
        assert_eq!(&q * &d, p);
        assert_eq!(q, IPoly::from_coeffs(vec![0, 2, 1]));
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        let p = IPoly::from_coeffs(vec![1, 0, 1]);
        let d = IPoly::from_coeffs(vec![0, 1]);
        let _ = p.div_exact(&d);
    }

    #[test]
    fn signed_eval_applies_lefschetz_signs() {
        // P = t^4 + 5t^3 + 6t^2 over a 2-torus: q^2 - 5q + 6 points.
        let p = IPoly::from_coeffs(vec![0, 0, 6, 5, 1]);
        assert_eq!(p.signed_eval_shifted(3, 2), 0);
        assert_eq!(p.signed_eval_shifted(4, 2), 2);
        assert_eq!(p.signed_eval_shifted(5, 2), 6);
    }
}
