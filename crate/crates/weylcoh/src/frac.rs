//! A minimal exact rational number on `i128`, used for character inner
//! products, symmetric-power recurrences and torsion character labels.
//!
//! Values stay tiny (denominators divide group orders or lattice torsion),
//! so `i128` headroom is ample and overflow panics are a correctness net.

use num_integer::Integer;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac {
    num: i128,
    den: i128, // always > 0, gcd(num, den) == 1
}

impl Frac {
    pub const ZERO: Frac = Frac { num: 0, den: 1 };
    pub const ONE: Frac = Frac { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Frac {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Frac { num: n, den: d }
    }

    pub fn from_int(n: i64) -> Frac {
        Frac { num: n as i128, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn as_integer(&self) -> Option<i64> {
        if self.den == 1 {
            i64::try_from(self.num).ok()
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Reduce modulo 1 into `[0, 1)`; used for torsion character labels.
    pub fn mod1(&self) -> Frac {
        let r = self.num.rem_euclid(self.den);
        Frac::new(r, self.den)
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for Frac {
    type Output = Frac;
    fn add(self, o: Frac) -> Frac {
        Frac::new(
            self.num
                .checked_mul(o.den)
                .and_then(|a| a.checked_add(o.num.checked_mul(self.den).expect("overflow")))
                .expect("overflow"),
            self.den.checked_mul(o.den).expect("overflow"),
        )
    }
}

impl AddAssign for Frac {
    fn add_assign(&mut self, o: Frac) {
        *self = *self + o;
    }
}

impl Sub for Frac {
    type Output = Frac;
    fn sub(self, o: Frac) -> Frac {
        self + (-o)
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -self.num, den: self.den }
    }
}

impl Mul for Frac {
    type Output = Frac;
    fn mul(self, o: Frac) -> Frac {
        Frac::new(self.num.checked_mul(o.num).expect("overflow"), self.den * o.den)
    }
}

impl Div for Frac {
    type Output = Frac;
    fn div(self, o: Frac) -> Frac {
        assert!(o.num != 0, "division by zero");
        Frac::new(self.num.checked_mul(o.den).expect("overflow"), self.den * o.num)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_normalizes() {
        let a = Frac::new(2, 4);
        let b = Frac::new(1, 3);
        assert_eq!(a + b, Frac::new(5, 6));
        assert_eq!(a * b, Frac::new(1, 6));
        assert_eq!((a - b) / b, Frac::new(1, 2));
        assert_eq!(Frac::new(-3, -6), Frac::new(1, 2));
    }

    #[test]
    fn mod1_lands_in_unit_interval() {
        assert_eq!(Frac::new(-1, 3).mod1(), Frac::new(2, 3));
        assert_eq!(Frac::new(7, 3).mod1(), Frac::new(1, 3));
        assert_eq!(Frac::from_int(5).mod1(), Frac::ZERO);
    }
}
