//! Exact rationals that stay on machine integers while they fit.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::simplex::Rational;

/// `Small(n, d)` is always reduced with `d > 0`; `Big` is used only for
/// values that do not fit, so every value has one representation.
#[derive(Debug, Clone)]
pub(crate) enum Num {
    Small(i64, i64),
    Big(Rational),
}

impl Num {
    pub fn zero() -> Num {
        Num::Small(0, 1)
    }

    pub fn int(n: i64) -> Num {
        Num::Small(n, 1)
    }

    fn from_i128(n: i128, d: i128) -> Num {
        debug_assert!(d != 0);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Num::Small(n, d),
            _ => Num::Big(Rational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    pub fn from_big(q: &Rational) -> Num {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Num::Small(n, d),
            _ => Num::Big(q.clone()),
        }
    }

    fn from_big_owned(q: Rational) -> Num {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Num::Small(n, d),
            _ => Num::Big(q),
        }
    }

    pub fn to_big(&self) -> Rational {
        match self {
            Num::Small(n, d) => Rational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Num::Big(q) => q.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Num::Small(n, _) => *n == 0,
            Num::Big(q) => q.is_zero(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Num::Small(n, _) => *n > 0,
            Num::Big(q) => q.is_positive(),
        }
    }

    pub fn recip(&self) -> Num {
        match self {
            Num::Small(n, d) => Num::from_i128(*d as i128, *n as i128),
            Num::Big(q) => Num::from_big_owned(q.recip()),
        }
    }
}

impl<'a> Add<&'a Num> for &'a Num {
    type Output = Num;
    fn add(self, o: &Num) -> Num {
        match (self, o) {
            (Num::Small(a, b), Num::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Num::from_i128(a * d + c * b, b * d)
            }
            _ => Num::from_big_owned(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Sub<&'a Num> for &'a Num {
    type Output = Num;
    fn sub(self, o: &Num) -> Num {
        self + &-o
    }
}

impl<'a> Mul<&'a Num> for &'a Num {
    type Output = Num;
    fn mul(self, o: &Num) -> Num {
        match (self, o) {
            (Num::Small(a, b), Num::Small(c, d)) => {
                Num::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Num::from_big_owned(self.to_big() * o.to_big()),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Num> for &'a Num {
    type Output = Num;
    fn div(self, o: &Num) -> Num {
        self * &o.recip()
    }
}

impl Neg for &Num {
    type Output = Num;
    fn neg(self) -> Num {
        match self {
            Num::Small(n, d) if *n != i64::MIN => Num::Small(-n, *d),
            _ => Num::from_big_owned(-self.to_big()),
        }
    }
}

impl AddAssign<&Num> for Num {
    fn add_assign(&mut self, o: &Num) {
        *self = &*self + o;
    }
}

impl AddAssign<Num> for Num {
    fn add_assign(&mut self, o: Num) {
        *self = &*self + &o;
    }
}

impl SubAssign<&Num> for Num {
    fn sub_assign(&mut self, o: &Num) {
        *self = &*self - o;
    }
}

impl SubAssign<Num> for Num {
    fn sub_assign(&mut self, o: Num) {
        *self = &*self - &o;
    }
}

impl MulAssign<&Num> for Num {
    fn mul_assign(&mut self, o: &Num) {
        *self = &*self * o;
    }
}

impl PartialEq for Num {
    fn eq(&self, o: &Num) -> bool {
        match (self, o) {
            (Num::Small(a, b), Num::Small(c, d)) => a == c && b == d,
            (Num::Big(p), Num::Big(q)) => p == q,
            _ => false,
        }
    }
}

impl Eq for Num {}

impl PartialOrd for Num {
    fn partial_cmp(&self, o: &Num) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Num {
    fn cmp(&self, o: &Num) -> Ordering {
        match (self, o) {
            (Num::Small(a, b), Num::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}
