//! Exponent rates of the form `lin + log3 * log2(3)`, compared exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// `lin + log3 * log2(3)`: the coefficient of `n` in a base-2 exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RateExpr {
    lin: BigRational,
    log3: BigRational,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

impl RateExpr {
    pub fn new(lin: BigRational, log3: BigRational) -> Self {
        Self { lin, log3 }
    }

    pub fn rational(lin: BigRational) -> Self {
        Self::new(lin, BigRational::zero())
    }

    /// `c * log2(3)`, the base-2 form of a `3^(c n)` bound.
    pub fn base3(c: BigRational) -> Self {
        Self::new(BigRational::zero(), c)
    }

    pub fn lin(&self) -> &BigRational {
        &self.lin
    }

    pub fn log3(&self) -> &BigRational {
        &self.log3
    }

    pub fn is_rational(&self) -> bool {
        self.log3.is_zero()
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        f(&self.lin) + f(&self.log3) * 3f64.log2()
    }
}

/// Sign of `a + b * log2(3)`, decided by comparing `3^B` with `2^m` in big
/// integers after clearing denominators.
pub fn sign_with_log3(a: &BigRational, b: &BigRational) -> Ordering {
    let d = a.denom().lcm(b.denom());
    let aa = a.numer() * (&d / a.denom());
    let bb = b.numer() * (&d / b.denom());
    sign_int(&aa, &bb)
}

fn sign_int(a: &BigInt, b: &BigInt) -> Ordering {
    match b.sign() {
        Sign::NoSign => a.sign_cmp(),
        Sign::Minus => sign_int(&-a, &-b).reverse(),
        Sign::Plus => {
            if !a.is_negative() {
                return Ordering::Greater;
            }
            // b*log2(3) vs m := -a, i.e. 3^b vs 2^m
            let m = exponent(&-a);
            let b = exponent(b);
            BigInt::from(3u8).pow(b).cmp(&(BigInt::from(1u8) << m))
        }
    }
}

fn exponent(v: &BigInt) -> u32 {
    v.to_u32().expect("rate exponent too large for exact comparison")
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        match self.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for RateExpr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RateExpr {
    fn cmp(&self, other: &Self) -> Ordering {
        sign_with_log3(&(&self.lin - &other.lin), &(&self.log3 - &other.log3))
    }
}

impl fmt::Display for RateExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lin.is_zero(), self.log3.is_zero()) {
            (_, true) => write!(f, "{}", self.lin),
            (true, false) => write!(f, "{}*log2(3)", self.log3),
            (false, false) if self.log3.is_negative() => {
                write!(f, "{}-{}*log2(3)", self.lin, -&self.log3)
            }
            (false, false) => write!(f, "{}+{}*log2(3)", self.lin, self.log3),
        }
    }
}

impl Serialize for RateExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        rational(a, b)
    }

    #[test]
    fn exact_comparisons() {
        let l = RateExpr::base3(r(1, 1));
        assert!(l > RateExpr::rational(r(3, 2)));
        assert!(l < RateExpr::rational(r(8, 5)));
        // 3^5 = 243 < 256 = 2^8
        assert!(RateExpr::base3(r(5, 1)) < RateExpr::rational(r(8, 1)));
        assert!(RateExpr::base3(r(12, 1)) > RateExpr::rational(r(19, 1)));
        assert_eq!(
            RateExpr::new(r(1, 3), r(0, 1)).cmp(&RateExpr::rational(r(2, 6))),
            Ordering::Equal
        );
    }

    #[test]
    fn display() {
        assert_eq!(RateExpr::rational(r(17, 45)).to_string(), "17/45");
        assert_eq!(RateExpr::base3(r(1, 6)).to_string(), "1/6*log2(3)");
        assert_eq!(RateExpr::new(r(1, 2), r(-1, 3)).to_string(), "1/2-1/3*log2(3)");
    }
}
