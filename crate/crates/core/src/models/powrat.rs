use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// An element `num / base^exp` of `Z[1/base]`, kept in lowest terms:
/// `base` never divides `num` unless `exp = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowRational {
    num: BigInt,
    exp: u32,
    base: u64,
}

impl PowRational {
    pub fn new(num: BigInt, exp: u32, base: u64) -> Self {
        assert!(base >= 2, "PowRational base must be at least 2");
        let mut x = PowRational { num, exp, base };
        x.normalize();
        x
    }

    pub fn integer(value: impl Into<BigInt>, base: u64) -> Self {
        PowRational::new(value.into(), 0, base)
    }

    pub fn zero(base: u64) -> Self {
        PowRational::integer(0, base)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let b = BigInt::from(self.base);
        while self.exp > 0 {
            let (q, r) = self.num.div_rem(&b);
            if !r.is_zero() {
                break;
            }
            self.num = q;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// The numerator when written over `base^e`, if `e` is large enough.
    pub fn numerator_over(&self, e: u32) -> Option<BigInt> {
        (e >= self.exp).then(|| &self.num * BigInt::from(self.base).pow(e - self.exp))
    }

    pub fn add(&self, other: &PowRational) -> PowRational {
        debug_assert_eq!(self.base, other.base);
        let e = self.exp.max(other.exp);
        let lhs = self.numerator_over(e).expect("exponent in range");
        let rhs = other.numerator_over(e).expect("exponent in range");
        PowRational::new(lhs + rhs, e, self.base)
    }

    pub fn neg(&self) -> PowRational {
        PowRational { num: -&self.num, exp: self.exp, base: self.base }
    }

    pub fn sub(&self, other: &PowRational) -> PowRational {
        self.add(&other.neg())
    }

    /// `self / n^k` for `|n| = base`; `k` may be negative.
    pub fn div_by_power(&self, n: i64, k: i64) -> PowRational {
        debug_assert_eq!(n.unsigned_abs(), self.base);
        let flip = n < 0 && k.rem_euclid(2) == 1;
        let num = if flip { -&self.num } else { self.num.clone() };
        if k >= 0 {
            let exp = self.exp + u32::try_from(k).expect("shift fits in u32");
            PowRational::new(num, exp, self.base)
        } else {
            let shift = u32::try_from(-k).expect("shift fits in u32");
            if shift <= self.exp {
                PowRational::new(num, self.exp - shift, self.base)
            } else {
                let scaled = num * BigInt::from(self.base).pow(shift - self.exp);
                PowRational::new(scaled, 0, self.base)
            }
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::from(self.base).pow(self.exp))
    }

    /// Accepts `p`, `p/d` with `d` a power of the base, or `p/base^e`.
    pub fn parse(text: &str, base: u64) -> Result<PowRational> {
        let bad = || Error::Syntax { position: 0, token: text.to_string() };
        let text = text.trim();
        let Some((p, d)) = text.split_once('/') else {
            let p: BigInt = text.parse().map_err(|_| bad())?;
            return Ok(PowRational::integer(p, base));
        };
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let d = d.trim();
        let exp = if let Some((b, e)) = d.split_once('^') {
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            if b != base {
                return Err(bad());
            }
            e.trim().parse::<u32>().map_err(|_| bad())?
        } else {
            let mut d: BigInt = d.parse().map_err(|_| bad())?;
            let mut e = 0;
            let b = BigInt::from(base);
            while d > BigInt::one() {
                let (q, r) = d.div_rem(&b);
                if !r.is_zero() {
                    return Err(bad());
                }
                d = q;
                e += 1;
            }
            if !d.is_one() {
                return Err(bad());
            }
            e
        };
        Ok(PowRational::new(p, exp, base))
    }
}

impl fmt::Display for PowRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}^{}", self.num, self.base, self.exp)
        }
    }
}

impl PartialOrd for PowRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PowRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}
