use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::powrat::PowRational;
use super::GroupModel;
use crate::error::{Error, Result};
use crate::word::{Gen, Word};

/// `Z[1/|n|] ⋊ Z` with `θ(k)(x) = x / n^k`, faithful for `B(1,n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineModel {
    n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub t: PowRational,
    pub k: i64,
}

impl AffineModel {
    pub fn new(n: i64) -> Result<Self> {
        if n.abs() < 2 {
            return Err(Error::WrongFamily {
                group: format!("B(1,{n})"),
                expected: "Z[1/|n|] semidirect Z",
            });
        }
        Ok(AffineModel { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn base(&self) -> u64 {
        self.n.unsigned_abs()
    }

    pub fn element(&self, t: PowRational, k: i64) -> AffineElement {
        debug_assert_eq!(t.base(), self.base());
        AffineElement { t, k }
    }

    pub fn integer_element(&self, t: impl Into<BigInt>, k: i64) -> AffineElement {
        AffineElement { t: PowRational::integer(t, self.base()), k }
    }

    pub fn theta(&self, k: i64, x: &PowRational) -> PowRational {
        x.div_by_power(self.n, k)
    }

    /// Parses `(t, k)` with `t` in the `PowRational` syntax.
    pub fn parse_element(&self, text: &str) -> Result<AffineElement> {
        let (t, k) = super::split_pair(text)?;
        let t = PowRational::parse(t, self.base())?;
        let k: i64 = k.parse().map_err(|_| super::pair_error(text))?;
        Ok(AffineElement { t, k })
    }
}

/// `(t1,k1)(t2,k2) = (t1 + θ(k1)(t2), k1 + k2)`
pub fn affine_mul(model: &AffineModel, x: &AffineElement, y: &AffineElement) -> AffineElement {
    model.mul(x, y)
}

impl GroupModel for AffineModel {
    type Element = AffineElement;

    fn identity(&self) -> AffineElement {
        self.integer_element(0, 0)
    }

    fn mul(&self, x: &AffineElement, y: &AffineElement) -> AffineElement {
        AffineElement { t: x.t.add(&self.theta(x.k, &y.t)), k: x.k + y.k }
    }

    fn inverse(&self, x: &AffineElement) -> AffineElement {
        AffineElement { t: self.theta(-x.k, &x.t).neg(), k: -x.k }
    }

    fn generator_power(&self, gen: Gen, exp: &BigInt) -> Result<AffineElement> {
        Ok(match gen {
            Gen::A => self.integer_element(0, to_i64(exp)?),
            Gen::B => self.integer_element(exp.clone(), 0),
        })
    }

    /// `(p/|n|^e, k) = a^e b^(p·sign(n)^e) a^-e a^k`
    fn to_word(&self, x: &AffineElement) -> Word {
        let e = i64::from(x.t.exponent());
        let mut p = x.t.numerator().clone();
        if self.n < 0 && e % 2 == 1 {
            p = -p;
        }
        Word::a(e) * Word::b(p) * Word::a(x.k - e)
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
}

impl AffineElement {
    pub fn is_identity(&self) -> bool {
        self.t.is_zero() && self.k == 0
    }

    /// The translation part is an integer multiple of `|n|^-e`.
    pub fn translation_numerator(&self, e: u32) -> Option<BigInt> {
        self.t.numerator_over(e)
    }

    pub fn is_b(&self) -> bool {
        self.t.is_integer() && self.t.numerator().is_one() && self.k == 0
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.k)
    }
}
