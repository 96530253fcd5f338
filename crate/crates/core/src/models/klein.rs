use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::GroupModel;
use crate::error::{Error, Result};
use crate::word::{Gen, Word};

/// `Z ⋊ Z` with the generator of the quotient acting by `-1`: the Klein
/// bottle group, faithful for `B(1,-1)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KleinModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KleinElement {
    pub u: i64,
    pub v: i64,
}

impl KleinElement {
    pub fn new(u: i64, v: i64) -> Self {
        KleinElement { u, v }
    }
}

fn sign_of_parity(v: i64) -> i64 {
    if v.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl KleinModel {
    pub fn parse_element(&self, text: &str) -> Result<KleinElement> {
        let (u, v) = super::split_pair(text)?;
        let u: i64 = u.parse().map_err(|_| super::pair_error(text))?;
        let v: i64 = v.parse().map_err(|_| super::pair_error(text))?;
        Ok(KleinElement { u, v })
    }
}

impl GroupModel for KleinModel {
    type Element = KleinElement;

    fn identity(&self) -> KleinElement {
        KleinElement::new(0, 0)
    }

    /// `(u1,v1)(u2,v2) = (u1 + (-1)^v1 u2, v1 + v2)`
    fn mul(&self, x: &KleinElement, y: &KleinElement) -> KleinElement {
        KleinElement::new(x.u + sign_of_parity(x.v) * y.u, x.v + y.v)
    }

    fn inverse(&self, x: &KleinElement) -> KleinElement {
        KleinElement::new(-sign_of_parity(x.v) * x.u, -x.v)
    }

    fn generator_power(&self, gen: Gen, exp: &BigInt) -> Result<KleinElement> {
        let e = exp.to_i64().ok_or_else(|| Error::Overflow(exp.to_string()))?;
        Ok(match gen {
            Gen::A => KleinElement::new(0, e),
            Gen::B => KleinElement::new(e, 0),
        })
    }

    fn to_word(&self, x: &KleinElement) -> Word {
        Word::b(x.u) * Word::a(x.v)
    }
}

impl fmt::Display for KleinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}
