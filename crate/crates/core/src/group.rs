//! Group parameters `(m, n)` for `B(m,n) = <a, b | a^-1 b^m a = b^n>`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Gen, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    m: i64,
    n: i64,
}

impl GroupSpec {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidGroup { m, n });
        }
        Ok(GroupSpec { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// `|m| = 1` or `|n| = 1`: the metabelian groups.
    pub fn is_solvable_case(&self) -> bool {
        self.m.abs() == 1 || self.n.abs() == 1
    }

    pub fn is_equal_case(&self) -> bool {
        self.m == self.n
    }

    pub fn is_minus_case(&self) -> bool {
        self.m == -self.n
    }

    /// `B(1,1)` and `B(-1,-1)`, both isomorphic to `Z + Z`.
    pub fn is_abelian(&self) -> bool {
        self.m == self.n && self.m.abs() == 1
    }

    /// Order of the torsion part of the abelianization, `|n - m|`
    /// (zero means the factor is infinite cyclic).
    pub fn torsion_modulus(&self) -> BigInt {
        (BigInt::from(self.n) - BigInt::from(self.m)).magnitude().clone().into()
    }

    /// The relator `a^-1 b^m a b^-n`.
    pub fn relator(&self) -> Word {
        Word::a(-1) * Word::b(self.m) * Word::a(1) * Word::b(-self.n)
    }

    /// Isomorphic copy with `0 < m <= |n|`, together with the images of the
    /// generators under the isomorphism.
    pub fn standardize(&self) -> Standardization {
        let (mut m, mut n) = (self.m, self.n);
        let mut invert_a = false;
        if m < 0 {
            m = -m;
            n = -n;
        }
        if m > n.abs() {
            // B(m,n) -> B(n,m) via a -> a^-1
            std::mem::swap(&mut m, &mut n);
            invert_a = true;
            if m < 0 {
                m = -m;
                n = -n;
            }
        }
        let target = GroupSpec { m, n };
        Standardization {
            source: *self,
            target,
            invert_a,
            abelian: target.is_abelian(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{})", self.m, self.n)
    }
}

/// Accepts `m,n` (the command-line form) or `B(m,n)`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix("B(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(trimmed);
        let bad = || Error::Syntax { position: 0, token: s.to_string() };
        let (m, n) = inner.split_once(',').ok_or_else(bad)?;
        let m: i64 = m.trim().parse().map_err(|_| bad())?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        GroupSpec::new(m, n)
    }
}

/// An isomorphism `B(m,n) -> B(m',n')` onto the standardized parameters.
/// It always fixes `b` and sends `a` to `a` or `a^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Standardization {
    pub source: GroupSpec,
    pub target: GroupSpec,
    invert_a: bool,
    /// Set for `B(1,1) = Z + Z`, which has no exponential growth.
    pub abelian: bool,
}

impl Standardization {
    pub fn image_a(&self) -> Word {
        Word::a(if self.invert_a { -1 } else { 1 })
    }

    pub fn image_b(&self) -> Word {
        Word::b(1)
    }

    pub fn is_identity(&self) -> bool {
        !self.invert_a
    }

    pub fn apply(&self, w: &Word) -> Word {
        if !self.invert_a {
            return w.clone();
        }
        Word::from_syllables(w.syllables().iter().map(|s| {
            let mut s = s.clone();
            if s.gen == Gen::A {
                s.exp = -s.exp;
            }
            s
        }))
    }
}

pub fn standardize(group: &GroupSpec) -> Standardization {
    group.standardize()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_indices() {
        assert_eq!(GroupSpec::new(0, 3), Err(Error::InvalidGroup { m: 0, n: 3 }));
        assert!(GroupSpec::new(2, 0).is_err());
    }

    #[test]
    fn flags() {
        let g = GroupSpec::new(1, 3).unwrap();
        assert!(g.is_solvable_case() && !g.is_equal_case() && !g.is_minus_case());
        let g = GroupSpec::new(2, -2).unwrap();
        assert!(g.is_minus_case() && !g.is_solvable_case());
        let g = GroupSpec::new(3, 3).unwrap();
        assert!(g.is_equal_case() && !g.is_abelian());
        assert!(GroupSpec::new(-1, -1).unwrap().is_abelian());
    }

    #[test]
    fn standardize_examples() {
        let s = GroupSpec::new(3, 2).unwrap().standardize();
        assert_eq!(s.target, GroupSpec::new(2, 3).unwrap());
        assert_eq!(s.image_a(), Word::a(-1));
        assert_eq!(s.image_b(), Word::b(1));

        let s = GroupSpec::new(-2, -3).unwrap().standardize();
        assert_eq!(s.target, GroupSpec::new(2, 3).unwrap());
        assert!(s.is_identity());

        let s = GroupSpec::new(2, 3).unwrap().standardize();
        assert_eq!(s.target, GroupSpec::new(2, 3).unwrap());
        assert!(s.is_identity());
    }

    #[test]
    fn standardize_lands_in_range() {
        for m in -5i64..=5 {
            for n in -5i64..=5 {
                let Ok(g) = GroupSpec::new(m, n) else { continue };
                let t = g.standardize().target;
                assert!(0 < t.m() && t.m() <= t.n().abs(), "{g} -> {t}");
            }
        }
        assert!(GroupSpec::new(1, 1).unwrap().standardize().abelian);
        assert!(GroupSpec::new(-1, -1).unwrap().standardize().abelian);
        assert_eq!(
            GroupSpec::new(3, -2).unwrap().standardize().target,
            GroupSpec::new(2, -3).unwrap()
        );
    }

    #[test]
    fn parse_group() {
        assert_eq!("2,-3".parse::<GroupSpec>().unwrap(), GroupSpec::new(2, -3).unwrap());
        assert_eq!("B(1, 2)".parse::<GroupSpec>().unwrap(), GroupSpec::new(1, 2).unwrap());
        assert!("0,2".parse::<GroupSpec>().is_err());
        assert!("2".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn torsion_modulus() {
        assert_eq!(GroupSpec::new(1, 3).unwrap().torsion_modulus(), BigInt::from(2));
        assert_eq!(GroupSpec::new(2, -2).unwrap().torsion_modulus(), BigInt::from(4));
        assert_eq!(GroupSpec::new(2, 2).unwrap().torsion_modulus(), BigInt::from(0));
    }
}
