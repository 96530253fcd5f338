use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::GroupModel;
use crate::error::{Error, Result};
use crate::word::{Gen, Word};

/// A freely reduced word in `x_1, ..., x_m`. Indices are stored 0-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    syllables: Vec<(u32, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(index: u32, exp: i64) -> Self {
        let mut w = FreeWord::identity();
        w.push(index, exp);
        w
    }

    pub fn syllables(&self) -> &[(u32, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Length as a word in the `x_j^±1`.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn push(&mut self, index: u32, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((j, e)) if *j == index => {
                *e += exp;
                if *e == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((index, exp)),
        }
    }

    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &(j, e) in &other.syllables {
            out.push(j, e);
        }
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { syllables: self.syllables.iter().rev().map(|&(j, e)| (j, -e)).collect() }
    }

    /// `σ^k` where `σ(x_j) = x_(j+1)` cyclically on `rank` generators.
    pub fn shift(&self, k: i64, rank: u32) -> FreeWord {
        let r = i64::from(rank);
        let k = k.rem_euclid(r);
        if k == 0 {
            return self.clone();
        }
        FreeWord {
            syllables: self
                .syllables
                .iter()
                .map(|&(j, e)| (((i64::from(j) + k) % r) as u32, e))
                .collect(),
        }
    }

    pub fn parse(text: &str, rank: u32) -> Result<FreeWord> {
        let bad = |tok: &str| Error::Syntax { position: 0, token: tok.to_string() };
        let mut w = FreeWord::identity();
        let text = text.trim();
        if text == "1" {
            return Ok(w);
        }
        for tok in text.split_whitespace() {
            let body = tok.strip_prefix('x').ok_or_else(|| bad(tok))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad(tok))?),
                None => (body, 1),
            };
            let idx: u32 = idx.parse().map_err(|_| bad(tok))?;
            if idx == 0 || idx > rank {
                return Err(bad(tok));
            }
            w.push(idx - 1, exp);
        }
        Ok(w)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, &(j, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", j + 1)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `F ⋊ Z` with `Z` acting by the cyclic index shift, faithful for `B(m,m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutedModel {
    rank: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutedProduct {
    pub w: FreeWord,
    pub k: i64,
}

impl PermutedModel {
    pub fn new(m: i64) -> Result<Self> {
        let rank = u32::try_from(m).ok().filter(|&r| r > 1).ok_or(Error::WrongFamily {
            group: format!("B({m},{m})"),
            expected: "free-by-cyclic",
        })?;
        Ok(PermutedModel { rank })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn parse_element(&self, text: &str) -> Result<PermutedProduct> {
        let (w, k) = super::split_pair(text)?;
        let w = FreeWord::parse(w, self.rank)?;
        let k: i64 = k.parse().map_err(|_| super::pair_error(text))?;
        Ok(PermutedProduct { w, k })
    }
}

impl GroupModel for PermutedModel {
    type Element = PermutedProduct;

    fn identity(&self) -> PermutedProduct {
        PermutedProduct { w: FreeWord::identity(), k: 0 }
    }

    /// `(w1,k1)(w2,k2) = (w1 · σ^k1(w2), k1 + k2)`
    fn mul(&self, x: &PermutedProduct, y: &PermutedProduct) -> PermutedProduct {
        PermutedProduct { w: x.w.multiply(&y.w.shift(x.k, self.rank)), k: x.k + y.k }
    }

    fn inverse(&self, x: &PermutedProduct) -> PermutedProduct {
        PermutedProduct { w: x.w.inverse().shift(-x.k, self.rank), k: -x.k }
    }

    fn generator_power(&self, gen: Gen, exp: &BigInt) -> Result<PermutedProduct> {
        let e = exp.to_i64().ok_or_else(|| Error::Overflow(exp.to_string()))?;
        Ok(match gen {
            Gen::A => PermutedProduct { w: FreeWord::generator(0, e), k: 0 },
            Gen::B => PermutedProduct { w: FreeWord::identity(), k: e },
        })
    }

    /// Uses `x_j = b^(j-1) a b^-(j-1)`.
    fn to_word(&self, x: &PermutedProduct) -> Word {
        let mut out = Word::identity();
        for &(j, e) in x.w.syllables() {
            let j = i64::from(j);
            out = out * Word::b(j) * Word::a(e) * Word::b(-j);
        }
        out * Word::b(x.k)
    }
}

impl fmt::Display for PermutedProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w, self.k)
    }
}
