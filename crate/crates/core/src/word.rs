//! Freely reduced words over the generators `a` and `b`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::A => Gen::B,
            Gen::B => Gen::A,
        }
    }

    fn letter(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: BigInt,
}

impl Syllable {
    pub fn new(gen: Gen, exp: impl Into<BigInt>) -> Self {
        Syllable { gen, exp: exp.into() }
    }
}

/// A freely reduced word: adjacent syllables never share a generator and
/// no exponent is zero. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(gen: Gen, exp: impl Into<BigInt>) -> Self {
        let mut w = Word::identity();
        w.push(gen, exp.into());
        w
    }

    pub fn a(exp: impl Into<BigInt>) -> Self {
        Word::gen(Gen::A, exp)
    }

    pub fn b(exp: impl Into<BigInt>) -> Self {
        Word::gen(Gen::B, exp)
    }

    /// Builds a word from arbitrary syllables, freely reducing as it goes.
    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(syllables: I) -> Self {
        let mut w = Word::identity();
        for s in syllables {
            w.push(s.gen, s.exp);
        }
        w
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn into_syllables(self) -> Vec<Syllable> {
        self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Sum of absolute exponents, i.e. the length as a word in `a^±1, b^±1`.
    pub fn letter_len(&self) -> BigInt {
        self.syllables.iter().map(|s| s.exp.abs()).sum()
    }

    /// Appends `gen^exp`, merging with the last syllable and dropping it if
    /// the exponents cancel.
    pub fn push(&mut self, gen: Gen, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable { gen, exp }),
        }
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.gen, s.exp.clone());
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { gen: s.gen, exp: -&s.exp })
                .collect(),
        }
    }

    /// `self^e` by repeated squaring; negative powers invert first.
    pub fn pow(&self, e: i64) -> Word {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Word::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base);
            }
        }
        acc
    }

    pub fn pow_big(&self, e: &BigInt) -> Result<Word> {
        let e = e.to_i64().ok_or_else(|| Error::Overflow(e.to_string()))?;
        Ok(self.pow(e))
    }

    /// `g · self · g⁻¹`
    pub fn conjugated_by(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.inverse())
    }

    /// Total exponent of `gen`.
    pub fn exp_sum(&self, gen: Gen) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| &s.exp)
            .sum()
    }

    /// Replaces every generator by a word and freely reduces.
    pub fn substitute(&self, image_a: &Word, image_b: &Word) -> Result<Word> {
        let mut out = Word::identity();
        for s in &self.syllables {
            let image = match s.gen {
                Gen::A => image_a,
                Gen::B => image_b,
            };
            out = out.multiply(&image.pow_big(&s.exp)?);
        }
        Ok(out)
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.multiply(&rhs)
    }
}

/// Exponent sum of `gen` in `w`.
pub fn exp_sum(w: &Word, gen: Gen) -> BigInt {
    w.exp_sum(gen)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", s.gen.letter())?;
            if !s.exp.is_one() {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

/// Parses the textual word grammar: terms `a`, `b`, `A`, `B` (capitals are
/// inverses), each optionally followed by `^` and a signed integer.
/// Whitespace between tokens is ignored and a lone `1` denotes the identity.
pub fn parse_word(text: &str) -> Result<Word> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut w = Word::identity();

    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].1.is_whitespace() {
            *i += 1;
        }
    };
    let error_at = |i: usize| -> Error {
        match chars.get(i) {
            Some(&(pos, c)) => Error::Syntax { position: pos, token: c.to_string() },
            None => Error::Syntax { position: text.len(), token: "end of input".to_string() },
        }
    };

    loop {
        skip_ws(&mut i);
        let Some(&(_, c)) = chars.get(i) else { break };
        let (gen, sign) = match c {
            'a' => (Gen::A, 1),
            'b' => (Gen::B, 1),
            'A' => (Gen::A, -1),
            'B' => (Gen::B, -1),
            '1' => {
                let next = chars.get(i + 1).map(|&(_, c)| c);
                if matches!(next, Some(c) if c.is_ascii_digit() || c == '^') {
                    return Err(error_at(i + 1));
                }
                i += 1;
                continue;
            }
            _ => return Err(error_at(i)),
        };
        i += 1;
        let mut exp = BigInt::from(sign);

        let mut j = i;
        skip_ws(&mut j);
        if chars.get(j).map(|&(_, c)| c) == Some('^') {
            i = j + 1;
            skip_ws(&mut i);
            let negative = chars.get(i).map(|&(_, c)| c) == Some('-');
            if negative {
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(error_at(i));
            }
            let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            let mut value: BigInt = digits.parse().map_err(|_| error_at(start))?;
            if negative {
                value = -value;
            }
            exp *= value;
        }
        w.push(gen, exp);
    }
    Ok(w)
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}
