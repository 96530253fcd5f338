//! Faithful semidirect-product models for the families `B(1,n)`, `B(m,m)`
//! and `B(1,-1)`. They give an equality oracle independent of Britton
//! reduction and exact hashable keys for ball enumeration.

mod affine;
mod klein;
mod permuted;
mod powrat;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use serde::Serialize;

pub use affine::{affine_mul, AffineElement, AffineModel};
pub use klein::{KleinElement, KleinModel};
pub use permuted::{FreeWord, PermutedModel, PermutedProduct};
pub use powrat::PowRational;

use crate::error::{Error, Result};
use crate::group::{GroupSpec, Standardization};
use crate::word::{Gen, Word};

pub trait GroupModel {
    type Element: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn identity(&self) -> Self::Element;
    fn mul(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
    fn inverse(&self, x: &Self::Element) -> Self::Element;
    fn generator_power(&self, gen: Gen, exp: &BigInt) -> Result<Self::Element>;

    /// A word in the model's own group mapping to `x`.
    fn to_word(&self, x: &Self::Element) -> Word;

    fn embed(&self, w: &Word) -> Result<Self::Element> {
        let mut acc = self.identity();
        for s in w.syllables() {
            acc = self.mul(&acc, &self.generator_power(s.gen, &s.exp)?);
        }
        Ok(acc)
    }
}

pub(crate) fn pair_error(text: &str) -> Error {
    Error::Syntax { position: 0, token: text.to_string() }
}

/// Splits `"(x, y)"` into its two trimmed components.
pub(crate) fn split_pair(text: &str) -> Result<(&str, &str)> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| pair_error(text))?;
    let (x, y) = inner.rsplit_once(',').ok_or_else(|| pair_error(text))?;
    Ok((x.trim(), y.trim()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Affine,
    Permuted,
    Klein,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Affine => "affine Z[1/|n|] x| Z",
            FamilyKind::Permuted => "free-by-cyclic F x| Z",
            FamilyKind::Klein => "Klein bottle Z x| Z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Affine(AffineModel),
    Permuted(PermutedModel),
    Klein(KleinModel),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModelElement {
    Affine(AffineElement),
    Permuted(PermutedProduct),
    Klein(KleinElement),
}

impl fmt::Display for ModelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelElement::Affine(x) => x.fmt(f),
            ModelElement::Permuted(x) => x.fmt(f),
            ModelElement::Klein(x) => x.fmt(f),
        }
    }
}

/// The model for a group, reached through its standardization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFamily {
    group: GroupSpec,
    standardization: Standardization,
    kind: ModelKind,
}

impl ModelFamily {
    pub fn for_group(group: &GroupSpec) -> Result<Self> {
        let standardization = group.standardize();
        let t = standardization.target;
        let kind = if t.m() == 1 && t.n().abs() >= 2 {
            ModelKind::Affine(AffineModel::new(t.n())?)
        } else if t.m() == t.n() && t.m() > 1 {
            ModelKind::Permuted(PermutedModel::new(t.m())?)
        } else if t.m() == 1 && t.n() == -1 {
            ModelKind::Klein(KleinModel)
        } else {
            return Err(Error::WrongFamily {
                group: group.to_string(),
                expected: "faithful semidirect-product",
            });
        };
        Ok(ModelFamily { group: *group, standardization, kind })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn family(&self) -> FamilyKind {
        match self.kind {
            ModelKind::Affine(_) => FamilyKind::Affine,
            ModelKind::Permuted(_) => FamilyKind::Permuted,
            ModelKind::Klein(_) => FamilyKind::Klein,
        }
    }

    /// Rewrites a word of the source group into the model's own group.
    pub fn standardize_word(&self, w: &Word) -> Word {
        self.standardization.apply(w)
    }

    pub fn embed(&self, w: &Word) -> Result<ModelElement> {
        let w = self.standardize_word(w);
        Ok(match &self.kind {
            ModelKind::Affine(m) => ModelElement::Affine(m.embed(&w)?),
            ModelKind::Permuted(m) => ModelElement::Permuted(m.embed(&w)?),
            ModelKind::Klein(m) => ModelElement::Klein(m.embed(&w)?),
        })
    }

    /// A word of the source group representing `x`.
    pub fn to_word(&self, x: &ModelElement) -> Result<Word> {
        let w = match (&self.kind, x) {
            (ModelKind::Affine(m), ModelElement::Affine(x)) => m.to_word(x),
            (ModelKind::Permuted(m), ModelElement::Permuted(x)) => m.to_word(x),
            (ModelKind::Klein(m), ModelElement::Klein(x)) => m.to_word(x),
            _ => return Err(Error::ShapeMismatch(format!("{x} is not an element of this model"))),
        };
        // the standardization map is an involution on words
        Ok(self.standardization.apply(&w))
    }

    pub fn parse_element(&self, text: &str) -> Result<ModelElement> {
        Ok(match &self.kind {
            ModelKind::Affine(m) => ModelElement::Affine(m.parse_element(text)?),
            ModelKind::Permuted(m) => ModelElement::Permuted(m.parse_element(text)?),
            ModelKind::Klein(m) => ModelElement::Klein(m.parse_element(text)?),
        })
    }
}

/// Embedding of `B(±1, n)`, `|n| > 1`, into `Z[1/|n|] ⋊ Z`.
pub fn bs1n_embed(w: &Word, group: &GroupSpec) -> Result<AffineElement> {
    if group.m().abs() != 1 || group.n().abs() < 2 {
        return Err(Error::WrongFamily { group: group.to_string(), expected: "Z[1/|n|] semidirect Z" });
    }
    // B(-1,n) has the same presentation as B(1,-n)
    AffineModel::new(group.n() * group.m())?.embed(w)
}

/// Embedding of `B(m,m)`, `|m| > 1`, into `F_m ⋊ Z`.
pub fn bsmm_embed(w: &Word, group: &GroupSpec) -> Result<PermutedProduct> {
    if group.m() != group.n() || group.m().abs() < 2 {
        return Err(Error::WrongFamily { group: group.to_string(), expected: "free-by-cyclic" });
    }
    PermutedModel::new(group.m().abs())?.embed(w)
}

/// Embedding of `B(1,-1)` (or `B(-1,1)`) into the Klein bottle group.
pub fn klein_embed(w: &Word, group: &GroupSpec) -> Result<KleinElement> {
    if !(group.is_minus_case() && group.m().abs() == 1) {
        return Err(Error::WrongFamily { group: group.to_string(), expected: "Klein bottle" });
    }
    KleinModel.embed(w)
}

/// Equality decided in the faithful model.
pub fn model_equal_oracle(u: &Word, v: &Word, group: &GroupSpec) -> Result<bool> {
    let family = ModelFamily::for_group(group)?;
    Ok(family.embed(u)? == family.embed(v)?)
}
