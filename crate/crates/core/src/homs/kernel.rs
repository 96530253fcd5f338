//! The kernel `K` of `|.|_a`, generated by `g_i = a^-i b a^i`, and the
//! rational invariant `κ : K -> Q`, `g_i ↦ (n/m)^i`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::word::{Gen, Word};

use super::EndoSpec;

/// `w = g_{i_1}^{s_1} g_{i_2}^{s_2} ...`, terms in order of appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDecomposition {
    pub terms: Vec<(i64, BigInt)>,
}

impl KernelDecomposition {
    /// `g_i = a^-i b a^i`
    pub fn generator(i: i64) -> Word {
        Word::b(1).conjugated_by(&Word::a(-i))
    }

    pub fn recompose(&self) -> Word {
        let mut out = Word::identity();
        for (i, s) in &self.terms {
            out = out.multiply(&Word::a(-*i).multiply(&Word::b(s.clone())).multiply(&Word::a(*i)));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::from(
            self.terms
                .iter()
                .map(|(i, s)| json!({ "index": i, "exp": s.to_string() }))
                .collect::<Vec<_>>(),
        )
    }
}

impl fmt::Display for KernelDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, s)| format!("g{i}^{s}")).collect();
        f.write_str(&parts.join(" "))
    }
}

fn not_in_kernel(w: &Word, exp_sum: &BigInt) -> Error {
    Error::NotInKernel { word: w.to_string(), exp_sum: exp_sum.to_string() }
}

/// Scans `w` left to right; a `b^s` read after a prefix of `a`-exponent sum
/// `p` sits at level `-p` and contributes `g_{-p}^s`.
pub fn kernel_decompose(w: &Word, _group: &GroupSpec) -> Result<KernelDecomposition> {
    let total = w.exp_sum(Gen::A);
    if !total.is_zero() {
        return Err(not_in_kernel(w, &total));
    }
    let mut level = BigInt::zero();
    let mut terms = Vec::new();
    for s in w.syllables() {
        match s.gen {
            Gen::A => level -= &s.exp,
            Gen::B => {
                let i = level.to_i64().ok_or_else(|| Error::Overflow(level.to_string()))?;
                terms.push((i, s.exp.clone()));
            }
        }
    }
    Ok(KernelDecomposition { terms })
}

/// `(n/m)^i` for any integer `i`.
pub fn kappa_of_generator(group: &GroupSpec, i: i64) -> Result<BigRational> {
    let ratio = BigRational::new(BigInt::from(group.n()), BigInt::from(group.m()));
    let e = i32::try_from(i).map_err(|_| Error::Overflow(i.to_string()))?;
    Ok(Pow::pow(ratio, e))
}

pub fn kappa(w: &Word, group: &GroupSpec) -> Result<BigRational> {
    let decomposition = kernel_decompose(w, group)?;
    let mut total = BigRational::zero();
    for (i, s) in &decomposition.terms {
        total += kappa_of_generator(group, *i)? * BigRational::from_integer(s.clone());
    }
    Ok(total)
}

/// Result of comparing `κ(φ(g_i))` with `κ(g_i)` over `i ∈ [-J, J]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KappaScale {
    Scale { d: BigRational, window: u32 },
    Incompatible { window: u32 },
}

impl KappaScale {
    pub fn scale(&self) -> Option<&BigRational> {
        match self {
            KappaScale::Scale { d, .. } => Some(d),
            KappaScale::Incompatible { .. } => None,
        }
    }

    pub fn window(&self) -> u32 {
        match self {
            KappaScale::Scale { window, .. } | KappaScale::Incompatible { window } => *window,
        }
    }
}

impl fmt::Display for KappaScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaScale::Scale { d, window } => write!(f, "{d} (checked on g_i, |i| <= {window})"),
            KappaScale::Incompatible { window } => write!(f, "incompatible (window {window})"),
        }
    }
}

/// Looks for a single `d` with `κ(φ(g_i)) = d κ(g_i)` for `|i| <= window`.
///
/// Images of kernel elements lie in the kernel only when `|φ(b)|_a = 0`;
/// otherwise `NotInKernel` is returned for the first offending image.
pub fn kappa_scale(spec: &EndoSpec, window: u32) -> Result<KappaScale> {
    let group = spec.group();
    let mut found: Option<BigRational> = None;
    let j = i64::from(window);
    for i in -j..=j {
        let image = spec.apply(&KernelDecomposition::generator(i))?;
        let ratio = kappa(&image, group)? / kappa_of_generator(group, i)?;
        match &found {
            None => found = Some(ratio),
            Some(d) if *d == ratio => {}
            Some(_) => return Ok(KappaScale::Incompatible { window }),
        }
    }
    Ok(KappaScale::Scale { d: found.unwrap_or_else(BigRational::one), window })
}
