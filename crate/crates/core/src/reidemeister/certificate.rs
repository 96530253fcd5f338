//! Outcomes of Reidemeister-number computations and the certificates that
//! back every claim of infinitude.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::word::Word;

/// The homomorphism `λ` a certificate is built on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invariant {
    /// `|·|_a : B(m,n) -> Z`
    ExpSumA,
    /// `|·|_b : B(m,m) -> Z`
    ExpSumB,
    /// `κ : ker|·|_a -> Q`, `g_i ↦ (n/m)^i`
    Kappa,
    /// A functional on a finitely generated abelian group, given by its
    /// values on the generators.
    Functional(Vec<BigInt>),
}

impl Invariant {
    pub fn name(&self) -> &'static str {
        match self {
            Invariant::ExpSumA => "exp_sum_a",
            Invariant::ExpSumB => "exp_sum_b",
            Invariant::Kappa => "kappa",
            Invariant::Functional(_) => "abelian_functional",
        }
    }

    pub fn target(&self) -> &'static str {
        match self {
            Invariant::Kappa => "Q",
            _ => "Z",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::ExpSumA => f.write_str("|.|_a"),
            Invariant::ExpSumB => f.write_str("|.|_b"),
            Invariant::Kappa => f.write_str("kappa"),
            Invariant::Functional(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "<{}>", parts.join(","))
            }
        }
    }
}

/// One condition `lhs = rhs` (or `lhs != rhs`) needed for `λ` to be
/// constant on twisted classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleCheck {
    pub label: String,
    pub lhs: BigRational,
    pub rhs: BigRational,
    /// `false` for an inequality.
    pub equal: bool,
}

impl ScaleCheck {
    pub fn new(label: impl Into<String>, lhs: BigRational, rhs: BigRational) -> Self {
        ScaleCheck { label: label.into(), lhs, rhs, equal: true }
    }

    pub fn not_equal(label: impl Into<String>, lhs: BigRational, rhs: BigRational) -> Self {
        ScaleCheck { label: label.into(), lhs, rhs, equal: false }
    }

    pub fn relation(&self) -> &'static str {
        if self.equal {
            "="
        } else {
            "!="
        }
    }

    pub fn holds(&self) -> bool {
        (self.lhs == self.rhs) == self.equal
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Word(Word),
    Vector(Vec<BigInt>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Word(w) => w.fmt(f),
            Witness::Vector(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Number of concrete witnesses listed in every certificate.
pub const WITNESS_COUNT: usize = 10;

/// `λ` is fixed by the endomorphism(s), so it is constant on twisted
/// classes; it takes pairwise distinct values on the witness family
/// `base · step^j`, so those lie in pairwise distinct classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub invariant: Invariant,
    pub scale_checks: Vec<ScaleCheck>,
    pub witness_base: Witness,
    pub witness_step: Witness,
    pub first_witnesses: Vec<Witness>,
    pub values: Vec<BigRational>,
}

impl Certificate {
    /// Internal consistency: every scale check holds and the recorded values
    /// are pairwise distinct.
    pub fn is_consistent(&self) -> bool {
        let distinct = self
            .values
            .iter()
            .enumerate()
            .all(|(i, x)| self.values[..i].iter().all(|y| y != x));
        self.scale_checks.iter().all(ScaleCheck::holds)
            && distinct
            && self.values.len() == self.first_witnesses.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "invariant": self.invariant.name(),
            "target": self.invariant.target(),
            "functional": match &self.invariant {
                Invariant::Functional(v) => Value::from(v.iter().map(ToString::to_string).collect::<Vec<_>>()),
                _ => Value::Null,
            },
            "scale_checks": self.scale_checks.iter().map(|c| json!({
                "check": c.label,
                "lhs": c.lhs.to_string(),
                "relation": c.relation(),
                "rhs": c.rhs.to_string(),
                "holds": c.holds(),
            })).collect::<Vec<_>>(),
            "witness_base": self.witness_base.to_string(),
            "witness_step": self.witness_step.to_string(),
            "first_witnesses": self.first_witnesses.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "values": self.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invariant {} -> {}", self.invariant, self.invariant.target())?;
        for c in &self.scale_checks {
            let verdict = if c.holds() { "ok" } else { "FAIL" };
            writeln!(f, "  {}: {} {} {} [{verdict}]", c.label, c.lhs, c.relation(), c.rhs)?;
        }
        writeln!(f, "witnesses ({}) * ({})^j, j = 0, 1, 2, ...", self.witness_base, self.witness_step)?;
        for (w, v) in self.first_witnesses.iter().zip(&self.values) {
            writeln!(f, "  {w}  ->  {v}")?;
        }
        Ok(())
    }
}

/// An invariant that was tried and why it did or did not certify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub invariant: String,
    pub succeeded: bool,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReidemeisterOutcome {
    Finite(BigInt),
    Infinite(Box<Certificate>),
    Unknown(Vec<Attempt>),
}

impl ReidemeisterOutcome {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ReidemeisterOutcome::Infinite(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ReidemeisterOutcome::Infinite(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ReidemeisterOutcome::Finite(n) => json!({ "outcome": "finite", "count": n.to_string() }),
            ReidemeisterOutcome::Infinite(c) => json!({ "outcome": "infinite", "certificate": c.to_json() }),
            ReidemeisterOutcome::Unknown(attempts) => json!({ "outcome": "unknown", "attempts": attempts }),
        }
    }
}

impl fmt::Display for ReidemeisterOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReidemeisterOutcome::Finite(n) => write!(f, "finite: {n}"),
            ReidemeisterOutcome::Infinite(c) => write!(f, "infinite\n{c}"),
            ReidemeisterOutcome::Unknown(attempts) => {
                writeln!(f, "unknown")?;
                for a in attempts {
                    writeln!(f, "  {}: {}", a.invariant, a.reason)?;
                }
                Ok(())
            }
        }
    }
}
