//! Britton reduction, canonical normal forms and the word problem.
//!
//! `B(m,n)` is an HNN extension of `<b>` with stable letter `a` conjugating
//! `<b^m>` onto `<b^n>`. A pinch is a subword `a^-1 b^t a` with `m | t`
//! (rewritten to `b^(tn/m)`) or `a b^t a^-1` with `n | t` (rewritten to
//! `b^(tm/n)`). A word without pinches that still contains `a` is
//! nontrivial, which solves the word problem.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::group::GroupSpec;
use crate::word::{Gen, Syllable, Word};

/// Removes every pinch, scanning left to right with a stack so that each
/// rewrite happens at the innermost-leftmost pinch.
pub fn britton_reduce(w: &Word, group: &GroupSpec) -> Word {
    let m = BigInt::from(group.m());
    let n = BigInt::from(group.n());
    let mut stack: Vec<Syllable> = Vec::with_capacity(w.len());
    for s in w.syllables() {
        match s.gen {
            Gen::B => push_b(&mut stack, s.exp.clone()),
            Gen::A => push_a(&mut stack, s.exp.clone(), &m, &n),
        }
    }
    Word::from_syllables(stack)
}

fn push_b(stack: &mut Vec<Syllable>, exp: BigInt) {
    if exp.is_zero() {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.gen == Gen::B => {
            top.exp += exp;
            if top.exp.is_zero() {
                stack.pop();
            }
        }
        _ => stack.push(Syllable { gen: Gen::B, exp }),
    }
}

fn push_a(stack: &mut Vec<Syllable>, mut remaining: BigInt, m: &BigInt, n: &BigInt) {
    while !remaining.is_zero() {
        let eps = if remaining.is_positive() { 1 } else { -1 };
        let len = stack.len();

        // a^-1 b^t a with m | t, or a b^t a^-1 with n | t
        if len >= 2 && stack[len - 1].gen == Gen::B {
            let below = &stack[len - 2];
            debug_assert_eq!(below.gen, Gen::A);
            let opposite = if eps == 1 { below.exp.is_negative() } else { below.exp.is_positive() };
            if opposite {
                let (div, mul) = if eps == 1 { (m, n) } else { (n, m) };
                let t = &stack[len - 1].exp;
                if (t % div).is_zero() {
                    let replacement = t / div * mul;
                    stack.pop();
                    let a = stack.last_mut().expect("a-syllable below pinch");
                    a.exp += eps;
                    if a.exp.is_zero() {
                        stack.pop();
                    }
                    remaining -= eps;
                    push_b(stack, replacement);
                    continue;
                }
            }
        }

        match stack.last_mut() {
            Some(top) if top.gen == Gen::A => {
                if top.exp.is_positive() == remaining.is_positive() {
                    top.exp += &remaining;
                    remaining = BigInt::zero();
                } else {
                    // free cancellation; a pinch may be exposed underneath
                    let cancel = if top.exp.abs() < remaining.abs() {
                        -top.exp.clone()
                    } else {
                        remaining.clone()
                    };
                    top.exp += &cancel;
                    remaining -= &cancel;
                    if top.exp.is_zero() {
                        stack.pop();
                    }
                }
            }
            _ => {
                stack.push(Syllable { gen: Gen::A, exp: remaining });
                remaining = BigInt::zero();
            }
        }
    }
}

/// A Britton-reduced, coset-normalized word. Two normal forms over the same
/// group are equal exactly when they represent the same element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    word: Word,
    group: GroupSpec,
}

impl NormalForm {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_identity()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// Canonical representative: Britton-reduce, then push `b`-exponents to the
/// right so that the exponent before each `a` lies in `0..|m|` and the one
/// before each `a^-1` lies in `0..|n|`, carrying `b^(qm) a = a b^(qn)` and
/// `b^(qn) a^-1 = a^-1 b^(qm)`.
pub fn normal_form(w: &Word, group: &GroupSpec) -> NormalForm {
    let reduced = britton_reduce(w, group);

    // Flatten to b^e0 a^s1 b^e1 ... a^sk b^ek with each s = ±1.
    let mut head = BigInt::zero();
    let mut letters: Vec<(i8, BigInt)> = Vec::new();
    for s in reduced.syllables() {
        match s.gen {
            Gen::B => match letters.last_mut() {
                Some((_, e)) => *e += &s.exp,
                None => head += &s.exp,
            },
            Gen::A => {
                let sign: i8 = if s.exp.is_positive() { 1 } else { -1 };
                let count = s.exp.magnitude().clone();
                let mut i = num_bigint::BigUint::zero();
                while i < count {
                    letters.push((sign, BigInt::zero()));
                    i += 1u32;
                }
            }
        }
    }

    let m = BigInt::from(group.m());
    let n = BigInt::from(group.n());
    let mut out = Word::identity();
    let mut before = head;
    for (sign, after) in letters.iter_mut() {
        let (through, across) = if *sign == 1 { (&m, &n) } else { (&n, &m) };
        let modulus = through.abs();
        let (q_abs, r) = before.div_mod_floor(&modulus);
        let q = if through.is_negative() { -q_abs } else { q_abs };
        out.push(Gen::B, r);
        out.push(Gen::A, BigInt::from(*sign));
        *after += q * across;
        before = after.clone();
    }
    out.push(Gen::B, before);

    NormalForm { word: out, group: *group }
}

/// Word problem: `u = v` in `B(m,n)` iff `u v^-1` Britton-reduces to the
/// empty word.
pub fn are_equal(u: &Word, v: &Word, group: &GroupSpec) -> bool {
    britton_reduce(&u.multiply(&v.inverse()), group).is_identity()
}

pub fn is_trivial(w: &Word, group: &GroupSpec) -> bool {
    britton_reduce(w, group).is_identity()
}

/// Whether `w` contains a pinch.
pub fn has_pinch(w: &Word, group: &GroupSpec) -> bool {
    let s = w.syllables();
    s.windows(3).any(|win| {
        if win[0].gen != Gen::A || win[1].gen != Gen::B {
            return false;
        }
        let t = &win[1].exp;
        if win[0].exp.is_negative() && win[2].exp.is_positive() {
            (t % BigInt::from(group.m())).is_zero()
        } else if win[0].exp.is_positive() && win[2].exp.is_negative() {
            (t % BigInt::from(group.n())).is_zero()
        } else {
            false
        }
    })
}
