use num_bigint::BigInt;
use num_traits::Zero;

use crate::britton::{are_equal, normal_form};
use crate::word::{Gen, Word};

use super::EndoSpec;

/// Searches for `φ(b) = γ b^r γ^-1`.
///
/// If the normal form of `φ(b)` is already a power of `b` the answer is
/// `(1, r)` whatever the radius. Otherwise conjugators are tried by
/// increasing letter length up to `radius`, and for each one the exponents
/// `r = ±1, ±2, ..., ±radius`. `None` only means no witness at this radius.
pub fn koch_form_search(spec: &EndoSpec, radius: u32) -> Option<(Word, BigInt)> {
    let group = spec.group();
    let image = spec.image_b();
    let nf = normal_form(image, group);
    let syllables = nf.word().syllables();
    if syllables.is_empty() {
        return Some((Word::identity(), BigInt::zero()));
    }
    if syllables.len() == 1 && syllables[0].gen == Gen::B {
        return Some((Word::identity(), syllables[0].exp.clone()));
    }

    let r_max = i64::from(radius);
    let exponents: Vec<i64> = (1..=r_max).flat_map(|r| [r, -r]).collect();
    for gamma in words_by_length(radius) {
        let gamma_inv = gamma.inverse();
        for &r in &exponents {
            let candidate = gamma.multiply(&Word::b(r)).multiply(&gamma_inv);
            if are_equal(&candidate, image, group) {
                return Some((gamma, BigInt::from(r)));
            }
        }
    }
    None
}

/// Freely reduced words in `a^±1, b^±1` of letter length `0..=max`, shorter
/// first, in a fixed order.
fn words_by_length(max: u32) -> Vec<Word> {
    const LETTERS: [(Gen, i64); 4] = [(Gen::A, 1), (Gen::A, -1), (Gen::B, 1), (Gen::B, -1)];
    let mut out = vec![Word::identity()];
    let mut layer: Vec<Vec<(Gen, i64)>> = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for letters in &layer {
            for &(g, e) in &LETTERS {
                if letters.last() == Some(&(g, -e)) {
                    continue;
                }
                let mut w = letters.clone();
                w.push((g, e));
                next.push(w);
            }
        }
        out.extend(next.iter().map(|letters| {
            let mut w = Word::identity();
            for &(g, e) in letters {
                w.push(g, BigInt::from(e));
            }
            w
        }));
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::word::parse_word;

    fn g(m: i64, n: i64) -> GroupSpec {
        GroupSpec::new(m, n).unwrap()
    }

    #[test]
    fn examples() {
        let s = EndoSpec::new(g(1, 2), Word::a(1), Word::b(3));
        assert_eq!(koch_form_search(&s, 2), Some((Word::identity(), BigInt::from(3))));
        let s = EndoSpec::new(g(2, 3), Word::a(1), Word::b(2));
        assert_eq!(koch_form_search(&s, 1), Some((Word::identity(), BigInt::from(2))));
        let s = EndoSpec::new(g(1, 2), Word::a(1), parse_word("a^-1 b^3 a").unwrap());
        assert_eq!(koch_form_search(&s, 1), Some((Word::identity(), BigInt::from(6))));
    }

    #[test]
    fn finds_genuine_conjugates() {
        let group = g(2, 3);
        let image = parse_word("b a b^2 a^-1 b^-1").unwrap();
        let s = EndoSpec::new(group, Word::a(1), image.clone());
        let (gamma, r) = koch_form_search(&s, 2).unwrap();
        assert!(are_equal(&gamma.multiply(&Word::b(r)).multiply(&gamma.inverse()), &image, &group));
    }

    #[test]
    fn word_layers() {
        let words = words_by_length(3);
        assert_eq!(words.len(), 1 + 4 + 12 + 36);
        assert!(words.iter().all(|w| w.letter_len() <= BigInt::from(3)));
    }
}
