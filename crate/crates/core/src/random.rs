//! Seeded random words for sampling tests.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group::GroupSpec;
use crate::reidemeister::IntMatrix;
use crate::word::{Gen, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_letter<R: Rng>(rng: &mut R) -> (Gen, i64) {
    match rng.gen_range(0..4) {
        0 => (Gen::A, 1),
        1 => (Gen::A, -1),
        2 => (Gen::B, 1),
        _ => (Gen::B, -1),
    }
}

fn letters_to_word(letters: &[(Gen, i64)]) -> Word {
    let mut w = Word::identity();
    for &(g, e) in letters {
        w.push(g, BigInt::from(e));
    }
    w
}

/// A word of at most `max_len` letters, each uniform in `a^±1, b^±1`,
/// freely reduced.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<(Gen, i64)> = (0..len).map(|_| random_letter(rng)).collect();
    letters_to_word(&letters)
}

/// `u` and a word equal to it in `group`, obtained by inserting a conjugate
/// `g r^±1 g^-1` of the relator at a random letter position of `u`.
pub fn random_equal_pair<R: Rng>(rng: &mut R, group: &GroupSpec, max_len: usize) -> (Word, Word) {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<(Gen, i64)> = (0..len).map(|_| random_letter(rng)).collect();
    let cut = rng.gen_range(0..=len);
    let conjugator = random_word(rng, 3);
    let relator = if rng.gen_bool(0.5) { group.relator() } else { group.relator().inverse() };
    let inserted = relator.conjugated_by(&conjugator);
    let u = letters_to_word(&letters);
    let v = letters_to_word(&letters[..cut]).multiply(&inserted).multiply(&letters_to_word(&letters[cut..]));
    (u, v)
}

/// A square matrix with entries in `-bound..=bound`.
pub fn random_matrix<R: Rng>(rng: &mut R, size: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..size)
        .map(|_| (0..size).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&rows).expect("rows have equal length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::britton::are_equal;

    #[test]
    fn seeded_runs_repeat() {
        let a: Vec<Word> = (0..5).map({
            let mut r = rng(7);
            move |_| random_word(&mut r, 12)
        }).collect();
        let mut r = rng(7);
        let b: Vec<Word> = (0..5).map(|_| random_word(&mut r, 12)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn equal_pairs_are_equal() {
        let group = GroupSpec::new(2, 3).unwrap();
        let mut r = rng(1);
        for _ in 0..50 {
            let (u, v) = random_equal_pair(&mut r, &group, 12);
            assert!(are_equal(&u, &v, &group));
        }
    }
}
