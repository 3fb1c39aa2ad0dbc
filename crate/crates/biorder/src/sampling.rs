//! Deterministic random samplers for property runs. Everything is seeded
//! explicitly so corpora are reproducible across runs and platforms.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::words::{Alphabet, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly random freely reduced word of exactly the given length: each
/// letter avoids cancelling the previous one.
pub fn reduced_word<R: Rng>(rng: &mut R, alphabet: &Arc<Alphabet>, len: usize) -> Word {
    let n = alphabet.len() as u32;
    if n == 0 || len == 0 {
        return Word::identity(alphabet);
    }
    let mut letters: Vec<(u32, i64)> = Vec::with_capacity(len);
    for _ in 0..len {
        loop {
            let g = rng.gen_range(0..n);
            let e: i64 = if rng.gen() { 1 } else { -1 };
            if let Some(&(pg, pe)) = letters.last() {
                if pg == g && pe == -e {
                    continue;
                }
            }
            letters.push((g, e));
            break;
        }
    }
    Word::from_runs(alphabet, letters)
}

/// Random reduced word of length uniform in `0..=max_len`.
pub fn word_up_to<R: Rng>(rng: &mut R, alphabet: &Arc<Alphabet>, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    reduced_word(rng, alphabet, len)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_words_are_reduced_and_exact_length() {
        let a = Alphabet::numbered("x", 3);
        let mut r = rng(7);
        for len in [0usize, 1, 5, 40] {
            let w = reduced_word(&mut r, &a, len);
            assert_eq!(w.len(), len);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = Alphabet::numbered("x", 2);
        let w1 = reduced_word(&mut rng(42), &a, 20);
        let w2 = reduced_word(&mut rng(42), &a, 20);
        assert_eq!(w1, w2);
    }
}
