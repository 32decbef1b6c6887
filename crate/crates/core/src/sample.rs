//! Seeded random words for property sampling.

use num_bigint::BigInt;
use rand::Rng;

use crate::freewords::{FreeWord, Generator, Params};

/// Raw letters `x^{±1}` of a uniformly drawn length in `0..=max_len`.
pub fn random_letters<R: Rng>(rng: &mut R, params: &Params, max_len: usize) -> Vec<(Generator, BigInt)> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let g = Generator::from_column(rng.gen_range(0..2 * params.n()));
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            (g, BigInt::from(e))
        })
        .collect()
}

pub fn random_word<R: Rng>(rng: &mut R, params: &Params, max_len: usize) -> FreeWord {
    FreeWord::from_letters(random_letters(rng, params, max_len))
}
