//! Seeded random secrets.
//!
//! The generator is `ChaCha8Rng::seed_from_u64(seed)`. Each secret is a
//! partial Fisher-Yates shuffle of `1..=k`: for `i` in `0..n` swap entry `i`
//! with an entry drawn by `gen_range(i..k)`, then keep the first `n`
//! entries. Secrets are drawn one after another from the same stream.

use permmind::{Code, Color, GameConfig};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random_secret(rng: &mut impl Rng, config: GameConfig) -> Code {
    let (n, k) = (config.n(), config.k());
    let mut pool: Vec<Color> = (1..=k as Color).collect();
    for i in 0..n {
        let j = rng.gen_range(i..k);
        pool.swap(i, j);
    }
    pool.truncate(n);
    Code::new(pool, config).expect("a shuffle prefix is injective")
}

pub fn seeded_secrets(config: GameConfig, samples: usize, seed: u64) -> Vec<Code> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| random_secret(&mut rng, config))
        .collect()
}
