//! Seeded random monomial ideals for the property and oracle suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exponent::ExponentVector;
use crate::ideal::MonomialIdeal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Between 1 and `max_gens` nonzero generators with exponents in `0..=max_exp`.
pub fn random_ideal<R: Rng>(rng: &mut R, dim: usize, max_gens: usize, max_exp: u64) -> MonomialIdeal {
    let count = rng.gen_range(1..=max_gens.max(1));
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let v: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..=max_exp)).collect();
        if v.iter().any(|&e| e > 0) {
            gens.push(ExponentVector::new(v));
        }
    }
    MonomialIdeal::minimalize(dim, gens).expect("generators share the dimension")
}

/// A random squarefree (hence radical) proper monomial ideal.
pub fn random_squarefree<R: Rng>(rng: &mut R, dim: usize, max_gens: usize) -> MonomialIdeal {
    random_ideal(rng, dim, max_gens, 1)
}
