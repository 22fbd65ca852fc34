#![allow(dead_code)]

use qenum::gf4::{AdditiveCode, Gf4Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random symplectic self-orthogonal additive code of length `n`, grown
/// greedily from random vectors.
pub fn random_self_orthogonal(n: usize, seed: u64) -> AdditiveCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = (1u64 << n) - 1;
    let target = rng.gen_range(0..=n);
    let mut gens: Vec<Gf4Vector> = Vec::new();
    for _ in 0..64 {
        if gens.len() == target {
            break;
        }
        let v = Gf4Vector::new(n, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask).unwrap();
        if v.is_zero() || gens.iter().any(|g| g.symplectic(&v)) {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(v);
        if AdditiveCode::new(n, trial.clone()).is_ok() {
            gens = trial;
        }
    }
    AdditiveCode::new(n, gens).unwrap()
}

/// Random additive code, not necessarily self-orthogonal.
pub fn random_code(n: usize, seed: u64) -> AdditiveCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = (1u64 << n) - 1;
    let rows: Vec<Gf4Vector> = (0..rng.gen_range(0..=2 * n))
        .map(|_| Gf4Vector::new(n, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask).unwrap())
        .collect();
    AdditiveCode::span(n, &rows).unwrap()
}

pub const FIVE_QUBIT: &str = "n=5 format=f4\n1 0 1 w2 w2\n0 1 w2 w2 1\n";
