mod common;

use common::{random_code, random_self_orthogonal};
use num_rational::BigRational;
use proptest::prelude::*;
use qenum::enumerators::{
    enumerate_from_additive_code, enumerate_from_projector, extract_distances,
    inverse_krawtchouk_transform_c, krawtchouk_transform_c, verify_identities,
};
use qenum::gf4::AdditiveCode;
use qenum::krawtchouk::KrawtchoukTable;
use qenum::pauli::projector_from_code;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn identities_on_random_stabilizer_codes(n in 1usize..=5, seed in any::<u64>()) {
        let code = random_self_orthogonal(n, seed);
        prop_assert!(code.is_self_orthogonal());
        let e = enumerate_from_additive_code(&code).unwrap();
        for c in verify_identities(&e.primal, &e.dual) {
            prop_assert!(c.holds, "{} failed for\n{}", c.name, code.to_text());
        }
        let d = extract_distances(&e.primal, &e.dual).unwrap();
        prop_assert!(!d.asymmetric_frontier.is_empty());
        prop_assert!(d.symmetric_d >= 1);
    }

    #[test]
    fn projector_path_matches_counting(n in 1usize..=4, seed in any::<u64>()) {
        let code = random_self_orthogonal(n, seed);
        let e = enumerate_from_additive_code(&code).unwrap();
        let (p, d) = enumerate_from_projector(&projector_from_code(&code).unwrap()).unwrap();
        prop_assert_eq!(p, e.primal);
        prop_assert_eq!(d, e.dual);
    }

    #[test]
    fn dual_is_an_involution(n in 1usize..=6, seed in any::<u64>()) {
        let code = random_code(n, seed);
        let dual = code.symplectic_dual();
        prop_assert_eq!(dual.dimension(), 2 * n - code.dimension());
        prop_assert_eq!(dual.symplectic_dual(), code.clone());
        for g in code.generators() {
            for h in dual.generators() {
                prop_assert!(!g.symplectic(h));
            }
        }
        prop_assert_eq!(code.is_self_orthogonal(), code.generators().iter().all(|g| dual.contains(g)));
    }

    #[test]
    fn text_format_round_trips(n in 1usize..=8, seed in any::<u64>()) {
        let code = random_code(n, seed);
        prop_assert_eq!(AdditiveCode::parse(&code.to_text()).unwrap(), code);
    }
}

#[test]
fn composition_agrees_with_binary_weights() {
    for seed in 0..50u64 {
        let code = random_code(1 + (seed as usize % 6), seed);
        for w in code.codewords().unwrap() {
            let (nx, ny, nz) = w.composition().pauli_counts();
            let (wx, wz) = w.ab_weights();
            assert_eq!(wx, nx + ny);
            assert_eq!(wz, ny + nz);
            assert_eq!(w.hamming_weight(), nx + ny + nz);
        }
        if code.dimension() > code.len() {
            assert!(enumerate_from_additive_code(&code).is_err());
            continue;
        }
        let e = enumerate_from_additive_code(&code).unwrap();
        assert_eq!(e.primal.b_from_d(), e.primal.b);
        assert_eq!(e.primal.c_from_d(), e.primal.c);
    }
}

#[test]
fn at_least_twenty_distinct_random_codes_checked() {
    let mut seen = std::collections::BTreeSet::new();
    let mut seed = 0u64;
    while seen.len() < 20 {
        let code = random_self_orthogonal(2 + (seed as usize % 4), seed);
        seed += 1;
        if code.dimension() == 0 || !seen.insert(code.to_text()) {
            continue;
        }
        let e = enumerate_from_additive_code(&code).unwrap();
        assert!(verify_identities(&e.primal, &e.dual).iter().all(|c| c.holds));
    }
}

#[test]
fn krawtchouk_transform_round_trip_on_random_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(1..=16u64);
        let table: Vec<Vec<BigRational>> = (0..=n)
            .map(|_| {
                (0..=n)
                    .map(|_| BigRational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=9).into()))
                    .collect()
            })
            .collect();
        let t = KrawtchoukTable::new(n);
        let forward = krawtchouk_transform_c(&table, k, &t).unwrap();
        assert_eq!(inverse_krawtchouk_transform_c(&forward, k, &t).unwrap(), table);
        let back = inverse_krawtchouk_transform_c(&table, k, &t).unwrap();
        assert_eq!(krawtchouk_transform_c(&back, k, &t).unwrap(), table);
    }
}
