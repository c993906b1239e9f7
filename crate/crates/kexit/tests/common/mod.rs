#![allow(dead_code)]

use kexit::{parse_degrees, parse_order, validate, DegreePattern, GroupOrder, KExitContext};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ctx(order: &str, degrees: &str) -> KExitContext {
    validate(parse_order(order).unwrap(), parse_degrees(degrees).unwrap()).unwrap()
}

pub fn u3_31() -> KExitContext {
    ctx("2^11*3*5*7^2*19*31^3", "3,2,2,1,1,1")
}

pub fn u4_89() -> KExitContext {
    ctx("2^9*3^7*5^3*7*11^2*17*89^6*233*373", "6,6,6,3,6,3,4,3,3")
}

/// Primes below `limit` by plain trial division.
pub fn primes_below(limit: u64) -> Vec<u64> {
    (2..limit)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

/// Degrees of a random simple graph on `k` vertices, so the pattern is
/// always realizable.
pub fn random_degrees(rng: &mut impl Rng, k: usize) -> Vec<u64> {
    let mut degrees = vec![0u64; k];
    for i in 0..k {
        for j in i + 1..k {
            if rng.gen_bool(0.5) {
                degrees[i] += 1;
                degrees[j] += 1;
            }
        }
    }
    degrees
}

/// Deterministic random contexts: 3 to 8 distinct primes below 10^4,
/// exponents 1 to 10, degree pattern of a random graph.
pub fn random_contexts(count: usize, seed: u64) -> Vec<KExitContext> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = primes_below(10_000);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(3..=8);
            let chosen: Vec<u64> = primes.choose_multiple(&mut rng, k).copied().collect();
            let factors = chosen
                .into_iter()
                .map(|p| (p, rng.gen_range(1..=10)))
                .collect();
            let order = GroupOrder::from_factors(factors).unwrap();
            let degrees = DegreePattern::new(random_degrees(&mut rng, k));
            validate(order, degrees).unwrap()
        })
        .collect()
}
