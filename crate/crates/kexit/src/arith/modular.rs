use super::{factorize, ArithError};

/// `a * b mod m` through a 128-bit intermediate.
#[inline]
pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Computes `base^exp mod modulus` by square-and-multiply.
///
/// Exact for every `u64` modulus. `modulus` must be at least 2.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus >= 2, "modulus must be >= 2");
    let mut result = 1 % modulus;
    let mut base = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_mul(result, base, modulus);
        }
        base = mod_mul(base, base, modulus);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The multiplicative order of `p` modulo the prime `q`: the least `d >= 1`
/// with `p^d = 1 (mod q)`.
///
/// Starts from `q - 1` and strips prime factors of `q - 1` while the power
/// stays at 1, so the cost is a handful of modular exponentiations.
pub fn mult_order(p: u64, q: u64) -> Result<u64, ArithError> {
    if p % q == 0 {
        return Err(ArithError::NotCoprime { base: p, prime: q });
    }
    if q == 2 {
        return Ok(1);
    }
    let mut order = q - 1;
    for &(ell, _) in factorize(q - 1)?.factors() {
        while order % ell == 0 && mod_pow(p, order / ell, q) == 1 {
            order /= ell;
        }
    }
    Ok(order)
}

/// `gcd(lcm(1, 2, ..., m), x)` without forming the lcm.
///
/// The lcm of `1..=m` is the product of the largest powers `l^a <= m` over
/// primes `l <= m`, so the gcd is the product of `l^min(a, v_l(x))`. Only
/// primes dividing `x` contribute; those are found by trial division of `x`
/// up to `min(m, sqrt(x))`.
pub fn gcd_lcm_range(m: u64, x: u64) -> u64 {
    debug_assert!(m >= 1 && x >= 1);
    // x <= m means x itself divides lcm(1..=m).
    if x <= m {
        return x;
    }
    let mut rest = x;
    let mut result = 1u64;
    let mut ell = 2u64;
    while ell <= m && ell.saturating_mul(ell) <= rest {
        if rest % ell == 0 {
            let mut v = 0u32;
            while rest % ell == 0 {
                rest /= ell;
                v += 1;
            }
            result *= ell.pow(v.min(max_power_within(ell, m)));
        }
        ell += if ell == 2 { 1 } else { 2 };
    }
    // Whatever is left is 1 or a single prime with valuation 1.
    if rest > 1 && rest <= m {
        result *= rest;
    }
    result
}

/// Largest `a` with `ell^a <= m`.
fn max_power_within(ell: u64, m: u64) -> u32 {
    let mut a = 0;
    let mut power = 1u64;
    while let Some(next) = power.checked_mul(ell) {
        if next > m {
            break;
        }
        power = next;
        a += 1;
    }
    a
}
