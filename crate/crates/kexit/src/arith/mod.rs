//! Exact 64-bit integer arithmetic.
//!
//! Everything the K-Exit method needs reduces to divisibility questions of
//! the form "does the prime `q` divide `p^i - 1`?". Those are answered with
//! residues modulo `q`, so nothing here ever needs more than 128-bit
//! intermediates.

mod factor;
mod modular;
mod primality;

pub use factor::{factorize, factorize_with, FactorConfig, Factorization};
pub use modular::{gcd, gcd_lcm_range, mod_mul, mod_pow, mult_order};
pub use primality::{is_prime, primes_up_to};

use thiserror::Error;

/// Errors raised by the arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// Pollard rho ran out of its iteration budget on this cofactor.
    #[error("could not split composite cofactor {0} within the factoring budget")]
    CompositeTooHard(u64),
    /// The multiplicative order of `base` modulo `prime` is undefined.
    #[error("{base} is divisible by {prime}; no multiplicative order exists")]
    NotCoprime { base: u64, prime: u64 },
}
