use std::fmt;
use std::sync::OnceLock;

use super::modular::{gcd, mod_mul};
use super::{is_prime, primes_up_to, ArithError};

/// A canonical prime factorization: primes strictly increasing, exponents
/// at least 1. The factorization of 1 is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u64, u64)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u64)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn into_factors(self) -> Vec<(u64, u64)> {
        self.factors
    }

    /// Multiplies the factorization back out. `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            let e = u32::try_from(e).ok()?;
            acc.checked_mul(p.checked_pow(e)?)
        })
    }

    fn from_unsorted(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(u64, u64)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { factors }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Effort limits for [`factorize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Primes up to this bound are removed by trial division.
    pub trial_limit: u64,
    /// Maximum Pollard-rho iterations per polynomial.
    pub rho_iterations: u64,
    /// Number of polynomials `x^2 + c` tried before giving up.
    pub rho_attempts: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_limit: 1_000_000,
            rho_iterations: 1 << 22,
            rho_attempts: 16,
        }
    }
}

const DEFAULT_TRIAL_LIMIT: u64 = 1_000_000;

fn small_primes(limit: u64) -> std::borrow::Cow<'static, [u64]> {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    if limit == DEFAULT_TRIAL_LIMIT {
        TABLE
            .get_or_init(|| primes_up_to(DEFAULT_TRIAL_LIMIT))
            .as_slice()
            .into()
    } else {
        primes_up_to(limit).into()
    }
}

/// Factors `n` with the default effort budget.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    factorize_with(n, &FactorConfig::default())
}

/// Factors `n >= 1`: trial division by the primes up to
/// `config.trial_limit`, then Pollard rho with Brent's cycle detection on
/// whatever composite cofactor remains.
pub fn factorize_with(n: u64, config: &FactorConfig) -> Result<Factorization, ArithError> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut found = Vec::new();
    let mut rest = n;
    for &p in small_primes(config.trial_limit).iter() {
        if p.saturating_mul(p) > rest {
            break;
        }
        while rest % p == 0 {
            rest /= p;
            found.push(p);
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            found.push(m);
            continue;
        }
        let d = split(m, config).ok_or(ArithError::CompositeTooHard(m))?;
        stack.push(d);
        stack.push(m / d);
    }
    Ok(Factorization::from_unsorted(found))
}

/// Finds a nontrivial divisor of the odd composite `n`.
fn split(n: u64, config: &FactorConfig) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    if let Some(r) = perfect_square_root(n) {
        return Some(r);
    }
    (1..=config.rho_attempts).find_map(|c| brent_rho(n, c, config.rho_iterations))
}

fn perfect_square_root(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s.checked_mul(s) == Some(n))
}

/// Brent's variant of Pollard rho on `x -> x^2 + c mod n`, batching
/// differences into a running product so gcds are taken every `BATCH` steps.
fn brent_rho(n: u64, c: u64, budget: u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let step = |x: u64| (mod_mul(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut x = y;
    let mut ys = y;
    let mut g = 1u64;
    let mut q = 1u64;
    let mut r = 1u64;
    let mut spent = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let batch = BATCH.min(r - k);
            for _ in 0..batch {
                y = step(y);
                q = mod_mul(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += batch;
        }
        spent += r;
        if spent > budget {
            return None;
        }
        r *= 2;
    }
    if g == n {
        // The batch overshot; replay it one step at a time.
        loop {
            ys = step(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(factorize(1).unwrap().factors(), &[]);
        assert_eq!(
            factorize(29792).unwrap().factors(),
            &[(2, 5), (7, 2), (19, 1)]
        );
        assert_eq!(factorize(60).unwrap().factors(), &[(2, 2), (3, 1), (5, 1)]);
        assert_eq!(
            factorize(7833).unwrap().factors(),
            &[(3, 1), (7, 1), (373, 1)]
        );
    }

    #[test]
    fn semiprimes_need_rho() {
        let p = 1_000_003u64;
        let q = 1_000_000_007u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(p, 1), (q, 1)]);
        let r = 4_294_967_291u64; // largest prime below 2^32
        assert_eq!(factorize(r * r).unwrap().factors(), &[(r, 2)]);
        assert_eq!(factorize(p * p * p).unwrap().factors(), &[(p, 3)]);
    }

    #[test]
    fn tiny_budget_reports_composite_too_hard() {
        let config = FactorConfig {
            trial_limit: 10,
            rho_iterations: 1,
            rho_attempts: 1,
        };
        let n = 1_000_003u64 * 1_000_033;
        assert_eq!(
            factorize_with(n, &config),
            Err(ArithError::CompositeTooHard(n))
        );
    }

    #[test]
    fn display() {
        assert_eq!(factorize(29792).unwrap().to_string(), "2^5*7^2*19");
        assert_eq!(factorize(1).unwrap().to_string(), "1");
    }
}
