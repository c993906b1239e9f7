//! Brute-force recomputation of the K-Exit sets with exact big integers.
//!
//! Each set is evaluated straight from its definition: `p^i - 1` and
//! `lcm(1, ..., m)` are materialized and divisibility is decided by exact
//! remainder. None of the residue shortcuts in [`crate::method`] are used,
//! so agreement between the two is meaningful.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::method::{l_set, page_set, theta, theta_bar};
use crate::model::KExitContext;

fn divides(q: u64, n: &BigUint) -> bool {
    (n % BigUint::from(q)).is_zero()
}

fn power_minus_one(base: u64, exp: u64) -> BigUint {
    let exp = u32::try_from(exp).expect("oracle exponents must fit in u32");
    BigUint::from(base).pow(exp) - BigUint::one()
}

fn exponent_of(ctx: &KExitContext, p: u64) -> Option<u64> {
    ctx.order()
        .factors()
        .iter()
        .find(|&&(q, _)| q == p)
        .map(|&(_, e)| e)
}

fn others(ctx: &KExitContext, p: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
    ctx.order()
        .factors()
        .iter()
        .copied()
        .filter(move |&(q, _)| q != p)
}

/// `theta(p)` from the exact values `p^1 - 1, ..., p^m - 1`.
/// `None` if `p` is not a prime of the order.
pub fn theta_by_bigint(ctx: &KExitContext, p: u64) -> Option<Vec<u64>> {
    let m = exponent_of(ctx, p)?;
    let values: Vec<BigUint> = (1..=m).map(|i| power_minus_one(p, i)).collect();
    Some(
        others(ctx, p)
            .filter(|&(q, _)| values.iter().all(|v| !divides(q, v)))
            .map(|(q, _)| q)
            .collect(),
    )
}

pub fn theta_bar_by_bigint(ctx: &KExitContext, p: u64) -> Option<Vec<u64>> {
    let m = exponent_of(ctx, p)?;
    let value = power_minus_one(p, m);
    Some(
        others(ctx, p)
            .filter(|&(q, _)| !divides(q, &value))
            .map(|(q, _)| q)
            .collect(),
    )
}

/// `H(p, G)` assembled from the two theta oracles.
pub fn page_by_bigint(ctx: &KExitContext, p: u64) -> Option<Vec<u64>> {
    let theta = theta_by_bigint(ctx, p)?;
    Some(
        theta
            .into_iter()
            .filter(|&q| {
                theta_bar_by_bigint(ctx, q)
                    .expect("q is a prime of the order")
                    .contains(&p)
            })
            .collect(),
    )
}

/// `L(p, G)` with `lcm(1, ..., m)` formed exactly.
pub fn l_by_bigint(ctx: &KExitContext, p: u64) -> Option<Vec<u64>> {
    let m = exponent_of(ctx, p)?;
    let lcm = (1..=m).fold(BigUint::one(), |acc, k| acc.lcm(&BigUint::from(k)));
    Some(
        others(ctx, p)
            .filter(|&(q, n)| {
                if divides(p, &power_minus_one(q, n)) {
                    return false;
                }
                let g = lcm.gcd(&BigUint::from(q - 1));
                let g = u64::try_from(&g).expect("gcd is at most q - 1");
                !divides(q, &power_minus_one(p, g))
            })
            .map(|(q, _)| q)
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Theta,
    ThetaBar,
    Page,
    L,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetKind::Theta => "theta",
            SetKind::ThetaBar => "theta_bar",
            SetKind::Page => "H",
            SetKind::L => "L",
        })
    }
}

/// A cell where the fast and the exact computation disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub prime: u64,
    pub set: SetKind,
    pub fast: Vec<u64>,
    pub exact: Vec<u64>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}): fast {:?} vs exact {:?}",
            self.set, self.prime, self.fast, self.exact
        )
    }
}

/// Compares every set of every row against the oracle.
pub fn verify_context(ctx: &KExitContext) -> Vec<Mismatch> {
    let mut mismatches = Vec::new();
    for p in ctx.order().primes() {
        let pairs = [
            (SetKind::Theta, theta(ctx, p), theta_by_bigint(ctx, p)),
            (
                SetKind::ThetaBar,
                theta_bar(ctx, p),
                theta_bar_by_bigint(ctx, p),
            ),
            (SetKind::Page, page_set(ctx, p), page_by_bigint(ctx, p)),
            (SetKind::L, l_set(ctx, p), l_by_bigint(ctx, p)),
        ];
        for (set, fast, exact) in pairs {
            let fast = fast.expect("p is taken from the context");
            let exact = exact.expect("p is taken from the context");
            if fast != exact {
                mismatches.push(Mismatch {
                    prime: p,
                    set,
                    fast,
                    exact,
                });
            }
        }
    }
    mismatches
}
