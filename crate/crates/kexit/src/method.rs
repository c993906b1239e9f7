//! The K-Exit sets and verdicts.
//!
//! For a prime `p` of `|G|` with `m = w_G(p)`:
//!
//! * `theta(p)`: primes `q != p` of `|G|` dividing none of `p^i - 1`, `1 <= i <= m`.
//! * `theta_bar(p)`: primes `q != p` of `|G|` not dividing `p^m - 1`.
//! * `H(p, G)`, the page of `p`: those `q` in `theta(p)` with `p` in `theta_bar(q)`.
//! * `L(p, G)`: primes `q != p` with `p` not dividing `q^n - 1` (`n = w_G(q)`) and
//!   `q` not dividing `p^gcd(lcm(1..m), q - 1) - 1`.
//!
//! If `d_G(p)` is smaller than `|H(p, G)|` (or `|L(p, G)|`), then `p` divides
//! the order of no normal solvable subgroup of `G`.
//!
//! Membership is decided pairwise with residues modulo `q`; no `p^i - 1` is
//! ever formed.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd_lcm_range, mod_mul, mod_pow};
use crate::model::KExitContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MethodError {
    #[error("{0} is not a prime divisor of the group order")]
    PrimeNotInGroup(u64),
}

/// Which exit rule to apply.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Method {
    /// Compare the degree against `|H(p, G)|`.
    H,
    /// Compare the degree against `|L(p, G)|`.
    L,
    /// Either rule suffices.
    #[default]
    Both,
}

/// Outcome of [`exit_verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    /// `p` lies outside `pi(K)` for every normal solvable subgroup `K`.
    pub exits: bool,
    /// The set size the degree was compared against; `max(|H|, |L|)` for
    /// [`Method::Both`].
    pub witness_size: usize,
    pub degree: u64,
}

/// `w_G(p)`.
pub fn power_of(ctx: &KExitContext, p: u64) -> Result<u64, MethodError> {
    ctx.order()
        .exponent(p)
        .ok_or(MethodError::PrimeNotInGroup(p))
}

/// True when `q` divides `p^i - 1` for some `1 <= i <= m`.
fn divides_some_power_minus_one(p: u64, m: u64, q: u64) -> bool {
    let residue = p % q;
    let mut acc = 1u64;
    // The powers of p cycle with period dividing q - 1.
    for _ in 0..m.min(q - 1) {
        acc = mod_mul(acc, residue, q);
        if acc == 1 {
            return true;
        }
    }
    false
}

fn others(ctx: &KExitContext, p: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
    ctx.order()
        .factors()
        .iter()
        .copied()
        .filter(move |&(q, _)| q != p)
}

pub fn theta(ctx: &KExitContext, p: u64) -> Result<Vec<u64>, MethodError> {
    let m = power_of(ctx, p)?;
    Ok(others(ctx, p)
        .filter(|&(q, _)| !divides_some_power_minus_one(p, m, q))
        .map(|(q, _)| q)
        .collect())
}

pub fn theta_bar(ctx: &KExitContext, p: u64) -> Result<Vec<u64>, MethodError> {
    let m = power_of(ctx, p)?;
    Ok(others(ctx, p)
        .filter(|&(q, _)| mod_pow(p, m, q) != 1)
        .map(|(q, _)| q)
        .collect())
}

/// `H(p, G)`.
pub fn page_set(ctx: &KExitContext, p: u64) -> Result<Vec<u64>, MethodError> {
    let m = power_of(ctx, p)?;
    Ok(others(ctx, p)
        .filter(|&(q, n)| !divides_some_power_minus_one(p, m, q) && mod_pow(q, n, p) != 1)
        .map(|(q, _)| q)
        .collect())
}

/// `L(p, G)`.
pub fn l_set(ctx: &KExitContext, p: u64) -> Result<Vec<u64>, MethodError> {
    let m = power_of(ctx, p)?;
    Ok(others(ctx, p)
        .filter(|&(q, n)| mod_pow(q, n, p) != 1 && mod_pow(p, gcd_lcm_range(m, q - 1), q) != 1)
        .map(|(q, _)| q)
        .collect())
}

pub fn exit_verdict(ctx: &KExitContext, p: u64, method: Method) -> Result<Verdict, MethodError> {
    let degree = ctx.degree(p).ok_or(MethodError::PrimeNotInGroup(p))?;
    let witness_size = match method {
        Method::H => page_set(ctx, p)?.len(),
        Method::L => l_set(ctx, p)?.len(),
        Method::Both => page_set(ctx, p)?.len().max(l_set(ctx, p)?.len()),
    };
    Ok(Verdict {
        exits: degree < witness_size as u64,
        witness_size,
        degree,
    })
}

/// One row of a K-Exit table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KExitRow {
    pub prime: u64,
    /// `w_G(p)`.
    pub m: u64,
    pub theta: Vec<u64>,
    pub theta_bar: Vec<u64>,
    /// `H(p, G)`.
    pub page: Vec<u64>,
    pub l_set: Vec<u64>,
    /// `d_G(p)`.
    pub degree: u64,
    #[serde(rename = "exits_by_H")]
    pub exits_by_h: bool,
    #[serde(rename = "exits_by_L")]
    pub exits_by_l: bool,
}

impl KExitRow {
    pub fn compute(ctx: &KExitContext, p: u64) -> Result<Self, MethodError> {
        let page = page_set(ctx, p)?;
        let l_set = l_set(ctx, p)?;
        let degree = ctx.degree(p).ok_or(MethodError::PrimeNotInGroup(p))?;
        Ok(KExitRow {
            prime: p,
            m: power_of(ctx, p)?,
            theta: theta(ctx, p)?,
            theta_bar: theta_bar(ctx, p)?,
            exits_by_h: degree < page.len() as u64,
            exits_by_l: degree < l_set.len() as u64,
            page,
            l_set,
            degree,
        })
    }

    pub fn exits(&self, method: Method) -> bool {
        match method {
            Method::H => self.exits_by_h,
            Method::L => self.exits_by_l,
            Method::Both => self.exits_by_h || self.exits_by_l,
        }
    }
}

/// A full K-Exit table: one row per prime of `|G|`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KExitTable {
    pub rows: Vec<KExitRow>,
    /// Primes shown to lie outside `pi(K)` under the method the table was
    /// built with.
    pub excluded: Vec<u64>,
}

impl KExitTable {
    pub fn row(&self, p: u64) -> Option<&KExitRow> {
        self.rows.iter().find(|r| r.prime == p)
    }
}

pub fn build_table(ctx: &KExitContext, method: Method) -> KExitTable {
    let rows: Vec<KExitRow> = ctx
        .order()
        .primes()
        .map(|p| KExitRow::compute(ctx, p).expect("p is taken from the context"))
        .collect();
    let excluded = rows
        .iter()
        .filter(|r| r.exits(method))
        .map(|r| r.prime)
        .collect();
    KExitTable { rows, excluded }
}
