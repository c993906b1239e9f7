//! Input data: the factorized group order, the degree pattern of the prime
//! graph, and their validated pairing.
//!
//! Degrees are aligned positionally with the primes of the order in
//! ascending order: `degrees[i]` is the degree of the `i`-th smallest prime
//! divisor of `|G|`. The pattern itself need not be sorted.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::is_prime;

/// Prime bases must stay below this bound.
pub const PRIME_LIMIT: u64 = 1 << 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} occurs more than once")]
    DuplicatePrime(u64),
    #[error("prime {0} is too large (primes must be below 2^63)")]
    PrimeTooLarge(u64),
    #[error("length mismatch: {primes} primes but {degrees} degrees")]
    LengthMismatch { primes: usize, degrees: usize },
    #[error("degree {degree} of prime {prime} exceeds {max}, the number of other primes")]
    DegreeOutOfRange { prime: u64, degree: u64, max: u64 },
    #[error("degree sum {0} is odd, so no graph has this degree pattern")]
    OddDegreeSum(u64),
}

/// The factorization of `|G|`: strictly increasing primes with exponents
/// `>= 1`. The prime list is `pi(G)`; the exponent of `p` is `w_G(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GroupOrder {
    factors: Vec<(u64, u64)>,
}

impl GroupOrder {
    /// Builds an order from `(prime, exponent)` pairs in any order.
    pub fn from_factors(mut factors: Vec<(u64, u64)>) -> Result<Self, ModelError> {
        factors.sort_unstable_by_key(|&(p, _)| p);
        for pair in factors.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(ModelError::DuplicatePrime(pair[0].0));
            }
        }
        for &(p, e) in &factors {
            if p >= PRIME_LIMIT {
                return Err(ModelError::PrimeTooLarge(p));
            }
            if !is_prime(p) {
                return Err(ModelError::NotPrime(p));
            }
            if e == 0 {
                return Err(ModelError::Parse(format!(
                    "exponent of {p} must be at least 1"
                )));
            }
        }
        Ok(GroupOrder { factors })
    }

    pub fn factors(&self) -> &[(u64, u64)] {
        &self.factors
    }

    /// `pi(G)` in ascending order.
    pub fn primes(&self) -> impl ExactSizeIterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.index_of(p).is_some()
    }

    /// `w_G(p)`, the exponent of `p` in `|G|`.
    pub fn exponent(&self, p: u64) -> Option<u64> {
        self.index_of(p).map(|i| self.factors[i].1)
    }

    pub(crate) fn index_of(&self, p: u64) -> Option<usize> {
        self.factors.binary_search_by_key(&p, |&(q, _)| q).ok()
    }
}

impl<'de> Deserialize<'de> for GroupOrder {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let factors = Vec::<(u64, u64)>::deserialize(deserializer)?;
        GroupOrder::from_factors(factors).map_err(serde::de::Error::custom)
    }
}

/// Renders as `2^11*3*5*7^2*19*31^3`; exponent 1 is omitted.
impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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

impl FromStr for GroupOrder {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_order(s)
    }
}

/// Parses `term ('*' term)*` with `term := prime ('^' exponent)?`.
///
/// Whitespace is ignored anywhere. A JSON array of pairs such as
/// `[[2,11],[3,1]]` is accepted as well.
pub fn parse_order(text: &str) -> Result<GroupOrder, ModelError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.starts_with('[') {
        let factors: Vec<(u64, u64)> =
            serde_json::from_str(&compact).map_err(|e| ModelError::Parse(e.to_string()))?;
        return GroupOrder::from_factors(factors);
    }
    if compact.is_empty() {
        return Err(ModelError::Parse("empty order".into()));
    }
    let mut factors = Vec::new();
    for term in compact.split('*') {
        let (base, exp) = match term.split_once('^') {
            Some((b, e)) => (b, Some(e)),
            None => (term, None),
        };
        let base = parse_decimal(base, "prime")?;
        let exp = match exp {
            Some(e) => parse_decimal(e, "exponent")?,
            None => 1,
        };
        if exp == 0 {
            return Err(ModelError::Parse(format!(
                "exponent of {base} must be at least 1"
            )));
        }
        factors.push((base, exp));
    }
    GroupOrder::from_factors(factors)
}

fn parse_decimal(s: &str, what: &str) -> Result<u64, ModelError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ModelError::Parse(format!(
            "expected a decimal {what}, found {s:?}"
        )));
    }
    s.parse()
        .map_err(|_| ModelError::Parse(format!("{what} {s} does not fit in 64 bits")))
}

/// Prime-graph vertex degrees, one per prime of the companion order in
/// ascending prime order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreePattern {
    degrees: Vec<u64>,
}

impl DegreePattern {
    pub fn new(degrees: Vec<u64>) -> Self {
        DegreePattern { degrees }
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

impl fmt::Display for DegreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DegreePattern {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_degrees(s)
    }
}

/// Parses comma-separated non-negative integers, or a JSON array of them.
pub fn parse_degrees(text: &str) -> Result<DegreePattern, ModelError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.starts_with('[') {
        return serde_json::from_str(&compact).map_err(|e| ModelError::Parse(e.to_string()));
    }
    if compact.is_empty() {
        return Err(ModelError::Parse("empty degree pattern".into()));
    }
    compact
        .split(',')
        .map(|d| parse_decimal(d, "degree"))
        .collect::<Result<Vec<_>, _>>()
        .map(DegreePattern::new)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Accept a pattern whose degree sum is odd.
    pub allow_odd_degree_sum: bool,
}

/// A group order paired with a degree pattern that fits it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct KExitContext {
    order: GroupOrder,
    degrees: DegreePattern,
}

impl KExitContext {
    pub fn order(&self) -> &GroupOrder {
        &self.order
    }

    pub fn degrees(&self) -> &DegreePattern {
        &self.degrees
    }

    /// `d_G(p)`.
    pub fn degree(&self, p: u64) -> Option<u64> {
        self.order.index_of(p).map(|i| self.degrees.degrees[i])
    }
}

/// Checks the degree pattern against the order with default options.
pub fn validate(order: GroupOrder, degrees: DegreePattern) -> Result<KExitContext, ModelError> {
    validate_with(order, degrees, ValidateOptions::default())
}

pub fn validate_with(
    order: GroupOrder,
    degrees: DegreePattern,
    options: ValidateOptions,
) -> Result<KExitContext, ModelError> {
    if order.len() != degrees.len() {
        return Err(ModelError::LengthMismatch {
            primes: order.len(),
            degrees: degrees.len(),
        });
    }
    let max = order.len().saturating_sub(1) as u64;
    for (p, &d) in order.primes().zip(&degrees.degrees) {
        if d > max {
            return Err(ModelError::DegreeOutOfRange {
                prime: p,
                degree: d,
                max,
            });
        }
    }
    let sum: u64 = degrees.degrees.iter().sum();
    if sum % 2 == 1 && !options.allow_odd_degree_sum {
        return Err(ModelError::OddDegreeSum(sum));
    }
    Ok(KExitContext { order, degrees })
}

/// The JSON input form `{"order": [[2,11],[3,1]], "degrees": [1,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextInput {
    pub order: GroupOrder,
    pub degrees: DegreePattern,
}

impl ContextInput {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))
    }

    pub fn validate(self, options: ValidateOptions) -> Result<KExitContext, ModelError> {
        validate_with(self.order, self.degrees, options)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const U3_31: &str = "2^11*3*5*7^2*19*31^3";

    #[test]
    fn parse_order_examples() {
        let order = parse_order(U3_31).unwrap();
        assert_eq!(
            order.factors(),
            &[(2, 11), (3, 1), (5, 1), (7, 2), (19, 1), (31, 3)]
        );
        assert_eq!(parse_order("7").unwrap().factors(), &[(7, 1)]);
        let u4 = parse_order("2^9*3^7*5^3*7*11^2*17*89^6*233*373").unwrap();
        assert_eq!(
            u4.factors(),
            &[
                (2, 9),
                (3, 7),
                (5, 3),
                (7, 1),
                (11, 2),
                (17, 1),
                (89, 6),
                (233, 1),
                (373, 1)
            ]
        );
    }

    #[test]
    fn parse_order_whitespace_and_order_insensitive() {
        let spaced = parse_order(" 31 ^ 3 * 2^11 *3* 5*7^2 * 19 ").unwrap();
        assert_eq!(spaced, parse_order(U3_31).unwrap());
        assert_eq!(spaced.to_string(), U3_31);
    }

    #[test]
    fn parse_order_errors() {
        assert!(matches!(parse_order(""), Err(ModelError::Parse(_))));
        assert!(matches!(parse_order("2^"), Err(ModelError::Parse(_))));
        assert!(matches!(parse_order("2**3"), Err(ModelError::Parse(_))));
        assert!(matches!(parse_order("2^0"), Err(ModelError::Parse(_))));
        assert!(matches!(parse_order("-3"), Err(ModelError::Parse(_))));
        assert!(matches!(parse_order("2^x"), Err(ModelError::Parse(_))));
        assert_eq!(parse_order("2*9"), Err(ModelError::NotPrime(9)));
        assert_eq!(parse_order("1"), Err(ModelError::NotPrime(1)));
        assert_eq!(parse_order("3*2^2*3"), Err(ModelError::DuplicatePrime(3)));
        assert_eq!(
            parse_order("18446744073709551557"),
            Err(ModelError::PrimeTooLarge(18446744073709551557))
        );
    }

    #[test]
    fn parse_order_json_form() {
        let order = parse_order("[[7,2],[2,11],[3,1]]").unwrap();
        assert_eq!(order.factors(), &[(2, 11), (3, 1), (7, 2)]);
        assert_eq!(parse_order("[[4,1]]"), Err(ModelError::NotPrime(4)));
    }

    #[test]
    fn parse_degrees_examples() {
        assert_eq!(
            parse_degrees("3,2,2,1,1,1").unwrap().degrees(),
            &[3, 2, 2, 1, 1, 1]
        );
        assert_eq!(parse_degrees("0").unwrap().degrees(), &[0]);
        assert_eq!(
            parse_degrees("6,6,6,3,6,3,4,3,3").unwrap().degrees(),
            &[6, 6, 6, 3, 6, 3, 4, 3, 3]
        );
        assert_eq!(parse_degrees("[1, 1]").unwrap().degrees(), &[1, 1]);
        assert!(matches!(parse_degrees("1,,2"), Err(ModelError::Parse(_))));
        assert!(matches!(parse_degrees("1,-2"), Err(ModelError::Parse(_))));
        assert!(matches!(parse_degrees(""), Err(ModelError::Parse(_))));
    }

    #[test]
    fn validate_examples() {
        let order = parse_order(U3_31).unwrap();
        let ctx = validate(order.clone(), parse_degrees("3,2,2,1,1,1").unwrap()).unwrap();
        assert_eq!(ctx.degree(2), Some(3));
        assert_eq!(ctx.degree(31), Some(1));
        assert_eq!(ctx.degree(11), None);

        let single = validate(parse_order("7").unwrap(), DegreePattern::new(vec![0])).unwrap();
        assert_eq!(single.degree(7), Some(0));

        assert_eq!(
            validate(order, parse_degrees("3,2,2,1,1").unwrap()),
            Err(ModelError::LengthMismatch {
                primes: 6,
                degrees: 5
            })
        );
    }

    #[test]
    fn validate_range_and_parity() {
        let order = parse_order(U3_31).unwrap();
        assert_eq!(
            validate(order.clone(), parse_degrees("3,2,2,1,1,6").unwrap()),
            Err(ModelError::DegreeOutOfRange {
                prime: 31,
                degree: 6,
                max: 5
            })
        );
        assert_eq!(
            validate(order.clone(), parse_degrees("3,2,2,1,1,2").unwrap()),
            Err(ModelError::OddDegreeSum(11))
        );
        let lenient = ValidateOptions {
            allow_odd_degree_sum: true,
        };
        assert!(validate_with(order, parse_degrees("3,2,2,1,1,2").unwrap(), lenient).is_ok());
    }

    #[test]
    fn context_input_json() {
        let input = ContextInput::from_json(r#"{"order": [[7,1]], "degrees": [0]}"#).unwrap();
        let ctx = input.validate(ValidateOptions::default()).unwrap();
        assert_eq!(ctx.order().factors(), &[(7, 1)]);
        assert!(ContextInput::from_json(r#"{"order": [[8,1]], "degrees": [0]}"#).is_err());
    }
}
