//! Group orders of a few simple-group families, and the two worked fixtures
//! `U3(31)` and `U4(89)` with their degree patterns.
//!
//! Degree patterns cannot be derived from an order alone, so only the
//! fixtures carry one.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::{factorize, gcd, primes_up_to, ArithError};
use crate::method::KExitTable;
use crate::model::{DegreePattern, GroupOrder};

/// Largest `n` accepted for the alternating family.
pub const MAX_ALTERNATING_DEGREE: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid parameter {parameter} for {family}: {reason}")]
    InvalidParameter {
        family: Family,
        parameter: u64,
        reason: &'static str,
    },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A_n`, parameter `n >= 5`.
    Alternating,
    /// `L_2(q)`.
    Psl2,
    /// `U_3(q)`.
    Psu3,
    /// `U_4(q)`.
    Psu4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Alternating => "A",
            Family::Psl2 => "L2",
            Family::Psu3 => "U3",
            Family::Psu4 => "U4",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" | "alt" | "alternating" => Ok(Family::Alternating),
            "l2" | "psl2" => Ok(Family::Psl2),
            "u3" | "psu3" => Ok(Family::Psu3),
            "u4" | "psu4" => Ok(Family::Psu4),
            _ => Err(format!(
                "unknown family {s:?} (expected one of: alternating, psl2, psu3, psu4)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub parameter: u64,
}

impl FamilySpec {
    pub fn new(family: Family, parameter: u64) -> Self {
        FamilySpec { family, parameter }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.parameter)
    }
}

/// Exponent multiset accumulated from factorized pieces.
#[derive(Default)]
struct OrderBuilder(BTreeMap<u64, i64>);

impl OrderBuilder {
    fn add(&mut self, p: u64, e: u64) {
        *self.0.entry(p).or_default() += e as i64;
    }

    fn mul(&mut self, n: u64) -> Result<(), ArithError> {
        for &(p, e) in factorize(n)?.factors() {
            self.add(p, e);
        }
        Ok(())
    }

    fn div(&mut self, n: u64) -> Result<(), ArithError> {
        for &(p, e) in factorize(n)?.factors() {
            *self.0.entry(p).or_default() -= e as i64;
        }
        Ok(())
    }

    fn finish(self) -> GroupOrder {
        let factors = self
            .0
            .into_iter()
            .filter(|&(_, e)| e != 0)
            .map(|(p, e)| {
                assert!(e > 0, "divisor must divide the order");
                (p, e as u64)
            })
            .collect();
        GroupOrder::from_factors(factors).expect("factorize yields distinct primes")
    }
}

/// Splits `q = ell^k`.
fn prime_power(q: u64) -> Result<(u64, u64), CatalogError> {
    match factorize(q)?.factors() {
        [(ell, k)] => Ok((*ell, *k)),
        _ => Err(CatalogError::NotPrimePower(q)),
    }
}

/// The factorized order of the group named by `spec`.
///
/// * `|A_n| = n!/2`
/// * `|L_2(q)| = q(q^2 - 1) / gcd(2, q - 1)`
/// * `|U_3(q)| = q^3 (q^2 - 1)(q^3 + 1) / gcd(3, q + 1)`
/// * `|U_4(q)| = q^6 (q^2 - 1)(q^3 + 1)(q^4 - 1) / gcd(4, q + 1)`
///
/// The polynomial factors are split into cyclotomic pieces (`q - 1`,
/// `q + 1`, `q^2 - q + 1`, `q^2 + 1`) which are factored separately, so
/// `q` may go up to `2^31`.
pub fn family_order(spec: FamilySpec) -> Result<GroupOrder, CatalogError> {
    let FamilySpec { family, parameter } = spec;
    let invalid = |reason| CatalogError::InvalidParameter {
        family,
        parameter,
        reason,
    };
    if family == Family::Alternating {
        if parameter < 5 {
            return Err(invalid("n must be at least 5"));
        }
        if parameter > MAX_ALTERNATING_DEGREE {
            return Err(invalid("n is above the supported range"));
        }
        return Ok(alternating_order(parameter));
    }

    let q = parameter;
    if q < 2 {
        return Err(invalid("q must be a prime power >= 2"));
    }
    if q >= 1 << 31 {
        return Err(invalid("q must be below 2^31"));
    }
    let (ell, k) = prime_power(q)?;
    let mut order = OrderBuilder::default();
    let (q_power, divisor) = match family {
        Family::Psl2 => (1, gcd(2, q - 1)),
        Family::Psu3 => (3, gcd(3, q + 1)),
        Family::Psu4 => (6, gcd(4, q + 1)),
        Family::Alternating => unreachable!(),
    };
    order.add(ell, k * q_power);
    // q^2 - 1
    order.mul(q - 1)?;
    order.mul(q + 1)?;
    if matches!(family, Family::Psu3 | Family::Psu4) {
        // q^3 + 1 = (q + 1)(q^2 - q + 1)
        order.mul(q + 1)?;
        order.mul(q * q - q + 1)?;
    }
    if family == Family::Psu4 {
        // q^4 - 1 = (q - 1)(q + 1)(q^2 + 1)
        order.mul(q - 1)?;
        order.mul(q + 1)?;
        order.mul(q * q + 1)?;
    }
    order.div(divisor)?;
    Ok(order.finish())
}

/// `n!/2` via Legendre's formula.
fn alternating_order(n: u64) -> GroupOrder {
    let factors = primes_up_to(n)
        .into_iter()
        .map(|p| {
            let mut e = 0;
            let mut power = p;
            loop {
                e += n / power;
                match power.checked_mul(p) {
                    Some(next) if next <= n => power = next,
                    _ => break,
                }
            }
            if p == 2 {
                e -= 1;
            }
            (p, e)
        })
        .collect();
    GroupOrder::from_factors(factors).expect("sieve output is prime")
}

/// A worked example: order, degree pattern, and the cells of its published
/// K-Exit table.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub group: &'static str,
    pub order: &'static [(u64, u64)],
    pub degrees: &'static [u64],
    pub published: &'static [PublishedRow],
}

impl Fixture {
    pub fn order(&self) -> GroupOrder {
        GroupOrder::from_factors(self.order.to_vec()).expect("fixture orders are canonical")
    }

    pub fn degrees(&self) -> DegreePattern {
        DegreePattern::new(self.degrees.to_vec())
    }
}

/// One row of a published K-Exit table. `None` marks a cell left blank in
/// print; a printed dash in a set column is an empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedRow {
    pub prime: u64,
    pub theta: Option<&'static [u64]>,
    pub theta_bar: Option<&'static [u64]>,
    pub page: Option<&'static [u64]>,
    pub degree: u64,
    pub page_size: Option<usize>,
    pub excluded: bool,
}

const fn row(
    prime: u64,
    theta: Option<&'static [u64]>,
    theta_bar: Option<&'static [u64]>,
    page: Option<&'static [u64]>,
    degree: u64,
    page_size: Option<usize>,
    excluded: bool,
) -> PublishedRow {
    PublishedRow {
        prime,
        theta,
        theta_bar,
        page,
        degree,
        page_size,
        excluded,
    }
}

static U3_31_ROWS: [PublishedRow; 6] = [
    row(2, None, None, Some(&[]), 3, None, false),
    row(
        3,
        Some(&[5, 7, 19, 31]),
        Some(&[5, 7, 19, 31]),
        Some(&[5]),
        2,
        Some(1),
        false,
    ),
    row(
        5,
        Some(&[3, 7, 19, 31]),
        Some(&[3, 7, 19, 31]),
        Some(&[3, 7, 19]),
        2,
        Some(3),
        true,
    ),
    row(
        7,
        Some(&[5, 19, 31]),
        Some(&[5, 19, 31]),
        Some(&[5, 19, 31]),
        1,
        Some(3),
        true,
    ),
    row(
        19,
        Some(&[5, 7, 31]),
        Some(&[5, 7, 31]),
        Some(&[5, 7, 31]),
        1,
        Some(3),
        true,
    ),
    row(
        31,
        Some(&[7, 19]),
        Some(&[7, 19]),
        Some(&[7, 19]),
        1,
        Some(2),
        true,
    ),
];

static U4_89_ROWS: [PublishedRow; 9] = [
    row(2, None, None, Some(&[]), 6, None, false),
    row(
        3,
        Some(&[17, 89, 233, 373]),
        Some(&[5, 7, 11, 17, 89, 233, 373]),
        Some(&[17, 233]),
        6,
        Some(2),
        false,
    ),
    row(
        5,
        Some(&[7, 11, 17, 89, 233, 373]),
        Some(&[3, 7, 11, 17, 89, 233, 373]),
        Some(&[7, 17, 89, 233, 373]),
        6,
        Some(5),
        false,
    ),
    row(
        7,
        Some(&[5, 11, 17, 89, 233, 373]),
        Some(&[5, 11, 17, 89, 233, 373]),
        Some(&[5, 11, 17, 233, 373]),
        3,
        Some(5),
        true,
    ),
    row(
        11,
        Some(&[7, 17, 89, 233, 373]),
        Some(&[7, 17, 89, 233, 373]),
        Some(&[7, 17, 233, 373]),
        6,
        Some(4),
        false,
    ),
    row(
        17,
        Some(&[3, 5, 7, 11, 89, 233, 373]),
        Some(&[3, 5, 7, 11, 89, 233, 373]),
        Some(&[3, 5, 7, 11, 89, 233, 373]),
        3,
        Some(7),
        true,
    ),
    row(89, Some(&[]), Some(&[5, 7, 233]), Some(&[]), 4, None, false),
    row(
        233,
        Some(&[3, 5, 7, 11, 17, 89, 373]),
        Some(&[3, 5, 7, 11, 17, 89, 373]),
        Some(&[3, 5, 7, 11, 17, 89, 373]),
        3,
        Some(7),
        true,
    ),
    row(
        373,
        Some(&[5, 7, 11, 17, 89, 233]),
        Some(&[5, 7, 11, 17, 89, 233]),
        Some(&[5, 7, 11, 17, 233]),
        3,
        Some(5),
        true,
    ),
];

static FIXTURES: [Fixture; 2] = [
    Fixture {
        name: "u3_31",
        group: "U3(31)",
        order: &[(2, 11), (3, 1), (5, 1), (7, 2), (19, 1), (31, 3)],
        degrees: &[3, 2, 2, 1, 1, 1],
        published: &U3_31_ROWS,
    },
    Fixture {
        name: "u4_89",
        group: "U4(89)",
        order: &[
            (2, 9),
            (3, 7),
            (5, 3),
            (7, 1),
            (11, 2),
            (17, 1),
            (89, 6),
            (233, 1),
            (373, 1),
        ],
        degrees: &[6, 6, 6, 3, 6, 3, 4, 3, 3],
        published: &U4_89_ROWS,
    },
];

pub fn fixtures() -> &'static [Fixture] {
    &FIXTURES
}

pub fn find_fixture(name: &str) -> Result<&'static Fixture, CatalogError> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| CatalogError::UnknownFixture(name.to_string()))
}

/// The order and degree pattern of a named fixture.
pub fn fixture(name: &str) -> Result<(GroupOrder, DegreePattern), CatalogError> {
    let f = find_fixture(name)?;
    Ok((f.order(), f.degrees()))
}

/// A cell whose computed value differs from its published value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    pub prime: u64,
    pub column: &'static str,
    pub published: String,
    pub computed: String,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}): published {}, computed {}",
            self.column, self.prime, self.published, self.computed
        )
    }
}

fn set_text(set: &[u64]) -> String {
    if set.is_empty() {
        return "{}".into();
    }
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// Compares a computed table against the published rows, skipping blank
/// cells. The `result` column is compared under the table's own `excluded`
/// list.
pub fn published_diffs(published: &[PublishedRow], table: &KExitTable) -> Vec<CellDiff> {
    let mut diffs = Vec::new();
    for row in published {
        let Some(computed) = table.row(row.prime) else {
            diffs.push(CellDiff {
                prime: row.prime,
                column: "row",
                published: "present".into(),
                computed: "missing".into(),
            });
            continue;
        };
        let mut diff = |column, published: String, computed: String| {
            if published != computed {
                diffs.push(CellDiff {
                    prime: row.prime,
                    column,
                    published,
                    computed,
                });
            }
        };
        let sets = [
            ("theta", row.theta, &computed.theta),
            ("theta_bar", row.theta_bar, &computed.theta_bar),
            ("H", row.page, &computed.page),
        ];
        for (column, published, computed) in sets {
            if let Some(published) = published {
                diff(column, set_text(published), set_text(computed));
            }
        }
        diff("d", row.degree.to_string(), computed.degree.to_string());
        if let Some(size) = row.page_size {
            diff("|H|", size.to_string(), computed.page.len().to_string());
        }
        diff(
            "result",
            row.excluded.to_string(),
            table.excluded.contains(&row.prime).to_string(),
        );
    }
    diffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_order_examples() {
        let u3 = family_order(FamilySpec::new(Family::Psu3, 31)).unwrap();
        assert_eq!(
            u3.factors(),
            &[(2, 11), (3, 1), (5, 1), (7, 2), (19, 1), (31, 3)]
        );
        let u4 = family_order(FamilySpec::new(Family::Psu4, 89)).unwrap();
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
        let a5 = family_order(FamilySpec::new(Family::Alternating, 5)).unwrap();
        assert_eq!(a5.factors(), &[(2, 2), (3, 1), (5, 1)]);
    }

    #[test]
    fn small_groups() {
        // |L2(7)| = 168, |L2(8)| = 504, |U3(3)| = 6048, |U4(2)| = 25920, |A_8| = 20160
        let cases = [
            (Family::Psl2, 7, "2^3*3*7"),
            (Family::Psl2, 8, "2^3*3^2*7"),
            (Family::Psl2, 4, "2^2*3*5"),
            (Family::Psu3, 3, "2^5*3^3*7"),
            (Family::Psu4, 2, "2^6*3^4*5"),
            (Family::Alternating, 8, "2^6*3^2*5*7"),
        ];
        for (family, q, expected) in cases {
            let order = family_order(FamilySpec::new(family, q)).unwrap();
            assert_eq!(order.to_string(), expected, "{family}({q})");
        }
    }

    #[test]
    fn invalid_parameters() {
        assert_eq!(
            family_order(FamilySpec::new(Family::Psu3, 12)),
            Err(CatalogError::NotPrimePower(12))
        );
        assert!(matches!(
            family_order(FamilySpec::new(Family::Alternating, 4)),
            Err(CatalogError::InvalidParameter { .. })
        ));
        assert!(matches!(
            family_order(FamilySpec::new(Family::Psl2, 1)),
            Err(CatalogError::InvalidParameter { .. })
        ));
        assert!(matches!(
            family_order(FamilySpec::new(Family::Psu4, 1 << 31)),
            Err(CatalogError::InvalidParameter { .. })
        ));
    }

    #[test]
    fn fixture_lookup() {
        let (order, degrees) = fixture("u3_31").unwrap();
        assert_eq!(order.to_string(), "2^11*3*5*7^2*19*31^3");
        assert_eq!(degrees.degrees(), &[3, 2, 2, 1, 1, 1]);
        let (order, degrees) = fixture("u4_89").unwrap();
        assert_eq!(order.to_string(), "2^9*3^7*5^3*7*11^2*17*89^6*233*373");
        assert_eq!(degrees.degrees(), &[6, 6, 6, 3, 6, 3, 4, 3, 3]);
        assert_eq!(
            fixture("u5_3"),
            Err(CatalogError::UnknownFixture("u5_3".into()))
        );
    }

    #[test]
    fn family_parsing() {
        assert_eq!("PSU3".parse::<Family>(), Ok(Family::Psu3));
        assert_eq!("alternating".parse::<Family>(), Ok(Family::Alternating));
        assert!("sz".parse::<Family>().is_err());
    }
}
