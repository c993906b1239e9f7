//! K-Exit tables for finite groups.
//!
//! Given the factorized order `|G|` and the degree pattern of the prime
//! graph of `G`, this crate computes, for every prime `p` of `|G|`, the
//! sets `theta(p)`, `theta_bar(p)`, `H(p, G)` and `L(p, G)`, and decides
//! whether the degree of `p` is small enough to prove that `p` divides the
//! order of no normal solvable subgroup of `G`.
//!
//! ```
//! use kexit::{build_table, catalog, validate, Method};
//!
//! let (order, degrees) = catalog::fixture("u3_31").unwrap();
//! let ctx = validate(order, degrees).unwrap();
//! let table = build_table(&ctx, Method::H);
//! assert_eq!(table.excluded, vec![5, 7, 19, 31]);
//! ```
//!
//! The guide in `book/` walks through the definitions and both worked
//! examples.

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod method;
pub mod model;
pub mod oracle;
pub mod render;

pub use method::{
    build_table, exit_verdict, l_set, page_set, power_of, theta, theta_bar, KExitRow, KExitTable,
    Method, MethodError, Verdict,
};
pub use model::{
    parse_degrees, parse_order, validate, validate_with, DegreePattern, GroupOrder, KExitContext,
    ModelError, ValidateOptions,
};
pub use render::{render, Format};
