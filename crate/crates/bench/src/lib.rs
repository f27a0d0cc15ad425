//! Fixed inputs shared by the benchmarks.

use rigidsep::construct::{best_known_family, cyclic_family};
use rigidsep::Family;

/// Separating family of orders on `m` points, `m >= 2`.
pub fn separating(m: usize) -> Family {
    best_known_family(m).expect("m >= 2")
}

/// The `m` cyclic shifts on `m` points.
pub fn cyclic(m: usize) -> Family {
    cyclic_family(m).expect("m >= 2")
}

/// A best known family on `m <= 7` points with one order removed; one short of the lower bound.
pub fn one_short(m: usize) -> Family {
    let orders = separating(m).linear_orders().expect("orders").to_vec();
    Family::linear(m, orders[..orders.len() - 1].to_vec()).expect("same ground set")
}

pub const SEARCH_CASES: &[(usize, usize)] = &[(5, 4), (5, 5), (6, 4), (6, 5), (7, 5)];
