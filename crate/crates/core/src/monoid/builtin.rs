//! Example monoids bundled with the crate, parsed from the JSON files in
//! `data/`.

use super::Monoid;
use crate::desc::parse_monoid;

/// `(file name, JSON source)` for every bundled example.
pub const SOURCES: &[(&str, &str)] = &[
    ("bicyclic.mon", include_str!("../../data/bicyclic.mon")),
    ("bicyclic_bccb.mon", include_str!("../../data/bicyclic_bccb.mon")),
    ("free2.mon", include_str!("../../data/free2.mon")),
    ("free_comm2.mon", include_str!("../../data/free_comm2.mon")),
    ("free_comm3.mon", include_str!("../../data/free_comm3.mon")),
    ("integers.mon", include_str!("../../data/integers.mon")),
    ("naturals.mon", include_str!("../../data/naturals.mon")),
    ("naturals_x_z2.mon", include_str!("../../data/naturals_x_z2.mon")),
    ("t2.mon", include_str!("../../data/t2.mon")),
    ("t3.mon", include_str!("../../data/t3.mon")),
    ("trivial.mon", include_str!("../../data/trivial.mon")),
    ("z2.mon", include_str!("../../data/z2.mon")),
    ("zero_square_a.mon", include_str!("../../data/zero_square_a.mon")),
    ("zero_square_a0.mon", include_str!("../../data/zero_square_a0.mon")),
];

/// Parses a bundled example by file name (with or without `.mon`).
pub fn by_name(name: &str) -> Option<Monoid> {
    let file = if name.ends_with(".mon") { name.to_string() } else { format!("{name}.mon") };
    SOURCES
        .iter()
        .find(|(n, _)| *n == file)
        .map(|(n, text)| parse_monoid(text, n, None).expect("bundled example parses"))
}

fn load(name: &str) -> Monoid {
    by_name(name).expect("bundled example exists")
}

/// `⟨b, c | bc = 1⟩`
pub fn bicyclic() -> Monoid {
    load("bicyclic")
}

/// Bicyclic monoid generated by `{b, c, cb}`.
pub fn bicyclic_bccb() -> Monoid {
    load("bicyclic_bccb")
}

pub fn free_rank2() -> Monoid {
    load("free2")
}

pub fn free_comm2() -> Monoid {
    load("free_comm2")
}

pub fn free_comm3() -> Monoid {
    load("free_comm3")
}

/// `ℤ = ⟨p, q | pq = qp = 1⟩`
pub fn integers() -> Monoid {
    load("integers")
}

/// `ℕ`, free on one generator.
pub fn naturals() -> Monoid {
    load("naturals")
}

pub fn naturals_x_z2() -> Monoid {
    load("naturals_x_z2")
}

/// Full transformation monoid on two points.
pub fn t2() -> Monoid {
    load("t2")
}

/// Full transformation monoid on three points.
pub fn t3() -> Monoid {
    load("t3")
}

pub fn trivial() -> Monoid {
    load("trivial")
}

pub fn z2() -> Monoid {
    load("z2")
}

/// `{a, 0}` with every product `0`, identity adjoined, generated by `a`.
pub fn zero_square_a() -> Monoid {
    load("zero_square_a")
}

/// As [`zero_square_a`] but generated by `{a, 0}`.
pub fn zero_square_a0() -> Monoid {
    load("zero_square_a0")
}
