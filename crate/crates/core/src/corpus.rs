//! Named example shifts used by the CLI `check` suites and the tests.

use crate::shifts::{Shift, ShiftPresentation};

/// Even shift: a loop `a` at one vertex, a `b`-labeled 2-cycle.
pub fn even_presentation() -> ShiftPresentation {
    ShiftPresentation::sofic_from_triples("ab", &[("0", "a", "0"), ("0", "b", "1"), ("1", "b", "0")])
        .expect("valid")
}

pub fn even() -> Shift {
    even_presentation().trim().expect("nonempty")
}

/// Golden mean shift: `bb` forbidden.
pub fn golden_presentation() -> ShiftPresentation {
    ShiftPresentation::sft_from_strs("ab", &["bb"]).expect("valid")
}

pub fn golden() -> Shift {
    golden_presentation().trim().expect("nonempty")
}

pub fn full2_presentation() -> ShiftPresentation {
    ShiftPresentation::sofic_from_triples("ab", &[("0", "a", "0"), ("0", "b", "0")]).expect("valid")
}

pub fn full2() -> Shift {
    full2_presentation().trim().expect("nonempty")
}

/// Three `a`-loops joined by a cycle `b`, `c`, `d`.
pub fn four_letter_presentation() -> ShiftPresentation {
    ShiftPresentation::sofic_from_triples(
        "abcd",
        &[
            ("1", "a", "1"),
            ("2", "a", "2"),
            ("3", "a", "3"),
            ("1", "b", "2"),
            ("2", "c", "3"),
            ("3", "d", "1"),
        ],
    )
    .expect("valid")
}

pub fn four_letter() -> Shift {
    four_letter_presentation().trim().expect("nonempty")
}

/// The orbit of `(ab)^∞`.
pub fn periodic_ab_presentation() -> ShiftPresentation {
    ShiftPresentation::sofic_from_triples("ab", &[("0", "a", "1"), ("1", "b", "0")]).expect("valid")
}

pub fn periodic_ab() -> Shift {
    periodic_ab_presentation().trim().expect("nonempty")
}

/// The single point `a^∞`.
pub fn fixed_point_presentation() -> ShiftPresentation {
    ShiftPresentation::sofic_from_triples("a", &[("0", "a", "0")]).expect("valid")
}

pub fn fixed_point() -> Shift {
    fixed_point_presentation().trim().expect("nonempty")
}

/// Every named example, in a fixed order.
pub fn all() -> Vec<(&'static str, Shift)> {
    vec![
        ("even", even()),
        ("golden", golden()),
        ("full2", full2()),
        ("four-letter", four_letter()),
        ("periodic-ab", periodic_ab()),
        ("fixed-point", fixed_point()),
    ]
}

pub fn by_name(name: &str) -> Option<Shift> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}
