//! Named small instances used throughout the tests, the CLI and the
//! verification suites.

use crate::order::FinCim;
use crate::schemes::{FinMonoid, FinRing};
use crate::semiring::FinSemiring;
use crate::topology::FinTop;

fn names(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

/// The two-element idealic semiring `{0, 1}`.
pub fn f1() -> FinSemiring {
    FinSemiring::chain(2)
        .with_names(names(&["0", "1"]))
        .unwrap()
}

/// The chain `0 < m < 1` with `* = min`.
pub fn c3() -> FinSemiring {
    FinSemiring::chain(3)
        .with_names(names(&["0", "m", "1"]))
        .unwrap()
}

/// The diamond `{0, a, b, 1}` with `* = inf`.
pub fn b4() -> FinSemiring {
    let add = FinCim::new(
        vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 3, 3],
            vec![2, 3, 2, 3],
            vec![3, 3, 3, 3],
        ],
        0,
        3,
    )
    .unwrap();
    let mul = vec![
        vec![0, 0, 0, 0],
        vec![0, 1, 0, 1],
        vec![0, 0, 2, 2],
        vec![0, 1, 2, 3],
    ];
    FinSemiring::new(add, mul, 3)
        .unwrap()
        .with_names(names(&["0", "a", "b", "1"]))
        .unwrap()
}

/// `{0 < e < 1}` with `e * e = 0`.
pub fn n_eps() -> FinSemiring {
    let mul = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 2]];
    FinSemiring::new(FinCim::chain(3), mul, 2)
        .unwrap()
        .with_names(names(&["0", "e", "1"]))
        .unwrap()
}

/// The semiring with one element `0 = 1`.
pub fn zero_semiring() -> FinSemiring {
    FinSemiring::chain(1).with_names(names(&["0"])).unwrap()
}

/// The standard corpus of idealic semirings.
pub fn corpus() -> Vec<(&'static str, FinSemiring)> {
    vec![("F1", f1()), ("C3", c3()), ("B4", b4()), ("Neps", n_eps())]
}

/// Two points `o` (open) and `c` (closed); closed sets `{}`, `{c}`, `{o c}`.
pub fn sierpinski() -> FinTop {
    FinTop::new(names(&["o", "c"]), vec![0b00, 0b10, 0b11]).unwrap()
}

pub fn discrete(n: usize) -> FinTop {
    let points = (0..n).map(|i| format!("p{i}")).collect();
    FinTop::new(points, (0..1u64 << n).collect()).unwrap()
}

pub fn indiscrete(n: usize) -> FinTop {
    let points = (0..n).map(|i| format!("p{i}")).collect();
    FinTop::new(points, vec![0, (1u64 << n) - 1]).unwrap()
}

pub fn point() -> FinTop {
    discrete(1)
}

pub fn empty_space() -> FinTop {
    FinTop::new(vec![], vec![0]).unwrap()
}

/// `{1, x, y}` with `x^2 = xy = y^2 = y`.
pub fn truncated_monoid() -> FinMonoid {
    FinMonoid::new(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], 0)
        .unwrap()
        .with_names(names(&["1", "x", "y"]))
        .unwrap()
}

/// Monoids used for the monoid-type scheme examples.
pub fn monoid_corpus() -> Vec<(&'static str, FinMonoid)> {
    vec![
        ("trivial", FinMonoid::trivial()),
        ("Z2", FinMonoid::cyclic_group(2)),
        ("T", truncated_monoid()),
    ]
}

/// Rings used for the ring-type scheme examples.
pub fn ring_corpus() -> Vec<(&'static str, FinRing)> {
    vec![
        ("Z4", FinRing::zmod(4)),
        ("Z6", FinRing::zmod(6)),
        ("Z12", FinRing::zmod(12)),
    ]
}
