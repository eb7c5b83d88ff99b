//! Frozen values and independent brute-force cross-checks.

use std::collections::BTreeSet;

use idemspec::enumerate::{enumerate_idealic_semirings, enumerate_posets, enumerate_semirings};
use idemspec::fixtures;
use idemspec::schemes::{alpha1, spec_scheme, Algebra, FinRing, SchematizableType};
use idemspec::spectrum::spec;
use idemspec::{Execution, FinCim, FinSemiring, Guards};

#[test]
fn enumeration_counts() {
    let posets: Vec<usize> = (1..=5)
        .map(|n| enumerate_posets(n, Execution::Sequential).unwrap().len())
        .collect();
    assert_eq!(posets, [1, 2, 5, 16, 63]);
    let semirings: Vec<(usize, usize)> = (1..=4)
        .map(|n| {
            (
                enumerate_semirings(n, Execution::Sequential).unwrap().len(),
                enumerate_idealic_semirings(n, Execution::Sequential)
                    .unwrap()
                    .len(),
            )
        })
        .collect();
    assert_eq!(semirings, [(1, 1), (1, 1), (3, 2), (16, 7)]);
}

/// Every pair of commutative tables on three elements, deduplicated by
/// brute-force isomorphism tests.
#[test]
fn three_element_semirings_by_brute_force() {
    let n = 3;
    let off: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (1, 2)];
    let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut found: Vec<FinSemiring> = Vec::new();
    for add_code in 0..27usize {
        let mut add = vec![vec![0; n]; n];
        for (a, row) in add.iter_mut().enumerate() {
            row[a] = a;
        }
        let mut c = add_code;
        for &(a, b) in &off {
            add[a][b] = c % n;
            add[b][a] = c % n;
            c /= n;
        }
        // the additive unit is element 0 up to isomorphism
        for top in 1..n {
            let Ok(cim) = FinCim::new(add.clone(), 0, top) else {
                continue;
            };
            for mul_code in 0..729usize {
                let mut mul = vec![vec![0; n]; n];
                let mut c = mul_code;
                for &(a, b) in &all {
                    mul[a][b] = c % n;
                    mul[b][a] = c % n;
                    c /= n;
                }
                for one in 1..n {
                    if let Ok(r) = FinSemiring::new(cim.clone(), mul.clone(), one) {
                        if !found.iter().any(|s| s.is_isomorphic(&r)) {
                            found.push(r);
                        }
                    }
                }
            }
        }
    }
    let idealic = found.iter().filter(|r| r.is_idealic()).count();
    assert_eq!((found.len(), idealic), (3, 2));
    let enumerated: BTreeSet<usize> = enumerate_semirings(3, Execution::Sequential)
        .unwrap()
        .iter()
        .map(|r| found.iter().position(|s| s.is_isomorphic(r)).unwrap())
        .collect();
    assert_eq!(enumerated.len(), 3);
}

#[test]
fn spectra_of_the_corpus() {
    let points: Vec<(String, usize)> = fixtures::corpus()
        .into_iter()
        .map(|(n, r)| (n.to_string(), spec(&r).unwrap().space.size()))
        .collect();
    let expected = [("F1", 1), ("C3", 2), ("B4", 2), ("Neps", 1)];
    assert_eq!(points, expected.map(|(n, k)| (n.to_string(), k)));
}

#[test]
fn ideal_lattice_of_z12() {
    let a = alpha1(&Algebra::Ring(FinRing::zmod(12))).unwrap();
    let names = a.pre.cim().names().unwrap().to_vec();
    assert_eq!(names, ["(0)", "(6)", "(4)", "(3)", "(2)", "(1)"]);
    assert!(a.semiring().is_isomorphic(&fixtures::b4()));
}

#[test]
fn z6_splits_into_fields() {
    let s = spec_scheme(
        SchematizableType::ring(),
        &Algebra::Ring(FinRing::zmod(6)),
        &Guards::default(),
    )
    .unwrap();
    let sheaf = s.sheaf();
    let mut stalks: Vec<usize> = (0..s.space().size())
        .map(|x| sheaf.sections(sheaf.minimal(x)).size())
        .collect();
    stalks.sort();
    assert_eq!(stalks, [2, 3]);
    assert!(s.epsilon_is_isomorphism());
}
