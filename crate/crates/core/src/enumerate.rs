//! Exhaustive enumeration of small T0 spaces and small semirings, one
//! representative per isomorphism class.

use std::collections::BTreeSet;

use crate::error::{Elem, Error, Result};
use crate::exec::Execution;
use crate::order::FinCim;
use crate::semiring::FinSemiring;
use crate::topology::FinTop;

pub const MAX_POSET_POINTS: usize = 5;
pub const MAX_SEMIRING_CARRIER: usize = 4;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Bit `a * n + b` set when `a <= b`.
type Relation = u64;

fn canonical_relation(rel: Relation, n: usize, perms: &[Vec<usize>]) -> Relation {
    perms
        .iter()
        .map(|p| {
            let mut r = 0;
            for a in 0..n {
                for b in 0..n {
                    if rel >> (a * n + b) & 1 == 1 {
                        r |= 1 << (p[a] * n + p[b]);
                    }
                }
            }
            r
        })
        .min()
        .expect("at least one permutation")
}

fn is_partial_order(rel: Relation, n: usize) -> bool {
    let le = |a: usize, b: usize| rel >> (a * n + b) & 1 == 1;
    (0..n).all(|a| le(a, a))
        && (0..n).all(|a| (0..n).all(|b| a == b || !(le(a, b) && le(b, a))))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le(a, b) && le(b, c)) || le(a, c))))
}

fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn space_of(rel: Relation, n: usize) -> FinTop {
    FinTop::from_specialization(point_names(n), |x, y| rel >> (x * n + y) & 1 == 1)
        .expect("posets give T0 spaces")
}

/// Canonical forms of the partial orders on `n` points, generated from
/// naturally labelled orders (`a <= b` only if `a <= b` as integers).
fn poset_forms(n: usize, exec: Execution) -> BTreeSet<Relation> {
    let perms = permutations(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let diag: Relation = (0..n).fold(0, |r, a| r | 1 << (a * n + a));
    exec.filter_map_range(1 << pairs.len(), |bits| {
        let rel = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .fold(diag, |r, (_, &(a, b))| r | 1 << (a * n + b));
        is_partial_order(rel, n).then(|| canonical_relation(rel, n, &perms))
    })
    .into_iter()
    .collect()
}

/// Every finite T0 space on `n <= 5` points up to homeomorphism.
pub fn enumerate_posets(n: usize, exec: Execution) -> Result<Vec<FinTop>> {
    if n > MAX_POSET_POINTS {
        return Err(Error::Guard {
            what: "poset points",
            needed: n,
            limit: MAX_POSET_POINTS,
        });
    }
    Ok(poset_forms(n, exec)
        .into_iter()
        .map(|r| space_of(r, n))
        .collect())
}

/// Count of unlabeled posets by filtering every relation on `n` points.
pub fn count_posets_naive(n: usize) -> Result<usize> {
    if n > 4 {
        return Err(Error::Guard {
            what: "naive poset enumeration points",
            needed: n,
            limit: 4,
        });
    }
    let perms = permutations(n);
    let forms: BTreeSet<Relation> = (0..1u64 << (n * n))
        .filter(|&r| is_partial_order(r, n))
        .map(|r| canonical_relation(r, n, &perms))
        .collect();
    Ok(forms.len())
}

fn semiring_key(r: &FinSemiring, p: &[usize]) -> Vec<usize> {
    let n = r.size();
    let mut inv = vec![0; n];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    let mut key = Vec::with_capacity(2 * n * n + 1);
    key.push(p[r.one()]);
    for a in 0..n {
        for b in 0..n {
            key.push(p[r.add(inv[a], inv[b])]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            key.push(p[r.mul(inv[a], inv[b])]);
        }
    }
    key
}

fn canonical_semiring(r: &FinSemiring, perms: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    perms
        .iter()
        .map(|p| (semiring_key(r, p), p.clone()))
        .min()
        .expect("at least one permutation")
}

fn lattices(n: usize, exec: Execution) -> Vec<FinCim> {
    if n == 1 {
        return vec![FinCim::chain(1)];
    }
    poset_forms(n, exec)
        .into_iter()
        .filter_map(|rel| FinCim::from_order(n, |a, b| rel >> (a * n + b) & 1 == 1).ok())
        .collect()
}

fn multiplications(add: &FinCim, one: Elem) -> Vec<FinSemiring> {
    let n = add.size();
    let zero = add.bottom();
    let free: Vec<(Elem, Elem)> = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != zero && b != zero && a != one && b != one)
        .collect();
    let mut out = Vec::new();
    let mut table = vec![vec![usize::MAX; n]; n];
    for a in 0..n {
        table[zero][a] = zero;
        table[a][zero] = zero;
        if a != zero {
            table[one][a] = a;
            table[a][one] = a;
        }
    }
    if one == zero && n > 1 {
        return out;
    }
    let total = n.pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &(a, b) in &free {
            table[a][b] = c % n;
            table[b][a] = c % n;
            c /= n;
        }
        if let Ok(r) = FinSemiring::new(add.clone(), table.clone(), one) {
            out.push(r);
        }
    }
    out
}

/// Every semiring with idempotent addition on `n <= 4` elements, up to
/// isomorphism.
pub fn enumerate_semirings(n: usize, exec: Execution) -> Result<Vec<FinSemiring>> {
    if n == 0 || n > MAX_SEMIRING_CARRIER {
        return Err(Error::Guard {
            what: "semiring carrier",
            needed: n,
            limit: MAX_SEMIRING_CARRIER,
        });
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for add in lattices(n, exec) {
        let found: Vec<Vec<FinSemiring>> = exec.map_range(n, |one| multiplications(&add, one));
        for r in found.into_iter().flatten() {
            let (key, _) = canonical_semiring(&r, &perms);
            if seen.insert(key) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// The idealic members of [`enumerate_semirings`].
pub fn enumerate_idealic_semirings(n: usize, exec: Execution) -> Result<Vec<FinSemiring>> {
    Ok(enumerate_semirings(n, exec)?
        .into_iter()
        .filter(FinSemiring::is_idealic)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_posets(n, Execution::Sequential).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 2, 5, 16, 63]);
        for n in 1..=3 {
            assert_eq!(count_posets_naive(n).unwrap(), counts[n - 1]);
        }
    }

    #[test]
    fn two_point_spaces() {
        let xs = enumerate_posets(2, Execution::Sequential).unwrap();
        let closed: Vec<usize> = xs.iter().map(|x| x.closed_sets().len()).collect();
        // discrete and Sierpinski
        assert!(closed.contains(&4) && closed.contains(&3));
    }

    #[test]
    fn strategies_agree() {
        let a = enumerate_semirings(4, Execution::Sequential).unwrap();
        let b = enumerate_semirings(4, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn small_semiring_counts() {
        let counts: Vec<usize> = (1..=3)
            .map(|n| enumerate_semirings(n, Execution::Sequential).unwrap().len())
            .collect();
        // the unit must differ from 0, so F1 is the only two-element case
        assert_eq!(counts[0], 1);
        assert_eq!(counts[1], 1);
        let idealic3 = enumerate_idealic_semirings(3, Execution::Sequential).unwrap();
        assert!(idealic3
            .iter()
            .any(|r| r.is_isomorphic(&crate::fixtures::c3())));
        assert!(idealic3
            .iter()
            .any(|r| r.is_isomorphic(&crate::fixtures::n_eps())));
    }

    #[test]
    fn guard() {
        assert!(enumerate_posets(6, Execution::Sequential).is_err());
        assert!(enumerate_semirings(5, Execution::Sequential).is_err());
    }
}
