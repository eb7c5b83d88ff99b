//! Congruence relations on finite semirings.
//!
//! The infinite-sum compatibility condition collapses to binary sums on a
//! finite carrier: any family of related pairs has only finitely many
//! distinct members, and their sums are iterated binary sums.

use serde::Serialize;

use crate::error::{Elem, Error, Law, Result, Verdict, Violation};
use crate::guards::Guards;
use crate::semiring::{FinSemiring, SemiringHom};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two distinct classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root so representatives are minimal
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A partition of a semiring's carrier compatible with `+` and `*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruencePartition {
    base: FinSemiring,
    class_of: Vec<usize>,
    reps: Vec<Elem>,
}

/// Densely renumber a labelling so class ids follow their minimum element.
fn normalize(labels: &[usize]) -> (Vec<usize>, Vec<Elem>) {
    let mut id = std::collections::HashMap::new();
    let mut reps = Vec::new();
    let class_of = labels
        .iter()
        .enumerate()
        .map(|(x, l)| {
            *id.entry(*l).or_insert_with(|| {
                reps.push(x);
                reps.len() - 1
            })
        })
        .collect();
    (class_of, reps)
}

/// Whether a labelling of the carrier is a congruence.
pub fn check_congruence(r: &FinSemiring, labels: &[usize]) -> Verdict {
    for a in r.elements() {
        for b in r.elements() {
            if labels[a] != labels[b] {
                continue;
            }
            for c in r.elements() {
                if labels[r.add(a, c)] != labels[r.add(b, c)] {
                    return Err(Violation::new(Law::NotCongruence, [a, b, c]));
                }
                if labels[r.mul(a, c)] != labels[r.mul(b, c)] {
                    return Err(Violation::new(Law::NotCongruence, [a, b, c]));
                }
            }
        }
    }
    Ok(())
}

/// The least congruence containing `pairs`, by worklist fixpoint.
pub fn congruence_closure(r: &FinSemiring, pairs: &[(Elem, Elem)]) -> CongruencePartition {
    let n = r.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(Elem, Elem)> = pairs.to_vec();
    let mut edges = Vec::new();
    while let Some((a, b)) = work.pop() {
        if !uf.union(a, b) {
            continue;
        }
        edges.push((a, b));
        for c in r.elements() {
            work.push((r.add(a, c), r.add(b, c)));
            work.push((r.mul(a, c), r.mul(b, c)));
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    let (class_of, reps) = normalize(&labels);
    CongruencePartition {
        base: r.clone(),
        class_of,
        reps,
    }
}

impl CongruencePartition {
    /// Validate an explicit labelling of the carrier.
    pub fn from_labels(r: &FinSemiring, labels: &[usize]) -> Result<Self> {
        if labels.len() != r.size() {
            return Err(Error::Format(format!(
                "partition labels {} elements, carrier has {}",
                labels.len(),
                r.size()
            )));
        }
        check_congruence(r, labels)?;
        let (class_of, reps) = normalize(labels);
        Ok(CongruencePartition {
            base: r.clone(),
            class_of,
            reps,
        })
    }

    pub fn identity(r: &FinSemiring) -> Self {
        congruence_closure(r, &[])
    }

    pub fn total(r: &FinSemiring) -> Self {
        let pairs: Vec<_> = r.elements().map(|x| (r.zero(), x)).collect();
        congruence_closure(r, &pairs)
    }

    pub fn base(&self) -> &FinSemiring {
        &self.base
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    /// Minimum element of each class.
    pub fn representatives(&self) -> &[Elem] {
        &self.reps
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.reps.len()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// All related pairs, including the diagonal.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.class_of.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.related(a, b))
            .collect()
    }

    /// Whether every pair of `other` is related here (`other <= self`).
    pub fn contains(&self, other: &CongruencePartition) -> bool {
        other.pairs().iter().all(|&(a, b)| self.related(a, b))
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.class_of.len()
    }

    pub fn is_total(&self) -> bool {
        self.num_classes() == 1
    }

    /// Congruence generated by the union.
    pub fn join(&self, other: &CongruencePartition) -> CongruencePartition {
        let mut pairs = self.generators();
        pairs.extend(other.generators());
        congruence_closure(&self.base, &pairs)
    }

    /// A small generating set: each element paired with its representative.
    fn generators(&self) -> Vec<(Elem, Elem)> {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(x, &c)| self.reps[c] != x)
            .map(|(x, &c)| (self.reps[c], x))
            .collect()
    }

    /// Product: generated by `(ab + a'b', ab' + a'b)` over related pairs.
    pub fn product(&self, other: &CongruencePartition) -> CongruencePartition {
        let r = &self.base;
        let mut gens = Vec::new();
        for (a, a2) in self.pairs() {
            for (b, b2) in other.pairs() {
                gens.push((
                    r.add(r.mul(a, b), r.mul(a2, b2)),
                    r.add(r.mul(a, b2), r.mul(a2, b)),
                ));
            }
        }
        congruence_closure(r, &gens)
    }

    /// The finite form of the algebraicity condition: whenever
    /// `(a + sum B, sum B)` is related, some finite `B' <= B` already has
    /// `(a + sum B', sum B')` related. Always holds on finite carriers.
    pub fn is_algebraic(&self) -> bool {
        let r = &self.base;
        let n = r.size().min(10);
        (0..1usize << n).all(|mask| {
            let b: Vec<Elem> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            r.elements().all(|a| {
                let s = r.sup(&b);
                if !self.related(r.add(a, s), s) {
                    return true;
                }
                // smallest finite subfamily that works
                (0..1usize << b.len()).any(|sub| {
                    let part: Vec<Elem> = b
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| sub >> i & 1 == 1)
                        .map(|(_, &x)| x)
                        .collect();
                    let s2 = r.sup(&part);
                    self.related(r.add(a, s2), s2)
                })
            })
        })
    }
}

/// A quotient `R -> R/a` together with the congruence.
#[derive(Debug, Clone)]
pub struct QuotientHom {
    pub cong: CongruencePartition,
    pub quotient: FinSemiring,
    /// `pi[x]` is the class of `x`, an element of `quotient`.
    pub pi: Vec<Elem>,
}

/// Quotient semiring on class representatives, with well-definedness
/// re-verified on the tables.
pub fn quotient(cong: &CongruencePartition) -> Result<QuotientHom> {
    let r = cong.base();
    let t = r
        .tables()
        .quotient(cong.labels())
        .ok_or_else(|| Error::Invalid(Violation::new(Law::NotCongruence, vec![])))?;
    let mut q = FinSemiring::from_tables(&t)?;
    if r.cim().names().is_some() {
        q = q.with_names(cong.representatives().iter().map(|&x| r.name(x)).collect())?;
    }
    let pi = cong.labels().to_vec();
    debug_assert!(r.is_hom_to(&q, &pi));
    Ok(QuotientHom {
        cong: cong.clone(),
        quotient: q,
        pi,
    })
}

impl QuotientHom {
    pub fn base(&self) -> &FinSemiring {
        self.cong.base()
    }

    pub fn project(&self, x: Elem) -> Elem {
        self.pi[x]
    }

    pub fn as_hom(&self) -> SemiringHom {
        SemiringHom {
            source: self.base().clone(),
            target: self.quotient.clone(),
            map: self.pi.clone(),
        }
    }

    /// `pi^{-1}(b) = sup {x : pi(x) <= b}`.
    pub fn inverse_image(&self, b: Elem) -> Elem {
        self.base().sup_where(|x| self.quotient.leq(self.pi[x], b))
    }

    /// `pi^{-1}(pi(a))`: the largest element identified with `a`.
    pub fn saturation(&self, a: Elem) -> Elem {
        self.inverse_image(self.pi[a])
    }

    pub fn is_saturated(&self, a: Elem) -> bool {
        self.saturation(a) == a
    }

    /// Whether `f` factors through `pi`, i.e. is constant on classes.
    /// Returns the factor `R/a -> B` when it does.
    pub fn factor(&self, f: &[Elem]) -> Option<Vec<Elem>> {
        let mut out = vec![usize::MAX; self.quotient.size()];
        for (x, &c) in self.pi.iter().enumerate() {
            if out[c] == usize::MAX {
                out[c] = f[x];
            } else if out[c] != f[x] {
                return None;
            }
        }
        Some(out)
    }
}

/// Every congruence of `r`, each generated as a join of principal ones.
pub fn all_congruences(r: &FinSemiring, guards: &Guards) -> Result<Vec<CongruencePartition>> {
    Guards::check(
        "congruence enumeration carrier",
        r.size(),
        guards.congruence_carrier,
    )?;
    let mut found: Vec<CongruencePartition> = vec![CongruencePartition::identity(r)];
    let principal: Vec<CongruencePartition> = r
        .elements()
        .flat_map(|a| r.elements().filter(move |&b| a < b).map(move |b| (a, b)))
        .map(|p| congruence_closure(r, &[p]))
        .collect();
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principal {
                let j = c.join(p);
                if !found.contains(&j) {
                    found.push(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    found.sort_by(|a, b| {
        b.num_classes()
            .cmp(&a.num_classes())
            .then_with(|| a.labels().cmp(b.labels()))
    });
    Ok(found)
}

/// The semiring of all congruences of `R`.
#[derive(Debug, Clone)]
pub struct CongruenceSemiring {
    pub congruences: Vec<CongruencePartition>,
    pub semiring: FinSemiring,
    /// `a -> <(a, 0)>`, recorded as a plain map.
    pub embedding: Vec<Elem>,
}

impl CongruenceSemiring {
    /// Whether the embedding `a -> <(a,0)>` happens to be a semiring hom.
    pub fn embedding_is_hom(&self) -> bool {
        let base = self.congruences[0].base();
        base.is_hom_to(&self.semiring, &self.embedding)
    }
}

pub fn congruence_semiring(r: &FinSemiring, guards: &Guards) -> Result<CongruenceSemiring> {
    let congs = all_congruences(r, guards)?;
    let m = congs.len();
    let index = |c: &CongruencePartition| congs.iter().position(|d| d == c).expect("closed");
    let mut add = vec![vec![0; m]; m];
    let mut mul = vec![vec![0; m]; m];
    for i in 0..m {
        for j in 0..m {
            add[i][j] = index(&congs[i].join(&congs[j]));
            mul[i][j] = index(&congs[i].product(&congs[j]));
        }
    }
    let zero = index(&CongruencePartition::identity(r));
    let one = index(&CongruencePartition::total(r));
    let cim = crate::order::FinCim::new(add, zero, one)?;
    let semiring = FinSemiring::new(cim, mul, one)?;
    let embedding = r
        .elements()
        .map(|a| index(&congruence_closure(r, &[(a, r.zero())])))
        .collect();
    Ok(CongruenceSemiring {
        congruences: congs,
        semiring,
        embedding,
    })
}

/// Validate a finite idealic semiorder given as a boolean matrix.
pub fn check_semiorder(r: &FinSemiring, rel: &[Vec<bool>]) -> Result<Verdict> {
    let n = r.size();
    if rel.len() != n || rel.iter().any(|row| row.len() != n) {
        return Err(Error::Format(format!("semiorder must be {n} x {n}")));
    }
    for a in 0..n {
        if !rel[a][a] {
            return Ok(Err(Violation::new(Law::SemiorderReflexive, [a])));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if r.leq(a, b) && !rel[a][b] {
                return Ok(Err(Violation::new(Law::SemiorderExtendsOrder, [a, b])));
            }
            if !rel[a][b] {
                continue;
            }
            for c in 0..n {
                if rel[b][c] && !rel[a][c] {
                    return Ok(Err(Violation::new(Law::SemiorderTransitive, [a, b, c])));
                }
            }
        }
    }
    for a1 in 0..n {
        for b1 in 0..n {
            if !rel[a1][b1] {
                continue;
            }
            for a2 in 0..n {
                for b2 in 0..n {
                    if !rel[a2][b2] {
                        continue;
                    }
                    if !rel[r.add(a1, a2)][r.add(b1, b2)] {
                        return Ok(Err(Violation::new(Law::SemiorderSum, [a1, b1, a2, b2])));
                    }
                    if !rel[r.mul(a1, a2)][r.mul(b1, b2)] {
                        return Ok(Err(Violation::new(Law::SemiorderProduct, [a1, b1, a2, b2])));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

/// The congruence `a ~ b  <=>  a < b and b < a` of a finite idealic
/// semiorder, post-checked so that `[a] <= [b]` in the quotient exactly
/// when `a < b`.
pub fn congruence_from_semiorder(
    r: &FinSemiring,
    rel: &[Vec<bool>],
) -> Result<CongruencePartition> {
    check_semiorder(r, rel)??;
    let n = r.size();
    let labels: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| rel[a][b] && rel[b][a]).expect("reflexive"))
        .collect();
    let cong = CongruencePartition::from_labels(r, &labels)?;
    let q = quotient(&cong)?;
    for a in 0..n {
        for b in 0..n {
            if q.quotient.leq(q.pi[a], q.pi[b]) != rel[a][b] {
                return Err(Error::Precondition(format!(
                    "quotient order disagrees with the semiorder at ({a}, {b})"
                )));
            }
        }
    }
    Ok(cong)
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionJson {
    pub classes: Vec<Vec<String>>,
    pub representatives: Vec<String>,
}

impl CongruencePartition {
    pub fn to_json(&self) -> PartitionJson {
        let r = &self.base;
        PartitionJson {
            classes: self
                .classes()
                .iter()
                .map(|c| c.iter().map(|&x| r.name(x)).collect())
                .collect(),
            representatives: self.reps.iter().map(|&x| r.name(x)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Brute-force oracle: every set partition, filtered for compatibility.
    fn congruences_by_partitions(r: &FinSemiring) -> Vec<Vec<usize>> {
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            let next = cur.iter().copied().max().map_or(0, |m| m + 1);
            for l in 0..=next {
                cur.push(l);
                rec(n, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        rec(r.size(), &mut Vec::new(), &mut all);
        all.into_iter()
            .filter(|l| check_congruence(r, l).is_ok())
            .collect()
    }

    #[test]
    fn closure_examples() {
        let c3 = fixtures::c3();
        let cong = congruence_closure(&c3, &[(2, 1)]);
        assert_eq!(cong.classes(), vec![vec![0], vec![1, 2]]);
        assert!(congruence_closure(&c3, &[]).is_identity());
        assert!(congruence_closure(&fixtures::f1(), &[(0, 1)]).is_total());
    }

    #[test]
    fn quotient_examples() {
        let c3 = fixtures::c3();
        let q = quotient(&congruence_closure(&c3, &[(2, 1)])).unwrap();
        assert!(q.quotient.is_isomorphic(&fixtures::f1()));
        let id = quotient(&CongruencePartition::identity(&c3)).unwrap();
        assert!(id.quotient.is_isomorphic(&c3));
        let tot = quotient(&CongruencePartition::total(&c3)).unwrap();
        assert_eq!(tot.quotient.size(), 1);
    }

    #[test]
    fn inverse_image_and_saturation() {
        let c3 = fixtures::c3();
        let q = quotient(&congruence_closure(&c3, &[(2, 1)])).unwrap();
        assert_eq!(q.inverse_image(q.project(2)), 2);
        assert_eq!(q.inverse_image(q.project(0)), 0);
        assert_eq!(q.saturation(1), 2);
        assert_eq!(q.saturation(0), 0);
        let id = quotient(&CongruencePartition::identity(&c3)).unwrap();
        for a in c3.elements() {
            assert_eq!(id.inverse_image(a), a);
            assert_eq!(id.saturation(a), a);
        }
    }

    #[test]
    fn enumeration_matches_partition_oracle() {
        for (_, r) in fixtures::corpus() {
            let mut ours: Vec<Vec<usize>> = all_congruences(&r, &Guards::default())
                .unwrap()
                .iter()
                .map(|c| c.labels().to_vec())
                .collect();
            let mut oracle: Vec<Vec<usize>> = congruences_by_partitions(&r)
                .iter()
                .map(|l| normalize(l).0)
                .collect();
            ours.sort();
            oracle.sort();
            assert_eq!(ours, oracle);
        }
    }

    #[test]
    fn congruence_semiring_examples() {
        let g = Guards::default();
        let f1t = congruence_semiring(&fixtures::f1(), &g).unwrap();
        assert!(f1t.semiring.is_isomorphic(&fixtures::f1()));
        let z = congruence_semiring(&fixtures::zero_semiring(), &g).unwrap();
        assert_eq!(z.semiring.size(), 1);
        let c3t = congruence_semiring(&fixtures::c3(), &g).unwrap();
        // oracle count for the 3-chain with min
        assert_eq!(
            c3t.semiring.size(),
            congruences_by_partitions(&fixtures::c3()).len()
        );
        assert!(c3t.semiring.is_idealic());
    }

    #[test]
    fn guard_blocks_large_carriers() {
        let big = FinSemiring::chain(7);
        assert!(matches!(
            all_congruences(&big, &Guards::default()),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn semiorder_examples() {
        let c3 = fixtures::c3();
        let leq: Vec<Vec<bool>> = c3.cim().order();
        assert!(congruence_from_semiorder(&c3, &leq).unwrap().is_identity());
        let all = vec![vec![true; 3]; 3];
        assert!(congruence_from_semiorder(&c3, &all).unwrap().is_total());
        let mut rel = leq.clone();
        rel[2][1] = true;
        let cong = congruence_from_semiorder(&c3, &rel).unwrap();
        assert_eq!(cong.classes(), vec![vec![0], vec![1, 2]]);
        // dropping reflexivity is reported
        let mut bad = leq;
        bad[1][1] = false;
        let v = check_semiorder(&c3, &bad).unwrap().unwrap_err();
        assert_eq!(v.law, Law::SemiorderReflexive);
    }

    #[test]
    fn finite_congruences_are_algebraic() {
        for (_, r) in fixtures::corpus() {
            for c in all_congruences(&r, &Guards::default()).unwrap() {
                assert!(c.is_algebraic());
            }
        }
    }
}
