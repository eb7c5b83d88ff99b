//! The three algebra kinds that carry structure sheaves: finite commutative
//! monoids, finite commutative rings and finite idealic semirings.

use serde::Serialize;

use crate::congruence::quotient;
use crate::error::{Elem, Error, Law, Result, Violation};
use crate::localization::{localize, MultSystem};
use crate::order::check_square;
use crate::semiring::FinSemiring;
use crate::structure::Tables;

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// A finite commutative monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMonoid {
    n: usize,
    mul: Vec<Elem>,
    one: Elem,
    names: Vec<String>,
}

impl FinMonoid {
    pub fn new(mul: Vec<Vec<Elem>>, one: Elem) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::Format("monoid carrier must be non-empty".into()));
        }
        check_square(&mul, n, "mul")?;
        if one >= n {
            return Err(Error::Format(format!("unit index {one} out of range")));
        }
        for a in 0..n {
            if mul[a][one] != a {
                return Err(Violation::new(Law::MulUnit, [a]).into());
            }
            for b in 0..n {
                if mul[a][b] != mul[b][a] {
                    return Err(Violation::new(Law::MulCommutative, [a, b]).into());
                }
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Violation::new(Law::MulAssociative, [a, b, c]).into());
                    }
                }
            }
        }
        Ok(FinMonoid {
            n,
            mul: mul.into_iter().flatten().collect(),
            one,
            names: default_names(n),
        })
    }

    /// The cyclic group of order `n`, generator `g`.
    pub fn cyclic_group(n: usize) -> Self {
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        FinMonoid::new(mul, 0)
            .expect("cyclic groups are monoids")
            .with_names(names)
            .unwrap()
    }

    pub fn trivial() -> Self {
        FinMonoid::new(vec![vec![0]], 0)
            .expect("one point")
            .with_names(vec!["1".into()])
            .unwrap()
    }

    /// The multiplicative monoid of a ring.
    pub fn multiplicative(r: &FinRing) -> Self {
        FinMonoid::new(r.mul_table(), r.one())
            .expect("ring multiplication is a monoid")
            .with_names(r.names().to_vec())
            .unwrap()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::Format(format!(
                "{} names for {} elements",
                names.len(),
                self.n
            )));
        }
        self.names = names;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.n + b]
    }

    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.n).map(<[Elem]>::to_vec).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// A finite commutative ring with unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinRing {
    n: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    names: Vec<String>,
}

impl FinRing {
    pub fn new(add: Vec<Vec<Elem>>, mul: Vec<Vec<Elem>>, zero: Elem, one: Elem) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::Format("ring carrier must be non-empty".into()));
        }
        check_square(&add, n, "add")?;
        check_square(&mul, n, "mul")?;
        if zero >= n || one >= n {
            return Err(Error::Format("constant out of range".into()));
        }
        let mut neg = vec![usize::MAX; n];
        for a in 0..n {
            if add[a][zero] != a {
                return Err(Violation::new(Law::ZeroIsUnit, [a]).into());
            }
            if mul[a][one] != a {
                return Err(Violation::new(Law::MulUnit, [a]).into());
            }
            match (0..n).find(|&b| add[a][b] == zero) {
                Some(b) => neg[a] = b,
                None => return Err(Violation::new(Law::AddInverse, [a]).into()),
            }
            for b in 0..n {
                if add[a][b] != add[b][a] {
                    return Err(Violation::new(Law::AddCommutative, [a, b]).into());
                }
                if mul[a][b] != mul[b][a] {
                    return Err(Violation::new(Law::MulCommutative, [a, b]).into());
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return Err(Violation::new(Law::AddAssociative, [a, b, c]).into());
                    }
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Violation::new(Law::MulAssociative, [a, b, c]).into());
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return Err(Violation::new(Law::Distributive, [a, b, c]).into());
                    }
                }
            }
        }
        Ok(FinRing {
            n,
            add: add.into_iter().flatten().collect(),
            mul: mul.into_iter().flatten().collect(),
            neg,
            zero,
            one,
            names: default_names(n),
        })
    }

    /// `Z/n`, elements named by their residues.
    pub fn zmod(n: usize) -> Self {
        let add = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a * b) % n).collect())
            .collect();
        FinRing::new(add, mul, 0, 1 % n).expect("Z/n is a ring")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::Format(format!(
                "{} names for {} elements",
                names.len(),
                self.n
            )));
        }
        self.names = names;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.n + b]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.n + b]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        self.add.chunks(self.n).map(<[Elem]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.n).map(<[Elem]>::to_vec).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraKind {
    Ring,
    Monoid,
    Semiring,
}

impl std::str::FromStr for AlgebraKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ring" => Ok(AlgebraKind::Ring),
            "monoid" => Ok(AlgebraKind::Monoid),
            "semiring" => Ok(AlgebraKind::Semiring),
            _ => Err(Error::Format(format!("unknown algebra type {s}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Ring(FinRing),
    Monoid(FinMonoid),
    Semiring(FinSemiring),
}

impl Algebra {
    pub fn kind(&self) -> AlgebraKind {
        match self {
            Algebra::Ring(_) => AlgebraKind::Ring,
            Algebra::Monoid(_) => AlgebraKind::Monoid,
            Algebra::Semiring(_) => AlgebraKind::Semiring,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Algebra::Ring(r) => r.size(),
            Algebra::Monoid(m) => m.size(),
            Algebra::Semiring(s) => s.size(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn one(&self) -> Elem {
        match self {
            Algebra::Ring(r) => r.one(),
            Algebra::Monoid(m) => m.one(),
            Algebra::Semiring(s) => s.one(),
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match self {
            Algebra::Ring(r) => r.mul(a, b),
            Algebra::Monoid(m) => m.mul(a, b),
            Algebra::Semiring(s) => s.mul(a, b),
        }
    }

    pub fn name(&self, x: Elem) -> String {
        match self {
            Algebra::Ring(r) => r.names()[x].clone(),
            Algebra::Monoid(m) => m.names()[x].clone(),
            Algebra::Semiring(s) => s.name(x),
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.elements().map(|x| self.name(x)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.elements()
            .find(|&x| self.name(x) == label)
            .or_else(|| label.parse().ok().filter(|&i: &usize| i < self.size()))
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.elements().any(|y| self.mul(x, y) == self.one())
    }

    pub fn with_names(self, names: Vec<String>) -> Result<Self> {
        Ok(match self {
            Algebra::Ring(r) => Algebra::Ring(r.with_names(names)?),
            Algebra::Monoid(m) => Algebra::Monoid(m.with_names(names)?),
            Algebra::Semiring(s) => Algebra::Semiring(s.with_names(names)?),
        })
    }

    /// Ring `(+, *; -; 0, 1)`, monoid `(*; 1)`, semiring `(+, *; 0, 1)`.
    pub fn tables(&self) -> Tables {
        match self {
            Algebra::Ring(r) => Tables {
                size: r.size(),
                binary: vec![r.add.clone(), r.mul.clone()],
                unary: vec![r.neg.clone()],
                constants: vec![r.zero, r.one],
            },
            Algebra::Monoid(m) => Tables {
                size: m.size(),
                binary: vec![m.mul.clone()],
                unary: vec![],
                constants: vec![m.one],
            },
            Algebra::Semiring(s) => s.tables(),
        }
    }

    pub fn from_tables(kind: AlgebraKind, t: &Tables) -> Result<Self> {
        let rows = |k: usize| -> Vec<Vec<Elem>> {
            t.binary[k]
                .chunks(t.size.max(1))
                .map(<[Elem]>::to_vec)
                .collect()
        };
        Ok(match kind {
            AlgebraKind::Ring => Algebra::Ring(FinRing::new(
                rows(0),
                rows(1),
                t.constants[0],
                t.constants[1],
            )?),
            AlgebraKind::Monoid => Algebra::Monoid(FinMonoid::new(rows(0), t.constants[0])?),
            AlgebraKind::Semiring => Algebra::Semiring(FinSemiring::from_tables(t)?),
        })
    }

    /// The one-element algebra of a kind.
    pub fn terminal(kind: AlgebraKind) -> Self {
        let names = vec!["*".to_string()];
        match kind {
            AlgebraKind::Ring => Algebra::Ring(FinRing::zmod(1).with_names(names).unwrap()),
            AlgebraKind::Monoid => Algebra::Monoid(FinMonoid::trivial().with_names(names).unwrap()),
            AlgebraKind::Semiring => {
                Algebra::Semiring(FinSemiring::chain(1).with_names(names).unwrap())
            }
        }
    }

    pub fn is_hom_to(&self, target: &Algebra, f: &[Elem]) -> bool {
        self.kind() == target.kind() && self.tables().is_hom(&target.tables(), f)
    }

    pub fn homomorphisms_to(&self, target: &Algebra) -> Vec<Vec<Elem>> {
        if self.kind() != target.kind() {
            return vec![];
        }
        self.tables().homomorphisms(&target.tables())
    }

    pub fn isomorphism_to(&self, target: &Algebra) -> Option<Vec<Elem>> {
        if self.kind() != target.kind() {
            return None;
        }
        self.tables().find_isomorphism(&target.tables())
    }

    pub fn is_isomorphic(&self, target: &Algebra) -> bool {
        self.isomorphism_to(target).is_some()
    }

    /// Quotient by a partition compatible with every operation, elements
    /// named after their minimal representatives.
    pub fn quotient_by(&self, labels: &[usize]) -> Result<(Algebra, Vec<Elem>)> {
        let (dense, reps) = dense_labels(labels);
        let t = self
            .tables()
            .quotient(&dense)
            .ok_or_else(|| Error::Invalid(Violation::new(Law::NotCongruence, vec![])))?;
        let q = Algebra::from_tables(self.kind(), &t)?
            .with_names(reps.iter().map(|&x| self.name(x)).collect())?;
        Ok((q, dense))
    }

    /// `A -> A_S` for the multiplicative system generated by `s`.
    ///
    /// Monoids and rings use fractions `(m, s)` with
    /// `(m, s) ~ (m', s')` iff `t m s' = t m' s` for some `t` in `S`. On a
    /// finite algebra every fraction has the form `(m, 1)`, so the result
    /// is returned as a quotient of `A` together with the projection.
    pub fn localize(&self, s: &[Elem]) -> Result<(Algebra, Vec<Elem>)> {
        let sys = self.mult_closure(s);
        match self {
            Algebra::Semiring(r) => {
                let l = localize(r, &MultSystem::new(r, &sys)?)?;
                Ok((
                    Algebra::Semiring(l.result.quotient.clone()),
                    l.result.pi.clone(),
                ))
            }
            _ => {
                let labels = self.fraction_kernel(&sys)?;
                self.quotient_by(&labels)
            }
        }
    }

    /// The submonoid generated by `gens`.
    pub fn mult_closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut m = vec![self.one()];
        let mut i = 0;
        m.extend(gens.iter().copied().filter(|&g| g != self.one()));
        m.sort_unstable();
        m.dedup();
        while i < m.len() {
            for j in 0..=i {
                let p = self.mul(m[i], m[j]);
                if !m.contains(&p) {
                    m.push(p);
                }
            }
            i += 1;
        }
        m.sort_unstable();
        m
    }

    fn fraction_kernel(&self, sys: &[Elem]) -> Result<Vec<usize>> {
        let n = self.size();
        let k = sys.len();
        let idx = |m: Elem, si: usize| m * k + si;
        let mut parent: Vec<usize> = (0..n * k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for m in 0..n {
            for (si, &s) in sys.iter().enumerate() {
                for m2 in 0..n {
                    for (sj, &s2) in sys.iter().enumerate() {
                        let related = sys
                            .iter()
                            .any(|&t| self.mul(t, self.mul(m, s2)) == self.mul(t, self.mul(m2, s)));
                        if related {
                            let (a, b) = (
                                find(&mut parent, idx(m, si)),
                                find(&mut parent, idx(m2, sj)),
                            );
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
        let one_slot = sys
            .iter()
            .position(|&s| s == self.one())
            .expect("contains 1");
        let labels: Vec<usize> = (0..n)
            .map(|m| find(&mut parent, idx(m, one_slot)))
            .collect();
        for p in 0..n * k {
            let c = find(&mut parent, p);
            if !labels.contains(&c) {
                return Err(Error::Precondition(
                    "localization of a finite algebra is not a quotient".into(),
                ));
            }
        }
        Ok(labels)
    }
}

/// Renumber labels densely in order of first occurrence.
pub(crate) fn dense_labels(labels: &[usize]) -> (Vec<usize>, Vec<Elem>) {
    let mut map = std::collections::HashMap::new();
    let mut reps = Vec::new();
    let dense = labels
        .iter()
        .enumerate()
        .map(|(x, l)| {
            *map.entry(*l).or_insert_with(|| {
                reps.push(x);
                reps.len() - 1
            })
        })
        .collect();
    (dense, reps)
}

/// The semiring case of [`Algebra::localize`] routed through the
/// congruence module, exposed for cross-checks.
pub fn localize_semiring(r: &FinSemiring, s: &[Elem]) -> Result<(FinSemiring, Vec<Elem>)> {
    let l = localize(r, &MultSystem::generated(r, s))?;
    let q = quotient(l.congruence())?;
    Ok((q.quotient, q.pi))
}
