//! Finite idempotent commutative monoids and the order they induce.
//!
//! A [`FinCim`] is a finite join-semilattice with a least element `0` and a
//! greatest element `1`. Such a structure is the compact part of an
//! algebraic complete idempotent monoid, and since every element of a finite
//! algebra is compact, the finite carrier *is* that compact part: suprema of
//! arbitrary families never need to be materialised because they factor
//! through finite subsets. All quantifiers over "compact elements" in the
//! rest of the crate therefore range over the whole carrier.

use crate::error::{Elem, Error, Law, Result, Verdict, Violation};
use crate::structure::Tables;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCim {
    n: usize,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    names: Option<Vec<String>>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
}

/// Validate raw tables as a finite idempotent commutative monoid with top.
///
/// Returns `Err` only for malformed input (wrong dimensions or indices out of
/// range); law failures come back as `Ok(Err(violation))`.
pub fn check_cim(join: &[Vec<Elem>], bottom: Elem, top: Elem) -> Result<Verdict> {
    let n = join.len();
    check_square(join, n, "add")?;
    if n == 0 {
        return Err(Error::Format("carrier must be non-empty".into()));
    }
    if bottom >= n || top >= n {
        return Err(Error::Format(format!(
            "zero/one index out of range for {n} elements"
        )));
    }
    let j = |a: Elem, b: Elem| join[a][b];
    for x in 0..n {
        if j(x, x) != x {
            return Ok(Err(Violation::new(Law::AddIdempotent, [x])));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if j(a, b) != j(b, a) {
                return Ok(Err(Violation::new(Law::AddCommutative, [a, b])));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if j(j(a, b), c) != j(a, j(b, c)) {
                    return Ok(Err(Violation::new(Law::AddAssociative, [a, b, c])));
                }
            }
        }
    }
    for x in 0..n {
        if j(x, bottom) != x {
            return Ok(Err(Violation::new(Law::ZeroIsUnit, [x])));
        }
        if j(x, top) != top {
            return Ok(Err(Violation::new(Law::TopAbsorbs, [x])));
        }
    }
    // Binary infima: the join of all common lower bounds must itself be one.
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<Elem> = (0..n).filter(|&x| j(x, a) == a && j(x, b) == b).collect();
            let m = lower.iter().fold(bottom, |acc, &x| j(acc, x));
            if j(m, a) != a || j(m, b) != b {
                return Ok(Err(Violation::new(Law::MissingInfimum, [a, b])));
            }
        }
    }
    Ok(Ok(()))
}

pub(crate) fn check_square(table: &[Vec<Elem>], n: usize, what: &str) -> Result<()> {
    if table.len() != n {
        return Err(Error::Format(format!(
            "{what} table has {} rows, expected {n}",
            table.len()
        )));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Format(format!(
                "{what} table row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::Format(format!(
                "{what} table row {i} contains out-of-range element {bad}"
            )));
        }
    }
    Ok(())
}

impl FinCim {
    /// Build from a join table, validating every law.
    pub fn new(join: Vec<Vec<Elem>>, bottom: Elem, top: Elem) -> Result<Self> {
        check_cim(&join, bottom, top)??;
        let n = join.len();
        let flat: Vec<Elem> = join.into_iter().flatten().collect();
        Ok(Self::from_flat_unchecked(n, flat, bottom, top))
    }

    pub(crate) fn from_flat_unchecked(n: usize, join: Vec<Elem>, bottom: Elem, top: Elem) -> Self {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = join[a * n + b] == b;
            }
        }
        let mut meet = vec![bottom; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut m = bottom;
                for x in 0..n {
                    if leq[x * n + a] && leq[x * n + b] {
                        m = join[m * n + x];
                    }
                }
                meet[a * n + b] = m;
            }
        }
        FinCim {
            n,
            join,
            bottom,
            top,
            names: None,
            leq,
            meet,
        }
    }

    /// Build from a partial order given as a predicate. Fails if some pair
    /// lacks a least upper bound or there is no bottom/top.
    pub fn from_order(n: usize, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Format("carrier must be non-empty".into()));
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| leq(b, x)))
            .ok_or_else(|| Error::Precondition("order has no least element".into()))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq(x, t)))
            .ok_or_else(|| Error::Precondition("order has no greatest element".into()))?;
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let upper: Vec<Elem> = (0..n).filter(|&u| leq(a, u) && leq(b, u)).collect();
                let least = upper
                    .iter()
                    .copied()
                    .find(|&u| upper.iter().all(|&v| leq(u, v)))
                    .ok_or_else(|| Error::Invalid(Violation::new(Law::AddAssociative, [a, b])))?;
                join[a][b] = least;
            }
        }
        FinCim::new(join, bottom, top)
    }

    /// The chain `0 < 1 < .. < n-1` with `max` as addition.
    pub fn chain(n: usize) -> Self {
        let join = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        FinCim::new(join, 0, n - 1).expect("chains are lattices")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::Format(format!(
                "{} names given for {} elements",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn join_table(&self) -> Vec<Vec<Elem>> {
        self.join.chunks(self.n).map(<[Elem]>::to_vec).collect()
    }

    /// The derived order `a <= b  <=>  a + b = b` as an `n x n` matrix.
    pub fn order(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n).map(<[bool]>::to_vec).collect()
    }

    /// Supremum of a subset; the empty supremum is `0`.
    pub fn sup(&self, s: &[Elem]) -> Elem {
        s.iter().fold(self.bottom, |acc, &x| self.join(acc, x))
    }

    /// Infimum of a subset; the empty infimum is `1`.
    pub fn inf(&self, s: &[Elem]) -> Elem {
        let lower: Vec<Elem> = self
            .elements()
            .filter(|&x| s.iter().all(|&y| self.leq(x, y)))
            .collect();
        self.sup(&lower)
    }

    /// Supremum of `{x : pred(x)}`.
    pub fn sup_where(&self, pred: impl Fn(Elem) -> bool) -> Elem {
        self.elements()
            .filter(|&x| pred(x))
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of an element (its name, or its index).
    pub fn name(&self, x: Elem) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// Resolve a label: a declared name first, then a plain index.
    pub fn index_of(&self, label: &str) -> Option<Elem> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == label) {
                return Some(i);
            }
        }
        label.parse::<usize>().ok().filter(|&i| i < self.n)
    }

    /// Elements `x != 0` such that `x = a + b` forces `x = a` or `x = b`.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&x| x != self.bottom)
            .filter(|&x| {
                self.elements().all(|a| {
                    self.elements()
                        .all(|b| self.join(a, b) != x || a == x || b == x)
                })
            })
            .collect()
    }

    /// Principal ideal `<x> = {y : y <= x}`.
    pub fn principal_ideal(&self, x: Elem) -> Vec<Elem> {
        self.elements().filter(|&y| self.leq(y, x)).collect()
    }

    /// Ideals ("filters" in the completion sense): non-empty subsets with
    /// `x, y in F  <=>  x + y in F`, ordered by inclusion.
    pub fn ideal_completion(&self) -> IdealLattice {
        let ideals = self.enumerate_ideals();
        let m = ideals.len();
        let contains = |i: usize, j: usize| ideals[j].iter().all(|x| ideals[i].contains(x));
        let lattice = FinCim::from_order(m, |i, j| contains(j, i))
            .expect("ideals of a finite lattice form a lattice");
        let principal: Vec<usize> = self
            .elements()
            .map(|x| {
                let p = self.principal_ideal(x);
                ideals
                    .iter()
                    .position(|i| *i == p)
                    .expect("principal ideal enumerated")
            })
            .collect();
        let compact = ideals
            .iter()
            .map(|ideal| {
                // finitely generated: generated by its (finitely many) members
                let s = self.sup(ideal);
                self.principal_ideal(s) == *ideal
            })
            .collect();
        IdealLattice {
            base: self.clone(),
            ideals,
            lattice,
            principal,
            compact,
        }
    }

    fn enumerate_ideals(&self) -> Vec<Vec<Elem>> {
        // linear extension: fewer elements below first
        let mut order: Vec<Elem> = self.elements().collect();
        order.sort_by_key(|&x| (self.elements().filter(|&y| self.leq(y, x)).count(), x));
        let mut out = Vec::new();
        let mut chosen = vec![false; self.n];
        self.ideal_search(&order, 0, &mut chosen, &mut out);
        out.sort();
        out
    }

    fn ideal_search(
        &self,
        order: &[Elem],
        k: usize,
        chosen: &mut Vec<bool>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if k == order.len() {
            let members: Vec<Elem> = self.elements().filter(|&x| chosen[x]).collect();
            if members.is_empty() {
                return;
            }
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| chosen[self.join(a, b)]));
            if closed {
                out.push(members);
            }
            return;
        }
        let x = order[k];
        chosen[x] = false;
        self.ideal_search(order, k + 1, chosen, out);
        let below_ok = self.elements().all(|y| !self.lt(y, x) || chosen[y]);
        if below_ok {
            chosen[x] = true;
            self.ideal_search(order, k + 1, chosen, out);
            chosen[x] = false;
        }
    }

    /// `+` and `0` as generic tables (CIM homomorphisms additionally fix `1`).
    pub fn tables(&self) -> Tables {
        Tables {
            size: self.n,
            binary: vec![self.join.clone()],
            unary: vec![],
            constants: vec![self.bottom, self.top],
        }
    }

    /// Same carrier without names, for structural comparisons.
    pub fn unnamed(&self) -> FinCim {
        let mut c = self.clone();
        c.names = None;
        c
    }
}

/// The lattice of ideals of a [`FinCim`], with the unit `a -> <a>`.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    pub base: FinCim,
    /// Each ideal as a sorted element list; index = element of `lattice`.
    pub ideals: Vec<Vec<Elem>>,
    /// The ideals ordered by inclusion.
    pub lattice: FinCim,
    /// `principal[x]` is the index of `<x>`.
    pub principal: Vec<usize>,
    /// Whether each ideal is finitely generated.
    pub compact: Vec<bool>,
}

impl IdealLattice {
    /// Whether `a -> <a>` is an isomorphism preserving `+`, `0` and `1`.
    pub fn unit_is_isomorphism(&self) -> bool {
        crate::structure::is_bijection(&self.principal, self.lattice.size())
            && self
                .base
                .tables()
                .is_hom(&self.lattice.tables(), &self.principal)
    }

    pub fn all_compact(&self) -> bool {
        self.compact.iter().all(|&c| c)
    }
}
