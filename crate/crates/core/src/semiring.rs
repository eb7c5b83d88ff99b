//! Finite commutative semirings whose additive part is a [`FinCim`].

use crate::error::{Elem, Error, Law, Result, Verdict, Violation};
use crate::order::{check_square, FinCim};
use crate::structure::{is_bijection, Tables};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSemiring {
    add: FinCim,
    mul: Vec<Elem>,
    one: Elem,
}

/// Validate a multiplication table over an already valid additive part.
pub fn check_semiring(add: &FinCim, mul: &[Vec<Elem>], one: Elem) -> Result<Verdict> {
    let n = add.size();
    check_square(mul, n, "mul")?;
    if one >= n {
        return Err(Error::Format(format!("unit index {one} out of range")));
    }
    let m = |a: Elem, b: Elem| mul[a][b];
    for a in 0..n {
        for b in 0..n {
            if m(a, b) != m(b, a) {
                return Ok(Err(Violation::new(Law::MulCommutative, [a, b])));
            }
        }
    }
    for x in 0..n {
        if m(x, one) != x {
            return Ok(Err(Violation::new(Law::MulUnit, [x])));
        }
        if m(add.bottom(), x) != add.bottom() {
            return Ok(Err(Violation::new(Law::ZeroAnnihilates, [x])));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Ok(Err(Violation::new(Law::MulAssociative, [a, b, c])));
                }
                if m(add.join(a, b), c) != add.join(m(a, c), m(b, c)) {
                    return Ok(Err(Violation::new(Law::Distributive, [a, b, c])));
                }
            }
        }
    }
    Ok(Ok(()))
}

impl FinSemiring {
    pub fn new(add: FinCim, mul: Vec<Vec<Elem>>, one: Elem) -> Result<Self> {
        check_semiring(&add, &mul, one)??;
        Ok(FinSemiring {
            mul: mul.into_iter().flatten().collect(),
            add,
            one,
        })
    }

    /// Build from generic tables with signature `(+, *; 0, 1)`.
    pub fn from_tables(t: &Tables) -> Result<Self> {
        let n = t.size;
        let join_rows: Vec<Vec<Elem>> = t.binary[0].chunks(n).map(<[Elem]>::to_vec).collect();
        let top = (0..n).fold(t.constants[0], |acc, x| t.binary[0][acc * n + x]);
        let add = FinCim::new(join_rows, t.constants[0], top)?;
        let mul = t.binary[1].chunks(n).map(<[Elem]>::to_vec).collect();
        FinSemiring::new(add, mul, t.constants[1])
    }

    /// `(min, min)` on the chain of length `n`: the idealic chain semiring.
    pub fn chain(n: usize) -> Self {
        let mul = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
        FinSemiring::new(FinCim::chain(n), mul, n - 1).expect("chains are semirings")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        self.add = self.add.with_names(names)?;
        Ok(self)
    }

    pub fn cim(&self) -> &FinCim {
        &self.add
    }

    pub fn size(&self) -> usize {
        self.add.size()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.add.elements()
    }

    pub fn zero(&self) -> Elem {
        self.add.bottom()
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn top(&self) -> Elem {
        self.add.top()
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add.join(a, b)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size() + b]
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.add.leq(a, b)
    }

    pub fn sup(&self, s: &[Elem]) -> Elem {
        self.add.sup(s)
    }

    pub fn sup_where(&self, pred: impl Fn(Elem) -> bool) -> Elem {
        self.add.sup_where(pred)
    }

    pub fn name(&self, x: Elem) -> String {
        self.add.name(x)
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.add.index_of(label)
    }

    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.size()).map(<[Elem]>::to_vec).collect()
    }

    /// `x^n`, with `x^0 = 1`.
    pub fn pow(&self, x: Elem, n: usize) -> Elem {
        (0..n).fold(self.one, |acc, _| self.mul(acc, x))
    }

    /// The multiplicative orbit `{1, x, x^2, ..}`, enumerated until it cycles.
    pub fn powers(&self, x: Elem) -> Vec<Elem> {
        let mut seen = vec![self.one];
        let mut cur = self.one;
        loop {
            cur = self.mul(cur, x);
            if seen.contains(&cur) {
                break;
            }
            seen.push(cur);
        }
        seen.sort_unstable();
        seen
    }

    /// The unit is the top element.
    pub fn is_idealic(&self) -> bool {
        self.one == self.top()
    }

    pub fn check_idealic(&self) -> Verdict {
        if self.is_idealic() {
            Ok(())
        } else {
            Err(Violation::new(Law::Idealic, [self.one, self.top()]))
        }
    }

    pub fn is_idempotent_mult(&self) -> bool {
        self.elements().all(|x| self.mul(x, x) == x)
    }

    pub fn check_idempotent_mult(&self) -> Verdict {
        match self.elements().find(|&x| self.mul(x, x) != x) {
            None => Ok(()),
            Some(x) => Err(Violation::new(Law::IdempotentMul, [x])),
        }
    }

    pub(crate) fn require_idealic(&self, what: &str) -> Result<()> {
        if self.is_idealic() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{what} needs an idealic semiring"
            )))
        }
    }

    /// Signature `(+, *; 0, 1)`.
    pub fn tables(&self) -> Tables {
        Tables {
            size: self.size(),
            binary: vec![
                self.add.join_table().into_iter().flatten().collect(),
                self.mul.clone(),
            ],
            unary: vec![],
            constants: vec![self.zero(), self.one],
        }
    }

    /// Whether `map` is a semiring homomorphism into `target`.
    pub fn is_hom_to(&self, target: &FinSemiring, map: &[Elem]) -> bool {
        self.tables().is_hom(&target.tables(), map)
    }

    pub fn homomorphisms_to(&self, target: &FinSemiring) -> Vec<Vec<Elem>> {
        self.tables().homomorphisms(&target.tables())
    }

    pub fn isomorphism_to(&self, target: &FinSemiring) -> Option<Vec<Elem>> {
        self.tables().find_isomorphism(&target.tables())
    }

    pub fn is_isomorphic(&self, target: &FinSemiring) -> bool {
        self.isomorphism_to(target).is_some()
    }

    /// Subsemiring on `subset`, if closed. The subset must contain 0 and 1.
    pub fn subsemiring(&self, subset: &[Elem]) -> Option<FinSemiring> {
        let t = self.tables().substructure(subset)?;
        let mut s = FinSemiring::from_tables(&t).ok()?;
        if self.add.names().is_some() {
            s = s
                .with_names(subset.iter().map(|&x| self.name(x)).collect())
                .ok()?;
        }
        Some(s)
    }

    /// Elements with a negation: `x + y = 1` and `x * y = 0` for some `y`.
    ///
    /// Requires an idealic semiring with idempotent multiplication. The
    /// negation is found by scan and its uniqueness is checked.
    pub fn boolean_core(&self) -> Result<BooleanCore> {
        self.require_idealic("boolean core")?;
        if let Err(v) = self.check_idempotent_mult() {
            return Err(Error::Precondition(format!(
                "boolean core needs idempotent multiplication ({v})"
            )));
        }
        let mut members = Vec::new();
        let mut partner = Vec::new();
        for x in self.elements() {
            let complements: Vec<Elem> = self
                .elements()
                .filter(|&y| self.add(x, y) == self.one && self.mul(x, y) == self.zero())
                .collect();
            match complements.as_slice() {
                [] => {}
                [y] => {
                    members.push(x);
                    partner.push(*y);
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "element {} has several complements",
                        self.name(x)
                    )))
                }
            }
        }
        let core = self
            .subsemiring(&members)
            .ok_or_else(|| Error::Precondition("complemented elements are not closed".into()))?;
        let negation = partner
            .iter()
            .map(|y| {
                members
                    .binary_search(y)
                    .expect("complement is complemented")
            })
            .collect();
        Ok(BooleanCore {
            core,
            inclusion: members,
            negation,
        })
    }

    /// Componentwise product `self x other`; `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FinSemiring) -> FinSemiring {
        let t = Tables::product(&[&self.tables(), &other.tables()], &self.tables());
        let p = FinSemiring::from_tables(&t).expect("products of semirings are semirings");
        if self.add.names().is_some() || other.add.names().is_some() {
            let names = self
                .elements()
                .flat_map(|a| other.elements().map(move |b| (a, b)))
                .map(|(a, b)| format!("{}.{}", self.name(a), other.name(b)))
                .collect();
            p.with_names(names).expect("sizes match")
        } else {
            p
        }
    }

    /// The two projections out of `self.direct_product(other)`.
    pub fn projections(&self, other: &FinSemiring) -> (Vec<Elem>, Vec<Elem>) {
        let m = other.size();
        let n = self.size() * m;
        (
            (0..n).map(|i| i / m).collect(),
            (0..n).map(|i| i % m).collect(),
        )
    }

    /// Same semiring without element names.
    pub fn unnamed(&self) -> FinSemiring {
        FinSemiring {
            add: self.add.unnamed(),
            mul: self.mul.clone(),
            one: self.one,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BooleanCore {
    pub core: FinSemiring,
    /// `inclusion[i]` is the element of the ambient semiring.
    pub inclusion: Vec<Elem>,
    /// Negation on the core, in core indices.
    pub negation: Vec<Elem>,
}

impl BooleanCore {
    /// `a + not a = 1`, `a * not a = 0`, and negation is an involution.
    pub fn check_boolean(&self) -> bool {
        let c = &self.core;
        c.elements().all(|a| {
            let na = self.negation[a];
            c.add(a, na) == c.one() && c.mul(a, na) == c.zero() && self.negation[na] == a
        })
    }
}

/// A homomorphism preserving `+`, `*`, `0` and `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiringHom {
    pub source: FinSemiring,
    pub target: FinSemiring,
    pub map: Vec<Elem>,
}

impl SemiringHom {
    pub fn new(source: FinSemiring, target: FinSemiring, map: Vec<Elem>) -> Result<Self> {
        if !source.is_hom_to(&target, &map) {
            return Err(Error::Invalid(Violation::new(Law::NotHomomorphism, map)));
        }
        Ok(SemiringHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(r: &FinSemiring) -> Self {
        SemiringHom {
            source: r.clone(),
            target: r.clone(),
            map: r.elements().collect(),
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn is_isomorphism(&self) -> bool {
        is_bijection(&self.map, self.target.size())
    }

    /// `self` then `next`.
    pub fn then(&self, next: &SemiringHom) -> SemiringHom {
        SemiringHom {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        }
    }

    /// `f^{-1}(y) = sup {x : f(x) <= y}`.
    pub fn inverse_image(&self, y: Elem) -> Elem {
        self.source.sup_where(|x| self.target.leq(self.map[x], y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_flags() {
        let c3 = fixtures::c3();
        assert!(c3.is_idealic() && c3.is_idempotent_mult());
        let ne = fixtures::n_eps();
        assert!(ne.is_idealic() && !ne.is_idempotent_mult());
        let z = fixtures::zero_semiring();
        assert!(z.is_idealic());
        assert_eq!(z.size(), 1);
    }

    #[test]
    fn distributivity_failure_is_reported() {
        // C3 with m*m = 1 breaks the unit/ordering constraints
        let add = FinCim::chain(3);
        let mul = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 2]];
        let verdict = check_semiring(&add, &mul, 2).unwrap();
        assert!(verdict.is_err());
    }

    #[test]
    fn boolean_core_examples() {
        let b4 = fixtures::b4();
        let core = b4.boolean_core().unwrap();
        assert_eq!(core.inclusion, vec![0, 1, 2, 3]);
        assert!(core.check_boolean());
        let c3 = fixtures::c3().boolean_core().unwrap();
        assert_eq!(c3.inclusion, vec![0, 2]);
        assert!(c3.core.is_isomorphic(&fixtures::f1()));
        let f1 = fixtures::f1().boolean_core().unwrap();
        assert!(f1.core.is_isomorphic(&fixtures::f1()));
        assert!(fixtures::n_eps().boolean_core().is_err());
    }

    #[test]
    fn products() {
        let f1 = fixtures::f1();
        let p = f1.direct_product(&f1);
        assert!(p.is_isomorphic(&fixtures::b4()));
        let (p1, p2) = f1.projections(&f1);
        assert!(p.is_hom_to(&f1, &p1) && p.is_hom_to(&f1, &p2));
        let c3 = fixtures::c3();
        let z = c3.direct_product(&fixtures::zero_semiring());
        assert!(z.is_isomorphic(&c3));
        let q = f1.direct_product(&c3);
        assert_eq!(q.size(), 6);
        assert!(q.is_idealic());
    }

    #[test]
    fn inverse_image_along_hom() {
        // C3 -> F1 collapsing m to 1
        let h = SemiringHom::new(fixtures::c3(), fixtures::f1(), vec![0, 1, 1]).unwrap();
        assert_eq!(h.inverse_image(0), 0);
        assert_eq!(h.inverse_image(1), 2);
        assert!(SemiringHom::new(fixtures::c3(), fixtures::f1(), vec![0, 0, 0]).is_err());
    }
}
