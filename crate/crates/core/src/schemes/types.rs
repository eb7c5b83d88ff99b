//! The comparison maps `alpha1 : algebras -> idealic semirings` and
//! `alpha2 : A -> alpha1(A)` for each algebra kind.
//!
//! `alpha1` is built in two steps. First a "pre" idealic semiring: the
//! ideal lattice of a ring, the ideals of a monoid together with the empty
//! set, or the semiring itself. Then the quotient by the congruence
//! generated by `(x^2, x)`, which makes multiplication idempotent.

use serde::Serialize;

use crate::congruence::{congruence_closure, quotient, QuotientHom};
use crate::error::{Elem, Error, Result};
use crate::localization::MultSystem;
use crate::order::FinCim;
use crate::semiring::FinSemiring;
use crate::topology::Mask;

use super::algebra::{Algebra, AlgebraKind};

/// `alpha1(A)` with the data needed to compute `alpha2` and `alpha1` of maps.
#[derive(Debug, Clone)]
pub struct Alpha1 {
    pub kind: AlgebraKind,
    pub source: Algebra,
    /// Ideal lattice (or the semiring itself) before collapsing squares.
    pub pre: FinSemiring,
    /// Ideals as subsets of the source carrier; empty for semirings.
    pub ideals: Vec<Mask>,
    /// `A -> pre`, sending `x` to the ideal it generates.
    pub pre_alpha2: Vec<Elem>,
    pub collapse: QuotientHom,
    /// `alpha2 : A -> alpha1(A)`.
    pub alpha2: Vec<Elem>,
}

impl Alpha1 {
    pub fn semiring(&self) -> &FinSemiring {
        &self.collapse.quotient
    }

    pub fn alpha2(&self, x: Elem) -> Elem {
        self.alpha2[x]
    }

    /// The element of `alpha1(A)` represented by a subset of `A` closing to
    /// an ideal, or by a semiring element.
    pub fn class_of_pre(&self, p: Elem) -> Elem {
        self.collapse.project(p)
    }

    pub fn pre_index_of_ideal(&self, ideal: Mask) -> Option<Elem> {
        self.ideals.iter().position(|&i| i == ideal)
    }

    /// Every element of `alpha1(A)` is a finite sum of `alpha2` images.
    pub fn alpha2_generates(&self) -> bool {
        let s = self.semiring();
        s.elements().all(|b| {
            let below: Vec<Elem> = self
                .alpha2
                .iter()
                .copied()
                .filter(|&a| s.leq(a, b))
                .collect();
            s.sup(&below) == b
        })
    }

    /// `alpha2(xy) = alpha2(x) alpha2(y)` and `alpha2(1) = 1`.
    pub fn alpha2_multiplicative(&self) -> bool {
        let a = &self.source;
        let s = self.semiring();
        self.alpha2[a.one()] == s.one()
            && a.elements().all(|x| {
                a.elements()
                    .all(|y| self.alpha2[a.mul(x, y)] == s.mul(self.alpha2[x], self.alpha2[y]))
            })
    }
}

fn mask_members(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

fn closure_under_add(a: &Algebra, mut set: Mask) -> Mask {
    let Algebra::Ring(r) = a else { return set };
    set |= 1 << r.zero();
    loop {
        let mut next = set;
        for x in mask_members(set) {
            for y in mask_members(set) {
                next |= 1 << r.add(x, y);
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// The ideal generated by a set of elements. For monoids the empty set
/// generates the empty ideal.
pub fn ideal_generated(a: &Algebra, gens: Mask) -> Mask {
    let mut m: Mask = 0;
    for g in mask_members(gens) {
        for r in a.elements() {
            m |= 1 << a.mul(r, g);
        }
    }
    closure_under_add(a, m)
}

fn ideal_product(a: &Algebra, i: Mask, j: Mask) -> Mask {
    let mut m: Mask = 0;
    for x in mask_members(i) {
        for y in mask_members(j) {
            m |= 1 << a.mul(x, y);
        }
    }
    closure_under_add(a, m)
}

fn all_ideals(a: &Algebra) -> Vec<Mask> {
    let principal: Vec<Mask> = a.elements().map(|x| ideal_generated(a, 1 << x)).collect();
    let mut ideals: Vec<Mask> = match a {
        Algebra::Monoid(_) => vec![0],
        _ => vec![ideal_generated(a, 0)],
    };
    let mut i = 0;
    while i < ideals.len() {
        for &p in &principal {
            let s = closure_under_add(a, ideals[i] | p);
            if !ideals.contains(&s) {
                ideals.push(s);
            }
        }
        i += 1;
    }
    ideals.sort_by_key(|m| (m.count_ones(), *m));
    ideals
}

fn ideal_name(a: &Algebra, ideal: Mask) -> String {
    if let Some(g) = a.elements().find(|&g| ideal_generated(a, 1 << g) == ideal) {
        return format!("({})", a.name(g));
    }
    let parts: Vec<String> = mask_members(ideal).map(|x| a.name(x)).collect();
    format!("{{{}}}", parts.join(","))
}

/// `alpha1` for any kind. Semirings must be idealic.
pub fn alpha1(a: &Algebra) -> Result<Alpha1> {
    let (pre, ideals, pre_alpha2) = match a {
        Algebra::Semiring(r) => {
            if !r.is_idealic() {
                return Err(Error::Precondition(
                    "semiring type needs an idealic semiring".into(),
                ));
            }
            (r.clone(), vec![], a.elements().collect())
        }
        _ => {
            if a.size() > 64 {
                return Err(Error::Guard {
                    what: "ideal lattice carrier",
                    needed: a.size(),
                    limit: 64,
                });
            }
            let ideals = all_ideals(a);
            let n = ideals.len();
            let idx = |m: Mask| ideals.iter().position(|&i| i == m).expect("ideal closed");
            let cim = FinCim::from_order(n, |x, y| ideals[x] & !ideals[y] == 0)?;
            let mul: Vec<Vec<Elem>> = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| idx(ideal_product(a, ideals[x], ideals[y])))
                        .collect()
                })
                .collect();
            let one = idx(ideal_generated(a, 1 << a.one()));
            let pre = FinSemiring::new(cim, mul, one)?
                .with_names(ideals.iter().map(|&m| ideal_name(a, m)).collect())?;
            let pre_alpha2: Vec<Elem> = a
                .elements()
                .map(|x| idx(ideal_generated(a, 1 << x)))
                .collect();
            (pre, ideals, pre_alpha2)
        }
    };
    let squares: Vec<(Elem, Elem)> = pre.elements().map(|x| (pre.mul(x, x), x)).collect();
    let collapse = quotient(&congruence_closure(&pre, &squares))?;
    let alpha2 = a
        .elements()
        .map(|x| collapse.project(pre_alpha2[x]))
        .collect();
    Ok(Alpha1 {
        kind: a.kind(),
        source: a.clone(),
        pre,
        ideals,
        pre_alpha2,
        collapse,
        alpha2,
    })
}

/// `alpha1(f) : alpha1(A) -> alpha1(B)` for a homomorphism `f : A -> B`.
/// An ideal goes to the ideal generated by its image.
pub fn alpha1_map(src: &Alpha1, dst: &Alpha1, f: &[Elem]) -> Result<Vec<Elem>> {
    let image_of_pre = |p: Elem| -> Result<Elem> {
        let q = match src.kind {
            AlgebraKind::Semiring => f[p],
            _ => {
                let mut img: Mask = 0;
                for x in mask_members(src.ideals[p]) {
                    img |= 1 << f[x];
                }
                let gen = ideal_generated(&dst.source, img);
                dst.pre_index_of_ideal(gen)
                    .ok_or_else(|| Error::Precondition("image ideal missing".into()))?
            }
        };
        Ok(dst.class_of_pre(q))
    };
    let s = src.semiring();
    let mut out = vec![usize::MAX; s.size()];
    for p in src.pre.elements() {
        let c = src.class_of_pre(p);
        let v = image_of_pre(p)?;
        if out[c] == usize::MAX {
            out[c] = v;
        } else if out[c] != v {
            return Err(Error::Precondition(
                "alpha1 of the map is not well defined".into(),
            ));
        }
    }
    Ok(out)
}

/// Outcome of comparing `alpha1(A_S)` with `alpha1(A)_{alpha2(S)}`.
#[derive(Debug, Clone, Serialize)]
pub struct GammaCheck {
    pub left_size: usize,
    pub right_size: usize,
    /// The induced map `alpha1(A)_{alpha2(S)} -> alpha1(A_S)`, if well defined.
    pub map: Option<Vec<Elem>>,
    pub is_isomorphism: bool,
}

/// Check the natural isomorphism `alpha1(A_S) = alpha1(A)_{alpha2(S)}`.
pub fn gamma_check(a: &Algebra, s: &[Elem]) -> Result<GammaCheck> {
    let base = alpha1(a)?;
    let (loc, pi) = a.localize(s)?;
    let left = alpha1(&loc)?;
    let sys = a.mult_closure(s);
    let images: Vec<Elem> = sys.iter().map(|&x| base.alpha2(x)).collect();
    let r = base.semiring();
    let right = crate::localization::localize(r, &MultSystem::generated(r, &images))?;
    let along = alpha1_map(&base, &left, &pi)?;
    let rq = right.semiring();
    let mut map = vec![usize::MAX; rq.size()];
    let mut ok = true;
    for x in r.elements() {
        let c = right.project(x);
        if map[c] == usize::MAX {
            map[c] = along[x];
        } else if map[c] != along[x] {
            ok = false;
        }
    }
    let map = ok.then_some(map);
    let is_isomorphism = map.as_ref().is_some_and(|m| {
        crate::structure::is_bijection(m, left.semiring().size())
            && rq.is_hom_to(left.semiring(), m)
    });
    Ok(GammaCheck {
        left_size: left.semiring().size(),
        right_size: rq.size(),
        map,
        is_isomorphism,
    })
}

/// A schematizable type: an algebra kind with its `alpha1`, `alpha2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SchematizableType {
    pub kind: AlgebraKind,
}

impl SchematizableType {
    pub fn ring() -> Self {
        SchematizableType {
            kind: AlgebraKind::Ring,
        }
    }

    pub fn monoid() -> Self {
        SchematizableType {
            kind: AlgebraKind::Monoid,
        }
    }

    pub fn semiring() -> Self {
        SchematizableType {
            kind: AlgebraKind::Semiring,
        }
    }

    pub fn alpha1(&self, a: &Algebra) -> Result<Alpha1> {
        if a.kind() != self.kind {
            return Err(Error::Precondition(format!(
                "expected a {:?} algebra, got {:?}",
                self.kind,
                a.kind()
            )));
        }
        alpha1(a)
    }

    pub fn gamma_check(&self, a: &Algebra, s: &[Elem]) -> Result<GammaCheck> {
        self.alpha1(a)?;
        gamma_check(a, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::schemes::algebra::{FinMonoid, FinRing};

    #[test]
    fn z12_ideals_collapse_to_b4() {
        let a = alpha1(&Algebra::Ring(FinRing::zmod(12))).unwrap();
        let names: Vec<String> = a.pre.elements().map(|x| a.pre.name(x)).collect();
        assert_eq!(names, ["(0)", "(6)", "(4)", "(3)", "(2)", "(1)"]);
        assert!(a.semiring().is_isomorphic(&fixtures::b4().unnamed()));
        assert!(a.alpha2_generates());
        assert!(a.alpha2_multiplicative());
        // (2) and (4) have the same radical
        assert_eq!(a.alpha2(2), a.alpha2(4));
        assert_ne!(a.alpha2(2), a.alpha2(3));
    }

    #[test]
    fn truncated_monoid_alpha1_is_c3() {
        let a = alpha1(&Algebra::Monoid(fixtures::truncated_monoid())).unwrap();
        assert_eq!(a.pre.size(), 4);
        assert!(a.semiring().is_isomorphic(&fixtures::c3().unnamed()));
        assert_eq!(a.alpha2(1), a.alpha2(2));
        assert!(a.alpha2_multiplicative());
    }

    #[test]
    fn group_alpha1_is_f1() {
        let a = alpha1(&Algebra::Monoid(FinMonoid::cyclic_group(2))).unwrap();
        assert!(a.semiring().is_isomorphic(&fixtures::f1().unnamed()));
    }

    #[test]
    fn semiring_alpha1() {
        let a = alpha1(&Algebra::Semiring(fixtures::n_eps())).unwrap();
        assert!(a.semiring().is_isomorphic(&fixtures::f1().unnamed()));
        let b = alpha1(&Algebra::Semiring(fixtures::b4())).unwrap();
        assert_eq!(b.semiring().size(), 4);
    }

    #[test]
    fn gamma_on_corpus() {
        let algebras = vec![
            Algebra::Ring(FinRing::zmod(12)),
            Algebra::Ring(FinRing::zmod(6)),
            Algebra::Monoid(fixtures::truncated_monoid()),
            Algebra::Semiring(fixtures::b4()),
            Algebra::Semiring(fixtures::n_eps()),
        ];
        for a in algebras {
            for x in a.elements() {
                let g = gamma_check(&a, &[x]).unwrap();
                assert!(g.is_isomorphism, "{:?} at {}", a.kind(), a.name(x));
            }
        }
    }

    #[test]
    fn alpha1_of_maps() {
        let z12 = Algebra::Ring(FinRing::zmod(12));
        let z4 = Algebra::Ring(FinRing::zmod(4));
        let f: Vec<Elem> = (0..12).map(|x| x % 4).collect();
        let (a, b) = (alpha1(&z12).unwrap(), alpha1(&z4).unwrap());
        let m = alpha1_map(&a, &b, &f).unwrap();
        assert!(a.semiring().is_hom_to(b.semiring(), &m));
    }
}
