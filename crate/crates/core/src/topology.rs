//! Finite topological spaces given by their closed sets.
//!
//! Subsets of the point set are `u64` bitmasks, bit `i` for point `i`.

use serde::Serialize;

use crate::error::{Elem, Error, Law, Result, Violation};
use crate::guards::Guards;
use crate::order::FinCim;
use crate::semiring::FinSemiring;

pub type Mask = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinTop {
    points: Vec<String>,
    /// Sorted by decreasing cardinality, then by mask; the full set is first.
    closed: Vec<Mask>,
}

fn sort_closed(closed: &mut Vec<Mask>) {
    closed.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    closed.dedup();
}

pub fn members(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

impl FinTop {
    pub fn new(points: Vec<String>, closed: Vec<Mask>) -> Result<Self> {
        let n = points.len();
        if n > 63 {
            return Err(Error::Format(format!("{n} points; at most 63 supported")));
        }
        let full: Mask = (1u64 << n) - 1;
        if let Some(&c) = closed.iter().find(|&&c| c & !full != 0) {
            return Err(Error::Format(format!(
                "closed set {c:#b} mentions unknown points"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(p) = points.iter().find(|p| !seen.insert(*p)) {
            return Err(Error::Format(format!("duplicate point {p}")));
        }
        let mut closed = closed;
        sort_closed(&mut closed);
        let has = |m: Mask| {
            closed
                .binary_search_by(|c| m.count_ones().cmp(&c.count_ones()).then(c.cmp(&m)))
                .is_ok()
        };
        if !has(0) {
            return Err(Violation::new(Law::TopologyEmpty, vec![]).into());
        }
        if !has(full) {
            return Err(Violation::new(Law::TopologyFull, vec![]).into());
        }
        for (i, &a) in closed.iter().enumerate() {
            for (j, &b) in closed.iter().enumerate() {
                if !has(a & b) {
                    return Err(Violation::new(Law::TopologyIntersection, [i, j]).into());
                }
                if !has(a | b) {
                    return Err(Violation::new(Law::TopologyUnion, [i, j]).into());
                }
            }
        }
        Ok(FinTop { points, closed })
    }

    /// The Alexandrov space of a preorder: closed sets are down-sets, so
    /// `x` lies in the closure of `y` exactly when `leq(x, y)`.
    pub fn from_specialization(
        points: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = points.len();
        let closed = (0..1u64 << n)
            .filter(|&m| members(m).all(|y| (0..n).all(|x| !leq(x, y) || m >> x & 1 == 1)))
            .collect();
        FinTop::new(points, closed)
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points
            .iter()
            .position(|p| p == name)
            .or_else(|| name.parse().ok().filter(|&i: &usize| i < self.size()))
    }

    pub fn full(&self) -> Mask {
        (1u64 << self.size()) - 1
    }

    pub fn closed_sets(&self) -> &[Mask] {
        &self.closed
    }

    pub fn closed_index(&self, m: Mask) -> Option<usize> {
        self.closed.iter().position(|&c| c == m)
    }

    pub fn is_closed(&self, m: Mask) -> bool {
        self.closed_index(m).is_some()
    }

    pub fn open_sets(&self) -> Vec<Mask> {
        self.closed.iter().map(|c| self.full() & !c).collect()
    }

    /// Smallest closed set containing `m`.
    pub fn closure(&self, m: Mask) -> Mask {
        self.closed
            .iter()
            .filter(|&&c| c & m == m)
            .fold(self.full(), |acc, &c| acc & c)
    }

    pub fn point_closure(&self, x: usize) -> Mask {
        self.closure(1 << x)
    }

    /// `x` is a specialization of `y`: `x` lies in the closure of `y`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.point_closure(y) >> x & 1 == 1
    }

    pub fn is_t0(&self) -> bool {
        let cl: Vec<Mask> = (0..self.size()).map(|x| self.point_closure(x)).collect();
        (0..cl.len()).all(|i| (0..i).all(|j| cl[i] != cl[j]))
    }

    /// Nonempty closed sets that are not the union of two proper closed subsets.
    pub fn is_irreducible(&self, z: Mask) -> bool {
        if z == 0 || !self.is_closed(z) {
            return false;
        }
        let proper: Vec<Mask> = self
            .closed
            .iter()
            .copied()
            .filter(|&c| c & z == c && c != z)
            .collect();
        !proper.iter().any(|&a| proper.iter().any(|&b| a | b == z))
    }

    pub fn irreducible_closed_sets(&self) -> Vec<Mask> {
        self.closed
            .iter()
            .copied()
            .filter(|&z| self.is_irreducible(z))
            .collect()
    }

    /// The points whose closure is `z`.
    pub fn generic_points(&self, z: Mask) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| self.point_closure(x) == z)
            .collect()
    }

    pub fn is_sober(&self) -> bool {
        self.irreducible_closed_sets()
            .iter()
            .all(|&z| self.generic_points(z).len() == 1)
    }

    /// Witness of non-sobriety: an irreducible closed set with zero or
    /// several generic points.
    pub fn check_sober(&self) -> std::result::Result<(), Violation> {
        for (i, &z) in self.irreducible_closed_sets().iter().enumerate() {
            if self.generic_points(z).len() != 1 {
                return Err(Violation::new(Law::NotSober, [i]));
            }
        }
        Ok(())
    }

    pub fn set_label(&self, m: Mask) -> String {
        let names: Vec<&str> = members(m).map(|i| self.points[i].as_str()).collect();
        format!("[{}]", names.join(" "))
    }

    /// Whether `f: self -> target` pulls closed sets back to closed sets.
    pub fn is_continuous(&self, target: &FinTop, f: &[usize]) -> bool {
        f.len() == self.size()
            && f.iter().all(|&y| y < target.size())
            && target
                .closed
                .iter()
                .all(|&c| self.is_closed(self.preimage(f, c)))
    }

    pub fn preimage(&self, f: &[usize], m: Mask) -> Mask {
        (0..self.size())
            .filter(|&x| m >> f[x] & 1 == 1)
            .fold(0, |acc, x| acc | 1 << x)
    }

    pub fn image(f: &[usize], m: Mask) -> Mask {
        members(m).fold(0, |acc, x| acc | 1 << f[x])
    }

    /// Whether `f` is a bijection carrying closed sets exactly onto closed sets.
    pub fn is_homeomorphism(&self, target: &FinTop, f: &[usize]) -> bool {
        crate::structure::is_bijection(f, target.size())
            && self.closed.len() == target.closed.len()
            && self
                .closed
                .iter()
                .all(|&c| target.is_closed(FinTop::image(f, c)))
    }

    /// A homeomorphism `self -> target`, found by matching specialization
    /// preorders and then confirmed on the closed sets.
    pub fn find_homeomorphism(&self, target: &FinTop) -> Option<Vec<usize>> {
        let n = self.size();
        if n != target.size() || self.closed.len() != target.closed.len() {
            return None;
        }
        let a: Vec<Mask> = (0..n).map(|x| self.point_closure(x)).collect();
        let b: Vec<Mask> = (0..n).map(|x| target.point_closure(x)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(
            i: usize,
            a: &[Mask],
            b: &[Mask],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            src: &FinTop,
            dst: &FinTop,
        ) -> bool {
            let n = a.len();
            if i == n {
                return src.is_homeomorphism(dst, map);
            }
            for y in 0..n {
                if used[y] || a[i].count_ones() != b[y].count_ones() {
                    continue;
                }
                let ok = (0..i).all(|j| {
                    (a[i] >> j & 1 == 1) == (b[y] >> map[j] & 1 == 1)
                        && (a[j] >> i & 1 == 1) == (b[map[j]] >> y & 1 == 1)
                });
                if !ok {
                    continue;
                }
                map[i] = y;
                used[y] = true;
                if rec(i + 1, a, b, map, used, src, dst) {
                    return true;
                }
                used[y] = false;
            }
            map[i] = usize::MAX;
            false
        }
        rec(0, &a, &b, &mut map, &mut used, self, target).then_some(map)
    }
}

/// `C(X)`: closed sets with `+ = intersection`, `* = union`, `0 = X`, `1 = {}`.
///
/// Element `i` of the semiring is `space.closed_sets()[i]`; index 0 is the
/// whole space and the last index is the empty set.
pub fn closed_set_semiring(x: &FinTop) -> FinSemiring {
    let c = x.closed_sets();
    let m = c.len();
    let idx = |s: Mask| x.closed_index(s).expect("closed family is a lattice");
    let add: Vec<Vec<Elem>> = (0..m)
        .map(|i| (0..m).map(|j| idx(c[i] & c[j])).collect())
        .collect();
    let mul: Vec<Vec<Elem>> = (0..m)
        .map(|i| (0..m).map(|j| idx(c[i] | c[j])).collect())
        .collect();
    let cim = FinCim::new(add, idx(x.full()), idx(0)).expect("closed sets form a lattice");
    let names = c.iter().map(|&s| x.set_label(s)).collect();
    FinSemiring::new(cim, mul, idx(0))
        .expect("closed sets form an idealic semiring")
        .with_names(names)
        .expect("closed-set labels are distinct")
}

/// The soberification together with its unit `x -> closure{x}`.
#[derive(Debug, Clone)]
pub struct Soberification {
    pub space: FinTop,
    /// Points of `space` as closed sets of the input.
    pub irreducibles: Vec<Mask>,
    pub unit: Vec<usize>,
}

pub fn soberify(x: &FinTop) -> Soberification {
    let irr = x.irreducible_closed_sets();
    let points = irr.iter().map(|&z| x.set_label(z)).collect();
    // V(z) = irreducibles contained in z
    let closed = x
        .closed_sets()
        .iter()
        .map(|&z| {
            irr.iter()
                .enumerate()
                .filter(|(_, &w)| w & z == w)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let space = FinTop::new(points, closed).expect("V(z) family is a topology");
    let unit = (0..x.size())
        .map(|p| {
            let cl = x.point_closure(p);
            irr.iter()
                .position(|&z| z == cl)
                .expect("point closures are irreducible")
        })
        .collect();
    Soberification {
        space,
        irreducibles: irr,
        unit,
    }
}

/// Points are the prime filters on `C(X)`; closed sets are
/// `V(Z) = {F : Z in F}` for closed `Z`.
#[derive(Debug, Clone)]
pub struct PrimeFilterSpace {
    pub space: FinTop,
    /// Each filter as a bitmask over indices of `X.closed_sets()`.
    pub filters: Vec<Mask>,
    /// `x -> {Z : x in Z}`.
    pub unit: Vec<usize>,
}

pub fn prime_filter_space(x: &FinTop, guards: &Guards) -> Result<PrimeFilterSpace> {
    let c = x.closed_sets();
    let m = c.len();
    Guards::check("closed-set lattice", m, guards.lattice)?;
    let idx = |s: Mask| x.closed_index(s).expect("closed under lattice operations");
    let empty = idx(0);
    let is_prime_filter = |f: Mask| -> bool {
        if f == 0 || f >> empty & 1 == 1 {
            return false;
        }
        for i in 0..m {
            for j in 0..m {
                let both = f >> i & 1 == 1 && f >> j & 1 == 1;
                if both != (f >> idx(c[i] & c[j]) & 1 == 1) {
                    return false;
                }
                if f >> idx(c[i] | c[j]) & 1 == 1 && !(f >> i & 1 == 1 || f >> j & 1 == 1) {
                    return false;
                }
            }
        }
        true
    };
    let filters: Vec<Mask> = (1..1u64 << m).filter(|&f| is_prime_filter(f)).collect();
    let label = |f: Mask| {
        let sets: Vec<String> = members(f).map(|i| x.set_label(c[i])).collect();
        format!("{{{}}}", sets.join(","))
    };
    let points = filters.iter().map(|&f| label(f)).collect();
    let closed = (0..m)
        .map(|z| {
            filters
                .iter()
                .enumerate()
                .filter(|(_, &f)| f >> z & 1 == 1)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let space = FinTop::new(points, closed)?;
    let unit = (0..x.size())
        .map(|p| {
            let f = (0..m)
                .filter(|&i| c[i] >> p & 1 == 1)
                .fold(0u64, |acc, i| acc | 1 << i);
            filters
                .iter()
                .position(|&g| g == f)
                .expect("point filters are prime")
        })
        .collect();
    Ok(PrimeFilterSpace {
        space,
        filters,
        unit,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TopJson {
    pub points: Vec<String>,
    pub closed: Vec<Vec<String>>,
}

impl FinTop {
    pub fn to_json(&self) -> TopJson {
        TopJson {
            points: self.points.clone(),
            closed: self
                .closed
                .iter()
                .map(|&m| members(m).map(|i| self.points[i].clone()).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validation() {
        let pts = vec!["a".to_string(), "b".to_string()];
        assert!(FinTop::new(pts.clone(), vec![0b11]).is_err());
        assert!(FinTop::new(pts.clone(), vec![0, 0b01, 0b10, 0b11]).is_ok());
        let err = FinTop::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![0, 0b011, 0b110, 0b111],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Invalid(v) if v.law == Law::TopologyIntersection));
    }

    #[test]
    fn closed_set_semirings() {
        let cs = closed_set_semiring(&fixtures::sierpinski());
        assert!(cs.is_isomorphic(&fixtures::c3()));
        assert!(closed_set_semiring(&fixtures::discrete(2)).is_isomorphic(&fixtures::b4()));
        assert!(closed_set_semiring(&fixtures::point()).is_isomorphic(&fixtures::f1()));
        assert!(cs.is_idempotent_mult() && cs.is_idealic());
    }

    #[test]
    fn sobriety() {
        let ind = fixtures::indiscrete(2);
        assert!(!ind.is_sober());
        assert!(ind.check_sober().is_err());
        assert_eq!(soberify(&ind).space.size(), 1);
        let s = fixtures::sierpinski();
        assert!(s.is_t0() && s.is_sober());
        let sob = soberify(&s);
        assert!(s.is_homeomorphism(&sob.space, &sob.unit));
        let e = soberify(&fixtures::empty_space());
        assert_eq!(e.space.size(), 0);
    }

    #[test]
    fn soberify_unit_is_continuous() {
        for x in [
            fixtures::indiscrete(3),
            fixtures::sierpinski(),
            fixtures::discrete(3),
        ] {
            let sob = soberify(&x);
            assert!(x.is_continuous(&sob.space, &sob.unit));
            assert!(sob.space.is_sober());
        }
    }

    #[test]
    fn prime_filters() {
        let g = Guards::default();
        for x in [
            fixtures::discrete(2),
            fixtures::sierpinski(),
            fixtures::point(),
        ] {
            let a = prime_filter_space(&x, &g).unwrap();
            assert!(x.is_homeomorphism(&a.space, &a.unit));
        }
        // the improper filter is never a point
        let ind = prime_filter_space(&fixtures::indiscrete(2), &g).unwrap();
        assert_eq!(ind.space.size(), 1);
    }

    #[test]
    fn homeomorphism_search() {
        let s = fixtures::sierpinski();
        let flipped = FinTop::new(vec!["c".into(), "o".into()], vec![0, 0b01, 0b11]).unwrap();
        assert_eq!(s.find_homeomorphism(&flipped), Some(vec![1, 0]));
        assert!(s.find_homeomorphism(&fixtures::discrete(2)).is_none());
    }

    #[test]
    fn specialization_roundtrip() {
        let s = fixtures::sierpinski();
        let t =
            FinTop::from_specialization(s.points().to_vec(), |x, y| s.specializes(x, y)).unwrap();
        assert_eq!(s, t);
    }
}
