//! Prime spectra, the `Spec -| C` adjunction on finite inputs, and gluing
//! along covers `s = s_1 + .. + s_k`.

use serde::Serialize;

use crate::error::{Elem, Error, Law, Result, Violation};
use crate::localization::{localize_at_element, Localization};
use crate::semiring::{FinSemiring, SemiringHom};
use crate::structure::is_bijection;
use crate::topology::{closed_set_semiring, FinTop, Mask};

/// `p` is prime when `{a : a not <= p}` contains 1 and is closed under `*`.
pub fn is_prime(r: &FinSemiring, p: Elem) -> bool {
    if r.leq(r.one(), p) {
        return false;
    }
    r.elements()
        .all(|a| r.leq(a, p) || r.elements().all(|b| r.leq(b, p) || !r.leq(r.mul(a, b), p)))
}

pub fn primes(r: &FinSemiring) -> Vec<Elem> {
    r.elements().filter(|&p| is_prime(r, p)).collect()
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub base: FinSemiring,
    pub primes: Vec<Elem>,
    /// Points are the primes, in the order of `primes`.
    pub space: FinTop,
    /// `v[a] = V(a)` as a mask over points.
    pub v: Vec<Mask>,
}

impl SpectrumResult {
    pub fn v(&self, a: Elem) -> Mask {
        self.v[a]
    }

    /// `D(a)`, the open complement of `V(a)`.
    pub fn d(&self, a: Elem) -> Mask {
        self.space.full() & !self.v[a]
    }

    pub fn point_of(&self, p: Elem) -> Option<usize> {
        self.primes.iter().position(|&q| q == p)
    }
}

pub fn spec(r: &FinSemiring) -> Result<SpectrumResult> {
    r.require_idealic("spec")?;
    let ps = primes(r);
    let v: Vec<Mask> = r
        .elements()
        .map(|a| {
            ps.iter()
                .enumerate()
                .filter(|(_, &p)| r.leq(a, p))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let points = ps.iter().map(|&p| r.name(p)).collect();
    let space = FinTop::new(points, v.clone())?;
    Ok(SpectrumResult {
        base: r.clone(),
        primes: ps,
        space,
        v,
    })
}

/// The continuous map `Spec B -> Spec A` of a hom `f: A -> B`.
#[derive(Debug, Clone)]
pub struct SpecMap {
    pub source: SpectrumResult,
    pub target: SpectrumResult,
    /// Point indices of `source` to point indices of `target`.
    pub map: Vec<usize>,
}

pub fn spec_map(f: &SemiringHom) -> Result<SpecMap> {
    let sa = spec(&f.source)?;
    let sb = spec(&f.target)?;
    let mut map = Vec::with_capacity(sb.primes.len());
    for &q in &sb.primes {
        let p = f.inverse_image(q);
        let idx = sa
            .point_of(p)
            .ok_or_else(|| Error::Invalid(Violation::new(Law::NotPrime, [p])))?;
        map.push(idx);
    }
    if !sb.space.is_continuous(&sa.space, &map) {
        return Err(Error::Precondition("induced map is not continuous".into()));
    }
    Ok(SpecMap {
        source: sb,
        target: sa,
        map,
    })
}

/// Outcome of comparing `R` with `C(Spec R)` through `a -> V(a)`.
#[derive(Debug, Clone, Serialize)]
pub enum DualityWitness {
    /// `iso[a]` is the index of `V(a)` in `C(Spec R)`.
    Isomorphism { iso: Vec<Elem> },
    /// Distinct elements with the same closed set.
    Collapse { a: Elem, b: Elem },
}

impl DualityWitness {
    pub fn is_iso(&self) -> bool {
        matches!(self, DualityWitness::Isomorphism { .. })
    }
}

/// The unit `R -> C(Spec R)`, `a -> V(a)`, as a map of indices.
pub fn unit_map(r: &FinSemiring) -> Result<(SpectrumResult, FinSemiring, Vec<Elem>)> {
    let s = spec(r)?;
    let c = closed_set_semiring(&s.space);
    let map = r
        .elements()
        .map(|a| s.space.closed_index(s.v(a)).expect("V(a) is closed"))
        .collect();
    Ok((s, c, map))
}

pub fn duality_check(r: &FinSemiring) -> Result<DualityWitness> {
    let (_, c, map) = unit_map(r)?;
    for a in r.elements() {
        for b in 0..a {
            if map[a] == map[b] {
                return Ok(DualityWitness::Collapse { a: b, b: a });
            }
        }
    }
    if is_bijection(&map, c.size()) && r.is_hom_to(&c, &map) {
        let inv = crate::structure::invert(&map);
        debug_assert!(c.is_hom_to(r, &inv));
        Ok(DualityWitness::Isomorphism { iso: map })
    } else {
        Err(Error::Precondition(
            "unit is injective but not onto C(Spec R)".into(),
        ))
    }
}

/// `x -> closure{x}` as a point of `Spec C(X)`, and whether it is a homeomorphism.
#[derive(Debug, Clone)]
pub struct SpaceDuality {
    pub spectrum: SpectrumResult,
    pub counit: Vec<usize>,
    pub homeomorphism: bool,
}

pub fn duality_check_space(x: &FinTop) -> Result<SpaceDuality> {
    let c = closed_set_semiring(x);
    let s = spec(&c)?;
    let mut counit = Vec::with_capacity(x.size());
    for p in 0..x.size() {
        let z = x
            .closed_index(x.point_closure(p))
            .expect("closure is closed");
        counit.push(
            s.point_of(z)
                .ok_or_else(|| Error::Invalid(Violation::new(Law::NotPrime, [z])))?,
        );
    }
    let homeomorphism = x.is_continuous(&s.space, &counit) && x.is_homeomorphism(&s.space, &counit);
    Ok(SpaceDuality {
        spectrum: s,
        counit,
        homeomorphism,
    })
}

/// `C(eta) . eps_{C(X)} = id`: `Z -> V(Z) -> {x : closure{x} in V(Z)}` is `Z`.
pub fn triangle_space(x: &FinTop) -> Result<bool> {
    let c = closed_set_semiring(x);
    let d = duality_check_space(x)?;
    Ok(c.elements().all(|z| {
        let vz = d.spectrum.v(z);
        x.preimage(&d.counit, vz) == x.closed_sets()[z]
    }))
}

/// `Spec(eps_R) . eta_{Spec R} = id`: `p -> closure{p} -> eps^{-1}(closure{p})` is `p`.
pub fn triangle_semiring(r: &FinSemiring) -> Result<bool> {
    let (s, c, eps) = unit_map(r)?;
    let hom = SemiringHom {
        source: r.clone(),
        target: c.clone(),
        map: eps,
    };
    Ok((0..s.primes.len()).all(|i| {
        let z = s
            .space
            .closed_index(s.space.point_closure(i))
            .expect("closed");
        hom.inverse_image(z) == s.primes[i]
    }))
}

/// A class of `R_s` glued from classes of the `R_{s_i}`.
#[derive(Debug, Clone)]
pub struct Glued {
    pub localization: Localization,
    /// Element of `localization.semiring()`.
    pub class: Elem,
    /// An element of `R` in that class.
    pub representative: Elem,
}

/// Glue sections `f_i` of `R_{s_i}` (given by representatives in `R`) into
/// the unique class of `R_s` that restricts to each of them.
///
/// Lifts are `s_i^N * sat_i(f_i)` with `N` the carrier size; the result is
/// re-verified and its uniqueness checked by scanning all of `R_s`.
pub fn glue(r: &FinSemiring, s: Elem, parts: &[(Elem, Elem)]) -> Result<Glued> {
    r.require_idealic("glue")?;
    let cover = r.sup(&parts.iter().map(|p| p.0).collect::<Vec<_>>());
    if cover != s {
        return Err(Error::Precondition(format!(
            "cover mismatch: sum of s_i is {}, expected {}",
            r.name(cover),
            r.name(s)
        )));
    }
    let locs: Vec<Localization> = parts
        .iter()
        .map(|&(si, _)| localize_at_element(r, si))
        .collect::<Result<_>>()?;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let lij = localize_at_element(r, r.mul(parts[i].0, parts[j].0))?;
            if lij.project(parts[i].1) != lij.project(parts[j].1) {
                return Err(Error::Precondition(format!(
                    "sections {i} and {j} disagree on the overlap"
                )));
            }
        }
    }
    let ls = localize_at_element(r, s)?;
    let restricts = |x: Elem| {
        parts
            .iter()
            .zip(&locs)
            .all(|(&(_, fi), l)| l.project(x) == l.project(fi))
    };
    let n = r.size();
    let lift = r.sup(
        &parts
            .iter()
            .zip(&locs)
            .map(|(&(si, fi), l)| r.mul(r.pow(si, n), l.result.saturation(fi)))
            .collect::<Vec<_>>(),
    );
    let mut classes: Vec<Elem> = r
        .elements()
        .filter(|&x| restricts(x))
        .map(|x| ls.project(x))
        .collect();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() != 1 {
        return Err(Error::Precondition(format!(
            "{} classes of R_s restrict to the given sections",
            classes.len()
        )));
    }
    if !restricts(lift) || ls.project(lift) != classes[0] {
        return Err(Error::Precondition(
            "lifted sum does not restrict correctly".into(),
        ));
    }
    Ok(Glued {
        class: classes[0],
        representative: lift,
        localization: ls,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn spectra() {
        let c3 = fixtures::c3();
        let s = spec(&c3).unwrap();
        assert_eq!(s.primes, vec![0, 1]);
        assert!(s
            .space
            .find_homeomorphism(&fixtures::sierpinski())
            .is_some());
        assert_eq!(spec(&fixtures::f1()).unwrap().primes, vec![0]);
        assert_eq!(spec(&fixtures::zero_semiring()).unwrap().space.size(), 0);
        let b = spec(&fixtures::b4()).unwrap();
        assert_eq!(b.primes, vec![1, 2]);
        assert!(b.space.find_homeomorphism(&fixtures::discrete(2)).is_some());
    }

    #[test]
    fn v_laws() {
        for (_, r) in fixtures::corpus() {
            let s = spec(&r).unwrap();
            assert_eq!(s.v(r.zero()), s.space.full());
            assert_eq!(s.v(r.one()), 0);
            for a in r.elements() {
                for b in r.elements() {
                    assert_eq!(s.v(r.add(a, b)), s.v(a) & s.v(b));
                    assert_eq!(s.v(r.mul(a, b)), s.v(a) | s.v(b));
                }
            }
            assert!(s.space.is_sober());
        }
    }

    #[test]
    fn spec_maps() {
        let c3 = fixtures::c3();
        let f1 = fixtures::f1();
        let incl = SemiringHom::new(f1.clone(), c3.clone(), vec![0, 2]).unwrap();
        assert_eq!(spec_map(&incl).unwrap().map, vec![0, 0]);
        let id = spec_map(&SemiringHom::identity(&c3)).unwrap();
        assert_eq!(id.map, vec![0, 1]);
        let q = SemiringHom::new(c3.clone(), f1, vec![0, 1, 1]).unwrap();
        let m = spec_map(&q).unwrap();
        assert_eq!(m.target.primes[m.map[0]], 0);
    }

    #[test]
    fn duality() {
        assert!(duality_check(&fixtures::b4()).unwrap().is_iso());
        assert!(duality_check(&fixtures::c3()).unwrap().is_iso());
        match duality_check(&fixtures::n_eps()).unwrap() {
            DualityWitness::Collapse { a, b } => assert_eq!((a, b), (0, 1)),
            w => panic!("expected collapse, got {w:?}"),
        }
        let d = duality_check_space(&fixtures::sierpinski()).unwrap();
        assert!(d.homeomorphism);
        assert!(
            !duality_check_space(&fixtures::indiscrete(2))
                .unwrap()
                .homeomorphism
        );
    }

    #[test]
    fn triangles() {
        for (_, r) in fixtures::corpus() {
            assert!(triangle_semiring(&r).unwrap());
        }
        for x in [
            fixtures::sierpinski(),
            fixtures::indiscrete(2),
            fixtures::discrete(3),
        ] {
            assert!(triangle_space(&x).unwrap());
        }
    }

    #[test]
    fn glue_examples() {
        let b4 = fixtures::b4();
        let g = glue(&b4, 3, &[(1, 3), (2, 0)]).unwrap();
        assert_eq!(g.class, g.localization.project(1));
        let g = glue(&b4, 3, &[(1, 0), (2, 0)]).unwrap();
        assert_eq!(g.class, g.localization.project(0));
        let c3 = fixtures::c3();
        let g = glue(&c3, 1, &[(1, 2)]).unwrap();
        assert_eq!(g.class, g.localization.project(2));
    }

    #[test]
    fn glue_errors() {
        let b4 = fixtures::b4();
        assert!(glue(&b4, 3, &[(1, 3)]).is_err());
        let c3 = fixtures::c3();
        // 1 and 0 differ in C3 localized at 1
        assert!(glue(&c3, 2, &[(2, 2), (2, 0)]).is_err());
    }
}
