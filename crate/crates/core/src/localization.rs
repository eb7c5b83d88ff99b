//! Localization of finite idealic semirings.
//!
//! Every element of a finite semiring is compact, so the compact-element
//! quantifiers of the general theory range over the whole carrier here.

use crate::congruence::{congruence_closure, quotient, CongruencePartition, QuotientHom};
use crate::error::{Elem, Error, Law, Result, Violation};
use crate::guards::Guards;
use crate::semiring::FinSemiring;
use crate::spectrum;

/// A multiplicatively closed subset containing 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultSystem {
    base: FinSemiring,
    members: Vec<Elem>,
}

impl MultSystem {
    /// Validate an explicit member list.
    pub fn new(r: &FinSemiring, members: &[Elem]) -> Result<Self> {
        let mut m: Vec<Elem> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if let Some(&x) = m.iter().find(|&&x| x >= r.size()) {
            return Err(Error::Format(format!("element {x} out of range")));
        }
        if !m.contains(&r.one()) {
            return Err(Violation::new(Law::NotMultiplicativeSystem, [r.one()]).into());
        }
        for &a in &m {
            for &b in &m {
                if m.binary_search(&r.mul(a, b)).is_err() {
                    return Err(Violation::new(Law::NotMultiplicativeSystem, [a, b]).into());
                }
            }
        }
        Ok(MultSystem {
            base: r.clone(),
            members: m,
        })
    }

    /// The least multiplicative system containing `gens`.
    pub fn generated(r: &FinSemiring, gens: &[Elem]) -> Self {
        let mut m = vec![r.one()];
        let mut i = 0;
        let mut todo: Vec<Elem> = gens.to_vec();
        loop {
            for g in todo.drain(..) {
                if !m.contains(&g) {
                    m.push(g);
                }
            }
            if i >= m.len() {
                break;
            }
            for j in 0..=i {
                let p = r.mul(m[i], m[j]);
                if !m.contains(&p) {
                    todo.push(p);
                }
            }
            i += 1;
        }
        m.sort_unstable();
        MultSystem {
            base: r.clone(),
            members: m,
        }
    }

    /// `{f^n}`, the full finite orbit.
    pub fn powers(r: &FinSemiring, f: Elem) -> Self {
        MultSystem {
            base: r.clone(),
            members: r.powers(f),
        }
    }

    /// `{x : x not <= p}` for a prime `p`.
    pub fn prime_complement(r: &FinSemiring, p: Elem) -> Result<Self> {
        if !spectrum::is_prime(r, p) {
            return Err(Violation::new(Law::NotPrime, [p]).into());
        }
        Ok(MultSystem {
            base: r.clone(),
            members: r.elements().filter(|&x| !r.leq(x, p)).collect(),
        })
    }

    pub fn base(&self) -> &FinSemiring {
        &self.base
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Every multiplicative system of `r`, by subset scan.
pub fn all_mult_systems(r: &FinSemiring, guards: &Guards) -> Result<Vec<MultSystem>> {
    Guards::check(
        "multiplicative system scan carrier",
        r.size(),
        guards.lattice,
    )?;
    let n = r.size();
    Ok((0..1u64 << n)
        .filter(|mask| mask >> r.one() & 1 == 1)
        .filter_map(|mask| {
            let m: Vec<Elem> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            MultSystem::new(r, &m).ok()
        })
        .collect())
}

#[derive(Debug, Clone)]
pub struct Localization {
    pub sigma: MultSystem,
    pub result: QuotientHom,
}

impl Localization {
    pub fn semiring(&self) -> &FinSemiring {
        &self.result.quotient
    }

    pub fn project(&self, x: Elem) -> Elem {
        self.result.project(x)
    }

    pub fn congruence(&self) -> &CongruencePartition {
        &self.result.cong
    }
}

/// `R -> Sigma^{-1} R`, the quotient by the congruence generated by `(1, s)`.
pub fn localize(r: &FinSemiring, sigma: &MultSystem) -> Result<Localization> {
    let pairs: Vec<(Elem, Elem)> = sigma.members().iter().map(|&s| (r.one(), s)).collect();
    let result = quotient(&congruence_closure(r, &pairs))?;
    Ok(Localization {
        sigma: sigma.clone(),
        result,
    })
}

pub fn localize_at_element(r: &FinSemiring, f: Elem) -> Result<Localization> {
    localize(r, &MultSystem::powers(r, f))
}

pub fn localize_at_prime(r: &FinSemiring, p: Elem) -> Result<Localization> {
    localize(r, &MultSystem::prime_complement(r, p)?)
}

/// Whether every `x <= f` has `s` in `sigma` with `s x <= g`, and symmetrically.
pub fn loc_relation_oracle(r: &FinSemiring, sigma: &MultSystem, f: Elem, g: Elem) -> bool {
    let dominated = |f: Elem, g: Elem| {
        r.elements()
            .filter(|&x| r.leq(x, f))
            .all(|x| sigma.members().iter().any(|&s| r.leq(r.mul(s, x), g)))
    };
    dominated(f, g) && dominated(g, f)
}

/// `sup {x : s x <= a for some s in sigma}`.
pub fn sigma_saturation(r: &FinSemiring, sigma: &MultSystem, a: Elem) -> Elem {
    r.sup_where(|x| sigma.members().iter().any(|&s| r.leq(r.mul(s, x), a)))
}

/// Whether some power `x^n` with `n >= 1` lies below `a`.
pub fn power_below(r: &FinSemiring, x: Elem, a: Elem) -> bool {
    let mut cur = x;
    for _ in 0..=r.size() {
        if r.leq(cur, a) {
            return true;
        }
        cur = r.mul(cur, x);
    }
    false
}

/// `sqrt a = sup {x : x^n <= a for some n >= 1}`.
pub fn radical(r: &FinSemiring, a: Elem) -> Elem {
    r.sup_where(|x| power_below(r, x, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct VEquiv {
    /// every `x <= a` has a power below `b`
    pub powers: bool,
    /// `sqrt a <= sqrt b`
    pub radicals: bool,
    /// `V(a) contains V(b)`
    pub closed_sets: bool,
    /// `<(1,b)>` is contained in `<(1,a)>`
    pub congruences: bool,
}

impl VEquiv {
    pub fn consistent(&self) -> bool {
        self.powers == self.radicals
            && self.radicals == self.closed_sets
            && self.closed_sets == self.congruences
    }
}

pub fn v_equiv_check(r: &FinSemiring, a: Elem, b: Elem) -> Result<VEquiv> {
    r.require_idealic("v_equiv_check")?;
    let primes = spectrum::primes(r);
    let v = |x: Elem| -> Vec<Elem> { primes.iter().copied().filter(|&p| r.leq(x, p)).collect() };
    let (va, vb) = (v(a), v(b));
    let ca = congruence_closure(r, &[(r.one(), a)]);
    Ok(VEquiv {
        powers: r
            .elements()
            .filter(|&x| r.leq(x, a))
            .all(|x| power_below(r, x, b)),
        radicals: r.leq(radical(r, a), radical(r, b)),
        closed_sets: vb.iter().all(|p| va.contains(p)),
        congruences: ca.related(r.one(), b),
    })
}

/// A unique maximal element below 1 (the zero semiring is not local).
pub fn is_local(r: &FinSemiring) -> bool {
    maximal_non_units(r).len() == 1
}

/// Maximal elements of `R \ {1}`.
pub fn maximal_non_units(r: &FinSemiring) -> Vec<Elem> {
    let non_units: Vec<Elem> = r.elements().filter(|&x| x != r.one()).collect();
    non_units
        .iter()
        .copied()
        .filter(|&m| !non_units.iter().any(|&y| r.cim().lt(m, y)))
        .collect()
}

/// Every maximal element of `R \ {1}` is prime.
pub fn maximal_are_prime(r: &FinSemiring) -> bool {
    maximal_non_units(r)
        .into_iter()
        .all(|m| spectrum::is_prime(r, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn localization_examples() {
        let c3 = fixtures::c3();
        let l = localize_at_element(&c3, 1).unwrap();
        assert!(l.semiring().is_isomorphic(&fixtures::f1()));
        assert_eq!(l.congruence().classes(), vec![vec![0], vec![1, 2]]);
        for (_, r) in fixtures::corpus() {
            let l = localize_at_element(&r, r.one()).unwrap();
            assert!(l.semiring().is_isomorphic(&r));
        }
        let ne = fixtures::n_eps();
        assert_eq!(localize_at_element(&ne, 1).unwrap().semiring().size(), 1);
    }

    #[test]
    fn localization_inverts_sigma() {
        for (_, r) in fixtures::corpus() {
            for sigma in all_mult_systems(&r, &Guards::default()).unwrap() {
                let l = localize(&r, &sigma).unwrap();
                for &s in sigma.members() {
                    assert_eq!(l.project(s), l.semiring().one());
                }
                assert!(l.semiring().is_idealic());
            }
        }
    }

    #[test]
    fn non_prime_rejected() {
        let c3 = fixtures::c3();
        assert!(localize_at_prime(&c3, 2).is_err());
        assert!(localize_at_prime(&c3, 1).is_ok());
    }

    #[test]
    fn oracle_examples() {
        let c3 = fixtures::c3();
        let sigma = MultSystem::new(&c3, &[1, 2]).unwrap();
        assert!(loc_relation_oracle(&c3, &sigma, 2, 1));
        assert!(loc_relation_oracle(&c3, &sigma, 0, 0));
        let ne = fixtures::n_eps();
        let sigma = MultSystem::new(&ne, &[0, 1, 2]).unwrap();
        assert!(loc_relation_oracle(&ne, &sigma, 2, 0));
    }

    #[test]
    fn mult_system_validation() {
        let c3 = fixtures::c3();
        assert!(MultSystem::new(&c3, &[1]).is_err());
        let ne = fixtures::n_eps();
        assert!(MultSystem::new(&ne, &[1, 2]).is_err());
        assert_eq!(MultSystem::generated(&ne, &[1]).members(), &[0, 1, 2]);
    }

    #[test]
    fn saturation_examples() {
        let c3 = fixtures::c3();
        let sigma = MultSystem::new(&c3, &[1, 2]).unwrap();
        assert_eq!(sigma_saturation(&c3, &sigma, 1), 2);
        let trivial = MultSystem::new(&c3, &[2]).unwrap();
        for a in c3.elements() {
            assert_eq!(sigma_saturation(&c3, &trivial, a), a);
        }
        let b4 = fixtures::b4();
        let sigma = MultSystem::new(&b4, &[1, 3]).unwrap();
        assert_eq!(sigma_saturation(&b4, &sigma, 1), 3);
    }

    #[test]
    fn saturation_matches_quotient() {
        for (_, r) in fixtures::corpus() {
            for sigma in all_mult_systems(&r, &Guards::default()).unwrap() {
                let l = localize(&r, &sigma).unwrap();
                for a in r.elements() {
                    assert_eq!(sigma_saturation(&r, &sigma, a), l.result.saturation(a));
                }
            }
        }
    }

    #[test]
    fn radical_examples() {
        let ne = fixtures::n_eps();
        assert_eq!(radical(&ne, 0), 1);
        assert_eq!(radical(&ne, 2), 2);
        for r in [fixtures::c3(), fixtures::b4()] {
            for a in r.elements() {
                assert_eq!(radical(&r, a), a);
            }
        }
    }

    #[test]
    fn radical_is_closure() {
        for (_, r) in fixtures::corpus() {
            for a in r.elements() {
                let ra = radical(&r, a);
                assert!(r.leq(a, ra));
                assert_eq!(radical(&r, ra), ra);
                for b in r.elements() {
                    if r.leq(a, b) {
                        assert!(r.leq(ra, radical(&r, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn v_equiv_examples() {
        let ne = fixtures::n_eps();
        let v = v_equiv_check(&ne, 0, 1).unwrap();
        assert!(v.powers && v.radicals && v.closed_sets && v.congruences);
        let c3 = fixtures::c3();
        let v = v_equiv_check(&c3, 2, 0).unwrap();
        assert!(!v.powers && !v.radicals && !v.closed_sets && !v.congruences);
        for (_, r) in fixtures::corpus() {
            for a in r.elements() {
                for b in r.elements() {
                    assert!(v_equiv_check(&r, a, b).unwrap().consistent());
                }
            }
        }
    }

    #[test]
    fn local_at_primes_and_maximal_primes() {
        for (_, r) in fixtures::corpus() {
            for p in spectrum::primes(&r) {
                let l = localize_at_prime(&r, p).unwrap();
                assert!(is_local(l.semiring()));
            }
            assert!(maximal_are_prime(&r));
        }
    }
}
