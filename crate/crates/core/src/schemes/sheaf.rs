//! Presheaves of algebras on finite spaces, the sheaf condition and
//! sheafification.
//!
//! Sections are indexed by closed sets: `sections[z]` lives over the open
//! complement of `closed_sets()[z]`. A restriction runs from `z` to `w`
//! whenever `closed[w]` contains `closed[z]`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Elem, Error, Law, Result, Violation};
use crate::guards::Guards;
use crate::structure::{compose, is_bijection, Tables};
use crate::topology::{members, FinTop, Mask};

use super::algebra::{Algebra, AlgebraKind};

#[derive(Debug, Clone)]
pub struct Presheaf {
    space: FinTop,
    kind: AlgebraKind,
    sections: Vec<Algebra>,
    restrict: Vec<Vec<Option<Vec<Elem>>>>,
}

impl Presheaf {
    /// `restrict(z, w)` is asked for every pair with `closed[w] >= closed[z]`.
    pub fn new(
        space: FinTop,
        sections: Vec<Algebra>,
        mut restrict: impl FnMut(usize, usize) -> Vec<Elem>,
    ) -> Result<Self> {
        let k = space.closed_sets().len();
        if sections.len() != k {
            return Err(Error::Format(format!(
                "{} section algebras for {k} closed sets",
                sections.len()
            )));
        }
        let kind = sections[0].kind();
        if sections.iter().any(|s| s.kind() != kind) {
            return Err(Error::Format("section algebras of mixed kinds".into()));
        }
        let closed = space.closed_sets().to_vec();
        let mut table = vec![vec![None; k]; k];
        for z in 0..k {
            for w in 0..k {
                if closed[w] & closed[z] == closed[z] {
                    table[z][w] = Some(restrict(z, w));
                }
            }
        }
        let p = Presheaf {
            space,
            kind,
            sections,
            restrict: table,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let k = self.closed_count();
        for z in 0..k {
            for w in 0..k {
                let Some(f) = &self.restrict[z][w] else {
                    continue;
                };
                let (src, dst) = (&self.sections[z], &self.sections[w]);
                if f.len() != src.size() || f.iter().any(|&y| y >= dst.size()) {
                    return Err(Error::Format(format!(
                        "restriction {z}->{w} has the wrong shape"
                    )));
                }
                if !src.is_hom_to(dst, f) {
                    return Err(Violation::new(Law::NotHomomorphism, [z, w]).into());
                }
                if z == w && f.iter().enumerate().any(|(i, &y)| i != y) {
                    return Err(Violation::new(Law::NotFunctorial, [z]).into());
                }
                for v in 0..k {
                    let Some(g) = &self.restrict[w][v] else {
                        continue;
                    };
                    if compose(f, g) != *self.restrict[z][v].as_ref().unwrap() {
                        return Err(Violation::new(Law::NotFunctorial, [z, w, v]).into());
                    }
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &FinTop {
        &self.space
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn closed_count(&self) -> usize {
        self.space.closed_sets().len()
    }

    pub fn closed(&self, z: usize) -> Mask {
        self.space.closed_sets()[z]
    }

    /// Points of the open set over which `sections(z)` lives.
    pub fn open(&self, z: usize) -> Mask {
        self.space.full() & !self.closed(z)
    }

    pub fn sections(&self, z: usize) -> &Algebra {
        &self.sections[z]
    }

    pub fn restriction(&self, z: usize, w: usize) -> Option<&[Elem]> {
        self.restrict[z][w].as_deref()
    }

    pub fn res(&self, z: usize, w: usize, a: Elem) -> Elem {
        self.restrict[z][w].as_ref().expect("w refines z")[a]
    }

    /// Index of the closed set `X` (sections over the empty open).
    pub fn empty_open(&self) -> usize {
        0
    }

    /// Index of the closed set `{}` (global sections).
    pub fn global(&self) -> usize {
        self.closed_count() - 1
    }

    pub fn index_of_closed(&self, m: Mask) -> usize {
        self.space.closed_index(m).expect("closed set")
    }

    /// Closed complement of the minimal open neighbourhood of `x`.
    pub fn minimal(&self, x: usize) -> usize {
        let open: Mask = (0..self.space.size())
            .filter(|&y| self.space.point_closure(y) >> x & 1 == 1)
            .fold(0, |m, y| m | 1 << y);
        self.index_of_closed(self.space.full() & !open)
    }

    /// `(a|U_x)` for every `x` in the open set of `z`, in point order.
    pub fn germs(&self, z: usize, a: Elem) -> Vec<Elem> {
        members(self.open(z))
            .map(|x| self.res(z, self.minimal(x), a))
            .collect()
    }

    pub fn section_from_germs(&self, z: usize, germs: &[Elem]) -> Option<Elem> {
        self.sections[z]
            .elements()
            .find(|&a| self.germs(z, a) == germs)
    }

    /// Points of the open set of `z` where `a` is not invertible.
    pub fn support(&self, z: usize, a: Elem) -> Mask {
        members(self.open(z))
            .filter(|&x| {
                let m = self.minimal(x);
                !self.sections[m].is_unit(self.res(z, m, a))
            })
            .fold(0, |acc, x| acc | 1 << x)
    }

    /// The same presheaf with section algebras renamed.
    pub fn rename(mut self, z: usize, names: Vec<String>) -> Result<Self> {
        self.sections[z] = self.sections[z].clone().with_names(names)?;
        Ok(self)
    }

    /// Presheaves with the same sections and restrictions.
    pub fn same_as(&self, other: &Presheaf) -> bool {
        self.space == other.space
            && self.restrict == other.restrict
            && self
                .sections
                .iter()
                .zip(&other.sections)
                .all(|(a, b)| a.tables() == b.tables())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum CoverDefect {
    /// Two distinct sections with the same restrictions.
    NotSeparated { a: Elem, b: Elem },
    /// A matching family with no glued section.
    NotGlued { family: Vec<Elem> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverFailure {
    /// Closed set whose open complement is covered.
    pub closed: usize,
    /// Closed sets of the covering opens.
    pub cover: Vec<usize>,
    pub defect: CoverDefect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SheafCheck {
    pub is_sheaf: bool,
    pub covers_checked: usize,
    pub failure: Option<CoverFailure>,
}

fn antichain_covers(p: &Presheaf, z: usize) -> Vec<Vec<usize>> {
    let target = p.closed(z);
    let cands: Vec<usize> = (0..p.closed_count())
        .filter(|&w| w != z && p.closed(w) & target == target)
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..(1 << cands.len()) {
        let chosen: Vec<usize> = members(bits).map(|i| cands[i]).collect();
        let antichain = chosen.iter().all(|&a| {
            chosen
                .iter()
                .all(|&b| a == b || p.closed(a) & p.closed(b) != p.closed(a))
        });
        if !antichain {
            continue;
        }
        let meet = chosen.iter().fold(p.space.full(), |m, &w| m & p.closed(w));
        if meet == target {
            out.push(chosen);
        }
    }
    out
}

/// Enumerate the matching families over a cover. Two members `w_i`, `w_j`
/// are compared on their overlap, whose closed set is the union.
fn matching_families(p: &Presheaf, cover: &[usize], limit: usize) -> Result<Vec<Vec<Elem>>> {
    let overlap: Vec<Vec<usize>> = cover
        .iter()
        .map(|&a| {
            cover
                .iter()
                .map(|&b| p.index_of_closed(p.closed(a) | p.closed(b)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(cover.len());
    fn go(
        p: &Presheaf,
        cover: &[usize],
        overlap: &[Vec<usize>],
        cur: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
        limit: usize,
    ) -> Result<()> {
        let i = cur.len();
        if i == cover.len() {
            if out.len() >= limit {
                return Err(Error::Guard {
                    what: "matching families",
                    needed: out.len() + 1,
                    limit,
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for a in p.sections(cover[i]).elements() {
            let ok = (0..i).all(|j| {
                let o = overlap[i][j];
                p.res(cover[i], o, a) == p.res(cover[j], o, cur[j])
            });
            if ok {
                cur.push(a);
                go(p, cover, overlap, cur, out, limit)?;
                cur.pop();
            }
        }
        Ok(())
    }
    go(p, cover, &overlap, &mut cur, &mut out, limit)?;
    Ok(out)
}

/// Check the equalizer condition for every cover of every open set.
pub fn sheaf_check(p: &Presheaf, guards: &Guards) -> Result<SheafCheck> {
    Guards::check("closed-set lattice", p.closed_count(), guards.lattice)?;
    let mut covers_checked = 0;
    for z in 0..p.closed_count() {
        for cover in antichain_covers(p, z) {
            covers_checked += 1;
            let families = matching_families(p, &cover, guards.carrier)?;
            let mut seen: HashMap<Vec<Elem>, Elem> = HashMap::new();
            for a in p.sections(z).elements() {
                let fam: Vec<Elem> = cover.iter().map(|&w| p.res(z, w, a)).collect();
                if let Some(&b) = seen.get(&fam) {
                    return Ok(SheafCheck {
                        is_sheaf: false,
                        covers_checked,
                        failure: Some(CoverFailure {
                            closed: z,
                            cover,
                            defect: CoverDefect::NotSeparated { a: b, b: a },
                        }),
                    });
                }
                seen.insert(fam, a);
            }
            if let Some(family) = families.into_iter().find(|f| !seen.contains_key(f)) {
                return Ok(SheafCheck {
                    is_sheaf: false,
                    covers_checked,
                    failure: Some(CoverFailure {
                        closed: z,
                        cover,
                        defect: CoverDefect::NotGlued { family },
                    }),
                });
            }
        }
    }
    Ok(SheafCheck {
        is_sheaf: true,
        covers_checked,
        failure: None,
    })
}

/// A sheafification together with the unit `P -> P++`.
#[derive(Debug, Clone)]
pub struct Sheafified {
    pub sheaf: Presheaf,
    pub unit: Vec<Vec<Elem>>,
}

impl Sheafified {
    pub fn unit_is_isomorphism(&self) -> bool {
        self.unit
            .iter()
            .enumerate()
            .all(|(z, u)| is_bijection(u, self.sheaf.sections(z).size()))
    }
}

fn componentwise(parts: &[Tables], elems: &[Vec<Elem>]) -> Tables {
    let index: HashMap<&Vec<Elem>, Elem> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elems.len();
    let (nb, nu, nc) = match parts.first() {
        Some(t) => (t.binary.len(), t.unary.len(), t.constants.len()),
        None => (0, 0, 0),
    };
    let binary = (0..nb)
        .map(|k| {
            let mut t = Vec::with_capacity(n * n);
            for a in elems {
                for b in elems {
                    let c: Vec<Elem> = (0..parts.len())
                        .map(|i| parts[i].apply(k, a[i], b[i]))
                        .collect();
                    t.push(index[&c]);
                }
            }
            t
        })
        .collect();
    let unary = (0..nu)
        .map(|k| {
            elems
                .iter()
                .map(|a| {
                    let c: Vec<Elem> = (0..parts.len()).map(|i| parts[i].unary[k][a[i]]).collect();
                    index[&c]
                })
                .collect()
        })
        .collect();
    let constants = (0..nc)
        .map(|k| {
            let c: Vec<Elem> = parts.iter().map(|t| t.constants[k]).collect();
            index[&c]
        })
        .collect();
    Tables {
        size: n,
        binary,
        unary,
        constants,
    }
}

fn terminal_tables(kind: AlgebraKind) -> Tables {
    Algebra::terminal(kind).tables()
}

/// One plus construction over the cover by minimal open neighbourhoods.
fn plus(p: &Presheaf, guards: &Guards) -> Result<Sheafified> {
    let k = p.closed_count();
    let n = p.space.size();
    let mins: Vec<usize> = (0..n).map(|x| p.minimal(x)).collect();
    let mut sections = Vec::with_capacity(k);
    let mut families = Vec::with_capacity(k);
    for z in 0..k {
        let pts: Vec<usize> = members(p.open(z)).collect();
        let cover: Vec<usize> = pts.iter().map(|&x| mins[x]).collect();
        let fams = matching_families(p, &cover, guards.carrier)?;
        let parts: Vec<Tables> = cover.iter().map(|&w| p.sections(w).tables()).collect();
        let t = if pts.is_empty() {
            terminal_tables(p.kind)
        } else {
            componentwise(&parts, &fams)
        };
        let names = fams
            .iter()
            .map(|f| {
                let labels: Vec<String> = f
                    .iter()
                    .zip(&cover)
                    .map(|(&a, &w)| p.sections(w).name(a))
                    .collect();
                format!("({})", labels.join(","))
            })
            .collect();
        sections.push(Algebra::from_tables(p.kind, &t)?.with_names(names)?);
        families.push(fams);
    }
    let unit = (0..k)
        .map(|z| {
            let pts: Vec<usize> = members(p.open(z)).collect();
            p.sections(z)
                .elements()
                .map(|a| {
                    let g: Vec<Elem> = pts.iter().map(|&x| p.res(z, mins[x], a)).collect();
                    families[z]
                        .iter()
                        .position(|f| *f == g)
                        .expect("germs match")
                })
                .collect()
        })
        .collect();
    let sheaf = Presheaf::new(p.space.clone(), sections, |z, w| {
        let pts: Vec<usize> = members(p.open(z)).collect();
        let keep: Vec<usize> = pts
            .iter()
            .enumerate()
            .filter(|(_, &x)| p.open(w) >> x & 1 == 1)
            .map(|(i, _)| i)
            .collect();
        families[z]
            .iter()
            .map(|f| {
                let r: Vec<Elem> = keep.iter().map(|&i| f[i]).collect();
                families[w]
                    .iter()
                    .position(|g| *g == r)
                    .expect("restricted family")
            })
            .collect()
    })?;
    Ok(Sheafified { sheaf, unit })
}

/// `P++`, with sections named by their germs in `P`.
pub fn sheafify(p: &Presheaf, guards: &Guards) -> Result<Sheafified> {
    Guards::check("closed-set lattice", p.closed_count(), guards.lattice)?;
    let once = plus(p, guards)?;
    let twice = plus(&once.sheaf, guards)?;
    let unit: Vec<Vec<Elem>> = (0..p.closed_count())
        .map(|z| compose(&once.unit[z], &twice.unit[z]))
        .collect();
    let mut sheaf = twice.sheaf;
    // at a minimal open the unit is bijective, so germs carry P's names
    let n = p.space.size();
    let min_names: Vec<HashMap<Elem, String>> = (0..n)
        .map(|x| {
            let m = p.minimal(x);
            unit[m]
                .iter()
                .enumerate()
                .map(|(a, &b)| (b, p.sections(m).name(a)))
                .collect()
        })
        .collect();
    for z in 0..p.closed_count() {
        let pts: Vec<usize> = members(p.open(z)).collect();
        let from_p: HashMap<Elem, String> = if is_bijection(&unit[z], sheaf.sections(z).size()) {
            unit[z]
                .iter()
                .enumerate()
                .map(|(a, &b)| (b, p.sections(z).name(a)))
                .collect()
        } else {
            HashMap::new()
        };
        let names: Vec<String> = sheaf
            .sections(z)
            .elements()
            .map(|s| {
                if let Some(name) = from_p.get(&s) {
                    return name.clone();
                }
                if pts.is_empty() {
                    return "*".to_string();
                }
                let labels: Vec<String> = pts
                    .iter()
                    .map(|&x| {
                        let g = sheaf.res(z, sheaf.minimal(x), s);
                        min_names[x]
                            .get(&g)
                            .cloned()
                            .unwrap_or_else(|| g.to_string())
                    })
                    .collect();
                format!("({})", labels.join(","))
            })
            .collect();
        sheaf = sheaf.rename(z, names)?;
    }
    Ok(Sheafified { sheaf, unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::schemes::algebra::FinMonoid;

    fn constant(x: FinTop, a: Algebra) -> Presheaf {
        let k = x.closed_sets().len();
        let n = a.size();
        Presheaf::new(x, vec![a; k], |_, _| (0..n).collect()).unwrap()
    }

    #[test]
    fn constant_presheaf_on_two_points_is_not_a_sheaf() {
        let g = Algebra::Monoid(FinMonoid::cyclic_group(2));
        let p = constant(fixtures::discrete(2), g);
        let c = sheaf_check(&p, &Guards::default()).unwrap();
        assert!(!c.is_sheaf);
        let s = sheafify(&p, &Guards::default()).unwrap();
        assert!(sheaf_check(&s.sheaf, &Guards::default()).unwrap().is_sheaf);
        // global sections are pairs, the empty open is terminal
        assert_eq!(s.sheaf.sections(s.sheaf.global()).size(), 4);
        assert_eq!(s.sheaf.sections(s.sheaf.empty_open()).size(), 1);
    }

    #[test]
    fn sheafifying_a_sheaf_changes_nothing() {
        let g = Algebra::Monoid(FinMonoid::cyclic_group(2));
        let p = constant(fixtures::sierpinski(), g);
        // the empty open still carries a non-terminal algebra
        assert!(!sheaf_check(&p, &Guards::default()).unwrap().is_sheaf);
        let s = sheafify(&p, &Guards::default()).unwrap();
        let again = sheafify(&s.sheaf, &Guards::default()).unwrap();
        assert!(again.unit_is_isomorphism());
    }

    #[test]
    fn functoriality_is_validated() {
        let g = Algebra::Monoid(FinMonoid::cyclic_group(2));
        let x = fixtures::sierpinski();
        let k = x.closed_sets().len();
        let bad = Presheaf::new(
            x,
            vec![g; k],
            |z, w| if z == w { vec![0, 1] } else { vec![0, 0] },
        );
        assert!(bad.is_ok());
        let g = Algebra::Monoid(FinMonoid::cyclic_group(2));
        let x = fixtures::sierpinski();
        let bad = Presheaf::new(x, vec![g; k], |_, _| vec![0, 0]);
        assert!(bad.is_err());
    }
}
