//! Schemes over a schematizable type: the spectrum construction, the scheme
//! `C++(X)` of a space, morphisms, and the adjunction with global sections.

use serde::Serialize;

use crate::error::{Elem, Error, Result};
use crate::guards::Guards;
use crate::localization::localize_at_element;
use crate::semiring::SemiringHom;
use crate::spectrum::{spec, SpectrumResult};
use crate::structure::{compose, is_bijection};
use crate::topology::{closed_set_semiring, members, FinTop, Mask};

use super::algebra::{Algebra, AlgebraKind};
use super::sheaf::{sheaf_check, sheafify, Presheaf, SheafCheck};
use super::types::{alpha1, alpha1_map, Alpha1, SchematizableType};

/// First preimage of every element under a surjection onto `0..m`.
fn sections_of(pi: &[Elem], m: usize) -> Result<Vec<Elem>> {
    let mut out = vec![usize::MAX; m];
    for (x, &y) in pi.iter().enumerate().rev() {
        out[y] = x;
    }
    if out.contains(&usize::MAX) {
        return Err(Error::Precondition("projection is not surjective".into()));
    }
    Ok(out)
}

/// A sheaf of algebras with the comparison `beta : alpha1 O -> C++`.
///
/// `beta` is determined by its components at minimal open neighbourhoods:
/// `local_beta[x]` sends each element of `alpha1(O(U_x))` to a closed
/// subset of `U_x`.
#[derive(Debug, Clone)]
pub struct AScheme {
    pub stype: SchematizableType,
    pub sheaf: Presheaf,
    pub local_alpha: Vec<Alpha1>,
    pub local_beta: Vec<Vec<Mask>>,
}

/// The individual conditions checked by [`AScheme::check`].
#[derive(Debug, Clone, Serialize)]
pub struct SchemeCheck {
    pub sheaf: SheafCheck,
    /// Every `alpha1(O(U_x))` is idealic with idempotent multiplication.
    pub local_alpha_idealic: bool,
    /// Every local `beta` is a semiring homomorphism into `C(U_x)`.
    pub beta_homomorphism: bool,
    /// Local components agree on smaller neighbourhoods.
    pub beta_natural: bool,
    /// `beta(alpha2(a))` is the set of points where `a` is not invertible.
    pub beta_is_support: bool,
    /// `beta(alpha2(a)) <= W` implies `a` is invertible over the open of `W`.
    pub reflects_localization: bool,
}

impl SchemeCheck {
    pub fn is_scheme(&self) -> bool {
        self.sheaf.is_sheaf
            && self.local_alpha_idealic
            && self.beta_homomorphism
            && self.beta_natural
            && self.beta_is_support
            && self.reflects_localization
    }
}

impl AScheme {
    pub fn space(&self) -> &FinTop {
        self.sheaf.space()
    }

    pub fn global_sections(&self) -> &Algebra {
        self.sheaf.sections(self.sheaf.global())
    }

    /// `beta_Z(alpha2(a))` for a section `a` over the open of `z`.
    pub fn beta_alpha2(&self, z: usize, a: Elem) -> Mask {
        members(self.sheaf.open(z))
            .map(|x| {
                let m = self.sheaf.minimal(x);
                let la = &self.local_alpha[x];
                self.local_beta[x][la.alpha2(self.sheaf.res(z, m, a))]
            })
            .fold(0, |acc, c| acc | c)
    }

    /// `Gamma(beta) : alpha1(Gamma) -> C(X)`, extended from `alpha2` images
    /// to sums.
    pub fn global_beta(&self) -> Result<(Alpha1, Vec<Mask>)> {
        let g = self.sheaf.global();
        let gamma = alpha1(self.global_sections())?;
        let s = gamma.semiring();
        let full = self.space().full();
        let map = s
            .elements()
            .map(|b| {
                self.global_sections()
                    .elements()
                    .filter(|&a| s.leq(gamma.alpha2(a), b))
                    .fold(full, |acc, a| acc & self.beta_alpha2(g, a))
            })
            .collect();
        Ok((gamma, map))
    }

    pub fn check(&self, guards: &Guards) -> Result<SchemeCheck> {
        let sheaf = sheaf_check(&self.sheaf, guards)?;
        let p = &self.sheaf;
        let x = self.space();
        let n = x.size();
        let local_alpha_idealic = self
            .local_alpha
            .iter()
            .all(|a| a.semiring().is_idealic() && a.semiring().is_idempotent_mult());
        let mut beta_homomorphism = true;
        for pt in 0..n {
            let u = p.open(p.minimal(pt));
            let s = self.local_alpha[pt].semiring();
            let b = &self.local_beta[pt];
            let closed_in_u = |c: Mask| c & !u == 0 && x.closure(c) & u == c;
            beta_homomorphism &= b.len() == s.size()
                && b.iter().all(|&c| closed_in_u(c))
                && b[s.zero()] == u
                && b[s.one()] == 0
                && s.elements().all(|i| {
                    s.elements()
                        .all(|j| b[s.add(i, j)] == b[i] & b[j] && b[s.mul(i, j)] == b[i] | b[j])
                });
        }
        let mut beta_natural = true;
        for pt in 0..n {
            let mx = p.minimal(pt);
            for y in members(p.open(mx)) {
                let my = p.minimal(y);
                let uy = p.open(my);
                for a in p.sections(mx).elements() {
                    let here = self.local_beta[pt][self.local_alpha[pt].alpha2(a)];
                    let there = self.local_beta[y][self.local_alpha[y].alpha2(p.res(mx, my, a))];
                    beta_natural &= here & uy == there;
                }
            }
        }
        let mut beta_is_support = true;
        let mut reflects_localization = true;
        for z in 0..p.closed_count() {
            for a in p.sections(z).elements() {
                let b = self.beta_alpha2(z, a);
                beta_is_support &= b == p.support(z, a);
                for w in 0..p.closed_count() {
                    if p.restriction(z, w).is_none() {
                        continue;
                    }
                    if b & !p.closed(w) == 0 {
                        reflects_localization &= p.sections(w).is_unit(p.res(z, w, a));
                    }
                }
            }
        }
        Ok(SchemeCheck {
            sheaf,
            local_alpha_idealic,
            beta_homomorphism,
            beta_natural,
            beta_is_support,
            reflects_localization,
        })
    }

    pub fn to_json(&self) -> SchemeJson {
        let x = self.space();
        let p = &self.sheaf;
        SchemeJson {
            kind: self.stype.kind,
            points: x.points().to_vec(),
            sections: (0..p.closed_count())
                .rev()
                .map(|z| SectionJson {
                    open: x.set_label(p.open(z)),
                    elements: p.sections(z).names(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionJson {
    pub open: String,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeJson {
    pub kind: AlgebraKind,
    pub points: Vec<String>,
    pub sections: Vec<SectionJson>,
}

/// `Spec(A)` for an algebra of a schematizable type.
#[derive(Debug, Clone)]
pub struct SpecScheme {
    pub algebra: Algebra,
    pub alpha: Alpha1,
    pub spectrum: SpectrumResult,
    /// `S(z) = {x : V(alpha2 x) is inside closed[z]}`.
    pub mult_systems: Vec<Vec<Elem>>,
    /// The presheaf `z -> A_{S(z)}` before sheafification.
    pub presheaf: Presheaf,
    pub scheme: AScheme,
    /// `A -> O(z)` for every closed set.
    pub from_algebra: Vec<Vec<Elem>>,
}

impl SpecScheme {
    pub fn space(&self) -> &FinTop {
        self.scheme.space()
    }

    pub fn sheaf(&self) -> &Presheaf {
        &self.scheme.sheaf
    }

    /// `epsilon : A -> Gamma(Spec A)`.
    pub fn epsilon(&self) -> &[Elem] {
        &self.from_algebra[self.sheaf().global()]
    }

    pub fn epsilon_is_isomorphism(&self) -> bool {
        let g = self.scheme.global_sections();
        is_bijection(self.epsilon(), g.size()) && self.algebra.is_hom_to(g, self.epsilon())
    }
}

pub fn spec_scheme(stype: SchematizableType, a: &Algebra, guards: &Guards) -> Result<SpecScheme> {
    let alpha = stype.alpha1(a)?;
    let spectrum = spec(alpha.semiring())?;
    let x = spectrum.space.clone();
    Guards::check("closed-set lattice", x.closed_sets().len(), guards.lattice)?;
    let closed = x.closed_sets().to_vec();
    let mult_systems: Vec<Vec<Elem>> = closed
        .iter()
        .map(|&c| {
            a.elements()
                .filter(|&e| spectrum.v(alpha.alpha2(e)) & !c == 0)
                .collect()
        })
        .collect();
    let locs: Vec<(Algebra, Vec<Elem>)> = mult_systems
        .iter()
        .map(|s| a.localize(s))
        .collect::<Result<_>>()?;
    let reps: Vec<Vec<Elem>> = locs
        .iter()
        .map(|(l, pi)| sections_of(pi, l.size()))
        .collect::<Result<_>>()?;
    let presheaf = Presheaf::new(
        x.clone(),
        locs.iter().map(|(l, _)| l.clone()).collect(),
        |z, w| reps[z].iter().map(|&r| locs[w].1[r]).collect(),
    )?;
    let sh = sheafify(&presheaf, guards)?;
    let from_algebra: Vec<Vec<Elem>> = (0..closed.len())
        .map(|z| compose(&locs[z].1, &sh.unit[z]))
        .collect();
    let sheaf = sh.sheaf;
    let n = x.size();
    let mut local_alpha = Vec::with_capacity(n);
    let mut local_beta = Vec::with_capacity(n);
    for pt in 0..n {
        let m = sheaf.minimal(pt);
        let u = sheaf.open(m);
        let la = alpha1(sheaf.sections(m))?;
        let along = alpha1_map(&alpha, &la, &from_algebra[m])?;
        let mut beta = vec![usize::MAX as Mask; la.semiring().size()];
        for (c, &b) in along.iter().enumerate() {
            let v = spectrum.v(c) & u;
            if beta[b] == usize::MAX as Mask {
                beta[b] = v;
            } else if beta[b] != v {
                return Err(Error::Precondition(
                    "alpha1 of a localization is not a localization".into(),
                ));
            }
        }
        if beta.contains(&(usize::MAX as Mask)) {
            return Err(Error::Precondition(
                "alpha1 of a localization map is not onto".into(),
            ));
        }
        local_alpha.push(la);
        local_beta.push(beta);
    }
    Ok(SpecScheme {
        algebra: a.clone(),
        alpha,
        spectrum,
        mult_systems,
        presheaf,
        scheme: AScheme {
            stype,
            sheaf,
            local_alpha,
            local_beta,
        },
        from_algebra,
    })
}

/// `C++(X)`: sections over the open of `z` are `C(X)` localized at `z`,
/// which is the semiring of closed subsets of that open. `beta` is the
/// identity.
pub fn tau_scheme(x: &FinTop, guards: &Guards) -> Result<AScheme> {
    Guards::check("closed-set lattice", x.closed_sets().len(), guards.lattice)?;
    let c = closed_set_semiring(x);
    let locs = (0..c.size())
        .map(|z| localize_at_element(&c, z))
        .collect::<Result<Vec<_>>>()?;
    let reps: Vec<Vec<Elem>> = locs
        .iter()
        .map(|l| sections_of(&l.result.pi, l.semiring().size()))
        .collect::<Result<_>>()?;
    let sheaf = Presheaf::new(
        x.clone(),
        locs.iter()
            .map(|l| Algebra::Semiring(l.semiring().clone()))
            .collect(),
        |z, w| reps[z].iter().map(|&r| locs[w].project(r)).collect(),
    )?;
    let closed = x.closed_sets();
    let mut local_alpha = Vec::new();
    let mut local_beta = Vec::new();
    for pt in 0..x.size() {
        let m = sheaf.minimal(pt);
        let u = sheaf.open(m);
        let la = alpha1(sheaf.sections(m))?;
        let pre_reps = sections_of(&la.collapse.pi, la.semiring().size())?;
        let beta = pre_reps.iter().map(|&b| closed[reps[m][b]] & u).collect();
        local_alpha.push(la);
        local_beta.push(beta);
    }
    Ok(AScheme {
        stype: SchematizableType::semiring(),
        sheaf,
        local_alpha,
        local_beta,
    })
}

/// A morphism of schemes `X -> Y`: a continuous map and, for every closed
/// set `z` of `Y`, a homomorphism `O_Y(z) -> O_X(f^-1 z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeMorphism {
    pub points: Vec<usize>,
    pub sharp: Vec<Vec<Elem>>,
}

fn preimage_index(x: &Presheaf, points: &[usize], closed_y: Mask) -> usize {
    x.index_of_closed(x.space().preimage(points, closed_y))
}

impl SchemeMorphism {
    pub fn identity(x: &AScheme) -> Self {
        let p = &x.sheaf;
        SchemeMorphism {
            points: (0..x.space().size()).collect(),
            sharp: (0..p.closed_count())
                .map(|z| p.sections(z).elements().collect())
                .collect(),
        }
    }

    /// `next . self`.
    pub fn then(&self, next: &SchemeMorphism, middle: &AScheme) -> SchemeMorphism {
        let points = self.points.iter().map(|&y| next.points[y]).collect();
        let sharp = next
            .sharp
            .iter()
            .enumerate()
            .map(|(z, g)| {
                let w = middle.space().closed_sets()[z];
                let yz = preimage_index(&middle.sheaf, &next.points, w);
                compose(g, &self.sharp[yz])
            })
            .collect();
        SchemeMorphism { points, sharp }
    }

    /// Continuity, homomorphisms, naturality and the `beta` compatibility
    /// `supp(f#(a)) = f^-1(supp(a))`.
    pub fn is_valid(&self, x: &AScheme, y: &AScheme) -> bool {
        if !x.space().is_continuous(y.space(), &self.points) {
            return false;
        }
        let (px, py) = (&x.sheaf, &y.sheaf);
        let pre: Vec<usize> = (0..py.closed_count())
            .map(|z| preimage_index(px, &self.points, py.closed(z)))
            .collect();
        for z in 0..py.closed_count() {
            let f = &self.sharp[z];
            if !py.sections(z).is_hom_to(px.sections(pre[z]), f) {
                return false;
            }
            for w in 0..py.closed_count() {
                let Some(r) = py.restriction(z, w) else {
                    continue;
                };
                let rx = px
                    .restriction(pre[z], pre[w])
                    .expect("preimage preserves order");
                if compose(f, rx) != compose(r, &self.sharp[w]) {
                    return false;
                }
            }
            for c in py.sections(z).elements() {
                let lhs = px.support(pre[z], f[c]);
                let rhs = x.space().preimage(&self.points, py.support(z, c));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_isomorphism(&self, x: &AScheme, y: &AScheme) -> bool {
        x.space().is_homeomorphism(y.space(), &self.points)
            && self.sharp.iter().enumerate().all(|(z, f)| {
                let pre = preimage_index(&x.sheaf, &self.points, y.sheaf.closed(z));
                is_bijection(f, x.sheaf.sections(pre).size())
            })
    }
}

/// Build the sharp maps into `X` from a map on `target.algebra` lifted to
/// the minimal neighbourhoods of `X`: `lift(x, b)` is the germ at `x` of
/// the image of `b`.
fn induced_sharp(
    x: &AScheme,
    target: &SpecScheme,
    points: &[usize],
    lift: impl Fn(usize, Elem) -> Elem,
) -> Result<Vec<Vec<Elem>>> {
    let py = target.sheaf();
    let px = &x.sheaf;
    let b = &target.algebra;
    // representatives in B of each germ of Y
    let fibres: Vec<Vec<Vec<Elem>>> = (0..target.space().size())
        .map(|y| {
            let m = py.minimal(y);
            let mut f = vec![Vec::new(); py.sections(m).size()];
            for e in b.elements() {
                f[target.from_algebra[m][e]].push(e);
            }
            f
        })
        .collect();
    let mut out = Vec::with_capacity(py.closed_count());
    for z in 0..py.closed_count() {
        let pre = preimage_index(px, points, py.closed(z));
        let ys: Vec<usize> = members(py.open(z)).collect();
        let mut map = Vec::with_capacity(py.sections(z).size());
        for c in py.sections(z).elements() {
            let germs_y = py.germs(z, c);
            let mut germs_x = Vec::new();
            for xp in members(px.open(pre)) {
                let y = points[xp];
                let i = ys
                    .iter()
                    .position(|&v| v == y)
                    .expect("image lies in the open");
                let reps = &fibres[y][germs_y[i]];
                let d = lift(xp, reps[0]);
                if reps.iter().any(|&r| lift(xp, r) != d) {
                    return Err(Error::Precondition(
                        "restriction does not factor through the localization".into(),
                    ));
                }
                germs_x.push(d);
            }
            let s = px.section_from_germs(pre, &germs_x).ok_or_else(|| {
                Error::Precondition("germs of the induced section do not glue".into())
            })?;
            map.push(s);
        }
        out.push(map);
    }
    Ok(out)
}

/// `Spec(phi) : Spec A -> Spec B` for `phi : B -> A`.
pub fn spec_morphism(
    phi: &[Elem],
    spec_a: &SpecScheme,
    spec_b: &SpecScheme,
) -> Result<SchemeMorphism> {
    if !spec_b.algebra.is_hom_to(&spec_a.algebra, phi) {
        return Err(Error::Precondition("not a homomorphism".into()));
    }
    let a1 = alpha1_map(&spec_b.alpha, &spec_a.alpha, phi)?;
    let hom = SemiringHom::new(
        spec_b.alpha.semiring().clone(),
        spec_a.alpha.semiring().clone(),
        a1,
    )?;
    let points = spec_a
        .spectrum
        .primes
        .iter()
        .map(|&p| {
            spec_b
                .spectrum
                .point_of(hom.inverse_image(p))
                .ok_or_else(|| Error::Precondition("inverse image of a prime is not prime".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let px = spec_a.sheaf();
    let sharp = induced_sharp(&spec_a.scheme, spec_b, &points, |x, b| {
        spec_a.from_algebra[px.minimal(x)][phi[b]]
    })?;
    Ok(SchemeMorphism { points, sharp })
}

/// The unit `eta : X -> Spec Gamma(X)` of a scheme.
#[derive(Debug, Clone)]
pub struct Eta {
    pub target: SpecScheme,
    pub morphism: SchemeMorphism,
}

pub fn eta(x: &AScheme, guards: &Guards) -> Result<Eta> {
    let target = spec_scheme(x.stype, x.global_sections(), guards)?;
    let (gamma, gb) = x.global_beta()?;
    let s = gamma.semiring();
    let points = (0..x.space().size())
        .map(|pt| {
            let p = s.sup_where(|b| gb[b] >> pt & 1 == 1);
            target
                .spectrum
                .point_of(p)
                .ok_or_else(|| Error::Precondition(format!("point {pt} gives no prime")))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = &x.sheaf;
    let g = p.global();
    let sharp = induced_sharp(x, &target, &points, |pt, a| p.res(g, p.minimal(pt), a))?;
    Ok(Eta {
        target,
        morphism: SchemeMorphism { points, sharp },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjunctionReport {
    pub epsilon_iso: bool,
    pub eta_valid: bool,
    pub eta_iso: bool,
    /// `Gamma(eta_X) . epsilon_Gamma(X) = id`.
    pub triangle_sections: bool,
    /// `Spec(epsilon_A) . eta_Spec(A) = id`.
    pub triangle_spec: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.epsilon_iso
            && self.eta_valid
            && self.eta_iso
            && self.triangle_sections
            && self.triangle_spec
    }
}

fn triangle_sections(e: &Eta) -> bool {
    let eps = e.target.epsilon();
    let back = &e.morphism.sharp[e.target.sheaf().global()];
    compose(eps, back).iter().enumerate().all(|(i, &j)| i == j)
}

/// Unit and counit checks for `Spec(A)`.
pub fn adjunction_check(
    stype: SchematizableType,
    a: &Algebra,
    guards: &Guards,
) -> Result<AdjunctionReport> {
    let sa = spec_scheme(stype, a, guards)?;
    let x = &sa.scheme;
    let e = eta(x, guards)?;
    let eps = sa.epsilon().to_vec();
    let back = spec_morphism(&eps, &e.target, &sa)?;
    let round = e.morphism.then(&back, &e.target.scheme);
    Ok(AdjunctionReport {
        epsilon_iso: sa.epsilon_is_isomorphism(),
        eta_valid: e.morphism.is_valid(x, &e.target.scheme),
        eta_iso: e.morphism.is_isomorphism(x, &e.target.scheme),
        triangle_sections: triangle_sections(&e),
        triangle_spec: round == SchemeMorphism::identity(x),
    })
}

/// Unit checks for an arbitrary scheme `X`.
#[derive(Debug, Clone, Serialize)]
pub struct SchemeAdjunctionReport {
    pub eta_valid: bool,
    pub eta_iso: bool,
    pub triangle_sections: bool,
}

pub fn adjunction_check_scheme(x: &AScheme, guards: &Guards) -> Result<SchemeAdjunctionReport> {
    let e = eta(x, guards)?;
    Ok(SchemeAdjunctionReport {
        eta_valid: e.morphism.is_valid(x, &e.target.scheme),
        eta_iso: e.morphism.is_isomorphism(x, &e.target.scheme),
        triangle_sections: triangle_sections(&e),
    })
}

/// All scheme morphisms `X -> Y` lying over a given continuous map.
pub fn morphisms_over(
    x: &AScheme,
    y: &AScheme,
    points: &[usize],
    limit: usize,
) -> Result<Vec<SchemeMorphism>> {
    if !x.space().is_continuous(y.space(), points) {
        return Ok(vec![]);
    }
    let (px, py) = (&x.sheaf, &y.sheaf);
    let k = py.closed_count();
    let pre: Vec<usize> = (0..k)
        .map(|z| preimage_index(px, points, py.closed(z)))
        .collect();
    let candidates: Vec<Vec<Vec<Elem>>> = (0..k)
        .map(|z| {
            py.sections(z)
                .homomorphisms_to(px.sections(pre[z]))
                .into_iter()
                .filter(|f| {
                    py.sections(z).elements().all(|c| {
                        px.support(pre[z], f[c]) == x.space().preimage(points, py.support(z, c))
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<Vec<Elem>> = Vec::with_capacity(k);
    #[allow(clippy::too_many_arguments)]
    fn go(
        z: usize,
        k: usize,
        cands: &[Vec<Vec<Elem>>],
        pre: &[usize],
        px: &Presheaf,
        py: &Presheaf,
        cur: &mut Vec<Vec<Elem>>,
        out: &mut Vec<Vec<Vec<Elem>>>,
        limit: usize,
    ) -> Result<()> {
        if z == k {
            if out.len() >= limit {
                return Err(Error::Guard {
                    what: "scheme morphisms",
                    needed: limit + 1,
                    limit,
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for f in &cands[z] {
            let natural = (0..z).all(|v| {
                let mut ok = true;
                if let Some(r) = py.restriction(v, z) {
                    let rx = px.restriction(pre[v], pre[z]).expect("order preserved");
                    ok &= compose(&cur[v], rx) == compose(r, f);
                }
                if let Some(r) = py.restriction(z, v) {
                    let rx = px.restriction(pre[z], pre[v]).expect("order preserved");
                    ok &= compose(f, rx) == compose(r, &cur[v]);
                }
                ok
            });
            if natural {
                cur.push(f.clone());
                go(z + 1, k, cands, pre, px, py, cur, out, limit)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut found = Vec::new();
    go(0, k, &candidates, &pre, px, py, &mut cur, &mut found, limit)?;
    for sharp in found {
        out.push(SchemeMorphism {
            points: points.to_vec(),
            sharp,
        });
    }
    Ok(out)
}

/// Matching families over a cover `s = s_1 + ... + s_k` of an algebra and
/// how many of them glue uniquely in `A_s`.
#[derive(Debug, Clone, Serialize)]
pub struct PatchReport {
    pub families: usize,
    pub glued_uniquely: usize,
    pub holds: bool,
}

/// Check the patching condition for a cover of `s` by the `parts`.
pub fn patching_check(a: &Algebra, s: Elem, parts: &[Elem]) -> Result<PatchReport> {
    let al = alpha1(a)?;
    let r = al.semiring();
    let cover = r.sup(&parts.iter().map(|&p| al.alpha2(p)).collect::<Vec<_>>());
    if cover != al.alpha2(s) {
        return Err(Error::Precondition("the parts do not cover s".into()));
    }
    let (ls, pis) = a.localize(&[s])?;
    let locs: Vec<(Algebra, Vec<Elem>)> = parts
        .iter()
        .map(|&p| a.localize(&[p]))
        .collect::<Result<_>>()?;
    let reps: Vec<Vec<Elem>> = locs
        .iter()
        .map(|(l, pi)| sections_of(pi, l.size()))
        .collect::<Result<_>>()?;
    let k = parts.len();
    let mut overlaps = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            overlaps[i][j] = Some(a.localize(&[a.mul(parts[i], parts[j])])?.1);
        }
    }
    // compatible tuples of classes
    let mut families = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(
        i: usize,
        locs: &[(Algebra, Vec<Elem>)],
        reps: &[Vec<Elem>],
        overlaps: &[Vec<Option<Vec<Elem>>>],
        cur: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if i == locs.len() {
            out.push(cur.clone());
            return;
        }
        for c in locs[i].0.elements() {
            let ok = (0..i).all(|j| {
                let o = overlaps[j][i].as_ref().unwrap();
                o[reps[j][cur[j]]] == o[reps[i][c]]
            });
            if ok {
                cur.push(c);
                go(i + 1, locs, reps, overlaps, cur, out);
                cur.pop();
            }
        }
    }
    go(0, &locs, &reps, &overlaps, &mut cur, &mut families);
    let reps_s = sections_of(&pis, ls.size())?;
    let restrict = |c: Elem| -> Vec<Elem> { locs.iter().map(|(_, pi)| pi[reps_s[c]]).collect() };
    let images: Vec<Vec<Elem>> = ls.elements().map(restrict).collect();
    let glued_uniquely = families
        .iter()
        .filter(|f| images.iter().filter(|g| g == f).count() == 1)
        .count();
    Ok(PatchReport {
        families: families.len(),
        glued_uniquely,
        holds: glued_uniquely == families.len() && images.iter().all(|g| families.contains(g)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::schemes::algebra::{FinMonoid, FinRing};

    fn g() -> Guards {
        Guards::default()
    }

    fn ring(n: usize) -> Algebra {
        Algebra::Ring(FinRing::zmod(n))
    }

    #[test]
    fn z12_has_two_points_with_stalks_z4_and_z3() {
        let s = spec_scheme(SchematizableType::ring(), &ring(12), &g()).unwrap();
        assert_eq!(s.space().size(), 2);
        let p = s.sheaf();
        let mut stalks: Vec<usize> = (0..2).map(|x| p.sections(p.minimal(x)).size()).collect();
        stalks.sort_unstable();
        assert_eq!(stalks, [3, 4]);
        for x in 0..2 {
            let st = p.sections(p.minimal(x));
            let n = st.size();
            assert!(st.is_isomorphic(&ring(n)));
        }
        assert!(s.epsilon_is_isomorphism());
        assert!(s.scheme.check(&g()).unwrap().is_scheme());
    }

    #[test]
    fn inverting_the_two_point_stalk() {
        let s = spec_scheme(SchematizableType::ring(), &ring(12), &g()).unwrap();
        // the multiplicative system at the point (2) is the complement of (2)
        // together with 3 and 9, whose radical is not (2)
        let x = s.spectrum.primes.iter().position(|&p| {
            s.alpha.semiring().name(p) == "(2)" || s.alpha.semiring().name(p) == "(4)"
        });
        let x = x.unwrap();
        let m = s.sheaf().minimal(x);
        let mut sys = s.mult_systems[m].clone();
        sys.sort_unstable();
        assert_eq!(sys, [1, 3, 5, 7, 9, 11]);
    }

    #[test]
    fn truncated_monoid_generic_stalk_is_trivial() {
        let t = Algebra::Monoid(fixtures::truncated_monoid());
        let s = spec_scheme(SchematizableType::monoid(), &t, &g()).unwrap();
        assert_eq!(s.space().size(), 2);
        let p = s.sheaf();
        let sizes: Vec<usize> = (0..p.closed_count())
            .map(|z| p.sections(z).size())
            .collect();
        // empty open, open generic point, whole space
        assert_eq!(sizes, [1, 1, 3]);
        assert!(s.epsilon_is_isomorphism());
        assert!(s.scheme.check(&g()).unwrap().is_scheme());
    }

    #[test]
    fn group_presheaf_needs_sheafification() {
        let z2 = Algebra::Monoid(FinMonoid::cyclic_group(2));
        let s = spec_scheme(SchematizableType::monoid(), &z2, &g()).unwrap();
        assert!(!sheaf_check(&s.presheaf, &g()).unwrap().is_sheaf);
        assert!(sheaf_check(s.sheaf(), &g()).unwrap().is_sheaf);
        assert_eq!(s.sheaf().sections(s.sheaf().empty_open()).size(), 1);
        assert!(s.epsilon_is_isomorphism());
    }

    #[test]
    fn adjunction_on_the_corpus() {
        let mut algebras: Vec<(SchematizableType, Algebra)> = vec![];
        for (_, r) in fixtures::ring_corpus() {
            algebras.push((SchematizableType::ring(), Algebra::Ring(r)));
        }
        for (_, m) in fixtures::monoid_corpus() {
            algebras.push((SchematizableType::monoid(), Algebra::Monoid(m)));
        }
        for (_, r) in fixtures::corpus() {
            algebras.push((SchematizableType::semiring(), Algebra::Semiring(r)));
        }
        for (t, a) in algebras {
            let r = adjunction_check(t, &a, &g()).unwrap();
            assert!(r.holds(), "{:?} {:?}: {r:?}", t.kind, a.names());
        }
    }

    #[test]
    fn tau_scheme_is_a_scheme_with_iso_unit() {
        for x in [
            fixtures::sierpinski(),
            fixtures::discrete(2),
            fixtures::point(),
        ] {
            let t = tau_scheme(&x, &g()).unwrap();
            assert!(t.check(&g()).unwrap().is_scheme());
            let r = adjunction_check_scheme(&t, &g()).unwrap();
            assert!(r.eta_valid && r.eta_iso && r.triangle_sections, "{r:?}");
        }
    }

    #[test]
    fn morphisms_into_tau_match_continuous_maps() {
        let x = spec_scheme(
            SchematizableType::semiring(),
            &Algebra::Semiring(fixtures::c3()),
            &g(),
        )
        .unwrap();
        for y in [
            fixtures::sierpinski(),
            fixtures::discrete(2),
            fixtures::point(),
        ] {
            let t = tau_scheme(&y, &g()).unwrap();
            let n = x.space().size();
            let m = y.size();
            let mut maps = vec![vec![]];
            for _ in 0..n {
                maps = maps
                    .into_iter()
                    .flat_map(|p: Vec<usize>| (0..m).map(move |v| [p.clone(), vec![v]].concat()))
                    .collect();
            }
            for f in maps {
                let count = morphisms_over(&x.scheme, &t, &f, 64).unwrap().len();
                let continuous = x.space().is_continuous(&y, &f);
                assert_eq!(count, usize::from(continuous), "{f:?}");
            }
        }
    }

    #[test]
    fn spec_is_functorial() {
        let (z12, z6, z2) = (ring(12), ring(6), ring(2));
        let s12 = spec_scheme(SchematizableType::ring(), &z12, &g()).unwrap();
        let s6 = spec_scheme(SchematizableType::ring(), &z6, &g()).unwrap();
        let s2 = spec_scheme(SchematizableType::ring(), &z2, &g()).unwrap();
        let f: Vec<Elem> = (0..12).map(|x| x % 6).collect();
        let h: Vec<Elem> = (0..6).map(|x| x % 2).collect();
        let hf = compose(&f, &h);
        let sf = spec_morphism(&f, &s6, &s12).unwrap();
        let sh = spec_morphism(&h, &s2, &s6).unwrap();
        let shf = spec_morphism(&hf, &s2, &s12).unwrap();
        assert!(sf.is_valid(&s6.scheme, &s12.scheme));
        assert_eq!(sh.then(&sf, &s6.scheme), shf);
        let id: Vec<Elem> = (0..12).collect();
        assert_eq!(
            spec_morphism(&id, &s12, &s12).unwrap(),
            SchemeMorphism::identity(&s12.scheme)
        );
    }

    #[test]
    fn patching_on_semirings_and_rings() {
        for (_, r) in fixtures::corpus() {
            let a = Algebra::Semiring(r.clone());
            for s in r.elements() {
                for s1 in r.elements() {
                    for s2 in r.elements() {
                        if r.add(s1, s2) == s {
                            assert!(patching_check(&a, s, &[s1, s2]).unwrap().holds);
                        }
                    }
                }
            }
        }
        let z12 = ring(12);
        // 3 and 4 generate the unit ideal
        assert!(patching_check(&z12, 1, &[3, 4]).unwrap().holds);
        assert!(patching_check(&z12, 1, &[2]).is_err());
    }
}
