//! Finite modules over finite semirings and the filter tensor product.
//!
//! A filter on `M x N` is a subset containing `{0} x N` and `M x {0}` that
//! is closed under the balancing rule `(rx, y) in F <=> (x, ry) in F` and,
//! in each coordinate separately, under joins and passage to smaller
//! elements. Filters are stored as `u64` masks over the pairs, pair
//! `(x, y)` at bit `x * |N| + y`.

use serde::Serialize;

use crate::error::{Elem, Error, Law, Result, Verdict, Violation};
use crate::guards::Guards;
use crate::order::FinCim;
use crate::semiring::{FinSemiring, SemiringHom};
use crate::structure::{compose, Tables};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinModule {
    ring: FinSemiring,
    carrier: FinCim,
    /// Row-major `|R| * |M|`.
    action: Vec<Elem>,
}

/// Validate a scalar action `action[r][x]` of `ring` on `carrier`.
pub fn check_module(ring: &FinSemiring, carrier: &FinCim, action: &[Vec<Elem>]) -> Result<Verdict> {
    let (nr, nm) = (ring.size(), carrier.size());
    if action.len() != nr || action.iter().any(|row| row.len() != nm) {
        return Err(Error::Format(format!("action must be {nr} x {nm}")));
    }
    if let Some(bad) = action.iter().flatten().find(|&&x| x >= nm) {
        return Err(Error::Format(format!(
            "action contains out-of-range element {bad}"
        )));
    }
    let act = |r: Elem, x: Elem| action[r][x];
    let z = carrier.bottom();
    for x in 0..nm {
        if act(ring.one(), x) != x {
            return Ok(Err(Violation::new(Law::ActionUnit, [x])));
        }
        if act(ring.zero(), x) != z {
            return Ok(Err(Violation::new(Law::ActionZero, [ring.zero(), x])));
        }
    }
    for r in 0..nr {
        if act(r, z) != z {
            return Ok(Err(Violation::new(Law::ActionZero, [r, z])));
        }
        for x in 0..nm {
            for y in 0..nm {
                if act(r, carrier.join(x, y)) != carrier.join(act(r, x), act(r, y)) {
                    return Ok(Err(Violation::new(Law::ActionAdditive, [r, x, y])));
                }
            }
        }
        for s in 0..nr {
            for x in 0..nm {
                if act(ring.add(r, s), x) != carrier.join(act(r, x), act(s, x)) {
                    return Ok(Err(Violation::new(Law::ActionScalarAdditive, [r, s, x])));
                }
                if act(ring.mul(r, s), x) != act(r, act(s, x)) {
                    return Ok(Err(Violation::new(Law::ActionAssociative, [r, s, x])));
                }
            }
        }
    }
    Ok(Ok(()))
}

impl FinModule {
    pub fn new(ring: FinSemiring, carrier: FinCim, action: Vec<Vec<Elem>>) -> Result<Self> {
        check_module(&ring, &carrier, &action)??;
        Ok(FinModule {
            ring,
            carrier,
            action: action.into_iter().flatten().collect(),
        })
    }

    /// `R` acting on itself by multiplication.
    pub fn regular(ring: &FinSemiring) -> Self {
        FinModule::new(ring.clone(), ring.cim().clone(), ring.mul_table())
            .expect("a semiring is a module over itself")
    }

    /// A complete idempotent monoid as a module over `{0, 1}`.
    pub fn over_f1(carrier: FinCim) -> Self {
        let ring = FinSemiring::chain(2);
        let action = vec![
            vec![carrier.bottom(); carrier.size()],
            carrier.elements().collect(),
        ];
        FinModule::new(ring, carrier, action).expect("every complete monoid is an F1-module")
    }

    /// The one-point module.
    pub fn trivial(ring: &FinSemiring) -> Self {
        FinModule::new(ring.clone(), FinCim::chain(1), vec![vec![0]; ring.size()])
            .expect("one point")
    }

    /// Restriction of scalars along `f: R -> A` of an `A`-module.
    pub fn restrict(f: &SemiringHom, m: &FinModule) -> Result<Self> {
        let action = f
            .source
            .elements()
            .map(|r| m.carrier.elements().map(|x| m.act(f.apply(r), x)).collect())
            .collect();
        FinModule::new(f.source.clone(), m.carrier.clone(), action)
    }

    pub fn ring(&self) -> &FinSemiring {
        &self.ring
    }

    pub fn carrier(&self) -> &FinCim {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.carrier.elements()
    }

    pub fn zero(&self) -> Elem {
        self.carrier.bottom()
    }

    pub fn top(&self) -> Elem {
        self.carrier.top()
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.carrier.join(x, y)
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.carrier.leq(x, y)
    }

    pub fn act(&self, r: Elem, x: Elem) -> Elem {
        self.action[r * self.size() + x]
    }

    pub fn action_table(&self) -> Vec<Vec<Elem>> {
        self.action
            .chunks(self.size().max(1))
            .map(<[Elem]>::to_vec)
            .collect()
    }

    pub fn name(&self, x: Elem) -> String {
        self.carrier.name(x)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        self.carrier = self.carrier.with_names(names)?;
        Ok(self)
    }

    /// `(join; r* for each scalar r; 0 [, 1])`.
    pub fn tables(&self, kind: MapKind) -> Tables {
        let mut constants = vec![self.zero()];
        if kind == MapKind::TopPreserving {
            constants.push(self.top());
        }
        Tables {
            size: self.size(),
            binary: vec![self.carrier.join_table().into_iter().flatten().collect()],
            unary: self
                .ring
                .elements()
                .map(|r| self.elements().map(|x| self.act(r, x)).collect())
                .collect(),
            constants,
        }
    }

    fn same_ring(&self, other: &FinModule) -> Result<()> {
        if self.ring.unnamed() != other.ring.unnamed() {
            return Err(Error::Precondition(
                "modules are over different semirings".into(),
            ));
        }
        Ok(())
    }

    /// All module maps `self -> target` of the given kind.
    pub fn maps_to(&self, target: &FinModule, kind: MapKind) -> Vec<Vec<Elem>> {
        self.tables(kind).homomorphisms(&target.tables(kind))
    }

    pub fn is_map_to(&self, target: &FinModule, f: &[Elem], kind: MapKind) -> bool {
        self.tables(kind).is_hom(&target.tables(kind), f)
    }

    /// A module isomorphism, if one exists.
    pub fn isomorphism_to(&self, target: &FinModule) -> Option<Vec<Elem>> {
        if self.same_ring(target).is_err() {
            return None;
        }
        self.tables(MapKind::TopPreserving)
            .find_isomorphism(&target.tables(MapKind::TopPreserving))
    }

    pub fn is_isomorphic(&self, target: &FinModule) -> bool {
        self.isomorphism_to(target).is_some()
    }
}

/// Which maps count as module homomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    /// Preserve `+`, `0` and the action.
    #[default]
    SupPreserving,
    /// Additionally send top to top.
    TopPreserving,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: FinModule,
    pub target: FinModule,
    pub map: Vec<Elem>,
    pub kind: MapKind,
}

impl ModuleMap {
    pub fn new(
        source: FinModule,
        target: FinModule,
        map: Vec<Elem>,
        kind: MapKind,
    ) -> Result<Self> {
        if !source.is_map_to(&target, &map, kind) {
            return Err(Violation::new(Law::NotHomomorphism, map).into());
        }
        Ok(ModuleMap {
            source,
            target,
            map,
            kind,
        })
    }
}

/// `Hom(M, N)` with pointwise join and action.
#[derive(Debug, Clone)]
pub struct HomModule {
    pub module: FinModule,
    /// `maps[i]` is the map that element `i` stands for.
    pub maps: Vec<Vec<Elem>>,
}

impl HomModule {
    pub fn index_of(&self, f: &[Elem]) -> Option<usize> {
        self.maps.iter().position(|g| g == f)
    }
}

pub fn hom_module(m: &FinModule, n: &FinModule, guards: &Guards) -> Result<HomModule> {
    m.same_ring(n)?;
    let mut maps = m.maps_to(n, MapKind::SupPreserving);
    maps.sort();
    Guards::check("Hom module carrier", maps.len(), guards.carrier)?;
    let k = maps.len();
    let idx = |f: &Vec<Elem>| {
        maps.binary_search(f)
            .expect("closed under pointwise operations")
    };
    let pointwise = |f: &[Elem], g: &[Elem]| -> Vec<Elem> {
        f.iter().zip(g).map(|(&a, &b)| n.join(a, b)).collect()
    };
    let join: Vec<Vec<Elem>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| idx(&pointwise(&maps[i], &maps[j])))
                .collect()
        })
        .collect();
    let zero = idx(&vec![n.zero(); m.size()]);
    let top = (0..k).fold(zero, |acc, i| join[acc][i]);
    let carrier = FinCim::new(join, zero, top)?;
    let action = m
        .ring()
        .elements()
        .map(|r| {
            (0..k)
                .map(|i| idx(&maps[i].iter().map(|&y| n.act(r, y)).collect()))
                .collect()
        })
        .collect();
    let module = FinModule::new(m.ring().clone(), carrier, action)?;
    Ok(HomModule { module, maps })
}

/// The filters of `M x N` and their closure operator.
#[derive(Debug, Clone)]
struct PairSpace {
    m: FinModule,
    n: FinModule,
}

impl PairSpace {
    fn bit(&self, x: Elem, y: Elem) -> u64 {
        1u64 << (x * self.n.size() + y)
    }

    fn pairs(&self, f: u64) -> Vec<(Elem, Elem)> {
        let nn = self.n.size();
        (0..self.m.size() * nn)
            .filter(|i| f >> i & 1 == 1)
            .map(|i| (i / nn, i % nn))
            .collect()
    }

    fn full(&self) -> u64 {
        let k = self.m.size() * self.n.size();
        if k == 64 {
            u64::MAX
        } else {
            (1u64 << k) - 1
        }
    }

    fn closure(&self, seed: u64) -> u64 {
        let (m, n) = (&self.m, &self.n);
        let r = m.ring();
        let mut f = seed;
        for x in m.elements() {
            f |= self.bit(x, n.zero());
        }
        for y in n.elements() {
            f |= self.bit(m.zero(), y);
        }
        loop {
            let before = f;
            for (x, y) in self.pairs(f) {
                for x2 in m.elements().filter(|&x2| m.leq(x2, x)) {
                    f |= self.bit(x2, y);
                }
                for y2 in n.elements().filter(|&y2| n.leq(y2, y)) {
                    f |= self.bit(x, y2);
                }
            }
            for (x1, y1) in self.pairs(f) {
                for (x2, y2) in self.pairs(f) {
                    if y1 == y2 {
                        f |= self.bit(m.join(x1, x2), y1);
                    }
                    if x1 == x2 {
                        f |= self.bit(x1, n.join(y1, y2));
                    }
                }
            }
            for s in r.elements() {
                for x in m.elements() {
                    for y in n.elements() {
                        let (a, b) = (self.bit(m.act(s, x), y), self.bit(x, n.act(s, y)));
                        if f & a != 0 || f & b != 0 {
                            f |= a | b;
                        }
                    }
                }
            }
            if f == before {
                return f;
            }
        }
    }

    fn is_filter(&self, f: u64) -> bool {
        self.closure(f) == f
    }

    /// Filters reachable from single generators by joins, sorted.
    fn filters(&self) -> Vec<u64> {
        let principal: Vec<u64> = self
            .m
            .elements()
            .flat_map(|x| self.n.elements().map(move |y| (x, y)))
            .map(|(x, y)| self.closure(self.bit(x, y)))
            .collect();
        let mut found = vec![self.closure(0)];
        let mut frontier = found.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &f in &frontier {
                for &p in &principal {
                    let j = self.closure(f | p);
                    if !found.contains(&j) {
                        found.push(j);
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        found.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then(a.cmp(b)));
        found
    }

    /// Every subset fixed by the closure, by exhaustive scan.
    fn filters_brute_force(&self) -> Vec<u64> {
        let k = self.m.size() * self.n.size();
        let mut out: Vec<u64> = (0..1u64 << k).filter(|&f| self.is_filter(f)).collect();
        out.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then(a.cmp(b)));
        out
    }
}

/// `M (x)_R N` with its generator map.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub module: FinModule,
    pub left: FinModule,
    pub right: FinModule,
    /// Element `i` of `module` is `filters[i]`.
    pub filters: Vec<u64>,
    /// `generator[x][y]` is `x (x) y`.
    pub generator: Vec<Vec<Elem>>,
}

impl TensorProduct {
    pub fn pairs_of(&self, i: Elem) -> Vec<(Elem, Elem)> {
        PairSpace {
            m: self.left.clone(),
            n: self.right.clone(),
        }
        .pairs(self.filters[i])
    }

    pub fn contains(&self, i: Elem, x: Elem, y: Elem) -> bool {
        self.filters[i] >> (x * self.right.size() + y) & 1 == 1
    }
}

fn tensor_space(m: &FinModule, n: &FinModule, guards: &Guards) -> Result<(PairSpace, Vec<u64>)> {
    m.same_ring(n)?;
    Guards::check(
        "tensor pairs |M||N|",
        m.size() * n.size(),
        guards.tensor_pairs.min(64),
    )?;
    let space = PairSpace {
        m: m.clone(),
        n: n.clone(),
    };
    let filters = space.filters();
    Guards::check("tensor carrier", filters.len(), guards.carrier)?;
    Ok((space, filters))
}

fn filter_lattice(space: &PairSpace, filters: &[u64]) -> Result<FinCim> {
    let idx = |f: u64| {
        filters
            .iter()
            .position(|&g| g == f)
            .expect("closed under joins")
    };
    let k = filters.len();
    let join: Vec<Vec<Elem>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| idx(space.closure(filters[i] | filters[j])))
                .collect()
        })
        .collect();
    FinCim::new(join, idx(space.closure(0)), idx(space.full()))
}

fn generators(space: &PairSpace, filters: &[u64]) -> Vec<Vec<Elem>> {
    space
        .m
        .elements()
        .map(|x| {
            space
                .n
                .elements()
                .map(|y| {
                    let f = space.closure(space.bit(x, y));
                    filters
                        .iter()
                        .position(|&g| g == f)
                        .expect("principal filters listed")
                })
                .collect()
        })
        .collect()
}

pub fn tensor(m: &FinModule, n: &FinModule, guards: &Guards) -> Result<TensorProduct> {
    let (space, filters) = tensor_space(m, n, guards)?;
    let carrier = filter_lattice(&space, &filters)?;
    let idx = |f: u64| {
        filters
            .iter()
            .position(|&g| g == f)
            .expect("closed under action")
    };
    let action = m
        .ring()
        .elements()
        .map(|r| {
            filters
                .iter()
                .map(|&f| {
                    let moved = space
                        .pairs(f)
                        .into_iter()
                        .fold(0u64, |acc, (x, y)| acc | space.bit(m.act(r, x), y));
                    idx(space.closure(moved))
                })
                .collect()
        })
        .collect();
    let module = FinModule::new(m.ring().clone(), carrier, action)?;
    Ok(TensorProduct {
        generator: generators(&space, &filters),
        module,
        left: m.clone(),
        right: n.clone(),
        filters,
    })
}

/// Every filter of `M x N` found by scanning all subsets; `|M||N| <= 16`.
pub fn tensor_filters_brute_force(m: &FinModule, n: &FinModule) -> Result<Vec<u64>> {
    Guards::check("brute-force tensor pairs", m.size() * n.size(), 16)?;
    Ok(PairSpace {
        m: m.clone(),
        n: n.clone(),
    }
    .filters_brute_force())
}

/// `M (x) N -> N (x) M`, swapping coordinates of every filter.
pub fn tensor_swap(mn: &TensorProduct, nm: &TensorProduct) -> Vec<Elem> {
    let (a, b) = (mn.left.size(), mn.right.size());
    mn.filters
        .iter()
        .map(|&f| {
            let mut g = 0u64;
            for x in 0..a {
                for y in 0..b {
                    if f >> (x * b + y) & 1 == 1 {
                        g |= 1 << (y * a + x);
                    }
                }
            }
            nm.filters
                .iter()
                .position(|&h| h == g)
                .expect("swap preserves filters")
        })
        .collect()
}

/// `f (x) N: M (x) N -> M' (x) N`.
pub fn tensor_map(f: &ModuleMap, mn: &TensorProduct, m2n: &TensorProduct) -> Vec<Elem> {
    let space = PairSpace {
        m: m2n.left.clone(),
        n: m2n.right.clone(),
    };
    (0..mn.filters.len())
        .map(|i| {
            let moved = mn
                .pairs_of(i)
                .into_iter()
                .fold(0u64, |acc, (x, y)| acc | space.bit(f.map[x], y));
            let g = space.closure(moved);
            m2n.filters
                .iter()
                .position(|&h| h == g)
                .expect("image is a filter")
        })
        .collect()
}

/// The bijection `Hom(M (x) N, P) <-> Hom(M, Hom(N, P))`.
#[derive(Debug, Clone, Serialize)]
pub struct AdjunctionWitness {
    pub left_size: usize,
    pub right_size: usize,
    /// `phi[g]` indexes `right_maps` for each `g` in `left_maps`.
    pub phi: Vec<usize>,
    /// `psi[h]` indexes `left_maps`.
    pub psi: Vec<usize>,
    pub bijective: bool,
    #[serde(skip)]
    pub left_maps: Vec<Vec<Elem>>,
    #[serde(skip)]
    pub right_maps: Vec<Vec<Elem>>,
}

pub fn tensor_hom_adjunction_check(
    m: &FinModule,
    n: &FinModule,
    p: &FinModule,
    guards: &Guards,
) -> Result<AdjunctionWitness> {
    let t = tensor(m, n, guards)?;
    let hom_np = hom_module(n, p, guards)?;
    let mut left_maps = t.module.maps_to(p, MapKind::SupPreserving);
    left_maps.sort();
    let mut right_maps = m.maps_to(&hom_np.module, MapKind::SupPreserving);
    right_maps.sort();
    let phi_of = |g: &[Elem]| -> Option<usize> {
        let h: Vec<Elem> = m
            .elements()
            .map(|x| {
                let curried: Vec<Elem> = n.elements().map(|y| g[t.generator[x][y]]).collect();
                hom_np.index_of(&curried)
            })
            .collect::<Option<_>>()?;
        right_maps.binary_search(&h).ok()
    };
    let psi_of = |h: &[Elem]| -> Option<usize> {
        let g: Vec<Elem> = (0..t.filters.len())
            .map(|i| {
                let vals: Vec<Elem> = t
                    .pairs_of(i)
                    .into_iter()
                    .map(|(x, y)| hom_np.maps[h[x]][y])
                    .collect();
                p.carrier().sup(&vals)
            })
            .collect();
        left_maps.binary_search(&g).ok()
    };
    let phi: Vec<usize> = left_maps
        .iter()
        .map(|g| phi_of(g))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("curried map is not a module map".into()))?;
    let psi: Vec<usize> = right_maps
        .iter()
        .map(|h| psi_of(h))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("uncurried map is not a module map".into()))?;
    let bijective = left_maps.len() == right_maps.len()
        && (0..phi.len()).all(|g| psi[phi[g]] == g)
        && (0..psi.len()).all(|h| phi[psi[h]] == h);
    Ok(AdjunctionWitness {
        left_size: left_maps.len(),
        right_size: right_maps.len(),
        phi,
        psi,
        bijective,
        left_maps,
        right_maps,
    })
}

/// Naturality in `M`: for `f: M -> M'` and `h: M' (x) N -> P`,
/// `phi_M(h . (f (x) N)) = phi_{M'}(h) . f`.
pub fn adjunction_natural_in_m(
    f: &ModuleMap,
    n: &FinModule,
    p: &FinModule,
    guards: &Guards,
) -> Result<bool> {
    let (m, m2) = (&f.source, &f.target);
    let w1 = tensor_hom_adjunction_check(m, n, p, guards)?;
    let w2 = tensor_hom_adjunction_check(m2, n, p, guards)?;
    let mn = tensor(m, n, guards)?;
    let m2n = tensor(m2, n, guards)?;
    let fn_map = tensor_map(f, &mn, &m2n);
    Ok((0..w2.left_maps.len()).all(|hi| {
        let h = &w2.left_maps[hi];
        let pulled = compose(&fn_map, h);
        let Some(gi) = w1.left_maps.iter().position(|g| *g == pulled) else {
            return false;
        };
        let lhs = &w1.right_maps[w1.phi[gi]];
        let rhs = compose(&f.map, &w2.right_maps[w2.phi[hi]]);
        *lhs == rhs
    }))
}

/// `R^k` with componentwise operations; tuple `(r_0, .., r_{k-1})` is
/// encoded in mixed radix with `r_0` most significant.
#[derive(Debug, Clone)]
pub struct FreeModule {
    pub module: FinModule,
    /// The basis vectors `e_i`.
    pub basis: Vec<Elem>,
}

pub fn free_module(ring: &FinSemiring, k: usize, guards: &Guards) -> Result<FreeModule> {
    let nr = ring.size();
    let size = nr
        .checked_pow(k as u32)
        .filter(|&s| s <= guards.carrier)
        .ok_or(Error::Guard {
            what: "free module carrier",
            needed: nr.saturating_pow(k as u32),
            limit: guards.carrier,
        })?;
    let decode = |mut i: usize| {
        let mut v = vec![0; k];
        for c in (0..k).rev() {
            v[c] = i % nr;
            i /= nr;
        }
        v
    };
    let encode = |v: &[Elem]| v.iter().fold(0, |acc, &c| acc * nr + c);
    let tuples: Vec<Vec<Elem>> = (0..size).map(decode).collect();
    let join = (0..size)
        .map(|a| {
            (0..size)
                .map(|b| {
                    let v: Vec<Elem> = (0..k)
                        .map(|c| ring.add(tuples[a][c], tuples[b][c]))
                        .collect();
                    encode(&v)
                })
                .collect()
        })
        .collect();
    let zero = encode(&vec![ring.zero(); k]);
    let top = encode(&vec![ring.top(); k]);
    let carrier = FinCim::new(join, zero, top)?;
    let action = ring
        .elements()
        .map(|r| {
            tuples
                .iter()
                .map(|t| encode(&t.iter().map(|&c| ring.mul(r, c)).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t.iter().map(|&c| ring.name(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let module = FinModule::new(ring.clone(), carrier, action)?.with_names(names)?;
    let basis = (0..k)
        .map(|i| {
            let mut v = vec![ring.zero(); k];
            v[i] = ring.one();
            encode(&v)
        })
        .collect();
    Ok(FreeModule { module, basis })
}

impl FreeModule {
    /// The unique map sending `e_i` to `images[i]`: `(r_i) -> sum r_i images[i]`.
    pub fn extend(&self, target: &FinModule, images: &[Elem]) -> Vec<Elem> {
        let k = self.basis.len();
        let nr = self.module.ring().size();
        self.module
            .elements()
            .map(|mut t| {
                let mut coords = vec![0; k];
                for c in (0..k).rev() {
                    coords[c] = t % nr;
                    t /= nr;
                }
                coords
                    .iter()
                    .zip(images)
                    .fold(target.zero(), |acc, (&r, &y)| {
                        target.join(acc, target.act(r, y))
                    })
            })
            .collect()
    }
}

/// `A (x)_R M` for an `R`-algebra `f: R -> A`, with the unit `x -> 1 (x) x`.
#[derive(Debug, Clone)]
pub struct ScalarExtension {
    pub module: FinModule,
    pub tensor: TensorProduct,
    pub unit: Vec<Elem>,
}

pub fn scalar_extension(
    f: &SemiringHom,
    m: &FinModule,
    guards: &Guards,
) -> Result<ScalarExtension> {
    let a = &f.target;
    let a_as_r = FinModule::restrict(f, &FinModule::regular(a))?;
    let t = tensor(&a_as_r, m, guards)?;
    let space = PairSpace {
        m: a_as_r.clone(),
        n: m.clone(),
    };
    let idx = |g: u64| {
        t.filters
            .iter()
            .position(|&h| h == g)
            .expect("closed under action")
    };
    let action = a
        .elements()
        .map(|s| {
            (0..t.filters.len())
                .map(|i| {
                    let moved = t
                        .pairs_of(i)
                        .into_iter()
                        .fold(0u64, |acc, (b, x)| acc | space.bit(a.mul(s, b), x));
                    idx(space.closure(moved))
                })
                .collect()
        })
        .collect();
    let module = FinModule::new(a.clone(), t.module.carrier().clone(), action)?;
    let unit = m.elements().map(|x| t.generator[a.one()][x]).collect();
    Ok(ScalarExtension {
        module,
        tensor: t,
        unit,
    })
}

/// Product carrier with injections `x -> (0, .., x, .., 0)`.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub module: FinModule,
    pub injections: Vec<Vec<Elem>>,
    pub projections: Vec<Vec<Elem>>,
}

impl Coproduct {
    /// `(x_i) -> sum f_i(x_i)`.
    pub fn copair(&self, target: &FinModule, maps: &[Vec<Elem>]) -> Vec<Elem> {
        self.module
            .elements()
            .map(|z| {
                self.projections
                    .iter()
                    .zip(maps)
                    .fold(target.zero(), |acc, (p, f)| target.join(acc, f[p[z]]))
            })
            .collect()
    }
}

pub fn module_coproduct(
    ring: &FinSemiring,
    parts: &[FinModule],
    guards: &Guards,
) -> Result<Coproduct> {
    for p in parts {
        if p.ring().unnamed() != ring.unnamed() {
            return Err(Error::Precondition(
                "summands are over different semirings".into(),
            ));
        }
    }
    let size = parts
        .iter()
        .try_fold(1usize, |acc, p| acc.checked_mul(p.size()))
        .unwrap_or(usize::MAX);
    Guards::check("coproduct carrier", size, guards.carrier)?;
    let tables: Vec<Tables> = parts
        .iter()
        .map(|p| p.tables(MapKind::TopPreserving))
        .collect();
    let refs: Vec<&Tables> = tables.iter().collect();
    let template = FinModule::trivial(ring).tables(MapKind::TopPreserving);
    let t = Tables::product(&refs, &template);
    let join = t.binary[0].chunks(size).map(<[Elem]>::to_vec).collect();
    let carrier = FinCim::new(join, t.constants[0], t.constants[1])?;
    let action = t.unary.to_vec();
    let module = FinModule::new(ring.clone(), carrier, action)?;
    let sizes: Vec<usize> = parts.iter().map(FinModule::size).collect();
    let radix: Vec<usize> = (0..sizes.len())
        .map(|i| sizes[i + 1..].iter().product())
        .collect();
    let projections: Vec<Vec<Elem>> = (0..parts.len())
        .map(|i| (0..size).map(|z| z / radix[i] % sizes[i]).collect())
        .collect();
    let injections = (0..parts.len())
        .map(|i| {
            parts[i]
                .elements()
                .map(|x| {
                    (0..parts.len())
                        .map(|j| if j == i { x } else { parts[j].zero() })
                        .zip(&radix)
                        .map(|(c, r)| c * r)
                        .sum()
                })
                .collect()
        })
        .collect();
    Ok(Coproduct {
        module,
        injections,
        projections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c2() -> FinModule {
        FinModule::over_f1(FinCim::chain(2))
    }

    fn g() -> Guards {
        Guards::default()
    }

    #[test]
    fn module_validation() {
        assert!(check_module(
            &FinSemiring::chain(2),
            &FinCim::chain(3),
            &[vec![0; 3], vec![0, 1, 2]]
        )
        .unwrap()
        .is_ok());
        let _ = FinModule::regular(&fixtures::c3());
        let bad = check_module(
            &FinSemiring::chain(2),
            &FinCim::chain(2),
            &[vec![0, 0], vec![0, 0]],
        )
        .unwrap()
        .unwrap_err();
        assert_eq!(bad.law, Law::ActionUnit);
    }

    #[test]
    fn hom_modules() {
        let h = hom_module(&c2(), &c2(), &g()).unwrap();
        assert_eq!(h.maps.len(), 2);
        assert!(h.module.is_isomorphic(&c2()));
        let one = FinModule::trivial(&FinSemiring::chain(2));
        assert_eq!(hom_module(&c2(), &one, &g()).unwrap().maps.len(), 1);
        let f2 = free_module(&FinSemiring::chain(2), 2, &g()).unwrap();
        let h = hom_module(&f2.module, &c2(), &g()).unwrap();
        let c2c2 = module_coproduct(&FinSemiring::chain(2), &[c2(), c2()], &g()).unwrap();
        assert!(h.module.is_isomorphic(&c2c2.module));
    }

    #[test]
    fn tensor_examples() {
        let t = tensor(&c2(), &c2(), &g()).unwrap();
        assert_eq!(t.filters.len(), 2);
        let one = FinModule::trivial(&FinSemiring::chain(2));
        assert_eq!(tensor(&c2(), &one, &g()).unwrap().module.size(), 1);
        let f1 = free_module(&FinSemiring::chain(2), 1, &g()).unwrap();
        let m = FinModule::over_f1(fixtures::b4().cim().clone());
        assert!(tensor(&m, &f1.module, &g())
            .unwrap()
            .module
            .is_isomorphic(&m));
    }

    #[test]
    fn reachable_filters_match_brute_force() {
        let c3 = FinModule::regular(&fixtures::c3());
        let b4 = FinModule::over_f1(fixtures::b4().cim().clone());
        let ne = FinModule::regular(&fixtures::n_eps());
        for (m, n) in [
            (c2(), c2()),
            (c3.clone(), c3),
            (b4.clone(), b4),
            (ne.clone(), ne),
        ] {
            let t = tensor(&m, &n, &g()).unwrap();
            assert_eq!(t.filters, tensor_filters_brute_force(&m, &n).unwrap());
        }
    }

    #[test]
    fn filters_form_closure_system() {
        let b4 = FinModule::over_f1(fixtures::b4().cim().clone());
        let t = tensor(&b4, &c2(), &g()).unwrap();
        let space = PairSpace {
            m: b4.clone(),
            n: c2(),
        };
        for &f in &t.filters {
            assert!(f & 1 == 1);
            for &h in &t.filters {
                assert!(space.is_filter(f & h));
            }
        }
    }

    #[test]
    fn tensor_symmetry() {
        let b4 = FinModule::over_f1(fixtures::b4().cim().clone());
        let c3 = FinModule::over_f1(FinCim::chain(3));
        let mn = tensor(&b4, &c3, &g()).unwrap();
        let nm = tensor(&c3, &b4, &g()).unwrap();
        let swap = tensor_swap(&mn, &nm);
        assert!(crate::structure::is_bijection(&swap, nm.module.size()));
        assert!(mn
            .module
            .is_map_to(&nm.module, &swap, MapKind::TopPreserving));
    }

    #[test]
    fn adjunction_examples() {
        let w = tensor_hom_adjunction_check(&c2(), &c2(), &c2(), &g()).unwrap();
        assert!(w.bijective);
        assert_eq!((w.left_size, w.right_size), (2, 2));
        let one = FinModule::trivial(&FinSemiring::chain(2));
        let w = tensor_hom_adjunction_check(&c2(), &c2(), &one, &g()).unwrap();
        assert!(w.bijective && w.left_size == 1);
        let f2 = free_module(&FinSemiring::chain(2), 2, &g()).unwrap();
        let w = tensor_hom_adjunction_check(&f2.module, &c2(), &c2(), &g()).unwrap();
        assert!(w.bijective);
        assert_eq!(w.left_size, 4);
    }

    #[test]
    fn unit_is_not_top_preserving() {
        // x -> [y -> x (x) y] sends 0 to the zero map, and the zero map is
        // not top-preserving, so the adjunction needs sup-preserving maps
        let t = tensor(&c2(), &c2(), &g()).unwrap();
        let curried: Vec<Elem> = (0..2).map(|y| t.generator[0][y]).collect();
        assert!(!c2().is_map_to(&t.module, &curried, MapKind::TopPreserving));
        assert!(c2().is_map_to(&t.module, &curried, MapKind::SupPreserving));
    }

    #[test]
    fn free_modules() {
        let f1 = FinSemiring::chain(2);
        assert!(free_module(&f1, 1, &g())
            .unwrap()
            .module
            .is_isomorphic(&c2()));
        let f2 = free_module(&f1, 2, &g()).unwrap();
        let b4 = FinModule::over_f1(fixtures::b4().cim().clone());
        assert!(f2.module.is_isomorphic(&b4));
        assert_eq!(
            free_module(&fixtures::c3(), 0, &g()).unwrap().module.size(),
            1
        );
        // generators determine maps uniquely
        let c3 = FinModule::regular(&fixtures::c3());
        let free = free_module(&fixtures::c3(), 2, &g()).unwrap();
        for a in c3.elements() {
            for b in c3.elements() {
                let ext = free.extend(&c3, &[a, b]);
                assert!(free.module.is_map_to(&c3, &ext, MapKind::SupPreserving));
                let agreeing = free
                    .module
                    .maps_to(&c3, MapKind::SupPreserving)
                    .into_iter()
                    .filter(|f| f[free.basis[0]] == a && f[free.basis[1]] == b)
                    .count();
                assert_eq!(agreeing, 1);
            }
        }
    }

    #[test]
    fn scalar_extensions() {
        let c3 = fixtures::c3();
        let id = SemiringHom::identity(&c3);
        let m = FinModule::regular(&c3);
        assert!(scalar_extension(&id, &m, &g())
            .unwrap()
            .module
            .is_isomorphic(&m));
        let z = fixtures::zero_semiring();
        let to_zero = SemiringHom::new(c3.clone(), z, vec![0, 0, 0]).unwrap();
        assert_eq!(
            scalar_extension(&to_zero, &m, &g()).unwrap().module.size(),
            1
        );
        let incl = SemiringHom::new(fixtures::f1(), c3.clone(), vec![0, 2]).unwrap();
        let ext = scalar_extension(&incl, &FinModule::over_f1(FinCim::chain(2)), &g());
        assert!(ext.unwrap().module.is_isomorphic(&FinModule::regular(&c3)));
    }

    #[test]
    fn coproducts() {
        let f1 = FinSemiring::chain(2);
        let s = module_coproduct(&f1, &[c2(), c2()], &g()).unwrap();
        let b4 = FinModule::over_f1(fixtures::b4().cim().clone());
        assert!(s.module.is_isomorphic(&b4));
        assert_eq!(module_coproduct(&f1, &[], &g()).unwrap().module.size(), 1);
        let one = FinModule::trivial(&f1);
        let m = FinModule::over_f1(FinCim::chain(3));
        let s2 = module_coproduct(&f1, &[m.clone(), one], &g()).unwrap();
        assert!(s2.module.is_isomorphic(&m));
        // copairing is the unique map restricting to the given ones
        let p = c2();
        for f in c2().maps_to(&p, MapKind::SupPreserving) {
            for h in c2().maps_to(&p, MapKind::SupPreserving) {
                let cp = s.copair(&p, &[f.clone(), h.clone()]);
                assert_eq!(compose(&s.injections[0], &cp), f);
                assert_eq!(compose(&s.injections[1], &cp), h);
                let count = s
                    .module
                    .maps_to(&p, MapKind::SupPreserving)
                    .into_iter()
                    .filter(|g| {
                        compose(&s.injections[0], g) == f && compose(&s.injections[1], g) == h
                    })
                    .count();
                assert_eq!(count, 1);
            }
        }
    }

    #[test]
    fn naturality() {
        let m = c2();
        let m2 = FinModule::over_f1(FinCim::chain(3));
        for map in m.maps_to(&m2, MapKind::SupPreserving) {
            let f = ModuleMap::new(m.clone(), m2.clone(), map, MapKind::SupPreserving).unwrap();
            assert!(adjunction_natural_in_m(&f, &c2(), &c2(), &g()).unwrap());
        }
    }
}
