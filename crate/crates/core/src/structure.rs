//! Finite algebraic structures given by explicit operation tables.
//!
//! Every concrete type in the crate (monoids, semirings, rings, modules)
//! can be flattened into [`Tables`] so that homomorphism search,
//! isomorphism witnesses, products and quotients are written once.

use crate::error::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tables {
    pub size: usize,
    /// Row-major `size * size` tables.
    pub binary: Vec<Vec<Elem>>,
    pub unary: Vec<Vec<Elem>>,
    pub constants: Vec<Elem>,
}

impl Tables {
    pub fn apply(&self, op: usize, a: Elem, b: Elem) -> Elem {
        self.binary[op][a * self.size + b]
    }

    fn same_signature(&self, other: &Tables) -> bool {
        self.binary.len() == other.binary.len()
            && self.unary.len() == other.unary.len()
            && self.constants.len() == other.constants.len()
    }

    /// Whether `map` (indexed by `self` elements) preserves every operation.
    pub fn is_hom(&self, target: &Tables, map: &[Elem]) -> bool {
        if !self.same_signature(target) || map.len() != self.size {
            return false;
        }
        if map.iter().any(|&m| m >= target.size) {
            return false;
        }
        for (c, d) in self.constants.iter().zip(&target.constants) {
            if map[*c] != *d {
                return false;
            }
        }
        for (u, v) in self.unary.iter().zip(&target.unary) {
            for x in 0..self.size {
                if map[u[x]] != v[map[x]] {
                    return false;
                }
            }
        }
        for k in 0..self.binary.len() {
            for a in 0..self.size {
                for b in 0..self.size {
                    if map[self.apply(k, a, b)] != target.apply(k, map[a], map[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All homomorphisms `self -> target`.
    pub fn homomorphisms(&self, target: &Tables) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        if !self.same_signature(target) || (target.size == 0 && self.size > 0) {
            return out;
        }
        let mut search = HomSearch {
            source: self,
            target,
            injective: false,
            first_only: false,
            out: &mut out,
        };
        if let Some(start) = search.seed() {
            search.run(start);
        }
        out
    }

    /// An isomorphism `self -> target`, if one exists.
    pub fn find_isomorphism(&self, target: &Tables) -> Option<Vec<Elem>> {
        if self.size != target.size || !self.same_signature(target) {
            return None;
        }
        let mut out = Vec::new();
        let mut search = HomSearch {
            source: self,
            target,
            injective: true,
            first_only: true,
            out: &mut out,
        };
        if let Some(start) = search.seed() {
            search.run(start);
        }
        out.pop()
    }

    /// Componentwise product. Element `(x_0, .., x_k)` is encoded in mixed
    /// radix with the first factor most significant.
    pub fn product(factors: &[&Tables], template: &Tables) -> Tables {
        let sizes: Vec<usize> = factors.iter().map(|t| t.size).collect();
        let size: usize = sizes.iter().product();
        let decode = |mut idx: usize| -> Vec<Elem> {
            let mut parts = vec![0; sizes.len()];
            for i in (0..sizes.len()).rev() {
                parts[i] = idx % sizes[i];
                idx /= sizes[i];
            }
            parts
        };
        let encode = |parts: &[Elem]| -> usize {
            parts.iter().zip(&sizes).fold(0, |acc, (p, s)| acc * s + p)
        };
        let decoded: Vec<Vec<Elem>> = (0..size).map(decode).collect();
        let binary = (0..template.binary.len())
            .map(|k| {
                let mut t = vec![0; size * size];
                for a in 0..size {
                    for b in 0..size {
                        let parts: Vec<Elem> = factors
                            .iter()
                            .enumerate()
                            .map(|(i, f)| f.apply(k, decoded[a][i], decoded[b][i]))
                            .collect();
                        t[a * size + b] = encode(&parts);
                    }
                }
                t
            })
            .collect();
        let unary = (0..template.unary.len())
            .map(|k| {
                (0..size)
                    .map(|a| {
                        let parts: Vec<Elem> = factors
                            .iter()
                            .enumerate()
                            .map(|(i, f)| f.unary[k][decoded[a][i]])
                            .collect();
                        encode(&parts)
                    })
                    .collect()
            })
            .collect();
        let constants = (0..template.constants.len())
            .map(|k| {
                let parts: Vec<Elem> = factors.iter().map(|f| f.constants[k]).collect();
                encode(&parts)
            })
            .collect();
        Tables {
            size,
            binary,
            unary,
            constants,
        }
    }

    /// Restriction to `subset` (sorted, duplicate-free), relabelled densely.
    /// Returns `None` when the subset is not closed under the operations.
    pub fn substructure(&self, subset: &[Elem]) -> Option<Tables> {
        let mut index = vec![usize::MAX; self.size];
        for (i, &x) in subset.iter().enumerate() {
            index[x] = i;
        }
        let m = subset.len();
        let lookup = |x: Elem| -> Option<usize> { (index[x] != usize::MAX).then_some(index[x]) };
        let mut binary = Vec::with_capacity(self.binary.len());
        for k in 0..self.binary.len() {
            let mut t = vec![0; m * m];
            for (i, &a) in subset.iter().enumerate() {
                for (j, &b) in subset.iter().enumerate() {
                    t[i * m + j] = lookup(self.apply(k, a, b))?;
                }
            }
            binary.push(t);
        }
        let mut unary = Vec::with_capacity(self.unary.len());
        for u in &self.unary {
            let mut t = Vec::with_capacity(m);
            for &a in subset {
                t.push(lookup(u[a])?);
            }
            unary.push(t);
        }
        let mut constants = Vec::with_capacity(self.constants.len());
        for &c in &self.constants {
            constants.push(lookup(c)?);
        }
        Some(Tables {
            size: m,
            binary,
            unary,
            constants,
        })
    }

    /// Quotient by the partition `class_of` (classes numbered densely).
    /// Returns `None` if the partition is not compatible with the operations.
    pub fn quotient(&self, class_of: &[usize]) -> Option<Tables> {
        let m = class_of.iter().copied().max().map_or(0, |x| x + 1);
        let mut binary = Vec::with_capacity(self.binary.len());
        for k in 0..self.binary.len() {
            let mut t = vec![usize::MAX; m * m];
            for a in 0..self.size {
                for b in 0..self.size {
                    let cell = &mut t[class_of[a] * m + class_of[b]];
                    let v = class_of[self.apply(k, a, b)];
                    if *cell == usize::MAX {
                        *cell = v;
                    } else if *cell != v {
                        return None;
                    }
                }
            }
            binary.push(t);
        }
        let mut unary = Vec::with_capacity(self.unary.len());
        for u in &self.unary {
            let mut t = vec![usize::MAX; m];
            for a in 0..self.size {
                let v = class_of[u[a]];
                if t[class_of[a]] == usize::MAX {
                    t[class_of[a]] = v;
                } else if t[class_of[a]] != v {
                    return None;
                }
            }
            unary.push(t);
        }
        let constants = self.constants.iter().map(|&c| class_of[c]).collect();
        Some(Tables {
            size: m,
            binary,
            unary,
            constants,
        })
    }
}

/// Compose maps: `(g . f)(x) = g(f(x))`.
pub fn compose(f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    f.iter().map(|&x| g[x]).collect()
}

/// Whether a map is a bijection onto `0..target_size`.
pub fn is_bijection(map: &[Elem], target_size: usize) -> bool {
    if map.len() != target_size {
        return false;
    }
    let mut seen = vec![false; target_size];
    for &x in map {
        if x >= target_size || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Inverse of a bijection.
pub fn invert(map: &[Elem]) -> Vec<Elem> {
    let mut inv = vec![0; map.len()];
    for (i, &x) in map.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

struct HomSearch<'a> {
    source: &'a Tables,
    target: &'a Tables,
    injective: bool,
    first_only: bool,
    out: &'a mut Vec<Vec<Elem>>,
}

type Partial = Vec<Option<Elem>>;

impl HomSearch<'_> {
    /// Constants are forced; propagate from there.
    fn seed(&self) -> Option<Partial> {
        let mut partial = vec![None; self.source.size];
        for (c, d) in self.source.constants.iter().zip(&self.target.constants) {
            if !self.assign(&mut partial, *c, *d) {
                return None;
            }
        }
        self.propagate(&mut partial).then_some(partial)
    }

    fn assign(&self, partial: &mut Partial, x: Elem, v: Elem) -> bool {
        match partial[x] {
            Some(w) => w == v,
            None => {
                if self.injective && partial.contains(&Some(v)) {
                    return false;
                }
                partial[x] = Some(v);
                true
            }
        }
    }

    /// Close the partial map under forced values; `false` on a clash.
    fn propagate(&self, partial: &mut Partial) -> bool {
        let s = self.source;
        let t = self.target;
        loop {
            let mut changed = false;
            for (u, v) in s.unary.iter().zip(&t.unary) {
                for x in 0..s.size {
                    if let Some(mx) = partial[x] {
                        let before = partial[u[x]];
                        if !self.assign(partial, u[x], v[mx]) {
                            return false;
                        }
                        changed |= before.is_none();
                    }
                }
            }
            for k in 0..s.binary.len() {
                for a in 0..s.size {
                    let Some(ma) = partial[a] else { continue };
                    for b in 0..s.size {
                        let Some(mb) = partial[b] else { continue };
                        let r = s.apply(k, a, b);
                        let before = partial[r];
                        if !self.assign(partial, r, t.apply(k, ma, mb)) {
                            return false;
                        }
                        changed |= before.is_none();
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, partial: Partial) {
        if self.first_only && !self.out.is_empty() {
            return;
        }
        match partial.iter().position(Option::is_none) {
            None => {
                let map: Vec<Elem> = partial.into_iter().map(|x| x.unwrap()).collect();
                if self.source.is_hom(self.target, &map) {
                    self.out.push(map);
                }
            }
            Some(x) => {
                for v in 0..self.target.size {
                    let mut next = partial.clone();
                    if self.assign(&mut next, x, v) && self.propagate(&mut next) {
                        self.run(next);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_lattice(n: usize) -> Tables {
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = a.max(b);
            }
        }
        Tables {
            size: n,
            binary: vec![join],
            unary: vec![],
            constants: vec![0],
        }
    }

    #[test]
    fn homs_between_chains() {
        // join-and-zero preserving maps C2 -> C3: 0 -> 0, 1 -> anything
        let c2 = max_lattice(2);
        let c3 = max_lattice(3);
        assert_eq!(c2.homomorphisms(&c3).len(), 3);
        // C3 -> C2: monotone maps fixing 0
        assert_eq!(c3.homomorphisms(&c2).len(), 3);
        assert!(c3.find_isomorphism(&c3).is_some());
        assert!(c2.find_isomorphism(&c3).is_none());
    }

    #[test]
    fn quotient_rejects_incompatible_partition() {
        let c3 = max_lattice(3);
        // {0,2} | {1} is not compatible: 0 v 1 = 1 but 2 v 1 = 2
        assert!(c3.quotient(&[0, 1, 0]).is_none());
        assert!(c3.quotient(&[0, 1, 1]).is_some());
    }

    #[test]
    fn product_of_chains() {
        let c2 = max_lattice(2);
        let p = Tables::product(&[&c2, &c2], &c2);
        assert_eq!(p.size, 4);
        // (0,1) v (1,0) = (1,1)
        assert_eq!(p.apply(0, 1, 2), 3);
        let empty = Tables::product(&[], &c2);
        assert_eq!(empty.size, 1);
    }
}
