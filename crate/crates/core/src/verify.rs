//! The verification driver: named suites of property checks over a bound
//! or over the structures of a document.

use std::time::Instant;

use serde::Serialize;

use crate::enumerate::{count_posets_naive, enumerate_idealic_semirings, enumerate_posets};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fixtures;
use crate::guards::Guards;
use crate::localization::{all_mult_systems, loc_relation_oracle, localize, sigma_saturation};
use crate::modules::{free_module, tensor, tensor_hom_adjunction_check, FinModule};
use crate::order::FinCim;
use crate::schemes::sheaf::CoverDefect;
use crate::schemes::{
    adjunction_check, adjunction_check_scheme, patching_check, sheaf_check, spec_scheme,
    tau_scheme, Algebra, FinRing, Presheaf, SchematizableType,
};
use crate::semiring::FinSemiring;
use crate::spectrum::{duality_check, duality_check_space, glue};
use crate::text::{as_algebra, Document, Object};
use crate::topology::{closed_set_semiring, FinTop};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Failure witness or skip reason.
    pub detail: Option<String>,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub millis: u128,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Duality,
    Adjunction,
    LocalizationOracle,
    Sheaf,
    Patching,
    Tensor,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Duality,
        Suite::Adjunction,
        Suite::LocalizationOracle,
        Suite::Sheaf,
        Suite::Patching,
        Suite::Tensor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::Adjunction => "adjunction",
            Suite::LocalizationOracle => "localization-oracle",
            Suite::Sheaf => "sheaf",
            Suite::Patching => "patching",
            Suite::Tensor => "tensor",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown suite {s}")))
    }
}

/// What a suite runs over: the structures of a document, or the built-in
/// corpus and enumerations up to `bound`.
#[derive(Debug, Clone)]
pub struct VerifyInput {
    pub document: Option<Document>,
    pub bound: usize,
    pub guards: Guards,
    pub exec: Execution,
}

impl Default for VerifyInput {
    fn default() -> Self {
        VerifyInput {
            document: None,
            bound: 4,
            guards: Guards::default(),
            exec: Execution::default(),
        }
    }
}

type Item = (
    String,
    Box<dyn Fn() -> Result<Option<String>> + Send + Sync>,
);

fn item(
    name: impl Into<String>,
    f: impl Fn() -> Result<Option<String>> + Send + Sync + 'static,
) -> Item {
    (name.into(), Box::new(f))
}

fn fail_if(bad: bool, why: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok(bad.then(why))
}

fn run(suite: Suite, items: Vec<Item>, exec: Execution) -> VerificationReport {
    let start = Instant::now();
    let checks = exec.map(&items, |(name, f)| {
        let t = Instant::now();
        let (status, detail) = match f() {
            Ok(None) => (Status::Pass, None),
            Ok(Some(w)) => (Status::Fail, Some(w)),
            Err(e @ Error::Guard { .. }) => (Status::Skipped, Some(e.to_string())),
            Err(e) => (Status::Fail, Some(e.to_string())),
        };
        CheckResult {
            name: name.clone(),
            status,
            detail,
            millis: t.elapsed().as_millis(),
        }
    });
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    VerificationReport {
        suite: suite.name().to_string(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        millis: start.elapsed().as_millis(),
        checks,
    }
}

fn doc_semirings(doc: &Document) -> Vec<(String, FinSemiring)> {
    doc.blocks
        .iter()
        .filter_map(|(n, o)| match o {
            Object::Semiring(r) => Some((n.clone(), r.clone())),
            _ => None,
        })
        .collect()
}

fn doc_spaces(doc: &Document) -> Vec<(String, FinTop)> {
    doc.blocks
        .iter()
        .filter_map(|(n, o)| match o {
            Object::Top(x) => Some((n.clone(), x.clone())),
            _ => None,
        })
        .collect()
}

fn corpus_semirings(
    input: &VerifyInput,
    enumerated_up_to: usize,
) -> Result<Vec<(String, FinSemiring)>> {
    if let Some(doc) = &input.document {
        return Ok(doc_semirings(doc));
    }
    let mut out: Vec<(String, FinSemiring)> = fixtures::corpus()
        .into_iter()
        .map(|(n, r)| (n.to_string(), r))
        .collect();
    for n in 1..=enumerated_up_to {
        for (i, r) in enumerate_idealic_semirings(n, input.exec)?
            .into_iter()
            .enumerate()
        {
            out.push((format!("enum{n}.{i}"), r));
        }
    }
    Ok(out)
}

/// `Spec(C(X)) = X` and `C(Spec C(X)) = C(X)`.
fn duality_space_item(name: String, x: FinTop) -> Item {
    item(format!("duality {name}"), move || {
        let d = duality_check_space(&x)?;
        if !d.homeomorphism {
            return Ok(Some("x -> closure{x} is not a homeomorphism".into()));
        }
        let c = closed_set_semiring(&x);
        let w = duality_check(&c)?;
        fail_if(!w.is_iso(), || format!("C(Spec C(X)) is not C(X): {w:?}"))
    })
}

fn duality_items(input: &VerifyInput) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    if let Some(doc) = &input.document {
        for (n, x) in doc_spaces(doc) {
            items.push(duality_space_item(n, x));
        }
        for (n, r) in doc_semirings(doc) {
            items.push(item(format!("duality {n}"), move || {
                let w = duality_check(&r)?;
                fail_if(!w.is_iso(), || format!("{w:?}"))
            }));
        }
        return Ok(items);
    }
    for n in 1..=input.bound {
        let spaces = enumerate_posets(n, input.exec)?;
        let count = spaces.len();
        if n <= 4 {
            items.push(item(format!("poset count n={n}"), move || {
                let naive = count_posets_naive(n)?;
                fail_if(naive != count, || {
                    format!("enumerated {count}, naive {naive}")
                })
            }));
        }
        for (i, x) in spaces.into_iter().enumerate() {
            items.push(duality_space_item(format!("n={n} #{i}"), x));
        }
    }
    Ok(items)
}

fn localization_items(input: &VerifyInput) -> Result<Vec<Item>> {
    let guards = input.guards;
    Ok(corpus_semirings(input, 3)?
        .into_iter()
        .filter(|(_, r)| r.is_idealic())
        .map(|(n, r)| {
            item(format!("localization {n}"), move || {
                for sigma in all_mult_systems(&r, &guards)? {
                    let l = localize(&r, &sigma)?;
                    for f in r.elements() {
                        if l.result.saturation(f) != sigma_saturation(&r, &sigma, f) {
                            return Ok(Some(format!(
                                "saturation of {} at {:?}",
                                r.name(f),
                                sigma.members()
                            )));
                        }
                        for g in r.elements() {
                            let quotient = l.project(f) == l.project(g);
                            if quotient != loc_relation_oracle(&r, &sigma, f, g) {
                                return Ok(Some(format!(
                                    "pair ({}, {}) at {:?}: quotient says {quotient}",
                                    r.name(f),
                                    r.name(g),
                                    sigma.members()
                                )));
                            }
                        }
                    }
                }
                Ok(None)
            })
        })
        .collect())
}

/// The constant presheaf with value `F1` on the one-point space: the
/// empty open carries `F1` instead of the terminal semiring.
pub fn constant_presheaf_fixture() -> Presheaf {
    let x = fixtures::point();
    let k = x.closed_sets().len();
    Presheaf::new(x, vec![Algebra::Semiring(fixtures::f1()); k], |_, _| {
        vec![0, 1]
    })
    .expect("constant presheaves are functorial")
}

fn sheaf_items(input: &VerifyInput) -> Result<Vec<Item>> {
    let guards = input.guards;
    let mut items = Vec::new();
    for (n, r) in corpus_semirings(input, 0)?
        .into_iter()
        .filter(|(_, r)| r.is_idealic())
    {
        items.push(item(format!("structure presheaf {n}"), move || {
            let s = spec_scheme(
                SchematizableType::semiring(),
                &Algebra::Semiring(r.clone()),
                &guards,
            )?;
            let c = sheaf_check(&s.presheaf, &guards)?;
            fail_if(!c.is_sheaf, || format!("{:?}", c.failure))
        }));
    }
    if input.document.is_none() {
        items.push(item("constant presheaf fails (negative)", move || {
            let c = sheaf_check(&constant_presheaf_fixture(), &guards)?;
            let empty_cover = c.failure.as_ref().is_some_and(|f| {
                f.cover.is_empty() && matches!(f.defect, CoverDefect::NotSeparated { .. })
            });
            fail_if(c.is_sheaf || !empty_cover, || {
                format!("expected an empty-cover failure, got {c:?}")
            })
        }));
    }
    Ok(items)
}

/// All covers `s = s_1 + .. + s_k` with `k <= 3` distinct parts.
fn covers(r: &FinSemiring, max_parts: usize) -> Vec<(usize, Vec<usize>)> {
    let n = r.size();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    while let Some(parts) = stack.pop() {
        out.push((r.sup(&parts), parts.clone()));
        if parts.len() < max_parts {
            for x in parts.last().unwrap() + 1..n {
                let mut p = parts.clone();
                p.push(x);
                stack.push(p);
            }
        }
    }
    out
}

fn patching_items(input: &VerifyInput) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    for (n, r) in corpus_semirings(input, 0)?
        .into_iter()
        .filter(|(_, r)| r.is_idealic())
    {
        items.push(item(format!("patching {n}"), move || {
            let a = Algebra::Semiring(r.clone());
            for (s, parts) in covers(&r, 3) {
                let rep = patching_check(&a, s, &parts)?;
                if !rep.holds {
                    return Ok(Some(format!(
                        "cover of {} by {parts:?}: {rep:?}",
                        r.name(s)
                    )));
                }
                // glue() agrees with the brute force on every compatible tuple
                let locs: Vec<_> = parts
                    .iter()
                    .map(|&p| crate::localization::localize_at_element(&r, p))
                    .collect::<Result<_>>()?;
                let mut tuples: Vec<Vec<usize>> = vec![vec![]];
                for _ in &parts {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| r.elements().map(move |x| [t.clone(), vec![x]].concat()))
                        .collect();
                }
                for t in tuples {
                    let compatible = (0..parts.len()).all(|i| {
                        (0..parts.len()).all(|j| {
                            let lij = crate::localization::localize_at_element(
                                &r,
                                r.mul(parts[i], parts[j]),
                            )
                            .expect("localization");
                            lij.project(t[i]) == lij.project(t[j])
                        })
                    });
                    if !compatible {
                        continue;
                    }
                    let pairs: Vec<(usize, usize)> =
                        parts.iter().copied().zip(t.iter().copied()).collect();
                    let g = glue(&r, s, &pairs)?;
                    let ok = locs
                        .iter()
                        .zip(&t)
                        .all(|(l, &f)| l.project(g.representative) == l.project(f));
                    if !ok {
                        return Ok(Some(format!(
                            "glue of {t:?} over {parts:?} does not restrict correctly"
                        )));
                    }
                }
            }
            Ok(None)
        }));
    }
    Ok(items)
}

/// Classical stalks of `Z/n`: one point per prime `p | n`, with stalk
/// `Z/p^k` and prime ideal `(p)`.
pub fn zmod_matches_classical(n: usize, guards: &Guards) -> Result<Option<String>> {
    let mut classical: Vec<(usize, usize)> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            let mut q = 1;
            while m.is_multiple_of(p) {
                m /= p;
                q *= p;
            }
            classical.push((p, q));
        }
        p += 1;
    }
    let s = spec_scheme(
        SchematizableType::ring(),
        &Algebra::Ring(FinRing::zmod(n)),
        guards,
    )?;
    if s.space().size() != classical.len() {
        return Ok(Some(format!(
            "{} points, expected {}",
            s.space().size(),
            classical.len()
        )));
    }
    let sheaf = s.sheaf();
    let mut matched = vec![false; classical.len()];
    for (x, &q) in s.spectrum.primes.iter().enumerate() {
        // the largest ideal in the class of the prime
        let best = s
            .alpha
            .pre
            .elements()
            .filter(|&i| s.alpha.class_of_pre(i) == q)
            .max_by_key(|&i| s.alpha.ideals[i].count_ones())
            .expect("non-empty class");
        let ideal = s.alpha.ideals[best];
        let stalk = sheaf.sections(sheaf.minimal(x));
        let hit = classical.iter().position(|&(p, pk)| {
            let multiples = (0..n).filter(|v| v % p == 0).fold(0u64, |a, v| a | 1 << v);
            ideal == multiples && stalk.is_isomorphic(&Algebra::Ring(FinRing::zmod(pk)))
        });
        match hit {
            Some(i) if !matched[i] => matched[i] = true,
            _ => return Ok(Some(format!("point {x} matches no classical prime"))),
        }
    }
    Ok(None)
}

fn adjunction_items(input: &VerifyInput) -> Result<Vec<Item>> {
    let guards = input.guards;
    let mut algebras: Vec<(String, SchematizableType, Algebra)> = Vec::new();
    let mut spaces: Vec<(String, FinTop)> = Vec::new();
    let mut rings = Vec::new();
    match &input.document {
        Some(doc) => {
            for (n, o) in &doc.blocks {
                if let Some(a) = as_algebra(o) {
                    let t = SchematizableType { kind: a.kind() };
                    algebras.push((n.clone(), t, a));
                }
            }
            spaces = doc_spaces(doc);
        }
        None => {
            for (n, r) in fixtures::corpus() {
                algebras.push((
                    n.into(),
                    SchematizableType::semiring(),
                    Algebra::Semiring(r),
                ));
            }
            for (n, m) in fixtures::monoid_corpus() {
                algebras.push((n.into(), SchematizableType::monoid(), Algebra::Monoid(m)));
            }
            for (n, r) in fixtures::ring_corpus() {
                rings.push(r.size());
                algebras.push((n.into(), SchematizableType::ring(), Algebra::Ring(r)));
            }
            for n in 1..=input.bound.min(3) {
                for (i, x) in enumerate_posets(n, input.exec)?.into_iter().enumerate() {
                    spaces.push((format!("n={n} #{i}"), x));
                }
            }
        }
    }
    let mut items = Vec::new();
    for (n, t, a) in algebras {
        items.push(item(
            format!("adjunction {:?} {n}", t.kind).to_lowercase(),
            move || {
                let r = adjunction_check(t, &a, &guards)?;
                fail_if(!r.holds(), || format!("{r:?}"))
            },
        ));
    }
    for n in rings {
        items.push(item(format!("classical stalks Z/{n}"), move || {
            zmod_matches_classical(n, &guards)
        }));
    }
    for (n, x) in spaces {
        items.push(item(format!("C++ unit {n}"), move || {
            let t = tau_scheme(&x, &guards)?;
            let c = t.check(&guards)?;
            if !c.is_scheme() {
                return Ok(Some(format!("{c:?}")));
            }
            let r = adjunction_check_scheme(&t, &guards)?;
            fail_if(!(r.eta_valid && r.eta_iso && r.triangle_sections), || {
                format!("{r:?}")
            })
        }));
    }
    Ok(items)
}

fn f1_modules(max: usize) -> Vec<FinModule> {
    (1..=max)
        .map(|n| FinModule::over_f1(FinCim::chain(n)))
        .collect()
}

fn tensor_items(input: &VerifyInput) -> Result<Vec<Item>> {
    let guards = input.guards;
    let mods: Vec<(String, FinModule)> = match &input.document {
        Some(doc) => doc
            .blocks
            .iter()
            .filter_map(|(n, o)| match o {
                Object::Module { module, .. } => Some((n.clone(), module.clone())),
                _ => None,
            })
            .collect(),
        None => f1_modules(3)
            .into_iter()
            .map(|m| (format!("C{}", m.size()), m))
            .collect(),
    };
    let mut items = Vec::new();
    for (a, m) in &mods {
        for (b, n) in &mods {
            for (c, p) in &mods {
                if !(m.ring().unnamed() == n.ring().unnamed()
                    && n.ring().unnamed() == p.ring().unnamed())
                {
                    continue;
                }
                let (m, n, p) = (m.clone(), n.clone(), p.clone());
                items.push(item(
                    format!("Hom({a}(x){b}, {c}) = Hom({a}, Hom({b}, {c}))"),
                    move || {
                        let w = tensor_hom_adjunction_check(&m, &n, &p, &guards)?;
                        fail_if(!w.bijective, || {
                            format!(
                                "{} maps on the left, {} on the right",
                                w.left_size, w.right_size
                            )
                        })
                    },
                ));
            }
        }
    }
    if input.document.is_none() {
        items.push(item("C2 (x) C2 = C2", move || {
            let c2 = FinModule::over_f1(FinCim::chain(2));
            let t = tensor(&c2, &c2, &guards)?;
            fail_if(!t.module.is_isomorphic(&c2), || {
                format!("tensor has {} elements", t.module.size())
            })
        }));
        items.push(item("free(F1, 1) (x) M = M", move || {
            let f = free_module(&FinSemiring::chain(2), 1, &guards)?;
            for m in f1_modules(3) {
                let t = tensor(&f.module, &m, &guards)?;
                if !t.module.is_isomorphic(&m) {
                    return Ok(Some(format!("fails for a module of size {}", m.size())));
                }
            }
            Ok(None)
        }));
    }
    Ok(items)
}

/// Run one suite.
pub fn verify(suite: Suite, input: &VerifyInput) -> Result<VerificationReport> {
    let items = match suite {
        Suite::Duality => duality_items(input)?,
        Suite::Adjunction => adjunction_items(input)?,
        Suite::LocalizationOracle => localization_items(input)?,
        Suite::Sheaf => sheaf_items(input)?,
        Suite::Patching => patching_items(input)?,
        Suite::Tensor => tensor_items(input)?,
    };
    Ok(run(suite, items, input.exec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn localization_on_c3_document() {
        let doc = crate::text::parse(
            "semiring C3 { elements: 0 m 1; zero: 0; one: 1; \
             add: [[0, m, 1], [m, m, 1], [1, 1, 1]]; mul: [[0, 0, 0], [0, m, m], [0, m, 1]] }",
        )
        .unwrap();
        let input = VerifyInput {
            document: Some(doc),
            ..VerifyInput::default()
        };
        let r = verify(Suite::LocalizationOracle, &input).unwrap();
        assert!(r.all_pass() && r.passed == 1);
    }

    #[test]
    fn negative_sheaf_fixture_is_a_pass() {
        let r = verify(Suite::Sheaf, &VerifyInput::default()).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(r
            .checks
            .iter()
            .any(|c| c.name.contains("negative") && c.status == Status::Pass));
    }

    #[test]
    fn zmod_oracle() {
        for n in [4, 6, 12] {
            assert_eq!(zmod_matches_classical(n, &Guards::default()).unwrap(), None);
        }
    }
}
