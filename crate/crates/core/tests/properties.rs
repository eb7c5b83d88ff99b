use proptest::prelude::*;

use idemspec::congruence::{congruence_closure, quotient};
use idemspec::enumerate::{enumerate_posets, enumerate_semirings};
use idemspec::fixtures;
use idemspec::localization::{localize, radical, MultSystem};
use idemspec::spectrum::{duality_check_space, spec};
use idemspec::text::{emit, parse, Document, Object};
use idemspec::topology::{closed_set_semiring, soberify};
use idemspec::{Execution, FinSemiring, FinTop};

fn pool() -> Vec<FinSemiring> {
    let mut v: Vec<FinSemiring> = fixtures::corpus().into_iter().map(|(_, r)| r).collect();
    for n in 1..=4 {
        v.extend(enumerate_semirings(n, Execution::Sequential).unwrap());
    }
    v
}

fn spaces() -> Vec<FinTop> {
    (1..=4)
        .flat_map(|n| enumerate_posets(n, Execution::Sequential).unwrap())
        .collect()
}

fn semiring_and_pairs() -> impl Strategy<Value = (FinSemiring, Vec<(usize, usize)>)> {
    prop::sample::select(pool()).prop_flat_map(|r| {
        let n = r.size();
        (Just(r), prop::collection::vec((0..n, 0..n), 0..4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_extensive_and_idempotent((r, pairs) in semiring_and_pairs()) {
        let c = congruence_closure(&r, &pairs);
        for &(a, b) in &pairs {
            prop_assert!(c.related(a, b));
        }
        let again = congruence_closure(&r, &c.pairs());
        prop_assert_eq!(again, c.clone());
        // monotone: dropping a pair gives a finer congruence
        if let Some((_, rest)) = pairs.split_first() {
            prop_assert!(c.contains(&congruence_closure(&r, rest)));
        }
    }

    #[test]
    fn quotient_map_is_a_hom_with_saturated_classes((r, pairs) in semiring_and_pairs()) {
        let q = quotient(&congruence_closure(&r, &pairs)).unwrap();
        prop_assert!(r.is_hom_to(&q.quotient, &q.pi));
        for a in r.elements() {
            let s = q.saturation(a);
            prop_assert!(r.leq(a, s));
            prop_assert_eq!(q.saturation(s), s);
            prop_assert_eq!(q.project(s), q.project(a));
        }
    }

    #[test]
    fn localization_inverts_the_system((r, gens) in semiring_and_pairs()) {
        let gens: Vec<usize> = gens.iter().map(|p| p.0).collect();
        let sigma = MultSystem::generated(&r, &gens);
        let l = localize(&r, &sigma).unwrap();
        for &s in sigma.members() {
            prop_assert_eq!(l.project(s), l.project(r.one()));
        }
    }

    #[test]
    fn radical_is_a_closure(r in prop::sample::select(pool())) {
        prop_assume!(r.is_idealic());
        for a in r.elements() {
            let ra = radical(&r, a);
            prop_assert!(r.leq(a, ra));
            prop_assert_eq!(radical(&r, ra), ra);
        }
    }

    #[test]
    fn spectra_of_closed_set_semirings(x in prop::sample::select(spaces())) {
        let d = duality_check_space(&x).unwrap();
        prop_assert!(d.homeomorphism);
        let s = spec(&closed_set_semiring(&x)).unwrap();
        prop_assert_eq!(s.space.size(), x.size());
        // finite T0 spaces are sober
        prop_assert_eq!(soberify(&x).space.size(), x.size());
    }

    #[test]
    fn text_round_trip(
        r in prop::sample::select(pool()),
        x in prop::sample::select(spaces()),
        names in prop::collection::vec("[a-z{}\\[\\] #\"]{1,4}", 4),
    ) {
        let mut names = names;
        names.sort();
        names.dedup();
        prop_assume!(names.len() == 4);
        let mut doc = Document::default();
        let renamed = r.clone().with_names(names[..r.size()].to_vec()).unwrap();
        doc.push("R", Object::Semiring(renamed));
        doc.push("X", Object::Top(x));
        let text = emit(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(emit(&back), text);
    }
}
