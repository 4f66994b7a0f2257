use proptest::prelude::*;
use topcube::families::{classify_mask, family_count};
use topcube::logic::{
    certify_exclusion, holds, parse_corpus, parse_sentence, to_universal, Formula, Structure, Term, CORPUS,
};
use topcube::witnesses::separate_lattice;
use topcube::{FiniteFamily, GroundSet};

const VARS: [&str; 3] = ["x", "y", "z"];

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(&VARS[..]).prop_map(Term::var),
        Just(Term::Zero),
        Just(Term::One),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join(a, b)),
            inner.prop_map(Term::compl),
        ]
    })
}

fn matrix() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        term().prop_map(Formula::P),
        (term(), term()).prop_map(|(a, b)| Formula::Eq(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::Leq(a, b)),
    ];
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (prop::sample::select(&VARS[..]), any::<bool>(), inner).prop_map(|(v, all, body)| {
                if all {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }),
        ]
    })
}

/// Closes a matrix with a quantifier prefix over all three variables.
fn sentence() -> impl Strategy<Value = Formula> {
    (matrix(), prop::collection::vec(any::<bool>(), 3)).prop_map(|(m, kinds)| {
        VARS.iter().zip(kinds).rev().fold(m, |body, (v, all)| {
            if all {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            }
        })
    })
}

proptest! {
    #[test]
    fn print_then_parse(f in sentence()) {
        let text = f.to_string();
        prop_assert_eq!(parse_sentence(&text).unwrap(), f);
    }

    #[test]
    fn universal_form_keeps_truth(f in sentence()) {
        if let Ok(u) = to_universal(&f) {
            for m in 0..family_count(2) {
                let s = Structure::from_mask(2, m).unwrap();
                prop_assert_eq!(holds(&s, &f).unwrap(), holds(&s, &u).unwrap(), "{} vs {}", f, u);
            }
        }
    }
}

#[test]
fn corpus_universal_forms_keep_truth() {
    let mut universal = 0;
    for e in parse_corpus(CORPUS).unwrap() {
        let Ok(u) = to_universal(&e.formula) else { continue };
        universal += 1;
        for n in 1..=2u8 {
            for m in 0..family_count(n) {
                let s = Structure::from_mask(n, m).unwrap();
                assert_eq!(holds(&s, &e.formula).unwrap(), holds(&s, &u).unwrap(), "{}", e.text);
            }
        }
    }
    assert!(universal >= 6);
}

#[test]
fn lattice_axioms_and_direct_witness_agree() {
    let axioms = [
        "forall x. forall y. P(x) and P(y) -> P(x | y)",
        "forall x. forall y. P(x) and P(y) -> P(x & y)",
    ]
    .map(|s| parse_sentence(s).unwrap());
    for n in 1..=3u8 {
        let lattices: Vec<u64> = (0..family_count(n)).filter(|&m| classify_mask(n, m).lattice).collect();
        let admits = |nb: &topcube::Neighborhood, m: u64| nb.contains(&FiniteFamily::from_mask(n, m));
        for m in 0..family_count(n) {
            let s = Structure::from_mask(n, m).unwrap();
            for ax in &axioms {
                if holds(&s, ax).unwrap() {
                    continue;
                }
                let c = certify_exclusion(ax, &s).unwrap();
                assert!(admits(&c.neighborhood, m));
                assert!(lattices.iter().all(|&l| !admits(&c.neighborhood, l)));
            }
            if !classify_mask(n, m).lattice {
                let w = separate_lattice(&FiniteFamily::from_mask(n, m)).unwrap();
                assert!(lattices.iter().all(|&l| !admits(&w.neighborhood, l)));
                let both_fail = axioms.iter().any(|ax| !holds(&s, ax).unwrap());
                assert!(both_fail, "mask {m:#x} is outside Lat but satisfies both axioms");
            }
        }
    }
}

#[test]
fn join_certificate_matches_known_neighborhood() {
    let ax = parse_sentence("forall x. forall y. (P(x) and P(y)) -> P(x | y)").unwrap();
    let s = Structure::new(&FiniteFamily::finite(2, &[&[0], &[1]]).unwrap()).unwrap();
    let c = certify_exclusion(&ax, &s).unwrap();
    let fin = |e: &[u64]| GroundSet::finite(2, e).unwrap();
    assert_eq!(c.neighborhood.pos(), &[fin(&[0]), fin(&[1])]);
    assert_eq!(c.neighborhood.neg(), &[fin(&[0, 1])]);
}
