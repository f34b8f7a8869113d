//! Properties of formulas and entailment, checked against the brute-force oracle.

mod common;

use hourglass::logic::dpll::Dpll;
use hourglass::logic::truth_table::TruthTable;
use hourglass::{parse_formula, Entailer, EntailmentEngine, Formula, Theory, Vocabulary};
use proptest::prelude::*;

const ATOMS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn atoms() -> Vec<String> {
    ATOMS.iter().map(|s| s.to_string()).collect()
}

fn vocab() -> Vocabulary {
    Vocabulary::from_names(ATOMS).unwrap()
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        8 => prop::sample::select(ATOMS.to_vec()).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

fn theory() -> impl Strategy<Value = Theory> {
    prop::collection::vec(formula(), 0..4).prop_map(|fs| fs.into_iter().collect())
}

fn engines() -> [&'static dyn EntailmentEngine; 2] {
    [&TruthTable, &Dpll]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_then_parse_is_identity(f in formula()) {
        let text = f.render();
        let back = parse_formula(&text, &vocab()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn engines_agree_with_oracle(t in theory(), f in formula()) {
        let v = vocab();
        let want = common::oracle_entails(t.formulas(), &f, &atoms());
        for e in engines() {
            prop_assert_eq!(Entailer::new(e, &v).entails(&t, &f).unwrap(), want, "engine {}", e.name());
        }
    }

    #[test]
    fn members_are_entailed(t in theory()) {
        let v = vocab();
        for e in engines() {
            let logic = Entailer::new(e, &v);
            for f in t.iter() {
                prop_assert!(logic.entails(&t, f).unwrap());
            }
            prop_assert!(logic.theory_entails(&t, &t).unwrap());
        }
    }

    #[test]
    fn entailment_is_monotone(t in theory(), extra in theory(), f in formula()) {
        let v = vocab();
        let logic = Entailer::new(&TruthTable, &v);
        if logic.entails(&t, &f).unwrap() {
            prop_assert!(logic.entails(&t.union(&extra), &f).unwrap());
        }
    }

    #[test]
    fn theory_entailment_is_transitive(a in theory(), b in theory(), c in theory()) {
        let v = vocab();
        for e in engines() {
            let logic = Entailer::new(e, &v);
            if logic.theory_entails(&a, &b).unwrap() && logic.theory_entails(&b, &c).unwrap() {
                prop_assert!(logic.theory_entails(&a, &c).unwrap());
            }
        }
    }

    #[test]
    fn contradiction_entails_everything(t in theory(), f in formula()) {
        let v = vocab();
        let mut t = t;
        t.insert(Formula::False);
        for e in engines() {
            prop_assert!(Entailer::new(e, &v).entails(&t, &f).unwrap());
        }
    }
}

#[test]
fn deep_formulas_round_trip() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let names = atoms();
    for _ in 0..300 {
        let f = common::random_formula(&mut rng, &names, 8);
        assert_eq!(parse_formula(&f.render(), &vocab()).unwrap(), f);
    }
}
