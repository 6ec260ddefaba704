//! Acceptance suite: one test per criterion, each ending with a PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use zroupoid::algebra::{axioms, FiniteZroupoid};
use zroupoid::chain::build_chain;
use zroupoid::enumeration::{
    are_isomorphic, canonical_form, enumerate_chains, enumerate_i20,
};
use zroupoid::lemmas::{
    builtin_catalog, chain_universe, equivalence_check, i20_universe, run_catalog,
    UniverseAlgebra,
};
use zroupoid::order::{leq, order_report};
use zroupoid::term::{parse_statement, parse_term, Term};

fn pass(n: usize, what: &str) {
    println!("criterion {n}: PASS — {what}");
}

/// Tables transcribed digit by digit from the worked examples; entries are
/// indices under the mapping value -> value + neg.
fn golden_tables() -> Vec<(usize, usize, usize, Vec<Vec<usize>>)> {
    vec![
        (
            2,
            3,
            2,
            vec![
                vec![0, 0, 0, 0, 0, 0],
                vec![0, 1, 1, 1, 1, 1],
                vec![0, 1, 5, 5, 5, 5],
                vec![0, 1, 4, 4, 4, 5],
                vec![0, 1, 3, 3, 4, 5],
                vec![0, 1, 2, 3, 4, 5],
            ],
        ),
        (0, 1, 0, vec![vec![1, 1], vec![0, 1]]),
        (1, 0, 1, vec![vec![0, 0], vec![0, 1]]),
        (0, 2, 0, vec![vec![2, 2, 2], vec![1, 1, 2], vec![0, 1, 2]]),
        (1, 1, 1, vec![vec![0, 0, 0], vec![0, 2, 2], vec![0, 1, 2]]),
        (2, 0, 2, vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]),
    ]
}

#[test]
fn acceptance_01_golden_tables() {
    for (neg, pos, zero, rows) in golden_tables() {
        let expected = FiniteZroupoid::new(rows.len(), zero, rows).unwrap();
        let built = build_chain(neg, pos);
        assert_eq!(built, expected, "chain({neg},{pos})");
    }
    pass(1, "construction reproduces all printed tables bit-exactly");
}

#[test]
fn acceptance_02_counting_theorem() {
    for k in 1..=6usize {
        let found = enumerate_chains(k).unwrap();
        assert_eq!(found.len(), k, "expected {k} chains of size {k}");

        // each found chain is isomorphic to exactly one constructed shape
        let models: Vec<FiniteZroupoid> =
            (0..k).map(|neg| build_chain(neg, k - 1 - neg)).collect();
        for alg in &found {
            let matches = models
                .iter()
                .filter(|m| are_isomorphic(alg, m).isomorphic)
                .count();
            assert_eq!(matches, 1);
        }
        // and the canonical-form sets coincide
        let found_set: BTreeSet<FiniteZroupoid> = found.into_iter().collect();
        let model_set: BTreeSet<FiniteZroupoid> = models
            .iter()
            .map(|m| canonical_form(m).unwrap())
            .collect();
        assert_eq!(found_set, model_set);
    }
    pass(2, "independent search finds exactly k chains of size k, k = 1..6");
}

#[test]
fn acceptance_03_membership_verification() {
    let identity = parse_statement(axioms::I).unwrap();
    let identity0 = parse_statement(axioms::I0).unwrap();
    for size in 1..=8usize {
        for neg in 0..size {
            let alg = build_chain(neg, size - 1 - neg);
            assert!(alg.check_statement(&identity).holds());
            assert!(alg.check_statement(&identity0).holds());
        }
    }
    pass(3, "both defining identities hold on every constructed chain up to size 8");
}

#[test]
fn acceptance_04_order_isomorphism() {
    for size in 1..=8usize {
        for neg in 0..size {
            let alg = build_chain(neg, size - 1 - neg);
            // index order is value order, so leq must be index order
            for x in 0..size {
                for y in 0..size {
                    assert_eq!(leq(&alg, x, y), x <= y, "chain({neg},{}), {x} vs {y}", size - 1 - neg);
                }
            }
        }
    }
    pass(4, "the relation coincides with the integer order on every constructed chain up to size 8");
}

#[test]
fn acceptance_05_lemma_catalog() {
    let catalog = builtin_catalog();
    assert!(catalog.len() >= 55, "catalog holds {} checks", catalog.len());

    let chains = chain_universe(8);
    let report = run_catalog(&chains, &catalog);
    assert!(
        report.all_passed(),
        "failures on chains: {:?}",
        report
            .failures()
            .map(|e| format!("{} on {}", e.check_id, e.algebra))
            .collect::<Vec<_>>()
    );
    let applied_chains = report.summary.applied;

    let i20_small = i20_universe(3).unwrap();
    let report = run_catalog(&i20_small, &catalog);
    assert!(report.all_passed());
    let applied_small = report.summary.applied;

    let i20_four = i20_universe(4).unwrap();
    let report = run_catalog(&i20_four, &catalog);
    assert!(report.all_passed());

    pass(
        5,
        &format!(
            "all {} catalogued checks pass on chains <= 8 ({applied_chains} applications), on the exhaustive universes of size <= 3 ({applied_small}), and of size 4",
            catalog.len()
        ),
    );
}

#[test]
fn acceptance_06_partial_order_theorem() {
    let mut universes = chain_universe(8);
    universes.extend(i20_universe(3).unwrap());
    universes.extend(i20_universe(4).unwrap());
    for ua in &universes {
        let report = order_report(&ua.algebra);
        assert!(
            report.is_partial_order(),
            "order broken on {}",
            ua.name
        );
    }
    pass(6, "the relation is a partial order on every model in the test universes");
}

#[test]
fn acceptance_07_maximality_witness() {
    let fixture = include_str!("../fixtures/constant_zero_2.json");
    let witness =
        FiniteZroupoid::from_json(serde_json::from_str(fixture).unwrap()).unwrap();
    assert_eq!(
        witness,
        FiniteZroupoid::new(2, 0, vec![vec![0, 0], vec![0, 0]]).unwrap()
    );
    let m = witness.variety_memberships();
    assert!(m.i, "witness satisfies both defining identities");
    assert!(!m.i20, "witness escapes the involutive subvariety");
    let inv = witness
        .check_statement(&parse_statement(axioms::I20).unwrap());
    assert!(!inv.holds());
    assert_eq!(inv.witness.unwrap()[0].value, 1);
    assert!(!leq(&witness, 1, 1), "relation is not reflexive at 1");

    // rediscover: scan all 16 two-element tables with zero at index 0
    let mut rediscovered = Vec::new();
    for bits in 0..16usize {
        let rows = vec![
            vec![bits & 1, (bits >> 1) & 1],
            vec![(bits >> 2) & 1, (bits >> 3) & 1],
        ];
        let alg = FiniteZroupoid::new(2, 0, rows).unwrap();
        let m = alg.variety_memberships();
        if m.i && !m.i20 {
            assert!(
                !order_report(&alg).reflexive.holds(),
                "non-involutive model must break reflexivity"
            );
            rediscovered.push(alg);
        }
    }
    assert!(rediscovered.contains(&witness));
    pass(
        7,
        &format!(
            "the constant-zero witness separates the varieties and is rediscovered among {} two-element candidates",
            rediscovered.len()
        ),
    );
}

#[test]
fn acceptance_08_involutivity_equivalence() {
    let identity = parse_statement(axioms::I).unwrap();
    let identity0 = parse_statement(axioms::I0).unwrap();
    let mut universe = Vec::new();
    for size in 1..=3usize {
        let cells = size * size;
        let total = size.pow(cells as u32);
        for code in 0..total {
            let mut rest = code;
            let mut rows = vec![vec![0usize; size]; size];
            for cell in 0..cells {
                rows[cell / size][cell % size] = rest % size;
                rest /= size;
            }
            let alg = FiniteZroupoid::new(size, 0, rows).unwrap();
            if alg.check_statement(&identity).holds() && alg.check_statement(&identity0).holds() {
                universe.push(UniverseAlgebra::new(format!("scan{size}#{code}"), alg));
            }
        }
    }
    assert!(universe.len() > 16, "scan found {} models", universe.len());
    let entries = equivalence_check(&universe).expect("all-or-none verdicts");
    assert_eq!(entries.len(), universe.len());
    pass(
        8,
        &format!(
            "the four involutivity conditions agree on all {} models from the exhaustive scan",
            entries.len()
        ),
    );
}

#[test]
fn acceptance_09_greatest_element() {
    let mut universes = chain_universe(8);
    universes.extend(i20_universe(3).unwrap());
    universes.extend(i20_universe(4).unwrap());
    for ua in &universes {
        let alg = &ua.algebra;
        assert!(alg.variety_memberships().i20, "{} in universe", ua.name);
        let top = alg.prime(alg.zero());
        for x in 0..alg.size() {
            assert!(leq(alg, x, top), "{}: {x} below the top", ua.name);
        }
    }
    pass(9, "the prime of zero dominates every element in every test model");
}

#[test]
fn acceptance_10_parser_round_trip() {
    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            "[a-z]".prop_map(Term::var),
            "[a-z][a-z0-9_]{0,5}".prop_map(Term::var),
            Just(Term::Zero),
        ];
        leaf.prop_recursive(8, 64, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::arrow(l, r)),
                inner.prop_map(Term::prime),
            ]
        })
    }
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        ..Config::default()
    });
    runner
        .run(&arb_term(), |t| {
            let parsed = parse_term(&t.to_string());
            prop_assert_eq!(parsed.as_ref(), Ok(&t));
            Ok(())
        })
        .unwrap();
    pass(10, "1000 random terms of depth <= 8 survive print-then-parse unchanged");
}
