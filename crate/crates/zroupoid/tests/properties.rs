//! Property tests for the term language and the checking machinery.

use proptest::prelude::*;

use zroupoid::term::{parse_statement, parse_term, Identity, Statement, Term};

fn arb_var() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => "[a-z]".prop_map(Term::var),
        1 => "[a-z][a-z0-9_]{0,5}".prop_map(Term::var),
    ]
}

/// Terms of depth at most 8.
fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![arb_var(), Just(Term::Zero)];
    leaf.prop_recursive(8, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Term::arrow(l, r)),
            inner.prop_map(Term::prime),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_parse_round_trip(t in arb_term()) {
        let printed = t.to_string();
        let parsed = parse_term(&printed);
        prop_assert_eq!(parsed.as_ref(), Ok(&t), "printed as {}", printed);
    }
}

proptest! {
    #[test]
    fn identity_statements_round_trip(l in arb_term(), r in arb_term()) {
        let st = Statement::Identity(Identity::new(l, r));
        let parsed = parse_statement(&st.to_string());
        prop_assert_eq!(parsed.as_ref(), Ok(&st));
    }

    #[test]
    fn quasi_statements_round_trip(
        premises in prop::collection::vec((arb_term(), arb_term()), 1..4),
        c in (arb_term(), arb_term()),
    ) {
        let st = Statement::Quasi {
            premises: premises
                .into_iter()
                .map(|(l, r)| Identity::new(l, r))
                .collect(),
            conclusion: Identity::new(c.0, c.1),
        };
        let parsed = parse_statement(&st.to_string());
        prop_assert_eq!(parsed.as_ref(), Ok(&st));
    }

    /// `a <= b` must parse to exactly the statement `(a -> b')' = a` for
    /// arbitrary sub-terms a and b.
    #[test]
    fn order_sugar_is_sound(a in arb_term(), b in arb_term()) {
        let sugared = format!("{a} <= {b}");
        let expanded = format!("(({a}) -> ({b})')' = {a}");
        prop_assert_eq!(
            parse_statement(&sugared).unwrap(),
            parse_statement(&expanded).unwrap()
        );
    }

    /// Parsed terms never contain a bare prime: priming is always the arrow
    /// into zero, so free variables and evaluation see one connective.
    #[test]
    fn free_vars_are_deterministic_and_deduplicated(t in arb_term()) {
        let vars = t.free_vars();
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), vars.len());
        prop_assert_eq!(t.free_vars(), vars);
    }
}
