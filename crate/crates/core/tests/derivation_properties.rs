use grammarcalc::catalog::catalog;
use grammarcalc::{Grammar, Monomial, Poly, Rational, Symbol};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Random Laurent polynomials over `alphabet` with small rational coefficients.
fn arb_poly(alphabet: Vec<Symbol>) -> impl Strategy<Value = Poly> {
    let letters = alphabet.len();
    let term = (
        -6i64..=6,
        1i64..=4,
        prop::collection::vec((0..letters, -2i32..=3), 0..4),
    );
    prop::collection::vec(term, 0..4).prop_map(move |terms| {
        Poly::from_terms(terms.into_iter().map(|(n, d, exps)| {
            let m = Monomial::from_pairs(exps.into_iter().map(|(i, e)| (alphabet[i], e))).unwrap();
            (m, Rational::new(n, d))
        }))
    })
}

fn for_each_grammar(
    cases: u32,
    check: impl Fn(&Grammar, &Poly, &Poly) -> Result<(), TestCaseError>,
) {
    for entry in catalog() {
        let alphabet: Vec<Symbol> = entry.grammar.alphabet().into_iter().collect();
        let mut runner = TestRunner::new(Config {
            failure_persistence: None,
            ..Config::with_cases(cases)
        });
        let pair = (arb_poly(alphabet.clone()), arb_poly(alphabet));
        runner
            .run(&pair, |(f, g)| check(&entry.grammar, &f, &g))
            .unwrap_or_else(|e| panic!("{}: {e}", entry.key));
    }
}

#[test]
fn leibniz_rule_for_every_catalog_grammar() {
    for_each_grammar(1000, |grammar, f, g| {
        let lhs = grammar.derive_once(&(f * g)).unwrap();
        let rhs = &(&grammar.derive_once(f).unwrap() * g) + &(f * &grammar.derive_once(g).unwrap());
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
}

#[test]
fn derivative_is_linear_for_every_catalog_grammar() {
    for_each_grammar(1000, |grammar, f, g| {
        let c = Rational::new(-3, 2);
        let combo = &f.scale(&c) + g;
        let lhs = grammar.derive_once(&combo).unwrap();
        let rhs = &grammar.derive_once(f).unwrap().scale(&c) + &grammar.derive_once(g).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
}

#[test]
fn second_order_leibniz_rule() {
    for_each_grammar(200, |grammar, f, g| {
        let d = |p: &Poly| grammar.derive_once(p).unwrap();
        let (df, dg) = (d(f), d(g));
        let lhs = grammar.derive_n(&(f * g), 2).unwrap();
        let rhs =
            &(&(&d(&df) * g) + &(&df * &dg).scale(&Rational::from_integer(2))) + &(f * &d(&dg));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
}

#[test]
fn constants_are_annihilated() {
    for entry in catalog() {
        let c = Poly::constant(Rational::new(7, 3));
        assert!(
            entry.grammar.derive_once(&c).unwrap().is_zero(),
            "{}",
            entry.key
        );
    }
}
