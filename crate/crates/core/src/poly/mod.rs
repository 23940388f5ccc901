//! Exact Laurent-polynomial and truncated power-series arithmetic.

mod monomial;
mod parse;
mod polynomial;
mod rational;
mod series;
mod symbol;

pub use monomial::Monomial;
pub use parse::parse_poly;
pub(crate) use parse::{syntax, tokenize, Parser, Tok};
pub use polynomial::Poly;
pub use rational::{ParseRationalError, Rational};
pub use series::factorial;
pub use series::TruncatedSeries;
pub use symbol::Symbol;

/// Shorthand for interning a symbol.
pub fn sym(name: &str) -> Symbol {
    Symbol::new(name)
}

#[cfg(test)]
mod props {
    use std::collections::BTreeMap;

    use proptest::prelude::*;

    use super::*;

    const NAMES: [&str; 4] = ["x", "y", "z", "q"];

    pub(crate) fn arb_poly() -> impl Strategy<Value = Poly> {
        let term = (
            -5i64..=5,
            1i64..=3,
            prop::collection::vec((0usize..NAMES.len(), -3i32..=4), 0..3),
        );
        prop::collection::vec(term, 0..5).prop_map(|terms| {
            Poly::from_terms(terms.into_iter().map(|(n, d, exps)| {
                let m = Monomial::from_pairs(exps.into_iter().map(|(i, e)| (sym(NAMES[i]), e)))
                    .unwrap();
                (m, Rational::new(n, d))
            }))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn product_rule(a in arb_poly(), b in arb_poly()) {
            for v in NAMES.map(sym) {
                let lhs = (&a * &b).partial_derivative(v);
                let rhs = &(&a.partial_derivative(v) * &b) + &(&a * &b.partial_derivative(v));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(parse_poly(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn substitution_composes(a in arb_poly()) {
            let one = Poly::one();
            let y = BTreeMap::from([(sym("y"), one.clone())]);
            let z = BTreeMap::from([(sym("z"), one.clone())]);
            let yz = BTreeMap::from([(sym("y"), one.clone()), (sym("z"), one)]);
            let step = a.substitute(&y).unwrap().substitute(&z).unwrap();
            prop_assert_eq!(step, a.substitute(&yz).unwrap());
        }

        #[test]
        fn exact_division_recovers_factor(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b).unwrap(), Some(a));
        }
    }

    fn arb_series() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(arb_poly(), 1..6)
            .prop_map(|cs| TruncatedSeries::new(sym("t"), cs).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn reciprocal_round_trip(s in arb_series(), lead in arb_poly(), num in arb_poly()) {
            // Make the constant term invertible so division is always exact.
            prop_assume!(lead.as_single_term().is_some());
            let mut cs = s.coeffs().to_vec();
            cs[0] = lead;
            let s = TruncatedSeries::new(sym("t"), cs).unwrap();
            let r = s.reciprocal(&num).unwrap();
            let back = s.mul(&r).unwrap();
            let expect = TruncatedSeries::constant(sym("t"), s.order(), num).unwrap();
            prop_assert_eq!(back, expect);
        }
    }
}
