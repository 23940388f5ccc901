//! Formal derivatives attached to context-free grammars.
//!
//! A grammar maps letters to Laurent polynomials. The derivative `D` it
//! defines is the unique derivation with `D(v) = G(v)` on letters, so on a
//! term `c * prod v_i^e_i` it expands by the Leibniz rule into
//! `sum_i e_i * c * v_i^(e_i - 1) * G(v_i) * (rest)`. The power rule holds
//! verbatim for negative exponents.

mod dsl;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational, Symbol};

pub use dsl::parse_grammar;

#[derive(Clone, PartialEq, Eq)]
pub struct Grammar {
    name: String,
    rules: BTreeMap<Symbol, Poly>,
    strict: bool,
}

impl Grammar {
    /// Lenient grammar: letters without a rule are constants.
    pub fn new<I>(name: impl Into<String>, rules: I) -> Result<Grammar>
    where
        I: IntoIterator<Item = (Symbol, Poly)>,
    {
        let mut map = BTreeMap::new();
        for (s, rhs) in rules {
            if map.insert(s, rhs).is_some() {
                return Err(Error::DuplicateRule(s.to_string()));
            }
        }
        Ok(Grammar {
            name: name.into(),
            rules: map,
            strict: false,
        })
    }

    /// Strict grammars reject letters without a rule instead of treating
    /// them as constants.
    pub fn strict(mut self, strict: bool) -> Grammar {
        self.strict = strict;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Grammar {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn rules(&self) -> &BTreeMap<Symbol, Poly> {
        &self.rules
    }

    pub fn rule(&self, s: Symbol) -> Option<&Poly> {
        self.rules.get(&s)
    }

    /// Every letter that has a rule or occurs on a right-hand side.
    pub fn alphabet(&self) -> BTreeSet<Symbol> {
        let mut a: BTreeSet<Symbol> = self.rules.keys().copied().collect();
        for rhs in self.rules.values() {
            a.extend(rhs.symbols());
        }
        a
    }

    /// One application of `D`.
    pub fn derive_once(&self, p: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (m, c) in p.terms() {
            for (v, e) in m.iter() {
                let Some(rhs) = self.rules.get(&v) else {
                    if self.strict {
                        return Err(Error::UnruledSymbol {
                            grammar: self.name.clone(),
                            symbol: v.to_string(),
                        });
                    }
                    continue;
                };
                let rest = m.shift(v, -1)?;
                let coeff = c * &Rational::from_integer(e as i64);
                for (rm, rc) in rhs.terms() {
                    acc.add_term(rest.mul(rm)?, &(&coeff * rc));
                }
            }
        }
        Ok(acc)
    }

    /// `D^n(seed)`.
    pub fn derive_n(&self, seed: &Poly, n: usize) -> Result<Poly> {
        let mut p = seed.clone();
        for _ in 0..n {
            p = self.derive_once(&p)?;
        }
        Ok(p)
    }

    /// `[seed, D(seed), ..., D^n(seed)]`.
    pub fn derivatives(&self, seed: &Poly, n: usize) -> Result<Vec<Poly>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(seed.clone());
        for i in 0..n {
            let next = self.derive_once(&out[i])?;
            out.push(next);
        }
        Ok(out)
    }
}

impl fmt::Display for Grammar {
    /// DSL form, one rule per line: `x -> x*y;`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, rhs) in &self.rules {
            if !first {
                f.write_str("\n")?;
            }
            first = false;
            write!(f, "{s} -> {rhs};")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Grammar({:?}, {{{}}})",
            self.name,
            self.to_string().replace('\n', " ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, sym};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn g(text: &str) -> Grammar {
        parse_grammar(text).unwrap()
    }

    #[test]
    fn dumont_first_step() {
        let dumont = g("x -> x*y; y -> x*y");
        assert_eq!(dumont.derive_once(&p("x")).unwrap(), p("x*y"));
    }

    #[test]
    fn type_b_q_grammar_on_xy() {
        let g3 = g("x -> q*x*y*u; y -> x*y*z; z -> y*z*u; u -> q*x*z*u");
        assert_eq!(g3.derive_once(&p("x*y")).unwrap(), p("x^2*y*z + q*x*y^2*u"));
    }

    #[test]
    fn laurent_rule_on_z4() {
        let d = g("x -> x*y^2; y -> x^2*y; z -> x^2*y^2*z^-3; e -> e*z^4");
        assert_eq!(d.derive_once(&p("z^4")).unwrap(), p("4*x^2*y^2"));
        assert_eq!(d.derive_n(&p("e"), 2).unwrap(), p("e*z^8 + 4*e*x^2*y^2"));
    }

    #[test]
    fn runs_grammar_second_derivative() {
        let t = g("x |-> x*y^2; y |-> y*z^2; z |-> y^4*z^-1");
        assert_eq!(
            t.derive_once(&p("x^3*y")).unwrap(),
            p("x^3*y*z^2 + 3*x^3*y^3")
        );
        assert_eq!(
            t.derive_n(&p("x^3*y"), 2).unwrap(),
            p("x^3*y*z^4 + 12*x^3*y^3*z^2 + 11*x^3*y^5")
        );
    }

    #[test]
    fn zero_steps_is_identity() {
        let t = g("x -> x*y");
        let seed = p("3*x^-2 + q");
        assert_eq!(t.derive_n(&seed, 0).unwrap(), seed);
    }

    #[test]
    fn unruled_symbols() {
        let lenient = g("x -> q*x*y; y -> y*z; z -> y*z");
        assert_eq!(lenient.derive_once(&p("q")).unwrap(), Poly::zero());
        assert_eq!(lenient.derive_once(&p("x")).unwrap(), p("q*x*y"));
        let strict = lenient.clone().strict(true);
        assert_eq!(strict.derive_once(&p("x")).unwrap(), p("q*x*y"));
        assert!(matches!(
            strict.derive_n(&p("x"), 2),
            Err(Error::UnruledSymbol { ref symbol, .. }) if symbol == "q"
        ));
    }

    #[test]
    fn exponent_overflow_surfaces() {
        let t = g("x -> x^2");
        let big = Poly::term(1, crate::poly::Monomial::power(sym("x"), i32::MAX));
        assert!(matches!(
            t.derive_once(&big),
            Err(Error::ExponentOverflow(_))
        ));
    }

    #[test]
    fn dumont_degrees_grow_by_one() {
        let dumont = g("x -> x*y; y -> x*y");
        for (n, d) in dumont.derivatives(&p("x"), 8).unwrap().iter().enumerate() {
            assert!(d.terms().all(|(m, _)| m.total_degree() == n as i64 + 1));
        }
    }
}
