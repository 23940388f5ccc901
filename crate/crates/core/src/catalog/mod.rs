//! Built-in grammars with their seeds and claimed expansions.

mod claim;

use std::ops::RangeInclusive;
use std::sync::OnceLock;

pub use claim::{Affine, Claim, Closed, Rhs, RhsKind, Source};

use crate::error::{Error, Result};
use crate::grammar::{parse_grammar, Grammar};
use crate::oracle::{Bounds, Family, Filter, Stat};
use crate::poly::{parse_poly, sym, Poly, Rational};
use crate::recurrences::{FamilyName, Tables, TriangleName};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub grammar: Grammar,
    pub seeds: Vec<Poly>,
    pub claims: Vec<Claim>,
}

/// Default upper limits of claim ranges.
const TRIANGLE_N: usize = 12;
const ORACLE_SYM_N: usize = 7;
const ORACLE_HYP_N: usize = 6;

fn p(text: &str) -> Poly {
    parse_poly(text).expect("catalog polynomial parses")
}

struct Draft {
    label: String,
    seed: Poly,
    n_range: RangeInclusive<usize>,
    prefactor: Poly,
    power_of_two: (i64, i64),
}

fn claim(label: &str, seed: &str, n_range: RangeInclusive<usize>) -> Draft {
    Draft {
        label: label.to_string(),
        seed: p(seed),
        n_range,
        prefactor: Poly::one(),
        power_of_two: (0, 0),
    }
}

type ExponentSpec<'a> = (&'a str, i64, i64, &'a [i64]);

fn exponents(spec: &[ExponentSpec<'_>]) -> Vec<(crate::poly::Symbol, Affine)> {
    spec.iter()
        .map(|&(s, constant, per_n, per_index)| {
            (
                sym(s),
                Affine {
                    constant,
                    per_n,
                    per_index: per_index.to_vec(),
                },
            )
        })
        .collect()
}

impl Draft {
    fn times(mut self, prefactor: &str) -> Draft {
        self.prefactor = p(prefactor);
        self
    }

    /// Multiplies by `2^(a n + b)`.
    fn pow2(mut self, a: i64, b: i64) -> Draft {
        self.power_of_two = (a, b);
        self
    }

    fn finish(self, bindings: Vec<(crate::poly::Symbol, Rational)>, rhs: Rhs) -> Claim {
        Claim {
            label: self.label,
            seed: self.seed,
            n_range: self.n_range,
            bindings,
            prefactor: self.prefactor,
            power_of_two: self.power_of_two,
            rhs,
        }
    }

    fn triangle(self, name: TriangleName, row_offset: usize, spec: &[ExponentSpec<'_>]) -> Claim {
        let rhs = Rhs::Sum {
            source: Source::Triangle { name, row_offset },
            exponents: exponents(spec),
        };
        self.finish(Vec::new(), rhs)
    }

    fn derangements(self, spec: &[ExponentSpec<'_>]) -> Claim {
        let rhs = Rhs::Sum {
            source: Source::Derangements,
            exponents: exponents(spec),
        };
        self.finish(Vec::new(), rhs)
    }

    fn oracle(
        self,
        family: Family,
        filter: Filter,
        size_offset: usize,
        stats: &[Stat],
        spec: &[ExponentSpec<'_>],
    ) -> Claim {
        let rhs = Rhs::Sum {
            source: Source::Oracle {
                family,
                filter,
                size_offset,
                stats: stats.to_vec(),
            },
            exponents: exponents(spec),
        };
        self.finish(Vec::new(), rhs)
    }

    fn specialize(
        self,
        bindings: &[(&str, i64)],
        closed: Closed,
        n_offset: usize,
        rename: &[(&str, &str)],
    ) -> Claim {
        let bindings = bindings
            .iter()
            .map(|&(s, v)| (sym(s), Rational::from_integer(v)))
            .collect();
        let rhs = Rhs::Specialization {
            closed,
            n_offset,
            rename: rename.iter().map(|&(s, v)| (sym(s), p(v))).collect(),
        };
        self.finish(bindings, rhs)
    }
}

fn entry(key: &'static str, rules: &str, seeds: &[&str], claims: Vec<Claim>) -> CatalogEntry {
    let grammar = parse_grammar(rules)
        .expect("catalog grammar parses")
        .with_name(key);
    CatalogEntry {
        key,
        grammar,
        seeds: seeds.iter().map(|s| p(s)).collect(),
        claims,
    }
}

fn build() -> Vec<CatalogEntry> {
    use Family::{Hyp, Sym};
    use Filter::{Derangement, Up};
    use TriangleName::*;
    let none = Filter::None;
    let a_range = |lo| lo..=ORACLE_SYM_N;
    let b_range = |lo| lo..=ORACLE_HYP_N;
    let t_range = |lo| lo..=TRIANGLE_N;
    let derangement_rules = "x -> x*y^2; y -> x^2*y; z -> x^2*y^2*z^-3;";

    vec![
        entry(
            "eulerian-dumont",
            "x -> x*y; y -> x*y",
            &["x"],
            vec![
                claim("D^n(x) = x sum <n,k> x^k y^(n-k)", "x", t_range(1))
                    .triangle(EulerA, 0, &[("x", 1, 0, &[1]), ("y", 0, 1, &[-1])]),
                claim("D^n(x) = x sum_{S_n} x^exc y^aexc", "x", a_range(0))
                    .times("x")
                    .oracle(Sym, none, 0, &[Stat::Exc, Stat::AexcA], &[
                        ("x", 0, 0, &[1, 0]),
                        ("y", 0, 0, &[0, 1]),
                    ]),
            ],
        ),
        entry(
            "typeB-ma",
            "x -> x*y^2; y -> x^2*y",
            &["x^2", "x*y"],
            vec![
                claim("D^n(x^2) = 2^n sum <n,k> x^(2n-2k) y^(2k+2)", "x^2", t_range(1))
                    .pow2(1, 0)
                    .triangle(EulerA, 0, &[("x", 0, 2, &[-2]), ("y", 2, 0, &[2])]),
                claim("D^n(x^2) = 2^n sum_{S_n} x^(2n-2exc) y^(2exc+2)", "x^2", a_range(1))
                    .pow2(1, 0)
                    .oracle(Sym, none, 0, &[Stat::Exc], &[("x", 0, 2, &[-2]), ("y", 2, 0, &[2])]),
                claim("D^n(x*y) = sum B(n,k) x^(2n-2k+1) y^(2k+1)", "x*y", t_range(1))
                    .triangle(EulerB, 0, &[("x", 1, 2, &[-2]), ("y", 1, 0, &[2])]),
                claim("D^n(x*y) = sum_{B_n} x^(2n-2des+1) y^(2des+1)", "x*y", b_range(1))
                    .oracle(Hyp, none, 0, &[Stat::DesB], &[("x", 1, 2, &[-2]), ("y", 1, 0, &[2])]),
            ],
        ),
        entry(
            "q-eulerian-a",
            "x -> q*x*y; y -> y*z; z -> y*z",
            &["x"],
            vec![
                claim("D^n(x) = x sum_{S_n} y^aexc z^exc q^cyc", "x", a_range(0))
                    .times("x")
                    .oracle(Sym, none, 0, &[Stat::AexcA, Stat::Exc, Stat::Cyc], &[
                        ("y", 0, 0, &[1, 0, 0]),
                        ("z", 0, 0, &[0, 1, 0]),
                        ("q", 0, 0, &[0, 0, 1]),
                    ]),
                claim("D^n(x)|y=1 = x A_n(z;q)", "x", t_range(0))
                    .times("x")
                    .specialize(&[("y", 1)], Closed::Family(FamilyName::QA), 0, &[("x", "z")]),
                claim("D^n(x)|y=z=1 = x q(q+1)...(q+n-1)", "x", t_range(0))
                    .times("x")
                    .specialize(&[("y", 1), ("z", 1)], Closed::RisingFactorial, 0, &[]),
            ],
        ),
        entry(
            "q-eulerian-b",
            "x -> q*x*y*u; y -> x*y*z; z -> y*z*u; u -> q*x*z*u",
            &["x*y"],
            vec![
                claim("D^n(x*y) = x*y sum_{B_n} (x*z)^asc (y*u)^des q^neg", "x*y", b_range(0))
                    .times("x*y")
                    .oracle(Hyp, none, 0, &[Stat::AscB, Stat::DesB, Stat::Neg], &[
                        ("x", 0, 0, &[1, 0, 0]),
                        ("z", 0, 0, &[1, 0, 0]),
                        ("y", 0, 0, &[0, 1, 0]),
                        ("u", 0, 0, &[0, 1, 0]),
                        ("q", 0, 0, &[0, 0, 1]),
                    ]),
                claim("D^n(x*y)|x=y=z=1 = B_n(u;q)", "x*y", t_range(0)).specialize(
                    &[("x", 1), ("y", 1), ("z", 1)],
                    Closed::Family(FamilyName::QB),
                    0,
                    &[("x", "u")],
                ),
            ],
        ),
        entry(
            "runs-a",
            "x -> x*y; y -> y*z; z -> y^2",
            &["x^2", "x"],
            vec![
                claim("D^n(x^2) = x^2 sum R(n+1,k) y^k z^(n-k)", "x^2", t_range(0))
                    .times("x^2")
                    .triangle(RunsR, 1, &[("y", 0, 0, &[1]), ("z", 0, 1, &[-1])]),
                claim("D^n(x^2) = x^2 sum_{S_(n+1)} y^altruns z^(n-altruns)", "x^2", a_range(0))
                    .times("x^2")
                    .oracle(Sym, none, 1, &[Stat::AltRuns], &[("y", 0, 0, &[1]), ("z", 0, 1, &[-1])]),
                claim("D^n(x) = x sum M(n,k) y^k z^(n-k)", "x", t_range(1))
                    .times("x")
                    .triangle(UpDownM, 0, &[("y", 0, 0, &[1]), ("z", 0, 1, &[-1])]),
                claim("D^n(x) = x sum_{S_n} y^updownruns z^(n-updownruns)", "x", a_range(1))
                    .times("x")
                    .oracle(Sym, none, 0, &[Stat::UpDownRuns], &[("y", 0, 0, &[1]), ("z", 0, 1, &[-1])]),
                claim("D^n(x^2)|z=1 = x^2 R_(n+1)(y)", "x^2", t_range(1))
                    .times("x^2")
                    .specialize(&[("z", 1)], Closed::Family(FamilyName::R), 1, &[("x", "y")]),
                claim("D^n(x)|z=1 = x M_n(y)", "x", t_range(1))
                    .times("x")
                    .specialize(&[("z", 1)], Closed::Family(FamilyName::M), 0, &[("x", "y")]),
            ],
        ),
        entry(
            "runs-b",
            "x -> x*y^2; y -> y*z^2; z -> y^4*z^-1",
            &["x^3*y", "x*y", "x^2", "x^2*y^2", "y^2"],
            vec![
                claim("D^n(x^3*y) = x^3*y sum T(n+1,k) y^(2k-2) z^(2n-2k+2)", "x^3*y", t_range(1))
                    .times("x^3*y")
                    .triangle(RunsT, 1, &[("y", -2, 0, &[2]), ("z", 2, 2, &[-2])]),
                claim("D^n(x^3*y) = x^3*y sum_{up B_(n+1)} y^(2runs-2) z^(2n-2runs+2)", "x^3*y", b_range(1))
                    .times("x^3*y")
                    .oracle(Hyp, Up, 1, &[Stat::RunsB], &[("y", -2, 0, &[2]), ("z", 2, 2, &[-2])]),
                claim("D^n(x*y) = x*y(y^2+z^2) sum T(n,k) y^(2k-2) z^(2n-2k)", "x*y", t_range(1))
                    .times("x*y^3 + x*y*z^2")
                    .triangle(RunsT, 0, &[("y", -2, 0, &[2]), ("z", 0, 2, &[-2])]),
                claim("D^n(x*y) = x*y(y^2+z^2) sum_{up B_n} y^(2runs-2) z^(2n-2runs)", "x*y", b_range(1))
                    .times("x*y^3 + x*y*z^2")
                    .oracle(Hyp, Up, 0, &[Stat::RunsB], &[("y", -2, 0, &[2]), ("z", 0, 2, &[-2])]),
                claim("D^n(x^2) = 2^n x^2 sum M(n,k) y^(2k) z^(2n-2k)", "x^2", t_range(1))
                    .times("x^2")
                    .pow2(1, 0)
                    .triangle(UpDownM, 0, &[("y", 0, 0, &[2]), ("z", 0, 2, &[-2])]),
                claim("D^n(x^2) = 2^n x^2 sum_{S_n} y^(2updownruns) z^(2n-2updownruns)", "x^2", a_range(1))
                    .times("x^2")
                    .pow2(1, 0)
                    .oracle(Sym, none, 0, &[Stat::UpDownRuns], &[("y", 0, 0, &[2]), ("z", 0, 2, &[-2])]),
                claim("D^n(x^2*y^2) = 2^(n-1) x^2(y^2+z^2) sum R(n+1,k) y^(2k) z^(2n-2k)", "x^2*y^2", t_range(1))
                    .times("x^2*y^2 + x^2*z^2")
                    .pow2(1, -1)
                    .triangle(RunsR, 1, &[("y", 0, 0, &[2]), ("z", 0, 2, &[-2])]),
                claim("D^n(x^2*y^2) = 2^(n-1) x^2(y^2+z^2) sum_{S_(n+1)} y^(2altruns) z^(2n-2altruns)", "x^2*y^2", a_range(1))
                    .times("x^2*y^2 + x^2*z^2")
                    .pow2(1, -1)
                    .oracle(Sym, none, 1, &[Stat::AltRuns], &[("y", 0, 0, &[2]), ("z", 0, 2, &[-2])]),
                claim("D^n(y^2) = 2^n y^2 sum P(n,k) y^(4k) z^(2n-4k)", "y^2", t_range(1))
                    .times("y^2")
                    .pow2(1, 0)
                    .triangle(LeftPeakP, 0, &[("y", 0, 0, &[4]), ("z", 0, 2, &[-4])]),
                claim("D^n(y^2) = 2^n y^2 sum_{S_n} y^(4leftpeaks) z^(2n-4leftpeaks)", "y^2", a_range(1))
                    .times("y^2")
                    .pow2(1, 0)
                    .oracle(Sym, none, 0, &[Stat::LeftPeaks], &[("y", 0, 0, &[4]), ("z", 0, 2, &[-4])]),
            ],
        ),
        entry(
            "derangement-a-dumont",
            "x -> x*y; y -> x*y; z -> x*y; e -> e*z",
            &["e"],
            vec![
                claim("D^n(e) = e sum_{S_n} x^exc y^dc z^fix", "e", a_range(0))
                    .times("e")
                    .oracle(Sym, none, 0, &[Stat::Exc, Stat::Dc, Stat::Fix], &[
                        ("x", 0, 0, &[1, 0, 0]),
                        ("y", 0, 0, &[0, 1, 0]),
                        ("z", 0, 0, &[0, 0, 1]),
                    ]),
                claim("D^n(e)|y=e=1,z=0 = d_n(x)", "e", t_range(0)).specialize(
                    &[("y", 1), ("e", 1), ("z", 0)],
                    Closed::Family(FamilyName::DA),
                    0,
                    &[],
                ),
            ],
        ),
        entry(
            "derangement-b",
            &format!("{derangement_rules} e -> e*z^4"),
            &["e", "x^2*y^2", "z^4"],
            vec![
                claim("D^n(e) = e sum_{D^B_n} x^(2wexc) y^(2aexc) z^(4single)", "e", b_range(0))
                    .times("e")
                    .oracle(Hyp, Derangement, 0, &[Stat::Wexc, Stat::AexcB, Stat::Single], &[
                        ("x", 0, 0, &[2, 0, 0]),
                        ("y", 0, 0, &[0, 2, 0]),
                        ("z", 0, 0, &[0, 0, 4]),
                    ]),
                claim("D^n(e) = e sum d(n,i,j) x^(2i) y^(2j) z^(4(n-i-j))", "e", t_range(0))
                    .times("e")
                    .derangements(&[("x", 0, 0, &[2, 0]), ("y", 0, 0, &[0, 2]), ("z", 0, 4, &[-4, -4])]),
                claim("D^n(e)|y=z=1 = e d^B_n(x^2)", "e", t_range(0))
                    .times("e")
                    .specialize(&[("y", 1), ("z", 1)], Closed::Family(FamilyName::DB), 0, &[("x", "x^2")]),
                claim("D^n(x^2*y^2) = 2^n sum <n+1,k> x^(2k+2) y^(2n-2k+2)", "x^2*y^2", t_range(0))
                    .pow2(1, 0)
                    .triangle(EulerA, 1, &[("x", 2, 0, &[2]), ("y", 2, 2, &[-2])]),
                claim("D^n(z^4) = 2^(n+1) sum <n,k> x^(2k+2) y^(2n-2k)", "z^4", t_range(1))
                    .pow2(1, 1)
                    .triangle(EulerA, 0, &[("x", 2, 0, &[2]), ("y", 0, 2, &[-2])]),
            ],
        ),
        entry(
            "derangement-b-q",
            &format!("{derangement_rules} e -> q*e*z^4"),
            &["e"],
            vec![claim("D^n(e) = e sum_{D^B_n} x^(2wexc) y^(2aexc) z^(4single) q^cyc", "e", b_range(0))
                .times("e")
                .oracle(Hyp, Derangement, 0, &[Stat::Wexc, Stat::AexcB, Stat::Single, Stat::CycB], &[
                    ("x", 0, 0, &[2, 0, 0, 0]),
                    ("y", 0, 0, &[0, 2, 0, 0]),
                    ("z", 0, 0, &[0, 0, 4, 0]),
                    ("q", 0, 0, &[0, 0, 0, 1]),
                ])],
        ),
    ]
}

/// Every entry, in a fixed order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn catalog_keys() -> Vec<&'static str> {
    catalog().iter().map(|e| e.key).collect()
}

pub fn catalog_get(key: &str) -> Result<&'static CatalogEntry> {
    catalog()
        .iter()
        .find(|e| e.key == key)
        .ok_or_else(|| Error::unknown("catalog entry", key))
}

/// Claimed right-hand side of `claim` at `n`, from freshly built tables.
pub fn claim_polynomial(entry: &CatalogEntry, claim: &Claim, n: usize) -> Result<Poly> {
    debug_assert!(entry.claims.contains(claim));
    let tables = Tables::build(claim.table_row(n).max(1));
    claim.evaluate(&tables, Bounds::default(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_and_lookup() {
        assert_eq!(catalog().len(), 9);
        assert_eq!(
            catalog_get("eulerian-dumont")
                .unwrap()
                .grammar
                .rules()
                .len(),
            2
        );
        assert!(catalog_get("runs-b").unwrap().seeds.contains(&p("y^2")));
        assert!(matches!(catalog_get("nosuch"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn every_claim_uses_a_seed_of_its_entry() {
        for e in catalog() {
            assert!(!e.claims.is_empty(), "{}", e.key);
            for c in &e.claims {
                assert!(e.seeds.contains(&c.seed), "{}: {}", e.key, c.label);
            }
        }
    }

    #[test]
    fn documented_values() {
        let db = catalog_get("derangement-b").unwrap();
        let by_table = &db.claims[1];
        assert_eq!(by_table.kind(), RhsKind::TriangleSum);
        assert_eq!(
            claim_polynomial(db, by_table, 2).unwrap(),
            p("e*z^8 + 4*e*x^2*y^2")
        );

        let rb = catalog_get("runs-b").unwrap();
        let t = &rb.claims[0];
        assert_eq!(
            claim_polynomial(rb, t, 3).unwrap(),
            p("x^3*y*z^6 + 39*x^3*y^3*z^4 + 95*x^3*y^5*z^2 + 57*x^3*y^7")
        );

        let qa = catalog_get("q-eulerian-a").unwrap();
        assert_eq!(claim_polynomial(qa, &qa.claims[0], 1).unwrap(), p("x*y*q"));
    }

    #[test]
    fn out_of_range_is_an_error() {
        let rb = catalog_get("runs-b").unwrap();
        assert!(matches!(
            claim_polynomial(rb, &rb.claims[0], 0),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn every_claim_holds_on_a_short_range() {
        for e in catalog() {
            for c in &e.claims {
                let derivatives = e.grammar.derivatives(&c.seed, 5).unwrap();
                for n in c.n_range.clone().take_while(|&n| n <= 5) {
                    let lhs = c.specialize(&derivatives[n]).unwrap();
                    let rhs = claim_polynomial(e, c, n).unwrap();
                    assert_eq!(lhs, rhs, "{}: {} at n = {n}", e.key, c.label);
                }
            }
        }
    }
}
