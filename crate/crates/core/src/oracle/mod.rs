//! Brute-force enumeration of S_n and B_n with the permutation statistics
//! the grammars are claimed to track.

mod perm;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

pub use perm::{Permutation, SignedPermutation};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Symmetric group S_n.
    Sym,
    /// Hyperoctahedral group B_n.
    Hyp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    None,
    /// No i with π(i) = i.
    Derangement,
    /// π(1) > 0; signed permutations only.
    Up,
}

/// Largest n the enumerator accepts per family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub sym: usize,
    pub hyp: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { sym: 9, hyp: 7 }
    }
}

impl Bounds {
    /// Lowers both limits to at most `n`; never raises them.
    pub fn capped(self, n: usize) -> Bounds {
        Bounds {
            sym: self.sym.min(n),
            hyp: self.hyp.min(n),
        }
    }

    pub fn limit(&self, family: Family) -> usize {
        match family {
            Family::Sym => self.sym,
            Family::Hyp => self.hyp,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Element {
    Sym(Permutation),
    Hyp(SignedPermutation),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Sym(p) => p.fmt(f),
            Element::Hyp(p) => p.fmt(f),
        }
    }
}

macro_rules! stats {
    ($( $variant:ident => $name:literal, $doc:literal; )*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Stat {
            $( #[doc = $doc] $variant, )*
        }

        impl Stat {
            pub const ALL: &'static [Stat] = &[$( Stat::$variant, )*];

            pub fn name(self) -> &'static str {
                match self {
                    $( Stat::$variant => $name, )*
                }
            }
        }

        impl FromStr for Stat {
            type Err = Error;
            fn from_str(s: &str) -> Result<Stat> {
                match s {
                    $( $name => Ok(Stat::$variant), )*
                    _ => Err(Error::unknown("statistic", s)),
                }
            }
        }
    };
}

stats! {
    Exc => "exc", "Excedances, π(i) > i.";
    AexcA => "aexcA", "Type A anti-excedances, π(i) <= i.";
    Cyc => "cyc", "Cycles.";
    Fix => "fix", "Fixed points.";
    Dc => "dc", "Drops, π(i) < i.";
    DesB => "desB", "Descents of 0π(1)…π(n).";
    AscB => "ascB", "Ascents of 0π(1)…π(n).";
    Neg => "neg", "Negative entries.";
    Pos => "pos", "Positive entries.";
    AltRuns => "altruns", "Alternating runs (0 for n <= 1).";
    UpDownRuns => "updownruns", "Alternating runs of 0π(1)…π(n).";
    LeftPeaks => "leftpeaks", "Left peaks with π(0) = 0.";
    RunsB => "runsB", "Runs of the signed word 0π(1)…π(n).";
    Wexc => "wexc", "Type B weak excedances.";
    AexcB => "aexcB", "Type B anti-excedances, π(|π(i)|) < π(i).";
    Single => "single", "Singletons, π(i) = -i.";
    CycB => "cycB", "Cycles of i ↦ |π(i)|.";
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Stat {
    pub fn applies_to(self, family: Family) -> bool {
        use Stat::*;
        match self {
            Fix => true,
            Exc | AexcA | Cyc | Dc | AltRuns | UpDownRuns | LeftPeaks => family == Family::Sym,
            DesB | AscB | Neg | Pos | RunsB | Wexc | AexcB | Single | CycB => family == Family::Hyp,
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "sym" => Ok(Family::Sym),
            "hyp" => Ok(Family::Hyp),
            _ => Err(Error::unknown("family", s)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sym => "sym",
            Family::Hyp => "hyp",
        })
    }
}

impl FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Filter> {
        match s {
            "none" => Ok(Filter::None),
            "derangement" => Ok(Filter::Derangement),
            "up" => Ok(Filter::Up),
            _ => Err(Error::unknown("filter", s)),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::None => "none",
            Filter::Derangement => "derangement",
            Filter::Up => "up",
        })
    }
}

/// Evaluates `stat` on `element`.
pub fn statistic(element: &Element, stat: Stat) -> Result<u32> {
    use Stat::*;
    let mismatch = |family: &str| Error::StatFamilyMismatch {
        stat: stat.name().into(),
        family: family.into(),
    };
    Ok(match element {
        Element::Sym(p) => match stat {
            Exc => p.excedances(),
            AexcA => p.anti_excedances(),
            Cyc => p.cycles(),
            Fix => p.fixed_points(),
            Dc => p.drops(),
            AltRuns => p.alternating_runs(),
            UpDownRuns => p.up_down_runs(),
            LeftPeaks => p.left_peaks(),
            _ => return Err(mismatch("sym")),
        },
        Element::Hyp(p) => match stat {
            Fix => p.fixed_points(),
            DesB => p.descents(),
            AscB => p.ascents(),
            Neg => p.negatives(),
            Pos => p.positives(),
            RunsB => p.runs(),
            Wexc => p.weak_excedances(),
            AexcB => p.anti_excedances(),
            Single => p.singletons(),
            CycB => p.cycles(),
            _ => return Err(mismatch("hyp")),
        },
    })
}

/// Lexicographic successor of a permutation of distinct values, in place.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Deterministic stream over a group: windows in lexicographic order of the
/// absolute values, and for signed permutations all sign patterns nested
/// inside (each position `+` before `-`, first position most significant).
pub struct Elements {
    family: Family,
    filter: Filter,
    values: Vec<usize>,
    sign_mask: u64,
    done: bool,
}

impl Elements {
    fn current(&self) -> Element {
        match self.family {
            Family::Sym => Element::Sym(Permutation::new(self.values.clone()).unwrap()),
            Family::Hyp => {
                let n = self.values.len();
                let window = self
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let negative = (self.sign_mask >> (n - 1 - i)) & 1 == 1;
                        if negative {
                            -(v as i32)
                        } else {
                            v as i32
                        }
                    })
                    .collect();
                Element::Hyp(SignedPermutation::new(window).unwrap())
            }
        }
    }

    fn advance(&mut self) {
        if self.family == Family::Hyp {
            self.sign_mask += 1;
            if self.sign_mask < 1u64 << self.values.len() {
                return;
            }
            self.sign_mask = 0;
        }
        if !next_permutation(&mut self.values) {
            self.done = true;
        }
    }

    fn accepts(&self, e: &Element) -> bool {
        match (self.filter, e) {
            (Filter::None, _) => true,
            (Filter::Derangement, Element::Sym(p)) => p.fixed_points() == 0,
            (Filter::Derangement, Element::Hyp(p)) => p.fixed_points() == 0,
            (Filter::Up, Element::Hyp(p)) => p.is_up(),
            (Filter::Up, Element::Sym(_)) => unreachable!("rejected at construction"),
        }
    }
}

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        while !self.done {
            let e = self.current();
            self.advance();
            if self.accepts(&e) {
                return Some(e);
            }
        }
        None
    }
}

/// Enumerates `family` of size `n` restricted by `filter`, each element once.
pub fn enumerate_group(
    family: Family,
    n: usize,
    filter: Filter,
    bounds: Bounds,
) -> Result<Elements> {
    if filter == Filter::Up && family == Family::Sym {
        return Err(Error::InvalidRequest(
            "filter `up` applies only to signed permutations (family hyp)".into(),
        ));
    }
    let limit = bounds.limit(family);
    if n > limit {
        return Err(Error::OutOfRange {
            n,
            range: format!("0..={limit} for family {family}"),
        });
    }
    Ok(Elements {
        family,
        filter,
        values: (1..=n).collect(),
        sign_mask: 0,
        done: false,
    })
}

/// Number of elements with each joint value of `stats`.
pub fn stat_counts(
    family: Family,
    n: usize,
    stats: &[Stat],
    filter: Filter,
    bounds: Bounds,
) -> Result<BTreeMap<Vec<u32>, u64>> {
    for &s in stats {
        if !s.applies_to(family) {
            return Err(Error::StatFamilyMismatch {
                stat: s.name().into(),
                family: family.to_string(),
            });
        }
    }
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    for e in enumerate_group(family, n, filter, bounds)? {
        let key = stats
            .iter()
            .map(|&s| statistic(&e, s))
            .collect::<Result<Vec<_>>>()?;
        *counts.entry(key).or_default() += 1;
    }
    Ok(counts.into_iter().collect())
}

/// `sum over elements of prod symbol^statistic`.
pub fn distribution(
    family: Family,
    n: usize,
    stats: &[(Stat, Symbol)],
    filter: Filter,
    bounds: Bounds,
) -> Result<Poly> {
    let only: Vec<Stat> = stats.iter().map(|(s, _)| *s).collect();
    let counts = stat_counts(family, n, &only, filter, bounds)?;
    let mut out = Poly::zero();
    for (values, count) in counts {
        let pairs = stats.iter().zip(&values).map(|((_, sym), &v)| {
            let e = i32::try_from(v).expect("statistic fits in an exponent");
            (*sym, e)
        });
        let m = Monomial::from_pairs(pairs)?;
        out.add_term(m, &Rational::from_integer(count as i64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, sym, Poly};

    fn all(family: Family, n: usize, filter: Filter) -> Vec<Element> {
        enumerate_group(family, n, filter, Bounds::default())
            .unwrap()
            .collect()
    }

    fn fact(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn group_sizes() {
        assert_eq!(all(Family::Sym, 3, Filter::None).len(), 6);
        assert_eq!(all(Family::Sym, 0, Filter::None).len(), 1);
        assert_eq!(all(Family::Hyp, 0, Filter::None).len(), 1);
        assert_eq!(all(Family::Hyp, 2, Filter::Derangement).len(), 5);
        assert_eq!(all(Family::Hyp, 1, Filter::Up).len(), 1);
        assert_eq!(all(Family::Hyp, 4, Filter::Up).len(), 192);
        assert_eq!(all(Family::Hyp, 4, Filter::Derangement).len(), 233);
        assert_eq!(all(Family::Sym, 5, Filter::Derangement).len(), 44);
    }

    #[test]
    fn d2b_matches_explicit_list() {
        let got: Vec<String> = all(Family::Hyp, 2, Filter::Derangement)
            .iter()
            .map(|e| e.to_string())
            .collect();
        // (-2)(-1), (-1,2), (1,2), (-2,-1), (-2,1) in window form
        let mut expect = vec!["[-1 -2]", "[2 -1]", "[2 1]", "[-2 -1]", "[-2 1]"];
        let mut got_sorted = got.clone();
        got_sorted.sort();
        expect.sort();
        assert_eq!(got_sorted, expect);
    }

    #[test]
    fn enumeration_order() {
        let w: Vec<String> = all(Family::Hyp, 2, Filter::None)
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(
            w,
            ["[1 2]", "[1 -2]", "[-1 2]", "[-1 -2]", "[2 1]", "[2 -1]", "[-2 1]", "[-2 -1]"]
        );
        let s: Vec<String> = all(Family::Sym, 3, Filter::None)
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(
            s,
            ["[1 2 3]", "[1 3 2]", "[2 1 3]", "[2 3 1]", "[3 1 2]", "[3 2 1]"]
        );
    }

    #[test]
    fn invalid_requests() {
        assert!(matches!(
            enumerate_group(Family::Sym, 3, Filter::Up, Bounds::default()),
            Err(Error::InvalidRequest(_))
        ));
        assert!(matches!(
            enumerate_group(Family::Hyp, 8, Filter::None, Bounds::default()),
            Err(Error::OutOfRange { .. })
        ));
        assert!(
            enumerate_group(Family::Sym, 5, Filter::None, Bounds::default().capped(4)).is_err()
        );
        let e = all(Family::Sym, 2, Filter::None).remove(0);
        assert!(matches!(
            statistic(&e, Stat::Wexc),
            Err(Error::StatFamilyMismatch { .. })
        ));
        assert!(distribution(
            Family::Sym,
            3,
            &[(Stat::RunsB, sym("x"))],
            Filter::None,
            Bounds::default()
        )
        .is_err());
        assert!("inv".parse::<Stat>().is_err());
    }

    #[test]
    fn distribution_examples() {
        let b = Bounds::default();
        let x = sym("x");
        assert_eq!(
            distribution(Family::Sym, 4, &[(Stat::Exc, x)], Filter::None, b).unwrap(),
            parse_poly("1 + 11*x + 11*x^2 + x^3").unwrap()
        );
        assert_eq!(
            distribution(Family::Hyp, 2, &[(Stat::Wexc, x)], Filter::Derangement, b).unwrap(),
            parse_poly("1 + 4*x").unwrap()
        );
        assert_eq!(
            distribution(Family::Hyp, 4, &[(Stat::RunsB, x)], Filter::Up, b).unwrap(),
            parse_poly("x + 39*x^2 + 95*x^3 + 57*x^4").unwrap()
        );
    }

    #[test]
    fn empty_stats_give_cardinality() {
        let b = Bounds::default();
        for n in 0..=6u64 {
            let sym_card = distribution(Family::Sym, n as usize, &[], Filter::None, b).unwrap();
            assert_eq!(sym_card, Poly::constant(fact(n) as i64));
            let hyp_card = distribution(Family::Hyp, n as usize, &[], Filter::None, b).unwrap();
            assert_eq!(hyp_card, Poly::constant((fact(n) << n) as i64));
            if n >= 1 {
                let up = distribution(Family::Hyp, n as usize, &[], Filter::Up, b).unwrap();
                assert_eq!(up, Poly::constant((fact(n) << (n - 1)) as i64));
            }
        }
    }

    #[test]
    fn statistic_sum_identities() {
        for n in 0..=5 {
            for e in all(Family::Sym, n, Filter::None) {
                let st = |s| statistic(&e, s).unwrap() as usize;
                assert_eq!(st(Stat::Exc) + st(Stat::AexcA), n);
                assert_eq!(st(Stat::Exc) + st(Stat::Fix) + st(Stat::Dc), n);
            }
            for e in all(Family::Hyp, n, Filter::None) {
                let st = |s| statistic(&e, s).unwrap() as usize;
                assert_eq!(st(Stat::Neg) + st(Stat::Pos), n);
                assert_eq!(st(Stat::AscB) + st(Stat::DesB), n);
            }
            for e in all(Family::Hyp, n, Filter::Derangement) {
                let st = |s| statistic(&e, s).unwrap() as usize;
                assert_eq!(
                    st(Stat::Wexc) + st(Stat::AexcB) + st(Stat::Single),
                    n,
                    "{e}"
                );
            }
        }
    }

    #[test]
    fn wexc_equidistributed_with_descents() {
        let b = Bounds::default();
        let x = sym("x");
        for n in 0..=6 {
            let w = distribution(Family::Hyp, n, &[(Stat::Wexc, x)], Filter::None, b).unwrap();
            let d = distribution(Family::Hyp, n, &[(Stat::DesB, x)], Filter::None, b).unwrap();
            assert_eq!(w, d, "n = {n}");
        }
    }

    #[test]
    fn stat_names_round_trip() {
        for &s in Stat::ALL {
            assert_eq!(s.name().parse::<Stat>().unwrap(), s);
        }
        assert_eq!(Stat::ALL.len(), 17);
    }
}
