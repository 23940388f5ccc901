use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;

use super::derangement::{d_nij_table, DerangementTable};
use super::triangle::{triangle, Triangle, TriangleName};
use crate::error::{Error, Result};
use crate::poly::{sym, Monomial, Poly, Rational, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyName {
    /// Eulerian polynomial `A_n(x)`.
    A,
    /// Type B Eulerian polynomial `B_n(x)`.
    B,
    /// `A_n(x; q)`, excedances and cycles.
    QA,
    /// `B_n(x; q)`, type B descents and negative entries.
    QB,
    /// Derangement polynomial `d_n(x)`.
    DA,
    /// Type B derangement polynomial `d_n^B(x)`.
    DB,
    /// `d_n(x)` as an alternating binomial sum of `A_k(x)`.
    DAAltSum,
    /// `d_n^B(x)` as an alternating binomial sum of `B_k(x)`.
    DBAltSum,
    R,
    M,
    P,
    T,
}

impl FamilyName {
    pub const ALL: [FamilyName; 12] = [
        FamilyName::A,
        FamilyName::B,
        FamilyName::QA,
        FamilyName::QB,
        FamilyName::DA,
        FamilyName::DB,
        FamilyName::DAAltSum,
        FamilyName::DBAltSum,
        FamilyName::R,
        FamilyName::M,
        FamilyName::P,
        FamilyName::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyName::A => "A",
            FamilyName::B => "B",
            FamilyName::QA => "qA",
            FamilyName::QB => "qB",
            FamilyName::DA => "dA",
            FamilyName::DB => "dB",
            FamilyName::DAAltSum => "dA_altsum",
            FamilyName::DBAltSum => "dB_altsum",
            FamilyName::R => "R",
            FamilyName::M => "M",
            FamilyName::P => "P",
            FamilyName::T => "T",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyName {
    type Err = Error;
    fn from_str(s: &str) -> Result<FamilyName> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::unknown("polynomial family", s))
    }
}

fn x() -> Symbol {
    sym("x")
}

fn q() -> Symbol {
    sym("q")
}

fn int(n: i64) -> Poly {
    Poly::constant(n)
}

fn big(n: BigInt) -> Rational {
    Rational::from_bigint(n)
}

/// `x(1 - x)`.
fn x_one_minus_x() -> Poly {
    &Poly::var(x()) - &Poly::term(1, Monomial::power(x(), 2))
}

/// `prod_{j<n} (q + j)`; the empty product is 1.
pub fn rising_factorial(n: usize, var: Symbol) -> Poly {
    (0..n).fold(Poly::one(), |acc, j| {
        &acc * &(&Poly::var(var) + &int(j as i64))
    })
}

fn q_eulerian_a(n: usize) -> Poly {
    let (xv, qv) = (Poly::var(x()), Poly::var(q()));
    let mut a = Poly::one();
    for m in 0..n {
        let factor = &xv.scale(&Rational::from_integer(m as i64)) + &qv;
        a = &(&factor * &a) + &(&x_one_minus_x() * &a.partial_derivative(x()));
    }
    a
}

fn q_eulerian_b(n: usize) -> Poly {
    let (xv, qv) = (Poly::var(x()), Poly::var(q()));
    let one_plus_q = &Poly::one() + &qv;
    let mut b = Poly::one();
    for m in 0..n {
        let mi = int(m as i64);
        let lin = &(&mi + &(&mi * &qv)) + &qv;
        let factor = &(&lin * &xv) + &Poly::one();
        b = &(&factor * &b) + &(&(&one_plus_q * &x_one_minus_x()) * &b.partial_derivative(x()));
    }
    b
}

/// `d_{m+1} = c m x (d_m + d_{m-1}) + e d_m + c x (1 - x) d_m'`, from `d_0 = 1`
/// and the given `d_1`.
fn derangement_recurrence(n: usize, d1: i64, c: i64, e: i64) -> Poly {
    let xv = Poly::var(x());
    let mut prev = Poly::one();
    let mut cur = int(d1);
    if n == 0 {
        return prev;
    }
    for m in 1..n {
        let cm = Rational::from_integer(c * m as i64);
        let next = &(&(&xv * &(&cur + &prev)).scale(&cm) + &cur.scale(&Rational::from_integer(e)))
            + &(&x_one_minus_x() * &cur.partial_derivative(x())).scale(&Rational::from_integer(c));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn derangement_a(n: usize) -> Poly {
    // d_{n+1} = n x (d_n + d_{n-1}) + x (1 - x) d_n'
    derangement_recurrence(n, 0, 1, 0)
}

fn derangement_b(n: usize) -> Poly {
    // d_{n+1} = 2n x (d_n + d_{n-1}) + d_n + 2x (1 - x) d_n', with d_1 = 1
    derangement_recurrence(n, 1, 2, 1)
}

/// Triangles and the derangement table shared by every identity check.
/// Entries may be overwritten to confirm that the checks notice.
#[derive(Debug, Clone)]
pub struct Tables {
    triangles: BTreeMap<TriangleName, Triangle>,
    derangements: DerangementTable,
}

impl Tables {
    pub fn build(nmax: usize) -> Tables {
        Tables {
            triangles: TriangleName::ALL
                .into_iter()
                .map(|t| (t, triangle(t, nmax)))
                .collect(),
            derangements: d_nij_table(nmax),
        }
    }

    pub fn nmax(&self) -> usize {
        self.derangements.nmax()
    }

    pub fn triangle(&self, name: TriangleName) -> &Triangle {
        &self.triangles[&name]
    }

    pub fn triangle_mut(&mut self, name: TriangleName) -> &mut Triangle {
        self.triangles
            .get_mut(&name)
            .expect("every triangle is built")
    }

    pub fn derangements(&self) -> &DerangementTable {
        &self.derangements
    }

    pub fn derangements_mut(&mut self) -> &mut DerangementTable {
        &mut self.derangements
    }

    fn check_row(&self, n: usize) -> Result<()> {
        if n > self.nmax() {
            return Err(Error::OutOfRange {
                n,
                range: format!("0..={}", self.nmax()),
            });
        }
        Ok(())
    }

    fn triangle_polynomial(&self, name: TriangleName, n: usize) -> Result<Poly> {
        self.check_row(n)?;
        Ok(self.triangle(name).polynomial(n, x()))
    }

    /// The named family at `n`, in `x` (and `q` for the q-analogues).
    pub fn family(&self, name: FamilyName, n: usize) -> Result<Poly> {
        Ok(match name {
            FamilyName::A => self.triangle_polynomial(TriangleName::EulerA, n)?,
            FamilyName::B => self.triangle_polynomial(TriangleName::EulerB, n)?,
            // R_n sums over 1 <= k <= n - 1, so R_1 = 0 although R(1, 0) = 1.
            FamilyName::R => {
                self.check_row(n)?;
                self.triangle(TriangleName::RunsR)
                    .polynomial_from(n, 1, x())
            }
            FamilyName::M => self.triangle_polynomial(TriangleName::UpDownM, n)?,
            FamilyName::P => self.triangle_polynomial(TriangleName::LeftPeakP, n)?,
            FamilyName::T => self.triangle_polynomial(TriangleName::RunsT, n)?,
            FamilyName::QA => q_eulerian_a(n),
            FamilyName::QB => q_eulerian_b(n),
            FamilyName::DA => derangement_a(n),
            FamilyName::DB => derangement_b(n),
            FamilyName::DAAltSum => {
                let mut acc = Poly::zero();
                for k in 0..=n {
                    let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
                    let c = big(binomial(BigInt::from(n), BigInt::from(k)) * sign);
                    acc = &acc + &self.family(FamilyName::A, k)?.scale(&c);
                }
                acc
            }
            FamilyName::DBAltSum => {
                let mut acc = Poly::zero();
                for k in 0..=n {
                    let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
                    let c = big(binomial(BigInt::from(n), BigInt::from(k)) * sign);
                    let shift = Monomial::power(x(), (n - k) as i32);
                    acc = &acc
                        + &self
                            .family(FamilyName::B, k)?
                            .mul_monomial(&shift)?
                            .scale(&c);
                }
                acc
            }
        })
    }
}

/// Exact polynomial for the named family at `n`.
pub fn family_polynomial(name: FamilyName, n: usize) -> Result<Poly> {
    let rows = match name {
        FamilyName::QA | FamilyName::QB | FamilyName::DA | FamilyName::DB => 0,
        _ => n,
    };
    Tables::build(rows).family(name, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{distribution, Bounds, Family, Filter, Stat};
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn at_q1(poly: &Poly) -> Poly {
        poly.evaluate(&[(q(), Rational::one())]).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            at_q1(&family_polynomial(FamilyName::QA, 2).unwrap()),
            p("1 + x")
        );
        assert_eq!(
            family_polynomial(FamilyName::DB, 4).unwrap(),
            p("1 + 72*x + 144*x^2 + 16*x^3")
        );
        assert_eq!(family_polynomial(FamilyName::DA, 1).unwrap(), Poly::zero());
        assert_eq!(family_polynomial(FamilyName::DA, 0).unwrap(), Poly::one());
        assert_eq!(
            family_polynomial(FamilyName::T, 4).unwrap(),
            p("x + 39*x^2 + 95*x^3 + 57*x^4")
        );
        assert_eq!(family_polynomial(FamilyName::R, 1).unwrap(), Poly::zero());
        assert_eq!(family_polynomial(FamilyName::M, 0).unwrap(), Poly::one());
        assert_eq!(family_polynomial(FamilyName::QB, 1).unwrap(), p("1 + q*x"));
        assert!("Z".parse::<FamilyName>().is_err());
    }

    #[test]
    fn type_b_derangements_table() {
        let expect = [
            "1",
            "1",
            "1 + 4*x",
            "1 + 20*x + 8*x^2",
            "1 + 72*x + 144*x^2 + 16*x^3",
        ];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(
                family_polynomial(FamilyName::DB, n).unwrap(),
                p(e),
                "n = {n}"
            );
        }
    }

    #[test]
    fn rising_factorial_small() {
        assert_eq!(rising_factorial(0, q()), Poly::one());
        assert_eq!(rising_factorial(2, q()), p("q^2 + q"));
        assert_eq!(at_q1(&rising_factorial(3, q())), Poly::constant(6));
    }

    #[test]
    fn q_analogues_at_q_one() {
        let t = Tables::build(10);
        for n in 0..=10 {
            assert_eq!(
                at_q1(&t.family(FamilyName::QA, n).unwrap()),
                t.family(FamilyName::A, n).unwrap()
            );
            assert_eq!(
                at_q1(&t.family(FamilyName::QB, n).unwrap()),
                t.family(FamilyName::B, n).unwrap()
            );
        }
    }

    #[test]
    fn derangements_three_ways() {
        let t = Tables::build(8);
        let b = Bounds::default();
        let xs = x();
        for n in 0..=8 {
            let rec = t.family(FamilyName::DA, n).unwrap();
            assert_eq!(
                rec,
                t.family(FamilyName::DAAltSum, n).unwrap(),
                "dA n = {n}"
            );
            let brute =
                distribution(Family::Sym, n, &[(Stat::Exc, xs)], Filter::Derangement, b).unwrap();
            assert_eq!(rec, brute, "dA oracle n = {n}");
        }
        for n in 0..=6 {
            let rec = t.family(FamilyName::DB, n).unwrap();
            assert_eq!(
                rec,
                t.family(FamilyName::DBAltSum, n).unwrap(),
                "dB n = {n}"
            );
            let brute =
                distribution(Family::Hyp, n, &[(Stat::Wexc, xs)], Filter::Derangement, b).unwrap();
            assert_eq!(rec, brute, "dB oracle n = {n}");
        }
    }

    #[test]
    fn weak_excedance_marginal_of_table() {
        let t = Tables::build(8);
        for n in 0..=8 {
            let marginal = t
                .derangements()
                .polynomial(n)
                .evaluate(&[(sym("y"), Rational::one())])
                .unwrap();
            assert_eq!(marginal, t.family(FamilyName::DB, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn q_eulerian_matches_brute_force() {
        let b = Bounds::default();
        for n in 0..=6 {
            let brute = distribution(
                Family::Sym,
                n,
                &[(Stat::Exc, x()), (Stat::Cyc, q())],
                Filter::None,
                b,
            )
            .unwrap();
            assert_eq!(
                family_polynomial(FamilyName::QA, n).unwrap(),
                brute,
                "qA n = {n}"
            );
        }
        for n in 0..=5 {
            let brute = distribution(
                Family::Hyp,
                n,
                &[(Stat::DesB, x()), (Stat::Neg, q())],
                Filter::None,
                b,
            )
            .unwrap();
            assert_eq!(
                family_polynomial(FamilyName::QB, n).unwrap(),
                brute,
                "qB n = {n}"
            );
        }
    }

    #[test]
    fn triangles_match_brute_force() {
        let t = Tables::build(7);
        let b = Bounds::default();
        let xs = x();
        for n in 0..=7 {
            let dist = |stat| distribution(Family::Sym, n, &[(stat, xs)], Filter::None, b).unwrap();
            assert_eq!(
                t.family(FamilyName::A, n).unwrap(),
                dist(Stat::Exc),
                "A {n}"
            );
            assert_eq!(
                t.family(FamilyName::M, n).unwrap(),
                dist(Stat::UpDownRuns),
                "M {n}"
            );
            assert_eq!(
                t.family(FamilyName::P, n).unwrap(),
                dist(Stat::LeftPeaks),
                "P {n}"
            );
            if n >= 2 {
                assert_eq!(
                    t.family(FamilyName::R, n).unwrap(),
                    dist(Stat::AltRuns),
                    "R {n}"
                );
            }
        }
        for n in 1..=6 {
            let hyp = |stat, f| distribution(Family::Hyp, n, &[(stat, xs)], f, b).unwrap();
            assert_eq!(
                t.family(FamilyName::B, n).unwrap(),
                hyp(Stat::DesB, Filter::None),
                "B {n}"
            );
            assert_eq!(
                t.family(FamilyName::T, n).unwrap(),
                hyp(Stat::RunsB, Filter::Up),
                "T {n}"
            );
        }
    }
}
