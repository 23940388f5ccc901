use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use rayon::prelude::*;

use super::egf::{egf_reference, series_var, Egf};
use super::{CheckResult, Context, Run};
use crate::catalog::{catalog, catalog_get, CatalogEntry, Claim, RhsKind};
use crate::error::{Error, Result};
use crate::oracle::{distribution, Family, Filter, Stat};
use crate::poly::{factorial, sym, Monomial, Poly, Rational, Symbol, TruncatedSeries};
use crate::recurrences::{d_xy_polynomial, rising_factorial, FamilyName, TriangleName};

fn x() -> Symbol {
    sym("x")
}

fn xp() -> Poly {
    Poly::var(x())
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn binom(n: usize, k: usize) -> Rational {
    Rational::from_bigint(binomial(BigInt::from(n), BigInt::from(k)))
}

fn pow2(e: i64) -> Rational {
    int(2).pow(e).expect("2 is invertible")
}

fn one_plus_x() -> Poly {
    &Poly::one() + &xp()
}

/// `p(x^2)`.
fn at_x_squared(p: &Poly) -> Result<Poly> {
    let map = BTreeMap::from([(x(), Poly::term(1, Monomial::power(x(), 2)))]);
    p.substitute(&map)
}

pub(super) fn run(ctx: &Context, key: &'static str) -> CheckResult {
    let mut run = Run::new(key, usize::MAX);
    let outcome = match key {
        "cor-2-2" => q_eulerian_convolution(ctx, &mut run),
        "symmetry-A" => symmetry_a(ctx, &mut run),
        "rising-factorial" => rising(ctx, &mut run),
        "cor-3-3" => runs_t_convolution(ctx, &mut run),
        "prop-3-4" => runs_r_from_t(ctx, &mut run),
        "R-convolution" => r_convolution(ctx, &mut run),
        "bona" => bona(ctx, &mut run),
        "M-convolution" => m_convolution(ctx, &mut run),
        "cor-4-2-poly" => derangement_b_convolution(ctx, &mut run),
        "cor-4-2-num" => derangement_b_numeric(ctx, &mut run),
        "wexc-vs-des" => wexc_vs_des(ctx, &mut run),
        "eq-8" => derangement_stat_sum(ctx, &mut run),
        "grammar-claims" => grammar_claims(ctx, &mut run),
        "egf-dA" => egf_da(ctx, &mut run),
        "egf-dB" => egf_db(ctx, &mut run),
        "egf-G" => egf_g(ctx, &mut run),
        "pde-12" => weak_excedance_pde(ctx, &mut run),
        "egf-5var" => egf_five(ctx, &mut run),
        "rundef-w-A" => rundef(ctx, &mut run, false),
        "rundef-w-B" => rundef(ctx, &mut run, true),
        "table-marginals" => table_marginals(ctx, &mut run),
        other => unreachable!("unlisted check {other}"),
    };
    if let Err((n, e)) = outcome {
        run.error(n, None, e);
    }
    run.finish()
}

/// Errors tagged with the `n` being evaluated.
type Step = std::result::Result<(), (usize, Error)>;

trait AtN<T> {
    fn at(self, n: usize) -> std::result::Result<T, (usize, Error)>;
}

impl<T> AtN<T> for Result<T> {
    fn at(self, n: usize) -> std::result::Result<T, (usize, Error)> {
        self.map_err(|e| (n, e))
    }
}

/// `A_{n+1}(x;q) = q A_n(x;q) + q x sum_{k<n} C(n,k) A_k(x;q) A_{n-k}(x)`, n >= 1.
fn q_eulerian_convolution(ctx: &Context, run: &mut Run) -> Step {
    let t = &ctx.tables;
    let nmax = ctx.profile.identity_n;
    let qa: Vec<Poly> = (0..=nmax + 1)
        .map(|n| t.family(FamilyName::QA, n))
        .collect::<Result<_>>()
        .at(0)?;
    let q = Poly::var(sym("q"));
    for n in 1..=nmax {
        let mut sum = Poly::zero();
        for (k, qa_k) in qa.iter().enumerate().take(n) {
            let a = t.family(FamilyName::A, n - k).at(n)?;
            sum = &sum + &(qa_k * &a).scale(&binom(n, k));
        }
        let rhs = &(&q * &qa[n]) + &(&(&q * &xp()) * &sum);
        if !run.compare(n, None, Ok(qa[n + 1].clone()), Ok(rhs)) {
            break;
        }
    }
    Ok(())
}

/// `x^n A_n(1/x) = x A_n(x)`, n >= 1.
fn symmetry_a(ctx: &Context, run: &mut Run) -> Step {
    let inv = BTreeMap::from([(x(), Poly::term(1, Monomial::power(x(), -1)))]);
    for n in 1..=ctx.profile.identity_n {
        let a = ctx.tables.family(FamilyName::A, n).at(n)?;
        let lhs = a
            .substitute(&inv)
            .and_then(|p| p.mul_monomial(&Monomial::power(x(), n as i32)));
        if !run.compare(n, None, lhs, Ok(&xp() * &a)) {
            break;
        }
    }
    Ok(())
}

/// `D^n(x)|_{y=z=1} = x q(q+1)...(q+n-1)` under the q-Eulerian grammar,
/// also against `x sum_{S_n} q^cyc` and `A_n(1;q)`.
fn rising(ctx: &Context, run: &mut Run) -> Step {
    let entry = catalog_get("q-eulerian-a").at(0)?;
    run.exercise(entry.key);
    let q = sym("q");
    let nmax = ctx.profile.claim_n;
    let derivatives = entry.grammar.derivatives(&xp(), nmax).at(0)?;
    let ones = [(sym("y"), Rational::one()), (sym("z"), Rational::one())];
    for (n, d) in derivatives.iter().enumerate() {
        let product = &xp() * &rising_factorial(n, q);
        if !run.compare(n, Some("grammar"), d.evaluate(&ones), Ok(product.clone())) {
            break;
        }
        let qa = ctx.tables.family(FamilyName::QA, n).at(n)?;
        let at_one = qa.evaluate(&[(x(), Rational::one())]).map(|p| &xp() * &p);
        if !run.compare(n, Some("A_n(1;q)"), at_one, Ok(product.clone())) {
            break;
        }
        if n <= ctx.oracle_limit(Family::Sym) {
            let brute = distribution(Family::Sym, n, &[(Stat::Cyc, q)], Filter::None, ctx.bounds)
                .map(|p| &xp() * &p);
            if !run.compare(n, Some("enumeration"), brute, Ok(product)) {
                break;
            }
        }
    }
    Ok(())
}

/// `T_{n+1} = 2^n x M_n + (1+x) sum_{k=1}^n 2^{n-k} C(n,k) T_k M_{n-k}`, n >= 0.
fn runs_t_convolution(ctx: &Context, run: &mut Run) -> Step {
    let t = &ctx.tables;
    for n in 0..=ctx.profile.identity_n {
        let lhs = t.family(FamilyName::T, n + 1).at(n)?;
        let m = t.family(FamilyName::M, n).at(n)?;
        let mut sum = Poly::zero();
        for k in 1..=n {
            let tk = t.family(FamilyName::T, k).at(n)?;
            let mk = t.family(FamilyName::M, n - k).at(n)?;
            sum = &sum + &(&tk * &mk).scale(&(&pow2((n - k) as i64) * &binom(n, k)));
        }
        let rhs = &(&xp() * &m).scale(&pow2(n as i64)) + &(&one_plus_x() * &sum);
        if !run.compare(n, None, Ok(lhs), Ok(rhs)) {
            break;
        }
    }
    Ok(())
}

/// `2^{n-1} R_{n+1} = 2 T_n + (1+x)/x sum_{k=1}^{n-1} C(n,k) T_k T_{n-k}`, n >= 2.
fn runs_r_from_t(ctx: &Context, run: &mut Run) -> Step {
    let t = &ctx.tables;
    let one_plus_x_over_x = one_plus_x().mul_monomial(&Monomial::power(x(), -1)).at(0)?;
    for n in 2..=ctx.profile.identity_n {
        let lhs = t
            .family(FamilyName::R, n + 1)
            .at(n)?
            .scale(&pow2(n as i64 - 1));
        let mut sum = Poly::zero();
        for k in 1..n {
            let a = t.family(FamilyName::T, k).at(n)?;
            let b = t.family(FamilyName::T, n - k).at(n)?;
            sum = &sum + &(&a * &b).scale(&binom(n, k));
        }
        let rhs = &t.family(FamilyName::T, n).at(n)?.scale(&int(2)) + &(&one_plus_x_over_x * &sum);
        if !run.compare(n, None, Ok(lhs), Ok(rhs)) {
            break;
        }
    }
    Ok(())
}

/// `sum_{k=0}^n C(n,k) M_k(x) P_{n-k}(x^2)`.
fn m_p_convolution(ctx: &Context, n: usize) -> Result<Poly> {
    let t = &ctx.tables;
    let mut sum = Poly::zero();
    for k in 0..=n {
        let m = t.family(FamilyName::M, k)?;
        let p = at_x_squared(&t.family(FamilyName::P, n - k)?)?;
        sum = &sum + &(&m * &p).scale(&binom(n, k));
    }
    Ok(sum)
}

/// `(1+x) R_{n+1} = 2x sum C(n,k) M_k P_{n-k}(x^2)`, n >= 1.
fn r_convolution(ctx: &Context, run: &mut Run) -> Step {
    for n in 1..=ctx.profile.identity_n {
        let lhs = &one_plus_x() * &ctx.tables.family(FamilyName::R, n + 1).at(n)?;
        let rhs = m_p_convolution(ctx, n).map(|s| (&xp() * &s).scale(&int(2)));
        if !run.compare(n, None, Ok(lhs), rhs) {
            break;
        }
    }
    Ok(())
}

/// `M_n = (1+x) R_n / 2`, n >= 2.
fn bona(ctx: &Context, run: &mut Run) -> Step {
    for n in 2..=ctx.profile.identity_n {
        let m = ctx.tables.family(FamilyName::M, n).at(n)?;
        let r = ctx.tables.family(FamilyName::R, n).at(n)?;
        let rhs = (&one_plus_x() * &r).scale(&Rational::new(1, 2));
        if !run.compare(n, None, Ok(m), Ok(rhs)) {
            break;
        }
    }
    Ok(())
}

/// `M_{n+1} = x sum C(n,k) M_k P_{n-k}(x^2)`, n >= 0.
fn m_convolution(ctx: &Context, run: &mut Run) -> Step {
    for n in 0..=ctx.profile.identity_n {
        let lhs = ctx.tables.family(FamilyName::M, n + 1).at(n)?;
        let rhs = m_p_convolution(ctx, n).map(|s| &xp() * &s);
        if !run.compare(n, None, Ok(lhs), rhs) {
            break;
        }
    }
    Ok(())
}

/// `d^B_{n+1} = d^B_n + x sum_{k<n} 2^{n-k+1} C(n,k) d^B_k A_{n-k}`, n >= 1.
fn derangement_b_convolution(ctx: &Context, run: &mut Run) -> Step {
    let nmax = ctx.profile.identity_n;
    let db: Vec<Poly> = (0..=nmax + 1)
        .map(|n| ctx.tables.family(FamilyName::DB, n))
        .collect::<Result<_>>()
        .at(0)?;
    for n in 1..=nmax {
        let mut sum = Poly::zero();
        for (k, db_k) in db.iter().enumerate().take(n) {
            let a = ctx.tables.family(FamilyName::A, n - k).at(n)?;
            sum = &sum + &(db_k * &a).scale(&(&pow2((n - k + 1) as i64) * &binom(n, k)));
        }
        let rhs = &db[n] + &(&xp() * &sum);
        if !run.compare(n, None, Ok(db[n + 1].clone()), Ok(rhs)) {
            break;
        }
    }
    Ok(())
}

/// `d^B_{n+1} = d^B_n + n! sum_{k<n} 2^{n-k+1} d^B_k / k!` as a numeric
/// recursion, against `d^B_n(1)` and the total of the `d(n, i, j)` table.
fn derangement_b_numeric(ctx: &Context, run: &mut Run) -> Step {
    let nmax = ctx.profile.identity_n;
    let mut numeric = vec![int(1), int(1)];
    for n in 1..=nmax {
        let sum: Rational = (0..n)
            .map(|k| {
                let inv_fact = Rational::from_bigint(factorial(k)).recip().unwrap();
                &(&pow2((n - k + 1) as i64) * &numeric[k]) * &inv_fact
            })
            .sum();
        let next = &numeric[n] + &(&Rational::from_bigint(factorial(n)) * &sum);
        numeric.push(next);
    }
    for (n, value) in numeric.iter().enumerate().skip(1).take(nmax + 1) {
        let value = Poly::constant(value.clone());
        let poly = ctx
            .tables
            .family(FamilyName::DB, n)
            .and_then(|p| p.evaluate(&[(x(), Rational::one())]));
        if !run.compare(n, Some("d^B_n(1)"), Ok(value.clone()), poly) {
            break;
        }
        if n <= ctx.tables.nmax() {
            let total: BigInt = ctx
                .tables
                .derangements()
                .entries(n)
                .into_iter()
                .map(|(_, _, v)| v)
                .sum();
            if !run.compare(
                n,
                Some("sum d(n,i,j)"),
                Ok(value),
                Ok(Poly::constant(Rational::from_bigint(total))),
            ) {
                break;
            }
        }
    }
    Ok(())
}

/// `sum_{B_n} x^wexc = sum_{B_n} x^desB = B_n(x)`.
fn wexc_vs_des(ctx: &Context, run: &mut Run) -> Step {
    for n in 0..=ctx.oracle_limit(Family::Hyp) {
        let wexc = distribution(
            Family::Hyp,
            n,
            &[(Stat::Wexc, x())],
            Filter::None,
            ctx.bounds,
        );
        let des = distribution(
            Family::Hyp,
            n,
            &[(Stat::DesB, x())],
            Filter::None,
            ctx.bounds,
        );
        let b = ctx.tables.family(FamilyName::B, n);
        if !run.compare(n, Some("wexc vs desB"), wexc.clone(), des) {
            break;
        }
        if !run.compare(n, Some("wexc vs B_n"), wexc, b) {
            break;
        }
    }
    Ok(())
}

/// `wexc + aexc + single = n` on every type B derangement: marking all
/// three statistics with `x` must give `|D^B_n| x^n`.
fn derangement_stat_sum(ctx: &Context, run: &mut Run) -> Step {
    for n in 0..=ctx.oracle_limit(Family::Hyp) {
        let stats = [(Stat::Wexc, x()), (Stat::AexcB, x()), (Stat::Single, x())];
        let marked = distribution(Family::Hyp, n, &stats, Filter::Derangement, ctx.bounds);
        let count = distribution(Family::Hyp, n, &[], Filter::Derangement, ctx.bounds)
            .and_then(|c| c.mul_monomial(&Monomial::power(x(), n as i32)));
        if !run.compare(n, None, marked, count) {
            break;
        }
    }
    Ok(())
}

/// Highest `n` a claim is checked at under the context's limits.
fn claim_limit(ctx: &Context, claim: &Claim) -> usize {
    let end = *claim.n_range.end();
    match claim.kind() {
        RhsKind::OracleDistribution => end,
        _ => end.min(ctx.profile.claim_n),
    }
}

type Mismatch = (usize, String, Result<Poly>, Result<Poly>);

/// Whether `claim` is checked at `n`. Oracle claims stop at the profile's
/// enumeration limit for `n` and at the hard bounds for the enumerated group,
/// which may be one larger than `n`; the rest stop at the profile limit and
/// the stored table rows.
fn claim_checked_at(ctx: &Context, claim: &Claim, n: usize) -> bool {
    if n > claim_limit(ctx, claim) {
        return false;
    }
    match claim.oracle_size(n) {
        Some((family, size)) => n <= ctx.oracle_limit(family) && size <= ctx.bounds.limit(family),
        None => claim.table_row(n) <= ctx.tables.nmax(),
    }
}

/// Range of `n` examined and the first mismatch of one catalog entry.
fn check_entry(ctx: &Context, entry: &CatalogEntry) -> (Option<(usize, usize)>, Option<Mismatch>) {
    let mut covered: Option<(usize, usize)> = None;
    for seed in &entry.seeds {
        let claims: Vec<_> = entry.claims.iter().filter(|c| &c.seed == seed).collect();
        let top = claims
            .iter()
            .map(|c| claim_limit(ctx, c))
            .max()
            .unwrap_or(0);
        let derivatives = match entry.grammar.derivatives(seed, top) {
            Ok(d) => d,
            Err(e) => {
                return (
                    covered,
                    Some((
                        0,
                        format!("{}: D^n({seed})", entry.key),
                        Err(e),
                        Ok(Poly::zero()),
                    )),
                )
            }
        };
        for claim in claims {
            for n in claim
                .n_range
                .clone()
                .take_while(|&n| claim_checked_at(ctx, claim, n))
            {
                covered = Some(covered.map_or((n, n), |(lo, hi)| (lo.min(n), hi.max(n))));
                let lhs = claim.specialize(&derivatives[n]);
                let rhs = claim.evaluate(&ctx.tables, ctx.bounds, n);
                let equal = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
                if !equal {
                    return (
                        covered,
                        Some((n, format!("{}: {}", entry.key, claim.label), lhs, rhs)),
                    );
                }
            }
        }
    }
    (covered, None)
}

/// `bindings(D^n(seed)) = claimed expansion` for every catalog claim.
fn grammar_claims(ctx: &Context, run: &mut Run) -> Step {
    let outcomes: Vec<_> = catalog()
        .par_iter()
        .map(|e| (e.key, check_entry(ctx, e)))
        .collect();
    for (key, (covered, failure)) in outcomes {
        run.exercise(key);
        if let Some((lo, hi)) = covered {
            run.cover(lo);
            run.cover(hi);
        }
        if let Some((n, context, lhs, rhs)) = failure {
            run.compare(n, Some(&context), lhs, rhs);
            break;
        }
    }
    Ok(())
}

/// Compares `n! [t^n] series` with `expected(n)` for every order.
fn compare_series(
    run: &mut Run,
    series: &TruncatedSeries,
    context: &str,
    orders: std::ops::RangeInclusive<usize>,
    mut expected: impl FnMut(usize) -> Result<Poly>,
) -> bool {
    for n in orders {
        if !run.compare(n, Some(context), Ok(series.egf_coeff(n)), expected(n)) {
            return false;
        }
    }
    true
}

fn egf_da(ctx: &Context, run: &mut Run) -> Step {
    let order = ctx.profile.egf_order;
    let series = egf_reference(Egf::DA, order).at(order)?;
    let t = &ctx.tables;
    let _ = compare_series(run, &series, "recurrence", 0..=order, |n| {
        t.family(FamilyName::DA, n)
    }) && compare_series(
        run,
        &series,
        "alternating sum",
        0..=order.min(t.nmax()),
        |n| t.family(FamilyName::DAAltSum, n),
    ) && compare_series(
        run,
        &series,
        "enumeration",
        0..=order.min(ctx.oracle_limit(Family::Sym)),
        |n| {
            distribution(
                Family::Sym,
                n,
                &[(Stat::Exc, x())],
                Filter::Derangement,
                ctx.bounds,
            )
        },
    );
    Ok(())
}

fn egf_db(ctx: &Context, run: &mut Run) -> Step {
    let order = ctx.profile.egf_order;
    let series = egf_reference(Egf::DB, order).at(order)?;
    let t = &ctx.tables;
    let _ = compare_series(run, &series, "recurrence", 0..=order, |n| {
        t.family(FamilyName::DB, n)
    }) && compare_series(
        run,
        &series,
        "alternating sum",
        0..=order.min(t.nmax()),
        |n| t.family(FamilyName::DBAltSum, n),
    ) && compare_series(
        run,
        &series,
        "enumeration",
        0..=order.min(ctx.oracle_limit(Family::Hyp)),
        |n| {
            distribution(
                Family::Hyp,
                n,
                &[(Stat::Wexc, x())],
                Filter::Derangement,
                ctx.bounds,
            )
        },
    );
    Ok(())
}

fn egf_g(ctx: &Context, run: &mut Run) -> Step {
    let order = ctx.profile.egf_order;
    let series = egf_reference(Egf::G, order).at(order)?;
    let t = &ctx.tables;
    let _ = compare_series(run, &series, "bivariate recurrence", 0..=order, |n| {
        Ok(d_xy_polynomial(n))
    }) && compare_series(
        run,
        &series,
        "d(n,i,j) table",
        0..=order.min(t.nmax()),
        |n| Ok(t.derangements().polynomial(n)),
    ) && compare_series(
        run,
        &series,
        "enumeration",
        0..=order.min(ctx.oracle_limit(Family::Hyp)),
        |n| {
            let stats = [(Stat::Wexc, x()), (Stat::AexcB, sym("y"))];
            distribution(Family::Hyp, n, &stats, Filter::Derangement, ctx.bounds)
        },
    );
    Ok(())
}

/// `(1 - 4xyt) G_t - G - (2xy - 4x^2y) G_x - (2xy - 4xy^2) G_y` vanishes
/// through `t^(order-1)`.
fn weak_excedance_pde(ctx: &Context, run: &mut Run) -> Step {
    let order = ctx.profile.egf_order.max(1);
    let (tv, y) = (series_var(), sym("y"));
    let g = egf_reference(Egf::G, order).at(order)?;
    let low = order - 1;
    let xy = Poly::term(1, Monomial::from_pairs([(x(), 1), (y, 1)]).unwrap());
    let mut factor = vec![Poly::zero(); low + 1];
    factor[0] = Poly::one();
    if low >= 1 {
        factor[1] = xy.scale(&int(-4));
    }
    let residual = (|| {
        let factor = TruncatedSeries::new(tv, factor)?;
        let lhs = factor.mul(&g.partial(tv))?;
        let cx = &xy.scale(&int(2)) - &(&xp() * &xy).scale(&int(4));
        let cy = &xy.scale(&int(2)) - &(&Poly::var(y) * &xy).scale(&int(4));
        let rhs = g
            .truncate(low)
            .add(&g.partial(x()).truncate(low).mul_poly(&cx)?)?
            .add(&g.partial(y).truncate(low).mul_poly(&cy)?)?;
        lhs.sub(&rhs)
    })()
    .at(0)?;
    for n in 0..=low {
        if !run.compare(n, None, Ok(residual.coeff(n).clone()), Ok(Poly::zero())) {
            break;
        }
    }
    Ok(())
}

fn egf_five(ctx: &Context, run: &mut Run) -> Step {
    let order = ctx.profile.egf_order;
    let five = egf_reference(Egf::FiveVar, order).at(order)?;
    let g = egf_reference(Egf::G, order).at(order)?;
    let ones: BTreeMap<Symbol, Poly> = ["u", "v", "z"]
        .iter()
        .map(|s| (sym(s), Poly::one()))
        .collect();
    let collapsed = five.substitute(&ones).at(order)?;
    let limit = order
        .min(ctx.profile.fivevar_n)
        .min(ctx.oracle_limit(Family::Hyp));
    let _ = compare_series(run, &collapsed, "u=v=z=1 gives G", 0..=order, |n| {
        Ok(g.egf_coeff(n))
    }) && compare_series(run, &five, "enumeration", 0..=limit, |n| {
        let stats = [
            (Stat::Wexc, x()),
            (Stat::AexcB, sym("y")),
            (Stat::Single, sym("z")),
            (Stat::Pos, sym("u")),
            (Stat::Neg, sym("v")),
        ];
        distribution(Family::Hyp, n, &stats, Filter::Derangement, ctx.bounds)
    });
    Ok(())
}

/// Run polynomials from Eulerian polynomials at `x = (1-r^2)/(1+r^2)`, where
/// `w = sqrt((1-x)/(1+x)) = r`:
/// `R_n(x) = (1-w) ((1+x)/2)^{n-1} (1+w)^n A_n((1-w)/(1+w))`,
/// `T_n(x) = (x/2) ((1+x)/2)^{n-1} (1+w)^n B_n((1-w)/(1+w))`.
fn rundef(ctx: &Context, run: &mut Run, type_b: bool) -> Step {
    let points = [
        Rational::new(1, 2),
        Rational::new(1, 3),
        Rational::new(2, 3),
    ];
    let (runs, eulerian) = if type_b {
        (FamilyName::T, FamilyName::B)
    } else {
        (FamilyName::R, FamilyName::A)
    };
    for n in 2..=ctx.profile.rundef_n {
        for w in &points {
            let w2 = w * w;
            let one = Rational::one();
            let x0 = &(&one - &w2) / &(&one + &w2);
            let half = Rational::new(1, 2);
            let u = &(&one - w) / &(&one + w);
            let e = ctx
                .tables
                .family(eulerian, n)
                .and_then(|p| p.evaluate(&[(x(), u)]));
            let e = match e.map(|p| p.as_constant()) {
                Ok(Some(v)) => v,
                Ok(None) => unreachable!("univariate family evaluates to a constant"),
                Err(err) => return Err((n, err)),
            };
            let lead = if type_b { &x0 * &half } else { &one - w };
            let rhs = &(&(&lead * &(&(&one + &x0) * &half).pow(n as i64 - 1).unwrap())
                * &(&one + w).pow(n as i64).unwrap())
                * &e;
            let lhs = ctx
                .tables
                .family(runs, n)
                .and_then(|p| p.evaluate(&[(x(), x0.clone())]));
            let context = format!("w = {w}");
            if !run.compare(n, Some(&context), lhs, Ok(Poly::constant(rhs))) {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Row sums of every stored triangle against closed counts, and the
/// `d(n, i, j)` table against the bivariate recurrence.
fn table_marginals(ctx: &Context, run: &mut Run) -> Step {
    let t = &ctx.tables;
    for n in 0..=t.nmax() {
        let fact = factorial(n);
        for name in TriangleName::ALL {
            let expected = match name {
                TriangleName::EulerA | TriangleName::UpDownM | TriangleName::LeftPeakP => {
                    fact.clone()
                }
                TriangleName::EulerB => fact.clone() << n,
                TriangleName::RunsR if n == 0 => BigInt::from(0),
                TriangleName::RunsR => fact.clone(),
                TriangleName::RunsT if n == 0 => BigInt::from(0),
                TriangleName::RunsT => fact.clone() << (n - 1),
            };
            let got = t.triangle(name).row_sum(n);
            let lhs = Poly::constant(Rational::from_bigint(got));
            let rhs = Poly::constant(Rational::from_bigint(expected));
            if !run.compare(n, Some(name.name()), Ok(lhs), Ok(rhs)) {
                return Ok(());
            }
        }
        if !run.compare(
            n,
            Some("d(n,i,j)"),
            Ok(t.derangements().polynomial(n)),
            Ok(d_xy_polynomial(n)),
        ) {
            return Ok(());
        }
    }
    Ok(())
}
