//! Named finite-range verifications. Each check evaluates two or more
//! independent computations of the same quantity and compares them exactly.

mod checks;
mod egf;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

pub use egf::{egf_reference, series_var, Egf};

use crate::catalog::catalog_keys;
use crate::error::{Error, Result};
use crate::oracle::{Bounds, Family};
use crate::poly::Poly;
use crate::recurrences::Tables;

/// Every check key, in report order.
pub const CHECK_KEYS: &[&str] = &[
    "cor-2-2",
    "symmetry-A",
    "rising-factorial",
    "cor-3-3",
    "prop-3-4",
    "R-convolution",
    "bona",
    "M-convolution",
    "cor-4-2-poly",
    "cor-4-2-num",
    "wexc-vs-des",
    "eq-8",
    "grammar-claims",
    "egf-dA",
    "egf-dB",
    "egf-G",
    "pde-12",
    "egf-5var",
    "rundef-w-A",
    "rundef-w-B",
    "table-marginals",
];

/// Rows kept in the shared tables; enough for every identity at `n <= 15`.
pub const TABLE_ROWS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileName {
    Quick,
    Full,
}

impl FromStr for ProfileName {
    type Err = Error;
    fn from_str(s: &str) -> Result<ProfileName> {
        match s {
            "quick" => Ok(ProfileName::Quick),
            "full" => Ok(ProfileName::Full),
            _ => Err(Error::unknown("profile", s)),
        }
    }
}

impl fmt::Display for ProfileName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProfileName::Quick => "quick",
            ProfileName::Full => "full",
        })
    }
}

/// Upper limits per kind of check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Profile {
    /// Convolutions and other triangle identities.
    pub identity_n: usize,
    /// Grammar claims read from triangles, and specializations.
    pub claim_n: usize,
    /// Checks that enumerate S_n.
    pub oracle_sym_n: usize,
    /// Checks that enumerate B_n.
    pub oracle_hyp_n: usize,
    /// Truncation order of generating functions.
    pub egf_order: usize,
    /// Enumeration for the five-statistic generating function.
    pub fivevar_n: usize,
    /// Run-polynomial definitions at rational points.
    pub rundef_n: usize,
}

impl Profile {
    pub fn quick() -> Profile {
        Profile {
            identity_n: 10,
            claim_n: 10,
            oracle_sym_n: 5,
            oracle_hyp_n: 5,
            egf_order: 8,
            fivevar_n: 5,
            rundef_n: 10,
        }
    }

    pub fn full() -> Profile {
        Profile {
            identity_n: 15,
            claim_n: 12,
            oracle_sym_n: 7,
            oracle_hyp_n: 6,
            egf_order: 12,
            fivevar_n: 5,
            rundef_n: 10,
        }
    }

    pub fn named(name: ProfileName) -> Profile {
        match name {
            ProfileName::Quick => Profile::quick(),
            ProfileName::Full => Profile::full(),
        }
    }

    /// Every limit set to `n`.
    pub fn uniform(n: usize) -> Profile {
        Profile {
            identity_n: n,
            claim_n: n,
            oracle_sym_n: n,
            oracle_hyp_n: n,
            egf_order: n,
            fivevar_n: n,
            rundef_n: n,
        }
    }
}

/// Inputs shared by all checks.
#[derive(Debug, Clone)]
pub struct Context {
    pub tables: Tables,
    pub bounds: Bounds,
    pub profile: Profile,
}

impl Context {
    pub fn new(profile: Profile) -> Context {
        Context {
            tables: Tables::build(TABLE_ROWS),
            bounds: Bounds::default(),
            profile,
        }
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Context {
        self.bounds = bounds;
        self
    }

    /// Largest `n` an enumeration check may use for `family`.
    pub(crate) fn oracle_limit(&self, family: Family) -> usize {
        let by_profile = match family {
            Family::Sym => self.profile.oracle_sym_n,
            Family::Hyp => self.profile.oracle_hyp_n,
        };
        by_profile.min(self.bounds.limit(family))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// The first disagreement found, both sides in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
    /// Which sub-identity disagreed, when a check covers several.
    pub context: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub key: String,
    /// `n` values (or truncation orders) examined.
    pub range: RangeInclusive<usize>,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Catalog entries whose grammars the check derived from.
    pub exercised: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates comparisons for one check and keeps the first failure.
pub(crate) struct Run {
    key: &'static str,
    lo: usize,
    hi: Option<usize>,
    witness: Option<Witness>,
    exercised: Vec<String>,
}

fn render(side: &Result<Poly>) -> String {
    match side {
        Ok(p) => p.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

impl Run {
    pub(crate) fn new(key: &'static str, lo: usize) -> Run {
        Run {
            key,
            lo,
            hi: None,
            witness: None,
            exercised: Vec::new(),
        }
    }

    pub(crate) fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub(crate) fn exercise(&mut self, entry: &str) {
        if !self.exercised.iter().any(|e| e == entry) {
            self.exercised.push(entry.to_string());
        }
    }

    /// Widens the reported range to include `n`.
    pub(crate) fn cover(&mut self, n: usize) {
        self.hi = Some(self.hi.map_or(n, |h| h.max(n)));
        self.lo = self.lo.min(n);
    }

    /// Compares `lhs` and `rhs` at `n`; returns false once the check has failed.
    pub(crate) fn compare(
        &mut self,
        n: usize,
        context: Option<&str>,
        lhs: Result<Poly>,
        rhs: Result<Poly>,
    ) -> bool {
        if self.failed() {
            return false;
        }
        self.cover(n);
        let equal = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
        if !equal {
            self.witness = Some(Witness {
                n,
                lhs: render(&lhs),
                rhs: render(&rhs),
                context: context.map(str::to_string),
            });
        }
        equal
    }

    /// Records a failure that has no two sides, such as a computation error.
    pub(crate) fn error(&mut self, n: usize, context: Option<&str>, err: Error) {
        self.compare(n, context, Err(err), Ok(Poly::zero()));
    }

    pub(crate) fn finish(self) -> CheckResult {
        let hi = self.hi.unwrap_or(self.lo);
        CheckResult {
            key: self.key.to_string(),
            range: self.lo.min(hi)..=hi,
            status: if self.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            witness: self.witness,
            exercised: self.exercised,
        }
    }
}

/// Runs one check with every limit set to `nmax` (clamped by enumeration bounds).
pub fn run_check(key: &str, nmax: usize) -> Result<CheckResult> {
    run_check_with(&Context::new(Profile::uniform(nmax)), key)
}

pub fn run_check_with(ctx: &Context, key: &str) -> Result<CheckResult> {
    let key = CHECK_KEYS
        .iter()
        .copied()
        .find(|k| *k == key)
        .ok_or_else(|| Error::unknown("check", key))?;
    Ok(checks::run(ctx, key))
}

/// Results of a whole suite run, in [`CHECK_KEYS`] order.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
    /// Catalog entries no check derived from; empty when coverage is complete.
    pub uncovered_entries: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.uncovered_entries.is_empty() && self.results.iter().all(CheckResult::passed)
    }
}

pub fn run_all(profile: ProfileName) -> SuiteReport {
    run_all_with(&Context::new(Profile::named(profile)))
}

/// Runs every check concurrently; the report order does not depend on timing.
pub fn run_all_with(ctx: &Context) -> SuiteReport {
    let results: Vec<CheckResult> = CHECK_KEYS
        .par_iter()
        .map(|key| checks::run(ctx, key))
        .collect();
    let exercised: BTreeSet<&str> = results
        .iter()
        .flat_map(|r| r.exercised.iter().map(String::as_str))
        .collect();
    let uncovered_entries = catalog_keys()
        .into_iter()
        .filter(|k| !exercised.contains(k))
        .map(str::to_string)
        .collect();
    SuiteReport {
        results,
        uncovered_entries,
    }
}
