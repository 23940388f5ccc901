use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::oracle::{stat_counts, Bounds, Family, Filter, Stat};
use crate::poly::{Monomial, Poly, Rational, Symbol};
use crate::recurrences::{rising_factorial, FamilyName, Tables, TriangleName};

/// Exponent `constant + per_n * n + sum_i per_index[i] * index[i]`, where the
/// indices are the triangle column, the `(i, j)` of the derangement table, or
/// the statistic values of an enumerated element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub constant: i64,
    pub per_n: i64,
    pub per_index: Vec<i64>,
}

impl Affine {
    pub fn eval(&self, n: usize, index: &[i64]) -> i64 {
        self.constant
            + self.per_n * n as i64
            + self
                .per_index
                .iter()
                .zip(index)
                .map(|(a, b)| a * b)
                .sum::<i64>()
    }
}

/// Where the coefficients of a claimed sum come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Row `n + row_offset` of a triangle; one index, the column `k`.
    Triangle {
        name: TriangleName,
        row_offset: usize,
    },
    /// `d(n, i, j)`; indices `i` and `j`.
    Derangements,
    /// Enumeration of a group of size `n + size_offset`; one index per statistic.
    Oracle {
        family: Family,
        filter: Filter,
        size_offset: usize,
        stats: Vec<Stat>,
    },
}

/// Closed family used by a specialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closed {
    Family(FamilyName),
    RisingFactorial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rhs {
    /// `sum coefficient * prod symbol^affine`.
    Sum {
        source: Source,
        exponents: Vec<(Symbol, Affine)>,
    },
    /// A family at `n + n_offset` with `x` (or `q`) replaced per `rename`.
    Specialization {
        closed: Closed,
        n_offset: usize,
        rename: Vec<(Symbol, Poly)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsKind {
    TriangleSum,
    OracleDistribution,
    Specialization,
}

/// `bindings(D^n(seed)) = prefactor * 2^(a n + b) * rhs(n)` for `n` in range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub label: String,
    pub seed: Poly,
    pub n_range: RangeInclusive<usize>,
    /// Values substituted into `D^n(seed)` before comparing; empty unless
    /// the claim is a specialization.
    pub bindings: Vec<(Symbol, Rational)>,
    pub prefactor: Poly,
    /// `(a, b)` in `2^(a n + b)`.
    pub power_of_two: (i64, i64),
    pub rhs: Rhs,
}

impl Claim {
    pub fn kind(&self) -> RhsKind {
        match &self.rhs {
            Rhs::Sum {
                source: Source::Oracle { .. },
                ..
            } => RhsKind::OracleDistribution,
            Rhs::Sum { .. } => RhsKind::TriangleSum,
            Rhs::Specialization { .. } => RhsKind::Specialization,
        }
    }

    /// Enumerated family and group size at `n`, for oracle claims.
    pub fn oracle_size(&self, n: usize) -> Option<(Family, usize)> {
        match &self.rhs {
            Rhs::Sum {
                source:
                    Source::Oracle {
                        family,
                        size_offset,
                        ..
                    },
                ..
            } => Some((*family, n + size_offset)),
            _ => None,
        }
    }

    /// Largest triangle row the claim reads at `n`.
    pub fn table_row(&self, n: usize) -> usize {
        match &self.rhs {
            Rhs::Sum {
                source: Source::Triangle { row_offset, .. },
                ..
            } => n + row_offset,
            Rhs::Specialization { n_offset, .. } => n + n_offset,
            _ => n,
        }
    }

    /// Left side: the specialized derivative.
    pub fn specialize(&self, derivative: &Poly) -> Result<Poly> {
        if self.bindings.is_empty() {
            Ok(derivative.clone())
        } else {
            derivative.evaluate(&self.bindings)
        }
    }

    /// Right side at `n`, reading triangles from `tables`.
    pub fn evaluate(&self, tables: &Tables, bounds: Bounds, n: usize) -> Result<Poly> {
        if !self.n_range.contains(&n) {
            return Err(Error::OutOfRange {
                n,
                range: format!("{}..={}", self.n_range.start(), self.n_range.end()),
            });
        }
        let body = match &self.rhs {
            Rhs::Sum { source, exponents } => {
                let mut acc = Poly::zero();
                for (index, coeff) in coefficients(source, tables, bounds, n)? {
                    let pairs = exponents.iter().map(|(s, a)| {
                        let e = a.eval(n, &index);
                        i32::try_from(e)
                            .map(|e| (*s, e))
                            .map_err(|_| Error::ExponentOverflow(format!("{s}^{e}")))
                    });
                    let m = Monomial::from_pairs(pairs.collect::<Result<Vec<_>>>()?)?;
                    acc.add_term(m, &coeff);
                }
                acc
            }
            Rhs::Specialization {
                closed,
                n_offset,
                rename,
            } => {
                let m = n + n_offset;
                let base = match closed {
                    Closed::Family(f) => tables.family(*f, m)?,
                    Closed::RisingFactorial => rising_factorial(m, crate::poly::sym("q")),
                };
                let map: BTreeMap<Symbol, Poly> = rename.iter().cloned().collect();
                base.substitute(&map)?
            }
        };
        let (a, b) = self.power_of_two;
        let scale = Rational::from_integer(2)
            .pow(a * n as i64 + b)
            .expect("2 is invertible");
        Ok(self.prefactor.checked_mul(&body)?.scale(&scale))
    }
}

type Coefficients = Vec<(Vec<i64>, Rational)>;

fn coefficients(
    source: &Source,
    tables: &Tables,
    bounds: Bounds,
    n: usize,
) -> Result<Coefficients> {
    Ok(match source {
        Source::Triangle { name, row_offset } => {
            let row = n + row_offset;
            if row > tables.nmax() {
                return Err(Error::OutOfRange {
                    n: row,
                    range: format!("0..={}", tables.nmax()),
                });
            }
            let t = tables.triangle(*name);
            name.k_range(row)
                .map(|k| (vec![k as i64], Rational::from_bigint(t.get(row, k))))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        }
        Source::Derangements => {
            if n > tables.nmax() {
                return Err(Error::OutOfRange {
                    n,
                    range: format!("0..={}", tables.nmax()),
                });
            }
            tables
                .derangements()
                .entries(n)
                .into_iter()
                .map(|(i, j, v)| (vec![i as i64, j as i64], Rational::from_bigint(v)))
                .collect()
        }
        Source::Oracle {
            family,
            filter,
            size_offset,
            stats,
        } => stat_counts(*family, n + size_offset, stats, *filter, bounds)?
            .into_iter()
            .map(|(values, count)| {
                let index = values.into_iter().map(i64::from).collect();
                (index, Rational::from_integer(count as i64))
            })
            .collect(),
    })
}
