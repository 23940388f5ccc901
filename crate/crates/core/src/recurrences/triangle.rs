use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriangleName {
    /// Eulerian numbers: permutations of S_n by excedances (or descents).
    EulerA,
    /// Type B Eulerian numbers: B_n by type B descents.
    EulerB,
    /// Permutations of S_n by alternating runs.
    RunsR,
    /// Permutations of S_n by up-down runs.
    UpDownM,
    /// Permutations of S_n by left peaks.
    LeftPeakP,
    /// Up signed permutations of B_n by alternating runs.
    RunsT,
}

impl TriangleName {
    pub const ALL: [TriangleName; 6] = [
        TriangleName::EulerA,
        TriangleName::EulerB,
        TriangleName::RunsR,
        TriangleName::UpDownM,
        TriangleName::LeftPeakP,
        TriangleName::RunsT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TriangleName::EulerA => "eulerA",
            TriangleName::EulerB => "eulerB",
            TriangleName::RunsR => "runsR",
            TriangleName::UpDownM => "updownM",
            TriangleName::LeftPeakP => "leftpeakP",
            TriangleName::RunsT => "runsT",
        }
    }

    /// First row with a nonempty declared range.
    pub fn first_row(self) -> usize {
        match self {
            TriangleName::RunsR | TriangleName::RunsT => 1,
            _ => 0,
        }
    }

    /// Declared column range of row `n`. Entries outside it are zero.
    pub fn k_range(self, n: usize) -> Range<usize> {
        use TriangleName::*;
        match (self, n) {
            (RunsR | RunsT, 0) => 0..0,
            (EulerA | UpDownM, 0) => 0..1,
            (EulerA, n) => 0..n,
            (EulerB, n) => 0..n + 1,
            (RunsR, 1) => 0..1,
            (RunsR, n) => 1..n,
            (UpDownM | RunsT, n) => 1..n + 1,
            (LeftPeakP, n) => 0..n / 2 + 1,
        }
    }
}

impl fmt::Display for TriangleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TriangleName {
    type Err = Error;
    fn from_str(s: &str) -> Result<TriangleName> {
        TriangleName::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::unknown("triangle", s))
    }
}

/// Rows `0..=nmax` of a number triangle. Row `n` stores columns `0..=n + 1`
/// so that every declared range fits and lookups outside return zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    name: TriangleName,
    rows: Vec<Vec<BigInt>>,
}

impl Triangle {
    pub fn name(&self) -> TriangleName {
        self.name
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry `(n, k)`; zero outside the stored rows and columns.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    fn at(&self, n: usize, k: i64) -> BigInt {
        if k < 0 {
            BigInt::zero()
        } else {
            self.get(n, k as usize)
        }
    }

    /// Overwrites one entry. Used to check that downstream identities notice.
    pub fn set(&mut self, n: usize, k: usize, value: BigInt) {
        let row = &mut self.rows[n];
        if row.len() <= k {
            row.resize(k + 1, BigInt::zero());
        }
        row[k] = value;
    }

    /// Entries of row `n` over its declared range.
    pub fn row(&self, n: usize) -> Vec<BigInt> {
        self.name.k_range(n).map(|k| self.get(n, k)).collect()
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.rows.get(n).map(|r| r.iter().sum()).unwrap_or_default()
    }

    /// `sum_k entry(n, k) * var^k` over the declared range of row `n`.
    pub fn polynomial(&self, n: usize, var: Symbol) -> Poly {
        self.polynomial_from(n, 0, var)
    }

    /// As [`Triangle::polynomial`], keeping only columns `k >= k_min`.
    pub fn polynomial_from(&self, n: usize, k_min: usize, var: Symbol) -> Poly {
        let mut p = Poly::zero();
        for k in self.name.k_range(n).filter(|&k| k >= k_min) {
            let c = self.get(n, k);
            if !c.is_zero() {
                p.add_term(Monomial::power(var, k as i32), &Rational::from_bigint(c));
            }
        }
        p
    }

    /// One line per row from the first defined row, entries comma-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for n in self.name.first_row()..=self.nmax() {
            let row: Vec<String> = self.row(n).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Builds rows `0..=nmax` of the named triangle from its recurrence.
pub fn triangle(name: TriangleName, nmax: usize) -> Triangle {
    let mut t = Triangle {
        name,
        rows: Vec::with_capacity(nmax + 1),
    };
    for n in 0..=nmax {
        let width = n + 2;
        let mut row = vec![BigInt::zero(); width];
        let initial: Option<&[(usize, i64)]> = match (name, n) {
            (TriangleName::EulerA | TriangleName::EulerB | TriangleName::UpDownM, 0) => {
                Some(&[(0, 1)])
            }
            // Empty product convention; only the convolutions read it.
            (TriangleName::LeftPeakP, 0) => Some(&[(0, 1)]),
            (TriangleName::RunsR | TriangleName::RunsT, 0) => Some(&[]),
            (TriangleName::RunsR | TriangleName::LeftPeakP, 1) => Some(&[(0, 1)]),
            (TriangleName::UpDownM | TriangleName::RunsT, 1) => Some(&[(1, 1)]),
            _ => None,
        };
        if let Some(init) = initial {
            for &(k, v) in init {
                row[k] = big(v);
            }
        } else {
            let p = n - 1;
            let ni = n as i64;
            for (k, slot) in row.iter_mut().enumerate() {
                let ki = k as i64;
                let same = t.at(p, ki);
                let one = t.at(p, ki - 1);
                let two = t.at(p, ki - 2);
                *slot = match name {
                    TriangleName::EulerA => big(ki + 1) * same + big(ni - ki) * one,
                    // B(n, k) = (2k+1) B(n-1, k) + (2n-2k+1) B(n-1, k-1)
                    TriangleName::EulerB => big(2 * ki + 1) * same + big(2 * ni - 2 * ki + 1) * one,
                    TriangleName::RunsR => big(ki) * same + big(2) * one + big(ni - ki) * two,
                    TriangleName::UpDownM => big(ki) * same + one + big(ni - ki + 1) * two,
                    TriangleName::LeftPeakP => big(2 * ki + 1) * same + big(ni - 2 * ki + 1) * one,
                    TriangleName::RunsT => {
                        if k == 0 {
                            BigInt::zero()
                        } else {
                            big(2 * ki - 1) * same + big(3) * one + big(2 * ni - 2 * ki + 2) * two
                        }
                    }
                };
            }
        }
        t.rows.push(row);
    }
    t
}
