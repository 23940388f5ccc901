use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::{sym, Monomial, Poly, Rational};

/// `d(n, i, j)`: type B derangements of [n] with `i` weak excedances and
/// `j` anti-excedances. Zero whenever `i + j > n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerangementTable {
    /// `rows[n][i][j]` for `i + j <= n`.
    rows: Vec<Vec<Vec<BigInt>>>,
}

impl DerangementTable {
    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, i: usize, j: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(i))
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_default()
    }

    fn at(&self, n: usize, i: i64, j: i64) -> BigInt {
        if i < 0 || j < 0 {
            BigInt::zero()
        } else {
            self.get(n, i as usize, j as usize)
        }
    }

    /// Overwrites one entry with `i + j <= n`.
    pub fn set(&mut self, n: usize, i: usize, j: usize, value: BigInt) {
        self.rows[n][i][j] = value;
    }

    /// Nonzero entries of row `n` as `(i, j, d(n, i, j))`.
    pub fn entries(&self, n: usize) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for (i, row) in self.rows[n].iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    /// `sum_{i,j} d(n, i, j) x^i y^j`.
    pub fn polynomial(&self, n: usize) -> Poly {
        let (x, y) = (sym("x"), sym("y"));
        let mut p = Poly::zero();
        for (i, j, v) in self.entries(n) {
            let m = Monomial::from_pairs([(x, i as i32), (y, j as i32)]).expect("small exponents");
            p.add_term(m, &Rational::from_bigint(v));
        }
        p
    }
}

/// Builds `d(n, i, j)` for `n <= nmax` from
/// `d(n+1,i,j) = d(n,i,j) + 2i d(n,i,j-1) + 2j d(n,i-1,j) + 4(n-i-j+2) d(n,i-1,j-1)`
/// starting at `d(0,0,0) = d(1,0,0) = 1`.
pub fn d_nij_table(nmax: usize) -> DerangementTable {
    let mut t = DerangementTable {
        rows: Vec::with_capacity(nmax + 1),
    };
    for n in 0..=nmax {
        let mut row: Vec<Vec<BigInt>> = (0..=n).map(|i| vec![BigInt::zero(); n - i + 1]).collect();
        if n <= 1 {
            row[0][0] = BigInt::from(1);
        } else {
            let p = n - 1;
            let pi = p as i64;
            for (i, cols) in row.iter_mut().enumerate() {
                for (j, slot) in cols.iter_mut().enumerate() {
                    let (ii, ji) = (i as i64, j as i64);
                    *slot = t.at(p, ii, ji)
                        + BigInt::from(2 * ii) * t.at(p, ii, ji - 1)
                        + BigInt::from(2 * ji) * t.at(p, ii - 1, ji)
                        + BigInt::from(4 * (pi - ii - ji + 2)) * t.at(p, ii - 1, ji - 1);
                }
            }
        }
        t.rows.push(row);
    }
    t
}

/// `d_n(x, y)` from
/// `d_{n+1} = (1 + 4nxy) d_n + (2xy - 4x^2y) d_n/dx + (2xy - 4xy^2) d_n/dy`,
/// `d_0 = d_1 = 1`.
pub fn d_xy_polynomial(n: usize) -> Poly {
    let (x, y) = (sym("x"), sym("y"));
    let xy = Poly::term(1, Monomial::from_pairs([(x, 1), (y, 1)]).unwrap());
    let two_xy = xy.scale(&Rational::from_integer(2));
    let coeff_dx = &two_xy - &(&xy * &Poly::var(x)).scale(&Rational::from_integer(4));
    let coeff_dy = &two_xy - &(&xy * &Poly::var(y)).scale(&Rational::from_integer(4));
    let mut d = Poly::one();
    for m in 1..n {
        let grow = &Poly::one() + &xy.scale(&Rational::from_integer(4 * m as i64));
        d = &(&(&grow * &d) + &(&coeff_dx * &d.partial_derivative(x)))
            + &(&coeff_dy * &d.partial_derivative(y));
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn small_rows() {
        let t = d_nij_table(4);
        assert_eq!(t.get(2, 0, 0), BigInt::from(1));
        assert_eq!(t.get(2, 1, 1), BigInt::from(4));
        assert_eq!(t.entries(1), [(0, 0, BigInt::from(1))]);
        let total: BigInt = t.entries(3).into_iter().map(|(_, _, v)| v).sum();
        assert_eq!(total, BigInt::from(29));
    }

    #[test]
    fn bivariate_recurrence_agrees_with_table() {
        let t = d_nij_table(10);
        for n in 0..=10 {
            assert_eq!(d_xy_polynomial(n), t.polynomial(n), "n = {n}");
        }
        assert_eq!(d_xy_polynomial(2), parse_poly("1 + 4*x*y").unwrap());
    }

    #[test]
    fn entries_vanish_beyond_n() {
        let t = d_nij_table(6);
        for n in 0..=6 {
            for (i, j, _) in t.entries(n) {
                assert!(i + j <= n);
            }
        }
    }
}
