use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::Symbol;
use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial: sorted by symbol, no zero entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: SmallVec<[(Symbol, i32); 4]>,
}

fn overflow(what: impl fmt::Display) -> Error {
    Error::ExponentOverflow(what.to_string())
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(s: Symbol) -> Monomial {
        Monomial::power(s, 1)
    }

    pub fn power(s: Symbol, e: i32) -> Monomial {
        let mut exps = SmallVec::new();
        if e != 0 {
            exps.push((s, e));
        }
        Monomial { exps }
    }

    /// Builds from arbitrary (symbol, exponent) pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Symbol, i32)>>(pairs: I) -> Result<Monomial> {
        let mut m = Monomial::one();
        for (s, e) in pairs {
            m = m.mul(&Monomial::power(s, e))?;
        }
        Ok(m)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, s: Symbol) -> i32 {
        match self.exps.binary_search_by(|(t, _)| t.cmp(&s)) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, i32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.exps.iter().map(|(s, _)| *s)
    }

    /// Sum of exponents (negative exponents count negatively).
    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|(_, e)| *e as i64).sum()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.exps.iter().any(|(_, e)| *e < 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.exps, &other.exps);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).ok_or_else(|| {
                        overflow(format_args!(
                            "{}^{} * {}^{}",
                            a[i].0, a[i].1, b[j].0, b[j].1
                        ))
                    })?;
                    if e != 0 {
                        exps.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        Ok(Monomial { exps })
    }

    pub fn inverse(&self) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        for (s, e) in exps.iter_mut() {
            *e = e
                .checked_neg()
                .ok_or_else(|| overflow(format_args!("1/{s}^{e}")))?;
        }
        Ok(Monomial { exps })
    }

    pub fn div(&self, other: &Monomial) -> Result<Monomial> {
        self.mul(&other.inverse()?)
    }

    pub fn pow(&self, k: i64) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for &(s, e) in &self.exps {
            let p = (e as i64)
                .checked_mul(k)
                .and_then(|p| i32::try_from(p).ok())
                .ok_or_else(|| overflow(format_args!("({s}^{e})^{k}")))?;
            if p != 0 {
                exps.push((s, p));
            }
        }
        Ok(Monomial { exps })
    }

    /// Changes the exponent of `s` by `delta`.
    pub fn shift(&self, s: Symbol, delta: i32) -> Result<Monomial> {
        self.mul(&Monomial::power(s, delta))
    }

    /// Removes `s` from the monomial, returning the remaining part.
    pub fn without(&self, s: Symbol) -> Monomial {
        Monomial {
            exps: self.exps.iter().copied().filter(|(t, _)| *t != s).collect(),
        }
    }

    /// Pure lexicographic comparison with symbols in alphabetical order, the
    /// alphabetically first symbol most significant.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            let next = match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => {
                    i += 1;
                    e.cmp(&0)
                }
                (None, Some(&(_, f))) => {
                    j += 1;
                    0.cmp(&f)
                }
                (Some(&(s, e)), Some(&(t, f))) => match s.cmp(&t) {
                    Ordering::Less => {
                        i += 1;
                        e.cmp(&0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        0.cmp(&f)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        e.cmp(&f)
                    }
                },
            };
            if next != Ordering::Equal {
                return next;
            }
        }
    }

    /// Graded lexicographic comparison: total degree first, then [`cmp_lex`](Self::cmp_lex).
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.cmp_lex(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Symbol {
        Symbol::new(n)
    }

    #[test]
    fn negative_exponents_cancel() {
        let z4 = Monomial::power(s("z"), 4);
        let zm3 = Monomial::power(s("z"), -3);
        assert_eq!(z4.mul(&zm3).unwrap(), Monomial::var(s("z")));
        assert!(Monomial::power(s("z"), 3).mul(&zm3).unwrap().is_one());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Monomial::power(s("x"), i32::MAX);
        assert!(matches!(
            big.mul(&Monomial::var(s("x"))),
            Err(Error::ExponentOverflow(_))
        ));
        assert!(Monomial::power(s("x"), i32::MIN).inverse().is_err());
        assert!(big.pow(2).is_err());
    }

    #[test]
    fn lex_and_grlex() {
        let x2 = Monomial::power(s("x"), 2);
        let xy = Monomial::from_pairs([(s("x"), 1), (s("y"), 1)]).unwrap();
        let y3 = Monomial::power(s("y"), 3);
        assert_eq!(x2.cmp_lex(&xy), Ordering::Greater);
        assert_eq!(xy.cmp_lex(&y3), Ordering::Greater);
        assert_eq!(x2.cmp_grlex(&y3), Ordering::Less);
        assert_eq!(x2.cmp_grlex(&xy), Ordering::Greater);
        let zinv = Monomial::power(s("z"), -1);
        assert_eq!(zinv.cmp_grlex(&Monomial::one()), Ordering::Less);
    }

    #[test]
    fn display() {
        let m = Monomial::from_pairs([(s("z"), -3), (s("x"), 2), (s("y"), 1)]).unwrap();
        assert_eq!(m.to_string(), "x^2*y*z^-3");
        assert_eq!(m.total_degree(), 0);
    }
}
