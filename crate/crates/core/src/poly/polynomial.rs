use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, Rational, Symbol};
use crate::error::{Error, Result};

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: impl Into<Rational>) -> Poly {
        Poly::term(c, Monomial::one())
    }

    pub fn var(s: Symbol) -> Poly {
        Poly::term(1, Monomial::var(s))
    }

    /// Single term `c * m`.
    pub fn term(c: impl Into<Rational>, m: Monomial) -> Poly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in storage order (not the canonical print order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// The single term if this polynomial is `c * m` with `c != 0`.
    pub fn as_single_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.symbols()).collect()
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) != 0)
    }

    /// Terms in canonical order: ascending total degree, and within a degree
    /// descending lexicographic order (alphabetically first symbol most
    /// significant).
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            a.0.total_degree()
                .cmp(&b.0.total_degree())
                .then_with(|| b.0.cmp_lex(a.0))
        });
        v
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn sum_ref(&self, other: &Poly) -> Poly {
        let (mut acc, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            acc.add_term(m.clone(), c);
        }
        acc
    }

    fn diff_ref(&self, other: &Poly) -> Poly {
        let mut acc = self.clone();
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), &-c);
        }
        acc
    }

    fn negated(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// Multiplies every term by the monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            terms.insert(n.mul(m)?, c.clone());
        }
        Ok(Poly { terms })
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                acc.add_term(m.mul(n)?, &(c * d));
            }
        }
        Ok(acc)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Poly> {
        if let Some((m, c)) = self.as_single_term() {
            let c = c.pow(k as i64).expect("nonnegative power");
            return Ok(Poly::term(c, m.pow(k as i64)?));
        }
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of an invertible element (nonzero single term).
    pub fn inverse(&self) -> Option<Poly> {
        let (m, c) = self.as_single_term()?;
        Some(Poly::term(c.recip()?, m.inverse().ok()?))
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn checked_powi(&self, k: i64) -> Result<Poly> {
        let k32 = |k: i64| {
            u32::try_from(k.unsigned_abs())
                .map_err(|_| Error::ExponentOverflow(format!("power {k}")))
        };
        if k >= 0 {
            return self.checked_pow(k32(k)?);
        }
        let inv = self.inverse().ok_or_else(|| {
            Error::Domain(format!(
                "cannot raise non-invertible `{self}` to the power {k}"
            ))
        })?;
        inv.checked_pow(k32(k)?)
    }

    /// ∂/∂v, term by term; the power rule holds for negative exponents too.
    pub fn partial_derivative(&self, v: Symbol) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            // e - 1 cannot overflow unless e == i32::MIN, where it is an error.
            let Ok(dm) = m.shift(v, -1) else {
                panic!("exponent underflow differentiating {v}^{e}");
            };
            terms.insert(dm, c * &Rational::from_integer(e as i64));
        }
        Poly { terms }
    }

    /// Simultaneous substitution of polynomials for symbols.
    ///
    /// A symbol that occurs with a negative exponent must be bound to an
    /// invertible value (a nonzero constant or a nonzero single term).
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Poly>) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::term(c.clone(), Monomial::one());
            let mut rest = Vec::new();
            for (s, e) in m.iter() {
                match bindings.get(&s) {
                    Some(value) => {
                        let factor = value.checked_powi(e as i64).map_err(|err| match err {
                            Error::Domain(_) => Error::Domain(format!(
                                "substituting `{value}` for {s} in {s}^{e}: value is not invertible"
                            )),
                            other => other,
                        })?;
                        term = term.checked_mul(&factor)?;
                    }
                    None => rest.push((s, e)),
                }
            }
            let rest = Monomial::from_pairs(rest)?;
            for (n, d) in term.mul_monomial(&rest)?.terms {
                acc.add_term(n, &d);
            }
        }
        Ok(acc)
    }

    /// Substitution of rational values.
    pub fn evaluate(&self, bindings: &[(Symbol, Rational)]) -> Result<Poly> {
        let map = bindings
            .iter()
            .map(|(s, v)| (*s, Poly::constant(v.clone())))
            .collect();
        self.substitute(&map)
    }

    /// Per-symbol minimum exponent over all terms (a symbol absent from some
    /// term has minimum at most 0).
    fn min_exponents(&self) -> Monomial {
        let syms = self.symbols();
        let pairs = syms.into_iter().map(|s| {
            let lo = self.terms.keys().map(|m| m.exponent(s)).min().unwrap_or(0);
            (s, lo)
        });
        Monomial::from_pairs(pairs).expect("exponents already in range")
    }

    /// Exact division. Returns `Ok(None)` when `divisor` does not divide `self`
    /// in the Laurent polynomial ring.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>> {
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Some(Poly::zero()));
        }
        if let Some(inv) = divisor.inverse() {
            return Ok(Some(self.checked_mul(&inv)?));
        }
        // Shift both sides to genuine polynomials with every per-symbol minimum
        // exponent at 0. Divisibility is unchanged and the quotient is then a
        // polynomial too, so plain multivariate division decides it.
        let shift_num = self.min_exponents().inverse()?;
        let shift_den = divisor.min_exponents().inverse()?;
        let num = self.mul_monomial(&shift_num)?;
        let den = divisor.mul_monomial(&shift_den)?;
        let (lead_m, lead_c) = den.leading_lex().expect("nonzero divisor");
        let lead_inv = lead_c.recip().expect("nonzero coefficient");

        let mut rem = num;
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_lex() {
            let qm = m.div(&lead_m)?;
            if qm.has_negative_exponent() {
                return Ok(None);
            }
            let qc = &c * &lead_inv;
            let step = den.mul_monomial(&qm)?.scale(&qc);
            rem = &rem - &step;
            quot.add_term(qm, &qc);
        }
        // Undo the shifts: self / divisor = quot * shift_den / shift_num.
        let undo = shift_den.div(&shift_num)?;
        Ok(Some(quot.mul_monomial(&undo)?))
    }

    fn leading_lex(&self) -> Option<(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.cmp_lex(b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }
}

impl fmt::Display for Poly {
    /// Canonical text form, e.g. `1 - 1/2*x*y + 3*z^-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.canonical_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl From<Symbol> for Poly {
    fn from(s: Symbol) -> Self {
        Poly::var(s)
    }
}

// Operator sugar. Multiplication panics on exponent overflow; fallible
// callers use `checked_mul`.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.sum_ref(rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.diff_ref(rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("exponent overflow")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.negated()
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.negated()
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            for (m, c) in p.terms {
                acc.add_term(m, &c);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        let q = p("3*x*y - 1/2*z^-3");
        assert_eq!(&q + &Poly::zero(), q);
        assert_eq!(&p("z^4") * &p("z^-3"), p("z"));
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn overflow_propagates() {
        let big = Poly::term(1, Monomial::power(sym("x"), i32::MAX));
        assert!(matches!(
            big.checked_mul(&p("x")),
            Err(Error::ExponentOverflow(_))
        ));
    }

    #[test]
    fn substitution_examples() {
        let one = Poly::one();
        let b = BTreeMap::from([(sym("y"), one.clone())]);
        assert_eq!(p("x*y^2").substitute(&b).unwrap(), p("x"));
        let b = BTreeMap::from([(sym("y"), one.clone()), (sym("q"), one.clone())]);
        assert_eq!(p("x + q*x*y").substitute(&b).unwrap(), p("2*x"));
        // simultaneous, not sequential
        let swap = BTreeMap::from([(sym("x"), p("y")), (sym("y"), p("x"))]);
        assert_eq!(p("x^2*y").substitute(&swap).unwrap(), p("x*y^2"));
    }

    #[test]
    fn substitution_into_negative_powers() {
        let zero = BTreeMap::from([(sym("z"), Poly::zero())]);
        assert!(matches!(p("z^-3").substitute(&zero), Err(Error::Domain(_))));
        let sum = BTreeMap::from([(sym("z"), p("1 + x"))]);
        assert!(matches!(
            p("x*z^-1").substitute(&sum),
            Err(Error::Domain(_))
        ));
        let half = BTreeMap::from([(sym("z"), p("2*y"))]);
        assert_eq!(p("z^-2").substitute(&half).unwrap(), p("1/4*y^-2"));
        // zero into a nonnegative power is fine
        assert_eq!(p("z^2 + 1").substitute(&zero).unwrap(), Poly::one());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^2*y").partial_derivative(sym("x")), p("2*x*y"));
        assert_eq!(p("z^-3").partial_derivative(sym("z")), p("-3*z^-4"));
        // A_2(x;q) = q^2 + q*x; the q-Eulerian recurrence at n = 2 builds A_3(x;q).
        let a2 = p("q^2 + q*x");
        assert_eq!(a2.partial_derivative(sym("x")), p("q"));
        let a3 = &(&p("2*x + q") * &a2) + &(&p("x - x^2") * &a2.partial_derivative(sym("x")));
        assert_eq!(a3, p("q^3 + 3*q^2*x + q*x + q*x^2"));
    }

    #[test]
    fn exact_division() {
        let d = p("1 - x");
        let n = &p("1 + 4*x - 3*y") * &d;
        assert_eq!(n.exact_div(&d).unwrap(), Some(p("1 + 4*x - 3*y")));
        assert_eq!(p("1").exact_div(&d).unwrap(), None);
        assert_eq!(
            p("x^2 - y^2").exact_div(&p("x + y")).unwrap(),
            Some(p("x - y"))
        );
        // Laurent quotient
        let l = &p("z^-2 + x") * &p("x*z - y");
        assert_eq!(l.exact_div(&p("x*z - y")).unwrap(), Some(p("z^-2 + x")));
        assert_eq!(
            p("x + y^-1").exact_div(&p("y^-1")).unwrap(),
            Some(p("x*y + 1"))
        );
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("x^3 + 4*x^2 + x").to_string(), "x + 4*x^2 + x^3");
        assert_eq!(p("y^2 + x*y + x^2 - 1").to_string(), "-1 + x^2 + x*y + y^2");
        assert_eq!(p("-1/2*z^-3").to_string(), "-1/2*z^-3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn invertible_powers() {
        assert_eq!(p("2*z").checked_powi(-2).unwrap(), p("1/4*z^-2"));
        assert!(p("1 + z").checked_powi(-1).is_err());
    }
}
