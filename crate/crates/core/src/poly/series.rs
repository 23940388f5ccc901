use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{Poly, Rational, Symbol};
use crate::error::{Error, Result};

/// Power series in `var`, truncated after `t^order`, with Laurent-polynomial
/// coefficients stored in the ordinary convention (`coeffs[n]` multiplies `t^n`).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    var: Symbol,
    coeffs: Vec<Poly>,
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl TruncatedSeries {
    /// Fails if `var` occurs in any coefficient. `coeffs` must be nonempty.
    pub fn new(var: Symbol, coeffs: Vec<Poly>) -> Result<TruncatedSeries> {
        assert!(
            !coeffs.is_empty(),
            "a truncated series has at least one coefficient"
        );
        if coeffs.iter().any(|c| c.contains_symbol(var)) {
            return Err(Error::SeriesVarInCoefficient(var.to_string()));
        }
        Ok(TruncatedSeries { var, coeffs })
    }

    pub fn zero(var: Symbol, order: usize) -> TruncatedSeries {
        TruncatedSeries {
            var,
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    /// The constant series `c`.
    pub fn constant(var: Symbol, order: usize, c: Poly) -> Result<TruncatedSeries> {
        let mut s = TruncatedSeries::zero(var, order);
        s.coeffs[0] = c;
        TruncatedSeries::new(var, s.coeffs)
    }

    /// Builds from exponential-convention coefficients: `a_n t^n / n!`.
    pub fn from_egf(var: Symbol, egf: Vec<Poly>) -> Result<TruncatedSeries> {
        let coeffs = egf
            .into_iter()
            .enumerate()
            .map(|(n, a)| a.scale(&Rational::from_bigint(factorial(n)).recip().unwrap()))
            .collect();
        TruncatedSeries::new(var, coeffs)
    }

    pub fn var(&self) -> Symbol {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^n`.
    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    /// Exponential coefficient: `n!` times the coefficient of `t^n`.
    pub fn egf_coeff(&self, n: usize) -> Poly {
        self.coeffs[n].scale(&Rational::from_bigint(factorial(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    fn check_var(&self, other: &TruncatedSeries) -> Result<()> {
        if self.var != other.var {
            return Err(Error::SeriesVarMismatch(
                self.var.to_string(),
                other.var.to_string(),
            ));
        }
        Ok(())
    }

    /// `e^{a t}`: coefficients `a^n / n!`.
    pub fn exp(a: &Poly, order: usize, var: Symbol) -> Result<TruncatedSeries> {
        if a.contains_symbol(var) {
            return Err(Error::SeriesVarInCoefficient(var.to_string()));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut power = Poly::one();
        for n in 0..=order {
            if n > 0 {
                power = power.checked_mul(a)?;
            }
            coeffs.push(power.scale(&Rational::from_bigint(factorial(n)).recip().unwrap()));
        }
        Ok(TruncatedSeries { var, coeffs })
    }

    /// `(e^{c b t} - 1) / b`, expanded as `sum_{k>=1} c^k b^(k-1) t^k / k!`.
    ///
    /// Every coefficient is a polynomial even where `b` vanishes.
    pub fn exp_minus_one_over(
        c: &Poly,
        b: &Poly,
        order: usize,
        var: Symbol,
    ) -> Result<TruncatedSeries> {
        if c.contains_symbol(var) || b.contains_symbol(var) {
            return Err(Error::SeriesVarInCoefficient(var.to_string()));
        }
        let mut coeffs = vec![Poly::zero()];
        let mut c_pow = Poly::one();
        let mut b_pow = Poly::one();
        for k in 1..=order {
            c_pow = c_pow.checked_mul(c)?;
            if k > 1 {
                b_pow = b_pow.checked_mul(b)?;
            }
            let inv_fact = Rational::from_bigint(factorial(k)).recip().unwrap();
            coeffs.push(c_pow.checked_mul(&b_pow)?.scale(&inv_fact));
        }
        Ok(TruncatedSeries { var, coeffs })
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        Ok(TruncatedSeries {
            var: self.var,
            coeffs,
        })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        Ok(TruncatedSeries {
            var: self.var,
            coeffs,
        })
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let mut coeffs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = Poly::zero();
            for k in 0..=i {
                if self.coeffs[k].is_zero() || other.coeffs[i - k].is_zero() {
                    continue;
                }
                acc = &acc + &self.coeffs[k].checked_mul(&other.coeffs[i - k])?;
            }
            coeffs.push(acc);
        }
        Ok(TruncatedSeries {
            var: self.var,
            coeffs,
        })
    }

    /// Multiplies every coefficient by `p` (which must not contain the series variable).
    pub fn mul_poly(&self, p: &Poly) -> Result<TruncatedSeries> {
        if p.contains_symbol(self.var) {
            return Err(Error::SeriesVarInCoefficient(self.var.to_string()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(p))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries {
            var: self.var,
            coeffs,
        })
    }

    /// `numerator / self` as a series, for a constant-in-`t` numerator.
    pub fn reciprocal(&self, numerator: &Poly) -> Result<TruncatedSeries> {
        let num = TruncatedSeries::constant(self.var, self.order(), numerator.clone())?;
        num.divide(self)
    }

    /// `self / den`, solving `den_0 * r_n = self_n - sum_{k>=1} den_k r_{n-k}`
    /// by exact polynomial division at every order.
    pub fn divide(&self, den: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_var(den)?;
        let lead = &den.coeffs[0];
        if lead.is_zero() {
            return Err(Error::Domain(
                "series division needs a nonzero constant term".into(),
            ));
        }
        let n = self.order().min(den.order());
        let mut out: Vec<Poly> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut known = self.coeffs[i].clone();
            for k in 1..=i {
                if den.coeffs[k].is_zero() || out[i - k].is_zero() {
                    continue;
                }
                known = &known - &den.coeffs[k].checked_mul(&out[i - k])?;
            }
            let r = known.exact_div(lead)?.ok_or_else(|| {
                Error::InexactDivision(format!(
                    "coefficient of {}^{i}: `{known}` is not divisible by `{lead}`",
                    self.var
                ))
            })?;
            out.push(r);
        }
        Ok(TruncatedSeries {
            var: self.var,
            coeffs: out,
        })
    }

    /// Partial derivative. With respect to the series variable the order drops by one.
    pub fn partial(&self, wrt: Symbol) -> TruncatedSeries {
        if wrt == self.var {
            let coeffs = if self.order() == 0 {
                vec![Poly::zero()]
            } else {
                (1..=self.order())
                    .map(|n| self.coeffs[n].scale(&Rational::from_integer(n as i64)))
                    .collect()
            };
            TruncatedSeries {
                var: self.var,
                coeffs,
            }
        } else {
            TruncatedSeries {
                var: self.var,
                coeffs: self
                    .coeffs
                    .iter()
                    .map(|c| c.partial_derivative(wrt))
                    .collect(),
            }
        }
    }

    /// Substitutes into every coefficient. Binding the series variable is an error.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Poly>) -> Result<TruncatedSeries> {
        if bindings.contains_key(&self.var)
            || bindings.values().any(|v| v.contains_symbol(self.var))
        {
            return Err(Error::SeriesVarInCoefficient(self.var.to_string()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.substitute(bindings))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries {
            var: self.var,
            coeffs,
        })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{n}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn t() -> Symbol {
        Symbol::new("t")
    }

    fn series(cs: &[&str]) -> TruncatedSeries {
        TruncatedSeries::new(t(), cs.iter().map(|c| p(c)).collect()).unwrap()
    }

    #[test]
    fn exp_examples() {
        let e0 = TruncatedSeries::exp(&Poly::zero(), 4, t()).unwrap();
        assert_eq!(e0, series(&["1", "0", "0", "0", "0"]));
        let ex = TruncatedSeries::exp(&p("x"), 2, t()).unwrap();
        assert_eq!(ex, series(&["1", "x", "1/2*x^2"]));
        // e^{xt} - x e^t has constant term 1 - x
        let et = TruncatedSeries::exp(&Poly::one(), 3, t()).unwrap();
        let den = ex.sub(&et.mul_poly(&p("x")).unwrap()).unwrap();
        assert_eq!(den.coeff(0), &p("1 - x"));
        assert!(TruncatedSeries::exp(&p("t"), 2, t()).is_err());
    }

    #[test]
    fn geometric_series() {
        let s = series(&["1", "-1", "0", "0"]);
        assert_eq!(
            s.reciprocal(&Poly::one()).unwrap(),
            series(&["1", "1", "1", "1"])
        );
    }

    #[test]
    fn derangement_egfs() {
        // d_2(x) = x from S_2's single derangement 21, which has one excedance.
        let n = 4;
        let ex = TruncatedSeries::exp(&p("x"), n, t()).unwrap();
        let et = TruncatedSeries::exp(&Poly::one(), n, t()).unwrap();
        let den = ex.sub(&et.mul_poly(&p("x")).unwrap()).unwrap();
        let d = den.reciprocal(&p("1 - x")).unwrap();
        assert_eq!(d.egf_coeff(0), Poly::one());
        assert_eq!(d.egf_coeff(1), Poly::zero());
        assert_eq!(d.egf_coeff(2), p("x"));

        let e2 = TruncatedSeries::exp(&p("2*x - 1"), n, t()).unwrap();
        let den_b = e2.sub(&et.mul_poly(&p("x")).unwrap()).unwrap();
        let db = den_b.reciprocal(&p("1 - x")).unwrap();
        assert_eq!(db.egf_coeff(3), p("1 + 20*x + 8*x^2"));
    }

    #[test]
    fn inexact_division_is_reported() {
        let den = series(&["1 - x", "1"]);
        assert!(matches!(
            den.reciprocal(&Poly::one()),
            Err(Error::InexactDivision(_))
        ));
    }

    #[test]
    fn products_and_derivatives() {
        let d = series(&["1", "1", "1"]).partial(t());
        assert_eq!(d, series(&["1", "2"]));
        let prod = series(&["1", "x"]).mul(&series(&["1", "-x"])).unwrap();
        assert_eq!(prod, series(&["1", "0"]));
        let prod = series(&["1", "x", "0"])
            .mul(&series(&["1", "-x", "0"]))
            .unwrap();
        assert_eq!(prod, series(&["1", "0", "-x^2"]));
        let dx = series(&["x^2", "x*y"]).partial(Symbol::new("x"));
        assert_eq!(dx, series(&["2*x", "y"]));
    }

    #[test]
    fn mismatched_variables() {
        let a = series(&["1"]);
        let b = TruncatedSeries::new(Symbol::new("s"), vec![Poly::one()]).unwrap();
        assert!(matches!(a.add(&b), Err(Error::SeriesVarMismatch(..))));
        assert!(TruncatedSeries::new(t(), vec![p("t")]).is_err());
    }

    #[test]
    fn exp_minus_one_over_has_no_pole() {
        // (e^{2(y-x)t} - 1)/(y-x) at y = x is 2t exactly.
        let s = TruncatedSeries::exp_minus_one_over(&p("2"), &p("y - x"), 3, t()).unwrap();
        let at = BTreeMap::from([(Symbol::new("y"), p("x"))]);
        assert_eq!(s.substitute(&at).unwrap(), series(&["0", "2", "0", "0"]));
        assert_eq!(s.coeff(2), &p("2*y - 2*x"));
    }
}
