use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{sym, Poly, Symbol, TruncatedSeries};

/// Closed-form exponential generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Egf {
    /// `(1 - x) / (e^{xt} - x e^t)`: derangements by excedances.
    DA,
    /// `(1 - x) / (e^{(2x-1)t} - x e^t)`: type B derangements by weak excedances.
    DB,
    /// `e^{(1-2x)t} / (1 - x/(y-x) (e^{2(y-x)t} - 1))`: by weak excedances and anti-excedances.
    G,
    /// Five-statistic refinement of `G` over `x, y, z, u, v`.
    FiveVar,
}

impl Egf {
    pub const ALL: [Egf; 4] = [Egf::DA, Egf::DB, Egf::G, Egf::FiveVar];

    pub fn name(self) -> &'static str {
        match self {
            Egf::DA => "dA",
            Egf::DB => "dB",
            Egf::G => "G",
            Egf::FiveVar => "fivevar",
        }
    }
}

impl fmt::Display for Egf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Egf {
    type Err = Error;
    fn from_str(s: &str) -> Result<Egf> {
        let key = s.strip_prefix("egf-").unwrap_or(s);
        match key {
            "dA" => Ok(Egf::DA),
            "dB" => Ok(Egf::DB),
            "G" => Ok(Egf::G),
            "fivevar" | "5var" => Ok(Egf::FiveVar),
            _ => Err(Error::unknown("generating function", s)),
        }
    }
}

/// Series variable of every closed form.
pub fn series_var() -> Symbol {
    sym("t")
}

fn v(name: &str) -> Poly {
    Poly::var(sym(name))
}

/// `(1 - x) / (e^{a t} - x e^t)`.
fn derangement_form(a: &Poly, order: usize) -> Result<TruncatedSeries> {
    let t = series_var();
    let x = v("x");
    let den = TruncatedSeries::exp(a, order, t)?
        .sub(&TruncatedSeries::exp(&Poly::one(), order, t)?.mul_poly(&x)?)?;
    den.reciprocal(&(&Poly::one() - &x))
}

/// `e^{a t} / (1 - x (e^{c b t} - 1) / b)` with the quotient expanded so no
/// coefficient divides by `b`.
fn weak_excedance_form(a: &Poly, c: &Poly, b: &Poly, order: usize) -> Result<TruncatedSeries> {
    let t = series_var();
    let num = TruncatedSeries::exp(a, order, t)?;
    let tail = TruncatedSeries::exp_minus_one_over(c, b, order, t)?.mul_poly(&v("x"))?;
    let den = TruncatedSeries::constant(t, order, Poly::one())?.sub(&tail)?;
    num.divide(&den)
}

/// The closed form of `egf` through `t^order`.
pub fn egf_reference(egf: Egf, order: usize) -> Result<TruncatedSeries> {
    let (x, y) = (v("x"), v("y"));
    let two = Poly::constant(2);
    match egf {
        Egf::DA => derangement_form(&x, order),
        Egf::DB => derangement_form(&(&(&two * &x) - &Poly::one()), order),
        Egf::G => weak_excedance_form(&(&Poly::one() - &(&two * &x)), &two, &(&y - &x), order),
        Egf::FiveVar => {
            let (z, u, w) = (v("z"), v("u"), v("v"));
            let u_plus_v = &u + &w;
            let a = &(&w * &z) - &(&u_plus_v * &x);
            weak_excedance_form(&a, &u_plus_v, &(&y - &x), order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn constant_terms() {
        for egf in Egf::ALL {
            assert_eq!(
                egf_reference(egf, 0).unwrap().egf_coeff(0),
                Poly::one(),
                "{egf}"
            );
        }
    }

    #[test]
    fn known_coefficients() {
        let db = egf_reference(Egf::DB, 4).unwrap();
        assert_eq!(db.egf_coeff(3), parse_poly("1 + 20*x + 8*x^2").unwrap());
        let g = egf_reference(Egf::G, 3).unwrap();
        assert_eq!(g.egf_coeff(2), parse_poly("1 + 4*x*y").unwrap());
        let da = egf_reference(Egf::DA, 4).unwrap();
        assert_eq!(da.egf_coeff(4), parse_poly("x + 7*x^2 + x^3").unwrap());
    }

    #[test]
    fn names() {
        assert_eq!("egf-5var".parse::<Egf>().unwrap(), Egf::FiveVar);
        assert_eq!("fivevar".parse::<Egf>().unwrap(), Egf::FiveVar);
        assert!("H".parse::<Egf>().is_err());
    }
}
