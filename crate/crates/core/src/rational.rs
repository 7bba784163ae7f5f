//! Rational generating functions `num / den` with integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// A reduced quotient of integer polynomials whose denominator has a
/// positive constant term, so it expands as a power series.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.coeff(0).is_zero() {
            return Err(Error::Series(format!("denominator {den} vanishes at 0")));
        }
        Ok(RationalFunction::reduced(num, den))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RationalFunction {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(IntPoly::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(IntPoly::one())
    }

    fn reduced(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        let c = if den.coeff(0).is_negative() { -c } else { c };
        if !c.is_one() {
            num = IntPoly::new(num.coeffs().iter().map(|a| a / &c).collect());
            den = IntPoly::new(den.coeffs().iter().map(|a| a / &c).collect());
        }
        RationalFunction { num, den }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &other.num, &self.den * &other.den)
    }

    /// `1 / self`; fails when the result has no power series expansion.
    pub fn recip(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Value of the constant term as a fraction `(num(0), den(0))`.
    pub fn constant_term(&self) -> (BigInt, BigInt) {
        (self.num.coeff(0), self.den.coeff(0))
    }

    /// The first `n + 1` power series coefficients.
    pub fn series_coefficients(&self, n: usize) -> Result<Vec<BigInt>> {
        let q0 = self.den.coeff(0);
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for (j, qj) in self.den.coeffs().iter().enumerate().skip(1) {
                if j > k {
                    break;
                }
                acc -= qj * &out[k - j];
            }
            let (a, r) = acc.div_rem(&q0);
            if !r.is_zero() {
                return Err(Error::Series(format!(
                    "coefficient {k} of {self} is not an integer"
                )));
            }
            out.push(a);
        }
        Ok(out)
    }

    /// Series coefficients as `i64`, panicking on overflow; for tests and
    /// small tables.
    pub fn coefficients_i64(&self, n: usize) -> Result<Vec<i64>> {
        use num_traits::ToPrimitive;
        Ok(self
            .series_coefficients(n)?
            .into_iter()
            .map(|c| c.to_i64().expect("coefficient fits in i64"))
            .collect())
    }
}

/// Generating function of the nonempty sum indecomposable members of a sum
/// closed class with generating function `f`: `g = 1 - 1/f`.
pub fn si_gf(f: &RationalFunction) -> Result<RationalFunction> {
    let (a, b) = f.constant_term();
    if a != b {
        return Err(Error::Series(format!(
            "{f} has constant term {a}/{b}, expected 1"
        )));
    }
    // 1 - den/num = (num - den) / num
    RationalFunction::new(&f.num - &f.den, f.num.clone())
}

/// Class generating function `1 / (1 - g)` from the sum indecomposable one.
pub fn sum_closure_gf(g: &RationalFunction) -> Result<RationalFunction> {
    if !g.num.coeff(0).is_zero() {
        return Err(Error::Series(format!("{g} has a nonzero constant term")));
    }
    RationalFunction::new(g.den.clone(), &g.den - &g.num)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn display_and_reduction() {
        let f = rf(&[1, -1], &[1, -2, 0, -1]);
        assert_eq!(f.to_string(), "(1 - x) / (1 - 2x - x^3)");
        let g = rf(&[-2, 2], &[-2, 4, 0, 2]);
        assert_eq!(g, f);
        assert_eq!(rf(&[1, 0, -1], &[1, -1]).to_string(), "1 + x");
        assert!(RationalFunction::new(p(&[1]), p(&[0, 1])).is_err());
    }

    #[test]
    fn series() {
        let f = rf(&[1, -1], &[1, -2, 0, -1]);
        assert_eq!(f.coefficients_i64(5).unwrap(), vec![1, 1, 2, 5, 11, 24]);
        assert_eq!(
            rf(&[1], &[1, -1]).coefficients_i64(3).unwrap(),
            vec![1, 1, 1, 1]
        );
        assert!(rf(&[1], &[2, -1]).series_coefficients(3).is_err());
    }

    #[test]
    fn sum_indecomposable_gf() {
        // x + x^2 + 2x^3 / (1 - x)
        let f = rf(&[1, -1], &[1, -2, 0, -1]);
        let g = si_gf(&f).unwrap();
        let expected = rf(&[0, 1, 0, 1], &[1, -1]);
        assert_eq!(g, expected);
        assert_eq!(g.coefficients_i64(6).unwrap(), vec![0, 1, 1, 2, 2, 2, 2]);
        assert_eq!(si_gf(&rf(&[1], &[1, -1])).unwrap(), rf(&[0, 1], &[1]));
        let f = rf(&[1, -1], &[1, -2, 0, -1, -1, -1]);
        assert_eq!(
            si_gf(&f).unwrap().coefficients_i64(7).unwrap(),
            vec![0, 1, 1, 2, 3, 4, 4, 4]
        );
        assert!(si_gf(&rf(&[2], &[1, -1])).is_err());
        assert_eq!(sum_closure_gf(&si_gf(&f).unwrap()).unwrap(), f);
    }
}
