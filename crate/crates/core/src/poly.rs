//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Ascending coefficients; no trailing zeros, so the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = IntPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exponent of the largest power of `x` dividing `self`.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn strip_x(&self) -> Self {
        IntPoly::new(self.coeffs[self.x_valuation()..].to_vec())
    }

    /// `x^d p(1/x)` with `d` the degree: coefficient reversal.
    pub fn reciprocal(&self) -> Self {
        IntPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Sign of the value at a rational point, computed without fractions.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let d = match self.degree() {
            None => return Ordering::Equal,
            Some(d) => d,
        };
        let (a, b) = (x.numer(), x.denom());
        // b > 0 for a normalized BigRational, so b^d does not change sign.
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        let mut terms = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            terms.push(bpow.clone());
            bpow *= b;
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * a + c * &terms[d - i];
        }
        acc.sign_ordering()
    }

    /// Quotient when `divisor` divides `self` in Z[x], `None` otherwise.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_z(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Long division that requires every step to divide exactly by the
    /// divisor's leading coefficient.
    fn div_rem_z(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dd = divisor.degree()?;
        let lead = divisor.lead();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lead);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        Some((IntPoly::new(q), IntPoly::new(r)))
    }

    /// Pseudo-remainder together with the sign of the multiplier applied to
    /// `self` (`lc(b)^steps`).
    pub fn pseudo_rem(&self, b: &IntPoly) -> (IntPoly, bool) {
        let db = b.degree().expect("pseudo-remainder by zero");
        let lb = b.lead();
        let mut r = self.clone();
        let mut flips = false;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            r = &r.scale(&lb) - &b.shift(dr - db).scale(&lr);
            if lb.is_negative() {
                flips = !flips;
            }
        }
        (r, flips)
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Product of the distinct irreducible factors (primitive).
    pub fn square_free(&self) -> IntPoly {
        if self.is_constant() {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive()
            .div_exact(&g)
            .expect("gcd divides")
            .primitive()
    }

    /// Removes every cyclotomic factor and every factor of `x`, then makes
    /// the result primitive with positive leading coefficient.
    pub fn strip_unit_circle_factors(&self) -> IntPoly {
        let mut p = self.strip_x().primitive();
        let mut k = 1;
        loop {
            let deg = p.degree().unwrap_or(0);
            if deg == 0 {
                break;
            }
            let phi = totient(k);
            if phi <= deg {
                let c = cached_cyclotomic(k);
                while let Some(q) = p.div_exact(&c) {
                    p = q;
                }
            }
            // phi(k) >= sqrt(k/2), so no cyclotomic factor of degree <= deg
            // has index beyond 2 deg^2.
            if k > 2 * deg * deg + 2 {
                break;
            }
            k += 1;
        }
        p.primitive()
    }

    /// Descending display in `x`, e.g. `x^3 - 2x^2 - 1`.
    pub fn descending(&self) -> String {
        format_terms(self.coeffs.iter().enumerate().rev())
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (usize, &'a BigInt)>) -> String {
    let mut out = String::new();
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag.is_one();
        match i {
            0 => out.push_str(&mag.to_string()),
            1 => {
                if !unit {
                    out.push_str(&mag.to_string());
                }
                out.push('x');
            }
            _ => {
                if !unit {
                    out.push_str(&mag.to_string());
                }
                out.push_str(&format!("x^{i}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn totient(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(n: usize) -> i32 {
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

fn cached_cyclotomic(k: usize) -> IntPoly {
    static CACHE: OnceLock<Mutex<HashMap<usize, IntPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("cache lock").get(&k) {
        return c.clone();
    }
    let c = cyclotomic(k);
    cache.lock().expect("cache lock").insert(k, c.clone());
    c
}

/// The `k`th cyclotomic polynomial, as the Moebius product of `x^d - 1`.
pub fn cyclotomic(k: usize) -> IntPoly {
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in 1..=k {
        if k.is_multiple_of(d) {
            let f = &IntPoly::monomial(BigInt::one(), d) - &IntPoly::one();
            match mobius(k / d) {
                1 => num = &num * &f,
                -1 => den = &den * &f,
                _ => {}
            }
        }
    }
    num.div_exact(&den).expect("cyclotomic division")
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl fmt::Display for IntPoly {
    /// Ascending display, e.g. `1 - 2x - x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.coeffs.iter().enumerate()))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.descending())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 0, -1]).to_string(), "1 - 2x - x^3");
        assert_eq!(p(&[-1, 0, -2, 1]).descending(), "x^3 - 2x^2 - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, 3]).to_string(), "3x");
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(p(&[-1, 0, 1]).div_exact(&b), Some(a.clone()));
        assert_eq!(p(&[1, 0, 1]).div_exact(&b), None);
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p(&[1, 1]);
        let b = p(&[-2, 1]);
        let c = p(&[3, 0, 1]);
        let f = &(&a * &a) * &b;
        let g = &(&a * &b) * &c;
        assert_eq!(f.gcd(&g), (&a * &b).primitive());
        assert_eq!(f.square_free(), (&a * &b).primitive());
        assert_eq!(p(&[6, 4]).gcd(&p(&[9, 6])), p(&[3, 2]));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        let xi = p(&[-1, -1, -1, 0, -2, 1]);
        let noisy = &(&(&xi * &cyclotomic(2)) * &cyclotomic(3)).shift(2) * &cyclotomic(1);
        assert_eq!(noisy.strip_unit_circle_factors(), xi);
    }

    #[test]
    fn signs() {
        let q = p(&[-2, 0, 1]);
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(q.sign_at(&r(3, 2)), Ordering::Greater);
        assert_eq!(q.sign_at(&r(-7, 5)), Ordering::Less);
        assert_eq!(p(&[-4, 2]).sign_at(&r(2, 1)), Ordering::Equal);
    }
}
