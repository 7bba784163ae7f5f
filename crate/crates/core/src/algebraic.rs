//! Real algebraic numbers by exact root isolation, and growth rates of
//! rational generating functions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::rational::RationalFunction;

/// Default isolating interval width.
pub const DEFAULT_EPS: f64 = 1e-12;

/// Growth rate constants known only as decimals; kept for display.
pub const LAMBDA_B: f64 = 2.35698;
pub const THETA_B: f64 = 2.355256;
pub const PHI: f64 = 1.618033988749895;

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if d.is_zero() {
            return SturmChain { chain };
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (r, flipped) = chain[n - 2].pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // Positive rescaling only: undo a negative multiplier, then negate.
            let c = r.content();
            let mut next = IntPoly::new(r.coeffs().iter().map(|a| a / &c).collect());
            if !flipped {
                next = -&next;
            }
            chain.push(next);
        }
        SturmChain { chain }
    }

    fn variations(&self, signs: impl Iterator<Item = Ordering>) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        self.variations(self.chain.iter().map(|q| q.sign_at(x)))
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Integer `M` with every real root of `p` in `(-M, M)`.
fn cauchy_bound(p: &IntPoly) -> BigInt {
    let lead = p.lead().abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    BigInt::from(2) + max / lead
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn eps_rational(eps: f64) -> BigRational {
    BigRational::from_float(eps.abs().max(1e-300)).unwrap_or_else(|| rat(1, 1_000_000_000_000))
}

/// A real root of a square-free primitive polynomial, held as either an
/// exact rational or an interval `(lo, hi]` containing exactly that root.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    poly: IntPoly,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicNumber {
    pub fn rational(r: BigRational) -> Self {
        let poly = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]).primitive();
        AlgebraicNumber {
            poly,
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Bisects once, or pins the root exactly when it lands on a midpoint.
    fn bisect(&mut self) {
        if self.is_rational() {
            return;
        }
        let hi_sign = self.poly.sign_at(&self.hi);
        if hi_sign == Ordering::Equal {
            self.lo = self.hi.clone();
            return;
        }
        let mid = (&self.lo + &self.hi) / rat(2, 1);
        let s = self.poly.sign_at(&mid);
        if s == Ordering::Equal {
            self.lo = mid.clone();
            self.hi = mid;
        } else if s == hi_sign {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine(&mut self, eps: &BigRational) {
        while !self.is_rational() && &self.width() > eps {
            self.bisect();
        }
    }

    pub fn refined(mut self, eps: f64) -> Self {
        self.refine(&eps_rational(eps));
        self
    }

    pub fn to_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / rat(2, 1);
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal string with `digits` digits after the point, refining first so
    /// the interval is narrower than the last digit.
    pub fn decimal(&self, digits: usize) -> String {
        let mut a = self.clone();
        a.refine(
            &(BigRational::one()
                / BigRational::from_integer(BigInt::from(10).pow(digits as u32 + 2))),
        );
        let mid = (&a.lo + &a.hi) / rat(2, 1);
        let scale = BigInt::from(10).pow(digits as u32);
        let scaled = (mid * BigRational::from_integer(scale.clone()))
            .round()
            .to_integer();
        let neg = scaled.is_negative();
        let mag = scaled.abs();
        let int = &mag / &scale;
        let frac = &mag % &scale;
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
        }
    }

    /// True iff `q` vanishes at this number.
    fn is_root_of(&self, q: &IntPoly) -> bool {
        if q.is_zero() {
            return true;
        }
        if self.is_rational() {
            return q.sign_at(&self.lo) == Ordering::Equal;
        }
        if q.is_constant() {
            return false;
        }
        // Roots of the gcd with our polynomial are roots of ours, and only
        // one of those lies in the interval.
        let g = self.poly.gcd(q);
        if g.is_constant() {
            return false;
        }
        SturmChain::new(&g).count(&self.lo, &self.hi) == 1
    }

    /// Exact trichotomy.
    pub fn compare(&self, other: &AlgebraicNumber) -> Ordering {
        let mut a = self.clone();
        let mut b = other.clone();
        let g = a.poly.gcd(&b.poly);
        let shared = !g.is_constant();
        let sturm_g = shared.then(|| SturmChain::new(&g));
        loop {
            if let Some(ord) = a.disjoint_order(&b) {
                return ord;
            }
            if a.is_rational() && b.is_rational() {
                return a.lo.cmp(&b.lo);
            }
            if let Some(sg) = &sturm_g {
                let lo = if a.lo < b.lo { &a.lo } else { &b.lo };
                let hi = if a.hi > b.hi { &a.hi } else { &b.hi };
                let g_roots_in_hull = if lo == hi {
                    usize::from(g.sign_at(lo) == Ordering::Equal)
                } else {
                    sg.count(lo, hi) + usize::from(a.lo == a.hi && g.sign_at(lo) == Ordering::Equal)
                };
                if g_roots_in_hull == 1 && a.is_root_of(&g) && b.is_root_of(&g) {
                    return Ordering::Equal;
                }
            }
            a.bisect();
            b.bisect();
        }
    }

    /// Order when the two enclosures cannot hold the same number.
    fn disjoint_order(&self, other: &AlgebraicNumber) -> Option<Ordering> {
        // Interval numbers lie in (lo, hi]; rational ones at lo == hi.
        let below = |x: &AlgebraicNumber, y: &AlgebraicNumber| -> bool {
            if y.is_rational() {
                x.hi < y.lo
            } else {
                x.hi <= y.lo
            }
        };
        if below(self, other) {
            Some(Ordering::Less)
        } else if below(other, self) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.lo);
        }
        write!(
            f,
            "root of {} in ({}, {}) ~ {}",
            self.poly.descending(),
            self.lo,
            self.hi,
            self.decimal(8)
        )
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.decimal(10))
    }
}

/// The greatest real root of `p`, isolated to width at most `eps`.
pub fn largest_real_root(p: &IntPoly, eps: f64) -> Result<AlgebraicNumber> {
    if p.is_constant() {
        return Err(Error::NoRealRoot);
    }
    let sf = p.square_free();
    let sturm = SturmChain::new(&sf);
    let m = BigRational::from_integer(cauchy_bound(&sf));
    let mut lo = -m.clone();
    let mut hi = m;
    if sturm.count(&lo, &hi) == 0 {
        return Err(Error::NoRealRoot);
    }
    while sturm.count(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / rat(2, 1);
        if sturm.count(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut a = AlgebraicNumber { poly: sf, lo, hi };
    a.refine(&eps_rational(eps));
    Ok(a)
}

/// Multiplicity of `a` as a root of `p` (0 if it is not a root).
pub fn root_multiplicity(p: &IntPoly, a: &AlgebraicNumber) -> usize {
    let mut q = p.clone();
    let mut k = 0;
    while !q.is_zero() && a.is_root_of(&q) {
        k += 1;
        q = q.derivative();
    }
    k
}

/// The reciprocal polynomial of the denominator factor carrying the least
/// positive singularity of `f`, with factors of `x` and all cyclotomic
/// factors removed. Its greatest real root is the growth rate of `f`'s
/// coefficients.
pub fn growth_polynomial(f: &RationalFunction) -> Result<IntPoly> {
    let den = f.denominator();
    if den.is_constant() {
        return Err(Error::NoPositiveRoot);
    }
    let rec = den.reciprocal().strip_unit_circle_factors();
    if rec.is_constant() {
        return Err(Error::NoPositiveRoot);
    }
    let top = largest_real_root(&rec, 1e-6).map_err(|_| Error::NoPositiveRoot)?;
    if top.compare(&AlgebraicNumber::rational(BigRational::zero())) != Ordering::Greater {
        return Err(Error::NoPositiveRoot);
    }
    Ok(rec)
}

/// Growth rate of the coefficients of `f`, requiring a simple dominant root.
pub fn growth_rate(f: &RationalFunction, eps: f64) -> Result<AlgebraicNumber> {
    let p = growth_polynomial(f)?;
    let r = largest_real_root(&p, eps)?;
    if root_multiplicity(&p, &r) > 1 {
        return Err(Error::MultipleRoot);
    }
    Ok(r)
}

/// `x^3 - 2x^2 - 1`, whose greatest root is kappa.
pub fn kappa_polynomial() -> IntPoly {
    IntPoly::from_i64s(&[-1, 0, -2, 1])
}

/// `x^5 - 2x^4 - x^2 - x - 1`, whose greatest root is xi.
pub fn xi_polynomial() -> IntPoly {
    IntPoly::from_i64s(&[-1, -1, -1, 0, -2, 1])
}

pub fn kappa() -> AlgebraicNumber {
    largest_real_root(&kappa_polynomial(), DEFAULT_EPS).expect("kappa polynomial has a real root")
}

pub fn xi() -> AlgebraicNumber {
    largest_real_root(&xi_polynomial(), DEFAULT_EPS).expect("xi polynomial has a real root")
}

/// Greatest real roots of `h_i = x^{shift(i)} f + g` for `i` in `range`.
///
/// Requires the greatest root `r` of `f` to exceed 1 and `g(r) < 0`; then
/// the roots decrease strictly toward `r`, which is asserted. With `g = 0`
/// every root is `r`.
pub fn family_roots(
    f: &IntPoly,
    g: &IntPoly,
    shift: impl Fn(usize) -> usize,
    range: impl IntoIterator<Item = usize>,
    eps: f64,
) -> Result<Vec<AlgebraicNumber>> {
    let r = largest_real_root(f, eps)?;
    if r.compare(&AlgebraicNumber::rational(BigRational::one())) != Ordering::Greater {
        return Err(Error::Precondition(format!(
            "greatest root of {} is not above 1",
            f.descending()
        )));
    }
    let indices: Vec<usize> = range.into_iter().collect();
    if g.is_zero() {
        return Ok(indices.iter().map(|_| r.clone()).collect());
    }
    if sign_at_algebraic(g, &r) != Ordering::Less {
        return Err(Error::Precondition(format!(
            "{} is not negative at the root of {}",
            g.descending(),
            f.descending()
        )));
    }
    let roots: Vec<AlgebraicNumber> = indices
        .iter()
        .map(|&i| largest_real_root(&(&f.shift(shift(i)) + g), eps))
        .collect::<Result<_>>()?;
    for (k, root) in roots.iter().enumerate() {
        if root.compare(&r) != Ordering::Greater {
            return Err(Error::Precondition(format!(
                "root for index {} is not above {}",
                indices[k],
                r.decimal(8)
            )));
        }
        if k > 0 && roots[k - 1].compare(root) != Ordering::Greater {
            return Err(Error::Precondition(format!(
                "roots do not decrease at index {}",
                indices[k]
            )));
        }
    }
    Ok(roots)
}

/// Sign of `q` at the algebraic number `a`.
pub fn sign_at_algebraic(q: &IntPoly, a: &AlgebraicNumber) -> Ordering {
    if a.is_root_of(q) {
        return Ordering::Equal;
    }
    let mut a = a.clone();
    // q has no root at a, so a narrow enough interval has no root of q.
    let sturm = SturmChain::new(&q.square_free());
    loop {
        if a.is_rational() {
            return q.sign_at(&a.lo);
        }
        if sturm.count(&a.lo, &a.hi) == 0 {
            return q.sign_at(&a.hi);
        }
        a.bisect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn named_constants() {
        assert!((kappa().to_f64() - 2.20557).abs() < 1e-5);
        assert!((xi().to_f64() - 2.30522).abs() < 1e-5);
        assert_eq!(kappa().decimal(6), "2.205569");
        assert_eq!(xi().decimal(6), "2.305224");
        assert_eq!(kappa().compare(&xi()), Ordering::Less);
    }

    #[test]
    fn rational_roots() {
        let two = largest_real_root(&p(&[-2, 1]), DEFAULT_EPS).unwrap();
        assert!(two.is_rational());
        assert_eq!(two.to_f64(), 2.0);
        let r = largest_real_root(&p(&[-6, 1, 1]), DEFAULT_EPS).unwrap();
        assert_eq!(r.to_f64(), 2.0);
        assert!(largest_real_root(&p(&[1, 0, 1]), DEFAULT_EPS).is_err());
        assert!(largest_real_root(&p(&[3]), DEFAULT_EPS).is_err());
    }

    #[test]
    fn comparisons() {
        let a = largest_real_root(&xi_polynomial(), 1e-3).unwrap();
        let b = largest_real_root(&(&xi_polynomial() * &p(&[1, 1])), 1e-9).unwrap();
        assert_eq!(a.compare(&b), Ordering::Equal);
        let big = largest_real_root(&p(&[-4, 1, -2, 1]), DEFAULT_EPS).unwrap();
        assert_eq!(big.compare(&xi()), Ordering::Greater);
        let sqrt2 = largest_real_root(&p(&[-2, 0, 1]), 1e-3).unwrap();
        let r = AlgebraicNumber::rational(rat(7, 5));
        assert_eq!(sqrt2.compare(&r), Ordering::Greater);
        assert_eq!(r.compare(&sqrt2), Ordering::Less);
        assert_eq!(
            r.compare(&AlgebraicNumber::rational(rat(14, 10))),
            Ordering::Equal
        );
    }

    #[test]
    fn growth_polynomials() {
        let f = RationalFunction::new(p(&[1, -1]), p(&[1, -2, 0, -1])).unwrap();
        assert_eq!(growth_polynomial(&f).unwrap(), kappa_polynomial());
        let f = RationalFunction::new(p(&[1, -1]), p(&[1, -2, 0, -1, -1, -1])).unwrap();
        assert_eq!(growth_polynomial(&f).unwrap(), xi_polynomial());
        let f = RationalFunction::new(p(&[1]), p(&[1, -2])).unwrap();
        assert_eq!(growth_polynomial(&f).unwrap(), p(&[-2, 1]));
        assert!(growth_polynomial(&RationalFunction::new(p(&[1]), p(&[1, 1])).unwrap()).is_err());
        assert!(growth_polynomial(&RationalFunction::from_poly(p(&[1, 1]))).is_err());
    }

    #[test]
    fn multiplicity() {
        let sq = &p(&[-2, 1]) * &p(&[-2, 1]);
        let r = largest_real_root(&sq, DEFAULT_EPS).unwrap();
        assert_eq!(root_multiplicity(&sq, &r), 2);
        let f = RationalFunction::new(p(&[1]), sq).unwrap();
        assert_eq!(
            growth_rate(&f, DEFAULT_EPS).unwrap_err(),
            Error::MultipleRoot
        );
    }

    #[test]
    fn family() {
        let g = p(&[8, -4]);
        let roots = family_roots(&xi_polynomial(), &g, |i| i + 1, 1..=10, 1e-12).unwrap();
        assert_eq!(roots.len(), 10);
        let same = family_roots(&xi_polynomial(), &IntPoly::zero(), |i| i, 1..=3, 1e-12).unwrap();
        assert!(same.iter().all(|r| r.compare(&xi()) == Ordering::Equal));
        assert!(family_roots(&xi_polynomial(), &p(&[1]), |i| i, 1..=3, 1e-12).is_err());
    }

    #[test]
    fn display() {
        let s = kappa().to_string();
        assert!(s.starts_with("root of x^3 - 2x^2 - 1 in ("), "{s}");
        assert!(s.ends_with("~ 2.20556943"), "{s}");
    }
}
