//! Sequences `(s_n)` of sum indecomposable counts: legality, domination,
//! generating functions and growth rates, realizability with explicit
//! witnesses, and the tables of minimal sequences around `ξ`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebraic::{growth_rate, xi, xi_polynomial, AlgebraicNumber, DEFAULT_EPS};
use crate::class::{census_by_oracle, Census, ClassSpec};
use crate::error::{Error, Result};
use crate::perm::{increasing_oscillation, perm, split_end_member, Permutation, SplitEndVariant};
use crate::poly::IntPoly;
use crate::rational::{sum_closure_gf, RationalFunction};

/// An eventually periodic sequence `s_1, s_2, …`: a finite prefix followed
/// by a tail repeated forever (an empty tail means zeros). Always stored in
/// canonical form, with the shortest tail period and the shortest prefix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SumSequence {
    prefix: Vec<u32>,
    tail: Vec<u32>,
}

impl SumSequence {
    pub fn new(prefix: Vec<u32>, tail: Vec<u32>) -> Self {
        let mut prefix = prefix;
        let mut tail = tail;
        if tail.iter().all(|&t| t == 0) {
            tail.clear();
        }
        if !tail.is_empty() {
            let len = tail.len();
            let period = (1..=len)
                .find(|&p| len.is_multiple_of(p) && (p..len).all(|k| tail[k] == tail[k - p]))
                .unwrap_or(len);
            tail.truncate(period);
            while let Some(&last) = prefix.last() {
                if last != *tail.last().expect("nonempty tail") {
                    break;
                }
                prefix.pop();
                tail.rotate_right(1);
            }
        } else {
            while prefix.last() == Some(&0) {
                prefix.pop();
            }
        }
        SumSequence { prefix, tail }
    }

    /// A sequence that is zero after `terms`.
    pub fn finite(terms: Vec<u32>) -> Self {
        SumSequence::new(terms, Vec::new())
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn tail(&self) -> &[u32] {
        &self.tail
    }

    /// Tail period; 1 for sequences ending in zeros.
    pub fn period(&self) -> usize {
        self.tail.len().max(1)
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.tail.is_empty()
    }

    /// `s_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> u32 {
        assert!(n >= 1, "sequences are indexed from 1");
        let i = n - 1;
        if i < self.prefix.len() {
            self.prefix[i]
        } else if self.tail.is_empty() {
            0
        } else {
            self.tail[(i - self.prefix.len()) % self.tail.len()]
        }
    }

    /// `s_1, …, s_n`.
    pub fn terms(&self, n: usize) -> Vec<u32> {
        (1..=n).map(|k| self.get(k)).collect()
    }

    /// Length after which every pattern of the sequence has been seen.
    fn horizon(&self) -> usize {
        self.prefix.len() + self.period()
    }

    /// Position of the first entry equal to `v`, if any.
    pub fn first_index_of(&self, v: u32) -> Option<usize> {
        (1..=self.horizon()).find(|&n| self.get(n) == v)
    }

    /// Whether the sequence ends `1, 1`: finitely supported and ending in
    /// two ones, or eventually constant at 1.
    pub fn ends_in_ones(&self) -> bool {
        if self.tail.is_empty() {
            self.prefix.len() >= 2 && self.prefix[self.prefix.len() - 2..] == [1, 1]
        } else {
            self.tail == [1]
        }
    }

    pub fn starts_with(&self, head: &[u32]) -> bool {
        head.iter().enumerate().all(|(i, &h)| self.get(i + 1) == h)
    }

    /// Length after which the sequence is constant.
    pub fn stabilization(&self) -> Option<usize> {
        (self.period() == 1).then_some(self.prefix.len())
    }

    /// Largest entry.
    pub fn max_entry(&self) -> u32 {
        self.prefix
            .iter()
            .chain(self.tail.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// The coefficients `g_1, g_2, …` of `g` with `g(0) = 0`, when they are
    /// nonnegative and eventually periodic with period at most `max_period`.
    pub fn from_gf(g: &RationalFunction, max_period: usize) -> Option<SumSequence> {
        let den = g.denominator();
        let period = (1..=max_period).find(|&p| {
            let cycle = &IntPoly::one() - &IntPoly::monomial(BigInt::one(), p);
            cycle.div_exact(den).is_some()
        })?;
        let start = g.numerator().degree().unwrap_or(0) + 1;
        let coeffs = g.series_coefficients(start + period).ok()?;
        if coeffs[0] != BigInt::from(0) {
            return None;
        }
        let mut terms = Vec::with_capacity(coeffs.len() - 1);
        for c in &coeffs[1..] {
            terms.push(u32::try_from(c).ok()?);
        }
        let tail = terms.split_off(terms.len() - period);
        Some(SumSequence::new(terms, tail))
    }
}

impl fmt::Display for SumSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.prefix.iter().map(u32::to_string).collect();
        if !self.tail.is_empty() {
            parts.push(format!(
                "({})",
                self.tail
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for SumSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SumSequence({self})")
    }
}

impl FromStr for SumSequence {
    type Err = Error;

    /// Comma-separated prefix with an optional parenthesized period, e.g.
    /// `1,1,2,3,(4)` or `1,1,2,3,4,4,(5,4)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = match s.find('(') {
            Some(open) => {
                let close = s
                    .rfind(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed period in {s:?}")))?;
                if close < open || !s[close + 1..].trim().is_empty() {
                    return Err(Error::Parse(format!("period must come last in {s:?}")));
                }
                (&s[..open], &s[open + 1..close])
            }
            None => (s, ""),
        };
        let nums = |t: &str| -> Result<Vec<u32>> {
            t.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad count {x:?} in {s:?}")))
                })
                .collect()
        };
        let tail = nums(tail)?;
        if s.contains('(') && tail.is_empty() {
            return Err(Error::Parse(format!("empty period in {s:?}")));
        }
        Ok(SumSequence::new(nums(head)?, tail))
    }
}

impl Serialize for SumSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SumSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Caps `s_1, s_2 <= 1`, `s_3 <= 3`, and the taper rules: zero stays
/// zero, and from lengths 3, 4 and 5 on, values at most 1, 2 and 3
/// respectively never increase past that bound.
pub fn is_legal(s: &SumSequence) -> bool {
    if s.get(1) > 1 || s.get(2) > 1 || s.get(3) > 3 {
        return false;
    }
    let limit = s.prefix.len().max(5) + s.period() + 1;
    (1..=limit).all(|n| {
        let (a, b) = (s.get(n), s.get(n + 1));
        !(a == 0 && b > 0
            || n >= 3 && a <= 1 && b > 1
            || n >= 4 && a <= 2 && b > 2
            || n >= 5 && a <= 3 && b > 3)
    })
}

/// `r ⪯ t`: `r_n <= t_n` for every `n`.
pub fn dominates(r: &SumSequence, t: &SumSequence) -> bool {
    let lcm = r.period().lcm(&t.period());
    let n = r.prefix.len().max(t.prefix.len()) + lcm;
    (1..=n).all(|k| r.get(k) <= t.get(k))
}

/// `Σ s_n x^n` in closed form.
pub fn gf_of_sequence(s: &SumSequence) -> RationalFunction {
    let mut p = vec![BigInt::from(0)];
    p.extend(s.prefix.iter().map(|&c| BigInt::from(c)));
    let prefix = RationalFunction::from_poly(IntPoly::new(p));
    if s.tail.is_empty() {
        return prefix;
    }
    let shift = s.prefix.len() + 1;
    let mut t = vec![BigInt::from(0); shift];
    t.extend(s.tail.iter().map(|&c| BigInt::from(c)));
    let den = &IntPoly::one() - &IntPoly::monomial(BigInt::one(), s.tail.len());
    let tail = RationalFunction::new(IntPoly::new(t), den).expect("1 - x^p is nonzero at 0");
    prefix.add(&tail)
}

/// Generating function `1 / (1 - g)` of the sum closed class whose sum
/// indecomposable counts are `s`.
pub fn class_gf_of_sequence(s: &SumSequence) -> RationalFunction {
    sum_closure_gf(&gf_of_sequence(s)).expect("g has zero constant term")
}

/// Growth rate of the sum closure. Only unit-circle singularities means
/// polynomial growth, so any nonzero sequence has growth rate at least 1.
pub fn growth_rate_of_sequence(s: &SumSequence) -> Result<AlgebraicNumber> {
    match growth_rate(&class_gf_of_sequence(s), DEFAULT_EPS) {
        Err(Error::NoPositiveRoot) if !s.is_zero() => {
            Ok(AlgebraicNumber::rational(BigRational::one()))
        }
        other => other,
    }
}

/// Polynomial whose greatest real root is the growth rate; the constant 1
/// when the growth is polynomial.
pub fn growth_polynomial_of_sequence(s: &SumSequence) -> Result<IntPoly> {
    match crate::algebraic::growth_polynomial(&class_gf_of_sequence(s)) {
        Err(Error::NoPositiveRoot) if !s.is_zero() => Ok(IntPoly::one()),
        other => other,
    }
}

/// Where a growth rate lies relative to `ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    BelowXi,
    EqualXi,
    AboveXi,
}

impl Position {
    pub fn of(a: &AlgebraicNumber) -> Self {
        match a.compare(&xi()) {
            Ordering::Less => Position::BelowXi,
            Ordering::Equal => Position::EqualXi,
            Ordering::Greater => Position::AboveXi,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Position::BelowXi => "below_xi",
            Position::EqualXi => "equal_xi",
            Position::AboveXi => "above_xi",
        }
    }
}

/// Why a sequence cannot be realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    Illegal,
    /// At most two of length 3 leaves at most five of length 4.
    LengthFourCap,
    /// Starts `1,1,2,3` and exceeds 5 before any 5.
    ExceedsBeforeFive,
    /// Starts `1,1,2,3,4,4` with a 5 at an even index.
    EvenIndexedFive,
    /// Starts `1,1,2,3,4,4`, contains a 5 and ends `1,1`.
    FiveThenEndsInOnes,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Obstruction::Illegal => "violates the initial caps or taper rules",
            Obstruction::LengthFourCap => "two of length 3 allow at most five of length 4",
            Obstruction::ExceedsBeforeFive => "starts 1,1,2,3 and exceeds 5 before reaching 5",
            Obstruction::EvenIndexedFive => "starts 1,1,2,3,4,4 and has a 5 at an even index",
            Obstruction::FiveThenEndsInOnes => "starts 1,1,2,3,4,4, contains a 5 and ends 1,1",
        };
        f.write_str(text)
    }
}

/// The constructions used to realize sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// Leftmost `s_n` members of level `n` of the four chains plus the
    /// sporadic permutations; covers sequences dominated by
    /// `1,1,3,5,5,5,(4)`.
    Chains,
    /// Proper subpatterns of the split-end oscillations plus `μ_{2i+5}`;
    /// covers sequences dominated by `1,1,2,3,4^{2i},5,(4)` not ending `1,1`.
    Oscillations { i: usize },
    /// A class with a known finite basis.
    Basis { basis: ClassSpec },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Realizability {
    Yes {
        construction: Construction,
    },
    No {
        obstruction: Obstruction,
    },
    /// Legal, not excluded, and outside both constructions.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationVerdict {
    pub sequence: SumSequence,
    pub legal: bool,
    pub realizable: Realizability,
    pub growth: Option<AlgebraicNumber>,
    pub position: Option<Position>,
}

fn chains_bound() -> SumSequence {
    SumSequence::new(vec![1, 1, 3, 5, 5, 5], vec![4])
}

fn oscillation_bound(i: usize) -> SumSequence {
    let mut prefix = vec![1, 1, 2, 3];
    prefix.extend(std::iter::repeat_n(4, 2 * i));
    prefix.push(5);
    SumSequence::new(prefix, vec![4])
}

fn obstruction(s: &SumSequence) -> Option<Obstruction> {
    if !is_legal(s) {
        return Some(Obstruction::Illegal);
    }
    if s.get(3) <= 2 && s.get(4) > 5 {
        return Some(Obstruction::LengthFourCap);
    }
    if s.starts_with(&[1, 1, 2, 3]) {
        let first_big = (1..=s.horizon()).find(|&n| s.get(n) >= 5);
        if let Some(n) = first_big {
            if s.get(n) > 5 {
                return Some(Obstruction::ExceedsBeforeFive);
            }
        }
        if s.starts_with(&[1, 1, 2, 3, 4, 4]) {
            let horizon = s.horizon() + s.period();
            if (1..=horizon).any(|n| n % 2 == 0 && s.get(n) == 5) {
                return Some(Obstruction::EvenIndexedFive);
            }
            if first_big.is_some() && s.ends_in_ones() {
                return Some(Obstruction::FiveThenEndsInOnes);
            }
        }
    }
    None
}

/// The parameter `i` of the oscillation construction covering `s`, if any.
fn oscillation_parameter(s: &SumSequence) -> Option<usize> {
    let p = s.first_index_of(5)?;
    if p < 7 || p % 2 == 0 || s.ends_in_ones() {
        return None;
    }
    let i = (p - 5) / 2;
    dominates(s, &oscillation_bound(i)).then_some(i)
}

fn realizability(s: &SumSequence) -> Realizability {
    if let Some(obstruction) = obstruction(s) {
        return Realizability::No { obstruction };
    }
    if dominates(s, &chains_bound()) {
        return Realizability::Yes {
            construction: Construction::Chains,
        };
    }
    if let Some(i) = oscillation_parameter(s) {
        return Realizability::Yes {
            construction: Construction::Oscillations { i },
        };
    }
    Realizability::Undetermined
}

/// Legality, then the exclusions for sequences starting `1,1,2,3`, then
/// coverage by the two constructions, then the growth rate against `ξ`.
pub fn classify(s: &SumSequence) -> ClassificationVerdict {
    let growth = (!s.is_zero())
        .then(|| growth_rate_of_sequence(s).ok())
        .flatten();
    ClassificationVerdict {
        sequence: s.clone(),
        legal: is_legal(s),
        realizable: realizability(s),
        position: growth.as_ref().map(Position::of),
        growth,
    }
}

/// The permutations of the four chains and the sporadic elements on level
/// `n`, left to right.
pub fn chain_level(n: usize) -> Vec<Permutation> {
    let one = Permutation::identity(1);
    let inc = Permutation::identity;
    let desc2 = perm("21");
    let t1 = |n: usize| inc(n - 1).skew_sum(&one);
    let t2 = |n: usize| desc2.direct_sum(&inc(n - 3)).skew_sum(&one);
    let t3 = |n: usize| {
        one.direct_sum(&desc2)
            .direct_sum(&inc(n - 4))
            .skew_sum(&one)
    };
    let t4 = |n: usize| {
        inc(2)
            .direct_sum(&desc2)
            .direct_sum(&inc(n - 5))
            .skew_sum(&one)
    };
    match n {
        0 => Vec::new(),
        1 => vec![one.clone()],
        2 => vec![t1(2)],
        3 => vec![t1(3), t2(3), perm("312")],
        4 => vec![t1(4), t2(4), t3(4), perm("3421"), perm("4321")],
        5 => vec![t1(5), t2(5), t3(5), t4(5), perm("32541")],
        6 => vec![t1(6), t2(6), t3(6), t4(6), perm("234651")],
        _ => vec![t1(n), t2(n), t3(n), t4(n)],
    }
}

/// The finite basis of the sum closure of every chain and sporadic element.
pub fn chains_basis() -> ClassSpec {
    ClassSpec::av(&[
        "2413", "3142", "3412", "4123", "4132", "4213", "4231", "4312", "24531", "25431", "34251",
        "34521", "35421", "43251", "43521", "45321", "54321", "243651", "324651", "325461",
        "2345761", "2346571",
    ])
    .expect("valid literals")
}

fn u_member(m: usize) -> Permutation {
    split_end_member(m, SplitEndVariant::Uo).expect("odd length at least 7")
}

/// The sum indecomposable patterns of length `n` of `p`.
pub fn si_patterns(p: &Permutation, n: usize) -> BTreeSet<Permutation> {
    let mut level = BTreeSet::from([p.clone()]);
    for _ in n..p.len() {
        level = level.iter().flat_map(|q| q.children_iter()).collect();
    }
    level
        .into_iter()
        .filter(|q| q.len() == n && q.is_sum_indecomposable())
        .collect()
}

/// Sum indecomposable permutations of length `n` properly contained in
/// members of the split-end antichain. Patterns of `μ_M` of length `n`
/// stabilize once `M >= n + 1`; three consecutive odd `M` cover every shape.
pub fn sub_u_members(n: usize) -> BTreeSet<Permutation> {
    let lo = 7.max(n + 1);
    (lo..=lo + 5)
        .filter(|m| m % 2 == 1)
        .flat_map(|m| si_patterns(&u_member(m), n))
        .collect()
}

/// Whether `p` is a pattern of some member of the split-end antichain.
pub fn in_sub_u(p: &Permutation) -> bool {
    let n = p.len();
    (7.max(n)..=7.max(n) + 6)
        .filter(|m| m % 2 == 1)
        .any(|m| u_member(m).contains(p))
}

/// Whether every sum component of `p` lies in `Sub(U°)`.
pub fn in_sum_sub_u(p: &Permutation) -> bool {
    p.sum_components().iter().all(in_sub_u)
}

/// The primary increasing oscillation of length `n - 1` with its first
/// entry inflated by `12`.
pub fn head(n: usize) -> Permutation {
    let osc = increasing_oscillation(n - 1, true).expect("length at least 1");
    let mut parts = vec![Permutation::identity(1); n - 1];
    parts[0] = Permutation::identity(2);
    crate::perm::inflate(&osc, &parts).expect("matching lengths")
}

/// A realized sequence: its construction, the selected sum indecomposable
/// permutations of each length and, when known, a finite basis of the
/// sum closure.
#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub sequence: SumSequence,
    pub construction: Construction,
    pub basis: Option<ClassSpec>,
}

impl Realization {
    /// The sum indecomposable members of length `n`.
    pub fn si_members(&self, n: usize) -> Vec<Permutation> {
        if n == 0 {
            return Vec::new();
        }
        let want = self.sequence.get(n) as usize;
        match &self.construction {
            Construction::Chains => chain_level(n).into_iter().take(want).collect(),
            Construction::Oscillations { i } => {
                let p = 2 * i + 5;
                let all = sub_u_members(n);
                if n <= p {
                    let mut v: Vec<Permutation> = all.into_iter().collect();
                    if n == p {
                        v.push(u_member(p));
                    }
                    return v;
                }
                let primary = increasing_oscillation(n, true).expect("n >= 3");
                let other = increasing_oscillation(n, false).expect("n >= 3");
                match want {
                    0 => Vec::new(),
                    1 => vec![primary],
                    2 => vec![primary, other],
                    3 => vec![head(n), primary, other],
                    _ => all.into_iter().collect(),
                }
            }
            Construction::Basis { basis } => {
                let census = crate::class::census(basis, n).expect("bounded length");
                census.si_members(n).to_vec()
            }
        }
    }

    pub fn is_selected(&self, p: &Permutation) -> bool {
        self.si_members(p.len()).contains(p)
    }

    /// Census of the sum closure of the selection, built from the
    /// selection itself (checking it is closed downward).
    pub fn census(&self, max_len: usize) -> Result<Census> {
        let levels: Vec<Vec<Permutation>> = (0..=max_len).map(|n| self.si_members(n)).collect();
        census_by_oracle(max_len, |p| levels[p.len()].contains(p))
    }
}

/// Minimal permutations outside the sum closure of a downward closed set
/// of sum indecomposable permutations, up to length `max_len`. Such
/// permutations are sum indecomposable and extend a selected permutation.
pub fn sum_closure_basis(levels: &[Vec<Permutation>], max_len: usize) -> BTreeSet<Permutation> {
    let selected = |p: &Permutation| levels.get(p.len()).is_some_and(|l| l.contains(p));
    let member = |p: &Permutation| p.sum_components().iter().all(&selected);
    let mut basis = BTreeSet::new();
    let one = Permutation::identity(1);
    if max_len >= 1 && !selected(&one) {
        basis.insert(one);
    }
    for n in 2..=max_len {
        for q in levels.get(n - 1).map(Vec::as_slice).unwrap_or(&[]) {
            for b in q.extensions() {
                if b.is_sum_indecomposable()
                    && !selected(&b)
                    && b.children_iter().all(|c| member(&c))
                {
                    basis.insert(b);
                }
            }
        }
    }
    basis
}

/// Sequences whose witnesses are classes with explicitly known bases.
pub fn known_witnesses() -> Vec<(SumSequence, ClassSpec)> {
    vec![(
        SumSequence::finite(vec![1, 1, 2, 3, 4, 3, 1]),
        ClassSpec::av(&["231", "4312", "4321", "51234"]).expect("valid"),
    )]
}

/// A witness class for a realizable sequence. Known bases are used when
/// registered; otherwise the covering construction is built and, when the
/// sequence is eventually constant below 4 or finitely supported (or is
/// covered by the chains), a finite basis of its sum closure is computed.
pub fn realize(s: &SumSequence) -> Result<Realization> {
    let construction = match realizability(s) {
        Realizability::Yes { construction } => construction,
        Realizability::No { obstruction } => {
            return Err(Error::NotRealizable(format!("{s}: {obstruction}")))
        }
        Realizability::Undetermined => {
            return Err(Error::NotRealizable(format!(
                "{s} is outside both constructions"
            )))
        }
    };
    if let Some((_, basis)) = known_witnesses().into_iter().find(|(t, _)| t == s) {
        return Ok(Realization {
            sequence: s.clone(),
            construction: Construction::Basis {
                basis: basis.clone(),
            },
            basis: Some(basis),
        });
    }
    let mut r = Realization {
        sequence: s.clone(),
        construction,
        basis: None,
    };
    let finitely_based = match &r.construction {
        Construction::Chains => true,
        Construction::Oscillations { .. } => s.tail != [4],
        Construction::Basis { .. } => true,
    };
    if finitely_based {
        let bound = 8.max(s.prefix.len() + s.period() + 2);
        let levels: Vec<Vec<Permutation>> = (0..=bound).map(|n| r.si_members(n)).collect();
        r.basis = Some(ClassSpec::new(sum_closure_basis(&levels, bound)));
    }
    Ok(r)
}

/// How a table states the growth rate of a row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stated {
    /// Equal to `ξ`.
    Xi,
    /// Strictly greater than the bound.
    Above(f64),
    /// Rounds to the value.
    Approx(f64),
    /// At most roughly the value across the family.
    AtMost(f64),
    /// Converges to the value as the parameter grows.
    Limit(f64),
    /// Exactly the value.
    Exact(f64),
    /// No value given.
    Unstated,
}

/// One instantiated row of a table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub table: u8,
    pub family: &'static str,
    pub params: Vec<(char, usize)>,
    pub sequence: SumSequence,
    /// The table's polynomial for these parameters.
    pub stated_polynomial: IntPoly,
    /// The growth polynomial computed from the sequence.
    pub polynomial: IntPoly,
    pub growth: AlgebraicNumber,
    pub position: Position,
    pub stated: Stated,
}

impl TableRow {
    /// Exact agreement after removing unit-circle factors and powers of
    /// `x` from the table's polynomial, which change no growth rate.
    pub fn polynomial_matches(&self) -> bool {
        self.stated_polynomial.strip_unit_circle_factors() == self.polynomial
    }

    pub fn csv_line(&self) -> String {
        format!(
            "\"{}\",{},{},{}",
            self.sequence,
            self.polynomial.descending(),
            self.growth.decimal(8),
            self.position.name()
        )
    }
}

type Builder = Box<dyn Fn(&[usize]) -> (SumSequence, IntPoly)>;

struct Family {
    table: u8,
    label: &'static str,
    params: &'static [char],
    stated: Stated,
    allowed: fn(&[usize]) -> bool,
    build: Builder,
}

/// Largest parameter value used when instantiating families.
pub const TABLE_INDEX_BOUND: usize = 6;

fn runs(parts: &[(u32, usize)], tail: &[u32]) -> SumSequence {
    let prefix = parts
        .iter()
        .flat_map(|&(v, k)| std::iter::repeat_n(v, k))
        .collect();
    SumSequence::new(prefix, tail.to_vec())
}

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn xk(k: usize) -> IntPoly {
    IntPoly::monomial(BigInt::one(), k)
}

/// `x^a X + g` with `X` the defining polynomial of `ξ`.
fn xi_family(a: usize, g: IntPoly) -> IntPoly {
    &xi_polynomial().shift(a) + &g
}

fn any(_: &[usize]) -> bool {
    true
}

fn families() -> Vec<Family> {
    let mut out: Vec<Family> = Vec::new();
    macro_rules! fixed {
        ($table:expr, $label:expr, $seq:expr, $tail:expr, $poly:expr, $stated:expr) => {
            out.push(Family {
                table: $table,
                label: $label,
                params: &[],
                stated: $stated,
                allowed: any,
                build: Box::new(|_| (SumSequence::new($seq.to_vec(), $tail.to_vec()), p(&$poly))),
            })
        };
    }
    macro_rules! family {
        ($table:expr, $label:expr, $params:expr, $allowed:expr, $stated:expr, $build:expr) => {
            out.push(Family {
                table: $table,
                label: $label,
                params: $params,
                stated: $stated,
                allowed: $allowed,
                build: Box::new($build),
            })
        };
    }

    // Short legal sequences with growth at least xi.
    fixed!(
        1,
        "1,1,2,4,3,3,2,1",
        [1, 1, 2, 4, 3, 3, 2, 1],
        [0u32; 0],
        [-1, -1, -1, 0, -2, 1],
        Stated::Xi
    );
    fixed!(
        1,
        "1,1,2,4,3,3,3",
        [1, 1, 2, 4, 3, 3, 3],
        [0u32; 0],
        [-3, -3, -3, -4, -2, -1, -1, 1],
        Stated::Above(2.30688)
    );
    fixed!(
        1,
        "1,1,2,4,4,1,1,1,1,1,1",
        [1, 1, 2, 4, 4, 1, 1, 1, 1, 1, 1],
        [0u32; 0],
        [-1, -1, -1, -1, -1, -1, -4, -4, -2, -1, -1, 1],
        Stated::Above(2.30525)
    );
    fixed!(
        1,
        "1,1,2,4,4,2",
        [1, 1, 2, 4, 4, 2],
        [0u32; 0],
        [-2, -4, -4, -2, -1, -1, 1],
        Stated::Above(2.30692)
    );
    fixed!(
        1,
        "1,1,2,4,5",
        [1, 1, 2, 4, 5],
        [0u32; 0],
        [-5, -4, -2, -1, -1, 1],
        Stated::Above(2.30902)
    );
    fixed!(
        1,
        "1,1,2,5,2,1,1",
        [1, 1, 2, 5, 2, 1, 1],
        [0u32; 0],
        [-1, 0, -2, -3, 1, -2, 1],
        Stated::Above(2.30790)
    );
    fixed!(
        1,
        "1,1,2,5,2,2",
        [1, 1, 2, 5, 2, 2],
        [0u32; 0],
        [-2, -2, -5, -2, -1, -1, 1],
        Stated::Above(2.31179)
    );
    fixed!(
        1,
        "1,1,2,5,3",
        [1, 1, 2, 5, 3],
        [0u32; 0],
        [-3, -5, -2, -1, -1, 1],
        Stated::Above(2.31392)
    );
    fixed!(
        1,
        "1,1,3,3,1,1,1,1,1,1",
        [1, 1, 3, 3, 1, 1, 1, 1, 1, 1],
        [0u32; 0],
        [-1, -1, -1, -1, -1, -1, -3, -3, -1, -1, 1],
        Stated::Above(2.30528)
    );
    fixed!(
        1,
        "1,1,3,3,2",
        [1, 1, 3, 3, 2],
        [0u32; 0],
        [-2, -3, -3, -1, -1, 1],
        Stated::Above(2.30939)
    );
    fixed!(
        1,
        "1,1,3,4",
        [1, 1, 3, 4],
        [0u32; 0],
        [-4, 1, -2, 1],
        Stated::Above(2.31459)
    );

    // Long legal sequences with growth at least xi.
    fixed!(
        2,
        "1,1,2,3,4^∞",
        [1, 1, 2, 3],
        [4],
        [-1, -1, -1, 0, -2, 1],
        Stated::Xi
    );
    family!(
        2,
        "1,1,2,3,4^i,5,3,3,2,1",
        &['i'],
        any,
        Stated::Unstated,
        |v| {
            (
                runs(
                    &[
                        (1, 2),
                        (2, 1),
                        (3, 1),
                        (4, v[0]),
                        (5, 1),
                        (3, 2),
                        (2, 1),
                        (1, 1),
                    ],
                    &[],
                ),
                xi_polynomial(),
            )
        }
    );
    family!(
        2,
        "1,1,2,3,4^i,5,3,3,3",
        &['i'],
        any,
        Stated::Unstated,
        |v| {
            (
                runs(&[(1, 2), (2, 1), (3, 1), (4, v[0]), (5, 1), (3, 3)], &[]),
                xi_family(v[0] + 4, p(&[3, 0, 0, 2, -1])),
            )
        }
    );
    family!(
        2,
        "1,1,2,3,4^i,5,4,1,1,1,1,1,1",
        &['i'],
        any,
        Stated::Unstated,
        |v| {
            (
                runs(
                    &[(1, 2), (2, 1), (3, 1), (4, v[0]), (5, 1), (4, 1), (1, 6)],
                    &[],
                ),
                xi_family(v[0] + 8, p(&[1, 0, 0, 0, 0, 0, 3, 1, -1])),
            )
        }
    );
    family!(2, "1,1,2,3,4^i,5,4,2", &['i'], any, Stated::Unstated, |v| {
        (
            runs(
                &[(1, 2), (2, 1), (3, 1), (4, v[0]), (5, 1), (4, 1), (2, 1)],
                &[],
            ),
            xi_family(v[0] + 3, p(&[2, 2, 1, -1])),
        )
    });
    family!(2, "1,1,2,3,4^i,5,5", &['i'], any, Stated::Unstated, |v| {
        (
            runs(&[(1, 2), (2, 1), (3, 1), (4, v[0]), (5, 2)], &[]),
            xi_family(v[0] + 2, p(&[5, 0, -1])),
        )
    });
    family!(
        2,
        "1,1,2,3,4^i,6,2,1,1",
        &['i'],
        any,
        Stated::Unstated,
        |v| {
            (
                runs(
                    &[(1, 2), (2, 1), (3, 1), (4, v[0]), (6, 1), (2, 1), (1, 2)],
                    &[],
                ),
                xi_family(v[0] + 4, p(&[1, 0, 1, 4, -2])),
            )
        }
    );
    family!(2, "1,1,2,3,4^i,6,2,2", &['i'], any, Stated::Unstated, |v| {
        (
            runs(&[(1, 2), (2, 1), (3, 1), (4, v[0]), (6, 1), (2, 2)], &[]),
            xi_family(v[0] + 3, p(&[2, 0, 4, -2])),
        )
    });
    family!(2, "1,1,2,3,4^i,6,3", &['i'], any, Stated::Unstated, |v| {
        (
            runs(&[(1, 2), (2, 1), (3, 1), (4, v[0]), (6, 1), (3, 1)], &[]),
            xi_family(v[0] + 2, p(&[3, 3, -2])),
        )
    });
    family!(2, "1,1,2,3,4^i,7,1", &['i'], any, Stated::Unstated, |v| {
        (
            runs(&[(1, 2), (2, 1), (3, 1), (4, v[0]), (7, 1), (1, 1)], &[]),
            xi_family(v[0] + 2, p(&[1, 6, -3])),
        )
    });
    family!(2, "1,1,2,3,4^i,8", &['i'], any, Stated::Unstated, |v| {
        (
            runs(&[(1, 2), (2, 1), (3, 1), (4, v[0]), (8, 1)], &[]),
            xi_family(v[0] + 1, p(&[8, -4])),
        )
    });

    // Realizable sequences below xi dominated by a short sequence.
    family!(
        3,
        "1,1,3,3,1^i",
        &['i'],
        |v| v[0] <= 5,
        Stated::AtMost(2.30503),
        |v| {
            (
                runs(&[(1, 2), (3, 2), (1, v[0])], &[]),
                &p(&[2, 0, -2, 0, -2, 1]).shift(v[0]) + &IntPoly::one(),
            )
        }
    );
    family!(3, "1,1,3,2^∞", &[], any, Stated::Approx(2.29663), |_| (
        runs(&[(1, 2), (3, 1)], &[2]),
        p(&[1, -2, 0, -2, 1])
    ));
    family!(
        3,
        "1,1,3,2^i,1^∞",
        &['i'],
        any,
        Stated::Limit(2.29663),
        |v| {
            (
                runs(&[(1, 2), (3, 1), (2, v[0])], &[1]),
                &p(&[1, -2, 0, -2, 1]).shift(v[0]) + &IntPoly::one(),
            )
        }
    );
    family!(
        3,
        "1,1,3,2^i,1^j",
        &['i', 'j'],
        any,
        Stated::Limit(2.29663),
        |v| {
            (
                runs(&[(1, 2), (3, 1), (2, v[0]), (1, v[1])], &[]),
                &(&p(&[1, -2, 0, -2, 1]).shift(v[0] + v[1]) + &xk(v[1])) + &IntPoly::one(),
            )
        }
    );
    family!(3, "1,1,2,5,2,1", &[], any, Stated::Approx(2.30490), |_| {
        (
            runs(&[(1, 2), (2, 1), (5, 1), (2, 1), (1, 1)], &[]),
            p(&[-1, -2, -5, -2, -1, -1, 1]),
        )
    });
    family!(3, "1,1,2,5,2", &[], any, Stated::Approx(2.29783), |_| {
        (
            runs(&[(1, 2), (2, 1), (5, 1), (2, 1)], &[]),
            p(&[-2, -5, -2, -1, -1, 1]),
        )
    });
    family!(
        3,
        "1,1,2,5,1^∞",
        &[],
        any,
        Stated::Approx(2.29408),
        |_| (
            runs(&[(1, 2), (2, 1), (5, 1)], &[1]),
            p(&[4, -3, -1, 0, -2, 1])
        )
    );
    family!(3, "1,1,2,5,1^i", &['i'], any, Stated::Limit(2.29408), |v| {
        (
            runs(&[(1, 2), (2, 1), (5, 1), (1, v[0])], &[]),
            &p(&[4, -3, -1, 0, -2, 1]).shift(v[0]) + &IntPoly::one(),
        )
    });
    family!(
        3,
        "1,1,2,4,4,1^i",
        &['i'],
        |v| v[0] <= 5,
        Stated::AtMost(2.30515),
        |v| {
            (
                runs(&[(1, 2), (2, 1), (4, 2), (1, v[0])], &[]),
                &p(&[3, 0, -2, -1, 0, -2, 1]).shift(v[0]) + &IntPoly::one(),
            )
        }
    );
    family!(
        3,
        "1,1,2,4,3,3,2",
        &[],
        any,
        Stated::Approx(2.30394),
        |_| {
            (
                runs(&[(1, 2), (2, 1), (4, 1), (3, 2), (2, 1)], &[]),
                p(&[-2, -3, -3, -4, -2, -1, -1, 1]),
            )
        }
    );
    family!(
        3,
        "1,1,2,4,3,3,1^∞",
        &[],
        any,
        Stated::Approx(2.30326),
        |_| {
            (
                runs(&[(1, 2), (2, 1), (4, 1), (3, 2)], &[1]),
                p(&[2, 0, 1, -2, -1, 0, -2, 1]),
            )
        }
    );
    family!(
        3,
        "1,1,2,4,3,3,1^i",
        &['i'],
        any,
        Stated::Limit(2.30326),
        |v| {
            (
                runs(&[(1, 2), (2, 1), (4, 1), (3, 2), (1, v[0])], &[]),
                &p(&[2, 0, 1, -2, -1, 0, -2, 1]).shift(v[0]) + &IntPoly::one(),
            )
        }
    );
    family!(
        3,
        "1,1,2,4,3,2^∞",
        &[],
        any,
        Stated::Approx(2.30167),
        |_| {
            (
                runs(&[(1, 2), (2, 1), (4, 1), (3, 1)], &[2]),
                p(&[1, 1, -2, -1, 0, -2, 1]),
            )
        }
    );
    family!(
        3,
        "1,1,2,4,3,2^i,1^∞",
        &['i'],
        any,
        Stated::Limit(2.30167),
        |v| {
            (
                runs(&[(1, 2), (2, 1), (4, 1), (3, 1), (2, v[0])], &[1]),
                &p(&[1, 1, -2, -1, 0, -2, 1]).shift(v[0]) + &IntPoly::one(),
            )
        }
    );
    family!(
        3,
        "1,1,2,4,3,2^i,1^j",
        &['i', 'j'],
        any,
        Stated::Limit(2.30167),
        |v| {
            (
                runs(&[(1, 2), (2, 1), (4, 1), (3, 1), (2, v[0]), (1, v[1])], &[]),
                &(&p(&[1, 1, -2, -1, 0, -2, 1]).shift(v[0] + v[1]) + &xk(v[1])) + &IntPoly::one(),
            )
        }
    );
    family!(
        3,
        "1,1,2,4,2^∞",
        &[],
        any,
        Stated::Approx(2.28563),
        |_| (
            runs(&[(1, 2), (2, 1), (4, 1)], &[2]),
            p(&[2, -2, -1, 0, -2, 1])
        )
    );
    family!(
        3,
        "1,1,2,4,2^i,1^∞",
        &['i'],
        any,
        Stated::Limit(2.28563),
        |v| {
            (
                runs(&[(1, 2), (2, 1), (4, 1), (2, v[0])], &[1]),
                &p(&[2, -2, -1, 0, -2, 1]).shift(v[0]) + &IntPoly::one(),
            )
        }
    );
    family!(
        3,
        "1,1,2,4,2^i,1^j",
        &['i', 'j'],
        any,
        Stated::Limit(2.28563),
        |v| {
            (
                runs(&[(1, 2), (2, 1), (4, 1), (2, v[0]), (1, v[1])], &[]),
                &(&p(&[2, -2, -1, 0, -2, 1]).shift(v[0] + v[1]) + &xk(v[1])) + &IntPoly::one(),
            )
        }
    );
    family!(3, "1,1,2^∞", &[], any, Stated::Approx(2.20557), |_| (
        runs(&[(1, 2)], &[2]),
        p(&[-1, 0, -2, 1])
    ));
    family!(
        3,
        "1,1,2^i,1^∞",
        &['i'],
        any,
        Stated::Limit(2.20557),
        |v| {
            (
                runs(&[(1, 2), (2, v[0])], &[1]),
                &p(&[-1, 0, -2, 1]).shift(v[0]) + &IntPoly::one(),
            )
        }
    );
    family!(
        3,
        "1,1,2^i,1^j",
        &['i', 'j'],
        any,
        Stated::Limit(2.20557),
        |v| {
            (
                runs(&[(1, 2), (2, v[0]), (1, v[1])], &[]),
                &(&p(&[-1, 0, -2, 1]).shift(v[0] + v[1]) + &xk(v[1])) + &IntPoly::one(),
            )
        }
    );
    family!(3, "1^∞", &[], any, Stated::Exact(2.0), |_| (
        SumSequence::new(vec![], vec![1]),
        p(&[-2, 1])
    ));
    family!(3, "1^i", &['i'], |v| v[0] >= 1, Stated::Limit(2.0), |v| {
        (
            runs(&[(1, v[0])], &[]),
            &p(&[-2, 1]).shift(v[0]) + &IntPoly::one(),
        )
    });

    // Realizable sequences below xi dominated by a long sequence.
    fn one_or_even(i: usize) -> bool {
        i == 1 || i.is_multiple_of(2)
    }
    family!(
        4,
        "1,1,2,3,4^i,5,4,1^j",
        &['i', 'j'],
        |v| (v[0] <= 1 && v[1] <= 5) || (v[0] % 2 == 0 && v[1] <= 1),
        Stated::Unstated,
        |v| {
            let (i, j) = (v[0], v[1]);
            (
                runs(
                    &[(1, 2), (2, 1), (3, 1), (4, i), (5, 1), (4, 1), (1, j)],
                    &[],
                ),
                &(&xi_family(i + j + 2, IntPoly::zero()) - &p(&[-3, -1, 1]).shift(j))
                    + &IntPoly::one(),
            )
        }
    );
    family!(
        4,
        "1,1,2,3,4^i,5,3,3,2",
        &['i'],
        |v| one_or_even(v[0]),
        Stated::Unstated,
        |v| {
            (
                runs(
                    &[(1, 2), (2, 1), (3, 1), (4, v[0]), (5, 1), (3, 2), (2, 1)],
                    &[],
                ),
                xi_family(v[0] + 4, p(&[2, 1, 0, 2, -1])),
            )
        }
    );
    family!(
        4,
        "1,1,2,3,4^i,5,3,3,1^∞",
        &['i'],
        |v| v[0] <= 1,
        Stated::Unstated,
        |v| {
            (
                runs(&[(1, 2), (2, 1), (3, 1), (4, v[0]), (5, 1), (3, 2)], &[1]),
                xi_family(v[0] + 3, p(&[2, 0, 2, -1])),
            )
        }
    );
    family!(
        4,
        "1,1,2,3,4^i,5,3,3,1^j",
        &['i', 'j'],
        |v| v[0] <= 1 || (v[0] % 2 == 0 && v[1] <= 1),
        Stated::Unstated,
        |v| {
            let (i, j) = (v[0], v[1]);
            (
                runs(
                    &[(1, 2), (2, 1), (3, 1), (4, i), (5, 1), (3, 2), (1, j)],
                    &[],
                ),
                &(&xi_family(i + j + 3, IntPoly::zero()) - &p(&[-2, 0, -2, 1]).shift(j))
                    + &IntPoly::one(),
            )
        }
    );
    family!(
        4,
        "1,1,2,3,4^i,5,3^j,2^∞",
        &['i', 'j'],
        |v| one_or_even(v[0]) && v[1] <= 1,
        Stated::Unstated,
        |v| {
            let (i, j) = (v[0], v[1]);
            (
                runs(&[(1, 2), (2, 1), (3, 1), (4, i), (5, 1), (3, j)], &[2]),
                &(&xi_family(i + j + 1, IntPoly::zero()) - &p(&[-2, 1]).shift(j)) + &IntPoly::one(),
            )
        }
    );
    family!(
        4,
        "1,1,2,3,4^i,5,3^j,2^k,1^∞",
        &['i', 'j', 'k'],
        |v| v[0] <= 1 && v[1] <= 1,
        Stated::Unstated,
        |v| {
            let (i, j, k) = (v[0], v[1], v[2]);
            (
                runs(
                    &[(1, 2), (2, 1), (3, 1), (4, i), (5, 1), (3, j), (2, k)],
                    &[1],
                ),
                &(&(&xi_family(i + j + k + 1, IntPoly::zero()) - &p(&[-2, 1]).shift(j + k))
                    + &xk(k))
                    + &IntPoly::one(),
            )
        }
    );
    family!(
        4,
        "1,1,2,3,4^i,5,3^j,2^k,1^l",
        &['i', 'j', 'k', 'l'],
        |v| (v[0] <= 1 && v[1] <= 1) || (v[0] % 2 == 0 && v[1] <= 1 && v[3] <= 1),
        Stated::Unstated,
        |v| {
            let (i, j, k, l) = (v[0], v[1], v[2], v[3]);
            (
                runs(
                    &[
                        (1, 2),
                        (2, 1),
                        (3, 1),
                        (4, i),
                        (5, 1),
                        (3, j),
                        (2, k),
                        (1, l),
                    ],
                    &[],
                ),
                &(&(&(&xi_family(i + j + k + l + 1, IntPoly::zero())
                    - &p(&[-2, 1]).shift(j + k + l))
                    + &xk(k + l))
                    + &xk(l))
                    + &IntPoly::one(),
            )
        }
    );
    family!(4, "1,1,2,3,4^i,3^∞", &['i'], any, Stated::Unstated, |v| {
        (
            runs(&[(1, 2), (2, 1), (3, 1), (4, v[0])], &[3]),
            xi_family(v[0], IntPoly::one()),
        )
    });
    family!(
        4,
        "1,1,2,3,4^i,3^j,2^∞",
        &['i', 'j'],
        any,
        Stated::Unstated,
        |v| {
            let (i, j) = (v[0], v[1]);
            (
                runs(&[(1, 2), (2, 1), (3, 1), (4, i), (3, j)], &[2]),
                &xi_family(i + j, xk(j)) + &IntPoly::one(),
            )
        }
    );
    family!(
        4,
        "1,1,2,3,4^i,3^j,2^k,1^∞",
        &['i', 'j', 'k'],
        any,
        Stated::Unstated,
        |v| {
            let (i, j, k) = (v[0], v[1], v[2]);
            (
                runs(&[(1, 2), (2, 1), (3, 1), (4, i), (3, j), (2, k)], &[1]),
                &(&xi_family(i + j + k, xk(j + k)) + &xk(k)) + &IntPoly::one(),
            )
        }
    );
    family!(
        4,
        "1,1,2,3,4^i,3^j,2^k,1^l",
        &['i', 'j', 'k', 'l'],
        any,
        Stated::Unstated,
        |v| {
            let (i, j, k, l) = (v[0], v[1], v[2], v[3]);
            (
                runs(
                    &[(1, 2), (2, 1), (3, 1), (4, i), (3, j), (2, k), (1, l)],
                    &[],
                ),
                &(&(&xi_family(i + j + k + l, xk(j + k + l)) + &xk(k + l)) + &xk(l))
                    + &IntPoly::one(),
            )
        }
    );
    out
}

fn instantiate(f: &Family) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in f.params {
        out = out
            .into_iter()
            .flat_map(|v| (0..=TABLE_INDEX_BOUND).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out.into_iter().filter(|v| (f.allowed)(v)).collect()
}

/// Every row of table `table` (1 to 4) with parameters up to
/// `TABLE_INDEX_BOUND`, in table order. Instances that repeat an earlier
/// sequence of the same table are dropped.
pub fn table(table: u8) -> Result<Vec<TableRow>> {
    if !(1..=4).contains(&table) {
        return Err(Error::InvalidArgument(format!("no table {table}")));
    }
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    for f in families().into_iter().filter(|f| f.table == table) {
        for v in instantiate(&f) {
            let (sequence, stated_polynomial) = (f.build)(&v);
            if !seen.insert(sequence.clone()) {
                continue;
            }
            let polynomial = growth_polynomial_of_sequence(&sequence)?;
            let growth = growth_rate_of_sequence(&sequence)?;
            rows.push(TableRow {
                table,
                family: f.label,
                params: f.params.iter().copied().zip(v.iter().copied()).collect(),
                position: Position::of(&growth),
                sequence,
                stated_polynomial,
                polynomial,
                growth,
                stated: f.stated,
            });
        }
    }
    Ok(rows)
}

/// Rows of the two tables of realizable sequences below `ξ`, sorted by
/// growth rate.
pub fn enumerate_below_xi() -> Result<Vec<TableRow>> {
    let mut rows = table(3)?;
    rows.extend(table(4)?);
    rows.sort_by(|a, b| {
        a.growth
            .compare(&b.growth)
            .then_with(|| a.sequence.cmp(&b.sequence))
    });
    Ok(rows)
}

/// CSV with columns `sequence,polynomial,growth,position`.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("sequence,polynomial,growth,position\n");
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> SumSequence {
        text.parse().unwrap()
    }

    #[test]
    fn canonical_form_and_text() {
        assert_eq!(s("1,1,2,3,4,(4,4)").to_string(), "1,1,2,3,(4)");
        assert_eq!(s("1,1,2,3,4,4,(5,4)").to_string(), "1,1,2,3,4,(4,5)");
        assert_eq!(s("1,1,2,3,4,4,5,4,(5,4)"), s("1,1,2,3,4,4,(5,4)"));
        assert_eq!(s("1,2,0,0").to_string(), "1,2");
        assert_eq!(s("1,(0)").to_string(), "1");
        assert_eq!(s("").to_string(), "0");
        assert_eq!(s("(1)").get(100), 1);
        assert_eq!(s("1,1,2,3,4,4,(5,4)").get(7), 5);
        assert_eq!(s("1,1,2,3,4,4,(5,4)").get(10), 4);
        assert!("1,(".parse::<SumSequence>().is_err());
        assert!("1,x".parse::<SumSequence>().is_err());
    }

    #[test]
    fn legality() {
        assert!(is_legal(&s("1,1,2,3,(4)")));
        assert!(!is_legal(&s("1,2")));
        assert!(!is_legal(&s("1,1,2,1,2")));
        assert!(!is_legal(&s("1,1,4")));
        assert!(!is_legal(&s("1,0,1")));
        assert!(is_legal(&s("1,1,2,6")));
        assert!(!is_legal(&s("1,1,2,3,4,3,4")));
        assert!(!is_legal(&s("1,1,3,2,3")));
    }

    #[test]
    fn domination() {
        assert!(dominates(&s("1,1,2,3,(4)"), &s("1,1,2,3,4,4,(5,4)")));
        assert!(dominates(&s("1,1,2,3"), &s("1,1,2,3")));
        assert!(!dominates(&s("1,1,3"), &s("1,1,2")));
        assert!(!dominates(&s("1,1,2,3,4,4,(5,4)"), &s("1,1,2,3,(4)")));
        assert!(dominates(&s("(1,2)"), &s("(2)")));
        assert!(!dominates(&s("(1,3)"), &s("(2)")));
    }

    #[test]
    fn generating_functions() {
        let g = gf_of_sequence(&s("1,1,2,3,(4)"));
        let expected = RationalFunction::new(p(&[0, 1, 0, 1, 1, 1]), p(&[1, -1])).unwrap();
        assert_eq!(g, expected);
        assert_eq!(
            gf_of_sequence(&s("(1)")),
            RationalFunction::new(p(&[0, 1]), p(&[1, -1])).unwrap()
        );
        let osc = gf_of_sequence(&s("1,1,2,3,4,4,(5,4)"));
        assert_eq!(
            osc.coefficients_i64(10).unwrap(),
            vec![0, 1, 1, 2, 3, 4, 4, 5, 4, 5, 4]
        );
        assert!(osc.denominator().coeffs().len() <= 3);
    }

    #[test]
    fn growth_rates() {
        let g = growth_rate_of_sequence(&s("1,1,2,3,(4)")).unwrap();
        assert_eq!(g.compare(&xi()), Ordering::Equal);
        let g = growth_rate_of_sequence(&s("1,1,2,4,3,3,2,1")).unwrap();
        assert_eq!(g.compare(&xi()), Ordering::Equal);
        let g = growth_rate_of_sequence(&s("(1)")).unwrap();
        assert_eq!(g.decimal(6), "2.000000");
    }

    #[test]
    fn classification() {
        let v = classify(&s("1,1,2,6"));
        assert!(v.legal);
        assert_eq!(
            v.realizable,
            Realizability::No {
                obstruction: Obstruction::LengthFourCap
            }
        );
        let v = classify(&s("1,1,2,4,5"));
        assert_eq!(
            v.realizable,
            Realizability::Yes {
                construction: Construction::Chains
            }
        );
        assert_eq!(v.position, Some(Position::AboveXi));
        let v = classify(&s("1,1,2,3,4,4,4,5,(4)"));
        assert_eq!(
            v.realizable,
            Realizability::No {
                obstruction: Obstruction::EvenIndexedFive
            }
        );
        let v = classify(&s("1,1,2,3,4,4,5,3,2"));
        assert_eq!(
            v.realizable,
            Realizability::Yes {
                construction: Construction::Oscillations { i: 1 }
            }
        );
        let v = classify(&s("1,1,2,3,4,4,5,3,1,1"));
        assert_eq!(
            v.realizable,
            Realizability::No {
                obstruction: Obstruction::FiveThenEndsInOnes
            }
        );
        let v = classify(&s("1,1,2,3,6"));
        assert_eq!(
            v.realizable,
            Realizability::No {
                obstruction: Obstruction::ExceedsBeforeFive
            }
        );
        assert_eq!(
            classify(&s("1,2")).realizable,
            Realizability::No {
                obstruction: Obstruction::Illegal
            }
        );
        assert_eq!(
            classify(&s("1,1,3,(6)")).realizable,
            Realizability::Undetermined
        );
    }

    #[test]
    fn chain_levels() {
        assert_eq!(chain_level(3), vec![perm("231"), perm("321"), perm("312")]);
        assert_eq!(
            chain_level(4),
            vec![
                perm("2341"),
                perm("3241"),
                perm("2431"),
                perm("3421"),
                perm("4321")
            ]
        );
        assert_eq!(chain_level(5)[3], perm("23541"));
        assert_eq!(chain_level(7).len(), 4);
        for n in 1..=8 {
            assert!(chain_level(n)
                .iter()
                .all(Permutation::is_sum_indecomposable));
        }
    }

    #[test]
    fn split_end_subpatterns() {
        for n in 5..=9 {
            let members = sub_u_members(n);
            assert_eq!(members.len(), 4, "length {n}");
            assert!(members.contains(&head(n)));
            assert!(members.contains(&increasing_oscillation(n, true).unwrap()));
            assert!(members.contains(&increasing_oscillation(n, false).unwrap()));
        }
    }

    #[test]
    fn realize_known_and_constructed() {
        let r = realize(&s("1,1,2,3,4,3,1")).unwrap();
        assert_eq!(r.basis.unwrap().to_string(), "Av(231, 4312, 4321, 51234)");
        let seq = s("1,1,2,3,4,4,5,3,2");
        let r = realize(&seq).unwrap();
        let c = r.census(11).unwrap();
        assert_eq!(
            c.si_sequence(),
            seq.terms(11).iter().map(|&x| x as u64).collect::<Vec<_>>()
        );
        let av = crate::class::census(r.basis.as_ref().unwrap(), 11).unwrap();
        assert_eq!(av.si_sequence(), c.si_sequence());
        assert!(realize(&s("1,1,2,6")).is_err());
    }

    #[test]
    fn table_one_matches() {
        for row in table(1).unwrap() {
            assert!(row.polynomial_matches(), "{}", row.sequence);
            assert_ne!(row.position, Position::BelowXi, "{}", row.sequence);
        }
    }
}
