//! Permutations in one-line notation and the operations on them used
//! throughout the crate: containment, sums, children, inversion graphs,
//! monotone quotients and the named families (oscillations, split-end
//! antichain members, vertical alternations).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `1..=n` stored as its one-line notation.
///
/// Ordering is shortlex: shorter permutations first, then lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("length {n} is too long")));
        }
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{entries:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    /// Caller guarantees `entries` is a permutation of `1..=len`.
    pub(crate) fn from_vec_unchecked(entries: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn empty() -> Self {
        Permutation::default()
    }

    pub fn identity(n: usize) -> Self {
        Permutation::from_vec_unchecked((1..=n as u8).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation::from_vec_unchecked((1..=n as u8).rev().collect())
    }

    /// The permutation order isomorphic to a sequence of distinct values.
    pub fn standardize<T: Ord + Copy>(values: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by_key(|&i| values[i]);
        let mut entries = vec![0u8; values.len()];
        for (rank, &i) in idx.iter().enumerate() {
            entries[i] = rank as u8 + 1;
        }
        Permutation { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation { entries: inv }
    }

    pub fn reverse(&self) -> Self {
        Permutation {
            entries: self.entries.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.len() as u8 + 1;
        Permutation {
            entries: self.entries.iter().map(|&v| n - v).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let k = self.len() as u8;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|&v| v + k));
        Permutation { entries }
    }

    pub fn skew_sum(&self, other: &Permutation) -> Self {
        let k = other.len() as u8;
        let mut entries: Vec<u8> = self.entries.iter().map(|&v| v + k).collect();
        entries.extend_from_slice(&other.entries);
        Permutation { entries }
    }

    /// Lengths of the maximal sum decomposition, left to right.
    pub fn sum_component_lengths(&self) -> Vec<usize> {
        let mut lens = Vec::new();
        let mut max = 0u8;
        let mut start = 0;
        for (i, &v) in self.entries.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 {
                lens.push(i + 1 - start);
                start = i + 1;
            }
        }
        lens
    }

    pub fn sum_components(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut start = 0;
        for len in self.sum_component_lengths() {
            let part = &self.entries[start..start + len];
            out.push(Permutation {
                entries: part.iter().map(|&v| v - start as u8).collect(),
            });
            start += len;
        }
        out
    }

    pub fn is_sum_indecomposable(&self) -> bool {
        is_sum_indecomposable_slice(&self.entries)
    }

    /// The pattern left after deleting the entry at 0-based position `pos`.
    pub fn delete(&self, pos: usize) -> Self {
        let v = self.entries[pos];
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &w)| if w > v { w - 1 } else { w })
            .collect();
        Permutation { entries }
    }

    /// Inserts the value `value` (1-based, in `1..=n+1`) at position `pos`
    /// (0-based, in `0..=n`), shifting larger values up.
    pub fn insert(&self, pos: usize, value: u8) -> Self {
        let mut entries: Vec<u8> = self
            .entries
            .iter()
            .map(|&w| if w >= value { w + 1 } else { w })
            .collect();
        entries.insert(pos, value);
        Permutation { entries }
    }

    /// All distinct one-point extensions.
    pub fn extensions(&self) -> BTreeSet<Permutation> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for pos in 0..=n {
            for value in 1..=(n as u8 + 1) {
                out.insert(self.insert(pos, value));
            }
        }
        out
    }

    /// Distinct single-entry deletions; with `indecomposable_only` only the
    /// sum indecomposable ones (the set K(p)).
    pub fn children(&self, indecomposable_only: bool) -> Result<BTreeSet<Permutation>> {
        if self.is_empty() {
            return Err(Error::InvalidArgument(
                "the empty permutation has no children".into(),
            ));
        }
        Ok(self
            .children_iter()
            .filter(|c| !indecomposable_only || c.is_sum_indecomposable())
            .collect())
    }

    /// One deletion per maximal monotone interval; distinct intervals give
    /// distinct children but callers should not rely on it.
    pub(crate) fn children_iter(&self) -> impl Iterator<Item = Permutation> + '_ {
        let e = &self.entries;
        (0..e.len())
            .filter(move |&i| i == 0 || (e[i] as i16 - e[i - 1] as i16).abs() != 1)
            .map(move |i| self.delete(i))
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains(pattern, self)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !contains(pattern, self)
    }

    /// Every pattern contained in `self`, including `self` and the empty one.
    pub fn downset(&self) -> HashSet<Permutation> {
        let mut all: HashSet<Permutation> = HashSet::new();
        let mut level = vec![self.clone()];
        all.insert(self.clone());
        while !level.is_empty() {
            let mut next = Vec::new();
            for p in &level {
                if p.is_empty() {
                    continue;
                }
                for c in p.children_iter() {
                    if all.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
            level = next;
        }
        all
    }

    pub fn inversion_graph(&self) -> InversionGraph {
        InversionGraph::of(self)
    }

    pub fn monotone_quotient(&self) -> Result<MonotoneDecomposition> {
        MonotoneDecomposition::of(self)
    }
}

pub(crate) fn is_sum_indecomposable_slice(e: &[u8]) -> bool {
    let mut max = 0u8;
    for (i, &v) in e.iter().enumerate() {
        max = max.max(v);
        if max as usize == i + 1 {
            return i + 1 == e.len();
        }
    }
    false
}

/// True iff some subsequence of `text` is order isomorphic to `pattern`.
pub fn contains(pattern: &Permutation, text: &Permutation) -> bool {
    let k = pattern.len();
    let n = text.len();
    if k == 0 {
        return true;
    }
    if k > n {
        return false;
    }
    // For each pattern position t, the earlier positions holding the nearest
    // smaller and nearest larger pattern values.
    let p = pattern.entries();
    let mut below = vec![usize::MAX; k];
    let mut above = vec![usize::MAX; k];
    for t in 0..k {
        let mut lo: Option<usize> = None;
        let mut hi: Option<usize> = None;
        for s in 0..t {
            if p[s] < p[t] && lo.is_none_or(|l| p[s] > p[l]) {
                lo = Some(s);
            }
            if p[s] > p[t] && hi.is_none_or(|h| p[s] < p[h]) {
                hi = Some(s);
            }
        }
        below[t] = lo.unwrap_or(usize::MAX);
        above[t] = hi.unwrap_or(usize::MAX);
    }
    let mut chosen = vec![0usize; k];
    embed(text.entries(), &below, &above, &mut chosen, 0, 0)
}

fn embed(
    text: &[u8],
    below: &[usize],
    above: &[usize],
    chosen: &mut [usize],
    t: usize,
    from: usize,
) -> bool {
    let k = chosen.len();
    if t == k {
        return true;
    }
    let lo = if below[t] == usize::MAX {
        0
    } else {
        text[chosen[below[t]]]
    };
    let hi = if above[t] == usize::MAX {
        u8::MAX
    } else {
        text[chosen[above[t]]]
    };
    let last = text.len() - (k - t);
    for i in from..=last {
        let v = text[i];
        if v > lo && v < hi {
            chosen[t] = i;
            if embed(text, below, above, chosen, t + 1, i + 1) {
                return true;
            }
        }
    }
    false
}

/// Replaces each skeleton entry by an interval order isomorphic to the
/// corresponding part.
pub fn inflate(skeleton: &Permutation, parts: &[Permutation]) -> Result<Permutation> {
    if parts.len() != skeleton.len() {
        return Err(Error::InvalidArgument(format!(
            "{} parts for a skeleton of length {}",
            parts.len(),
            skeleton.len()
        )));
    }
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::InvalidArgument(
            "inflation parts must be nonempty".into(),
        ));
    }
    let m = skeleton.len();
    let mut size_by_value = vec![0usize; m + 1];
    for (i, &v) in skeleton.entries().iter().enumerate() {
        size_by_value[v as usize] = parts[i].len();
    }
    let mut offset = vec![0usize; m + 1];
    for v in 2..=m {
        offset[v] = offset[v - 1] + size_by_value[v - 1];
    }
    let mut entries = Vec::new();
    for (i, &v) in skeleton.entries().iter().enumerate() {
        entries.extend(
            parts[i]
                .entries()
                .iter()
                .map(|&w| w + offset[v as usize] as u8),
        );
    }
    Permutation::new(entries)
}

/// Graph on the entries of a permutation with an edge between each
/// inverted pair. Vertices are the entry values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionGraph {
    pub vertices: usize,
    /// Pairs `(a, b)` with `a > b` and `a` left of `b`.
    pub edges: Vec<(u8, u8)>,
}

impl InversionGraph {
    pub fn of(p: &Permutation) -> Self {
        let e = p.entries();
        let mut edges = Vec::new();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    edges.push((e[i], e[j]));
                }
            }
        }
        InversionGraph {
            vertices: e.len(),
            edges,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices + 1];
        for &(a, b) in &self.edges {
            d[a as usize] += 1;
            d[b as usize] += 1;
        }
        d.remove(0);
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..=self.vertices).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let mut components = self.vertices;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components == 1
    }

    /// Connected with every degree at most two and one fewer edge than
    /// vertices. A single vertex counts as a path.
    pub fn is_path(&self) -> bool {
        self.vertices >= 1
            && self.edges.len() + 1 == self.vertices
            && self.degrees().iter().all(|&d| d <= 2)
            && self.is_connected()
    }

    pub fn is_cycle(&self) -> bool {
        self.vertices >= 3
            && self.edges.len() == self.vertices
            && self.degrees().iter().all(|&d| d == 2)
            && self.is_connected()
    }
}

/// A permutation written as its monotone quotient inflated by monotone
/// blocks. Positive block lengths are increasing, negative decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneDecomposition {
    pub quotient: Permutation,
    pub blocks: Vec<i32>,
}

impl MonotoneDecomposition {
    pub fn of(p: &Permutation) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidArgument(
                "monotone quotient of the empty permutation".into(),
            ));
        }
        let e = p.entries();
        let n = e.len();
        let mut blocks = Vec::new();
        let mut reps = Vec::new();
        let mut i = 0;
        while i < n {
            let mut j = i + 1;
            let step = if j < n { e[j] as i16 - e[i] as i16 } else { 0 };
            if step == 1 || step == -1 {
                while j < n && e[j] as i16 - e[j - 1] as i16 == step {
                    j += 1;
                }
            }
            let len = (j - i) as i32;
            blocks.push(if step == -1 && len > 1 { -len } else { len });
            reps.push(e[i]);
            i = j;
        }
        Ok(MonotoneDecomposition {
            quotient: Permutation::standardize(&reps),
            blocks,
        })
    }

    pub fn inflate(&self) -> Result<Permutation> {
        let parts: Vec<Permutation> = self
            .blocks
            .iter()
            .map(|&b| {
                if b < 0 {
                    Permutation::decreasing((-b) as usize)
                } else {
                    Permutation::identity(b as usize)
                }
            })
            .collect();
        inflate(&self.quotient, &parts)
    }
}

/// The increasing oscillation of length `n`. The primary one begins with 2
/// (for `n >= 3`); the other is its inverse. For `n` of 1 or 2 there is only
/// one oscillation and `primary` is ignored.
pub fn increasing_oscillation(n: usize, primary: bool) -> Result<Permutation> {
    match n {
        0 => {
            return Err(Error::InvalidArgument(
                "oscillations have length at least 1".into(),
            ))
        }
        1 => return Ok(Permutation::identity(1)),
        2 => return Ok(Permutation::decreasing(2)),
        _ => {}
    }
    let a = |i: usize| -> u8 {
        if i == 1 {
            2
        } else if i.is_multiple_of(2) {
            (i + 2) as u8
        } else {
            (i - 2) as u8
        }
    };
    let mut entries: Vec<u8>;
    if n.is_multiple_of(2) {
        entries = (1..n).map(a).collect();
        entries.push((n - 1) as u8);
    } else {
        entries = (1..n - 1).map(a).collect();
        entries.push(n as u8);
        entries.push((n - 2) as u8);
    }
    let p = Permutation::new(entries)?;
    Ok(if primary { p } else { p.inverse() })
}

/// True iff the inversion graph is a path (includes 1 and 21).
pub fn is_increasing_oscillation(p: &Permutation) -> bool {
    !p.is_empty() && p.inversion_graph().is_path()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitEndVariant {
    Uo,
    Ue,
    UoInverse,
    UeInverse,
}

/// Member of length `n` of the split-end antichains: a primary oscillation
/// of length `n - 2` with both leaves inflated by 12.
pub fn split_end_member(n: usize, variant: SplitEndVariant) -> Result<Permutation> {
    let odd = matches!(variant, SplitEndVariant::Uo | SplitEndVariant::UoInverse);
    if odd && (n.is_multiple_of(2) || n < 7) {
        return Err(Error::InvalidArgument(format!(
            "odd variant needs odd length >= 7, got {n}"
        )));
    }
    if !odd && (n % 2 == 1 || n < 6) {
        return Err(Error::InvalidArgument(format!(
            "even variant needs even length >= 6, got {n}"
        )));
    }
    let base = increasing_oscillation(n - 2, true)?;
    let degrees = base.inversion_graph().degrees();
    let parts: Vec<Permutation> = base
        .entries()
        .iter()
        .map(|&v| Permutation::identity(if degrees[v as usize - 1] == 1 { 2 } else { 1 }))
        .collect();
    let p = inflate(&base, &parts)?;
    Ok(match variant {
        SplitEndVariant::Uo | SplitEndVariant::Ue => p,
        _ => p.inverse(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlternationKind {
    Wedge1,
    Wedge2,
    Parallel1,
    Parallel2,
}

impl AlternationKind {
    pub const ALL: [AlternationKind; 4] = [
        AlternationKind::Wedge1,
        AlternationKind::Wedge2,
        AlternationKind::Parallel1,
        AlternationKind::Parallel2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlternationKind::Wedge1 => "wedge1",
            AlternationKind::Wedge2 => "wedge2",
            AlternationKind::Parallel1 => "parallel1",
            AlternationKind::Parallel2 => "parallel2",
        }
    }
}

/// Length-`n` member of one of the four vertical alternation families.
///
/// * wedge1: odd positions take the low values increasing, even positions
///   the high values decreasing (`1 10 2 9 3 8 4 7 5 6`)
/// * wedge2: odd positions high increasing, even positions low decreasing
///   (`6 5 7 4 8 3 9 2 10 1`)
/// * parallel1: odd high increasing, even low increasing (`6 1 7 2 8 3 9 4 10 5`)
/// * parallel2: odd high decreasing, even low decreasing (`10 5 9 4 8 3 7 2 6 1`)
pub fn vertical_alternation(n: usize, kind: AlternationKind) -> Permutation {
    let odd = n.div_ceil(2);
    let even = n / 2;
    let mut entries = vec![0u8; n];
    let (odd_vals, even_vals): (Vec<u8>, Vec<u8>) = match kind {
        AlternationKind::Wedge1 => (
            (1..=odd as u8).collect(),
            ((odd as u8 + 1)..=n as u8).rev().collect(),
        ),
        AlternationKind::Wedge2 => (
            ((even as u8 + 1)..=n as u8).collect(),
            (1..=even as u8).rev().collect(),
        ),
        AlternationKind::Parallel1 => (
            ((even as u8 + 1)..=n as u8).collect(),
            (1..=even as u8).collect(),
        ),
        AlternationKind::Parallel2 => (
            ((even as u8 + 1)..=n as u8).rev().collect(),
            (1..=even as u8).rev().collect(),
        ),
    };
    for (k, v) in odd_vals.into_iter().enumerate() {
        entries[2 * k] = v;
    }
    for (k, v) in even_vals.into_iter().enumerate() {
        entries[2 * k + 1] = v;
    }
    Permutation::from_vec_unchecked(entries)
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Space separated values; a single run of digits with no spaces is
    /// read digit by digit when every entry is below 10 (`2413`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let entries: Vec<u8> = if tokens.len() == 1 && tokens[0].len() > 1 {
            tokens[0]
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(s.to_string()))
                })
                .collect::<Result<_>>()?
        } else {
            tokens
                .iter()
                .map(|t| t.parse::<u8>().map_err(|_| Error::Parse(s.to_string())))
                .collect::<Result<_>>()?
        };
        Permutation::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used heavily in tests and tables: `perm("2413")`.
///
/// Panics on malformed input.
pub fn perm(s: &str) -> Permutation {
    s.parse()
        .unwrap_or_else(|e| panic!("bad permutation literal {s:?}: {e}"))
}

/// All permutations of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation::from_vec_unchecked(cur.clone()));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

/// Advances to the next permutation in lexicographic order; false when
/// `v` was the last one.
pub fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The sum indecomposable permutations of length `n`, sorted.
pub fn sum_indecomposables(n: usize) -> Vec<Permutation> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<Permutation> = BTreeSet::from([Permutation::identity(1)]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for p in &level {
            for q in p.extensions() {
                if q.is_sum_indecomposable() {
                    next.insert(q);
                }
            }
        }
        level = next;
    }
    level.into_iter().collect()
}
