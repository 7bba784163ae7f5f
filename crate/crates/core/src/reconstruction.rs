//! Sets of sum indecomposable children: the classes `K^(m)`, recovering a
//! permutation from its children, and exhaustive checks that many sum
//! indecomposable permutations force many children.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{
    is_increasing_oscillation, sum_indecomposables, MonotoneDecomposition, Permutation,
};

/// Outcome of recovering a permutation from its sum indecomposable children.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReconstructionVerdict {
    Unique {
        permutation: Permutation,
    },
    /// The two increasing oscillations of the length, primary first.
    OscillationPair {
        primary: Permutation,
        other: Permutation,
    },
    NoMatch,
}

/// Positions (1-based) at which members of `set` have their maximum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxLocations {
    pub indices: BTreeSet<usize>,
}

impl MaxLocations {
    pub fn of<'a>(set: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let indices = set
            .into_iter()
            .filter_map(|p| {
                p.entries()
                    .iter()
                    .position(|&v| v as usize == p.len())
                    .map(|i| i + 1)
            })
            .collect();
        MaxLocations { indices }
    }
}

/// Result of an exhaustive verification: how many objects were examined
/// and every witness set found to violate the claim.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checked: u64,
    pub failures: Vec<Vec<Permutation>>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn require_si(p: &Permutation) -> Result<()> {
    if p.is_sum_indecomposable() {
        Ok(())
    } else {
        Err(Error::SumDecomposable(p.to_string()))
    }
}

/// `K(p)`, the distinct sum indecomposable children of `p`.
pub fn k_set(p: &Permutation) -> Result<BTreeSet<Permutation>> {
    require_si(p)?;
    p.children(true)
}

/// `|K(p)|`; `p` lies in `K^(m)` iff this is at most `m`.
pub fn k_class(p: &Permutation) -> Result<usize> {
    Ok(k_set(p)?.len())
}

/// The members of `K^(1)` of length `n`: the decreasing permutation,
/// `1 ⊖ (12…(n-1))` and `(12…(n-1)) ⊖ 1`.
pub fn k1_members(n: usize) -> Result<BTreeSet<Permutation>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "K^(1) members need length at least 3, got {n}"
        )));
    }
    let one = Permutation::identity(1);
    let inc = Permutation::identity(n - 1);
    Ok(BTreeSet::from([
        Permutation::decreasing(n),
        one.skew_sum(&inc),
        inc.skew_sum(&one),
    ]))
}

/// Structural test for `K^(2)`: decreasing, or an increasing oscillation
/// whose leaves (and only its leaves) may be inflated by monotone intervals.
pub fn is_k2_form(p: &Permutation) -> Result<bool> {
    require_si(p)?;
    let d = MonotoneDecomposition::of(p)?;
    let mu = &d.quotient;
    if mu.len() == 1 {
        return Ok(true);
    }
    if !is_increasing_oscillation(mu) {
        return Ok(false);
    }
    let degrees = mu.inversion_graph().degrees();
    Ok(mu
        .entries()
        .iter()
        .zip(&d.blocks)
        .all(|(&v, &b)| degrees[v as usize - 1] <= 1 || b.abs() == 1))
}

fn max_position(p: &Permutation) -> usize {
    p.entries()
        .iter()
        .position(|&v| v as usize == p.len())
        .expect("nonempty")
        + 1
}

/// Decides from `K(π)` alone whether deleting the maximum of `π` (length
/// `n`) leaves a sum decomposable permutation. With at most two children,
/// `π` is first recovered from them; otherwise the answer is yes exactly
/// when the four necessary conditions on the children all hold.
pub fn max_removal_decomposable(kset: &BTreeSet<Permutation>, n: usize) -> Result<bool> {
    if kset.is_empty() {
        return Err(Error::InvalidArgument("empty set of children".into()));
    }
    if kset.len() <= 2 {
        let pi = match reconstruct_from_k(kset, n)? {
            ReconstructionVerdict::Unique { permutation } => permutation,
            ReconstructionVerdict::OscillationPair { primary, .. } => primary,
            ReconstructionVerdict::NoMatch => {
                return Err(Error::Precondition(
                    "children are not those of any permutation".into(),
                ))
            }
        };
        let pos = max_position(&pi);
        return Ok(!pi.delete(pos - 1).is_sum_indecomposable());
    }
    let ml = MaxLocations::of(kset).indices;
    let lo = *ml.iter().next().expect("nonempty");
    let hi = *ml.iter().next_back().expect("nonempty");
    if hi > lo + 1 {
        return Ok(false);
    }
    let top_pair_interval = kset
        .iter()
        .filter(|c| {
            let e = c.entries();
            let m = c.len() as u8;
            e.windows(2)
                .any(|w| (w[0] == m && w[1] == m - 1) || (w[0] == m - 1 && w[1] == m))
        })
        .count();
    if top_pair_interval > 1 {
        return Ok(false);
    }
    let second_to_last = kset
        .iter()
        .filter(|c| c.len() >= 2 && max_position(c) == c.len() - 1)
        .count();
    if second_to_last > 1 {
        return Ok(false);
    }
    if ml == BTreeSet::from([1, 2]) && kset.iter().filter(|c| max_position(c) == 1).count() > 1 {
        return Ok(false);
    }
    Ok(true)
}

/// Finds the sum indecomposable permutations of length `n` whose set of
/// sum indecomposable children is `kset`, searching over single-entry
/// extensions of the members of `kset`.
pub fn reconstruct_from_k(kset: &BTreeSet<Permutation>, n: usize) -> Result<ReconstructionVerdict> {
    if n < 5 {
        return Err(Error::Precondition(format!(
            "reconstruction needs length at least 5, got {n}"
        )));
    }
    if kset.is_empty() {
        return Err(Error::Precondition("empty set of children".into()));
    }
    for c in kset {
        if c.len() + 1 != n || !c.is_sum_indecomposable() {
            return Err(Error::Precondition(format!(
                "{c} is not a sum indecomposable permutation of length {}",
                n - 1
            )));
        }
    }
    let mut candidates = BTreeSet::new();
    for c in kset {
        candidates.extend(
            c.extensions()
                .into_iter()
                .filter(Permutation::is_sum_indecomposable),
        );
    }
    let matches: Vec<Permutation> = candidates
        .into_iter()
        .filter(|p| p.children(true).is_ok_and(|k| &k == kset))
        .collect();
    match matches.as_slice() {
        [] => Ok(ReconstructionVerdict::NoMatch),
        [p] => Ok(ReconstructionVerdict::Unique {
            permutation: p.clone(),
        }),
        [a, b] if is_increasing_oscillation(a) && is_increasing_oscillation(b) => {
            let (primary, other) = if a.entries()[0] == 2 { (a, b) } else { (b, a) };
            Ok(ReconstructionVerdict::OscillationPair {
                primary: primary.clone(),
                other: other.clone(),
            })
        }
        _ => Err(Error::Ambiguous(format!(
            "{} permutations share these children",
            matches.len()
        ))),
    }
}

/// Checks over all sum indecomposable permutations of length `n` that
/// equal sets of children occur only for the two increasing oscillations.
pub fn verify_reconstruction(n: usize) -> Report {
    let perms = sum_indecomposables(n);
    let keyed: Vec<(BTreeSet<Permutation>, Permutation)> = perms
        .par_iter()
        .map(|p| (p.children(true).expect("nonempty"), p.clone()))
        .collect();
    let mut groups: BTreeMap<BTreeSet<Permutation>, Vec<Permutation>> = BTreeMap::new();
    for (k, p) in keyed {
        groups.entry(k).or_default().push(p);
    }
    let failures = groups
        .into_values()
        .filter(|g| g.len() > 1 && !(g.len() == 2 && g.iter().all(is_increasing_oscillation)))
        .collect();
    Report {
        checked: perms.len() as u64,
        failures,
    }
}

/// Permutations of length at most 16 packed four bits per entry.
fn pack(e: &[u8]) -> u64 {
    e.iter().fold(0u64, |acc, &v| (acc << 4) | (v as u64 - 1))
}

fn unpack(code: u64, n: usize) -> Permutation {
    let e: Vec<u8> = (0..n)
        .rev()
        .map(|i| ((code >> (4 * i)) & 15) as u8 + 1)
        .collect();
    Permutation::new(e).expect("packed permutation")
}

/// Whether `e` with the entry at `skip` removed is sum indecomposable,
/// without standardizing.
fn deletion_is_si(e: &[u8], skip: usize) -> bool {
    let d = e[skip];
    let n = e.len() - 1;
    let mut max_rank = 0u8;
    let mut k = 0usize;
    for (q, &v) in e.iter().enumerate() {
        if q == skip {
            continue;
        }
        k += 1;
        max_rank = max_rank.max(if v > d { v - 1 } else { v });
        if k < n && max_rank as usize == k {
            return false;
        }
    }
    true
}

/// Packed `K(e)` when it has at most `limit` members.
fn small_k_set(e: &[u8], limit: usize) -> Option<Vec<u64>> {
    let n = e.len();
    let mut starts = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        starts.push(i);
        let mut j = i + 1;
        if j < n {
            let step = e[j] as i16 - e[i] as i16;
            if step == 1 || step == -1 {
                while j < n && e[j] as i16 - e[j - 1] as i16 == step {
                    j += 1;
                }
            }
        }
        i = j;
    }
    let mut hits = Vec::new();
    for &s in &starts {
        if deletion_is_si(e, s) {
            if hits.len() == limit {
                return None;
            }
            hits.push(s);
        }
    }
    let mut out: Vec<u64> = hits
        .into_iter()
        .map(|s| {
            let d = e[s];
            let child: Vec<u8> = e
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != s)
                .map(|(_, &v)| if v > d { v - 1 } else { v })
                .collect();
            pack(&child)
        })
        .collect();
    out.sort_unstable();
    Some(out)
}

/// Depth-first generation of sum indecomposable permutations of length
/// `n` with a fixed prefix; no proper prefix may occupy the lowest values.
fn collect_small(
    prefix: &mut Vec<u8>,
    used: u32,
    max: u8,
    n: usize,
    limit: usize,
    out: &mut Vec<(Vec<u64>, u64)>,
    count: &mut u64,
) {
    if prefix.len() == n {
        *count += 1;
        if let Some(k) = small_k_set(prefix, limit) {
            out.push((k, pack(prefix)));
        }
        return;
    }
    for v in 1..=n as u8 {
        if used & (1 << v) != 0 {
            continue;
        }
        let m = max.max(v);
        let len = prefix.len() + 1;
        if len < n && m as usize == len {
            continue;
        }
        prefix.push(v);
        collect_small(prefix, used | (1 << v), m, n, limit, out, count);
        prefix.pop();
    }
}

/// Permutations whose child set lies inside the sorted set `s`, found by
/// looking up each nonempty subset of `s`.
fn members_within(by_k: &BTreeMap<Vec<u64>, Vec<u64>>, s: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << s.len()) {
        let sub: Vec<u64> = (0..s.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| s[i])
            .collect();
        if let Some(ps) = by_k.get(&sub) {
            out.extend_from_slice(ps);
        }
    }
    out.sort_unstable();
    out
}

fn union(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut u = a.to_vec();
    u.extend_from_slice(b);
    u.sort_unstable();
    u.dedup();
    u
}

/// Every set of at most `limit` children containing the child sets of at
/// least `m` permutations, as `(set, members)`. A set is either a union of
/// child sets connected through shared children, or a disjoint union of
/// such pieces; pieces are enumerated by growing along shared children and
/// combined under an upper bound on the members still reachable.
fn failing_unions(
    by_k: &BTreeMap<Vec<u64>, Vec<u64>>,
    limit: usize,
    m: usize,
) -> Vec<(Vec<u64>, Vec<u64>)> {
    let ksets: Vec<&Vec<u64>> = by_k.keys().collect();
    let mut containing: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, k) in ksets.iter().enumerate() {
        for &c in k.iter() {
            containing.entry(c).or_default().push(i);
        }
    }
    let mut pieces: HashSet<Vec<u64>> = ksets.iter().map(|k| (*k).clone()).collect();
    let mut stack: Vec<Vec<u64>> = pieces.iter().cloned().collect();
    while let Some(t) = stack.pop() {
        for c in &t {
            for &b in &containing[c] {
                let u = union(&t, ksets[b]);
                if u.len() <= limit && !pieces.contains(&u) {
                    pieces.insert(u.clone());
                    stack.push(u);
                }
            }
        }
    }
    let mut pieces: Vec<(Vec<u64>, usize)> = pieces
        .into_iter()
        .map(|t| {
            let c = members_within(by_k, &t).len();
            (t, c)
        })
        .collect();
    pieces.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    // bound[c]: most members any pieces of total size at most c could hold.
    let mut best_of_size = vec![0usize; limit + 1];
    for (t, c) in &pieces {
        best_of_size[t.len()] = best_of_size[t.len()].max(*c);
    }
    let mut bound = vec![0usize; limit + 1];
    for cap in 1..=limit {
        bound[cap] = bound[cap - 1];
        for s in 1..=cap {
            bound[cap] = bound[cap].max(best_of_size[s] + bound[cap - s]);
        }
    }
    let mut found: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    fn combine(
        pieces: &[(Vec<u64>, usize)],
        from: usize,
        current: &[u64],
        count: usize,
        limit: usize,
        m: usize,
        bound: &[usize],
        by_k: &BTreeMap<Vec<u64>, Vec<u64>>,
        found: &mut BTreeMap<Vec<u64>, Vec<u64>>,
    ) {
        if count >= m {
            let members = members_within(by_k, current);
            if members.len() >= m {
                found.insert(current.to_vec(), members);
            }
            return;
        }
        let cap = limit - current.len();
        if count + bound[cap] < m {
            return;
        }
        for i in from..pieces.len() {
            let (t, c) = &pieces[i];
            if *c == 0 || t.len() > cap || t.iter().any(|x| current.binary_search(x).is_ok()) {
                continue;
            }
            if count + c + bound[cap - t.len()] < m {
                continue;
            }
            combine(
                pieces,
                i + 1,
                &union(current, t),
                count + c,
                limit,
                m,
                bound,
                by_k,
                found,
            );
        }
    }
    combine(&pieces, 0, &[], 0, limit, m, &bound, by_k, &mut found);
    found.into_iter().collect()
}

/// Packed child set and packed permutation.
type SmallEntry = (Vec<u64>, u64);

/// Checks that every `m` sum indecomposable permutations of length `n`
/// together have at least `m` sum indecomposable children. Only
/// permutations with fewer than `m` children can take part in a
/// violation, and a violation exists iff some union of their child sets
/// with fewer than `m` members contains the child sets of `m` of them.
/// Each failure lists every permutation whose children fall inside one
/// minimal such union.
pub fn verify_taper(n: usize, m: usize) -> Result<Report> {
    if !(2..=5).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "m must lie in 2..=5, got {m}"
        )));
    }
    if !(2..=15).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "length must lie in 2..=15, got {n}"
        )));
    }
    let limit = m - 1;
    let firsts: Vec<u8> = (2..=n as u8).collect();
    let parts: Vec<(Vec<SmallEntry>, u64)> = firsts
        .par_iter()
        .map(|&v| {
            let mut out = Vec::new();
            let mut count = 0;
            collect_small(&mut vec![v], 1 << v, v, n, limit, &mut out, &mut count);
            (out, count)
        })
        .collect();
    let checked = parts.iter().map(|(_, c)| c).sum();
    let mut by_k: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    for (k, p) in parts.into_iter().flat_map(|(o, _)| o) {
        by_k.entry(k).or_default().push(p);
    }
    let failing = failing_unions(&by_k, limit, m);
    let subset = |a: &[u64], b: &[u64]| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut failures: Vec<Vec<Permutation>> = failing
        .iter()
        .filter(|(s, _)| {
            !failing
                .iter()
                .any(|(t, _)| t.len() < s.len() && subset(t, s))
        })
        .map(|(_, members)| members.iter().map(|&c| unpack(c, n)).collect())
        .collect();
    failures.sort();
    failures.dedup();
    Ok(Report { checked, failures })
}

/// Five sum indecomposable permutations of length 11 with only four sum
/// indecomposable children between them.
pub fn taper_counterexample() -> Vec<Permutation> {
    [
        "2 3 5 1 7 4 9 6 10 11 8",
        "2 3 5 1 7 4 9 6 11 8 10",
        "3 1 5 2 7 4 9 6 10 11 8",
        "3 1 5 2 7 4 9 6 11 8 10",
        "2 4 1 6 3 8 5 10 7 11 9",
    ]
    .iter()
    .map(|s| s.parse().expect("valid literal"))
    .collect()
}

/// Images of a set under the symmetries preserving sum indecomposability
/// and children: identity, inverse, reverse-complement and their product.
pub fn symmetry_images(set: &[Permutation]) -> Vec<Vec<Permutation>> {
    let maps: [fn(&Permutation) -> Permutation; 4] = [
        |p| p.clone(),
        |p| p.inverse(),
        |p| p.reverse().complement(),
        |p| p.reverse().complement().inverse(),
    ];
    let mut out: Vec<Vec<Permutation>> = maps
        .iter()
        .map(|f| {
            let mut v: Vec<Permutation> = set.iter().map(f).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    fn set(xs: &[&str]) -> BTreeSet<Permutation> {
        xs.iter().map(|s| perm(s)).collect()
    }

    #[test]
    fn k_class_examples() {
        assert_eq!(k_class(&perm("54321")).unwrap(), 1);
        assert_eq!(k_class(&perm("324651")).unwrap(), 3);
        assert_eq!(k_class(&perm("21")).unwrap(), 1);
        assert!(k_class(&perm("12")).is_err());
        assert_eq!(
            k_set(&perm("324651")).unwrap(),
            set(&["23541", "32451", "32541"])
        );
    }

    #[test]
    fn k1_examples() {
        assert_eq!(k1_members(3).unwrap(), set(&["321", "312", "231"]));
        assert_eq!(k1_members(4).unwrap(), set(&["4321", "4123", "2341"]));
        assert_eq!(k1_members(5).unwrap(), set(&["54321", "51234", "23451"]));
        assert!(k1_members(2).is_err());
    }

    #[test]
    fn k2_form_examples() {
        assert!(is_k2_form(&perm("2413")).unwrap());
        assert!(!is_k2_form(&perm("324651")).unwrap());
        assert!(is_k2_form(&perm("21")).unwrap());
        assert!(is_k2_form(&perm("3412")).unwrap());
    }

    #[test]
    fn max_removal_examples() {
        let k = |s: &str| k_set(&perm(s)).unwrap();
        assert!(max_removal_decomposable(&k("23514"), 5).unwrap());
        assert!(max_removal_decomposable(&set(&["4123"]), 5).unwrap());
        assert!(!max_removal_decomposable(&k("24153"), 5).unwrap());
        assert!(max_removal_decomposable(&BTreeSet::new(), 5).is_err());
    }

    #[test]
    fn reconstruct_examples() {
        assert_eq!(
            reconstruct_from_k(&set(&["4123"]), 5).unwrap(),
            ReconstructionVerdict::Unique {
                permutation: perm("51234")
            }
        );
        assert_eq!(
            reconstruct_from_k(&k_set(&perm("24153")).unwrap(), 5).unwrap(),
            ReconstructionVerdict::OscillationPair {
                primary: perm("24153"),
                other: perm("31524")
            }
        );
        assert_eq!(
            reconstruct_from_k(&set(&["4321"]), 5).unwrap(),
            ReconstructionVerdict::Unique {
                permutation: perm("54321")
            }
        );
        assert_eq!(
            reconstruct_from_k(&set(&["2413", "4321"]), 5).unwrap(),
            ReconstructionVerdict::NoMatch
        );
        assert!(reconstruct_from_k(&set(&["231"]), 5).is_err());
    }

    #[test]
    fn reconstruction_small() {
        for n in 5..=6 {
            assert!(verify_reconstruction(n).passed());
        }
    }

    #[test]
    fn taper_small() {
        for (n, m) in [(4, 2), (5, 3), (6, 4)] {
            let r = verify_taper(n, m).unwrap();
            assert!(r.passed(), "{n} {m}: {:?}", r.failures);
        }
        assert_eq!(verify_taper(3, 2).unwrap().checked, 3);
        assert!(!verify_taper(3, 3).unwrap().passed());
    }

    #[test]
    fn packing_round_trip() {
        let p = perm("2 3 5 1 7 4 9 6 10 11 8");
        assert_eq!(unpack(pack(p.entries()), 11), p);
        let k = small_k_set(p.entries(), 4).unwrap();
        let direct: Vec<u64> = k_set(&p)
            .unwrap()
            .iter()
            .map(|c| pack(c.entries()))
            .collect();
        assert_eq!(k, direct);
    }

    #[test]
    fn counterexample_has_four_children() {
        let five = taper_counterexample();
        let mut all = BTreeSet::new();
        for p in &five {
            all.extend(k_set(p).unwrap());
        }
        assert_eq!(all.len(), 4);
        assert_eq!(symmetry_images(&five).len(), 2);
    }
}
