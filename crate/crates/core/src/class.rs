//! Finitely based permutation classes: membership, censuses, basis
//! computation and the insertion-encoding regularity test.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{vertical_alternation, AlternationKind, Permutation};

/// Largest length a census may be asked for.
pub const CENSUS_BOUND: usize = 12;

/// `Av(B)` for a finite basis `B`, stored as an antichain in shortlex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassSpec {
    basis: Vec<Permutation>,
    #[serde(skip)]
    original: Vec<Permutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl ClassSpec {
    /// Builds `Av(B)`, discarding basis elements that contain another one.
    pub fn new(basis: impl IntoIterator<Item = Permutation>) -> Self {
        let original: Vec<Permutation> = basis.into_iter().collect();
        let sorted: BTreeSet<Permutation> = original.iter().cloned().collect();
        let mut kept: Vec<Permutation> = Vec::new();
        for b in sorted {
            if !kept.iter().any(|k| b.contains(k)) {
                kept.push(b);
            }
        }
        ClassSpec {
            basis: kept,
            original,
            label: None,
        }
    }

    /// `Av` of basis elements written as permutation literals.
    pub fn av(basis: &[&str]) -> Result<Self> {
        Ok(ClassSpec::new(
            basis
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<Permutation>>>()?,
        ))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    /// The basis as given, before minimization.
    pub fn original_basis(&self) -> &[Permutation] {
        &self.original
    }

    pub fn max_basis_len(&self) -> usize {
        self.basis.iter().map(Permutation::len).max().unwrap_or(0)
    }

    pub fn member(&self, p: &Permutation) -> bool {
        self.basis.iter().all(|b| !p.contains(b))
    }

    /// A class with every basis element sum indecomposable is sum closed.
    pub fn is_sum_closed(&self) -> bool {
        self.basis.iter().all(Permutation::is_sum_indecomposable)
    }

    pub fn extended(&self, extra: impl IntoIterator<Item = Permutation>) -> ClassSpec {
        ClassSpec::new(self.basis.iter().cloned().chain(extra))
    }

    pub fn inverse(&self) -> ClassSpec {
        ClassSpec::new(self.basis.iter().map(Permutation::inverse))
    }

    /// Parses a basis file: one permutation per line, `#` starts a comment.
    pub fn from_basis_text(text: &str) -> Result<Self> {
        let mut basis = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            basis.push(line.parse()?);
        }
        Ok(ClassSpec::new(basis))
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .basis
            .iter()
            .map(|b| {
                b.entries()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(if b.len() > 9 { " " } else { "" })
            })
            .collect();
        write!(f, "Av({})", parts.join(", "))
    }
}

/// Counts of members and of sum indecomposable members by length,
/// index 0 being the empty permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub max_len: usize,
    pub members: Vec<u64>,
    pub sum_indecomposable: Vec<u64>,
    #[serde(skip)]
    pub si_listing: Option<Vec<Vec<Permutation>>>,
}

impl Census {
    /// SI counts for lengths `1..=max_len`.
    pub fn si_sequence(&self) -> Vec<u64> {
        self.sum_indecomposable[1..].to_vec()
    }

    pub fn si_members(&self, n: usize) -> &[Permutation] {
        self.si_listing
            .as_ref()
            .and_then(|l| l.get(n))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// CSV with columns `length,members,sum_indecomposable`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,members,sum_indecomposable\n");
        for n in 0..=self.max_len {
            out.push_str(&format!(
                "{},{},{}\n",
                n, self.members[n], self.sum_indecomposable[n]
            ));
        }
        out
    }
}

/// Member counts of a sum closed class from its SI counts:
/// the coefficients of `1 / (1 - g)`.
pub fn sum_closure_counts(si: &[u64]) -> Vec<u64> {
    let mut f = vec![0u64; si.len()];
    if !f.is_empty() {
        f[0] = 1;
    }
    for n in 1..si.len() {
        f[n] = (1..=n).map(|k| si[k] * f[n - k]).sum();
    }
    f
}

/// True iff every sum component of `p` lies in the SI listing.
fn components_in(p: &Permutation, levels: &[HashSet<Permutation>]) -> bool {
    p.sum_components()
        .iter()
        .all(|c| levels.get(c.len()).is_some_and(|s| s.contains(c)))
}

/// Sum indecomposable members of the sum closed class whose SI members are
/// the SI permutations accepted by `accept` (which must be downward closed
/// on SI permutations), by length up to `max_len`.
///
/// A candidate is admitted only if every child's components are already
/// admitted; a candidate accepted by `accept` with a missing child is
/// reported as a downward-closure violation.
pub fn si_levels<F>(max_len: usize, accept: F) -> Result<Vec<Vec<Permutation>>>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    let mut levels: Vec<HashSet<Permutation>> = vec![HashSet::new()];
    let mut sorted: Vec<Vec<Permutation>> = vec![Vec::new()];
    if max_len == 0 {
        return Ok(sorted);
    }
    let one = Permutation::identity(1);
    let first: Vec<Permutation> = if accept(&one) { vec![one] } else { Vec::new() };
    levels.push(first.iter().cloned().collect());
    sorted.push(first);
    for n in 1..max_len {
        let mut candidates: BTreeSet<Permutation> = BTreeSet::new();
        for p in &sorted[n] {
            for q in p.extensions() {
                if q.is_sum_indecomposable() {
                    candidates.insert(q);
                }
            }
        }
        let candidates: Vec<Permutation> = candidates.into_iter().collect();
        let verdicts: Vec<Result<bool>> = candidates
            .par_iter()
            .map(|c| {
                if !accept(c) {
                    return Ok(false);
                }
                for child in c.children_iter() {
                    if !components_in(&child, &levels) {
                        return Err(Error::NotDownwardClosed {
                            member: c.to_string(),
                            child: child.to_string(),
                        });
                    }
                }
                Ok(true)
            })
            .collect();
        let mut next = Vec::new();
        for (c, v) in candidates.into_iter().zip(verdicts) {
            if v? {
                next.push(c);
            }
        }
        levels.push(next.iter().cloned().collect());
        sorted.push(next);
    }
    Ok(sorted)
}

/// SI levels of a sum closed `Av(B)`: membership is "not a basis element and
/// every child is a member", so no containment test is needed.
fn si_levels_of_spec(spec: &ClassSpec, max_len: usize) -> Vec<Vec<Permutation>> {
    let basis: HashSet<Permutation> = spec.basis.iter().cloned().collect();
    let mut levels: Vec<HashSet<Permutation>> = vec![HashSet::new()];
    let mut sorted: Vec<Vec<Permutation>> = vec![Vec::new()];
    for n in 1..=max_len {
        let candidates: BTreeSet<Permutation> = if n == 1 {
            BTreeSet::from([Permutation::identity(1)])
        } else {
            sorted[n - 1]
                .iter()
                .flat_map(|p| p.extensions())
                .filter(|q| q.is_sum_indecomposable())
                .collect()
        };
        let candidates: Vec<Permutation> = candidates.into_iter().collect();
        let keep: Vec<bool> = candidates
            .par_iter()
            .map(|c| !basis.contains(c) && c.children_iter().all(|ch| components_in(&ch, &levels)))
            .collect();
        let next: Vec<Permutation> = candidates
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(c, _)| c)
            .collect();
        levels.push(next.iter().cloned().collect());
        sorted.push(next);
    }
    sorted
}

/// All members by length, grown level by level: a one-point extension of a
/// member is a member iff it is not a basis element and all its children
/// are members.
pub fn member_levels(spec: &ClassSpec, max_len: usize) -> Vec<Vec<Permutation>> {
    let basis: HashSet<Permutation> = spec.basis.iter().cloned().collect();
    let mut sorted: Vec<Vec<Permutation>> = Vec::new();
    if basis.contains(&Permutation::empty()) {
        return vec![Vec::new(); max_len + 1];
    }
    sorted.push(vec![Permutation::empty()]);
    let mut prev: HashSet<Permutation> = HashSet::from([Permutation::empty()]);
    for n in 1..=max_len {
        let candidates: BTreeSet<Permutation> =
            sorted[n - 1].iter().flat_map(|p| p.extensions()).collect();
        let candidates: Vec<Permutation> = candidates.into_iter().collect();
        let keep: Vec<bool> = candidates
            .par_iter()
            .map(|c| !basis.contains(c) && c.children_iter().all(|ch| prev.contains(&ch)))
            .collect();
        let next: Vec<Permutation> = candidates
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(c, _)| c)
            .collect();
        prev = next.iter().cloned().collect();
        sorted.push(next);
    }
    sorted
}

/// Census of `spec` up to `max_len`. Sum closed classes are counted through
/// their SI members and the sum closure; other classes by full generation.
pub fn census(spec: &ClassSpec, max_len: usize) -> Result<Census> {
    if max_len > CENSUS_BOUND {
        return Err(Error::LengthBound {
            len: max_len,
            bound: CENSUS_BOUND,
        });
    }
    if spec.is_sum_closed() {
        let levels = si_levels_of_spec(spec, max_len);
        let mut si: Vec<u64> = levels.iter().map(|l| l.len() as u64).collect();
        si[0] = 0;
        Ok(Census {
            max_len,
            members: sum_closure_counts(&si),
            sum_indecomposable: si,
            si_listing: Some(levels),
        })
    } else {
        full_census(spec, max_len)
    }
}

/// Census by generating every member; independent of sum closure.
pub fn full_census(spec: &ClassSpec, max_len: usize) -> Result<Census> {
    if max_len > CENSUS_BOUND {
        return Err(Error::LengthBound {
            len: max_len,
            bound: CENSUS_BOUND,
        });
    }
    let levels = member_levels(spec, max_len);
    let members = levels.iter().map(|l| l.len() as u64).collect();
    let si_listing: Vec<Vec<Permutation>> = levels
        .iter()
        .map(|l| {
            l.iter()
                .filter(|p| p.is_sum_indecomposable())
                .cloned()
                .collect()
        })
        .collect();
    let sum_indecomposable = si_listing.iter().map(|l| l.len() as u64).collect();
    Ok(Census {
        max_len,
        members,
        sum_indecomposable,
        si_listing: Some(si_listing),
    })
}

/// SI counts of the sum closed class whose SI members are those accepted by
/// `accept`, for lengths `0..=max_len`.
pub fn census_by_oracle<F>(max_len: usize, accept: F) -> Result<Census>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    let levels = si_levels(max_len, accept)?;
    let mut si: Vec<u64> = levels.iter().map(|l| l.len() as u64).collect();
    si[0] = 0;
    Ok(Census {
        max_len,
        members: sum_closure_counts(&si),
        sum_indecomposable: si,
        si_listing: Some(levels),
    })
}

/// Minimal non-members of length at most `max_len` of the downward closed
/// set described by `oracle`.
pub fn compute_basis<F>(oracle: F, max_len: usize) -> Result<BTreeSet<Permutation>>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    let mut basis = BTreeSet::new();
    if !oracle(&Permutation::empty()) {
        basis.insert(Permutation::empty());
        return Ok(basis);
    }
    let mut level: Vec<Permutation> = vec![Permutation::empty()];
    let mut members: HashSet<Permutation> = HashSet::from([Permutation::empty()]);
    let mut rejected: Vec<Permutation> = Vec::new();
    for _ in 1..=max_len {
        // Extensions of fresh basis elements are probed too, so an oracle
        // accepting something above a non-member is caught.
        let candidates: BTreeSet<Permutation> = level
            .iter()
            .chain(rejected.iter())
            .flat_map(|p| p.extensions())
            .collect();
        let candidates: Vec<Permutation> = candidates.into_iter().collect();
        let verdicts: Vec<Result<(bool, bool)>> = candidates
            .par_iter()
            .map(|c| {
                let missing = c.children_iter().find(|ch| !members.contains(ch));
                let accepted = oracle(c);
                match (missing, accepted) {
                    (Some(child), true) => Err(Error::NotDownwardClosed {
                        member: c.to_string(),
                        child: child.to_string(),
                    }),
                    (Some(_), false) => Ok((false, false)),
                    (None, true) => Ok((true, false)),
                    (None, false) => Ok((false, true)),
                }
            })
            .collect();
        let mut next = Vec::new();
        rejected.clear();
        for (c, v) in candidates.into_iter().zip(verdicts) {
            match v? {
                (true, _) => next.push(c),
                (false, true) => {
                    basis.insert(c.clone());
                    rejected.push(c);
                }
                _ => {}
            }
        }
        members = next.iter().cloned().collect();
        level = next;
    }
    Ok(basis)
}

/// Length of the alternations checked by the regularity test: any pattern
/// of length `m` in an infinite alternation family embeds in the member of
/// length `2m`, and the extra 4 is slack.
pub fn alternation_cutoff(spec: &ClassSpec) -> usize {
    2 * spec.max_basis_len() + 4
}

/// The first alternation family entirely contained in the class, if any.
pub fn unbounded_alternation(spec: &ClassSpec) -> Result<Option<AlternationKind>> {
    if spec.basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    let len = alternation_cutoff(spec);
    Ok(AlternationKind::ALL
        .into_iter()
        .find(|&k| spec.member(&vertical_alternation(len, k))))
}

/// True iff the class omits some member of each of the four vertical
/// alternation families, i.e. its insertion encoding is a regular language.
pub fn has_regular_insertion_encoding(spec: &ClassSpec) -> Result<bool> {
    Ok(unbounded_alternation(spec)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    #[test]
    fn membership() {
        let av231 = ClassSpec::av(&["231"]).unwrap();
        assert!(!av231.member(&perm("2413")));
        assert!(ClassSpec::new([]).member(&perm("54321")));
        let ou = ClassSpec::av(&["321", "3412", "4123", "23451", "314625"]).unwrap();
        assert!(ou.member(&perm("2 3 5 1 7 4 9 6 10 11 8")));
    }

    #[test]
    fn minimization() {
        let spec = ClassSpec::av(&["231", "2413", "12"]).unwrap();
        assert_eq!(spec.basis(), &[perm("12")]);
        assert_eq!(spec.original_basis().len(), 3);
        assert_eq!(spec.to_string(), "Av(12)");
    }

    #[test]
    fn basis_text() {
        let spec = ClassSpec::from_basis_text("# comment\n231\n\n4 3 1 2 # trailing\n").unwrap();
        assert_eq!(spec.basis(), &[perm("231"), perm("4312")]);
        assert!(ClassSpec::from_basis_text("2 2").is_err());
    }

    #[test]
    fn census_examples() {
        let c = census(&ClassSpec::av(&["231", "4312", "4321"]).unwrap(), 8).unwrap();
        assert_eq!(c.si_sequence(), vec![1, 1, 2, 3, 5, 8, 13, 21]);
        let c = census(&ClassSpec::av(&["231"]).unwrap(), 8).unwrap();
        assert_eq!(c.sum_indecomposable[4], 5);
        assert_eq!(c.members, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        let c = census(&ClassSpec::new([]), 3).unwrap();
        assert_eq!(c.members, vec![1, 1, 2, 6]);
        assert!(census(&ClassSpec::av(&["21"]).unwrap(), 13).is_err());
    }

    #[test]
    fn census_routes_agree() {
        for b in [
            &["231", "4312", "4321"][..],
            &["321", "3412"],
            &["2413", "3142"],
            &["12"],
        ] {
            let spec = ClassSpec::av(b).unwrap();
            assert_eq!(
                census(&spec, 8).unwrap().members,
                full_census(&spec, 8).unwrap().members
            );
            assert_eq!(
                census(&spec, 8).unwrap().sum_indecomposable,
                full_census(&spec, 8).unwrap().sum_indecomposable
            );
        }
    }

    #[test]
    fn csv() {
        let c = census(&ClassSpec::av(&["21"]).unwrap(), 2).unwrap();
        assert_eq!(
            c.to_csv(),
            "length,members,sum_indecomposable\n0,1,0\n1,1,1\n2,1,0\n"
        );
    }

    #[test]
    fn basis_examples() {
        let small = compute_basis(|p: &Permutation| p.len() <= 1, 2).unwrap();
        assert_eq!(small, BTreeSet::from([perm("12"), perm("21")]));
        let spec = ClassSpec::av(&["231", "4312", "4321"]).unwrap();
        let b = compute_basis(|p: &Permutation| spec.member(p), 5).unwrap();
        assert_eq!(b.into_iter().collect::<Vec<_>>(), spec.basis());
        let bad = compute_basis(|p: &Permutation| p.len() != 2, 3);
        assert!(matches!(bad, Err(Error::NotDownwardClosed { .. })));
    }

    #[test]
    fn regularity() {
        assert!(!has_regular_insertion_encoding(&ClassSpec::av(&["321"]).unwrap()).unwrap());
        assert!(
            has_regular_insertion_encoding(&ClassSpec::av(&["231", "4312", "4321"]).unwrap())
                .unwrap()
        );
        assert!(has_regular_insertion_encoding(&ClassSpec::av(&["1"]).unwrap()).unwrap());
        assert_eq!(
            has_regular_insertion_encoding(&ClassSpec::new([])),
            Err(Error::EmptyBasis)
        );
    }

    #[test]
    fn closure_counts() {
        assert_eq!(sum_closure_counts(&[0, 1, 0, 0]), vec![1, 1, 1, 1]);
        assert_eq!(sum_closure_counts(&[0, 1, 1, 2, 2]), vec![1, 1, 2, 5, 11]);
    }
}
