//! The insertion encoding: permutations as words describing how each value,
//! inserted in increasing order, fills or splits the open "slots", plus
//! finite automata recognizing the encodings of a class and the rational
//! generating functions they yield.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::class::{has_regular_insertion_encoding, unbounded_alternation, ClassSpec};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::IntPoly;
use crate::rational::RationalFunction;

/// Default bound on the number of simultaneous slots.
pub const DEFAULT_SLOT_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    /// The slot becomes the new value.
    Fill,
    /// Slot, then value.
    Left,
    /// Value, then slot.
    Right,
    /// Slot, value, slot.
    Middle,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::Fill, Action::Left, Action::Right, Action::Middle];

    pub fn name(self) -> &'static str {
        match self {
            Action::Fill => "fill",
            Action::Left => "left",
            Action::Right => "right",
            Action::Middle => "middle",
        }
    }

    fn has_left(self) -> bool {
        matches!(self, Action::Left | Action::Middle)
    }

    /// Change in the number of slots.
    fn delta(self) -> isize {
        match self {
            Action::Fill => -1,
            Action::Left | Action::Right => 0,
            Action::Middle => 1,
        }
    }
}

/// One letter of the encoding: an action on the slot with 1-based index `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IELetter {
    pub action: Action,
    pub slot: usize,
}

impl IELetter {
    pub fn new(action: Action, slot: usize) -> Self {
        IELetter { action, slot }
    }
}

impl fmt::Display for IELetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.action.name(), self.slot)
    }
}

/// The encoding of `p`; the empty permutation encodes as the empty word.
pub fn encode(p: &Permutation) -> Vec<IELetter> {
    let n = p.len();
    let inv = p.inverse();
    let mut decided = vec![false; n];
    let mut word = Vec::with_capacity(n);
    for v in 0..n {
        let pos = inv.entries()[v] as usize - 1;
        let mut slot = 0;
        let mut i = 0;
        let (mut start, mut end) = (0, 0);
        while i < n {
            if decided[i] {
                i += 1;
                continue;
            }
            let s = i;
            while i < n && !decided[i] {
                i += 1;
            }
            slot += 1;
            if (s..i).contains(&pos) {
                start = s;
                end = i;
                break;
            }
        }
        let left = pos > start;
        let right = pos + 1 < end;
        let action = match (left, right) {
            (false, false) => Action::Fill,
            (true, false) => Action::Left,
            (false, true) => Action::Right,
            (true, true) => Action::Middle,
        };
        word.push(IELetter::new(action, slot));
        decided[pos] = true;
    }
    word
}

/// Replays a word; fails if a letter names a missing slot or slots remain.
pub fn decode(word: &[IELetter]) -> Result<Permutation> {
    #[derive(Clone, Copy)]
    enum Cell {
        Slot,
        Value(u8),
    }
    let mut cells = vec![Cell::Slot];
    for (k, letter) in word.iter().enumerate() {
        let v = k as u8 + 1;
        let idx = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, Cell::Slot))
            .nth(letter.slot.wrapping_sub(1))
            .map(|(i, _)| i)
            .ok_or_else(|| Error::Parse(format!("letter {letter} names a missing slot")))?;
        let replacement: Vec<Cell> = match letter.action {
            Action::Fill => vec![Cell::Value(v)],
            Action::Left => vec![Cell::Slot, Cell::Value(v)],
            Action::Right => vec![Cell::Value(v), Cell::Slot],
            Action::Middle => vec![Cell::Slot, Cell::Value(v), Cell::Slot],
        };
        cells.splice(idx..idx + 1, replacement);
    }
    if word.is_empty() {
        return Ok(Permutation::empty());
    }
    let mut entries = Vec::with_capacity(cells.len());
    for c in cells {
        match c {
            Cell::Slot => return Err(Error::Parse("word leaves open slots".into())),
            Cell::Value(v) => entries.push(v),
        }
    }
    Permutation::new(entries)
}

/// Per basis element: length and, for each `j`, the index of the entry with
/// value `j + 1` among the entries with value above `j` (in position order).
struct PatternInfo {
    k: usize,
    idx: Vec<usize>,
}

impl PatternInfo {
    fn new(beta: &Permutation) -> Self {
        let e = beta.entries();
        let k = e.len();
        let idx = (0..k)
            .map(|j| {
                let pos = e
                    .iter()
                    .position(|&v| v as usize == j + 1)
                    .expect("value present");
                e[..pos].iter().filter(|&&v| v as usize > j).count()
            })
            .collect();
        PatternInfo { k, idx }
    }
}

/// A partial embedding of basis element `b`: its values `1..=j` are matched
/// to decided values, and its remaining entries (in position order) are
/// assigned to slots, nondecreasingly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Embedding {
    b: u8,
    j: u8,
    slots: Vec<u8>,
}

/// A configuration: slot count plus every live partial embedding with
/// `j >= 1` (those with `j = 0` are implied by the slot count).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Config {
    s: u8,
    embeddings: Vec<Embedding>,
}

struct Builder<'a> {
    infos: Vec<PatternInfo>,
    live_memo: HashMap<Config, bool>,
    _spec: &'a ClassSpec,
}

/// Appends every nondecreasing sequence of `len` values in `lo..=hi`,
/// each prefixed by `prefix`.
fn nondecreasing(len: usize, lo: u8, hi: u8, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if len == 0 {
        out.push(prefix.clone());
        return;
    }
    if lo > hi {
        return;
    }
    for v in lo..=hi {
        prefix.push(v);
        nondecreasing(len - 1, v, hi, prefix, out);
        prefix.pop();
    }
}

impl<'a> Builder<'a> {
    fn new(spec: &'a ClassSpec) -> Self {
        Builder {
            infos: spec.basis().iter().map(PatternInfo::new).collect(),
            live_memo: HashMap::new(),
            _spec: spec,
        }
    }

    /// The configuration after `letter`, or `None` if it names a missing
    /// slot or completes a basis element.
    fn step(&self, cfg: &Config, letter: IELetter) -> Option<Config> {
        let s = cfg.s as usize;
        let i = letter.slot;
        if i == 0 || i > s {
            return None;
        }
        let act = letter.action;
        let delta = act.delta();
        let new_s = (s as isize + delta) as u8;
        let i8 = i as u8;
        let left_slot = act.has_left().then_some(i8);
        let right_slot = match act {
            Action::Right => Some(i8),
            Action::Middle => Some(i8 + 1),
            _ => None,
        };
        let remap = |c: u8| -> u8 {
            if c < i8 {
                c
            } else {
                (c as isize + delta) as u8
            }
        };
        let mut out: Vec<Embedding> = Vec::new();

        for e in &cfg.embeddings {
            let info = &self.infos[e.b as usize];
            let in_slot: Vec<usize> = (0..e.slots.len()).filter(|&t| e.slots[t] == i8).collect();
            // The new value is not used by this embedding.
            let splits: Vec<usize> = match act {
                Action::Fill => {
                    if in_slot.is_empty() {
                        vec![0]
                    } else {
                        vec![]
                    }
                }
                Action::Left => vec![in_slot.len()],
                Action::Right => vec![0],
                Action::Middle => (0..=in_slot.len()).collect(),
            };
            for c in splits {
                let slots = e
                    .slots
                    .iter()
                    .enumerate()
                    .map(|(t, &sl)| {
                        if sl != i8 {
                            remap(sl)
                        } else if t < in_slot.first().copied().unwrap_or(0) + c {
                            left_slot.expect("left part exists")
                        } else {
                            right_slot.expect("right part exists")
                        }
                    })
                    .collect();
                out.push(Embedding {
                    b: e.b,
                    j: e.j,
                    slots,
                });
            }
            // The new value plays the role of value j + 1.
            let t = info.idx[e.j as usize];
            if e.slots[t] == i8 {
                if let Some(slots) = self.use_value(&e.slots, t, i8, left_slot, right_slot, &remap)
                {
                    if e.j as usize + 1 == info.k {
                        return None;
                    }
                    out.push(Embedding {
                        b: e.b,
                        j: e.j + 1,
                        slots,
                    });
                }
            }
        }

        // Fresh embeddings whose smallest entry is the new value.
        for (b, info) in self.infos.iter().enumerate() {
            if info.k == 1 {
                return None;
            }
            let before = info.idx[0];
            let after = info.k - 1 - before;
            let lmax = if left_slot.is_some() { i8 } else { i8 - 1 };
            let rmin = match right_slot {
                Some(r) => r,
                None => (i as isize + 1 + delta) as u8,
            };
            if before > 0 && lmax == 0 {
                continue;
            }
            if after > 0 && rmin > new_s {
                continue;
            }
            let mut lefts = Vec::new();
            nondecreasing(before, 1, lmax, &mut Vec::new(), &mut lefts);
            let mut rights = Vec::new();
            nondecreasing(after, rmin, new_s, &mut Vec::new(), &mut rights);
            for l in &lefts {
                for r in &rights {
                    let mut slots = l.clone();
                    slots.extend_from_slice(r);
                    out.push(Embedding {
                        b: b as u8,
                        j: 1,
                        slots,
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        Some(Config {
            s: new_s,
            embeddings: out,
        })
    }

    fn use_value(
        &self,
        slots: &[u8],
        t: usize,
        i: u8,
        left_slot: Option<u8>,
        right_slot: Option<u8>,
        remap: &impl Fn(u8) -> u8,
    ) -> Option<Vec<u8>> {
        let mut out = Vec::with_capacity(slots.len() - 1);
        for (u, &sl) in slots.iter().enumerate() {
            if u == t {
                continue;
            }
            if sl != i {
                out.push(remap(sl));
            } else if u < t {
                out.push(left_slot?);
            } else {
                out.push(right_slot?);
            }
        }
        Some(out)
    }

    /// Whether some sequence of fills completes the configuration: any
    /// completion contains one taking a single value per slot.
    fn live(&mut self, cfg: &Config) -> bool {
        if cfg.s == 0 {
            return true;
        }
        if let Some(&v) = self.live_memo.get(cfg) {
            return v;
        }
        let mut result = false;
        for i in 1..=cfg.s as usize {
            if let Some(next) = self.step(cfg, IELetter::new(Action::Fill, i)) {
                if self.live(&next) {
                    result = true;
                    break;
                }
            }
        }
        self.live_memo.insert(cfg.clone(), result);
        result
    }
}

/// A deterministic automaton over insertion-encoding letters. Missing
/// transitions lead to an implicit dead state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InsertionAutomaton {
    pub start: usize,
    pub accepting: Vec<bool>,
    /// Per state, outgoing transitions sorted by letter.
    pub transitions: Vec<Vec<(IELetter, usize)>>,
}

impl InsertionAutomaton {
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }

    pub fn next(&self, q: usize, letter: IELetter) -> Option<usize> {
        self.transitions[q]
            .binary_search_by_key(&letter, |&(l, _)| l)
            .ok()
            .map(|k| self.transitions[q][k].1)
    }

    pub fn accepts(&self, word: &[IELetter]) -> bool {
        let mut q = self.start;
        for &l in word {
            match self.next(q, l) {
                Some(r) => q = r,
                None => return false,
            }
        }
        self.accepting[q]
    }

    /// Number of accepted words of each length `0..=n`.
    pub fn word_counts(&self, n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.num_states()];
        v[self.start] = BigInt::one();
        let mut out = Vec::with_capacity(n + 1);
        for len in 0..=n {
            out.push(
                v.iter()
                    .zip(&self.accepting)
                    .filter(|(_, &a)| a)
                    .map(|(c, _)| c.clone())
                    .sum(),
            );
            if len == n {
                break;
            }
            let mut w = vec![BigInt::zero(); self.num_states()];
            for (q, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &(_, r) in &self.transitions[q] {
                    w[r] += c;
                }
            }
            v = w;
        }
        out
    }

    /// Coarsest equivalent automaton by iterated signature refinement,
    /// with states renumbered in breadth-first order from the start.
    pub fn minimize(&self) -> InsertionAutomaton {
        let n = self.num_states();
        let mut block: Vec<usize> = self.accepting.iter().map(|&a| usize::from(a)).collect();
        let mut count = block.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut ids: HashMap<(usize, Vec<(IELetter, usize)>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let sig: Vec<(IELetter, usize)> = self.transitions[q]
                    .iter()
                    .map(|&(l, r)| (l, block[r]))
                    .collect();
                let len = ids.len();
                next[q] = *ids.entry((block[q], sig)).or_insert(len);
            }
            let new_count = ids.len();
            block = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // Renumber blocks in BFS order.
        let mut order: Vec<Option<usize>> = vec![None; count];
        let mut rep: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([self.start]);
        order[block[self.start]] = Some(0);
        rep.push(self.start);
        while let Some(q) = queue.pop_front() {
            for &(_, r) in &self.transitions[q] {
                if order[block[r]].is_none() {
                    order[block[r]] = Some(rep.len());
                    rep.push(r);
                    queue.push_back(r);
                }
            }
        }
        let transitions = rep
            .iter()
            .map(|&q| {
                self.transitions[q]
                    .iter()
                    .map(|&(l, r)| (l, order[block[r]].expect("reachable")))
                    .collect()
            })
            .collect();
        InsertionAutomaton {
            start: 0,
            accepting: rep.iter().map(|&q| self.accepting[q]).collect(),
            transitions,
        }
    }

    /// JSON dump: state count, start, `(state, action, slot, state)`
    /// transitions and the accepting states.
    pub fn to_json(&self) -> serde_json::Value {
        let transitions: Vec<serde_json::Value> = self
            .transitions
            .iter()
            .enumerate()
            .flat_map(|(q, ts)| {
                ts.iter()
                    .map(move |&(l, r)| serde_json::json!([q, l.action.name(), l.slot, r]))
            })
            .collect();
        let accepting: Vec<usize> = (0..self.num_states())
            .filter(|&q| self.accepting[q])
            .collect();
        serde_json::json!({
            "states": self.num_states(),
            "start": self.start,
            "transitions": transitions,
            "accepting": accepting,
        })
    }
}

/// Minimal automaton accepting exactly the encodings of members of `spec`.
pub fn build_automaton(spec: &ClassSpec) -> Result<InsertionAutomaton> {
    build_automaton_with_cap(spec, DEFAULT_SLOT_CAP)
}

pub fn build_automaton_with_cap(spec: &ClassSpec, cap: usize) -> Result<InsertionAutomaton> {
    if let Some(kind) = unbounded_alternation(spec)? {
        return Err(Error::NotRegular(kind.name().to_string()));
    }
    debug_assert!(has_regular_insertion_encoding(spec)?);
    Ok(build_raw(spec, cap)?.minimize())
}

/// The reachable live configurations as an automaton, before minimization.
/// State 0 is a dedicated accepting start standing for the empty word.
pub fn build_raw(spec: &ClassSpec, cap: usize) -> Result<InsertionAutomaton> {
    let mut builder = Builder::new(spec);
    if spec.basis().iter().any(Permutation::is_empty) {
        return Ok(InsertionAutomaton {
            start: 0,
            accepting: vec![false],
            transitions: vec![Vec::new()],
        });
    }
    let initial = Config {
        s: 1,
        embeddings: Vec::new(),
    };
    let mut ids: HashMap<Config, usize> = HashMap::new();
    let mut configs: Vec<Option<Config>> = vec![None];
    let mut transitions: Vec<Vec<(IELetter, usize)>> = vec![Vec::new()];
    let mut accepting = vec![true];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(q) = queue.pop_front() {
        let cfg = configs[q].clone().unwrap_or_else(|| initial.clone());
        let mut out = Vec::new();
        for action in Action::ALL {
            for slot in 1..=cfg.s as usize {
                let letter = IELetter::new(action, slot);
                let Some(next) = builder.step(&cfg, letter) else {
                    continue;
                };
                if !builder.live(&next) {
                    continue;
                }
                if next.s as usize > cap {
                    return Err(Error::SlotBoundExceeded { cap });
                }
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = configs.len();
                        accepting.push(next.s == 0);
                        ids.insert(next.clone(), id);
                        configs.push(Some(next));
                        transitions.push(Vec::new());
                        queue.push_back(id);
                        id
                    }
                };
                out.push((letter, id));
            }
        }
        out.sort();
        transitions[q] = out;
    }
    Ok(InsertionAutomaton {
        start: 0,
        accepting,
        transitions,
    })
}

/// Berlekamp–Massey over the rationals: the shortest connection polynomial
/// `C` (with `C(0) = 1`) and its length `L`, so that
/// `sum_i C_i s_{n-i} = 0` for all `L <= n < len(s)`.
pub fn berlekamp_massey(s: &[BigRational]) -> (Vec<BigRational>, usize) {
    let mut c: Vec<BigRational> = vec![BigRational::one()];
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let mut next = c.clone();
        if next.len() < b.len() + m {
            next.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            next[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            b = c;
            l = n + 1 - l;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
        c = next;
    }
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    (c, l)
}

/// Rational function with the given series, recovered by Berlekamp–Massey
/// from the first terms; `terms` must be at least twice the order of a
/// linear recurrence the sequence satisfies.
pub fn rational_from_series(terms: &[BigInt]) -> Result<RationalFunction> {
    let s: Vec<BigRational> = terms
        .iter()
        .map(|t| BigRational::from_integer(t.clone()))
        .collect();
    let (c, l) = berlekamp_massey(&s);
    let mut p: Vec<BigRational> = vec![BigRational::zero(); l.max(1)];
    for (n, pn) in p.iter_mut().enumerate() {
        for (i, ci) in c.iter().enumerate() {
            if i <= n && n < s.len() {
                *pn += ci * &s[n - i];
            }
        }
    }
    let lcm = c.iter().chain(p.iter()).fold(BigInt::one(), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    });
    let to_int = |v: &[BigRational]| -> IntPoly {
        IntPoly::new(
            v.iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
    };
    let f = RationalFunction::new(to_int(&p), to_int(&c))?;
    let check = f.series_coefficients(terms.len() - 1)?;
    if check != terms {
        return Err(Error::Series(
            "recovered rational function does not reproduce the series".into(),
        ));
    }
    Ok(f)
}

/// Generating function of accepted words by length: the word counts obey
/// the recurrence given by the transfer matrix's characteristic polynomial,
/// of order at most the number of states, so `2N + 2` counts determine it.
pub fn gf_from_automaton(a: &InsertionAutomaton) -> Result<RationalFunction> {
    let n = a.num_states();
    let counts = a.word_counts(2 * n + 8);
    rational_from_series(&counts)
}

/// The same generating function by fraction-free elimination on
/// `I - xA`: with the bordered matrix `[[I - xA, acc], [e_start^T, 0]]`,
/// the start state's series is `-det(bordered) / det(I - xA)`.
pub fn gf_by_elimination(a: &InsertionAutomaton) -> Result<RationalFunction> {
    let n = a.num_states();
    let size = n + 1;
    let mut m: Vec<Vec<IntPoly>> = vec![vec![IntPoly::zero(); size]; size];
    for q in 0..n {
        m[q][q] = IntPoly::one();
        let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
        for &(_, r) in &a.transitions[q] {
            *counts.entry(r).or_default() += 1;
        }
        for (r, c) in counts {
            m[q][r] = &m[q][r] - &IntPoly::from_i64s(&[0, c]);
        }
        if a.accepting[q] {
            m[q][n] = IntPoly::one();
        }
    }
    m[n][a.start] = IntPoly::one();
    let mut prev = IntPoly::one();
    let mut det_m = IntPoly::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        if pivot.is_zero() {
            return Err(Error::Series("zero pivot in elimination".into()));
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &(&pivot * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Series("inexact elimination step".into()))?;
            }
            m[i][k] = IntPoly::zero();
        }
        prev = pivot;
        if k + 1 == n {
            det_m = m[k][k].clone();
        }
    }
    if n == 0 {
        return Ok(RationalFunction::zero());
    }
    let det_b = m[n][n].clone();
    RationalFunction::new(-&det_b, det_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, perm};
    use crate::rational::si_gf;

    fn l(action: Action, slot: usize) -> IELetter {
        IELetter::new(action, slot)
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&perm("1")), vec![l(Action::Fill, 1)]);
        assert_eq!(
            encode(&perm("21")),
            vec![l(Action::Left, 1), l(Action::Fill, 1)]
        );
        assert_eq!(
            encode(&perm("231")),
            vec![l(Action::Left, 1), l(Action::Right, 1), l(Action::Fill, 1)]
        );
        assert!(encode(&Permutation::empty()).is_empty());
    }

    #[test]
    fn decode_round_trip() {
        for n in 0..=6 {
            for p in all_permutations(n) {
                let w = encode(&p);
                assert_eq!(w.len(), p.len());
                assert_eq!(decode(&w).unwrap(), p);
            }
        }
        assert!(decode(&[l(Action::Left, 1)]).is_err());
        assert!(decode(&[l(Action::Fill, 2)]).is_err());
    }

    #[test]
    fn increasing_class() {
        let a = build_automaton(&ClassSpec::av(&["21"]).unwrap()).unwrap();
        assert_eq!(a.word_counts(6), vec![BigInt::one(); 7]);
        assert_eq!(gf_from_automaton(&a).unwrap().to_string(), "(1) / (1 - x)");
        assert!(a.accepts(&encode(&perm("1234"))));
        assert!(!a.accepts(&encode(&perm("1243"))));
        for q in 0..a.num_states() {
            assert!(a.transitions[q]
                .iter()
                .all(|(lt, _)| matches!(lt.action, Action::Fill | Action::Right)));
        }
    }

    #[test]
    fn automaton_matches_census() {
        let spec = ClassSpec::av(&["231", "4312", "4321"]).unwrap();
        let a = build_automaton(&spec).unwrap();
        let f = gf_from_automaton(&a).unwrap();
        assert_eq!(f, gf_by_elimination(&a).unwrap());
        let counts = f.coefficients_i64(10).unwrap();
        let census = crate::class::census(&spec, 10).unwrap();
        assert_eq!(
            counts.iter().map(|&c| c as u64).collect::<Vec<_>>(),
            census.members
        );
        let g = si_gf(&f).unwrap();
        let si: Vec<i64> = census
            .sum_indecomposable
            .iter()
            .map(|&c| c as i64)
            .collect();
        assert_eq!(&g.coefficients_i64(10).unwrap()[1..], &si[1..]);
    }

    #[test]
    fn period_two_tail() {
        let spec = ClassSpec::av(&["321", "3412", "4123", "23451", "314625"]).unwrap();
        let a = build_automaton(&spec).unwrap();
        let g = si_gf(&gf_from_automaton(&a).unwrap()).unwrap();
        assert_eq!(
            g.coefficients_i64(10).unwrap(),
            vec![0, 1, 1, 2, 3, 4, 4, 5, 4, 5, 4]
        );
    }

    #[test]
    fn acceptance_matches_membership() {
        let spec = ClassSpec::av(&["321", "2341", "3412"]).unwrap();
        let a = build_automaton(&spec).unwrap();
        for n in 0..=7 {
            for p in all_permutations(n) {
                assert_eq!(a.accepts(&encode(&p)), spec.member(&p), "{p}");
            }
        }
    }

    #[test]
    fn minimization_is_idempotent() {
        let spec = ClassSpec::av(&["231", "4312", "4321"]).unwrap();
        let raw = build_raw(&spec, DEFAULT_SLOT_CAP).unwrap();
        let min = raw.minimize();
        assert!(min.num_states() <= raw.num_states());
        assert_eq!(min.minimize(), min);
        assert_eq!(raw.word_counts(12), min.word_counts(12));
    }

    #[test]
    fn irregular_and_capped() {
        assert!(matches!(
            build_automaton(&ClassSpec::av(&["321"]).unwrap()),
            Err(Error::NotRegular(_))
        ));
        let spec = ClassSpec::av(&["2413", "3142", "321"]).unwrap();
        if has_regular_insertion_encoding(&spec).unwrap() {
            assert!(matches!(
                build_automaton_with_cap(&spec, 1),
                Err(Error::SlotBoundExceeded { cap: 1 })
            ));
        }
    }

    #[test]
    fn berlekamp_massey_recovers_rational() {
        let fib: Vec<BigInt> = {
            let mut v = vec![BigInt::one(), BigInt::one()];
            for i in 2..20 {
                let next = &v[i - 1] + &v[i - 2];
                v.push(next);
            }
            v
        };
        let f = rational_from_series(&fib).unwrap();
        assert_eq!(f.to_string(), "(1) / (1 - x - x^2)");
    }

    #[test]
    fn json_dump() {
        let a = build_automaton(&ClassSpec::av(&["21"]).unwrap()).unwrap();
        let j = a.to_json();
        assert_eq!(j["states"], a.num_states());
        assert!(j["transitions"]
            .as_array()
            .unwrap()
            .iter()
            .all(|t| t.as_array().unwrap().len() == 4));
    }
}
