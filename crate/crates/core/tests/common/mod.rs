#![allow(dead_code)]

use permgrowth::perm::Permutation;
use permgrowth::sequences::SumSequence;
use proptest::prelude::*;

/// Uniform permutations of length `0..=max`.
pub fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle())
        .prop_map(|e| Permutation::new(e).unwrap())
}

/// Largest value allowed at length `n` after `prev` at `n - 1` by the
/// initial caps and taper rules.
pub fn legal_cap(n: usize, prev: Option<u32>) -> u32 {
    let mut cap = match n {
        1 | 2 => 1,
        3 => 3,
        _ => u32::MAX,
    };
    if let Some(p) = prev {
        let m = n - 1;
        if p == 0 {
            cap = 0;
        }
        if m >= 3 && p <= 1 {
            cap = cap.min(1);
        }
        if m >= 4 && p <= 2 {
            cap = cap.min(2);
        }
        if m >= 5 && p <= 3 {
            cap = cap.min(3);
        }
    }
    cap
}

/// Clamps `raw` to a legal sequence starting with 1 and bounded by `bound`,
/// optionally continued by the constant `tail`.
pub fn legalize(raw: &[u32], tail: Option<u32>, bound: impl Fn(usize) -> u32) -> SumSequence {
    let mut out: Vec<u32> = Vec::new();
    for (i, &x) in raw.iter().enumerate() {
        let n = i + 1;
        let v = if n == 1 {
            1
        } else {
            x.min(legal_cap(n, out.last().copied())).min(bound(n))
        };
        out.push(v);
    }
    let tail = match tail {
        Some(c) => {
            let n = out.len() + 1;
            let far = (n..n + 4).map(&bound).min().unwrap_or(u32::MAX);
            vec![c.min(legal_cap(n, out.last().copied())).min(far)]
        }
        None => Vec::new(),
    };
    SumSequence::new(out, tail)
}

/// Pairs `r ⪯ t` of legal nonzero sequences.
pub fn legal_pair() -> impl Strategy<Value = (SumSequence, SumSequence)> {
    (
        prop::collection::vec(0u32..7, 1..10),
        prop::option::of(0u32..5),
        prop::collection::vec(0u32..7, 10),
        0u32..5,
    )
        .prop_map(|(raw_t, tail_t, raw_r, tail_r)| {
            let t = legalize(&raw_t, tail_t, |_| u32::MAX);
            let tail_r = tail_t.map(|c| tail_r.min(c));
            let r = legalize(&raw_r[..raw_t.len()], tail_r, |n| t.get(n));
            (r, t)
        })
}

fn chains_bound(n: usize) -> u32 {
    [1, 1, 3, 5, 5, 5].get(n - 1).copied().unwrap_or(4)
}

/// Legal sequences dominated by `1,1,3,5,5,5,(4)` with support inside
/// `1..=10` or a constant tail.
pub fn chain_sequence() -> impl Strategy<Value = SumSequence> {
    (
        prop::collection::vec(0u32..6, 1..=10),
        prop::option::of(1u32..5),
    )
        .prop_map(|(raw, tail)| legalize(&raw, tail, chains_bound))
}

/// Legal sequences `1,1,2,3,4,4,5,…` dominated by `1,1,2,3,4,4,5,(4)` that
/// do not end `1,1`.
pub fn oscillation_sequence() -> impl Strategy<Value = SumSequence> {
    (
        prop::collection::vec(0u32..5, 0..=4),
        prop::option::of(1u32..5),
    )
        .prop_map(|(raw, tail)| {
            let mut full = vec![1, 1, 2, 3, 4, 4, 5];
            full.extend(raw);
            legalize(&full, tail, |n| if n == 7 { 5 } else { 4 })
        })
        .prop_filter("must not end 1,1", |s| !s.ends_in_ones())
}
