mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use permgrowth::algebraic::{family_roots, kappa_polynomial, largest_real_root, xi, xi_polynomial};
use permgrowth::campaign::{
    search_1123, search_112344, sub_u_basis, SearchOutcome, XI_CLASS_BASIS,
};
use permgrowth::class::{census, census_by_oracle, full_census, ClassSpec};
use permgrowth::encoding::{build_automaton, decode, encode, gf_from_automaton};
use permgrowth::perm::{
    all_permutations, split_end_member, MonotoneDecomposition, Permutation, SplitEndVariant,
};
use permgrowth::poly::IntPoly;
use permgrowth::rational::si_gf;
use permgrowth::reconstruction::{taper_counterexample, verify_reconstruction, verify_taper};
use permgrowth::sequences::{
    dominates, growth_polynomial_of_sequence, growth_rate_of_sequence, is_legal, table, Position,
    SumSequence,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

/// Writes the verdict line past the test harness's output capture.
fn verdict(n: u32, ok: bool, detail: impl std::fmt::Display) {
    let status = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n:2}: {status} {detail}");
    assert!(ok, "criterion {n}: {detail}");
}

fn perms(list: &[&str]) -> BTreeSet<Permutation> {
    list.iter()
        .map(|s| Permutation::standardize(&s.bytes().collect::<Vec<u8>>()))
        .collect()
}

fn finite(terms: &[u64]) -> SumSequence {
    SumSequence::finite(terms.iter().map(|&v| v as u32).collect())
}

#[test]
fn criterion_01_constants() {
    let start = Instant::now();
    let k = largest_real_root(&kappa_polynomial(), 1e-9).unwrap();
    let x = largest_real_root(&xi_polynomial(), 1e-9).unwrap();
    let elapsed = start.elapsed();
    let (kf, xf) = (k.to_f64(), x.to_f64());
    let rounded = |v: f64| (v * 1e5).round() / 1e5;
    let ok = (kf - 2.205569).abs() <= 1e-6
        && (xf - 2.305224).abs() <= 1e-6
        && rounded(kf) == 2.20557
        && rounded(xf) == 2.30522
        && elapsed.as_secs_f64() < 1.0;
    verdict(
        1,
        ok,
        format!(
            "kappa {} xi {} in {elapsed:.2?}",
            k.decimal(9),
            x.decimal(9)
        ),
    );
}

#[test]
fn criterion_02_reconstruction() {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 5..=8 {
        let r = verify_reconstruction(n);
        ok &= r.passed() && r.checked > 0;
        parts.push(format!(
            "n={n}: {} checked, {} collisions",
            r.checked,
            r.failures.len()
        ));
    }
    verdict(2, ok, parts.join("; "));
}

#[test]
fn criterion_03_taper() {
    let mut ok = true;
    for (n, m) in [(4, 2), (5, 3), (6, 4)] {
        ok &= verify_taper(n, m).unwrap().passed();
    }
    let r = verify_taper(11, 5).unwrap();
    let mut fig = taper_counterexample();
    fig.sort();
    ok &=
        !r.passed() && r.failures.first() == Some(&fig) && r.failures.iter().all(|f| f.len() == 5);
    verdict(3, ok, format!("small cases hold; (11,5) fails with {} minimal sets, first is the five-permutation witness", r.failures.len()));
}

#[test]
fn criterion_04_searches() {
    let r = search_1123(10).unwrap();
    let encoded: Vec<_> = r.encoded().collect();
    let early_big = |s: &SumSequence| {
        let t = s.terms(40);
        let first_five = t.iter().position(|&v| v == 5).unwrap_or(t.len());
        t[..first_five].iter().any(|&v| v > 5)
    };
    let no_counter = r
        .nodes
        .iter()
        .all(|n| n.outcome != SearchOutcome::Counterexample)
        && encoded
            .iter()
            .all(|n| !early_big(n.sequence.as_ref().unwrap()));
    let big = search_112344().unwrap();
    let five = big.with_five();
    let first = ClassSpec::av(&["321", "3412", "4123", "23451", "314625"]).unwrap();
    let found: BTreeSet<Vec<Permutation>> = five.iter().map(|c| c.basis.basis().to_vec()).collect();
    let want: BTreeSet<Vec<Permutation>> =
        [first.basis().to_vec(), first.inverse().basis().to_vec()].into();
    let seq: SumSequence = "1,1,2,3,4,4,(5,4)".parse().unwrap();
    let ok = encoded.len() == 178
        && no_counter
        && found == want
        && five.iter().all(|c| c.sequence == seq);
    verdict(
        4,
        ok,
        format!(
            "{} classes encoded; {} classes reach 5 with {}",
            encoded.len(),
            five.len(),
            seq
        ),
    );
}

#[test]
fn criterion_05_generating_function() {
    let spec = ClassSpec::av(&["231", "4312", "4321"]).unwrap();
    let f = gf_from_automaton(&build_automaton(&spec).unwrap()).unwrap();
    let g = si_gf(&f).unwrap();
    let series: Vec<u64> = g.coefficients_i64(8).unwrap()[1..]
        .iter()
        .map(|&c| c as u64)
        .collect();
    let brute = full_census(&spec, 8).unwrap().si_sequence();
    let fib = vec![1, 1, 2, 3, 5, 8, 13, 21];
    verdict(
        5,
        series == fib && brute == fib,
        format!("series {series:?} from {g}, census {brute:?}"),
    );
}

#[test]
fn criterion_06_sub_u_basis() {
    let b = sub_u_basis(7).unwrap();
    let want = perms(&["321", "3412", "4123", "23451", "314625"]);
    let text: Vec<String> = b
        .iter()
        .map(|p| p.entries().iter().map(u8::to_string).collect())
        .collect();
    verdict(6, b == want, format!("basis {{{}}}", text.join(", ")));
}

#[test]
fn criterion_07_tables() {
    let mut ok = true;
    let mut sizes = Vec::new();
    for t in 1..=4u8 {
        let rows = table(t).unwrap();
        sizes.push(rows.len());
        for row in &rows {
            let side = if t <= 2 {
                row.position != Position::BelowXi
            } else {
                row.position == Position::BelowXi
            };
            if !(row.polynomial_matches() && side) {
                ok = false;
                let _ = writeln!(
                    std::io::stderr(),
                    "table {t} row {} mismatched",
                    row.sequence
                );
            }
        }
    }
    verdict(7, ok, format!("rows per table {sizes:?}"));
}

#[test]
fn criterion_08_finitely_based_class_at_xi() {
    let spec = ClassSpec::av(&XI_CLASS_BASIS).unwrap();
    let si = census(&spec, 12).unwrap().si_sequence();
    let want = vec![1, 1, 2, 4, 3, 3, 2, 1, 0, 0, 0, 0];
    let seq = finite(&si);
    let poly = growth_polynomial_of_sequence(&seq).unwrap();
    let growth = growth_rate_of_sequence(&seq).unwrap();
    let ok = si == want && poly == xi_polynomial() && growth.compare(&xi()).is_eq();
    verdict(
        8,
        ok,
        format!(
            "{spec} has sum indecomposable counts {si:?} and growth {}",
            growth.decimal(6)
        ),
    );
}

#[test]
fn criterion_09_accumulation() {
    let f = &xi_polynomial() * &IntPoly::from_i64s(&[1, 1]);
    let roots = family_roots(&f, &IntPoly::from_i64s(&[-1]), |i| 2 * i + 1, 1..=10, 1e-12).unwrap();
    let x = xi();
    let decreasing = roots.windows(2).all(|w| w[0].compare(&w[1]).is_gt());
    let above = roots.iter().all(|r| r.compare(&x).is_gt());
    let gap = roots[9].to_f64() - x.to_f64();
    verdict(
        9,
        decreasing && above && gap < 1e-3,
        format!(
            "root(1) {} root(10) {} gap {gap:.3e}",
            roots[0].decimal(8),
            roots[9].decimal(8)
        ),
    );
}

#[test]
fn criterion_10_properties() {
    let mut failures = Vec::new();

    let si: Vec<usize> = (1..=5)
        .map(|n| {
            all_permutations(n)
                .iter()
                .filter(|p| p.inversion_graph().is_connected())
                .count()
        })
        .collect();
    if si != [1, 1, 3, 13, 71] {
        failures.push(format!("indecomposable counts {si:?}"));
    }

    for n in 1..=8 {
        for p in all_permutations(n) {
            if MonotoneDecomposition::of(&p).unwrap().inflate().unwrap() != p {
                failures.push(format!("monotone round trip {p}"));
            }
            if decode(&encode(&p)).unwrap() != p {
                failures.push(format!("encoding round trip {p}"));
            }
        }
    }

    let mut runner = TestRunner::deterministic();
    let strategy = common::legal_pair();
    for _ in 0..50 {
        let (r, t) = strategy.new_tree(&mut runner).unwrap().current();
        let gr = growth_rate_of_sequence(&r).unwrap();
        let gt = growth_rate_of_sequence(&t).unwrap();
        if !(is_legal(&r) && is_legal(&t) && dominates(&r, &t)) || gr.compare(&gt).is_gt() {
            failures.push(format!("domination {r} <= {t}"));
        }
    }

    for k in 0..=1usize {
        let n = 2 * k + 7;
        let mu = split_end_member(n, SplitEndVariant::Uo).unwrap();
        let mut want = vec![1u64, 1, 2, 3];
        want.extend(std::iter::repeat_n(4, 2 * k));
        want.extend([3, 2, 1]);
        let got = census_by_oracle(n, |p| mu.contains(p))
            .unwrap()
            .si_sequence();
        if got != want {
            failures.push(format!(
                "subpatterns of length-{n} split-end member {got:?}"
            ));
        }
    }

    let detail = if failures.is_empty() {
        "counts 1,1,3,13,71; round trips to length 8; 50 dominated pairs; split-end identities k=0,1".to_string()
    } else {
        failures.join("; ")
    };
    verdict(10, failures.is_empty(), detail);
}
