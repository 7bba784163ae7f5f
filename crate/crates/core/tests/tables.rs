use permgrowth::algebraic::{xi, xi_polynomial};
use permgrowth::class::{census, ClassSpec};
use permgrowth::sequences::{
    classify, growth_polynomial_of_sequence, growth_rate_of_sequence, realize, table, Position,
    Realizability, Stated, SumSequence,
};

fn rounded(x: f64, places: i32) -> f64 {
    let f = 10f64.powi(places);
    (x * f).round() / f
}

#[test]
fn short_rows_reach_xi() {
    let rows = table(1).unwrap();
    assert_eq!(rows.len(), 11);
    for row in &rows {
        assert!(row.polynomial_matches(), "{}", row.sequence);
        match row.stated {
            Stated::Xi => assert_eq!(row.position, Position::EqualXi),
            Stated::Above(b) => {
                assert_eq!(row.position, Position::AboveXi);
                assert!(row.growth.to_f64() > b, "{}", row.sequence);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

#[test]
fn long_rows_reach_xi() {
    let rows = table(2).unwrap();
    for row in &rows {
        assert!(row.polynomial_matches(), "{}", row.sequence);
        assert_ne!(row.position, Position::BelowXi, "{}", row.sequence);
    }
    let equal = rows
        .iter()
        .filter(|r| r.position == Position::EqualXi)
        .count();
    assert!(equal >= 2);
}

#[test]
fn realizable_rows_below_xi() {
    let x = xi().to_f64();
    for t in [3, 4] {
        for row in table(t).unwrap() {
            assert!(row.polynomial_matches(), "{}", row.sequence);
            assert_eq!(row.position, Position::BelowXi, "{}", row.sequence);
            let g = row.growth.to_f64();
            match row.stated {
                Stated::Approx(v) | Stated::Exact(v) => {
                    assert_eq!(rounded(g, 5), v, "{}", row.sequence)
                }
                Stated::AtMost(v) => assert!(rounded(g, 5) <= v, "{}", row.sequence),
                Stated::Limit(v) => assert!(g <= v + 1e-5 || g < x, "{}", row.sequence),
                _ => {}
            }
            let verdict = classify(&row.sequence);
            assert!(
                matches!(verdict.realizable, Realizability::Yes { .. }),
                "{} {:?}",
                row.sequence,
                verdict.realizable
            );
        }
    }
}

#[test]
fn finitely_based_class_at_xi() {
    let target = SumSequence::finite(vec![1, 1, 2, 4, 3, 3, 2, 1]);
    let witness = realize(&target).unwrap().basis.unwrap();
    let explicit = ClassSpec::av(&[
        "312",
        "4321",
        "23541",
        "24531",
        "32541",
        "34251",
        "34521",
        "2435671",
        "32456781",
        "234567891",
    ])
    .unwrap();
    assert_eq!(witness.basis(), explicit.basis());
    let si = census(&explicit, 12).unwrap().si_sequence();
    assert_eq!(si, [1, 1, 2, 4, 3, 3, 2, 1, 0, 0, 0, 0]);
    let seq = SumSequence::finite(si.iter().map(|&v| v as u32).collect());
    assert_eq!(
        growth_polynomial_of_sequence(&seq).unwrap(),
        xi_polynomial()
    );
    assert!(growth_rate_of_sequence(&seq)
        .unwrap()
        .compare(&xi())
        .is_eq());
}
