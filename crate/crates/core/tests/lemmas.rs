use monoclosure::lemmas::sample_shifts;
use monoclosure::{
    counterexample_check, growth_report, parse_ideal, rees_gap_check, verify_intersection_lemma, verify_radical_swap,
    ExponentVector, MonomialIdeal,
};

fn ideal(text: &str, dim: usize) -> MonomialIdeal {
    parse_ideal(text, Some(dim)).unwrap()
}

#[test]
fn counterexample_examples() {
    assert!(counterexample_check(10, 2).unwrap().holds());
    assert!(counterexample_check(20, 5).unwrap().holds());
    assert!(counterexample_check(10, 5).is_err());
    assert!(counterexample_check(7, 0).is_err());
    let rep = counterexample_check(10, 2).unwrap();
    assert_eq!(rep.point, ExponentVector::from([1, 5]));
    assert!(rep.certificate.validate());
}

#[test]
fn shift_samples_are_admissible() {
    for n in (4..=30).step_by(2) {
        let ks = sample_shifts(n);
        assert!(!ks.is_empty() && ks.len() <= 3);
        for k in ks {
            assert!(k + 1 < n / 2, "n={n} k={k}");
        }
    }
    assert_eq!(sample_shifts(10), vec![0, 1, 3]);
    assert!(sample_shifts(9).is_empty());
}

#[test]
fn intersection_of_coordinate_lines() {
    let rep = verify_intersection_lemma(&ideal("(x)", 2), &ideal("(y)", 2), 1, 30).unwrap();
    assert_eq!(rep.intersection, ideal("(x*y)", 2));
    assert!(rep.all_hold());
}

#[test]
fn intersection_degenerates_when_equal() {
    let j = ideal("(x^2, x*y, y^2)", 2);
    let rep = verify_intersection_lemma(&j, &j, 1, 12).unwrap();
    assert_eq!(rep.intersection, j);
    assert!(rep.all_hold());
}

#[test]
fn intersection_cross_checks_direct_report() {
    let j = ideal("m^2", 2).materialize();
    let k = ideal("(x)", 2);
    let rep = verify_intersection_lemma(&j, &k, 1, 20).unwrap();
    let direct = growth_report(&ideal("(x) & m^2", 2), &MonomialIdeal::maximal(2), 1, 20, None).unwrap();
    assert!(rep.intersection.same_ideal(&direct.ideal));
    for (a, b) in rep.rows.iter().zip(&direct.rows) {
        assert_eq!((a.n, a.f), (b.n, b.f));
    }
    assert_eq!(rep.empirical_c, direct.empirical_c);
    assert!(rep.all_hold());
}

#[test]
fn intersection_requires_closed_inputs() {
    assert!(verify_intersection_lemma(&ideal("(x^2, y^3)", 2), &ideal("(x)", 2), 1, 5).is_err());
}

#[test]
fn radical_swap_examples() {
    let rep = verify_radical_swap(&ideal("(x^2)", 2), &ideal("m^2", 2), 1, 15).unwrap();
    assert_eq!(rep.k, 2);
    assert!(rep.radical.same_ideal(&MonomialIdeal::maximal(2)));
    assert!(rep.all_hold());

    let rep = verify_radical_swap(&ideal("(x^2*y)", 2), &ideal("(x^2, x*y, y^2)", 2), 1, 15).unwrap();
    assert!(rep.all_hold());

    let rep = verify_radical_swap(&ideal("(x^2)", 2), &MonomialIdeal::maximal(2), 1, 15).unwrap();
    assert_eq!(rep.k, 1);
    assert!(rep.rows.iter().all(|r| r.f == r.g));
}

#[test]
fn rees_gap_on_squarefree() {
    let rep = rees_gap_check(&ideal("(x*y, y*z)", 3), 2, 20).unwrap();
    assert!(rep.holds());
    assert!(rees_gap_check(&ideal("(x^2)", 2), 2, 10).is_err());
}
