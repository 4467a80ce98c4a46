use proptest::prelude::*;

use super::TruthValue3::{B, F, T};
use super::*;

fn a(name: &str) -> Formula3 {
    Formula3::atom(name).unwrap()
}

fn val(pairs: &[(&str, TruthValue3)]) -> Valuation3 {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn p(text: &str) -> Formula3 {
    parse_formula(text).unwrap()
}

#[test]
fn negation_fixes_b() {
    assert_eq!(T.not(), F);
    assert_eq!(F.not(), T);
    assert_eq!(B.not(), B);
    assert!(T.designated() && B.designated() && !F.designated());
}

#[test]
fn and_or_tables() {
    // Written out by hand rather than derived from the ordering.
    let and = [[F, F, F], [F, B, B], [F, B, T]];
    let or = [[F, B, T], [B, B, T], [T, T, T]];
    for (i, x) in TruthValue3::ALL.iter().enumerate() {
        for (j, y) in TruthValue3::ALL.iter().enumerate() {
            let v = val(&[("x", *x), ("y", *y)]);
            assert_eq!(eval3(&Formula3::and(a("x"), a("y")), &v).unwrap(), and[i][j]);
            assert_eq!(eval3(&Formula3::or(a("x"), a("y")), &v).unwrap(), or[i][j]);
            assert_eq!(and[i][j], (*x).min(*y));
            assert_eq!(or[i][j], (*x).max(*y));
        }
    }
}

#[test]
fn eval_examples() {
    let k_and_not_k = Formula3::and(a("k"), Formula3::not(a("k")));
    assert_eq!(eval3(&k_and_not_k, &val(&[("k", B)])).unwrap(), B);
    assert_eq!(eval3(&k_and_not_k, &val(&[("k", T)])).unwrap(), F);
    let f = Formula3::iff(a("a"), Formula3::not(a("b")));
    assert_eq!(eval3(&f, &val(&[("a", T), ("b", F)])).unwrap(), T);
    assert_eq!(eval3(&f, &val(&[("a", T)])), Err(LpError::MissingAtom("b".into())));
}

#[test]
fn derived_connectives() {
    for x in TruthValue3::ALL {
        for y in TruthValue3::ALL {
            let v = val(&[("x", x), ("y", y)]);
            let imp = eval3(&Formula3::imp(a("x"), a("y")), &v).unwrap();
            assert_eq!(imp, eval3(&p("!x | y"), &v).unwrap());
            let iff = eval3(&Formula3::iff(a("x"), a("y")), &v).unwrap();
            assert_eq!(iff, eval3(&p("(!x | y) & (!y | x)"), &v).unwrap());
        }
    }
    // B <-> B is B, so p <-> !p is designated at B.
    assert_eq!(eval3(&p("q <-> !q"), &val(&[("q", B)])).unwrap(), B);
}

#[test]
fn empty_atom_rejected() {
    assert_eq!(Formula3::atom(""), Err(LpError::EmptyAtomName));
}

#[test]
fn postulate_shapes() {
    let two = postulate_of_contradiction(&["s1", "s2"]).unwrap();
    assert_eq!(two, vec![a("K_s1"), Formula3::not(a("K_s1")), a("K_s2"), Formula3::not(a("K_s2"))]);
    assert_eq!(postulate_of_contradiction(&["s1"]).unwrap().len(), 2);
    assert_eq!(postulate_of_contradiction(&["s1", "s2", "s3"]).unwrap().len(), 6);
    assert_eq!(postulate_of_contradiction(&[]), Err(LpError::EmptyLabels));
    assert_eq!(postulate_of_contradiction(&["s", "s"]), Err(LpError::DuplicateLabel("s".into())));
}

#[test]
fn postulate_classical_unsat_lp_all_b() {
    let set = postulate_of_contradiction(&["s1", "s2"]).unwrap();
    assert_eq!(satisfiable(&set, Mode::Classical).unwrap(), None);
    let first = satisfiable(&set, Mode::Lp).unwrap().unwrap();
    assert_eq!(first, val(&[("K_s1", B), ("K_s2", B)]));
    assert_eq!(models(&set, Mode::Lp).unwrap(), vec![first]);
}

#[test]
fn postulate_readings_differ_only_by_the_exclusion() {
    let plain = postulate_of_contradiction(&["s1", "s2"]).unwrap();
    let exclusive = postulate_exclusive(&["s1", "s2"]).unwrap();
    assert_eq!(&exclusive[..plain.len()], &plain[..]);
    assert_eq!(exclusive[plain.len()..], [p("!K_s1 <-> K_s2")]);
    // With both atoms forced to B the extra equivalence is B as well.
    assert_eq!(models(&exclusive, Mode::Lp).unwrap(), models(&plain, Mode::Lp).unwrap());
    assert_eq!(satisfiable(&exclusive, Mode::Classical).unwrap(), None);
}

#[test]
fn chain_shapes() {
    let three = equivalence_chain(&["a", "b", "c"]).unwrap();
    assert_eq!(three, vec![p("p_a <-> !p_b"), p("p_a <-> !p_c"), p("p_b <-> !p_c")]);
    assert_eq!(equivalence_chain(&["a", "b"]).unwrap(), vec![p("p_a <-> !p_b")]);
    assert_eq!(equivalence_chain(&["a", "b", "c", "d"]).unwrap().len(), 6);
    assert_eq!(equivalence_chain(&["a"]), Err(LpError::TooFewLabels(1)));
}

#[test]
fn chain_matches_written_premises() {
    // The three premises as usually written: p_c <-> !p_a appears with the
    // sides swapped relative to the generated p_a <-> !p_c.
    let written = [p("p_a <-> !p_b"), p("p_c <-> !p_a"), p("p_c <-> !p_b")];
    let generated = equivalence_chain(&["a", "b", "c"]).unwrap();
    for mode in [Mode::Classical, Mode::Lp] {
        assert_eq!(models(&written, mode).unwrap(), models(&generated, mode).unwrap());
        for (w, g) in written.iter().zip(&generated) {
            assert!(consequence(std::slice::from_ref(w), g, mode).unwrap());
            assert!(consequence(std::slice::from_ref(g), w, mode).unwrap());
        }
    }
}

#[test]
fn chain_verdicts() {
    let premises = equivalence_chain(&["a", "b", "c"]).unwrap();
    let goal = p("p_a <-> !p_a");
    assert_eq!(satisfiable(&premises, Mode::Classical).unwrap(), None);
    assert!(consequence(&premises, &goal, Mode::Classical).unwrap());
    let all_b = val(&[("p_a", B), ("p_b", B), ("p_c", B)]);
    assert!(models(&premises, Mode::Lp).unwrap().contains(&all_b));
    assert_eq!(eval3(&goal, &all_b).unwrap(), B);
    // Every LP model of the chain puts B somewhere, and p_a <-> !p_a is
    // designated exactly when p_a = B.
    let lp = models(&premises, Mode::Lp).unwrap();
    let verdict = consequence(&premises, &goal, Mode::Lp).unwrap();
    assert_eq!(verdict, lp.iter().all(|m| m["p_a"] == B));
}

#[test]
fn chain_satisfiability_by_length() {
    let labels = ["a", "b", "c", "d", "e"];
    assert!(satisfiable(&equivalence_chain(&labels[..2]).unwrap(), Mode::Classical).unwrap().is_some());
    for n in 3..=5 {
        let set = equivalence_chain(&labels[..n]).unwrap();
        assert_eq!(satisfiable(&set, Mode::Classical).unwrap(), None, "n = {n}");
        assert!(satisfiable(&set, Mode::Lp).unwrap().is_some());
    }
}

#[test]
fn explosion() {
    let premises = [a("p"), Formula3::not(a("p"))];
    assert!(!consequence(&premises, &a("q"), Mode::Lp).unwrap());
    assert!(consequence(&premises, &a("q"), Mode::Classical).unwrap());
    assert_eq!(countermodel(&premises, &a("q"), Mode::Lp).unwrap(), Some(val(&[("p", B), ("q", F)])));
}

#[test]
fn small_examples() {
    assert_eq!(satisfiable(&[], Mode::Lp).unwrap(), Some(Valuation3::new()));
    assert!(consequence(&[], &p("p | !p"), Mode::Classical).unwrap());
    assert!(consequence(&[], &p("p | !p"), Mode::Lp).unwrap());
    assert_eq!(models(&[a("k"), Formula3::not(a("k"))], Mode::Lp).unwrap(), vec![val(&[("k", B)])]);
    assert_eq!(models(&[a("p")], Mode::Classical).unwrap(), vec![val(&[("p", T)])]);
    assert_eq!(models(&[p("p & !p")], Mode::Classical).unwrap(), vec![]);
    // All-F comes first for an unconstrained atom.
    assert_eq!(satisfiable(&[p("x | !x")], Mode::Lp).unwrap(), Some(val(&[("x", F)])));
}

#[test]
fn enumeration_order() {
    let all = models(&[p("x | !x | y")], Mode::Lp).unwrap();
    assert_eq!(all.len(), 9);
    assert_eq!(all[0], val(&[("x", F), ("y", F)]));
    assert_eq!(all[1], val(&[("x", F), ("y", B)]));
    assert_eq!(all[3], val(&[("x", B), ("y", F)]));
    assert_eq!(all[8], val(&[("x", T), ("y", T)]));
}

#[test]
fn atom_budget() {
    let big: Vec<Formula3> = (0..21).map(|i| a(&format!("x{i}"))).collect();
    assert_eq!(satisfiable(&big, Mode::Classical), Err(LpError::AtomBudget { atoms: 21, max: 20 }));
    assert_eq!(models(&big, Mode::Lp), Err(LpError::AtomBudget { atoms: 21, max: 20 }));
    assert!(matches!(consequence(&big[..20], &a("y"), Mode::Classical), Err(LpError::AtomBudget { .. })));
    assert!(satisfiable(&big[..20], Mode::Classical).unwrap().is_some());
}

#[test]
fn parser_precedence() {
    assert_eq!(p("!a & b"), Formula3::and(Formula3::not(a("a")), a("b")));
    assert_eq!(p("a | b & c"), Formula3::or(a("a"), Formula3::and(a("b"), a("c"))));
    assert_eq!(p("a -> b -> c"), Formula3::imp(a("a"), Formula3::imp(a("b"), a("c"))));
    assert_eq!(p("a -> b <-> c | d"), Formula3::iff(Formula3::imp(a("a"), a("b")), Formula3::or(a("c"), a("d"))));
    assert_eq!(p("a & b & c"), Formula3::and(Formula3::and(a("a"), a("b")), a("c")));
    assert_eq!(p("  ( a<->b ) "), Formula3::iff(a("a"), a("b")));
    assert_eq!(p("!!p_1"), Formula3::not(Formula3::not(a("p_1"))));
}

#[test]
fn parser_errors_carry_column() {
    let col = |text: &str| match parse_formula(text) {
        Err(LpError::Parse { column, .. }) => column,
        other => panic!("{text:?}: {other:?}"),
    };
    assert_eq!(col(""), 1);
    assert_eq!(col("a &"), 4);
    assert_eq!(col("a $ b"), 3);
    assert_eq!(col("(a | b"), 7);
    assert_eq!(col("a b"), 3);
    assert_eq!(col("a <- b"), 3);
    assert_eq!(col(")"), 1);
}

#[test]
fn display_is_minimal() {
    assert_eq!(p("p_a <-> !p_b").to_string(), "p_a <-> !p_b");
    assert_eq!(p("(a | b) & c").to_string(), "(a | b) & c");
    assert_eq!(p("(a -> b) -> c").to_string(), "(a -> b) -> c");
    assert_eq!(p("a -> (b -> c)").to_string(), "a -> b -> c");
    assert_eq!(p("!(a & b)").to_string(), "!(a & b)");
    assert_eq!(p("a & (b & c)").to_string(), "a & (b & c)");
}

fn formula(atoms: usize) -> impl Strategy<Value = Formula3> {
    let leaf = (0..atoms).prop_map(|i| Formula3::Atom(format!("x{i}")));
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula3::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula3::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula3::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula3::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula3::iff(a, b)),
        ]
    })
}

proptest! {
    #[test]
    fn display_round_trips(f in formula(5)) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn classical_is_lp_restricted(fs in prop::collection::vec(formula(4), 1..4)) {
        let lp_two_valued: Vec<Valuation3> = models(&fs, Mode::Lp)
            .unwrap()
            .into_iter()
            .filter(|m| m.values().all(|v| *v != B))
            .collect();
        prop_assert_eq!(models(&fs, Mode::Classical).unwrap(), lp_two_valued);
        for m in models(&fs, Mode::Classical).unwrap() {
            for f in &fs {
                prop_assert_ne!(eval3(f, &m).unwrap(), B);
            }
        }
    }

    #[test]
    fn lp_extends_classical_consequence_failures(fs in prop::collection::vec(formula(3), 0..3), c in formula(3)) {
        // Every classical countermodel is an LP countermodel.
        if !consequence(&fs, &c, Mode::Classical).unwrap() {
            prop_assert!(!consequence(&fs, &c, Mode::Lp).unwrap());
        }
    }
}
