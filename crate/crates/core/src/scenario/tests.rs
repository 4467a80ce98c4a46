use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::quantum::{born_weights, minimal_attribution, paraconsistent_attribution};
use crate::sampling::{random_hermitian, random_unit_vector, random_unitary};

fn eps() -> Tolerance {
    Tolerance::default()
}

fn pairs(v: &CVector) -> Vec<ComplexSpec> {
    v.components().iter().map(|c| [c.re, c.im]).collect()
}

#[test]
fn every_builtin_resolves_and_round_trips() {
    for name in BUILTIN_NAMES {
        let s = builtin(name).unwrap();
        assert_eq!(s.name(), name);
        assert!(s.warnings().is_empty(), "{name}: {:?}", s.warnings());
        assert!(!s.queries().is_empty());
        let text = s.to_canonical_json();
        let back = load_scenario(&text, eps()).unwrap();
        assert_eq!(back, s, "{name}");
        assert_eq!(back.to_canonical_json(), text);
        for f in s.families().values() {
            assert_eq!(f.ambient_dim(), s.dim());
        }
    }
    assert_eq!(builtin("nope"), Err(ScenarioError::UnknownBuiltin("nope".into())));
}

#[test]
fn spin_half_x_contents() {
    let s = builtin("spin_half_x").unwrap();
    assert_eq!(s.state("up_z").unwrap().vector(), &CVector::from_real(&[1.0, 0.0]).unwrap());
    let x = s.family("x").unwrap();
    let labels: Vec<&str> = x.members().iter().map(|m| m.label.as_str()).collect();
    assert_eq!(labels, ["down_x", "up_x"]);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!(x.member("up_x").unwrap().subspace.contains(&CVector::from_real(&[h, h]).unwrap(), eps()).unwrap());
    assert!(s.queries().contains(&Query::Hexagon { a: "u_x".into(), e: "d_x".into() }));
    let up = s.state("up_z").unwrap();
    assert!(minimal_attribution(up, x, eps()).unwrap().is_empty());
    assert_eq!(paraconsistent_attribution(up, x, eps()).unwrap(), ["down_x", "up_x"]);
}

#[test]
fn superposed_builtins_are_balanced() {
    for (name, state, family) in [("double_slit", "psi", "slit"), ("cat", "phi", "cat")] {
        let s = builtin(name).unwrap();
        for (_, w) in born_weights(s.state(state).unwrap(), s.family(family).unwrap()).unwrap() {
            assert!((w - 0.5).abs() < 1e-12);
        }
    }
    let s = builtin("three_level").unwrap();
    for (_, w) in born_weights(s.state("psi").unwrap(), s.family("level").unwrap()).unwrap() {
        assert!((w - 1.0 / 3.0).abs() < 1e-12);
    }
    assert!(s.queries().contains(&Query::EquivalenceChain { labels: vec!["a".into(), "b".into(), "c".into()] }));
}

#[test]
fn skewed_weights() {
    let s = builtin("skewed").unwrap();
    let w = born_weights(s.state("psi").unwrap(), s.family("x").unwrap()).unwrap();
    let get = |l: &str| w.iter().find(|(m, _)| m == l).unwrap().1;
    assert!((get("up_x") - 4.0 / 7.0).abs() < 1e-9);
    assert!((get("down_x") - 3.0 / 7.0).abs() < 1e-9);
}

#[test]
fn proposition_references() {
    let s = builtin("spin_half_x").unwrap();
    let u = s.proposition("u_x").unwrap();
    assert_eq!(s.proposition("x.up_x").unwrap(), u);
    assert_eq!(s.proposition("!u_x").unwrap().normalized(), s.proposition("not_u_x").unwrap());
    assert_eq!(s.proposition("!x.up_x").unwrap(), s.proposition("not_u_x").unwrap());
    assert_eq!(s.proposition("zz"), Err(ScenarioError::Unresolved { kind: "proposition", name: "zz".into() }));
    assert!(s.proposition("x.sideways").is_err());
}

const SMALL: &str = r#"{
  "name": "small",
  "dim": 2,
  "states": {"v": [[1, 0], [1, 0]]},
  "families": {"z": {"members": [{"label": "up", "span": [[[1, 0], [0, 0]]]}, {"label": "down", "span": [[[0, 0], [1, 0]]]}]}},
  "propositions": {"u": "z.up", "both": {"and": ["z.up", {"not": "z.down"}]}, "either": {"or": ["z.up", "!z.down"]}},
  "queries": [{"op": "classify", "args": ["u", "both"]}]
}"#;

#[test]
fn loads_and_normalizes_with_warning() {
    let s = load_scenario(SMALL, eps()).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!(s.state("v").unwrap().vector().max_abs_diff(&CVector::from_real(&[h, h]).unwrap()) < 1e-15);
    assert_eq!(s.warnings().len(), 1);
    assert!(s.warnings()[0].contains("\"v\""));
    assert_eq!(s.propositions().len(), 3);
    // The canonical form keeps the vector as written.
    let text = s.to_canonical_json();
    assert!(text.contains("1.0000000000000000e0"));
    assert_eq!(load_scenario(&text, eps()).unwrap(), s);
}

#[test]
fn unit_vectors_kept_exactly() {
    let text = SMALL.replace("[[1, 0], [1, 0]]", "[[0.6, 0], [0, 0.8]]");
    let s = load_scenario(&text, eps()).unwrap();
    assert!(s.warnings().is_empty());
    let c = s.state("v").unwrap().vector().components();
    assert_eq!((c[0].re, c[1].im), (0.6, 0.8));
}

#[test]
fn load_errors() {
    let e = load_scenario(&SMALL.replace("\"z.up\", {", "\"w.up\", {"), eps()).unwrap_err();
    assert_eq!(e, ScenarioError::Unresolved { kind: "family", name: "w".into() });

    let e = load_scenario(&SMALL.replace("[[1, 0], [1, 0]]", "[[1, 0], [1, 0], [0, 0]]"), eps()).unwrap_err();
    assert!(matches!(e, ScenarioError::DimensionMismatch { expected: 2, found: 3, .. }), "{e:?}");

    let e = load_scenario(&SMALL.replace("[[1, 0], [1, 0]]", "[[0, 0], [1e-9, 0]]"), eps()).unwrap_err();
    assert!(matches!(e, ScenarioError::NonUnit { .. }), "{e:?}");

    let e = load_scenario("{\n  \"name\": \"x\",\n  \"dim\": 2,,\n}", eps()).unwrap_err();
    assert!(matches!(e, ScenarioError::Parse { line: 3, .. }), "{e:?}");

    let e = load_scenario(&SMALL.replace("\"args\": [\"u\", \"both\"]", "\"args\": [\"u\"]"), eps()).unwrap_err();
    assert!(matches!(e, ScenarioError::BadQuery { index: 0, .. }), "{e:?}");

    let e = load_scenario(&SMALL.replace("\"op\": \"classify\"", "\"op\": \"fly\""), eps()).unwrap_err();
    assert!(matches!(e, ScenarioError::BadQuery { .. }), "{e:?}");

    let bad_family = SMALL.replace("[[[0, 0], [1, 0]]]", "[[[1, 0], [1, 0]]]");
    let e = load_scenario(&bad_family, eps()).unwrap_err();
    assert!(matches!(e, ScenarioError::Invalid { source: QuantumError::NotOrthogonal { .. }, .. }), "{e:?}");

    let e = load_scenario(&SMALL.replace("\"name\"", "\"nme\""), eps()).unwrap_err();
    assert!(matches!(e, ScenarioError::Parse { .. }), "{e:?}");
}

#[test]
fn superpositions_resolve_in_dependency_order() {
    let text = r#"{"name": "s", "dim": 2,
      "states": {"a": {"superpose": [[[1, 0], "b"], [[1, 0], "c"]]}, "b": {"superpose": [[[1, 0], "c"]]}, "c": [[0, 0], [1, 0]]}}"#;
    let s = load_scenario(text, eps()).unwrap();
    assert_eq!(s.state("a").unwrap().vector(), &CVector::from_real(&[0.0, 1.0]).unwrap());
    assert_eq!(s.warnings().len(), 1);

    let missing = text.replace("\"c\"]]}, \"c\"", "\"d\"]]}, \"c\"");
    assert_eq!(
        load_scenario(&missing, eps()).unwrap_err(),
        ScenarioError::Unresolved { kind: "state", name: "d".into() }
    );
}

fn random_prop(rng: &mut ChaCha8Rng, members: &[String], depth: usize) -> PropSpec {
    if depth == 0 || rng.random_bool(0.5) {
        let m = &members[rng.random_range(0..members.len())];
        return PropSpec::Literal(if rng.random_bool(0.5) { format!("!{m}") } else { m.clone() });
    }
    let parts = (0..rng.random_range(1..=3)).map(|_| random_prop(rng, members, depth - 1)).collect();
    match rng.random_range(0..3) {
        0 => PropSpec::And { and: parts },
        1 => PropSpec::Or { or: parts },
        _ => PropSpec::Not { not: Box::new(random_prop(rng, members, depth - 1)) },
    }
}

fn random_spec(seed: u64) -> ScenarioSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.random_range(2..=4);
    let mut states = BTreeMap::new();
    for i in 0..rng.random_range(1..=3) {
        let scale = if rng.random_bool(0.3) { rng.random_range(0.5..2.0) } else { 1.0 };
        let v = random_unit_vector(&mut rng, dim).scale(C64::new(scale, 0.0));
        states.insert(format!("s{i}"), StateSpec::Vector(pairs(&v)));
    }
    let terms =
        states.keys().map(|k| ([rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)], k.clone())).collect();
    states.insert("mix".into(), StateSpec::Superpose { superpose: terms });

    let u = random_unitary(&mut rng, dim);
    let split = rng.random_range(1..dim);
    let members = vec![
        MemberSpec { label: "lo".into(), span: (0..split).map(|j| pairs(&u.column(j))).collect() },
        MemberSpec { label: "hi".into(), span: (split..dim).map(|j| pairs(&u.column(j))).collect() },
    ];
    let h = random_hermitian(&mut rng, dim);
    let rows = h.rows().iter().map(|r| r.iter().map(|c| [c.re, c.im]).collect()).collect();
    let mut families = BTreeMap::new();
    families.insert("f".to_string(), FamilySpec::Members { members });
    families.insert("g".to_string(), FamilySpec::Observable { observable: "h".into(), labels: BTreeMap::new() });
    let mut observables = BTreeMap::new();
    observables.insert("h".to_string(), rows);

    let refs = vec!["f.lo".to_string(), "f.hi".to_string()];
    let mut propositions = BTreeMap::new();
    for i in 0..rng.random_range(1..=4) {
        propositions.insert(format!("p{i}"), random_prop(&mut rng, &refs, 2));
    }
    let names: Vec<String> = propositions.keys().cloned().collect();
    let queries = vec![
        QuerySpec { op: "classify".into(), args: vec![names[0].clone(), names[names.len() - 1].clone()] },
        QuerySpec { op: "prob".into(), args: vec!["mix".into(), "g".into()] },
    ];
    ScenarioSpec { name: format!("random_{seed}"), dim, states, observables, families, propositions, queries }
}

#[test]
fn randomized_round_trips() {
    let mut loaded = 0;
    for seed in 0..50 {
        let spec = random_spec(seed);
        let text = to_canonical_string(&spec);
        let s = match load_scenario(&text, eps()) {
            Ok(s) => s,
            // A random superposition can cancel below the minimum norm;
            // that is the only tolerated failure.
            Err(ScenarioError::NonUnit { .. }) => continue,
            Err(e) => panic!("seed {seed}: {e}"),
        };
        loaded += 1;
        assert_eq!(s.spec(), &spec);
        assert_eq!(s.to_canonical_json(), text, "seed {seed}");
        assert_eq!(load_scenario(&s.to_canonical_json(), eps()).unwrap(), s);
        assert_eq!(Scenario::from_spec(spec, eps()).unwrap(), s);
    }
    assert_eq!(loaded, 50);
}
