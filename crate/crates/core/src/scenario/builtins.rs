use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use super::{
    ComplexSpec, FamilySpec, MemberSpec, PropSpec, QuerySpec, Result, Scenario, ScenarioError, ScenarioSpec, StateSpec,
};
use crate::numeric::Tolerance;

pub const BUILTIN_NAMES: [&str; 5] = ["spin_half_x", "double_slit", "cat", "three_level", "skewed"];

fn re(x: f64) -> ComplexSpec {
    [x, 0.0]
}

fn real_vector(xs: &[f64]) -> Vec<ComplexSpec> {
    xs.iter().map(|x| re(*x)).collect()
}

fn basis(dim: usize, k: usize) -> Vec<ComplexSpec> {
    (0..dim).map(|i| re(if i == k { 1.0 } else { 0.0 })).collect()
}

fn superpose(terms: &[(f64, &str)]) -> StateSpec {
    StateSpec::Superpose { superpose: terms.iter().map(|(c, s)| (re(*c), s.to_string())).collect() }
}

fn map<V>(entries: Vec<(&str, V)>) -> BTreeMap<String, V> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn lit(text: &str) -> PropSpec {
    PropSpec::Literal(text.to_string())
}

fn query(op: &str, args: &[&str]) -> QuerySpec {
    QuerySpec { op: op.to_string(), args: args.iter().map(|a| a.to_string()).collect() }
}

fn rank_one_family(dim: usize, labels: &[&str]) -> FamilySpec {
    FamilySpec::Members {
        members: labels
            .iter()
            .enumerate()
            .map(|(k, l)| MemberSpec { label: l.to_string(), span: vec![basis(dim, k)] })
            .collect(),
    }
}

fn pauli_x() -> Vec<Vec<ComplexSpec>> {
    vec![real_vector(&[0.0, 1.0]), real_vector(&[1.0, 0.0])]
}

fn x_family() -> FamilySpec {
    FamilySpec::Observable {
        observable: "sigma_x".to_string(),
        labels: map(vec![("+1", "up_x".to_string()), ("-1", "down_x".to_string())]),
    }
}

fn x_propositions() -> BTreeMap<String, PropSpec> {
    map(vec![
        ("u_x", lit("x.up_x")),
        ("d_x", lit("x.down_x")),
        ("not_u_x", lit("!x.up_x")),
        ("not_d_x", lit("!x.down_x")),
    ])
}

fn spin_half_x() -> ScenarioSpec {
    ScenarioSpec {
        name: "spin_half_x".into(),
        dim: 2,
        states: map(vec![("up_z", StateSpec::Vector(basis(2, 0))), ("down_z", StateSpec::Vector(basis(2, 1)))]),
        observables: map(vec![("sigma_x", pauli_x())]),
        families: map(vec![("x", x_family())]),
        propositions: x_propositions(),
        queries: vec![
            query("classify", &["u_x", "d_x"]),
            query("classify", &["u_x", "not_u_x"]),
            query("classify", &["not_u_x", "not_d_x"]),
            query("hexagon", &["u_x", "d_x"]),
            query("prob", &["up_z", "x"]),
            query("attribute", &["up_z", "x", "minimal"]),
            query("attribute", &["up_z", "x", "paraconsistent"]),
        ],
    }
}

fn double_slit() -> ScenarioSpec {
    ScenarioSpec {
        name: "double_slit".into(),
        dim: 2,
        states: map(vec![
            ("psi_1", StateSpec::Vector(basis(2, 0))),
            ("psi_2", StateSpec::Vector(basis(2, 1))),
            ("psi", superpose(&[(FRAC_1_SQRT_2, "psi_1"), (FRAC_1_SQRT_2, "psi_2")])),
        ]),
        observables: BTreeMap::new(),
        families: map(vec![("slit", rank_one_family(2, &["s1", "s2"]))]),
        propositions: map(vec![("s1", lit("slit.s1")), ("s2", lit("slit.s2"))]),
        queries: vec![
            query("classify", &["s1", "s2"]),
            query("prob", &["psi", "slit"]),
            query("attribute", &["psi", "slit", "minimal"]),
            query("attribute", &["psi", "slit", "paraconsistent"]),
            query("postulate", &["s1", "s2"]),
        ],
    }
}

fn cat() -> ScenarioSpec {
    ScenarioSpec {
        name: "cat".into(),
        dim: 2,
        states: map(vec![
            ("c_dead", StateSpec::Vector(basis(2, 0))),
            ("c_alive", StateSpec::Vector(basis(2, 1))),
            ("phi", superpose(&[(FRAC_1_SQRT_2, "c_dead"), (FRAC_1_SQRT_2, "c_alive")])),
        ]),
        observables: BTreeMap::new(),
        families: map(vec![("cat", rank_one_family(2, &["dead", "alive"]))]),
        propositions: map(vec![("dead", lit("cat.dead")), ("alive", lit("cat.alive"))]),
        queries: vec![
            query("hexagon", &["dead", "alive"]),
            query("prob", &["phi", "cat"]),
            query("attribute", &["phi", "cat", "minimal"]),
            query("attribute", &["phi", "cat", "paraconsistent"]),
        ],
    }
}

fn three_level() -> ScenarioSpec {
    let third = 1.0 / 3f64.sqrt();
    ScenarioSpec {
        name: "three_level".into(),
        dim: 3,
        states: map(vec![
            ("a", StateSpec::Vector(basis(3, 0))),
            ("b", StateSpec::Vector(basis(3, 1))),
            ("c", StateSpec::Vector(basis(3, 2))),
            ("psi", superpose(&[(third, "a"), (third, "b"), (third, "c")])),
        ]),
        observables: BTreeMap::new(),
        families: map(vec![("level", rank_one_family(3, &["a", "b", "c"]))]),
        propositions: map(vec![("a", lit("level.a")), ("b", lit("level.b")), ("c", lit("level.c"))]),
        queries: vec![
            query("equivalence_chain", &["a", "b", "c"]),
            query("postulate", &["a", "b", "c"]),
            query("prob", &["psi", "level"]),
            query("attribute", &["psi", "level", "paraconsistent"]),
            query("square", &["a", "b"]),
        ],
    }
}

fn skewed() -> ScenarioSpec {
    let h = FRAC_1_SQRT_2;
    ScenarioSpec {
        name: "skewed".into(),
        dim: 2,
        states: map(vec![
            ("up_x", StateSpec::Vector(real_vector(&[h, h]))),
            ("down_x", StateSpec::Vector(real_vector(&[h, -h]))),
            ("psi", superpose(&[(2.0 / 7f64.sqrt(), "up_x"), ((3.0f64 / 7.0).sqrt(), "down_x")])),
        ]),
        observables: map(vec![("sigma_x", pauli_x())]),
        families: map(vec![("x", x_family())]),
        propositions: x_propositions(),
        queries: vec![
            query("prob", &["psi", "x"]),
            query("attribute", &["psi", "x", "minimal"]),
            query("attribute", &["psi", "x", "paraconsistent"]),
        ],
    }
}

pub fn builtin_spec(name: &str) -> Option<ScenarioSpec> {
    Some(match name {
        "spin_half_x" => spin_half_x(),
        "double_slit" => double_slit(),
        "cat" => cat(),
        "three_level" => three_level(),
        "skewed" => skewed(),
        _ => return None,
    })
}

/// A bundled scenario, resolved at the default tolerance.
pub fn builtin(name: &str) -> Result<Scenario> {
    builtin_with(name, Tolerance::default())
}

pub fn builtin_with(name: &str, eps: Tolerance) -> Result<Scenario> {
    let spec = builtin_spec(name).ok_or_else(|| ScenarioError::UnknownBuiltin(name.to_string()))?;
    Scenario::from_spec(spec, eps)
}
