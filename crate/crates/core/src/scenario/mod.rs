//! Named bundles of states, observables, families, propositions and
//! queries, loaded from JSON scenario files or taken from the built-in set.

mod builtins;
mod canonical;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{CMatrix, CVector, NumericError, Subspace, Tolerance, C64};
use crate::opposition::Context;
use crate::quantum::{Member, Observable, OrthoFamily, Polarity, Proposition, QuantumError, Semantics, State};

pub use builtins::{builtin, builtin_spec, builtin_with, BUILTIN_NAMES};
pub use canonical::to_canonical_string;

/// States whose norm is below this cannot be rescaled to unit norm.
pub const MIN_STATE_NORM: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown {kind} {name:?}")]
    Unresolved { kind: &'static str, name: String },
    #[error("{what}: dimension {found}, scenario dimension is {expected}")]
    DimensionMismatch { what: String, expected: usize, found: usize },
    #[error("state {name:?} has norm {norm:e}, too small to normalize")]
    NonUnit { name: String, norm: f64 },
    #[error("{what}: {source}")]
    Invalid { what: String, source: QuantumError },
    #[error("query {index} ({op}): {message}")]
    BadQuery { index: usize, op: String, message: String },
    #[error("unknown builtin scenario {0:?}")]
    UnknownBuiltin(String),
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

/// Complex number as `[re, im]`.
pub type ComplexSpec = [f64; 2];

/// Scenario file contents before resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub states: BTreeMap<String, StateSpec>,
    #[serde(default)]
    pub observables: BTreeMap<String, Vec<Vec<ComplexSpec>>>,
    #[serde(default)]
    pub families: BTreeMap<String, FamilySpec>,
    #[serde(default)]
    pub propositions: BTreeMap<String, PropSpec>,
    #[serde(default)]
    pub queries: Vec<QuerySpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Vector(Vec<ComplexSpec>),
    Superpose { superpose: Vec<(ComplexSpec, String)> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    /// Eigenspaces of a named observable; `labels` renames members from
    /// their eigenvalue labels ("+1", "-1", "0", ...).
    Observable {
        observable: String,
        #[serde(default)]
        labels: BTreeMap<String, String>,
    },
    Members {
        members: Vec<MemberSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberSpec {
    pub label: String,
    pub span: Vec<Vec<ComplexSpec>>,
}

/// `"family.member"` or `"!family.member"`, or a compound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PropSpec {
    Literal(String),
    And { and: Vec<PropSpec> },
    Or { or: Vec<PropSpec> },
    Not { not: Box<PropSpec> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    pub op: String,
    #[serde(default)]
    pub args: Vec<String>,
}

/// A resolved query.
#[derive(Debug, Clone, PartialEq)]
pub enum Query {
    Classify { left: String, right: String },
    Square { a: String, e: String },
    Hexagon { a: String, e: String },
    Prob { state: String, family: String },
    Attribute { state: String, family: String, semantics: Semantics },
    Postulate { labels: Vec<String> },
    EquivalenceChain { labels: Vec<String> },
}

pub const QUERY_OPS: [&str; 7] =
    ["classify", "square", "hexagon", "prob", "attribute", "postulate", "equivalence_chain"];

/// A fully resolved scenario. Keeps the spec it was built from, which is
/// what [`Scenario::to_canonical_json`] writes back.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    spec: ScenarioSpec,
    states: BTreeMap<String, State>,
    observables: BTreeMap<String, Observable>,
    families: BTreeMap<String, OrthoFamily>,
    propositions: BTreeMap<String, Proposition>,
    queries: Vec<Query>,
    warnings: Vec<String>,
}

fn c64(c: &ComplexSpec) -> C64 {
    C64::new(c[0], c[1])
}

fn vector(what: &str, dim: usize, components: &[ComplexSpec]) -> Result<CVector> {
    if components.len() != dim {
        return Err(ScenarioError::DimensionMismatch {
            what: what.to_string(),
            expected: dim,
            found: components.len(),
        });
    }
    CVector::new(components.iter().map(c64).collect())
        .map_err(|e| ScenarioError::Invalid { what: what.to_string(), source: e.into() })
}

fn invalid(what: impl Into<String>) -> impl FnOnce(QuantumError) -> ScenarioError {
    let what = what.into();
    move |source| ScenarioError::Invalid { what, source }
}

fn numeric(what: impl Into<String>) -> impl FnOnce(NumericError) -> ScenarioError {
    let what = what.into();
    move |source| ScenarioError::Invalid { what, source: source.into() }
}

/// Parses and resolves a scenario file.
pub fn load_scenario(text: &str, eps: Tolerance) -> Result<Scenario> {
    let spec: ScenarioSpec = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Scenario::from_spec(spec, eps)
}

impl Scenario {
    pub fn from_spec(spec: ScenarioSpec, eps: Tolerance) -> Result<Self> {
        let dim = spec.dim;
        crate::numeric::check_dim(dim).map_err(numeric("scenario"))?;
        let mut scenario = Scenario {
            spec: spec.clone(),
            states: BTreeMap::new(),
            observables: BTreeMap::new(),
            families: BTreeMap::new(),
            propositions: BTreeMap::new(),
            queries: Vec::new(),
            warnings: Vec::new(),
        };
        scenario.resolve_states(dim, eps)?;
        for (name, rows) in &spec.observables {
            let what = format!("observable {name:?}");
            if rows.len() != dim {
                return Err(ScenarioError::DimensionMismatch { what, expected: dim, found: rows.len() });
            }
            let rows = rows
                .iter()
                .map(|r| {
                    if r.len() != dim {
                        return Err(ScenarioError::DimensionMismatch {
                            what: what.clone(),
                            expected: dim,
                            found: r.len(),
                        });
                    }
                    Ok(r.iter().map(c64).collect())
                })
                .collect::<Result<Vec<Vec<C64>>>>()?;
            let matrix = CMatrix::from_rows(rows).map_err(numeric(what.clone()))?;
            let obs = Observable::new(name.clone(), matrix, eps).map_err(invalid(what))?;
            scenario.observables.insert(name.clone(), obs);
        }
        for (name, f) in &spec.families {
            let family = scenario.resolve_family(name, f, dim, eps)?;
            scenario.families.insert(name.clone(), family);
        }
        for (name, p) in &spec.propositions {
            let prop = scenario.resolve_prop_spec(p)?;
            scenario.propositions.insert(name.clone(), prop);
        }
        for (index, q) in spec.queries.iter().enumerate() {
            let query = scenario.resolve_query(q).map_err(|message| ScenarioError::BadQuery {
                index,
                op: q.op.clone(),
                message,
            })?;
            scenario.queries.push(query);
        }
        Ok(scenario)
    }

    fn resolve_states(&mut self, dim: usize, eps: Tolerance) -> Result<()> {
        // Plain vectors first so superpositions can refer to them.
        let spec = self.spec.states.clone();
        let mut pending = Vec::new();
        for (name, s) in &spec {
            match s {
                StateSpec::Vector(components) => {
                    let v = vector(&format!("state {name:?}"), dim, components)?;
                    let state = self.unit_state(name, v, eps)?;
                    self.states.insert(name.clone(), state);
                }
                StateSpec::Superpose { superpose } => pending.push((name, superpose)),
            }
        }
        // Superpositions may refer to each other; resolve in dependency order.
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for (name, terms) in pending {
                if terms.iter().all(|(_, s)| self.states.contains_key(s)) {
                    let what = format!("state {name:?}");
                    if terms.is_empty() {
                        return Err(ScenarioError::Invalid { what, source: QuantumError::EmptySuperposition });
                    }
                    let mut sum = CVector::zeros(dim);
                    for (c, s) in terms {
                        let coeff = c64(c);
                        if !coeff.re.is_finite() || !coeff.im.is_finite() {
                            return Err(numeric(what)(NumericError::NonFinite));
                        }
                        sum.axpy(coeff, self.states[s].vector());
                    }
                    let state = self.unit_state(name, sum, eps)?;
                    self.states.insert(name.clone(), state);
                } else {
                    rest.push((name, terms));
                }
            }
            if rest.len() == before {
                let missing =
                    rest.iter().flat_map(|(_, terms)| terms.iter().map(|(_, s)| s)).find(|s| !spec.contains_key(*s));
                return Err(match missing {
                    Some(s) => ScenarioError::Unresolved { kind: "state", name: s.clone() },
                    None => ScenarioError::Unresolved { kind: "state (cyclic superposition)", name: rest[0].0.clone() },
                });
            }
            pending = rest;
        }
        Ok(())
    }

    /// Vectors within `eps` of unit norm are kept as written; others are
    /// rescaled with a warning.
    fn unit_state(&mut self, name: &str, v: CVector, eps: Tolerance) -> Result<State> {
        let norm = v.norm();
        if norm < MIN_STATE_NORM {
            return Err(ScenarioError::NonUnit { name: name.to_string(), norm });
        }
        if (norm - 1.0).abs() <= eps.eps() {
            return State::new(v, eps).map_err(invalid(format!("state {name:?}")));
        }
        self.warnings.push(format!("state {name:?} had norm {norm:.17e}; normalized"));
        State::normalize(&v, eps).map_err(invalid(format!("state {name:?}")))
    }

    fn resolve_family(&self, name: &str, f: &FamilySpec, dim: usize, eps: Tolerance) -> Result<OrthoFamily> {
        let what = format!("family {name:?}");
        if name.contains('.') || name.is_empty() {
            return Err(ScenarioError::Invalid { what, source: QuantumError::EmptyLabel });
        }
        match f {
            FamilySpec::Observable { observable, labels } => {
                let obs = self
                    .observables
                    .get(observable)
                    .ok_or_else(|| ScenarioError::Unresolved { kind: "observable", name: observable.clone() })?;
                let renames: Vec<(String, String)> = labels.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                OrthoFamily::from_observable(obs, eps)
                    .map(|fam| fam.with_label(name))
                    .and_then(|fam| fam.relabeled(&renames, eps))
                    .map_err(invalid(what))
            }
            FamilySpec::Members { members } => {
                let mut out = Vec::new();
                for m in members {
                    let mwhat = format!("{what} member {:?}", m.label);
                    let vectors = m.span.iter().map(|v| vector(&mwhat, dim, v)).collect::<Result<Vec<_>>>()?;
                    let subspace = Subspace::span(dim, &vectors, eps).map_err(numeric(mwhat))?;
                    out.push(Member { label: m.label.clone(), subspace });
                }
                OrthoFamily::new(name, dim, out, eps).map_err(invalid(what))
            }
        }
    }

    fn resolve_prop_spec(&self, p: &PropSpec) -> Result<Proposition> {
        Ok(match p {
            PropSpec::Literal(text) => self.family_literal(text)?,
            PropSpec::And { and } => {
                Proposition::and(and.iter().map(|q| self.resolve_prop_spec(q)).collect::<Result<_>>()?)
            }
            PropSpec::Or { or } => {
                Proposition::or(or.iter().map(|q| self.resolve_prop_spec(q)).collect::<Result<_>>()?)
            }
            PropSpec::Not { not } => Proposition::not(self.resolve_prop_spec(not)?),
        })
    }

    /// `"fam.member"` or `"!fam.member"`.
    fn family_literal(&self, text: &str) -> Result<Proposition> {
        let (polarity, body) = match text.strip_prefix('!') {
            Some(rest) => (Polarity::Negated, rest),
            None => (Polarity::Asserted, text),
        };
        let unresolved = || ScenarioError::Unresolved { kind: "proposition", name: text.to_string() };
        let (fam, member) = body.split_once('.').ok_or_else(unresolved)?;
        let family = self
            .families
            .get(fam)
            .ok_or_else(|| ScenarioError::Unresolved { kind: "family", name: fam.to_string() })?;
        let lit = family
            .literal(member, polarity)
            .map_err(|_| ScenarioError::Unresolved { kind: "family member", name: body.to_string() })?;
        Ok(lit.into())
    }

    fn resolve_query(&self, q: &QuerySpec) -> std::result::Result<Query, String> {
        let arity = |n: usize| {
            if q.args.len() == n {
                Ok(())
            } else {
                Err(format!("expected {n} arguments, got {}", q.args.len()))
            }
        };
        let prop = |s: &String| self.proposition(s).map(|_| s.clone()).map_err(|e| e.to_string());
        let state = |s: &String| self.state(s).map(|_| s.clone()).map_err(|e| e.to_string());
        let family = |s: &String| self.family(s).map(|_| s.clone()).map_err(|e| e.to_string());
        let labels = |min: usize| {
            if q.args.len() < min {
                return Err(format!("expected at least {min} labels, got {}", q.args.len()));
            }
            let mut seen = std::collections::BTreeSet::new();
            for a in &q.args {
                if a.is_empty() || !seen.insert(a) {
                    return Err(format!("bad or duplicate label {a:?}"));
                }
            }
            Ok(q.args.clone())
        };
        Ok(match q.op.as_str() {
            "classify" => {
                arity(2)?;
                Query::Classify { left: prop(&q.args[0])?, right: prop(&q.args[1])? }
            }
            "square" => {
                arity(2)?;
                Query::Square { a: prop(&q.args[0])?, e: prop(&q.args[1])? }
            }
            "hexagon" => {
                arity(2)?;
                Query::Hexagon { a: prop(&q.args[0])?, e: prop(&q.args[1])? }
            }
            "prob" => {
                arity(2)?;
                Query::Prob { state: state(&q.args[0])?, family: family(&q.args[1])? }
            }
            "attribute" => {
                arity(3)?;
                let semantics =
                    Semantics::parse(&q.args[2]).ok_or_else(|| format!("unknown semantics {:?}", q.args[2]))?;
                Query::Attribute { state: state(&q.args[0])?, family: family(&q.args[1])?, semantics }
            }
            "postulate" => Query::Postulate { labels: labels(1)? },
            "equivalence_chain" => Query::EquivalenceChain { labels: labels(2)? },
            other => return Err(format!("unknown op {other:?}; expected one of {}", QUERY_OPS.join(", "))),
        })
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn spec(&self) -> &ScenarioSpec {
        &self.spec
    }

    pub fn states(&self) -> &BTreeMap<String, State> {
        &self.states
    }

    pub fn observables(&self) -> &BTreeMap<String, Observable> {
        &self.observables
    }

    pub fn families(&self) -> &BTreeMap<String, OrthoFamily> {
        &self.families
    }

    pub fn propositions(&self) -> &BTreeMap<String, Proposition> {
        &self.propositions
    }

    pub fn queries(&self) -> &[Query] {
        &self.queries
    }

    /// Load-time notes, such as states that had to be renormalized.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn state(&self, name: &str) -> Result<&State> {
        self.states.get(name).ok_or_else(|| ScenarioError::Unresolved { kind: "state", name: name.to_string() })
    }

    pub fn family(&self, name: &str) -> Result<&OrthoFamily> {
        self.families.get(name).ok_or_else(|| ScenarioError::Unresolved { kind: "family", name: name.to_string() })
    }

    /// A named proposition, `"fam.member"`, or either with a leading `!`.
    pub fn proposition(&self, reference: &str) -> Result<Proposition> {
        if let Some(p) = self.propositions.get(reference) {
            return Ok(p.clone());
        }
        if let Some(rest) = reference.strip_prefix('!') {
            if let Some(p) = self.propositions.get(rest) {
                return Ok(Proposition::not(p.clone()));
            }
        }
        self.family_literal(reference).map_err(|e| match e {
            ScenarioError::Unresolved { .. } => {
                ScenarioError::Unresolved { kind: "proposition", name: reference.to_string() }
            }
            other => other,
        })
    }

    /// Opposition context holding every family of the scenario.
    pub fn context(&self) -> Context {
        Context::new(self.families.values().cloned().collect())
    }

    pub fn to_canonical_json(&self) -> String {
        to_canonical_string(&self.spec)
    }
}

#[cfg(test)]
mod tests;
