//! Command results and their text, JSON and DOT renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::lp::{Formula3, Mode, Valuation3};
use crate::numeric::CVector;
use crate::opposition::{Classification, Direction, Polygon, Relation, Witness};
use crate::scenario::to_canonical_string;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    /// Arguments as given, without the program name.
    pub command: Vec<String>,
    pub eps: f64,
    pub seed: u64,
    pub trials: usize,
    /// Reading of `->` used by LP results.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implication: Option<String>,
    pub results: Vec<ResultItem>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessOut {
    pub pattern: Vec<bool>,
    pub state: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeOut {
    pub left: String,
    pub right: String,
    pub relation: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositionOut {
    pub corner: String,
    pub proposition: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightOut {
    pub member: String,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultItem {
    Classification {
        left: String,
        right: String,
        relation: String,
        witnesses: Vec<WitnessOut>,
    },
    WitnessCheck {
        left: String,
        right: String,
        state: Vec<[f64; 2]>,
        pattern: Vec<bool>,
    },
    Polygon {
        shape: String,
        positions: Vec<PositionOut>,
        edges: Vec<EdgeOut>,
        deviations: Vec<EdgeOut>,
    },
    Probabilities {
        state: String,
        family: String,
        weights: Vec<WeightOut>,
        total: f64,
    },
    Attribution {
        state: String,
        family: String,
        semantics: String,
        members: Vec<String>,
    },
    Lp {
        mode: String,
        constraints: Vec<String>,
        satisfiable: bool,
        model: Option<BTreeMap<String, String>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        conclusion: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        consequence: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        countermodel: Option<BTreeMap<String, String>>,
    },
    ScenarioList {
        names: Vec<String>,
    },
    Scenario {
        spec: serde_json::Value,
    },
}

pub fn state_out(v: &CVector) -> Vec<[f64; 2]> {
    v.components().iter().map(|c| [c.re, c.im]).collect()
}

pub fn witness_out(w: &Witness) -> WitnessOut {
    WitnessOut { pattern: w.pattern.clone(), state: state_out(w.state.vector()) }
}

pub fn classification_item(left: &str, right: &str, c: &Classification) -> ResultItem {
    ResultItem::Classification {
        left: left.to_string(),
        right: right.to_string(),
        relation: c.relation.to_string(),
        witnesses: c.witnesses.iter().map(witness_out).collect(),
    }
}

pub fn polygon_item(shape: &str, polygon: &Polygon) -> ResultItem {
    let edge = |left: String, right: String, relation: Relation, expected: Relation| EdgeOut {
        left,
        right,
        relation: relation.to_string(),
        expected: expected.to_string(),
    };
    ResultItem::Polygon {
        shape: shape.to_string(),
        positions: polygon
            .positions
            .iter()
            .map(|(c, p)| PositionOut { corner: c.to_string(), proposition: p.to_string() })
            .collect(),
        edges: polygon
            .edges
            .iter()
            .map(|e| {
                let expected = crate::opposition::standard_relation(e.left, e.right);
                edge(e.left.to_string(), e.right.to_string(), e.classification.relation, expected)
            })
            .collect(),
        deviations: polygon
            .deviations
            .iter()
            .map(|d| edge(d.left.to_string(), d.right.to_string(), d.actual, d.expected))
            .collect(),
    }
}

fn valuation_out(v: &Valuation3) -> BTreeMap<String, String> {
    v.iter().map(|(k, t)| (k.clone(), t.to_string())).collect()
}

pub fn lp_item(
    mode: Mode,
    constraints: &[Formula3],
    model: Option<&Valuation3>,
    conclusion: Option<(&Formula3, Option<&Valuation3>)>,
) -> ResultItem {
    ResultItem::Lp {
        mode: mode.to_string(),
        constraints: constraints.iter().map(|f| f.to_string()).collect(),
        satisfiable: model.is_some(),
        model: model.map(valuation_out),
        conclusion: conclusion.map(|(f, _)| f.to_string()),
        consequence: conclusion.map(|(_, cm)| cm.is_none()),
        countermodel: conclusion.and_then(|(_, cm)| cm.map(valuation_out)),
    }
}

fn fmt_state(state: &[[f64; 2]]) -> String {
    let parts: Vec<String> = state.iter().map(|[re, im]| format!("[{re}, {im}]")).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_pattern(pattern: &[bool]) -> String {
    let parts: Vec<&str> = pattern.iter().map(|b| if *b { "T" } else { "F" }).collect();
    parts.join("")
}

fn fmt_valuation(v: &BTreeMap<String, String>) -> String {
    let parts: Vec<String> = v.iter().map(|(k, t)| format!("{k}={t}")).collect();
    if parts.is_empty() {
        "(empty valuation)".to_string()
    } else {
        parts.join(" ")
    }
}

fn render_item(out: &mut String, item: &ResultItem) {
    match item {
        ResultItem::Classification { left, right, relation, witnesses } => {
            let _ = writeln!(out, "{left}  vs  {right}: {relation}");
            for w in witnesses {
                let _ = writeln!(out, "  witness {}: {}", fmt_pattern(&w.pattern), fmt_state(&w.state));
            }
        }
        ResultItem::WitnessCheck { left, right, state, pattern } => {
            let _ = writeln!(out, "state {}", fmt_state(state));
            let _ = writeln!(out, "  {left}: {}", pattern[0]);
            let _ = writeln!(out, "  {right}: {}", pattern[1]);
            let _ = writeln!(out, "  pattern {}", fmt_pattern(pattern));
        }
        ResultItem::Polygon { shape, positions, edges, deviations } => {
            let _ = writeln!(out, "{shape}");
            for p in positions {
                let _ = writeln!(out, "  {}: {}", p.corner, p.proposition);
            }
            for e in edges {
                let _ = writeln!(out, "  {}-{}: {}", e.left, e.right, e.relation);
            }
            if deviations.is_empty() {
                let _ = writeln!(out, "deviations: none");
            } else {
                let _ = writeln!(out, "deviations:");
                for d in deviations {
                    let _ = writeln!(out, "  {}-{}: {} (expected {})", d.left, d.right, d.relation, d.expected);
                }
            }
        }
        ResultItem::Probabilities { state, family, weights, total } => {
            let _ = writeln!(out, "born probabilities of {state} over {family}");
            for w in weights {
                let _ = writeln!(out, "  {}: {}", w.member, w.probability);
            }
            let _ = writeln!(out, "  total: {total}");
        }
        ResultItem::Attribution { state, family, semantics, members } => {
            let _ = writeln!(out, "{semantics} attribution of {state} over {family}: {{{}}}", members.join(", "));
        }
        ResultItem::Lp { mode, constraints, satisfiable, model, conclusion, consequence, countermodel } => {
            let _ = writeln!(out, "[{mode}] constraints:");
            for c in constraints {
                let _ = writeln!(out, "  {c}");
            }
            match model {
                Some(m) => {
                    let _ = writeln!(out, "SAT: {}", fmt_valuation(m));
                }
                None => {
                    let _ = writeln!(out, "UNSAT");
                }
            }
            debug_assert_eq!(*satisfiable, model.is_some());
            if let (Some(c), Some(holds)) = (conclusion, consequence) {
                let _ = writeln!(out, "consequence {c}: {holds}");
                if let Some(cm) = countermodel {
                    let _ = writeln!(out, "  countermodel: {}", fmt_valuation(cm));
                }
            }
        }
        ResultItem::ScenarioList { names } => {
            for n in names {
                let _ = writeln!(out, "{n}");
            }
        }
        ResultItem::Scenario { spec } => {
            out.push_str(&to_canonical_string(spec));
        }
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# {} (eps {:e}, seed {}, trials {})",
            self.command.join(" "),
            self.eps,
            self.seed,
            self.trials
        );
        if let Some(imp) = &self.implication {
            let _ = writeln!(out, "# implication: {imp}");
        }
        for item in &self.results {
            render_item(&mut out, item);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        to_canonical_string(self)
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of a square or hexagon: one node per corner, one edge
/// per pair of corners. Subalternations point from the entailing corner.
pub fn polygon_dot(shape: &str, polygon: &Polygon) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {shape} {{");
    let _ = writeln!(out, "  node [shape=box];");
    for (corner, p) in &polygon.positions {
        let _ = writeln!(out, "  {corner} [label={}];", dot_quote(&format!("{corner}: {p}")));
    }
    for e in &polygon.edges {
        let relation = e.classification.relation;
        let label = relation.name().to_lowercase();
        let (from, to) = match relation {
            Relation::Subaltern(Direction::RightToLeft) => (e.right, e.left),
            _ => (e.left, e.right),
        };
        let attrs = match relation {
            Relation::Contradictory => "style=dashed".to_string(),
            Relation::Contrary => "style=solid".to_string(),
            Relation::Subcontrary => "style=dotted".to_string(),
            Relation::Subaltern(_) => "dir=forward, arrowhead=normal".to_string(),
            Relation::Equivalent => "style=bold".to_string(),
            Relation::Independent => "style=solid, color=gray".to_string(),
            Relation::Undecided => "style=solid, color=red".to_string(),
        };
        let _ = writeln!(out, "  {from} -- {to} [{attrs}, label={}];", dot_quote(&label));
    }
    out.push_str("}\n");
    out
}
