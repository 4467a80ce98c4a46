//! Opposition relations between quantum propositions.
//!
//! Every relation is reduced to questions of the form "is there a unit
//! state giving these propositions these truth values?". Those questions
//! are answered exactly where possible:
//!
//! * two literals: rank checks on the subspaces (intersection, containment,
//!   fullness);
//! * compounds whose atoms all come from one orthogonal family: the cell
//!   calculus (a state lies in exactly one nonzero member, or in none when at
//!   least two members are nonzero);
//! * anything else: a seeded witness search, reporting `Undecided` when it
//!   comes back empty.

mod polygon;
mod search;

use std::fmt;

use thiserror::Error;

use crate::numeric::{CVector, NumericError, Tolerance, C64};
use crate::quantum::{Atom, Literal, OrthoFamily, Polarity, Proposition, QuantumError, State};

pub use polygon::{build_hexagon, build_square, standard_relation, Corner, Deviation, Edge, Hexagon, Polygon, Square};
pub use search::random_witness_search;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OppositionError {
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error("propositions live in different ambient dimensions ({expected} vs {found})")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("pattern has {pattern} entries for {props} propositions")]
    PatternLength { pattern: usize, props: usize },
    #[error("base pair is {actual}, not Contrary{}", degenerate_note(.degenerate))]
    NotContrary { actual: Relation, degenerate: Vec<String> },
    #[error("could not decide: no exact rule applies and the witness search found nothing")]
    Undecided,
}

fn degenerate_note(notes: &[String]) -> String {
    if notes.is_empty() {
        String::new()
    } else {
        format!(" ({})", notes.join("; "))
    }
}

impl From<NumericError> for OppositionError {
    fn from(e: NumericError) -> Self {
        OppositionError::Quantum(e.into())
    }
}

pub type Result<T> = std::result::Result<T, OppositionError>;

/// Which side of a subalternation entails the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// The first proposition entails the second.
    LeftToRight,
    /// The second proposition entails the first.
    RightToLeft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Contradictory,
    Contrary,
    Subcontrary,
    Subaltern(Direction),
    Equivalent,
    Independent,
    Undecided,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Contradictory => "Contradictory",
            Relation::Contrary => "Contrary",
            Relation::Subcontrary => "Subcontrary",
            Relation::Subaltern(_) => "Subaltern",
            Relation::Equivalent => "Equivalent",
            Relation::Independent => "Independent",
            Relation::Undecided => "Undecided",
        }
    }

    /// The relation with the arguments swapped.
    pub fn swapped(self) -> Relation {
        match self {
            Relation::Subaltern(Direction::LeftToRight) => Relation::Subaltern(Direction::RightToLeft),
            Relation::Subaltern(Direction::RightToLeft) => Relation::Subaltern(Direction::LeftToRight),
            other => other,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Subaltern(Direction::LeftToRight) => f.write_str("Subaltern(left->right)"),
            Relation::Subaltern(Direction::RightToLeft) => f.write_str("Subaltern(right->left)"),
            other => f.write_str(other.name()),
        }
    }
}

/// A state realizing a truth-value pattern over a list of propositions.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub state: State,
    pub pattern: Vec<bool>,
}

impl Witness {
    /// Re-evaluates the propositions at the witness state.
    pub fn replay(&self, props: &[&Proposition], eps: Tolerance) -> Result<bool> {
        if props.len() != self.pattern.len() {
            return Err(OppositionError::PatternLength { pattern: self.pattern.len(), props: props.len() });
        }
        for (p, want) in props.iter().zip(&self.pattern) {
            if p.truth(&self.state, eps)? != *want {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Answer to "can these propositions take this truth pattern together?".
#[derive(Debug, Clone, PartialEq)]
pub enum Realizability {
    Realizable(Witness),
    Empty,
    Undecided,
}

impl Realizability {
    pub fn decided(&self) -> Option<bool> {
        match self {
            Realizability::Realizable(_) => Some(true),
            Realizability::Empty => Some(false),
            Realizability::Undecided => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Realizability::Realizable(w) => Some(w),
            _ => None,
        }
    }
}

/// Families known to the engine plus the witness-search knobs.
#[derive(Debug, Clone, PartialEq)]
pub struct Context {
    pub families: Vec<OrthoFamily>,
    pub seed: u64,
    pub trials: usize,
}

impl Default for Context {
    fn default() -> Self {
        Context { families: Vec::new(), seed: 42, trials: 2000 }
    }
}

impl Context {
    pub fn new(families: Vec<OrthoFamily>) -> Self {
        Context { families, ..Context::default() }
    }

    pub fn with_search(mut self, seed: u64, trials: usize) -> Self {
        self.seed = seed;
        self.trials = trials;
        self
    }

    fn family(&self, label: &str) -> Option<&OrthoFamily> {
        self.families.iter().find(|f| f.label() == label)
    }
}

fn common_ambient(props: &[&Proposition]) -> Result<usize> {
    let mut dim = None;
    for p in props {
        for a in p.atoms() {
            let d = a.subspace.ambient_dim();
            match dim {
                None => dim = Some(d),
                Some(e) if e != d => return Err(OppositionError::AmbientMismatch { expected: e, found: d }),
                _ => {}
            }
        }
    }
    Ok(dim.unwrap_or(0))
}

/// Decides whether some unit state gives `props[i]` the truth value `pattern[i]`.
pub fn realize(props: &[&Proposition], pattern: &[bool], ctx: &Context, eps: Tolerance) -> Result<Realizability> {
    if props.len() != pattern.len() {
        return Err(OppositionError::PatternLength { pattern: pattern.len(), props: props.len() });
    }
    common_ambient(props)?;
    let normalized: Vec<Proposition> = props.iter().map(|p| p.normalized()).collect();
    let exact = match normalized.as_slice() {
        [p] => p.as_literal().map(|l| single_literal(&oriented(l, pattern[0]))).transpose()?,
        [p, q] => match (p.as_literal(), q.as_literal()) {
            (Some(a), Some(b)) => Some(literal_pair(&oriented(a, pattern[0]), &oriented(b, pattern[1]), eps)?),
            _ => None,
        },
        _ => None,
    };
    let exact = match exact {
        Some(v) => Some(v),
        None => cell_calculus(props, pattern, ctx)?,
    };
    match exact {
        Some(Some(state)) => {
            let w = Witness { state, pattern: pattern.to_vec() };
            if w.replay(props, eps)? {
                return Ok(Realizability::Realizable(w));
            }
            // The exact rule says nonempty but the constructed witness sits
            // inside the tolerance band; let the search try before giving up.
            Ok(search_or_undecided(props, pattern, ctx, eps)?)
        }
        Some(None) => Ok(Realizability::Empty),
        None => Ok(search_or_undecided(props, pattern, ctx, eps)?),
    }
}

fn search_or_undecided(
    props: &[&Proposition],
    pattern: &[bool],
    ctx: &Context,
    eps: Tolerance,
) -> Result<Realizability> {
    Ok(match random_witness_search(props, pattern, ctx.seed, ctx.trials, eps)? {
        Some(w) => Realizability::Realizable(w),
        None => Realizability::Undecided,
    })
}

/// The literal that is true exactly when `l` has truth value `value`.
fn oriented(l: &Literal, value: bool) -> Literal {
    if value {
        l.clone()
    } else {
        l.negate()
    }
}

fn unit_state(v: &CVector) -> State {
    State::normalize(v, Tolerance::default()).expect("nonzero witness vector")
}

fn single_literal(l: &Literal) -> Result<Option<State>> {
    let s = &l.atom.subspace;
    Ok(match l.polarity {
        Polarity::Asserted => s.basis().first().map(unit_state),
        Polarity::Negated => s.orthocomplement().basis().first().map(unit_state),
    })
}

/// Exact realizability of "both literals true", with a witness.
fn literal_pair(a: &Literal, b: &Literal, eps: Tolerance) -> Result<Option<State>> {
    let (sa, sb) = (&a.atom.subspace, &b.atom.subspace);
    use Polarity::*;
    Ok(match (a.polarity, b.polarity) {
        (Asserted, Asserted) => sa.intersect(sb, eps)?.basis().first().map(unit_state),
        (Asserted, Negated) => inside_not_inside(sa, sb, eps)?,
        (Negated, Asserted) => inside_not_inside(sb, sa, eps)?,
        (Negated, Negated) => {
            if sa.is_full() || sb.is_full() {
                None
            } else {
                Some(outside_both(sa, sb, eps)?)
            }
        }
    })
}

/// A basis vector of `inside` that is not a member of `outside`.
fn inside_not_inside(
    inside: &crate::numeric::Subspace,
    outside: &crate::numeric::Subspace,
    eps: Tolerance,
) -> Result<Option<State>> {
    for b in inside.basis() {
        if !outside.contains(b, eps)? {
            return Ok(Some(unit_state(b)));
        }
    }
    Ok(None)
}

/// Two proper subspaces never cover the space. With `a ⊥ S` and `b ⊥ T`:
/// `a` works unless `a ∈ T`, `b` works unless `b ∈ S`, and if both fail
/// then `a + b` lies in neither.
fn outside_both(s: &crate::numeric::Subspace, t: &crate::numeric::Subspace, eps: Tolerance) -> Result<State> {
    let a = s.orthocomplement().basis()[0].clone();
    let b = t.orthocomplement().basis()[0].clone();
    if !t.contains(&a, eps)? {
        return Ok(unit_state(&a));
    }
    if !s.contains(&b, eps)? {
        return Ok(unit_state(&b));
    }
    Ok(unit_state(&(&a + &b)))
}

/// Exact decision when every atom is a member of one known family.
/// `None` when the rule does not apply.
fn cell_calculus(props: &[&Proposition], pattern: &[bool], ctx: &Context) -> Result<Option<Option<State>>> {
    let atoms: Vec<&Atom> = props.iter().flat_map(|p| p.atoms()).collect();
    let Some(family_label) = atoms.first().and_then(|a| a.family.as_deref()) else {
        return Ok(None);
    };
    if atoms.iter().any(|a| a.family.as_deref() != Some(family_label)) {
        return Ok(None);
    }
    let Some(family) = ctx.family(family_label) else {
        return Ok(None);
    };
    if atoms.iter().any(|a| family.member(&a.name).is_err()) {
        return Ok(None);
    }
    let nonzero: Vec<_> = family.members().iter().filter(|m| !m.subspace.is_zero()).collect();

    let matches = |inside: Option<&str>| -> bool {
        props.iter().zip(pattern).all(|(p, want)| {
            let mut membership = |a: &Atom| -> std::result::Result<bool, ()> { Ok(Some(a.name.as_str()) == inside) };
            p.evaluate(&mut membership).unwrap_or(false) == *want
        })
    };

    for m in &nonzero {
        if matches(Some(&m.label)) {
            return Ok(Some(Some(unit_state(&m.subspace.basis()[0]))));
        }
    }
    if nonzero.len() >= 2 && matches(None) {
        let v = &nonzero[0].subspace.basis()[0] + &nonzero[1].subspace.basis()[0];
        return Ok(Some(Some(unit_state(&v.scale(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))))));
    }
    Ok(Some(None))
}

pub fn can_both_be_true(p: &Proposition, q: &Proposition, ctx: &Context, eps: Tolerance) -> Result<Realizability> {
    realize(&[p, q], &[true, true], ctx, eps)
}

pub fn can_both_be_false(p: &Proposition, q: &Proposition, ctx: &Context, eps: Tolerance) -> Result<Realizability> {
    realize(&[p, q], &[false, false], ctx, eps)
}

/// Every state making `p` true makes `q` true.
pub fn entails(p: &Proposition, q: &Proposition, ctx: &Context, eps: Tolerance) -> Result<bool> {
    match realize(&[p, q], &[true, false], ctx, eps)?.decided() {
        Some(counterexample) => Ok(!counterexample),
        None => Err(OppositionError::Undecided),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub relation: Relation,
    /// Witnesses for every truth pattern found realizable, over `(p, q)`.
    pub witnesses: Vec<Witness>,
}

pub fn classify(p: &Proposition, q: &Proposition, ctx: &Context, eps: Tolerance) -> Result<Classification> {
    let props = [p, q];
    let mut witnesses = Vec::new();
    let mut ask = |a: bool, b: bool| -> Result<Option<bool>> {
        let r = realize(&props, &[a, b], ctx, eps)?;
        if let Realizability::Realizable(w) = &r {
            witnesses.push(w.clone());
        }
        Ok(r.decided())
    };
    let (Some(both_true), Some(both_false)) = (ask(true, true)?, ask(false, false)?) else {
        return Ok(Classification { relation: Relation::Undecided, witnesses });
    };
    let relation = match (both_true, both_false) {
        (false, false) => Relation::Contradictory,
        (false, true) => Relation::Contrary,
        (true, false) => Relation::Subcontrary,
        (true, true) => {
            let (Some(p_not_q), Some(q_not_p)) = (ask(true, false)?, ask(false, true)?) else {
                return Ok(Classification { relation: Relation::Undecided, witnesses });
            };
            match (!p_not_q, !q_not_p) {
                (true, true) => Relation::Equivalent,
                (true, false) => Relation::Subaltern(Direction::LeftToRight),
                (false, true) => Relation::Subaltern(Direction::RightToLeft),
                (false, false) => Relation::Independent,
            }
        }
    };
    Ok(Classification { relation, witnesses })
}
