//! Three-valued propositional logic LP (values F < B < T, designated T and
//! B) with classical two-valued evaluation for comparison.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use parse::parse_formula;

/// Largest number of distinct atoms the enumerators accept.
pub const MAX_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("valuation has no value for atom {0:?}")]
    MissingAtom(String),
    #[error("{atoms} atoms exceed the enumeration budget of {max}")]
    AtomBudget { atoms: usize, max: usize },
    #[error("empty atom name")]
    EmptyAtomName,
    #[error("no labels given")]
    EmptyLabels,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("need at least 2 labels, got {0}")]
    TooFewLabels(usize),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T, E = LpError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue3 {
    F,
    B,
    T,
}

impl TruthValue3 {
    pub const ALL: [TruthValue3; 3] = [TruthValue3::F, TruthValue3::B, TruthValue3::T];

    pub fn designated(self) -> bool {
        self != TruthValue3::F
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        match self {
            TruthValue3::T => TruthValue3::F,
            TruthValue3::B => TruthValue3::B,
            TruthValue3::F => TruthValue3::T,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue3::T
        } else {
            TruthValue3::F
        }
    }
}

impl fmt::Display for TruthValue3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue3::F => "F",
            TruthValue3::B => "B",
            TruthValue3::T => "T",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula3 {
    Atom(String),
    Not(Box<Formula3>),
    And(Box<Formula3>, Box<Formula3>),
    Or(Box<Formula3>, Box<Formula3>),
    Imp(Box<Formula3>, Box<Formula3>),
    Iff(Box<Formula3>, Box<Formula3>),
}

impl Formula3 {
    pub fn atom(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(LpError::EmptyAtomName);
        }
        Ok(Formula3::Atom(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula3) -> Self {
        Formula3::Not(Box::new(f))
    }

    pub fn and(a: Formula3, b: Formula3) -> Self {
        Formula3::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula3, b: Formula3) -> Self {
        Formula3::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula3, b: Formula3) -> Self {
        Formula3::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula3, b: Formula3) -> Self {
        Formula3::Iff(Box::new(a), Box::new(b))
    }

    /// Distinct atom names in sorted order.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula3::Atom(a) => {
                out.insert(a.clone());
            }
            Formula3::Not(a) => a.collect_atoms(out),
            Formula3::And(a, b) | Formula3::Or(a, b) | Formula3::Imp(a, b) | Formula3::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn eval_with<F>(&self, lookup: &F) -> Result<TruthValue3>
    where
        F: Fn(&str) -> Option<TruthValue3>,
    {
        Ok(match self {
            Formula3::Atom(a) => lookup(a).ok_or_else(|| LpError::MissingAtom(a.clone()))?,
            Formula3::Not(a) => a.eval_with(lookup)?.not(),
            Formula3::And(a, b) => a.eval_with(lookup)?.min(b.eval_with(lookup)?),
            Formula3::Or(a, b) => a.eval_with(lookup)?.max(b.eval_with(lookup)?),
            Formula3::Imp(a, b) => a.eval_with(lookup)?.not().max(b.eval_with(lookup)?),
            Formula3::Iff(a, b) => {
                let (x, y) = (a.eval_with(lookup)?, b.eval_with(lookup)?);
                x.not().max(y).min(y.not().max(x))
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula3::Iff(..) => 1,
            Formula3::Imp(..) => 2,
            Formula3::Or(..) => 3,
            Formula3::And(..) => 4,
            Formula3::Not(_) | Formula3::Atom(_) => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula3, min: u8) -> fmt::Result {
    if child.precedence() < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        let (a, b, op, left_min, right_min) = match self {
            Formula3::Atom(a) => return f.write_str(a),
            Formula3::Not(a) => {
                f.write_str("!")?;
                return write_child(f, a, 5);
            }
            Formula3::And(a, b) => (a, b, "&", p, p + 1),
            Formula3::Or(a, b) => (a, b, "|", p, p + 1),
            Formula3::Imp(a, b) => (a, b, "->", p + 1, p),
            Formula3::Iff(a, b) => (a, b, "<->", p, p + 1),
        };
        write_child(f, a, left_min)?;
        write!(f, " {op} ")?;
        write_child(f, b, right_min)
    }
}

pub type Valuation3 = BTreeMap<String, TruthValue3>;

pub fn eval3(f: &Formula3, v: &Valuation3) -> Result<TruthValue3> {
    f.eval_with(&|a: &str| v.get(a).copied())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Valuations over {F, T}.
    Classical,
    /// Valuations over {F, B, T}.
    Lp,
}

impl Mode {
    pub fn values(self) -> &'static [TruthValue3] {
        match self {
            Mode::Classical => &[TruthValue3::F, TruthValue3::T],
            Mode::Lp => &TruthValue3::ALL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Classical => "classical",
            Mode::Lp => "lp",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn budget<'a>(formulas: impl IntoIterator<Item = &'a Formula3>) -> Result<Vec<String>> {
    let mut atoms = BTreeSet::new();
    for f in formulas {
        f.collect_atoms(&mut atoms);
    }
    if atoms.len() > MAX_ATOMS {
        return Err(LpError::AtomBudget { atoms: atoms.len(), max: MAX_ATOMS });
    }
    Ok(atoms.into_iter().collect())
}

/// Visits every valuation of `atoms` over the mode's values, first atom most
/// significant, values in ascending order. Stops when `visit` returns true.
fn enumerate<F>(atoms: &[String], mode: Mode, mut visit: F) -> Result<()>
where
    F: FnMut(&[TruthValue3]) -> Result<bool>,
{
    let values = mode.values();
    let mut digits = vec![0usize; atoms.len()];
    let mut current = vec![values[0]; atoms.len()];
    loop {
        if visit(&current)? {
            return Ok(());
        }
        let mut i = atoms.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < values.len() {
                current[i] = values[digits[i]];
                break;
            }
            digits[i] = 0;
            current[i] = values[0];
        }
    }
}

fn designates_all(formulas: &[Formula3], atoms: &[String], values: &[TruthValue3]) -> Result<bool> {
    let lookup = |a: &str| atoms.binary_search_by(|x| x.as_str().cmp(a)).ok().map(|i| values[i]);
    for f in formulas {
        if !f.eval_with(&lookup)?.designated() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn to_valuation(atoms: &[String], values: &[TruthValue3]) -> Valuation3 {
    atoms.iter().cloned().zip(values.iter().copied()).collect()
}

/// First valuation (in enumeration order) designating every constraint.
pub fn satisfiable(constraints: &[Formula3], mode: Mode) -> Result<Option<Valuation3>> {
    let atoms = budget(constraints)?;
    let mut found = None;
    enumerate(&atoms, mode, |values| {
        if designates_all(constraints, &atoms, values)? {
            found = Some(to_valuation(&atoms, values));
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

/// All valuations designating every constraint, in enumeration order.
pub fn models(constraints: &[Formula3], mode: Mode) -> Result<Vec<Valuation3>> {
    let atoms = budget(constraints)?;
    let mut out = Vec::new();
    enumerate(&atoms, mode, |values| {
        if designates_all(constraints, &atoms, values)? {
            out.push(to_valuation(&atoms, values));
        }
        Ok(false)
    })?;
    Ok(out)
}

/// Whether every valuation designating all premises designates the
/// conclusion.
pub fn consequence(premises: &[Formula3], conclusion: &Formula3, mode: Mode) -> Result<bool> {
    Ok(countermodel(premises, conclusion, mode)?.is_none())
}

/// First valuation designating all premises but not the conclusion.
pub fn countermodel(premises: &[Formula3], conclusion: &Formula3, mode: Mode) -> Result<Option<Valuation3>> {
    let atoms = budget(premises.iter().chain(std::iter::once(conclusion)))?;
    let conclusion = std::slice::from_ref(conclusion);
    let mut found = None;
    enumerate(&atoms, mode, |values| {
        if designates_all(premises, &atoms, values)? && !designates_all(conclusion, &atoms, values)? {
            found = Some(to_valuation(&atoms, values));
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

fn check_labels(labels: &[&str]) -> Result<()> {
    if labels.is_empty() {
        return Err(LpError::EmptyLabels);
    }
    let mut seen = BTreeSet::new();
    for l in labels {
        if l.is_empty() {
            return Err(LpError::EmptyAtomName);
        }
        if !seen.insert(*l) {
            return Err(LpError::DuplicateLabel(l.to_string()));
        }
    }
    Ok(())
}

/// Atom name of the predicate "the system has the property of component
/// `label`".
pub fn k_atom(label: &str) -> String {
    format!("K_{label}")
}

/// Atom name used by [`equivalence_chain`] for `label`.
pub fn p_atom(label: &str) -> String {
    format!("p_{label}")
}

/// `K_l` and `!K_l` for each label, in label order.
pub fn postulate_of_contradiction(labels: &[&str]) -> Result<Vec<Formula3>> {
    check_labels(labels)?;
    let mut out = Vec::with_capacity(2 * labels.len());
    for l in labels {
        let k = Formula3::Atom(k_atom(l));
        out.push(k.clone());
        out.push(Formula3::not(k));
    }
    Ok(out)
}

/// The postulate under the reading where failing to have one component's
/// property amounts to having another's: adds `!K_i <-> K_j` for every pair
/// `i < j`.
pub fn postulate_exclusive(labels: &[&str]) -> Result<Vec<Formula3>> {
    let mut out = postulate_of_contradiction(labels)?;
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            out.push(Formula3::iff(Formula3::not(Formula3::Atom(k_atom(a))), Formula3::Atom(k_atom(b))));
        }
    }
    Ok(out)
}

/// `p_i <-> !p_j` for every pair `i < j`.
pub fn equivalence_chain(labels: &[&str]) -> Result<Vec<Formula3>> {
    if labels.len() < 2 {
        return Err(LpError::TooFewLabels(labels.len()));
    }
    check_labels(labels)?;
    let mut out = Vec::new();
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            out.push(Formula3::iff(Formula3::Atom(p_atom(a)), Formula3::not(Formula3::Atom(p_atom(b)))));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
