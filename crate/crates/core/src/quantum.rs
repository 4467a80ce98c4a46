//! States, observables, propositions-as-subspaces and the two property
//! attribution rules (eigenstate-only versus "every component present").

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::numeric::{hermitian_eig, CMatrix, CVector, NumericError, Subspace, Tolerance, C64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("state vector has norm {norm}, expected 1")]
    NotNormalized { norm: f64 },
    #[error("superposition cancels to the zero vector")]
    ZeroNorm,
    #[error("{coefficients} coefficients for {states} states")]
    LengthMismatch { coefficients: usize, states: usize },
    #[error("empty superposition")]
    EmptySuperposition,
    #[error("observable {0:?} is not Hermitian")]
    NotHermitian(String),
    #[error("family {family:?}: members {a:?} and {b:?} are not orthogonal")]
    NotOrthogonal { family: String, a: String, b: String },
    #[error("family {0:?}: members do not span the whole space")]
    Incomplete(String),
    #[error("family {family:?}: duplicate member label {label:?}")]
    DuplicateMember { family: String, label: String },
    #[error("family {family:?} has no member {member:?}")]
    UnknownMember { family: String, member: String },
    #[error("empty label")]
    EmptyLabel,
    #[error("outcome has zero probability")]
    ZeroProbability,
}

pub type Result<T> = std::result::Result<T, QuantumError>;

/// A unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    vector: CVector,
}

impl State {
    /// Accepts `vector` only if its norm is 1 within `eps`.
    pub fn new(vector: CVector, eps: Tolerance) -> Result<Self> {
        let norm = vector.norm();
        if (norm - 1.0).abs() > eps.eps() {
            return Err(QuantumError::NotNormalized { norm });
        }
        Ok(State { vector })
    }

    /// Rescales `vector` to unit norm.
    pub fn normalize(vector: &CVector, eps: Tolerance) -> Result<Self> {
        let v = vector.normalized(eps).map_err(|_| QuantumError::ZeroNorm)?;
        Ok(State { vector: v })
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        State { vector: CVector::basis(dim, k) }
    }

    pub fn vector(&self) -> &CVector {
        &self.vector
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    pub fn transformed(&self, u: &CMatrix) -> Result<State> {
        Ok(State { vector: u.mul_vec(&self.vector)? })
    }
}

/// Normalized linear combination `Σ cᵢ ψᵢ`.
pub fn superpose(coefficients: &[C64], states: &[State], eps: Tolerance) -> Result<State> {
    if coefficients.len() != states.len() {
        return Err(QuantumError::LengthMismatch { coefficients: coefficients.len(), states: states.len() });
    }
    let first = states.first().ok_or(QuantumError::EmptySuperposition)?;
    let mut sum = CVector::zeros(first.dim());
    for (c, s) in coefficients.iter().zip(states) {
        if s.dim() != first.dim() {
            return Err(NumericError::DimensionMismatch { expected: first.dim(), found: s.dim() }.into());
        }
        sum.axpy(*c, &s.vector);
    }
    State::normalize(&sum, eps)
}

/// Born probability `‖P_S ψ‖²`, clamped to `[0, 1]`.
pub fn born(psi: &State, subspace: &Subspace) -> Result<f64> {
    let p = subspace.project(&psi.vector)?;
    Ok(p.norm_sqr().clamp(0.0, 1.0))
}

/// Projects onto `subspace` and renormalizes.
pub fn collapse(psi: &State, subspace: &Subspace, eps: Tolerance) -> Result<State> {
    if born(psi, subspace)? <= eps.eps() {
        return Err(QuantumError::ZeroProbability);
    }
    let p = subspace.project(&psi.vector)?;
    State::normalize(&p, eps)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: CMatrix,
    label: String,
}

impl Observable {
    pub fn new(label: impl Into<String>, matrix: CMatrix, eps: Tolerance) -> Result<Self> {
        let label = label.into();
        if !matrix.is_hermitian(eps) {
            return Err(QuantumError::NotHermitian(label));
        }
        Ok(Observable { matrix, label })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub label: String,
    pub subspace: Subspace,
}

/// Pairwise-orthogonal subspaces whose join is the whole space: the
/// eigenspace decomposition of an observable.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoFamily {
    label: String,
    ambient_dim: usize,
    members: Vec<Member>,
}

impl OrthoFamily {
    pub fn new(label: impl Into<String>, ambient_dim: usize, members: Vec<Member>, eps: Tolerance) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(QuantumError::EmptyLabel);
        }
        let mut seen = BTreeSet::new();
        let mut join = Subspace::zero(ambient_dim)?;
        for (i, m) in members.iter().enumerate() {
            if m.label.is_empty() {
                return Err(QuantumError::EmptyLabel);
            }
            if !seen.insert(m.label.as_str()) {
                return Err(QuantumError::DuplicateMember { family: label, label: m.label.clone() });
            }
            if m.subspace.ambient_dim() != ambient_dim {
                return Err(
                    NumericError::DimensionMismatch { expected: ambient_dim, found: m.subspace.ambient_dim() }.into()
                );
            }
            for other in &members[..i] {
                let orthogonal = m.subspace.is_orthogonal_to(&other.subspace, eps)?
                    && m.subspace.intersect(&other.subspace, eps)?.is_zero();
                if !orthogonal {
                    return Err(QuantumError::NotOrthogonal {
                        family: label,
                        a: other.label.clone(),
                        b: m.label.clone(),
                    });
                }
            }
            join = join.join(&m.subspace, eps)?;
        }
        if !join.is_full() {
            return Err(QuantumError::Incomplete(label));
        }
        Ok(OrthoFamily { label, ambient_dim, members })
    }

    /// One rank-one member per vector.
    pub fn from_basis(label: impl Into<String>, vectors: &[(&str, CVector)], eps: Tolerance) -> Result<Self> {
        let first = vectors.first().map(|(_, v)| v.dim()).ok_or(QuantumError::Incomplete(String::new()))?;
        let members = vectors
            .iter()
            .map(|(name, v)| {
                Ok(Member { label: name.to_string(), subspace: Subspace::span(first, std::slice::from_ref(v), eps)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(label, first, members, eps)
    }

    /// One member per distinct eigenvalue (eigenvalues closer than `eps`
    /// merge), ascending, labeled by the eigenvalue.
    pub fn from_observable(observable: &Observable, eps: Tolerance) -> Result<Self> {
        let n = observable.matrix.dim();
        let pairs = hermitian_eig(&observable.matrix, eps)?;
        let mut members = Vec::new();
        let mut start = 0;
        while start < pairs.len() {
            let mut end = start + 1;
            while end < pairs.len() && pairs[end].value - pairs[end - 1].value < eps.eps() {
                end += 1;
            }
            let group = &pairs[start..end];
            let mean = group.iter().map(|p| p.value).sum::<f64>() / group.len() as f64;
            let vectors: Vec<CVector> = group.iter().map(|p| p.vector.clone()).collect();
            let subspace = Subspace::span(n, &vectors, eps)?.canonical();
            members.push(Member { label: eigenvalue_label(mean), subspace });
            start = end;
        }
        Self::new(observable.label.clone(), n, members, eps)
    }

    /// Renames members; unmentioned members keep their labels.
    pub fn relabeled(mut self, renames: &[(String, String)], eps: Tolerance) -> Result<Self> {
        for (from, to) in renames {
            let m = self
                .members
                .iter_mut()
                .find(|m| &m.label == from)
                .ok_or_else(|| QuantumError::UnknownMember { family: self.label.clone(), member: from.clone() })?;
            m.label = to.clone();
        }
        Self::new(self.label, self.ambient_dim, self.members, eps)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member(&self, label: &str) -> Result<&Member> {
        self.members
            .iter()
            .find(|m| m.label == label)
            .ok_or_else(|| QuantumError::UnknownMember { family: self.label.clone(), member: label.to_string() })
    }

    pub fn atom(&self, member: &str) -> Result<Atom> {
        let m = self.member(member)?;
        Ok(Atom { family: Some(self.label.clone()), name: m.label.clone(), subspace: m.subspace.clone() })
    }

    pub fn literal(&self, member: &str, polarity: Polarity) -> Result<Literal> {
        Ok(Literal { atom: self.atom(member)?, polarity })
    }

    pub fn transformed(&self, u: &CMatrix, eps: Tolerance) -> Result<Self> {
        let members = self
            .members
            .iter()
            .map(|m| Ok(Member { label: m.label.clone(), subspace: m.subspace.transformed(u, eps)? }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.label.clone(), self.ambient_dim, members, eps)
    }
}

fn eigenvalue_label(value: f64) -> String {
    let rounded = (value * 1e9).round() / 1e9;
    if rounded == 0.0 {
        "0".to_string()
    } else {
        format!("{rounded:+}")
    }
}

/// Born weight of every member, in member order.
pub fn born_weights(psi: &State, family: &OrthoFamily) -> Result<Vec<(String, f64)>> {
    family.members.iter().map(|m| Ok((m.label.clone(), born(psi, &m.subspace)?))).collect()
}

/// Eigenstate rule: a member is attributed only if `psi` lies in it.
pub fn minimal_attribution(psi: &State, family: &OrthoFamily, eps: Tolerance) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for m in &family.members {
        if m.subspace.contains(&psi.vector, eps)? {
            out.push(m.label.clone());
        }
    }
    Ok(out)
}

/// Every member carrying Born weight above `eps` is attributed.
pub fn paraconsistent_attribution(psi: &State, family: &OrthoFamily, eps: Tolerance) -> Result<Vec<String>> {
    Ok(born_weights(psi, family)?.into_iter().filter(|(_, w)| *w > eps.eps()).map(|(label, _)| label).collect())
}

/// The two attribution rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Minimal,
    Paraconsistent,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Minimal => "minimal",
            Semantics::Paraconsistent => "paraconsistent",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "minimal" => Some(Semantics::Minimal),
            "paraconsistent" => Some(Semantics::Paraconsistent),
            _ => None,
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn attribute(psi: &State, family: &OrthoFamily, semantics: Semantics, eps: Tolerance) -> Result<Vec<String>> {
    match semantics {
        Semantics::Minimal => minimal_attribution(psi, family, eps),
        Semantics::Paraconsistent => paraconsistent_attribution(psi, family, eps),
    }
}

/// A named subspace a proposition talks about; `family` is set when the
/// subspace is a member of a known [`OrthoFamily`].
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub family: Option<String>,
    pub name: String,
    pub subspace: Subspace,
}

impl Atom {
    pub fn direct(name: impl Into<String>, subspace: Subspace) -> Self {
        Atom { family: None, name: name.into(), subspace }
    }

    pub fn holds(&self, psi: &State, eps: Tolerance) -> Result<bool> {
        Ok(self.subspace.contains(&psi.vector, eps)?)
    }

    fn same_ref(&self, other: &Atom) -> bool {
        self.family == other.family && self.name == other.name
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Some(fam) => write!(f, "{fam}.{}", self.name),
            None => f.write_str(&self.name),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Asserted,
    Negated,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Asserted => Polarity::Negated,
            Polarity::Negated => Polarity::Asserted,
        }
    }
}

/// An atom with a polarity. Negation is non-membership (set complement on
/// the unit sphere), not the orthocomplement.
#[derive(Debug, Clone, PartialEq)]
pub struct Literal {
    pub atom: Atom,
    pub polarity: Polarity,
}

impl Literal {
    pub fn asserted(atom: Atom) -> Self {
        Literal { atom, polarity: Polarity::Asserted }
    }

    pub fn negated(atom: Atom) -> Self {
        Literal { atom, polarity: Polarity::Negated }
    }

    pub fn negate(&self) -> Self {
        Literal { atom: self.atom.clone(), polarity: self.polarity.flip() }
    }

    pub fn truth(&self, psi: &State, eps: Tolerance) -> Result<bool> {
        let inside = self.atom.holds(psi, eps)?;
        Ok(match self.polarity {
            Polarity::Asserted => inside,
            Polarity::Negated => !inside,
        })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.polarity == Polarity::Negated {
            f.write_str("!")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// Literals combined with AND / OR / NOT, evaluated by classical truth
/// tables over membership tests.
#[derive(Debug, Clone, PartialEq)]
pub enum Proposition {
    Lit(Literal),
    Not(Box<Proposition>),
    And(Vec<Proposition>),
    Or(Vec<Proposition>),
}

impl From<Literal> for Proposition {
    fn from(l: Literal) -> Self {
        Proposition::Lit(l)
    }
}

impl Proposition {
    pub fn and(parts: Vec<Proposition>) -> Self {
        Proposition::And(parts)
    }

    pub fn or(parts: Vec<Proposition>) -> Self {
        Proposition::Or(parts)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Proposition) -> Self {
        Proposition::Not(Box::new(p))
    }

    /// Pushes every NOT down to the literals (polarity flip plus De Morgan).
    pub fn normalized(&self) -> Proposition {
        self.nnf(false)
    }

    /// The normalized negation.
    pub fn negated(&self) -> Proposition {
        self.nnf(true)
    }

    fn nnf(&self, negate: bool) -> Proposition {
        match self {
            Proposition::Lit(l) => Proposition::Lit(if negate { l.negate() } else { l.clone() }),
            Proposition::Not(p) => p.nnf(!negate),
            Proposition::And(ps) => {
                let parts = ps.iter().map(|p| p.nnf(negate)).collect();
                if negate {
                    Proposition::Or(parts)
                } else {
                    Proposition::And(parts)
                }
            }
            Proposition::Or(ps) => {
                let parts = ps.iter().map(|p| p.nnf(negate)).collect();
                if negate {
                    Proposition::And(parts)
                } else {
                    Proposition::Or(parts)
                }
            }
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Proposition::Lit(l) => Some(l),
            _ => None,
        }
    }

    /// Distinct atoms, in first-occurrence order.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out: Vec<&Atom> = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Proposition::Lit(l) => {
                if !out.iter().any(|a| a.same_ref(&l.atom)) {
                    out.push(&l.atom);
                }
            }
            Proposition::Not(p) => p.collect_atoms(out),
            Proposition::And(ps) | Proposition::Or(ps) => ps.iter().for_each(|p| p.collect_atoms(out)),
        }
    }

    /// Evaluates with atom membership supplied by `membership`.
    pub fn evaluate<E>(
        &self,
        membership: &mut impl FnMut(&Atom) -> std::result::Result<bool, E>,
    ) -> std::result::Result<bool, E> {
        Ok(match self {
            Proposition::Lit(l) => {
                let inside = membership(&l.atom)?;
                match l.polarity {
                    Polarity::Asserted => inside,
                    Polarity::Negated => !inside,
                }
            }
            Proposition::Not(p) => !p.evaluate(membership)?,
            Proposition::And(ps) => {
                let mut all = true;
                for p in ps {
                    all &= p.evaluate(membership)?;
                }
                all
            }
            Proposition::Or(ps) => {
                let mut any = false;
                for p in ps {
                    any |= p.evaluate(membership)?;
                }
                any
            }
        })
    }

    pub fn truth(&self, psi: &State, eps: Tolerance) -> Result<bool> {
        self.normalized().evaluate(&mut |atom: &Atom| atom.holds(psi, eps))
    }

    pub fn ambient_dim(&self) -> usize {
        self.atoms().first().map(|a| a.subspace.ambient_dim()).unwrap_or(0)
    }

    /// Applies `u` to every atom's subspace.
    pub fn transformed(&self, u: &CMatrix, eps: Tolerance) -> Result<Proposition> {
        Ok(match self {
            Proposition::Lit(l) => Proposition::Lit(Literal {
                atom: Atom {
                    family: l.atom.family.clone(),
                    name: l.atom.name.clone(),
                    subspace: l.atom.subspace.transformed(u, eps)?,
                },
                polarity: l.polarity,
            }),
            Proposition::Not(p) => Proposition::not(p.transformed(u, eps)?),
            Proposition::And(ps) => Proposition::And(ps.iter().map(|p| p.transformed(u, eps)).collect::<Result<_>>()?),
            Proposition::Or(ps) => Proposition::Or(ps.iter().map(|p| p.transformed(u, eps)).collect::<Result<_>>()?),
        })
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, ps: &[Proposition], op: &str) -> fmt::Result {
            f.write_str("(")?;
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")
        }
        match self {
            Proposition::Lit(l) => write!(f, "{l}"),
            Proposition::Not(p) => write!(f, "!{p}"),
            Proposition::And(ps) => join(f, ps, "&"),
            Proposition::Or(ps) => join(f, ps, "|"),
        }
    }
}
