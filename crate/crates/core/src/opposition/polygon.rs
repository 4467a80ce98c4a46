use std::fmt;

use super::{classify, realize, Classification, Context, Direction, OppositionError, Realizability, Relation, Result};
use crate::numeric::Tolerance;
use crate::quantum::Proposition;

/// Positions of the square (A, E, I, O) and the hexagon's extra top (U)
/// and bottom (Y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    A,
    E,
    I,
    O,
    U,
    Y,
}

impl Corner {
    pub const SQUARE: [Corner; 4] = [Corner::A, Corner::E, Corner::I, Corner::O];
    pub const HEXAGON: [Corner; 6] = [Corner::A, Corner::E, Corner::I, Corner::O, Corner::U, Corner::Y];

    pub fn name(self) -> &'static str {
        match self {
            Corner::A => "A",
            Corner::E => "E",
            Corner::I => "I",
            Corner::O => "O",
            Corner::U => "U",
            Corner::Y => "Y",
        }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub left: Corner,
    pub right: Corner,
    pub classification: Classification,
}

/// An edge whose relation differs from the textbook pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub left: Corner,
    pub right: Corner,
    pub expected: Relation,
    pub actual: Relation,
}

/// A square or hexagon of opposition: propositions at each corner, the
/// classified relation on every pair of corners, and every departure from
/// the standard pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub positions: Vec<(Corner, Proposition)>,
    pub edges: Vec<Edge>,
    pub deviations: Vec<Deviation>,
}

pub type Square = Polygon;
pub type Hexagon = Polygon;

impl Polygon {
    pub fn position(&self, corner: Corner) -> Option<&Proposition> {
        self.positions.iter().find(|(c, _)| *c == corner).map(|(_, p)| p)
    }

    /// Relation between two corners, oriented as asked.
    pub fn relation(&self, left: Corner, right: Corner) -> Option<Relation> {
        self.edges.iter().find_map(|e| {
            if (e.left, e.right) == (left, right) {
                Some(e.classification.relation)
            } else if (e.left, e.right) == (right, left) {
                Some(e.classification.relation.swapped())
            } else {
                None
            }
        })
    }
}

/// The textbook relation between two corners (left listed before right in
/// [`Corner::HEXAGON`] order).
pub fn standard_relation(left: Corner, right: Corner) -> Relation {
    use Corner::*;
    use Relation::*;
    const DOWN: Relation = Subaltern(Direction::LeftToRight);
    const UP: Relation = Subaltern(Direction::RightToLeft);
    match (left, right) {
        (A, E) | (A, Y) | (E, Y) => Contrary,
        (A, O) | (E, I) | (U, Y) => Contradictory,
        (I, O) | (I, U) | (O, U) => Subcontrary,
        (A, I) | (E, O) | (A, U) | (E, U) => DOWN,
        (I, Y) | (O, Y) => UP,
        (l, r) if l > r => standard_relation(r, l).swapped(),
        _ => Equivalent,
    }
}

fn degenerate_notes(a: &Proposition, e: &Proposition, ctx: &Context, eps: Tolerance) -> Result<Vec<String>> {
    let mut notes = Vec::new();
    for (name, p) in [("A", a), ("E", e)] {
        if realize(&[p], &[true], ctx, eps)? == Realizability::Empty {
            notes.push(format!("{name} is unsatisfiable"));
        }
        if realize(&[p], &[false], ctx, eps)? == Realizability::Empty {
            notes.push(format!("{name} is always true"));
        }
    }
    Ok(notes)
}

fn check_base(a: &Proposition, e: &Proposition, ctx: &Context, eps: Tolerance) -> Result<()> {
    let base = classify(a, e, ctx, eps)?;
    if base.relation != Relation::Contrary {
        return Err(OppositionError::NotContrary {
            actual: base.relation,
            degenerate: degenerate_notes(a, e, ctx, eps)?,
        });
    }
    Ok(())
}

fn assemble(positions: Vec<(Corner, Proposition)>, ctx: &Context, eps: Tolerance) -> Result<Polygon> {
    let mut edges = Vec::new();
    let mut deviations = Vec::new();
    for (i, (left, p)) in positions.iter().enumerate() {
        for (right, q) in &positions[i + 1..] {
            let classification = classify(p, q, ctx, eps)?;
            let expected = standard_relation(*left, *right);
            if classification.relation != expected {
                deviations.push(Deviation { left: *left, right: *right, expected, actual: classification.relation });
            }
            edges.push(Edge { left: *left, right: *right, classification });
        }
    }
    Ok(Polygon { positions, edges, deviations })
}

/// Square on a contrary pair: I := ¬E, O := ¬A.
pub fn build_square(a: &Proposition, e: &Proposition, ctx: &Context, eps: Tolerance) -> Result<Square> {
    check_base(a, e, ctx, eps)?;
    let positions = vec![
        (Corner::A, a.normalized()),
        (Corner::E, e.normalized()),
        (Corner::I, e.negated()),
        (Corner::O, a.negated()),
    ];
    assemble(positions, ctx, eps)
}

/// Hexagon on a contrary pair: the square plus U := A ∨ E and Y := ¬A ∧ ¬E.
pub fn build_hexagon(a: &Proposition, e: &Proposition, ctx: &Context, eps: Tolerance) -> Result<Hexagon> {
    check_base(a, e, ctx, eps)?;
    let positions = vec![
        (Corner::A, a.normalized()),
        (Corner::E, e.normalized()),
        (Corner::I, e.negated()),
        (Corner::O, a.negated()),
        (Corner::U, Proposition::or(vec![a.normalized(), e.normalized()])),
        (Corner::Y, Proposition::and(vec![a.negated(), e.negated()])),
    ];
    assemble(positions, ctx, eps)
}
