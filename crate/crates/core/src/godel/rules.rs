//! Decomposition rules for order constraints with a compound side.

use crate::formula::{FormulaId, Node};
use crate::order::{OConstraint, ORel, OTerm};
use crate::proof::Coord;

use super::GodelTableau;

/// Alternatives produced by one rule; a single alternative does not split.
#[derive(Clone, Debug)]
pub(crate) struct Expansion {
    pub rule: String,
    pub branches: Vec<Vec<OConstraint>>,
}

/// Which side of the constraint holds the decomposed term.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    /// `T rel X`
    Upper,
    /// `X rel T`
    Lower,
}

impl GodelTableau {
    fn compound(&self, t: OTerm) -> Option<(Coord, FormulaId)> {
        match t {
            OTerm::Term(c, f) if !self.table.is_atom(f) => Some((c, f)),
            _ => None,
        }
    }

    /// Whether `c` still has a compound side to decompose.
    pub(crate) fn is_compound(&self, c: &OConstraint) -> bool {
        self.compound(c.lhs).is_some() || self.compound(c.rhs).is_some()
    }

    /// Decomposes the left side of `c` if it is compound, else the right.
    pub(crate) fn expand(&self, c: &OConstraint) -> Option<Expansion> {
        let (side, (coord, f), x) = match (self.compound(c.lhs), self.compound(c.rhs)) {
            (Some(t), _) => (Side::Upper, t, c.rhs),
            (None, Some(t)) => (Side::Lower, t, c.lhs),
            (None, None) => return None,
        };
        let rel = c.rel;
        let strict = rel == ORel::Lt;
        let term = |c: Coord, g: FormulaId| OTerm::Term(c, g);
        // The premise with the decomposed term replaced by `t`.
        let same = |t: OTerm| match side {
            Side::Upper => OConstraint::new(t, rel, x),
            Side::Lower => OConstraint::new(x, rel, t),
        };
        let min = |a: OTerm, b: OTerm| match side {
            Side::Upper => vec![vec![same(a)], vec![same(b)]],
            Side::Lower => vec![vec![same(a), same(b)]],
        };
        let max = |a: OTerm, b: OTerm| match side {
            Side::Upper => vec![vec![same(a), same(b)]],
            Side::Lower => vec![vec![same(a)], vec![same(b)]],
        };
        // 1 if u <= w, else w.
        let imp = |u: OTerm, w: OTerm| match (side, strict) {
            (Side::Upper, false) => vec![
                vec![OConstraint::le(OTerm::One, x)],
                vec![OConstraint::lt(x, OTerm::One), same(w), OConstraint::lt(w, u)],
            ],
            (Side::Upper, true) => vec![vec![same(w), OConstraint::lt(w, u)]],
            (Side::Lower, _) => {
                let mut top = vec![OConstraint::le(u, w)];
                if strict {
                    top.push(OConstraint::lt(x, OTerm::One));
                }
                vec![top, vec![same(w)]]
            }
        };
        // 0 if u <= w, else u.
        let coimp = |u: OTerm, w: OTerm| match (side, strict) {
            (Side::Upper, _) => {
                let mut bottom = vec![OConstraint::le(u, w)];
                if strict {
                    bottom.push(OConstraint::lt(OTerm::Zero, x));
                }
                vec![bottom, vec![same(u)]]
            }
            (Side::Lower, false) => vec![
                vec![OConstraint::le(x, OTerm::Zero)],
                vec![OConstraint::lt(OTerm::Zero, x), same(u), OConstraint::lt(w, u)],
            ],
            (Side::Lower, true) => vec![vec![same(u), OConstraint::lt(w, u)]],
        };
        let node = self.table.node(f).clone();
        let (one, two) = (Coord::One, Coord::Two);
        let branches = match (&node, coord) {
            (Node::Atom(_), _) => unreachable!("atoms are not decomposed"),
            (Node::Bot, Coord::One) | (Node::Top, Coord::Two) => vec![vec![same(OTerm::Zero)]],
            (Node::Bot, Coord::Two) | (Node::Top, Coord::One) => vec![vec![same(OTerm::One)]],
            (Node::Neg(a), c) => vec![vec![same(term(c.other(), *a))]],
            (Node::And(a, b), Coord::One) | (Node::Or(a, b), Coord::Two) => min(term(coord, *a), term(coord, *b)),
            (Node::Or(a, b), Coord::One) | (Node::And(a, b), Coord::Two) => max(term(coord, *a), term(coord, *b)),
            (Node::Imp(a, b) | Node::WImp(a, b), Coord::One) => imp(term(one, *a), term(one, *b)),
            (Node::Imp(a, b), Coord::Two) => coimp(term(two, *b), term(two, *a)),
            (Node::CoImp(a, b), Coord::One) => coimp(term(one, *a), term(one, *b)),
            (Node::CoImp(a, b), Coord::Two) => imp(term(two, *b), term(two, *a)),
            (Node::WImp(a, b), Coord::Two) => min(term(one, *a), term(two, *b)),
        };
        let conn = match node {
            Node::Atom(_) => unreachable!(),
            Node::Bot | Node::Top => "const",
            Node::Neg(_) => "neg",
            Node::And(..) => "and",
            Node::Or(..) => "or",
            Node::Imp(..) => "imp",
            Node::CoImp(..) => "coimp",
            Node::WImp(..) => "wimp",
        };
        let dir = match (side, strict) {
            (Side::Upper, false) => "le",
            (Side::Upper, true) => "lt",
            (Side::Lower, false) => "ge",
            (Side::Lower, true) => "gt",
        };
        Some(Expansion {
            rule: format!("{conn}-{}-{dir}", coord.index()),
            branches,
        })
    }
}
