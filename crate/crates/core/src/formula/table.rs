use std::collections::HashMap;
use std::sync::Arc;

use super::Formula;

/// Index of a hash-consed formula inside a [`FormulaTable`].
///
/// Two ids from the same table are equal iff the formulas are structurally
/// equal, so ids can key per-formula variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormulaId(pub u32);

/// Shape of an interned formula with children replaced by ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Bot,
    Top,
    Atom(Arc<str>),
    Neg(FormulaId),
    And(FormulaId, FormulaId),
    Or(FormulaId, FormulaId),
    Imp(FormulaId, FormulaId),
    CoImp(FormulaId, FormulaId),
    WImp(FormulaId, FormulaId),
}

impl Node {
    pub fn is_atom(&self) -> bool {
        matches!(self, Node::Atom(_))
    }
}

/// Hash-consing table of formulas.
#[derive(Clone, Debug, Default)]
pub struct FormulaTable {
    nodes: Vec<Node>,
    formulas: Vec<Formula>,
    index: HashMap<Node, FormulaId>,
}

impl FormulaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns `f` and all its subformulas.
    pub fn intern(&mut self, f: &Formula) -> FormulaId {
        let node = match f {
            Formula::Bot => Node::Bot,
            Formula::Top => Node::Top,
            Formula::Atom(p) => Node::Atom(p.clone()),
            Formula::Neg(a) => Node::Neg(self.intern(a)),
            Formula::And(a, b) => Node::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Node::Or(self.intern(a), self.intern(b)),
            Formula::Imp(a, b) => Node::Imp(self.intern(a), self.intern(b)),
            Formula::CoImp(a, b) => Node::CoImp(self.intern(a), self.intern(b)),
            Formula::WImp(a, b) => Node::WImp(self.intern(a), self.intern(b)),
        };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = FormulaId(self.nodes.len() as u32);
        self.index.insert(node.clone(), id);
        self.nodes.push(node);
        self.formulas.push(f.clone());
        id
    }

    pub fn node(&self, id: FormulaId) -> &Node {
        &self.nodes[id.0 as usize]
    }

    pub fn formula(&self, id: FormulaId) -> &Formula {
        &self.formulas[id.0 as usize]
    }

    pub fn is_atom(&self, id: FormulaId) -> bool {
        self.node(id).is_atom()
    }

    pub fn atom_name(&self, id: FormulaId) -> Option<&str> {
        match self.node(id) {
            Node::Atom(p) => Some(p),
            _ => None,
        }
    }

    /// Size of the syntax tree below `id` (shared subtrees counted per occurrence).
    pub fn size(&self, id: FormulaId) -> usize {
        self.formula(id).size()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structurally_equal_formulas_share_an_id() {
        let mut t = FormulaTable::new();
        let p = Formula::atom("p");
        let a = t.intern(&Formula::imp(p.clone(), p.clone()));
        let b = t.intern(&Formula::imp(Formula::atom("p"), Formula::atom("p")));
        assert_eq!(a, b);
        assert_eq!(t.len(), 2);
        match t.node(a) {
            Node::Imp(x, y) => {
                assert_eq!(x, y);
                assert_eq!(t.atom_name(*x), Some("p"));
            }
            other => panic!("unexpected node {other:?}"),
        }
    }
}
