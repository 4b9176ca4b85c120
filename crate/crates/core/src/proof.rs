//! Proof trees and verdicts shared by both tableau engines.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::formula::{FormulaId, FormulaTable, Node};
use crate::luk::LukConstraint;
use crate::order::OConstraint;
use crate::semantics::{TruthPair, Valuation};

/// Coordinate of a truth pair: `1` is positive support, `2` negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    One,
    Two,
}

impl Coord {
    pub fn other(self) -> Coord {
        match self {
            Coord::One => Coord::Two,
            Coord::Two => Coord::One,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Coord::One => 1,
            Coord::Two => 2,
        }
    }
}

/// A constraint of either calculus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Item {
    Luk(LukConstraint),
    Order(OConstraint),
}

impl Item {
    pub fn render(&self, table: &FormulaTable) -> String {
        match self {
            Item::Luk(c) => c.render(table),
            Item::Order(c) => c.render(table),
        }
    }
}

impl From<LukConstraint> for Item {
    fn from(c: LukConstraint) -> Self {
        Item::Luk(c)
    }
}

impl From<OConstraint> for Item {
    fn from(c: OConstraint) -> Self {
        Item::Order(c)
    }
}

/// `x:φ` with parentheses around compound formulas.
pub(crate) fn render_term(coord: Coord, f: FormulaId, table: &FormulaTable) -> String {
    let text = table.formula(f).to_string();
    match table.node(f) {
        Node::Atom(_) | Node::Bot | Node::Top => format!("{}:{text}", coord.index()),
        _ => format!("{}:({text})", coord.index()),
    }
}

/// How a branch ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leaf {
    /// The constraints are unsatisfiable; the certificate is filled in on request.
    Closed { certificate: Option<String> },
    /// A complete branch with a satisfying valuation of its atoms.
    Open { model: Valuation },
}

/// One rule application that does not split the branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: String,
    pub premise: Item,
    pub added: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeEnd {
    Split {
        rule: String,
        premise: Item,
        children: Vec<ProofNode>,
    },
    Leaf(Leaf),
}

/// A stretch of a branch: constraints added on entry, non-splitting rule
/// applications, then a split or a leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub added: Vec<Item>,
    pub steps: Vec<Step>,
    pub end: NodeEnd,
}

impl ProofNode {
    pub fn leaves(&self) -> usize {
        match &self.end {
            NodeEnd::Leaf(_) => 1,
            NodeEnd::Split { children, .. } => children.iter().map(|c| c.leaves()).sum(),
        }
    }

    pub fn is_closed(&self) -> bool {
        match &self.end {
            NodeEnd::Leaf(Leaf::Closed { .. }) => true,
            NodeEnd::Leaf(Leaf::Open { .. }) => false,
            NodeEnd::Split { children, .. } => children.iter().all(|c| c.is_closed()),
        }
    }

    fn to_json(&self, t: &FormulaTable) -> Value {
        let items = |xs: &[Item]| Value::from(xs.iter().map(|x| x.render(t)).collect::<Vec<_>>());
        let mut obj = serde_json::Map::new();
        obj.insert("added".into(), items(&self.added));
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "rule": s.rule,
                    "premise": s.premise.render(t),
                    "added": items(&s.added),
                })
            })
            .collect();
        obj.insert("steps".into(), steps.into());
        match &self.end {
            NodeEnd::Split {
                rule,
                premise,
                children,
            } => {
                obj.insert("rule".into(), rule.as_str().into());
                obj.insert("premise".into(), premise.render(t).into());
                obj.insert(
                    "children".into(),
                    children.iter().map(|c| c.to_json(t)).collect::<Vec<_>>().into(),
                );
            }
            NodeEnd::Leaf(Leaf::Closed { certificate }) => {
                let mut leaf = json!({ "closed": true });
                if let Some(c) = certificate {
                    leaf["certificate"] = c.clone().into();
                }
                obj.insert("leaf".into(), leaf);
            }
            NodeEnd::Leaf(Leaf::Open { model }) => {
                obj.insert("leaf".into(), json!({ "closed": false, "model": model }));
            }
        }
        Value::Object(obj)
    }

    fn write_text(&self, t: &FormulaTable, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        for a in &self.added {
            let _ = writeln!(out, "{pad}+ {}", a.render(t));
        }
        for s in &self.steps {
            let added: Vec<String> = s.added.iter().map(|x| x.render(t)).collect();
            let _ = writeln!(out, "{pad}[{}] {}  =>  {}", s.rule, s.premise.render(t), added.join(", "));
        }
        match &self.end {
            NodeEnd::Split {
                rule,
                premise,
                children,
            } => {
                let _ = writeln!(out, "{pad}[{rule}] {} splits", premise.render(t));
                for (i, c) in children.iter().enumerate() {
                    let _ = writeln!(out, "{pad}branch {}:", i + 1);
                    c.write_text(t, depth + 1, out);
                }
            }
            NodeEnd::Leaf(Leaf::Closed { certificate }) => {
                let _ = writeln!(out, "{pad}closed");
                if let Some(c) = certificate {
                    for line in c.lines() {
                        let _ = writeln!(out, "{pad}  {line}");
                    }
                }
            }
            NodeEnd::Leaf(Leaf::Open { model }) => {
                let _ = writeln!(out, "{pad}open: {model}");
            }
        }
    }
}

/// A tableau: its root constraints and the explored tree.
#[derive(Clone, Debug)]
pub struct ProofTree {
    pub table: Arc<FormulaTable>,
    pub root: Vec<Item>,
    pub tree: ProofNode,
}

impl ProofTree {
    pub fn to_json(&self) -> Value {
        json!({
            "root": self.root.iter().map(|x| x.render(&self.table)).collect::<Vec<_>>(),
            "tree": self.tree.to_json(&self.table),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let root: Vec<String> = self.root.iter().map(|x| x.render(&self.table)).collect();
        let _ = writeln!(out, "root: {}", root.join(", "));
        self.tree.write_text(&self.table, 0, &mut out);
        out
    }

    pub fn leaves(&self) -> usize {
        self.tree.leaves()
    }
}

/// Result of a validity or entailment query.
#[derive(Clone, Debug)]
pub enum Verdict {
    /// Every tableau closed.
    Valid { proofs: Vec<ProofTree> },
    /// A complete open branch; `value` is the conclusion's value under the
    /// countermodel and `proof` the tableau explored up to the open branch.
    Invalid {
        countermodel: Valuation,
        value: TruthPair,
        proof: ProofTree,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }

    pub fn countermodel(&self) -> Option<&Valuation> {
        match self {
            Verdict::Invalid { countermodel, .. } => Some(countermodel),
            Verdict::Valid { .. } => None,
        }
    }
}

/// Branching (one child per alternative) or branch-free rules with binary
/// selector variables. Only the Łukasiewicz calculus has the latter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Branching,
    Linear,
}

/// Options shared by the provers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProverConfig {
    pub mode: Mode,
    /// Attach closure certificates to closed leaves.
    pub explain: bool,
    /// Run independent root tableaux on the rayon pool.
    pub parallel: bool,
}

/// Split levels a constraint or a refutation depends on, as a bitset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Deps(Vec<u64>);

impl Deps {
    pub fn insert(&mut self, level: usize) {
        let w = level / 64;
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (level % 64);
    }

    pub fn remove(&mut self, level: usize) {
        if let Some(w) = self.0.get_mut(level / 64) {
            *w &= !(1 << (level % 64));
        }
    }

    pub fn contains(&self, level: usize) -> bool {
        self.0.get(level / 64).is_some_and(|w| w & (1 << (level % 64)) != 0)
    }

    pub fn union_with(&mut self, other: &Deps) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}
