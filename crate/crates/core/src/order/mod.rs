//! Order constraints between coordinates of formula values, with closure
//! by strict cycles and rational models.

use std::collections::{BTreeMap, HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::formula::{FormulaId, FormulaTable};
use crate::proof::{render_term, Coord};
use crate::semantics::{q, Q};

/// A coordinate of a formula's value, or one of the constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OTerm {
    Zero,
    One,
    Term(Coord, FormulaId),
}

impl OTerm {
    pub fn render(&self, table: &FormulaTable) -> String {
        match self {
            OTerm::Zero => "0".into(),
            OTerm::One => "1".into(),
            OTerm::Term(c, f) => render_term(*c, *f, table),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ORel {
    Le,
    Lt,
}

impl ORel {
    pub fn symbol(self) -> &'static str {
        match self {
            ORel::Le => "<=",
            ORel::Lt => "<",
        }
    }
}

/// `lhs rel rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OConstraint {
    pub lhs: OTerm,
    pub rel: ORel,
    pub rhs: OTerm,
}

impl OConstraint {
    pub fn new(lhs: OTerm, rel: ORel, rhs: OTerm) -> Self {
        OConstraint { lhs, rel, rhs }
    }

    pub fn le(lhs: OTerm, rhs: OTerm) -> Self {
        OConstraint::new(lhs, ORel::Le, rhs)
    }

    pub fn lt(lhs: OTerm, rhs: OTerm) -> Self {
        OConstraint::new(lhs, ORel::Lt, rhs)
    }

    pub fn holds(&self, value: impl Fn(OTerm) -> Q) -> bool {
        let (a, b) = (value(self.lhs), value(self.rhs));
        match self.rel {
            ORel::Le => a <= b,
            ORel::Lt => a < b,
        }
    }

    pub fn render(&self, table: &FormulaTable) -> String {
        format!("{} {} {}", self.lhs.render(table), self.rel.symbol(), self.rhs.render(table))
    }
}

/// Constraints as a graph with an edge `a -> b` for `a <= b` or `a < b`,
/// plus `0 <= t <= 1` for every term and `0 < 1`.
#[derive(Clone, Debug)]
pub struct OGraph {
    graph: DiGraph<OTerm, Option<usize>>,
    index: HashMap<OTerm, NodeIndex>,
    strict: Vec<bool>,
}

impl OGraph {
    pub fn new(cs: &[OConstraint]) -> Self {
        let mut g = OGraph {
            graph: DiGraph::new(),
            index: HashMap::new(),
            strict: Vec::new(),
        };
        let zero = g.node(OTerm::Zero);
        let one = g.node(OTerm::One);
        // Implicit edges carry `None`; strictness is looked up per edge index.
        g.graph.add_edge(zero, one, None);
        g.strict.push(true);
        for (i, c) in cs.iter().enumerate() {
            let (a, b) = (g.node(c.lhs), g.node(c.rhs));
            g.graph.add_edge(a, b, Some(i));
            g.strict.push(c.rel == ORel::Lt);
        }
        g
    }

    fn node(&mut self, t: OTerm) -> NodeIndex {
        if let Some(&n) = self.index.get(&t) {
            return n;
        }
        let n = self.graph.add_node(t);
        self.index.insert(t, n);
        if let OTerm::Term(..) = t {
            let zero = self.index[&OTerm::Zero];
            let one = self.index[&OTerm::One];
            self.graph.add_edge(zero, n, None);
            self.strict.push(false);
            self.graph.add_edge(n, one, None);
            self.strict.push(false);
        }
        n
    }

    fn components(&self) -> Vec<usize> {
        let mut comp = vec![0; self.graph.node_count()];
        for (i, scc) in tarjan_scc(&self.graph).into_iter().enumerate() {
            for n in scc {
                comp[n.index()] = i;
            }
        }
        comp
    }

    /// A strict edge inside a strongly connected component, if any.
    fn strict_cycle_edge(&self, comp: &[usize]) -> Option<petgraph::graph::EdgeIndex> {
        self.graph.edge_indices().find(|&e| {
            let (a, b) = self.graph.edge_endpoints(e).expect("edge exists");
            self.strict[e.index()] && comp[a.index()] == comp[b.index()]
        })
    }

    /// Unsatisfiable iff some strict constraint lies on a cycle.
    pub fn closed(&self) -> bool {
        self.strict_cycle_edge(&self.components()).is_some()
    }

    /// Indices of input constraints forming a cycle through a strict edge.
    /// Implicit bound edges on the cycle are left out.
    pub fn cycle(&self) -> Option<Vec<usize>> {
        let comp = self.components();
        let e = self.strict_cycle_edge(&comp)?;
        let (a, b) = self.graph.edge_endpoints(e).expect("edge exists");
        // Breadth-first path from b back to a.
        let mut prev: HashMap<NodeIndex, petgraph::graph::EdgeIndex> = HashMap::new();
        let mut queue = VecDeque::from([b]);
        while let Some(n) = queue.pop_front() {
            if n == a {
                break;
            }
            for edge in self.graph.edges(n) {
                use petgraph::visit::EdgeRef;
                let t = edge.target();
                if t != b && !prev.contains_key(&t) {
                    prev.insert(t, edge.id());
                    queue.push_back(t);
                }
            }
        }
        let mut edges = vec![e];
        let mut n = a;
        while n != b {
            let pe = prev[&n];
            edges.push(pe);
            n = self.graph.edge_endpoints(pe).expect("edge exists").0;
        }
        edges.reverse();
        Some(edges.into_iter().filter_map(|e| self.graph[e]).collect())
    }

    /// Values for every term: constants' classes are pinned, every other
    /// class gets `k / (N + 1)` where `k` counts the unpinned classes below
    /// or equal to it and `N` is their number. `None` when closed.
    pub fn model(&self) -> Option<BTreeMap<OTerm, Q>> {
        let comp = self.components();
        if self.strict_cycle_edge(&comp).is_some() {
            return None;
        }
        let zero = comp[self.index[&OTerm::Zero].index()];
        let one = comp[self.index[&OTerm::One].index()];
        let ncomp = comp.iter().max().map_or(0, |m| m + 1);
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for e in self.graph.edge_indices() {
            let (a, b) = self.graph.edge_endpoints(e).expect("edge exists");
            let (ca, cb) = (comp[a.index()], comp[b.index()]);
            if ca != cb {
                succ[ca].push(cb);
            }
        }
        let free: Vec<usize> = (0..ncomp).filter(|&c| c != zero && c != one).collect();
        let mut below = vec![0usize; ncomp];
        for &c in &free {
            let mut seen = vec![false; ncomp];
            let mut stack = vec![c];
            seen[c] = true;
            while let Some(x) = stack.pop() {
                for &y in &succ[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            for (d, s) in seen.iter().enumerate() {
                if *s {
                    below[d] += 1;
                }
            }
        }
        let den = free.len() as i64 + 1;
        let value = |c: usize| {
            if c == zero {
                q(0, 1)
            } else if c == one {
                q(1, 1)
            } else {
                q(below[c] as i64, den)
            }
        };
        Some(
            self.graph
                .node_indices()
                .map(|n| (self.graph[n], value(comp[n.index()])))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;

    fn terms() -> (FormulaTable, OTerm, OTerm, OTerm) {
        let mut t = FormulaTable::new();
        let p = t.intern(&Formula::atom("p"));
        let r = t.intern(&Formula::atom("r"));
        (t, OTerm::Term(Coord::One, p), OTerm::Term(Coord::Two, p), OTerm::Term(Coord::One, r))
    }

    #[test]
    fn strict_cycle_closes() {
        let (_, a, b, c) = terms();
        let cs = vec![OConstraint::le(a, b), OConstraint::le(b, c), OConstraint::lt(c, a)];
        let g = OGraph::new(&cs);
        assert!(g.closed());
        let mut cyc = g.cycle().unwrap();
        cyc.sort();
        assert_eq!(cyc, vec![0, 1, 2]);
        assert!(g.model().is_none());
    }

    #[test]
    fn weak_cycle_collapses_to_one_value() {
        let (_, a, b, c) = terms();
        let cs = vec![OConstraint::le(a, b), OConstraint::le(b, a), OConstraint::lt(a, c)];
        let m = OGraph::new(&cs).model().unwrap();
        assert_eq!(m[&a], m[&b]);
        assert!(m[&a] < m[&c]);
        assert!(m[&a] > q(0, 1) && m[&c] < q(1, 1));
        for c in &cs {
            assert!(c.holds(|t| m[&t].clone()));
        }
    }

    #[test]
    fn constants_pin_and_close() {
        let (_, a, _, _) = terms();
        let m = OGraph::new(&[OConstraint::le(OTerm::One, a)]).model().unwrap();
        assert_eq!(m[&a], q(1, 1));
        assert!(OGraph::new(&[OConstraint::lt(OTerm::One, a)]).closed());
        assert!(OGraph::new(&[OConstraint::lt(a, OTerm::Zero)]).closed());
        assert!(OGraph::new(&[OConstraint::le(OTerm::One, OTerm::Zero)]).closed());
    }

    #[test]
    fn render_uses_coordinates() {
        let (t, a, b, _) = terms();
        assert_eq!(OConstraint::lt(a, b).render(&t), "1:p < 2:p");
    }
}
