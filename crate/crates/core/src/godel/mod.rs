//! Constraint tableaux for the Gödel logics.
//!
//! Constraints compare coordinates of formula values with each other and
//! with the constants 0 and 1. Rules replace a compound side by its
//! immediate subformulas; a branch closes when its order graph has a strict
//! cycle. Validity does not depend on the filter, so a single tableau from
//! `1:φ < 1` decides it and the countermodel is rescaled to the filter asked
//! for.

mod rules;

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formula::{validate_signature, Formula, FormulaId, FormulaTable, LogicId, Node};
use crate::order::{OConstraint, OGraph, OTerm};
use crate::proof::{Coord, Deps, Leaf, NodeEnd, ProofNode, ProofTree, ProverConfig, Step, Verdict};
use crate::semantics::{dual_valuation, eval, is_designated, Filter, TruthPair, Valuation, Q};

use rules::Expansion;

/// The constraints of one branch.
#[derive(Clone, Debug, Default)]
pub struct GBranch {
    pub constraints: Vec<OConstraint>,
    deps: Vec<Deps>,
    seen: HashSet<OConstraint>,
    plain: VecDeque<(OConstraint, Expansion, Deps)>,
    split: VecDeque<(OConstraint, Expansion, Deps)>,
}

impl GBranch {
    pub fn is_complete(&self) -> bool {
        self.plain.is_empty() && self.split.is_empty()
    }

    pub fn graph(&self) -> OGraph {
        OGraph::new(&self.constraints)
    }
}

/// Formulas and options of one tableau.
#[derive(Clone, Debug)]
pub struct GodelTableau {
    table: FormulaTable,
    logic: LogicId,
    explain: bool,
}

impl GodelTableau {
    pub fn new(logic: LogicId, cfg: &ProverConfig) -> Self {
        GodelTableau {
            table: FormulaTable::new(),
            logic,
            explain: cfg.explain,
        }
    }

    pub fn intern(&mut self, f: &Formula) -> FormulaId {
        self.table.intern(f)
    }

    pub fn table(&self) -> &FormulaTable {
        &self.table
    }

    pub fn term(&mut self, coord: Coord, f: &Formula) -> OTerm {
        OTerm::Term(coord, self.intern(f))
    }

    fn push(&self, b: &mut GBranch, c: OConstraint, deps: &Deps) -> bool {
        if !b.seen.insert(c.clone()) {
            return false;
        }
        if let Some(exp) = self.expand(&c) {
            let entry = (c.clone(), exp, deps.clone());
            if entry.1.branches.len() > 1 {
                b.split.push_back(entry);
            } else {
                b.plain.push_back(entry);
            }
        }
        b.constraints.push(c);
        b.deps.push(deps.clone());
        true
    }

    fn branch(&self, root: Vec<OConstraint>) -> GBranch {
        let mut b = GBranch::default();
        for c in root {
            self.push(&mut b, c, &Deps::default());
        }
        b
    }

    /// Every complete branch below `root`, without closing early.
    pub fn saturate(&self, root: Vec<OConstraint>) -> Vec<GBranch> {
        let mut done = Vec::new();
        let mut todo = vec![self.branch(root)];
        while let Some(mut b) = todo.pop() {
            let Some((_, exp, deps)) = b.plain.pop_front().or_else(|| b.split.pop_front()) else {
                done.push(b);
                continue;
            };
            for concl in exp.branches.into_iter().rev() {
                let mut nb = b.clone();
                for c in concl {
                    self.push(&mut nb, c, &deps);
                }
                todo.push(nb);
            }
        }
        done
    }

    /// The class-counting valuation of a complete branch's atom constraints,
    /// checked against every constraint of the branch. `Ok(None)` if closed.
    pub fn extract_countermodel(&self, b: &GBranch) -> Result<Option<Valuation>> {
        let atomic: Vec<OConstraint> = b.constraints.iter().filter(|c| !self.is_compound(c)).cloned().collect();
        let Some(model) = OGraph::new(&atomic).model() else {
            return Ok(None);
        };
        let get = |c: Coord, id: FormulaId| model.get(&OTerm::Term(c, id)).cloned().unwrap_or_default();
        let v: Valuation = (0..self.table.len() as u32)
            .map(FormulaId)
            .filter_map(|id| match self.table.node(id) {
                Node::Atom(name) => Some((
                    name.to_string(),
                    TruthPair {
                        pos: get(Coord::One, id),
                        neg: get(Coord::Two, id),
                    },
                )),
                _ => None,
            })
            .collect();
        for c in &b.constraints {
            if !self.satisfied(c, &v)? {
                return Err(Error::Internal(format!(
                    "valuation {v} violates branch constraint {}",
                    c.render(&self.table)
                )));
            }
        }
        Ok(Some(v))
    }

    /// Whether `v` satisfies `c`, evaluating formula terms.
    pub fn satisfied(&self, c: &OConstraint, v: &Valuation) -> Result<bool> {
        let value = |t: OTerm| -> Result<Q> {
            Ok(match t {
                OTerm::Zero => Q::zero(),
                OTerm::One => Q::one(),
                OTerm::Term(coord, f) => {
                    let g = self.table.formula(f);
                    let t = eval(g, &v.completed_for(&g.atoms()), self.logic)?;
                    match coord {
                        Coord::One => t.pos,
                        Coord::Two => t.neg,
                    }
                }
            })
        };
        let (a, b) = (value(c.lhs)?, value(c.rhs)?);
        Ok(c.holds(|t| if t == c.lhs { a.clone() } else { b.clone() }))
    }

    /// Explores the tableau below `root` depth first and stops at the first
    /// complete open branch.
    pub fn search(&self, root: Vec<OConstraint>) -> Result<(ProofNode, Option<Valuation>)> {
        let (node, out) = self.explore(self.branch(root), Vec::new(), 0)?;
        Ok((node, out.ok()))
    }

    fn closure(&self, b: &GBranch) -> Option<(Option<String>, Deps)> {
        let cycle = b.graph().cycle()?;
        let mut deps = Deps::default();
        for &i in &cycle {
            deps.union_with(&b.deps[i]);
        }
        let certificate = self.explain.then(|| {
            let parts: Vec<String> = cycle.iter().map(|&i| b.constraints[i].render(&self.table)).collect();
            format!("cycle: {}", parts.join(", "))
        });
        Some((certificate, deps))
    }

    fn explore(
        &self,
        mut b: GBranch,
        added: Vec<OConstraint>,
        depth: usize,
    ) -> Result<(ProofNode, std::result::Result<Valuation, Deps>)> {
        let added = added.into_iter().map(Into::into).collect();
        let mut steps = Vec::new();
        while let Some((premise, exp, deps)) = b.plain.pop_front() {
            let mut new = Vec::new();
            for c in exp.branches.into_iter().next().expect("one alternative") {
                if self.push(&mut b, c.clone(), &deps) {
                    new.push(c.into());
                }
            }
            steps.push(Step {
                rule: exp.rule,
                premise: premise.into(),
                added: new,
            });
        }
        let node = |end| ProofNode { added, steps, end };
        if let Some((certificate, deps)) = self.closure(&b) {
            return Ok((node(NodeEnd::Leaf(Leaf::Closed { certificate })), Err(deps)));
        }
        let Some((premise, exp, pdeps)) = b.split.pop_front() else {
            let model = self
                .extract_countermodel(&b)?
                .ok_or_else(|| Error::Internal("open branch without a model".into()))?;
            return Ok((node(NodeEnd::Leaf(Leaf::Open { model: model.clone() })), Ok(model)));
        };
        let mut adeps = pdeps.clone();
        adeps.insert(depth);
        let mut children = Vec::new();
        let mut conflict = Deps::default();
        let mut result = None;
        let mut alternatives = exp.branches.into_iter().enumerate();
        while let Some((k, concl)) = alternatives.next() {
            let mut nb = b.clone();
            let mut new = Vec::new();
            for c in concl {
                if self.push(&mut nb, c.clone(), &adeps) {
                    new.push(c);
                }
            }
            let (child, out) = self.explore(nb, new, depth + 1)?;
            children.push(child);
            match out {
                Ok(model) => {
                    result = Some(Ok(model));
                    break;
                }
                Err(d) if !d.contains(depth) => {
                    for (_, rest) in alternatives.by_ref() {
                        children.push(ProofNode {
                            added: rest.into_iter().map(Into::into).collect(),
                            steps: Vec::new(),
                            end: NodeEnd::Leaf(Leaf::Closed {
                                certificate: self.explain.then(|| format!("as in branch {}", k + 1)),
                            }),
                        });
                    }
                    result = Some(Err(d));
                    break;
                }
                Err(mut d) => {
                    d.remove(depth);
                    conflict.union_with(&d);
                    conflict.union_with(&pdeps);
                }
            }
        }
        let end = NodeEnd::Split {
            rule: exp.rule,
            premise: premise.into(),
            children,
        };
        Ok((node(end), result.unwrap_or(Err(conflict))))
    }

    fn into_tree(self, root: Vec<OConstraint>, tree: ProofNode) -> ProofTree {
        ProofTree {
            table: Arc::new(self.table),
            root: root.into_iter().map(Into::into).collect(),
            tree,
        }
    }
}

fn check_input(premises: &[Formula], f: &Formula, d: &Filter, logic: LogicId) -> Result<()> {
    if !logic.is_godel() {
        return Err(Error::WrongBase("this prover", "Gödel"));
    }
    d.check_for(logic)?;
    for g in premises.iter().chain([f]) {
        validate_signature(g, logic)?;
    }
    Ok(())
}

fn is_trivial(d: &Filter) -> bool {
    d.x.is_zero() && d.y.is_one()
}

/// Runs the tableaux from `roots` (sequentially or on the rayon pool) and
/// returns the closed trees, or the first open tree with its model.
fn run_all(
    tab: &GodelTableau,
    roots: Vec<Vec<OConstraint>>,
    cfg: &ProverConfig,
) -> Result<std::result::Result<Vec<ProofTree>, (Valuation, ProofTree)>> {
    let run = |root: Vec<OConstraint>| -> Result<(ProofTree, Option<Valuation>)> {
        let t = tab.clone();
        let (node, model) = t.search(root.clone())?;
        Ok((t.into_tree(root, node), model))
    };
    let outs: Vec<Result<(ProofTree, Option<Valuation>)>> = if cfg.parallel {
        use rayon::prelude::*;
        roots.into_par_iter().map(run).collect()
    } else {
        let mut outs = Vec::new();
        for root in roots {
            let out = run(root)?;
            let open = out.1.is_some();
            outs.push(Ok(out));
            if open {
                break;
            }
        }
        outs
    };
    let mut proofs = Vec::new();
    for out in outs {
        let (tree, model) = out?;
        if let Some(v) = model {
            return Ok(Err((v, tree)));
        }
        proofs.push(tree);
    }
    Ok(Ok(proofs))
}

/// Decides whether `f` is designated under every valuation. The verdict is
/// the same for every non-trivial filter; only the countermodel depends on
/// `d`.
pub fn g_prove_valid(f: &Formula, d: &Filter, logic: LogicId, cfg: &ProverConfig) -> Result<Verdict> {
    check_input(&[], f, d, logic)?;
    if is_trivial(d) {
        return Ok(Verdict::Valid { proofs: Vec::new() });
    }
    let mut tab = GodelTableau::new(logic, cfg);
    let t = tab.term(Coord::One, f);
    match run_all(&tab, vec![vec![OConstraint::lt(t, OTerm::One)]], cfg)? {
        Ok(proofs) => Ok(Verdict::Valid { proofs }),
        Err((v, proof)) => {
            let countermodel = rescale(f, &v, d, logic)?;
            invalid(&[], f, d, logic, countermodel, proof)
        }
    }
}

/// Decides whether every valuation designating all of `premises` also
/// designates `f`. Only filters with both bounds in `{0, 1}` are expressible
/// with the constants of the calculus.
pub fn g_prove_entailment(
    premises: &[Formula],
    f: &Formula,
    d: &Filter,
    logic: LogicId,
    cfg: &ProverConfig,
) -> Result<Verdict> {
    check_input(premises, f, d, logic)?;
    let constant = |v: &Q| v.is_zero() || v.is_one();
    if !constant(&d.x) || !constant(&d.y) {
        return Err(Error::Filter {
            filter: d.to_string(),
            logic,
            reason: "Gödel entailment needs a filter with x, y in {0, 1}",
        });
    }
    let bound = |v: &Q| if v.is_one() { OTerm::One } else { OTerm::Zero };
    let (x, y) = (bound(&d.x), bound(&d.y));
    let mut tab = GodelTableau::new(logic, cfg);
    let mut shared = Vec::new();
    for p in premises {
        if d.x.is_one() {
            shared.push(OConstraint::le(x, tab.term(Coord::One, p)));
        }
        if d.y.is_zero() {
            shared.push(OConstraint::le(tab.term(Coord::Two, p), y));
        }
    }
    // Roots whose bound is 0 from below or 1 from above close at once and
    // are left out.
    let mut roots = Vec::new();
    if d.x.is_one() {
        roots.push(vec![OConstraint::lt(tab.term(Coord::One, f), x)]);
    }
    if d.y.is_zero() {
        roots.push(vec![OConstraint::lt(y, tab.term(Coord::Two, f))]);
    }
    for r in &mut roots {
        r.extend(shared.iter().cloned());
    }
    match run_all(&tab, roots, cfg)? {
        Ok(proofs) => Ok(Verdict::Valid { proofs }),
        Err((v, proof)) => invalid(premises, f, d, logic, v, proof),
    }
}

/// Maps a valuation with `v(f).pos < 1` to one under which `f` fails `d`,
/// using strictly increasing maps of `[0,1]` that fix 0 and 1. Gödel
/// connectives commute with such maps.
fn rescale(f: &Formula, v: &Valuation, d: &Filter, logic: LogicId) -> Result<Valuation> {
    let map = |v: &Valuation, h: &dyn Fn(&Q) -> Q| -> Valuation {
        v.iter()
            .map(|(a, t)| {
                (
                    a.clone(),
                    TruthPair {
                        pos: h(&t.pos),
                        neg: h(&t.neg),
                    },
                )
            })
            .collect()
    };
    let two = Q::from_integer(2.into());
    if !d.x.is_zero() {
        // Values below 1 land below x / 2.
        let k = &d.x / &two;
        return Ok(map(v, &|t| if t.is_one() { Q::one() } else { t * &k }));
    }
    // x = 0 and y < 1: the conflated valuation has v(f).neg > 0, which is
    // pushed above (1 + y) / 2.
    if logic.is_weak() {
        return Err(Error::Internal(format!("no countermodel for {f} at a trivial filter")));
    }
    let k = (Q::one() - &d.y) / &two;
    Ok(map(&dual_valuation(v), &|t| if t.is_zero() { Q::zero() } else { Q::one() - (Q::one() - t) * &k }))
}

fn invalid(
    premises: &[Formula],
    f: &Formula,
    d: &Filter,
    logic: LogicId,
    countermodel: Valuation,
    proof: ProofTree,
) -> Result<Verdict> {
    let value = eval(f, &countermodel, logic)?;
    if is_designated(&value, d) {
        return Err(Error::Internal(format!("countermodel {countermodel} designates the conclusion")));
    }
    for p in premises {
        if !is_designated(&eval(p, &countermodel, logic)?, d) {
            return Err(Error::Internal(format!("countermodel {countermodel} fails premise {p}")));
        }
    }
    Ok(Verdict::Invalid {
        countermodel,
        value,
        proof,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::order::ORel;
    use crate::semantics::q;
    use proptest::prelude::*;

    const G: LogicId = LogicId::GODEL_ARROW;
    const GW: LogicId = LogicId::GODEL_WARROW;

    fn valuation(vals: &[i64; 6]) -> Valuation {
        ["p", "q", "r"]
            .iter()
            .enumerate()
            .map(|(k, a)| (a.to_string(), TruthPair::from_ints(vals[2 * k], 4, vals[2 * k + 1], 4)))
            .collect()
    }

    // The premise holds under `v` iff some alternative holds under `v`.
    fn rule_is_exact(text: &str, logic: LogicId, v: &Valuation, coord: Coord, other: usize, rel: ORel, upper: bool) {
        let f = parse(text, logic).unwrap();
        let mut tab = GodelTableau::new(logic, &ProverConfig::default());
        let t = tab.term(coord, &f);
        let x = match other {
            0 => OTerm::Zero,
            1 => OTerm::One,
            2 => tab.term(Coord::One, &Formula::atom("r")),
            _ => tab.term(Coord::Two, &Formula::atom("r")),
        };
        let premise = if upper {
            OConstraint::new(t, rel, x)
        } else {
            OConstraint::new(x, rel, t)
        };
        let exp = tab.expand(&premise).unwrap();
        let holds = tab.satisfied(&premise, v).unwrap();
        let some = exp
            .branches
            .iter()
            .any(|alt| alt.iter().all(|c| tab.satisfied(c, v).unwrap()));
        assert_eq!(holds, some, "{} under {v} ({})", premise.render(tab.table()), exp.rule);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(600))]

        #[test]
        fn rules_are_exact(
            k in 0usize..8,
            vals in proptest::array::uniform6(0i64..=4),
            two in any::<bool>(),
            other in 0usize..4,
            strict in any::<bool>(),
            upper in any::<bool>(),
        ) {
            let (text, logic) = [
                ("!p", G),
                ("p & q", G),
                ("p | q", G),
                ("p -> q", G),
                ("p -< q", G),
                ("p ~> q", GW),
                ("0", G),
                ("1", G),
            ][k];
            let coord = if two { Coord::Two } else { Coord::One };
            let rel = if strict { ORel::Lt } else { ORel::Le };
            rule_is_exact(text, logic, &valuation(&vals), coord, other, rel, upper);
        }
    }

    fn valid(text: &str, logic: LogicId) -> bool {
        let f = parse(text, logic).unwrap();
        g_prove_valid(&f, &Filter::default_for(logic), logic, &ProverConfig::default())
            .unwrap()
            .is_valid()
    }

    #[test]
    fn small_validities() {
        assert!(valid("p -> p", G));
        assert!(valid("!!p -> p", G));
        assert!(valid("!(p & q) -> (!p | !q)", G));
        assert!(valid("(p -> q) | (q -> p)", G));
        assert!(valid("p ~> p", GW));
        assert!(!valid("p | !p", G));
        assert!(!valid("(p & !p) -> q", G));
        assert!(!valid("((p -> q) -> q) -> p", G));
    }

    #[test]
    fn countermodel_for_excluded_middle() {
        let f = parse("p | !p", G).unwrap();
        for d in [Filter::exact(), Filter::positive(), Filter::from_ints(1, 2, 1, 2), Filter::from_ints(0, 1, 1, 3)] {
            let v = g_prove_valid(&f, &d, G, &ProverConfig::default()).unwrap();
            let Verdict::Invalid { countermodel, value, .. } = v else {
                panic!("p | !p is not valid");
            };
            assert_eq!(eval(&f, &countermodel, G).unwrap(), value);
            assert!(!is_designated(&value, &d), "{d}: {countermodel}");
        }
    }

    #[test]
    fn trivial_filter_designates_everything() {
        let f = parse("p", G).unwrap();
        assert!(g_prove_valid(&f, &Filter::from_ints(0, 1, 1, 1), G, &ProverConfig::default())
            .unwrap()
            .is_valid());
    }

    #[test]
    fn spec_rule_examples() {
        let mut tab = GodelTableau::new(G, &ProverConfig::default());
        let f = parse("!p", G).unwrap();
        let c = OConstraint::lt(tab.term(Coord::One, &f), OTerm::One);
        let exp = tab.expand(&c).unwrap();
        let p2 = tab.term(Coord::Two, &Formula::atom("p"));
        assert_eq!(exp.branches, vec![vec![OConstraint::lt(p2, OTerm::One)]]);

        let f = parse("p & q", G).unwrap();
        let c = OConstraint::lt(tab.term(Coord::One, &f), OTerm::One);
        assert_eq!(tab.expand(&c).unwrap().branches.len(), 2);

        let f = parse("p -> q", G).unwrap();
        let c = OConstraint::lt(tab.term(Coord::One, &f), OTerm::One);
        let exp = tab.expand(&c).unwrap();
        let p1 = tab.term(Coord::One, &Formula::atom("p"));
        let q1 = tab.term(Coord::One, &Formula::atom("q"));
        assert_eq!(
            exp.branches,
            vec![vec![OConstraint::lt(q1, OTerm::One), OConstraint::lt(q1, p1)]]
        );
    }

    #[test]
    fn saturated_branches_have_models() {
        let f = parse("(p -> q) | (r & !p)", G).unwrap();
        let mut tab = GodelTableau::new(G, &ProverConfig::default());
        let t = tab.term(Coord::One, &f);
        let branches = tab.saturate(vec![OConstraint::lt(t, OTerm::One)]);
        assert!(branches.len() > 1);
        let mut open = 0;
        for b in &branches {
            assert!(b.is_complete());
            if let Some(v) = tab.extract_countermodel(b).unwrap() {
                open += 1;
                assert!(eval(&f, &v, G).unwrap().pos < q(1, 1));
            } else {
                assert!(b.graph().closed());
            }
        }
        assert!(open > 0);
    }

    #[test]
    fn entailment() {
        let cfg = ProverConfig::default();
        let p = parse("p", G).unwrap();
        let np = parse("!p", G).unwrap();
        let pq = parse("p -> q", G).unwrap();
        let q_ = parse("q", G).unwrap();
        assert!(g_prove_entailment(&[p.clone()], &p, &Filter::exact(), G, &cfg).unwrap().is_valid());
        assert!(g_prove_entailment(&[pq, p.clone()], &q_, &Filter::exact(), G, &cfg).unwrap().is_valid());
        let v = g_prove_entailment(&[p.clone(), np.clone()], &q_, &Filter::positive(), G, &cfg).unwrap();
        assert!(!v.is_valid());
        // Explosion holds at (1,0): no valuation designates both p and !p.
        assert!(g_prove_entailment(&[p.clone(), np], &q_, &Filter::exact(), G, &cfg).unwrap().is_valid());
        assert!(matches!(
            g_prove_entailment(&[p.clone()], &q_, &Filter::from_ints(1, 2, 1, 2), G, &cfg),
            Err(Error::Filter { .. })
        ));
        let pw = parse("p", GW).unwrap();
        let v = g_prove_entailment(&[pw.clone()], &pw, &Filter::positive(), GW, &cfg).unwrap();
        let Verdict::Valid { proofs } = v else { panic!() };
        assert_eq!(proofs.len(), 1);
    }

    #[test]
    fn explain_reports_cycles() {
        let f = parse("p -> p", G).unwrap();
        let cfg = ProverConfig {
            explain: true,
            ..Default::default()
        };
        let Verdict::Valid { proofs } = g_prove_valid(&f, &Filter::exact(), G, &cfg).unwrap() else {
            panic!("p -> p is valid");
        };
        let text = proofs[0].render_text();
        assert!(text.contains("cycle:"), "{text}");
    }

    #[test]
    fn parallel_agrees() {
        let cfg = ProverConfig {
            parallel: true,
            ..Default::default()
        };
        let p = parse("p", G).unwrap();
        let q_ = parse("q | p", G).unwrap();
        assert!(g_prove_entailment(&[p], &q_, &Filter::exact(), G, &cfg).unwrap().is_valid());
    }

    #[test]
    fn rejects_lukasiewicz() {
        let f = parse("p -> p", LogicId::LUK_ARROW).unwrap();
        assert!(g_prove_valid(&f, &Filter::exact(), LogicId::LUK_ARROW, &ProverConfig::default()).is_err());
    }
}
