//! Constraint tableaux for the Łukasiewicz logics.
//!
//! A labelled constraint `x:φ <= e` or `x:φ >= e` bounds coordinate `x` of
//! the value of `φ` by an affine expression `e` over fresh parameters. The
//! rules decompose compound formulas until only atoms are labelled; a branch
//! closes when its translation into linear inequalities is infeasible.

mod rules;

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{validate_signature, Formula, FormulaId, FormulaTable, LogicId, Node};
use crate::linear::{
    feasible_with_binaries, fm_feasible, fm_is_feasible, fm_refute, AffineExpr, Certificate, Feasibility,
    LinIneq, PreparedIneq, Source, Var,
};
use crate::proof::{
    render_term, Coord, Deps, Leaf, Mode, NodeEnd, ProofNode, ProofTree, ProverConfig, Step, Verdict,
};
use crate::semantics::{eval, is_designated, Filter, TruthPair, Valuation, Q};

use rules::splits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Le,
    Ge,
}

/// `coord:formula dir bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labelled {
    pub formula: FormulaId,
    pub coord: Coord,
    pub dir: Dir,
    pub bound: AffineExpr,
}

/// The variable standing for one coordinate of a formula's value.
pub fn formula_var(f: FormulaId, coord: Coord) -> Var {
    match coord {
        Coord::One => Var::FormulaLeft(f),
        Coord::Two => Var::FormulaRight(f),
    }
}

impl Labelled {
    pub fn to_ineq(&self) -> LinIneq {
        let v = formula_var(self.formula, self.coord);
        match self.dir {
            Dir::Le => LinIneq::le(v, self.bound.clone()),
            Dir::Ge => LinIneq::ge(v, self.bound.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LukConstraint {
    Labelled(Labelled),
    Numeric(LinIneq),
}

impl LukConstraint {
    pub fn to_ineq(&self) -> LinIneq {
        match self {
            LukConstraint::Labelled(l) => l.to_ineq(),
            LukConstraint::Numeric(n) => n.clone(),
        }
    }

    pub fn render(&self, table: &FormulaTable) -> String {
        match self {
            LukConstraint::Labelled(l) => {
                let op = match l.dir {
                    Dir::Le => "<=",
                    Dir::Ge => ">=",
                };
                format!("{} {op} {}", render_term(l.coord, l.formula, table), l.bound)
            }
            LukConstraint::Numeric(n) => n.to_string(),
        }
    }
}

/// The constraints of one branch.
#[derive(Clone, Debug, Default)]
pub struct LukBranch {
    pub constraints: Vec<LukConstraint>,
    // Translations, parallel to `constraints`.
    rows: Vec<Arc<PreparedIneq>>,
    // Split levels each constraint depends on, for backjumping.
    deps: Vec<Deps>,
    seen: HashSet<LukConstraint>,
    plain: VecDeque<(Labelled, Deps)>,
    split: VecDeque<(Labelled, Deps)>,
}

impl LukBranch {
    pub fn is_complete(&self) -> bool {
        self.plain.is_empty() && self.split.is_empty()
    }
}

/// Replaces every labelled constraint by the inequality on its formula
/// variable.
pub fn translate(b: &LukBranch) -> Vec<LinIneq> {
    b.constraints.iter().map(LukConstraint::to_ineq).collect()
}

/// Whether the translation of `b` has no solution in `[0,1]`.
pub fn branch_closed(b: &LukBranch) -> bool {
    !fm_is_feasible(&b.rows)
}

/// Formulas, fresh-variable counters and options of one tableau.
#[derive(Clone, Debug)]
pub struct LukTableau {
    table: FormulaTable,
    mode: Mode,
    explain: bool,
    params: u32,
    binaries: u32,
}

impl LukTableau {
    pub fn new(cfg: &ProverConfig) -> Self {
        LukTableau {
            table: FormulaTable::new(),
            mode: cfg.mode,
            explain: cfg.explain,
            params: 0,
            binaries: 0,
        }
    }

    pub fn intern(&mut self, f: &Formula) -> FormulaId {
        self.table.intern(f)
    }

    pub fn table(&self) -> &FormulaTable {
        &self.table
    }

    pub fn fresh_param(&mut self) -> AffineExpr {
        self.params += 1;
        AffineExpr::var(Var::Param(self.params - 1))
    }

    fn fresh_binary(&mut self) -> AffineExpr {
        self.binaries += 1;
        AffineExpr::var(Var::Binary(self.binaries - 1))
    }

    fn binary_vars(&self) -> BTreeSet<Var> {
        (0..self.binaries).map(Var::Binary).collect()
    }

    /// Roots refuting `f`: value below `x` in the first coordinate, or
    /// above `y` in the second. Premises are asserted designated in both.
    pub fn roots(&mut self, premises: &[Formula], f: &Formula, d: &Filter) -> [Vec<LukConstraint>; 2] {
        let target = self.intern(f);
        let mut shared = Vec::new();
        for p in premises {
            let id = self.intern(p);
            shared.push(LukConstraint::Labelled(Labelled {
                formula: id,
                coord: Coord::One,
                dir: Dir::Ge,
                bound: AffineExpr::constant(d.x.clone()),
            }));
            shared.push(LukConstraint::Labelled(Labelled {
                formula: id,
                coord: Coord::Two,
                dir: Dir::Le,
                bound: AffineExpr::constant(d.y.clone()),
            }));
        }
        let c = self.fresh_param();
        let dd = self.fresh_param();
        let mut a = vec![
            LukConstraint::Labelled(Labelled {
                formula: target,
                coord: Coord::One,
                dir: Dir::Le,
                bound: c.clone(),
            }),
            LukConstraint::Numeric(LinIneq::lt(c, AffineExpr::constant(d.x.clone()))),
        ];
        let mut b = vec![
            LukConstraint::Labelled(Labelled {
                formula: target,
                coord: Coord::Two,
                dir: Dir::Ge,
                bound: dd.clone(),
            }),
            LukConstraint::Numeric(LinIneq::gt(dd, AffineExpr::constant(d.y.clone()))),
        ];
        a.extend(shared.iter().cloned());
        b.extend(shared);
        [a, b]
    }

    /// Adds `c` unless already present; compound labels are queued.
    fn push(&self, b: &mut LukBranch, c: LukConstraint, deps: &Deps) -> bool {
        if !b.seen.insert(c.clone()) {
            return false;
        }
        if let LukConstraint::Labelled(l) = &c {
            let node = self.table.node(l.formula);
            if !node.is_atom() {
                if self.mode == Mode::Branching && splits(node, l) {
                    b.split.push_back((l.clone(), deps.clone()));
                } else {
                    b.plain.push_back((l.clone(), deps.clone()));
                }
            }
        }
        b.rows.push(Arc::new(PreparedIneq::new(c.to_ineq())));
        b.constraints.push(c);
        b.deps.push(deps.clone());
        true
    }

    fn branch(&self, root: Vec<LukConstraint>) -> LukBranch {
        let mut b = LukBranch::default();
        for c in root {
            self.push(&mut b, c, &Deps::default());
        }
        b
    }

    /// Every complete branch below `root`, without closing early.
    pub fn saturate(&mut self, root: Vec<LukConstraint>) -> Vec<LukBranch> {
        let mut done = Vec::new();
        let mut todo = vec![self.branch(root)];
        while let Some(mut b) = todo.pop() {
            let (l, deps) = match b.plain.pop_front().or_else(|| b.split.pop_front()) {
                Some(x) => x,
                None => {
                    done.push(b);
                    continue;
                }
            };
            let exp = self.expand(&l).expect("queued labels are compound");
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

    /// A valuation of every atom in the table satisfying a complete branch,
    /// or `None` if the branch is closed.
    pub fn extract_countermodel(&self, b: &LukBranch) -> Option<Valuation> {
        let sys = translate(b);
        let bins = self.binary_vars();
        let out = if bins.is_empty() {
            fm_feasible(&sys, &BTreeSet::new())
        } else {
            feasible_with_binaries(&sys, &BTreeSet::new(), &bins)
        };
        match out {
            Feasibility::Sat(m) => Some(self.valuation(&m)),
            Feasibility::Unsat(_) => None,
        }
    }

    fn valuation(&self, m: &BTreeMap<Var, Q>) -> Valuation {
        let get = |v: Var| m.get(&v).cloned().unwrap_or_default();
        (0..self.table.len() as u32)
            .map(FormulaId)
            .filter_map(|id| match self.table.node(id) {
                Node::Atom(name) => Some((
                    name.to_string(),
                    TruthPair {
                        pos: get(Var::FormulaLeft(id)),
                        neg: get(Var::FormulaRight(id)),
                    },
                )),
                _ => None,
            })
            .collect()
    }

    /// Explores the tableau below `root` depth first and stops at the first
    /// complete open branch.
    ///
    /// A closed subtree reports the split levels its refutations depend on;
    /// when these do not include the split just taken, the remaining
    /// alternatives close for the same reason and are skipped.
    pub fn search(&mut self, root: Vec<LukConstraint>) -> (ProofNode, Option<Valuation>) {
        let b = self.branch(root);
        let (node, out) = self.explore(b, Vec::new(), 0);
        (node, out.ok())
    }

    fn conflict(b: &LukBranch, cert: &Certificate) -> Deps {
        let mut d = Deps::default();
        for (src, _) in &cert.combination {
            if let Source::Input(i) = src {
                d.union_with(&b.deps[*i]);
            }
        }
        d
    }

    fn explore(
        &mut self,
        mut b: LukBranch,
        added: Vec<LukConstraint>,
        depth: usize,
    ) -> (ProofNode, Result<Valuation, Deps>) {
        let added = added.into_iter().map(Into::into).collect();
        let mut steps = Vec::new();
        while let Some((l, deps)) = b.plain.pop_front() {
            let exp = self.expand(&l).expect("queued labels are compound");
            let mut new = Vec::new();
            for c in exp.branches.into_iter().next().expect("one alternative") {
                if self.push(&mut b, c.clone(), &deps) {
                    new.push(c.into());
                }
            }
            steps.push(Step {
                rule: exp.rule,
                premise: LukConstraint::Labelled(l).into(),
                added: new,
            });
        }
        let node = |end| ProofNode { added, steps, end };
        let sys = &b.rows;
        let Some((l, pdeps)) = b.split.pop_front() else {
            let bins = self.binary_vars();
            let out = if bins.is_empty() {
                fm_feasible(sys, &BTreeSet::new())
            } else {
                feasible_with_binaries(&translate(&b), &BTreeSet::new(), &bins)
            };
            return match out {
                Feasibility::Sat(m) => {
                    let model = self.valuation(&m);
                    (node(NodeEnd::Leaf(Leaf::Open { model: model.clone() })), Ok(model))
                }
                Feasibility::Unsat(r) => {
                    let certificate = self.explain.then(|| r.render(&translate(&b)));
                    let deps = match &r {
                        crate::linear::Refutation::Farkas(c) => Self::conflict(&b, c),
                        _ => Deps::default(),
                    };
                    (node(NodeEnd::Leaf(Leaf::Closed { certificate })), Err(deps))
                }
            };
        };
        if let Some(cert) = fm_refute(sys) {
            let certificate = self.explain.then(|| cert.render(sys));
            let deps = Self::conflict(&b, &cert);
            return (node(NodeEnd::Leaf(Leaf::Closed { certificate })), Err(deps));
        }
        let exp = self.expand(&l).expect("queued labels are compound");
        let mut adeps = pdeps.clone();
        adeps.insert(depth);
        let mut children = Vec::new();
        let mut conflict = Deps::default();
        let mut alternatives = exp.branches.into_iter().enumerate();
        let mut result = None;
        while let Some((k, concl)) = alternatives.next() {
            let mut nb = b.clone();
            let mut new = Vec::new();
            for c in concl {
                if self.push(&mut nb, c.clone(), &adeps) {
                    new.push(c);
                }
            }
            let (child, out) = self.explore(nb, new, depth + 1);
            children.push(child);
            match out {
                Ok(model) => {
                    result = Some(Ok(model));
                    break;
                }
                Err(d) if !d.contains(depth) => {
                    // The refutation ignores this split: every other
                    // alternative closes the same way.
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
            premise: LukConstraint::Labelled(l).into(),
            children,
        };
        (node(end), result.unwrap_or(Err(conflict)))
    }

    fn into_tree(self, root: Vec<LukConstraint>, tree: ProofNode) -> ProofTree {
        ProofTree {
            table: Arc::new(self.table),
            root: root.into_iter().map(Into::into).collect(),
            tree,
        }
    }
}

fn check_input(premises: &[Formula], f: &Formula, d: &Filter, logic: LogicId) -> Result<()> {
    if !logic.is_luk() {
        return Err(Error::WrongBase("this prover", "Łukasiewicz"));
    }
    d.check_for(logic)?;
    for g in premises.iter().chain([f]) {
        validate_signature(g, logic)?;
    }
    Ok(())
}

/// Decides whether `f` is designated under every valuation.
pub fn prove_valid(f: &Formula, d: &Filter, logic: LogicId, cfg: &ProverConfig) -> Result<Verdict> {
    prove_entailment(&[], f, d, logic, cfg)
}

/// Decides whether every valuation designating all of `premises` also
/// designates `f`.
pub fn prove_entailment(
    premises: &[Formula],
    f: &Formula,
    d: &Filter,
    logic: LogicId,
    cfg: &ProverConfig,
) -> Result<Verdict> {
    check_input(premises, f, d, logic)?;
    let mut tab = LukTableau::new(cfg);
    let [ra, rb] = tab.roots(premises, f, d);
    let run = |mut t: LukTableau, root: Vec<LukConstraint>| {
        let (node, model) = t.search(root.clone());
        (t.into_tree(root, node), model)
    };
    let (ta, tb) = (tab.clone(), tab);
    let (a, b) = if cfg.parallel {
        let (a, b) = rayon::join(|| run(ta, ra), || run(tb, rb));
        (a, Some(b))
    } else {
        let a = run(ta, ra);
        let b = a.1.is_none().then(|| run(tb, rb));
        (a, b)
    };
    let mut proofs = Vec::new();
    for (tree, model) in [Some(a), b].into_iter().flatten() {
        if let Some(v) = model {
            return invalid(premises, f, d, logic, v, tree);
        }
        proofs.push(tree);
    }
    Ok(Verdict::Valid { proofs })
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
