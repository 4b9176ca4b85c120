use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{fm_feasible, model_satisfies, Certificate, Feasibility, LinIneq, Var};
use crate::semantics::Q;

/// Why a system has no solution: a Farkas certificate, or a case split on
/// a binary variable with a refutation for each value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    Farkas(Certificate),
    Split {
        var: Var,
        zero: Box<Refutation>,
        one: Box<Refutation>,
    },
}

impl Refutation {
    /// Replays every certificate against `sys` with the binaries fixed
    /// along the path to it.
    pub fn check(&self, sys: &[LinIneq]) -> bool {
        self.check_under(sys, &mut BTreeMap::new())
    }

    fn check_under(&self, sys: &[LinIneq], fixed: &mut BTreeMap<Var, Q>) -> bool {
        match self {
            Refutation::Farkas(c) => {
                let sub: Vec<LinIneq> = sys.iter().map(|q| q.substitute(fixed)).collect();
                c.check(&sub)
            }
            Refutation::Split { var, zero, one } => {
                fixed.insert(*var, Q::zero());
                let a = zero.check_under(sys, fixed);
                fixed.insert(*var, Q::one());
                let b = one.check_under(sys, fixed);
                fixed.remove(var);
                a && b
            }
        }
    }

    /// Number of certificates in the tree.
    pub fn leaves(&self) -> usize {
        match self {
            Refutation::Farkas(_) => 1,
            Refutation::Split { zero, one, .. } => zero.leaves() + one.leaves(),
        }
    }

    pub fn render(&self, sys: &[LinIneq]) -> String {
        let mut out = String::new();
        self.render_under(sys, &mut BTreeMap::new(), &mut out);
        out
    }

    fn render_under(&self, sys: &[LinIneq], fixed: &mut BTreeMap<Var, Q>, out: &mut String) {
        match self {
            Refutation::Farkas(c) => {
                let sub: Vec<LinIneq> = sys.iter().map(|q| q.substitute(fixed)).collect();
                if !fixed.is_empty() {
                    let path: Vec<String> = fixed.iter().map(|(v, x)| format!("{v}={x}")).collect();
                    out.push_str(&format!("case {}:\n", path.join(", ")));
                }
                out.push_str(&c.render(&sub));
            }
            Refutation::Split { var, zero, one } => {
                fixed.insert(*var, Q::zero());
                zero.render_under(sys, fixed, out);
                fixed.insert(*var, Q::one());
                one.render_under(sys, fixed, out);
                fixed.remove(var);
            }
        }
    }
}

/// Decides `sys` with the variables in `binaries` restricted to `{0,1}`.
///
/// Depth-first over the binaries in order; every node first decides the
/// relaxation with the remaining binaries in `[0,1]` and prunes when it is
/// infeasible.
pub fn feasible_with_binaries(
    sys: &[LinIneq],
    vars: &BTreeSet<Var>,
    binaries: &BTreeSet<Var>,
) -> Feasibility {
    let order: Vec<Var> = binaries.iter().copied().collect();
    let result = search(sys, vars, &order, &mut BTreeMap::new());
    if let Feasibility::Sat(m) = &result {
        assert!(
            model_satisfies(sys, m, binaries),
            "mixed-integer model violates the input"
        );
    }
    result
}

fn search(sys: &[LinIneq], vars: &BTreeSet<Var>, bins: &[Var], fixed: &mut BTreeMap<Var, Q>) -> Feasibility {
    let sub: Vec<LinIneq> = sys.iter().map(|q| q.substitute(fixed)).collect();
    let free: BTreeSet<Var> = vars.iter().filter(|v| !fixed.contains_key(v)).copied().collect();
    let model = match fm_feasible(&sub, &free) {
        Feasibility::Unsat(r) => return Feasibility::Unsat(r),
        Feasibility::Sat(m) => m,
    };
    let open: Vec<Var> = bins.iter().filter(|b| !fixed.contains_key(b)).copied().collect();
    if open.iter().all(|b| model.get(b).is_none_or(|x| x.is_integer())) {
        let mut full = model;
        full.extend(fixed.iter().map(|(v, x)| (*v, x.clone())));
        for b in open {
            full.entry(b).or_insert_with(Q::zero);
        }
        return Feasibility::Sat(full);
    }
    let var = open[0];
    let mut refs = Vec::with_capacity(2);
    for value in [Q::zero(), Q::one()] {
        fixed.insert(var, value);
        let r = search(sys, vars, bins, fixed);
        fixed.remove(&var);
        match r {
            Feasibility::Sat(m) => return Feasibility::Sat(m),
            Feasibility::Unsat(r) => refs.push(r),
        }
    }
    let one = Box::new(refs.pop().expect("two refutations"));
    let zero = Box::new(refs.pop().expect("two refutations"));
    Feasibility::Unsat(Refutation::Split { var, zero, one })
}
