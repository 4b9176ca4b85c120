use std::collections::{BTreeMap, BTreeSet};

use fuzzy2d_core::linear::{
    feasible_with_binaries, fm_feasible, fm_feasible_with_order, AffineExpr, Feasibility, LinIneq,
    Rel, Var,
};
use fuzzy2d_core::semantics::{q, Q};
use proptest::prelude::*;

const GRID: i64 = 8;

fn system() -> impl Strategy<Value = Vec<LinIneq>> {
    let row = (
        proptest::collection::vec(-2i64..=2, 3),
        -4i64..=4,
        any::<bool>(),
    );
    proptest::collection::vec(row, 1..7).prop_map(|rows| {
        rows.into_iter()
            .map(|(cs, k, strict)| {
                let mut lhs = AffineExpr::constant(q(k, 2));
                for (i, c) in cs.into_iter().enumerate() {
                    if c != 0 {
                        lhs.add_term(Var::Param(i as u32), &q(c, 1));
                    }
                }
                let rel = if strict { Rel::Lt } else { Rel::Le };
                LinIneq::new(lhs, rel, AffineExpr::int(0))
            })
            .collect()
    })
}

fn grid_point(sys: &[LinIneq]) -> Option<BTreeMap<Var, Q>> {
    for a in 0..=GRID {
        for b in 0..=GRID {
            for c in 0..=GRID {
                let m: BTreeMap<Var, Q> = [(0, a), (1, b), (2, c)]
                    .into_iter()
                    .map(|(i, n)| (Var::Param(i), q(n, GRID)))
                    .collect();
                if sys.iter().all(|ineq| ineq.holds(&m)) {
                    return Some(m);
                }
            }
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn agrees_with_grid_search(sys in system()) {
        let vars: BTreeSet<Var> = (0..3).map(Var::Param).collect();
        match fm_feasible(&sys, &vars) {
            Feasibility::Sat(m) => {
                for ineq in &sys {
                    prop_assert!(ineq.holds(&m), "{ineq} fails under {m:?}");
                }
                for x in m.values() {
                    prop_assert!(*x >= q(0, 1) && *x <= q(1, 1));
                }
            }
            Feasibility::Unsat(r) => {
                prop_assert!(r.check(&sys));
                prop_assert!(grid_point(&sys).is_none());
            }
        }
    }

    #[test]
    fn verdict_does_not_depend_on_elimination_order(sys in system(), perm in Just(()).prop_perturb(|_, mut rng| {
        let mut order: Vec<u32> = vec![0, 1, 2];
        for i in (1..order.len()).rev() {
            order.swap(i, (rng.next_u32() as usize) % (i + 1));
        }
        order
    })) {
        let vars: BTreeSet<Var> = (0..3).map(Var::Param).collect();
        let order: Vec<Var> = perm.into_iter().map(Var::Param).collect();
        let a = fm_feasible(&sys, &vars).is_sat();
        let b = fm_feasible_with_order(&sys, &vars, &order).is_sat();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn binaries_agree_with_enumeration(sys in system()) {
        // Param(2) becomes a binary: feasible iff one of its two values is.
        let bin = Var::Binary(0);
        let swap: Vec<LinIneq> = sys
            .iter()
            .map(|ineq| {
                let mut e = ineq.normalized();
                if let Some(c) = e.terms.remove(&Var::Param(2)) {
                    e.add_term(bin, &c);
                }
                LinIneq::new(e, ineq.rel, AffineExpr::int(0))
            })
            .collect();
        let vars: BTreeSet<Var> = [Var::Param(0), Var::Param(1), bin].into_iter().collect();
        let bins: BTreeSet<Var> = [bin].into_iter().collect();
        let expected = [0, 1].into_iter().any(|v| {
            let fixed: BTreeMap<Var, Q> = [(bin, q(v, 1))].into_iter().collect();
            let sub: Vec<LinIneq> = swap.iter().map(|i| i.substitute(&fixed)).collect();
            fm_feasible(&sub, &BTreeSet::new()).is_sat()
        });
        match feasible_with_binaries(&swap, &vars, &bins) {
            Feasibility::Sat(m) => {
                prop_assert!(expected);
                prop_assert!(m[&bin] == q(0, 1) || m[&bin] == q(1, 1));
            }
            Feasibility::Unsat(r) => {
                prop_assert!(!expected);
                prop_assert!(r.check(&swap));
            }
        }
    }
}
