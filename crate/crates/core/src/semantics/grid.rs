//! Evaluation on a common-denominator grid.
//!
//! If every atom coordinate is `k/D` for one `D`, every connective of both
//! algebras maps the grid `{0, 1/D, ..., 1}` into itself: the Łukasiewicz
//! clauses only add, subtract and clamp, the Gödel clauses return an
//! argument or a constant. Values can therefore be carried as integer
//! numerators, which is what the samplers and oracles sweep over.

use num_traits::ToPrimitive;

use super::{q, Filter, TruthPair, Valuation};
use crate::error::{Error, Result};
use crate::formula::{validate_signature, Formula, FormulaTable, LogicId, Node};

#[derive(Clone, Copy, Debug)]
enum Op {
    Bot,
    Top,
    Atom(usize),
    Neg(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    CoImp(usize, usize),
    WImp(usize, usize),
}

/// One or more formulas compiled for integer grid evaluation, with shared
/// subformulas evaluated once.
#[derive(Clone, Debug)]
pub struct GridFormula {
    logic: LogicId,
    atoms: Vec<String>,
    ops: Vec<Op>,
    roots: Vec<usize>,
}

impl GridFormula {
    pub fn compile(f: &Formula, logic: LogicId) -> Result<Self> {
        Self::compile_many(std::slice::from_ref(f), logic)
    }

    /// Compiles several formulas over the union of their atoms.
    pub fn compile_many(fs: &[Formula], logic: LogicId) -> Result<Self> {
        let mut atoms = std::collections::BTreeSet::new();
        for f in fs {
            validate_signature(f, logic)?;
            atoms.extend(f.atoms());
        }
        let atoms: Vec<String> = atoms.into_iter().collect();
        let mut table = FormulaTable::new();
        let roots: Vec<usize> = fs.iter().map(|f| table.intern(f).0 as usize).collect();
        let ops = (0..table.len())
            .map(|i| {
                let id = crate::formula::FormulaId(i as u32);
                let c = |x: &crate::formula::FormulaId| x.0 as usize;
                match table.node(id) {
                    Node::Bot => Op::Bot,
                    Node::Top => Op::Top,
                    Node::Atom(p) => Op::Atom(
                        atoms
                            .binary_search_by(|a| a.as_str().cmp(p))
                            .expect("atom collected"),
                    ),
                    Node::Neg(a) => Op::Neg(c(a)),
                    Node::And(a, b) => Op::And(c(a), c(b)),
                    Node::Or(a, b) => Op::Or(c(a), c(b)),
                    Node::Imp(a, b) => Op::Imp(c(a), c(b)),
                    Node::CoImp(a, b) => Op::CoImp(c(a), c(b)),
                    Node::WImp(a, b) => Op::WImp(c(a), c(b)),
                }
            })
            .collect();
        Ok(GridFormula {
            logic,
            atoms,
            ops,
            roots,
        })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Evaluates every root. `vals[2i]`, `vals[2i+1]` are the numerators of
    /// atom `i`'s coordinates over denominator `den`.
    pub fn eval(&self, den: i64, vals: &[i64], out: &mut Vec<(i64, i64)>) -> Vec<(i64, i64)> {
        out.clear();
        let luk = self.logic.is_luk();
        let g_imp = |a: i64, b: i64| if a <= b { den } else { b };
        let g_coimp = |a: i64, b: i64| if a <= b { 0 } else { a };
        for op in &self.ops {
            let v = match *op {
                Op::Bot => (0, den),
                Op::Top => (den, 0),
                Op::Atom(i) => (vals[2 * i], vals[2 * i + 1]),
                Op::Neg(a) => {
                    let (p, n) = out[a];
                    (n, p)
                }
                Op::And(a, b) => (out[a].0.min(out[b].0), out[a].1.max(out[b].1)),
                Op::Or(a, b) => (out[a].0.max(out[b].0), out[a].1.min(out[b].1)),
                Op::Imp(a, b) => {
                    let ((a1, a2), (b1, b2)) = (out[a], out[b]);
                    if luk {
                        (den.min(den - a1 + b1), 0.max(b2 - a2))
                    } else {
                        (g_imp(a1, b1), g_coimp(b2, a2))
                    }
                }
                Op::CoImp(a, b) => {
                    let ((a1, a2), (b1, b2)) = (out[a], out[b]);
                    (g_coimp(a1, b1), g_imp(b2, a2))
                }
                Op::WImp(a, b) => {
                    let ((a1, _), (b1, b2)) = (out[a], out[b]);
                    if luk {
                        (den.min(den - a1 + b1), 0.max(a1 + b2 - den))
                    } else {
                        (g_imp(a1, b1), a1.min(b2))
                    }
                }
            };
            out.push(v);
        }
        self.roots.iter().map(|&r| out[r]).collect()
    }

    /// The rational valuation behind a grid point.
    pub fn valuation(&self, den: i64, vals: &[i64]) -> Valuation {
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (
                    a.clone(),
                    TruthPair {
                        pos: q(vals[2 * i], den),
                        neg: q(vals[2 * i + 1], den),
                    },
                )
            })
            .collect()
    }
}

/// Designation test on grid numerators: `pos >= ceil(x D)` and `neg <= floor(y D)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct GridFilter {
    min_pos: i64,
    max_neg: i64,
}

impl GridFilter {
    pub(crate) fn new(d: &Filter, den: i64) -> Result<Self> {
        let scale = |v: &super::Q, up: bool| {
            let s = v * super::Q::from_integer(den.into());
            let r = if up { s.ceil() } else { s.floor() };
            r.to_integer()
                .to_i64()
                .ok_or_else(|| Error::Internal("grid filter overflow".into()))
        };
        Ok(GridFilter {
            min_pos: scale(&d.x, true)?,
            max_neg: scale(&d.y, false)?,
        })
    }

    pub(crate) fn designated(&self, v: (i64, i64)) -> bool {
        v.0 >= self.min_pos && v.1 <= self.max_neg
    }
}

/// Calls `visit` on every point of `{0..=den}^coords` in lexicographic order
/// until it returns `true`. Returns whether it stopped early.
pub(crate) fn sweep(den: i64, coords: usize, mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    let mut point = vec![0i64; coords];
    loop {
        if visit(&point) {
            return true;
        }
        let mut i = coords;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if point[i] < den {
                point[i] += 1;
                break;
            }
            point[i] = 0;
        }
    }
}

/// Number of points `(den+1)^coords`, saturating.
pub(crate) fn grid_size(den: i64, coords: usize) -> u128 {
    let mut n: u128 = 1;
    for _ in 0..coords {
        n = n.saturating_mul((den + 1) as u128);
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::semantics::eval;
    use proptest::prelude::*;

    #[test]
    fn sweep_visits_every_point_once() {
        let mut n = 0;
        assert!(!sweep(2, 3, |_| {
            n += 1;
            false
        }));
        assert_eq!(n, 27);
        assert_eq!(grid_size(2, 3), 27);
        assert!(sweep(1, 0, |p| p.is_empty()));
    }

    #[test]
    fn grid_filter_rounds_toward_the_designated_side() {
        let g = GridFilter::new(&Filter::from_ints(2, 3, 1, 3), 4).unwrap();
        assert!(g.designated((3, 1)));
        assert!(!g.designated((2, 1)));
        assert!(!g.designated((3, 2)));
    }

    proptest! {
        #[test]
        fn agrees_with_exact_evaluation(
            logic_ix in 0usize..4,
            den in 1i64..12,
            seed in proptest::collection::vec(0i64..1000, 6),
        ) {
            let logic = LogicId::ALL[logic_ix];
            let text = match (logic.is_luk(), logic.is_weak()) {
                (_, true) => "(p ~> !q) & (q | r ~> p) ~> !(r & 0)",
                (true, false) => "(p -> !q) & (q | r -> p) -> !(r & 0)",
                (false, false) => "(p -> !q) & (q | r -< p) -> !(r & 1)",
            };
            let f = parse(text, logic).unwrap();
            let g = GridFormula::compile(&f, logic).unwrap();
            let vals: Vec<i64> = seed.iter().map(|s| s % (den + 1)).collect();
            let mut scratch = Vec::new();
            let got = g.eval(den, &vals, &mut scratch)[0];
            let exact = eval(&f, &g.valuation(den, &vals), logic).unwrap();
            prop_assert_eq!(TruthPair { pos: q(got.0, den), neg: q(got.1, den) }, exact);
        }
    }
}
