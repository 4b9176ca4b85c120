use super::{Dir, Labelled, LukConstraint, LukTableau};
use crate::formula::Node;
use crate::linear::{AffineExpr, LinIneq};
use crate::proof::{Coord, Mode};

/// Conclusions of one rule application, one list per alternative.
#[derive(Clone, Debug)]
pub(crate) struct Expansion {
    pub rule: String,
    pub branches: Vec<Vec<LukConstraint>>,
}

fn lab(formula: crate::formula::FormulaId, coord: Coord, dir: Dir, bound: AffineExpr) -> LukConstraint {
    LukConstraint::Labelled(Labelled {
        formula,
        coord,
        dir,
        bound,
    })
}

fn num(ineq: LinIneq) -> LukConstraint {
    LukConstraint::Numeric(ineq)
}

// Coordinates where the lattice operation is a minimum.
fn is_min(node: &Node, coord: Coord) -> bool {
    matches!((node, coord), (Node::And(..), Coord::One) | (Node::Or(..), Coord::Two))
}

/// Whether the rule for `l` has more than one alternative in branching mode.
pub(crate) fn splits(node: &Node, l: &Labelled) -> bool {
    match node {
        Node::And(..) | Node::Or(..) => is_min(node, l.coord) == (l.dir == Dir::Le),
        Node::Imp(..) | Node::WImp(..) => {
            matches!((l.coord, l.dir), (Coord::One, Dir::Le) | (Coord::Two, Dir::Ge))
        }
        _ => false,
    }
}

fn conn_name(node: &Node) -> &'static str {
    match node {
        Node::Bot => "bot",
        Node::Top => "top",
        Node::Atom(_) => "atom",
        Node::Neg(_) => "neg",
        Node::And(..) => "and",
        Node::Or(..) => "or",
        Node::Imp(..) => "imp",
        Node::CoImp(..) => "coimp",
        Node::WImp(..) => "wimp",
    }
}

impl LukTableau {
    /// Applies the rule for the main connective of `l`; `None` on atoms.
    pub(crate) fn expand(&mut self, l: &Labelled) -> Option<Expansion> {
        let node = self.table.node(l.formula).clone();
        if node.is_atom() {
            return None;
        }
        let (c, d) = (l.coord, l.dir);
        let i = l.bound.clone();
        let one = || AffineExpr::int(1);
        let linear = self.mode == Mode::Linear && splits(&node, l);
        let branches: Vec<Vec<LukConstraint>> = match node {
            Node::Atom(_) => unreachable!(),
            Node::Bot | Node::Top => {
                // (0,1) for bottom, (1,0) for top.
                let bottom = matches!(node, Node::Bot);
                let v = AffineExpr::int(i64::from(bottom == (c == Coord::Two)));
                let ineq = match d {
                    Dir::Le => LinIneq::le(v, i),
                    Dir::Ge => LinIneq::ge(v, i),
                };
                vec![vec![num(ineq)]]
            }
            Node::Neg(a) => vec![vec![lab(a, c.other(), d, i)]],
            Node::And(a, b) | Node::Or(a, b) => {
                if !splits(&node, l) {
                    vec![vec![lab(a, c, d, i.clone()), lab(b, c, d, i)]]
                } else if linear {
                    let y = self.fresh_binary();
                    match d {
                        Dir::Le => vec![vec![
                            lab(a, c, d, i.clone() + y.clone()),
                            lab(b, c, d, i + one() - y),
                        ]],
                        Dir::Ge => vec![vec![
                            lab(a, c, d, i.clone() - y.clone()),
                            lab(b, c, d, i - one() + y),
                        ]],
                    }
                } else {
                    vec![vec![lab(a, c, d, i.clone())], vec![lab(b, c, d, i)]]
                }
            }
            Node::Imp(a, b) | Node::WImp(a, b) => {
                let weak = matches!(node, Node::WImp(..));
                let j = self.fresh_param();
                match (c, d) {
                    (Coord::One, Dir::Le) => {
                        let rest = |y: AffineExpr| {
                            vec![
                                lab(a, Coord::One, Dir::Ge, one() - i.clone() + j.clone() - y.clone()),
                                lab(b, Coord::One, Dir::Le, j.clone() + y),
                                num(LinIneq::le(j.clone(), i.clone())),
                            ]
                        };
                        if linear {
                            let y = self.fresh_binary();
                            let mut v = rest(y.clone());
                            v.push(num(LinIneq::le(y, i.clone())));
                            vec![v]
                        } else {
                            vec![vec![num(LinIneq::ge(i.clone(), one()))], rest(AffineExpr::int(0))]
                        }
                    }
                    (Coord::One, Dir::Ge) => vec![vec![
                        lab(a, Coord::One, Dir::Le, one() - i.clone() + j.clone()),
                        lab(b, Coord::One, Dir::Ge, j),
                    ]],
                    (Coord::Two, Dir::Le) if weak => vec![vec![
                        lab(a, Coord::One, Dir::Le, i + j.clone()),
                        lab(b, Coord::Two, Dir::Le, one() - j),
                    ]],
                    (Coord::Two, Dir::Le) => vec![vec![
                        lab(a, Coord::Two, Dir::Ge, j.clone()),
                        lab(b, Coord::Two, Dir::Le, i + j),
                    ]],
                    (Coord::Two, Dir::Ge) => {
                        let rest = |y: AffineExpr| {
                            let mut v = if weak {
                                vec![
                                    lab(a, Coord::One, Dir::Ge, i.clone() + j.clone() - y.clone()),
                                    lab(b, Coord::Two, Dir::Ge, one() - j.clone() - y),
                                ]
                            } else {
                                vec![
                                    lab(a, Coord::Two, Dir::Le, j.clone() + y.clone()),
                                    lab(b, Coord::Two, Dir::Ge, i.clone() + j.clone() - y),
                                ]
                            };
                            v.push(num(LinIneq::le(j.clone(), one() - i.clone())));
                            v
                        };
                        if linear {
                            let y = self.fresh_binary();
                            let mut v = rest(y.clone());
                            v.push(num(LinIneq::le(y, one() - i.clone())));
                            vec![v]
                        } else {
                            vec![vec![num(LinIneq::le(i.clone(), AffineExpr::int(0)))], rest(AffineExpr::int(0))]
                        }
                    }
                }
            }
            Node::CoImp(..) => unreachable!("co-implication outside the Łukasiewicz signature"),
        };
        let dir = match d {
            Dir::Le => "le",
            Dir::Ge => "ge",
        };
        let mut rule = format!("{}-{dir}-{}", conn_name(&node), c.index());
        if linear {
            rule.push_str("-lin");
        }
        Some(Expansion { rule, branches })
    }
}
