//! Exact feasibility of linear inequality systems over `[0,1]`-bounded
//! rational variables.
//!
//! Every variable carries the implicit bounds `0 <= v <= 1`. Systems are
//! decided by Fourier–Motzkin elimination ([`fm_feasible`]); an infeasible
//! system comes with a Farkas [`Certificate`] that can be replayed against
//! the input, a feasible one with a model that has been checked against
//! every input inequality. [`feasible_with_binaries`] adds `{0,1}`-valued
//! variables by depth-first enumeration.

mod bmip;
mod fm;
mod simplex;

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use bmip::{feasible_with_binaries, Refutation};
pub use fm::{fm_feasible, fm_feasible_with_order, fm_is_feasible, fm_refute};

use crate::formula::FormulaId;
use crate::semantics::{format_rational, Q};

/// A variable of a constraint system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Positive coordinate of a formula.
    FormulaLeft(FormulaId),
    /// Negative coordinate of a formula.
    FormulaRight(FormulaId),
    /// Bound parameter introduced by a rule or a root.
    Param(u32),
    /// `{0,1}`-valued selector of the branch-free rules.
    Binary(u32),
}

impl Var {
    pub fn is_binary(&self) -> bool {
        matches!(self, Var::Binary(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::FormulaLeft(id) => write!(f, "L{}", id.0),
            Var::FormulaRight(id) => write!(f, "R{}", id.0),
            Var::Param(i) => write!(f, "j{i}"),
            Var::Binary(i) => write!(f, "y{i}"),
        }
    }
}

/// `constant + sum coef * var`, with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AffineExpr {
    pub constant: Q,
    pub terms: BTreeMap<Var, Q>,
}

impl AffineExpr {
    pub fn constant(c: Q) -> Self {
        AffineExpr {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Q::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(v, Q::one());
        AffineExpr {
            constant: Q::zero(),
            terms,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, v: Var, c: &Q) {
        let e = self.terms.entry(v).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return AffineExpr::default();
        }
        AffineExpr {
            constant: &self.constant * k,
            terms: self.terms.iter().map(|(v, c)| (*v, c * k)).collect(),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.terms.keys()
    }

    /// Value under `model`; unassigned variables count as `0`.
    pub fn eval(&self, model: &BTreeMap<Var, Q>) -> Q {
        let mut acc = self.constant.clone();
        for (v, c) in &self.terms {
            if let Some(x) = model.get(v) {
                acc += c * x;
            }
        }
        acc
    }

    /// Replaces the variables present in `values` by their value.
    pub fn substitute(&self, values: &BTreeMap<Var, Q>) -> Self {
        let mut out = AffineExpr::constant(self.constant.clone());
        for (v, c) in &self.terms {
            match values.get(v) {
                Some(x) => out.constant += c * x,
                None => out.add_term(*v, c),
            }
        }
        out
    }
}

impl From<Var> for AffineExpr {
    fn from(v: Var) -> Self {
        AffineExpr::var(v)
    }
}

impl Add for AffineExpr {
    type Output = AffineExpr;
    fn add(mut self, rhs: AffineExpr) -> AffineExpr {
        self.constant += rhs.constant;
        for (v, c) in &rhs.terms {
            self.add_term(*v, c);
        }
        self
    }
}

impl Neg for AffineExpr {
    type Output = AffineExpr;
    fn neg(self) -> AffineExpr {
        self.scale(&-Q::one())
    }
}

impl Sub for AffineExpr {
    type Output = AffineExpr;
    fn sub(self, rhs: AffineExpr) -> AffineExpr {
        self + (-rhs)
    }
}

impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.terms {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "{v}")?;
            } else if mag.is_integer() {
                write!(f, "{}{v}", mag)?;
            } else {
                write!(f, "{}*{v}", format_rational(&mag))?;
            }
            first = false;
        }
        if first {
            return f.write_str(&format_q(&self.constant));
        }
        if !self.constant.is_zero() {
            let sign = if self.constant.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}", format_q(&self.constant.abs()))?;
        }
        Ok(())
    }
}

/// Rationals print as integers when possible.
pub(crate) fn format_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rel {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Le => "<=",
            Rel::Lt => "<",
        }
    }
}

/// `lhs rel rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinIneq {
    pub lhs: AffineExpr,
    pub rel: Rel,
    pub rhs: AffineExpr,
}

impl LinIneq {
    pub fn new(lhs: impl Into<AffineExpr>, rel: Rel, rhs: impl Into<AffineExpr>) -> Self {
        LinIneq {
            lhs: lhs.into(),
            rel,
            rhs: rhs.into(),
        }
    }

    pub fn le(lhs: impl Into<AffineExpr>, rhs: impl Into<AffineExpr>) -> Self {
        Self::new(lhs, Rel::Le, rhs)
    }

    pub fn lt(lhs: impl Into<AffineExpr>, rhs: impl Into<AffineExpr>) -> Self {
        Self::new(lhs, Rel::Lt, rhs)
    }

    pub fn ge(lhs: impl Into<AffineExpr>, rhs: impl Into<AffineExpr>) -> Self {
        Self::new(rhs, Rel::Le, lhs)
    }

    pub fn gt(lhs: impl Into<AffineExpr>, rhs: impl Into<AffineExpr>) -> Self {
        Self::new(rhs, Rel::Lt, lhs)
    }

    /// `lhs - rhs`, to be compared with `0`.
    pub fn normalized(&self) -> AffineExpr {
        self.lhs.clone() - self.rhs.clone()
    }

    pub fn is_strict(&self) -> bool {
        self.rel == Rel::Lt
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.lhs.vars().chain(self.rhs.vars()).copied().collect()
    }

    pub fn holds(&self, model: &BTreeMap<Var, Q>) -> bool {
        let e = self.normalized().eval(model);
        match self.rel {
            Rel::Le => !e.is_positive(),
            Rel::Lt => e.is_negative(),
        }
    }

    pub fn substitute(&self, values: &BTreeMap<Var, Q>) -> Self {
        LinIneq {
            lhs: self.lhs.substitute(values),
            rel: self.rel,
            rhs: self.rhs.substitute(values),
        }
    }
}

impl fmt::Display for LinIneq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

/// `sum terms + k rel 0` with coprime integer coefficients; equals the
/// normalized inequality times `scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRow {
    pub(crate) terms: Vec<(Var, BigInt)>,
    pub(crate) k: BigInt,
    pub(crate) strict: bool,
    pub(crate) scale: Q,
}

impl IntRow {
    pub fn new(q: &LinIneq) -> Self {
        let e = q.normalized();
        let mut lcm = e.constant.denom().clone();
        for c in e.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut terms: Vec<(Var, BigInt)> = e
            .terms
            .iter()
            .map(|(v, c)| (*v, (c * &lcm).to_integer()))
            .collect();
        let mut k = (&e.constant * &lcm).to_integer();
        let mut g = k.abs();
        for (_, c) in &terms {
            g = g.gcd(c);
        }
        if !g.is_zero() && !g.is_one() {
            for (_, c) in terms.iter_mut() {
                *c /= &g;
            }
            k /= &g;
        } else {
            g = BigInt::one();
        }
        IntRow {
            terms,
            k,
            strict: q.is_strict(),
            scale: Q::new(lcm, g),
        }
    }
}

/// An inequality with its integer row computed once, for systems that are
/// solved repeatedly with small changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreparedIneq {
    pub ineq: LinIneq,
    pub row: IntRow,
}

impl PreparedIneq {
    pub fn new(ineq: LinIneq) -> Self {
        let row = IntRow::new(&ineq);
        PreparedIneq { ineq, row }
    }
}

/// Anything usable as a row of a system.
pub trait AsIneq {
    fn ineq(&self) -> &LinIneq;
    fn int_row(&self) -> Cow<'_, IntRow>;
}

impl AsIneq for LinIneq {
    fn ineq(&self) -> &LinIneq {
        self
    }
    fn int_row(&self) -> Cow<'_, IntRow> {
        Cow::Owned(IntRow::new(self))
    }
}

impl AsIneq for PreparedIneq {
    fn ineq(&self) -> &LinIneq {
        &self.ineq
    }
    fn int_row(&self) -> Cow<'_, IntRow> {
        Cow::Borrowed(&self.row)
    }
}

impl<T: AsIneq> AsIneq for Arc<T> {
    fn ineq(&self) -> &LinIneq {
        T::ineq(self)
    }
    fn int_row(&self) -> Cow<'_, IntRow> {
        T::int_row(self)
    }
}

/// Where a certificate row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    /// The `i`-th input inequality.
    Input(usize),
    /// The implicit bound `0 <= v`.
    Lower(Var),
    /// The implicit bound `v <= 1`.
    Upper(Var),
}

/// Non-negative multipliers whose combination of the sources cancels every
/// variable and leaves a false constant inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub combination: Vec<(Source, Q)>,
}

impl Certificate {
    fn source_expr<S: AsIneq>(src: Source, sys: &[S]) -> Option<(AffineExpr, bool)> {
        match src {
            Source::Input(i) => sys.get(i).map(|q| (q.ineq().normalized(), q.ineq().is_strict())),
            Source::Lower(v) => Some((-AffineExpr::var(v), false)),
            Source::Upper(v) => Some((AffineExpr::var(v) - AffineExpr::int(1), false)),
        }
    }

    /// The constant `k` and strictness of the combined inequality `k rel 0`,
    /// or `None` if some variable does not cancel.
    pub fn replay<S: AsIneq>(&self, sys: &[S]) -> Option<(Q, Rel)> {
        let mut acc = AffineExpr::default();
        let mut strict = false;
        for (src, m) in &self.combination {
            if m.is_negative() {
                return None;
            }
            let (e, s) = Self::source_expr(*src, sys)?;
            strict |= s && m.is_positive();
            acc = acc + e.scale(m);
        }
        if !acc.is_constant() {
            return None;
        }
        Some((acc.constant, if strict { Rel::Lt } else { Rel::Le }))
    }

    /// Whether the replayed combination is contradictory (`k <= 0` with
    /// `k > 0`, or `k < 0` with `k >= 0`).
    pub fn check<S: AsIneq>(&self, sys: &[S]) -> bool {
        match self.replay(sys) {
            Some((k, Rel::Le)) => k.is_positive(),
            Some((k, Rel::Lt)) => !k.is_negative(),
            None => false,
        }
    }

    /// Human-readable trace: one line per source, then the contradiction.
    pub fn render<S: AsIneq>(&self, sys: &[S]) -> String {
        let mut out = String::new();
        for (src, m) in &self.combination {
            let what = match src {
                Source::Input(i) => sys.get(*i).map_or("?".into(), |q| q.ineq().to_string()),
                Source::Lower(v) => format!("0 <= {v}"),
                Source::Upper(v) => format!("{v} <= 1"),
            };
            out.push_str(&format!("{} x [{what}]\n", format_q(m)));
        }
        match self.replay(sys) {
            Some((k, rel)) => out.push_str(&format!("sum: {} {} 0\n", format_q(&k), rel.symbol())),
            None => out.push_str("sum: does not cancel\n"),
        }
        out
    }
}

/// Outcome of a feasibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Sat(BTreeMap<Var, Q>),
    Unsat(Refutation),
}

impl Feasibility {
    pub fn is_sat(&self) -> bool {
        matches!(self, Feasibility::Sat(_))
    }
}

/// Checks a model against the inputs and the implicit bounds.
pub fn model_satisfies<S: AsIneq>(sys: &[S], model: &BTreeMap<Var, Q>, binaries: &BTreeSet<Var>) -> bool {
    let in_unit = model
        .iter()
        .all(|(v, x)| !x.is_negative() && x <= &Q::one() && (!binaries.contains(v) || x.is_integer()));
    in_unit && sys.iter().all(|q| q.ineq().holds(model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::q;

    #[test]
    fn expressions() {
        let x = Var::Param(0);
        let y = Var::Param(1);
        let e = AffineExpr::int(1) - AffineExpr::var(x) + AffineExpr::var(y);
        assert_eq!(e.to_string(), "-j0 + j1 + 1");
        let z = e.clone() - e;
        assert!(z.is_constant() && z.constant.is_zero());
        let mut m = BTreeMap::new();
        m.insert(x, q(1, 2));
        assert_eq!(AffineExpr::var(x).scale(&q(2, 3)).eval(&m), q(1, 3));
    }

    #[test]
    fn certificate_replay() {
        let x = Var::Param(0);
        let sys = vec![
            LinIneq::le(x, AffineExpr::constant(q(1, 2))),
            LinIneq::ge(x, AffineExpr::constant(q(3, 4))),
        ];
        let good = Certificate {
            combination: vec![(Source::Input(0), q(1, 1)), (Source::Input(1), q(1, 1))],
        };
        assert!(good.check(&sys));
        assert_eq!(good.replay(&sys), Some((q(1, 4), Rel::Le)));
        let bad = Certificate {
            combination: vec![(Source::Input(0), q(1, 1))],
        };
        assert!(!bad.check(&sys));
    }
}
