//! Exact evaluation on the product bilattice `[0,1] x [0,1]`.
//!
//! A truth value is a pair `(pos, neg)` of positive and negative support.
//! Designated values are given by a [`Filter`] `(x, y)`: a pair is designated
//! iff `pos >= x` and `neg <= y`.

pub(crate) mod grid;
mod rational;
mod sample;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use grid::GridFormula;
pub use rational::{format_rational, parse_rational, Q};
pub use sample::{entails_sample, sample_falsify, SampleConfig};

use crate::error::{Error, Result};
use crate::formula::{validate_signature, Formula, LogicId};

/// `n/d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn check_unit(v: &Q) -> Result<()> {
    if v < &Q::zero() || v > &Q::one() {
        Err(Error::OutOfRange(format_rational(v)))
    } else {
        Ok(())
    }
}

/// A value of the product bilattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthPair {
    pub pos: Q,
    pub neg: Q,
}

impl TruthPair {
    /// Checked constructor; both coordinates must lie in `[0,1]`.
    pub fn new(pos: Q, neg: Q) -> Result<Self> {
        check_unit(&pos)?;
        check_unit(&neg)?;
        Ok(TruthPair { pos, neg })
    }

    pub fn from_ints(pn: i64, pd: i64, nn: i64, nd: i64) -> Self {
        TruthPair::new(q(pn, pd), q(nn, nd)).expect("pair out of range")
    }

    /// `(1, 0)`, the top of the truth order.
    pub fn top() -> Self {
        TruthPair {
            pos: Q::one(),
            neg: Q::zero(),
        }
    }

    /// `(0, 1)`.
    pub fn bottom() -> Self {
        TruthPair {
            pos: Q::zero(),
            neg: Q::one(),
        }
    }
}

impl fmt::Display for TruthPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.pos), format_rational(&self.neg))
    }
}

impl Serialize for TruthPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.pos), format_rational(&self.neg)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruthPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let pos = parse_rational(&a).map_err(serde::de::Error::custom)?;
        let neg = parse_rational(&b).map_err(serde::de::Error::custom)?;
        TruthPair::new(pos, neg).map_err(serde::de::Error::custom)
    }
}

/// Assignment of truth pairs to atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation(pub BTreeMap<String, TruthPair>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, atom: impl Into<String>, value: TruthPair) {
        self.0.insert(atom.into(), value);
    }

    pub fn get(&self, atom: &str) -> Option<&TruthPair> {
        self.0.get(atom)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &TruthPair)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Restricts the valuation to `atoms`, filling missing ones with `(0, 0)`.
    pub fn completed_for<'a>(&self, atoms: impl IntoIterator<Item = &'a String>) -> Valuation {
        let mut out = Valuation::new();
        for a in atoms {
            let v = self.get(a).cloned().unwrap_or(TruthPair {
                pos: Q::zero(),
                neg: Q::zero(),
            });
            out.insert(a.clone(), v);
        }
        out
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, v) in self.iter() {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{a} = {v}")?;
        }
        Ok(())
    }
}

impl FromIterator<(String, TruthPair)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (String, TruthPair)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

/// Generator `(x, y)` of the designated set `{(a, b) | a >= x, b <= y}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filter {
    pub x: Q,
    pub y: Q,
}

impl Filter {
    pub fn new(x: Q, y: Q) -> Result<Self> {
        check_unit(&x)?;
        check_unit(&y)?;
        Ok(Filter { x, y })
    }

    pub fn from_ints(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Filter::new(q(xn, xd), q(yn, yd)).expect("filter out of range")
    }

    /// `(1, 0)`: only the top value is designated.
    pub fn exact() -> Self {
        Filter::from_ints(1, 1, 0, 1)
    }

    /// `(1, 1)`: full positive support, any negative support.
    pub fn positive() -> Self {
        Filter::from_ints(1, 1, 1, 1)
    }

    /// The customary filter for a logic: `(1, 0)` with strong implication,
    /// `(1, 1)` with weak implication.
    pub fn default_for(logic: LogicId) -> Self {
        if logic.is_weak() {
            Filter::positive()
        } else {
            Filter::exact()
        }
    }

    /// Parses `"x,y"` where both parts are `num/den` or integers.
    pub fn parse(text: &str) -> Result<Self> {
        let (a, b) = text
            .split_once(',')
            .ok_or_else(|| Error::BadRational(text.to_string()))?;
        Filter::new(parse_rational(a.trim())?, parse_rational(b.trim())?)
    }

    /// Rejects filters the logic cannot use: with weak implication only
    /// `y = 1` is meaningful.
    pub fn check_for(&self, logic: LogicId) -> Result<()> {
        if logic.is_weak() && !self.y.is_one() {
            return Err(Error::Filter {
                filter: self.to_string(),
                logic,
                reason: "weak-implication logics require y = 1",
            });
        }
        Ok(())
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_rational(&self.x), format_rational(&self.y))
    }
}

impl Serialize for Filter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

pub fn is_designated(t: &TruthPair, d: &Filter) -> bool {
    t.pos >= d.x && t.neg <= d.y
}

/// Evaluates `f` under `v`; `v` must assign every atom of `f`.
pub fn eval(f: &Formula, v: &Valuation, logic: LogicId) -> Result<TruthPair> {
    validate_signature(f, logic)?;
    eval_in(f, v, logic)
}

fn min(a: Q, b: Q) -> Q {
    if a <= b {
        a
    } else {
        b
    }
}

fn max(a: Q, b: Q) -> Q {
    if a >= b {
        a
    } else {
        b
    }
}

// Gödel implication and coimplication on [0,1].
fn g_imp(a: Q, b: Q) -> Q {
    if a <= b {
        Q::one()
    } else {
        b
    }
}

fn g_coimp(a: Q, b: Q) -> Q {
    if a <= b {
        Q::zero()
    } else {
        a
    }
}

fn eval_in(f: &Formula, v: &Valuation, logic: LogicId) -> Result<TruthPair> {
    let bin = |a: &Formula, b: &Formula| -> Result<(TruthPair, TruthPair)> {
        Ok((eval_in(a, v, logic)?, eval_in(b, v, logic)?))
    };
    let one = Q::one;
    let zero = Q::zero;
    Ok(match f {
        Formula::Bot => TruthPair::bottom(),
        Formula::Top => TruthPair::top(),
        Formula::Atom(p) => v
            .get(p)
            .cloned()
            .ok_or_else(|| Error::MissingAtom(p.to_string()))?,
        Formula::Neg(a) => {
            let t = eval_in(a, v, logic)?;
            TruthPair { pos: t.neg, neg: t.pos }
        }
        Formula::And(a, b) => {
            let (s, t) = bin(a, b)?;
            TruthPair {
                pos: min(s.pos, t.pos),
                neg: max(s.neg, t.neg),
            }
        }
        Formula::Or(a, b) => {
            let (s, t) = bin(a, b)?;
            TruthPair {
                pos: max(s.pos, t.pos),
                neg: min(s.neg, t.neg),
            }
        }
        Formula::Imp(a, b) => {
            let (s, t) = bin(a, b)?;
            if logic.is_luk() {
                TruthPair {
                    pos: min(one(), one() - s.pos + t.pos),
                    neg: max(zero(), t.neg - s.neg),
                }
            } else {
                TruthPair {
                    pos: g_imp(s.pos, t.pos),
                    neg: g_coimp(t.neg, s.neg),
                }
            }
        }
        Formula::CoImp(a, b) => {
            let (s, t) = bin(a, b)?;
            TruthPair {
                pos: g_coimp(s.pos, t.pos),
                neg: g_imp(t.neg, s.neg),
            }
        }
        Formula::WImp(a, b) => {
            let (s, t) = bin(a, b)?;
            if logic.is_luk() {
                TruthPair {
                    pos: min(one(), one() - &s.pos + t.pos),
                    neg: max(zero(), s.pos + t.neg - one()),
                }
            } else {
                TruthPair {
                    pos: g_imp(s.pos.clone(), t.pos),
                    neg: min(s.pos, t.neg),
                }
            }
        }
    })
}

/// Per atom `(pos, neg) -> (1 - neg, 1 - pos)`.
pub fn dual_valuation(v: &Valuation) -> Valuation {
    v.iter()
        .map(|(a, t)| {
            (
                a.clone(),
                TruthPair {
                    pos: Q::one() - &t.neg,
                    neg: Q::one() - &t.pos,
                },
            )
        })
        .collect()
}

/// Whether the designated set is closed under `(a, b) -> (1 - b, 1 - a)`.
pub fn conflation_closed(d: &Filter) -> bool {
    d.y == Q::one() - &d.x
}

/// The square filter with the same valid formulas as `d` in the
/// Łukasiewicz strong-implication logic.
pub fn normalize_filter(d: &Filter) -> Filter {
    let co_x = Q::one() - &d.x;
    if d.y >= co_x {
        Filter { x: d.x.clone(), y: co_x }
    } else {
        Filter {
            x: Q::one() - &d.y,
            y: d.y.clone(),
        }
    }
}
