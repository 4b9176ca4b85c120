//! Formula syntax for the four two-dimensional logics.
//!
//! A [`Formula`] is an immutable tree over the primitive connectives. Which
//! connectives a formula may use is decided by its [`LogicId`]:
//!
//! | logic          | primitives                     |
//! |----------------|--------------------------------|
//! | `luk-arrow`    | `0 ! & \| ->`                  |
//! | `luk-warrow`   | `0 ! & \| ~>`                  |
//! | `godel-arrow`  | `0 1 ! & \| -> -<`             |
//! | `godel-warrow` | `0 1 ! & \| ~>`                |
//!
//! Derived connectives (`~`, `*`, `<->`) never reach the tableau engines;
//! they are expanded by [`expand_derived`] while parsing.

mod derived;
mod families;
mod nnf;
mod parse;
mod render;
mod table;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use derived::{expand_derived, DerivedForm};
pub use families::{family_f2_odot_fn, family_fk_odot_fk, family_fn, fusion_family};
pub use nnf::{is_nnf, nnf};
pub use parse::{parse, parse_derived};
pub use render::render;
pub use table::{FormulaId, FormulaTable, Node};

use crate::error::FormulaError;

/// Base algebra of a logic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Luk,
    Godel,
}

/// Which implication the logic carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ImplKind {
    /// Strong implication `->` (with coimplication `-<` in the Gödel case).
    Arrow,
    /// Weak implication `~>`.
    WArrow,
}

/// One of the four logics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogicId {
    pub base: Base,
    pub impl_kind: ImplKind,
}

impl LogicId {
    pub const LUK_ARROW: LogicId = LogicId::new(Base::Luk, ImplKind::Arrow);
    pub const LUK_WARROW: LogicId = LogicId::new(Base::Luk, ImplKind::WArrow);
    pub const GODEL_ARROW: LogicId = LogicId::new(Base::Godel, ImplKind::Arrow);
    pub const GODEL_WARROW: LogicId = LogicId::new(Base::Godel, ImplKind::WArrow);

    pub const ALL: [LogicId; 4] = [
        LogicId::LUK_ARROW,
        LogicId::LUK_WARROW,
        LogicId::GODEL_ARROW,
        LogicId::GODEL_WARROW,
    ];

    pub const fn new(base: Base, impl_kind: ImplKind) -> Self {
        LogicId { base, impl_kind }
    }

    pub fn is_luk(self) -> bool {
        self.base == Base::Luk
    }

    pub fn is_godel(self) -> bool {
        self.base == Base::Godel
    }

    pub fn is_weak(self) -> bool {
        self.impl_kind == ImplKind::WArrow
    }

    /// Whether `conn` belongs to this logic's primitive signature.
    pub fn allows(self, conn: Connective) -> bool {
        use Connective::*;
        match conn {
            Bot | Atom | Neg | And | Or => true,
            Top => self.is_godel(),
            Imp => self.impl_kind == ImplKind::Arrow,
            CoImp => self.is_godel() && self.impl_kind == ImplKind::Arrow,
            WImp => self.impl_kind == ImplKind::WArrow,
        }
    }

    pub fn name(self) -> &'static str {
        match (self.base, self.impl_kind) {
            (Base::Luk, ImplKind::Arrow) => "luk-arrow",
            (Base::Luk, ImplKind::WArrow) => "luk-warrow",
            (Base::Godel, ImplKind::Arrow) => "godel-arrow",
            (Base::Godel, ImplKind::WArrow) => "godel-warrow",
        }
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LogicId {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LogicId::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| FormulaError::UnknownLogic(s.to_string()))
    }
}

/// Head symbol of a formula node, used for signature checks and messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    Bot,
    Top,
    Atom,
    Neg,
    And,
    Or,
    Imp,
    CoImp,
    WImp,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Bot => "0",
            Connective::Top => "1",
            Connective::Atom => "atom",
            Connective::Neg => "!",
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Imp => "->",
            Connective::CoImp => "-<",
            Connective::WImp => "~>",
        }
    }
}

/// Shared pointer to a subformula.
pub type Sub = Arc<Formula>;

/// A formula over the primitive connectives.
///
/// Equality is structural; it is the identity used by the tableaux when
/// they index variables by formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Top,
    Atom(Arc<str>),
    Neg(Sub),
    And(Sub, Sub),
    Or(Sub, Sub),
    Imp(Sub, Sub),
    CoImp(Sub, Sub),
    WImp(Sub, Sub),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }

    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Arc::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn coimp(a: Formula, b: Formula) -> Formula {
        Formula::CoImp(Arc::new(a), Arc::new(b))
    }

    pub fn wimp(a: Formula, b: Formula) -> Formula {
        Formula::WImp(Arc::new(a), Arc::new(b))
    }

    pub fn connective(&self) -> Connective {
        match self {
            Formula::Bot => Connective::Bot,
            Formula::Top => Connective::Top,
            Formula::Atom(_) => Connective::Atom,
            Formula::Neg(_) => Connective::Neg,
            Formula::And(..) => Connective::And,
            Formula::Or(..) => Connective::Or,
            Formula::Imp(..) => Connective::Imp,
            Formula::CoImp(..) => Connective::CoImp,
            Formula::WImp(..) => Connective::WImp,
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Bot | Formula::Top | Formula::Atom(_) => Vec::new(),
            Formula::Neg(a) => vec![a],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::CoImp(a, b)
            | Formula::WImp(a, b) => vec![a, b],
        }
    }

    /// Names of the atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Formula::Atom(p) = self {
            out.insert(p.to_string());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Number of binary and unary connectives.
    pub fn connective_count(&self) -> usize {
        match self {
            Formula::Bot | Formula::Top | Formula::Atom(_) => 0,
            _ => 1 + self.children().iter().map(|c| c.connective_count()).sum::<usize>(),
        }
    }

    /// Height of the syntax tree; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        self.children()
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Checks that every connective of `f` is in `logic`'s signature.
pub fn validate_signature(f: &Formula, logic: LogicId) -> Result<(), FormulaError> {
    let conn = f.connective();
    if !logic.allows(conn) {
        return Err(FormulaError::Signature {
            connective: conn.symbol(),
            logic,
        });
    }
    for c in f.children() {
        validate_signature(c, logic)?;
    }
    Ok(())
}
