use super::{validate_signature, Base, Formula, ImplKind, LogicId};
use crate::error::FormulaError;

/// Surface syntax: primitive connectives plus the definable ones.
///
/// * `StrongNeg(a)` is `a -> 0`
/// * `WeakNeg(a)` is `a ~> 0`
/// * `Fusion(a, b)` is `~(a -> ~b)`
/// * `Equiv(a, b)` is `(a -> b) * (b -> a)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedForm {
    Bot,
    Top,
    Atom(String),
    Neg(Box<DerivedForm>),
    And(Box<DerivedForm>, Box<DerivedForm>),
    Or(Box<DerivedForm>, Box<DerivedForm>),
    Imp(Box<DerivedForm>, Box<DerivedForm>),
    CoImp(Box<DerivedForm>, Box<DerivedForm>),
    WImp(Box<DerivedForm>, Box<DerivedForm>),
    StrongNeg(Box<DerivedForm>),
    WeakNeg(Box<DerivedForm>),
    Fusion(Box<DerivedForm>, Box<DerivedForm>),
    Equiv(Box<DerivedForm>, Box<DerivedForm>),
}

impl From<&Formula> for DerivedForm {
    fn from(f: &Formula) -> Self {
        let b = |x: &Formula| Box::new(DerivedForm::from(x));
        match f {
            Formula::Bot => DerivedForm::Bot,
            Formula::Top => DerivedForm::Top,
            Formula::Atom(p) => DerivedForm::Atom(p.to_string()),
            Formula::Neg(a) => DerivedForm::Neg(b(a)),
            Formula::And(x, y) => DerivedForm::And(b(x), b(y)),
            Formula::Or(x, y) => DerivedForm::Or(b(x), b(y)),
            Formula::Imp(x, y) => DerivedForm::Imp(b(x), b(y)),
            Formula::CoImp(x, y) => DerivedForm::CoImp(b(x), b(y)),
            Formula::WImp(x, y) => DerivedForm::WImp(b(x), b(y)),
        }
    }
}

fn strong_neg(a: Formula) -> Formula {
    Formula::imp(a, Formula::Bot)
}

fn fusion(a: Formula, b: Formula) -> Formula {
    strong_neg(Formula::imp(a, strong_neg(b)))
}

fn require(ok: bool, symbol: &'static str, logic: LogicId) -> Result<(), FormulaError> {
    if ok {
        Ok(())
    } else {
        Err(FormulaError::Signature {
            connective: symbol,
            logic,
        })
    }
}

/// Expands derived connectives into primitives and checks the result
/// against `logic`'s signature.
pub fn expand_derived(d: &DerivedForm, logic: LogicId) -> Result<Formula, FormulaError> {
    let f = expand(d, logic)?;
    validate_signature(&f, logic)?;
    Ok(f)
}

fn expand(d: &DerivedForm, logic: LogicId) -> Result<Formula, FormulaError> {
    let luk_arrow = logic.base == Base::Luk && logic.impl_kind == ImplKind::Arrow;
    Ok(match d {
        DerivedForm::Bot => Formula::Bot,
        DerivedForm::Top => Formula::Top,
        DerivedForm::Atom(p) => Formula::atom(p),
        DerivedForm::Neg(a) => Formula::neg(expand(a, logic)?),
        DerivedForm::And(a, b) => Formula::and(expand(a, logic)?, expand(b, logic)?),
        DerivedForm::Or(a, b) => Formula::or(expand(a, logic)?, expand(b, logic)?),
        DerivedForm::Imp(a, b) => Formula::imp(expand(a, logic)?, expand(b, logic)?),
        DerivedForm::CoImp(a, b) => Formula::coimp(expand(a, logic)?, expand(b, logic)?),
        DerivedForm::WImp(a, b) => Formula::wimp(expand(a, logic)?, expand(b, logic)?),
        DerivedForm::StrongNeg(a) => {
            require(logic.impl_kind == ImplKind::Arrow, "~", logic)?;
            strong_neg(expand(a, logic)?)
        }
        DerivedForm::WeakNeg(a) => {
            require(logic.impl_kind == ImplKind::WArrow, "~", logic)?;
            Formula::wimp(expand(a, logic)?, Formula::Bot)
        }
        DerivedForm::Fusion(a, b) => {
            require(luk_arrow, "*", logic)?;
            fusion(expand(a, logic)?, expand(b, logic)?)
        }
        DerivedForm::Equiv(a, b) => {
            require(luk_arrow, "<->", logic)?;
            let (a, b) = (expand(a, logic)?, expand(b, logic)?);
            fusion(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
        }
    })
}

/// `(a -> b) * (b -> a)` over primitives, for the Łukasiewicz strong-implication logic.
pub(crate) fn equiv(a: Formula, b: Formula) -> Formula {
    fusion(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
}

pub(crate) fn fuse(a: Formula, b: Formula) -> Formula {
    fusion(a, b)
}
