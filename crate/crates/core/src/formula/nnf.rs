use super::{Formula, LogicId};
use crate::error::FormulaError;

/// Pushes `!` down to the atoms, preserving the value of the formula under
/// every valuation.
///
/// Only the strong-implication logics have an equivalent normal form. In
/// Łukasiewicz logic, where no coimplication is available, the negated
/// implication `!(a -> b)` becomes `(!b -> !a) -> 0` and `!0` becomes `0 -> 0`.
pub fn nnf(f: &Formula, logic: LogicId) -> Result<Formula, FormulaError> {
    if logic.is_weak() {
        return Err(FormulaError::NnfUnsupported(logic));
    }
    Ok(pos(f, logic))
}

/// True iff every `!` in `f` sits directly above an atom.
pub fn is_nnf(f: &Formula) -> bool {
    match f {
        Formula::Neg(a) => matches!(**a, Formula::Atom(_)),
        _ => f.children().into_iter().all(is_nnf),
    }
}

fn pos(f: &Formula, logic: LogicId) -> Formula {
    match f {
        Formula::Bot | Formula::Top | Formula::Atom(_) => f.clone(),
        Formula::Neg(a) => neg(a, logic),
        Formula::And(a, b) => Formula::and(pos(a, logic), pos(b, logic)),
        Formula::Or(a, b) => Formula::or(pos(a, logic), pos(b, logic)),
        Formula::Imp(a, b) => Formula::imp(pos(a, logic), pos(b, logic)),
        Formula::CoImp(a, b) => Formula::coimp(pos(a, logic), pos(b, logic)),
        Formula::WImp(a, b) => Formula::wimp(pos(a, logic), pos(b, logic)),
    }
}

// Normal form of `!f`.
fn neg(f: &Formula, logic: LogicId) -> Formula {
    match f {
        Formula::Atom(_) => Formula::neg(f.clone()),
        Formula::Neg(a) => pos(a, logic),
        Formula::And(a, b) => Formula::or(neg(a, logic), neg(b, logic)),
        Formula::Or(a, b) => Formula::and(neg(a, logic), neg(b, logic)),
        Formula::Bot if logic.is_godel() => Formula::Top,
        Formula::Bot => Formula::imp(Formula::Bot, Formula::Bot),
        Formula::Top => Formula::Bot,
        Formula::Imp(a, b) if logic.is_godel() => Formula::coimp(neg(b, logic), neg(a, logic)),
        Formula::Imp(a, b) => {
            Formula::imp(Formula::imp(neg(b, logic), neg(a, logic)), Formula::Bot)
        }
        Formula::CoImp(a, b) => Formula::imp(neg(b, logic), neg(a, logic)),
        // unreachable for strong-implication signatures
        Formula::WImp(..) => Formula::neg(pos(f, logic)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn n(text: &str, logic: LogicId) -> String {
        nnf(&parse(text, logic).unwrap(), logic).unwrap().to_string()
    }

    #[test]
    fn de_morgan_and_involution() {
        assert_eq!(n("!(p & q)", LogicId::GODEL_ARROW), "!p | !q");
        assert_eq!(n("!(p | q)", LogicId::LUK_ARROW), "!p & !q");
        assert_eq!(n("!!p", LogicId::LUK_ARROW), "p");
    }

    #[test]
    fn negated_implication() {
        assert_eq!(n("!(p -> q)", LogicId::GODEL_ARROW), "!q -< !p");
        assert_eq!(n("!(p -< q)", LogicId::GODEL_ARROW), "!q -> !p");
        assert_eq!(n("!(p -> q)", LogicId::LUK_ARROW), "(!q -> !p) -> 0");
        assert_eq!(n("!0", LogicId::LUK_ARROW), "0 -> 0");
        assert_eq!(n("!0 & !1", LogicId::GODEL_ARROW), "1 & 0");
    }

    #[test]
    fn output_is_normal_and_idempotent() {
        let l = LogicId::GODEL_ARROW;
        let f = parse("!(!(p -> !q) | !(r -< !!p)) -> !(1 & p)", l).unwrap();
        let once = nnf(&f, l).unwrap();
        assert!(is_nnf(&once));
        assert!(!is_nnf(&f));
        assert_eq!(nnf(&once, l).unwrap(), once);
    }

    #[test]
    fn weak_logics_are_rejected() {
        let f = parse("!(p ~> q)", LogicId::LUK_WARROW).unwrap();
        assert_eq!(
            nnf(&f, LogicId::LUK_WARROW),
            Err(FormulaError::NnfUnsupported(LogicId::LUK_WARROW))
        );
    }
}
