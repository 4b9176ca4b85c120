use super::Formula;

// Binding levels; larger binds tighter.
const IMPL: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 5;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) | Formula::CoImp(..) | Formula::WImp(..) => IMPL,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

/// Prints `f` in the concrete grammar with as few parentheses as the
/// parser needs to read it back unchanged.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn wrapped(f: &Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write(f, out);
        out.push(')');
    } else {
        write(f, out);
    }
}

fn infix(a: &Formula, op: &str, b: &Formula, left_parens: bool, right_parens: bool, out: &mut String) {
    wrapped(a, left_parens, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    wrapped(b, right_parens, out);
}

fn write(f: &Formula, out: &mut String) {
    match f {
        Formula::Bot => out.push('0'),
        Formula::Top => out.push('1'),
        Formula::Atom(p) => out.push_str(p),
        Formula::Neg(a) => {
            out.push('!');
            wrapped(a, level(a) < UNARY, out);
        }
        Formula::And(a, b) => infix(a, "&", b, level(a) < AND, level(b) <= AND, out),
        Formula::Or(a, b) => infix(a, "|", b, level(a) < OR, level(b) <= OR, out),
        Formula::Imp(a, b) => infix(
            a,
            "->",
            b,
            level(a) <= IMPL,
            level(b) <= IMPL && !matches!(**b, Formula::Imp(..)),
            out,
        ),
        Formula::WImp(a, b) => infix(
            a,
            "~>",
            b,
            level(a) <= IMPL,
            level(b) <= IMPL && !matches!(**b, Formula::WImp(..)),
            out,
        ),
        Formula::CoImp(a, b) => infix(
            a,
            "-<",
            b,
            level(a) <= IMPL && !matches!(**a, Formula::CoImp(..)),
            level(b) <= IMPL,
            out,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, LogicId};

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(render(&Formula::imp(p(), q())), "p -> q");
        assert_eq!(render(&Formula::neg(Formula::and(p(), q()))), "!(p & q)");
        assert_eq!(render(&Formula::and(p(), Formula::or(q(), r()))), "p & (q | r)");
        assert_eq!(render(&Formula::or(Formula::and(p(), q()), r())), "p & q | r");
        assert_eq!(render(&Formula::and(p(), Formula::and(q(), r()))), "p & (q & r)");
        assert_eq!(render(&Formula::and(Formula::and(p(), q()), r())), "p & q & r");
        assert_eq!(render(&Formula::imp(p(), Formula::imp(q(), r()))), "p -> q -> r");
        assert_eq!(render(&Formula::imp(Formula::imp(p(), q()), r())), "(p -> q) -> r");
        assert_eq!(render(&Formula::coimp(Formula::coimp(p(), q()), r())), "p -< q -< r");
        assert_eq!(render(&Formula::coimp(p(), Formula::coimp(q(), r()))), "p -< (q -< r)");
        assert_eq!(render(&Formula::imp(p(), Formula::coimp(q(), r()))), "p -> (q -< r)");
        assert_eq!(render(&Formula::neg(Formula::neg(p()))), "!!p");
    }

    #[test]
    fn round_trips_through_the_parser() {
        let l = LogicId::GODEL_ARROW;
        for text in [
            "p -> (q -< r)",
            "!(p | q) & 1 -> 0",
            "(p -< q) -> !r | p & q",
            "((p -> q) -> p) -> p",
        ] {
            let f = parse(text, l).unwrap();
            assert_eq!(parse(&render(&f), l).unwrap(), f, "{text}");
        }
    }
}
