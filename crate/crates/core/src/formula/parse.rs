//! Recursive-descent parser.
//!
//! Binding strength, tightest first: `! ~`, `*`, `&`, `|`, then the
//! implication level (`->`, `~>` right-associative, `-<` left-associative,
//! no mixing without parentheses), then `<->` (non-associative).

use super::{expand_derived, DerivedForm, Formula, LogicId};
use crate::error::FormulaError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Zero,
    One,
    Bang,
    Tilde,
    Star,
    Amp,
    Bar,
    Arrow,
    WArrow,
    CoArrow,
    Iff,
    LParen,
    RParen,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Star => "`*`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::WArrow => "`~>`".into(),
            Tok::CoArrow => "`-<`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> FormulaError {
    FormulaError::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok<'_>)>, FormulaError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let rest = &text[i..];
        let (tok, len) = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b'!' => (Tok::Bang, 1),
            b'*' => (Tok::Star, 1),
            b'&' => (Tok::Amp, 1),
            b'|' => (Tok::Bar, 1),
            b'0' => (Tok::Zero, 1),
            b'1' => (Tok::One, 1),
            b'~' if rest.starts_with("~>") => (Tok::WArrow, 2),
            b'~' => (Tok::Tilde, 1),
            b'-' if rest.starts_with("->") => (Tok::Arrow, 2),
            b'-' if rest.starts_with("-<") => (Tok::CoArrow, 2),
            b'<' if rest.starts_with("<->") => (Tok::Iff, 3),
            c if c.is_ascii_alphabetic() => {
                let len = rest
                    .bytes()
                    .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                    .count();
                (Tok::Ident(&rest[..len]), len)
            }
            _ => {
                let ch = rest.chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push((i, tok));
        i += len;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
}

type PResult = Result<DerivedForm, FormulaError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn bump(&mut self) -> Option<Tok<'a>> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: Tok<'_>) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> FormulaError {
        match self.peek() {
            Some(t) => syntax(self.offset(), format!("expected {wanted}, found {}", t.describe())),
            None => syntax(self.offset(), format!("expected {wanted}, found end of input")),
        }
    }

    fn iff(&mut self) -> PResult {
        let lhs = self.implication()?;
        if !self.eat(Tok::Iff) {
            return Ok(lhs);
        }
        let rhs = self.implication()?;
        if self.peek() == Some(Tok::Iff) {
            return Err(syntax(self.offset(), "`<->` is non-associative; add parentheses"));
        }
        Ok(DerivedForm::Equiv(Box::new(lhs), Box::new(rhs)))
    }

    fn implication(&mut self) -> PResult {
        let first = self.disjunction()?;
        let op = match self.peek() {
            Some(t @ (Tok::Arrow | Tok::WArrow | Tok::CoArrow)) => t,
            _ => return Ok(first),
        };
        let mut operands = vec![first];
        while let Some(t) = self.peek() {
            if !matches!(t, Tok::Arrow | Tok::WArrow | Tok::CoArrow) {
                break;
            }
            if t != op {
                return Err(syntax(
                    self.offset(),
                    format!(
                        "{} cannot follow {} without parentheses",
                        t.describe(),
                        op.describe()
                    ),
                ));
            }
            self.bump();
            operands.push(self.disjunction()?);
        }
        let build = |a: DerivedForm, b: DerivedForm| {
            let (a, b) = (Box::new(a), Box::new(b));
            match op {
                Tok::Arrow => DerivedForm::Imp(a, b),
                Tok::WArrow => DerivedForm::WImp(a, b),
                _ => DerivedForm::CoImp(a, b),
            }
        };
        if op == Tok::CoArrow {
            let mut it = operands.into_iter();
            let first = it.next().expect("non-empty chain");
            Ok(it.fold(first, build))
        } else {
            let mut it = operands.into_iter().rev();
            let last = it.next().expect("non-empty chain");
            Ok(it.fold(last, |acc, a| build(a, acc)))
        }
    }

    fn left_chain(
        &mut self,
        tok: Tok<'_>,
        next: fn(&mut Self) -> PResult,
        join: fn(Box<DerivedForm>, Box<DerivedForm>) -> DerivedForm,
    ) -> PResult {
        let mut acc = next(self)?;
        while self.eat(tok) {
            let rhs = next(self)?;
            acc = join(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn disjunction(&mut self) -> PResult {
        self.left_chain(Tok::Bar, Self::conjunction, DerivedForm::Or)
    }

    fn conjunction(&mut self) -> PResult {
        self.left_chain(Tok::Amp, Self::fusion, DerivedForm::And)
    }

    fn fusion(&mut self) -> PResult {
        self.left_chain(Tok::Star, Self::unary, DerivedForm::Fusion)
    }

    fn unary(&mut self) -> PResult {
        match self.peek() {
            Some(Tok::Bang) => {
                self.bump();
                Ok(DerivedForm::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Tilde) => {
                self.bump();
                Ok(DerivedForm::StrongNeg(Box::new(self.unary()?)))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> PResult {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                self.bump();
                Ok(DerivedForm::Atom(name.to_string()))
            }
            Some(Tok::Zero) => {
                self.bump();
                Ok(DerivedForm::Bot)
            }
            Some(Tok::One) => {
                self.bump();
                Ok(DerivedForm::Top)
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.iff()?;
                if !self.eat(Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

/// Parses surface syntax without committing to a logic.
///
/// `~` is returned as [`DerivedForm::StrongNeg`]; [`parse`] reinterprets it
/// as weak negation `φ ~> 0` for the weak-implication logics.
pub fn parse_derived(text: &str) -> Result<DerivedForm, FormulaError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.iff()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

fn weaken_negations(d: DerivedForm) -> DerivedForm {
    use DerivedForm::*;
    let w = |b: Box<DerivedForm>| Box::new(weaken_negations(*b));
    match d {
        StrongNeg(a) => WeakNeg(w(a)),
        Neg(a) => Neg(w(a)),
        WeakNeg(a) => WeakNeg(w(a)),
        And(a, b) => And(w(a), w(b)),
        Or(a, b) => Or(w(a), w(b)),
        Imp(a, b) => Imp(w(a), w(b)),
        CoImp(a, b) => CoImp(w(a), w(b)),
        WImp(a, b) => WImp(w(a), w(b)),
        Fusion(a, b) => Fusion(w(a), w(b)),
        Equiv(a, b) => Equiv(w(a), w(b)),
        leaf @ (Bot | Top | Atom(_)) => leaf,
    }
}

/// Parses `text` as a formula of `logic`, expanding derived connectives.
pub fn parse(text: &str, logic: LogicId) -> Result<Formula, FormulaError> {
    let mut d = parse_derived(text)?;
    if logic.is_weak() {
        d = weaken_negations(d);
    }
    expand_derived(&d, logic)
}
