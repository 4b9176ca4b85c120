//! Brute-force verdicts and seeded formula corpora for cross-checking the
//! tableaux.
//!
//! Gödel connectives return a constant or one of their arguments, so the
//! value of a formula depends only on how its `2m` atom coordinates are
//! ordered among themselves and against 0 and 1. The grid
//! `{0, 1/(2m+1), ..., 1}` has `2m` interior points and realizes every such
//! order type, which makes the sweep over it a complete validity test.
//! No finite grid is complete for the Łukasiewicz connectives; there the
//! sweep only refutes.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::formula::{parse, Connective, Formula, LogicId};
use crate::semantics::grid::{grid_size, sweep, GridFilter};
use crate::semantics::{Filter, GridFormula, Valuation};

/// Atom limit of the Gödel validity sweep.
pub const GODEL_ORACLE_MAX_ATOMS: usize = 3;

/// Grid points the Łukasiewicz refuter may visit.
pub const LUK_REFUTER_BUDGET: u128 = 1 << 20;

/// Whether `v(f).pos = 1` under every valuation, by exhaustive sweep.
pub fn godel_validity_oracle(f: &Formula, logic: LogicId) -> Result<bool> {
    if !logic.is_godel() {
        return Err(Error::WrongBase("the validity oracle", "Gödel"));
    }
    let g = GridFormula::compile(f, logic)?;
    let m = g.atoms().len();
    if m > GODEL_ORACLE_MAX_ATOMS {
        return Err(Error::TooManyAtoms {
            found: m,
            limit: GODEL_ORACLE_MAX_ATOMS,
        });
    }
    let den = 2 * m as i64 + 1;
    let mut scratch = Vec::new();
    let refuted = sweep(den, 2 * m, |vals| g.eval(den, vals, &mut scratch)[0].0 < den);
    Ok(!refuted)
}

/// A valuation with all coordinates in `{0, 1/den, ..., 1}` under which `f`
/// is not designated, or `None` if the grid has none. Among refuting grid
/// points it returns one with the least value: lowest `pos`, then highest
/// `neg`, then first in sweep order.
pub fn luk_refuter(f: &Formula, d: &Filter, logic: LogicId, den: i64) -> Result<Option<Valuation>> {
    if !logic.is_luk() {
        return Err(Error::WrongBase("the refuter", "Łukasiewicz"));
    }
    if den < 1 {
        return Err(Error::Internal(format!("grid denominator {den} must be positive")));
    }
    let g = GridFormula::compile(f, logic)?;
    let coords = 2 * g.atoms().len();
    if grid_size(den, coords) > LUK_REFUTER_BUDGET {
        return Err(Error::TooManyAtoms {
            found: g.atoms().len(),
            limit: max_atoms(den),
        });
    }
    let filter = GridFilter::new(d, den)?;
    let mut scratch = Vec::new();
    let mut best: Option<((i64, i64), Vec<i64>)> = None;
    sweep(den, coords, |vals| {
        let v = g.eval(den, vals, &mut scratch)[0];
        if !filter.designated(v) {
            let better = match &best {
                None => true,
                Some((b, _)) => (v.0, -v.1) < (b.0, -b.1),
            };
            if better {
                best = Some((v, vals.to_vec()));
            }
        }
        false
    });
    Ok(best.map(|(_, vals)| g.valuation(den, &vals)))
}

/// Largest atom count whose grid at `den` fits the refuter budget.
fn max_atoms(den: i64) -> usize {
    (0..).take_while(|&m| grid_size(den, 2 * m) <= LUK_REFUTER_BUDGET).last().unwrap_or(0)
}

/// A reproducible list of random formulas of one logic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub seed: u64,
    pub logic: LogicId,
    pub max_depth: usize,
    pub atoms: usize,
    pub formulas: Vec<Formula>,
}

impl Corpus {
    /// One `{"logic": ..., "formula": ...}` object per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for f in &self.formulas {
            out.push_str(&json!({ "logic": self.logic.name(), "formula": f.to_string() }).to_string());
            out.push('\n');
        }
        out
    }

    /// Reads the formulas of a JSON lines file back, with their logics.
    pub fn read_jsonl(text: &str) -> Result<Vec<(LogicId, Formula)>> {
        let bad = |line: &str| Error::Internal(format!("malformed corpus line: {line}"));
        let mut out = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let v: serde_json::Value = serde_json::from_str(line).map_err(|_| bad(line))?;
            let logic = v["logic"].as_str().ok_or_else(|| bad(line))?;
            let formula = v["formula"].as_str().ok_or_else(|| bad(line))?;
            let logic = LogicId::from_str(logic)?;
            out.push((logic, parse(formula, logic)?));
        }
        Ok(out)
    }
}

/// Atom names: `p q r s t u v w`, then `p9 p10 ...`.
pub fn atom_name(i: usize) -> String {
    const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    NAMES.get(i).map_or_else(|| format!("p{}", i + 1), |s| s.to_string())
}

/// `count` formulas over at most `atoms` atoms with depth at most
/// `max_depth`, drawn with fixed weights from `logic`'s signature.
pub fn gen_corpus(seed: u64, count: usize, max_depth: usize, atoms: usize, logic: LogicId) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = atoms.max(1);
    let formulas = (0..count).map(|_| gen_formula(&mut rng, max_depth, atoms, logic)).collect();
    Corpus {
        seed,
        logic,
        max_depth,
        atoms,
        formulas,
    }
}

fn gen_formula(rng: &mut ChaCha8Rng, depth: usize, atoms: usize, logic: LogicId) -> Formula {
    // Leaves get likelier near the top so that depths vary.
    if depth == 0 || rng.gen_bool(0.15) {
        return match rng.gen_range(0..20) {
            0 => Formula::Bot,
            1 if logic.allows(Connective::Top) => Formula::Top,
            _ => Formula::atom(&atom_name(rng.gen_range(0..atoms))),
        };
    }
    let weights: [(Connective, u32); 6] = [
        (Connective::Neg, 3),
        (Connective::And, 3),
        (Connective::Or, 3),
        (Connective::Imp, 4),
        (Connective::CoImp, 1),
        (Connective::WImp, 4),
    ];
    let allowed: Vec<(Connective, u32)> = weights.into_iter().filter(|(c, _)| logic.allows(*c)).collect();
    let total: u32 = allowed.iter().map(|(_, w)| w).sum();
    let mut pick = rng.gen_range(0..total);
    let conn = allowed
        .iter()
        .find(|(_, w)| {
            if pick < *w {
                true
            } else {
                pick -= w;
                false
            }
        })
        .expect("weights cover the range")
        .0;
    let sub = |rng: &mut ChaCha8Rng| gen_formula(rng, depth - 1, atoms, logic);
    match conn {
        Connective::Neg => Formula::neg(sub(rng)),
        Connective::And => Formula::and(sub(rng), sub(rng)),
        Connective::Or => Formula::or(sub(rng), sub(rng)),
        Connective::Imp => Formula::imp(sub(rng), sub(rng)),
        Connective::CoImp => Formula::coimp(sub(rng), sub(rng)),
        Connective::WImp => Formula::wimp(sub(rng), sub(rng)),
        _ => unreachable!("leaves are handled above"),
    }
}
