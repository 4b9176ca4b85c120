//! Inputs shared by the benchmarks in `benches/`.

use fuzzy2d_core::formula::{family_f2_odot_fn, family_fn};
use fuzzy2d_core::oracle::gen_corpus;
use fuzzy2d_core::{Filter, Formula, LogicId};

/// A named validity query.
pub struct Query {
    pub name: String,
    pub formula: Formula,
    pub filter: Filter,
    pub logic: LogicId,
}

/// `F_n` at `((k-1)/k, 1/k)` for `n, k` in `2..=4`.
pub fn small_squares() -> Vec<Query> {
    let mut out = Vec::new();
    for k in 2..=4i64 {
        for n in 2..=4usize {
            out.push(Query {
                name: format!("F{n}@k{k}"),
                formula: family_fn(n),
                filter: Filter::from_ints(k - 1, k, 1, k),
                logic: LogicId::LUK_ARROW,
            });
        }
    }
    out
}

/// `F_2 * F_3` at `((n-2)/2n, (n+2)/2n)`, valid for `n = 3` and invalid for `n = 4`.
pub fn big_squares() -> Vec<Query> {
    (3..=4i64)
        .map(|n| Query {
            name: format!("F2*F3@n{n}"),
            formula: family_f2_odot_fn(3),
            filter: Filter::from_ints(n - 2, 2 * n, n + 2, 2 * n),
            logic: LogicId::LUK_ARROW,
        })
        .collect()
}

/// A seeded random corpus at the logic's default filter.
pub fn corpus(logic: LogicId, count: usize) -> Vec<Query> {
    gen_corpus(7, count, 4, 3, logic)
        .formulas
        .into_iter()
        .enumerate()
        .map(|(i, formula)| Query {
            name: format!("{logic}#{i}"),
            formula,
            filter: Filter::default_for(logic),
            logic,
        })
        .collect()
}
